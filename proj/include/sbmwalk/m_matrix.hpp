#pragma once

#include <iosfwd>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "sbmwalk/cooccurrence.hpp"
#include "sbmwalk/sbm.hpp"
#include "sbmwalk/walks.hpp"

namespace sbmwalk {

using MaskMatrix = Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic>;

struct MMatrixMeta {
  WalkKernel kernel = WalkKernel::deepwalk;
  Window window;
  int l = 0;
  double b = 1.0;
  double alpha = 1.0;
};

/// Shifted PMI matrix. Cells without any (observed or possible)
/// co-occurrence are flagged in `mask` and hold exactly 0.
struct MMatrix {
  Eigen::MatrixXd entries;
  MaskMatrix mask;
  MMatrixMeta meta;

  Eigen::Index size() const { return entries.rows(); }
  Eigen::Index masked_count() const { return mask.count(); }
};

/// Window-weighted joint law of walk positions:
///   joint(i, j) = sum_t (l - t) [Pr(w_1 = i, w_{1+t} = j) + Pr(w_1 = j, w_{1+t} = i)]
/// together with the start marginal Pr(w_1 = i).
struct JointWindowTable {
  Eigen::MatrixXd joint;
  Eigen::VectorXd marginal;
  Window window;
  int l = 0;
};

/// log(C_ij |C| / (|C_i.| |C_.j|)) - log b, masked where C_ij = 0.
MMatrix empirical_m(const CooccurrenceMatrix& C, double b);

/// Pr(w_1 = i, w_{1+t} = j) for t = 1..t_max (entry t-1 of the result).
/// The weighted overloads walk on a symmetric nonnegative weight matrix
/// (adjacency or edge probabilities, diagonal allowed).
std::vector<Eigen::MatrixXd> deepwalk_step_joints(const Eigen::MatrixXd& weights, int t_max);
std::vector<Eigen::MatrixXd> deepwalk_step_joints(const Graph& graph, int t_max);

/// node2vec with beta = 1: each step has weight weights[v][w] * alpha^{1{w = prev}}
/// divided by (|row_v| - 1 + alpha), started from weights[v1][v2] / |weights|.
/// On a 0/1 adjacency this is the exact node2vec law.
std::vector<Eigen::MatrixXd> node2vec_step_joints(const Eigen::MatrixXd& weights, int t_max, double alpha);
std::vector<Eigen::MatrixXd> node2vec_step_joints(const Graph& graph, int t_max, double alpha);

JointWindowTable deepwalk_joint(const Eigen::MatrixXd& weights, Window window, int l);
JointWindowTable deepwalk_joint(const Graph& graph, Window window, int l);
JointWindowTable node2vec_joint(const Eigen::MatrixXd& weights, Window window, int l, double alpha);
JointWindowTable node2vec_joint(const Graph& graph, Window window, int l, double alpha);

/// log(joint(i, j) / (2 b gamma(l, t_L, t_U) marginal(i) marginal(j))),
/// masked where joint(i, j) = 0.
MMatrix limit_m(const JointWindowTable& table, double b);

/// Limit M-matrix of a graph for either kernel (alpha ignored for deepwalk).
MMatrix graph_m(const Graph& graph, WalkKernel kernel, Window window, int l, double b, double alpha);

/// M-matrix of the complete graph weighted by P (diagonal included).
MMatrix noiseless_m0(const BlockModel& model, const CommunityAssignment& assignment, WalkKernel kernel,
                     Window window, int l, double b, double alpha);

/// sum_ij C_ij (log sigma(<f_i, f'_j>) + b E_{l ~ P_C} log sigma(-<f_i, f'_l>)),
/// P_C the column-sum distribution of C. F and F' are n x d.
double sgns_objective(const Eigen::MatrixXd& C, const Eigen::MatrixXd& F, const Eigen::MatrixXd& Fprime, double b);
double sgns_objective(const CooccurrenceMatrix& C, const Eigen::MatrixXd& F, const Eigen::MatrixXd& Fprime,
                      double b);

/// Exact factorization M = F F'^T of a symmetric matrix through its
/// eigendecomposition (F = V |L|^{1/2}, F' = V sign(L) |L|^{1/2}).
std::pair<Eigen::MatrixXd, Eigen::MatrixXd> factorize_symmetric(const Eigen::MatrixXd& M);

double frobenius_distance(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b);
double frobenius_distance(const MMatrix& a, const MMatrix& b);

Eigen::MatrixXd dense_counts(const CooccurrenceMatrix& C);

/// "rows cols" then one line per row, 17 significant digits.
void write_matrix_text(std::ostream& out, const Eigen::MatrixXd& M);
void write_mask_text(std::ostream& out, const MaskMatrix& mask);
Eigen::MatrixXd read_matrix_text(std::istream& in);

}  // namespace sbmwalk
