#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "sbmwalk/sbm.hpp"

namespace sbmwalk {

/// K eigenpairs of largest |lambda| with orthonormal columns.
struct SpectralEmbedding {
  Eigen::VectorXd eigenvalues;
  Eigen::MatrixXd vectors;
};

/// Ties in |lambda| go to the larger signed value, then to the lower index.
/// Each vector is flipped so that its first non-negligible coordinate is
/// positive. Throws on an asymmetric input (relative 1e-10) or K > n.
SpectralEmbedding top_k_eigen(const Eigen::MatrixXd& M, int K);

struct ClusterResult {
  std::vector<int> labels;
  Eigen::MatrixXd centers;
  double objective = 0.0;
  std::optional<double> error_rate;
  /// Empty clusters re-seeded during the winning restart.
  int empty_cluster_repairs = 0;
  int winning_restart = 0;

  /// n x K 0/1 membership matrix.
  Eigen::MatrixXi membership() const;
};

/// Best of `restarts` runs of Lloyd's algorithm with k-means++ seeding.
/// Restart s draws from a stream derived from (seed, s); the lowest
/// objective wins, ties to the lower restart index.
ClusterResult kmeans_cluster(const Eigen::MatrixXd& rows, int K, int restarts, int max_iters, std::uint64_t seed);

/// Squared-distance cost ||Theta X - V||_F^2 recomputed from labels and centers.
double kmeans_cost(const Eigen::MatrixXd& rows, std::span<const int> labels, const Eigen::MatrixXd& centers);

/// Optimal assignment on a square cost matrix (Hungarian method, O(K^3)).
/// Returns column assigned to each row, minimizing the total cost.
std::vector<int> min_cost_assignment(const Eigen::MatrixXd& cost);

/// Fraction of nodes misclassified under the best relabeling of `predicted`.
double misclassification_rate(std::span<const int> predicted, std::span<const int> truth, int K);

/// Spectral recovery: top-K eigenvectors of M followed by k-means on their rows.
ClusterResult spectral_cluster(const Eigen::MatrixXd& M, int K, int restarts, int max_iters, std::uint64_t seed);

struct BlockPairDistance {
  int r = 0;
  int s = 0;
  double observed = 0.0;
  double predicted = 0.0;
  double deviation() const { return observed - predicted; }
};

struct EigenGeometryReport {
  /// max over nodes of the distance from its row of V0 to its block's mean row.
  double within_block_spread = 0.0;
  /// Distances between block mean rows against sqrt(1/n_r + 1/n_s).
  std::vector<BlockPairDistance> cross_block;
  double max_cross_deviation() const;
};

EigenGeometryReport eigen_geometry_report(const Eigen::MatrixXd& M0, const CommunityAssignment& assignment);

/// min over orthogonal O of ||V - V0 O||_F (orthogonal Procrustes).
double procrustes_distance(const Eigen::MatrixXd& V, const Eigen::MatrixXd& V0);

}  // namespace sbmwalk
