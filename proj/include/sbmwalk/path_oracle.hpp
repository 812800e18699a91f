#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "sbmwalk/sbm.hpp"

namespace sbmwalk {

/// Brute-force path enumeration for tiny instances. Everything here is
/// exponential in the path length by construction; a hard budget keeps it
/// at test scale.
inline constexpr std::int64_t kPathBudget = 10'000'000;

/// Block labels (b_0, ..., b_t) for paths from `source` to `target`.
struct PathComposition {
  std::vector<int> labels;
  int source = 0;
  int target = 0;

  int length() const { return static_cast<int>(labels.size()) - 1; }
};

struct PathStats {
  double y_b = 0.0;
  std::int64_t path_count = 0;
  std::optional<double> expectation;
};

/// All compositions in B_ij for paths of length t.
std::vector<PathComposition> compositions(const CommunityAssignment& assignment, int source, int target, int t);

/// |P_b| = product of block sizes over the interior positions.
std::int64_t path_count(const CommunityAssignment& assignment, const PathComposition& composition);

/// Visits every (i_0, ..., i_t) with i_0 = source, i_t = target and
/// g(i_l) = b_l exactly once, in lexicographic order. Throws
/// std::length_error when |P_b| exceeds `budget`.
void enumerate_paths(const CommunityAssignment& assignment, const PathComposition& composition,
                     const std::function<void(std::span<const int>)>& visit, std::int64_t budget = kPathBudget);

/// Number of positions l in [2, t] with i_{l-2} = i_l.
int backtrack_count(std::span<const int> path);

/// sum over P_b of (product of edge indicators) * alpha^{backtracks}.
/// alpha = 1 gives the plain path count Y_b.
PathStats y_b(const Graph& graph, const CommunityAssignment& assignment, const PathComposition& composition,
              double alpha = 1.0);

/// Exact E[Y_{b, alpha}] under independent edges A_ij ~ Bernoulli(P_ij):
/// each path contributes alpha^{backtracks} times the product of P over its
/// *distinct* undirected edges (A_e^2 = A_e). With `zero_diagonal`, paths
/// using a self-loop contribute 0.
double expected_y_b(const Eigen::MatrixXd& P, const CommunityAssignment& assignment,
                    const PathComposition& composition, bool zero_diagonal, double alpha = 1.0);

/// Part of expected_y_b carried by paths whose t edges are pairwise distinct
/// (no backtracks, so alpha does not enter).
double distinct_edge_expectation(const Eigen::MatrixXd& P, const CommunityAssignment& assignment,
                                 const PathComposition& composition, bool zero_diagonal);

struct PathBounds {
  double upper = 0.0;
  double lower = 0.0;
};

/// U_b = (prod_{i=1}^{t-1} n_{b_i} B_{b_{i-1} b_i}) B_{b_{t-1} b_t};
/// L_b replaces n_{b_i} by max(0, n_{b_i} - (k (t - 1) + 1)).
PathBounds u_b_l_b(const BlockModel& model, const PathComposition& composition, int k);

/// One line of the oracle validation suite.
struct OracleCheck {
  std::string name;
  std::int64_t checked = 0;
  std::int64_t violations = 0;
  /// Largest violation, human readable; empty when none.
  std::string worst;
  /// Violations per (t, alpha) group, e.g. "t=2 alpha=1: 6/36".
  std::vector<std::string> breakdown;

  bool passed() const { return violations == 0; }
};

struct OracleSuiteOptions {
  int samples = 10'000;
  std::uint64_t seed = 1;
  double se_multiplier = 4.0;
  std::vector<int> lengths{2, 3};
};

/// Small models (n <= 8, K <= 2) the suite runs on.
std::vector<BlockModel> oracle_models();

/// Over every model, (i, j), t and composition, with alpha in {1, 1/n}:
///  - walk counts: sum_b y_b = (A^t)_ij on sampled graphs
///  - lower bound: L_b <= expected_y_b
///  - distinct-edge upper bound: distinct_edge_expectation <= U_b
///  - upper bound: expected_y_b <= U_b
///  - Monte Carlo: mean of y_b over sampled graphs within se_multiplier
///    standard errors of expected_y_b
std::vector<OracleCheck> run_oracle_suite(const OracleSuiteOptions& options = {});

}  // namespace sbmwalk
