#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace sbmwalk {

/// Stochastic block model: K communities with fixed sizes, base density
/// matrix B0 and sparsity rho. Edge probabilities are rho * B0[g(i)][g(j)].
struct BlockModel {
  int K = 0;
  std::vector<int> block_sizes;
  Eigen::MatrixXd B0;
  double rho = 0.0;

  int node_count() const;
  /// rho * B0.
  Eigen::MatrixXd B() const;
};

/// Validates and returns a block model. Throws std::invalid_argument on a
/// dimension mismatch, an asymmetric B0, a B0 entry outside (0, 1], a rho
/// outside [0, 1] or rho * max(B0) > 1.
BlockModel build_block_model(int K, std::vector<int> block_sizes, Eigen::MatrixXd B0, double rho);

/// Balanced block sizes for n nodes (remainder goes to the first blocks).
std::vector<int> balanced_block_sizes(int n, int K);

struct CommunityAssignment {
  int K = 0;
  std::vector<int> labels;

  int node_count() const { return static_cast<int>(labels.size()); }
  std::vector<int> block_counts() const;
};

/// Nodes grouped by block: block 0 first, then block 1, ...
CommunityAssignment grouped_assignment(const BlockModel& model);

/// Throws std::invalid_argument unless label counts equal the model's block sizes.
void check_assignment(const BlockModel& model, const CommunityAssignment& assignment);

/// P[i][j] = rho * B0[g(i)][g(j)], diagonal included.
Eigen::MatrixXd edge_probability_matrix(const BlockModel& model, const CommunityAssignment& assignment);

/// n x K 0/1 matrix with a single 1 per row. Throws on labels outside [0, K).
Eigen::MatrixXi membership_matrix(std::span<const int> labels, int K);

/// Undirected simple graph stored as sorted neighbor lists (CSR layout).
class Graph {
 public:
  Graph() = default;

  /// Builds from an undirected edge list. Duplicates are merged; self-loops
  /// and out-of-range endpoints throw.
  static Graph from_edges(int n, std::vector<std::pair<int, int>> edges);

  int node_count() const { return n_; }
  std::int64_t edge_count() const { return two_m_ / 2; }
  /// Sum of degrees (= number of ordered edges).
  std::int64_t two_m() const { return two_m_; }
  int degree(int v) const { return static_cast<int>(offsets_[v + 1] - offsets_[v]); }
  std::span<const int> neighbors(int v) const {
    return {targets_.data() + offsets_[v], static_cast<std::size_t>(degree(v))};
  }
  std::span<const std::int64_t> offsets() const { return offsets_; }
  std::span<const int> targets() const { return targets_; }
  std::vector<int> degrees() const;
  bool has_edge(int u, int v) const;

  /// Edges (i, j) with i < j in lexicographic order.
  std::vector<std::pair<int, int>> edges() const;
  Eigen::MatrixXd dense_adjacency() const;

  /// "n m" followed by m lines "i j" (i < j, sorted).
  void write_text(std::ostream& out) const;
  std::string to_text() const;
  static Graph read_text(std::istream& in);

  friend bool operator==(const Graph&, const Graph&) = default;

 private:
  int n_ = 0;
  std::int64_t two_m_ = 0;
  std::vector<std::int64_t> offsets_{0};
  std::vector<int> targets_;
};

/// Samples A_ij ~ Bernoulli(P_ij) independently for i < j and symmetrizes;
/// A_ii = 0. Row i uses its own stream derived from (seed, i), so the
/// result is a pure function of the inputs and independent of threading.
Graph sample_graph(const BlockModel& model, const CommunityAssignment& assignment, std::uint64_t seed);

}  // namespace sbmwalk
