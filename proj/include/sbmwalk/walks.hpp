#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <utility>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/SparseCore>

#include "sbmwalk/sbm.hpp"

namespace sbmwalk {

enum class WalkKernel { deepwalk, node2vec };

const char* kernel_name(WalkKernel kernel);
WalkKernel parse_kernel(const std::string& name);

struct WalkParams {
  std::int64_t r = 0;
  int l = 0;
  WalkKernel kernel = WalkKernel::deepwalk;
  double alpha = 1.0;
  double beta = 1.0;
  std::uint64_t seed = 0;
};

/// r walks of exactly l nodes each, stored row-major.
struct WalkCorpus {
  WalkParams params;
  int node_count = 0;
  std::vector<std::uint32_t> nodes;
  /// Steps where the node2vec normalizer vanished (alpha = 0 at a degree-1
  /// node) and the walker was sent back along the incoming edge.
  std::int64_t dead_end_events = 0;

  std::int64_t walk_count() const { return params.r; }
  int walk_length() const { return params.l; }
  std::span<const std::uint32_t> walk(std::int64_t m) const {
    return {nodes.data() + m * params.l, static_cast<std::size_t>(params.l)};
  }

  /// Little-endian: uint64 r, uint64 l, then r*l uint32 node ids.
  void write_binary(std::ostream& out) const;
  static WalkCorpus read_binary(std::istream& in);
};

/// Simple random walks started from the stationary law deg(v)/2m.
WalkCorpus deepwalk_walks(const Graph& graph, std::int64_t r, int l, std::uint64_t seed);

/// Second-order walks: (w1, w2) uniform over ordered edges, then unnormalized
/// weights alpha (return to the previous node), 1 (neighbor of both previous
/// and current node) and beta (any other neighbor of the current node).
WalkCorpus node2vec_walks(const Graph& graph, std::int64_t r, int l, double alpha, double beta,
                          std::uint64_t seed);

/// First-order chain on the 2m ordered edges equivalent to the node2vec walk.
struct EdgeStateChain {
  /// state s = (states[s].first, states[s].second); ordered by CSR position.
  std::vector<std::pair<int, int>> states;
  Eigen::SparseMatrix<double, Eigen::RowMajor> transition;
  Eigen::VectorXd initial;

  std::int64_t state_count() const { return static_cast<std::int64_t>(states.size()); }
};

/// With alpha = 0 a state (u, v) with deg(v) = 1 has no admissible move; its
/// row sends all mass back to (v, u), matching the walker's dead-end rule.
EdgeStateChain edge_state_chain(const Graph& graph, double alpha, double beta);

/// dist * transition^steps. Throws on negative steps or a dist that does not
/// sum to 1.
Eigen::VectorXd evolve_edge_distribution(const EdgeStateChain& chain, const Eigen::VectorXd& dist, int steps);

}  // namespace sbmwalk
