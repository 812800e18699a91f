#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "sbmwalk/rng.hpp"
#include "sbmwalk/sbm.hpp"

namespace testing {

inline sbmwalk::Graph triangle() { return sbmwalk::Graph::from_edges(3, {{0, 1}, {0, 2}, {1, 2}}); }

// 0 - 1 - 2
inline sbmwalk::Graph path3() { return sbmwalk::Graph::from_edges(3, {{0, 1}, {1, 2}}); }

// G(n, p) conditioned on being connected (rejection).
inline sbmwalk::Graph connected_gnp(int n, double p, std::uint64_t seed) {
  for (std::uint64_t attempt = 0;; ++attempt) {
    sbmwalk::Rng rng(sbmwalk::derive_seed(seed, attempt));
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        if (rng.uniform() < p) edges.emplace_back(i, j);
    auto g = sbmwalk::Graph::from_edges(n, edges);
    std::vector<int> seen{0};
    std::vector<bool> visited(static_cast<std::size_t>(n), false);
    visited[0] = true;
    for (std::size_t k = 0; k < seen.size(); ++k)
      for (int w : g.neighbors(seen[k]))
        if (!visited[w]) visited[w] = true, seen.push_back(w);
    if (static_cast<int>(seen.size()) == n) return g;
  }
}

inline Eigen::MatrixXd two_block_b0(double within, double across) {
  Eigen::MatrixXd B0(2, 2);
  B0 << within, across, across, within;
  return B0;
}

// Plain DeepWalk t-step joint, written out from the definitions: start at
// deg/2m and apply D^{-1}A t times.
inline Eigen::MatrixXd reference_deepwalk_joint(const Eigen::MatrixXd& A, int t) {
  const Eigen::VectorXd deg = A.rowwise().sum();
  Eigen::MatrixXd T = deg.cwiseInverse().asDiagonal() * A;
  Eigen::MatrixXd J = (deg / deg.sum()).asDiagonal();
  for (int s = 0; s < t; ++s) J = J * T;
  return J;
}

}  // namespace testing
