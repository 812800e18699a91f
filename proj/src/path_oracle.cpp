#include "sbmwalk/path_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>

namespace sbmwalk {

namespace {

void check_composition(const CommunityAssignment& assignment, const PathComposition& c) {
  if (c.length() < 1) throw std::invalid_argument("path composition: length must be at least 1");
  const int n = assignment.node_count();
  if (c.source < 0 || c.source >= n || c.target < 0 || c.target >= n)
    throw std::invalid_argument("path composition: endpoint out of range");
  for (int b : c.labels)
    if (b < 0 || b >= assignment.K) throw std::invalid_argument("path composition: label out of range");
  if (assignment.labels[c.source] != c.labels.front() || assignment.labels[c.target] != c.labels.back())
    throw std::invalid_argument("path composition: endpoint labels do not match b_0, b_t");
}

std::vector<std::vector<int>> block_members(const CommunityAssignment& assignment) {
  std::vector<std::vector<int>> members(assignment.K);
  for (int i = 0; i < assignment.node_count(); ++i) members[assignment.labels[i]].push_back(i);
  return members;
}

// Product of P over the distinct undirected edges of the path, 0 if a
// self-loop is used while the diagonal is zeroed.
double distinct_edge_product(const Eigen::MatrixXd& P, std::span<const int> path, bool zero_diagonal,
                             std::vector<std::pair<int, int>>& scratch) {
  scratch.clear();
  for (std::size_t l = 0; l + 1 < path.size(); ++l) {
    const int a = path[l], b = path[l + 1];
    if (a == b && zero_diagonal) return 0.0;
    scratch.emplace_back(std::min(a, b), std::max(a, b));
  }
  std::sort(scratch.begin(), scratch.end());
  scratch.erase(std::unique(scratch.begin(), scratch.end()), scratch.end());
  double prod = 1.0;
  for (auto [a, b] : scratch) prod *= P(a, b);
  return prod;
}

}  // namespace

std::vector<PathComposition> compositions(const CommunityAssignment& assignment, int source, int target, int t) {
  if (t < 1) throw std::invalid_argument("compositions: t must be at least 1");
  const int K = assignment.K;
  std::vector<PathComposition> out;
  std::vector<int> interior(static_cast<std::size_t>(t - 1), 0);
  while (true) {
    PathComposition c{{}, source, target};
    c.labels.push_back(assignment.labels[source]);
    c.labels.insert(c.labels.end(), interior.begin(), interior.end());
    c.labels.push_back(assignment.labels[target]);
    out.push_back(std::move(c));
    // Odometer increment, last position fastest.
    int pos = t - 2;
    while (pos >= 0 && ++interior[pos] == K) interior[pos--] = 0;
    if (pos < 0) break;
  }
  return out;
}

std::int64_t path_count(const CommunityAssignment& assignment, const PathComposition& composition) {
  check_composition(assignment, composition);
  const auto counts = assignment.block_counts();
  std::int64_t total = 1;
  for (int l = 1; l < composition.length(); ++l) {
    total *= counts[composition.labels[l]];
    if (total > (std::int64_t{1} << 52)) return total;
  }
  return total;
}

void enumerate_paths(const CommunityAssignment& assignment, const PathComposition& composition,
                     const std::function<void(std::span<const int>)>& visit, std::int64_t budget) {
  const auto total = path_count(assignment, composition);
  if (total > budget) throw std::length_error("enumerate_paths: path budget exceeded");
  if (total == 0) return;
  const auto members = block_members(assignment);
  const int t = composition.length();
  std::vector<int> path(static_cast<std::size_t>(t + 1));
  std::vector<std::size_t> cursor(static_cast<std::size_t>(t + 1), 0);
  path.front() = composition.source;
  path.back() = composition.target;
  for (int l = 1; l < t; ++l) path[l] = members[composition.labels[l]][0];
  while (true) {
    visit(path);
    int pos = t - 1;
    while (pos >= 1) {
      const auto& pool = members[composition.labels[pos]];
      if (++cursor[pos] < pool.size()) {
        path[pos] = pool[cursor[pos]];
        break;
      }
      cursor[pos] = 0;
      path[pos] = pool[0];
      --pos;
    }
    if (pos < 1) return;
  }
}

int backtrack_count(std::span<const int> path) {
  int count = 0;
  for (std::size_t l = 2; l < path.size(); ++l)
    if (path[l - 2] == path[l]) ++count;
  return count;
}

PathStats y_b(const Graph& graph, const CommunityAssignment& assignment, const PathComposition& composition,
              double alpha) {
  if (graph.node_count() != assignment.node_count()) throw std::invalid_argument("y_b: graph/assignment size mismatch");
  PathStats stats;
  enumerate_paths(assignment, composition, [&](std::span<const int> p) {
    ++stats.path_count;
    for (std::size_t l = 0; l + 1 < p.size(); ++l)
      if (!graph.has_edge(p[l], p[l + 1])) return;
    stats.y_b += std::pow(alpha, backtrack_count(p));
  });
  return stats;
}

double expected_y_b(const Eigen::MatrixXd& P, const CommunityAssignment& assignment,
                    const PathComposition& composition, bool zero_diagonal, double alpha) {
  if (P.rows() != assignment.node_count() || P.cols() != P.rows())
    throw std::invalid_argument("expected_y_b: P has the wrong shape");
  double total = 0.0;
  std::vector<std::pair<int, int>> scratch;
  enumerate_paths(assignment, composition, [&](std::span<const int> p) {
    const double prod = distinct_edge_product(P, p, zero_diagonal, scratch);
    if (prod != 0.0) total += std::pow(alpha, backtrack_count(p)) * prod;
  });
  return total;
}

double distinct_edge_expectation(const Eigen::MatrixXd& P, const CommunityAssignment& assignment,
                                 const PathComposition& composition, bool zero_diagonal) {
  double total = 0.0;
  const auto t = static_cast<std::size_t>(composition.length());
  std::vector<std::pair<int, int>> scratch;
  enumerate_paths(assignment, composition, [&](std::span<const int> p) {
    const double prod = distinct_edge_product(P, p, zero_diagonal, scratch);
    if (prod != 0.0 && scratch.size() == t) total += prod;
  });
  return total;
}

PathBounds u_b_l_b(const BlockModel& model, const PathComposition& composition, int k) {
  const int t = composition.length();
  if (t < 1) throw std::invalid_argument("u_b_l_b: composition length must be at least 1");
  const Eigen::MatrixXd B = model.B();
  const auto& b = composition.labels;
  const double reduction = static_cast<double>(k) * (t - 1) + 1.0;
  PathBounds bounds{1.0, 1.0};
  for (int i = 1; i < t; ++i) {
    const double n_b = model.block_sizes[b[i]];
    bounds.upper *= n_b * B(b[i - 1], b[i]);
    bounds.lower *= std::max(0.0, n_b - reduction) * B(b[i - 1], b[i]);
  }
  bounds.upper *= B(b[t - 1], b[t]);
  bounds.lower *= B(b[t - 1], b[t]);
  return bounds;
}

}  // namespace sbmwalk
