#include "sbmwalk/sbm.hpp"

#include <algorithm>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "sbmwalk/parallel.hpp"
#include "sbmwalk/rng.hpp"

namespace sbmwalk {

int BlockModel::node_count() const { return std::accumulate(block_sizes.begin(), block_sizes.end(), 0); }

Eigen::MatrixXd BlockModel::B() const { return rho * B0; }

BlockModel build_block_model(int K, std::vector<int> block_sizes, Eigen::MatrixXd B0, double rho) {
  if (K < 1) throw std::invalid_argument("block model: K must be positive");
  if (static_cast<int>(block_sizes.size()) != K || B0.rows() != K || B0.cols() != K)
    throw std::invalid_argument("block model: dimension mismatch between K, block sizes and B0");
  for (int s : block_sizes)
    if (s < 1) throw std::invalid_argument("block model: every block size must be at least 1");
  for (int r = 0; r < K; ++r) {
    for (int s = 0; s < K; ++s) {
      const double v = B0(r, s);
      if (!(v > 0.0 && v <= 1.0)) throw std::invalid_argument("block model: B0 entry out of range (0, 1]");
      if (v != B0(s, r)) throw std::invalid_argument("block model: B0 must be symmetric");
    }
  }
  if (!(rho >= 0.0 && rho <= 1.0)) throw std::invalid_argument("block model: rho out of range [0, 1]");
  if (rho * B0.maxCoeff() > 1.0) throw std::invalid_argument("block model: rho * max(B0) exceeds 1");
  return BlockModel{K, std::move(block_sizes), std::move(B0), rho};
}

std::vector<int> balanced_block_sizes(int n, int K) {
  if (K < 1 || n < K) throw std::invalid_argument("balanced_block_sizes: need n >= K >= 1");
  std::vector<int> sizes(K, n / K);
  for (int r = 0; r < n % K; ++r) ++sizes[r];
  return sizes;
}

std::vector<int> CommunityAssignment::block_counts() const {
  std::vector<int> counts(std::max(K, 0), 0);
  for (int g : labels) {
    if (g < 0 || g >= K) throw std::invalid_argument("assignment: label out of range");
    ++counts[g];
  }
  return counts;
}

CommunityAssignment grouped_assignment(const BlockModel& model) {
  CommunityAssignment a{model.K, {}};
  a.labels.reserve(model.node_count());
  for (int r = 0; r < model.K; ++r) a.labels.insert(a.labels.end(), model.block_sizes[r], r);
  return a;
}

void check_assignment(const BlockModel& model, const CommunityAssignment& assignment) {
  if (assignment.K != model.K) throw std::invalid_argument("assignment: K differs from the model");
  if (assignment.block_counts() != model.block_sizes)
    throw std::invalid_argument("assignment: label counts differ from the model's block sizes");
}

Eigen::MatrixXd edge_probability_matrix(const BlockModel& model, const CommunityAssignment& assignment) {
  check_assignment(model, assignment);
  const int n = assignment.node_count();
  const Eigen::MatrixXd B = model.B();
  Eigen::MatrixXd P(n, n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) P(i, j) = B(assignment.labels[i], assignment.labels[j]);
  return P;
}

Eigen::MatrixXi membership_matrix(std::span<const int> labels, int K) {
  Eigen::MatrixXi theta = Eigen::MatrixXi::Zero(static_cast<Eigen::Index>(labels.size()), K);
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] < 0 || labels[i] >= K) throw std::invalid_argument("membership_matrix: label out of range");
    theta(static_cast<Eigen::Index>(i), labels[i]) = 1;
  }
  return theta;
}

// --- Graph -----------------------------------------------------------------

Graph Graph::from_edges(int n, std::vector<std::pair<int, int>> edges) {
  if (n < 0) throw std::invalid_argument("graph: negative node count");
  std::vector<std::pair<int, int>> directed;
  directed.reserve(edges.size() * 2);
  for (auto [u, v] : edges) {
    if (u < 0 || v < 0 || u >= n || v >= n) throw std::invalid_argument("graph: endpoint out of range");
    if (u == v) throw std::invalid_argument("graph: self-loops are not allowed");
    directed.emplace_back(u, v);
    directed.emplace_back(v, u);
  }
  std::sort(directed.begin(), directed.end());
  directed.erase(std::unique(directed.begin(), directed.end()), directed.end());

  Graph g;
  g.n_ = n;
  g.offsets_.assign(n + 1, 0);
  g.targets_.reserve(directed.size());
  for (auto [u, v] : directed) {
    ++g.offsets_[u + 1];
    g.targets_.push_back(v);
  }
  std::partial_sum(g.offsets_.begin(), g.offsets_.end(), g.offsets_.begin());
  g.two_m_ = static_cast<std::int64_t>(directed.size());
  return g;
}

std::vector<int> Graph::degrees() const {
  std::vector<int> d(n_);
  for (int v = 0; v < n_; ++v) d[v] = degree(v);
  return d;
}

bool Graph::has_edge(int u, int v) const {
  auto nb = neighbors(u);
  return std::binary_search(nb.begin(), nb.end(), v);
}

std::vector<std::pair<int, int>> Graph::edges() const {
  std::vector<std::pair<int, int>> out;
  out.reserve(static_cast<std::size_t>(edge_count()));
  for (int u = 0; u < n_; ++u)
    for (int v : neighbors(u))
      if (u < v) out.emplace_back(u, v);
  return out;
}

Eigen::MatrixXd Graph::dense_adjacency() const {
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(n_, n_);
  for (int u = 0; u < n_; ++u)
    for (int v : neighbors(u)) A(u, v) = 1.0;
  return A;
}

void Graph::write_text(std::ostream& out) const {
  out << n_ << ' ' << edge_count() << '\n';
  for (auto [u, v] : edges()) out << u << ' ' << v << '\n';
}

std::string Graph::to_text() const {
  std::ostringstream ss;
  write_text(ss);
  return ss.str();
}

Graph Graph::read_text(std::istream& in) {
  long long n = 0, m = 0;
  if (!(in >> n >> m) || n < 0 || m < 0) throw std::invalid_argument("graph text: bad header");
  std::vector<std::pair<int, int>> edges;
  edges.reserve(static_cast<std::size_t>(m));
  for (long long e = 0; e < m; ++e) {
    long long i = 0, j = 0;
    if (!(in >> i >> j)) throw std::invalid_argument("graph text: truncated edge list");
    if (i >= j) throw std::invalid_argument("graph text: edges must be written with i < j");
    edges.emplace_back(static_cast<int>(i), static_cast<int>(j));
  }
  return from_edges(static_cast<int>(n), std::move(edges));
}

Graph sample_graph(const BlockModel& model, const CommunityAssignment& assignment, std::uint64_t seed) {
  check_assignment(model, assignment);
  const int n = assignment.node_count();
  const Eigen::MatrixXd B = model.B();
  std::vector<std::vector<int>> upper(n);
  parallel_for(static_cast<std::size_t>(n), [&](std::size_t row) {
    const int i = static_cast<int>(row);
    Rng rng(derive_seed(seed, static_cast<std::uint64_t>(i)));
    const int gi = assignment.labels[i];
    for (int j = i + 1; j < n; ++j) {
      // One draw per pair, always consumed, keeps the stream layout canonical.
      const double u = rng.uniform();
      if (u < B(gi, assignment.labels[j])) upper[i].push_back(j);
    }
  });
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < n; ++i)
    for (int j : upper[i]) edges.emplace_back(i, j);
  return Graph::from_edges(n, std::move(edges));
}

}  // namespace sbmwalk
