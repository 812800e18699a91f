#include "sbmwalk/walks.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <string>

#include "sbmwalk/parallel.hpp"
#include "sbmwalk/rng.hpp"

namespace sbmwalk {

const char* kernel_name(WalkKernel kernel) {
  return kernel == WalkKernel::deepwalk ? "deepwalk" : "node2vec";
}

WalkKernel parse_kernel(const std::string& name) {
  if (name == "deepwalk") return WalkKernel::deepwalk;
  if (name == "node2vec") return WalkKernel::node2vec;
  throw std::invalid_argument("unknown walk kernel '" + name + "' (expected deepwalk or node2vec)");
}

namespace {

void check_walk_args(const Graph& graph, std::int64_t r, int l) {
  if (graph.two_m() == 0) throw std::invalid_argument("walks: graph has no edges");
  if (l < 2) throw std::invalid_argument("walks: walk length l must be at least 2");
  if (r < 0) throw std::invalid_argument("walks: negative walk count");
}

// Source node of the ordered edge at CSR position k.
int edge_source(const Graph& graph, std::int64_t k) {
  auto off = graph.offsets();
  return static_cast<int>(std::upper_bound(off.begin(), off.end(), k) - off.begin()) - 1;
}

void put_u64(std::ostream& out, std::uint64_t v) {
  unsigned char bytes[8];
  for (int b = 0; b < 8; ++b) bytes[b] = static_cast<unsigned char>(v >> (8 * b));
  out.write(reinterpret_cast<const char*>(bytes), 8);
}

std::uint64_t get_u64(std::istream& in) {
  unsigned char bytes[8];
  if (!in.read(reinterpret_cast<char*>(bytes), 8)) throw std::invalid_argument("walk corpus: truncated header");
  std::uint64_t v = 0;
  for (int b = 0; b < 8; ++b) v |= static_cast<std::uint64_t>(bytes[b]) << (8 * b);
  return v;
}

}  // namespace

void WalkCorpus::write_binary(std::ostream& out) const {
  put_u64(out, static_cast<std::uint64_t>(params.r));
  put_u64(out, static_cast<std::uint64_t>(params.l));
  for (std::uint32_t v : nodes) {
    unsigned char bytes[4];
    for (int b = 0; b < 4; ++b) bytes[b] = static_cast<unsigned char>(v >> (8 * b));
    out.write(reinterpret_cast<const char*>(bytes), 4);
  }
}

WalkCorpus WalkCorpus::read_binary(std::istream& in) {
  WalkCorpus c;
  c.params.r = static_cast<std::int64_t>(get_u64(in));
  c.params.l = static_cast<int>(get_u64(in));
  c.nodes.resize(static_cast<std::size_t>(c.params.r) * static_cast<std::size_t>(c.params.l));
  std::uint32_t max_id = 0;
  for (auto& v : c.nodes) {
    unsigned char bytes[4];
    if (!in.read(reinterpret_cast<char*>(bytes), 4)) throw std::invalid_argument("walk corpus: truncated body");
    v = 0;
    for (int b = 0; b < 4; ++b) v |= static_cast<std::uint32_t>(bytes[b]) << (8 * b);
    max_id = std::max(max_id, v);
  }
  c.node_count = c.nodes.empty() ? 0 : static_cast<int>(max_id) + 1;
  return c;
}

WalkCorpus deepwalk_walks(const Graph& graph, std::int64_t r, int l, std::uint64_t seed) {
  check_walk_args(graph, r, l);
  WalkCorpus corpus;
  corpus.params = {r, l, WalkKernel::deepwalk, 1.0, 1.0, seed};
  corpus.node_count = graph.node_count();
  corpus.nodes.resize(static_cast<std::size_t>(r) * l);

  parallel_for(static_cast<std::size_t>(r), [&](std::size_t m) {
    Rng rng(derive_seed(seed, m));
    std::uint32_t* w = corpus.nodes.data() + m * l;
    // A uniform ordered edge has a source distributed as deg(v) / 2m.
    int cur = edge_source(graph, static_cast<std::int64_t>(rng.below(graph.two_m())));
    w[0] = static_cast<std::uint32_t>(cur);
    for (int k = 1; k < l; ++k) {
      auto nb = graph.neighbors(cur);
      cur = nb[rng.below(nb.size())];
      w[k] = static_cast<std::uint32_t>(cur);
    }
  });
  return corpus;
}

WalkCorpus node2vec_walks(const Graph& graph, std::int64_t r, int l, double alpha, double beta,
                          std::uint64_t seed) {
  check_walk_args(graph, r, l);
  if (!(alpha >= 0.0)) throw std::invalid_argument("node2vec: alpha must be non-negative");
  if (!(beta > 0.0)) throw std::invalid_argument("node2vec: beta must be positive");

  WalkCorpus corpus;
  corpus.params = {r, l, WalkKernel::node2vec, alpha, beta, seed};
  corpus.node_count = graph.node_count();
  corpus.nodes.resize(static_cast<std::size_t>(r) * l);
  std::atomic<std::int64_t> dead_ends{0};
  auto targets = graph.targets();

  parallel_for(static_cast<std::size_t>(r), [&](std::size_t m) {
    Rng rng(derive_seed(seed, m));
    std::uint32_t* w = corpus.nodes.data() + m * l;
    const auto k0 = static_cast<std::int64_t>(rng.below(graph.two_m()));
    int prev = edge_source(graph, k0);
    int cur = targets[k0];
    w[0] = static_cast<std::uint32_t>(prev);
    w[1] = static_cast<std::uint32_t>(cur);
    std::vector<double> weights;
    std::int64_t local_dead_ends = 0;

    for (int k = 2; k < l; ++k) {
      auto nb = graph.neighbors(cur);
      const double deg = static_cast<double>(nb.size());
      int next = prev;
      if (beta == 1.0) {
        const double total = deg - 1.0 + alpha;
        if (total <= 0.0) {
          ++local_dead_ends;
        } else if (rng.uniform() * total >= alpha) {
          // Uniform over the deg - 1 neighbors other than prev.
          const auto prev_pos = std::lower_bound(nb.begin(), nb.end(), prev) - nb.begin();
          auto pick = static_cast<std::ptrdiff_t>(rng.below(nb.size() - 1));
          if (pick >= prev_pos) ++pick;
          next = nb[pick];
        }
      } else {
        auto prev_nb = graph.neighbors(prev);
        weights.resize(nb.size());
        double total = 0.0;
        std::size_t p = 0;
        for (std::size_t q = 0; q < nb.size(); ++q) {
          const int x = nb[q];
          while (p < prev_nb.size() && prev_nb[p] < x) ++p;
          const bool common = p < prev_nb.size() && prev_nb[p] == x;
          weights[q] = x == prev ? alpha : (common ? 1.0 : beta);
          total += weights[q];
        }
        if (total <= 0.0) {
          ++local_dead_ends;
        } else {
          double u = rng.uniform() * total;
          std::size_t q = 0;
          for (; q + 1 < nb.size(); ++q) {
            if (u < weights[q]) break;
            u -= weights[q];
          }
          // Guard against rounding landing on a zero-weight tail entry.
          while (weights[q] == 0.0 && q > 0) --q;
          next = nb[q];
        }
      }
      prev = cur;
      cur = next;
      w[k] = static_cast<std::uint32_t>(cur);
    }
    dead_ends += local_dead_ends;
  });
  corpus.dead_end_events = dead_ends.load();
  return corpus;
}

EdgeStateChain edge_state_chain(const Graph& graph, double alpha, double beta) {
  if (graph.two_m() == 0) throw std::invalid_argument("edge_state_chain: graph has no edges");
  if (!(alpha >= 0.0)) throw std::invalid_argument("edge_state_chain: alpha must be non-negative");
  if (!(beta > 0.0)) throw std::invalid_argument("edge_state_chain: beta must be positive");

  const auto S = graph.two_m();
  auto off = graph.offsets();
  auto targets = graph.targets();
  EdgeStateChain chain;
  chain.states.reserve(static_cast<std::size_t>(S));
  for (int u = 0; u < graph.node_count(); ++u)
    for (int v : graph.neighbors(u)) chain.states.emplace_back(u, v);

  auto state_index = [&](int u, int v) {
    auto nb = graph.neighbors(u);
    return off[u] + (std::lower_bound(nb.begin(), nb.end(), v) - nb.begin());
  };

  std::vector<Eigen::Triplet<double>> entries;
  for (std::int64_t s = 0; s < S; ++s) {
    const auto [u, v] = chain.states[s];
    double total = 0.0;
    const std::size_t first = entries.size();
    for (auto k = off[v]; k < off[v + 1]; ++k) {
      const int w = targets[k];
      const double weight = w == u ? alpha : (graph.has_edge(u, w) ? 1.0 : beta);
      if (weight > 0.0) entries.emplace_back(static_cast<int>(s), static_cast<int>(k), weight);
      total += weight;
    }
    if (total <= 0.0) {
      entries.resize(first);
      entries.emplace_back(static_cast<int>(s), static_cast<int>(state_index(v, u)), 1.0);
    } else {
      for (auto e = first; e < entries.size(); ++e)
        entries[e] = Eigen::Triplet<double>(entries[e].row(), entries[e].col(), entries[e].value() / total);
    }
  }
  chain.transition.resize(S, S);
  chain.transition.setFromTriplets(entries.begin(), entries.end());
  chain.initial = Eigen::VectorXd::Constant(S, 1.0 / static_cast<double>(S));
  return chain;
}

Eigen::VectorXd evolve_edge_distribution(const EdgeStateChain& chain, const Eigen::VectorXd& dist, int steps) {
  if (steps < 0) throw std::invalid_argument("evolve_edge_distribution: negative step count");
  if (dist.size() != chain.state_count()) throw std::invalid_argument("evolve_edge_distribution: size mismatch");
  if (std::abs(dist.sum() - 1.0) > 1e-12)
    throw std::invalid_argument("evolve_edge_distribution: input does not sum to 1");
  Eigen::VectorXd x = dist;
  for (int s = 0; s < steps; ++s) {
    Eigen::VectorXd next = chain.transition.transpose() * x;
    x.swap(next);
  }
  return x;
}

}  // namespace sbmwalk
