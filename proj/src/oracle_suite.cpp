#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "sbmwalk/parallel.hpp"
#include "sbmwalk/path_oracle.hpp"
#include "sbmwalk/rng.hpp"

namespace sbmwalk {

namespace {

std::string describe(int model, const PathComposition& c, double alpha) {
  std::string s = "model " + std::to_string(model) + " i=" + std::to_string(c.source) +
                  " j=" + std::to_string(c.target) + " b=(";
  for (std::size_t k = 0; k < c.labels.size(); ++k) s += (k ? "," : "") + std::to_string(c.labels[k]);
  char buf[48];
  std::snprintf(buf, sizeof buf, ") alpha=%.4g", alpha);
  return s + buf;
}

std::string fmt(const char* pattern, double a, double b) {
  char buf[96];
  std::snprintf(buf, sizeof buf, pattern, a, b);
  return buf;
}

// Keeps the largest excess per check.
struct Tally {
  OracleCheck check;
  double worst_excess = 0.0;
  std::vector<std::pair<std::string, std::pair<std::int64_t, std::int64_t>>> groups;

  void record(bool ok, double excess, const std::string& what, const std::string& group = {}) {
    ++check.checked;
    if (!group.empty()) {
      auto it = std::find_if(groups.begin(), groups.end(), [&](const auto& g) { return g.first == group; });
      if (it == groups.end()) it = groups.insert(groups.end(), {group, {0, 0}});
      ++it->second.second;
      if (!ok) ++it->second.first;
    }
    if (ok) return;
    ++check.violations;
    if (check.worst.empty() || excess > worst_excess) {
      worst_excess = excess;
      check.worst = what;
    }
  }
};

Tally named(std::string name) {
  Tally tally;
  tally.check.name = std::move(name);
  return tally;
}

std::string group(int t, double alpha) {
  return "t=" + std::to_string(t) + (alpha == 1.0 ? " alpha=1" : " alpha=1/n");
}

OracleCheck finish(Tally& tally) {
  for (const auto& [name, counts] : tally.groups)
    tally.check.breakdown.push_back(name + ": " + std::to_string(counts.first) + "/" + std::to_string(counts.second));
  return tally.check;
}

struct Case {
  int model;
  PathComposition composition;
  double alpha;
};

}  // namespace

std::vector<BlockModel> oracle_models() {
  Eigen::MatrixXd one(1, 1);
  one << 0.5;
  Eigen::MatrixXd assortative(2, 2);
  assortative << 0.8, 0.3, 0.3, 0.8;
  Eigen::MatrixXd uneven(2, 2);
  uneven << 0.9, 0.4, 0.4, 0.7;
  return {build_block_model(1, {6}, one, 1.0), build_block_model(2, {4, 4}, assortative, 1.0),
          build_block_model(2, {3, 5}, uneven, 0.6)};
}

std::vector<OracleCheck> run_oracle_suite(const OracleSuiteOptions& options) {
  Tally walks = named("walk counts sum_b y_b = (A^t)_ij");
  Tally lower = named("lower bound L_b <= E Y_b");
  Tally distinct = named("distinct-edge mass <= U_b");
  Tally upper = named("upper bound E Y_b <= U_b");
  Tally monte_carlo = named("Monte Carlo mean within SE band of E Y_b");

  const auto models = oracle_models();
  std::vector<CommunityAssignment> assignments;
  std::vector<std::vector<Graph>> graphs(models.size());
  std::vector<Case> cases;
  for (std::size_t m = 0; m < models.size(); ++m) {
    const BlockModel& model = models[m];
    const auto assignment = grouped_assignment(model);
    assignments.push_back(assignment);
    const int n = model.node_count();
    graphs[m].resize(static_cast<std::size_t>(options.samples));
    parallel_for(graphs[m].size(), [&](std::size_t s) {
      graphs[m][s] = sample_graph(model, assignment, derive_seed(options.seed, m, s));
    });

    // Walk counts on a handful of the sampled graphs.
    const int checked_graphs = std::min(options.samples, 20);
    for (int s = 0; s < checked_graphs; ++s) {
      const Graph& g = graphs[m][static_cast<std::size_t>(s)];
      const Eigen::MatrixXd A = g.dense_adjacency();
      Eigen::MatrixXd power = A;
      for (int t = 1; t <= *std::max_element(options.lengths.begin(), options.lengths.end()); ++t) {
        if (t > 1) power = power * A;
        if (std::find(options.lengths.begin(), options.lengths.end(), t) == options.lengths.end()) continue;
        for (int i = 0; i < n; ++i)
          for (int j = 0; j < n; ++j) {
            double total = 0.0;
            for (const auto& c : compositions(assignment, i, j, t)) total += y_b(g, assignment, c).y_b;
            const double diff = std::abs(total - power(i, j));
            walks.record(diff == 0.0, diff, "model " + std::to_string(m) + " graph " + std::to_string(s) +
                                               fmt(" sum=%.17g power=%.17g", total, power(i, j)));
          }
      }
    }

    const Eigen::MatrixXd P = edge_probability_matrix(model, assignment);
    for (int t : options.lengths)
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          for (auto& c : compositions(assignment, i, j, t)) {
            const PathBounds bounds = u_b_l_b(model, c, 1);
            const double mass = distinct_edge_expectation(P, assignment, c, true);
            // Bounds hold in exact arithmetic; allow for rounding in the products.
            const double slack = 1e-12 * std::max(1.0, bounds.upper);
            distinct.record(mass <= bounds.upper + slack, mass - bounds.upper,
                            describe(static_cast<int>(m), c, 1.0) + fmt(": mass=%.6g U=%.6g", mass, bounds.upper));
            for (double alpha : {1.0, 1.0 / n}) {
              const double e = expected_y_b(P, assignment, c, true, alpha);
              const std::string what = describe(static_cast<int>(m), c, alpha);
              lower.record(bounds.lower <= e + slack, bounds.lower - e, what + fmt(": L=%.6g E=%.6g", bounds.lower, e), group(t, alpha));
              upper.record(e <= bounds.upper + slack, e - bounds.upper, what + fmt(": E=%.6g U=%.6g", e, bounds.upper), group(t, alpha));
              cases.push_back({static_cast<int>(m), c, alpha});
            }
          }
  }

  // Each case walks over the same graph samples; results land in fixed slots.
  struct McResult {
    double mean, se, expected;
  };
  std::vector<McResult> mc(cases.size());
  parallel_for(cases.size(), [&](std::size_t k) {
    const Case& cs = cases[k];
    const auto& assignment = assignments[static_cast<std::size_t>(cs.model)];
    const Eigen::MatrixXd P = edge_probability_matrix(models[static_cast<std::size_t>(cs.model)], assignment);
    double sum = 0.0, sum_sq = 0.0;
    for (const Graph& g : graphs[static_cast<std::size_t>(cs.model)]) {
      const double y = y_b(g, assignment, cs.composition, cs.alpha).y_b;
      sum += y;
      sum_sq += y * y;
    }
    const double N = options.samples;
    const double mean = sum / N;
    const double var = std::max(0.0, (sum_sq - N * mean * mean) / (N - 1));
    mc[k] = {mean, std::sqrt(var / N), expected_y_b(P, assignment, cs.composition, true, cs.alpha)};
  });
  for (std::size_t k = 0; k < cases.size(); ++k) {
    const auto& r = mc[k];
    const double dev = std::abs(r.mean - r.expected);
    // A zero-variance sample can only agree exactly (up to rounding).
    const bool ok = r.se > 0.0 ? dev <= options.se_multiplier * r.se : dev <= 1e-12 * std::max(1.0, r.expected);
    const double z = r.se > 0.0 ? dev / r.se : (dev > 0.0 ? INFINITY : 0.0);
    monte_carlo.record(ok, z,
                       describe(cases[k].model, cases[k].composition, cases[k].alpha) +
                           fmt(": mean=%.6g E=%.6g", r.mean, r.expected) + fmt(" se=%.3g z=%.3g", r.se, z),
                       group(cases[k].composition.length(), cases[k].alpha));
  }

  return {finish(walks), finish(lower), finish(distinct), finish(upper), finish(monte_carlo)};
}

}  // namespace sbmwalk
