// Acceptance checks. Usage: acceptance [A1 ... A9 | all]
// Prints one PASS/FAIL line per criterion; exit status 1 if any failed.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "sbmwalk/cooccurrence.hpp"
#include "sbmwalk/experiment.hpp"
#include "sbmwalk/m_matrix.hpp"
#include "sbmwalk/parallel.hpp"
#include "sbmwalk/path_oracle.hpp"
#include "sbmwalk/rng.hpp"
#include "sbmwalk/spectral.hpp"
#include "sbmwalk/walks.hpp"
#include "support.hpp"

#ifndef SBMWALK_SOURCE_DIR
#define SBMWALK_SOURCE_DIR "."
#endif

using namespace sbmwalk;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* format, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, format, args...);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t h = v.size() / 2;
  return v.size() % 2 ? v[h] : 0.5 * (v[h - 1] + v[h]);
}

std::vector<ResultRow> run_config(const std::string& name) {
  return run_experiment(load_config(std::string(SBMWALK_SOURCE_DIR) + "/configs/" + name));
}

std::vector<double> errors_for(const std::vector<ResultRow>& rows, WalkKernel kernel) {
  std::vector<double> out;
  for (const auto& r : rows)
    if (r.kernel == kernel) out.push_back(r.err);
  return out;
}

// Empirical vs limit M on one n = 30 graph.
Outcome a1() {
  const auto start = std::chrono::steady_clock::now();
  const int n = 30;
  const auto model = build_block_model(1, {n}, Eigen::MatrixXd::Ones(1, 1), 8.0 / n);
  const auto graph = sample_graph(model, grouped_assignment(model), 1);
  const Window w{2, 2};
  const int l = 10;
  const std::int64_t r = 200'000;
  const auto Mc = empirical_m(accumulate(deepwalk_walks(graph, r, l, 2), n, w), 1.0);
  const auto M = graph_m(graph, WalkKernel::deepwalk, w, l, 1.0, 1.0);
  double worst = 0.0;
  int pairs = 0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (!M.mask(i, j)) {
        ++pairs;
        worst = std::max(worst, std::abs(Mc.entries(i, j) - M.entries(i, j)));
      }
  const double secs = seconds_since(start);
  return {worst <= 0.05 && secs <= 60.0,
          fmt("max |M_C - M| = %.4f over %d pairs (tol 0.05), r = %lld, %.2f s (limit 60 s)", worst, pairs,
              static_cast<long long>(r), secs)};
}

// One step of the edge-state chain fixes the uniform law.
Outcome a2() {
  double worst = 0.0;
  int graphs = 0;
  for (std::uint64_t s = 0; s < 20; ++s) {
    Rng rng(derive_seed(2024, s));
    const int n = 5 + static_cast<int>(rng.below(36));
    const auto g = testing::connected_gnp(n, std::min(1.0, 3.0 / n + 0.5 * rng.uniform()), derive_seed(7, s));
    ++graphs;
    for (double alpha : {0.1, 1.0}) {
      const auto chain = edge_state_chain(g, alpha, 1.0);
      const Eigen::VectorXd u = Eigen::VectorXd::Constant(chain.state_count(), 1.0 / chain.state_count());
      worst = std::max(worst, (evolve_edge_distribution(chain, u, 1) - u).cwiseAbs().maxCoeff());
    }
  }
  return {worst <= 1e-12, fmt("%d graphs x alpha {0.1, 1}: max-abs drift %.3g (tol 1e-12)", graphs, worst)};
}

// The literal exact sandwich plus Monte Carlo agreement.
Outcome a3() {
  const auto start = std::chrono::steady_clock::now();
  const auto checks = run_oracle_suite();
  const double secs = seconds_since(start);
  bool pass = secs <= 120.0;
  std::string detail;
  for (const std::string prefix : {"lower bound", "upper bound", "Monte Carlo", "walk counts"}) {
    const auto it =
        std::find_if(checks.begin(), checks.end(), [&](const OracleCheck& c) { return c.name.starts_with(prefix); });
    if (it == checks.end()) {
      pass = false;
      detail += prefix + ": missing; ";
      continue;
    }
    pass = pass && it->passed();
    detail += fmt("%s %lld/%lld violations; ", prefix.c_str(), static_cast<long long>(it->violations),
                  static_cast<long long>(it->checked));
  }
  for (const auto& c : checks)
    for (const auto& b : c.breakdown)
      if (b.find(": 0/") == std::string::npos) detail += "[" + c.name + " " + b + "] ";
  return {pass, detail + fmt("%.1f s (limit 120 s)", secs)};
}

// Noiseless eigen-geometry.
Outcome a4() {
  const auto B0 = testing::two_block_b0(0.9, 0.3);
  const auto model = build_block_model(2, {100, 100}, B0, 0.3);
  const auto a = grouped_assignment(model);
  const auto dw = eigen_geometry_report(noiseless_m0(model, a, WalkKernel::deepwalk, {3, 3}, 10, 1.0, 1.0).entries, a);
  bool pass = dw.within_block_spread <= 1e-8 && dw.max_cross_deviation() <= 1e-8;
  std::string detail = fmt("deepwalk n=200: spread %.3g, |dist - 0.1414| %.3g (tol 1e-8); node2vec deviation",
                           dw.within_block_spread, dw.max_cross_deviation());
  double previous = INFINITY;
  for (int n : {60, 120, 240}) {
    const auto m = build_block_model(2, balanced_block_sizes(n, 2), B0, 0.3);
    const auto ga = grouped_assignment(m);
    const double dev = eigen_geometry_report(
        noiseless_m0(m, ga, WalkKernel::node2vec, {3, 3}, 10, 1.0, 1.0 / n).entries, ga).max_cross_deviation();
    // Non-increasing up to round-off.
    pass = pass && dev <= 1e-4 && dev <= previous + 1e-12;
    previous = dev;
    detail += fmt(" n=%d: %.3g", n, dev);
  }
  return {pass, detail + " (tol 1e-4, non-increasing)"};
}

Outcome a5() {
  const auto start = std::chrono::steady_clock::now();
  const auto rows = run_config("recovery.conf");
  const double secs = seconds_since(start);
  const double dw = median(errors_for(rows, WalkKernel::deepwalk));
  const double nv = median(errors_for(rows, WalkKernel::node2vec));
  return {dw <= 0.02 && nv <= 0.02 && secs <= 600.0,
          fmt("median err deepwalk %.4f, node2vec %.4f (tol 0.02), %.1f s (limit 600 s)", dw, nv, secs)};
}

Outcome a6() {
  const auto rows = run_config("failure.conf");
  bool pass = !rows.empty();
  double min_frob = INFINITY, min_masked = INFINITY;
  for (const auto& r : rows) {
    const double masked = static_cast<double>(r.masked_pairs) / (static_cast<double>(r.n) * r.n);
    pass = pass && r.frob_over_n >= 0.25 && masked >= 0.5;
    min_frob = std::min(min_frob, r.frob_over_n);
    min_masked = std::min(min_masked, masked);
  }
  return {pass, fmt("%zu rows: min frob_over_n %.4f (floor 0.25), min masked/n^2 %.4f (floor 0.5)", rows.size(),
                    min_frob, min_masked)};
}

Outcome a7() {
  const auto rows = run_config("backtracking.conf");
  const auto dw = errors_for(rows, WalkKernel::deepwalk);
  const auto nv = errors_for(rows, WalkKernel::node2vec);
  int ties = 0, nv_better = 0, dw_better = 0;
  for (std::size_t s = 0; s < dw.size(); ++s) {
    if (nv[s] == dw[s]) ++ties;
    else (nv[s] < dw[s] ? nv_better : dw_better) += 1;
  }
  const double mdw = median(dw), mnv = median(nv);
  const bool pass = !dw.empty() && mnv <= mdw && ties <= 0.25 * static_cast<double>(dw.size());
  return {pass, fmt("median err node2vec %.4f vs deepwalk %.4f; ties %d/%zu (max 25%%), node2vec better %d, deepwalk "
                    "better %d",
                    mnv, mdw, ties, dw.size(), nv_better, dw_better)};
}

// Davis-Kahan on noiseless matrices plus symmetric noise.
Outcome a8() {
  const auto model = build_block_model(2, {70, 50}, testing::two_block_b0(0.9, 0.3), 0.3);
  const auto a = grouped_assignment(model);
  bool pass = true;
  int trials = 0;
  double worst_ratio = 0.0;
  for (auto kernel : {WalkKernel::deepwalk, WalkKernel::node2vec}) {
    const Window w = kernel == WalkKernel::deepwalk ? Window{2, 2} : Window{3, 3};
    const auto M0 = noiseless_m0(model, a, kernel, w, 10, 1.0, 1.0 / 120).entries;
    const auto base = top_k_eigen(M0, 2);
    const double gap = base.eigenvalues.cwiseAbs().minCoeff();
    const int n = static_cast<int>(M0.rows());
    for (double rel : {0.01, 0.1, 0.5})
      for (std::uint64_t s = 0; s < 10; ++s) {
        Rng rng(derive_seed(88, static_cast<std::uint64_t>(rel * 1000), s));
        Eigen::MatrixXd E(n, n);
        for (int i = 0; i < n; ++i)
          for (int j = i; j < n; ++j) E(i, j) = E(j, i) = rng.uniform() - 0.5;
        E *= rel * gap / E.norm();
        const double dist = procrustes_distance(top_k_eigen(M0 + E, 2).vectors, base.vectors);
        const double bound = std::sqrt(8.0 * 2) * E.norm() / gap;
        pass = pass && dist <= bound;
        worst_ratio = std::max(worst_ratio, dist / bound);
        ++trials;
      }
  }
  return {pass, fmt("%d trials, ||E||_F / min|lambda| in {0.01, 0.1, 0.5}: max distance/bound %.3f (must be <= 1)",
                    trials, worst_ratio)};
}

Outcome a9() {
  const auto config = load_config(std::string(SBMWALK_SOURCE_DIR) + "/configs/recovery.conf");
  std::string csv[2];
  const int threads[2] = {1, 4};
  for (int k = 0; k < 2; ++k) {
    set_thread_count(threads[k]);
    std::ostringstream out;
    write_csv(out, run_experiment(config));
    csv[k] = out.str();
  }
  set_thread_count(1);
  return {csv[0] == csv[1], fmt("recovery CSV (%zu bytes) identical under threads 1 and 4: %s", csv[0].size(),
                                csv[0] == csv[1] ? "yes" : "no")};
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"A1", a1}, {"A2", a2}, {"A3", a3}, {"A4", a4}, {"A5", a5}, {"A6", a6}, {"A7", a7}, {"A8", a8}, {"A9", a9}};
  std::vector<std::string> wanted(argv + 1, argv + argc);
  if (wanted.empty() || (wanted.size() == 1 && wanted[0] == "all"))
    for (const auto& c : criteria) wanted.push_back(c.first);
  bool all_pass = true;
  for (const auto& id : wanted) {
    const auto it = std::find_if(criteria.begin(), criteria.end(), [&](const auto& c) { return c.first == id; });
    if (it == criteria.end()) {
      if (id == "all") continue;
      std::fprintf(stderr, "unknown criterion '%s'\n", id.c_str());
      return 2;
    }
    Outcome o;
    try {
      o = it->second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    std::printf("%s %s: %s\n", o.pass ? "PASS" : "FAIL", id.c_str(), o.detail.c_str());
    std::fflush(stdout);
    all_pass = all_pass && o.pass;
  }
  return all_pass ? 0 : 1;
}
