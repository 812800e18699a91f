#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "sbmwalk/m_matrix.hpp"
#include "sbmwalk/parallel.hpp"
#include "sbmwalk/rng.hpp"
#include "sbmwalk/spectral.hpp"
#include "support.hpp"

using namespace sbmwalk;

namespace {

Eigen::MatrixXd random_symmetric(int n, double scale, std::uint64_t seed) {
  Rng rng(seed);
  Eigen::MatrixXd E(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) E(i, j) = E(j, i) = scale * (rng.uniform() - 0.5);
  return E;
}

// Misclassification by trying all K! relabelings.
double brute_misclassification(const std::vector<int>& predicted, const std::vector<int>& truth, int K) {
  std::vector<int> perm(K);
  std::iota(perm.begin(), perm.end(), 0);
  std::size_t best = predicted.size();
  do {
    std::size_t wrong = 0;
    for (std::size_t i = 0; i < predicted.size(); ++i) wrong += perm[predicted[i]] != truth[i];
    best = std::min(best, wrong);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return static_cast<double>(best) / static_cast<double>(predicted.size());
}

}  // namespace

TEST_CASE("top_k_eigen examples") {
  const auto id = top_k_eigen(Eigen::MatrixXd::Identity(2, 2), 1);
  CHECK(id.eigenvalues(0) == doctest::Approx(1.0));

  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(2, 2);
  d(0, 0) = 3;
  d(1, 1) = -5;
  const auto neg = top_k_eigen(d, 1);
  CHECK(neg.eigenvalues(0) == doctest::Approx(-5.0));
  CHECK(std::abs(neg.vectors(1, 0)) == doctest::Approx(1.0));

  Eigen::MatrixXd swap(2, 2);
  swap << 0, 1, 1, 0;
  const auto s = top_k_eigen(swap, 2);
  CHECK(s.eigenvalues(0) == doctest::Approx(1.0));
  CHECK(s.eigenvalues(1) == doctest::Approx(-1.0));
  const double h = 1 / std::sqrt(2.0);
  CHECK(s.vectors(0, 0) == doctest::Approx(h));
  CHECK(s.vectors(1, 0) == doctest::Approx(h));
  CHECK(s.vectors(0, 1) == doctest::Approx(h));
  CHECK(s.vectors(1, 1) == doctest::Approx(-h));
}

TEST_CASE("top_k_eigen tie-breaking and errors") {
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(3, 3);
  d(0, 0) = -2;
  d(1, 1) = 2;
  d(2, 2) = 1;
  const auto e = top_k_eigen(d, 2);
  CHECK(e.eigenvalues(0) == 2.0);
  CHECK(e.eigenvalues(1) == -2.0);
  Eigen::MatrixXd asym = d;
  asym(0, 1) = 0.5;
  CHECK_THROWS_AS(top_k_eigen(asym, 1), std::invalid_argument);
  CHECK_THROWS_AS(top_k_eigen(d, 4), std::invalid_argument);
  CHECK_THROWS_AS(top_k_eigen(d, 0), std::invalid_argument);
}

TEST_CASE("eigenpairs are orthonormal and satisfy the residual bound") {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const auto M = random_symmetric(40, 2.0, seed);
    const auto e = top_k_eigen(M, 4);
    CHECK((e.vectors.transpose() * e.vectors - Eigen::MatrixXd::Identity(4, 4)).cwiseAbs().maxCoeff() <= 1e-8);
    for (int k = 0; k < 4; ++k) {
      CHECK((M * e.vectors.col(k) - e.eigenvalues(k) * e.vectors.col(k)).norm() <= 1e-6 * M.norm());
      if (k > 0) CHECK(std::abs(e.eigenvalues(k - 1)) >= std::abs(e.eigenvalues(k)));
      // Sign convention: first non-negligible coordinate positive.
      for (int i = 0; i < 40; ++i)
        if (std::abs(e.vectors(i, k)) > 1e-12) {
          CHECK(e.vectors(i, k) > 0);
          break;
        }
    }
  }
}

TEST_CASE("k-means on exact point masses") {
  Eigen::MatrixXd rows(6, 2);
  rows << 0, 0, 0, 0, 0, 0, 1, 2, 1, 2, 1, 2;
  const auto r = kmeans_cluster(rows, 2, 4, 50, 1);
  CHECK(r.objective == 0.0);
  CHECK(misclassification_rate(r.labels, std::vector<int>{0, 0, 0, 1, 1, 1}, 2) == 0.0);
  CHECK(r.membership().rowwise().sum() == Eigen::VectorXi::Ones(6));
}

TEST_CASE("k-means with identical rows repairs one empty cluster") {
  const Eigen::MatrixXd rows = Eigen::MatrixXd::Constant(5, 3, 0.7);
  const auto r = kmeans_cluster(rows, 2, 1, 20, 3);
  CHECK(r.objective == 0.0);
  CHECK(r.empty_cluster_repairs == 1);
  CHECK_THROWS_AS(kmeans_cluster(rows, 6, 1, 20, 3), std::invalid_argument);
  CHECK_THROWS_AS(kmeans_cluster(rows, 2, 0, 20, 3), std::invalid_argument);
}

TEST_CASE("k-means objective equals the cost recomputed from its parts") {
  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    Rng rng(seed);
    Eigen::MatrixXd rows(50, 3);
    for (Eigen::Index k = 0; k < rows.size(); ++k) rows(k) = (2 * rng.uniform() - 1);
    const auto r = kmeans_cluster(rows, 3, 8, 100, seed);
    CHECK(std::abs(r.objective - kmeans_cost(rows, r.labels, r.centers)) <= 1e-9);
    // Lloyd fixed point: each row sits with its nearest center.
    for (int i = 0; i < 50; ++i) {
      const double own = (rows.row(i) - r.centers.row(r.labels[i])).squaredNorm();
      for (int c = 0; c < 3; ++c) CHECK(own <= (rows.row(i) - r.centers.row(c)).squaredNorm() + 1e-12);
    }
  }
}

TEST_CASE("k-means is deterministic and thread-count independent") {
  Rng rng(9);
  Eigen::MatrixXd rows(80, 2);
  for (Eigen::Index k = 0; k < rows.size(); ++k) rows(k) = rng.uniform();
  set_thread_count(1);
  const auto a = kmeans_cluster(rows, 4, 32, 100, 5);
  set_thread_count(4);
  const auto b = kmeans_cluster(rows, 4, 32, 100, 5);
  set_thread_count(1);
  CHECK(a.labels == b.labels);
  CHECK(a.objective == b.objective);
  CHECK(a.winning_restart == b.winning_restart);
}

TEST_CASE("spectral clustering of an exact block M0 recovers the truth") {
  const auto model = build_block_model(3, {10, 14, 8}, Eigen::MatrixXd::Constant(3, 3, 0.2) +
                                                           0.5 * Eigen::MatrixXd::Identity(3, 3), 0.6);
  const auto truth = grouped_assignment(model);
  const auto M0 = noiseless_m0(model, truth, WalkKernel::deepwalk, {2, 3}, 8, 1.0, 1.0);
  const auto r = spectral_cluster(M0.entries, 3, 32, 100, 7);
  CHECK(r.objective <= 1e-16);
  CHECK(misclassification_rate(r.labels, truth.labels, 3) == 0.0);

  // Cost sits at round-off level here; Lloyd's monotonicity guard must not fire.
  const auto two = build_block_model(2, {30, 30}, testing::two_block_b0(0.9, 0.3), 0.3);
  const auto t2 = grouped_assignment(two);
  const auto N0 = noiseless_m0(two, t2, WalkKernel::node2vec, {3, 3}, 10, 1.0, 1.0 / 60);
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto r2 = spectral_cluster(N0.entries, 2, 8, 100, seed);
    CHECK(misclassification_rate(r2.labels, t2.labels, 2) == 0.0);
  }
}

TEST_CASE("misclassification examples") {
  const std::vector<int> truth{0, 0, 1, 1};
  CHECK(misclassification_rate(truth, truth, 2) == 0.0);
  CHECK(misclassification_rate(std::vector<int>{1, 1, 0, 0}, truth, 2) == 0.0);
  CHECK(misclassification_rate(std::vector<int>{0, 1, 1, 1}, truth, 2) == 0.25);
  CHECK_THROWS_AS(misclassification_rate(std::vector<int>{0, 1}, truth, 2), std::invalid_argument);
  CHECK_THROWS_AS(misclassification_rate(std::vector<int>{0, 1, 2, 1}, truth, 2), std::invalid_argument);
}

TEST_CASE("Hungarian assignment matches permutation enumeration") {
  Rng rng(77);
  for (int trial = 0; trial < 300; ++trial) {
    const int K = 1 + static_cast<int>(rng.below(6));
    Eigen::MatrixXd cost(K, K);
    for (Eigen::Index k = 0; k < cost.size(); ++k) cost(k) = static_cast<double>(rng.below(10));
    const auto assign = min_cost_assignment(cost);
    double got = 0.0;
    for (int i = 0; i < K; ++i) got += cost(i, assign[i]);
    std::vector<int> perm(K);
    std::iota(perm.begin(), perm.end(), 0);
    double best = INFINITY;
    do {
      double c = 0.0;
      for (int i = 0; i < K; ++i) c += cost(i, perm[i]);
      best = std::min(best, c);
    } while (std::next_permutation(perm.begin(), perm.end()));
    CHECK(got == best);
    auto sorted = assign;
    std::sort(sorted.begin(), sorted.end());
    for (int i = 0; i < K; ++i) CHECK(sorted[i] == i);
  }
}

TEST_CASE("misclassification matches brute force and ignores relabeling") {
  Rng rng(31);
  for (int trial = 0; trial < 200; ++trial) {
    const int K = 2 + static_cast<int>(rng.below(4));
    const int n = 5 + static_cast<int>(rng.below(30));
    std::vector<int> predicted(n), truth(n);
    for (int i = 0; i < n; ++i) {
      truth[i] = static_cast<int>(rng.below(K));
      predicted[i] = rng.uniform() < 0.6 ? truth[i] : static_cast<int>(rng.below(K));
    }
    const double rate = misclassification_rate(predicted, truth, K);
    CHECK(rate == doctest::Approx(brute_misclassification(predicted, truth, K)));
    std::vector<int> perm(K);
    std::iota(perm.begin(), perm.end(), 0);
    for (int k = K - 1; k > 0; --k) std::swap(perm[k], perm[rng.below(k + 1)]);
    std::vector<int> relabeled(n);
    for (int i = 0; i < n; ++i) relabeled[i] = perm[predicted[i]];
    CHECK(misclassification_rate(relabeled, truth, K) == rate);
  }
}

TEST_CASE("eigen geometry of DeepWalk M0") {
  const auto model = build_block_model(2, {50, 50}, testing::two_block_b0(0.9, 0.3), 0.3);
  const auto truth = grouped_assignment(model);
  const auto M0 = noiseless_m0(model, truth, WalkKernel::deepwalk, {2, 2}, 10, 1.0, 1.0);
  const auto report = eigen_geometry_report(M0.entries, truth);
  CHECK(report.within_block_spread <= 1e-8);
  REQUIRE(report.cross_block.size() == 1u);
  CHECK(report.cross_block[0].predicted == doctest::Approx(0.2));
  CHECK(report.cross_block[0].observed == doctest::Approx(0.2).epsilon(1e-8));
  CHECK(report.max_cross_deviation() <= 1e-8);

  const auto uneven = build_block_model(3, {12, 20, 30}, Eigen::MatrixXd::Constant(3, 3, 0.1) +
                                                           0.6 * Eigen::MatrixXd::Identity(3, 3), 0.5);
  const auto t3 = grouped_assignment(uneven);
  const auto r3 = eigen_geometry_report(noiseless_m0(uneven, t3, WalkKernel::deepwalk, {2, 4}, 10, 1.0, 1.0).entries, t3);
  CHECK(r3.cross_block.size() == 3u);
  CHECK(r3.within_block_spread <= 1e-8);
  CHECK(r3.max_cross_deviation() <= 1e-8);
}

TEST_CASE("procrustes distance") {
  Rng rng(4);
  Eigen::MatrixXd V0(12, 2);
  for (Eigen::Index k = 0; k < V0.size(); ++k) V0(k) = (2 * rng.uniform() - 1);
  V0 = Eigen::HouseholderQR<Eigen::MatrixXd>(V0).householderQ() * Eigen::MatrixXd::Identity(12, 2);
  const double theta = 0.7;
  Eigen::Matrix2d O;
  O << std::cos(theta), -std::sin(theta), std::sin(theta), std::cos(theta);
  CHECK(procrustes_distance(V0 * O, V0) <= 1e-12);
  Eigen::Matrix2d reflect;
  reflect << 1, 0, 0, -1;
  CHECK(procrustes_distance(V0 * reflect, V0) <= 1e-12);

  // Against a scan over rotations and reflections.
  Eigen::MatrixXd V(12, 2);
  for (Eigen::Index k = 0; k < V.size(); ++k) V(k) = (2 * rng.uniform() - 1);
  double scan = INFINITY;
  for (int s = 0; s < 20000; ++s) {
    const double a = 2 * M_PI * s / 20000;
    Eigen::Matrix2d R;
    R << std::cos(a), -std::sin(a), std::sin(a), std::cos(a);
    scan = std::min({scan, (V - V0 * R).norm(), (V - V0 * R * reflect).norm()});
  }
  const double got = procrustes_distance(V, V0);
  CHECK(got <= scan + 1e-12);
  CHECK(got >= scan - 1e-3);
  CHECK_THROWS_AS(procrustes_distance(V, V0.leftCols(1)), std::invalid_argument);
}

TEST_CASE("Davis-Kahan bound on perturbed noiseless matrices") {
  const auto model = build_block_model(2, {30, 30}, testing::two_block_b0(0.9, 0.3), 0.4);
  const auto truth = grouped_assignment(model);
  const auto M0 = noiseless_m0(model, truth, WalkKernel::deepwalk, {2, 2}, 10, 1.0, 1.0).entries;
  const auto base = top_k_eigen(M0, 2);
  const double gap = base.eigenvalues.cwiseAbs().minCoeff();
  for (double scale : {1e-3, 1e-2, 1e-1}) {
    const Eigen::MatrixXd E = random_symmetric(60, scale, 12);
    const auto pert = top_k_eigen(M0 + E, 2);
    CHECK(procrustes_distance(pert.vectors, base.vectors) <= std::sqrt(16.0) * E.norm() / gap);
  }
}
