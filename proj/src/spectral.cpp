#include "sbmwalk/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "sbmwalk/parallel.hpp"
#include "sbmwalk/rng.hpp"

namespace sbmwalk {

SpectralEmbedding top_k_eigen(const Eigen::MatrixXd& M, int K) {
  const auto n = M.rows();
  if (M.cols() != n) throw std::invalid_argument("top_k_eigen: matrix must be square");
  if (K < 1 || K > n) throw std::invalid_argument("top_k_eigen: need 1 <= K <= n");
  const double scale = std::max(1.0, M.cwiseAbs().maxCoeff());
  if ((M - M.transpose()).cwiseAbs().maxCoeff() > 1e-10 * scale)
    throw std::invalid_argument("top_k_eigen: matrix is not symmetric");

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(M);
  if (solver.info() != Eigen::Success) throw std::runtime_error("top_k_eigen: eigensolver failed");
  const Eigen::VectorXd& values = solver.eigenvalues();

  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) {
    const double fa = std::abs(values(a)), fb = std::abs(values(b));
    if (fa != fb) return fa > fb;
    if (values(a) != values(b)) return values(a) > values(b);
    return a < b;
  });

  SpectralEmbedding out{Eigen::VectorXd(K), Eigen::MatrixXd(n, K)};
  for (int k = 0; k < K; ++k) {
    out.eigenvalues(k) = values(order[k]);
    Eigen::VectorXd v = solver.eigenvectors().col(order[k]);
    const double tol = 1e-12 * v.cwiseAbs().maxCoeff();
    for (Eigen::Index i = 0; i < n; ++i) {
      if (std::abs(v(i)) > tol) {
        if (v(i) < 0.0) v = -v;
        break;
      }
    }
    out.vectors.col(k) = v;
  }
  return out;
}

Eigen::MatrixXi ClusterResult::membership() const {
  return membership_matrix(labels, static_cast<int>(centers.rows()));
}

double kmeans_cost(const Eigen::MatrixXd& rows, std::span<const int> labels, const Eigen::MatrixXd& centers) {
  double cost = 0.0;
  for (Eigen::Index i = 0; i < rows.rows(); ++i) cost += (rows.row(i) - centers.row(labels[i])).squaredNorm();
  return cost;
}

namespace {

struct LloydRun {
  std::vector<int> labels;
  Eigen::MatrixXd centers;
  double objective = 0.0;
  int repairs = 0;
};

LloydRun lloyd(const Eigen::MatrixXd& X, int K, int max_iters, Rng& rng) {
  const auto n = X.rows();
  const auto d = X.cols();
  LloydRun run;
  run.centers.resize(K, d);

  // k-means++ seeding.
  std::vector<double> dist2(static_cast<std::size_t>(n), std::numeric_limits<double>::infinity());
  Eigen::Index pick = static_cast<Eigen::Index>(rng.below(static_cast<std::uint64_t>(n)));
  for (int k = 0; k < K; ++k) {
    run.centers.row(k) = X.row(pick);
    double total = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
      dist2[i] = std::min(dist2[i], (X.row(i) - run.centers.row(k)).squaredNorm());
      total += dist2[i];
    }
    if (k + 1 == K) break;
    if (total <= 0.0) {
      pick = static_cast<Eigen::Index>(rng.below(static_cast<std::uint64_t>(n)));
      continue;
    }
    double u = rng.uniform() * total;
    pick = n - 1;
    for (Eigen::Index i = 0; i < n; ++i) {
      if (u < dist2[i]) {
        pick = i;
        break;
      }
      u -= dist2[i];
    }
  }

  run.labels.assign(static_cast<std::size_t>(n), 0);
  const double scale = X.squaredNorm();
  double previous = std::numeric_limits<double>::infinity();
  for (int iter = 0; iter < std::max(1, max_iters); ++iter) {
    // Assignment step.
    bool changed = iter == 0;
    double cost = 0.0;
    std::vector<double> own(static_cast<std::size_t>(n));
    for (Eigen::Index i = 0; i < n; ++i) {
      // Ties keep the current label so that repaired clusters stay populated.
      int best = run.labels[i];
      double best_d = (X.row(i) - run.centers.row(best)).squaredNorm();
      for (int k = 0; k < K; ++k) {
        const double dk = (X.row(i) - run.centers.row(k)).squaredNorm();
        if (dk < best_d) {
          best_d = dk;
          best = k;
        }
      }
      if (run.labels[i] != best) changed = true;
      run.labels[i] = best;
      own[i] = best_d;
      cost += best_d;
    }
    // Round-off on the scale of the data, not of the (possibly ~0) cost.
    if (cost > previous + 1e-12 * (previous + scale))
      throw std::logic_error("kmeans: objective increased during Lloyd iterations");
    previous = cost;

    // Update step with empty-cluster repair.
    std::vector<int> counts(K, 0);
    Eigen::MatrixXd sums = Eigen::MatrixXd::Zero(K, d);
    for (Eigen::Index i = 0; i < n; ++i) {
      ++counts[run.labels[i]];
      sums.row(run.labels[i]) += X.row(i);
    }
    for (int k = 0; k < K; ++k) {
      if (counts[k] > 0) {
        run.centers.row(k) = sums.row(k) / counts[k];
        continue;
      }
      // Re-seed at the point farthest from its current center.
      const auto far = static_cast<Eigen::Index>(std::max_element(own.begin(), own.end()) - own.begin());
      ++run.repairs;
      const int donor = run.labels[far];
      if (counts[donor] > 1) {
        --counts[donor];
        sums.row(donor) -= X.row(far);
        run.centers.row(donor) = sums.row(donor) / counts[donor];
      }
      run.labels[far] = k;
      counts[k] = 1;
      sums.row(k) = X.row(far);
      run.centers.row(k) = X.row(far);
      own[far] = 0.0;
      changed = true;
    }
    previous = std::min(previous, kmeans_cost(X, run.labels, run.centers));
    if (!changed) break;
  }
  run.objective = kmeans_cost(X, run.labels, run.centers);
  return run;
}

}  // namespace

ClusterResult kmeans_cluster(const Eigen::MatrixXd& rows, int K, int restarts, int max_iters, std::uint64_t seed) {
  if (K < 1 || K > rows.rows()) throw std::invalid_argument("kmeans: need 1 <= K <= number of rows");
  if (restarts < 1) throw std::invalid_argument("kmeans: restarts must be at least 1");
  std::vector<LloydRun> runs(static_cast<std::size_t>(restarts));
  parallel_for(runs.size(), [&](std::size_t s) {
    Rng rng(derive_seed(seed, s));
    runs[s] = lloyd(rows, K, max_iters, rng);
  });
  std::size_t best = 0;
  for (std::size_t s = 1; s < runs.size(); ++s)
    if (runs[s].objective < runs[best].objective) best = s;
  ClusterResult out;
  out.labels = std::move(runs[best].labels);
  out.centers = std::move(runs[best].centers);
  out.objective = runs[best].objective;
  out.empty_cluster_repairs = runs[best].repairs;
  out.winning_restart = static_cast<int>(best);
  return out;
}

std::vector<int> min_cost_assignment(const Eigen::MatrixXd& cost) {
  // Shortest augmenting path formulation with potentials (1-based internally).
  const int n = static_cast<int>(cost.rows());
  if (cost.cols() != n) throw std::invalid_argument("min_cost_assignment: cost matrix must be square");
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
  std::vector<int> match(n + 1, 0), way(n + 1, 0);
  for (int row = 1; row <= n; ++row) {
    match[0] = row;
    int col0 = 0;
    std::vector<double> minv(n + 1, inf);
    std::vector<char> used(n + 1, 0);
    do {
      used[col0] = 1;
      const int r0 = match[col0];
      double delta = inf;
      int col1 = 0;
      for (int col = 1; col <= n; ++col) {
        if (used[col]) continue;
        const double cur = cost(r0 - 1, col - 1) - u[r0] - v[col];
        if (cur < minv[col]) {
          minv[col] = cur;
          way[col] = col0;
        }
        if (minv[col] < delta) {
          delta = minv[col];
          col1 = col;
        }
      }
      for (int col = 0; col <= n; ++col) {
        if (used[col]) {
          u[match[col]] += delta;
          v[col] -= delta;
        } else {
          minv[col] -= delta;
        }
      }
      col0 = col1;
    } while (match[col0] != 0);
    do {
      const int col1 = way[col0];
      match[col0] = match[col1];
      col0 = col1;
    } while (col0 != 0);
  }
  std::vector<int> assignment(n, -1);
  for (int col = 1; col <= n; ++col)
    if (match[col] != 0) assignment[match[col] - 1] = col - 1;
  return assignment;
}

double misclassification_rate(std::span<const int> predicted, std::span<const int> truth, int K) {
  if (predicted.size() != truth.size()) throw std::invalid_argument("misclassification_rate: size mismatch");
  if (K < 1) throw std::invalid_argument("misclassification_rate: K must be positive");
  if (truth.empty()) return 0.0;
  Eigen::MatrixXd confusion = Eigen::MatrixXd::Zero(K, K);
  for (std::size_t i = 0; i < truth.size(); ++i) {
    if (predicted[i] < 0 || predicted[i] >= K || truth[i] < 0 || truth[i] >= K)
      throw std::invalid_argument("misclassification_rate: label out of range");
    confusion(predicted[i], truth[i]) += 1.0;
  }
  // Maximizing agreement == minimizing negated counts.
  const auto assignment = min_cost_assignment(-confusion);
  double agree = 0.0;
  for (int k = 0; k < K; ++k) agree += confusion(k, assignment[k]);
  return 1.0 - agree / static_cast<double>(truth.size());
}

ClusterResult spectral_cluster(const Eigen::MatrixXd& M, int K, int restarts, int max_iters, std::uint64_t seed) {
  const auto embedding = top_k_eigen(M, K);
  return kmeans_cluster(embedding.vectors, K, restarts, max_iters, seed);
}

double EigenGeometryReport::max_cross_deviation() const {
  double worst = 0.0;
  for (const auto& p : cross_block) worst = std::max(worst, std::abs(p.deviation()));
  return worst;
}

EigenGeometryReport eigen_geometry_report(const Eigen::MatrixXd& M0, const CommunityAssignment& assignment) {
  const int K = assignment.K;
  const auto V = top_k_eigen(M0, K).vectors;
  const auto counts = assignment.block_counts();
  Eigen::MatrixXd means = Eigen::MatrixXd::Zero(K, K);
  for (int i = 0; i < assignment.node_count(); ++i) means.row(assignment.labels[i]) += V.row(i);
  for (int r = 0; r < K; ++r)
    if (counts[r] > 0) means.row(r) /= counts[r];

  EigenGeometryReport report;
  for (int i = 0; i < assignment.node_count(); ++i)
    report.within_block_spread =
        std::max(report.within_block_spread, (V.row(i) - means.row(assignment.labels[i])).norm());
  for (int r = 0; r < K; ++r) {
    for (int s = r + 1; s < K; ++s) {
      if (counts[r] == 0 || counts[s] == 0) continue;
      report.cross_block.push_back(
          {r, s, (means.row(r) - means.row(s)).norm(), std::sqrt(1.0 / counts[r] + 1.0 / counts[s])});
    }
  }
  return report;
}

double procrustes_distance(const Eigen::MatrixXd& V, const Eigen::MatrixXd& V0) {
  if (V.rows() != V0.rows() || V.cols() != V0.cols()) throw std::invalid_argument("procrustes_distance: shape mismatch");
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(V0.transpose() * V, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const Eigen::MatrixXd O = svd.matrixU() * svd.matrixV().transpose();
  return (V - V0 * O).norm();
}

}  // namespace sbmwalk
