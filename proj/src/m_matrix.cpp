#include "sbmwalk/m_matrix.hpp"

#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <string>

#include <Eigen/Eigenvalues>
#include <Eigen/SparseCore>

#include "sbmwalk/parallel.hpp"

namespace sbmwalk {

namespace {

void check_weights(const Eigen::MatrixXd& weights) {
  if (weights.rows() != weights.cols() || weights.rows() == 0)
    throw std::invalid_argument("joint: weight matrix must be square and non-empty");
  if ((weights.array() < 0.0).any()) throw std::invalid_argument("joint: negative weight");
  if ((weights - weights.transpose()).cwiseAbs().maxCoeff() > 1e-12 * std::max(1.0, weights.cwiseAbs().maxCoeff()))
    throw std::invalid_argument("joint: weight matrix must be symmetric");
  if ((weights.rowwise().sum().array() <= 0.0).any()) throw std::invalid_argument("joint: zero row sum");
}

void check_window(Window window, int l) {
  if (window.lower < 1 || window.lower > window.upper) throw std::invalid_argument("joint: need 1 <= t_L <= t_U");
  if (window.upper >= l) throw std::invalid_argument("joint: t_U must be smaller than l");
}

JointWindowTable assemble(const std::vector<Eigen::MatrixXd>& steps, Eigen::VectorXd marginal, Window window,
                          int l) {
  const auto n = marginal.size();
  JointWindowTable table{Eigen::MatrixXd::Zero(n, n), std::move(marginal), window, l};
  for (int t = window.lower; t <= window.upper; ++t) {
    const auto& J = steps[t - 1];
    table.joint += static_cast<double>(l - t) * (J + J.transpose());
  }
  // The sum of both orders is symmetric up to rounding; make it exact.
  table.joint = 0.5 * (table.joint + table.joint.transpose()).eval();
  return table;
}

double log_sigmoid(double x) { return x >= 0.0 ? -std::log1p(std::exp(-x)) : x - std::log1p(std::exp(x)); }

}  // namespace

MMatrix empirical_m(const CooccurrenceMatrix& C, double b) {
  if (!(b > 0.0)) throw std::invalid_argument("empirical_m: b must be positive");
  if (C.total() == 0) throw std::invalid_argument("empirical_m: co-occurrence matrix is all zero");
  const int n = C.node_count();
  MMatrix m{Eigen::MatrixXd::Zero(n, n), MaskMatrix::Constant(n, n, true), {}};
  m.meta.window = C.window();
  m.meta.b = b;
  const double total = static_cast<double>(C.total());
  const double log_b = std::log(b);
  C.for_each_upper([&](int i, int j, std::uint64_t c) {
    const double v = std::log(static_cast<double>(c) * total /
                              (static_cast<double>(C.row_sum(i)) * static_cast<double>(C.row_sum(j)))) -
                     log_b;
    m.entries(i, j) = m.entries(j, i) = v;
    m.mask(i, j) = m.mask(j, i) = false;
  });
  return m;
}

std::vector<Eigen::MatrixXd> deepwalk_step_joints(const Eigen::MatrixXd& weights, int t_max) {
  check_weights(weights);
  const Eigen::VectorXd rows = weights.rowwise().sum();
  const Eigen::MatrixXd W = rows.cwiseInverse().asDiagonal() * weights;
  std::vector<Eigen::MatrixXd> out;
  out.reserve(t_max);
  // Row i is Pr(w_1 = i, w_{1+t} = .), seeded with the stationary law.
  Eigen::MatrixXd J = weights / weights.sum();
  for (int t = 1; t <= t_max; ++t) {
    if (t > 1) J = (J * W).eval();
    out.push_back(J);
  }
  return out;
}

std::vector<Eigen::MatrixXd> deepwalk_step_joints(const Graph& graph, int t_max) {
  if (graph.two_m() == 0) throw std::invalid_argument("joint: graph has no edges");
  const int n = graph.node_count();
  std::vector<Eigen::Triplet<double>> w_entries;
  w_entries.reserve(static_cast<std::size_t>(graph.two_m()));
  for (int u = 0; u < n; ++u)
    for (int v : graph.neighbors(u)) w_entries.emplace_back(u, v, 1.0 / graph.degree(u));
  Eigen::SparseMatrix<double> W(n, n);
  W.setFromTriplets(w_entries.begin(), w_entries.end());

  std::vector<Eigen::MatrixXd> out;
  out.reserve(t_max);
  Eigen::MatrixXd J = graph.dense_adjacency() / static_cast<double>(graph.two_m());
  for (int t = 1; t <= t_max; ++t) {
    if (t > 1) J = (J * W).eval();
    out.push_back(J);
  }
  return out;
}

std::vector<Eigen::MatrixXd> node2vec_step_joints(const Eigen::MatrixXd& weights, int t_max, double alpha) {
  check_weights(weights);
  if (!(alpha >= 0.0)) throw std::invalid_argument("node2vec joint: alpha must be non-negative");
  const auto n = weights.rows();
  const Eigen::VectorXd normalizer = weights.rowwise().sum().array() - 1.0 + alpha;
  if (t_max >= 2 && (normalizer.array() <= 0.0).any())
    throw std::invalid_argument("node2vec joint: zero normalizer |row| - 1 + alpha (dead-end case)");
  const Eigen::VectorXd inv_norm = normalizer.cwiseInverse();
  const double total = weights.sum();

  std::vector<Eigen::MatrixXd> out(t_max, Eigen::MatrixXd::Zero(n, n));
  parallel_for(static_cast<std::size_t>(n), [&](std::size_t src) {
    const auto i = static_cast<Eigen::Index>(src);
    // X(p, c): mass on (previous, current) with w_1 = i.
    Eigen::MatrixXd X = Eigen::MatrixXd::Zero(n, n);
    X.row(i) = weights.row(i) / total;
    for (int t = 1; t <= t_max; ++t) {
      const Eigen::VectorXd arrived = X.colwise().sum().transpose();
      out[t - 1].row(i) = arrived.transpose();
      if (t == t_max) break;
      // next(c, w) = weights(c, w) (arrived_c + (alpha - 1) X(w, c)) / normalizer_c
      Eigen::MatrixXd next = (alpha - 1.0) * X.transpose();
      next.colwise() += arrived;
      next = inv_norm.asDiagonal() * next.cwiseProduct(weights);
      X.swap(next);
    }
  });
  return out;
}

std::vector<Eigen::MatrixXd> node2vec_step_joints(const Graph& graph, int t_max, double alpha) {
  if (graph.two_m() == 0) throw std::invalid_argument("joint: graph has no edges");
  if (!(alpha >= 0.0)) throw std::invalid_argument("node2vec joint: alpha must be non-negative");
  const int n = graph.node_count();
  auto off = graph.offsets();
  auto targets = graph.targets();
  const auto S = graph.two_m();

  std::vector<double> inv_norm(n, 0.0);
  for (int v = 0; v < n; ++v) {
    if (graph.degree(v) == 0) continue;
    const double z = graph.degree(v) - 1.0 + alpha;
    if (t_max >= 2 && z <= 0.0)
      throw std::invalid_argument("node2vec joint: zero normalizer deg - 1 + alpha (dead-end case)");
    inv_norm[v] = 1.0 / z;
  }
  // reverse[k] = position of (v, u) for the ordered edge k = (u, v).
  std::vector<std::int64_t> reverse(static_cast<std::size_t>(S));
  for (int u = 0; u < n; ++u) {
    for (auto k = off[u]; k < off[u + 1]; ++k) {
      const int v = targets[k];
      auto nb = graph.neighbors(v);
      reverse[k] = off[v] + (std::lower_bound(nb.begin(), nb.end(), u) - nb.begin());
    }
  }

  const double total = static_cast<double>(S);
  std::vector<Eigen::MatrixXd> out(t_max, Eigen::MatrixXd::Zero(n, n));
  parallel_for(static_cast<std::size_t>(n), [&](std::size_t src) {
    const int i = static_cast<int>(src);
    if (graph.degree(i) == 0) return;
    std::vector<double> x(static_cast<std::size_t>(S), 0.0), next(static_cast<std::size_t>(S));
    std::vector<double> arrived(n);
    for (auto k = off[i]; k < off[i + 1]; ++k) x[k] = 1.0 / total;
    for (int t = 1; t <= t_max; ++t) {
      // Mass arriving at v is carried by the reverses of v's outgoing edges.
      for (int v = 0; v < n; ++v) {
        double s = 0.0;
        for (auto k = off[v]; k < off[v + 1]; ++k) s += x[reverse[k]];
        arrived[v] = s;
        out[t - 1](i, v) = s;
      }
      if (t == t_max) break;
      for (int v = 0; v < n; ++v)
        for (auto k = off[v]; k < off[v + 1]; ++k)
          next[k] = (arrived[v] + (alpha - 1.0) * x[reverse[k]]) * inv_norm[v];
      x.swap(next);
    }
  });
  return out;
}

JointWindowTable deepwalk_joint(const Eigen::MatrixXd& weights, Window window, int l) {
  check_window(window, l);
  const auto steps = deepwalk_step_joints(weights, window.upper);
  return assemble(steps, weights.rowwise().sum() / weights.sum(), window, l);
}

JointWindowTable deepwalk_joint(const Graph& graph, Window window, int l) {
  check_window(window, l);
  const auto steps = deepwalk_step_joints(graph, window.upper);
  Eigen::VectorXd marginal(graph.node_count());
  for (int v = 0; v < graph.node_count(); ++v) marginal(v) = graph.degree(v) / static_cast<double>(graph.two_m());
  return assemble(steps, std::move(marginal), window, l);
}

JointWindowTable node2vec_joint(const Eigen::MatrixXd& weights, Window window, int l, double alpha) {
  check_window(window, l);
  const auto steps = node2vec_step_joints(weights, window.upper, alpha);
  return assemble(steps, weights.rowwise().sum() / weights.sum(), window, l);
}

JointWindowTable node2vec_joint(const Graph& graph, Window window, int l, double alpha) {
  check_window(window, l);
  const auto steps = node2vec_step_joints(graph, window.upper, alpha);
  Eigen::VectorXd marginal(graph.node_count());
  for (int v = 0; v < graph.node_count(); ++v) marginal(v) = graph.degree(v) / static_cast<double>(graph.two_m());
  return assemble(steps, std::move(marginal), window, l);
}

MMatrix limit_m(const JointWindowTable& table, double b) {
  if (!(b > 0.0)) throw std::invalid_argument("limit_m: b must be positive");
  const auto n = table.joint.rows();
  const double scale = 2.0 * b * window_gamma(table.l, table.window);
  MMatrix m{Eigen::MatrixXd::Zero(n, n), MaskMatrix::Constant(n, n, true), {}};
  m.meta.window = table.window;
  m.meta.l = table.l;
  m.meta.b = b;
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index i = 0; i < n; ++i) {
      const double p = table.joint(i, j);
      if (p > 0.0) {
        m.entries(i, j) = std::log(p / (scale * table.marginal(i) * table.marginal(j)));
        m.mask(i, j) = false;
      }
    }
  }
  return m;
}

MMatrix graph_m(const Graph& graph, WalkKernel kernel, Window window, int l, double b, double alpha) {
  MMatrix m = kernel == WalkKernel::deepwalk ? limit_m(deepwalk_joint(graph, window, l), b)
                                             : limit_m(node2vec_joint(graph, window, l, alpha), b);
  m.meta.kernel = kernel;
  m.meta.alpha = kernel == WalkKernel::deepwalk ? 1.0 : alpha;
  return m;
}

MMatrix noiseless_m0(const BlockModel& model, const CommunityAssignment& assignment, WalkKernel kernel,
                     Window window, int l, double b, double alpha) {
  if (!(model.rho > 0.0)) throw std::invalid_argument("noiseless_m0: rho must be positive");
  const Eigen::MatrixXd P = edge_probability_matrix(model, assignment);
  MMatrix m = kernel == WalkKernel::deepwalk ? limit_m(deepwalk_joint(P, window, l), b)
                                             : limit_m(node2vec_joint(P, window, l, alpha), b);
  m.meta.kernel = kernel;
  m.meta.alpha = kernel == WalkKernel::deepwalk ? 1.0 : alpha;
  return m;
}

double sgns_objective(const Eigen::MatrixXd& C, const Eigen::MatrixXd& F, const Eigen::MatrixXd& Fprime, double b) {
  const auto n = C.rows();
  if (C.cols() != n || F.rows() != n || Fprime.rows() != n || F.cols() != Fprime.cols())
    throw std::invalid_argument("sgns_objective: shape mismatch");
  if (!(b > 0.0)) throw std::invalid_argument("sgns_objective: b must be positive");
  const Eigen::MatrixXd G = F * Fprime.transpose();
  const double total = C.sum();
  const Eigen::VectorXd row_sums = C.rowwise().sum();
  const Eigen::VectorXd noise = C.colwise().sum().transpose() / total;

  double value = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    double expected_negative = 0.0;
    for (Eigen::Index j = 0; j < n; ++j) {
      if (C(i, j) != 0.0) value += C(i, j) * log_sigmoid(G(i, j));
      if (noise(j) != 0.0) expected_negative += noise(j) * log_sigmoid(-G(i, j));
    }
    value += b * row_sums(i) * expected_negative;
  }
  return value;
}

double sgns_objective(const CooccurrenceMatrix& C, const Eigen::MatrixXd& F, const Eigen::MatrixXd& Fprime,
                      double b) {
  return sgns_objective(dense_counts(C), F, Fprime, b);
}

std::pair<Eigen::MatrixXd, Eigen::MatrixXd> factorize_symmetric(const Eigen::MatrixXd& M) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(M);
  const Eigen::VectorXd& values = solver.eigenvalues();
  const Eigen::VectorXd root = values.cwiseAbs().cwiseSqrt();
  const Eigen::VectorXd signed_root = values.unaryExpr([](double v) { return v < 0.0 ? -1.0 : 1.0; }).cwiseProduct(root);
  return {solver.eigenvectors() * root.asDiagonal(), solver.eigenvectors() * signed_root.asDiagonal()};
}

double frobenius_distance(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw std::invalid_argument("frobenius_distance: shape mismatch");
  return (a - b).norm();
}

double frobenius_distance(const MMatrix& a, const MMatrix& b) { return frobenius_distance(a.entries, b.entries); }

Eigen::MatrixXd dense_counts(const CooccurrenceMatrix& C) {
  const int n = C.node_count();
  Eigen::MatrixXd D = Eigen::MatrixXd::Zero(n, n);
  C.for_each_upper([&](int i, int j, std::uint64_t c) { D(i, j) = D(j, i) = static_cast<double>(c); });
  return D;
}

void write_matrix_text(std::ostream& out, const Eigen::MatrixXd& M) {
  out << M.rows() << ' ' << M.cols() << '\n';
  char buf[40];
  for (Eigen::Index i = 0; i < M.rows(); ++i) {
    for (Eigen::Index j = 0; j < M.cols(); ++j) {
      std::snprintf(buf, sizeof buf, "%.17g", M(i, j));
      if (j) out << ' ';
      out << buf;
    }
    out << '\n';
  }
}

void write_mask_text(std::ostream& out, const MaskMatrix& mask) {
  out << mask.rows() << ' ' << mask.cols() << '\n';
  for (Eigen::Index i = 0; i < mask.rows(); ++i) {
    for (Eigen::Index j = 0; j < mask.cols(); ++j) out << (j ? " " : "") << (mask(i, j) ? 1 : 0);
    out << '\n';
  }
}

Eigen::MatrixXd read_matrix_text(std::istream& in) {
  Eigen::Index rows = 0, cols = 0;
  if (!(in >> rows >> cols) || rows < 0 || cols < 0) throw std::invalid_argument("matrix text: bad header");
  Eigen::MatrixXd M(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index j = 0; j < cols; ++j)
      if (!(in >> M(i, j))) throw std::invalid_argument("matrix text: truncated body");
  return M;
}

}  // namespace sbmwalk
