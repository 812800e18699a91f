#include "sbmwalk/experiment.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>

#include "sbmwalk/cooccurrence.hpp"
#include "sbmwalk/m_matrix.hpp"
#include "sbmwalk/parallel.hpp"
#include "sbmwalk/rng.hpp"
#include "sbmwalk/sbm.hpp"
#include "sbmwalk/spectral.hpp"

namespace sbmwalk {

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string> split_ws(const std::string& s) {
  std::istringstream in(s);
  std::vector<std::string> out;
  for (std::string item; in >> item;) out.push_back(item);
  return out;
}

double parse_double(const std::string& s) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw std::invalid_argument("not a number: '" + s + "'");
  }
  if (used != s.size()) throw std::invalid_argument("not a number: '" + s + "'");
  return v;
}

long long parse_int(const std::string& s) {
  std::size_t used = 0;
  long long v = 0;
  try {
    v = std::stoll(s, &used);
  } catch (const std::exception&) {
    throw std::invalid_argument("not an integer: '" + s + "'");
  }
  if (used != s.size()) throw std::invalid_argument("not an integer: '" + s + "'");
  return v;
}

bool parse_flag(const std::string& s) {
  if (s == "on" || s == "true" || s == "1") return true;
  if (s == "off" || s == "false" || s == "0") return false;
  throw std::invalid_argument("expected on/off: '" + s + "'");
}

std::string num(double v) {
  if (std::isnan(v)) return "nan";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

}  // namespace

const char* mode_name(MatrixMode mode) { return mode == MatrixMode::closed_form ? "closed_form" : "monte_carlo"; }

double RhoRule::value(int n) const { return scaled ? c * std::pow(static_cast<double>(n), exponent) : c; }

RhoRule RhoRule::parse(const std::string& text) {
  const auto pos = text.find("n^");
  if (pos == std::string::npos) return RhoRule{false, parse_double(text), 0.0};
  RhoRule rule{true, 1.0, parse_double(text.substr(pos + 2))};
  if (pos > 0) {
    if (text[pos - 1] != '*') throw std::invalid_argument("rho rule: expected c*n^e, got '" + text + "'");
    rule.c = parse_double(text.substr(0, pos - 1));
  }
  return rule;
}

double AlphaRule::value(int n) const { return inverse_n ? c / n : c; }

AlphaRule AlphaRule::parse(const std::string& text) {
  if (text.size() >= 2 && text.ends_with("/n")) return AlphaRule{true, parse_double(text.substr(0, text.size() - 2))};
  return AlphaRule{false, parse_double(text)};
}

ExperimentConfig parse_config(std::istream& in) {
  ExperimentConfig config;
  std::vector<std::vector<double>> b0_rows;
  std::optional<int> t_lower, t_upper;
  std::map<WalkKernel, std::optional<int>> kernel_lower, kernel_upper;
  bool alpha_seen = false, l_seen = false, b_seen = false;
  int line_no = 0;
  for (std::string line; std::getline(in, line);) {
    ++line_no;
    line = trim(line);
    if (line.empty() || line.front() == '#') continue;
    const auto eq = line.find('=');
    try {
      if (eq == std::string::npos) throw std::invalid_argument("expected key = value");
      const std::string key = trim(line.substr(0, eq));
      const auto values = split_ws(line.substr(eq + 1));
      if (values.empty()) throw std::invalid_argument("empty value for '" + key + "'");
      auto single = [&]() -> const std::string& {
        if (values.size() != 1) throw std::invalid_argument("'" + key + "' takes a single value");
        return values.front();
      };
      if (key == "n") {
        for (const auto& v : values) config.n_values.push_back(static_cast<int>(parse_int(v)));
      } else if (key == "rho") {
        for (const auto& v : values) config.rho_rules.push_back(RhoRule::parse(v));
      } else if (key == "K") {
        config.K = static_cast<int>(parse_int(single()));
      } else if (key == "B0") {
        auto& row = b0_rows.emplace_back();
        for (const auto& v : values) row.push_back(parse_double(v));
      } else if (key == "kernel") {
        for (const auto& v : values) config.kernels.push_back(parse_kernel(v));
      } else if (key == "alpha") {
        if (!alpha_seen) config.alpha_rules.clear();
        alpha_seen = true;
        for (const auto& v : values) config.alpha_rules.push_back(AlphaRule::parse(v));
      } else if (key == "t_L") {
        t_lower = static_cast<int>(parse_int(single()));
      } else if (key == "t_U") {
        t_upper = static_cast<int>(parse_int(single()));
      } else if (key.starts_with("deepwalk.") || key.starts_with("node2vec.")) {
        const auto dot = key.find('.');
        const WalkKernel kernel = parse_kernel(key.substr(0, dot));
        const std::string field = key.substr(dot + 1);
        if (field == "t_L") kernel_lower[kernel] = static_cast<int>(parse_int(single()));
        else if (field == "t_U") kernel_upper[kernel] = static_cast<int>(parse_int(single()));
        else throw std::invalid_argument("unknown key '" + key + "'");
      } else if (key == "l") {
        if (!l_seen) config.l_values.clear();
        l_seen = true;
        for (const auto& v : values) config.l_values.push_back(static_cast<int>(parse_int(v)));
      } else if (key == "b") {
        if (!b_seen) config.b_values.clear();
        b_seen = true;
        for (const auto& v : values) config.b_values.push_back(parse_double(v));
      } else if (key == "eta") {
        config.eta = parse_double(single());
      } else if (key == "threshold_multiplier") {
        config.threshold_multiplier = parse_double(single());
      } else if (key == "mode") {
        const auto& v = single();
        if (v == "closed_form") config.mode = MatrixMode::closed_form;
        else if (v == "monte_carlo") config.mode = MatrixMode::monte_carlo;
        else throw std::invalid_argument("mode must be closed_form or monte_carlo");
      } else if (key == "walks") {
        config.walks = parse_int(single());
      } else if (key == "walk_cap") {
        config.walk_cap = parse_int(single());
      } else if (key == "seed") {
        for (const auto& v : values) config.seeds.push_back(static_cast<std::uint64_t>(parse_int(v)));
      } else if (key == "seed_range") {
        if (values.size() != 2) throw std::invalid_argument("seed_range takes 'first last'");
        const auto first = parse_int(values[0]), last = parse_int(values[1]);
        if (first < 0 || last < first) throw std::invalid_argument("seed_range: need 0 <= first <= last");
        for (auto s = first; s <= last; ++s) config.seeds.push_back(static_cast<std::uint64_t>(s));
      } else if (key == "restarts") {
        config.restarts = static_cast<int>(parse_int(single()));
      } else if (key == "max_iters") {
        config.max_iters = static_cast<int>(parse_int(single()));
      } else if (key == "output") {
        config.output = single();
      } else if (key == "timing") {
        config.timing = parse_flag(single());
      } else {
        throw std::invalid_argument("unknown key '" + key + "'");
      }
    } catch (const std::invalid_argument& e) {
      throw std::invalid_argument("config line " + std::to_string(line_no) + ": " + e.what());
    }
  }

  if (!b0_rows.empty()) {
    config.B0.resize(static_cast<Eigen::Index>(b0_rows.size()), static_cast<Eigen::Index>(b0_rows[0].size()));
    for (std::size_t r = 0; r < b0_rows.size(); ++r) {
      if (b0_rows[r].size() != b0_rows[0].size()) throw std::invalid_argument("config: ragged B0 rows");
      for (std::size_t c = 0; c < b0_rows[r].size(); ++c)
        config.B0(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = b0_rows[r][c];
    }
  }
  for (WalkKernel kernel : {WalkKernel::deepwalk, WalkKernel::node2vec}) {
    Window& w = kernel == WalkKernel::deepwalk ? config.deepwalk_window : config.node2vec_window;
    if (t_lower) w.lower = *t_lower;
    if (t_upper) w.upper = *t_upper;
    if (kernel_lower[kernel]) w.lower = *kernel_lower[kernel];
    if (kernel_upper[kernel]) w.upper = *kernel_upper[kernel];
  }
  validate_config(config);
  return config;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config '" + path + "'");
  return parse_config(in);
}

void validate_config(const ExperimentConfig& c) {
  auto fail = [](const std::string& msg) { throw std::invalid_argument("config: " + msg); };
  if (c.n_values.empty()) fail("missing n");
  if (c.rho_rules.empty()) fail("missing rho");
  if (c.kernels.empty()) fail("missing kernel");
  if (c.seeds.empty()) fail("missing seed or seed_range");
  if (c.K < 1) fail("K must be positive");
  if (c.B0.rows() != c.K || c.B0.cols() != c.K) fail("B0 must be K x K");
  if (c.alpha_rules.empty() || c.l_values.empty() || c.b_values.empty()) fail("empty alpha, l or b list");
  for (int n : c.n_values)
    if (n < c.K) fail("n must be at least K");
  for (double b : c.b_values)
    if (!(b > 0.0)) fail("b must be positive");
  if (c.restarts < 1 || c.max_iters < 1) fail("restarts and max_iters must be positive");
  for (WalkKernel kernel : c.kernels) {
    const Window w = c.window_for(kernel);
    const int min_lower = kernel == WalkKernel::node2vec ? 3 : 2;
    for (int l : c.l_values)
      if (w.lower < min_lower || w.lower > w.upper || w.upper >= l)
        fail(std::string("infeasible window for ") + kernel_name(kernel) + ": need " + std::to_string(min_lower) +
             " <= t_L <= t_U < l");
  }
  if (c.mode == MatrixMode::monte_carlo) {
    if (c.walks < 1) fail("monte_carlo mode needs walks >= 1");
    for (int l : c.l_values)
      if (c.walks > c.walk_cap / l) fail("walks * l exceeds walk_cap");
  }
}

int compute_phi(int t_L) {
  if (t_L < 2) throw std::invalid_argument("compute_phi: t_L must be at least 2");
  return t_L == 2 ? 0 : t_L / 2;
}

double polylog_exponent(WalkKernel kernel, int t_L, double eta) {
  return 4.0 + (t_L + (kernel == WalkKernel::deepwalk ? 1 : 2)) * eta;
}

std::string regime_label(WalkKernel kernel, int n, double rho, Window window, double eta, double multiplier) {
  if (!(rho > 0.0)) return "intermediate";
  // Everything in logs: n^{t-1} rho^t overflows nothing but underflows easily.
  const double log_n = std::log(static_cast<double>(n));
  const double log_rho = std::log(rho);
  double log_signal = (window.lower - 1) * log_n + window.lower * log_rho;
  if (kernel == WalkKernel::deepwalk) log_signal -= compute_phi(window.lower) * (log_n + log_rho);
  const double log_threshold = std::log(multiplier) + polylog_exponent(kernel, window.lower, eta) * std::log(log_n);
  if (log_signal > log_threshold) return "recovery";
  const double log_upper = (window.upper - 1) * log_n + window.upper * log_rho;
  if (log_upper < 0.0 && log_n + log_rho > 0.0) return "failure";
  return "intermediate";
}

namespace {

struct GridPoint {
  int n;
  double rho;
  WalkKernel kernel;
  double alpha;
  int l;
  double b;
};

struct Noiseless {
  std::optional<MMatrix> m0;
  std::string error;
};

void fill_error(ResultRow& row, const std::string& what) {
  std::string msg = what;
  std::replace(msg.begin(), msg.end(), ',', ';');
  row.regime = "error(" + msg + ")";
  const double nan = std::numeric_limits<double>::quiet_NaN();
  row.frob = row.frob_over_n = row.err = row.kmeans_obj = nan;
  row.masked_pairs = -1;
}

std::uint64_t graph_seed(std::uint64_t seed, int n, double rho) {
  return derive_seed(seed, static_cast<std::uint64_t>(n), std::bit_cast<std::uint64_t>(rho));
}

void run_job(const ExperimentConfig& config, const GridPoint& point, const Noiseless& noiseless, ResultRow& row) {
  const auto start = std::chrono::steady_clock::now();
  const Window window = config.window_for(point.kernel);
  try {
    const BlockModel model =
        build_block_model(config.K, balanced_block_sizes(point.n, config.K), config.B0, point.rho);
    const CommunityAssignment truth = grouped_assignment(model);
    const std::uint64_t gseed = graph_seed(row.seed, point.n, point.rho);
    const Graph graph = sample_graph(model, truth, gseed);
    if (graph.edge_count() == 0) {
      fill_error(row, "empty graph");
      return;
    }
    if (!noiseless.m0) throw std::runtime_error(noiseless.error);

    MMatrix M;
    if (config.mode == MatrixMode::closed_form) {
      M = graph_m(graph, point.kernel, window, point.l, point.b, point.alpha);
    } else {
      const std::uint64_t wseed = derive_seed(gseed, 1);
      const WalkCorpus corpus = point.kernel == WalkKernel::deepwalk
                                    ? deepwalk_walks(graph, config.walks, point.l, wseed)
                                    : node2vec_walks(graph, config.walks, point.l, point.alpha, 1.0, wseed);
      M = empirical_m(accumulate(corpus, point.n, window), point.b);
    }
    row.frob = frobenius_distance(M.entries, noiseless.m0->entries);
    row.frob_over_n = row.frob / point.n;
    row.masked_pairs = M.masked_count();
    const ClusterResult clusters =
        spectral_cluster(M.entries, config.K, config.restarts, config.max_iters, derive_seed(gseed, 2));
    row.err = misclassification_rate(clusters.labels, truth.labels, config.K);
    row.kmeans_obj = clusters.objective;
  } catch (const std::exception& e) {
    fill_error(row, e.what());
  }
  if (config.timing)
    row.ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
}

}  // namespace

std::vector<ResultRow> run_experiment(const ExperimentConfig& config, std::uint64_t seed_offset) {
  validate_config(config);

  std::vector<GridPoint> points;
  for (int n : config.n_values)
    for (const RhoRule& rho_rule : config.rho_rules)
      for (WalkKernel kernel : config.kernels) {
        std::vector<double> alphas;
        if (kernel == WalkKernel::deepwalk) alphas.push_back(1.0);
        else
          for (const AlphaRule& a : config.alpha_rules) alphas.push_back(a.value(n));
        for (double alpha : alphas)
          for (int l : config.l_values)
            for (double b : config.b_values) points.push_back({n, rho_rule.value(n), kernel, alpha, l, b});
      }

  // M0 depends on the grid point only; it is shared by every seed.
  std::vector<Noiseless> noiseless(points.size());
  auto build_m0 = [&](std::size_t p) {
    const GridPoint& g = points[p];
    try {
      const BlockModel model = build_block_model(config.K, balanced_block_sizes(g.n, config.K), config.B0, g.rho);
      noiseless[p].m0 = noiseless_m0(model, grouped_assignment(model), g.kernel, config.window_for(g.kernel), g.l,
                                     g.b, g.alpha);
    } catch (const std::exception& e) {
      noiseless[p].error = e.what();
    }
  };

  const std::size_t seeds = config.seeds.size();
  std::vector<ResultRow> rows(points.size() * seeds);
  for (std::size_t p = 0; p < points.size(); ++p)
    for (std::size_t s = 0; s < seeds; ++s) {
      const GridPoint& g = points[p];
      const Window w = config.window_for(g.kernel);
      ResultRow& row = rows[p * seeds + s];
      row.n = g.n;
      row.rho = g.rho;
      row.K = config.K;
      row.kernel = g.kernel;
      row.alpha = g.alpha;
      row.t_L = w.lower;
      row.t_U = w.upper;
      row.l = g.l;
      row.b = g.b;
      row.mode = config.mode;
      row.seed = config.seeds[s] + seed_offset;
      row.regime = regime_label(g.kernel, g.n, g.rho, w, config.eta, config.threshold_multiplier);
      row.c0 = polylog_exponent(g.kernel, w.lower, config.eta);
    }

  // Few large jobs parallelize inside; many small ones across jobs.
  // Either way each job is a pure function of its seed.
  const auto threads = static_cast<std::size_t>(thread_count());
  auto job = [&](std::size_t k) { run_job(config, points[k / seeds], noiseless[k / seeds], rows[k]); };
  if (points.size() >= threads) parallel_for(points.size(), build_m0);
  else
    for (std::size_t p = 0; p < points.size(); ++p) build_m0(p);
  if (rows.size() >= threads) parallel_for(rows.size(), job);
  else
    for (std::size_t k = 0; k < rows.size(); ++k) job(k);
  return rows;
}

void write_csv(std::ostream& out, const std::vector<ResultRow>& rows) {
  out << kCsvHeader << '\n';
  for (const ResultRow& r : rows) {
    out << r.n << ',' << num(r.rho) << ',' << r.K << ',' << kernel_name(r.kernel) << ',' << num(r.alpha) << ','
        << r.t_L << ',' << r.t_U << ',' << r.l << ',' << num(r.b) << ',' << mode_name(r.mode) << ',' << r.seed << ','
        << r.regime << ',' << num(r.frob) << ',' << num(r.frob_over_n) << ',' << r.masked_pairs << ','
        << num(r.err) << ',' << num(r.kmeans_obj) << ',' << num(r.ms) << '\n';
  }
}

void emit_csv(const std::vector<ResultRow>& rows, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  write_csv(out, rows);
  if (!out) throw std::runtime_error("write failed for '" + path + "'");
}

std::vector<ResultRow> read_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || trim(line) != kCsvHeader) throw std::invalid_argument("csv: unexpected header");
  std::vector<ResultRow> rows;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    std::vector<std::string> f;
    std::stringstream ss(trim(line));
    for (std::string cell; std::getline(ss, cell, ',');) f.push_back(cell);
    if (f.size() != 18) throw std::invalid_argument("csv line " + std::to_string(line_no) + ": expected 18 fields");
    auto real = [](const std::string& s) {
      return s == "nan" ? std::numeric_limits<double>::quiet_NaN() : parse_double(s);
    };
    try {
      ResultRow r;
      r.n = static_cast<int>(parse_int(f[0]));
      r.rho = real(f[1]);
      r.K = static_cast<int>(parse_int(f[2]));
      r.kernel = parse_kernel(f[3]);
      r.alpha = real(f[4]);
      r.t_L = static_cast<int>(parse_int(f[5]));
      r.t_U = static_cast<int>(parse_int(f[6]));
      r.l = static_cast<int>(parse_int(f[7]));
      r.b = real(f[8]);
      r.mode = f[9] == "monte_carlo" ? MatrixMode::monte_carlo : MatrixMode::closed_form;
      r.seed = static_cast<std::uint64_t>(parse_int(f[10]));
      r.regime = f[11];
      r.frob = real(f[12]);
      r.frob_over_n = real(f[13]);
      r.masked_pairs = parse_int(f[14]);
      r.err = real(f[15]);
      r.kmeans_obj = real(f[16]);
      r.ms = real(f[17]);
      rows.push_back(std::move(r));
    } catch (const std::invalid_argument& e) {
      throw std::invalid_argument("csv line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return rows;
}

std::vector<ResultRow> read_csv_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  return read_csv(in);
}

const std::vector<std::string>& plot_fields() {
  static const std::vector<std::string> fields{"n",    "rho",         "K",          "alpha", "t_L",
                                               "t_U",  "l",           "b",          "seed",  "frob",
                                               "frob_over_n", "masked_pairs", "err", "kmeans_obj", "ms"};
  return fields;
}

double field_value(const ResultRow& r, const std::string& field) {
  if (field == "n") return r.n;
  if (field == "rho") return r.rho;
  if (field == "K") return r.K;
  if (field == "alpha") return r.alpha;
  if (field == "t_L") return r.t_L;
  if (field == "t_U") return r.t_U;
  if (field == "l") return r.l;
  if (field == "b") return r.b;
  if (field == "seed") return static_cast<double>(r.seed);
  if (field == "frob") return r.frob;
  if (field == "frob_over_n") return r.frob_over_n;
  if (field == "masked_pairs") return static_cast<double>(r.masked_pairs);
  if (field == "err") return r.err;
  if (field == "kmeans_obj") return r.kmeans_obj;
  if (field == "ms") return r.ms;
  std::string valid;
  for (const auto& f : plot_fields()) valid += (valid.empty() ? "" : ", ") + f;
  throw std::invalid_argument("unknown field '" + field + "'; valid fields: " + valid);
}

void write_svg_scatter(std::ostream& out, const std::vector<ResultRow>& rows, const std::string& x_field,
                       const std::string& y_field, const PlotOptions& opt) {
  if (rows.empty()) throw std::invalid_argument("svg scatter: no rows to plot");
  field_value(rows.front(), x_field);
  field_value(rows.front(), y_field);

  struct Point {
    double x, y;
    WalkKernel kernel;
  };
  std::vector<Point> pts;
  for (const ResultRow& r : rows) {
    double x = field_value(r, x_field), y = field_value(r, y_field);
    if (!std::isfinite(x) || !std::isfinite(y)) continue;
    if ((opt.log_x && x <= 0.0) || (opt.log_y && y <= 0.0)) continue;
    pts.push_back({opt.log_x ? std::log10(x) : x, opt.log_y ? std::log10(y) : y, r.kernel});
  }

  const double margin = 60.0;
  const double w = opt.width, h = opt.height;
  double x0 = 0, x1 = 1, y0 = 0, y1 = 1;
  if (!pts.empty()) {
    x0 = x1 = pts[0].x;
    y0 = y1 = pts[0].y;
    for (const auto& p : pts) {
      x0 = std::min(x0, p.x), x1 = std::max(x1, p.x);
      y0 = std::min(y0, p.y), y1 = std::max(y1, p.y);
    }
  }
  // A single value still needs a nonzero span.
  if (x1 - x0 <= 0) x0 -= 0.5, x1 += 0.5;
  if (y1 - y0 <= 0) y0 -= 0.5, y1 += 0.5;
  auto sx = [&](double x) { return margin + (x - x0) / (x1 - x0) * (w - 2 * margin); };
  auto sy = [&](double y) { return h - margin - (y - y0) / (y1 - y0) * (h - 2 * margin); };
  auto label = [](double v, bool log) { return num(log ? std::pow(10.0, v) : v); };

  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << opt.width << "\" height=\"" << opt.height
      << "\" viewBox=\"0 0 " << opt.width << ' ' << opt.height << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out << "<g stroke=\"black\" stroke-width=\"1\">\n";
  out << "<line x1=\"" << num(margin) << "\" y1=\"" << num(h - margin) << "\" x2=\"" << num(w - margin) << "\" y2=\""
      << num(h - margin) << "\"/>\n";
  out << "<line x1=\"" << num(margin) << "\" y1=\"" << num(margin) << "\" x2=\"" << num(margin) << "\" y2=\""
      << num(h - margin) << "\"/>\n";
  out << "</g>\n<g font-family=\"sans-serif\" font-size=\"12\">\n";
  for (int k = 0; k <= 4; ++k) {
    const double xv = x0 + (x1 - x0) * k / 4, yv = y0 + (y1 - y0) * k / 4;
    out << "<text x=\"" << num(sx(xv)) << "\" y=\"" << num(h - margin + 18) << "\" text-anchor=\"middle\">"
        << label(xv, opt.log_x) << "</text>\n";
    out << "<text x=\"" << num(margin - 6) << "\" y=\"" << num(sy(yv) + 4) << "\" text-anchor=\"end\">"
        << label(yv, opt.log_y) << "</text>\n";
  }
  out << "<text x=\"" << num(w / 2) << "\" y=\"" << num(h - 12) << "\" text-anchor=\"middle\">" << x_field
      << (opt.log_x ? " (log)" : "") << "</text>\n";
  out << "<text x=\"16\" y=\"" << num(h / 2) << "\" text-anchor=\"middle\" transform=\"rotate(-90 16 " << num(h / 2)
      << ")\">" << y_field << (opt.log_y ? " (log)" : "") << "</text>\n";
  out << "<text x=\"" << num(w - margin) << "\" y=\"20\" text-anchor=\"end\" fill=\"#1f77b4\">deepwalk</text>\n";
  out << "<text x=\"" << num(w - margin) << "\" y=\"36\" text-anchor=\"end\" fill=\"#d62728\">node2vec</text>\n";
  out << "</g>\n<g fill-opacity=\"0.8\">\n";
  for (const auto& p : pts)
    out << "<circle cx=\"" << num(sx(p.x)) << "\" cy=\"" << num(sy(p.y)) << "\" r=\"3\" fill=\""
        << (p.kernel == WalkKernel::deepwalk ? "#1f77b4" : "#d62728") << "\"/>\n";
  out << "</g>\n</svg>\n";
}

void emit_svg_scatter(const std::vector<ResultRow>& rows, const std::string& x_field, const std::string& y_field,
                      const std::string& path, const PlotOptions& options) {
  std::ostringstream buf;
  write_svg_scatter(buf, rows, x_field, y_field, options);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << buf.str();
}

}  // namespace sbmwalk
