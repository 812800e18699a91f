#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "sbmwalk/cooccurrence.hpp"
#include "sbmwalk/walks.hpp"

namespace sbmwalk {

enum class MatrixMode { closed_form, monte_carlo };

const char* mode_name(MatrixMode mode);

/// rho as a constant or c * n^e.
struct RhoRule {
  bool scaled = false;
  double c = 0.0;
  double exponent = 0.0;

  double value(int n) const;
  /// Accepts "0.3", "n^-0.9", "2*n^-0.5".
  static RhoRule parse(const std::string& text);
};

/// alpha as a constant or c / n.
struct AlphaRule {
  bool inverse_n = false;
  double c = 1.0;

  double value(int n) const;
  /// Accepts "0.5", "1/n", "2/n".
  static AlphaRule parse(const std::string& text);
};

struct ExperimentConfig {
  std::vector<int> n_values;
  std::vector<RhoRule> rho_rules;
  int K = 2;
  Eigen::MatrixXd B0;
  std::vector<WalkKernel> kernels;
  /// Only node2vec rows sweep alpha; DeepWalk rows use alpha = 1.
  std::vector<AlphaRule> alpha_rules{AlphaRule{}};
  Window deepwalk_window{2, 2};
  Window node2vec_window{3, 3};
  std::vector<int> l_values{10};
  std::vector<double> b_values{1.0};
  double eta = 1.0;
  /// Multiplies (log n)^{c0} in the regime annotation.
  double threshold_multiplier = 1.0;
  MatrixMode mode = MatrixMode::closed_form;
  std::int64_t walks = 0;
  /// Upper bound on r * l for monte_carlo mode.
  std::int64_t walk_cap = 200'000'000;
  std::vector<std::uint64_t> seeds;
  int restarts = 32;
  int max_iters = 100;
  std::string output;
  bool timing = false;

  Window window_for(WalkKernel kernel) const {
    return kernel == WalkKernel::deepwalk ? deepwalk_window : node2vec_window;
  }
};

/// Flat "key = value" text. Lines starting with '#' are comments; a key may
/// repeat and a value may hold several whitespace-separated items, both of
/// which extend the list. Throws std::invalid_argument with the line number
/// on unknown keys, malformed values or an infeasible window.
ExperimentConfig parse_config(std::istream& in);
ExperimentConfig load_config(const std::string& path);

/// Throws std::invalid_argument if the config cannot be run.
void validate_config(const ExperimentConfig& config);

struct ResultRow {
  int n = 0;
  double rho = 0.0;
  int K = 0;
  WalkKernel kernel = WalkKernel::deepwalk;
  double alpha = 1.0;
  int t_L = 0;
  int t_U = 0;
  int l = 0;
  double b = 1.0;
  MatrixMode mode = MatrixMode::closed_form;
  std::uint64_t seed = 0;
  std::string regime;
  double c0 = 0.0;
  double frob = 0.0;
  double frob_over_n = 0.0;
  std::int64_t masked_pairs = 0;
  double err = 0.0;
  double kmeans_obj = 0.0;
  double ms = 0.0;
};

/// 0 if t_L = 2, else floor(t_L / 2). Throws for t_L < 2.
int compute_phi(int t_L);

/// 4 + (t_L + 1) eta for DeepWalk, 4 + (t_L + 2) eta for node2vec.
double polylog_exponent(WalkKernel kernel, int t_L, double eta);

/// "recovery", "failure" or "intermediate".
std::string regime_label(WalkKernel kernel, int n, double rho, Window window, double eta, double multiplier = 1.0);

/// Grid order: n, rho, kernel, alpha, l, b, seed. Every seed has
/// `seed_offset` added before use. Output does not depend on the thread count.
std::vector<ResultRow> run_experiment(const ExperimentConfig& config, std::uint64_t seed_offset = 0);

inline constexpr const char* kCsvHeader =
    "n,rho,K,kernel,alpha,t_L,t_U,l,b,mode,seed,regime,frob,frob_over_n,masked_pairs,err,kmeans_obj,ms";

void write_csv(std::ostream& out, const std::vector<ResultRow>& rows);
void emit_csv(const std::vector<ResultRow>& rows, const std::string& path);
std::vector<ResultRow> read_csv(std::istream& in);
std::vector<ResultRow> read_csv_file(const std::string& path);

/// Numeric CSV columns usable as plot axes.
const std::vector<std::string>& plot_fields();
double field_value(const ResultRow& row, const std::string& field);

struct PlotOptions {
  bool log_x = false;
  bool log_y = false;
  int width = 640;
  int height = 480;
};

void write_svg_scatter(std::ostream& out, const std::vector<ResultRow>& rows, const std::string& x_field,
                       const std::string& y_field, const PlotOptions& options = {});
void emit_svg_scatter(const std::vector<ResultRow>& rows, const std::string& x_field, const std::string& y_field,
                      const std::string& path, const PlotOptions& options = {});

}  // namespace sbmwalk
