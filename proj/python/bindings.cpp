#include <sstream>

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/numpy.h>

#include "sbmwalk/cooccurrence.hpp"
#include "sbmwalk/experiment.hpp"
#include "sbmwalk/m_matrix.hpp"
#include "sbmwalk/parallel.hpp"
#include "sbmwalk/path_oracle.hpp"
#include "sbmwalk/sbm.hpp"
#include "sbmwalk/spectral.hpp"
#include "sbmwalk/walks.hpp"

namespace py = pybind11;
using namespace sbmwalk;

namespace {

using WalkArray = py::array_t<std::uint32_t, py::array::c_style | py::array::forcecast>;

CommunityAssignment assignment_for(const BlockModel& model, const std::optional<std::vector<int>>& labels) {
  if (!labels) return grouped_assignment(model);
  CommunityAssignment a{model.K, *labels};
  check_assignment(model, a);
  return a;
}

WalkArray to_array(const WalkCorpus& corpus) {
  WalkArray out({static_cast<py::ssize_t>(corpus.walk_count()), static_cast<py::ssize_t>(corpus.walk_length())});
  std::copy(corpus.nodes.begin(), corpus.nodes.end(), out.mutable_data());
  return out;
}

WalkCorpus from_array(const WalkArray& walks, int n) {
  if (walks.ndim() != 2) throw std::invalid_argument("walks must be a 2-d array (r, l)");
  WalkCorpus c;
  c.params.r = walks.shape(0);
  c.params.l = static_cast<int>(walks.shape(1));
  c.node_count = n;
  c.nodes.assign(walks.data(), walks.data() + walks.size());
  for (auto v : c.nodes)
    if (static_cast<int>(v) >= n) throw std::invalid_argument("walk node id out of range");
  return c;
}

CooccurrenceMatrix counts_from(const Eigen::MatrixXd& dense) {
  if (dense.rows() != dense.cols()) throw std::invalid_argument("counts must be square");
  CooccurrenceMatrix C(static_cast<int>(dense.rows()), {1, 1});
  for (Eigen::Index i = 0; i < dense.rows(); ++i)
    for (Eigen::Index j = 0; j < dense.cols(); ++j) {
      const double v = dense(i, j);
      if (v < 0 || v != std::floor(v)) throw std::invalid_argument("counts must be non-negative integers");
      if (v > 0) C.add(static_cast<int>(i), static_cast<int>(j), static_cast<std::uint64_t>(v));
    }
  return C;
}

py::dict row_dict(const ResultRow& r) {
  py::dict d;
  d["n"] = r.n;
  d["rho"] = r.rho;
  d["K"] = r.K;
  d["kernel"] = kernel_name(r.kernel);
  d["alpha"] = r.alpha;
  d["t_L"] = r.t_L;
  d["t_U"] = r.t_U;
  d["l"] = r.l;
  d["b"] = r.b;
  d["mode"] = mode_name(r.mode);
  d["seed"] = r.seed;
  d["regime"] = r.regime;
  d["frob"] = r.frob;
  d["frob_over_n"] = r.frob_over_n;
  d["masked_pairs"] = r.masked_pairs;
  d["err"] = r.err;
  d["kmeans_obj"] = r.kmeans_obj;
  d["ms"] = r.ms;
  return d;
}

ExperimentConfig config_from(const std::string& text) {
  std::istringstream in(text);
  return parse_config(in);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Random-walk embeddings on stochastic block models";

  m.def("set_thread_count", &set_thread_count, py::arg("threads"));
  m.def("thread_count", &thread_count);

  py::class_<BlockModel>(m, "BlockModel")
      .def_readonly("K", &BlockModel::K)
      .def_readonly("block_sizes", &BlockModel::block_sizes)
      .def_readonly("B0", &BlockModel::B0)
      .def_readonly("rho", &BlockModel::rho)
      .def_property_readonly("node_count", &BlockModel::node_count)
      .def_property_readonly("B", &BlockModel::B);

  m.def("build_block_model", &build_block_model, py::arg("K"), py::arg("block_sizes"), py::arg("B0"), py::arg("rho"));
  m.def("balanced_block_sizes", &balanced_block_sizes, py::arg("n"), py::arg("K"));
  m.def("grouped_labels", [](const BlockModel& model) { return grouped_assignment(model).labels; }, py::arg("model"));
  m.def(
      "edge_probability_matrix",
      [](const BlockModel& model, std::optional<std::vector<int>> labels) {
        return edge_probability_matrix(model, assignment_for(model, labels));
      },
      py::arg("model"), py::arg("labels") = py::none());

  py::class_<Graph>(m, "Graph")
      .def_static("from_edges", &Graph::from_edges, py::arg("n"), py::arg("edges"))
      .def_property_readonly("node_count", &Graph::node_count)
      .def_property_readonly("edge_count", &Graph::edge_count)
      .def_property_readonly("two_m", &Graph::two_m)
      .def("degree", &Graph::degree)
      .def("degrees", &Graph::degrees)
      .def("neighbors", [](const Graph& g, int v) {
        if (v < 0 || v >= g.node_count()) throw py::index_error("node out of range");
        const auto s = g.neighbors(v);
        return std::vector<int>(s.begin(), s.end());
      })
      .def("has_edge", &Graph::has_edge)
      .def("edges", &Graph::edges)
      .def("dense_adjacency", &Graph::dense_adjacency)
      .def("to_text", &Graph::to_text);

  m.def(
      "sample_graph",
      [](const BlockModel& model, std::uint64_t seed, std::optional<std::vector<int>> labels) {
        const auto a = assignment_for(model, labels);
        py::gil_scoped_release release;
        return sample_graph(model, a, seed);
      },
      py::arg("model"), py::arg("seed"), py::arg("labels") = py::none());

  m.def(
      "deepwalk_walks",
      [](const Graph& g, std::int64_t r, int l, std::uint64_t seed) {
        WalkCorpus c;
        {
          py::gil_scoped_release release;
          c = deepwalk_walks(g, r, l, seed);
        }
        return to_array(c);
      },
      py::arg("graph"), py::arg("r"), py::arg("l"), py::arg("seed"));
  m.def(
      "node2vec_walks",
      [](const Graph& g, std::int64_t r, int l, double alpha, double beta, std::uint64_t seed) {
        WalkCorpus c;
        {
          py::gil_scoped_release release;
          c = node2vec_walks(g, r, l, alpha, beta, seed);
        }
        return to_array(c);
      },
      py::arg("graph"), py::arg("r"), py::arg("l"), py::arg("alpha"), py::arg("beta") = 1.0, py::arg("seed"));

  m.def("window_gamma", [](int l, int t_L, int t_U) { return window_gamma(l, {t_L, t_U}); }, py::arg("l"),
        py::arg("t_L"), py::arg("t_U"));
  m.def(
      "cooccurrence",
      [](const WalkArray& walks, int n, int t_L, int t_U) {
        return dense_counts(accumulate(from_array(walks, n), n, {t_L, t_U}));
      },
      py::arg("walks"), py::arg("n"), py::arg("t_L"), py::arg("t_U"), "Dense symmetric co-occurrence counts.");

  py::class_<MMatrix>(m, "MMatrix")
      .def_readonly("entries", &MMatrix::entries)
      .def_readonly("mask", &MMatrix::mask)
      .def_property_readonly("masked_count", &MMatrix::masked_count);

  m.def("empirical_m", [](const Eigen::MatrixXd& counts, double b) { return empirical_m(counts_from(counts), b); },
        py::arg("counts"), py::arg("b") = 1.0);
  m.def(
      "graph_m",
      [](const Graph& g, const std::string& kernel, int t_L, int t_U, int l, double b, double alpha) {
        return graph_m(g, parse_kernel(kernel), {t_L, t_U}, l, b, alpha);
      },
      py::arg("graph"), py::arg("kernel"), py::arg("t_L"), py::arg("t_U"), py::arg("l"), py::arg("b") = 1.0,
      py::arg("alpha") = 1.0, "Limit M-matrix of the walk on a sampled graph.");
  m.def(
      "noiseless_m0",
      [](const BlockModel& model, const std::string& kernel, int t_L, int t_U, int l, double b, double alpha,
         std::optional<std::vector<int>> labels) {
        return noiseless_m0(model, assignment_for(model, labels), parse_kernel(kernel), {t_L, t_U}, l, b, alpha);
      },
      py::arg("model"), py::arg("kernel"), py::arg("t_L"), py::arg("t_U"), py::arg("l"), py::arg("b") = 1.0,
      py::arg("alpha") = 1.0, py::arg("labels") = py::none());
  m.def(
      "sgns_objective",
      [](const Eigen::MatrixXd& counts, const Eigen::MatrixXd& F, const Eigen::MatrixXd& Fp, double b) {
        return sgns_objective(counts, F, Fp, b);
      },
      py::arg("counts"), py::arg("F"), py::arg("F_prime"), py::arg("b") = 1.0);
  m.def("frobenius_distance", py::overload_cast<const Eigen::MatrixXd&, const Eigen::MatrixXd&>(&frobenius_distance));

  m.def(
      "top_k_eigen",
      [](const Eigen::MatrixXd& M, int K) {
        auto e = top_k_eigen(M, K);
        return py::make_tuple(e.eigenvalues, e.vectors);
      },
      py::arg("M"), py::arg("K"), "(eigenvalues, vectors) for the K largest |lambda|.");

  py::class_<ClusterResult>(m, "ClusterResult")
      .def_readonly("labels", &ClusterResult::labels)
      .def_readonly("centers", &ClusterResult::centers)
      .def_readonly("objective", &ClusterResult::objective)
      .def_readonly("empty_cluster_repairs", &ClusterResult::empty_cluster_repairs)
      .def_readonly("winning_restart", &ClusterResult::winning_restart);

  m.def("kmeans", &kmeans_cluster, py::arg("rows"), py::arg("K"), py::arg("restarts") = 32, py::arg("max_iters") = 100,
        py::arg("seed") = 0, py::call_guard<py::gil_scoped_release>());
  m.def("spectral_cluster", &spectral_cluster, py::arg("M"), py::arg("K"), py::arg("restarts") = 32,
        py::arg("max_iters") = 100, py::arg("seed") = 0, py::call_guard<py::gil_scoped_release>());
  m.def(
      "misclassification_rate",
      [](const std::vector<int>& predicted, const std::vector<int>& truth, int K) {
        return misclassification_rate(predicted, truth, K);
      },
      py::arg("predicted"), py::arg("truth"), py::arg("K"));
  m.def("procrustes_distance", &procrustes_distance, py::arg("V"), py::arg("V0"));

  m.def("compute_phi", &compute_phi, py::arg("t_L"));
  m.def(
      "regime_label",
      [](const std::string& kernel, int n, double rho, int t_L, int t_U, double eta, double multiplier) {
        return regime_label(parse_kernel(kernel), n, rho, {t_L, t_U}, eta, multiplier);
      },
      py::arg("kernel"), py::arg("n"), py::arg("rho"), py::arg("t_L"), py::arg("t_U"), py::arg("eta") = 1.0,
      py::arg("multiplier") = 1.0);

  m.def(
      "run_experiment",
      [](const std::string& config_text, std::uint64_t seed_offset) {
        const auto config = config_from(config_text);
        std::vector<ResultRow> rows;
        {
          py::gil_scoped_release release;
          rows = run_experiment(config, seed_offset);
        }
        py::list out;
        for (const auto& r : rows) out.append(row_dict(r));
        return out;
      },
      py::arg("config_text"), py::arg("seed_offset") = 0, "Run a config given as text; returns one dict per row.");
  m.def(
      "experiment_csv",
      [](const std::string& config_text, std::uint64_t seed_offset) {
        const auto config = config_from(config_text);
        std::ostringstream out;
        {
          py::gil_scoped_release release;
          write_csv(out, run_experiment(config, seed_offset));
        }
        return out.str();
      },
      py::arg("config_text"), py::arg("seed_offset") = 0);
  m.attr("CSV_HEADER") = kCsvHeader;

  m.def(
      "oracle_check",
      [](int samples, std::uint64_t seed) {
        OracleSuiteOptions opt;
        opt.samples = samples;
        opt.seed = seed;
        std::vector<OracleCheck> checks;
        {
          py::gil_scoped_release release;
          checks = run_oracle_suite(opt);
        }
        py::list out;
        for (const auto& c : checks) {
          py::dict d;
          d["name"] = c.name;
          d["checked"] = c.checked;
          d["violations"] = c.violations;
          d["worst"] = c.worst;
          d["breakdown"] = c.breakdown;
          out.append(d);
        }
        return out;
      },
      py::arg("samples") = 10000, py::arg("seed") = 1);
}
