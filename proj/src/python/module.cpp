#include <pybind11/pybind11.h>
#include <pybind11/operators.h>
#include <pybind11/stl.h>

#include <string>
#include <vector>

#include "rtergm/error.hpp"
#include "rtergm/estimator.hpp"
#include "rtergm/gof.hpp"
#include "rtergm/graph.hpp"
#include "rtergm/ingest.hpp"
#include "rtergm/io.hpp"
#include "rtergm/node_table.hpp"
#include "rtergm/sampler.hpp"
#include "rtergm/terms.hpp"

namespace py = pybind11;
using namespace rtergm;

namespace {

DirectedGraph graph_from_edges(const std::vector<Edge>& edges, std::size_t n) { return from_edge_list(edges, n); }

py::dict stats_dict(const DescriptiveStats& s) {
  py::dict roles;
  for (Role r : kAllRoles) {
    const auto& d = s.degree(r);
    py::dict entry;
    entry["count"] = d.count;
    entry["in_mean"] = d.in_mean;
    entry["in_sd"] = d.in_sd;
    entry["out_mean"] = d.out_mean;
    entry["out_sd"] = d.out_sd;
    roles[py::str(std::string(to_string(r)))] = entry;
  }
  py::dict out;
  out["edges"] = s.edges;
  out["unique_dyads"] = s.unique_dyads;
  out["users"] = s.users;
  out["centralization"] = s.centralization;
  out["max_in_degree"] = s.max_in_degree;
  out["max_out_degree"] = s.max_out_degree;
  out["roles"] = roles;
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Retweet-network construction and exponential random graph models";

  static py::exception<Error> error_type(m, "RtergmError", PyExc_RuntimeError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::object instance = py::reinterpret_borrow<py::object>(error_type.ptr())(e.what());
      instance.attr("module") = std::string(e.module());
      instance.attr("operation") = e.operation();
      instance.attr("code") = std::string(to_string(e.code()));
      instance.attr("cause") = e.cause();
      PyErr_SetObject(error_type.ptr(), instance.ptr());
    }
  });

  py::enum_<Role>(m, "Role")
      .value("Ordinary", Role::Ordinary)
      .value("Organization", Role::Organization)
      .value("Leader", Role::Leader)
      .value("Influential", Role::Influential);

  py::enum_<TermKind>(m, "TermKind")
      .value("Edges", TermKind::Edges)
      .value("GwespOTP", TermKind::GwespOTP)
      .value("GwnspOTP", TermKind::GwnspOTP)
      .value("GwInDegree", TermKind::GwInDegree)
      .value("GwOutDegree", TermKind::GwOutDegree)
      .value("NodeOutFactor", TermKind::NodeOutFactor)
      .value("NodeInFactor", TermKind::NodeInFactor)
      .value("NodeOutCov", TermKind::NodeOutCov)
      .value("NodeInCov", TermKind::NodeInCov);

  py::enum_<ScenarioKind>(m, "ScenarioKind")
      .value("CrowdLike", ScenarioKind::CrowdLike)
      .value("OrgLike", ScenarioKind::OrgLike);

  // graph_core -------------------------------------------------------------
  py::class_<DirectedGraph>(m, "DirectedGraph")
      .def(py::init<std::size_t>(), py::arg("n"))
      .def_static("from_edges", &graph_from_edges, py::arg("edges"), py::arg("n"))
      .def_property_readonly("node_count", &DirectedGraph::node_count)
      .def_property_readonly("edge_count", &DirectedGraph::edge_count)
      .def("has_edge", &DirectedGraph::has_edge)
      .def("add_edge", &DirectedGraph::add_edge)
      .def("remove_edge", &DirectedGraph::remove_edge)
      .def("toggle_edge", &DirectedGraph::toggle_edge)
      .def("in_degree", &DirectedGraph::in_degree)
      .def("out_degree", &DirectedGraph::out_degree)
      .def("edges", &DirectedGraph::edges)
      .def(py::self == py::self)
      .def("__repr__", [](const DirectedGraph& g) {
        return "DirectedGraph(n=" + std::to_string(g.node_count()) + ", edges=" + std::to_string(g.edge_count()) + ")";
      });
  m.def("shared_partners_otp", &shared_partners_otp, py::arg("g"), py::arg("i"), py::arg("j"));
  m.def("degree_centralization", &degree_centralization, py::arg("g"));
  m.def("max_in_degree", &max_in_degree, py::arg("g"));
  m.def("max_out_degree", &max_out_degree, py::arg("g"));

  py::class_<NodeTable>(m, "NodeTable")
      .def(py::init<>())
      .def_readwrite("role", &NodeTable::role)
      .def_readwrite("followers", &NodeTable::followers)
      .def_readwrite("screen_name", &NodeTable::screen_name)
      .def("__len__", &NodeTable::size)
      .def_static("uniform", &NodeTable::uniform, py::arg("n"));
  m.def("follower_covariate", &follower_covariate, py::arg("nodes"));
  m.def("parse_node_csv", &parse_node_csv, py::arg("text"));
  m.def("format_node_csv", &format_node_csv, py::arg("nodes"));
  m.def("parse_edge_list", &parse_edge_list, py::arg("text"));
  m.def("format_edge_list", &format_edge_list, py::arg("g"));

  // model_terms ------------------------------------------------------------
  py::class_<TermSpec>(m, "TermSpec")
      .def_readonly("kind", &TermSpec::kind)
      .def_readonly("decay", &TermSpec::decay)
      .def_readonly("level", &TermSpec::level)
      .def_readonly("covariate", &TermSpec::covariate)
      .def_static("edges", &TermSpec::edges)
      .def_static("gwesp", &TermSpec::gwesp, py::arg("decay") = kDefaultDecay)
      .def_static("gwnsp", &TermSpec::gwnsp, py::arg("decay") = kDefaultDecay)
      .def_static("gwidegree", &TermSpec::gwidegree, py::arg("decay") = kDefaultDecay)
      .def_static("gwodegree", &TermSpec::gwodegree, py::arg("decay") = kDefaultDecay)
      .def_static("nodeofactor", &TermSpec::nodeofactor, py::arg("level"))
      .def_static("nodeifactor", &TermSpec::nodeifactor, py::arg("level"))
      .def_static("nodeocov", &TermSpec::nodeocov, py::arg("covariate") = "followers")
      .def_static("nodeicov", &TermSpec::nodeicov, py::arg("covariate") = "followers")
      .def("validate", &TermSpec::validate)
      .def("name", &TermSpec::name)
      .def("display_label", &TermSpec::display_label)
      .def(py::self == py::self)
      .def("__repr__", [](const TermSpec& t) { return "TermSpec(" + t.name() + ")"; });

  py::class_<ModelSpec>(m, "ModelSpec")
      .def(py::init<>())
      .def(py::init([](std::vector<TermSpec> terms) { return ModelSpec{std::move(terms)}; }), py::arg("terms"))
      .def_readwrite("terms", &ModelSpec::terms)
      .def("names", &ModelSpec::names)
      .def("display_labels", &ModelSpec::display_labels)
      .def("dyad_independent", &ModelSpec::dyad_independent)
      .def("without_absent_levels", &ModelSpec::without_absent_levels, py::arg("nodes"))
      .def_static("full_role_model", &ModelSpec::full_role_model, py::arg("decay") = kDefaultDecay)
      .def("__len__", &ModelSpec::size)
      .def(py::self == py::self);
  m.def("parse_model_spec", &parse_model_spec, py::arg("text"));
  m.def("load_model_spec", &load_model_spec, py::arg("path"));
  m.def("format_model_spec", &format_model_spec, py::arg("spec"));
  m.def("statistics", py::overload_cast<const DirectedGraph&, const NodeTable&, const ModelSpec&>(&statistics),
        py::arg("g"), py::arg("nodes"), py::arg("spec"));
  m.def("change_statistics",
        py::overload_cast<const DirectedGraph&, const NodeTable&, const ModelSpec&, Node, Node>(&change_statistics),
        py::arg("g"), py::arg("nodes"), py::arg("spec"), py::arg("i"), py::arg("j"));

  // sampler ----------------------------------------------------------------
  py::class_<SamplerConfig>(m, "SamplerConfig")
      .def(py::init<>())
      .def_readwrite("burn_in", &SamplerConfig::burn_in)
      .def_readwrite("interval", &SamplerConfig::interval)
      .def_readwrite("sample_size", &SamplerConfig::sample_size)
      .def_readwrite("seed", &SamplerConfig::seed)
      .def("validate", &SamplerConfig::validate);
  m.attr("DEFAULT_SEED") = kDefaultSeed;

  py::class_<Sample>(m, "Sample")
      .def_readonly("graph", &Sample::graph)
      .def_readonly("stats", &Sample::stats);
  m.def(
      "simulate",
      [](const ModelSpec& spec, const std::vector<double>& theta, const NodeTable& nodes, const SamplerConfig& config,
         std::optional<DirectedGraph> start) {
        py::gil_scoped_release release;
        return simulate(spec, theta, nodes, config, start ? *start : DirectedGraph(nodes.size()));
      },
      py::arg("spec"), py::arg("theta"), py::arg("nodes"), py::arg("config") = SamplerConfig{},
      py::arg("start") = py::none());

  py::class_<RoleCounts>(m, "RoleCounts")
      .def(py::init<>())
      .def_readwrite("organizations", &RoleCounts::organizations)
      .def_readwrite("leaders", &RoleCounts::leaders)
      .def_readwrite("influential", &RoleCounts::influential)
      .def_readwrite("ordinary", &RoleCounts::ordinary)
      .def("total", &RoleCounts::total)
      .def_static("observed", &RoleCounts::observed, py::arg("kind"))
      .def_static("scaled", &RoleCounts::scaled, py::arg("kind"), py::arg("n"));
  py::class_<Scenario>(m, "Scenario")
      .def_readonly("graph", &Scenario::graph)
      .def_readonly("nodes", &Scenario::nodes)
      .def_readonly("spec", &Scenario::spec)
      .def_readonly("theta", &Scenario::theta);
  m.def("generate_scenario", &generate_scenario, py::arg("kind"), py::arg("counts"), py::arg("seed") = kDefaultSeed,
        py::call_guard<py::gil_scoped_release>());

  // estimator --------------------------------------------------------------
  py::class_<FitResult>(m, "FitResult")
      .def_readonly("term_names", &FitResult::term_names)
      .def_readonly("theta", &FitResult::theta)
      .def_readonly("std_errors", &FitResult::std_errors)
      .def_readonly("odds_ratios", &FitResult::odds_ratios)
      .def_readonly("p_values", &FitResult::p_values)
      .def_readonly("log_lik", &FitResult::log_lik)
      .def_readonly("log_lik_basis", &FitResult::log_lik_basis)
      .def_readonly("aic", &FitResult::aic)
      .def_readonly("bic", &FitResult::bic)
      .def_readonly("n_obs", &FitResult::n_obs)
      .def_readonly("iterations", &FitResult::iterations)
      .def_readonly("converged", &FitResult::converged)
      .def_readonly("degeneracy_flag", &FitResult::degeneracy_flag)
      .def_readonly("approximate_std_errors", &FitResult::approximate_std_errors)
      .def_property_readonly("method", [](const FitResult& f) { return std::string(to_string(f.method)); });
  py::class_<MpleOptions>(m, "MpleOptions")
      .def(py::init<>())
      .def_readwrite("gradient_tolerance", &MpleOptions::gradient_tolerance)
      .def_readwrite("max_iterations", &MpleOptions::max_iterations);
  m.def("mple", py::overload_cast<const DirectedGraph&, const NodeTable&, const ModelSpec&, const MpleOptions&>(&mple),
        py::arg("g"), py::arg("nodes"), py::arg("spec"), py::arg("options") = MpleOptions{},
        py::call_guard<py::gil_scoped_release>());
  py::class_<McmleOptions>(m, "McmleOptions")
      .def(py::init<>())
      .def_readwrite("max_outer", &McmleOptions::max_outer)
      .def_readwrite("tolerance", &McmleOptions::tolerance)
      .def_readwrite("min_ess_fraction", &McmleOptions::min_ess_fraction)
      .def_readwrite("loglik_bridges", &McmleOptions::loglik_bridges)
      .def_readwrite("bridge_sample_size", &McmleOptions::bridge_sample_size);
  m.def(
      "mcmle",
      [](const DirectedGraph& g, const NodeTable& nodes, const ModelSpec& spec, const SamplerConfig& config,
         const McmleOptions& options) {
        py::gil_scoped_release release;
        return mcmle(g, Model(spec, nodes), config, options);
      },
      py::arg("g"), py::arg("nodes"), py::arg("spec"), py::arg("config") = SamplerConfig{},
      py::arg("options") = McmleOptions{});
  m.def("odds_ratio", &odds_ratio, py::arg("beta"));
  m.def("wald_p_value", &wald_p_value, py::arg("estimate"), py::arg("std_error"));
  m.def(
      "report_table", [](const FitResult& fit, const ModelSpec& spec) { return report_table(fit, spec); },
      py::arg("fit"), py::arg("spec"));
  m.def("report_json", &report_json, py::arg("fit"));
  m.def("fit_from_json", &fit_from_json, py::arg("text"));

  // gof --------------------------------------------------------------------
  py::class_<GofFamily>(m, "GofFamily")
      .def_readonly("name", &GofFamily::name)
      .def_readonly("coordinates", &GofFamily::coordinates)
      .def_readonly("observed", &GofFamily::observed)
      .def_readonly("quantiles", &GofFamily::quantiles)
      .def_readonly("inside", &GofFamily::inside);
  py::class_<GofReport>(m, "GofReport")
      .def_readonly("families", &GofReport::families)
      .def("fraction_inside", &GofReport::fraction_inside)
      .def("coordinate_count", &GofReport::coordinate_count);
  m.def(
      "gof",
      [](const DirectedGraph& g, const NodeTable& nodes, const ModelSpec& spec, const FitResult& fit,
         const SamplerConfig& config) {
        py::gil_scoped_release release;
        return gof_run(g, Model(spec, nodes), fit, config);
      },
      py::arg("g"), py::arg("nodes"), py::arg("spec"), py::arg("fit"), py::arg("config") = SamplerConfig{});
  m.def("render_gof", &render_gof, py::arg("report"), py::arg("dir"));

  // ingest -----------------------------------------------------------------
  py::class_<TweetRecord>(m, "TweetRecord")
      .def(py::init([](std::string id, std::int64_t created_at, std::string author, std::uint64_t followers,
                       std::string text) {
             return TweetRecord{std::move(id), created_at, std::move(author), followers, std::move(text), 0};
           }),
           py::arg("id"), py::arg("created_at"), py::arg("author"), py::arg("followers"), py::arg("text"))
      .def_readonly("id", &TweetRecord::id)
      .def_readonly("created_at", &TweetRecord::created_at)
      .def_readonly("author", &TweetRecord::author)
      .def_readonly("followers", &TweetRecord::followers)
      .def_readonly("text", &TweetRecord::text);
  py::class_<RetweetEntry>(m, "RetweetEntry")
      .def_readonly("tweet_id", &RetweetEntry::tweet_id)
      .def_readonly("created_at", &RetweetEntry::created_at)
      .def_readonly("retweeter", &RetweetEntry::retweeter)
      .def_readonly("author", &RetweetEntry::author)
      .def_readonly("source", &RetweetEntry::source)
      .def_readonly("target", &RetweetEntry::target);
  py::class_<RetweetNetwork>(m, "RetweetNetwork")
      .def_readonly("graph", &RetweetNetwork::graph)
      .def_readonly("nodes", &RetweetNetwork::nodes)
      .def_readonly("log", &RetweetNetwork::log)
      .def_readonly("self_retweets", &RetweetNetwork::self_retweets)
      .def_readonly("warnings", &RetweetNetwork::warnings);
  m.def("parse_retweet", &parse_retweet, py::arg("text"));
  m.def("parse_timestamp", &parse_timestamp, py::arg("text"), py::arg("line") = 0);
  m.def("parse_tweets_csv", &parse_tweets_csv, py::arg("text"));
  m.def("parse_tweets_jsonl", &parse_tweets_jsonl, py::arg("text"));
  m.def("load_tweets", &load_tweets, py::arg("path"));
  m.def("parse_role_csv", &parse_role_csv, py::arg("text"));
  m.def(
      "build_network",
      [](std::vector<TweetRecord> records, std::size_t limit, std::optional<RoleMap> roles,
         std::vector<std::string> excluded_ids) {
        IngestOptions o;
        o.limit = limit;
        o.roles = std::move(roles);
        o.excluded_ids.insert(excluded_ids.begin(), excluded_ids.end());
        return build_network(std::move(records), o);
      },
      py::arg("records"), py::arg("limit") = 1000, py::arg("roles") = py::none(),
      py::arg("excluded_ids") = std::vector<std::string>{});
  m.def("format_retweet_log", &format_retweet_log, py::arg("log"));
  m.def(
      "describe", [](const RetweetNetwork& net) { return stats_dict(describe(net)); }, py::arg("network"));
  m.def(
      "describe_table", [](const RetweetNetwork& net) { return describe_table(describe(net)); },
      py::arg("network"));
  m.def(
      "describe_json", [](const RetweetNetwork& net) { return describe_json(describe(net)); }, py::arg("network"));
  m.def("krippendorff_alpha", &krippendorff_alpha, py::arg("coder_a"), py::arg("coder_b"));
}
