#include <openssl/evp.h>

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "rtergm/error.hpp"
#include "rtergm/estimator.hpp"
#include "rtergm/gof.hpp"
#include "rtergm/ingest.hpp"
#include "rtergm/io.hpp"
#include "rtergm/sampler.hpp"
#include "rtergm/terms.hpp"

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;
using namespace rtergm;

namespace {

constexpr const char* kVersion = "0.1.0";

// Failures that belong to the command line itself rather than a library module.
struct CliError : std::runtime_error {
  CliError(std::string op, const std::string& cause, std::string error_code = "InvalidArguments")
      : std::runtime_error(cause), operation(std::move(op)), code(std::move(error_code)) {}
  std::string operation;
  std::string code;
};

std::string sha256_hex(std::string_view data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int length = 0;
  if (EVP_Digest(data.data(), data.size(), digest, &length, EVP_sha256(), nullptr) != 1)
    throw CliError("checksum", "SHA-256 digest failed");
  std::string hex;
  hex.reserve(2 * length);
  char buf[3];
  for (unsigned int k = 0; k < length; ++k) {
    std::snprintf(buf, sizeof buf, "%02x", digest[k]);
    hex += buf;
  }
  return hex;
}

struct Options {
  std::string input;
  std::string nodes;
  std::string roles;
  std::string model;
  std::string fit;
  std::string exclude;
  std::string start;
  std::string theta;
  std::string method = "mple";
  std::string kind = "crowd";
  std::string out_dir = "rtergm_out";
  std::uint64_t seed = kDefaultSeed;
  std::uint64_t samples = 0;  // 0: subcommand default
  std::optional<std::uint64_t> burn_in;
  std::optional<std::uint64_t> interval;
  std::size_t limit = 1000;
  std::size_t n = 300;
  bool observed_counts = false;
  bool write_graphs = false;
  int verbosity = 0;
};

// Records inputs, configuration and every artifact with its checksum, then writes
// manifest.json. Contains no timestamps so that identical runs give identical bytes.
class Run {
 public:
  Run(std::string subcommand, const Options& opt) : subcommand_(std::move(subcommand)), opt_(opt) {
    std::error_code ec;
    fs::create_directories(opt.out_dir, ec);
    if (ec) throw CliError(subcommand_, "cannot create output directory " + opt.out_dir + ": " + ec.message());
  }

  std::string read_input(const std::string& role, const std::string& path) {
    if (path.empty()) throw CliError(subcommand_, "missing required --" + role + " path", "MissingInput");
    if (!fs::is_regular_file(path)) throw CliError(subcommand_, role + " file not found: " + path, "MissingInput");
    std::string text = read_file(path);
    inputs_.push_back({{"role", role}, {"path", path}, {"sha256", sha256_hex(text)}});
    return text;
  }

  void write(const std::string& name, const std::string& contents) {
    const fs::path path = fs::path(opt_.out_dir) / name;
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    write_file(path.string(), contents);
    artifacts_.push_back({{"path", name}, {"sha256", sha256_hex(contents)}});
    if (opt_.verbosity > 0) std::cerr << "wrote " << path.string() << "\n";
  }

  void record_file(const std::string& full_path) {
    const std::string text = read_file(full_path);
    artifacts_.push_back({{"path", fs::relative(full_path, opt_.out_dir).generic_string()}, {"sha256", sha256_hex(text)}});
  }

  void warn(const std::string& message) {
    warnings_.push_back(message);
    if (opt_.verbosity > 0) std::cerr << "warning: " << message << "\n";
  }

  json& config() { return config_; }

  void finish() {
    json manifest;
    manifest["tool"] = "rtergm";
    manifest["version"] = kVersion;
    manifest["subcommand"] = subcommand_;
    manifest["seed"] = opt_.seed;
    manifest["inputs"] = inputs_;
    manifest["config"] = config_;
    manifest["warnings"] = warnings_;
    manifest["artifacts"] = artifacts_;
    const fs::path path = fs::path(opt_.out_dir) / "manifest.json";
    write_file(path.string(), manifest.dump(2) + "\n");
  }

 private:
  std::string subcommand_;
  const Options& opt_;
  json inputs_ = json::array();
  json artifacts_ = json::array();
  json config_ = json::object();
  std::vector<std::string> warnings_;
};

std::string to_json_text(const json& j) { return j.dump(2) + "\n"; }

std::vector<double> parse_theta_list(const std::string& text) {
  std::vector<double> theta;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    double value = 0.0;
    try {
      value = std::stod(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    while (used < item.size() && std::isspace(static_cast<unsigned char>(item[used]))) ++used;
    if (used == 0 || used != item.size()) throw CliError("parse_theta", "--theta entry is not a number: '" + item + "'");
    theta.push_back(value);
  }
  if (theta.empty()) throw CliError("parse_theta", "--theta is empty");
  return theta;
}

SamplerConfig sampler_config(const Options& opt, std::uint64_t default_samples) {
  SamplerConfig c;
  c.seed = opt.seed;
  c.sample_size = opt.samples > 0 ? opt.samples : default_samples;
  c.burn_in = opt.burn_in;
  c.interval = opt.interval;
  c.validate();
  return c;
}

json sampler_json(const SamplerConfig& c, std::size_t n) {
  return json{{"proposal", "TNT"},
              {"sample_size", c.sample_size},
              {"burn_in", c.burn_in_for(n)},
              {"interval", c.interval_for(n)},
              {"seed", c.seed}};
}

ModelSpec parse_model_file(const std::string& text, const std::string& path) {
  try {
    return parse_model_spec(text);
  } catch (const Error& e) {
    throw Error(e.code(), e.operation(), path + ": " + e.cause());
  }
}

ModelSpec load_model(Run& run, const Options& opt, const NodeTable& nodes) {
  const ModelSpec declared = parse_model_file(run.read_input("model", opt.model), opt.model);
  ModelSpec spec = declared.without_absent_levels(nodes);
  for (const auto& t : declared.terms)
    if (std::find(spec.terms.begin(), spec.terms.end(), t) == spec.terms.end())
      run.warn("term '" + t.name() + "' dropped: no node has that role level");
  return spec;
}

struct LoadedNetwork {
  NodeTable nodes;
  DirectedGraph graph;
};

LoadedNetwork load_network(Run& run, const Options& opt) {
  LoadedNetwork net;
  net.nodes = parse_node_csv(run.read_input("nodes", opt.nodes));
  const std::string edges = run.read_input("input", opt.input);
  net.graph = from_edge_list(parse_edge_list(edges), net.nodes.size());
  return net;
}

RetweetNetwork ingest_network(Run& run, const Options& opt) {
  run.read_input("input", opt.input);
  IngestOptions io;
  io.limit = opt.limit;
  if (!opt.roles.empty()) io.roles = parse_role_csv(run.read_input("roles", opt.roles));
  if (!opt.exclude.empty()) io.excluded_ids = parse_exclusion_list(run.read_input("exclude", opt.exclude));
  run.config() = {{"limit", opt.limit}, {"roles", !opt.roles.empty()}, {"exclude", !opt.exclude.empty()}};
  RetweetNetwork net = build_network(load_tweets(opt.input), io);
  for (const auto& w : net.warnings) run.warn(w);
  return net;
}

// ---------------------------------------------------------------------------
// Subcommands

void cmd_ingest(const Options& opt) {
  Run run("ingest", opt);
  const RetweetNetwork net = ingest_network(run, opt);
  run.write("retweet_log.csv", format_retweet_log(net.log));
  run.write("edges.tsv", format_edge_list(net.graph));
  run.write("nodes.csv", format_node_csv(net.nodes));
  json summary = {{"raw_retweets", net.log.size()},
                  {"unique_dyads", net.graph.edge_count()},
                  {"users", net.graph.node_count()},
                  {"self_retweets_skipped", net.self_retweets},
                  {"warnings", net.warnings}};
  run.write("ingest_summary.json", to_json_text(summary));
  run.finish();
}

void cmd_describe(const Options& opt) {
  Run run("describe", opt);
  const RetweetNetwork net = ingest_network(run, opt);
  const DescriptiveStats stats = describe(net);
  const std::string table = describe_table(stats);
  run.write("descriptives.txt", table);
  run.write("descriptives.json", describe_json(stats));
  run.finish();
  std::cout << table;
}

void cmd_fit(const Options& opt) {
  if (opt.method != "mple" && opt.method != "mcmle")
    throw CliError("fit", "--method must be 'mple' or 'mcmle', got '" + opt.method + "'");
  Run run("fit", opt);
  LoadedNetwork net = load_network(run, opt);
  const ModelSpec spec = load_model(run, opt, net.nodes);
  const Model model(spec, net.nodes);
  run.config() = {{"method", opt.method}, {"terms", spec.names()}};

  FitResult fit;
  if (opt.method == "mple") {
    fit = mple(net.graph, model);
  } else {
    const SamplerConfig c = sampler_config(opt, 1000);
    run.config()["sampler"] = sampler_json(c, net.nodes.size());
    fit = mcmle(net.graph, model, c);
    if (fit.degeneracy_flag) run.warn("MC-MLE flagged the fitted model as near-degenerate");
  }
  if (!fit.converged) run.warn("fit did not converge");
  run.write("fit.json", report_json(fit));
  const std::string table = report_table(fit, spec);
  run.write("fit_table.txt", table);
  run.finish();
  std::cout << table;
}

FitResult load_fit(Run& run, const Options& opt, const ModelSpec& spec) {
  FitResult fit = fit_from_json(run.read_input("fit", opt.fit));
  if (fit.term_names != spec.names())
    throw Error(ErrorCode::DimensionMismatch, "load_fit",
                "fit file " + opt.fit + " has terms that do not match the model file");
  return fit;
}

void cmd_simulate(const Options& opt) {
  Run run("simulate", opt);
  const NodeTable nodes = parse_node_csv(run.read_input("nodes", opt.nodes));
  const ModelSpec spec = load_model(run, opt, nodes);
  std::vector<double> theta;
  if (!opt.theta.empty() && !opt.fit.empty()) throw CliError("simulate", "give either --theta or --fit, not both");
  if (!opt.theta.empty()) {
    theta = parse_theta_list(opt.theta);
  } else if (!opt.fit.empty()) {
    theta = load_fit(run, opt, spec).theta;
  } else {
    throw CliError("simulate", "coefficients required: pass --theta or --fit");
  }
  if (theta.size() != spec.size())
    throw Error(ErrorCode::DimensionMismatch, "simulate",
                "model has " + std::to_string(spec.size()) + " terms but " + std::to_string(theta.size()) +
                    " coefficients were given");
  DirectedGraph start(nodes.size());
  if (!opt.start.empty()) start = from_edge_list(parse_edge_list(run.read_input("start", opt.start)), nodes.size());

  const SamplerConfig c = sampler_config(opt, 100);
  run.config() = {{"terms", spec.names()}, {"theta", theta}, {"sampler", sampler_json(c, nodes.size())}};
  const Model model(spec, nodes);
  const auto samples = simulate(model, theta, c, start);

  std::ostringstream csv;
  const auto names = spec.names();
  csv << "sample";
  for (const auto& name : names) csv << ',' << csv_escape(name);
  csv << '\n';
  char buf[64];
  for (std::size_t s = 0; s < samples.size(); ++s) {
    csv << s + 1;
    for (double v : samples[s].stats) {
      std::snprintf(buf, sizeof buf, "%.17g", v);
      csv << ',' << buf;
    }
    csv << '\n';
  }
  run.write("simulate_stats.csv", csv.str());
  if (opt.write_graphs) {
    for (std::size_t s = 0; s < samples.size(); ++s) {
      std::snprintf(buf, sizeof buf, "samples/sample_%04zu.tsv", s + 1);
      run.write(buf, format_edge_list(samples[s].graph));
    }
  }
  run.finish();
}

void cmd_gof(const Options& opt) {
  Run run("gof", opt);
  LoadedNetwork net = load_network(run, opt);
  const ModelSpec spec = load_model(run, opt, net.nodes);
  const FitResult fit = load_fit(run, opt, spec);
  const SamplerConfig c = sampler_config(opt, 100);
  run.config() = {{"terms", spec.names()}, {"sampler", sampler_json(c, net.nodes.size())}};
  const GofReport report = gof_run(net.graph, Model(spec, net.nodes), fit, c);
  for (const auto& path : render_gof(report, opt.out_dir)) run.record_file(path);

  json families = json::array();
  for (const auto& fam : report.families)
    families.push_back({{"family", fam.name}, {"coordinates", fam.size()}, {"inside", fam.inside_count()}});
  json summary = {{"fraction_inside", report.fraction_inside()},
                  {"coordinates", report.coordinate_count()},
                  {"envelope", "2.5% to 97.5% simulated quantiles (type 7)"},
                  {"families", families}};
  run.write("gof_summary.json", to_json_text(summary));
  run.finish();
  std::printf("fraction of coordinates inside the 95%% envelope: %.4f\n", report.fraction_inside());
}

void cmd_scenario(const Options& opt) {
  ScenarioKind kind;
  if (opt.kind == "crowd")
    kind = ScenarioKind::CrowdLike;
  else if (opt.kind == "org")
    kind = ScenarioKind::OrgLike;
  else
    throw CliError("scenario", "--kind must be 'crowd' or 'org', got '" + opt.kind + "'");
  Run run("scenario", opt);
  const RoleCounts counts = opt.observed_counts ? RoleCounts::observed(kind) : RoleCounts::scaled(kind, opt.n);
  const Scenario sc = generate_scenario(kind, counts, opt.seed);
  run.config() = {{"kind", opt.kind},
                  {"role_counts",
                   {{"organizations", counts.organizations},
                    {"leaders", counts.leaders},
                    {"influential", counts.influential},
                    {"ordinary", counts.ordinary}}}};
  run.write("edges.tsv", format_edge_list(sc.graph));
  run.write("nodes.csv", format_node_csv(sc.nodes));
  run.write("generating_model.toml", format_model_spec(sc.spec));
  json info = {{"kind", opt.kind},
               {"users", sc.graph.node_count()},
               {"edges", sc.graph.edge_count()},
               {"max_in_degree", max_in_degree(sc.graph)},
               {"max_out_degree", max_out_degree(sc.graph)},
               {"terms", sc.spec.names()},
               {"theta", sc.theta}};
  run.write("scenario.json", to_json_text(info));
  run.finish();
}

const char* kSchemas = R"(File schemas
  tweets (--input for ingest/describe)
      CSV with header id,created_at,author,followers,text, or JSON Lines with the
      same keys (extension .jsonl, .ndjson or .json). created_at accepts ISO 8601
      (2012-08-25T14:03:00Z, optional fraction and offset), the legacy Twitter form
      (Sat Aug 25 14:03:00 +0000 2012) or integer epoch seconds. A tweet is a
      retweet when its text contains "RT @name", "MT @name" or "retweet @name";
      the edge runs from the author (retweeter) to the retweeted account.
  roles (--roles)
      CSV with header screen_name,role; role is Organization, Leader, Influential
      or Ordinary (plural and any case accepted). Unlisted accounts are Ordinary.
  exclusions (--exclude)
      One tweet id per line; '#' starts a comment.
  edges (--input for fit/gof, --start for simulate)
      "source<TAB>target" per line with zero-based node ids; '#' comments allowed.
  nodes (--nodes)
      CSV with header node_id,screen_name,role,followers covering ids 0..n-1.
  model (--model)
      Optional top-level "default_decay = 0.5", then one [[term]] block per term:
          [[term]]
          kind = "gwesp_otp"     # edges, gwesp_otp, gwnsp_otp, gwidegree, gwodegree,
                                 # nodeofactor, nodeifactor, nodeocov, nodeicov
          decay = 0.5            # geometrically weighted terms
          level = "Organization" # factor terms (Ordinary is the base level)
          covariate = "followers" # covariate terms
  fit (--fit)
      The fit.json written by the fit subcommand.

Outputs (all under --out-dir)
  manifest.json       inputs with SHA-256, configuration, seed, warnings and every
                      artifact with its SHA-256; no timestamps.
  ingest:             retweet_log.csv, edges.tsv, nodes.csv, ingest_summary.json
  describe:           descriptives.txt, descriptives.json
  fit:                fit.json, fit_table.txt
  simulate:           simulate_stats.csv (one row per sample, one column per term),
                      samples/sample_NNNN.tsv with --graphs
  gof:                gof_<family>.csv and .svg for idegree, odegree, espartners,
                      distance, model; gof_summary.json
  scenario:           edges.tsv, nodes.csv, generating_model.toml, scenario.json

Errors
  Exit status 1 with one JSON object on stderr:
      {"error": {"module": ..., "operation": ..., "code": ..., "cause": ...}}
)";

int report_error(std::string_view module, std::string_view operation, std::string_view code,
                 std::string_view cause) {
  json err = {{"error", {{"module", module}, {"operation", operation}, {"code", code}, {"cause", cause}}}};
  std::cerr << err.dump() << std::endl;
  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  Options opt;
  CLI::App app{"rtergm: retweet-network construction and exponential random graph modelling"};
  app.footer(kSchemas);
  app.require_subcommand(1, 1);
  app.set_version_flag("--version", kVersion);

  auto common = [&](CLI::App* sub) {
    sub->add_option("--out-dir", opt.out_dir, "Directory for every output file")->capture_default_str();
    sub->add_option("--seed", opt.seed, "Random seed")->capture_default_str();
    sub->add_flag("-v,--verbose", opt.verbosity, "Progress and warnings on stderr");
  };
  auto tweets = [&](CLI::App* sub) {
    sub->add_option("--input", opt.input, "Tweet file (CSV or JSON Lines)");
    sub->add_option("--roles", opt.roles, "Role coding CSV (screen_name,role)");
    sub->add_option("--limit", opt.limit, "Keep the first N retweets in time order")->capture_default_str();
    sub->add_option("--exclude", opt.exclude, "File of tweet ids to drop");
  };
  auto sampling = [&](CLI::App* sub, const std::string& what) {
    sub->add_option("--samples", opt.samples, what);
    sub->add_option("--burn-in", opt.burn_in, "MCMC burn-in steps (default 10 n^2)");
    sub->add_option("--interval", opt.interval, "MCMC steps between retained samples (default n^2)");
  };

  CLI::App* ingest = app.add_subcommand("ingest", "Build a retweet network from a tweet file");
  tweets(ingest);
  common(ingest);

  CLI::App* desc = app.add_subcommand("describe", "Descriptive tables (users, roles, degrees, centralization)");
  tweets(desc);
  common(desc);

  CLI::App* fit = app.add_subcommand("fit", "Fit a model by MPLE or MC-MLE");
  fit->add_option("--input", opt.input, "Edge list (TSV)");
  fit->add_option("--nodes", opt.nodes, "Node table CSV");
  fit->add_option("--model", opt.model, "Model file");
  fit->add_option("--method", opt.method, "mple or mcmle")->capture_default_str();
  sampling(fit, "MC-MLE sample size per iteration (default 1000)");
  common(fit);

  CLI::App* sim = app.add_subcommand("simulate", "Draw networks from a model at fixed coefficients");
  sim->add_option("--nodes", opt.nodes, "Node table CSV");
  sim->add_option("--model", opt.model, "Model file");
  sim->add_option("--theta", opt.theta, "Comma-separated coefficients in model order");
  sim->add_option("--fit", opt.fit, "Take coefficients from a fit.json");
  sim->add_option("--start", opt.start, "Starting edge list (default empty graph)");
  sim->add_flag("--graphs", opt.write_graphs, "Also write every sampled edge list");
  sampling(sim, "Number of retained networks (default 100)");
  common(sim);

  CLI::App* gof = app.add_subcommand("gof", "Simulation envelopes for a fitted model");
  gof->add_option("--input", opt.input, "Observed edge list (TSV)");
  gof->add_option("--nodes", opt.nodes, "Node table CSV");
  gof->add_option("--model", opt.model, "Model file");
  gof->add_option("--fit", opt.fit, "fit.json from the fit subcommand");
  sampling(gof, "Simulated networks per envelope (default 100)");
  common(gof);

  CLI::App* scen = app.add_subcommand("scenario", "Generate a synthetic role-annotated network");
  scen->add_option("--kind", opt.kind, "crowd or org")->capture_default_str();
  scen->add_option("--n", opt.n, "Number of users (role proportions rescaled)")->capture_default_str();
  scen->add_flag("--observed-counts", opt.observed_counts, "Use the observed role counts instead of --n");
  common(scen);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    return report_error("cli", "parse_arguments", "ArgumentParse", e.what());
  }

  std::string operation = app.get_subcommands().front()->get_name();
  try {
    if (operation == "ingest") cmd_ingest(opt);
    if (operation == "describe") cmd_describe(opt);
    if (operation == "fit") cmd_fit(opt);
    if (operation == "simulate") cmd_simulate(opt);
    if (operation == "gof") cmd_gof(opt);
    if (operation == "scenario") cmd_scenario(opt);
  } catch (const Error& e) {
    return report_error(e.module(), e.operation(), to_string(e.code()), e.cause());
  } catch (const CliError& e) {
    return report_error("cli", e.operation, e.code, e.what());
  } catch (const std::exception& e) {
    return report_error("cli", operation, "Unexpected", e.what());
  }
  return 0;
}
