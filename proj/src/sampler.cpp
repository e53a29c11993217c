#include "rtergm/sampler.hpp"

#include <algorithm>
#include <cmath>

#include "rtergm/error.hpp"

namespace rtergm {

void SamplerConfig::validate() const {
  if (interval && *interval < 1) throw Error(ErrorCode::InvalidConfig, "SamplerConfig", "interval must be >= 1");
  if (sample_size < 1) throw Error(ErrorCode::InvalidConfig, "SamplerConfig", "sample_size must be >= 1");
}

std::uint64_t SamplerConfig::burn_in_for(std::size_t n) const {
  return burn_in ? *burn_in : 10 * static_cast<std::uint64_t>(n) * n;
}

std::uint64_t SamplerConfig::interval_for(std::size_t n) const {
  if (interval) return *interval;
  return std::max<std::uint64_t>(1, static_cast<std::uint64_t>(n) * n);
}

ChainState::ChainState(const Model& model, DirectedGraph start)
    : graph_(std::move(start)), stats_(model.statistics(graph_)), edges_(graph_.edges()) {
  position_.reserve(edges_.size() * 2 + 16);
  for (std::size_t k = 0; k < edges_.size(); ++k) position_.emplace(key(edges_[k].first, edges_[k].second), k);
}

void ChainState::apply_toggle(Node i, Node j, std::span<const double> delta) {
  if (graph_.toggle_edge(i, j)) {
    position_.emplace(key(i, j), edges_.size());
    edges_.emplace_back(i, j);
  } else {
    auto it = position_.find(key(i, j));
    const std::size_t k = it->second;
    position_.erase(it);
    if (k + 1 != edges_.size()) {
      edges_[k] = edges_.back();
      position_[key(edges_[k].first, edges_[k].second)] = k;
    }
    edges_.pop_back();
  }
  for (std::size_t t = 0; t < stats_.size(); ++t) stats_[t] += delta[t];
}

StepResult mh_step(ChainState& state, const Model& model, std::span<const double> theta, Proposal proposal,
                   Rng& rng) {
  if (theta.size() != model.size()) {
    throw Error(ErrorCode::DimensionMismatch, "mh_step",
                "theta has " + std::to_string(theta.size()) + " entries, model has " + std::to_string(model.size()));
  }
  const DirectedGraph& g = state.graph();
  const std::size_t n = g.node_count();
  if (n < 2) return {};
  const double dyads = static_cast<double>(g.dyad_count());
  const std::size_t edges = state.edge_count();

  StepResult step;
  const bool tnt = proposal == Proposal::TNT;
  if (tnt && edges > 0 && rng.uniform() < 0.5) {
    const Edge& e = state.edge_at(rng.below(edges));
    step.i = e.first;
    step.j = e.second;
  } else {
    const std::uint64_t d = rng.below(static_cast<std::uint64_t>(n) * (n - 1));
    step.i = static_cast<Node>(d / (n - 1));
    Node j = static_cast<Node>(d % (n - 1));
    step.j = j >= step.i ? j + 1 : j;
  }
  const bool present = g.has_edge(step.i, step.j);

  // Stack buffer for the common small model; heap for larger ones.
  double small[32];
  std::vector<double> large;
  std::span<double> delta;
  if (model.size() <= 32) {
    delta = std::span<double>(small, model.size());
  } else {
    large.resize(model.size());
    delta = large;
  }
  model.change_statistics(g, step.i, step.j, delta);
  double log_ratio = 0.0;
  for (std::size_t k = 0; k < delta.size(); ++k) {
    if (present) delta[k] = -delta[k];
    log_ratio += theta[k] * delta[k];
  }

  if (tnt) {
    // q(y -> y') and q(y' -> y) for the TNT mixture; an edgeless state proposes
    // uniform dyads only.
    double forward = 0.0;
    double reverse = 0.0;
    if (present) {
      forward = 0.5 / static_cast<double>(edges) + 0.5 / dyads;
      reverse = edges - 1 > 0 ? 0.5 / dyads : 1.0 / dyads;
    } else {
      forward = edges > 0 ? 0.5 / dyads : 1.0 / dyads;
      reverse = 0.5 / static_cast<double>(edges + 1) + 0.5 / dyads;
    }
    log_ratio += std::log(reverse) - std::log(forward);
  }

  step.acceptance_probability = log_ratio >= 0.0 ? 1.0 : std::exp(log_ratio);
  if (log_ratio >= 0.0 || rng.uniform() < step.acceptance_probability) {
    state.apply_toggle(step.i, step.j, delta);
    step.accepted = true;
  }
  return step;
}

Chain::Chain(const Model& model, std::vector<double> theta, DirectedGraph start, Proposal proposal,
             std::uint64_t seed)
    : model_(&model), theta_(std::move(theta)), state_(model, std::move(start)), proposal_(proposal), rng_(seed) {
  if (theta_.size() != model.size()) {
    throw Error(ErrorCode::DimensionMismatch, "simulate",
                "theta has " + std::to_string(theta_.size()) + " entries, model has " + std::to_string(model.size()));
  }
  if (state_.graph().node_count() != model.node_count()) {
    throw Error(ErrorCode::DimensionMismatch, "simulate", "start graph and node table sizes differ");
  }
}

void Chain::advance(std::uint64_t steps) {
  for (std::uint64_t s = 0; s < steps; ++s) {
    const StepResult r = mh_step(state_, *model_, theta_, proposal_, rng_);
    ++proposed_;
    if (r.accepted) ++accepted_;
  }
}

namespace {

template <typename Visit>
void run_chain(const Model& model, std::span<const double> theta, const SamplerConfig& config,
               const DirectedGraph& start, Visit&& visit, DirectedGraph* final_graph) {
  config.validate();
  Chain chain(model, std::vector<double>(theta.begin(), theta.end()), start, config.proposal, config.seed);
  const std::size_t n = start.node_count();
  chain.advance(config.burn_in_for(n));
  const std::uint64_t interval = config.interval_for(n);
  for (std::uint64_t s = 0; s < config.sample_size; ++s) {
    chain.advance(interval);
    visit(chain.state());
  }
  if (final_graph) *final_graph = chain.state().graph();
}

}  // namespace

std::vector<Sample> simulate(const Model& model, std::span<const double> theta, const SamplerConfig& config,
                             const DirectedGraph& start) {
  std::vector<Sample> out;
  out.reserve(config.sample_size);
  run_chain(
      model, theta, config, start, [&](const ChainState& s) { out.push_back({s.graph(), s.stats()}); }, nullptr);
  return out;
}

std::vector<Sample> simulate(const ModelSpec& spec, std::span<const double> theta, const NodeTable& nodes,
                             const SamplerConfig& config, const DirectedGraph& start) {
  const Model model(spec, nodes);
  return simulate(model, theta, config, start);
}

std::vector<StatVector> simulate_statistics(const Model& model, std::span<const double> theta,
                                            const SamplerConfig& config, const DirectedGraph& start,
                                            DirectedGraph* final_graph) {
  std::vector<StatVector> out;
  out.reserve(config.sample_size);
  run_chain(
      model, theta, config, start, [&](const ChainState& s) { out.push_back(s.stats()); }, final_graph);
  return out;
}

// ---------------------------------------------------------------------------

RoleCounts RoleCounts::observed(ScenarioKind kind) {
  if (kind == ScenarioKind::CrowdLike) return RoleCounts{15, 5, 6, 1000};
  return RoleCounts{32, 24, 0, 628};
}

constexpr std::size_t kMinScaledRole = 3;

RoleCounts RoleCounts::scaled(ScenarioKind kind, std::size_t n) {
  const RoleCounts base = observed(kind);
  const double f = static_cast<double>(n) / static_cast<double>(base.total());
  auto scale = [f](std::size_t c) -> std::size_t {
    if (c == 0) return 0;
    // A role with one or two accounts makes its factor terms separable in small fits.
    return std::max<std::size_t>(kMinScaledRole, static_cast<std::size_t>(std::lround(static_cast<double>(c) * f)));
  };
  RoleCounts r{scale(base.organizations), scale(base.leaders), scale(base.influential), 0};
  const std::size_t special = r.organizations + r.leaders + r.influential;
  r.ordinary = n > special ? n - special : 0;
  return r;
}

std::pair<ModelSpec, StatVector> scenario_preset(ScenarioKind kind) {
  ModelSpec spec;
  StatVector theta;
  if (kind == ScenarioKind::CrowdLike) {
    spec.terms = {TermSpec::edges(),
                  TermSpec::gwesp(kDefaultDecay),
                  TermSpec::nodeofactor(Role::Organization),
                  TermSpec::nodeifactor(Role::Organization),
                  TermSpec::nodeifactor(Role::Leader),
                  TermSpec::nodeifactor(Role::Influential)};
    theta = {-4.9, 1.0, 1.0, 0.5, 0.3, 0.5};
  } else {
    spec.terms = {TermSpec::edges(),
                  TermSpec::gwnsp(kDefaultDecay),
                  TermSpec::nodeofactor(Role::Organization),
                  TermSpec::nodeifactor(Role::Organization),
                  TermSpec::nodeofactor(Role::Leader),
                  TermSpec::nodeifactor(Role::Leader)};
    theta = {-6.0, 0.04, 0.6, 3.5, 1.2, 1.5};
  }
  return {spec, theta};
}

Scenario generate_scenario(ScenarioKind kind, const RoleCounts& counts, std::uint64_t seed) {
  const std::size_t n = counts.total();
  if (n < 3) throw Error(ErrorCode::InvalidConfig, "generate_scenario", "scenario needs at least 3 users");
  Rng rng(derive_seed(seed, 0));

  Scenario sc;
  sc.nodes.role.reserve(n);
  sc.nodes.role.insert(sc.nodes.role.end(), counts.organizations, Role::Organization);
  sc.nodes.role.insert(sc.nodes.role.end(), counts.leaders, Role::Leader);
  sc.nodes.role.insert(sc.nodes.role.end(), counts.influential, Role::Influential);
  sc.nodes.role.insert(sc.nodes.role.end(), counts.ordinary, Role::Ordinary);
  for (std::size_t k = n - 1; k > 0; --k) std::swap(sc.nodes.role[k], sc.nodes.role[rng.below(k + 1)]);

  sc.nodes.followers.resize(n);
  sc.nodes.screen_name.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    double mu = 5.0;
    switch (sc.nodes.role[i]) {
      case Role::Organization: mu = 8.0; break;
      case Role::Leader: mu = 7.5; break;
      case Role::Influential: mu = 10.0; break;
      case Role::Ordinary: mu = 5.0; break;
    }
    sc.nodes.followers[i] = static_cast<std::uint64_t>(std::floor(std::exp(mu + 1.2 * rng.normal())));
    sc.nodes.screen_name[i] = "user" + std::to_string(i);
  }

  auto [spec, theta] = scenario_preset(kind);
  sc.spec = spec.without_absent_levels(sc.nodes);
  // Keep theta aligned with the surviving terms.
  for (std::size_t k = 0; k < spec.size(); ++k) {
    const auto& t = spec.terms[k];
    if (is_factor_term(t.kind) && t.level && !sc.nodes.has_role(*t.level)) continue;
    sc.theta.push_back(theta[k]);
  }

  const Model model(sc.spec, sc.nodes);
  SamplerConfig config;
  config.seed = derive_seed(seed, 1);
  config.sample_size = 1;
  config.interval = 1;
  auto samples = simulate(model, sc.theta, config, DirectedGraph(n));
  sc.graph = std::move(samples.front().graph);
  return sc;
}

}  // namespace rtergm
