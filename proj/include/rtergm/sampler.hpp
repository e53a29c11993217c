#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

#include "rtergm/graph.hpp"
#include "rtergm/node_table.hpp"
#include "rtergm/random.hpp"
#include "rtergm/terms.hpp"

namespace rtergm {

inline constexpr std::uint64_t kDefaultSeed = 20110825;

enum class Proposal { TNT, UniformDyad };

struct SamplerConfig {
  std::optional<std::uint64_t> burn_in;   // unset: 10 n^2
  std::optional<std::uint64_t> interval;  // unset: n^2
  std::uint64_t sample_size = 100;
  std::uint64_t seed = kDefaultSeed;
  Proposal proposal = Proposal::TNT;

  void validate() const;
  std::uint64_t burn_in_for(std::size_t n) const;
  std::uint64_t interval_for(std::size_t n) const;
};

/// Graph plus its current statistic vector, with an edge index so that the TNT
/// proposal can pick a uniformly random existing edge in O(1).
class ChainState {
 public:
  ChainState(const Model& model, DirectedGraph start);

  const DirectedGraph& graph() const noexcept { return graph_; }
  const StatVector& stats() const noexcept { return stats_; }
  std::size_t edge_count() const noexcept { return edges_.size(); }
  const Edge& edge_at(std::size_t k) const { return edges_[k]; }

  /// Toggles (i,j) and adds `delta` (the signed statistic change of this toggle).
  void apply_toggle(Node i, Node j, std::span<const double> delta);

 private:
  static std::uint64_t key(Node i, Node j) { return (static_cast<std::uint64_t>(i) << 32) | j; }

  DirectedGraph graph_;
  StatVector stats_;
  std::vector<Edge> edges_;
  std::unordered_map<std::uint64_t, std::size_t> position_;
};

struct StepResult {
  Node i = 0;
  Node j = 0;
  bool accepted = false;
  double acceptance_probability = 0.0;
};

/// One Metropolis-Hastings toggle. TNT: with probability 1/2 a uniformly random
/// existing edge (skipped when there are none), otherwise a uniform dyad.
StepResult mh_step(ChainState& state, const Model& model, std::span<const double> theta, Proposal proposal,
                   Rng& rng);

/// A Markov chain at fixed theta that can be advanced repeatedly.
class Chain {
 public:
  Chain(const Model& model, std::vector<double> theta, DirectedGraph start, Proposal proposal, std::uint64_t seed);

  void advance(std::uint64_t steps);
  const ChainState& state() const noexcept { return state_; }
  std::uint64_t accepted() const noexcept { return accepted_; }
  std::uint64_t proposed() const noexcept { return proposed_; }

 private:
  const Model* model_;
  std::vector<double> theta_;
  ChainState state_;
  Proposal proposal_;
  Rng rng_;
  std::uint64_t accepted_ = 0;
  std::uint64_t proposed_ = 0;
};

struct Sample {
  DirectedGraph graph;
  StatVector stats;
};

std::vector<Sample> simulate(const Model& model, std::span<const double> theta, const SamplerConfig& config,
                             const DirectedGraph& start);
std::vector<Sample> simulate(const ModelSpec& spec, std::span<const double> theta, const NodeTable& nodes,
                             const SamplerConfig& config, const DirectedGraph& start);

/// Statistics only (no graph copies). When `final_graph` is given it receives the
/// chain's last state.
std::vector<StatVector> simulate_statistics(const Model& model, std::span<const double> theta,
                                            const SamplerConfig& config, const DirectedGraph& start,
                                            DirectedGraph* final_graph = nullptr);

// ---------------------------------------------------------------------------
// Synthetic role-annotated scenarios

enum class ScenarioKind { CrowdLike, OrgLike };

struct RoleCounts {
  std::size_t organizations = 0;
  std::size_t leaders = 0;
  std::size_t influential = 0;
  std::size_t ordinary = 0;

  std::size_t total() const noexcept { return organizations + leaders + influential + ordinary; }

  /// Account counts of the two observed networks (1,026 and 684 users).
  static RoleCounts observed(ScenarioKind kind);
  /// The observed role proportions rescaled to n users; every present role keeps at least 3 accounts.
  static RoleCounts scaled(ScenarioKind kind, std::size_t n);
};

struct Scenario {
  DirectedGraph graph;
  NodeTable nodes;
  ModelSpec spec;       // generating model
  StatVector theta;     // generating coefficients
};

/// Generating model and coefficients for a scenario preset. The coefficients are
/// fixtures chosen to reproduce the qualitative sign pattern, not estimates.
std::pair<ModelSpec, StatVector> scenario_preset(ScenarioKind kind);

Scenario generate_scenario(ScenarioKind kind, const RoleCounts& counts, std::uint64_t seed);

}  // namespace rtergm
