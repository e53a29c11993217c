#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "rtergm/graph.hpp"
#include "rtergm/node_table.hpp"

namespace rtergm {

enum class TermKind {
  Edges,
  GwespOTP,
  GwnspOTP,
  GwInDegree,
  GwOutDegree,
  NodeOutFactor,
  NodeInFactor,
  NodeOutCov,
  NodeInCov,
};

enum class Direction { In, Out };

inline constexpr double kDefaultDecay = 0.5;

std::string_view to_string(TermKind kind);
/// Accepts the canonical names ("gwesp_otp") and ergm-style aliases ("dgwesp", "nodeifactor").
std::optional<TermKind> parse_term_kind(std::string_view text);

bool is_gw_term(TermKind kind);
bool is_factor_term(TermKind kind);
bool is_cov_term(TermKind kind);

struct TermSpec {
  TermKind kind = TermKind::Edges;
  std::optional<double> decay;        // gw terms only
  std::optional<Role> level;          // factor terms only
  std::optional<std::string> covariate;  // cov terms only

  static TermSpec edges();
  static TermSpec gwesp(double decay = kDefaultDecay);
  static TermSpec gwnsp(double decay = kDefaultDecay);
  static TermSpec gwidegree(double decay = kDefaultDecay);
  static TermSpec gwodegree(double decay = kDefaultDecay);
  static TermSpec nodeofactor(Role level);
  static TermSpec nodeifactor(Role level);
  static TermSpec nodeocov(std::string covariate = "followers");
  static TermSpec nodeicov(std::string covariate = "followers");

  /// Throws InvalidModel / NegativeDecay / BaseLevelDisallowed.
  void validate() const;
  /// Compact ergm-like name, e.g. "gwesp.OTP.0.5" or "nodeofactor.role.Organization".
  std::string name() const;
  /// Human-readable label used in coefficient tables.
  std::string display_label() const;

  friend bool operator==(const TermSpec&, const TermSpec&) = default;
};

struct ModelSpec {
  std::vector<TermSpec> terms;

  std::size_t size() const noexcept { return terms.size(); }
  std::vector<std::string> names() const;
  std::vector<std::string> display_labels() const;
  bool dyad_independent() const;

  /// Copy with factor terms dropped when `nodes` has no node of their level.
  ModelSpec without_absent_levels(const NodeTable& nodes) const;

  /// The 13-term model with triadic, role, degree and follower terms.
  static ModelSpec full_role_model(double decay = kDefaultDecay);

  friend bool operator==(const ModelSpec&, const ModelSpec&) = default;
};

/// Parses the model file format (see README, "Model files"). Errors carry line numbers.
ModelSpec parse_model_spec(std::string_view text);
ModelSpec load_model_spec(const std::string& path);
std::string format_model_spec(const ModelSpec& spec);

using StatVector = std::vector<double>;

/// Geometric weight e^a [1 - (1 - e^-a)^k]; zero for k = 0.
double gw_weight(double decay, std::size_t k);

double stat_edges(const DirectedGraph& g);
double stat_gwesp_otp(const DirectedGraph& g, double decay);
double stat_gwnsp_otp(const DirectedGraph& g, double decay);
double stat_gwdegree(const DirectedGraph& g, double decay, Direction direction);
double stat_nodefactor(const DirectedGraph& g, const NodeTable& nodes, Role level, Direction direction);
/// Sum over edges of `values` at the source (Out) or target (In).
double stat_nodecov(const DirectedGraph& g, std::span<const double> values, Direction direction);
/// Covariate named by `covariate` after the follower transform.
double stat_nodecov(const DirectedGraph& g, const NodeTable& nodes, const std::string& covariate,
                    Direction direction);

/// A model spec bound to a node table: attribute lookups are resolved once so that
/// statistics and change statistics are pure graph reads.
class Model {
 public:
  Model(ModelSpec spec, const NodeTable& nodes);

  std::size_t size() const noexcept { return spec_.size(); }
  std::size_t node_count() const noexcept { return roles_.size(); }
  const ModelSpec& spec() const noexcept { return spec_; }

  StatVector statistics(const DirectedGraph& g) const;

  /// g(y with i->j) - g(y without i->j); g is not modified.
  void change_statistics(const DirectedGraph& g, Node i, Node j, std::span<double> out) const;
  StatVector change_statistics(const DirectedGraph& g, Node i, Node j) const;

 private:
  void check_graph(const DirectedGraph& g, const char* operation) const;

  ModelSpec spec_;
  std::vector<Role> roles_;
  std::vector<std::vector<double>> covariates_;  // indexed by term; empty for non-cov terms
};

StatVector statistics(const DirectedGraph& g, const NodeTable& nodes, const ModelSpec& spec);
StatVector change_statistics(const DirectedGraph& g, const NodeTable& nodes, const ModelSpec& spec,
                             Node i, Node j);

}  // namespace rtergm
