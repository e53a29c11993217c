#include "rtergm/terms.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "rtergm/error.hpp"

namespace rtergm {

namespace {

std::string lower(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

std::string format_decay(double decay) {
  std::ostringstream os;
  os << decay;
  return os.str();
}

// |out(a) ∩ in(b)| without argument checks.
std::size_t otp_count(const DirectedGraph& g, Node a, Node b) {
  auto x = g.out_neighbors(a);
  auto y = g.in_neighbors(b);
  std::size_t count = 0;
  auto ix = x.begin();
  auto iy = y.begin();
  while (ix != x.end() && iy != y.end()) {
    if (*ix < *iy) {
      ++ix;
    } else if (*iy < *ix) {
      ++iy;
    } else {
      ++count;
      ++ix;
      ++iy;
    }
  }
  return count;
}

// w(k + 1) - w(k) = (1 - e^-a)^k
double gw_increment(double decay, std::size_t k) {
  return std::pow(-std::expm1(-decay), static_cast<double>(k));
}

void check_decay(double decay, const char* operation) {
  if (!(decay >= 0.0) || !std::isfinite(decay)) {
    throw Error(ErrorCode::NegativeDecay, operation, "decay must be finite and >= 0, got " + format_decay(decay));
  }
}

// Change in the shared-partner sum over edges (edgewise = true) or non-edges for the
// toggle of i->j, evaluated relative to the graph with i->j absent.
double shared_partner_change(const DirectedGraph& g, Node i, Node j, double decay, bool edgewise) {
  const bool present = g.has_edge(i, j);
  const std::size_t shift = present ? 1 : 0;
  const std::size_t sp_ij = otp_count(g, i, j);
  double delta = edgewise ? gw_weight(decay, sp_ij) : -gw_weight(decay, sp_ij);
  // i->j->m adds j as a partner of (i, m).
  for (Node m : g.out_neighbors(j)) {
    if (m == i) continue;
    if (g.has_edge(i, m) != edgewise) continue;
    delta += gw_increment(decay, otp_count(g, i, m) - shift);
  }
  // l->i->j adds i as a partner of (l, j).
  for (Node l : g.in_neighbors(i)) {
    if (l == j) continue;
    if (g.has_edge(l, j) != edgewise) continue;
    delta += gw_increment(decay, otp_count(g, l, j) - shift);
  }
  return delta;
}

}  // namespace

std::string_view to_string(TermKind kind) {
  switch (kind) {
    case TermKind::Edges: return "edges";
    case TermKind::GwespOTP: return "gwesp_otp";
    case TermKind::GwnspOTP: return "gwnsp_otp";
    case TermKind::GwInDegree: return "gwidegree";
    case TermKind::GwOutDegree: return "gwodegree";
    case TermKind::NodeOutFactor: return "nodeofactor";
    case TermKind::NodeInFactor: return "nodeifactor";
    case TermKind::NodeOutCov: return "nodeocov";
    case TermKind::NodeInCov: return "nodeicov";
  }
  return "edges";
}

std::optional<TermKind> parse_term_kind(std::string_view text) {
  const std::string s = lower(text);
  if (s == "edges" || s == "density") return TermKind::Edges;
  if (s == "gwesp_otp" || s == "gwesp" || s == "dgwesp") return TermKind::GwespOTP;
  if (s == "gwnsp_otp" || s == "gwnsp" || s == "dgwnsp") return TermKind::GwnspOTP;
  if (s == "gwidegree" || s == "gw_in_degree") return TermKind::GwInDegree;
  if (s == "gwodegree" || s == "gw_out_degree") return TermKind::GwOutDegree;
  if (s == "nodeofactor" || s == "node_out_factor") return TermKind::NodeOutFactor;
  if (s == "nodeifactor" || s == "node_in_factor") return TermKind::NodeInFactor;
  if (s == "nodeocov" || s == "node_out_cov") return TermKind::NodeOutCov;
  if (s == "nodeicov" || s == "node_in_cov") return TermKind::NodeInCov;
  return std::nullopt;
}

bool is_gw_term(TermKind kind) {
  return kind == TermKind::GwespOTP || kind == TermKind::GwnspOTP || kind == TermKind::GwInDegree ||
         kind == TermKind::GwOutDegree;
}

bool is_factor_term(TermKind kind) {
  return kind == TermKind::NodeOutFactor || kind == TermKind::NodeInFactor;
}

bool is_cov_term(TermKind kind) { return kind == TermKind::NodeOutCov || kind == TermKind::NodeInCov; }

TermSpec TermSpec::edges() { return TermSpec{TermKind::Edges, std::nullopt, std::nullopt, std::nullopt}; }
TermSpec TermSpec::gwesp(double decay) { return TermSpec{TermKind::GwespOTP, decay, std::nullopt, std::nullopt}; }
TermSpec TermSpec::gwnsp(double decay) { return TermSpec{TermKind::GwnspOTP, decay, std::nullopt, std::nullopt}; }
TermSpec TermSpec::gwidegree(double decay) {
  return TermSpec{TermKind::GwInDegree, decay, std::nullopt, std::nullopt};
}
TermSpec TermSpec::gwodegree(double decay) {
  return TermSpec{TermKind::GwOutDegree, decay, std::nullopt, std::nullopt};
}
TermSpec TermSpec::nodeofactor(Role level) {
  return TermSpec{TermKind::NodeOutFactor, std::nullopt, level, std::nullopt};
}
TermSpec TermSpec::nodeifactor(Role level) {
  return TermSpec{TermKind::NodeInFactor, std::nullopt, level, std::nullopt};
}
TermSpec TermSpec::nodeocov(std::string covariate) {
  return TermSpec{TermKind::NodeOutCov, std::nullopt, std::nullopt, std::move(covariate)};
}
TermSpec TermSpec::nodeicov(std::string covariate) {
  return TermSpec{TermKind::NodeInCov, std::nullopt, std::nullopt, std::move(covariate)};
}

void TermSpec::validate() const {
  const std::string what(to_string(kind));
  if (is_gw_term(kind) != decay.has_value()) {
    throw Error(ErrorCode::InvalidModel, "validate",
                what + (decay ? ": decay given for a non-geometric term" : ": decay missing"));
  }
  if (decay) check_decay(*decay, "validate");
  if (is_factor_term(kind) != level.has_value()) {
    throw Error(ErrorCode::InvalidModel, "validate",
                what + (level ? ": level given for a non-factor term" : ": level missing"));
  }
  if (level && *level == Role::Ordinary) {
    throw Error(ErrorCode::BaseLevelDisallowed, "validate",
                what + ": Ordinary is the base category and cannot be a level");
  }
  if (is_cov_term(kind) != covariate.has_value()) {
    throw Error(ErrorCode::InvalidModel, "validate",
                what + (covariate ? ": covariate given for a non-covariate term" : ": covariate missing"));
  }
}

std::string TermSpec::name() const {
  std::string s(to_string(kind));
  switch (kind) {
    case TermKind::GwespOTP: return "gwesp.OTP." + format_decay(decay.value_or(kDefaultDecay));
    case TermKind::GwnspOTP: return "gwnsp.OTP." + format_decay(decay.value_or(kDefaultDecay));
    case TermKind::GwInDegree:
    case TermKind::GwOutDegree: return s + "." + format_decay(decay.value_or(kDefaultDecay));
    case TermKind::NodeOutFactor:
    case TermKind::NodeInFactor:
      return s + ".role." + std::string(to_string(level.value_or(Role::Ordinary)));
    case TermKind::NodeOutCov:
    case TermKind::NodeInCov: return s + "." + covariate.value_or("followers");
    case TermKind::Edges: return s;
  }
  return s;
}

std::string TermSpec::display_label() const {
  auto plural = [](Role r) -> std::string {
    switch (r) {
      case Role::Organization: return "Organizations";
      case Role::Leader: return "Leaders";
      case Role::Influential: return "Influential users";
      case Role::Ordinary: return "Ordinary users";
    }
    return "";
  };
  switch (kind) {
    case TermKind::Edges: return "Density";
    case TermKind::GwnspOTP: return "Hierarchical cascades";
    case TermKind::GwespOTP: return "Triadic closure";
    case TermKind::GwInDegree: return "Users' popularity";
    case TermKind::GwOutDegree: return "Users' activity";
    case TermKind::NodeOutFactor: return "Activity: " + plural(level.value_or(Role::Ordinary));
    case TermKind::NodeInFactor: return "Popularity: " + plural(level.value_or(Role::Ordinary));
    case TermKind::NodeOutCov:
      return covariate.value_or("followers") == "followers" ? "Sender's number of followers"
                                                             : "Sender's " + *covariate;
    case TermKind::NodeInCov:
      return covariate.value_or("followers") == "followers" ? "Receiver's number of followers"
                                                             : "Receiver's " + *covariate;
  }
  return name();
}

std::vector<std::string> ModelSpec::names() const {
  std::vector<std::string> out;
  for (const auto& t : terms) out.push_back(t.name());
  return out;
}

std::vector<std::string> ModelSpec::display_labels() const {
  std::vector<std::string> out;
  for (const auto& t : terms) out.push_back(t.display_label());
  return out;
}

bool ModelSpec::dyad_independent() const {
  return std::none_of(terms.begin(), terms.end(), [](const TermSpec& t) { return is_gw_term(t.kind); });
}

ModelSpec ModelSpec::without_absent_levels(const NodeTable& nodes) const {
  ModelSpec out;
  for (const auto& t : terms) {
    if (is_factor_term(t.kind) && t.level && !nodes.has_role(*t.level)) continue;
    out.terms.push_back(t);
  }
  return out;
}

ModelSpec ModelSpec::full_role_model(double decay) {
  ModelSpec m;
  m.terms = {
      TermSpec::edges(),
      TermSpec::gwnsp(decay),
      TermSpec::gwesp(decay),
      TermSpec::nodeofactor(Role::Influential),
      TermSpec::nodeofactor(Role::Leader),
      TermSpec::nodeofactor(Role::Organization),
      TermSpec::nodeifactor(Role::Influential),
      TermSpec::nodeifactor(Role::Leader),
      TermSpec::nodeifactor(Role::Organization),
      TermSpec::gwidegree(decay),
      TermSpec::gwodegree(decay),
      TermSpec::nodeocov("followers"),
      TermSpec::nodeicov("followers"),
  };
  return m;
}

// ---------------------------------------------------------------------------
// Model file parsing

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

[[noreturn]] void parse_fail(std::size_t line, const std::string& msg) {
  throw Error(ErrorCode::ModelSpecParse, "parse_model_spec", "line " + std::to_string(line) + ": " + msg);
}

// Strips a trailing comment that is not inside a quoted string.
std::string_view strip_comment(std::string_view s) {
  bool quoted = false;
  for (std::size_t k = 0; k < s.size(); ++k) {
    if (s[k] == '"') quoted = !quoted;
    if (s[k] == '#' && !quoted) return s.substr(0, k);
  }
  return s;
}

struct RawValue {
  std::string text;
  bool quoted = false;
};

RawValue parse_value(std::string_view v, std::size_t line, const std::string& key) {
  v = trim(v);
  if (v.empty()) parse_fail(line, "field '" + key + "' has no value");
  if (v.front() == '"' || v.front() == '\'') {
    const char q = v.front();
    if (v.size() < 2 || v.back() != q) parse_fail(line, "field '" + key + "' has an unterminated string");
    return {std::string(v.substr(1, v.size() - 2)), true};
  }
  return {std::string(v), false};
}

double parse_number(const RawValue& v, std::size_t line, const std::string& key) {
  if (v.quoted) parse_fail(line, "field '" + key + "' must be a number, not a string");
  double value = 0.0;
  const char* first = v.text.data();
  const char* last = first + v.text.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last) parse_fail(line, "field '" + key + "' is not a number: " + v.text);
  return value;
}

struct PendingTerm {
  std::size_t line = 0;
  std::optional<TermKind> kind;
  std::optional<double> decay;
  std::optional<Role> level;
  std::optional<std::string> covariate;
};

TermSpec finish_term(const PendingTerm& p, double default_decay) {
  if (!p.kind) parse_fail(p.line, "[[term]] block has no 'kind' field");
  TermSpec t;
  t.kind = *p.kind;
  t.decay = p.decay;
  t.level = p.level;
  t.covariate = p.covariate;
  if (is_gw_term(t.kind) && !t.decay) t.decay = default_decay;
  if (is_cov_term(t.kind) && !t.covariate) t.covariate = "followers";
  try {
    t.validate();
  } catch (const Error& e) {
    parse_fail(p.line, e.cause());
  }
  return t;
}

}  // namespace

ModelSpec parse_model_spec(std::string_view text) {
  ModelSpec spec;
  double default_decay = kDefaultDecay;
  std::optional<PendingTerm> current;
  std::size_t line_no = 0;
  std::vector<PendingTerm> pending;

  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t eol = text.find('\n', pos);
    std::string_view raw = text.substr(pos, eol == std::string_view::npos ? std::string_view::npos : eol - pos);
    pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
    ++line_no;
    std::string_view line = trim(strip_comment(raw));
    if (line.empty()) continue;

    if (line.front() == '[') {
      if (line != "[[term]]") parse_fail(line_no, "unknown section '" + std::string(line) + "', expected [[term]]");
      if (current) pending.push_back(*current);
      current = PendingTerm{};
      current->line = line_no;
      continue;
    }
    const std::size_t eq = line.find('=');
    if (eq == std::string_view::npos) parse_fail(line_no, "expected 'key = value'");
    const std::string key = lower(trim(line.substr(0, eq)));
    const RawValue value = parse_value(line.substr(eq + 1), line_no, key);

    if (!current) {
      if (key == "default_decay" || key == "decay") {
        default_decay = parse_number(value, line_no, key);
        check_decay(default_decay, "parse_model_spec");
        continue;
      }
      parse_fail(line_no, "field '" + key + "' outside a [[term]] block");
    }
    if (key == "kind" || key == "term") {
      auto k = parse_term_kind(value.text);
      if (!k) parse_fail(line_no, "unknown term kind '" + value.text + "'");
      current->kind = k;
    } else if (key == "decay") {
      const double d = parse_number(value, line_no, key);
      if (!(d >= 0.0)) parse_fail(line_no, "field 'decay' must be >= 0");
      current->decay = d;
    } else if (key == "level") {
      auto r = parse_role(value.text);
      if (!r) parse_fail(line_no, "unknown role level '" + value.text + "'");
      current->level = r;
    } else if (key == "covariate" || key == "attr") {
      current->covariate = value.text;
    } else {
      parse_fail(line_no, "unknown field '" + key + "'");
    }
  }
  if (current) pending.push_back(*current);
  for (const auto& p : pending) spec.terms.push_back(finish_term(p, default_decay));
  if (spec.terms.empty()) parse_fail(line_no, "model declares no terms");
  return spec;
}

ModelSpec load_model_spec(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "load_model_spec", "cannot open model file " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  try {
    return parse_model_spec(ss.str());
  } catch (const Error& e) {
    throw Error(e.code(), e.operation(), path + ": " + e.cause());
  }
}

std::string format_model_spec(const ModelSpec& spec) {
  std::ostringstream os;
  for (std::size_t k = 0; k < spec.terms.size(); ++k) {
    const auto& t = spec.terms[k];
    if (k) os << '\n';
    os << "[[term]]\nkind = \"" << to_string(t.kind) << "\"\n";
    if (t.decay) os << "decay = " << format_decay(*t.decay) << '\n';
    if (t.level) os << "level = \"" << to_string(*t.level) << "\"\n";
    if (t.covariate) os << "covariate = \"" << *t.covariate << "\"\n";
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// Statistics

double gw_weight(double decay, std::size_t k) {
  if (k == 0) return 0.0;
  return std::exp(decay) * (1.0 - std::pow(-std::expm1(-decay), static_cast<double>(k)));
}

double stat_edges(const DirectedGraph& g) { return static_cast<double>(g.edge_count()); }

namespace {

double shared_partner_stat(const DirectedGraph& g, double decay, bool edgewise) {
  double total = 0.0;
  const std::size_t n = g.node_count();
  for (Node u = 0; u < n; ++u) {
    if (edgewise) {
      for (Node v : g.out_neighbors(u)) total += gw_weight(decay, otp_count(g, u, v));
    } else {
      // Only dyads reachable by a two-path can have partners: v in out(out(u)).
      std::vector<Node> seen;
      for (Node k : g.out_neighbors(u)) {
        for (Node v : g.out_neighbors(k)) {
          if (v != u) seen.push_back(v);
        }
      }
      std::sort(seen.begin(), seen.end());
      seen.erase(std::unique(seen.begin(), seen.end()), seen.end());
      for (Node v : seen) {
        if (!g.has_edge(u, v)) total += gw_weight(decay, otp_count(g, u, v));
      }
    }
  }
  return total;
}

}  // namespace

double stat_gwesp_otp(const DirectedGraph& g, double decay) {
  check_decay(decay, "stat_gwesp_otp");
  return shared_partner_stat(g, decay, true);
}

double stat_gwnsp_otp(const DirectedGraph& g, double decay) {
  check_decay(decay, "stat_gwnsp_otp");
  return shared_partner_stat(g, decay, false);
}

double stat_gwdegree(const DirectedGraph& g, double decay, Direction direction) {
  check_decay(decay, "stat_gwdegree");
  double total = 0.0;
  for (Node v = 0; v < g.node_count(); ++v) {
    total += gw_weight(decay, direction == Direction::In ? g.in_degree(v) : g.out_degree(v));
  }
  return total;
}

double stat_nodefactor(const DirectedGraph& g, const NodeTable& nodes, Role level, Direction direction) {
  if (level == Role::Ordinary) {
    throw Error(ErrorCode::BaseLevelDisallowed, "stat_nodefactor", "Ordinary is the base category");
  }
  double total = 0.0;
  for (Node v = 0; v < g.node_count(); ++v) {
    if (nodes.role[v] != level) continue;
    total += static_cast<double>(direction == Direction::Out ? g.out_degree(v) : g.in_degree(v));
  }
  return total;
}

double stat_nodecov(const DirectedGraph& g, std::span<const double> values, Direction direction) {
  double total = 0.0;
  for (Node v = 0; v < g.node_count(); ++v) {
    const std::size_t d = direction == Direction::Out ? g.out_degree(v) : g.in_degree(v);
    if (d) total += values[v] * static_cast<double>(d);
  }
  return total;
}

namespace {

std::vector<double> resolve_covariate(const NodeTable& nodes, const std::string& name) {
  if (lower(name) == "followers") return follower_covariate(nodes);
  throw Error(ErrorCode::InvalidModel, "resolve_covariate", "unknown covariate '" + name + "'");
}

}  // namespace

double stat_nodecov(const DirectedGraph& g, const NodeTable& nodes, const std::string& covariate,
                    Direction direction) {
  const auto values = resolve_covariate(nodes, covariate);
  return stat_nodecov(g, values, direction);
}

Model::Model(ModelSpec spec, const NodeTable& nodes)
    : spec_(std::move(spec)), roles_(nodes.role), covariates_(spec_.size()) {
  if (spec_.terms.empty()) throw Error(ErrorCode::InvalidModel, "Model", "model has no terms");
  for (std::size_t k = 0; k < spec_.size(); ++k) {
    const auto& t = spec_.terms[k];
    t.validate();
    if (is_cov_term(t.kind)) covariates_[k] = resolve_covariate(nodes, *t.covariate);
  }
}

void Model::check_graph(const DirectedGraph& g, const char* operation) const {
  if (g.node_count() != roles_.size()) {
    throw Error(ErrorCode::DimensionMismatch, operation,
                "graph has " + std::to_string(g.node_count()) + " nodes but node table has " +
                    std::to_string(roles_.size()));
  }
}

StatVector Model::statistics(const DirectedGraph& g) const {
  check_graph(g, "statistics");
  StatVector out(spec_.size(), 0.0);
  for (std::size_t k = 0; k < spec_.size(); ++k) {
    const auto& t = spec_.terms[k];
    switch (t.kind) {
      case TermKind::Edges: out[k] = stat_edges(g); break;
      case TermKind::GwespOTP: out[k] = stat_gwesp_otp(g, *t.decay); break;
      case TermKind::GwnspOTP: out[k] = stat_gwnsp_otp(g, *t.decay); break;
      case TermKind::GwInDegree: out[k] = stat_gwdegree(g, *t.decay, Direction::In); break;
      case TermKind::GwOutDegree: out[k] = stat_gwdegree(g, *t.decay, Direction::Out); break;
      case TermKind::NodeOutFactor:
      case TermKind::NodeInFactor: {
        const Direction dir = t.kind == TermKind::NodeOutFactor ? Direction::Out : Direction::In;
        double total = 0.0;
        for (Node v = 0; v < g.node_count(); ++v) {
          if (roles_[v] == *t.level) {
            total += static_cast<double>(dir == Direction::Out ? g.out_degree(v) : g.in_degree(v));
          }
        }
        out[k] = total;
        break;
      }
      case TermKind::NodeOutCov: out[k] = stat_nodecov(g, covariates_[k], Direction::Out); break;
      case TermKind::NodeInCov: out[k] = stat_nodecov(g, covariates_[k], Direction::In); break;
    }
  }
  return out;
}

void Model::change_statistics(const DirectedGraph& g, Node i, Node j, std::span<double> out) const {
  if (i == j) throw Error(ErrorCode::SelfDyad, "change_statistics", "node " + std::to_string(i));
  if (i >= g.node_count() || j >= g.node_count()) {
    throw Error(ErrorCode::NodeOutOfRange, "change_statistics",
                "dyad (" + std::to_string(i) + "," + std::to_string(j) + ")");
  }
  if (out.size() != spec_.size()) {
    throw Error(ErrorCode::DimensionMismatch, "change_statistics", "output buffer has wrong length");
  }
  const std::size_t shift = g.has_edge(i, j) ? 1 : 0;
  for (std::size_t k = 0; k < spec_.size(); ++k) {
    const auto& t = spec_.terms[k];
    switch (t.kind) {
      case TermKind::Edges: out[k] = 1.0; break;
      case TermKind::GwespOTP: out[k] = shared_partner_change(g, i, j, *t.decay, true); break;
      case TermKind::GwnspOTP: out[k] = shared_partner_change(g, i, j, *t.decay, false); break;
      case TermKind::GwInDegree:
        out[k] = gw_increment(*t.decay, g.in_degree(j) - shift);
        break;
      case TermKind::GwOutDegree:
        out[k] = gw_increment(*t.decay, g.out_degree(i) - shift);
        break;
      case TermKind::NodeOutFactor: out[k] = roles_[i] == *t.level ? 1.0 : 0.0; break;
      case TermKind::NodeInFactor: out[k] = roles_[j] == *t.level ? 1.0 : 0.0; break;
      case TermKind::NodeOutCov: out[k] = covariates_[k][i]; break;
      case TermKind::NodeInCov: out[k] = covariates_[k][j]; break;
    }
  }
}

StatVector Model::change_statistics(const DirectedGraph& g, Node i, Node j) const {
  StatVector out(spec_.size());
  change_statistics(g, i, j, out);
  return out;
}

StatVector statistics(const DirectedGraph& g, const NodeTable& nodes, const ModelSpec& spec) {
  return Model(spec, nodes).statistics(g);
}

StatVector change_statistics(const DirectedGraph& g, const NodeTable& nodes, const ModelSpec& spec, Node i,
                             Node j) {
  return Model(spec, nodes).change_statistics(g, i, j);
}

}  // namespace rtergm
