#include "rtergm/node_table.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>

namespace rtergm {

std::string_view to_string(Role role) {
  switch (role) {
    case Role::Ordinary: return "Ordinary";
    case Role::Organization: return "Organization";
    case Role::Leader: return "Leader";
    case Role::Influential: return "Influential";
  }
  return "Ordinary";
}

std::optional<Role> parse_role(std::string_view text) {
  std::string s;
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c))) {
      s.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    }
  }
  if (!s.empty() && s.back() == 's') s.pop_back();
  if (s == "ordinary" || s == "ordinaryuser") return Role::Ordinary;
  if (s == "organization" || s == "organisation" || s == "org") return Role::Organization;
  if (s == "leader") return Role::Leader;
  if (s == "influential" || s == "influentialuser") return Role::Influential;
  return std::nullopt;
}

bool NodeTable::has_role(Role r) const {
  return std::find(role.begin(), role.end(), r) != role.end();
}

std::size_t NodeTable::count(Role r) const {
  return static_cast<std::size_t>(std::count(role.begin(), role.end(), r));
}

NodeTable NodeTable::uniform(std::size_t n) {
  NodeTable t;
  t.role.assign(n, Role::Ordinary);
  t.followers.assign(n, 0);
  t.screen_name.reserve(n);
  for (std::size_t i = 0; i < n; ++i) t.screen_name.push_back("u" + std::to_string(i));
  return t;
}

std::vector<double> follower_covariate(const NodeTable& nodes) {
  const std::size_t n = nodes.size();
  std::vector<double> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = std::log10(1.0 + static_cast<double>(nodes.followers[i]));
  if (n < 2 || std::all_of(x.begin(), x.end(), [&](double v) { return v == x.front(); })) {
    return std::vector<double>(n, 0.0);
  }
  double mean = 0.0;
  for (double v : x) mean += v;
  mean /= static_cast<double>(n);
  double ss = 0.0;
  for (double v : x) ss += (v - mean) * (v - mean);
  const double sd = std::sqrt(ss / static_cast<double>(n - 1));
  if (!(sd > 0.0)) return std::vector<double>(n, 0.0);
  for (double& v : x) v = (v - mean) / sd;
  return x;
}

}  // namespace rtergm
