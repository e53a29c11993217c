#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace rtergm {

enum class Role : std::uint8_t { Ordinary = 0, Organization = 1, Leader = 2, Influential = 3 };

inline constexpr std::array<Role, 4> kAllRoles = {Role::Ordinary, Role::Organization, Role::Leader,
                                                  Role::Influential};

std::string_view to_string(Role role);
/// Case-insensitive; accepts singular and plural spellings ("organization", "Organizations").
std::optional<Role> parse_role(std::string_view text);

/// Per-node attributes, indexed by node id.
struct NodeTable {
  std::vector<Role> role;
  std::vector<std::uint64_t> followers;
  std::vector<std::string> screen_name;

  std::size_t size() const noexcept { return role.size(); }
  bool has_role(Role r) const;
  std::size_t count(Role r) const;

  /// n ordinary nodes with zero followers and names "u0", "u1", ...
  static NodeTable uniform(std::size_t n);
};

/// log10(1 + followers), then z-standardized across nodes (sample SD). A constant
/// input maps to all zeros.
std::vector<double> follower_covariate(const NodeTable& nodes);

}  // namespace rtergm
