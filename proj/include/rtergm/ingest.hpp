#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "rtergm/graph.hpp"
#include "rtergm/node_table.hpp"

namespace rtergm {

struct TweetRecord {
  std::string id;
  std::int64_t created_at = 0;  // seconds since the Unix epoch, UTC
  std::string author;
  std::uint64_t followers = 0;
  std::string text;
  std::size_t line = 0;  // source line, for diagnostics
};

/// Letters, digits and underscore, 1 to 15 characters.
bool is_valid_screen_name(std::string_view name);

/// Finds the earliest "RT @", "MT @" or "retweet @" marker (case-insensitive) and
/// returns the screen name right after its '@'.
std::optional<std::string> parse_retweet(std::string_view text);

/// Accepts ISO-8601 ("2011-08-25T14:03:00Z", optional fraction and offset, space
/// separator allowed), the legacy Twitter layout ("Thu Aug 25 14:03:00 +0000 2011")
/// and bare epoch seconds. Throws UnknownTimestampFormat mentioning `line`.
std::int64_t parse_timestamp(std::string_view text, std::size_t line = 0);
/// "YYYY-MM-DDTHH:MM:SSZ"
std::string format_timestamp(std::int64_t epoch_seconds);

/// One JSON object per line with keys id, created_at, author, followers, text.
std::vector<TweetRecord> parse_tweets_jsonl(std::string_view text);
/// Header `id,created_at,author,followers,text`.
std::vector<TweetRecord> parse_tweets_csv(std::string_view text);
/// Chooses the reader from the extension: .jsonl/.json/.ndjson or CSV otherwise.
std::vector<TweetRecord> load_tweets(const std::string& path);

/// Sorts by created_at with the tweet id as tiebreaker (numeric ids compare numerically).
void sort_tweets(std::vector<TweetRecord>& records);

/// Role CSV with header `screen_name,role`. Keys are lower-cased screen names.
using RoleMap = std::unordered_map<std::string, Role>;
RoleMap parse_role_csv(std::string_view text);

/// One tweet id per line; blank lines and '#' comments ignored.
std::unordered_set<std::string> parse_exclusion_list(std::string_view text);

struct RetweetEntry {
  std::string tweet_id;
  std::int64_t created_at = 0;
  std::string retweeter;
  std::string author;
  Node source = 0;
  Node target = 0;
};

struct IngestOptions {
  std::size_t limit = 1000;
  std::unordered_set<std::string> excluded_ids;
  std::optional<RoleMap> roles;
};

struct RetweetNetwork {
  DirectedGraph graph;
  NodeTable nodes;
  std::vector<RetweetEntry> log;  // every retained retweet, in time order
  std::size_t self_retweets = 0;
  std::vector<std::string> warnings;
};

/// Takes the first `limit` records that parse as retweets of another account (excluded
/// ids and self-retweets are skipped before counting) and adds retweeter -> author.
/// Nodes are numbered by first appearance; followers come from the earliest record
/// authored by that account.
RetweetNetwork build_network(std::vector<TweetRecord> records, const IngestOptions& options = {});

std::string format_retweet_log(const std::vector<RetweetEntry>& log);

struct RoleDegree {
  std::size_t count = 0;
  double in_mean = 0.0;
  double in_sd = 0.0;  // NaN with fewer than 2 members
  double out_mean = 0.0;
  double out_sd = 0.0;
};

struct DescriptiveStats {
  std::size_t edges = 0;  // raw retweets
  std::size_t unique_dyads = 0;
  std::size_t users = 0;
  std::array<std::size_t, 4> role_counts{};  // indexed by Role
  double centralization = 0.0;               // NaN below 3 users
  std::size_t max_in_degree = 0;
  std::size_t max_out_degree = 0;
  std::array<RoleDegree, 4> by_role{};

  std::size_t role_count(Role r) const { return role_counts[static_cast<std::size_t>(r)]; }
  const RoleDegree& degree(Role r) const { return by_role[static_cast<std::size_t>(r)]; }
};

DescriptiveStats describe(const DirectedGraph& g, const NodeTable& nodes, std::size_t raw_retweets);
inline DescriptiveStats describe(const RetweetNetwork& net) {
  return describe(net.graph, net.nodes, net.log.size());
}

/// Two text blocks: network summary and role-by-degree table.
std::string describe_table(const DescriptiveStats& stats);
std::string describe_json(const DescriptiveStats& stats);

/// Nominal Krippendorff alpha for two coders. Items missing either coding are skipped.
/// Throws InsufficientData with fewer than 2 paired items or a single category overall.
double krippendorff_alpha(const std::vector<std::optional<std::string>>& coder_a,
                          const std::vector<std::optional<std::string>>& coder_b);

}  // namespace rtergm
