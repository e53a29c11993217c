#include "rtergm/ingest.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <sstream>

#include "json.hpp"
#include "rtergm/error.hpp"
#include "rtergm/io.hpp"

namespace rtergm {

using json = nlohmann::ordered_json;

namespace {

constexpr std::size_t kMaxScreenName = 15;

bool is_name_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) != 0 || c == '_';
}

std::string lower(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

bool all_digits(std::string_view s) {
  return !s.empty() &&
         std::all_of(s.begin(), s.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; });
}

// Howard Hinnant's days_from_civil.
std::int64_t days_from_civil(std::int64_t y, unsigned m, unsigned d) {
  y -= m <= 2 ? 1 : 0;
  const std::int64_t era = (y >= 0 ? y : y - 399) / 400;
  const auto yoe = static_cast<unsigned>(y - era * 400);
  const unsigned doy = (153 * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1;
  const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
  return era * 146097 + static_cast<std::int64_t>(doe) - 719468;
}

void civil_from_days(std::int64_t z, int& y, unsigned& m, unsigned& d) {
  z += 719468;
  const std::int64_t era = (z >= 0 ? z : z - 146096) / 146097;
  const auto doe = static_cast<unsigned>(z - era * 146097);
  const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
  const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
  const unsigned mp = (5 * doy + 2) / 153;
  d = doy - (153 * mp + 2) / 5 + 1;
  m = mp < 10 ? mp + 3 : mp - 9;
  y = static_cast<int>(static_cast<std::int64_t>(yoe) + era * 400 + (m <= 2 ? 1 : 0));
}

bool valid_clock(int mo, int d, int h, int mi, int s) {
  return mo >= 1 && mo <= 12 && d >= 1 && d <= 31 && h >= 0 && h <= 23 && mi >= 0 && mi <= 59 && s >= 0 &&
         s <= 60;
}

std::int64_t to_epoch(int y, int mo, int d, int h, int mi, int s) {
  return days_from_civil(y, static_cast<unsigned>(mo), static_cast<unsigned>(d)) * 86400 + h * 3600 + mi * 60 + s;
}

// "+HH:MM", "+HHMM", "+HH" -> seconds east of UTC.
std::optional<std::int64_t> parse_offset(std::string_view s) {
  if (s.size() < 3 || (s[0] != '+' && s[0] != '-')) return std::nullopt;
  const int sign = s[0] == '-' ? -1 : 1;
  std::string digits;
  for (char c : s.substr(1)) {
    if (c == ':') continue;
    if (!std::isdigit(static_cast<unsigned char>(c))) return std::nullopt;
    digits += c;
  }
  if (digits.size() != 2 && digits.size() != 4) return std::nullopt;
  const int hh = std::stoi(digits.substr(0, 2));
  const int mm = digits.size() == 4 ? std::stoi(digits.substr(2, 2)) : 0;
  if (hh > 23 || mm > 59) return std::nullopt;
  return sign * (hh * 3600 + mm * 60);
}

std::optional<std::int64_t> parse_iso(std::string_view s) {
  // YYYY-MM-DD[T ]HH:MM:SS
  if (s.size() < 19) return std::nullopt;
  const std::string head(s.substr(0, 19));
  int y, mo, d, h, mi, sec;
  char sep;
  int consumed = 0;
  if (std::sscanf(head.c_str(), "%4d-%2d-%2d%c%2d:%2d:%2d%n", &y, &mo, &d, &sep, &h, &mi, &sec, &consumed) != 7 ||
      consumed != 19 || (sep != 'T' && sep != ' ')) {
    return std::nullopt;
  }
  if (!valid_clock(mo, d, h, mi, sec)) return std::nullopt;
  std::string_view rest = s.substr(19);
  if (!rest.empty() && rest.front() == '.') {
    rest.remove_prefix(1);
    std::size_t k = 0;
    while (k < rest.size() && std::isdigit(static_cast<unsigned char>(rest[k]))) ++k;
    if (k == 0) return std::nullopt;
    rest.remove_prefix(k);
  }
  std::int64_t offset = 0;
  if (rest == "Z" || rest == "z" || rest.empty()) {
    offset = 0;
  } else if (auto o = parse_offset(rest)) {
    offset = *o;
  } else {
    return std::nullopt;
  }
  return to_epoch(y, mo, d, h, mi, sec) - offset;
}

std::optional<std::int64_t> parse_legacy(std::string_view s) {
  // Thu Aug 25 14:03:00 +0000 2011
  static constexpr std::array<std::string_view, 12> kMonths = {"jan", "feb", "mar", "apr", "may", "jun",
                                                               "jul", "aug", "sep", "oct", "nov", "dec"};
  std::istringstream in{std::string(s)};
  std::string dow, mon, clock, zone, year;
  int day = 0;
  if (!(in >> dow >> mon >> day >> clock >> zone >> year)) return std::nullopt;
  std::string extra;
  if (in >> extra) return std::nullopt;
  const auto it = std::find(kMonths.begin(), kMonths.end(), lower(mon));
  if (it == kMonths.end() || dow.size() != 3 || !all_digits(year)) return std::nullopt;
  int h, mi, sec, consumed = 0;
  if (std::sscanf(clock.c_str(), "%2d:%2d:%2d%n", &h, &mi, &sec, &consumed) != 3 ||
      consumed != static_cast<int>(clock.size())) {
    return std::nullopt;
  }
  const int mo = static_cast<int>(it - kMonths.begin()) + 1;
  if (!valid_clock(mo, day, h, mi, sec)) return std::nullopt;
  const auto offset = parse_offset(zone);
  if (!offset) return std::nullopt;
  return to_epoch(std::stoi(year), mo, day, h, mi, sec) - *offset;
}

std::uint64_t parse_followers(std::string_view text, std::size_t line) {
  const auto t = trim(text);
  if (t.empty()) return 0;
  if (!all_digits(t)) {
    throw Error(ErrorCode::Parse, "parse_tweets",
                "line " + std::to_string(line) + ": followers must be a non-negative integer, got '" +
                    std::string(t) + "'");
  }
  try {
    return std::stoull(std::string(t));
  } catch (const std::out_of_range&) {
    throw Error(ErrorCode::Parse, "parse_tweets",
                "line " + std::to_string(line) + ": followers out of range '" + std::string(t) + "'");
  }
}

std::string strip_at(std::string_view name) {
  name = trim(name);
  if (!name.empty() && name.front() == '@') name.remove_prefix(1);
  return std::string(name);
}

bool id_less(const std::string& a, const std::string& b) {
  if (all_digits(a) && all_digits(b)) {
    const auto sa = std::string_view(a).substr(std::min(a.find_first_not_of('0'), a.size()));
    const auto sb = std::string_view(b).substr(std::min(b.find_first_not_of('0'), b.size()));
    if (sa.size() != sb.size()) return sa.size() < sb.size();
    return sa < sb;
  }
  return a < b;
}

double sample_sd(const std::vector<double>& v, double mean) {
  if (v.size() < 2) return std::numeric_limits<double>::quiet_NaN();
  double ss = 0.0;
  for (double x : v) ss += (x - mean) * (x - mean);
  return std::sqrt(ss / static_cast<double>(v.size() - 1));
}

std::string_view role_plural(Role r) {
  switch (r) {
    case Role::Organization:
      return "Organizations";
    case Role::Leader:
      return "Leaders";
    case Role::Influential:
      return "Influential users";
    case Role::Ordinary:
      return "Ordinary users";
  }
  return "?";
}

constexpr std::array<Role, 4> kTableOrder = {Role::Organization, Role::Leader, Role::Influential, Role::Ordinary};

std::string mean_sd(double mean, double sd, std::size_t count) {
  if (count == 0) return "N/A";
  char buf[64];
  if (std::isnan(sd)) {
    std::snprintf(buf, sizeof buf, "%.2f (N/A)", mean);
  } else {
    std::snprintf(buf, sizeof buf, "%.2f (%.2f)", mean, sd);
  }
  return buf;
}

json number_or_null(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

}  // namespace

bool is_valid_screen_name(std::string_view name) {
  return !name.empty() && name.size() <= kMaxScreenName && std::all_of(name.begin(), name.end(), is_name_char);
}

std::optional<std::string> parse_retweet(std::string_view text) {
  static constexpr std::array<std::string_view, 3> kMarkers = {"rt @", "mt @", "retweet @"};
  const std::string haystack = lower(text);
  std::size_t from = 0;
  while (from < haystack.size()) {
    // Earliest marker at or after `from` that starts a word.
    std::size_t best = std::string::npos;
    std::size_t best_len = 0;
    for (auto marker : kMarkers) {
      std::size_t pos = haystack.find(marker, from);
      while (pos != std::string::npos && pos > 0 && std::isalnum(static_cast<unsigned char>(haystack[pos - 1]))) {
        pos = haystack.find(marker, pos + 1);
      }
      if (pos < best) {
        best = pos;
        best_len = marker.size();
      }
    }
    if (best == std::string::npos) return std::nullopt;
    const std::size_t start = best + best_len;
    std::size_t end = start;
    while (end < text.size() && is_name_char(text[end])) ++end;
    const auto name = text.substr(start, end - start);
    if (is_valid_screen_name(name)) return std::string(name);
    from = best + 1;
  }
  return std::nullopt;
}

std::int64_t parse_timestamp(std::string_view text, std::size_t line) {
  const auto t = trim(text);
  std::optional<std::int64_t> value;
  if (all_digits(t) || (t.size() > 1 && t.front() == '-' && all_digits(t.substr(1)))) {
    try {
      value = std::stoll(std::string(t));
    } catch (const std::out_of_range&) {
    }
  } else {
    value = parse_iso(t);
    if (!value) value = parse_legacy(t);
  }
  if (!value) {
    throw Error(ErrorCode::UnknownTimestampFormat, "parse_timestamp",
                "line " + std::to_string(line) + ": unrecognized timestamp '" + std::string(t) + "'");
  }
  return *value;
}

std::string format_timestamp(std::int64_t epoch_seconds) {
  std::int64_t days = epoch_seconds / 86400;
  std::int64_t secs = epoch_seconds % 86400;
  if (secs < 0) {
    secs += 86400;
    --days;
  }
  int y;
  unsigned m, d;
  civil_from_days(days, y, m, d);
  char buf[32];
  std::snprintf(buf, sizeof buf, "%04d-%02u-%02uT%02d:%02d:%02dZ", y, m, d, static_cast<int>(secs / 3600),
                static_cast<int>(secs / 60 % 60), static_cast<int>(secs % 60));
  return buf;
}

std::vector<TweetRecord> parse_tweets_jsonl(std::string_view text) {
  std::vector<TweetRecord> records;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t nl = text.find('\n', pos);
    const auto raw = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;
    const auto line = trim(raw);
    if (line.empty()) continue;
    json obj;
    try {
      obj = json::parse(line);
    } catch (const json::parse_error& e) {
      throw Error(ErrorCode::Parse, "parse_tweets_jsonl", "line " + std::to_string(line_no) + ": " + e.what());
    }
    auto field = [&](const char* key) -> const json& {
      if (!obj.is_object() || !obj.contains(key)) {
        throw Error(ErrorCode::Parse, "parse_tweets_jsonl",
                    "line " + std::to_string(line_no) + ": missing field '" + key + "'");
      }
      return obj.at(key);
    };
    auto as_text = [](const json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); };
    TweetRecord r;
    r.line = line_no;
    r.id = as_text(field("id"));
    const json& ts = field("created_at");
    r.created_at = ts.is_number_integer() ? ts.get<std::int64_t>() : parse_timestamp(as_text(ts), line_no);
    r.author = strip_at(as_text(field("author")));
    const json& f = obj.contains("followers") ? obj.at("followers") : json(0);
    if (f.is_number_unsigned() || (f.is_number_integer() && f.get<std::int64_t>() >= 0)) {
      r.followers = f.get<std::uint64_t>();
    } else {
      r.followers = parse_followers(as_text(f), line_no);
    }
    r.text = as_text(field("text"));
    records.push_back(std::move(r));
  }
  return records;
}

std::vector<TweetRecord> parse_tweets_csv(std::string_view text) {
  // Diagnostics count records; a quoted text field may span several physical lines.
  const auto rows = read_csv(text);
  if (rows.empty()) return {};
  const std::vector<std::string> expected = {"id", "created_at", "author", "followers", "text"};
  std::vector<std::string> header;
  for (const auto& h : rows.front()) header.push_back(lower(trim(h)));
  if (header != expected) {
    throw Error(ErrorCode::Parse, "parse_tweets_csv", "line 1: expected header id,created_at,author,followers,text");
  }
  std::vector<TweetRecord> records;
  for (std::size_t k = 1; k < rows.size(); ++k) {
    const auto& row = rows[k];
    const std::size_t line_no = k + 1;
    if (row.size() == 1 && trim(row[0]).empty()) continue;
    if (row.size() != expected.size()) {
      throw Error(ErrorCode::Parse, "parse_tweets_csv",
                  "record " + std::to_string(line_no) + ": expected 5 fields, got " + std::to_string(row.size()));
    }
    TweetRecord r;
    r.line = line_no;
    r.id = std::string(trim(row[0]));
    r.created_at = parse_timestamp(row[1], line_no);
    r.author = strip_at(row[2]);
    r.followers = parse_followers(row[3], line_no);
    r.text = row[4];
    records.push_back(std::move(r));
  }
  return records;
}

std::vector<TweetRecord> load_tweets(const std::string& path) {
  const std::string contents = read_file(path);
  const auto dot = path.find_last_of('.');
  const std::string ext = dot == std::string::npos ? "" : lower(path.substr(dot + 1));
  if (ext == "jsonl" || ext == "json" || ext == "ndjson") return parse_tweets_jsonl(contents);
  return parse_tweets_csv(contents);
}

void sort_tweets(std::vector<TweetRecord>& records) {
  std::stable_sort(records.begin(), records.end(), [](const TweetRecord& a, const TweetRecord& b) {
    if (a.created_at != b.created_at) return a.created_at < b.created_at;
    return id_less(a.id, b.id);
  });
}

RoleMap parse_role_csv(std::string_view text) {
  const auto rows = read_csv(text);
  if (rows.empty()) return {};
  if (rows.front().size() < 2 || lower(trim(rows.front()[0])) != "screen_name" ||
      lower(trim(rows.front()[1])) != "role") {
    throw Error(ErrorCode::Parse, "parse_role_csv", "line 1: expected header screen_name,role");
  }
  RoleMap roles;
  for (std::size_t k = 1; k < rows.size(); ++k) {
    const auto& row = rows[k];
    if (row.size() == 1 && trim(row[0]).empty()) continue;
    if (row.size() < 2) {
      throw Error(ErrorCode::Parse, "parse_role_csv", "line " + std::to_string(k + 1) + ": expected 2 fields");
    }
    const auto role = parse_role(trim(row[1]));
    if (!role) {
      throw Error(ErrorCode::Parse, "parse_role_csv",
                  "line " + std::to_string(k + 1) + ": unknown role '" + row[1] + "'");
    }
    roles[lower(strip_at(row[0]))] = *role;
  }
  return roles;
}

std::unordered_set<std::string> parse_exclusion_list(std::string_view text) {
  std::unordered_set<std::string> ids;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    const auto hash = line.find('#');
    const auto id = trim(std::string_view(line).substr(0, hash));
    if (!id.empty()) ids.emplace(id);
  }
  return ids;
}

RetweetNetwork build_network(std::vector<TweetRecord> records, const IngestOptions& options) {
  sort_tweets(records);

  std::unordered_map<std::string, std::uint64_t> first_followers;
  for (const auto& r : records) first_followers.emplace(lower(r.author), r.followers);

  RetweetNetwork net;
  std::unordered_map<std::string, Node> index;
  std::vector<Edge> edges;

  auto node_for = [&](const std::string& name) {
    const std::string key = lower(name);
    auto [it, inserted] = index.emplace(key, static_cast<Node>(net.nodes.size()));
    if (inserted) {
      net.nodes.screen_name.push_back(name);
      auto f = first_followers.find(key);
      net.nodes.followers.push_back(f == first_followers.end() ? 0 : f->second);
      net.nodes.role.push_back(Role::Ordinary);
    }
    return it->second;
  };

  std::size_t taken = 0;
  for (const auto& r : records) {
    if (taken >= options.limit) break;
    if (options.excluded_ids.count(r.id) != 0) continue;
    const auto target = parse_retweet(r.text);
    if (!target) continue;
    if (lower(r.author) == lower(*target)) {
      ++net.self_retweets;
      continue;
    }
    ++taken;
    RetweetEntry entry;
    entry.tweet_id = r.id;
    entry.created_at = r.created_at;
    entry.retweeter = r.author;
    entry.author = *target;
    entry.source = node_for(r.author);
    entry.target = node_for(*target);
    edges.emplace_back(entry.source, entry.target);
    net.log.push_back(std::move(entry));
  }

  net.graph = from_edge_list(edges, net.nodes.size());
  for (std::size_t v = 0; v < net.nodes.size(); ++v) {
    if (first_followers.count(lower(net.nodes.screen_name[v])) == 0) {
      net.warnings.push_back("no authored tweet for '" + net.nodes.screen_name[v] + "'; followers set to 0");
    }
  }
  if (options.roles) {
    for (std::size_t v = 0; v < net.nodes.size(); ++v) {
      auto it = options.roles->find(lower(net.nodes.screen_name[v]));
      if (it == options.roles->end()) {
        net.warnings.push_back("no role coding for '" + net.nodes.screen_name[v] + "'; treated as Ordinary");
      } else {
        net.nodes.role[v] = it->second;
      }
    }
  }
  return net;
}

std::string format_retweet_log(const std::vector<RetweetEntry>& log) {
  std::string out = "tweet_id,created_at,retweeter,author,source,target\n";
  for (const auto& e : log) {
    out += csv_escape(e.tweet_id) + ',' + format_timestamp(e.created_at) + ',' + csv_escape(e.retweeter) + ',' +
           csv_escape(e.author) + ',' + std::to_string(e.source) + ',' + std::to_string(e.target) + '\n';
  }
  return out;
}

DescriptiveStats describe(const DirectedGraph& g, const NodeTable& nodes, std::size_t raw_retweets) {
  if (nodes.size() != g.node_count()) {
    throw Error(ErrorCode::DimensionMismatch, "describe",
                "node table has " + std::to_string(nodes.size()) + " rows for " + std::to_string(g.node_count()) +
                    " nodes");
  }
  DescriptiveStats s;
  s.edges = raw_retweets;
  s.unique_dyads = g.edge_count();
  s.users = g.node_count();
  s.centralization = s.users >= 3 ? degree_centralization(g) : std::numeric_limits<double>::quiet_NaN();
  s.max_in_degree = max_in_degree(g);
  s.max_out_degree = max_out_degree(g);

  std::array<std::vector<double>, 4> in_deg;
  std::array<std::vector<double>, 4> out_deg;
  for (Node v = 0; v < g.node_count(); ++v) {
    const auto r = static_cast<std::size_t>(nodes.role[v]);
    ++s.role_counts[r];
    in_deg[r].push_back(static_cast<double>(g.in_degree(v)));
    out_deg[r].push_back(static_cast<double>(g.out_degree(v)));
  }
  for (std::size_t r = 0; r < 4; ++r) {
    auto& d = s.by_role[r];
    d.count = s.role_counts[r];
    if (d.count == 0) {
      d.in_mean = d.out_mean = d.in_sd = d.out_sd = std::numeric_limits<double>::quiet_NaN();
      continue;
    }
    const double n = static_cast<double>(d.count);
    double si = 0.0;
    double so = 0.0;
    for (std::size_t k = 0; k < d.count; ++k) {
      si += in_deg[r][k];
      so += out_deg[r][k];
    }
    d.in_mean = si / n;
    d.out_mean = so / n;
    d.in_sd = sample_sd(in_deg[r], d.in_mean);
    d.out_sd = sample_sd(out_deg[r], d.out_mean);
  }
  return s;
}

std::string describe_table(const DescriptiveStats& s) {
  std::string out;
  char buf[128];
  auto row = [&](std::string_view label, const std::string& value) {
    std::snprintf(buf, sizeof buf, "  %-32s %s\n", std::string(label).c_str(), value.c_str());
    out += buf;
  };
  out += "Descriptive statistics\n";
  row("Edges (retweets)", std::to_string(s.edges));
  row("Unique dyads", std::to_string(s.unique_dyads));
  row("Users", std::to_string(s.users));
  for (Role r : kTableOrder) row("  " + std::string(role_plural(r)), std::to_string(s.role_count(r)));
  if (std::isnan(s.centralization)) {
    row("Degree centralization", "N/A");
  } else {
    std::snprintf(buf, sizeof buf, "%.4f", s.centralization);
    row("Degree centralization", buf);
  }
  row("Max indegree", std::to_string(s.max_in_degree));
  row("Max outdegree", std::to_string(s.max_out_degree));
  out += "\nAverage degree, mean (SD), sample SD with n-1 denominator\n";
  for (Role r : kTableOrder) {
    const auto& d = s.degree(r);
    row(std::string(role_plural(r)) + "' indegree", mean_sd(d.in_mean, d.in_sd, d.count));
  }
  for (Role r : kTableOrder) {
    const auto& d = s.degree(r);
    row(std::string(role_plural(r)) + "' outdegree", mean_sd(d.out_mean, d.out_sd, d.count));
  }
  return out;
}

std::string describe_json(const DescriptiveStats& s) {
  json j;
  j["edges"] = s.edges;
  j["unique_dyads"] = s.unique_dyads;
  j["users"] = s.users;
  json counts = json::object();
  for (Role r : kTableOrder) counts[std::string(to_string(r))] = s.role_count(r);
  j["role_counts"] = counts;
  j["degree_centralization"] = number_or_null(s.centralization);
  j["max_indegree"] = s.max_in_degree;
  j["max_outdegree"] = s.max_out_degree;
  json by_role = json::object();
  for (Role r : kTableOrder) {
    const auto& d = s.degree(r);
    by_role[std::string(to_string(r))] = {{"count", d.count},
                                          {"indegree_mean", number_or_null(d.in_mean)},
                                          {"indegree_sd", number_or_null(d.in_sd)},
                                          {"outdegree_mean", number_or_null(d.out_mean)},
                                          {"outdegree_sd", number_or_null(d.out_sd)}};
  }
  j["degree_by_role"] = by_role;
  j["sd_convention"] = "sample (n-1)";
  return j.dump(2) + "\n";
}

double krippendorff_alpha(const std::vector<std::optional<std::string>>& coder_a,
                          const std::vector<std::optional<std::string>>& coder_b) {
  if (coder_a.size() != coder_b.size()) {
    throw Error(ErrorCode::DimensionMismatch, "krippendorff_alpha",
                "coders rated " + std::to_string(coder_a.size()) + " and " + std::to_string(coder_b.size()) +
                    " items");
  }
  // With two coders each paired item adds (a,b) and (b,a) to the coincidence matrix.
  std::map<std::string, std::size_t> marginal;
  std::size_t disagreements = 0;  // off-diagonal mass, counting both orientations
  std::size_t paired = 0;
  for (std::size_t k = 0; k < coder_a.size(); ++k) {
    if (!coder_a[k] || !coder_b[k]) continue;
    ++paired;
    ++marginal[*coder_a[k]];
    ++marginal[*coder_b[k]];
    if (*coder_a[k] != *coder_b[k]) disagreements += 2;
  }
  if (paired < 2) {
    throw Error(ErrorCode::InsufficientData, "krippendorff_alpha",
                "need at least 2 items coded by both coders, got " + std::to_string(paired));
  }
  const double n = 2.0 * static_cast<double>(paired);
  double expected = n * n;
  for (const auto& [category, count] : marginal) expected -= static_cast<double>(count) * static_cast<double>(count);
  if (expected <= 0.0) {
    throw Error(ErrorCode::InsufficientData, "krippendorff_alpha", "all codings fall in a single category");
  }
  return 1.0 - (n - 1.0) * static_cast<double>(disagreements) / expected;
}

}  // namespace rtergm
