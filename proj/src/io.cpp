#include "rtergm/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "rtergm/error.hpp"

namespace rtergm {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

template <typename T>
bool parse_uint(std::string_view s, T& out) {
  s = trim(s);
  if (s.empty()) return false;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size();
}

}  // namespace

std::vector<std::vector<std::string>> read_csv(std::string_view text) {
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> row;
  std::string field;
  bool quoted = false;
  bool field_started = false;
  for (std::size_t k = 0; k < text.size(); ++k) {
    const char c = text[k];
    if (quoted) {
      if (c == '"') {
        if (k + 1 < text.size() && text[k + 1] == '"') {
          field.push_back('"');
          ++k;
        } else {
          quoted = false;
        }
      } else {
        field.push_back(c);
      }
      continue;
    }
    if (c == '"' && !field_started) {
      quoted = true;
      field_started = true;
    } else if (c == ',') {
      row.push_back(std::move(field));
      field.clear();
      field_started = false;
    } else if (c == '\n') {
      if (!field.empty() && field.back() == '\r') field.pop_back();
      row.push_back(std::move(field));
      field.clear();
      field_started = false;
      if (!(row.size() == 1 && row[0].empty())) rows.push_back(std::move(row));
      row.clear();
    } else {
      field.push_back(c);
      field_started = true;
    }
  }
  if (quoted) throw Error(ErrorCode::Parse, "read_csv", "unterminated quoted field");
  if (field_started || !row.empty()) {
    if (!field.empty() && field.back() == '\r') field.pop_back();
    row.push_back(std::move(field));
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<std::string> split_csv_record(std::string_view line) {
  auto rows = read_csv(line);
  if (rows.empty()) return {};
  return rows.front();
}

std::string csv_escape(std::string_view field) {
  if (field.find_first_of(",\"\n\r") == std::string_view::npos) return std::string(field);
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "read_file", "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::Io, "write_file", "cannot write " + path);
  out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
  if (!out) throw Error(ErrorCode::Io, "write_file", "write failed for " + path);
}

std::vector<Edge> parse_edge_list(std::string_view text) {
  std::vector<Edge> edges;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    std::string_view line = trim(text.substr(pos, eol - pos));
    pos = eol + 1;
    ++line_no;
    if (line.empty() || line.front() == '#') continue;
    const std::size_t tab = line.find('\t');
    Node s = 0;
    Node t = 0;
    if (tab == std::string_view::npos || !parse_uint(line.substr(0, tab), s) ||
        !parse_uint(line.substr(tab + 1), t)) {
      throw Error(ErrorCode::Parse, "parse_edge_list",
                  "line " + std::to_string(line_no) + ": expected 'source<TAB>target'");
    }
    edges.emplace_back(s, t);
  }
  return edges;
}

std::string format_edge_list(const DirectedGraph& g) {
  std::string out;
  for (const auto& [s, t] : g.edges()) {
    out += std::to_string(s);
    out += '\t';
    out += std::to_string(t);
    out += '\n';
  }
  return out;
}

NodeTable parse_node_csv(std::string_view text) {
  const auto rows = read_csv(text);
  if (rows.empty()) throw Error(ErrorCode::Parse, "parse_node_csv", "empty node file");
  const std::vector<std::string> expected = {"node_id", "screen_name", "role", "followers"};
  std::vector<std::string> header;
  for (const auto& h : rows[0]) header.emplace_back(trim(h));
  if (header != expected) {
    throw Error(ErrorCode::Parse, "parse_node_csv", "line 1: header must be node_id,screen_name,role,followers");
  }
  const std::size_t n = rows.size() - 1;
  NodeTable t;
  t.role.assign(n, Role::Ordinary);
  t.followers.assign(n, 0);
  t.screen_name.assign(n, "");
  std::vector<bool> seen(n, false);
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const auto& row = rows[r];
    const std::string where = "row " + std::to_string(r + 1) + ": ";
    if (row.size() != 4) throw Error(ErrorCode::Parse, "parse_node_csv", where + "expected 4 fields");
    std::size_t id = 0;
    if (!parse_uint(row[0], id) || id >= n) {
      throw Error(ErrorCode::Parse, "parse_node_csv", where + "node_id must be in [0," + std::to_string(n) + ")");
    }
    if (seen[id]) throw Error(ErrorCode::Parse, "parse_node_csv", where + "duplicate node_id " + row[0]);
    seen[id] = true;
    auto role = parse_role(row[2]);
    if (!role) throw Error(ErrorCode::Parse, "parse_node_csv", where + "unknown role '" + row[2] + "'");
    std::uint64_t followers = 0;
    if (!parse_uint(row[3], followers)) {
      throw Error(ErrorCode::Parse, "parse_node_csv", where + "followers must be a non-negative integer");
    }
    t.screen_name[id] = std::string(trim(row[1]));
    t.role[id] = *role;
    t.followers[id] = followers;
  }
  return t;
}

std::string format_node_csv(const NodeTable& nodes) {
  std::string out = "node_id,screen_name,role,followers\n";
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    out += std::to_string(i);
    out += ',';
    out += csv_escape(nodes.screen_name[i]);
    out += ',';
    out += to_string(nodes.role[i]);
    out += ',';
    out += std::to_string(nodes.followers[i]);
    out += '\n';
  }
  return out;
}

DirectedGraph load_graph(const std::string& edge_path, const NodeTable& nodes) {
  const auto edges = parse_edge_list(read_file(edge_path));
  return from_edge_list(edges, nodes.size());
}

}  // namespace rtergm
