#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "rtergm/graph.hpp"
#include "rtergm/node_table.hpp"

namespace rtergm {

/// Splits one CSV record (RFC 4180 quoting). `line` must not contain the record's
/// terminating newline.
std::vector<std::string> split_csv_record(std::string_view line);
/// Reads a whole CSV document into records; quoted fields may span lines.
std::vector<std::vector<std::string>> read_csv(std::string_view text);
std::string csv_escape(std::string_view field);

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view contents);

/// "source<TAB>target" per line, zero-based ids. Blank lines and '#' comments skipped.
std::vector<Edge> parse_edge_list(std::string_view text);
std::string format_edge_list(const DirectedGraph& g);

/// Header `node_id,screen_name,role,followers`; ids must cover 0..n-1 exactly once.
NodeTable parse_node_csv(std::string_view text);
std::string format_node_csv(const NodeTable& nodes);

/// Loads a graph sized by the node table (edge ids must be < nodes.size()).
DirectedGraph load_graph(const std::string& edge_path, const NodeTable& nodes);

}  // namespace rtergm
