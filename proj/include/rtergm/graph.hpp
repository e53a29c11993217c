#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace rtergm {

using Node = std::uint32_t;
using Edge = std::pair<Node, Node>;

/// Binary directed graph without self-loops. Each node keeps sorted out- and
/// in-neighbor vectors so that two-path counting is a linear merge.
class DirectedGraph {
 public:
  DirectedGraph() = default;
  explicit DirectedGraph(std::size_t n);

  std::size_t node_count() const noexcept { return out_.size(); }
  std::size_t edge_count() const noexcept { return edge_count_; }
  /// Number of ordered dyads, n(n-1).
  std::size_t dyad_count() const noexcept;

  bool has_edge(Node i, Node j) const;
  /// Returns true when the edge was inserted, false if it already existed.
  bool add_edge(Node i, Node j);
  bool remove_edge(Node i, Node j);
  /// Flips dyad (i,j); returns true when the edge is present afterwards.
  bool toggle_edge(Node i, Node j);

  std::size_t out_degree(Node i) const { return out_[i].size(); }
  std::size_t in_degree(Node i) const { return in_[i].size(); }
  std::span<const Node> out_neighbors(Node i) const { return out_[i]; }
  std::span<const Node> in_neighbors(Node i) const { return in_[i]; }

  /// Edges in (source, target) lexicographic order.
  std::vector<Edge> edges() const;

  friend bool operator==(const DirectedGraph&, const DirectedGraph&) = default;

 private:
  void check_dyad(Node i, Node j, const char* operation) const;

  std::vector<std::vector<Node>> out_;
  std::vector<std::vector<Node>> in_;
  std::size_t edge_count_ = 0;
};

/// Builds a graph from (source, target) pairs; duplicates collapse to a single edge.
/// Throws SelfLoop or NodeOutOfRange.
DirectedGraph from_edge_list(std::span<const Edge> edges, std::size_t n);

/// Number of k (k != i, j) with i->k and k->j. Independent of the i->j edge itself.
std::size_t shared_partners_otp(const DirectedGraph& g, Node i, Node j);

/// Freeman centralization on total degree (in + out), normalized by its maximum
/// 2(n-1)(n-2), attained by the bidirectional star. Requires n >= 3.
double degree_centralization(const DirectedGraph& g);

struct DegreeHistograms {
  std::vector<std::size_t> in;   // in[k] = nodes with indegree k
  std::vector<std::size_t> out;  // out[k] = nodes with outdegree k
};

DegreeHistograms degree_histograms(const DirectedGraph& g);

std::size_t max_in_degree(const DirectedGraph& g);
std::size_t max_out_degree(const DirectedGraph& g);

}  // namespace rtergm
