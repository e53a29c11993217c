#include "rtergm/graph.hpp"

#include <algorithm>

#include "rtergm/error.hpp"

namespace rtergm {

namespace {

bool sorted_insert(std::vector<Node>& v, Node x) {
  auto it = std::lower_bound(v.begin(), v.end(), x);
  if (it != v.end() && *it == x) return false;
  v.insert(it, x);
  return true;
}

bool sorted_erase(std::vector<Node>& v, Node x) {
  auto it = std::lower_bound(v.begin(), v.end(), x);
  if (it == v.end() || *it != x) return false;
  v.erase(it);
  return true;
}

}  // namespace

DirectedGraph::DirectedGraph(std::size_t n) : out_(n), in_(n) {}

std::size_t DirectedGraph::dyad_count() const noexcept {
  const std::size_t n = node_count();
  return n < 2 ? 0 : n * (n - 1);
}

void DirectedGraph::check_dyad(Node i, Node j, const char* operation) const {
  if (i >= node_count() || j >= node_count()) {
    throw Error(ErrorCode::NodeOutOfRange, operation,
                "dyad (" + std::to_string(i) + "," + std::to_string(j) + ") with n=" +
                    std::to_string(node_count()));
  }
  if (i == j) throw Error(ErrorCode::SelfLoop, operation, "node " + std::to_string(i));
}

bool DirectedGraph::has_edge(Node i, Node j) const {
  if (i >= node_count() || j >= node_count()) return false;
  // Search the shorter of the two lists.
  if (out_[i].size() <= in_[j].size()) {
    return std::binary_search(out_[i].begin(), out_[i].end(), j);
  }
  return std::binary_search(in_[j].begin(), in_[j].end(), i);
}

bool DirectedGraph::add_edge(Node i, Node j) {
  check_dyad(i, j, "add_edge");
  if (!sorted_insert(out_[i], j)) return false;
  sorted_insert(in_[j], i);
  ++edge_count_;
  return true;
}

bool DirectedGraph::remove_edge(Node i, Node j) {
  check_dyad(i, j, "remove_edge");
  if (!sorted_erase(out_[i], j)) return false;
  sorted_erase(in_[j], i);
  --edge_count_;
  return true;
}

bool DirectedGraph::toggle_edge(Node i, Node j) {
  if (add_edge(i, j)) return true;
  remove_edge(i, j);
  return false;
}

std::vector<Edge> DirectedGraph::edges() const {
  std::vector<Edge> result;
  result.reserve(edge_count_);
  for (Node i = 0; i < node_count(); ++i) {
    for (Node j : out_[i]) result.emplace_back(i, j);
  }
  return result;
}

DirectedGraph from_edge_list(std::span<const Edge> edges, std::size_t n) {
  DirectedGraph g(n);
  for (const auto& [s, t] : edges) {
    if (s >= n || t >= n) {
      throw Error(ErrorCode::NodeOutOfRange, "from_edge_list",
                  "edge (" + std::to_string(s) + "," + std::to_string(t) + ") with n=" +
                      std::to_string(n));
    }
    if (s == t) throw Error(ErrorCode::SelfLoop, "from_edge_list", "node " + std::to_string(s));
    g.add_edge(s, t);
  }
  return g;
}

std::size_t shared_partners_otp(const DirectedGraph& g, Node i, Node j) {
  if (i == j) throw Error(ErrorCode::SelfDyad, "shared_partners_otp", "node " + std::to_string(i));
  if (i >= g.node_count() || j >= g.node_count()) {
    throw Error(ErrorCode::NodeOutOfRange, "shared_partners_otp",
                "dyad (" + std::to_string(i) + "," + std::to_string(j) + ")");
  }
  // out(i) never holds i and in(j) never holds j, so the plain intersection is the answer.
  auto a = g.out_neighbors(i);
  auto b = g.in_neighbors(j);
  std::size_t count = 0;
  auto ia = a.begin();
  auto ib = b.begin();
  while (ia != a.end() && ib != b.end()) {
    if (*ia < *ib) {
      ++ia;
    } else if (*ib < *ia) {
      ++ib;
    } else {
      ++count;
      ++ia;
      ++ib;
    }
  }
  return count;
}

double degree_centralization(const DirectedGraph& g) {
  const std::size_t n = g.node_count();
  if (n < 3) {
    throw Error(ErrorCode::TooFewNodes, "degree_centralization",
                "need at least 3 nodes, got " + std::to_string(n));
  }
  std::size_t d_max = 0;
  std::size_t d_sum = 0;
  for (Node v = 0; v < n; ++v) {
    const std::size_t d = g.in_degree(v) + g.out_degree(v);
    d_max = std::max(d_max, d);
    d_sum += d;
  }
  const double numerator = static_cast<double>(n * d_max - d_sum);
  // Largest attainable sum of deviations: a star with every spoke linked both ways.
  const double denom = 2.0 * static_cast<double>(n - 1) * static_cast<double>(n - 2);
  return numerator / denom;
}

DegreeHistograms degree_histograms(const DirectedGraph& g) {
  DegreeHistograms h;
  const std::size_t n = g.node_count();
  h.in.assign(max_in_degree(g) + 1, 0);
  h.out.assign(max_out_degree(g) + 1, 0);
  for (Node v = 0; v < n; ++v) {
    ++h.in[g.in_degree(v)];
    ++h.out[g.out_degree(v)];
  }
  return h;
}

std::size_t max_in_degree(const DirectedGraph& g) {
  std::size_t m = 0;
  for (Node v = 0; v < g.node_count(); ++v) m = std::max(m, g.in_degree(v));
  return m;
}

std::size_t max_out_degree(const DirectedGraph& g) {
  std::size_t m = 0;
  for (Node v = 0; v < g.node_count(); ++v) m = std::max(m, g.out_degree(v));
  return m;
}

}  // namespace rtergm
