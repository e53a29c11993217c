#pragma once

#include <array>
#include <string>
#include <vector>

#include "rtergm/estimator.hpp"
#include "rtergm/graph.hpp"
#include "rtergm/sampler.hpp"
#include "rtergm/terms.hpp"

namespace rtergm {

inline constexpr std::array<double, 5> kGofProbabilities = {0.025, 0.25, 0.5, 0.75, 0.975};

/// One auxiliary statistic family: an observed vector and, per coordinate, the
/// simulated 2.5/25/50/75/97.5% quantiles.
struct GofFamily {
  std::string name;
  std::vector<std::string> coordinates;
  std::vector<double> observed;
  std::vector<std::array<double, 5>> quantiles;
  std::vector<bool> inside;  // observed within [2.5%, 97.5%]

  std::size_t size() const noexcept { return coordinates.size(); }
  std::size_t inside_count() const;

  friend bool operator==(const GofFamily&, const GofFamily&) = default;
};

struct GofReport {
  std::vector<GofFamily> families;  // idegree, odegree, espartners, distance, model

  std::size_t coordinate_count() const;
  double fraction_inside() const;
  const GofFamily* find(const std::string& name) const;

  friend bool operator==(const GofReport&, const GofReport&) = default;
};

/// in[k] = number of nodes with indegree k (and out likewise), padded to `length`.
std::vector<double> indegree_distribution(const DirectedGraph& g);
std::vector<double> outdegree_distribution(const DirectedGraph& g);
/// esp[i] = number of edges with exactly i OTP shared partners (i >= 0); sums to edge count.
std::vector<double> esp_distribution(const DirectedGraph& g);
/// dist[d-1] = ordered pairs at geodesic distance d (d = 1..n-1); last entry counts
/// unreachable pairs. Sums to n(n-1). BFS from every node.
std::vector<double> geodesic_distribution(const DirectedGraph& g);

/// Type-7 sample quantile (linear interpolation) of an ascending-sorted vector.
double sample_quantile(const std::vector<double>& sorted, double p);

/// Simulates config.sample_size networks at fit.theta (started from g) and builds the
/// five envelope families. Requires fit.converged.
GofReport gof_run(const DirectedGraph& g, const Model& model, const FitResult& fit, const SamplerConfig& config);

/// Writes <dir>/gof_<family>.csv and <dir>/gof_<family>.svg; returns the paths written.
std::vector<std::string> render_gof(const GofReport& report, const std::string& dir);
/// Reads back the CSVs written by render_gof.
GofReport read_gof(const std::string& dir);

std::string gof_family_csv(const GofFamily& family);
GofFamily parse_gof_family_csv(const std::string& name, const std::string& text);
std::string gof_family_svg(const GofFamily& family);

}  // namespace rtergm
