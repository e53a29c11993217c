#include "rtergm/gof.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <limits>
#include <sstream>

#include "rtergm/error.hpp"
#include "rtergm/io.hpp"

namespace rtergm {

namespace {

constexpr const char* kFamilyNames[] = {"idegree", "odegree", "espartners", "distance", "model"};

std::string number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void pad_to(std::vector<double>& v, std::size_t length) {
  if (v.size() < length) v.resize(length, 0.0);
}

GofFamily assemble(std::string name, std::vector<std::string> coordinates, std::vector<double> observed,
                   const std::vector<std::vector<double>>& simulated) {
  GofFamily f;
  f.name = std::move(name);
  f.coordinates = std::move(coordinates);
  f.observed = std::move(observed);
  const std::size_t len = f.coordinates.size();
  f.quantiles.resize(len);
  f.inside.resize(len);
  std::vector<double> column(simulated.size());
  for (std::size_t c = 0; c < len; ++c) {
    for (std::size_t s = 0; s < simulated.size(); ++s) column[s] = simulated[s][c];
    std::sort(column.begin(), column.end());
    for (std::size_t q = 0; q < kGofProbabilities.size(); ++q) {
      f.quantiles[c][q] = sample_quantile(column, kGofProbabilities[q]);
    }
    f.inside[c] = f.observed[c] >= f.quantiles[c][0] && f.observed[c] <= f.quantiles[c][4];
  }
  return f;
}

std::vector<std::string> numbered(std::size_t count, std::size_t first) {
  std::vector<std::string> out;
  for (std::size_t k = 0; k < count; ++k) out.push_back(std::to_string(first + k));
  return out;
}

}  // namespace

std::size_t GofFamily::inside_count() const {
  return static_cast<std::size_t>(std::count(inside.begin(), inside.end(), true));
}

std::size_t GofReport::coordinate_count() const {
  std::size_t total = 0;
  for (const auto& f : families) total += f.size();
  return total;
}

double GofReport::fraction_inside() const {
  std::size_t in = 0;
  for (const auto& f : families) in += f.inside_count();
  const std::size_t total = coordinate_count();
  return total ? static_cast<double>(in) / static_cast<double>(total) : 1.0;
}

const GofFamily* GofReport::find(const std::string& name) const {
  for (const auto& f : families) {
    if (f.name == name) return &f;
  }
  return nullptr;
}

std::vector<double> indegree_distribution(const DirectedGraph& g) {
  const auto h = degree_histograms(g);
  return std::vector<double>(h.in.begin(), h.in.end());
}

std::vector<double> outdegree_distribution(const DirectedGraph& g) {
  const auto h = degree_histograms(g);
  return std::vector<double>(h.out.begin(), h.out.end());
}

std::vector<double> esp_distribution(const DirectedGraph& g) {
  std::vector<double> out(1, 0.0);
  for (const auto& [u, v] : g.edges()) {
    const std::size_t sp = shared_partners_otp(g, u, v);
    if (sp >= out.size()) out.resize(sp + 1, 0.0);
    out[sp] += 1.0;
  }
  return out;
}

std::vector<double> geodesic_distribution(const DirectedGraph& g) {
  const std::size_t n = g.node_count();
  if (n < 2) return {0.0};
  std::vector<double> out(n, 0.0);  // distances 1..n-1, then unreachable
  std::vector<std::size_t> dist(n);
  std::vector<Node> queue(n);
  constexpr std::size_t kUnseen = std::numeric_limits<std::size_t>::max();
  for (Node s = 0; s < n; ++s) {
    std::fill(dist.begin(), dist.end(), kUnseen);
    dist[s] = 0;
    std::size_t head = 0;
    std::size_t tail = 0;
    queue[tail++] = s;
    std::size_t reached = 0;
    while (head < tail) {
      const Node u = queue[head++];
      for (Node v : g.out_neighbors(u)) {
        if (dist[v] != kUnseen) continue;
        dist[v] = dist[u] + 1;
        out[dist[v] - 1] += 1.0;
        ++reached;
        queue[tail++] = v;
      }
    }
    out[n - 1] += static_cast<double>(n - 1 - reached);
  }
  return out;
}

double sample_quantile(const std::vector<double>& sorted, double p) {
  if (sorted.empty()) return std::numeric_limits<double>::quiet_NaN();
  const double h = (static_cast<double>(sorted.size()) - 1.0) * p;
  const auto lo = static_cast<std::size_t>(std::floor(h));
  if (lo + 1 >= sorted.size()) return sorted.back();
  return sorted[lo] + (h - static_cast<double>(lo)) * (sorted[lo + 1] - sorted[lo]);
}

GofReport gof_run(const DirectedGraph& g, const Model& model, const FitResult& fit, const SamplerConfig& config) {
  if (!fit.converged) throw Error(ErrorCode::NotConverged, "gof_run", "fit did not converge");
  if (fit.theta.size() != model.size()) {
    throw Error(ErrorCode::DimensionMismatch, "gof_run", "fit has a different number of terms than the model");
  }
  const auto samples = simulate(model, fit.theta, config, g);

  struct Aux {
    std::vector<double> in, out, esp, dist;
  };
  auto aux = [](const DirectedGraph& h) {
    return Aux{indegree_distribution(h), outdegree_distribution(h), esp_distribution(h), geodesic_distribution(h)};
  };
  Aux obs = aux(g);
  std::vector<Aux> sims;
  sims.reserve(samples.size());
  for (const auto& s : samples) sims.push_back(aux(s.graph));

  std::size_t len_in = obs.in.size();
  std::size_t len_out = obs.out.size();
  std::size_t len_esp = obs.esp.size();
  // Finite distances: trim to the largest distance seen anywhere; last entry is unreachable.
  auto max_finite = [](const std::vector<double>& d) {
    std::size_t m = 0;
    for (std::size_t k = 0; k + 1 < d.size(); ++k) {
      if (d[k] > 0.0) m = k + 1;
    }
    return m;
  };
  std::size_t len_dist = max_finite(obs.dist);
  for (const auto& s : sims) {
    len_in = std::max(len_in, s.in.size());
    len_out = std::max(len_out, s.out.size());
    len_esp = std::max(len_esp, s.esp.size());
    len_dist = std::max(len_dist, max_finite(s.dist));
  }
  auto trim_dist = [len_dist](const std::vector<double>& d) {
    std::vector<double> out(d.begin(), d.begin() + static_cast<std::ptrdiff_t>(len_dist));
    out.push_back(d.back());
    return out;
  };

  pad_to(obs.in, len_in);
  pad_to(obs.out, len_out);
  pad_to(obs.esp, len_esp);
  std::vector<std::vector<double>> s_in, s_out, s_esp, s_dist, s_model;
  for (auto& s : sims) {
    pad_to(s.in, len_in);
    pad_to(s.out, len_out);
    pad_to(s.esp, len_esp);
    s_in.push_back(std::move(s.in));
    s_out.push_back(std::move(s.out));
    s_esp.push_back(std::move(s.esp));
    s_dist.push_back(trim_dist(s.dist));
  }
  for (const auto& s : samples) s_model.push_back(s.stats);

  auto dist_labels = numbered(len_dist, 1);
  dist_labels.push_back("Inf");

  GofReport report;
  report.families.push_back(assemble(kFamilyNames[0], numbered(len_in, 0), obs.in, s_in));
  report.families.push_back(assemble(kFamilyNames[1], numbered(len_out, 0), obs.out, s_out));
  report.families.push_back(assemble(kFamilyNames[2], numbered(len_esp, 0), obs.esp, s_esp));
  report.families.push_back(assemble(kFamilyNames[3], dist_labels, trim_dist(obs.dist), s_dist));
  report.families.push_back(assemble(kFamilyNames[4], model.spec().names(), model.statistics(g), s_model));
  return report;
}

std::string gof_family_csv(const GofFamily& family) {
  std::string out = "coordinate,observed,q025,q25,q50,q75,q975,inside\n";
  for (std::size_t c = 0; c < family.size(); ++c) {
    out += csv_escape(family.coordinates[c]);
    out += ',' + number(family.observed[c]);
    for (double q : family.quantiles[c]) out += ',' + number(q);
    out += family.inside[c] ? ",true\n" : ",false\n";
  }
  return out;
}

GofFamily parse_gof_family_csv(const std::string& name, const std::string& text) {
  const auto rows = read_csv(text);
  if (rows.empty() || rows[0].size() != 8 || rows[0][0] != "coordinate") {
    throw Error(ErrorCode::Parse, "parse_gof_family_csv", name + ": missing or malformed header");
  }
  GofFamily f;
  f.name = name;
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const auto& row = rows[r];
    if (row.size() != 8) {
      throw Error(ErrorCode::Parse, "parse_gof_family_csv", name + ": row " + std::to_string(r + 1) + " has " +
                                                                 std::to_string(row.size()) + " fields");
    }
    try {
      f.coordinates.push_back(row[0]);
      f.observed.push_back(std::stod(row[1]));
      std::array<double, 5> q{};
      for (std::size_t k = 0; k < 5; ++k) q[k] = std::stod(row[2 + k]);
      f.quantiles.push_back(q);
    } catch (const std::exception&) {
      throw Error(ErrorCode::Parse, "parse_gof_family_csv", name + ": row " + std::to_string(r + 1) + " is not numeric");
    }
    if (row[7] != "true" && row[7] != "false") {
      throw Error(ErrorCode::Parse, "parse_gof_family_csv", name + ": inside flag must be true/false");
    }
    f.inside.push_back(row[7] == "true");
  }
  return f;
}

std::string gof_family_svg(const GofFamily& family) {
  constexpr double kWidth = 720.0;
  constexpr double kHeight = 360.0;
  constexpr double kMargin = 48.0;
  const std::size_t len = family.size();
  double lo = 0.0;
  double hi = 1.0;
  for (std::size_t c = 0; c < len; ++c) {
    lo = std::min({lo, family.observed[c], family.quantiles[c][0]});
    hi = std::max({hi, family.observed[c], family.quantiles[c][4]});
  }
  const double span = hi > lo ? hi - lo : 1.0;
  const double slot = len ? (kWidth - 2 * kMargin) / static_cast<double>(len) : 1.0;
  auto x_at = [&](std::size_t c) { return kMargin + slot * (static_cast<double>(c) + 0.5); };
  auto y_at = [&](double v) { return kHeight - kMargin - (v - lo) / span * (kHeight - 2 * kMargin); };
  auto fmt = [](double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return std::string(buf);
  };

  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight
     << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight << "\">\n";
  os << "  <title>Goodness of fit: " << family.name << "</title>\n";
  os << "  <rect x=\"0\" y=\"0\" width=\"" << kWidth << "\" height=\"" << kHeight << "\" fill=\"white\"/>\n";
  os << "  <text x=\"" << kMargin << "\" y=\"24\" font-family=\"sans-serif\" font-size=\"14\">" << family.name
     << " (" << family.inside_count() << "/" << len << " inside 95% envelope)</text>\n";
  const double box_w = std::max(1.0, slot * 0.6);
  for (std::size_t c = 0; c < len; ++c) {
    const auto& q = family.quantiles[c];
    const double x = x_at(c);
    os << "  <g class=\"envelope\">";
    os << "<line x1=\"" << fmt(x) << "\" y1=\"" << fmt(y_at(q[0])) << "\" x2=\"" << fmt(x) << "\" y2=\""
       << fmt(y_at(q[4])) << "\" stroke=\"#888\"/>";
    os << "<rect x=\"" << fmt(x - box_w / 2) << "\" y=\"" << fmt(y_at(q[3])) << "\" width=\"" << fmt(box_w)
       << "\" height=\"" << fmt(std::max(0.5, y_at(q[1]) - y_at(q[3]))) << "\" fill=\"#ddd\" stroke=\"#666\"/>";
    os << "<line x1=\"" << fmt(x - box_w / 2) << "\" y1=\"" << fmt(y_at(q[2])) << "\" x2=\"" << fmt(x + box_w / 2)
       << "\" y2=\"" << fmt(y_at(q[2])) << "\" stroke=\"#333\"/>";
    os << "</g>\n";
  }
  os << "  <polyline class=\"observed\" fill=\"none\" stroke=\"black\" stroke-width=\"1.5\" points=\"";
  for (std::size_t c = 0; c < len; ++c) {
    if (c) os << ' ';
    os << fmt(x_at(c)) << ',' << fmt(y_at(family.observed[c]));
  }
  os << "\"/>\n";
  for (std::size_t c = 0; c < len; ++c) {
    os << "  <text x=\"" << fmt(x_at(c)) << "\" y=\"" << fmt(kHeight - kMargin + 14)
       << "\" font-family=\"sans-serif\" font-size=\"9\" text-anchor=\"middle\">" << family.coordinates[c]
       << "</text>\n";
  }
  os << "</svg>\n";
  return os.str();
}

std::vector<std::string> render_gof(const GofReport& report, const std::string& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw Error(ErrorCode::Io, "render_gof", "cannot create " + dir + ": " + ec.message());
  std::vector<std::string> written;
  for (const auto& f : report.families) {
    const std::string base = (std::filesystem::path(dir) / ("gof_" + f.name)).string();
    write_file(base + ".csv", gof_family_csv(f));
    write_file(base + ".svg", gof_family_svg(f));
    written.push_back(base + ".csv");
    written.push_back(base + ".svg");
  }
  return written;
}

GofReport read_gof(const std::string& dir) {
  GofReport report;
  for (const char* name : kFamilyNames) {
    const auto path = std::filesystem::path(dir) / (std::string("gof_") + name + ".csv");
    if (!std::filesystem::exists(path)) continue;
    report.families.push_back(parse_gof_family_csv(name, read_file(path.string())));
  }
  return report;
}

}  // namespace rtergm
