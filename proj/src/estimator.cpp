#include "rtergm/estimator.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <limits>
#include "json.hpp"
#include <sstream>
#include <unordered_map>

namespace rtergm {

using Eigen::MatrixXd;
using Eigen::VectorXd;
using json = nlohmann::ordered_json;

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double softplus(double x) { return x > 0.0 ? x + std::log1p(std::exp(-x)) : std::log1p(std::exp(x)); }

double logistic(double x) {
  if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
  const double e = std::exp(x);
  return e / (1.0 + e);
}

// Unique change-statistic rows with dyad counts and edge counts.
struct Design {
  std::size_t k = 0;
  std::vector<double> x;       // rows * k, row-major
  std::vector<double> total;   // dyads sharing the row
  std::vector<double> events;  // of which are edges

  std::size_t rows() const { return total.size(); }
  const double* row(std::size_t r) const { return x.data() + r * k; }
};

Design build_design(const DirectedGraph& g, const Model& model) {
  Design d;
  d.k = model.size();
  const std::size_t n = g.node_count();
  std::vector<double> buf(d.k);
  std::unordered_map<std::string, std::size_t> index;
  std::string key(d.k * sizeof(double), '\0');
  for (Node i = 0; i < n; ++i) {
    for (Node j = 0; j < n; ++j) {
      if (i == j) continue;
      model.change_statistics(g, i, j, buf);
      for (double& v : buf) {
        if (v == 0.0) v = 0.0;  // fold -0.0 so equal rows hash equally
      }
      std::memcpy(key.data(), buf.data(), key.size());
      auto [it, inserted] = index.try_emplace(key, d.total.size());
      if (inserted) {
        d.x.insert(d.x.end(), buf.begin(), buf.end());
        d.total.push_back(0.0);
        d.events.push_back(0.0);
      }
      d.total[it->second] += 1.0;
      if (g.has_edge(i, j)) d.events[it->second] += 1.0;
    }
  }
  return d;
}

double design_loglik(const Design& d, const VectorXd& theta) {
  double ll = 0.0;
  for (std::size_t r = 0; r < d.rows(); ++r) {
    double eta = 0.0;
    const double* x = d.row(r);
    for (std::size_t c = 0; c < d.k; ++c) eta += x[c] * theta[static_cast<Eigen::Index>(c)];
    ll += d.events[r] * eta - d.total[r] * softplus(eta);
  }
  return ll;
}

void design_derivatives(const Design& d, const VectorXd& theta, VectorXd& grad, MatrixXd& info) {
  const auto k = static_cast<Eigen::Index>(d.k);
  grad.setZero(k);
  info.setZero(k, k);
  for (std::size_t r = 0; r < d.rows(); ++r) {
    const Eigen::Map<const VectorXd> x(d.row(r), k);
    const double p = logistic(x.dot(theta));
    grad.noalias() += (d.events[r] - d.total[r] * p) * x;
    info.noalias() += (d.total[r] * p * (1.0 - p)) * (x * x.transpose());
  }
}

std::string term_name(const Model& model, Eigen::Index k) {
  return model.spec().terms[static_cast<std::size_t>(k)].name();
}

// Rank check on the correlation-scaled information matrix.
void check_identifiable(const MatrixXd& info, const Model& model, const char* operation) {
  const Eigen::Index k = info.rows();
  VectorXd scale(k);
  for (Eigen::Index c = 0; c < k; ++c) {
    if (!(info(c, c) > 0.0)) {
      throw Error(ErrorCode::Singular, operation,
                  "term '" + term_name(model, c) + "' has no variation across dyads");
    }
    scale[c] = 1.0 / std::sqrt(info(c, c));
  }
  const MatrixXd corr = scale.asDiagonal() * info * scale.asDiagonal();
  Eigen::SelfAdjointEigenSolver<MatrixXd> eig(corr);
  const double lo = eig.eigenvalues()[0];
  if (!(lo > 1e-10 * std::max(1.0, eig.eigenvalues()[k - 1]))) {
    Eigen::Index worst = 0;
    eig.eigenvectors().col(0).cwiseAbs().maxCoeff(&worst);
    throw Error(ErrorCode::Singular, operation,
                "information matrix is singular; term '" + term_name(model, worst) + "' is collinear with others");
  }
}

std::vector<double> to_std(const VectorXd& v) { return std::vector<double>(v.data(), v.data() + v.size()); }

}  // namespace

std::string_view to_string(FitMethod method) { return method == FitMethod::MPLE ? "MPLE" : "MCMLE"; }

double odds_ratio(double beta) { return std::exp(beta); }

double wald_p_value(double estimate, double std_error) {
  if (!(std_error > 0.0) || !std::isfinite(std_error)) return kNaN;
  return std::erfc(std::abs(estimate / std_error) / std::sqrt(2.0));
}

void finalize_fit(FitResult& fit) {
  const std::size_t k = fit.theta.size();
  fit.odds_ratios.resize(k);
  fit.p_values.resize(k);
  fit.std_errors.resize(k, kNaN);
  for (std::size_t c = 0; c < k; ++c) {
    fit.odds_ratios[c] = odds_ratio(fit.theta[c]);
    fit.p_values[c] = wald_p_value(fit.theta[c], fit.std_errors[c]);
  }
  const double kk = static_cast<double>(k);
  fit.aic = 2.0 * kk - 2.0 * fit.log_lik;
  fit.bic = kk * std::log(static_cast<double>(fit.n_obs)) - 2.0 * fit.log_lik;
}

// ---------------------------------------------------------------------------
// MPLE

FitResult mple(const DirectedGraph& g, const Model& model, const MpleOptions& options) {
  if (g.node_count() < 3) {
    throw Error(ErrorCode::TooFewNodes, "mple", "need at least 3 nodes, got " + std::to_string(g.node_count()));
  }
  if (g.node_count() != model.node_count()) {
    throw Error(ErrorCode::DimensionMismatch, "mple", "graph and node table sizes differ");
  }
  const Design design = build_design(g, model);
  const auto k = static_cast<Eigen::Index>(model.size());

  VectorXd theta = VectorXd::Zero(k);
  VectorXd grad;
  MatrixXd info;
  design_derivatives(design, theta, grad, info);
  check_identifiable(info, model, "mple");

  double ll = design_loglik(design, theta);
  bool converged = false;
  int it = 0;
  for (; it < options.max_iterations; ++it) {
    if (!grad.allFinite() || !info.allFinite()) break;
    Eigen::LDLT<MatrixXd> solver(info);
    if (solver.info() != Eigen::Success || !solver.isPositive()) {
      throw Error(ErrorCode::Singular, "mple", "information matrix is not positive definite");
    }
    const VectorXd step = solver.solve(grad);
    // A vanishing gradient alone is not enough: under separation the fitted probabilities
    // underflow while Newton keeps proposing unit steps toward infinity.
    if (grad.lpNorm<Eigen::Infinity>() < options.gradient_tolerance && step.lpNorm<Eigen::Infinity>() < 1e-6) {
      converged = true;
      break;
    }
    double t = 1.0;
    VectorXd candidate = theta + step;
    double cand_ll = design_loglik(design, candidate);
    while (!(cand_ll >= ll - 1e-12 * std::abs(ll)) && t > 1e-8) {
      t *= 0.5;
      candidate = theta + t * step;
      cand_ll = design_loglik(design, candidate);
    }
    theta = candidate;
    ll = cand_ll;
    design_derivatives(design, theta, grad, info);
    if (theta.cwiseAbs().maxCoeff() > 50.0) break;
    // Newton has reached machine precision even if rounding keeps the gradient above tolerance.
    if ((t * step).lpNorm<Eigen::Infinity>() < 1e-12 && grad.lpNorm<Eigen::Infinity>() < 1e-6) {
      converged = true;
      ++it;
      break;
    }
  }
  if (!converged) {
    Eigen::Index worst = 0;
    if (theta.allFinite()) {
      theta.cwiseAbs().maxCoeff(&worst);
    } else {
      for (Eigen::Index c = 0; c < k; ++c) {
        if (!std::isfinite(theta[c])) {
          worst = c;
          break;
        }
      }
    }
    throw Error(ErrorCode::Separation, "mple",
                "estimates drift without bound (complete separation); offending term '" + term_name(model, worst) +
                    "'");
  }

  FitResult fit;
  fit.method = FitMethod::MPLE;
  fit.term_names = model.spec().names();
  fit.theta = to_std(theta);
  Eigen::LDLT<MatrixXd> solver(info);
  const MatrixXd cov = solver.solve(MatrixXd::Identity(k, k));
  fit.std_errors.resize(static_cast<std::size_t>(k));
  for (Eigen::Index c = 0; c < k; ++c) fit.std_errors[static_cast<std::size_t>(c)] = std::sqrt(cov(c, c));
  fit.log_lik = ll;
  fit.log_lik_basis = "pseudo-likelihood";
  fit.n_obs = g.dyad_count();
  fit.iterations = it;
  fit.converged = true;
  fit.approximate_std_errors = !model.spec().dyad_independent();
  finalize_fit(fit);
  return fit;
}

FitResult mple(const DirectedGraph& g, const NodeTable& nodes, const ModelSpec& spec, const MpleOptions& options) {
  return mple(g, Model(spec, nodes), options);
}

// ---------------------------------------------------------------------------
// MC-MLE

namespace {

struct Weighted {
  double log_mean_exp = 0.0;  // log (1/M) sum exp(delta . d_m)
  double ess = 0.0;
  VectorXd mean;
  MatrixXd cov;
};

Weighted weigh(const MatrixXd& d, const VectorXd& delta, bool with_moments) {
  const Eigen::Index m = d.rows();
  const VectorXd eta = d * delta;
  const double top = eta.maxCoeff();
  const VectorXd w = (eta.array() - top).exp().matrix();
  const double sum = w.sum();
  Weighted out;
  out.log_mean_exp = top + std::log(sum / static_cast<double>(m));
  out.ess = sum * sum / w.squaredNorm();
  if (with_moments) {
    const VectorXd p = w / sum;
    out.mean = d.transpose() * p;
    const MatrixXd centered = d.rowwise() - out.mean.transpose();
    out.cov = centered.transpose() * p.asDiagonal() * centered;
  }
  return out;
}

// Maximizes -log mean exp(delta . d_m) by damped Newton, keeping the importance
// sample's effective size above min_ess.
VectorXd maximize_ratio(const MatrixXd& d, double min_ess) {
  const Eigen::Index k = d.cols();
  VectorXd delta = VectorXd::Zero(k);
  double objective = 0.0;
  for (int it = 0; it < 100; ++it) {
    const Weighted cur = weigh(d, delta, true);
    Eigen::LDLT<MatrixXd> solver(cur.cov);
    if (solver.info() != Eigen::Success || !solver.isPositive()) break;
    const VectorXd step = -solver.solve(cur.mean);
    if (!step.allFinite()) break;
    double t = 1.0;
    bool accepted = false;
    for (int h = 0; h < 40; ++h, t *= 0.5) {
      const VectorXd cand = delta + t * step;
      const Weighted w = weigh(d, cand, false);
      if (w.ess >= min_ess && -w.log_mean_exp > objective) {
        delta = cand;
        objective = -w.log_mean_exp;
        accepted = true;
        break;
      }
    }
    if (!accepted || (t * step).lpNorm<Eigen::Infinity>() < 1e-10) break;
  }
  return delta;
}

// Effective sample size of a chain from the worst lag-1 autocorrelation.
double chain_ess(const MatrixXd& d) {
  const Eigen::Index m = d.rows();
  if (m < 3) return static_cast<double>(m);
  double worst_tau = 1.0;
  for (Eigen::Index c = 0; c < d.cols(); ++c) {
    const VectorXd col = d.col(c).array() - d.col(c).mean();
    const double var = col.squaredNorm();
    if (!(var > 0.0)) continue;
    const double rho = std::clamp(col.head(m - 1).dot(col.tail(m - 1)) / var, 0.0, 0.99);
    worst_tau = std::max(worst_tau, (1.0 + rho) / (1.0 - rho));
  }
  return static_cast<double>(m) / worst_tau;
}

// Median of chi-square with k degrees of freedom (Wilson-Hilferty).
double chi2_median(double k) {
  const double a = 2.0 / (9.0 * k);
  return k * std::pow(1.0 - a, 3.0);
}

double path_sampling_loglik(const DirectedGraph& g, const Model& model, const VectorXd& theta,
                            const StatVector& observed, const SamplerConfig& config, const McmleOptions& options) {
  const auto k = static_cast<Eigen::Index>(model.size());
  const double dyads = static_cast<double>(g.dyad_count());
  VectorXd ref = VectorXd::Zero(k);
  double log_z_ref = dyads * std::log(2.0);
  for (Eigen::Index c = 0; c < k; ++c) {
    if (model.spec().terms[static_cast<std::size_t>(c)].kind != TermKind::Edges) continue;
    const double e = static_cast<double>(g.edge_count());
    if (e > 0.0 && e < dyads) {
      ref[c] = std::log(e / (dyads - e));
      log_z_ref = dyads * softplus(ref[c]);
    }
    break;
  }
  const VectorXd direction = theta - ref;
  const std::size_t bridges = options.loglik_bridges;
  double integral = 0.0;
  for (std::size_t b = 0; b < bridges; ++b) {
    const double t = (static_cast<double>(b) + 0.5) / static_cast<double>(bridges);
    const VectorXd at = ref + t * direction;
    SamplerConfig c = config;
    c.seed = derive_seed(config.seed, 100000 + b);
    c.sample_size = options.bridge_sample_size;
    const auto samples = simulate_statistics(model, to_std(at), c, g);
    VectorXd mean = VectorXd::Zero(k);
    for (const auto& s : samples) mean += Eigen::Map<const VectorXd>(s.data(), k);
    mean /= static_cast<double>(samples.size());
    integral += direction.dot(mean) / static_cast<double>(bridges);
  }
  const double log_z = log_z_ref + integral;
  return theta.dot(Eigen::Map<const VectorXd>(observed.data(), k)) - log_z;
}

}  // namespace

double mcmle_objective(std::span<const double> delta, std::span<const double> observed,
                       std::span<const StatVector> samples) {
  const auto k = static_cast<Eigen::Index>(observed.size());
  if (static_cast<Eigen::Index>(delta.size()) != k || samples.empty()) {
    throw Error(ErrorCode::DimensionMismatch, "mcmle_objective", "delta/observed/sample sizes disagree");
  }
  MatrixXd d(static_cast<Eigen::Index>(samples.size()), k);
  for (std::size_t m = 0; m < samples.size(); ++m) {
    for (Eigen::Index c = 0; c < k; ++c) {
      d(static_cast<Eigen::Index>(m), c) = samples[m][static_cast<std::size_t>(c)] - observed[static_cast<std::size_t>(c)];
    }
  }
  const Eigen::Map<const VectorXd> dv(delta.data(), k);
  if (dv.isZero(0.0)) return 0.0;
  return -weigh(d, dv, false).log_mean_exp;
}

FitResult mcmle(const DirectedGraph& g, const Model& model, const FitResult& init, const SamplerConfig& config,
                const McmleOptions& options) {
  config.validate();
  const auto k = static_cast<Eigen::Index>(model.size());
  if (init.theta.size() != model.size()) {
    throw Error(ErrorCode::DimensionMismatch, "mcmle", "initial theta length differs from model size");
  }
  for (double v : init.theta) {
    if (!std::isfinite(v)) throw Error(ErrorCode::InvalidConfig, "mcmle", "initial theta is not finite");
  }
  const StatVector observed = model.statistics(g);
  const Eigen::Map<const VectorXd> obs(observed.data(), k);

  FitResult fit;
  fit.method = FitMethod::MCMLE;
  fit.term_names = model.spec().names();
  fit.n_obs = g.dyad_count();
  fit.log_lik_basis = "Monte Carlo path sampling";

  VectorXd theta = Eigen::Map<const VectorXd>(init.theta.data(), k);
  DirectedGraph current = g;
  int outside_streak = 0;
  const double min_ess = options.min_ess_fraction * static_cast<double>(config.sample_size);

  for (int outer = 1; outer <= options.max_outer; ++outer) {
    fit.iterations = outer;
    SamplerConfig c = config;
    c.seed = derive_seed(config.seed, static_cast<std::uint64_t>(outer));
    const auto samples = simulate_statistics(model, to_std(theta), c, current, &current);
    const auto m = static_cast<Eigen::Index>(samples.size());
    MatrixXd d(m, k);
    for (Eigen::Index r = 0; r < m; ++r) d.row(r) = Eigen::Map<const VectorXd>(samples[static_cast<std::size_t>(r)].data(), k).transpose() - obs.transpose();

    bool outside = false;
    for (Eigen::Index col = 0; col < k; ++col) {
      if (d.col(col).minCoeff() > 0.0 || d.col(col).maxCoeff() < 0.0) outside = true;
    }
    outside_streak = outside ? outside_streak + 1 : 0;
    if (outside_streak >= 2) {
      fit.theta = to_std(theta);
      fit.degeneracy_flag = true;
      fit.converged = false;
      fit.log_lik = kNaN;
      finalize_fit(fit);
      throw FitFailure(ErrorCode::DegenerateModel,
                       "observed statistics fall outside the simulated range for 2 consecutive iterations", fit);
    }

    const Weighted base = weigh(d, VectorXd::Zero(k), true);
    Eigen::LDLT<MatrixXd> base_solver(base.cov);
    if (base_solver.info() != Eigen::Success || !base_solver.isPositive()) {
      if (outside) continue;  // next iteration decides degeneracy
      fit.theta = to_std(theta);
      finalize_fit(fit);
      throw FitFailure(ErrorCode::Singular, "simulated statistics have a singular covariance", fit);
    }
    const double hotelling = chain_ess(d) * base.mean.dot(base_solver.solve(base.mean));

    const VectorXd delta = maximize_ratio(d, min_ess);
    theta += delta;

    const bool small_step = delta.lpNorm<Eigen::Infinity>() < options.tolerance;
    const bool within_noise = !outside && hotelling < chi2_median(static_cast<double>(k));
    if (small_step || within_noise) {
      const Weighted at = weigh(d, delta, true);
      Eigen::LDLT<MatrixXd> solver(at.cov);
      const MatrixXd cov = solver.solve(MatrixXd::Identity(k, k));
      fit.std_errors.resize(static_cast<std::size_t>(k));
      for (Eigen::Index col = 0; col < k; ++col) {
        fit.std_errors[static_cast<std::size_t>(col)] = cov(col, col) > 0.0 ? std::sqrt(cov(col, col)) : kNaN;
      }
      fit.theta = to_std(theta);
      fit.converged = true;
      fit.log_lik = options.loglik_bridges > 0
                        ? path_sampling_loglik(g, model, theta, observed, config, options)
                        : kNaN;
      finalize_fit(fit);
      return fit;
    }
  }
  fit.theta = to_std(theta);
  fit.converged = false;
  fit.log_lik = kNaN;
  finalize_fit(fit);
  throw FitFailure(ErrorCode::NonConvergence,
                   "no convergence after " + std::to_string(options.max_outer) + " outer iterations", fit);
}

FitResult mcmle(const DirectedGraph& g, const Model& model, const SamplerConfig& config,
                const McmleOptions& options) {
  return mcmle(g, model, mple(g, model), config, options);
}

// ---------------------------------------------------------------------------
// Reporting

std::string significance_stars(double p) {
  if (!std::isfinite(p)) return "";
  if (p < 0.001) return "***";
  if (p < 0.01) return "**";
  if (p < 0.05) return "*";
  if (p < 0.10) return "†";
  return "";
}

std::string format_odds_ratio(double value) {
  if (!std::isfinite(value)) return "NA";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%#.4g", value);
  return buf;
}

namespace {

std::string fixed(double v, int digits) {
  if (!std::isfinite(v)) return "NA";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

std::string pad(const std::string& s, std::size_t width) {
  // Count UTF-8 code points so that the dagger does not skew alignment.
  std::size_t cps = 0;
  for (unsigned char c : s) cps += (c & 0xC0) != 0x80;
  return cps >= width ? s + " " : s + std::string(width - cps, ' ');
}

json number_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

double number_or_nan(const json& v) { return v.is_null() ? kNaN : v.get<double>(); }

}  // namespace

std::string report_table(const FitResult& fit, const ModelSpec& spec, std::span<const std::string> labels) {
  const std::size_t k = fit.theta.size();
  std::vector<std::string> names(labels.begin(), labels.end());
  if (names.size() != k) names = spec.size() == k ? spec.display_labels() : fit.term_names;

  std::ostringstream os;
  os << "ERGM estimates (" << to_string(fit.method) << (fit.converged ? "" : ", NOT CONVERGED")
     << (fit.degeneracy_flag ? ", DEGENERATE" : "") << ")\n";
  std::size_t w = 10;
  for (const auto& nm : names) w = std::max(w, nm.size() + 2);
  os << pad("Term", w) << pad("Estimate (SE)", 26) << pad("OR", 12) << "p\n";
  for (std::size_t c = 0; c < k; ++c) {
    const std::string est = fixed(fit.theta[c], 3) + " (" + fixed(fit.std_errors[c], 3) + ")" +
                            significance_stars(fit.p_values[c]);
    const double p = fit.p_values[c];
    const std::string pstr = !std::isfinite(p) ? "NA" : (p < 0.001 ? "<0.001" : fixed(p, 3));
    os << pad(names[c], w) << pad(est, 26) << pad(format_odds_ratio(fit.odds_ratios[c]), 12) << pstr << '\n';
  }
  os << "AIC " << fixed(fit.aic, 1) << "   BIC " << fixed(fit.bic, 1) << "   (log-likelihood basis: "
     << fit.log_lik_basis << "; N = " << fit.n_obs << " dyads)\n";
  if (fit.approximate_std_errors) {
    os << "Standard errors are pseudo-likelihood approximations for a dyad-dependent model.\n";
  }
  os << "p-values: two-sided Wald. Follower covariate: " << fit.covariate_transform << ".\n";
  os << "Significance codes: *** p < 0.001, ** p < 0.01, * p < 0.05, † p < 0.10\n";
  return os.str();
}

std::string report_json(const FitResult& fit) {
  json j;
  j["method"] = std::string(to_string(fit.method));
  j["terms"] = fit.term_names;
  auto arr = [](const std::vector<double>& v) {
    json a = json::array();
    for (double x : v) a.push_back(number_or_null(x));
    return a;
  };
  j["theta"] = arr(fit.theta);
  j["std_errors"] = arr(fit.std_errors);
  j["odds_ratios"] = arr(fit.odds_ratios);
  j["p_values"] = arr(fit.p_values);
  j["p_value_basis"] = "Wald";
  j["log_lik"] = number_or_null(fit.log_lik);
  j["log_lik_basis"] = fit.log_lik_basis;
  j["aic"] = number_or_null(fit.aic);
  j["bic"] = number_or_null(fit.bic);
  j["n_obs"] = fit.n_obs;
  j["iterations"] = fit.iterations;
  j["converged"] = fit.converged;
  j["degeneracy_flag"] = fit.degeneracy_flag;
  j["approximate_std_errors"] = fit.approximate_std_errors;
  j["covariate_transform"] = fit.covariate_transform;
  return j.dump(2) + "\n";
}

FitResult fit_from_json(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::Parse, "fit_from_json", e.what());
  }
  try {
    FitResult fit;
    fit.method = j.at("method").get<std::string>() == "MCMLE" ? FitMethod::MCMLE : FitMethod::MPLE;
    fit.term_names = j.at("terms").get<std::vector<std::string>>();
    auto arr = [&](const char* key) {
      std::vector<double> v;
      for (const auto& x : j.at(key)) v.push_back(number_or_nan(x));
      return v;
    };
    fit.theta = arr("theta");
    fit.std_errors = arr("std_errors");
    fit.odds_ratios = arr("odds_ratios");
    fit.p_values = arr("p_values");
    fit.log_lik = number_or_nan(j.at("log_lik"));
    fit.log_lik_basis = j.at("log_lik_basis").get<std::string>();
    fit.aic = number_or_nan(j.at("aic"));
    fit.bic = number_or_nan(j.at("bic"));
    fit.n_obs = j.at("n_obs").get<std::size_t>();
    fit.iterations = j.at("iterations").get<int>();
    fit.converged = j.at("converged").get<bool>();
    fit.degeneracy_flag = j.at("degeneracy_flag").get<bool>();
    fit.approximate_std_errors = j.value("approximate_std_errors", false);
    fit.covariate_transform = j.value("covariate_transform", fit.covariate_transform);
    return fit;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::Parse, "fit_from_json", e.what());
  }
}

}  // namespace rtergm
