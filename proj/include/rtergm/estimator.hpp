#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "rtergm/error.hpp"
#include "rtergm/graph.hpp"
#include "rtergm/sampler.hpp"
#include "rtergm/terms.hpp"

namespace rtergm {

enum class FitMethod { MPLE, MCMLE };

std::string_view to_string(FitMethod method);

struct FitResult {
  FitMethod method = FitMethod::MPLE;
  std::vector<std::string> term_names;
  std::vector<double> theta;
  std::vector<double> std_errors;
  std::vector<double> odds_ratios;  // exp(theta)
  std::vector<double> p_values;     // two-sided Wald
  double log_lik = 0.0;
  /// "pseudo-likelihood" (MPLE) or "Monte Carlo path sampling" (MC-MLE).
  std::string log_lik_basis;
  double aic = 0.0;
  double bic = 0.0;
  std::size_t n_obs = 0;  // ordered dyads, n(n-1)
  int iterations = 0;
  bool converged = false;
  bool degeneracy_flag = false;
  /// True when the standard errors come from the pseudo-likelihood of a dyad-dependent model.
  bool approximate_std_errors = false;
  std::string covariate_transform = "log10(1 + followers), z-standardized over nodes";
};

/// Thrown by mcmle when it cannot produce a usable estimate; `partial()` holds the
/// state at failure (with degeneracy_flag set for DegenerateModel).
class FitFailure : public Error {
 public:
  FitFailure(ErrorCode code, const std::string& cause, FitResult partial)
      : Error(code, "mcmle", cause), partial_(std::move(partial)) {}
  const FitResult& partial() const noexcept { return partial_; }

 private:
  FitResult partial_;
};

double odds_ratio(double beta);
double wald_p_value(double estimate, double std_error);

/// Fills odds ratios, p-values, AIC and BIC from theta, std_errors, log_lik and n_obs.
void finalize_fit(FitResult& fit);

struct MpleOptions {
  double gradient_tolerance = 1e-8;
  int max_iterations = 100;
};

/// Logistic regression of edge indicators on change statistics (Newton/IRLS over
/// unique design rows). Exact MLE for dyad-independent specifications.
FitResult mple(const DirectedGraph& g, const Model& model, const MpleOptions& options = {});
FitResult mple(const DirectedGraph& g, const NodeTable& nodes, const ModelSpec& spec,
               const MpleOptions& options = {});

struct McmleOptions {
  int max_outer = 20;
  double tolerance = 1e-3;
  double min_ess_fraction = 0.1;
  /// Bridges for the path-sampling log-likelihood; 0 skips it (log_lik = NaN).
  std::size_t loglik_bridges = 16;
  std::uint64_t bridge_sample_size = 200;
};

/// -log( (1/M) sum_m exp(delta . (g_m - g_obs)) ), the Geyer-Thompson log-likelihood
/// ratio l(theta0 + delta) - l(theta0). Exactly zero at delta = 0.
double mcmle_objective(std::span<const double> delta, std::span<const double> observed,
                       std::span<const StatVector> samples);

/// Monte-Carlo MLE started at `init.theta`. Throws FitFailure (DegenerateModel,
/// NonConvergence).
FitResult mcmle(const DirectedGraph& g, const Model& model, const FitResult& init, const SamplerConfig& config,
                const McmleOptions& options = {});
/// Same, initialized at the MPLE.
FitResult mcmle(const DirectedGraph& g, const Model& model, const SamplerConfig& config,
                const McmleOptions& options = {});

/// "***" p < 0.001, "**" p < 0.01, "*" p < 0.05, "†" p < 0.10, "" otherwise.
std::string significance_stars(double p);
/// Four significant digits, trailing zeros kept: 15.21, 3.861, 1.000.
std::string format_odds_ratio(double value);

/// Coefficient table: "estimate (SE)stars", OR, p; then AIC/BIC with their basis.
/// `labels` may be empty (term display labels are used).
std::string report_table(const FitResult& fit, const ModelSpec& spec, std::span<const std::string> labels = {});
std::string report_json(const FitResult& fit);
FitResult fit_from_json(const std::string& json_text);

}  // namespace rtergm
