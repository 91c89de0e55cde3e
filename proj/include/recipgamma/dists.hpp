#pragma once

#include <Eigen/Dense>
#include <cstdint>

#include "recipgamma/rng.hpp"

namespace recipgamma {

/// GIG(p, a, b): density proportional to x^{p-1} exp(-(a x + b / x) / 2).
struct GigParams {
  double p;
  double a;
  double b;
};

/// Power truncated normal: density proportional to xi^{c-1} exp(-a xi^2 + b xi) on (0, inf).
struct PtnParams {
  double c;
  double a;
  double b;
};

/// A beta draw kept in log space: log x and log(1 - x) are exact even when x
/// itself rounds to 0 or 1. `clamped` flags that rounding.
struct BetaLogDraw {
  double value;
  double log_value;
  double log1m_value;
  bool clamped;
};

double standard_normal(RngStream& rng);
double normal(RngStream& rng, double mean, double variance);
double exponential(RngStream& rng, double rate);

/// log of a Ga(shape, 1) draw; stays finite for tiny shapes.
double log_standard_gamma(RngStream& rng, double shape);
double gamma(RngStream& rng, double shape, double rate);
double inverse_gamma(RngStream& rng, double shape, double scale);

double beta(RngStream& rng, double a, double b);
BetaLogDraw beta_log(RngStream& rng, double a, double b);

std::uint64_t poisson(RngStream& rng, double lambda);
std::uint64_t binomial(RngStream& rng, std::uint64_t n, double p);

/// Returns log probabilities; exp of the result sums to 1.
Eigen::VectorXd dirichlet_log(RngStream& rng, const Eigen::Ref<const Eigen::VectorXd>& alpha);
Eigen::VectorXd dirichlet(RngStream& rng, const Eigen::Ref<const Eigen::VectorXd>& alpha);
Eigen::VectorXi multinomial(RngStream& rng, int trials, const Eigen::Ref<const Eigen::VectorXd>& probs);

/// loc + scale * T_df.
double student_t(RngStream& rng, double loc, double scale, double df);
double inverse_gaussian(RngStream& rng, double mu, double lambda);

double sample_truncated_gamma(RngStream& rng, double shape, double rate, double lower);
double sample_gig(RngStream& rng, const GigParams& params);
/// Exact rejection sampler, requires c >= 1. If `proposals` is given, the
/// number of envelope proposals used is added to it.
double sample_ptn(RngStream& rng, const PtnParams& params, long* proposals = nullptr);

Eigen::MatrixXd sample_wishart(RngStream& rng, double df, const Eigen::Ref<const Eigen::MatrixXd>& scale);

}  // namespace recipgamma
