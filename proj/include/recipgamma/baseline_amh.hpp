#pragma once

#include "recipgamma/rng.hpp"

namespace recipgamma {

/// Unnormalized log target of a gamma-type shape parameter:
///   l(alpha) = (a0 - 1) ln alpha - b0 alpha + n (alpha ln alpha - ln G(alpha)) - alpha s_w
/// restricted to alpha > lower. For the t model s_w = sum_i (w_i - ln w_i),
/// which is at least n.
struct ShapeTarget {
  double a0 = 1.0;
  double b0 = 1.0;
  int n = 0;
  double s_w = 0.0;
  double lower = 0.0;
};

struct GammaApprox {
  double A = 1.0;
  double B = 1.0;
  int iterations_used = 0;
  bool converged = false;
};

struct AmhSettings {
  double eps = 1e-8;
  int max_iter = 10;
};

double log_target(double alpha, const ShapeTarget& t);
double log_target_d1(double alpha, const ShapeTarget& t);
double log_target_d2(double alpha, const ShapeTarget& t);

/// ln of the integral of x^{A-1} e^{-B x} over (lower, inf).
double truncated_gamma_log_normalizer(double A, double B, double lower);
/// Mean of Ga(A, B) restricted to (lower, inf).
double truncated_gamma_mean(double A, double B, double lower);

/// Osculating gamma: iterate A = 1 - mu^2 l''(mu), B = (A - 1)/mu - l'(mu) at
/// the (truncated) proposal mean mu until mu moves by less than eps relative.
GammaApprox fit_gamma_approx(const ShapeTarget& t, double eps = 1e-8, int max_iter = 10);

struct AmhResult {
  double alpha;
  double log_accept;
  bool accepted;
};

/// One independence MH step with the fitted gamma (truncated when lower > 0)
/// as proposal.
AmhResult amh_shape_step(double alpha_old, const ShapeTarget& t, const GammaApprox& approx, RngStream& rng);

}  // namespace recipgamma
