#include "recipgamma/baseline_amh.hpp"

#include <algorithm>
#include <cmath>

#include "recipgamma/dists.hpp"
#include "recipgamma/errors.hpp"
#include "recipgamma/special_fns.hpp"

namespace recipgamma {

double log_target(double alpha, const ShapeTarget& t) {
  require(alpha > 0.0 && std::isfinite(alpha), "log_target: alpha must be positive");
  const double n = t.n;
  return (t.a0 - 1.0) * std::log(alpha) - t.b0 * alpha + n * (alpha * std::log(alpha) - log_gamma(alpha)) -
         alpha * t.s_w;
}

double log_target_d1(double alpha, const ShapeTarget& t) {
  const double n = t.n;
  return (t.a0 - 1.0) / alpha - t.b0 + n * (std::log(alpha) + 1.0 - digamma(alpha)) - t.s_w;
}

double log_target_d2(double alpha, const ShapeTarget& t) {
  const double n = t.n;
  return -(t.a0 - 1.0) / (alpha * alpha) + n * (1.0 / alpha - trigamma(alpha));
}

double truncated_gamma_log_normalizer(double A, double B, double lower) {
  return log_gamma(A) - A * std::log(B) + log_gamma_q(A, B * lower);
}

double truncated_gamma_mean(double A, double B, double lower) {
  if (lower <= 0.0) return A / B;
  return A / B * std::exp(log_gamma_q(A + 1.0, B * lower) - log_gamma_q(A, B * lower));
}

GammaApprox fit_gamma_approx(const ShapeTarget& t, double eps, int max_iter) {
  require(eps > 0.0, "fit_gamma_approx: eps must be positive");
  require(max_iter >= 1, "fit_gamma_approx: max_iter must be positive");
  GammaApprox out;
  out.A = t.a0 + 0.5 * t.n;
  out.B = t.b0 + t.s_w - t.n;
  if (!(out.B > 0.0)) out.B = out.A / std::max(1.0, t.lower + 1.0);
  double mu = truncated_gamma_mean(out.A, out.B, t.lower);
  for (int it = 1; it <= max_iter; ++it) {
    out.iterations_used = it;
    const double A = 1.0 - mu * mu * log_target_d2(mu, t);
    const double B = (A - 1.0) / mu - log_target_d1(mu, t);
    if (!(A > 0.0 && B > 0.0 && std::isfinite(A) && std::isfinite(B))) {
      out.converged = false;
      return out;
    }
    out.A = A;
    out.B = B;
    const double next = truncated_gamma_mean(A, B, t.lower);
    const bool done = std::fabs(next / mu - 1.0) < eps;
    mu = next;
    if (done) {
      out.converged = true;
      return out;
    }
  }
  out.converged = false;
  return out;
}

AmhResult amh_shape_step(double alpha_old, const ShapeTarget& t, const GammaApprox& approx, RngStream& rng) {
  require(approx.A > 0.0 && approx.B > 0.0, "amh_shape_step: approximation must have A, B > 0");
  const double proposal = t.lower > 0.0 ? sample_truncated_gamma(rng, approx.A, approx.B, t.lower)
                                        : gamma(rng, approx.A, approx.B);
  // The truncated proposal's normalizer is the same for both states and cancels.
  auto log_q = [&](double x) { return (approx.A - 1.0) * std::log(x) - approx.B * x; };
  const double log_ratio = (log_target(proposal, t) - log_target(alpha_old, t)) - (log_q(proposal) - log_q(alpha_old));
  const double log_accept = std::min(0.0, log_ratio);
  const bool accepted = std::log(rng.uniform()) <= log_accept;
  return {accepted ? proposal : alpha_old, log_accept, accepted};
}

}  // namespace recipgamma
