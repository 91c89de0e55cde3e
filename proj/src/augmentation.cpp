#include "recipgamma/augmentation.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "recipgamma/errors.hpp"

namespace recipgamma {

void sample_beta_latents(double xi, int m, RngStream& rng, BetaLatents& out) {
  require(xi > 0.0 && std::isfinite(xi), "beta latents: xi must be positive");
  require(m >= 1, "beta latents: m must be >= 1");
  out.m = m;
  out.rho.resize(m - 1);
  out.log_inv_rho.resize(m - 1);
  out.log_sum = 0.0;
  const double dm = static_cast<double>(m);
  for (int j = 2; j <= m; ++j) {
    const BetaLogDraw draw = beta_log(rng, xi + (j - 1) / dm, (m - j + 1) / dm);
    out.rho[j - 2] = draw.value;
    out.log_inv_rho[j - 2] = -draw.log_value;
    out.log_sum -= draw.log_value;
    out.clamped += draw.clamped;
  }
}

BetaLatents sample_beta_latents(double xi, int m, RngStream& rng) {
  BetaLatents out;
  sample_beta_latents(xi, m, rng, out);
  return out;
}

double sample_power_latent(double xi, int m, RngStream& rng) {
  require(xi > 0.0 && std::isfinite(xi), "power latent: xi must be positive");
  const double mx = m * xi;
  return gamma(rng, mx, mx * xi);
}

double sample_log_power_latent(double xi, int m, RngStream& rng) {
  require(xi > 0.0 && std::isfinite(xi), "power latent: xi must be positive");
  const double mx = m * xi;
  return log_standard_gamma(rng, mx) - std::log(mx * xi);
}

PtnParams ptn_params_from_conditional(double a3, double b3, int m, double w) {
  require(w > 0.0, "ptn_params_from_conditional: w must be positive");
  const double dm = static_cast<double>(m);
  return {a3 + 0.5, dm * w, dm * std::log(w) + dm - b3};
}

KLevelLatents sample_k_latents(double xi, int m, int K, RngStream& rng) {
  require(xi > 0.0 && std::isfinite(xi), "k latents: xi must be positive");
  require(K >= 0 && K <= 10, "k latents: K must be in [0, 10]");
  KLevelLatents out{K, Eigen::VectorXd(K)};
  const double mx = m * xi;
  const double rate = std::ldexp(mx, K);
  for (int k = 1; k <= K; ++k) out.t[k - 1] = gamma(rng, std::ldexp(mx, k - 1) + 0.5, rate);
  return out;
}

TiltLatents tilt_constants(const PtnParams& ptn, TiltVariant variant) {
  TiltLatents out;
  out.variant = variant;
  out.M = 1.0 + std::max(0.0, ptn.b);
  out.b_prime = out.M - ptn.b;
  return out;
}

TiltLatents sample_tilt_poisson(double xi, const PtnParams& ptn, RngStream& rng) {
  require(xi > 0.0 && std::isfinite(xi), "tilt: xi must be positive");
  TiltLatents out = tilt_constants(ptn, TiltVariant::poisson);
  out.zeta = static_cast<long>(poisson(rng, out.M * xi));
  const double s = out.b_prime * xi;
  out.eta = sample_gig(rng, {0.5, 1.0, s * s});
  return out;
}

TiltLatents sample_tilt_normal(double xi, const PtnParams& ptn, RngStream& rng) {
  require(xi > 0.0 && std::isfinite(xi), "tilt: xi must be positive");
  TiltLatents out = tilt_constants(ptn, TiltVariant::normal);
  const double spread = 2.0 * out.M * xi;
  out.theta = normal(rng, spread, spread);
  const double s = out.b_prime * xi + out.theta * out.theta / (4.0 * out.M * xi);
  out.eta = sample_gig(rng, {0.5, 1.0, s * s});
  return out;
}

GammaParams tilt_poisson_update(const TiltLatents& tilt, const PtnParams& ptn) {
  return {0.5 * (static_cast<double>(tilt.zeta) + ptn.c), ptn.a + tilt.b_prime * tilt.b_prime / (2.0 * tilt.eta)};
}

GigParams tilt_normal_update(const TiltLatents& tilt, const PtnParams& ptn) {
  const double theta2 = tilt.theta * tilt.theta;
  return {0.5 * ptn.c - 0.25, 2.0 * ptn.a + tilt.b_prime * tilt.b_prime / tilt.eta,
          theta2 * theta2 / (16.0 * tilt.M * tilt.M * tilt.eta)};
}

double sample_shape_given_tilt(const TiltLatents& tilt, const PtnParams& ptn, RngStream& rng) {
  double u;
  if (tilt.variant == TiltVariant::poisson) {
    const GammaParams g = tilt_poisson_update(tilt, ptn);
    u = gamma(rng, g.shape, g.rate);
  } else {
    u = sample_gig(rng, tilt_normal_update(tilt, ptn));
  }
  return std::sqrt(u);
}

double sample_ptn_route(double current, const PtnParams& ptn, PtnRoute route, RngStream& rng) {
  switch (route) {
    case PtnRoute::direct:
      return sample_ptn(rng, ptn);
    case PtnRoute::poisson:
      return sample_shape_given_tilt(sample_tilt_poisson(current, ptn, rng), ptn, rng);
    case PtnRoute::normal:
      return sample_shape_given_tilt(sample_tilt_normal(current, ptn, rng), ptn, rng);
  }
  throw std::domain_error("sample_ptn_route: unknown route");
}

}  // namespace recipgamma
