#pragma once

#include <Eigen/Dense>

#include "recipgamma/dists.hpp"
#include "recipgamma/rng.hpp"

namespace recipgamma {

/// rho_j ~ Beta(xi + (j-1)/m, (m-j+1)/m), j = 2..m, stored at index j - 2.
struct BetaLatents {
  int m = 1;
  Eigen::VectorXd rho;
  Eigen::VectorXd log_inv_rho;  // ln(1 / rho_j), exact even when rho_j rounds to 1
  double log_sum = 0.0;         // sum_j ln(1 / rho_j)
  long clamped = 0;             // draws that rounded to 0 or 1
};

/// t_k ~ Ga(2^{k-1} m xi + 1/2, 2^K m xi), k = 1..K, stored at index k - 1.
struct KLevelLatents {
  int K = 0;
  Eigen::VectorXd t;
};

enum class TiltVariant { poisson, normal };

/// Latents that linearize the exp(b xi) tilt of a PTN target, plus the
/// parameters of the resulting update of u = xi^2.
struct TiltLatents {
  TiltVariant variant = TiltVariant::poisson;
  long zeta = 0;
  double theta = 0.0;
  double eta = 0.0;
  double M = 1.0;
  double b_prime = 1.0;
};

/// Coefficients of a shape full conditional: Ga(A, B) when used as a gamma
/// proposal, or PTN(c, a, b).
struct ShapeConditionalParams {
  double A = 0.0;
  double B = 0.0;
  double c = 0.0;
  double a = 0.0;
  double b = 0.0;
};

BetaLatents sample_beta_latents(double xi, int m, RngStream& rng);
void sample_beta_latents(double xi, int m, RngStream& rng, BetaLatents& out);

/// w ~ Ga(m xi, m xi^2).
double sample_power_latent(double xi, int m, RngStream& rng);
/// ln w for w ~ Ga(m xi, m xi^2); finite even when w itself underflows.
double sample_log_power_latent(double xi, int m, RngStream& rng);

/// c = a3 + 1/2, a = m w, b = m ln w + m - b3.
PtnParams ptn_params_from_conditional(double a3, double b3, int m, double w);

KLevelLatents sample_k_latents(double xi, int m, int K, RngStream& rng);

/// M = 1 + max(0, b) and b' = M - b.
TiltLatents tilt_constants(const PtnParams& ptn, TiltVariant variant);

TiltLatents sample_tilt_poisson(double xi, const PtnParams& ptn, RngStream& rng);
TiltLatents sample_tilt_normal(double xi, const PtnParams& ptn, RngStream& rng);

/// Gamma parameters of u = xi'^2 given Poisson-route latents.
struct GammaParams {
  double shape;
  double rate;
};
GammaParams tilt_poisson_update(const TiltLatents& tilt, const PtnParams& ptn);
/// GIG parameters of u = xi'^2 given normal-route latents.
GigParams tilt_normal_update(const TiltLatents& tilt, const PtnParams& ptn);

/// Draws xi' = sqrt(u) from the conditional implied by the latents.
double sample_shape_given_tilt(const TiltLatents& tilt, const PtnParams& ptn, RngStream& rng);

/// How a PTN-targeted shape proposal is produced: an exact PTN draw, or one
/// pass of the Poisson or normal tilt augmentation started at `current`.
/// Every route leaves the PTN distribution invariant.
enum class PtnRoute { direct, poisson, normal };

double sample_ptn_route(double current, const PtnParams& ptn, PtnRoute route, RngStream& rng);

}  // namespace recipgamma
