#include <cmath>
#include <string>

#include "recipgamma/dists.hpp"
#include "recipgamma/errors.hpp"
#include "recipgamma/models.hpp"
#include "recipgamma/special_fns.hpp"

namespace recipgamma {

NegBinData NegBinData::from(const Eigen::VectorXi& y, const Eigen::VectorXd& p) {
  require(y.size() == p.size(), "negative binomial: y and p must have equal length");
  require((y.array() >= 0).all(), "negative binomial: counts must be non-negative");
  require((p.array() > 0.0).all() && (p.array() < 1.0).all(), "negative binomial: p_i must lie in (0, 1)");
  NegBinData d;
  d.y = y;
  d.p = p;
  d.n = static_cast<int>(y.size());
  d.sum_log_inv_p = -p.array().log().sum();
  return d;
}

namespace {

void update_latents(NegBinState& s, const NegBinData& data, RngStream& rng) {
  s.log_z.resize(data.n);
  for (int i = 0; i < data.n; ++i) s.log_z[i] = log_standard_gamma(rng, s.alpha + data.y[i]);
  s.log_w = sample_log_power_latent(s.alpha, data.n, rng);
  sample_beta_latents(s.alpha, data.n, rng, s.rho);
}

}  // namespace

NegBinState negbin_init(const NegBinData& data, const NegBinConfig& cfg, RngStream& rng) {
  require(data.n >= 2, "negative binomial: at least two observations are required");
  require(cfg.a > 0.0 && cfg.b > 0.0, "negative binomial: prior a, b must be positive");
  NegBinState s;
  update_latents(s, data, rng);
  return s;
}

PtnParams negbin_ptn_params(const NegBinState& s, const NegBinData& data, const NegBinConfig& cfg) {
  const double n = data.n;
  const double b = 2.0 * n - data.sum_log_inv_p + s.log_z.sum() + n * s.log_w - s.rho.log_sum - cfg.b;
  return {n + cfg.a, n * std::exp(s.log_w), b};
}

void negbin_step(NegBinState& s, const NegBinData& data, const NegBinConfig& cfg, RngStream& rng) {
  require(data.n >= 2, "negative binomial: at least two observations are required");
  update_latents(s, data, rng);
  const PtnParams ptn = negbin_ptn_params(s, data, cfg);
  const double proposal = sample_ptn_route(s.alpha, ptn, cfg.route, rng);
  const double dn = data.n;
  MhRecord rec{mh_log_accept(dn, proposal, s.alpha, 2), proposal, dn, 2, false};
  rec.accepted = std::log(rng.uniform()) <= rec.log_accept;
  if (rec.accepted) s.alpha = proposal;
  s.accept.record(rec);
}

}  // namespace recipgamma
