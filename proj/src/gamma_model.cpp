#include <cmath>
#include <numbers>
#include <string>

#include "recipgamma/dists.hpp"
#include "recipgamma/errors.hpp"
#include "recipgamma/models.hpp"
#include "recipgamma/special_fns.hpp"

namespace recipgamma {

GammaData GammaData::from(const Eigen::VectorXd& x) {
  require(x.size() >= 1, "gamma model: need at least one observation");
  require((x.array() > 0.0).all() && x.allFinite(), "gamma model: observations must be positive");
  GammaData d;
  d.x = x;
  d.n = static_cast<int>(x.size());
  d.sum_x = x.sum();
  d.sum_log_x = x.array().log().sum();
  return d;
}

GammaModelState gamma_init(const GammaData& data, const GammaModelConfig& cfg, RngStream& rng) {
  require(cfg.K >= 0 && cfg.K <= 10, "gamma model: K must be in [0, 10]");
  GammaModelState s;
  sample_beta_latents(s.alpha, data.n, rng, s.rho);
  s.t_latents = sample_k_latents(s.alpha, data.n, cfg.K, rng);
  return s;
}

ShapeConditionalParams gamma_shape_conditional(const GammaModelState& s, const GammaData& data,
                                               const GammaModelConfig& cfg) {
  const int K = cfg.K;
  const double n = data.n;
  const double two_k = std::ldexp(1.0, K);
  ShapeConditionalParams out;
  out.A = n + 0.5 * K - 0.5 + cfg.c + cfg.a;
  double B = -data.sum_log_x + s.rho.log_sum - two_k * n - (2.0 * (two_k - 1.0) - K) * n * std::numbers::ln2 -
             n * std::log(s.gamma_ratio) + s.gamma_ratio * (data.sum_x + cfg.d) + cfg.b;
  for (int k = 1; k <= K; ++k) {
    const double t = s.t_latents.t[k - 1];
    B += two_k * n * t - std::ldexp(n, k - 1) * std::log(t);
  }
  out.B = B;
  return out;
}

namespace {

void update_gamma_ratio(GammaModelState& s, const GammaData& data, const GammaModelConfig& cfg, RngStream& rng) {
  s.gamma_ratio = gamma(rng, data.n * s.alpha + cfg.c, s.alpha * (data.sum_x + cfg.d));
}

}  // namespace

void gamma_step(GammaModelState& s, const GammaData& data, const GammaModelConfig& cfg, RngStream& rng) {
  update_gamma_ratio(s, data, cfg, rng);
  sample_beta_latents(s.alpha, data.n, rng, s.rho);
  s.t_latents = sample_k_latents(s.alpha, data.n, cfg.K, rng);
  const ShapeConditionalParams shape = gamma_shape_conditional(s, data, cfg);
  if (!(shape.B > 0.0)) {
    throw PriorProprietyError("gamma model: alpha proposal rate B = " + std::to_string(shape.B) + " is not positive");
  }
  const double proposal = gamma(rng, shape.A, shape.B);
  const double m_eff = std::ldexp(static_cast<double>(data.n), cfg.K);
  MhRecord rec{mh_log_accept(m_eff, proposal, s.alpha, 1), proposal, m_eff, 1, false};
  rec.accepted = std::log(rng.uniform()) <= rec.log_accept;
  if (rec.accepted) s.alpha = proposal;
  s.accept.record(rec);
}

ShapeTarget gamma_shape_target(const GammaModelState& s, const GammaData& data, const GammaModelConfig& cfg) {
  ShapeTarget t;
  t.a0 = cfg.a + cfg.c;
  t.b0 = cfg.b;
  t.n = data.n;
  t.s_w = -data.n * std::log(s.gamma_ratio) - data.sum_log_x + s.gamma_ratio * (data.sum_x + cfg.d);
  return t;
}

void gamma_step_amh(GammaModelState& s, const GammaData& data, const GammaModelConfig& cfg, RngStream& rng,
                    const AmhSettings& settings) {
  update_gamma_ratio(s, data, cfg, rng);
  const ShapeTarget target = gamma_shape_target(s, data, cfg);
  const GammaApprox approx = fit_gamma_approx(target, settings.eps, settings.max_iter);
  const AmhResult r = amh_shape_step(s.alpha, target, approx, rng);
  s.alpha = r.alpha;
  s.accept.record({r.log_accept, r.alpha, 0.0, 0, r.accepted});
}

}  // namespace recipgamma
