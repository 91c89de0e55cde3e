#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "recipgamma/dists.hpp"
#include "recipgamma/errors.hpp"
#include "recipgamma/models.hpp"
#include "recipgamma/special_fns.hpp"

namespace recipgamma {

namespace {

double quantile_sorted(const std::vector<double>& v, double q) {
  const double pos = q * static_cast<double>(v.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const auto hi = std::min(lo + 1, v.size() - 1);
  return v[lo] + (pos - static_cast<double>(lo)) * (v[hi] - v[lo]);
}

void check_config(const TModelConfig& cfg) {
  require(cfg.a > 0.0 && cfg.c > 0.0 && cfg.d > 0.0, "t model: a, c, d must be positive");
  require(cfg.a0 > 0.0 && cfg.b0 > 0.0, "t model: a0, b0 must be positive");
  require(cfg.alpha_lower >= 0.0, "t model: alpha_lower must be non-negative");
}

void update_location_scale(TModelState& s, const TData& data, const TModelConfig& cfg, RngStream& rng) {
  const double sum_w = s.w.sum();
  const double sum_wx = s.w.dot(data.x);
  const double sum_wxx = (s.w.array() * data.x.array().square()).sum();
  const double a_post = cfg.a + sum_w;
  const double lin = cfg.a * cfg.b + sum_wx;
  const double d_post = 0.5 * (cfg.a * cfg.b * cfg.b + sum_wxx - lin * lin / a_post) + cfg.d;
  s.tau = inverse_gamma(rng, 0.5 * data.n + cfg.c, d_post);
  s.theta = normal(rng, lin / a_post, s.tau / a_post);
}

void update_w(TModelState& s, const TData& data, RngStream& rng) {
  s.w.resize(data.n);
  for (int i = 0; i < data.n; ++i) {
    const double r = data.x[i] - s.theta;
    s.w[i] = gamma(rng, s.alpha + 0.5, s.alpha + r * r / (2.0 * s.tau));
  }
}

double sum_w_minus_log_w(const Eigen::VectorXd& w) { return (w.array() - w.array().log()).sum(); }

}  // namespace

TModelState t_init(const TData& data, const TModelConfig& cfg, RngStream& rng) {
  check_config(cfg);
  require(data.n >= 1 && data.x.size() == data.n, "t model: need at least one observation");
  TModelState s;
  std::vector<double> sorted(data.x.data(), data.x.data() + data.n);
  std::sort(sorted.begin(), sorted.end());
  s.theta = quantile_sorted(sorted, 0.5);
  const double iqr = quantile_sorted(sorted, 0.75) - quantile_sorted(sorted, 0.25);
  const double sd = iqr / 1.349;
  s.tau = sd > 0.0 ? sd * sd : 1.0;
  s.alpha = std::max(1.0, 2.0 * cfg.alpha_lower);
  t_refresh_latents(s, data, rng);
  return s;
}

void t_refresh_latents(TModelState& s, const TData& data, RngStream& rng) {
  update_w(s, data, rng);
  sample_beta_latents(s.alpha, data.n, rng, s.rho);
}

void t_step(TModelState& s, const TData& data, const TModelConfig& cfg, RngStream& rng) {
  update_location_scale(s, data, cfg, rng);
  update_w(s, data, rng);
  sample_beta_latents(s.alpha, data.n, rng, s.rho);
  const double shape = cfg.a0 + data.n - 0.5;
  const double rate = cfg.b0 - data.n + sum_w_minus_log_w(s.w) + s.rho.log_sum;
  if (!(rate > 0.0)) {
    throw PriorProprietyError("t model: alpha proposal rate b0' = " + std::to_string(rate) + " is not positive");
  }
  const double proposal = cfg.alpha_lower > 0.0 ? sample_truncated_gamma(rng, shape, rate, cfg.alpha_lower)
                                                : gamma(rng, shape, rate);
  MhRecord rec{mh_log_accept(static_cast<double>(data.n), proposal, s.alpha, 1), proposal,
               static_cast<double>(data.n), 1, false};
  rec.accepted = std::log(rng.uniform()) <= rec.log_accept;
  if (rec.accepted) s.alpha = proposal;
  s.accept.record(rec);
}

void t_step_amh(TModelState& s, const TData& data, const TModelConfig& cfg, RngStream& rng,
                const AmhSettings& settings) {
  update_location_scale(s, data, cfg, rng);
  update_w(s, data, rng);
  ShapeTarget target{cfg.a0, cfg.b0, data.n, sum_w_minus_log_w(s.w), cfg.alpha_lower};
  const GammaApprox approx = fit_gamma_approx(target, settings.eps, settings.max_iter);
  const AmhResult r = amh_shape_step(s.alpha, target, approx, rng);
  s.alpha = r.alpha;
  s.accept.record({r.log_accept, r.alpha, 0.0, 0, r.accepted});
}

}  // namespace recipgamma
