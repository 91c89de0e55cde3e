#include <cmath>
#include <string>

#include "recipgamma/dists.hpp"
#include "recipgamma/errors.hpp"
#include "recipgamma/models.hpp"
#include "recipgamma/special_fns.hpp"

namespace recipgamma {

WishartData WishartData::from(const Eigen::MatrixXd& x) {
  require(x.rows() >= 1, "wishart model: need at least one observation");
  require(x.cols() >= 2 && x.cols() % 2 == 0, "wishart model: dimension p must be even and >= 2");
  require(x.allFinite(), "wishart model: observations must be finite");
  WishartData d;
  d.x = x;
  d.n = static_cast<int>(x.rows());
  d.p = static_cast<int>(x.cols());
  d.scatter = x.transpose() * x;
  return d;
}

namespace {

void update_psi(WishartState& s, const WishartData& data, RngStream& rng) {
  const Eigen::MatrixXd precision =
      s.alpha * s.gamma_ratio * Eigen::MatrixXd::Identity(data.p, data.p) + data.scatter;
  const Eigen::MatrixXd scale = precision.llt().solve(Eigen::MatrixXd::Identity(data.p, data.p));
  s.Psi = sample_wishart(rng, data.n + 2.0 * s.alpha + data.p - 1.0, 0.5 * (scale + scale.transpose()));
}

void update_rho(WishartState& s, int p, RngStream& rng) {
  const int m = p / 2;
  const double dm = m;
  s.log_inv_rho.resize(m - 1);
  for (int j = 2; j <= m; ++j) {
    const BetaLogDraw r = beta_log(rng, 2.0 * s.alpha + (j - 1) / dm, (2.0 - 1.0 / dm) * (j - 1));
    s.log_inv_rho[j - 2] = -r.log_value;
    s.rho_clamped += r.clamped;
  }
}

}  // namespace

WishartState wishart_init(const WishartData& data, const WishartConfig& cfg, RngStream& rng) {
  require(cfg.a > 0.0 && cfg.b > 0.0 && cfg.c > 0.0 && cfg.d > 0.0, "wishart model: priors must be positive");
  WishartState s;
  update_psi(s, data, rng);
  update_rho(s, data.p, rng);
  return s;
}

ShapeConditionalParams wishart_shape_conditional(const WishartState& s, const WishartData& data,
                                                 const WishartConfig& cfg) {
  const double p = data.p;
  const Eigen::LLT<Eigen::MatrixXd> llt(s.Psi);
  const double log_det = 2.0 * llt.matrixLLT().diagonal().array().log().sum();
  ShapeConditionalParams out;
  out.A = 0.5 + p * (p - 1.0) / 2.0 + cfg.c + cfg.a;
  out.B = cfg.b + cfg.d * s.gamma_ratio + 0.5 * s.gamma_ratio * s.Psi.trace() - p -
          (p * std::log(0.5 * s.gamma_ratio) + log_det) + 2.0 * s.log_inv_rho.sum();
  return out;
}

void wishart_step(WishartState& s, const WishartData& data, const WishartConfig& cfg, RngStream& rng) {
  const double p = data.p;
  update_psi(s, data, rng);
  update_rho(s, data.p, rng);
  s.gamma_ratio = gamma(rng, p * (s.alpha + 0.5 * (p - 1.0)) + cfg.c, (0.5 * s.Psi.trace() + cfg.d) * s.alpha);
  const ShapeConditionalParams shape = wishart_shape_conditional(s, data, cfg);
  if (!(shape.B > 0.0)) {
    throw PriorProprietyError("wishart model: alpha proposal rate B = " + std::to_string(shape.B) +
                              " is not positive");
  }
  const double proposal = gamma(rng, shape.A, shape.B);
  MhRecord rec{mh_log_accept(p, proposal, s.alpha, 1), proposal, p, 1, false};
  rec.accepted = std::log(rng.uniform()) <= rec.log_accept;
  if (rec.accepted) s.alpha = proposal;
  s.accept.record(rec);
}

}  // namespace recipgamma
