#include <cmath>
#include <string>

#include "recipgamma/dists.hpp"
#include "recipgamma/errors.hpp"
#include "recipgamma/models.hpp"
#include "recipgamma/special_fns.hpp"

namespace recipgamma {

DirMultData DirMultData::from(const Eigen::MatrixXi& counts) {
  require(counts.rows() >= 1 && counts.cols() >= 2, "dirichlet-multinomial: need >= 1 row and >= 2 categories");
  require((counts.array() >= 0).all(), "dirichlet-multinomial: counts must be non-negative");
  DirMultData d;
  d.counts = counts;
  d.n = static_cast<int>(counts.rows());
  d.categories = static_cast<int>(counts.cols());
  return d;
}

namespace {

void update_p(Eigen::MatrixXd& log_p, const DirMultData& data, const Eigen::VectorXd& alpha, RngStream& rng) {
  log_p.resize(data.n, data.categories);
  for (int i = 0; i < data.n; ++i) {
    const Eigen::VectorXd shape = data.counts.row(i).transpose().cast<double>() + alpha;
    log_p.row(i) = dirichlet_log(rng, shape).transpose();
  }
}

void update_latents(DirMultState& s, const DirMultData& data, RngStream& rng) {
  const int n = data.n;
  const double total_alpha = s.alpha.sum();
  s.log_z.resize(n);
  for (int i = 0; i < n; ++i) s.log_z[i] = log_standard_gamma(rng, total_alpha);
  s.log_w.resize(data.categories);
  for (int l = 0; l < data.categories; ++l) s.log_w[l] = sample_log_power_latent(s.alpha[l], n, rng);
  s.log_inv_rho.resize(n - 1, data.categories);
  const double dn = n;
  for (int i = 2; i <= n; ++i) {
    for (int l = 0; l < data.categories; ++l) {
      const BetaLogDraw r = beta_log(rng, s.alpha[l] + (i - 1) / dn, (n - i + 1) / dn);
      s.log_inv_rho(i - 2, l) = -r.log_value;
      s.rho_clamped += r.clamped;
    }
  }
}

}  // namespace

DirMultState dirmult_init(const DirMultData& data, const DirMultConfig& cfg, RngStream& rng) {
  require(data.n >= 2, "dirichlet-multinomial: at least two observation rows are required");
  require(cfg.a > 0.0 && cfg.b > 0.0, "dirichlet-multinomial: prior a, b must be positive");
  DirMultState s;
  s.alpha = Eigen::VectorXd::Ones(data.categories);
  s.log_p.resize(data.n, data.categories);
  for (int i = 0; i < data.n; ++i) {
    const double total = data.counts.row(i).sum() + data.categories;
    for (int l = 0; l < data.categories; ++l) s.log_p(i, l) = std::log((data.counts(i, l) + 1.0) / total);
  }
  update_latents(s, data, rng);
  s.accept.assign(data.categories, AcceptStats{});
  return s;
}

PtnParams dirmult_ptn_params(const DirMultState& s, const DirMultConfig& cfg, int l) {
  const double n = static_cast<double>(s.log_p.rows());
  const double b = s.log_p.col(l).sum() + s.log_z.sum() + 2.0 * n + n * s.log_w[l] -
                   s.log_inv_rho.col(l).sum() - cfg.b;
  return {n + cfg.a, n * std::exp(s.log_w[l]), b};
}

void dirmult_step(DirMultState& s, const DirMultData& data, const DirMultConfig& cfg, RngStream& rng) {
  require(data.n >= 2, "dirichlet-multinomial: at least two observation rows are required");
  update_p(s.log_p, data, s.alpha, rng);
  update_latents(s, data, rng);
  if (s.accept.size() != static_cast<std::size_t>(data.categories)) s.accept.assign(data.categories, AcceptStats{});
  const double dn = data.n;
  // Given z, w and rho the coordinates are conditionally independent.
  for (int l = 0; l < data.categories; ++l) {
    const PtnParams ptn = dirmult_ptn_params(s, cfg, l);
    const double proposal = sample_ptn_route(s.alpha[l], ptn, cfg.route, rng);
    MhRecord rec{mh_log_accept(dn, proposal, s.alpha[l], 2), proposal, dn, 2, false};
    rec.accepted = std::log(rng.uniform()) <= rec.log_accept;
    if (rec.accepted) s.alpha[l] = proposal;
    s.accept[l].record(rec);
  }
}

}  // namespace recipgamma
