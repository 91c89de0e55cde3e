#include <cmath>

#include "recipgamma/dists.hpp"
#include "recipgamma/errors.hpp"
#include "recipgamma/models.hpp"

namespace recipgamma {

namespace {

void update_rho(OneDirState& s, RngStream& rng) {
  const int n = static_cast<int>(s.log_p.rows());
  const int L = static_cast<int>(s.log_p.cols()) - 1;
  const double width = L + 1;
  s.log_inv_rho.resize(n, L);
  for (int i = 0; i < n; ++i) {
    for (int l = 1; l <= L; ++l) {
      const BetaLogDraw r = beta_log(rng, s.alpha + l / width, (L - l + 1) / width);
      s.log_inv_rho(i, l - 1) = -r.log_value;
      s.rho_clamped += r.clamped;
    }
  }
}

}  // namespace

OneDirState onedir_init(const DirMultData& data, const OneDirConfig& cfg, RngStream& rng) {
  require(cfg.a > 0.0 && cfg.b > 0.0, "one-parameter Dirichlet: prior a, b must be positive");
  OneDirState s;
  s.log_p.resize(data.n, data.categories);
  for (int i = 0; i < data.n; ++i) {
    const double total = data.counts.row(i).sum() + data.categories;
    for (int l = 0; l < data.categories; ++l) s.log_p(i, l) = std::log((data.counts(i, l) + 1.0) / total);
  }
  update_rho(s, rng);
  return s;
}

double onedir_rate(const OneDirState& s, const OneDirConfig& cfg) {
  const double n = s.log_p.rows();
  const double width = s.log_p.cols();
  // sum_l (ln(1/p_l) - ln(L+1)) per row is non-negative by Jensen.
  return s.log_inv_rho.sum() - s.log_p.sum() - n * width * std::log(width) + cfg.b;
}

void onedir_step(OneDirState& s, const DirMultData& data, const OneDirConfig& cfg, RngStream& rng) {
  const Eigen::VectorXd alpha = Eigen::VectorXd::Constant(data.categories, s.alpha);
  for (int i = 0; i < data.n; ++i) {
    const Eigen::VectorXd shape = data.counts.row(i).transpose().cast<double>() + alpha;
    s.log_p.row(i) = dirichlet_log(rng, shape).transpose();
  }
  update_rho(s, rng);
  const double shape = static_cast<double>(data.n) * (data.categories - 1) + cfg.a;
  s.alpha = gamma(rng, shape, onedir_rate(s, cfg));
}

}  // namespace recipgamma
