#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "doctest.h"
#include "recipgamma/dists.hpp"
#include "recipgamma/errors.hpp"
#include "recipgamma/models.hpp"
#include "support/gir.hpp"
#include "support/oracles.hpp"

using namespace recipgamma;

namespace {

double quantile(std::vector<double> v, double q) {
  std::sort(v.begin(), v.end());
  return v[static_cast<std::size_t>(q * (v.size() - 1))];
}

DirMultData dirmult_data(RngStream& rng, int n, const Eigen::VectorXd& alpha, int trials) {
  Eigen::MatrixXi counts(n, alpha.size());
  for (int i = 0; i < n; ++i) counts.row(i) = multinomial(rng, trials, dirichlet(rng, alpha)).transpose();
  return DirMultData::from(counts);
}

void check_gir(const gir::JointSampler& js, int draws, std::uint64_t seed) {
  const gir::Outcome out = gir::run(js, draws, seed);
  for (const auto& c : out.checks) {
    CAPTURE(js.name);
    CAPTURE(c.param);
    CAPTURE(c.power);
    CAPTURE(c.prior_mean);
    CAPTURE(c.chain_mean);
    CHECK(std::abs(c.z) < 4.0);
  }
  CHECK(out.bound_violations == 0);
}

}  // namespace

TEST_CASE("gamma model: proposal parameters") {
  const GammaData data = GammaData::from(Eigen::VectorXd::Ones(1));
  GammaModelConfig cfg{0.4, 0.1, 0.7, 0.1, 0};
  GammaModelState s;
  s.gamma_ratio = 1.0;
  s.rho.m = 1;
  const ShapeConditionalParams p = gamma_shape_conditional(s, data, cfg);
  CHECK(p.B == doctest::Approx(0.2).epsilon(1e-12));
  CHECK(p.A == doctest::Approx(1.0 - 0.5 + 0.7 + 0.4));

  // K = 1 with t_1 = 1 adds -2n + n - n ln 2 + 2n t_1 to the K = 0 rate.
  cfg.K = 1;
  s.t_latents = {1, Eigen::VectorXd::Ones(1)};
  const ShapeConditionalParams q = gamma_shape_conditional(s, data, cfg);
  CHECK(q.A == doctest::Approx(p.A + 0.5));
  CHECK(q.B == doctest::Approx(0.2 + 1.0 - 2.0 - std::numbers::ln2 + 2.0).epsilon(1e-12));

  CHECK_THROWS(GammaData::from(Eigen::VectorXd::Constant(2, -1.0)));
}

TEST_CASE("gamma model: acceptance rate exceeds the Stirling bound") {
  RngStream rng(51, 0);
  Eigen::VectorXd x(30);
  for (auto& v : x) v = gamma(rng, 2.0, 1.0);
  const GammaData data = GammaData::from(x);
  const GammaModelConfig cfg{1.0, 1.0, 1.0, 1.0, 0};
  GammaModelState s = gamma_init(data, cfg, rng);
  for (int i = 0; i < 500; ++i) gamma_step(s, data, cfg, rng);
  s.accept = {};
  double alpha_sum = 0.0;
  for (int i = 0; i < 4000; ++i) {
    gamma_step(s, data, cfg, rng);
    alpha_sum += s.alpha;
    REQUIRE(gir::within_bound(s.accept.last));
  }
  CHECK(s.accept.rate() > 1.0 - 1.0 / (12.0 * 30.0 * alpha_sum / 4000.0));
}

TEST_CASE("student t model: symmetric data centre the location") {
  RngStream rng(52, 0);
  TData data;
  data.n = 10;
  data.x.resize(10);
  for (int i = 0; i < 5; ++i) {
    const double d = 0.3 + 0.7 * i;
    data.x[2 * i] = 3.0 + d;
    data.x[2 * i + 1] = 3.0 - d;
  }
  TModelConfig cfg;
  cfg.b = 3.0;
  TModelState s = t_init(data, cfg, rng);
  Eigen::VectorXd theta(20000);
  for (int i = 0; i < 1000; ++i) t_step(s, data, cfg, rng);
  for (int i = 0; i < theta.size(); ++i) {
    t_step(s, data, cfg, rng);
    theta[i] = s.theta;
  }
  CHECK(std::abs(theta.mean() - 3.0) < 4.0 * batch_means_se(theta));
}

TEST_CASE("student t model: alpha_lower = 0 reproduces the untruncated trajectory") {
  RngStream data_rng(53, 1);
  TData data;
  data.n = 8;
  data.x.resize(8);
  for (auto& v : data.x) v = student_t(data_rng, 3.0, 1.0, 2.0);
  TModelConfig plain;
  TModelConfig truncated = plain;
  truncated.alpha_lower = 0.0;
  RngStream r1(53, 0), r2(53, 0);
  TModelState s1 = t_init(data, plain, r1), s2 = t_init(data, truncated, r2);
  for (int i = 0; i < 2000; ++i) {
    t_step(s1, data, plain, r1);
    t_step(s2, data, truncated, r2);
    REQUIRE(s1.alpha == s2.alpha);
    REQUIRE(s1.theta == s2.theta);
    REQUIRE(s1.tau == s2.tau);
  }

  truncated.alpha_lower = 0.5;
  TModelState s3 = t_init(data, truncated, r2);
  for (int i = 0; i < 5000; ++i) {
    t_step(s3, data, truncated, r2);
    REQUIRE(s3.alpha > 0.5);
  }
}

TEST_CASE("dir_mult model: PTN parameters") {
  DirMultState s;
  s.log_p = Eigen::MatrixXd::Constant(2, 2, std::log(0.5));
  s.log_z = Eigen::VectorXd::Zero(2);
  s.log_w = Eigen::VectorXd::Zero(2);
  s.log_inv_rho = Eigen::MatrixXd::Zero(1, 2);
  const PtnParams p = dirmult_ptn_params(s, {1.0, 1.0}, 0);
  CHECK(p.b == doctest::Approx(3.0 - 2.0 * std::numbers::ln2).epsilon(1e-14));
  CHECK(p.c == 3.0);
  CHECK(p.a == 2.0);

  // The negative binomial shape conditional has the same form.
  NegBinState nb;
  nb.log_z = s.log_z;
  nb.log_w = 0.0;
  nb.rho.log_sum = 0.0;
  const NegBinData d = NegBinData::from(Eigen::VectorXi::Zero(2), Eigen::VectorXd::Constant(2, 0.5));
  const PtnParams q = negbin_ptn_params(nb, d, {1.0, 1.0});
  CHECK(q.b == doctest::Approx(p.b).epsilon(1e-14));
  CHECK(q.c == p.c);
  CHECK(q.a == p.a);
}

TEST_CASE("dir_mult and neg_bin reject a single observation") {
  RngStream rng(54, 0);
  const DirMultData one = DirMultData::from(Eigen::MatrixXi::Ones(1, 3));
  CHECK_THROWS(dirmult_init(one, {}, rng));
  const NegBinData nb = NegBinData::from(Eigen::VectorXi::Ones(1), Eigen::VectorXd::Constant(1, 0.5));
  CHECK_THROWS(negbin_init(nb, {}, rng));
}

TEST_CASE("dir_mult model: PTN routes agree and respect the acceptance bound") {
  RngStream data_rng(55, 1);
  const DirMultData data = dirmult_data(data_rng, 20, Eigen::VectorXd::Constant(4, 0.8), 30);
  std::vector<std::vector<double>> pooled(3);
  for (int route = 0; route < 3; ++route) {
    DirMultConfig cfg{1.0, 1.0, static_cast<PtnRoute>(route)};
    for (int chain = 0; chain < 5; ++chain) {
      RngStream rng(55, route * 10 + chain);
      DirMultState s = dirmult_init(data, cfg, rng);
      for (int i = 0; i < 500; ++i) dirmult_step(s, data, cfg, rng);
      for (auto& a : s.accept) a = {};
      Eigen::VectorXd alpha_sum = Eigen::VectorXd::Zero(4);
      for (int i = 0; i < 4000; ++i) {
        dirmult_step(s, data, cfg, rng);
        alpha_sum += s.alpha;
        if (i % 10 == 0) pooled[route].push_back(s.alpha[1]);
        for (const auto& a : s.accept) REQUIRE(gir::within_bound(a.last));
      }
      for (int l = 0; l < 4; ++l) {
        CHECK(s.accept[l].rate() >= 1.0 - 2.0 / (12.0 * 20.0 * alpha_sum[l] / 4000.0) - 0.01);
      }
    }
  }
  for (int a = 0; a < 3; ++a) {
    for (int b = a + 1; b < 3; ++b) {
      CAPTURE(a);
      CAPTURE(b);
      CHECK(oracle::ks_two_sample(pooled[a], pooled[b]).p > 0.001);
    }
  }
}

TEST_CASE("dir_mult model: chains survive a shape driven towards zero") {
  Eigen::MatrixXi counts(10, 3);
  counts.col(0).setConstant(12);
  counts.col(1).setConstant(8);
  counts.col(2).setZero();
  const DirMultData data = DirMultData::from(counts);
  for (int route = 0; route < 3; ++route) {
    CAPTURE(route);
    const DirMultConfig cfg{0.1, 1.0, static_cast<PtnRoute>(route)};
    RngStream rng(57, route);
    DirMultState s = dirmult_init(data, cfg, rng);
    double smallest = INFINITY;
    for (int i = 0; i < 3000; ++i) {
      REQUIRE_NOTHROW(dirmult_step(s, data, cfg, rng));
      REQUIRE(s.log_w.allFinite());
      REQUIRE(s.log_z.allFinite());
      REQUIRE(s.alpha[2] > 0.0);
      smallest = std::min(smallest, s.alpha[2]);
    }
    CHECK(smallest < 1e-3);
  }
}

TEST_CASE("one_dir model: rate is non-negative by Jensen") {
  RngStream rng(56, 0);
  OneDirState s;
  s.log_p.resize(1, 5);
  s.log_inv_rho = Eigen::MatrixXd::Zero(1, 4);
  s.log_p.row(0).setConstant(std::log(0.2));
  CHECK(onedir_rate(s, {1.0, 0.7}) == doctest::Approx(0.7).epsilon(1e-12));
  for (int i = 0; i < 1000; ++i) {
    s.log_p.row(0) = dirichlet_log(rng, Eigen::VectorXd::Constant(5, 0.3)).transpose();
    REQUIRE(onedir_rate(s, {1.0, 0.7}) >= 0.7);
  }
}

TEST_CASE("one_dir model: credible intervals are calibrated") {
  int covered = 0;
  for (int rep = 0; rep < 100; ++rep) {
    RngStream rng(57, rep);
    const DirMultData data = dirmult_data(rng, 50, Eigen::VectorXd::Ones(5), 100);
    const OneDirConfig cfg{1.0, 1.0};
    OneDirState s = onedir_init(data, cfg, rng);
    for (int i = 0; i < 200; ++i) onedir_step(s, data, cfg, rng);
    std::vector<double> draws;
    for (int i = 0; i < 2000; ++i) {
      onedir_step(s, data, cfg, rng);
      draws.push_back(s.alpha);
    }
    covered += quantile(draws, 0.025) <= 1.0 && quantile(draws, 0.975) >= 1.0;
  }
  CHECK(covered >= 85);
}

TEST_CASE("neg_bin model: latent z has mean alpha + y") {
  RngStream rng(58, 0);
  const NegBinData data = NegBinData::from((Eigen::VectorXi(3) << 0, 4, 11).finished(), Eigen::VectorXd::Constant(3, 0.5));
  const NegBinConfig cfg;
  NegBinState s = negbin_init(data, cfg, rng);
  Eigen::VectorXd diff = Eigen::VectorXd::Zero(3);
  const int steps = 100000;
  for (int i = 0; i < steps; ++i) {
    const double alpha = s.alpha;
    negbin_step(s, data, cfg, rng);
    diff += s.log_z.array().exp().matrix() - (data.y.cast<double>().array() + alpha).matrix();
  }
  for (int i = 0; i < 3; ++i) CHECK(std::abs(diff[i] / steps) < 0.05);
}

TEST_CASE("neg_bin model: posterior mean recovers the shape") {
  int close = 0;
  for (int rep = 0; rep < 100; ++rep) {
    RngStream rng(59, rep);
    Eigen::VectorXi y(200);
    for (auto& v : y) v = static_cast<int>(poisson(rng, gamma(rng, 3.0, 1.0)));
    const NegBinData data = NegBinData::from(y, Eigen::VectorXd::Constant(200, 0.5));
    const NegBinConfig cfg;
    NegBinState s = negbin_init(data, cfg, rng);
    for (int i = 0; i < 300; ++i) negbin_step(s, data, cfg, rng);
    double sum = 0.0;
    for (int i = 0; i < 1500; ++i) {
      negbin_step(s, data, cfg, rng);
      sum += s.alpha;
    }
    close += std::abs(sum / 1500.0 - 3.0) <= 0.45;
  }
  CHECK(close >= 80);
}

TEST_CASE("wishart model: Psi conditional mean") {
  RngStream rng(60, 0);
  Eigen::MatrixXd x(6, 2);
  x << 1.0, 0.5, -0.3, 0.2, 0.8, -1.1, 0.0, 0.4, -0.6, -0.2, 1.5, 0.9;
  const WishartData data = WishartData::from(x);
  const WishartConfig cfg;
  Eigen::MatrixXd sum = Eigen::MatrixXd::Zero(2, 2);
  const int draws = 100000;
  for (int i = 0; i < draws; ++i) {
    const WishartState s = wishart_init(data, cfg, rng);
    REQUIRE(s.log_inv_rho.size() == 0);
    sum += s.Psi;
  }
  const Eigen::MatrixXd expected = (6.0 + 2.0 + 1.0) * (Eigen::MatrixXd::Identity(2, 2) + data.scatter).inverse();
  const Eigen::MatrixXd mean = sum / draws;
  for (int i = 0; i < 2; ++i) CHECK(mean(i, i) == doctest::Approx(expected(i, i)).epsilon(0.03));
  CHECK(std::abs(mean(0, 1) - expected(0, 1)) < 0.03 * std::sqrt(expected(0, 0) * expected(1, 1)));
}

TEST_CASE("wishart model: credible intervals are calibrated") {
  // A single Psi informs alpha, so the posterior stays wide however large n is.
  int covered = 0;
  for (int rep = 0; rep < 100; ++rep) {
    RngStream rng(61, rep);
    const Eigen::MatrixXd psi = sample_wishart(rng, 2.0 * 2.0 + 3.0, Eigen::MatrixXd::Identity(4, 4) / 2.0);
    const Eigen::LLT<Eigen::MatrixXd> llt(psi);
    Eigen::MatrixXd x(200, 4);
    for (int i = 0; i < 200; ++i) {
      Eigen::VectorXd z(4);
      for (auto& v : z) v = standard_normal(rng);
      x.row(i) = llt.matrixU().solve(z).transpose();
    }
    const WishartData data = WishartData::from(x);
    const WishartConfig cfg;
    WishartState s = wishart_init(data, cfg, rng);
    for (int i = 0; i < 300; ++i) wishart_step(s, data, cfg, rng);
    std::vector<double> draws;
    for (int i = 0; i < 3000; ++i) {
      wishart_step(s, data, cfg, rng);
      draws.push_back(s.alpha);
    }
    covered += quantile(draws, 0.025) <= 2.0 && quantile(draws, 0.975) >= 2.0;
  }
  CHECK(covered >= 85);
}

TEST_CASE("getting-it-right for variants outside the acceptance suite") {
  check_gir(gir::gamma_joint(3, 2, false), 50000, 62);
  check_gir(gir::wishart_joint(3, 4), 50000, 63);
  check_gir(gir::t_joint(3, 0.8, false), 50000, 64);
}
