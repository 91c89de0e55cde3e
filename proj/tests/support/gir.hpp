#pragma once

// Joint-distribution ("getting it right") checks for the model samplers. The
// marginal-conditional simulator draws parameters from the prior. The
// successive-conditional simulator alternates one sampler sweep with a fresh
// data draw given the current parameters. Both leave the prior invariant, so
// the parameter moments must agree.

#include <Eigen/Dense>
#include <cmath>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "recipgamma/diagnostics.hpp"
#include "recipgamma/dists.hpp"
#include "recipgamma/models.hpp"

namespace gir {

using namespace recipgamma;

struct JointSampler {
  std::string name;
  std::vector<std::string> params;
  std::function<Eigen::VectorXd(RngStream&)> prior_draw;
  std::function<void(RngStream&)> reset;
  std::function<Eigen::VectorXd(RngStream&)> sweep;
  // MH records produced by the most recent sweep.
  std::function<std::vector<MhRecord>()> records;
};

/// True when the realized acceptance probability respects
/// exp(-power / (12 m_eff xi*)) with xi* the proposed shape.
inline bool within_bound(const MhRecord& r) {
  if (r.power == 0) return true;
  return r.log_accept >= -r.power / (12.0 * r.m_eff * r.proposal);
}

struct MomentCheck {
  std::string param;
  int power = 1;
  double prior_mean = 0.0, chain_mean = 0.0, z = 0.0;
};

struct Outcome {
  std::vector<MomentCheck> checks;
  long bound_checks = 0;
  long bound_violations = 0;

  double max_abs_z() const {
    double m = 0.0;
    for (const auto& c : checks) m = std::max(m, std::abs(c.z));
    return m;
  }
};

inline Outcome run(const JointSampler& js, int draws, std::uint64_t seed) {
  RngStream rng(seed, 0);
  const auto k = static_cast<Eigen::Index>(js.params.size());
  Eigen::MatrixXd prior(draws, k), chain(draws, k);
  for (int i = 0; i < draws; ++i) prior.row(i) = js.prior_draw(rng).transpose();
  js.reset(rng);
  Outcome out;
  for (int i = 0; i < draws; ++i) {
    chain.row(i) = js.sweep(rng).transpose();
    for (const MhRecord& r : js.records()) {
      ++out.bound_checks;
      out.bound_violations += !within_bound(r);
    }
  }
  for (Eigen::Index j = 0; j < k; ++j) {
    for (int power : {1, 2}) {
      const Eigen::VectorXd p = prior.col(j).array().pow(power);
      const Eigen::VectorXd c = chain.col(j).array().pow(power);
      const double se = std::hypot(batch_means_se(p), batch_means_se(c));
      out.checks.push_back({js.params[j], power, p.mean(), c.mean(), (c.mean() - p.mean()) / se});
    }
  }
  return out;
}

// ---------------------------------------------------------------- gamma

inline JointSampler gamma_joint(int n, int K, bool amh) {
  struct S {
    GammaModelConfig cfg;
    GammaModelState st;
    GammaData data;
    int n;
    bool amh;
    bool stepped = false;
    void redraw(RngStream& rng) {
      Eigen::VectorXd x(n);
      for (int i = 0; i < n; ++i) x[i] = gamma(rng, st.alpha, st.beta());
      data = GammaData::from(x);
    }
  };
  auto s = std::make_shared<S>();
  s->cfg = {3.0, 2.0, 3.0, 2.0, K};
  s->n = n;
  s->amh = amh;
  JointSampler js;
  js.name = std::string("gamma") + (amh ? " amh" : K > 0 ? " K=" + std::to_string(K) : "");
  js.params = {"alpha", "beta"};
  js.prior_draw = [s](RngStream& rng) {
    Eigen::VectorXd v(2);
    v << gamma(rng, s->cfg.a, s->cfg.b), gamma(rng, s->cfg.c, s->cfg.d);
    return v;
  };
  js.reset = [s](RngStream& rng) {
    const double alpha = gamma(rng, s->cfg.a, s->cfg.b), beta = gamma(rng, s->cfg.c, s->cfg.d);
    s->st.alpha = alpha;
    s->st.gamma_ratio = beta / alpha;
    s->redraw(rng);
    const GammaModelState fresh = gamma_init(s->data, s->cfg, rng);
    s->st.rho = fresh.rho;
    s->st.t_latents = fresh.t_latents;
  };
  js.sweep = [s](RngStream& rng) {
    if (s->amh) {
      gamma_step_amh(s->st, s->data, s->cfg, rng);
    } else {
      gamma_step(s->st, s->data, s->cfg, rng);
    }
    s->stepped = true;
    Eigen::VectorXd v(2);
    v << s->st.alpha, s->st.beta();
    s->redraw(rng);
    return v;
  };
  js.records = [s]() { return std::vector<MhRecord>{s->st.accept.last}; };
  return js;
}

// ---------------------------------------------------------------- Student t

inline JointSampler t_joint(int n, double alpha_lower, bool amh) {
  struct S {
    TModelConfig cfg;
    TModelState st;
    TData data;
    int n;
    bool amh;
    double draw_alpha(RngStream& rng) const {
      return cfg.alpha_lower > 0.0 ? sample_truncated_gamma(rng, cfg.a0, cfg.b0, cfg.alpha_lower)
                                   : gamma(rng, cfg.a0, cfg.b0);
    }
    void redraw(RngStream& rng) {
      data.n = n;
      data.x.resize(n);
      for (int i = 0; i < n; ++i) {
        const double w = gamma(rng, st.alpha, st.alpha);
        data.x[i] = st.theta + std::sqrt(st.tau / w) * standard_normal(rng);
      }
      t_refresh_latents(st, data, rng);
    }
  };
  auto s = std::make_shared<S>();
  s->cfg.a = 1.0;
  s->cfg.b = 0.5;
  s->cfg.c = 5.0;
  s->cfg.d = 4.0;
  s->cfg.a0 = 6.0;
  s->cfg.b0 = 2.0;
  s->cfg.alpha_lower = alpha_lower;
  s->n = n;
  s->amh = amh;
  JointSampler js;
  js.name = std::string("student_t") + (amh ? " amh" : "") + (alpha_lower > 0.0 ? " truncated" : "");
  js.params = {"theta", "tau", "alpha"};
  js.prior_draw = [s](RngStream& rng) {
    Eigen::VectorXd v(3);
    const double tau = inverse_gamma(rng, s->cfg.c, s->cfg.d);
    v << normal(rng, s->cfg.b, tau / s->cfg.a), tau, s->draw_alpha(rng);
    return v;
  };
  js.reset = [s](RngStream& rng) {
    s->st.tau = inverse_gamma(rng, s->cfg.c, s->cfg.d);
    s->st.theta = normal(rng, s->cfg.b, s->st.tau / s->cfg.a);
    s->st.alpha = s->draw_alpha(rng);
    s->redraw(rng);
  };
  js.sweep = [s](RngStream& rng) {
    if (s->amh) {
      t_step_amh(s->st, s->data, s->cfg, rng);
    } else {
      t_step(s->st, s->data, s->cfg, rng);
    }
    Eigen::VectorXd v(3);
    v << s->st.theta, s->st.tau, s->st.alpha;
    s->redraw(rng);
    return v;
  };
  js.records = [s]() { return std::vector<MhRecord>{s->st.accept.last}; };
  return js;
}

// ---------------------------------------------------------------- Dirichlet-multinomial

inline JointSampler dirmult_joint(int n, int categories, int trials, PtnRoute route) {
  struct S {
    DirMultConfig cfg;
    DirMultState st;
    DirMultData data;
    int n, categories, trials;
    void redraw(RngStream& rng) {
      Eigen::MatrixXi counts(n, categories);
      for (int i = 0; i < n; ++i) {
        const Eigen::VectorXd p = st.log_p.row(i).transpose().array().exp();
        counts.row(i) = multinomial(rng, trials, p).transpose();
      }
      data = DirMultData::from(counts);
    }
  };
  auto s = std::make_shared<S>();
  s->cfg.a = 3.0;
  s->cfg.b = 2.0;
  s->cfg.route = route;
  s->n = n;
  s->categories = categories;
  s->trials = trials;
  const char* route_name[] = {"direct", "poisson", "normal"};
  JointSampler js;
  js.name = std::string("dir_mult ") + route_name[static_cast<int>(route)];
  for (int l = 0; l < categories; ++l) js.params.push_back("alpha_" + std::to_string(l));
  js.prior_draw = [s](RngStream& rng) {
    Eigen::VectorXd v(s->categories);
    for (auto& a : v) a = gamma(rng, s->cfg.a, s->cfg.b);
    return v;
  };
  js.reset = [s](RngStream& rng) {
    Eigen::VectorXd alpha(s->categories);
    for (auto& a : alpha) a = gamma(rng, s->cfg.a, s->cfg.b);
    Eigen::MatrixXd log_p(s->n, s->categories);
    for (int i = 0; i < s->n; ++i) log_p.row(i) = dirichlet_log(rng, alpha).transpose();
    s->st.log_p = log_p;
    s->redraw(rng);
    s->st = dirmult_init(s->data, s->cfg, rng);
    s->st.alpha = alpha;
    s->st.log_p = log_p;
  };
  js.sweep = [s](RngStream& rng) {
    dirmult_step(s->st, s->data, s->cfg, rng);
    s->redraw(rng);
    return Eigen::VectorXd(s->st.alpha);
  };
  js.records = [s]() {
    std::vector<MhRecord> r;
    for (const auto& a : s->st.accept) r.push_back(a.last);
    return r;
  };
  return js;
}

// ---------------------------------------------------------------- one-parameter Dirichlet

inline JointSampler onedir_joint(int n, int categories, int trials) {
  struct S {
    OneDirConfig cfg;
    OneDirState st;
    DirMultData data;
    int n, categories, trials;
    void redraw(RngStream& rng) {
      Eigen::MatrixXi counts(n, categories);
      for (int i = 0; i < n; ++i) {
        const Eigen::VectorXd p = st.log_p.row(i).transpose().array().exp();
        counts.row(i) = multinomial(rng, trials, p).transpose();
      }
      data = DirMultData::from(counts);
    }
  };
  auto s = std::make_shared<S>();
  s->cfg = {3.0, 2.0};
  s->n = n;
  s->categories = categories;
  s->trials = trials;
  JointSampler js;
  js.name = "one_dir";
  js.params = {"alpha", "p_00"};
  js.prior_draw = [s](RngStream& rng) {
    const double alpha = gamma(rng, s->cfg.a, s->cfg.b);
    const Eigen::VectorXd p = dirichlet(rng, Eigen::VectorXd::Constant(s->categories, alpha));
    Eigen::VectorXd v(2);
    v << alpha, p[0];
    return v;
  };
  js.reset = [s](RngStream& rng) {
    const double alpha = gamma(rng, s->cfg.a, s->cfg.b);
    Eigen::MatrixXd log_p(s->n, s->categories);
    for (int i = 0; i < s->n; ++i) {
      log_p.row(i) = dirichlet_log(rng, Eigen::VectorXd::Constant(s->categories, alpha)).transpose();
    }
    s->st.log_p = log_p;
    s->redraw(rng);
    s->st = onedir_init(s->data, s->cfg, rng);
    s->st.alpha = alpha;
    s->st.log_p = log_p;
  };
  js.sweep = [s](RngStream& rng) {
    onedir_step(s->st, s->data, s->cfg, rng);
    Eigen::VectorXd v(2);
    v << s->st.alpha, std::exp(s->st.log_p(0, 0));
    s->redraw(rng);
    return v;
  };
  js.records = []() { return std::vector<MhRecord>{}; };
  return js;
}

// ---------------------------------------------------------------- negative binomial

inline JointSampler negbin_joint(int n, PtnRoute route) {
  struct S {
    NegBinConfig cfg;
    NegBinState st;
    NegBinData data;
    Eigen::VectorXd p;
    int n;
    void redraw(RngStream& rng) {
      Eigen::VectorXi y(n);
      for (int i = 0; i < n; ++i) {
        y[i] = static_cast<int>(poisson(rng, gamma(rng, st.alpha, p[i] / (1.0 - p[i]))));
      }
      data = NegBinData::from(y, p);
    }
  };
  auto s = std::make_shared<S>();
  s->cfg.a = 3.0;
  s->cfg.b = 1.0;
  s->cfg.route = route;
  s->n = n;
  s->p = Eigen::VectorXd::LinSpaced(n, 0.3, 0.7);
  const char* route_name[] = {"direct", "poisson", "normal"};
  JointSampler js;
  js.name = std::string("neg_bin ") + route_name[static_cast<int>(route)];
  js.params = {"alpha"};
  js.prior_draw = [s](RngStream& rng) { return Eigen::VectorXd::Constant(1, gamma(rng, s->cfg.a, s->cfg.b)); };
  js.reset = [s](RngStream& rng) {
    const double alpha = gamma(rng, s->cfg.a, s->cfg.b);
    s->st.alpha = alpha;
    s->redraw(rng);
    s->st = negbin_init(s->data, s->cfg, rng);
    s->st.alpha = alpha;
  };
  js.sweep = [s](RngStream& rng) {
    negbin_step(s->st, s->data, s->cfg, rng);
    s->redraw(rng);
    return Eigen::VectorXd::Constant(1, s->st.alpha);
  };
  js.records = [s]() { return std::vector<MhRecord>{s->st.accept.last}; };
  return js;
}

// ---------------------------------------------------------------- Wishart

inline JointSampler wishart_joint(int n, int p) {
  struct S {
    WishartConfig cfg;
    WishartState st;
    WishartData data;
    int n, p;
    Eigen::MatrixXd draw_psi(RngStream& rng, double alpha, double beta) const {
      return sample_wishart(rng, 2.0 * alpha + p - 1.0, Eigen::MatrixXd::Identity(p, p) / beta);
    }
    void redraw(RngStream& rng) {
      const Eigen::LLT<Eigen::MatrixXd> llt(st.Psi);
      Eigen::MatrixXd x(n, p);
      for (int i = 0; i < n; ++i) {
        Eigen::VectorXd z(p);
        for (auto& v : z) v = standard_normal(rng);
        x.row(i) = llt.matrixU().solve(z).transpose();
      }
      data = WishartData::from(x);
    }
  };
  auto s = std::make_shared<S>();
  s->cfg = {3.0, 2.0, 3.0, 2.0};
  s->n = n;
  s->p = p;
  JointSampler js;
  js.name = "wishart p=" + std::to_string(p);
  js.params = {"alpha", "beta", "psi_00", "psi_01"};
  js.prior_draw = [s](RngStream& rng) {
    const double alpha = gamma(rng, s->cfg.a, s->cfg.b), beta = gamma(rng, s->cfg.c, s->cfg.d);
    const Eigen::MatrixXd psi = s->draw_psi(rng, alpha, beta);
    Eigen::VectorXd v(4);
    v << alpha, beta, psi(0, 0), psi(0, 1);
    return v;
  };
  js.reset = [s](RngStream& rng) {
    const double alpha = gamma(rng, s->cfg.a, s->cfg.b), beta = gamma(rng, s->cfg.c, s->cfg.d);
    s->st.Psi = s->draw_psi(rng, alpha, beta);
    s->redraw(rng);
    const Eigen::MatrixXd psi = s->st.Psi;
    s->st = wishart_init(s->data, s->cfg, rng);
    s->st.alpha = alpha;
    s->st.gamma_ratio = beta / alpha;
    s->st.Psi = psi;
  };
  js.sweep = [s](RngStream& rng) {
    wishart_step(s->st, s->data, s->cfg, rng);
    Eigen::VectorXd v(4);
    v << s->st.alpha, s->st.beta(), s->st.Psi(0, 0), s->st.Psi(0, 1);
    s->redraw(rng);
    return v;
  };
  js.records = [s]() { return std::vector<MhRecord>{s->st.accept.last}; };
  return js;
}

}  // namespace gir
