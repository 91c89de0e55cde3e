#include "recipgamma/dists.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

#include "recipgamma/errors.hpp"
#include "recipgamma/special_fns.hpp"

namespace recipgamma {

namespace {

bool positive_finite(double x) { return x > 0.0 && std::isfinite(x); }

// Marsaglia-Tsang for shape >= 1, unit rate.
double standard_gamma_ge1(RngStream& rng, double shape) {
  const double d = shape - 1.0 / 3.0;
  const double c = 1.0 / std::sqrt(9.0 * d);
  for (;;) {
    double x, v;
    do {
      x = standard_normal(rng);
      v = 1.0 + c * x;
    } while (v <= 0.0);
    v = v * v * v;
    const double u = rng.uniform();
    if (u < 1.0 - 0.0331 * (x * x) * (x * x)) return d * v;
    if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v;
  }
}

double log_sum_exp(const Eigen::Ref<const Eigen::VectorXd>& v) {
  const double top = v.maxCoeff();
  return top + std::log((v.array() - top).exp().sum());
}

}  // namespace

double standard_normal(RngStream& rng) {
  for (;;) {
    const double u = 2.0 * rng.uniform() - 1.0;
    const double v = 2.0 * rng.uniform() - 1.0;
    const double s = u * u + v * v;
    if (s < 1.0 && s > 0.0) return u * std::sqrt(-2.0 * std::log(s) / s);
  }
}

double normal(RngStream& rng, double mean, double variance) {
  require(std::isfinite(mean), "normal: mean must be finite");
  require(variance >= 0.0 && std::isfinite(variance), "normal: variance must be non-negative");
  return mean + std::sqrt(variance) * standard_normal(rng);
}

double exponential(RngStream& rng, double rate) {
  require(positive_finite(rate), "exponential: rate must be positive");
  return -std::log(rng.uniform()) / rate;
}

double log_standard_gamma(RngStream& rng, double shape) {
  if (!positive_finite(shape)) throw std::domain_error("gamma: shape must be positive, got " + std::to_string(shape));
  if (shape >= 1.0) return std::log(standard_gamma_ge1(rng, shape));
  // G(a) = G(a + 1) U^{1/a}
  return std::log(standard_gamma_ge1(rng, shape + 1.0)) + std::log(rng.uniform()) / shape;
}

double gamma(RngStream& rng, double shape, double rate) {
  if (!positive_finite(shape)) throw std::domain_error("gamma: shape must be positive, got " + std::to_string(shape));
  if (!positive_finite(rate)) throw std::domain_error("gamma: rate must be positive, got " + std::to_string(rate));
  if (shape >= 1.0) return standard_gamma_ge1(rng, shape) / rate;
  return std::exp(log_standard_gamma(rng, shape)) / rate;
}

double inverse_gamma(RngStream& rng, double shape, double scale) {
  require(positive_finite(scale), "inverse_gamma: scale must be positive");
  return 1.0 / gamma(rng, shape, scale);
}

BetaLogDraw beta_log(RngStream& rng, double a, double b) {
  if (!positive_finite(a)) throw std::domain_error("beta: alpha must be positive, got " + std::to_string(a));
  if (!positive_finite(b)) throw std::domain_error("beta: beta must be positive, got " + std::to_string(b));
  const double lx = log_standard_gamma(rng, a);
  const double ly = log_standard_gamma(rng, b);
  const double total = log_add_exp(lx, ly);
  BetaLogDraw out{0.0, lx - total, ly - total, false};
  out.value = std::exp(out.log_value);
  if (out.value <= 0.0) {
    out.value = std::numeric_limits<double>::denorm_min();
    out.clamped = true;
  } else if (out.value >= 1.0) {
    out.value = std::nextafter(1.0, 0.0);
    out.clamped = true;
  }
  return out;
}

double beta(RngStream& rng, double a, double b) { return beta_log(rng, a, b).value; }

std::uint64_t poisson(RngStream& rng, double lambda) {
  require(lambda >= 0.0 && std::isfinite(lambda), "poisson: lambda must be non-negative");
  if (lambda == 0.0) return 0;
  if (lambda < 10.0) {
    for (;;) {
      double prob = std::exp(-lambda);
      double cdf = prob;
      const double u = rng.uniform();
      std::uint64_t k = 0;
      while (u > cdf && k < 1000) {
        ++k;
        prob *= lambda / static_cast<double>(k);
        cdf += prob;
      }
      if (k < 1000) return k;
    }
  }
  // Hormann's transformed rejection with squeeze (PTRS).
  const double slam = std::sqrt(lambda);
  const double loglam = std::log(lambda);
  const double b = 0.931 + 2.53 * slam;
  const double a = -0.059 + 0.02483 * b;
  const double inv_alpha = 1.1239 + 1.1328 / (b - 3.4);
  const double vr = 0.9277 - 3.6224 / (b - 2.0);
  for (;;) {
    const double u = rng.uniform() - 0.5;
    const double v = rng.uniform();
    const double us = 0.5 - std::fabs(u);
    const double k = std::floor((2.0 * a / us + b) * u + lambda + 0.43);
    if (us >= 0.07 && v <= vr) return static_cast<std::uint64_t>(k);
    if (k < 0.0 || (us < 0.013 && v > us)) continue;
    if (std::log(v) + std::log(inv_alpha) - std::log(a / (us * us) + b) <=
        -lambda + k * loglam - log_gamma(k + 1.0)) {
      return static_cast<std::uint64_t>(k);
    }
  }
}

std::uint64_t binomial(RngStream& rng, std::uint64_t n, double p) {
  require(p >= 0.0 && p <= 1.0, "binomial: p must lie in [0, 1]");
  if (n == 0 || p == 0.0) return 0;
  if (p == 1.0) return n;
  if (p > 0.5) return n - binomial(rng, n, 1.0 - p);
  const double dn = static_cast<double>(n);
  if (n <= 64 || dn * p < 20.0) {
    const double q = 1.0 - p;
    const double ratio = p / q;
    const double f0 = std::exp(dn * std::log1p(-p));
    for (;;) {
      double u = rng.uniform();
      double f = f0;
      std::uint64_t k = 0;
      while (u > f && k < n) {
        u -= f;
        ++k;
        f *= ratio * static_cast<double>(n - k + 1) / static_cast<double>(k);
      }
      if (u <= f) return k;
    }
  }
  // The j-th order statistic of n uniforms splits the trials into two
  // smaller binomials (exact recursive decomposition).
  const std::uint64_t j = (n + 1) / 2;
  const double u = beta(rng, static_cast<double>(j), static_cast<double>(n - j + 1));
  if (u < p) return j + binomial(rng, n - j, (p - u) / (1.0 - u));
  return binomial(rng, j - 1, p / u);
}

Eigen::VectorXd dirichlet_log(RngStream& rng, const Eigen::Ref<const Eigen::VectorXd>& alpha) {
  require(alpha.size() >= 1, "dirichlet: alpha must be non-empty");
  Eigen::VectorXd logs(alpha.size());
  for (Eigen::Index i = 0; i < alpha.size(); ++i) {
    if (!positive_finite(alpha[i])) throw std::domain_error("dirichlet: alpha[" + std::to_string(i) + "] must be positive");
    logs[i] = log_standard_gamma(rng, alpha[i]);
  }
  return logs.array() - log_sum_exp(logs);
}

Eigen::VectorXd dirichlet(RngStream& rng, const Eigen::Ref<const Eigen::VectorXd>& alpha) {
  return dirichlet_log(rng, alpha).array().exp();
}

Eigen::VectorXi multinomial(RngStream& rng, int trials, const Eigen::Ref<const Eigen::VectorXd>& probs) {
  require(trials >= 0, "multinomial: N must be non-negative");
  require(probs.size() >= 1, "multinomial: p must be non-empty");
  require((probs.array() >= 0.0).all(), "multinomial: p entries must be non-negative");
  double mass = probs.sum();
  require(mass > 0.0 && std::isfinite(mass), "multinomial: p must have positive finite total");
  Eigen::VectorXi counts = Eigen::VectorXi::Zero(probs.size());
  std::uint64_t remaining = static_cast<std::uint64_t>(trials);
  for (Eigen::Index l = 0; l + 1 < probs.size() && remaining > 0; ++l) {
    const double conditional = mass > 0.0 ? std::clamp(probs[l] / mass, 0.0, 1.0) : 1.0;
    const std::uint64_t draw = binomial(rng, remaining, conditional);
    counts[l] = static_cast<int>(draw);
    remaining -= draw;
    mass -= probs[l];
  }
  counts[probs.size() - 1] += static_cast<int>(remaining);
  return counts;
}

double student_t(RngStream& rng, double loc, double scale, double df) {
  require(std::isfinite(loc), "student_t: loc must be finite");
  require(positive_finite(scale), "student_t: scale must be positive");
  require(positive_finite(df), "student_t: df must be positive");
  const double precision = gamma(rng, 0.5 * df, 0.5 * df);
  return loc + scale * standard_normal(rng) / std::sqrt(precision);
}

double inverse_gaussian(RngStream& rng, double mu, double lambda) {
  require(positive_finite(mu), "inverse_gaussian: mu must be positive");
  require(positive_finite(lambda), "inverse_gaussian: lambda must be positive");
  const double nu = standard_normal(rng);
  const double q = mu * nu * nu / (2.0 * lambda);
  // mu (1 + q - sqrt(2q + q^2)) rewritten without cancellation
  const double x = mu / (1.0 + q + std::sqrt(q * (2.0 + q)));
  if (rng.uniform() * (mu + x) <= mu) return x;
  return mu * mu / x;
}

double sample_truncated_gamma(RngStream& rng, double shape, double rate, double lower) {
  require(positive_finite(shape), "truncated_gamma: shape must be positive");
  require(positive_finite(rate), "truncated_gamma: rate must be positive");
  require(lower >= 0.0 && std::isfinite(lower), "truncated_gamma: lower must be non-negative");
  if (lower == 0.0) return gamma(rng, shape, rate);
  const double t = rate * lower;
  const double log_tail = log_gamma_q(shape, t);
  if (log_tail < std::log(1e-300)) {
    throw InfeasibleTruncation("truncated_gamma: tail mass below 1e-300 for shape " + std::to_string(shape) +
                               ", rate*lower " + std::to_string(t));
  }
  if (log_tail >= std::log(0.25)) {
    for (;;) {
      const double x = gamma(rng, shape, rate);
      if (x > lower) return x;
    }
  }
  if (shape < 1.0) {
    // t + Exp(1) dominates y^{k-1} e^{-y} on (t, inf) since y^{k-1} decreases.
    for (;;) {
      const double y = t - std::log(rng.uniform());
      if (std::log(rng.uniform()) <= (shape - 1.0) * std::log(y / t)) return y / rate;
    }
  }
  // Shifted exponential proposal with the optimal rate for the tail.
  const double lam = (t - shape + std::sqrt((t - shape) * (t - shape) + 4.0 * t)) / (2.0 * t);
  const double y_peak = std::max(t, (shape - 1.0) / (1.0 - lam));
  for (;;) {
    const double y = t - std::log(rng.uniform()) / lam;
    const double log_ratio = (shape - 1.0) * std::log(y / y_peak) - (1.0 - lam) * (y - y_peak);
    if (std::log(rng.uniform()) <= log_ratio) return y / rate;
  }
}

namespace {

// Mode of x^{p-1} exp(-omega (x + 1/x) / 2).
double gig_mode(double p, double omega) {
  if (p >= 1.0) return (std::sqrt((p - 1.0) * (p - 1.0) + omega * omega) + (p - 1.0)) / omega;
  return omega / (std::sqrt((1.0 - p) * (1.0 - p) + omega * omega) + (1.0 - p));
}

// The samplers below draw from x^{p-1} exp(-omega (x + 1/x) / 2), p >= 0.

// Ratio-of-uniforms with mode shift (Dagpunar / Lehner).
double gig_rou_shift(RngStream& rng, double p, double omega) {
  const double t = 0.5 * (p - 1.0);
  const double s = 0.25 * omega;
  const double xm = gig_mode(p, omega);
  const double nc = t * std::log(xm) - s * (xm + 1.0 / xm);
  const double a = -(2.0 * (p + 1.0) / omega + xm);
  const double b = 2.0 * (p - 1.0) * xm / omega - 1.0;
  const double c = xm;
  const double pp = b - a * a / 3.0;
  const double qq = (2.0 * a * a * a) / 27.0 - (a * b) / 3.0 + c;
  const double fi = std::acos(-qq / (2.0 * std::sqrt(-(pp * pp * pp) / 27.0)));
  const double fak = 2.0 * std::sqrt(-pp / 3.0);
  const double y1 = fak * std::cos(fi / 3.0) - a / 3.0;
  const double y2 = fak * std::cos(fi / 3.0 + 4.0 / 3.0 * std::numbers::pi) - a / 3.0;
  const double uplus = (y1 - xm) * std::exp(t * std::log(y1) - s * (y1 + 1.0 / y1) - nc);
  const double uminus = (y2 - xm) * std::exp(t * std::log(y2) - s * (y2 + 1.0 / y2) - nc);
  for (;;) {
    const double u = uminus + rng.uniform() * (uplus - uminus);
    const double v = rng.uniform();
    const double x = u / v + xm;
    if (x > 0.0 && std::log(v) <= t * std::log(x) - s * (x + 1.0 / x) - nc) return x;
  }
}

// Ratio-of-uniforms without shift (Lehner).
double gig_rou_noshift(RngStream& rng, double p, double omega) {
  const double t = 0.5 * (p - 1.0);
  const double s = 0.25 * omega;
  const double xm = gig_mode(p, omega);
  const double nc = t * std::log(xm) - s * (xm + 1.0 / xm);
  const double ym = ((p + 1.0) + std::sqrt((p + 1.0) * (p + 1.0) + omega * omega)) / omega;
  const double um = std::exp(0.5 * (p + 1.0) * std::log(ym) - s * (ym + 1.0 / ym) - nc);
  for (;;) {
    const double u = um * rng.uniform();
    const double v = rng.uniform();
    const double x = u / v;
    if (std::log(v) <= t * std::log(x) - s * (x + 1.0 / x) - nc) return x;
  }
}

// Hormann-Leydold rejection with a constant hat on the log-concave part,
// for 0 <= p < 1 and small omega.
double gig_small_omega(RngStream& rng, double p, double omega) {
  const double xm = gig_mode(p, omega);
  const double x0 = omega / (1.0 - p);
  const double k0 = std::exp((p - 1.0) * std::log(xm) - 0.5 * omega * (xm + 1.0 / xm));
  double area[3];
  area[0] = k0 * x0;
  double k1, k2;
  if (x0 >= 2.0 / omega) {
    k1 = 0.0;
    area[1] = 0.0;
    k2 = std::pow(x0, p - 1.0);
    area[2] = k2 * 2.0 * std::exp(-omega * x0 / 2.0) / omega;
  } else {
    k1 = std::exp(-omega);
    area[1] = p == 0.0 ? k1 * std::log(2.0 / (omega * omega))
                       : k1 / p * (std::pow(2.0 / omega, p) - std::pow(x0, p));
    k2 = std::pow(2.0 / omega, p - 1.0);
    area[2] = k2 * 2.0 * std::exp(-1.0) / omega;
  }
  const double total = area[0] + area[1] + area[2];
  for (;;) {
    double v = total * rng.uniform();
    double x, hx;
    if (v <= area[0]) {
      x = x0 * v / area[0];
      hx = k0;
    } else if ((v -= area[0]) <= area[1]) {
      if (p == 0.0) {
        x = omega * std::exp(std::exp(omega) * v);
        hx = k1 / x;
      } else {
        x = std::pow(std::pow(x0, p) + p / k1 * v, 1.0 / p);
        hx = k1 * std::pow(x, p - 1.0);
      }
    } else {
      v -= area[1];
      const double start = std::max(x0, 2.0 / omega);
      x = -2.0 / omega * std::log(std::exp(-omega / 2.0 * start) - omega / (2.0 * k2) * v);
      hx = k2 * std::exp(-omega / 2.0 * x);
    }
    const double u = rng.uniform() * hx;
    if (std::log(u) <= (p - 1.0) * std::log(x) - omega / 2.0 * (x + 1.0 / x)) return x;
  }
}

}  // namespace

double sample_gig(RngStream& rng, const GigParams& g) {
  require(std::isfinite(g.p), "gig: p must be finite");
  require(g.a >= 0.0 && std::isfinite(g.a), "gig: a must be non-negative");
  require(g.b >= 0.0 && std::isfinite(g.b), "gig: b must be non-negative");
  require(!(g.b == 0.0 && g.p <= 0.0), "gig: b = 0 requires p > 0");
  require(!(g.a == 0.0 && g.p >= 0.0), "gig: a = 0 requires p < 0");
  if (g.b == 0.0) return gamma(rng, g.p, 0.5 * g.a);
  if (g.a == 0.0) return 1.0 / gamma(rng, -g.p, 0.5 * g.b);
  if (g.p == -0.5) return inverse_gaussian(rng, std::sqrt(g.b / g.a), g.b);
  if (g.p == 0.5) return 1.0 / inverse_gaussian(rng, std::sqrt(g.a / g.b), g.a);

  const double p = std::fabs(g.p);
  const double omega = std::sqrt(g.a * g.b);
  // For p > 1 and small omega a gamma proposal with acceptance
  // exp(-b / (2x)) is exact and accepts with probability >= 0.9.
  if (p > 1.0 && omega * omega < 0.4 * (p - 1.0)) {
    const double rate = 0.5 * (g.p > 0 ? g.a : g.b);
    const double other = g.p > 0 ? g.b : g.a;
    for (;;) {
      const double x = gamma(rng, p, rate);
      if (std::log(rng.uniform()) <= -0.5 * other / x) return g.p > 0 ? x : 1.0 / x;
    }
  }
  const double scale = std::sqrt(g.b / g.a);
  double y;
  if (p > 2.0 || omega > 3.0) {
    y = gig_rou_shift(rng, p, omega);
  } else if (p >= 1.0 - 2.25 * omega * omega || omega > 0.2) {
    y = gig_rou_noshift(rng, p, omega);
  } else {
    y = gig_small_omega(rng, p, omega);
  }
  return g.p < 0.0 ? scale / y : scale * y;
}

double sample_ptn(RngStream& rng, const PtnParams& params, long* proposals) {
  const double c = params.c;
  if (!std::isfinite(c) || c < 1.0) throw std::domain_error("ptn: c must be >= 1 (unsupported regime), got " + std::to_string(c));
  require(std::isfinite(params.b), "ptn: b must be finite");
  require(params.a >= 0.0 && std::isfinite(params.a) && (params.a > 0.0 || params.b < 0.0),
          "ptn: a must be positive");
  // Ga(c, -b) proposal thinned by exp(-a xi^2); acceptance is at least
  // exp(-a c (c + 1) / b^2) by Jensen.
  if (params.b < 0.0 && params.a * c * (c + 1.0) < 0.1 * params.b * params.b) {
    for (;;) {
      if (proposals) ++*proposals;
      const double xi = gamma(rng, c, -params.b);
      if (std::log(rng.uniform()) <= -params.a * xi * xi) return xi;
    }
  }
  const double root_a = std::sqrt(params.a);
  const double beta = params.b / root_a;
  const double cm1 = c - 1.0;

  // Work with y = sqrt(a) xi, log density h(y) = (c-1) ln y - y^2 + beta y.
  const double disc = std::sqrt(beta * beta + 8.0 * cm1);
  const double mode = beta >= 0.0 ? (beta + disc) / 4.0 : (cm1 > 0.0 ? 2.0 * cm1 / (disc - beta) : 0.0);

  // h(y) - h(mode), arranged to avoid cancellation.
  auto rel = [&](double y) {
    const double log_term = cm1 == 0.0 ? 0.0 : cm1 * std::log(y / mode);
    return log_term - (y - mode) * (y + mode - beta);
  };
  auto slope = [&](double y) { return (cm1 == 0.0 ? 0.0 : cm1 / y) - 2.0 * y + beta; };
  // Bisection for rel(y) = -1 given rel(inside) > -1 >= rel(outside).
  auto drop_point = [&](double inside, double outside) {
    for (int it = 0; it < 60; ++it) {
      const double mid = 0.5 * (inside + outside);
      (rel(mid) > -1.0 ? inside : outside) = mid;
    }
    return outside;
  };

  const double width = 1.0 / std::sqrt(2.0 + (mode > 0.0 ? cm1 / (mode * mode) : 0.0));
  double left = 0.0;
  if (mode > 0.0) {
    if (cm1 > 0.0) {
      double outside = 0.5 * mode;
      while (rel(outside) > -1.0) outside *= 0.5;
      left = drop_point(mode, outside);
    } else if (rel(0.0) < -1.0) {
      left = drop_point(mode, 0.0);
    }
  }
  double outside = mode + 2.0 * width;
  while (rel(outside) > -1.0) outside += 2.0 * width;
  const double right = drop_point(mode, outside);

  // Envelope on the log scale relative to the mode: flat on [left, right],
  // tangent lines to h outside.
  const double left_slope = left > 0.0 ? slope(left) : 0.0;
  const double left_level = left > 0.0 ? rel(left) : 0.0;
  const double right_slope = slope(right);
  const double right_level = rel(right);
  const double mass_mid = right - left;
  const double mass_left = left > 0.0 ? std::exp(left_level) * -std::expm1(-left_slope * left) / left_slope : 0.0;
  const double mass_right = std::exp(right_level) / -right_slope;
  const double total = mass_mid + mass_left + mass_right;

  for (;;) {
    if (proposals) ++*proposals;
    const double v = total * rng.uniform();
    double y, env;
    if (v < mass_mid) {
      y = left + v;
      env = 0.0;
    } else if (v < mass_mid + mass_left) {
      // Exponential truncated to (0, left), growing towards left.
      const double e = -std::log1p(rng.uniform() * std::expm1(-left_slope * left)) / left_slope;
      y = left - e;
      env = left_level - left_slope * e;
    } else {
      const double e = std::log(rng.uniform()) / right_slope;
      y = right + e;
      env = right_level + right_slope * e;
    }
    if (!(y > 0.0)) continue;
    if (std::log(rng.uniform()) <= rel(y) - env) return y / root_a;
  }
}

Eigen::MatrixXd sample_wishart(RngStream& rng, double df, const Eigen::Ref<const Eigen::MatrixXd>& scale) {
  const Eigen::Index p = scale.rows();
  require(p >= 1 && scale.cols() == p, "wishart: scale must be square");
  require(std::isfinite(df) && df > static_cast<double>(p - 1), "wishart: df must exceed p - 1");
  require(scale.isApprox(scale.transpose(), 1e-10), "wishart: scale must be symmetric");
  Eigen::LLT<Eigen::MatrixXd> llt(scale);
  require(llt.info() == Eigen::Success, "wishart: scale must be positive definite");
  // Bartlett: A lower triangular, A_ii^2 ~ chi^2_{df - i}, A_ij ~ N(0, 1).
  Eigen::MatrixXd bartlett = Eigen::MatrixXd::Zero(p, p);
  for (Eigen::Index i = 0; i < p; ++i) {
    bartlett(i, i) = std::sqrt(2.0 * gamma(rng, 0.5 * (df - static_cast<double>(i)), 1.0));
    for (Eigen::Index j = 0; j < i; ++j) bartlett(i, j) = standard_normal(rng);
  }
  const Eigen::MatrixXd factor = llt.matrixL() * bartlett;
  Eigen::MatrixXd draw = factor * factor.transpose();
  return 0.5 * (draw + draw.transpose());
}

}  // namespace recipgamma
