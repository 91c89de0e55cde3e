#pragma once

// Log-domain special functions. Everything here is templated on the scalar
// type; the documented precision targets are for double.

#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

namespace recipgamma {

namespace detail {

template <typename Scalar>
inline void require_positive(Scalar x, const char* fn) {
  if (!(x > Scalar(0)) || !std::isfinite(x)) {
    throw std::domain_error(std::string(fn) + ": argument must be positive and finite, got " +
                            std::to_string(static_cast<double>(x)));
  }
}

// zeta(k) - 1 for k = 2..31.
inline constexpr std::array<long double, 30> kZetaMinusOne = {
    0.64493406684822643647L,     0.2020569031595942854L,      0.082323233711138191516L,
    0.036927755143369926331L,    0.017343061984449139715L,    0.0083492773819228268398L,
    0.0040773561979443393787L,   0.0020083928260822144179L,   0.00099457512781808533715L,
    0.0004941886041194645587L,   0.00024608655330804829864L,  0.00012271334757848914675L,
    6.1248135058704829259e-05L,  3.0588236307020493552e-05L,  1.5282259408651871733e-05L,
    7.6371976378997622736e-06L,  3.8172932649998398565e-06L,  1.9082127165539389257e-06L,
    9.5396203387279611315e-07L,  4.7693298678780646312e-07L,  2.3845050272773299e-07L,
    1.1921992596531107307e-07L,  5.9608189051259479612e-08L,  2.9803503514652280186e-08L,
    1.4901554828365041235e-08L,  7.450711789835429492e-09L,   3.7253340247884570548e-09L,
    1.8626597235130490064e-09L,  9.3132743241966818287e-10L,  4.656629065033784073e-10L,
};

inline constexpr long double kEulerGamma = 0.5772156649015328606065121L;

// B_{2k} / (2k (2k-1)), k = 1..10: coefficients of the Stirling series
// ln G(x) = (x - 1/2) ln x - x + ln(2 pi)/2 + sum_k c_k / x^{2k-1}.
inline constexpr std::array<long double, 10> kStirlingCoeffs = {
    1.0L / 12.0L,          -1.0L / 360.0L,         1.0L / 1260.0L,     -1.0L / 1680.0L,
    1.0L / 1188.0L,        -691.0L / 360360.0L,    1.0L / 156.0L,      -3617.0L / 122400.0L,
    43867.0L / 244188.0L,  -174611.0L / 125400.0L,
};

template <typename Scalar>
constexpr Scalar half_log_two_pi() {
  return Scalar(0.91893853320467274178032973640561764L);
}

// ln G(1 + z) for |z| <= 1/2, from the zeta series with the ln(1+z) term split off.
template <typename Scalar>
Scalar log_gamma_near_one(Scalar z) {
  Scalar sum = 0;
  Scalar power = z;
  for (std::size_t i = 0; i < kZetaMinusOne.size(); ++i) {
    power *= -z;
    const Scalar k = Scalar(i + 2);
    sum += Scalar(kZetaMinusOne[i]) * power / k;
  }
  // power holds -(-z)^k, so subtracting the sum restores the (-1)^k signs.
  return -std::log1p(z) + z * (Scalar(1) - Scalar(kEulerGamma)) - sum;
}

// Stirling-series remainder ln G(x) - [(x - 1/2) ln x - x + ln(2 pi)/2], x >= 10.
template <typename Scalar>
Scalar stirling_remainder(Scalar x) {
  const Scalar inv = Scalar(1) / x;
  const Scalar inv2 = inv * inv;
  Scalar sum = 0;
  for (std::size_t k = kStirlingCoeffs.size(); k-- > 0;) {
    sum = sum * inv2 + Scalar(kStirlingCoeffs[k]);
  }
  return sum * inv;
}

}  // namespace detail

/// ln G(x) for x > 0.
///
/// Small arguments go through the zeta-series expansion around 1 (and the
/// recurrence), arguments >= 10 through the Stirling series with ten
/// Bernoulli terms. Relative error is below 1e-13 on [1e-6, 1e12] in double.
template <typename Scalar>
Scalar log_gamma(Scalar x) {
  detail::require_positive(x, "log_gamma");
  if (x >= Scalar(10)) {
    return (x - Scalar(0.5)) * std::log(x) - x + detail::half_log_two_pi<Scalar>() +
           detail::stirling_remainder(x);
  }
  if (x < Scalar(0.5)) {
    // ln G(x) = ln G(1 + x) - ln x
    return detail::log_gamma_near_one(x) - std::log(x);
  }
  if (x < Scalar(1.5)) {
    return detail::log_gamma_near_one(x - Scalar(1));
  }
  if (x < Scalar(2.5)) {
    // ln G(x) = ln(x - 1) + ln G(x - 1)
    return std::log1p(x - Scalar(2)) + detail::log_gamma_near_one(x - Scalar(2));
  }
  Scalar shifted = x;
  Scalar log_prod = 0;
  while (shifted >= Scalar(2.5)) {
    shifted -= Scalar(1);
    log_prod += std::log(shifted);
  }
  return log_prod + std::log1p(shifted - Scalar(2)) + detail::log_gamma_near_one(shifted - Scalar(2));
}

template <typename Scalar>
Scalar log_beta(Scalar a, Scalar b) {
  return log_gamma(a) + log_gamma(b) - log_gamma(a + b);
}

/// psi(x) = d/dx ln G(x).
template <typename Scalar>
Scalar digamma(Scalar x) {
  detail::require_positive(x, "digamma");
  Scalar acc = 0;
  while (x < Scalar(6)) {
    acc -= Scalar(1) / x;
    x += Scalar(1);
  }
  const Scalar inv2 = Scalar(1) / (x * x);
  // sum_k B_{2k} / (2k x^{2k})
  const Scalar series =
      inv2 * (Scalar(1) / 12 -
              inv2 * (Scalar(1) / 120 -
                      inv2 * (Scalar(1) / 252 -
                              inv2 * (Scalar(1) / 240 -
                                      inv2 * (Scalar(1) / 132 -
                                              inv2 * (Scalar(691) / 32760 - inv2 * Scalar(1) / 12))))));
  return acc + std::log(x) - Scalar(0.5) / x - series;
}

/// psi'(x).
template <typename Scalar>
Scalar trigamma(Scalar x) {
  detail::require_positive(x, "trigamma");
  Scalar acc = 0;
  while (x < Scalar(6)) {
    acc += Scalar(1) / (x * x);
    x += Scalar(1);
  }
  const Scalar inv = Scalar(1) / x;
  const Scalar inv2 = inv * inv;
  const Scalar series =
      inv * (Scalar(1) +
             inv * (Scalar(0.5) +
                    inv * (Scalar(1) / 6 -
                           inv2 * (Scalar(1) / 30 -
                                   inv2 * (Scalar(1) / 42 -
                                           inv2 * (Scalar(1) / 30 -
                                                   inv2 * (Scalar(5) / 66 -
                                                           inv2 * (Scalar(691) / 2730 -
                                                                   inv2 * Scalar(7) / 6))))))));
  return acc + series;
}

/// log(1 + exp(x)) without overflow.
template <typename Scalar>
Scalar log1p_exp(Scalar x) {
  if (x > Scalar(35)) return x;
  if (x < Scalar(-35)) return std::exp(x);
  return std::log1p(std::exp(x));
}

template <typename Scalar>
Scalar log_add_exp(Scalar a, Scalar b) {
  if (a < b) std::swap(a, b);
  if (b == -std::numeric_limits<Scalar>::infinity()) return a;
  return a + std::log1p(std::exp(b - a));
}

/// Natural log of the regularized lower incomplete gamma P(a, x).
template <typename Scalar>
Scalar log_gamma_p(Scalar a, Scalar x);

/// Natural log of the regularized upper incomplete gamma Q(a, x) = 1 - P(a, x).
template <typename Scalar>
Scalar log_gamma_q(Scalar a, Scalar x);

namespace detail {

// Returns {log P, log Q}.
template <typename Scalar>
std::pair<Scalar, Scalar> log_incomplete_gamma(Scalar a, Scalar x) {
  require_positive(a, "incomplete_gamma");
  if (!(x >= Scalar(0)) || !std::isfinite(x)) {
    if (x == std::numeric_limits<Scalar>::infinity()) {
      return {Scalar(0), -std::numeric_limits<Scalar>::infinity()};
    }
    throw std::domain_error("incomplete_gamma: x must be non-negative");
  }
  if (x == Scalar(0)) return {-std::numeric_limits<Scalar>::infinity(), Scalar(0)};
  const Scalar log_prefactor = a * std::log(x) - x - log_gamma(a);
  constexpr Scalar eps = std::numeric_limits<Scalar>::epsilon();
  if (x < a + Scalar(1)) {
    // P(a, x) = e^{-x} x^a / G(a + 1) * sum_n x^n / ((a+1)...(a+n))
    Scalar term = Scalar(1) / a;
    Scalar sum = term;
    Scalar ap = a;
    for (int i = 0; i < 100000; ++i) {
      ap += Scalar(1);
      term *= x / ap;
      sum += term;
      if (std::fabs(term) < std::fabs(sum) * eps) break;
    }
    const Scalar log_p = log_prefactor + std::log(sum);
    const Scalar log_q = std::log1p(-std::exp(log_p));
    return {log_p, log_q};
  }
  // Modified Lentz evaluation of the continued fraction for Q.
  constexpr Scalar tiny = std::numeric_limits<Scalar>::min() / eps;
  Scalar b = x + Scalar(1) - a;
  Scalar c = Scalar(1) / tiny;
  Scalar d = Scalar(1) / b;
  Scalar h = d;
  for (int i = 1; i < 100000; ++i) {
    const Scalar an = -Scalar(i) * (Scalar(i) - a);
    b += Scalar(2);
    d = an * d + b;
    if (std::fabs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::fabs(c) < tiny) c = tiny;
    d = Scalar(1) / d;
    const Scalar delta = d * c;
    h *= delta;
    if (std::fabs(delta - Scalar(1)) < eps) break;
  }
  const Scalar log_q = log_prefactor + std::log(h);
  const Scalar log_p = std::log1p(-std::exp(log_q));
  return {log_p, log_q};
}

}  // namespace detail

template <typename Scalar>
Scalar log_gamma_p(Scalar a, Scalar x) {
  return detail::log_incomplete_gamma(a, x).first;
}

template <typename Scalar>
Scalar log_gamma_q(Scalar a, Scalar x) {
  return detail::log_incomplete_gamma(a, x).second;
}

/// ln of the Stirling factor g(xi) = xi^{xi - 1/2} / (G(xi) e^xi).
///
/// `correction` is value + ln(2 pi)/2 and always lies in (-1/(12 xi), 0); it
/// is kept separately so that differences between nearby arguments do not
/// lose digits to the constant.
template <typename Scalar>
struct StirlingFactorLog {
  Scalar value;
  Scalar correction;
};

template <typename Scalar>
StirlingFactorLog<Scalar> log_stirling_factor(Scalar xi) {
  detail::require_positive(xi, "log_stirling_factor");
  Scalar correction;
  if (xi >= Scalar(10)) {
    correction = -detail::stirling_remainder(xi);
  } else {
    correction = (xi - Scalar(0.5)) * std::log(xi) - log_gamma(xi) - xi + detail::half_log_two_pi<Scalar>();
  }
  return {correction - detail::half_log_two_pi<Scalar>(), correction};
}

/// log of the independent-MH acceptance probability for a shape proposal,
/// min(0, power * (log g(m xi_new) - log g(m xi_old))). power is 1 for the
/// beta-latent scheme and 2 when the gamma-power latent is also used.
template <typename Scalar>
Scalar mh_log_accept(Scalar m_eff, Scalar xi_new, Scalar xi_old, int power) {
  detail::require_positive(m_eff, "mh_log_accept");
  if (power != 1 && power != 2) throw std::domain_error("mh_log_accept: power must be 1 or 2");
  const Scalar diff = log_stirling_factor(m_eff * xi_new).correction -
                      log_stirling_factor(m_eff * xi_old).correction;
  return std::min(Scalar(0), Scalar(power) * diff);
}

/// Log-scale residual of a closed-form identity check.
template <typename Scalar>
struct IdentityResidual {
  Scalar residual;
  int m;
  Scalar xi;
  int k_levels;
};

namespace detail {

// ln C_m = -(m-1)/2 ln(2 pi) - sum_{j=2}^m ln G((m-j+1)/m)
template <typename Scalar>
Scalar log_multiplication_constant(int m) {
  Scalar out = -Scalar(m - 1) * half_log_two_pi<Scalar>();
  for (int j = 2; j <= m; ++j) out -= log_gamma(Scalar(m - j + 1) / Scalar(m));
  return out;
}

// sum_{j=2}^m ln B(xi + (j-1)/m, (m-j+1)/m): the closed-form beta-latent integrals.
template <typename Scalar>
Scalar log_beta_latent_integrals(Scalar xi, int m) {
  Scalar out = 0;
  for (int j = 2; j <= m; ++j) {
    out += log_beta(xi + Scalar(j - 1) / Scalar(m), Scalar(m - j + 1) / Scalar(m));
  }
  return out;
}

inline void require_m(int m) {
  if (m < 1) throw std::domain_error("identity verifier: m must be >= 1");
}

}  // namespace detail

/// Checks 1/G(xi)^m = C_m xi^{-m xi} xi^{m - 1/2} e^{m xi} prod_j B(...) g(m xi)
/// in log space.
template <typename Scalar>
IdentityResidual<Scalar> verify_multiplication_identity(Scalar xi, int m) {
  detail::require_positive(xi, "verify_multiplication_identity");
  detail::require_m(m);
  const Scalar mx = Scalar(m) * xi;
  const Scalar lhs = -Scalar(m) * log_gamma(xi);
  const Scalar rhs = detail::log_multiplication_constant<Scalar>(m) - mx * std::log(xi) +
                     (Scalar(m) - Scalar(0.5)) * std::log(xi) + mx +
                     detail::log_beta_latent_integrals(xi, m) + log_stirling_factor(mx).value;
  return {rhs - lhs, m, xi, 0};
}

/// Checks xi^{-m xi} = (m xi)^{1/2} e^{m xi} g(m xi) * G(m xi) / (m xi^2)^{m xi}.
template <typename Scalar>
IdentityResidual<Scalar> verify_gamma_power_identity(Scalar xi, int m) {
  detail::require_positive(xi, "verify_gamma_power_identity");
  detail::require_m(m);
  const Scalar mx = Scalar(m) * xi;
  const Scalar lhs = -mx * std::log(xi);
  const Scalar integral = log_gamma(mx) - mx * std::log(mx * xi);
  const Scalar rhs = Scalar(0.5) * std::log(mx) + mx + log_stirling_factor(mx).value + integral;
  return {rhs - lhs, m, xi, 0};
}

/// K-level duplication identity: the m-th reciprocal power rewritten with
/// beta latents plus K gamma latents t_k ~ Ga(2^{k-1} m xi + 1/2, 2^K m xi).
/// k_levels = 0 reduces to verify_multiplication_identity.
template <typename Scalar>
IdentityResidual<Scalar> verify_k_level_identity(Scalar xi, int m, int k_levels) {
  detail::require_positive(xi, "verify_k_level_identity");
  detail::require_m(m);
  if (k_levels < 0 || k_levels > 10) throw std::domain_error("verify_k_level_identity: K must be in [0, 10]");
  if (k_levels == 0) return verify_multiplication_identity(xi, m);
  const int K = k_levels;
  const Scalar two_k = std::ldexp(Scalar(1), K);
  const Scalar mx = Scalar(m) * xi;
  const Scalar scaled = two_k * mx;
  const Scalar log_c = Scalar(K) / 2 * (std::log(two_k * Scalar(m)) - 2 * detail::half_log_two_pi<Scalar>()) +
                       detail::log_multiplication_constant<Scalar>(m);
  Scalar t_integrals = 0;
  for (int k = 1; k <= K; ++k) {
    const Scalar shape = std::ldexp(Scalar(1), k - 1) * mx + Scalar(0.5);
    t_integrals += log_gamma(shape) - shape * std::log(scaled);
  }
  const Scalar lhs = -Scalar(m) * log_gamma(xi);
  const Scalar rhs = log_c - mx * std::log(xi) + (Scalar(m) + Scalar(K) / 2 - Scalar(0.5)) * std::log(xi) +
                     scaled + Scalar(2 * (two_k - 1) - K) * mx * std::numbers::ln2_v<Scalar> +
                     detail::log_beta_latent_integrals(xi, m) + t_integrals +
                     log_stirling_factor(scaled).value;
  return {rhs - lhs, m, xi, k_levels};
}

}  // namespace recipgamma
