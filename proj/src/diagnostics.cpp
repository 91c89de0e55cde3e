#include "recipgamma/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "recipgamma/errors.hpp"

namespace recipgamma {

namespace {

// Biased (1/N) autocovariance at lag k of a centered series.
double autocov(const Eigen::VectorXd& c, Eigen::Index k) {
  const Eigen::Index n = c.size();
  return c.head(n - k).dot(c.tail(n - k)) / static_cast<double>(n);
}

}  // namespace

double ess(const Eigen::Ref<const Eigen::VectorXd>& series) {
  const Eigen::Index n = series.size();
  require(n >= 10, "ess: series needs at least 10 values");
  require(series.allFinite(), "ess: series has non-finite values");

  const Eigen::VectorXd c = series.array() - series.mean();
  const double c0 = autocov(c, 0);
  const double scale = std::max(1.0, series.cwiseAbs().maxCoeff());
  if (!(c0 > 1e-28 * scale * scale)) throw std::domain_error("ess: degenerate (constant) series");

  // Pairs Gamma_k = rho_{2k} + rho_{2k+1}; sum while positive, forcing monotone decrease.
  double sum = 0.0;
  double prev = std::numeric_limits<double>::infinity();
  for (Eigen::Index k = 0; 2 * k + 1 < n; ++k) {
    double pair = (autocov(c, 2 * k) + autocov(c, 2 * k + 1)) / c0;
    if (pair <= 0.0) break;
    pair = std::min(pair, prev);
    sum += pair;
    prev = pair;
  }
  const double tau = -1.0 + 2.0 * sum;
  const double N = static_cast<double>(n);
  if (tau <= 0.5) return 2.0 * N;
  return std::min(N / tau, 2.0 * N);
}

double sess(double ess_value, double wall_seconds) {
  require(ess_value > 0.0 && wall_seconds > 0.0, "sess: ess and wall time must be positive");
  return ess_value / wall_seconds;
}

MseReport mse_report(const std::vector<double>& estimates, double truth, const std::vector<double>* comparator) {
  require(estimates.size() >= 2, "mse_report: needs at least two replications");
  auto mse_of = [truth](const std::vector<double>& v) {
    double acc = 0.0;
    for (double e : v) acc += (e - truth) * (e - truth);
    return acc / static_cast<double>(v.size());
  };
  MseReport out;
  out.mse = mse_of(estimates);
  if (comparator) {
    const double other = mse_of(*comparator);
    if (out.mse == 0.0)
      out.ratio_vs = other == 0.0 ? 1.0 : std::numeric_limits<double>::infinity();
    else
      out.ratio_vs = other / out.mse;
  }
  return out;
}

double batch_means_se(const Eigen::Ref<const Eigen::VectorXd>& series, int batches) {
  require(batches >= 2 && series.size() >= 2 * batches, "batch_means_se: too few values for the batch count");
  const Eigen::Index len = series.size() / batches;
  Eigen::VectorXd means(batches);
  for (int b = 0; b < batches; ++b) means[b] = series.segment(b * len, len).mean();
  const double m = means.mean();
  const double var = (means.array() - m).square().sum() / (batches - 1);
  return std::sqrt(var / batches);
}

}  // namespace recipgamma
