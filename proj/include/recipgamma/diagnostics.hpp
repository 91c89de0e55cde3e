#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace recipgamma {

/// Post-burn-in output of one chain.
struct ChainResult {
  Eigen::MatrixXd draws;  // iterations x parameters
  std::vector<std::string> param_names;
  std::vector<double> accept_rate;  // one entry per MH block
  std::vector<int> param_block;     // MH block of each parameter, -1 when Gibbs-updated
  double wall_seconds = 0.0;
  std::uint64_t seed = 0;
  std::uint64_t stream_id = 0;
};

/// Effective sample size from Geyer's initial monotone sequence of paired
/// autocorrelations. Capped at 2N for antithetic chains. Throws
/// std::domain_error on series shorter than 10, non-finite values or a
/// constant series.
double ess(const Eigen::Ref<const Eigen::VectorXd>& series);

/// ESS per second of sampling time.
double sess(double ess_value, double wall_seconds);

struct MseReport {
  double mse = 0.0;
  std::optional<double> ratio_vs;  // comparator MSE / this MSE
};

MseReport mse_report(const std::vector<double>& estimates, double truth,
                     const std::vector<double>* comparator = nullptr);

/// Standard error of the mean by non-overlapping batch means.
double batch_means_se(const Eigen::Ref<const Eigen::VectorXd>& series, int batches = 50);

}  // namespace recipgamma
