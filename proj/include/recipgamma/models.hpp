#pragma once

#include <Eigen/Dense>
#include <vector>

#include "recipgamma/augmentation.hpp"
#include "recipgamma/baseline_amh.hpp"
#include "recipgamma/rng.hpp"

namespace recipgamma {

/// Outcome of the most recent independent-MH shape update.
struct MhRecord {
  double log_accept = 0.0;  // log acceptance probability actually used
  double proposal = 0.0;
  double m_eff = 1.0;
  int power = 1;
  bool accepted = false;
};

struct AcceptStats {
  long accepted = 0;
  long steps = 0;
  MhRecord last;

  void record(const MhRecord& r) {
    last = r;
    ++steps;
    accepted += r.accepted;
  }
  double rate() const { return steps == 0 ? 0.0 : static_cast<double>(accepted) / static_cast<double>(steps); }
};

// ---------------------------------------------------------------- gamma

struct GammaData {
  Eigen::VectorXd x;
  int n = 0;
  double sum_x = 0.0;
  double sum_log_x = 0.0;

  static GammaData from(const Eigen::VectorXd& x);
};

struct GammaModelConfig {
  double a = 1.0, b = 1.0, c = 1.0, d = 1.0;
  int K = 0;
};

struct GammaModelState {
  double alpha = 1.0;
  double gamma_ratio = 1.0;  // beta / alpha
  BetaLatents rho;
  KLevelLatents t_latents;
  AcceptStats accept;

  double beta() const { return alpha * gamma_ratio; }
};

GammaModelState gamma_init(const GammaData& data, const GammaModelConfig& cfg, RngStream& rng);
/// Ga(A, B) proposal for alpha given the current gamma ratio and latents.
ShapeConditionalParams gamma_shape_conditional(const GammaModelState& s, const GammaData& data,
                                               const GammaModelConfig& cfg);
void gamma_step(GammaModelState& s, const GammaData& data, const GammaModelConfig& cfg, RngStream& rng);
/// Same sweep with the alpha update replaced by the gamma-approximation MH baseline.
void gamma_step_amh(GammaModelState& s, const GammaData& data, const GammaModelConfig& cfg, RngStream& rng,
                    const AmhSettings& settings = {});
ShapeTarget gamma_shape_target(const GammaModelState& s, const GammaData& data, const GammaModelConfig& cfg);

// ---------------------------------------------------------------- Student t

struct TData {
  Eigen::VectorXd x;
  int n = 0;
};

struct TModelConfig {
  double a = 0.1, b = 0.0, c = 0.1, d = 0.1;  // N(theta | b, tau / a) IG(tau | c, d)
  double a0 = 0.1, b0 = 0.1;                  // Ga(alpha | a0, b0)
  double alpha_lower = 0.0;                   // truncation point, 0 = none
};

struct TModelState {
  double theta = 0.0;
  double tau = 1.0;
  double alpha = 1.0;
  Eigen::VectorXd w;
  BetaLatents rho;
  AcceptStats accept;
};

TModelState t_init(const TData& data, const TModelConfig& cfg, RngStream& rng);
/// Redraws w and rho from their full conditionals (used after the data change).
void t_refresh_latents(TModelState& s, const TData& data, RngStream& rng);
void t_step(TModelState& s, const TData& data, const TModelConfig& cfg, RngStream& rng);
void t_step_amh(TModelState& s, const TData& data, const TModelConfig& cfg, RngStream& rng,
                const AmhSettings& settings = {});

// ---------------------------------------------------------------- Dirichlet-multinomial

struct DirMultData {
  Eigen::MatrixXi counts;  // n x (L + 1)
  int n = 0;
  int categories = 0;

  static DirMultData from(const Eigen::MatrixXi& counts);
};

struct DirMultConfig {
  double a = 0.1, b = 1.0;
  PtnRoute route = PtnRoute::direct;
};

struct DirMultState {
  Eigen::MatrixXd log_p;        // n x (L + 1)
  Eigen::VectorXd alpha;        // L + 1
  Eigen::VectorXd log_z;        // n
  Eigen::VectorXd log_w;        // L + 1
  Eigen::MatrixXd log_inv_rho;  // (n - 1) x (L + 1)
  long rho_clamped = 0;
  std::vector<AcceptStats> accept;

  Eigen::MatrixXd p() const { return log_p.array().exp(); }
};

DirMultState dirmult_init(const DirMultData& data, const DirMultConfig& cfg, RngStream& rng);
/// PTN parameters of coordinate l under the current latents.
PtnParams dirmult_ptn_params(const DirMultState& s, const DirMultConfig& cfg, int l);
void dirmult_step(DirMultState& s, const DirMultData& data, const DirMultConfig& cfg, RngStream& rng);

// ---------------------------------------------------------------- one-parameter Dirichlet

struct OneDirConfig {
  double a = 1.0, b = 1.0;
};

struct OneDirState {
  Eigen::MatrixXd log_p;        // n x (L + 1)
  double alpha = 1.0;
  Eigen::MatrixXd log_inv_rho;  // n x L
  long rho_clamped = 0;
};

OneDirState onedir_init(const DirMultData& data, const OneDirConfig& cfg, RngStream& rng);
/// Rate of the alpha full conditional given p and rho.
double onedir_rate(const OneDirState& s, const OneDirConfig& cfg);
void onedir_step(OneDirState& s, const DirMultData& data, const OneDirConfig& cfg, RngStream& rng);

// ---------------------------------------------------------------- negative binomial

struct NegBinData {
  Eigen::VectorXi y;
  Eigen::VectorXd p;
  int n = 0;
  double sum_log_inv_p = 0.0;

  static NegBinData from(const Eigen::VectorXi& y, const Eigen::VectorXd& p);
};

struct NegBinConfig {
  double a = 1.0, b = 1.0;
  PtnRoute route = PtnRoute::direct;
};

struct NegBinState {
  double alpha = 1.0;
  Eigen::VectorXd log_z;
  double log_w = 0.0;
  BetaLatents rho;
  AcceptStats accept;
};

NegBinState negbin_init(const NegBinData& data, const NegBinConfig& cfg, RngStream& rng);
PtnParams negbin_ptn_params(const NegBinState& s, const NegBinData& data, const NegBinConfig& cfg);
void negbin_step(NegBinState& s, const NegBinData& data, const NegBinConfig& cfg, RngStream& rng);

// ---------------------------------------------------------------- Wishart

struct WishartData {
  Eigen::MatrixXd x;  // n x p
  int n = 0;
  int p = 0;
  Eigen::MatrixXd scatter;  // sum_i x_i x_i^T

  static WishartData from(const Eigen::MatrixXd& x);
};

struct WishartConfig {
  double a = 1.0, b = 1.0, c = 1.0, d = 1.0;
};

struct WishartState {
  Eigen::MatrixXd Psi;
  double alpha = 1.0;
  double gamma_ratio = 1.0;
  Eigen::VectorXd log_inv_rho;  // j = 2..m
  long rho_clamped = 0;
  AcceptStats accept;

  double beta() const { return alpha * gamma_ratio; }
};

WishartState wishart_init(const WishartData& data, const WishartConfig& cfg, RngStream& rng);
ShapeConditionalParams wishart_shape_conditional(const WishartState& s, const WishartData& data,
                                                 const WishartConfig& cfg);
void wishart_step(WishartState& s, const WishartData& data, const WishartConfig& cfg, RngStream& rng);

}  // namespace recipgamma
