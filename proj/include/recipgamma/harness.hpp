#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"
#include "recipgamma/baseline_amh.hpp"
#include "recipgamma/diagnostics.hpp"
#include "recipgamma/models.hpp"

namespace recipgamma {

/// Truth parameters and sizes of the synthetic data. Only the fields of the
/// configured model are read; the parser fills model-specific defaults.
struct DataSpec {
  int n = 0;
  double alpha = 2.0;  // gamma, one_dir, neg_bin, wishart shape truth
  double beta = 1.0;   // gamma rate / Wishart scale truth
  double df = 1.0;     // student_t degrees of freedom (2 alpha)
  double theta = 3.0;
  double tau = 1.0;
  int trials = 500;          // multinomial row totals
  int categories = 10;       // L + 1 for one_dir
  Eigen::VectorXd alpha0;    // dir_mult truth vector
  double nb_p = 0.5;         // negative binomial success probability
  int dim = 4;               // Wishart dimension p
};

struct PriorSpec {
  double a = 1.0, b = 1.0, c = 1.0, d = 1.0;
  double a0 = 0.1, b0 = 0.1;
  double alpha_lower = 0.0;
};

struct ExperimentSpec {
  std::string model;   // gamma | student_t | dir_mult | one_dir | neg_bin | wishart
  std::string method;  // da | da_k | da_n | da_p | da_pt | amh
  std::string scenario;
  int K = 0;
  DataSpec data;
  PriorSpec prior;
  int burn_in = 1000;
  int draws = 4000;
  int replications = 1;
  std::uint64_t seed = 1;
  AmhSettings amh;
};

/// Parses and validates a JSON experiment document. Throws ConfigError whose
/// message starts with the offending field path.
ExperimentSpec parse_experiment(const nlohmann::json& doc);
/// Re-checks an already parsed spec (after CLI overrides, for instance).
void validate_experiment(const ExperimentSpec& spec);

using Dataset = std::variant<GammaData, TData, DirMultData, NegBinData, WishartData>;

/// Deterministic in (seed, rep_index); uses substream 1 of stream rep_index.
Dataset gen_data(const ExperimentSpec& spec, int rep_index);
nlohmann::json dataset_to_json(const Dataset& data);

std::vector<std::string> param_names(const ExperimentSpec& spec);
std::vector<double> param_truths(const ExperimentSpec& spec);

/// Burn-in plus recorded draws for one replication on substream 0 of stream
/// rep_index.
ChainResult run_chain(const ExperimentSpec& spec, const Dataset& data, int rep_index);

struct ReplicationResult {
  int rep = 0;
  bool ok = false;
  std::string error;
  std::vector<double> posterior_mean;
  std::vector<double> ess;
  std::vector<double> accept_rate;  // per parameter, 1 for Gibbs-updated ones
  double ct_seconds = 0.0;
  Eigen::MatrixXd kept_draws;       // every keep_every-th draw, empty unless requested
};

struct ReportRow {
  std::string model, method, scenario;
  int n = 0;
  std::string param;
  double ess = 0.0;
  double sess = 0.0;
  double ct_seconds = 0.0;
  double mse = 0.0;
  double accept_rate = 0.0;

  bool operator==(const ReportRow&) const = default;
};

struct ExperimentResult {
  std::vector<ReportRow> rows;
  std::vector<ReplicationResult> replications;
};

/// With keep_every > 0 the chain's draws thinned by that factor are kept.
ReplicationResult run_replication(const ExperimentSpec& spec, int rep_index, int keep_every = 0);

/// Runs every replication on `threads` workers and folds them in rep order.
/// Throws std::runtime_error when more than 5% of replications fail.
ExperimentResult run_experiment(const ExperimentSpec& spec, int threads = 1, int keep_every = 0);

/// RECIPGAMMA_THREADS when set, otherwise `requested`; at least 1.
int resolve_threads(int requested);

// ------------------------------------------------------------ reports

enum class ReportFormat { csv, json };

ReportFormat parse_format(const std::string& name);
std::string rows_to_csv(const std::vector<ReportRow>& rows);
std::vector<ReportRow> rows_from_csv(const std::string& text);
nlohmann::json rows_to_json(const std::vector<ReportRow>& rows);
std::vector<ReportRow> rows_from_json(const nlohmann::json& doc);

/// Writes the rows to `out_path`; throws std::domain_error on empty rows and
/// std::runtime_error when the file cannot be written.
void report(const std::vector<ReportRow>& rows, ReportFormat format, const std::string& out_path);
std::vector<ReportRow> read_report(const std::string& path);

std::string replications_to_csv(const ExperimentSpec& spec, const std::vector<ReplicationResult>& reps);

}  // namespace recipgamma
