#include "recipgamma/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <memory>
#include <stdexcept>
#include <thread>

#include "recipgamma/dists.hpp"
#include "recipgamma/errors.hpp"

namespace recipgamma {

using nlohmann::json;

namespace {

constexpr std::uint32_t kSamplerSubstream = 0;
constexpr std::uint32_t kDataSubstream = 1;

[[noreturn]] void config_fail(const std::string& path, const std::string& what) {
  throw ConfigError(path + ": " + what);
}

template <typename T>
T get_or(const json& obj, const char* key, const std::string& path, T fallback) {
  if (!obj.contains(key)) return fallback;
  try {
    return obj.at(key).get<T>();
  } catch (const json::exception& e) {
    config_fail(path + "." + key, e.what());
  }
}

bool is_one_of(const std::string& s, std::initializer_list<const char*> options) {
  return std::any_of(options.begin(), options.end(), [&](const char* o) { return s == o; });
}

bool method_valid(const std::string& model, const std::string& method) {
  if (model == "gamma") return is_one_of(method, {"da", "da_k", "amh"});
  if (model == "student_t") return is_one_of(method, {"da", "amh"});
  if (model == "dir_mult" || model == "neg_bin") return is_one_of(method, {"da", "da_n", "da_p", "da_pt"});
  return method == "da";
}

PtnRoute route_for(const std::string& method) {
  if (method == "da_n") return PtnRoute::normal;
  if (method == "da_p") return PtnRoute::poisson;
  return PtnRoute::direct;
}

Eigen::VectorXd scenario_alpha0(const std::string& tag) {
  Eigen::VectorXd a(10);
  if (tag == "I") {
    a.setConstant(0.1);
  } else if (tag == "II") {
    for (int l = 0; l < 10; ++l) a[l] = (l + 1) / 10.0;
  } else {
    config_fail("scenario", "unknown dir_mult scenario '" + tag + "' (expected I or II, or give data.alpha0)");
  }
  return a;
}

void apply_model_defaults(ExperimentSpec& s) {
  DataSpec& d = s.data;
  PriorSpec& p = s.prior;
  if (s.model == "gamma") {
    d.n = 30;
  } else if (s.model == "student_t") {
    d.n = 10;
    p = {0.1, 0.0, 0.1, 0.1, 0.1, 0.1, 0.0};
  } else if (s.model == "dir_mult") {
    d.n = 100;
    p.a = 0.1;
    p.b = 1.0;
  } else if (s.model == "one_dir") {
    d.n = 50;
    d.alpha = 1.0;
    d.categories = 5;
    d.trials = 100;
  } else if (s.model == "neg_bin") {
    d.n = 200;
    d.alpha = 3.0;
  } else if (s.model == "wishart") {
    d.n = 200;
    d.alpha = 2.0;
    d.beta = 2.0;
  }
}

}  // namespace

void validate_experiment(const ExperimentSpec& s) {
  if (!is_one_of(s.model, {"gamma", "student_t", "dir_mult", "one_dir", "neg_bin", "wishart"}))
    config_fail("model", "unknown model '" + s.model + "'");
  if (!method_valid(s.model, s.method))
    config_fail("method", "method '" + s.method + "' is not available for model '" + s.model + "'");
  if (s.method == "da_k" && (s.K < 1 || s.K > 10)) config_fail("K", "da_k needs 1 <= K <= 10");
  if (s.draws <= 0) config_fail("chain.draws", "must be positive");
  if (s.draws < 10) config_fail("chain.draws", "at least 10 draws are needed for ESS");
  if (s.burn_in < 0) config_fail("chain.burn_in", "must be non-negative");
  if (s.replications < 1) config_fail("replications", "must be at least 1");
  if (!(s.amh.eps > 0.0) || s.amh.max_iter < 1) config_fail("amh", "eps must be positive and max_iter >= 1");

  const DataSpec& d = s.data;
  const int min_n = (s.model == "dir_mult" || s.model == "neg_bin") ? 2 : 1;
  if (d.n < min_n) config_fail("data.n", "must be at least " + std::to_string(min_n));
  auto positive = [](double v, const char* path) {
    if (!(v > 0.0) || !std::isfinite(v)) config_fail(path, "must be a positive finite number");
  };
  if (s.model == "gamma" || s.model == "wishart") {
    positive(d.alpha, "data.alpha");
    positive(d.beta, "data.beta");
  }
  if (s.model == "wishart" && (d.dim < 2 || d.dim % 2 != 0)) config_fail("data.p", "must be even and >= 2");
  if (s.model == "student_t") {
    positive(d.df, "data.df");
    positive(d.tau, "data.tau");
    if (!std::isfinite(d.theta)) config_fail("data.theta", "must be finite");
  }
  if (s.model == "dir_mult") {
    if (d.alpha0.size() < 2) config_fail("data.alpha0", "needs at least two categories");
    if (!(d.alpha0.array() > 0.0).all()) config_fail("data.alpha0", "entries must be positive");
  }
  if (s.model == "one_dir") {
    positive(d.alpha, "data.alpha");
    if (d.categories < 2) config_fail("data.categories", "must be at least 2");
  }
  if ((s.model == "dir_mult" || s.model == "one_dir") && d.trials < 1) config_fail("data.trials", "must be positive");
  if (s.model == "neg_bin") {
    positive(d.alpha, "data.alpha");
    if (!(d.nb_p > 0.0 && d.nb_p < 1.0)) config_fail("data.p", "must lie in (0, 1)");
  }

  const PriorSpec& p = s.prior;
  positive(p.a, "prior.a");
  if (s.model != "student_t") positive(p.b, "prior.b");
  if (s.model == "gamma" || s.model == "wishart" || s.model == "student_t") {
    positive(p.c, "prior.c");
    positive(p.d, "prior.d");
  }
  if (s.model == "student_t") {
    positive(p.a0, "prior.a0");
    positive(p.b0, "prior.b0");
    if (!(p.alpha_lower >= 0.0)) config_fail("prior.alpha_lower", "must be non-negative");
    if (!std::isfinite(p.b)) config_fail("prior.b", "must be finite");
  }
}

ExperimentSpec parse_experiment(const json& doc) {
  if (!doc.is_object()) config_fail("$", "experiment must be a JSON object");
  ExperimentSpec s;
  s.model = get_or<std::string>(doc, "model", "$", "");
  s.method = get_or<std::string>(doc, "method", "$", "da");
  s.scenario = get_or<std::string>(doc, "scenario", "$", "");
  s.K = get_or<int>(doc, "K", "$", 0);
  s.replications = get_or<int>(doc, "replications", "$", 1);
  s.seed = get_or<std::uint64_t>(doc, "seed", "$", 1);
  if (!is_one_of(s.model, {"gamma", "student_t", "dir_mult", "one_dir", "neg_bin", "wishart"}))
    config_fail("model", "unknown model '" + s.model + "'");
  apply_model_defaults(s);

  const json chain = doc.value("chain", json::object());
  s.burn_in = get_or<int>(chain, "burn_in", "chain", 1000);
  s.draws = get_or<int>(chain, "draws", "chain", 4000);

  const json amh = doc.value("amh", json::object());
  s.amh.eps = get_or<double>(amh, "eps", "amh", 1e-8);
  s.amh.max_iter = get_or<int>(amh, "max_iter", "amh", 10);

  const json data = doc.value("data", json::object());
  DataSpec& d = s.data;
  d.n = get_or<int>(data, "n", "data", d.n);
  d.alpha = get_or<double>(data, "alpha", "data", d.alpha);
  d.beta = get_or<double>(data, "beta", "data", d.beta);
  d.df = get_or<double>(data, "df", "data", d.df);
  d.theta = get_or<double>(data, "theta", "data", d.theta);
  d.tau = get_or<double>(data, "tau", "data", d.tau);
  d.trials = get_or<int>(data, "trials", "data", d.trials);
  d.categories = get_or<int>(data, "categories", "data", d.categories);
  if (s.model == "neg_bin") d.nb_p = get_or<double>(data, "p", "data", d.nb_p);
  if (s.model == "wishart") d.dim = get_or<int>(data, "p", "data", d.dim);
  if (s.model == "dir_mult") {
    if (data.contains("alpha0")) {
      const auto v = get_or<std::vector<double>>(data, "alpha0", "data", {});
      d.alpha0 = Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));
    } else {
      if (s.scenario.empty()) s.scenario = "I";
      d.alpha0 = scenario_alpha0(s.scenario);
    }
  }

  const json prior = doc.value("prior", json::object());
  PriorSpec& p = s.prior;
  p.a = get_or<double>(prior, "a", "prior", p.a);
  p.b = get_or<double>(prior, "b", "prior", p.b);
  p.c = get_or<double>(prior, "c", "prior", p.c);
  p.d = get_or<double>(prior, "d", "prior", p.d);
  p.a0 = get_or<double>(prior, "a0", "prior", p.a0);
  p.b0 = get_or<double>(prior, "b0", "prior", p.b0);
  p.alpha_lower = get_or<double>(prior, "alpha_lower", "prior", p.alpha_lower);

  validate_experiment(s);
  return s;
}

// ------------------------------------------------------------ data

Dataset gen_data(const ExperimentSpec& spec, int rep_index) {
  validate_experiment(spec);
  RngStream rng(spec.seed, static_cast<std::uint64_t>(rep_index), kDataSubstream);
  const DataSpec& d = spec.data;
  const std::string& m = spec.model;

  if (m == "gamma") {
    Eigen::VectorXd x(d.n);
    for (auto& v : x) v = gamma(rng, d.alpha, d.beta);
    return GammaData::from(x);
  }
  if (m == "student_t") {
    TData t;
    t.n = d.n;
    t.x.resize(d.n);
    for (auto& v : t.x) v = student_t(rng, d.theta, std::sqrt(d.tau), d.df);
    return t;
  }
  if (m == "dir_mult" || m == "one_dir") {
    const Eigen::VectorXd alpha0 =
        m == "dir_mult" ? d.alpha0 : Eigen::VectorXd::Constant(d.categories, d.alpha);
    Eigen::MatrixXi counts(d.n, alpha0.size());
    for (int i = 0; i < d.n; ++i) {
      const Eigen::VectorXd p = dirichlet(rng, alpha0);
      counts.row(i) = multinomial(rng, d.trials, p).transpose();
    }
    return DirMultData::from(counts);
  }
  if (m == "neg_bin") {
    Eigen::VectorXi y(d.n);
    const double rate = d.nb_p / (1.0 - d.nb_p);
    for (auto& v : y) v = static_cast<int>(poisson(rng, gamma(rng, d.alpha, rate)));
    return NegBinData::from(y, Eigen::VectorXd::Constant(d.n, d.nb_p));
  }
  // wishart: Psi ~ W(2 alpha + p - 1, I / beta), x_i ~ N(0, Psi^{-1})
  const int p = d.dim;
  const Eigen::MatrixXd Psi =
      sample_wishart(rng, 2.0 * d.alpha + p - 1.0, Eigen::MatrixXd::Identity(p, p) / d.beta);
  const Eigen::LLT<Eigen::MatrixXd> llt(Psi);
  Eigen::MatrixXd x(d.n, p);
  Eigen::VectorXd z(p);
  for (int i = 0; i < d.n; ++i) {
    for (auto& v : z) v = standard_normal(rng);
    x.row(i) = llt.matrixU().solve(z).transpose();
  }
  return WishartData::from(x);
}

json dataset_to_json(const Dataset& data) {
  return std::visit(
      [](const auto& d) -> json {
        using T = std::decay_t<decltype(d)>;
        json out;
        if constexpr (std::is_same_v<T, GammaData> || std::is_same_v<T, TData>) {
          out["x"] = std::vector<double>(d.x.begin(), d.x.end());
        } else if constexpr (std::is_same_v<T, DirMultData>) {
          json rows = json::array();
          for (Eigen::Index i = 0; i < d.counts.rows(); ++i) {
            const Eigen::VectorXi r = d.counts.row(i).transpose();
            rows.push_back(std::vector<int>(r.begin(), r.end()));
          }
          out["counts"] = rows;
        } else if constexpr (std::is_same_v<T, NegBinData>) {
          out["y"] = std::vector<int>(d.y.begin(), d.y.end());
          out["p"] = std::vector<double>(d.p.begin(), d.p.end());
        } else {
          json rows = json::array();
          for (Eigen::Index i = 0; i < d.x.rows(); ++i) {
            const Eigen::VectorXd r = d.x.row(i).transpose();
            rows.push_back(std::vector<double>(r.begin(), r.end()));
          }
          out["x"] = rows;
        }
        return out;
      },
      data);
}

std::vector<std::string> param_names(const ExperimentSpec& spec) {
  const std::string& m = spec.model;
  if (m == "gamma" || m == "wishart") return {"alpha", "beta"};
  if (m == "student_t") return {"theta", "tau", "alpha"};
  if (m == "dir_mult") {
    std::vector<std::string> names;
    for (Eigen::Index l = 0; l < spec.data.alpha0.size(); ++l) names.push_back("alpha_" + std::to_string(l));
    return names;
  }
  return {"alpha"};
}

std::vector<double> param_truths(const ExperimentSpec& spec) {
  const DataSpec& d = spec.data;
  const std::string& m = spec.model;
  if (m == "gamma" || m == "wishart") return {d.alpha, d.beta};
  if (m == "student_t") return {d.theta, d.tau, d.df / 2.0};
  if (m == "dir_mult") return std::vector<double>(d.alpha0.begin(), d.alpha0.end());
  return {d.alpha};
}

// ------------------------------------------------------------ chains

namespace {

// Type-erased sweep over one model family.
class ChainDriver {
 public:
  virtual ~ChainDriver() = default;
  virtual void step(RngStream& rng) = 0;
  virtual void record(Eigen::VectorXd& row) const = 0;
  // Acceptance rate of each MH block, and the block of each parameter (-1 for Gibbs).
  virtual std::vector<double> accept_rates() const = 0;
  virtual std::vector<int> param_blocks() const = 0;
};

class GammaDriver : public ChainDriver {
 public:
  GammaDriver(const ExperimentSpec& spec, GammaData data, RngStream& rng)
      : data_(std::move(data)), amh_(spec.method == "amh"), settings_(spec.amh) {
    cfg_ = {spec.prior.a, spec.prior.b, spec.prior.c, spec.prior.d, spec.method == "da_k" ? spec.K : 0};
    s_ = gamma_init(data_, cfg_, rng);
  }
  void step(RngStream& rng) override {
    if (amh_)
      gamma_step_amh(s_, data_, cfg_, rng, settings_);
    else
      gamma_step(s_, data_, cfg_, rng);
  }
  void record(Eigen::VectorXd& row) const override {
    row[0] = s_.alpha;
    row[1] = s_.beta();
  }
  std::vector<double> accept_rates() const override { return {s_.accept.rate()}; }
  std::vector<int> param_blocks() const override { return {0, -1}; }

 private:
  GammaData data_;
  GammaModelConfig cfg_;
  GammaModelState s_;
  bool amh_;
  AmhSettings settings_;
};

class TDriver : public ChainDriver {
 public:
  TDriver(const ExperimentSpec& spec, TData data, RngStream& rng)
      : data_(std::move(data)), amh_(spec.method == "amh"), settings_(spec.amh) {
    const PriorSpec& p = spec.prior;
    cfg_ = {p.a, p.b, p.c, p.d, p.a0, p.b0, p.alpha_lower};
    s_ = t_init(data_, cfg_, rng);
  }
  void step(RngStream& rng) override {
    if (amh_)
      t_step_amh(s_, data_, cfg_, rng, settings_);
    else
      t_step(s_, data_, cfg_, rng);
  }
  void record(Eigen::VectorXd& row) const override {
    row[0] = s_.theta;
    row[1] = s_.tau;
    row[2] = s_.alpha;
  }
  std::vector<double> accept_rates() const override { return {s_.accept.rate()}; }
  std::vector<int> param_blocks() const override { return {-1, -1, 0}; }

 private:
  TData data_;
  TModelConfig cfg_;
  TModelState s_;
  bool amh_;
  AmhSettings settings_;
};

class DirMultDriver : public ChainDriver {
 public:
  DirMultDriver(const ExperimentSpec& spec, DirMultData data, RngStream& rng) : data_(std::move(data)) {
    cfg_ = {spec.prior.a, spec.prior.b, route_for(spec.method)};
    s_ = dirmult_init(data_, cfg_, rng);
  }
  void step(RngStream& rng) override { dirmult_step(s_, data_, cfg_, rng); }
  void record(Eigen::VectorXd& row) const override { row = s_.alpha; }
  std::vector<double> accept_rates() const override {
    std::vector<double> r;
    for (const auto& a : s_.accept) r.push_back(a.rate());
    return r;
  }
  std::vector<int> param_blocks() const override {
    std::vector<int> b(data_.categories);
    for (int l = 0; l < data_.categories; ++l) b[l] = l;
    return b;
  }

 private:
  DirMultData data_;
  DirMultConfig cfg_;
  DirMultState s_;
};

class OneDirDriver : public ChainDriver {
 public:
  OneDirDriver(const ExperimentSpec& spec, DirMultData data, RngStream& rng) : data_(std::move(data)) {
    cfg_ = {spec.prior.a, spec.prior.b};
    s_ = onedir_init(data_, cfg_, rng);
  }
  void step(RngStream& rng) override { onedir_step(s_, data_, cfg_, rng); }
  void record(Eigen::VectorXd& row) const override { row[0] = s_.alpha; }
  std::vector<double> accept_rates() const override { return {}; }
  std::vector<int> param_blocks() const override { return {-1}; }

 private:
  DirMultData data_;
  OneDirConfig cfg_;
  OneDirState s_;
};

class NegBinDriver : public ChainDriver {
 public:
  NegBinDriver(const ExperimentSpec& spec, NegBinData data, RngStream& rng) : data_(std::move(data)) {
    cfg_ = {spec.prior.a, spec.prior.b, route_for(spec.method)};
    s_ = negbin_init(data_, cfg_, rng);
  }
  void step(RngStream& rng) override { negbin_step(s_, data_, cfg_, rng); }
  void record(Eigen::VectorXd& row) const override { row[0] = s_.alpha; }
  std::vector<double> accept_rates() const override { return {s_.accept.rate()}; }
  std::vector<int> param_blocks() const override { return {0}; }

 private:
  NegBinData data_;
  NegBinConfig cfg_;
  NegBinState s_;
};

class WishartDriver : public ChainDriver {
 public:
  WishartDriver(const ExperimentSpec& spec, WishartData data, RngStream& rng) : data_(std::move(data)) {
    cfg_ = {spec.prior.a, spec.prior.b, spec.prior.c, spec.prior.d};
    s_ = wishart_init(data_, cfg_, rng);
  }
  void step(RngStream& rng) override { wishart_step(s_, data_, cfg_, rng); }
  void record(Eigen::VectorXd& row) const override {
    row[0] = s_.alpha;
    row[1] = s_.beta();
  }
  std::vector<double> accept_rates() const override { return {s_.accept.rate()}; }
  std::vector<int> param_blocks() const override { return {0, -1}; }

 private:
  WishartData data_;
  WishartConfig cfg_;
  WishartState s_;
};

std::unique_ptr<ChainDriver> make_driver(const ExperimentSpec& spec, const Dataset& data, RngStream& rng) {
  const std::string& m = spec.model;
  if (m == "gamma") return std::make_unique<GammaDriver>(spec, std::get<GammaData>(data), rng);
  if (m == "student_t") return std::make_unique<TDriver>(spec, std::get<TData>(data), rng);
  if (m == "dir_mult") return std::make_unique<DirMultDriver>(spec, std::get<DirMultData>(data), rng);
  if (m == "one_dir") return std::make_unique<OneDirDriver>(spec, std::get<DirMultData>(data), rng);
  if (m == "neg_bin") return std::make_unique<NegBinDriver>(spec, std::get<NegBinData>(data), rng);
  return std::make_unique<WishartDriver>(spec, std::get<WishartData>(data), rng);
}

}  // namespace

ChainResult run_chain(const ExperimentSpec& spec, const Dataset& data, int rep_index) {
  RngStream rng(spec.seed, static_cast<std::uint64_t>(rep_index), kSamplerSubstream);
  ChainResult out;
  out.param_names = param_names(spec);
  out.seed = spec.seed;
  out.stream_id = static_cast<std::uint64_t>(rep_index);
  out.draws.resize(spec.draws, static_cast<Eigen::Index>(out.param_names.size()));

  const auto start = std::chrono::steady_clock::now();
  auto driver = make_driver(spec, data, rng);
  for (int it = 0; it < spec.burn_in; ++it) driver->step(rng);
  Eigen::VectorXd current(out.draws.cols());
  for (int it = 0; it < spec.draws; ++it) {
    driver->step(rng);
    driver->record(current);
    out.draws.row(it) = current.transpose();
  }
  const auto stop = std::chrono::steady_clock::now();
  out.wall_seconds = std::chrono::duration<double>(stop - start).count();
  out.accept_rate = driver->accept_rates();
  out.param_block = driver->param_blocks();
  return out;
}

ReplicationResult run_replication(const ExperimentSpec& spec, int rep_index, int keep_every) {
  ReplicationResult r;
  r.rep = rep_index;
  try {
    const Dataset data = gen_data(spec, rep_index);
    const ChainResult chain = run_chain(spec, data, rep_index);
    const std::vector<int>& blocks = chain.param_block;
    const Eigen::Index k = chain.draws.cols();
    for (Eigen::Index j = 0; j < k; ++j) {
      r.posterior_mean.push_back(chain.draws.col(j).mean());
      r.ess.push_back(ess(chain.draws.col(j)));
      r.accept_rate.push_back(blocks[j] < 0 ? 1.0 : chain.accept_rate[blocks[j]]);
    }
    r.ct_seconds = std::max(chain.wall_seconds, 1e-9);
    if (keep_every > 0) r.kept_draws = chain.draws(Eigen::seq(0, Eigen::last, keep_every), Eigen::all);
    r.ok = true;
  } catch (const std::exception& e) {
    r.ok = false;
    r.error = e.what();
    r.posterior_mean.clear();
    r.ess.clear();
    r.accept_rate.clear();
  }
  return r;
}

int resolve_threads(int requested) {
  if (const char* env = std::getenv("RECIPGAMMA_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v >= 1) return static_cast<int>(v);
    throw ConfigError("RECIPGAMMA_THREADS: expected a positive integer, got '" + std::string(env) + "'");
  }
  return std::max(1, requested);
}

ExperimentResult run_experiment(const ExperimentSpec& spec, int threads, int keep_every) {
  validate_experiment(spec);
  ExperimentResult out;
  out.replications.resize(spec.replications);

  std::atomic<int> next{0};
  auto worker = [&] {
    for (int i = next++; i < spec.replications; i = next++) out.replications[i] = run_replication(spec, i, keep_every);
  };
  const int nthreads = std::clamp(threads, 1, spec.replications);
  if (nthreads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < nthreads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  std::vector<const ReplicationResult*> good;
  for (const auto& r : out.replications)
    if (r.ok) good.push_back(&r);
  const int failed = spec.replications - static_cast<int>(good.size());
  if (failed > 0.05 * spec.replications || good.empty()) {
    std::string first;
    for (const auto& r : out.replications)
      if (!r.ok) {
        first = r.error;
        break;
      }
    throw std::runtime_error(std::to_string(failed) + " of " + std::to_string(spec.replications) +
                             " replications failed; first error: " + first);
  }

  const std::vector<std::string> names = param_names(spec);
  const std::vector<double> truths = param_truths(spec);
  const double count = static_cast<double>(good.size());
  double ct = 0.0;
  for (const auto* r : good) ct += r->ct_seconds;
  ct /= count;

  for (std::size_t j = 0; j < names.size(); ++j) {
    ReportRow row{spec.model, spec.method, spec.scenario, spec.data.n, names[j], 0, 0, ct, 0, 0};
    for (const auto* r : good) {
      row.ess += r->ess[j] / count;
      row.sess += sess(r->ess[j], r->ct_seconds) / count;
      row.mse += (r->posterior_mean[j] - truths[j]) * (r->posterior_mean[j] - truths[j]) / count;
      row.accept_rate += r->accept_rate[j] / count;
    }
    out.rows.push_back(row);
  }
  if (spec.model == "dir_mult") {
    ReportRow avg{spec.model, spec.method, spec.scenario, spec.data.n, "alpha_avg", 0, 0, ct, 0, 0};
    const double L = static_cast<double>(names.size());
    for (const auto& row : out.rows) {
      avg.ess += row.ess / L;
      avg.sess += row.sess / L;
      avg.mse += row.mse / L;
      avg.accept_rate += row.accept_rate / L;
    }
    out.rows.push_back(avg);
  }
  return out;
}

}  // namespace recipgamma
