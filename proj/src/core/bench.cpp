#include "core/bench.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "core/coupling.hpp"
#include "core/divergence.hpp"
#include "core/quad.hpp"
#include "core/special.hpp"

namespace lef::bench {

using nlohmann::json;

std::string scenario_name(Scenario s) {
  switch (s) {
    case Scenario::vi_exact: return "vi_exact";
    case Scenario::vi_mala: return "vi_mala";
    case Scenario::vi_scaled_mala: return "vi_scaled_mala";
    case Scenario::mle_online: return "mle_online";
    case Scenario::em_mixture: return "em_mixture";
    case Scenario::fig1: return "fig1";
  }
  fail(errc::internal, "unknown scenario");
}

Scenario scenario_from_name(const std::string& name) {
  for (Scenario s : {Scenario::vi_exact, Scenario::vi_mala, Scenario::vi_scaled_mala,
                     Scenario::mle_online, Scenario::em_mixture, Scenario::fig1})
    if (scenario_name(s) == name) return s;
  fail(errc::invalid_argument, "unknown scenario '" + name + "'");
}

namespace {

json nu_to_json(double nu) {
  if (std::isinf(nu)) return "inf";
  return nu;
}

double nu_from_json(const json& j, const char* field) {
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    if (s == "inf" || s == "+inf" || s == "Inf") return std::numeric_limits<double>::infinity();
    fail(errc::invalid_argument, std::string(field) + ": expected a number or \"inf\"");
  }
  return j.get<double>();
}

std::string fmt_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

ExperimentConfig ExperimentConfig::from_json_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const std::exception& e) {
    fail(errc::io, std::string("config parse error: ") + e.what());
  }
  ExperimentConfig c;
  c.scenario = scenario_from_name(j.at("scenario").get<std::string>());
  if (j.contains("d")) c.d = j.at("d").get<std::size_t>();
  if (j.contains("nu_target")) c.nu_target = nu_from_json(j.at("nu_target"), "nu_target");
  if (j.contains("nu_family")) c.nu_family = nu_from_json(j.at("nu_family"), "nu_family");
  if (j.contains("kappa")) c.kappa = j.at("kappa").get<double>();
  if (j.contains("n_iters")) c.n_iters = j.at("n_iters").get<std::size_t>();
  if (j.contains("n_per_iter")) c.n_per_iter = j.at("n_per_iter").get<std::size_t>();
  if (j.contains("n_replicates")) c.n_replicates = j.at("n_replicates").get<std::size_t>();
  if (j.contains("seed")) c.seed = j.at("seed").get<std::uint64_t>();
  if (j.contains("output_path")) c.output_path = j.at("output_path").get<std::string>();
  if (j.contains("timing")) c.timing = j.at("timing").get<bool>();
  return c;
}

std::string ExperimentConfig::to_json_text() const {
  json j;
  j["scenario"] = scenario_name(scenario);
  j["d"] = d;
  j["nu_target"] = nu_to_json(nu_target);
  j["nu_family"] = nu_to_json(nu_family);
  j["kappa"] = kappa;
  j["n_iters"] = n_iters;
  j["n_per_iter"] = n_per_iter;
  j["n_replicates"] = n_replicates;
  j["seed"] = seed;
  j["output_path"] = output_path;
  j["timing"] = timing;
  return j.dump(2);
}

std::size_t ExperimentConfig::samples_per_iter() const {
  if (n_per_iter > 0) return n_per_iter;
  if (scenario == Scenario::em_mixture) return 200;
  return 10 * d;
}

void ExperimentConfig::check() const {
  require(d >= 1, errc::invalid_argument, "config: d must be >= 1");
  require(n_iters >= 1 || scenario == Scenario::fig1, errc::invalid_argument,
          "config: n_iters must be >= 1");
  require(n_replicates >= 1 || scenario == Scenario::fig1, errc::invalid_argument,
          "config: n_replicates must be >= 1");
  require(kappa >= 1.0, errc::invalid_argument, "config: kappa must be >= 1");
  const bool vi = scenario == Scenario::vi_exact || scenario == Scenario::vi_mala ||
                  scenario == Scenario::vi_scaled_mala;
  if (vi) {
    const double margin = compatibility_margin(nu_target, d, nu_family);
    require(margin > 0.0, errc::incompatible,
            "config: (nu_target, nu_family) incompatible; nu_pi + 2(nu_pi+d)/(nu+d) - 2 = " +
                std::to_string(margin) + " <= 0");
  }
  if (scenario == Scenario::em_mixture)
    require(d == 2, errc::invalid_argument, "config: em_mixture scenario is defined for d = 2");
}

Quartiles exact_quartiles(std::vector<double> values) {
  require(!values.empty(), errc::invalid_argument, "exact_quartiles: empty input");
  std::sort(values.begin(), values.end());
  auto pick = [&](double p) {
    const std::size_t idx =
        static_cast<std::size_t>(std::floor(p * static_cast<double>(values.size() - 1)));
    return values[idx];
  };
  return {pick(0.25), pick(0.5), pick(0.75)};
}

std::string records_to_csv(const std::vector<ReplicateResult>& reps) {
  std::string out = "replicate,iteration,metric,acceptance,wall_ns\n";
  for (const ReplicateResult& rep : reps)
    for (const RunRecord& r : rep.records) {
      out += std::to_string(r.replicate);
      out += ',';
      out += std::to_string(r.iteration);
      out += ',';
      out += fmt_double(r.metric);
      out += ',';
      if (r.acceptance) out += fmt_double(*r.acceptance);
      out += ',';
      out += std::to_string(r.wall_ns);
      out += '\n';
    }
  return out;
}

std::vector<RunRecord> parse_records_csv(const std::string& text) {
  std::vector<RunRecord> out;
  std::istringstream in(text);
  std::string line;
  bool header = true;
  while (std::getline(in, line)) {
    if (header) {
      require(line == "replicate,iteration,metric,acceptance,wall_ns", errc::io,
              "records csv: unexpected header");
      header = false;
      continue;
    }
    if (line.empty()) continue;
    std::vector<std::string> fields;
    std::size_t start = 0;
    for (;;) {
      const std::size_t pos = line.find(',', start);
      if (pos == std::string::npos) {
        fields.push_back(line.substr(start));
        break;
      }
      fields.push_back(line.substr(start, pos - start));
      start = pos + 1;
    }
    require(fields.size() == 5, errc::io, "records csv: expected 5 fields");
    RunRecord r;
    r.replicate = std::stoull(fields[0]);
    r.iteration = std::stoull(fields[1]);
    r.metric = std::stod(fields[2]);
    if (!fields[3].empty()) r.acceptance = std::stod(fields[3]);
    r.wall_ns = std::stoull(fields[4]);
    out.push_back(r);
  }
  return out;
}

namespace {

class WallClock {
public:
  explicit WallClock(bool enabled) : enabled_(enabled), start_(std::chrono::steady_clock::now()) {}
  std::uint64_t elapsed_ns() const {
    if (!enabled_) return 0;
    return static_cast<std::uint64_t>(std::chrono::duration_cast<std::chrono::nanoseconds>(
                                          std::chrono::steady_clock::now() - start_)
                                          .count());
  }

private:
  bool enabled_;
  std::chrono::steady_clock::time_point start_;
};

StudentParams make_target(const ExperimentConfig& cfg) {
  SeededRng rng(cfg.seed, 0);
  Vec mu(cfg.d);
  for (double& v : mu) v = rng.uniform(-1.0, 1.0);
  SpdMatrix sigma = spd_with_condition(cfg.d, cfg.kappa, rng);
  return StudentParams(cfg.nu_target, std::move(mu), std::move(sigma));
}

MixtureModel make_em_truth(const ExperimentConfig& cfg) {
  SeededRng rng(cfg.seed, 0);
  MixtureModel truth;
  truth.weights = {0.4, 0.1, 0.2, 0.3};
  const std::vector<Vec> mus = {{10.0, 10.0}, {-10.0, 10.0}, {-10.0, -10.0}, {10.0, -10.0}};
  for (const Vec& mu : mus) {
    SpdMatrix sigma = spd_with_condition(2, cfg.kappa, rng);
    truth.components.emplace_back(cfg.nu_target, mu, std::move(sigma));
  }
  truth.validate();
  return truth;
}

ReplicateResult run_vi_replicate(const ExperimentConfig& cfg, const StudentParams& target,
                                 std::size_t r) {
  ReplicateResult out;
  out.replicate = r;
  WallClock clock(cfg.timing);
  SeededRng rng(cfg.seed, r + 1);
  VIRun run;
  switch (cfg.scenario) {
    case Scenario::vi_exact:
      run = vi_exact_escort(target, cfg.nu_family, cfg.samples_per_iter(), cfg.n_iters, rng);
      break;
    case Scenario::vi_mala:
      run = vi_plain_mala(student_oracle(target), cfg.nu_family, cfg.samples_per_iter(),
                          cfg.n_iters, rng);
      break;
    case Scenario::vi_scaled_mala:
      run = vi_scaled_mala(student_oracle(target), cfg.nu_family, cfg.samples_per_iter(),
                           cfg.n_iters, rng);
      break;
    default:
      fail(errc::internal, "run_vi_replicate: not a VI scenario");
  }
  out.aborted = run.aborted;
  out.abort_reason = run.abort_reason;
  for (std::size_t k = 0; k < run.iterates.size(); ++k) {
    double metric;
    try {
      metric = renyi_divergence_closed(target, run.iterates[k].params).value;
    } catch (const Error& e) {
      out.aborted = true;
      out.abort_reason = e.what();
      break;
    }
    out.records.push_back({r, k, metric, run.iterates[k].acceptance, clock.elapsed_ns()});
  }
  return out;
}

ReplicateResult run_mle_online_replicate(const ExperimentConfig& cfg, const StudentParams& target,
                                         std::size_t r) {
  ReplicateResult out;
  out.replicate = r;
  WallClock clock(cfg.timing);
  SeededRng rng(cfg.seed, r + 1);
  const std::vector<Vec> stream = target.sample(cfg.n_iters, rng);
  StudentParams init(cfg.nu_family, Vec(cfg.d, -2.0),
                     SpdMatrix::factor(Matrix::identity(cfg.d) * 10.0));
  OnlineMleResult res = mle_online(stream, cfg.nu_family, init);
  const double inv_n = 1.0 / static_cast<double>(stream.size());
  for (std::size_t k = 0; k < res.trajectory.size(); ++k) {
    const double metric = log_likelihood(res.trajectory[k], stream) * inv_n;
    out.records.push_back({r, k, metric, std::nullopt, clock.elapsed_ns()});
  }
  return out;
}

ReplicateResult run_em_replicate(const ExperimentConfig& cfg, const MixtureModel& truth,
                                 std::size_t r, double* reference_ll) {
  ReplicateResult out;
  out.replicate = r;
  WallClock clock(cfg.timing);
  SeededRng data_rng = SeededRng(cfg.seed, r + 1).derive(1);
  SeededRng init_rng = SeededRng(cfg.seed, r + 1).derive(2);
  std::vector<Vec> data;
  data.reserve(cfg.samples_per_iter());
  for (std::size_t i = 0; i < cfg.samples_per_iter(); ++i) data.push_back(truth.sample(data_rng));
  if (reference_ll) *reference_ll = log_likelihood(truth, data);

  const std::size_t j_count = truth.size();
  MixtureModel model;
  model.weights.assign(j_count, 1.0 / static_cast<double>(j_count));
  for (std::size_t j = 0; j < j_count; ++j) {
    Vec mu(cfg.d);
    for (double& v : mu) v = std::sqrt(10.0) * init_rng.normal();
    model.components.emplace_back(cfg.nu_family, std::move(mu),
                                  SpdMatrix::factor(Matrix::identity(cfg.d) * 10.0));
  }
  for (std::size_t k = 0; k < cfg.n_iters; ++k) {
    try {
      model = em_step(model, data);
    } catch (const Error& e) {
      out.aborted = true;
      out.abort_reason = e.what();
      break;
    }
    out.records.push_back({r, k, log_likelihood(model, data), std::nullopt, clock.elapsed_ns()});
  }
  return out;
}

}  // namespace

ExperimentResult run_experiment(const ExperimentConfig& config) {
  config.check();
  require(config.scenario != Scenario::fig1, errc::invalid_argument,
          "run_experiment: fig1 writes files, use write_fig1");
  ExperimentResult result;
  result.config = config;
  result.replicates.resize(config.n_replicates);

  std::optional<StudentParams> target;
  std::optional<MixtureModel> em_truth;
  if (config.scenario == Scenario::em_mixture)
    em_truth = make_em_truth(config);
  else
    target = make_target(config);

  std::vector<double> reference(config.n_replicates, 0.0);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (;;) {
      const std::size_t r = next.fetch_add(1);
      if (r >= config.n_replicates) return;
      switch (config.scenario) {
        case Scenario::vi_exact:
        case Scenario::vi_mala:
        case Scenario::vi_scaled_mala:
          result.replicates[r] = run_vi_replicate(config, *target, r);
          break;
        case Scenario::mle_online:
          result.replicates[r] = run_mle_online_replicate(config, *target, r);
          break;
        case Scenario::em_mixture:
          result.replicates[r] = run_em_replicate(config, *em_truth, r, &reference[r]);
          break;
        default:
          break;
      }
    }
  };
  const std::size_t n_threads =
      std::max<std::size_t>(1, std::min<std::size_t>(std::thread::hardware_concurrency(),
                                                     config.n_replicates));
  std::vector<std::thread> pool;
  for (std::size_t t = 0; t < n_threads; ++t) pool.emplace_back(worker);
  for (std::thread& t : pool) t.join();

  if (config.scenario == Scenario::em_mixture) result.em_reference_ll = reference;
  return result;
}

namespace {

json summarize(const ExperimentResult& result) {
  const ExperimentConfig& cfg = result.config;
  const bool em = cfg.scenario == Scenario::em_mixture;
  json j;
  j["config"] = json::parse(cfg.to_json_text());
  j["metric"] = (cfg.scenario == Scenario::mle_online || em) ? "log_likelihood"
                                                             : "renyi_divergence";
  json aborted = json::array();
  for (const ReplicateResult& rep : result.replicates)
    if (rep.aborted) aborted.push_back({{"replicate", rep.replicate}, {"reason", rep.abort_reason}});
  j["aborted"] = aborted;

  std::vector<std::vector<double>> by_iter(cfg.n_iters);
  for (const ReplicateResult& rep : result.replicates)
    for (const RunRecord& r : rep.records)
      if (r.iteration < cfg.n_iters) by_iter[r.iteration].push_back(r.metric);

  json per_iter = json::array();
  double final_median = std::numeric_limits<double>::quiet_NaN();
  for (std::size_t k = 0; k < cfg.n_iters; ++k) {
    if (by_iter[k].empty()) continue;
    const Quartiles q = exact_quartiles(by_iter[k]);
    per_iter.push_back(
        {{"iteration", k}, {"q25", q.q25}, {"median", q.median}, {"q75", q.q75}});
    if (k + 1 == cfg.n_iters) final_median = q.median;
  }
  j["per_iteration"] = per_iter;
  j["final_median"] = final_median;
  if (em && !result.em_reference_ll.empty())
    j["reference_median"] = exact_quartiles(result.em_reference_ll).median;
  return j;
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(errc::io, "cannot open " + path.string() + " for writing");
  out << text;
  if (!out) fail(errc::io, "write failed for " + path.string());
}

}  // namespace

void run_to_files(const ExperimentConfig& config, const std::string& out_dir) {
  std::filesystem::create_directories(out_dir);
  if (config.scenario == Scenario::fig1) {
    write_fig1(out_dir);
    return;
  }
  const ExperimentResult result = run_experiment(config);
  write_file(std::filesystem::path(out_dir) / "records.csv",
             records_to_csv(result.replicates));
  write_file(std::filesystem::path(out_dir) / "summary.json", summarize(result).dump(2) + "\n");
}

void write_fig1(const std::string& out_dir) {
  std::filesystem::create_directories(out_dir);
  const double window = 4.0;
  const std::vector<double> lambdas = {-1.0, 0.0, 1.0};
  const std::vector<double> alphas = {0.5, 1.0, 2.0};
  json summary;
  summary["domain"] = {-window, window};
  json curves = json::array();
  for (double lambda : lambdas) {
    Scalar1DFamily family;
    family.lambda = lambda;
    family.theta = -2.0;
    family.sufficient_statistic = [](double x) { return x * x; };
    family.whole_line = false;
    family.a = -window;
    family.b = window;

    std::string csv = "x,alpha,density\n";
    for (double alpha : alphas) {
      auto density = escort_density_1d(family, alpha, kDefaultQuadTol);
      const QuadResult integral = integrate(density, -window, window, kDefaultQuadTol);
      json c;
      c["lambda"] = lambda;
      c["alpha"] = alpha;
      c["integral"] = integral.value;
      if (lambda == 0.0 && alpha == 1.0) {
        // Against the analytic N(0, 1/4) density.
        double max_err = 0.0;
        for (int i = 0; i <= 400; ++i) {
          const double x = -window + 2.0 * window * i / 400.0;
          const double gauss = std::sqrt(2.0 / pi()) * std::exp(-2.0 * x * x);
          max_err = std::max(max_err, std::abs(density(x) - gauss));
        }
        c["max_gaussian_abs_err"] = max_err;
      }
      curves.push_back(c);
      for (int i = 0; i <= 400; ++i) {
        const double x = -window + 2.0 * window * i / 400.0;
        csv += fmt_double(x);
        csv += ',';
        csv += fmt_double(alpha);
        csv += ',';
        csv += fmt_double(density(x));
        csv += '\n';
      }
    }
    const std::string name = lambda < 0   ? "fig1_lambda-1.csv"
                             : lambda > 0 ? "fig1_lambda1.csv"
                                          : "fig1_lambda0.csv";
    write_file(std::filesystem::path(out_dir) / name, csv);
  }
  summary["curves"] = curves;
  write_file(std::filesystem::path(out_dir) / "summary.json", summary.dump(2) + "\n");
}

std::string table_from_summaries(const std::vector<std::string>& summary_paths) {
  require(!summary_paths.empty(), errc::invalid_argument, "table: no summary files given");
  struct Cell {
    double nu_family, nu_target;
    std::string column;
    std::size_t d;
    double median;
  };
  std::vector<Cell> cells;
  for (const std::string& path : summary_paths) {
    std::ifstream in(path);
    if (!in) fail(errc::io, "table: cannot read " + path);
    json j;
    try {
      in >> j;
    } catch (const std::exception& e) {
      fail(errc::io, "table: bad summary " + path + ": " + e.what());
    }
    const json& cfg = j.at("config");
    Cell c;
    c.nu_family = nu_from_json(cfg.at("nu_family"), "nu_family");
    c.nu_target = nu_from_json(cfg.at("nu_target"), "nu_target");
    c.d = cfg.at("d").get<std::size_t>();
    std::ostringstream col;
    col << cfg.at("scenario").get<std::string>() << " nu_pi=" << cfg.at("nu_target").dump()
        << " d=" << c.d << " kappa=" << cfg.at("kappa").get<double>();
    std::string column = col.str();
    column.erase(std::remove(column.begin(), column.end(), '"'), column.end());
    c.column = column;
    c.median = j.at("final_median").get<double>();
    cells.push_back(c);
  }

  std::vector<double> rows;
  std::vector<std::pair<std::string, std::pair<double, std::size_t>>> cols;  // name -> (nu_pi, d)
  for (const Cell& c : cells) {
    if (std::find(rows.begin(), rows.end(), c.nu_family) == rows.end()) rows.push_back(c.nu_family);
    bool seen = false;
    for (auto& [name, meta] : cols) seen |= name == c.column;
    if (!seen) cols.push_back({c.column, {c.nu_target, c.d}});
  }
  std::sort(rows.begin(), rows.end());
  std::sort(cols.begin(), cols.end());

  auto nu_label = [](double nu) {
    if (std::isinf(nu)) return std::string("inf");
    std::ostringstream s;
    s << nu;
    return s.str();
  };

  std::ostringstream out;
  out << "nu_family";
  for (const auto& [name, meta] : cols) out << '\t' << name;
  out << '\n';
  for (double row : rows) {
    out << nu_label(row);
    for (const auto& [name, meta] : cols) {
      const Cell* found = nullptr;
      for (const Cell& c : cells)
        if (c.nu_family == row && c.column == name) found = &c;
      out << '\t';
      if (found) {
        char buf[32];
        std::snprintf(buf, sizeof(buf), "%.3e", found->median);
        out << buf;
      } else if (compatibility_margin(meta.first, meta.second, row) <= 0.0) {
        out << "x";
      } else {
        out << "-";
      }
    }
    out << '\n';
  }
  return out.str();
}

namespace {

void add_check(std::vector<ValidationCheck>& checks, const std::string& name, double residual,
               double tol) {
  checks.push_back({name, residual, tol, std::isfinite(residual) && residual <= tol});
}

}  // namespace

std::vector<ValidationCheck> validate(double phi_bias) {
  std::vector<ValidationCheck> checks;
  SeededRng rng(20240913, 77);

  {  // coupling: lambda = 0 is the inner product, bit for bit
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
      Vec u = rng.normal_vec(4), v = rng.normal_vec(4);
      worst = std::max(worst, std::abs(coupling_eval(0.0, u, v) - dot(u, v)));
    }
    add_check(checks, "coupling lambda=0 inner product", worst, 0.0);
  }
  {  // second-order Taylor bound near lambda = 0
    double worst = 0.0;
    for (int i = 0; i < 200; ++i) {
      const double lambda = rng.uniform(-1.0, 1.0);
      const double t = rng.uniform(-0.4, 0.4);
      if (std::abs(lambda * t) > 0.5 || lambda == 0.0) continue;
      const double gap = std::abs(coupling_scalar(lambda, t) - t) - std::abs(lambda) * t * t;
      worst = std::max(worst, gap);
    }
    add_check(checks, "coupling Taylor bound", worst, 0.0);
  }
  {  // convexity residual signs
    double worst = 0.0;
    for (int i = 0; i < 200; ++i) {
      const double lambda = rng.uniform(-1.0, 1.0);
      Vec u = rng.normal_vec(3), v1 = rng.normal_vec(3), v2 = rng.normal_vec(3);
      for (double& x : u) x *= 0.3;
      const double s = rng.uniform();
      try {
        const double r = coupling_convexity_residual(lambda, u, v1, v2, s);
        if (lambda > 0.0) worst = std::max(worst, -r);
        else if (lambda < 0.0) worst = std::max(worst, r);
        else worst = std::max(worst, std::abs(r));
      } catch (const Error&) {
        // off-domain draw, skip
      }
    }
    add_check(checks, "coupling convexity residual sign", worst, 1e-12);
  }
  {  // 1-D family normalization across lambda
    double worst = 0.0;
    for (double lambda : {-1.0, -0.5, 0.0, 1.0}) {
      Scalar1DFamily fam;
      fam.lambda = lambda;
      fam.theta = -2.0;
      fam.sufficient_statistic = [](double x) { return x * x; };
      auto density = density_1d(fam, kDefaultQuadTol);
      const QuadResult r = integrate_real_line(density, kDefaultQuadTol);
      worst = std::max(worst, std::abs(r.value - 1.0));
    }
    add_check(checks, "1-D density normalization", worst, 10 * kDefaultQuadTol);
  }
  {  // escort normalization and alpha = 1 identity
    Scalar1DFamily fam;
    fam.lambda = -0.5;
    fam.theta = -2.0;
    fam.sufficient_statistic = [](double x) { return x * x; };
    auto density = density_1d(fam, kDefaultQuadTol);
    auto esc2 = escort_density_1d(fam, 2.0, kDefaultQuadTol);
    auto esc1 = escort_density_1d(fam, 1.0, kDefaultQuadTol);
    const QuadResult norm = integrate_real_line(esc2, kDefaultQuadTol);
    double worst = std::abs(norm.value - 1.0);
    for (int i = 0; i < 100; ++i) {
      const double x = rng.uniform(-6.0, 6.0);
      worst = std::max(worst, std::abs(esc1(x) - density(x)));
    }
    add_check(checks, "escort normalization / alpha=1 identity", worst, 10 * kDefaultQuadTol);
  }
  {  // Student phi_lambda closed form vs quadrature (d=1, mu=0)
    double worst = 0.0;
    for (double nu : {1.0, 3.0, 10.0}) {
      for (double s2 : {0.5, 1.0, 2.0}) {
        StudentParams p(nu, {0.0}, SpdMatrix::factor(Matrix::diag({s2})));
        NaturalParams n = natural_from_params(p);
        Scalar1DFamily fam;
        fam.lambda = n.lambda;
        fam.theta = n.theta2(0, 0);
        fam.sufficient_statistic = [](double x) { return x * x; };
        const double quad = log_partition_1d(fam, kDefaultQuadTol);
        worst = std::max(worst, std::abs(quad - log_partition(n, nu)));
      }
    }
    add_check(checks, "phi_lambda closed form vs quadrature", worst, 1e-8);
  }
  {  // density consistency: exp(c_lambda - phi_lambda) vs direct formula
    double worst = 0.0;
    for (int rep = 0; rep < 5; ++rep) {
      const std::size_t d = 1 + rep % 3;
      const double nu = 1.0 + 3.0 * rep;
      Vec mu = rng.normal_vec(d);
      SpdMatrix sigma = spd_with_condition(d, 5.0, rng);
      StudentParams p(nu, mu, sigma);
      NaturalParams n = natural_from_params(p);
      const double phi = log_partition(n, nu);
      for (int i = 0; i < 20; ++i) {
        Vec x = p.sample(rng);
        const double tdot = dot(n.theta1, x) + frobenius_dot(n.theta2, Matrix::outer(x, x));
        const double via_coupling = coupling_scalar(n.lambda, tdot) - phi;
        worst = std::max(worst, std::abs(via_coupling - p.log_density(x)));
      }
    }
    add_check(checks, "lambda-family density vs Student density", worst, 1e-10);
  }
  {  // Fenchel-Young at the escort moments (phi_bias injection point)
    double worst = 0.0;
    for (int rep = 0; rep < 40; ++rep) {
      const std::size_t d = 1 + rep % 4;
      const double nu = (rep % 3 == 0) ? 1.0 : (rep % 3 == 1 ? 3.0 : 10.0);
      Vec mu = rng.normal_vec(d);
      SpdMatrix sigma = spd_with_condition(d, 10.0, rng);
      StudentParams p(nu, mu, sigma);
      NaturalParams n = natural_from_params(p);
      const double phi = log_partition(n, nu) + phi_bias;
      const double psi = psi_lambda(p);
      const SufficientMoments t_bar = escort_moments(p, nu);
      const double cpl = coupling_scalar(
          n.lambda, dot(n.theta1, t_bar.m1) + frobenius_dot(n.theta2, t_bar.M2));
      worst = std::max(worst, std::abs(fenchel_young_residual(phi, psi, cpl)));
    }
    add_check(checks, "Fenchel-Young residual at escort moments", worst, 1e-8);
  }
  {  // chart round trips
    double worst = 0.0;
    for (int rep = 0; rep < 40; ++rep) {
      const std::size_t d = 1 + rep % 5;
      const double nu = rng.uniform(0.5, 15.0);
      Vec mu = rng.normal_vec(d);
      SpdMatrix sigma = spd_with_condition(d, 50.0, rng);
      StudentParams p(nu, mu, sigma);
      StudentParams back = params_from_natural(natural_from_params(p), nu);
      for (std::size_t i = 0; i < d; ++i) {
        worst = std::max(worst, std::abs(back.mu()[i] - p.mu()[i]) /
                                    std::max(1.0, std::abs(p.mu()[i])));
      }
      const Matrix s0 = p.sigma().dense(), s1 = back.sigma().dense();
      for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j)
          worst = std::max(worst, std::abs(s1(i, j) - s0(i, j)) / std::max(1.0, std::abs(s0(i, j))));
    }
    add_check(checks, "natural/moment chart round trip", worst, 1e-10);
  }
  {  // Renyi entropy closed form vs quadrature (d=1)
    double worst = 0.0;
    for (double nu : {1.0, 3.0, 10.0}) {
      for (double alpha : {0.8, 1.0, 1.5}) {
        if (alpha * (nu + 1.0) <= 1.0) continue;
        StudentParams p(nu, {0.3}, SpdMatrix::factor(Matrix::diag({1.7})));
        auto logp = [&p](double x) { return p.log_density({x}); };
        double quad;
        if (alpha == 1.0) {
          const QuadResult r = integrate_real_line(
              [&](double x) {
                const double lp = logp(x);
                return -lp * std::exp(lp);
              },
              kDefaultQuadTol);
          quad = r.value;
        } else {
          const QuadResult r = integrate_real_line(
              [&](double x) { return std::exp(alpha * logp(x)); }, kDefaultQuadTol);
          quad = std::log(r.value) / (1.0 - alpha);
        }
        worst = std::max(worst, std::abs(quad - renyi_entropy(p, alpha)));
      }
    }
    add_check(checks, "Renyi entropy closed form vs quadrature", worst, 1e-8);
  }
  {  // closed-form divergence vs 1-D quadrature
    double worst = 0.0;
    const std::vector<std::array<double, 6>> cases = {
        {3, 0, 1, 3, 1, 1}, {3, 0, 1, 10, 0.5, 2}, {1, 0, 1, 1, 0, 1.5}, {10, -1, 0.5, 3, 0, 1}};
    for (const auto& c : cases) {
      StudentParams pi(c[0], {c[1]}, SpdMatrix::factor(Matrix::diag({c[2]})));
      StudentParams q(c[3], {c[4]}, SpdMatrix::factor(Matrix::diag({c[5]})));
      const DivergenceReport closed = renyi_divergence_closed(pi, q);
      const DivergenceReport quad = renyi_divergence_quadrature_1d(
          [&pi](double x) { return pi.log_density({x}); },
          [&q](double x) { return q.log_density({x}); }, closed.alpha, kDefaultQuadTol);
      worst = std::max(worst, std::abs(closed.value - quad.value));
    }
    add_check(checks, "Renyi divergence closed form vs quadrature", worst, 1e-8);
  }
  {  // prox algebra: geometric error product, online/batch equivalence
    double worst = 0.0;
    SufficientMoments target{{1.0, -2.0}, Matrix::diag({3.0, 4.0})};
    SufficientMoments cur{{0.0, 0.0}, Matrix::identity(2)};
    double product = 1.0;
    const double err0 = cur.m1[0] - target.m1[0];
    for (std::size_t k = 1; k <= 50; ++k) {
      const double tau = (k % 2 == 0) ? 0.5 : 1.0 / static_cast<double>(k);
      cur = prox_vi_update(cur, target, tau);
      product /= (1.0 + tau);
      worst = std::max(worst, std::abs((cur.m1[0] - target.m1[0]) - product * err0));
    }
    std::vector<Vec> pts;
    for (int i = 0; i < 25; ++i) pts.push_back(rng.normal_vec(2));
    StudentParams init(5.0, {0.0, 0.0}, SpdMatrix::identity(2));
    OnlineMleResult online = mle_online(pts, 5.0, init);
    MleFit batch = mle_moment_match(pts, 5.0);
    for (std::size_t i = 0; i < 2; ++i)
      worst = std::max(worst,
                       std::abs(online.trajectory.back().mu()[i] - batch.params.mu()[i]));
    const Matrix so = online.trajectory.back().sigma().dense();
    const Matrix sb = batch.params.sigma().dense();
    for (std::size_t i = 0; i < 2; ++i)
      for (std::size_t j = 0; j < 2; ++j) worst = std::max(worst, std::abs(so(i, j) - sb(i, j)));
    add_check(checks, "prox identities (geometric error, online=batch)", worst, 1e-12);
  }
  return checks;
}

std::string format_validation(const std::vector<ValidationCheck>& checks) {
  std::ostringstream out;
  for (const ValidationCheck& c : checks) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%9.3e (tol %8.2e)", c.max_residual, c.tolerance);
    out << (c.pass ? "[PASS] " : "[FAIL] ") << buf << "  " << c.name << '\n';
  }
  return out.str();
}

}  // namespace lef::bench
