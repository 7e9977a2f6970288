#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "core/solver.hpp"

namespace lef::bench {

enum class Scenario { vi_exact, vi_mala, vi_scaled_mala, mle_online, em_mixture, fig1 };

std::string scenario_name(Scenario s);
Scenario scenario_from_name(const std::string& name);

// Experiment description; "inf" in JSON selects the Gaussian branch for the
// nu fields.  Desk-scale defaults (10 replicates x 100 iterations) keep runs
// inside a CI budget; --full-scale restores the 100 x 1000 protocol.
struct ExperimentConfig {
  Scenario scenario = Scenario::vi_exact;
  std::size_t d = 5;
  double nu_target = 3.0;
  double nu_family = 3.0;
  double kappa = 10.0;
  std::size_t n_iters = 100;
  std::size_t n_per_iter = 0;  // 0 = scenario default (10 d for VI, 200 for EM)
  std::size_t n_replicates = 10;
  std::uint64_t seed = 0;
  std::string output_path;
  bool timing = false;  // real wall_ns forfeits byte-identical outputs

  static ExperimentConfig from_json_text(const std::string& text);
  std::string to_json_text() const;

  std::size_t samples_per_iter() const;
  // Rejects invalid configs; VI scenarios additionally require the
  // compatibility inequality, reported with its evaluated margin.
  void check() const;
};

struct RunRecord {
  std::size_t replicate = 0;
  std::size_t iteration = 0;
  double metric = 0.0;
  std::optional<double> acceptance;
  std::uint64_t wall_ns = 0;
};

struct ReplicateResult {
  std::size_t replicate = 0;
  std::vector<RunRecord> records;
  bool aborted = false;
  std::string abort_reason;
};

struct ExperimentResult {
  ExperimentConfig config;
  std::vector<ReplicateResult> replicates;
  // em_mixture only: log-likelihood of the data-generating mixture on each
  // replicate's dataset.
  std::vector<double> em_reference_ll;
};

// Runs all replicates on a small worker pool; records are deterministic for
// a fixed seed (timing off).
ExperimentResult run_experiment(const ExperimentConfig& config);

// Exact order statistics: index floor(p (n-1)) of the sorted values, so the
// median of an odd count is the middle value and no interpolation happens.
struct Quartiles {
  double q25 = 0.0, median = 0.0, q75 = 0.0;
};
Quartiles exact_quartiles(std::vector<double> values);

std::string records_to_csv(const std::vector<ReplicateResult>& reps);
std::vector<RunRecord> parse_records_csv(const std::string& text);

// Full pipeline: run, write <out_dir>/records.csv and <out_dir>/summary.json.
void run_to_files(const ExperimentConfig& config, const std::string& out_dir);

// fig1: escort densities of the 1-D demo families (T(x) = x^2, theta = -2,
// domain [-4, 4]) for lambda in {-1, 0, 1} and alpha in {0.5, 1, 2}; one
// long-format CSV (x, alpha, density) per lambda plus a summary.json with
// the integral of every curve.
void write_fig1(const std::string& out_dir);

// Aggregates summary.json files into the medians table: one row per family
// nu, one column per (target nu, scenario); incompatible combinations print
// as "x".
std::string table_from_summaries(const std::vector<std::string>& summary_paths);

// Oracle suite behind the `validate` subcommand.  phi_bias is a test hook
// added to phi_lambda inside the Fenchel-Young check; any nonzero bias must
// make that check fail.
struct ValidationCheck {
  std::string name;
  double max_residual = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};
std::vector<ValidationCheck> validate(double phi_bias = 0.0);
std::string format_validation(const std::vector<ValidationCheck>& checks);

}  // namespace lef::bench
