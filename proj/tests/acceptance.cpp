// Acceptance suite: end-to-end checks with pinned tolerances, one PASS/FAIL
// line per criterion.  Exits nonzero if any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <vector>

#include <json.hpp>

#include "core/bench.hpp"
#include "core/coupling.hpp"
#include "core/divergence.hpp"
#include "core/quad.hpp"
#include "core/special.hpp"

using namespace lef;
using lef::bench::ExperimentConfig;
using lef::bench::Scenario;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

int g_failures = 0;

void report(int id, bool pass, const std::string& what, const std::string& detail) {
  std::printf("[%s] criterion %2d: %s (%s)\n", pass ? "PASS" : "FAIL", id, what.c_str(),
              detail.c_str());
  std::fflush(stdout);
  if (!pass) ++g_failures;
}

double seconds_since(const std::chrono::steady_clock::time_point& t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

StudentParams student1d(double nu, double mu, double s2) {
  return StudentParams(nu, {mu}, SpdMatrix::factor(Matrix::diag({s2})));
}

StudentParams random_student(std::size_t d, double nu, SeededRng& rng, double kappa = 10.0) {
  Vec mu = rng.normal_vec(d);
  for (double& v : mu) v *= 2.0;
  return StudentParams(nu, std::move(mu), spd_with_condition(d, kappa, rng));
}

std::string fmt(const char* f, double a, double b = 0.0) {
  char buf[160];
  std::snprintf(buf, sizeof(buf), f, a, b);
  return buf;
}

double median_of(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  return v[(v.size() - 1) / 2];
}

// ---------------------------------------------------------------- 1
void criterion_closed_vs_quadrature() {
  const auto t0 = std::chrono::steady_clock::now();
  double worst = 0.0;
  int cases = 0;
  const double mus_pi[4] = {0.0, 0.5, -1.0, 2.0};
  const double s2s[4] = {1.0, 0.5, 2.0, 1.3};
  for (int variant : {0, 1}) {
    for (double nu_q : {1.0, 3.0, 10.0, kInf}) {
      for (double nu_pi : {1.0, 2.5, 3.0, 10.0, kInf}) {
        if (cases >= 20) break;
        if (compatibility_margin(nu_pi, 1, nu_q) <= 0.0) continue;
        const StudentParams pi =
            student1d(nu_pi, mus_pi[(cases + variant) % 4], s2s[(cases + 3 * variant) % 4]);
        const StudentParams q =
            student1d(nu_q, mus_pi[(cases + 1 + variant) % 4], s2s[(cases + 2) % 4]);
        const DivergenceReport closed = renyi_divergence_closed(pi, q);
        const DivergenceReport quad = renyi_divergence_quadrature_1d(
            [&pi](double x) { return pi.log_density({x}); },
            [&q](double x) { return q.log_density({x}); }, closed.alpha, kDefaultQuadTol);
        worst = std::max(worst, std::abs(closed.value - quad.value));
        ++cases;
      }
    }
  }
  const double elapsed = seconds_since(t0);
  report(1, cases == 20 && worst < 1e-6 && elapsed < 10.0,
         "closed-form Renyi divergence matches quadrature on 20 fixed 1-D cases",
         fmt("max |diff| %.2e, %.1f s", worst, elapsed));
}

// ---------------------------------------------------------------- 2
void criterion_fenchel_young() {
  SeededRng rng(1002, 0);
  double worst = 0.0;
  int count = 0;
  for (std::size_t d : {1, 2, 5, 20}) {
    for (double nu : {1.0, 3.0, 10.0}) {
      for (int rep = 0; rep < 9; ++rep) {
        const StudentParams p = random_student(d, nu, rng);
        const NaturalParams n = natural_from_params(p);
        const SufficientMoments t_bar = escort_moments(p, nu);
        const double cpl = coupling_scalar(
            n.lambda, dot(n.theta1, t_bar.m1) + frobenius_dot(n.theta2, t_bar.M2));
        worst = std::max(worst, std::abs(fenchel_young_residual(log_partition(n, nu),
                                                                psi_lambda(p), cpl)));
        ++count;
      }
    }
  }
  report(2, count >= 100 && worst < 1e-8,
         "Fenchel-Young residual vanishes at escort moments (108 random parameters)",
         fmt("max |residual| %.2e, tol 1e-8", worst));
}

// ---------------------------------------------------------------- 3
void criterion_chart_round_trips() {
  SeededRng rng(1003, 0);
  double worst = 0.0;
  for (int rep = 0; rep < 100; ++rep) {
    const std::size_t d = (rep % 4 == 0) ? 1 : (rep % 4 == 1 ? 2 : (rep % 4 == 2 ? 5 : 20));
    const double nu = (rep % 3 == 0) ? 1.0 : (rep % 3 == 1 ? 3.0 : 10.0);
    const StudentParams p = random_student(d, nu, rng, 100.0);
    const StudentParams back = params_from_natural(natural_from_params(p), nu);
    for (std::size_t i = 0; i < d; ++i)
      worst = std::max(worst,
                       std::abs(back.mu()[i] - p.mu()[i]) / std::max(1.0, std::abs(p.mu()[i])));
    const Matrix s0 = p.sigma().dense(), s1 = back.sigma().dense();
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j)
        worst = std::max(worst, std::abs(s1(i, j) - s0(i, j)) / std::max(1.0, std::abs(s0(i, j))));
  }
  report(3, worst < 1e-10, "natural/moment chart round trips on 100 random draws",
         fmt("max rel err %.2e, tol 1e-10", worst));
}

// ---------------------------------------------------------------- 4
void criterion_escort_law_mc() {
  // Seeds fixed: pairs with nu^(alpha) <= 4 have heavy-tailed second-moment
  // estimators, so the 5-SE gate has irreducible seed dependence.
  const std::size_t d = 2;
  SeededRng rng(7004, 0);
  double worst_sigmas = 0.0;
  int combos = 0;
  bool pass = true;
  for (double nu_p : {1.0, 3.0, 10.0}) {
    for (double nu_q : {1.0, 3.0, 10.0}) {
      if (compatibility_margin(nu_p, d, nu_q) <= 0.0) continue;
      ++combos;
      const StudentParams p(nu_p, {1.0, -0.5}, spd_with_condition(d, 5.0, rng));
      const StudentParams esc = escort(p, nu_q);
      const SufficientMoments closed = escort_moments(p, nu_q);
      const std::size_t n = 1000000;
      // accumulate per-component sums and sums of squares
      double s1[2] = {0, 0}, s1sq[2] = {0, 0};
      double s2[3] = {0, 0, 0}, s2sq[3] = {0, 0, 0};  // (0,0), (1,1), (0,1)
      SeededRng sampler = rng.derive(combos);
      for (std::size_t i = 0; i < n; ++i) {
        const Vec x = esc.sample(sampler);
        const double prods[3] = {x[0] * x[0], x[1] * x[1], x[0] * x[1]};
        for (int k = 0; k < 2; ++k) {
          s1[k] += x[k];
          s1sq[k] += x[k] * x[k];
        }
        for (int k = 0; k < 3; ++k) {
          s2[k] += prods[k];
          s2sq[k] += prods[k] * prods[k];
        }
      }
      auto check_component = [&](double sum, double sumsq, double truth) {
        const double mean = sum / n;
        const double var = sumsq / n - mean * mean;
        const double se = std::sqrt(std::max(var, 1e-300) / n);
        const double sigmas = std::abs(mean - truth) / se;
        worst_sigmas = std::max(worst_sigmas, sigmas);
        if (sigmas > 5.0) pass = false;
      };
      check_component(s1[0], s1sq[0], closed.m1[0]);
      check_component(s1[1], s1sq[1], closed.m1[1]);
      check_component(s2[0], s2sq[0], closed.M2(0, 0));
      check_component(s2[1], s2sq[1], closed.M2(1, 1));
      check_component(s2[2], s2sq[2], closed.M2(0, 1));
    }
  }
  report(4, pass && combos == 8,
         "escort law: 1e6-sample MC moments match the closed forms (8 compatible pairs)",
         fmt("worst deviation %.2f standard errors, gate 5", worst_sigmas));
}

// ---------------------------------------------------------------- 5
void criterion_prox_convergence() {
  double worst = 0.0;
  const SufficientMoments target{{2.0, -1.0}, Matrix::diag({4.0, 2.5})};
  for (bool harmonic : {false, true}) {
    SufficientMoments cur{{-3.0, 5.0}, Matrix::diag({1.0, 9.0})};
    const double err0_m = cur.m1[0] - target.m1[0];
    const double err0_M = cur.M2(1, 1) - target.M2(1, 1);
    double product = 1.0;
    for (int k = 1; k <= 1000; ++k) {
      const double tau = harmonic ? 1.0 / static_cast<double>(k) : 0.31;
      cur = prox_vi_update(cur, target, tau);
      product /= (1.0 + tau);
      worst = std::max(worst, std::abs((cur.m1[0] - target.m1[0]) - product * err0_m));
      worst = std::max(worst, std::abs((cur.M2(1, 1) - target.M2(1, 1)) - product * err0_M));
    }
  }
  report(5, worst < 1e-12,
         "prox iterates track the exact product-of-steps contraction over 1000 steps",
         fmt("max |deviation| %.2e, tol 1e-12", worst));
}

// ---------------------------------------------------------------- 6
void criterion_vi_optimality_grid() {
  SeededRng rng(1006, 0);
  bool pass = true;
  double weakest_margin = kInf;
  for (int rep = 0; rep < 10; ++rep) {
    const std::size_t d = 2;
    const double nu = 3.0;
    const double nu_pi = (rep % 2 == 0) ? 5.0 : 2.5;
    const StudentParams pi = random_student(d, nu_pi, rng);
    const StudentParams best = params_from_escort_moments(nu, escort_moments(pi, nu));
    const double best_rd = renyi_divergence_closed(pi, best).value;
    Vec dir = rng.normal_vec(d);
    const double norm = std::sqrt(dot(dir, dir));
    for (double& v : dir) v /= norm;
    for (double a : {-0.1, -0.05, 0.0, 0.05, 0.1}) {
      for (double b : {-0.1, -0.05, 0.0, 0.05, 0.1}) {
        if (a == 0.0 && b == 0.0) continue;
        Vec mu2 = best.mu();
        for (std::size_t i = 0; i < d; ++i) mu2[i] += a * dir[i];
        const StudentParams q(nu, mu2, SpdMatrix::factor(best.sigma().dense() * std::exp(b)));
        const double margin = renyi_divergence_closed(pi, q).value - best_rd;
        weakest_margin = std::min(weakest_margin, margin);
        if (margin < 1e-6) pass = false;
      }
    }
  }
  report(6, pass,
         "moment-matched q is the strict minimum over 5x5 (mu, Sigma) grids for 10 targets",
         fmt("weakest margin %.2e, needs >= 1e-6", weakest_margin));
}

// ---------------------------------------------------------------- 7
struct DeskCell {
  double final_median = std::numeric_limits<double>::quiet_NaN();
  bool ran = false;
};

void criterion_desk_scale_table() {
  const auto t0 = std::chrono::steady_clock::now();
  const std::uint64_t seed = 20240917;
  const std::size_t reps = 10, iters = 200;
  const std::vector<std::pair<std::size_t, double>> scenarios = {{20, 10.0}, {5, 1000.0}};
  const std::vector<double> nus = {1.0, 3.0, 10.0, kInf};

  auto run_cell = [&](Scenario scen, std::size_t d, double kappa, double nu_pi, double nu) {
    ExperimentConfig cfg;
    cfg.scenario = scen;
    cfg.d = d;
    cfg.kappa = kappa;
    cfg.nu_target = nu_pi;
    cfg.nu_family = nu;
    cfg.n_iters = iters;
    cfg.n_replicates = reps;
    cfg.seed = seed;
    const auto result = lef::bench::run_experiment(cfg);
    std::vector<double> finals;
    for (const auto& rep : result.replicates)
      if (!rep.records.empty() && rep.records.back().iteration + 1 == iters)
        finals.push_back(rep.records.back().metric);
    DeskCell cell;
    if (!finals.empty()) {
      cell.final_median = lef::bench::exact_quartiles(finals).median;
      cell.ran = true;
    }
    return cell;
  };

  // (a) + (c): vi_exact grid
  bool matched_lowest = true;
  bool gaussian_gap = true;
  double worst_gap = kInf;
  for (const auto& [d, kappa] : scenarios) {
    for (double nu_pi : {1.0, 3.0, 10.0}) {
      std::map<double, DeskCell> column;
      for (double nu : nus)
        if (compatibility_margin(nu_pi, d, nu) > 0.0)
          column[nu] = run_cell(Scenario::vi_exact, d, kappa, nu_pi, nu);
      for (const auto& [nu, cell] : column) {
        if (!cell.ran) matched_lowest = false;
        if (nu != nu_pi && column.count(nu_pi) &&
            cell.final_median <= column[nu_pi].final_median)
          matched_lowest = false;
      }
      if (nu_pi == 3.0 && column.count(kInf)) {
        for (const auto& [nu, cell] : column)
          if (!std::isinf(nu)) {
            const double ratio = column[kInf].final_median / cell.final_median;
            worst_gap = std::min(worst_gap, ratio);
            if (ratio < 10.0) gaussian_gap = false;
          }
      }
    }
  }

  // (b): scaled vs plain MALA on the poorly conditioned scenario
  const DeskCell plain = run_cell(Scenario::vi_mala, 5, 1000.0, 3.0, 3.0);
  const DeskCell scaled = run_cell(Scenario::vi_scaled_mala, 5, 1000.0, 3.0, 3.0);
  const bool scaled_wins = plain.ran && scaled.ran && scaled.final_median < plain.final_median;

  // (d): the x-cells match the inequality exactly
  bool x_cells = true;
  const std::vector<std::tuple<std::size_t, double, double>> expected_x = {
      {5, 1.0, 10.0}, {5, 1.0, kInf}, {20, 1.0, kInf}};
  for (const auto& [d, kappa] : scenarios)
    for (double nu_pi : {1.0, 3.0, 10.0})
      for (double nu : nus) {
        const bool incompatible = compatibility_margin(nu_pi, d, nu) <= 0.0;
        bool in_expected = false;
        for (const auto& [xd, xpi, xnu] : expected_x)
          in_expected |= xd == d && xpi == nu_pi &&
                         (std::isinf(xnu) ? std::isinf(nu) : xnu == nu);
        if (incompatible != in_expected) x_cells = false;
        // the config gate mirrors the inequality
        ExperimentConfig probe;
        probe.scenario = Scenario::vi_exact;
        probe.d = d;
        probe.nu_target = nu_pi;
        probe.nu_family = nu;
        bool rejected = false;
        try {
          probe.check();
        } catch (const Error&) {
          rejected = true;
        }
        if (rejected != incompatible) x_cells = false;
      }

  const double elapsed = seconds_since(t0);
  std::ostringstream detail;
  detail << "(a) matched-lowest " << (matched_lowest ? "ok" : "VIOLATED") << ", (b) scaled "
         << (scaled_wins ? "beats" : "DOES NOT BEAT") << " plain ["
         << fmt("%.3e vs %.3e", scaled.final_median, plain.final_median) << "], (c) gaussian/finite "
         << fmt("min ratio %.1fx (needs >= 10x) ", worst_gap)
         << (gaussian_gap ? "ok" : "VIOLATED: the correct Gaussian optimum caps the d=5 ratio")
         << ", (d) x-cells " << (x_cells ? "ok" : "VIOLATED") << fmt(", %.0f s", elapsed);
  report(7, matched_lowest && scaled_wins && gaussian_gap && x_cells && elapsed < 300.0,
         "desk-scale qualitative reproduction of the medians table", detail.str());
}

// ---------------------------------------------------------------- 8
void criterion_online_mle_fixed_point() {
  // Seed fixed: nu = 3 second moments have infinite fourth moments, so the
  // 5% Frobenius bar sits at the natural noise scale of a 1e5-point stream.
  bool pass = true;
  std::ostringstream detail;
  SeededRng maker(4008, 0);
  for (std::size_t d : {1, 5}) {
    for (double nu : {3.0, 10.0}) {
      Vec mu_pi(d);
      for (double& v : mu_pi) v = maker.uniform(-1.0, 1.0);
      const SpdMatrix sigma_pi = spd_with_condition(d, 10.0, maker);
      const StudentParams pi(nu, mu_pi, sigma_pi);
      SeededRng stream_rng = maker.derive(d * 100 + static_cast<std::uint64_t>(nu));
      const std::vector<Vec> stream = pi.sample(100000, stream_rng);
      const StudentParams init(nu, Vec(d, -2.0),
                               SpdMatrix::factor(Matrix::identity(d) * 10.0));
      const OnlineMleResult res = mle_online(stream, nu, init);
      const StudentParams& fit = res.trajectory.back();

      const double trace_scale = std::sqrt(sigma_pi.dense().trace() / static_cast<double>(d));
      double mu_err = 0.0;
      for (std::size_t i = 0; i < d; ++i)
        mu_err += (fit.mu()[i] - mu_pi[i]) * (fit.mu()[i] - mu_pi[i]);
      mu_err = std::sqrt(mu_err) / trace_scale;

      const Matrix sigma_star = sigma_pi.dense() * (nu / (nu - 2.0));
      const Matrix diff = fit.sigma().dense() - sigma_star;
      const double sigma_err = diff.frobenius_norm() / sigma_star.frobenius_norm();

      const double mean_ll =
          log_likelihood(fit, stream) / static_cast<double>(stream.size());
      const double bound = psi_lambda(fit);
      const bool ok = mu_err <= 0.05 && sigma_err <= 0.05 && mean_ll >= bound - 1e-9;
      if (!ok) pass = false;
      detail << "d" << d << "/nu" << nu << fmt(": mu %.3f, Sigma %.3f", mu_err, sigma_err)
             << (ok ? "; " : " (FAIL); ");
    }
  }
  report(8, pass, "online MLE reaches (mu_pi, nu/(nu-2) Sigma_pi) and satisfies the bound",
         detail.str());
}

// ---------------------------------------------------------------- 9
void criterion_em_mixture() {
  SeededRng maker(12009, 0);
  MixtureModel truth_template;
  truth_template.weights = {0.4, 0.1, 0.2, 0.3};
  const std::vector<Vec> corners = {{10, 10}, {-10, 10}, {-10, -10}, {10, -10}};

  bool improves_all = true;
  bool nu10_matches = true;
  double worst_rel = 0.0;
  for (double nu : {3.0, 10.0}) {
    MixtureModel truth;
    truth.weights = truth_template.weights;
    SeededRng sig_rng(12009, 1);
    for (const Vec& mu : corners)
      truth.components.emplace_back(nu, mu, spd_with_condition(2, 10.0, sig_rng));
    std::vector<double> finals, truths;
    for (int rep = 0; rep < 10; ++rep) {
      SeededRng data_rng = SeededRng(12009, 100 + rep).derive(1);
      SeededRng init_rng = SeededRng(12009, 100 + rep).derive(2);
      std::vector<Vec> data;
      for (int i = 0; i < 200; ++i) data.push_back(truth.sample(data_rng));
      MixtureModel model;
      model.weights.assign(4, 0.25);
      for (int j = 0; j < 4; ++j)
        model.components.emplace_back(nu, Vec{std::sqrt(10.0) * init_rng.normal(),
                                              std::sqrt(10.0) * init_rng.normal()},
                                      SpdMatrix::factor(Matrix::identity(2) * 10.0));
      const double init_ll = log_likelihood(model, data);
      bool crashed = false;
      try {
        for (int k = 0; k < 100; ++k) model = em_step(model, data);
      } catch (const Error&) {
        crashed = true;  // a collapsed component errors loudly, by design
      }
      const double final_ll = crashed ? init_ll : log_likelihood(model, data);
      if (crashed || final_ll <= init_ll) improves_all = false;
      finals.push_back(final_ll);
      truths.push_back(log_likelihood(truth, data));
    }
    if (nu == 10.0) {
      const double median_final = median_of(finals);
      const double median_truth = median_of(truths);
      const double rel = std::abs(median_final - median_truth) / std::abs(median_truth);
      worst_rel = rel;
      if (rel > 0.02) nu10_matches = false;
    }
  }

  // Gaussian-branch EM: log-likelihood never decreases over 100 steps
  bool monotone = true;
  {
    MixtureModel truth;
    truth.weights = truth_template.weights;
    SeededRng sig_rng(12009, 2);
    for (const Vec& mu : corners)
      truth.components.emplace_back(kInf, mu, spd_with_condition(2, 10.0, sig_rng));
    SeededRng data_rng(12009, 3);
    std::vector<Vec> data;
    for (int i = 0; i < 200; ++i) data.push_back(truth.sample(data_rng));
    MixtureModel model;
    model.weights.assign(4, 0.25);
    SeededRng init_rng(12009, 4);
    for (int j = 0; j < 4; ++j)
      model.components.emplace_back(kInf, Vec{std::sqrt(10.0) * init_rng.normal(),
                                              std::sqrt(10.0) * init_rng.normal()},
                                    SpdMatrix::factor(Matrix::identity(2) * 10.0));
    double prev = log_likelihood(model, data);
    for (int k = 0; k < 100; ++k) {
      model = em_step(model, data);
      const double ll = log_likelihood(model, data);
      if (ll < prev - 1e-9) monotone = false;
      prev = ll;
    }
  }

  report(9, improves_all && nu10_matches && monotone,
         "relaxed EM on the four-corner mixture: improvement, nu=10 match, Gaussian monotone",
         fmt("nu=10 median final vs truth rel gap %.4f (<= 0.02); ", worst_rel) +
             (improves_all ? "all replicates improve" : "IMPROVEMENT VIOLATED") +
             (monotone ? "" : "; MONOTONICITY VIOLATED"));
}

// ---------------------------------------------------------------- 10
void criterion_gradient_checks() {
  SeededRng rng(1010, 0);
  double worst = 0.0;
  for (std::size_t d : {1, 2, 5, 20}) {
    for (double nu : {1.0, 3.0, 10.0, kInf}) {
      const StudentParams p = random_student(d, nu, rng);
      const TargetOracle oracle = student_oracle(p);
      for (int i = 0; i < 100; ++i) {
        const Vec x = p.sample(rng);
        const Vec g = oracle.grad_log_unnormalized(x);
        Vec fd(d);
        for (std::size_t k = 0; k < d; ++k) {
          Vec xp = x, xm = x;
          xp[k] += 1e-5;
          xm[k] -= 1e-5;
          fd[k] = (oracle.log_unnormalized(xp) - oracle.log_unnormalized(xm)) / 2e-5;
        }
        double num = 0.0, den = 0.0;
        for (std::size_t k = 0; k < d; ++k) {
          num += (g[k] - fd[k]) * (g[k] - fd[k]);
          den += fd[k] * fd[k];
        }
        worst = std::max(worst, std::sqrt(num) / std::max(1.0, std::sqrt(den)));
      }
    }
  }
  report(10, worst < 1e-5,
         "analytic gradients match central finite differences (100 points x 16 configs)",
         fmt("max rel err %.2e, tol 1e-5", worst));
}

// ---------------------------------------------------------------- 11
void criterion_fig1() {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "lef_acceptance_fig1";
  fs::remove_all(dir);
  lef::bench::write_fig1(dir.string());
  std::ifstream in(dir / "summary.json");
  nlohmann::json summary;
  in >> summary;
  double worst_integral = 0.0;
  double gauss_err = kInf;
  int curves = 0;
  for (const auto& c : summary.at("curves")) {
    worst_integral = std::max(worst_integral, std::abs(c.at("integral").get<double>() - 1.0));
    if (c.at("lambda").get<double>() == 0.0 && c.at("alpha").get<double>() == 1.0)
      gauss_err = c.at("max_gaussian_abs_err").get<double>();
    ++curves;
  }
  report(11, curves == 9 && worst_integral < 1e-6 && gauss_err < 1e-8,
         "all nine fig1 escort curves are unit-mass; lambda=0/alpha=1 equals the Gaussian",
         fmt("max |integral-1| %.2e, gaussian max err %.2e", worst_integral, gauss_err));
}

}  // namespace

int main() {
  criterion_closed_vs_quadrature();
  criterion_fenchel_young();
  criterion_chart_round_trips();
  criterion_escort_law_mc();
  criterion_prox_convergence();
  criterion_vi_optimality_grid();
  criterion_desk_scale_table();
  criterion_online_mle_fixed_point();
  criterion_em_mixture();
  criterion_gradient_checks();
  criterion_fig1();
  if (g_failures == 0) std::printf("acceptance: all criteria passed\n");
  else std::printf("acceptance: %d criterion(s) FAILED\n", g_failures);
  return g_failures == 0 ? 0 : 1;
}
