#include "lef.h"

#include <cstring>
#include <new>
#include <string>

#include "core/bench.hpp"
#include "core/coupling.hpp"
#include "core/divergence.hpp"
#include "core/mala.hpp"
#include "core/solver.hpp"

namespace {

thread_local std::string g_last_error;

lef_status to_status(lef::errc c) { return static_cast<lef_status>(c); }

template <typename F>
lef_status guarded(F&& f) {
  try {
    f();
    g_last_error.clear();
    return LEF_OK;
  } catch (const lef::Error& e) {
    g_last_error = e.what();
    return to_status(e.code());
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return LEF_ERR_INTERNAL;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return LEF_ERR_INTERNAL;
  }
}

lef::Vec to_vec(const double* p, std::size_t n) { return lef::Vec(p, p + n); }

lef::Matrix to_matrix(const double* p, std::size_t rows, std::size_t cols) {
  lef::Matrix m(rows, cols);
  std::memcpy(m.data(), p, rows * cols * sizeof(double));
  return m;
}

void from_matrix(const lef::Matrix& m, double* out) {
  std::memcpy(out, m.data(), m.rows() * m.cols() * sizeof(double));
}

void require_ptr(const void* p, const char* what) {
  lef::require(p != nullptr, lef::errc::invalid_argument, std::string(what) + " is null");
}

}  // namespace

struct lef_rng {
  lef::SeededRng rng;
};

struct lef_student {
  lef::StudentParams params;
};

struct lef_mixture {
  lef::MixtureModel model;
};

extern "C" {

const char* lef_version(void) { return "0.1.0"; }

const char* lef_last_error(void) { return g_last_error.c_str(); }

lef_status lef_rng_create(uint64_t seed, uint64_t stream, lef_rng** out) {
  return guarded([&] {
    require_ptr(out, "out");
    *out = new lef_rng{lef::SeededRng(seed, stream)};
  });
}

void lef_rng_destroy(lef_rng* rng) { delete rng; }

lef_status lef_rng_uniform(lef_rng* rng, double* out) {
  return guarded([&] {
    require_ptr(rng, "rng");
    require_ptr(out, "out");
    *out = rng->rng.uniform();
  });
}

lef_status lef_rng_normal(lef_rng* rng, double* out) {
  return guarded([&] {
    require_ptr(rng, "rng");
    require_ptr(out, "out");
    *out = rng->rng.normal();
  });
}

lef_status lef_student_create(size_t d, double nu, const double* mu, const double* sigma,
                              lef_student** out) {
  return guarded([&] {
    require_ptr(mu, "mu");
    require_ptr(sigma, "sigma");
    require_ptr(out, "out");
    lef::SpdMatrix s = lef::SpdMatrix::factor(to_matrix(sigma, d, d));
    *out = new lef_student{lef::StudentParams(nu, to_vec(mu, d), std::move(s))};
  });
}

void lef_student_destroy(lef_student* p) { delete p; }

lef_status lef_student_dim(const lef_student* p, size_t* out) {
  return guarded([&] {
    require_ptr(p, "p");
    require_ptr(out, "out");
    *out = p->params.dim();
  });
}

lef_status lef_student_nu(const lef_student* p, double* out) {
  return guarded([&] {
    require_ptr(p, "p");
    require_ptr(out, "out");
    *out = p->params.nu();
  });
}

lef_status lef_student_mu(const lef_student* p, double* out) {
  return guarded([&] {
    require_ptr(p, "p");
    require_ptr(out, "out");
    const lef::Vec& mu = p->params.mu();
    std::memcpy(out, mu.data(), mu.size() * sizeof(double));
  });
}

lef_status lef_student_sigma(const lef_student* p, double* out) {
  return guarded([&] {
    require_ptr(p, "p");
    require_ptr(out, "out");
    from_matrix(p->params.sigma().dense(), out);
  });
}

lef_status lef_student_log_density(const lef_student* p, const double* x, double* out) {
  return guarded([&] {
    require_ptr(p, "p");
    require_ptr(x, "x");
    require_ptr(out, "out");
    *out = p->params.log_density(to_vec(x, p->params.dim()));
  });
}

lef_status lef_student_grad_log_density(const lef_student* p, const double* x, double* out) {
  return guarded([&] {
    require_ptr(p, "p");
    require_ptr(x, "x");
    require_ptr(out, "out");
    const lef::Vec g = p->params.grad_log_density(to_vec(x, p->params.dim()));
    std::memcpy(out, g.data(), g.size() * sizeof(double));
  });
}

lef_status lef_student_sample(const lef_student* p, size_t n, lef_rng* rng, double* out) {
  return guarded([&] {
    require_ptr(p, "p");
    require_ptr(rng, "rng");
    require_ptr(out, "out");
    const std::size_t d = p->params.dim();
    for (std::size_t i = 0; i < n; ++i) {
      const lef::Vec x = p->params.sample(rng->rng);
      std::memcpy(out + i * d, x.data(), d * sizeof(double));
    }
  });
}

lef_status lef_student_renyi_entropy(const lef_student* p, double alpha, double* out) {
  return guarded([&] {
    require_ptr(p, "p");
    require_ptr(out, "out");
    *out = lef::renyi_entropy(p->params, alpha);
  });
}

lef_status lef_student_natural(const lef_student* p, double* theta1, double* theta2,
                               double* lambda) {
  return guarded([&] {
    require_ptr(p, "p");
    require_ptr(theta1, "theta1");
    require_ptr(theta2, "theta2");
    const lef::NaturalParams n = lef::natural_from_params(p->params);
    std::memcpy(theta1, n.theta1.data(), n.theta1.size() * sizeof(double));
    from_matrix(n.theta2, theta2);
    if (lambda) *lambda = n.lambda;
  });
}

lef_status lef_student_from_natural(size_t d, double nu, const double* theta1,
                                    const double* theta2, lef_student** out) {
  return guarded([&] {
    require_ptr(theta1, "theta1");
    require_ptr(theta2, "theta2");
    require_ptr(out, "out");
    lef::NaturalParams n;
    n.theta1 = to_vec(theta1, d);
    n.theta2 = to_matrix(theta2, d, d);
    n.lambda = -2.0 / (nu + static_cast<double>(d));
    *out = new lef_student{lef::params_from_natural(n, nu)};
  });
}

lef_status lef_log_partition(size_t d, double nu, const double* theta1, const double* theta2,
                             double* out) {
  return guarded([&] {
    require_ptr(theta1, "theta1");
    require_ptr(theta2, "theta2");
    require_ptr(out, "out");
    lef::NaturalParams n;
    n.theta1 = to_vec(theta1, d);
    n.theta2 = to_matrix(theta2, d, d);
    n.lambda = -2.0 / (nu + static_cast<double>(d));
    *out = lef::log_partition(n, nu);
  });
}

lef_status lef_student_escort(const lef_student* p, double nu_q, lef_student** out) {
  return guarded([&] {
    require_ptr(p, "p");
    require_ptr(out, "out");
    *out = new lef_student{lef::escort(p->params, nu_q)};
  });
}

lef_status lef_student_escort_moments(const lef_student* p, double nu_q, double* m1, double* m2) {
  return guarded([&] {
    require_ptr(p, "p");
    require_ptr(m1, "m1");
    require_ptr(m2, "m2");
    const lef::SufficientMoments m = lef::escort_moments(p->params, nu_q);
    std::memcpy(m1, m.m1.data(), m.m1.size() * sizeof(double));
    from_matrix(m.M2, m2);
  });
}

lef_status lef_student_from_escort_moments(size_t d, double nu, const double* m1, const double* m2,
                                           lef_student** out) {
  return guarded([&] {
    require_ptr(m1, "m1");
    require_ptr(m2, "m2");
    require_ptr(out, "out");
    lef::SufficientMoments m{to_vec(m1, d), to_matrix(m2, d, d)};
    *out = new lef_student{lef::params_from_escort_moments(nu, m)};
  });
}

lef_status lef_compatibility_margin(double nu_p, size_t d, double nu_q, double* out) {
  return guarded([&] {
    require_ptr(out, "out");
    *out = lef::compatibility_margin(nu_p, d, nu_q);
  });
}

lef_status lef_coupling_eval(double lambda, size_t n, const double* u, const double* v,
                             double* out) {
  return guarded([&] {
    require_ptr(u, "u");
    require_ptr(v, "v");
    require_ptr(out, "out");
    *out = lef::coupling_eval(lambda, std::span(u, n), std::span(v, n));
  });
}

lef_status lef_renyi_divergence_closed(const lef_student* pi, const lef_student* q, double* value,
                                       double* alpha_out) {
  return guarded([&] {
    require_ptr(pi, "pi");
    require_ptr(q, "q");
    require_ptr(value, "value");
    const lef::DivergenceReport rep = lef::renyi_divergence_closed(pi->params, q->params);
    *value = rep.value;
    if (alpha_out) *alpha_out = rep.alpha;
  });
}

lef_status lef_renyi_divergence_mc(const lef_student* pi, const lef_student* q, double alpha,
                                   size_t n, lef_rng* rng, double* value, double* stderr_out) {
  return guarded([&] {
    require_ptr(pi, "pi");
    require_ptr(q, "q");
    require_ptr(rng, "rng");
    require_ptr(value, "value");
    const lef::DivergenceReport rep =
        lef::renyi_divergence_mc(pi->params, q->params, alpha, n, rng->rng);
    *value = rep.value;
    if (stderr_out) *stderr_out = rep.stderr_estimate.value_or(0.0);
  });
}

lef_status lef_default_step(size_t d, double* out) {
  return guarded([&] {
    require_ptr(out, "out");
    *out = lef::default_step(d);
  });
}

lef_status lef_mala_chain(size_t d, lef_logpdf_fn logpdf, lef_grad_fn grad, void* ctx,
                          double alpha, size_t n_steps, const double* x0, const double* scale,
                          double step, lef_rng* rng, double* states_out,
                          double* acceptance_rate_out) {
  return guarded([&] {
    require_ptr(reinterpret_cast<const void*>(logpdf), "logpdf");
    require_ptr(reinterpret_cast<const void*>(grad), "grad");
    require_ptr(x0, "x0");
    require_ptr(scale, "scale");
    require_ptr(rng, "rng");
    require_ptr(states_out, "states_out");
    lef::TargetOracle oracle;
    oracle.dim = d;
    oracle.log_unnormalized = [logpdf, ctx, d](const lef::Vec& x) {
      return logpdf(x.data(), d, ctx);
    };
    oracle.grad_log_unnormalized = [grad, ctx, d](const lef::Vec& x) {
      lef::Vec g(d);
      grad(x.data(), d, g.data(), ctx);
      return g;
    };
    const lef::MalaChainResult res =
        lef::mala_chain(oracle, alpha, n_steps, to_vec(x0, d),
                        lef::SpdMatrix::factor(to_matrix(scale, d, d)), step, rng->rng);
    for (std::size_t k = 0; k < res.states.size(); ++k)
      std::memcpy(states_out + k * d, res.states[k].data(), d * sizeof(double));
    if (acceptance_rate_out) *acceptance_rate_out = res.acceptance_rate;
  });
}

lef_status lef_mle_moment_match(size_t d, double nu, size_t n, const double* data,
                                lef_student** out, double* bound_out) {
  return guarded([&] {
    require_ptr(data, "data");
    require_ptr(out, "out");
    std::vector<lef::Vec> pts(n);
    for (std::size_t i = 0; i < n; ++i) pts[i] = to_vec(data + i * d, d);
    lef::MleFit fit = lef::mle_moment_match(pts, nu);
    if (bound_out) *bound_out = fit.bound;
    *out = new lef_student{std::move(fit.params)};
  });
}

lef_status lef_mle_online(size_t d, double nu, size_t n, const double* stream,
                          const lef_student* init, lef_student** out) {
  return guarded([&] {
    require_ptr(stream, "stream");
    require_ptr(init, "init");
    require_ptr(out, "out");
    std::vector<lef::Vec> pts(n);
    for (std::size_t i = 0; i < n; ++i) pts[i] = to_vec(stream + i * d, d);
    lef::OnlineMleResult res = lef::mle_online(pts, nu, init->params);
    *out = new lef_student{std::move(res.trajectory.back())};
  });
}

lef_status lef_mixture_create(size_t j_count, size_t d, double nu, const double* weights,
                              const double* mus, const double* sigmas, lef_mixture** out) {
  return guarded([&] {
    require_ptr(weights, "weights");
    require_ptr(mus, "mus");
    require_ptr(sigmas, "sigmas");
    require_ptr(out, "out");
    lef::MixtureModel m;
    m.weights = to_vec(weights, j_count);
    for (std::size_t j = 0; j < j_count; ++j) {
      lef::SpdMatrix s = lef::SpdMatrix::factor(to_matrix(sigmas + j * d * d, d, d));
      m.components.emplace_back(nu, to_vec(mus + j * d, d), std::move(s));
    }
    m.validate();
    *out = new lef_mixture{std::move(m)};
  });
}

void lef_mixture_destroy(lef_mixture* m) { delete m; }

lef_status lef_mixture_size(const lef_mixture* m, size_t* j_count, size_t* d) {
  return guarded([&] {
    require_ptr(m, "m");
    if (j_count) *j_count = m->model.size();
    if (d) *d = m->model.dim();
  });
}

lef_status lef_mixture_weights(const lef_mixture* m, double* out) {
  return guarded([&] {
    require_ptr(m, "m");
    require_ptr(out, "out");
    std::memcpy(out, m->model.weights.data(), m->model.weights.size() * sizeof(double));
  });
}

lef_status lef_mixture_component(const lef_mixture* m, size_t j, lef_student** out) {
  return guarded([&] {
    require_ptr(m, "m");
    require_ptr(out, "out");
    lef::require(j < m->model.size(), lef::errc::invalid_argument, "component index out of range");
    *out = new lef_student{m->model.components[j]};
  });
}

lef_status lef_mixture_em_step(lef_mixture* m, size_t n, const double* data) {
  return guarded([&] {
    require_ptr(m, "m");
    require_ptr(data, "data");
    const std::size_t d = m->model.dim();
    std::vector<lef::Vec> pts(n);
    for (std::size_t i = 0; i < n; ++i) pts[i] = to_vec(data + i * d, d);
    m->model = lef::em_step(m->model, pts);
  });
}

lef_status lef_mixture_log_likelihood(const lef_mixture* m, size_t n, const double* data,
                                      double* out) {
  return guarded([&] {
    require_ptr(m, "m");
    require_ptr(data, "data");
    require_ptr(out, "out");
    const std::size_t d = m->model.dim();
    std::vector<lef::Vec> pts(n);
    for (std::size_t i = 0; i < n; ++i) pts[i] = to_vec(data + i * d, d);
    *out = lef::log_likelihood(m->model, pts);
  });
}

lef_status lef_student_log_likelihood(const lef_student* p, size_t n, const double* data,
                                      double* out) {
  return guarded([&] {
    require_ptr(p, "p");
    require_ptr(data, "data");
    require_ptr(out, "out");
    const std::size_t d = p->params.dim();
    std::vector<lef::Vec> pts(n);
    for (std::size_t i = 0; i < n; ++i) pts[i] = to_vec(data + i * d, d);
    *out = lef::log_likelihood(p->params, pts);
  });
}

lef_status lef_experiment_run(const char* config_json, const char* out_dir) {
  return guarded([&] {
    require_ptr(config_json, "config_json");
    require_ptr(out_dir, "out_dir");
    const lef::bench::ExperimentConfig cfg =
        lef::bench::ExperimentConfig::from_json_text(config_json);
    lef::bench::run_to_files(cfg, out_dir);
  });
}

lef_status lef_fig1_write(const char* out_dir) {
  return guarded([&] {
    require_ptr(out_dir, "out_dir");
    lef::bench::write_fig1(out_dir);
  });
}

lef_status lef_table(size_t n_paths, const char* const* paths, char** out) {
  return guarded([&] {
    require_ptr(paths, "paths");
    require_ptr(out, "out");
    std::vector<std::string> ps(paths, paths + n_paths);
    const std::string table = lef::bench::table_from_summaries(ps);
    *out = new char[table.size() + 1];
    std::memcpy(*out, table.c_str(), table.size() + 1);
  });
}

lef_status lef_validate(double phi_bias, char** report, int* all_pass) {
  return guarded([&] {
    require_ptr(report, "report");
    const std::vector<lef::bench::ValidationCheck> checks = lef::bench::validate(phi_bias);
    const std::string text = lef::bench::format_validation(checks);
    *report = new char[text.size() + 1];
    std::memcpy(*report, text.c_str(), text.size() + 1);
    if (all_pass) {
      int ok = 1;
      for (const auto& c : checks) ok &= c.pass ? 1 : 0;
      *all_pass = ok;
    }
  });
}

void lef_string_free(char* s) { delete[] s; }

}  // extern "C"
