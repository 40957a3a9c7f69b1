#include "../include/qpsampling.h"

#include <cmath>
#include <cstdlib>
#include <cstring>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "config.hpp"
#include "errors.hpp"
#include "version.hpp"

struct qp_kernel {
  std::shared_ptr<const qp::Kernel> k;
};
struct qp_analyzer {
  std::shared_ptr<const qp::Analyzer> a;
};
struct qp_matrix {
  std::shared_ptr<const qp::DilationMatrix> m;
};
struct qp_function {
  qp::TestFunction f;
};

namespace {

thread_local std::string g_last_error;

int fail(int code, const std::string& what) {
  g_last_error = what;
  return code;
}

template <typename Fn>
int guard(Fn&& fn) {
  try {
    int code = fn();
    if (code == QP_OK) g_last_error.clear();
    return code;
  } catch (const qp::ConfigError& e) {
    return fail(QP_ERR_CONFIG, e.what());
  } catch (const qp::UnsupportedError& e) {
    return fail(QP_ERR_UNSUPPORTED, e.what());
  } catch (const qp::NumericError& e) {
    return fail(QP_ERR_NUMERIC, e.what());
  } catch (const std::exception& e) {
    return fail(QP_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(QP_ERR_INTERNAL, "unknown failure");
  }
}

char* alloc_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out) std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

// NULL, "", and the bare word auto all pick a function-sized box with the
// default shape; quoted "auto" arrives as a JSON string and lands in
// parse_grid_spec, which says the same thing.
void resolve_grid(const char* grid_json, const qp::TestFunction& f, qp::Box* box,
                  std::vector<int>* shape) {
  if (grid_json && *grid_json && std::strcmp(grid_json, "auto") != 0)
    qp::parse_grid_spec(qp::parse_json_text(grid_json), box, shape);
  if (box->empty()) *box = f.decay_box();
  if (shape->empty()) *shape = qp::default_error_shape(f.dim());
}

qp::OperatorSpec make_spec(const qp_kernel* k, const qp_analyzer* a,
                           const qp_matrix* m, int level) {
  qp::OperatorSpec spec;
  spec.kernel = k->k;
  spec.analyzer = a->a;
  spec.dilation = m->m;
  spec.level = level;
  return spec;
}

std::vector<int> approx_shape(int dim) {
  int per_axis = dim == 1 ? 1025 : dim == 2 ? 129 : 33;
  return std::vector<int>(size_t(dim), per_axis);
}

}  // namespace

extern "C" {

const char* qp_version(void) { return qp::kVersion; }

const char* qp_last_error(void) { return g_last_error.c_str(); }

void qp_string_free(char* s) { std::free(s); }

int qp_set_threads(int n) {
#ifdef _OPENMP
  static const int hw_default = omp_get_max_threads();
  omp_set_num_threads(n >= 1 ? n : hw_default);
#else
  (void)n;
#endif
  return QP_OK;
}

int qp_kernel_create(const char* json_spec, qp_kernel** out) {
  if (!json_spec || !out) return fail(QP_ERR_INVALID, "null argument");
  return guard([&] {
    auto spec = qp::parse_json_text(json_spec);
    *out = new qp_kernel{qp::parse_kernel(spec)};
    return QP_OK;
  });
}

void qp_kernel_free(qp_kernel* k) { delete k; }

int qp_kernel_dim(const qp_kernel* k, int* out) {
  if (!k || !out) return fail(QP_ERR_INVALID, "null argument");
  *out = k->k->dim();
  return QP_OK;
}

int qp_kernel_eval(const qp_kernel* k, const double* x, int dim, double* out) {
  if (!k || !x || !out) return fail(QP_ERR_INVALID, "null argument");
  return guard([&] {
    if (dim != k->k->dim()) throw qp::ConfigError("dimension mismatch");
    *out = k->k->eval(std::vector<double>(x, x + dim));
    return QP_OK;
  });
}

int qp_kernel_eval_fourier(const qp_kernel* k, const double* xi, int dim,
                           double* out_re, double* out_im) {
  if (!k || !xi || !out_re || !out_im) return fail(QP_ERR_INVALID, "null argument");
  return guard([&] {
    if (dim != k->k->dim()) throw qp::ConfigError("dimension mismatch");
    qp::cdouble v = k->k->eval_fourier(std::vector<double>(xi, xi + dim));
    *out_re = v.real();
    *out_im = v.imag();
    return QP_OK;
  });
}

int qp_kernel_class_norm(const qp_kernel* k, double p, int box_resolution,
                         double* out) {
  if (!k || !out) return fail(QP_ERR_INVALID, "null argument");
  return guard([&] {
    *out = k->k->lp_class_norm(p, box_resolution);
    return QP_OK;
  });
}

int qp_analyzer_create(const char* json_spec, int dim, qp_analyzer** out) {
  if (!json_spec || !out) return fail(QP_ERR_INVALID, "null argument");
  return guard([&] {
    auto spec = qp::parse_json_text(json_spec);
    *out = new qp_analyzer{qp::parse_analyzer(spec, dim)};
    return QP_OK;
  });
}

void qp_analyzer_free(qp_analyzer* a) { delete a; }

int qp_matrix_create(const char* json_spec, qp_matrix** out) {
  if (!json_spec || !out) return fail(QP_ERR_INVALID, "null argument");
  return guard([&] {
    auto spec = qp::parse_json_text(json_spec);
    *out = new qp_matrix{qp::parse_matrix(spec)};
    return QP_OK;
  });
}

void qp_matrix_free(qp_matrix* m) { delete m; }

int qp_matrix_dim(const qp_matrix* m, int* out) {
  if (!m || !out) return fail(QP_ERR_INVALID, "null argument");
  *out = m->m->dim();
  return QP_OK;
}

int qp_function_create(const char* name, int dim, qp_function** out) {
  if (!name || !out) return fail(QP_ERR_INVALID, "null argument");
  return guard([&] {
    *out = new qp_function{qp::TestFunction::builtin(name, dim)};
    return QP_OK;
  });
}

void qp_function_free(qp_function* f) { delete f; }

int qp_function_eval(const qp_function* f, const double* x, int dim, double* out) {
  if (!f || !x || !out) return fail(QP_ERR_INVALID, "null argument");
  return guard([&] {
    if (dim != f->f.dim()) throw qp::ConfigError("dimension mismatch");
    *out = f->f.eval(std::vector<double>(x, x + dim));
    return QP_OK;
  });
}

int qp_certificate(const qp_kernel* k, const qp_analyzer* a, int max_order,
                   int lattice_radius, double tol, char** out_json) {
  if (!k || !a || !out_json) return fail(QP_ERR_INVALID, "null argument");
  return guard([&] {
    qp::OrderCertificate cert =
        qp::make_certificate(*k->k, *a->a, max_order, lattice_radius, tol);
    *out_json = alloc_string(qp::to_json(cert).dump(2));
    return QP_OK;
  });
}

int qp_tail_bound(const qp_kernel* k, int order_s, int lattice_radius, double delta,
                  char** out_json) {
  if (!k || !out_json) return fail(QP_ERR_INVALID, "null argument");
  return guard([&] {
    qp::TailReport tail = qp::tail_derivative_bound(*k->k, order_s, lattice_radius, delta);
    *out_json = alloc_string(qp::to_json(tail).dump(2));
    return QP_OK;
  });
}

int qp_quasi_interpolant(const char* orders_json, int target_order, char** out_json) {
  if (!orders_json || !out_json) return fail(QP_ERR_INVALID, "null argument");
  return guard([&] {
    auto jo = qp::parse_json_text(orders_json);
    if (!jo.is_array() || jo.empty())
      throw qp::ConfigError("orders: expected a nonempty array");
    std::vector<int> orders;
    for (const auto& e : jo) {
      if (!e.is_number_integer()) throw qp::ConfigError("orders: expected integers");
      orders.push_back(e.get<int>());
    }
    qp::Kernel base = qp::Kernel::bspline_tensor(orders);
    std::vector<qp::ShiftTerm> terms = qp::quasi_interpolation_coeffs(base, target_order);
    qp::ordered_json spec;
    spec["type"] = "bspline";
    spec["orders"] = orders;
    qp::ordered_json shifts = qp::ordered_json::array();
    qp::ordered_json coeffs = qp::ordered_json::array();
    for (const auto& t : terms) {
      shifts.push_back(t.shift);
      coeffs.push_back(t.coeff);
    }
    spec["shifts"] = std::move(shifts);
    spec["coeffs"] = std::move(coeffs);
    *out_json = alloc_string(spec.dump(2));
    return QP_OK;
  });
}

int qp_operator_error(const qp_kernel* k, const qp_analyzer* a, const qp_matrix* m,
                      int level, const qp_function* f, double p,
                      const char* grid_json, double* out_error,
                      double* out_uncertainty) {
  if (!k || !a || !m || !f || !out_error) return fail(QP_ERR_INVALID, "null argument");
  return guard([&] {
    if (f->f.dim() != m->m->dim()) throw qp::ConfigError("function dimension mismatch");
    qp::Box box;
    std::vector<int> shape;
    resolve_grid(grid_json, f->f, &box, &shape);
    qp::OpError err = qp::op_error(make_spec(k, a, m, level), f->f, p, box, shape);
    *out_error = err.value;
    if (out_uncertainty) *out_uncertainty = err.uncertainty;
    return QP_OK;
  });
}

int qp_operator_apply(const qp_kernel* k, const qp_analyzer* a, const qp_matrix* m,
                      int level, const qp_function* f, const char* grid_json,
                      double* out_values, int64_t out_len) {
  if (!k || !a || !m || !f || !grid_json || !out_values)
    return fail(QP_ERR_INVALID, "null argument");
  return guard([&] {
    if (f->f.dim() != m->m->dim()) throw qp::ConfigError("function dimension mismatch");
    qp::Box box;
    std::vector<int> shape;
    qp::parse_grid_spec(qp::parse_json_text(grid_json), &box, &shape);
    if (box.empty()) throw qp::ConfigError("apply needs an explicit grid");
    qp::GridFunction q = qp::apply(make_spec(k, a, m, level), f->f, box, shape);
    if (out_len != int64_t(q.size()))
      throw qp::ConfigError("output length " + std::to_string(out_len) +
                            " does not match grid size " + std::to_string(q.size()));
    for (size_t i = 0; i < q.values.size(); ++i) out_values[i] = q.values[i].real();
    return QP_OK;
  });
}

int qp_rescale_check(const qp_kernel* k, const qp_analyzer* a, const qp_matrix* m,
                     int level, const qp_function* f, double p,
                     const char* grid_json, double* out_ratio) {
  if (!k || !a || !m || !f || !out_ratio) return fail(QP_ERR_INVALID, "null argument");
  return guard([&] {
    if (f->f.dim() != m->m->dim()) throw qp::ConfigError("function dimension mismatch");
    qp::Box box;
    std::vector<int> shape;
    resolve_grid(grid_json, f->f, &box, &shape);
    *out_ratio = qp::rescale_check(make_spec(k, a, m, level), f->f, p, box, shape);
    return QP_OK;
  });
}

int qp_rate_run(const char* config_json, char** out_report_json, char** out_csv) {
  if (!config_json || !out_report_json) return fail(QP_ERR_INVALID, "null argument");
  return guard([&] {
    qp::RateConfig cfg = qp::parse_rate_config(qp::parse_json_text(config_json));
    bool failed = false;
    std::string verdict_note;
    if (cfg.aniso) {
      qp::AnisoReport report = qp::aniso_run(cfg.exp);
      *out_report_json = alloc_string(qp::to_json(report).dump(2));
      if (out_csv) *out_csv = alloc_string(qp::rate_csv(report.combined));
      failed = !report.pass;
      verdict_note = "combined error does not track the per-axis errors";
    } else {
      qp::RateReport report = qp::run(cfg.exp);
      *out_report_json = alloc_string(qp::to_json(report).dump(2));
      if (out_csv) *out_csv = alloc_string(qp::rate_csv(report));
      failed = report.verdict == "FAIL";
      verdict_note = "experiment verdict FAIL";
    }
    return failed ? fail(QP_ERR_VERDICT, verdict_note) : QP_OK;
  });
}

int qp_moduli_run(const char* config_json, char** out_csv) {
  if (!config_json || !out_csv) return fail(QP_ERR_INVALID, "null argument");
  return guard([&] {
    qp::ModuliConfig cfg = qp::parse_moduli_config(qp::parse_json_text(config_json));
    int d = cfg.matrix->dim();
    qp::Box mbox = cfg.box.empty() ? cfg.f.decay_box() : cfg.box;
    std::vector<int> mshape =
        cfg.shape.empty() ? qp::default_modulus_shape(d) : cfg.shape;
    qp::Box ebox = cfg.box.empty() ? cfg.f.decay_box() : cfg.box;
    std::vector<int> eshape = cfg.shape.empty() ? qp::default_error_shape(d) : cfg.shape;
    qp::ModulusOptions opts;
    opts.directions = cfg.directions;
    opts.seed = cfg.seed;
    opts.box = mbox;
    opts.shape = mshape;
    std::string csv = "j,modulus,best_approx,ratio\n";
    for (int j : cfg.levels) {
      Eigen::MatrixXd a = cfg.matrix->power(j);
      double omega = qp::modulus(cfg.f, a, cfg.s, cfg.p, opts);
      double e = qp::best_approx(cfg.f, a, cfg.p, ebox, eshape);
      double ratio = omega > 0.0 ? e / omega : (e > 0.0 ? INFINITY : 0.0);
      csv += std::to_string(j) + ',' + qp::format_double(omega) + ',' +
             qp::format_double(e) + ',' + qp::format_double(ratio) + '\n';
    }
    *out_csv = alloc_string(csv);
    return QP_OK;
  });
}

int qp_approx_run(const char* config_json, char** out_csv) {
  if (!config_json || !out_csv) return fail(QP_ERR_INVALID, "null argument");
  return guard([&] {
    qp::ApproxConfig cfg = qp::parse_approx_config(qp::parse_json_text(config_json));
    int d = cfg.spec.dilation->dim();
    if (cfg.f.dim() != d) throw qp::ConfigError("function dimension mismatch");
    qp::Box box = cfg.box.empty() ? cfg.f.decay_box() : cfg.box;
    std::vector<int> shape = cfg.shape.empty() ? approx_shape(d) : cfg.shape;
    qp::GridFunction q = qp::apply(cfg.spec, cfg.f, box, shape);
    std::string csv;
    for (int i = 0; i < d; ++i) csv += "x" + std::to_string(i + 1) + ",";
    csv += "f,qjf\n";
    for (size_t flat = 0; flat < q.size(); ++flat) {
      std::vector<double> x = q.point(flat);
      for (int i = 0; i < d; ++i) csv += qp::format_double(x[size_t(i)]) + ",";
      csv += qp::format_double(cfg.f.eval(x)) + ',' +
             qp::format_double(q.values[flat].real()) + '\n';
    }
    *out_csv = alloc_string(csv);
    return QP_OK;
  });
}

}  // extern "C"
