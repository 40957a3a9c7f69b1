#include "field.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "errors.hpp"
#include "multiindex.hpp"
#include "quadrature.hpp"
#include "rng.hpp"

namespace qp {

namespace {

constexpr double kPi = 3.14159265358979323846;

bool is_inf(double p) { return std::isinf(p); }

void check_p(double p) {
  if (!(p >= 1.0)) throw ConfigError("p must lie in [1, inf]");
}

// 1 inside A T^d, cosine rolloff to 0 at 2 A T^d, per axis of eta = A^{-1} xi.
double rolloff_ramp(double u) {
  double a = std::abs(u);
  if (a <= 0.5) return 1.0;
  if (a >= 1.0) return 0.0;
  double c = std::cos(kPi * (a - 0.5));
  return c * c;
}

bool diagonal(const Eigen::MatrixXd& a) {
  for (int r = 0; r < a.rows(); ++r)
    for (int c = 0; c < a.cols(); ++c)
      if (r != c && a(r, c) != 0.0) return false;
  return true;
}

// Fourier-side tail of a separable f at p = 2 and diagonal A: the complement
// of the kept box splits into slabs S_i = {|xi_i| > a_i, |xi_l| <= a_l, l<i},
// and each slab integral factorizes over axes.
double separable_l2_tail(const TestFunction& f, const Eigen::MatrixXd& a) {
  int d = f.dim();
  const auto& factors = f.factors();
  std::vector<double> half(static_cast<size_t>(d)), tail2(static_cast<size_t>(d)),
      inner2(static_cast<size_t>(d)), full2(static_cast<size_t>(d));
  for (int i = 0; i < d; ++i) {
    half[size_t(i)] = std::abs(a(i, i)) / 2.0;
    double h = f.fourier_decay_half(i);
    auto density = [&](double u) { return std::norm(factors[size_t(i)].fourier(u)); };
    double cut = std::min(half[size_t(i)], h);
    inner2[size_t(i)] = cut > 0 ? 2.0 * integrate_adaptive(density, 0.0, cut, 1e-10) : 0.0;
    tail2[size_t(i)] =
        half[size_t(i)] >= h
            ? 0.0
            : 2.0 * integrate_adaptive(density, half[size_t(i)], h, 1e-10);
    full2[size_t(i)] = inner2[size_t(i)] + tail2[size_t(i)];
  }
  double total = 0.0;
  for (int i = 0; i < d; ++i) {
    double slab = tail2[size_t(i)];
    for (int l = 0; l < i; ++l) slab *= inner2[size_t(l)];
    for (int l = i + 1; l < d; ++l) slab *= full2[size_t(l)];
    total += slab;
  }
  return std::sqrt(std::max(total, 0.0));
}

GridFunction subtract(const GridFunction& g, const GridFunction& h) {
  GridFunction out = g;
  for (size_t i = 0; i < out.values.size(); ++i) out.values[i] -= h.values[i];
  return out;
}

}  // namespace

double best_approx_grid(const GridFunction& g, const Eigen::MatrixXd& a, double p) {
  check_p(p);
  if (a.rows() != g.dim() || a.cols() != g.dim())
    throw ConfigError("cutoff matrix dimension mismatch");
  GridFunction kept;
  if (p == 1.0 || is_inf(p)) {
    Eigen::MatrixXd ainv = a.inverse();
    Eigen::VectorXd xi(g.dim());
    kept = fourier_filter(g, [&](const std::vector<double>& freq) {
      for (int i = 0; i < int(freq.size()); ++i) xi(i) = freq[size_t(i)];
      Eigen::VectorXd eta = ainv * xi;
      double m = 1.0;
      for (int i = 0; i < eta.size(); ++i) m *= rolloff_ramp(eta(i));
      return cdouble(m);
    });
  } else {
    kept = fourier_truncate(g, a);
  }
  return lp_norm(subtract(g, kept), p);
}

double best_approx(const TestFunction& f, const Eigen::MatrixXd& a, double p,
                   const Box& box, const std::vector<int>& shape) {
  check_p(p);
  if (a.rows() != f.dim() || a.cols() != f.dim())
    throw ConfigError("cutoff matrix dimension mismatch");
  if (p == 2.0 && f.separable() && f.has_fourier() && diagonal(a))
    return separable_l2_tail(f, a);
  GridFunction g = sample([&](const std::vector<double>& x) { return f.eval(x); },
                          box, shape);
  return best_approx_grid(g, a, p);
}

double difference(const TestFunction& f, const std::vector<double>& t, int s,
                  const std::vector<double>& x) {
  if (s < 1) throw ConfigError("difference order must be >= 1");
  if (int(t.size()) != f.dim() || int(x.size()) != f.dim())
    throw ConfigError("difference step/point dimension mismatch");
  std::vector<double> y(x.size());
  double acc = 0.0;
  for (int nu = 0; nu <= s; ++nu) {
    for (size_t i = 0; i < x.size(); ++i) y[i] = x[i] + nu * t[i];
    double c = binomial(s, nu);
    acc += (nu % 2 == 0 ? c : -c) * f.eval(y);
  }
  return acc;
}

namespace {

std::vector<int> default_modulus_shape(int d) {
  int per_axis = d == 1 ? 4097 : d == 2 ? 1025 : 129;
  return std::vector<int>(size_t(d), per_axis);
}

// ||Delta_t^s f||_p over the box extended so the whole difference stencil is
// covered, streamed without materializing a grid. Deterministic regardless of
// thread count: fixed-size chunks are reduced in index order.
double difference_norm(const TestFunction& f, const std::vector<double>& t, int s,
                       double p, const Box& base, const std::vector<int>& shape) {
  int d = f.dim();
  Box ext = base;
  for (int i = 0; i < d; ++i) {
    double pad = s * std::abs(t[size_t(i)]);
    ext[size_t(i)][0] -= pad;
    ext[size_t(i)][1] += pad;
  }

  std::vector<double> coeff(size_t(s) + 1);
  for (int nu = 0; nu <= s; ++nu)
    coeff[size_t(nu)] = (nu % 2 == 0 ? 1.0 : -1.0) * binomial(s, nu);

  std::vector<double> step(static_cast<size_t>(d));
  std::vector<double> cellw(static_cast<size_t>(d));
  size_t total = 1;
  for (int i = 0; i < d; ++i) {
    step[size_t(i)] = (ext[size_t(i)][1] - ext[size_t(i)][0]) / double(shape[size_t(i)] - 1);
    total *= size_t(shape[size_t(i)]);
  }

  bool separable = f.separable();
  // tables[nu * d + i][g] = factor_i(x_g + nu t_i)
  std::vector<std::vector<double>> tables;
  if (separable) {
    tables.resize(size_t(s + 1) * size_t(d));
    for (int nu = 0; nu <= s; ++nu)
      for (int i = 0; i < d; ++i) {
        auto& tab = tables[size_t(nu) * size_t(d) + size_t(i)];
        tab.resize(size_t(shape[size_t(i)]));
        const auto& fac = f.factors()[size_t(i)];
        for (int g = 0; g < shape[size_t(i)]; ++g)
          tab[size_t(g)] = fac.eval(ext[size_t(i)][0] + g * step[size_t(i)] +
                                    nu * t[size_t(i)]);
      }
  }

  bool inf_norm = is_inf(p);
  constexpr size_t kChunk = size_t(1) << 14;
  size_t nchunks = (total + kChunk - 1) / kChunk;
  std::vector<double> partial(nchunks, 0.0);

#pragma omp parallel for schedule(static)
  for (long long c = 0; c < (long long)nchunks; ++c) {
    size_t begin = size_t(c) * kChunk;
    size_t end = std::min(total, begin + kChunk);
    std::vector<int> idx(static_cast<size_t>(d));
    std::vector<double> x(static_cast<size_t>(d));
    double local = 0.0;
    for (size_t flat = begin; flat < end; ++flat) {
      size_t rem = flat;
      for (int i = d - 1; i >= 0; --i) {
        idx[size_t(i)] = int(rem % size_t(shape[size_t(i)]));
        rem /= size_t(shape[size_t(i)]);
      }
      double val = 0.0;
      if (separable) {
        for (int nu = 0; nu <= s; ++nu) {
          double prod = coeff[size_t(nu)];
          for (int i = 0; i < d; ++i)
            prod *= tables[size_t(nu) * size_t(d) + size_t(i)][size_t(idx[size_t(i)])];
          val += prod;
        }
      } else {
        for (int i = 0; i < d; ++i)
          x[size_t(i)] = ext[size_t(i)][0] + idx[size_t(i)] * step[size_t(i)];
        val = difference(f, t, s, x);
      }
      double av = std::abs(val);
      if (inf_norm) {
        local = std::max(local, av);
      } else {
        double w = 1.0;
        for (int i = 0; i < d; ++i)
          if (idx[size_t(i)] == 0 || idx[size_t(i)] == shape[size_t(i)] - 1) w *= 0.5;
        if (p == 2.0)
          local += w * av * av;
        else if (p == 1.0)
          local += w * av;
        else
          local += w * std::pow(av, p);
      }
    }
    partial[size_t(c)] = local;
  }

  if (inf_norm) {
    double m = 0.0;
    for (double v : partial) m = std::max(m, v);
    return m;
  }
  double acc = 0.0;
  for (double v : partial) acc += v;
  double cell = 1.0;
  for (int i = 0; i < d; ++i) cell *= step[size_t(i)];
  return std::pow(acc * cell, 1.0 / p);
}

}  // namespace

double modulus(const TestFunction& f, const Eigen::MatrixXd& a, int s, double p,
               const ModulusOptions& opts) {
  check_p(p);
  int d = f.dim();
  if (a.rows() != d || a.cols() != d) throw ConfigError("matrix dimension mismatch");
  if (s < 1) throw ConfigError("modulus order must be >= 1");
  if (opts.directions < 32) throw ConfigError("modulus needs at least 32 directions");

  Box base = opts.box.empty() ? f.decay_box() : opts.box;
  std::vector<int> shape = opts.shape.empty() ? default_modulus_shape(d) : opts.shape;
  if (int(base.size()) != d || int(shape.size()) != d)
    throw ConfigError("modulus grid dimension mismatch");

  Eigen::MatrixXd ainv = a.inverse();
  static const double radii[] = {0.25, 0.5, 0.75, 0.999};

  Rng rng(opts.seed);
  std::set<std::vector<double>> seen;
  std::vector<std::vector<double>> steps;
  for (int dir = 0; dir < opts.directions; ++dir) {
    std::vector<double> u = rng.unit_vector(d);
    for (double r : radii) {
      Eigen::VectorXd ru(d);
      for (int i = 0; i < d; ++i) ru(i) = r * u[size_t(i)];
      Eigen::VectorXd tv = ainv * ru;
      std::vector<double> t(static_cast<size_t>(d));
      for (int i = 0; i < d; ++i) t[size_t(i)] = tv(i);
      // ||Delta_{-t}^s f||_p equals ||Delta_t^s f||_p up to the decay tail,
      // so mirrored steps are folded onto a canonical sign.
      std::vector<double> canon = t;
      for (double v : canon) {
        if (v > 0) break;
        if (v < 0) {
          for (double& w : canon) w = -w;
          break;
        }
      }
      if (seen.insert(canon).second) steps.push_back(std::move(canon));
    }
  }

  double best = 0.0;
  for (const auto& t : steps)
    best = std::max(best, difference_norm(f, t, s, p, base, shape));
  return best;
}

BesovTail besov_tail(const TestFunction& f, const DilationMatrix& m, double s_exp,
                     double p, double q, int nu_max, const Box& box,
                     const std::vector<int>& shape) {
  check_p(p);
  if (!(q >= 1.0) || std::isinf(q)) throw ConfigError("q must be finite and >= 1");
  if (nu_max < 1 || nu_max > 16) throw ConfigError("nu_max must lie in [1, 16]");
  if (m.dim() != f.dim()) throw ConfigError("matrix dimension mismatch");

  BesovTail out;
  GridFunction g = sample([&](const std::vector<double>& x) { return f.eval(x); },
                          box, shape);
  out.fnorm = lp_norm(g, p);

  double weight = std::pow(m.det_abs(), s_exp / double(m.dim()) * q);
  double sum = 0.0, wpow = 1.0, last = 0.0;
  for (int nu = 1; nu <= nu_max; ++nu) {
    wpow *= weight;
    double e = best_approx(f, m.power(nu), p, box, shape);
    last = wpow * std::pow(e, q);
    sum += last;
  }
  out.last_term_ratio = sum > 0.0 ? last / sum : 0.0;
  out.value = out.fnorm + std::pow(sum, 1.0 / q);
  return out;
}

}  // namespace qp
