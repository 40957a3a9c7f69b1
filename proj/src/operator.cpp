#include "operator.hpp"

#include <algorithm>
#include <cmath>

#include "errors.hpp"

namespace qp {

namespace {

constexpr double kPi = 3.14159265358979323846;

void check_spec(const OperatorSpec& spec) {
  if (!spec.kernel || !spec.analyzer || !spec.dilation)
    throw ConfigError("operator spec is missing a component");
  int d = spec.dilation->dim();
  if (spec.kernel->dim() != d || spec.analyzer->dim() != d)
    throw ConfigError("operator spec dimensions disagree");
  if (spec.level < 0) throw ConfigError("operator level must be >= 0");
  if (!(spec.lattice_truncation > 0))
    throw ConfigError("lattice truncation must be positive");
}

std::vector<double> support_halves(const Kernel& k) {
  std::vector<double> a(size_t(k.dim()));
  for (int i = 0; i < k.dim(); ++i) {
    a[size_t(i)] = k.support_half(i);
    if (std::isinf(a[size_t(i)]))
      throw ConfigError("operator needs a kernel with bounded support");
  }
  return a;
}

}  // namespace

size_t CoefficientTable::flatten(const std::vector<int>& k) const {
  size_t flat = 0;
  for (size_t i = 0; i < k.size(); ++i)
    flat = flat * size_t(hi[i] - lo[i] + 1) + size_t(k[i] - lo[i]);
  return flat;
}

cdouble CoefficientTable::at(const std::vector<int>& k) const {
  for (size_t i = 0; i < k.size(); ++i)
    if (k[i] < lo[i] || k[i] > hi[i]) return 0.0;
  return values[flatten(k)];
}

CoefficientTable coefficient_table(const OperatorSpec& spec, const TestFunction& f,
                                   const Box& box) {
  check_spec(spec);
  int d = spec.dilation->dim();
  if (int(box.size()) != d || f.dim() != d)
    throw ConfigError("operator box/function dimension mismatch");
  Eigen::MatrixXd b = spec.dilation->power(spec.level);
  std::vector<double> a = support_halves(*spec.kernel);

  CoefficientTable table;
  table.lo.resize(size_t(d));
  table.hi.resize(size_t(d));
  size_t count = 1;
  for (int i = 0; i < d; ++i) {
    // Extremes of -(M^j x)_i over the box corners.
    double lo = 0.0, hi = 0.0;
    for (int c = 0; c < d; ++c) {
      double v0 = -b(i, c) * box[size_t(c)][0];
      double v1 = -b(i, c) * box[size_t(c)][1];
      lo += std::min(v0, v1);
      hi += std::max(v0, v1);
    }
    double klo = std::ceil(lo - a[size_t(i)] - 1e-9);
    double khi = std::floor(hi + a[size_t(i)] + 1e-9);
    if (std::isfinite(spec.lattice_truncation)) {
      klo = std::max(klo, -std::floor(spec.lattice_truncation));
      khi = std::min(khi, std::floor(spec.lattice_truncation));
    }
    if (khi < klo) throw ConfigError("lattice truncation leaves no active indices");
    table.lo[size_t(i)] = int(klo);
    table.hi[size_t(i)] = int(khi);
    count *= size_t(khi - klo + 1);
    if (count > size_t(1e8))
      throw ConfigError("active lattice exceeds 1e8 terms; lower the level or box");
  }

  table.values.resize(count);
#pragma omp parallel for schedule(static)
  for (long long flat = 0; flat < (long long)count; ++flat) {
    std::vector<int> k(static_cast<size_t>(d));
    size_t rem = size_t(flat);
    for (int i = d - 1; i >= 0; --i) {
      int width = table.hi[size_t(i)] - table.lo[size_t(i)] + 1;
      k[size_t(i)] = table.lo[size_t(i)] + int(rem % size_t(width));
      rem /= size_t(width);
    }
    table.values[size_t(flat)] =
        spec.analyzer->coefficient(f, *spec.dilation, spec.level, k);
  }
  return table;
}

GridFunction apply(const OperatorSpec& spec, const TestFunction& f, const Box& box,
                   const std::vector<int>& shape) {
  CoefficientTable table = coefficient_table(spec, f, box);
  int d = spec.dilation->dim();
  Eigen::MatrixXd b = spec.dilation->power(spec.level);
  std::vector<double> a = support_halves(*spec.kernel);

  GridFunction g = make_grid(box, shape);
#pragma omp parallel for schedule(static)
  for (long long flat = 0; flat < (long long)g.size(); ++flat) {
    std::vector<double> x = g.point(size_t(flat));
    std::vector<double> y(size_t(d), 0.0);
    for (int r = 0; r < d; ++r)
      for (int c = 0; c < d; ++c) y[size_t(r)] += b(r, c) * x[size_t(c)];

    std::vector<int> wlo(static_cast<size_t>(d)), whi(static_cast<size_t>(d)),
        k(static_cast<size_t>(d));
    bool empty = false;
    for (int i = 0; i < d; ++i) {
      wlo[size_t(i)] = std::max(table.lo[size_t(i)],
                                int(std::ceil(-y[size_t(i)] - a[size_t(i)] - 1e-9)));
      whi[size_t(i)] = std::min(table.hi[size_t(i)],
                                int(std::floor(-y[size_t(i)] + a[size_t(i)] + 1e-9)));
      empty = empty || whi[size_t(i)] < wlo[size_t(i)];
      k[size_t(i)] = wlo[size_t(i)];
    }
    cdouble acc = 0.0;
    std::vector<double> u(static_cast<size_t>(d));
    while (!empty) {
      for (int i = 0; i < d; ++i) u[size_t(i)] = y[size_t(i)] + k[size_t(i)];
      acc += table.values[table.flatten(k)] * spec.kernel->eval(u);
      int axis = d - 1;
      while (axis >= 0 && ++k[size_t(axis)] > whi[size_t(axis)]) {
        k[size_t(axis)] = wlo[size_t(axis)];
        --axis;
      }
      if (axis < 0) break;
    }
    g.values[size_t(flat)] = acc;
  }
  return g;
}

OpError op_error(const OperatorSpec& spec, const TestFunction& f, double p,
                 const Box& box, const std::vector<int>& shape) {
  GridFunction q = apply(spec, f, box, shape);
  GridFunction target = sample([&](const std::vector<double>& x) { return f.eval(x); },
                               box, shape);
  for (size_t i = 0; i < q.values.size(); ++i) q.values[i] = target.values[i] - q.values[i];

  int d = spec.dilation->dim();
  std::vector<double> a = support_halves(*spec.kernel);
  OpError out;
  out.collar.resize(size_t(d));
  if (spec.dilation->is_diagonal()) {
    for (int i = 0; i < d; ++i)
      out.collar[size_t(i)] =
          a[size_t(i)] * std::pow(std::abs(spec.dilation->entry(i, i)), -spec.level);
  } else {
    double reach = spec.kernel->support_radius() *
                   operator_norm(spec.dilation->power(-spec.level));
    std::fill(out.collar.begin(), out.collar.end(), reach);
  }
  for (int i = 0; i < d; ++i) {
    double half_span = (box[size_t(i)][1] - box[size_t(i)][0]) / 2.0;
    out.collar[size_t(i)] = std::min(out.collar[size_t(i)], 0.25 * half_span);
  }
  out.value = lp_norm_collar(q, p, out.collar);

  // Truncated sinc kernels drop ideal-kernel mass beyond the window flat
  // region; estimate the dropped contribution from the outermost coefficient
  // shell (|ideal| <= 1/(pi |u|) per axis, summed over one octave).
  if (spec.kernel->variant() == Kernel::Variant::WindowedSinc) {
    CoefficientTable table = coefficient_table(spec, f, box);
    double boundary = 0.0;
    std::vector<int> k(static_cast<size_t>(d));
    for (size_t flat = 0; flat < table.values.size(); ++flat) {
      size_t rem = flat;
      bool outer = false;
      for (int i = d - 1; i >= 0; --i) {
        int width = table.hi[size_t(i)] - table.lo[size_t(i)] + 1;
        int ki = table.lo[size_t(i)] + int(rem % size_t(width));
        rem /= size_t(width);
        int margin = std::max(1, width / 10);
        outer = outer || ki - table.lo[size_t(i)] < margin ||
                table.hi[size_t(i)] - ki < margin;
      }
      if (outer) boundary = std::max(boundary, std::abs(table.values[flat]));
    }
    out.uncertainty = boundary * (2.0 / kPi) * std::log(2.0) + f.tail_bound();
  }
  return out;
}

double rescale_check(const OperatorSpec& spec, const TestFunction& f, double p,
                     const Box& box, const std::vector<int>& shape) {
  check_spec(spec);
  if (!(p >= 1.0)) throw ConfigError("p must lie in [1, inf]");
  if (!spec.dilation->is_diagonal())
    throw ConfigError("rescale check needs a diagonal dilation matrix");
  int d = spec.dilation->dim();
  int j = spec.level;

  double e_j = op_error(spec, f, p, box, shape).value;

  double inv_p = std::isinf(p) ? 0.0 : 1.0 / p;
  double amp = std::pow(spec.dilation->det_abs(), -double(j) * inv_p);
  std::vector<double> bdiag(static_cast<size_t>(d));
  Box box0 = box;
  for (int i = 0; i < d; ++i) {
    double mij = std::pow(spec.dilation->entry(i, i), j);
    bdiag[size_t(i)] = 1.0 / mij;
    box0[size_t(i)][0] = box[size_t(i)][0] * mij;
    box0[size_t(i)][1] = box[size_t(i)][1] * mij;
  }
  TestFunction g = f.scaled(amp, bdiag);

  OperatorSpec spec0 = spec;
  spec0.level = 0;
  double e_0 = op_error(spec0, g, p, box0, shape).value;
  if (e_0 == 0.0 && e_j == 0.0) return 1.0;
  if (e_0 == 0.0) throw NumericError("rescaled error vanished; ratio undefined");
  return e_j / e_0;
}

}  // namespace qp
