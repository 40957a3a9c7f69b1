#include "grid.hpp"

#include <cmath>
#include <limits>

#include "errors.hpp"
#include "fft.hpp"

namespace qp {

std::vector<double> GridFunction::point(size_t flat) const {
  std::vector<double> x(dim());
  for (int axis = dim() - 1; axis >= 0; --axis) {
    int n = shape[axis];
    x[axis] = coord(axis, int(flat % n));
    flat /= n;
  }
  return x;
}

GridFunction make_grid(const Box& box, const std::vector<int>& shape) {
  if (box.size() != shape.size() || box.empty())
    throw ConfigError("grid box and shape dimensions disagree");
  size_t total = 1;
  for (size_t i = 0; i < shape.size(); ++i) {
    if (shape[i] < 2) throw ConfigError("grid needs at least two points per axis");
    if (box[i][1] <= box[i][0]) throw ConfigError("grid box is empty");
    total *= size_t(shape[i]);
    if (total > kMaxGridPoints) throw NumericError("grid exceeds the point budget");
  }
  GridFunction g;
  g.box = box;
  g.shape = shape;
  g.values.assign(total, 0.0);
  return g;
}

GridFunction sample(const std::function<double(const std::vector<double>&)>& f,
                    const Box& box, const std::vector<int>& shape) {
  GridFunction g = make_grid(box, shape);
  const long long total = (long long)g.size();
  const int d = g.dim();
#pragma omp parallel
  {
    std::vector<double> x(d);
#pragma omp for schedule(static)
    for (long long i = 0; i < total; ++i) {
      size_t rest = size_t(i);
      for (int axis = d - 1; axis >= 0; --axis) {
        x[axis] = g.coord(axis, int(rest % size_t(g.shape[axis])));
        rest /= size_t(g.shape[axis]);
      }
      g.values[size_t(i)] = f(x);
    }
  }
  return g;
}

double lp_norm_collar(const GridFunction& g, double p, const std::vector<double>& collar) {
  const int d = g.dim();
  std::vector<int> lo(d), hi(d);
  for (int axis = 0; axis < d; ++axis) {
    double c = collar.empty() ? 0.0 : collar[axis];
    double st = g.step(axis);
    lo[axis] = std::max(0, int(std::ceil((c - 1e-12) / st)));
    hi[axis] = g.shape[axis] - 1 - lo[axis];
    if (hi[axis] - lo[axis] < 1) throw ConfigError("collar leaves no interior points");
  }

  const bool inf = std::isinf(p);
  if (!inf && !(p >= 1.0)) throw ConfigError("p must be >= 1 or inf");

  double cell = 1.0;
  for (int axis = 0; axis < d; ++axis) cell *= g.step(axis);

  double acc = 0.0, maxv = 0.0;
  std::vector<int> idx(lo);
  while (true) {
    size_t flat = 0;
    double w = 1.0;
    for (int axis = 0; axis < d; ++axis) {
      flat = flat * size_t(g.shape[axis]) + size_t(idx[axis]);
      if (idx[axis] == lo[axis] || idx[axis] == hi[axis]) w *= 0.5;
    }
    double v = std::abs(g.values[flat]);
    if (inf) {
      if (v > maxv) maxv = v;
    } else if (p == 2.0) {
      acc += w * v * v;
    } else if (p == 1.0) {
      acc += w * v;
    } else {
      acc += w * std::pow(v, p);
    }
    int axis = d - 1;
    while (axis >= 0) {
      if (++idx[axis] <= hi[axis]) break;
      idx[axis] = lo[axis];
      --axis;
    }
    if (axis < 0) break;
  }
  if (inf) return maxv;
  return std::pow(acc * cell, 1.0 / p);
}

double lp_norm(const GridFunction& g, double p) {
  return lp_norm_collar(g, p, std::vector<double>(g.dim(), 0.0));
}

namespace {

void require_centered_pow2(const GridFunction& g) {
  for (int axis = 0; axis < g.dim(); ++axis) {
    if (!is_power_of_two(g.shape[axis]))
      throw ConfigError("fourier ops need power-of-two shapes");
    double span = g.box[axis][1] - g.box[axis][0];
    if (std::abs(g.box[axis][0] + g.box[axis][1]) > 1e-9 * span)
      throw ConfigError("fourier ops need a centered box");
  }
}

std::vector<std::vector<double>> grid_frequencies(const GridFunction& g) {
  const int d = g.dim();
  std::vector<std::vector<double>> freq(d);
  for (int axis = 0; axis < d; ++axis) {
    int n = g.shape[axis];
    double period = double(n) * g.step(axis);
    freq[axis].resize(n);
    for (int k = 0; k < n; ++k) {
      int c = (k < n / 2) ? k : k - n;
      freq[axis][k] = double(c) / period;
    }
  }
  return freq;
}

}  // namespace

GridFunction fourier_filter(const GridFunction& g,
                            const std::function<cdouble(const std::vector<double>&)>& multiplier) {
  require_centered_pow2(g);
  GridFunction out = g;
  fft_nd(out.values, out.shape, false);

  const int d = g.dim();
  auto freq = grid_frequencies(g);
  std::vector<int> idx(d, 0);
  std::vector<double> xi(d);
  size_t flat = 0;
  while (true) {
    for (int axis = 0; axis < d; ++axis) xi[axis] = freq[axis][idx[axis]];
    out.values[flat] *= multiplier(xi);
    ++flat;
    int axis = d - 1;
    while (axis >= 0) {
      if (++idx[axis] < g.shape[axis]) break;
      idx[axis] = 0;
      --axis;
    }
    if (axis < 0) break;
  }

  fft_nd(out.values, out.shape, true);
  return out;
}

GridFunction fourier_truncate(const GridFunction& g, const Eigen::MatrixXd& a) {
  Eigen::MatrixXd ainv = a.inverse();
  const int d = g.dim();
  return fourier_filter(g, [&](const std::vector<double>& xi) {
    Eigen::VectorXd v(d);
    for (int i = 0; i < d; ++i) v(i) = xi[i];
    Eigen::VectorXd eta = ainv * v;
    for (int i = 0; i < d; ++i)
      if (std::abs(eta(i)) > 0.5 + 1e-12) return cdouble(0.0);
    return cdouble(1.0);
  });
}

Spectrum dft_spectrum(const GridFunction& g) {
  require_centered_pow2(g);
  const int d = g.dim();
  std::vector<cdouble> data = g.values;
  fft_nd(data, g.shape, false);

  Spectrum s;
  s.shape = g.shape;
  s.freqs = grid_frequencies(g);

  double cell = 1.0;
  for (int axis = 0; axis < d; ++axis) cell *= g.step(axis);
  s.values.resize(data.size());
  std::vector<int> idx(d, 0);
  size_t flat = 0;
  const double two_pi = 2.0 * 3.14159265358979323846;
  while (true) {
    double phase = 0.0;
    for (int axis = 0; axis < d; ++axis)
      phase += s.freqs[axis][idx[axis]] * g.box[axis][0];
    s.values[flat] = data[flat] * cell * std::exp(cdouble(0.0, -two_pi * phase));
    ++flat;
    int axis = d - 1;
    while (axis >= 0) {
      if (++idx[axis] < g.shape[axis]) break;
      idx[axis] = 0;
      --axis;
    }
    if (axis < 0) break;
  }
  return s;
}

}  // namespace qp
