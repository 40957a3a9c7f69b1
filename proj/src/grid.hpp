#pragma once

#include <Eigen/Dense>
#include <array>
#include <functional>
#include <vector>

#include "jet.hpp"

namespace qp {

using Box = std::vector<std::array<double, 2>>;

// Axis-aligned tensor grid with endpoint-inclusive sampling:
// x_n = lo + n * step, step * (shape - 1) spans the box exactly.
struct GridFunction {
  Box box;
  std::vector<int> shape;
  std::vector<cdouble> values;  // row-major

  int dim() const { return int(shape.size()); }
  size_t size() const { return values.size(); }
  double step(int axis) const {
    return (box[axis][1] - box[axis][0]) / double(shape[axis] - 1);
  }
  double coord(int axis, int idx) const { return box[axis][0] + idx * step(axis); }
  std::vector<double> point(size_t flat) const;
};

// Total point budget; grids above this are refused.
constexpr size_t kMaxGridPoints = size_t(1) << 26;

GridFunction make_grid(const Box& box, const std::vector<int>& shape);

GridFunction sample(const std::function<double(const std::vector<double>&)>& f,
                    const Box& box, const std::vector<int>& shape);

// Trapezoid L_p norm over the box (max norm for p = inf).
double lp_norm(const GridFunction& g, double p);

// Same, with a per-axis collar stripped from both ends of every axis.
double lp_norm_collar(const GridFunction& g, double p, const std::vector<double>& collar);

// Multiply the DFT of g by multiplier(xi) and transform back. Requires a
// centered box and power-of-two shape. xi runs over the grid's discrete
// frequencies k / (N * step), k in [-N/2, N/2).
GridFunction fourier_filter(const GridFunction& g,
                            const std::function<cdouble(const std::vector<double>&)>& multiplier);

// Sharp cutoff to the frequency cell A * [-1/2, 1/2]^d (closed).
GridFunction fourier_truncate(const GridFunction& g, const Eigen::MatrixXd& a);

// Phased spectrum: values approximate the continuous transform of g at the
// grid frequencies (trapezoid-rule accuracy), centered ordering per axis.
struct Spectrum {
  std::vector<std::vector<double>> freqs;  // per-axis frequency values
  std::vector<cdouble> values;             // row-major over freq indices
  std::vector<int> shape;
};
Spectrum dft_spectrum(const GridFunction& g);

}  // namespace qp
