#pragma once

#include <limits>
#include <memory>
#include <vector>

#include "analyzer.hpp"
#include "dilation.hpp"
#include "grid.hpp"
#include "kernel.hpp"
#include "test_function.hpp"

namespace qp {

// One configured operator Q_j: synthesis kernel, analysis distribution,
// dilation, level. Coefficients use the power-free normalization
// Q_j f(x) = sum_k coeff(k) phi(M^j x + k).
struct OperatorSpec {
  std::shared_ptr<const Kernel> kernel;
  std::shared_ptr<const Analyzer> analyzer;
  std::shared_ptr<const DilationMatrix> dilation;
  int level = 0;
  double lattice_truncation = std::numeric_limits<double>::infinity();
};

// Coefficients over the active index box: every k whose translate of the
// kernel support meets the evaluation box (clamped to lattice_truncation).
struct CoefficientTable {
  std::vector<int> lo, hi;  // inclusive per-axis index bounds
  std::vector<cdouble> values;

  size_t flatten(const std::vector<int>& k) const;
  cdouble at(const std::vector<int>& k) const;
};

CoefficientTable coefficient_table(const OperatorSpec& spec, const TestFunction& f,
                                   const Box& box);

GridFunction apply(const OperatorSpec& spec, const TestFunction& f, const Box& box,
                   const std::vector<int>& shape);

struct OpError {
  double value = 0.0;
  std::vector<double> collar;  // per-axis strip excluded from the norm
  double uncertainty = 0.0;    // truncated-kernel tail estimate (sinc kernels)
};

// ||f - Q_j f||_p on the box minus a boundary collar sized to the kernel
// reach, so synthesis truncation at the box edge does not pollute the norm.
OpError op_error(const OperatorSpec& spec, const TestFunction& f, double p,
                 const Box& box, const std::vector<int>& shape);

// Ratio ||f - Q_j f||_p / ||g - Q_0 g||_p for g = m^{-j/p} f(M^{-j}.), the
// change of variables reducing level j to level 0. Contract: 1 within 1e-6.
// Diagonal dilations only: the level-0 grid is the exact image of the level-j
// grid, which a non-diagonal M cannot provide on axis-aligned boxes.
double rescale_check(const OperatorSpec& spec, const TestFunction& f, double p,
                     const Box& box, const std::vector<int>& shape);

}  // namespace qp
