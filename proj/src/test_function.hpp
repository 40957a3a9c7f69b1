#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "grid.hpp"
#include "jet.hpp"

namespace qp {

// One axis of a separable target function. `jet` returns the derivative
// array up to a requested order; `fourier` is the closed-form 1-D transform.
// Both are optional. |eval| < tail outside [-decay_half, decay_half], and
// |fourier| is negligible outside [-fourier_decay_half, fourier_decay_half].
struct Factor1D {
  std::string tag;
  std::function<double(double)> eval;
  std::function<Jet1(double, int)> jet;
  std::function<cdouble(double)> fourier;
  double decay_half = 0.0;
  double tail = 1e-12;
  double fourier_decay_half = 0.0;
  double sup_abs = 1.0;
  int deriv_order = 0;
};

Factor1D gaussian_factor();       // exp(-pi u^2)
Factor1D bump_factor();           // exp(1 - 1/(1-u^2)) on (-1,1)
Factor1D sine_gauss_factor();     // sin(2 pi u) exp(-pi u^2)
Factor1D sinc2_factor();          // sinc(u)^2, band-limited to [-1,1]
Factor1D rough_factor();          // |sin(2 pi u)|^(2/5) exp(-pi u^2)

// Target function f: closed-form values, optional derivatives and transform,
// and decay metadata used to truncate norms and pick grids.
class TestFunction {
 public:
  // Product of per-axis factors. Runs a transform self-check when closed-form
  // transforms are present.
  static TestFunction tensor(const std::string& name, std::vector<Factor1D> factors);
  // Non-separable catch-all: evaluator only.
  static TestFunction generic(const std::string& name, int dim,
                              std::function<double(const std::vector<double>&)> eval,
                              std::vector<double> decay_half, double tail,
                              const std::string& tag);
  // gaussian | bump | tensor_sine | bl_sinc2 | rough | aniso (aniso: d = 2).
  static TestFunction builtin(const std::string& name, int dim);

  int dim() const { return dim_; }
  const std::string& name() const { return name_; }
  const std::string& smoothness_tag() const { return tag_; }

  double eval(const std::vector<double>& x) const;
  bool has_deriv(int order) const;
  double deriv(const MultiIndex& beta, const std::vector<double>& x) const;
  bool has_fourier() const;
  cdouble fourier(const std::vector<double>& xi) const;

  bool separable() const { return !factors_.empty(); }
  const std::vector<Factor1D>& factors() const { return factors_; }

  Box decay_box() const;
  double decay_half(int axis) const { return decay_half_[axis]; }
  double tail_bound() const { return tail_; }
  double fourier_decay_half(int axis) const;

  // c * f(diag(b) x), b positive; derivative, transform, and decay data
  // follow along. Non-separable functions keep only the evaluator.
  TestFunction scaled(double c, const std::vector<double>& bdiag) const;

 private:
  TestFunction() = default;

  std::string name_, tag_;
  int dim_ = 0;
  std::vector<Factor1D> factors_;
  std::function<double(const std::vector<double>&)> eval_;
  std::vector<double> decay_half_;
  std::vector<double> fourier_decay_half_;
  double tail_ = 1e-12;
};

}  // namespace qp
