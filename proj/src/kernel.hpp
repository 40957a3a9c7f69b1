#pragma once

#include <functional>
#include <string>
#include <vector>

#include "jet.hpp"

namespace qp {

// One term of a shifted combination: coeff * B(. - shift).
struct ShiftTerm {
  std::vector<int> shift;
  double coeff = 1.0;
};

// Synthesis function phi. Three variants:
//  - BsplineTensor: combination of shifted tensor products of centered
//    cardinal B-splines; closed-form transform with exact derivative arrays.
//  - WindowedSinc: per-axis low-pass kernel 2b*sinc(2b x), truncated at a
//    radius with a raised-cosine taper over the outer rolloff fraction.
//    Transform values come from quadrature; no derivative data.
//  - Custom: caller-supplied evaluators.
class Kernel {
 public:
  enum class Variant { BsplineTensor, WindowedSinc, Custom };

  static Kernel bspline_tensor(const std::vector<int>& orders,
                               const std::vector<ShiftTerm>& terms = {});
  static Kernel windowed_sinc(const std::vector<double>& band, double rolloff,
                              double radius);
  static Kernel custom(int dim,
                       std::function<double(const std::vector<double>&)> spatial,
                       std::vector<double> support_half,
                       std::function<cdouble(const std::vector<double>&)> fourier = nullptr,
                       std::function<Jet(const std::vector<double>&, int)> fjet = nullptr,
                       int fourier_smoothness_order = 0);

  Variant variant() const { return variant_; }
  int dim() const { return dim_; }
  // Half-width of the support box, per axis; the kernel is 0 (B-splines,
  // windowed sinc) or negligible (custom, by contract) outside it.
  double support_half(int axis) const { return support_half_[axis]; }
  double support_radius() const;  // max over axes; +inf possible for custom
  int fourier_smoothness_order() const { return fourier_order_; }
  std::string describe() const;

  double eval(const std::vector<double>& x) const;
  cdouble eval_fourier(const std::vector<double>& xi) const;

  // Value and all transform derivatives up to total order `order` at xi.
  Jet fourier_jet(const std::vector<double>& xi, int order) const;
  cdouble eval_fourier_deriv(const MultiIndex& beta, const std::vector<double>& xi) const;

  // Shift-stability norm: periodize |phi| over the integer lattice and take
  // the L_p norm over one cell, sampled at box_resolution points per axis.
  double lp_class_norm(double p, int box_resolution) const;

  // B-spline structure (throws for other variants).
  const std::vector<int>& orders() const;
  const std::vector<ShiftTerm>& terms() const;

 private:
  Kernel() = default;

  Variant variant_ = Variant::Custom;
  int dim_ = 0;
  std::vector<double> support_half_;
  int fourier_order_ = 0;

  // BsplineTensor
  std::vector<int> orders_;
  std::vector<ShiftTerm> terms_;
  bool plain_tensor_ = false;  // single term, zero shift, coeff 1

  // WindowedSinc
  std::vector<double> band_;
  double rolloff_ = 0.0;
  double radius_ = 0.0;
  double sinc_window(double u) const;

  // Custom
  std::function<double(const std::vector<double>&)> spatial_;
  std::function<cdouble(const std::vector<double>&)> fourier_;
  std::function<Jet(const std::vector<double>&, int)> fjet_;
};

}  // namespace qp
