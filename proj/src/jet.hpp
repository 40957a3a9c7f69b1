#pragma once

#include <complex>
#include <vector>

#include "multiindex.hpp"

namespace qp {

using cdouble = std::complex<double>;

// 1-D derivative array [g(x), g'(x), ..., g^(K)(x)].
using Jet1 = std::vector<cdouble>;

// Leibniz product of two 1-D derivative arrays.
Jet1 leibniz(const Jet1& a, const Jet1& b);

// Derivative array of a function of d real variables at a point: value and all
// partial derivatives D^beta up to total order K. Used for Fourier symbols,
// where low-order Taylor data at lattice points decides vanishing conditions
// and finite differences are too noisy past order two.
class Jet {
 public:
  Jet(int dim, int order);

  int dim() const { return dim_; }
  int order() const { return order_; }

  cdouble& at(const MultiIndex& b);
  const cdouble& at(const MultiIndex& b) const;

  const std::vector<MultiIndex>& indices() const { return indices_; }

  static Jet constant(int dim, int order, cdouble value);
  // Tensor composition: D^beta = prod_i axis[i][beta_i]. Each axis array must
  // have length >= order+1.
  static Jet from_axes(const std::vector<Jet1>& axes, int order);

  Jet operator+(const Jet& o) const;
  Jet operator-(const Jet& o) const;
  Jet operator*(const Jet& o) const;  // Leibniz over multi-indices
  Jet scaled(cdouble c) const;
  Jet conjugated() const;

 private:
  int dim_;
  int order_;
  std::vector<MultiIndex> indices_;
  std::vector<cdouble> values_;
  std::vector<int> lookup_;  // dense (order+1)^dim -> position, -1 if absent
  int encode(const MultiIndex& b) const;
};

}  // namespace qp
