#include "jet.hpp"

#include <cmath>
#include <stdexcept>

namespace qp {

Jet1 leibniz(const Jet1& a, const Jet1& b) {
  size_t n = std::min(a.size(), b.size());
  Jet1 c(n, 0.0);
  for (size_t k = 0; k < n; ++k) {
    cdouble s = 0.0;
    for (size_t i = 0; i <= k; ++i) s += binomial(int(k), int(i)) * a[i] * b[k - i];
    c[k] = s;
  }
  return c;
}

Jet::Jet(int dim, int order) : dim_(dim), order_(order) {
  indices_ = multi_indices_up_to(dim, order);
  values_.assign(indices_.size(), 0.0);
  int span = 1;
  for (int i = 0; i < dim; ++i) span *= (order + 1);
  lookup_.assign(span, -1);
  for (size_t p = 0; p < indices_.size(); ++p) lookup_[encode(indices_[p])] = int(p);
}

int Jet::encode(const MultiIndex& b) const {
  int code = 0;
  for (int i = 0; i < dim_; ++i) code = code * (order_ + 1) + b[i];
  return code;
}

cdouble& Jet::at(const MultiIndex& b) {
  int pos = lookup_[encode(b)];
  if (pos < 0) throw std::out_of_range("jet index above order");
  return values_[pos];
}

const cdouble& Jet::at(const MultiIndex& b) const {
  int pos = lookup_[encode(b)];
  if (pos < 0) throw std::out_of_range("jet index above order");
  return values_[pos];
}

Jet Jet::constant(int dim, int order, cdouble value) {
  Jet j(dim, order);
  j.values_[0] = value;
  return j;
}

Jet Jet::from_axes(const std::vector<Jet1>& axes, int order) {
  Jet j(int(axes.size()), order);
  for (size_t p = 0; p < j.indices_.size(); ++p) {
    cdouble v = 1.0;
    const MultiIndex& b = j.indices_[p];
    for (size_t i = 0; i < axes.size(); ++i) v *= axes[i][b[i]];
    j.values_[p] = v;
  }
  return j;
}

Jet Jet::operator+(const Jet& o) const {
  Jet r = *this;
  for (size_t p = 0; p < values_.size(); ++p) r.values_[p] += o.values_[p];
  return r;
}

Jet Jet::operator-(const Jet& o) const {
  Jet r = *this;
  for (size_t p = 0; p < values_.size(); ++p) r.values_[p] -= o.values_[p];
  return r;
}

Jet Jet::operator*(const Jet& o) const {
  Jet r(dim_, order_);
  for (size_t p = 0; p < indices_.size(); ++p) {
    const MultiIndex& g = indices_[p];
    cdouble s = 0.0;
    // componentwise alpha <= g
    MultiIndex a(dim_, 0);
    while (true) {
      MultiIndex rest(dim_);
      for (int i = 0; i < dim_; ++i) rest[i] = g[i] - a[i];
      s += multi_binomial(g, a) * values_[lookup_[encode(a)]] *
           o.values_[o.lookup_[o.encode(rest)]];
      int axis = dim_ - 1;
      while (axis >= 0) {
        if (a[axis] < g[axis]) {
          ++a[axis];
          break;
        }
        a[axis] = 0;
        --axis;
      }
      if (axis < 0) break;
    }
    r.values_[p] = s;
  }
  return r;
}

Jet Jet::scaled(cdouble c) const {
  Jet r = *this;
  for (auto& v : r.values_) v *= c;
  return r;
}

Jet Jet::conjugated() const {
  Jet r = *this;
  for (auto& v : r.values_) v = std::conj(v);
  return r;
}

}  // namespace qp
