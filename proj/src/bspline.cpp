#include "bspline.hpp"

#include <cmath>

namespace qp {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

double bspline_eval(int order, double x) {
  if (order == 1) return (x >= -0.5 && x < 0.5) ? 1.0 : 0.0;
  double half = 0.5 * order;
  if (x <= -half || x >= half) return 0.0;
  return ((x + half) * bspline_eval(order - 1, x + 0.5) +
          (half - x) * bspline_eval(order - 1, x - 0.5)) /
         (order - 1);
}

Jet1 sinc_jet(double x, int k) {
  Jet1 out(k + 1, 0.0);
  if (std::abs(x) < 0.75) {
    // sinc(x) = sum_m (-1)^m pi^{2m} x^{2m} / (2m+1)!
    double c = 1.0;  // (-1)^m pi^{2m} / (2m+1)!
    for (int m = 0; m <= 40; ++m) {
      if (m > 0) c *= -kPi * kPi / double(2 * m * (2 * m + 1));
      for (int d = 0; d <= k; ++d) {
        if (2 * m < d) continue;
        double fall = 1.0;
        for (int i = 0; i < d; ++i) fall *= double(2 * m - i);
        out[d] += c * fall * std::pow(x, 2 * m - d);
      }
      if (std::abs(c) < 1e-22) break;
    }
    return out;
  }
  Jet1 u(k + 1), v(k + 1);
  for (int i = 0; i <= k; ++i) u[i] = std::pow(kPi, i) * std::sin(kPi * x + 0.5 * kPi * i);
  double fact = 1.0;
  for (int l = 0; l <= k; ++l) {
    if (l > 0) fact *= l;
    v[l] = ((l % 2 == 0) ? 1.0 : -1.0) * fact / (kPi * std::pow(x, l + 1));
  }
  return leibniz(u, v);
}

Jet1 sinc_pow_jet(double x, int n, int k) {
  Jet1 base = sinc_jet(x, k);
  Jet1 acc = base;
  for (int i = 1; i < n; ++i) acc = leibniz(acc, base);
  return acc;
}

Jet1 phase_jet(double t, double x, int k) {
  Jet1 out(k + 1);
  cdouble w(0.0, -2.0 * kPi * t);
  cdouble val = std::exp(w * x);
  cdouble factor = 1.0;
  for (int i = 0; i <= k; ++i) {
    out[i] = factor * val;
    factor *= w;
  }
  return out;
}

}  // namespace qp
