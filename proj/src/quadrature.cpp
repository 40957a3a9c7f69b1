#include "quadrature.hpp"

#include <cmath>
#include <sstream>

#include "errors.hpp"

namespace qp {

namespace {

// 7-point Gauss-Legendre nodes/weights on [-1, 1].
constexpr double kNodes[7] = {
    -0.9491079123427585, -0.7415311855993945, -0.4058451513773972,
    0.0,
    0.4058451513773972, 0.7415311855993945, 0.9491079123427585};
constexpr double kWeights[7] = {
    0.1294849661688697, 0.2797053914892766, 0.3818300505051189,
    0.4179591836734694,
    0.3818300505051189, 0.2797053914892766, 0.1294849661688697};

template <typename T, typename F>
T panels_impl(const F& f, double a, double b, int panels) {
  T total{};
  double h = (b - a) / panels;
  for (int p = 0; p < panels; ++p) {
    double lo = a + p * h;
    double mid = lo + 0.5 * h;
    T acc{};
    for (int i = 0; i < 7; ++i) acc += T(kWeights[i] * 0.5 * h) * f(mid + 0.5 * h * kNodes[i]);
    total += acc;
  }
  return total;
}

}  // namespace

double integrate_panels(const std::function<double(double)>& f, double a, double b,
                        int panels) {
  return panels_impl<double>(f, a, b, panels);
}

cdouble integrate_panels_c(const std::function<cdouble(double)>& f, double a, double b,
                           int panels) {
  return panels_impl<cdouble>(f, a, b, panels);
}

double integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                          double rel_tol, int max_levels, double abs_floor) {
  double prev = integrate_panels(f, a, b, 1);
  for (int level = 1; level <= max_levels; ++level) {
    double cur = integrate_panels(f, a, b, 1 << level);
    double change = std::abs(cur - prev);
    if (change <= rel_tol * std::abs(cur) + abs_floor) return cur;
    prev = cur;
  }
  std::ostringstream msg;
  msg << "quadrature did not converge with " << (1 << max_levels) << " panels";
  throw NumericError(msg.str());
}

namespace {

double tensor_panels(const std::function<double(const std::vector<double>&)>& f,
                     const std::vector<std::array<double, 2>>& box, int panels) {
  int d = int(box.size());
  std::vector<double> h(d);
  for (int i = 0; i < d; ++i) h[i] = (box[i][1] - box[i][0]) / panels;

  std::vector<int> panel_idx(d, 0), node_idx(d, 0);
  std::vector<double> x(d);
  double total = 0.0;
  while (true) {
    // accumulate one tensor node
    double w = 1.0;
    for (int i = 0; i < d; ++i) {
      double lo = box[i][0] + panel_idx[i] * h[i];
      x[i] = lo + 0.5 * h[i] * (1.0 + kNodes[node_idx[i]]);
      w *= kWeights[node_idx[i]] * 0.5 * h[i];
    }
    total += w * f(x);

    int axis = d - 1;
    while (axis >= 0) {
      if (++node_idx[axis] < 7) break;
      node_idx[axis] = 0;
      if (++panel_idx[axis] < panels) break;
      panel_idx[axis] = 0;
      --axis;
    }
    if (axis < 0) break;
  }
  return total;
}

}  // namespace

double integrate_adaptive_nd(const std::function<double(const std::vector<double>&)>& f,
                             const std::vector<std::array<double, 2>>& box,
                             double rel_tol, int max_levels, double abs_floor) {
  double prev = tensor_panels(f, box, 1);
  for (int level = 1; level <= max_levels; ++level) {
    double cur = tensor_panels(f, box, 1 << level);
    double change = std::abs(cur - prev);
    if (change <= rel_tol * std::abs(cur) + abs_floor) return cur;
    prev = cur;
  }
  std::ostringstream msg;
  msg << "quadrature did not converge with " << (1 << max_levels) << "^d panels";
  throw NumericError(msg.str());
}

}  // namespace qp
