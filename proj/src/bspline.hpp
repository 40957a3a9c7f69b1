#pragma once

#include "jet.hpp"

namespace qp {

// Centered cardinal B-spline of order n (degree n-1), support [-n/2, n/2].
// Order 1 is the unit box on [-1/2, 1/2).
double bspline_eval(int order, double x);

// Derivative array of sinc(x) = sin(pi x)/(pi x) up to order k at x.
// Power-series branch near zero, Leibniz sin(pi x) * 1/(pi x) elsewhere.
Jet1 sinc_jet(double x, int k);

// Derivative array of sinc(x)^n (the transform of the order-n centered
// B-spline) up to order k.
Jet1 sinc_pow_jet(double x, int n, int k);

// Derivative array of exp(-2 pi i t x) in x up to order k.
Jet1 phase_jet(double t, double x, int k);

}  // namespace qp
