#pragma once

#include <array>
#include <functional>
#include <vector>

#include "jet.hpp"

namespace qp {

// Composite 7-point Gauss-Legendre over [a, b] with uniform panels.
double integrate_panels(const std::function<double(double)>& f, double a, double b,
                        int panels);
cdouble integrate_panels_c(const std::function<cdouble(double)>& f, double a, double b,
                           int panels);

// Panel-doubling adaptive version: refine until the relative change between
// successive levels drops below rel_tol (with a small absolute floor for
// integrals that vanish). Throws NumericError with the panel count if
// max_levels is exhausted.
double integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                          double rel_tol = 1e-9, int max_levels = 20,
                          double abs_floor = 1e-14);

// Tensor version over a box; panels double along every axis per level.
double integrate_adaptive_nd(const std::function<double(const std::vector<double>&)>& f,
                             const std::vector<std::array<double, 2>>& box,
                             double rel_tol = 1e-9, int max_levels = 12,
                             double abs_floor = 1e-14);

}  // namespace qp
