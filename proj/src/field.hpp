#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "dilation.hpp"
#include "grid.hpp"
#include "test_function.hpp"

namespace qp {

// Surrogate best approximation ||f - S_A f||_p with S_A band-limiting to
// A T^d: sharp Fourier cutoff for 1 < p < inf, per-axis raised-cosine rolloff
// reaching zero at 2 A T^d for p in {1, inf}. Closed-form transforms of
// separable f with diagonal A short-circuit the grid entirely at p = 2.
double best_approx_grid(const GridFunction& g, const Eigen::MatrixXd& a, double p);
double best_approx(const TestFunction& f, const Eigen::MatrixXd& a, double p,
                   const Box& box, const std::vector<int>& shape);

// s-th forward difference with step t: sum_nu (-1)^nu C(s,nu) f(x + nu t).
double difference(const TestFunction& f, const std::vector<double>& t, int s,
                  const std::vector<double>& x);

struct ModulusOptions {
  int directions = 32;
  std::uint64_t seed = 2026;
  Box box;                 // empty: f's decay box
  std::vector<int> shape;  // empty: dimension-based default
};

// Omega_s(f, A^{-1})_p: max of ||Delta_t^s f||_p over sampled admissible
// steps t = A^{-1}(r u), r in {0.25, 0.5, 0.75, 0.999}, u on the unit sphere.
double modulus(const TestFunction& f, const Eigen::MatrixXd& a, int s, double p,
               const ModulusOptions& opts = {});

struct BesovTail {
  double value = 0.0;            // ||f||_p + weighted E-sum^(1/q)
  double last_term_ratio = 0.0;  // last summand over the full sum
  double fnorm = 0.0;
};

// Partial anisotropic Besov sum sum_{nu=1..nu_max} m^{(s/d) q nu} E_{M^nu}^q;
// the last-term ratio is the membership diagnostic.
BesovTail besov_tail(const TestFunction& f, const DilationMatrix& m, double s_exp,
                     double p, double q, int nu_max, const Box& box,
                     const std::vector<int>& shape);

}  // namespace qp
