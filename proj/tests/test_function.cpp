#include <cmath>
#include <complex>
#include <vector>

#include "doctest.h"
#include "errors.hpp"
#include "test_function.hpp"

using namespace qp;

TEST_CASE("gaussian builtin is the self-dual product exp(-pi |x|^2)") {
  TestFunction f = TestFunction::builtin("gaussian", 2);
  CHECK(f.dim() == 2);
  CHECK(f.separable());
  CHECK(f.has_fourier());
  for (auto x : {std::array<double, 2>{0, 0}, {0.5, -1.25}, {2, 1}}) {
    double r2 = x[0] * x[0] + x[1] * x[1];
    CHECK(f.eval({x[0], x[1]}) == doctest::Approx(std::exp(-M_PI * r2)).epsilon(1e-14));
    CHECK(std::abs(f.fourier({x[0], x[1]}) - cdouble(std::exp(-M_PI * r2))) < 1e-14);
  }
  // Closed-form partials: d/dx exp(-pi(x^2+y^2)) = -2 pi x exp(...).
  CHECK(f.has_deriv(2));
  double d = f.deriv(MultiIndex{1, 0}, {0.5, 0.25});
  CHECK(d == doctest::Approx(-2.0 * M_PI * 0.5 * std::exp(-M_PI * 0.3125)).epsilon(1e-12));
  double dxy = f.deriv(MultiIndex{1, 1}, {0.5, 0.25});
  CHECK(dxy == doctest::Approx(4.0 * M_PI * M_PI * 0.5 * 0.25 * std::exp(-M_PI * 0.3125))
                   .epsilon(1e-12));
}

TEST_CASE("bump builtin: compact support, no derivative data") {
  TestFunction f = TestFunction::builtin("bump", 1);
  CHECK(f.eval({0.0}) == doctest::Approx(1.0));
  CHECK(f.eval({0.999}) > 0.0);
  CHECK(f.eval({1.0}) == 0.0);
  CHECK(f.eval({1.5}) == 0.0);
  CHECK(!f.has_deriv(1));
  CHECK(!f.has_fourier());
  CHECK(f.decay_half(0) == doctest::Approx(1.0));
  CHECK(f.tail_bound() == 0.0);
  CHECK_THROWS_AS(f.deriv(MultiIndex{1}, {0.0}), UnsupportedError);
}

TEST_CASE("remaining builtins expose the advertised structure") {
  TestFunction sine = TestFunction::builtin("tensor_sine", 1);
  CHECK(sine.eval({0.25}) == doctest::Approx(std::exp(-M_PI * 0.0625)));
  CHECK(sine.eval({-0.25}) == doctest::Approx(-std::exp(-M_PI * 0.0625)));
  CHECK(sine.smoothness_tag().find("odd") != std::string::npos);

  TestFunction bl = TestFunction::builtin("bl_sinc2", 1);
  CHECK(bl.eval({0.0}) == doctest::Approx(1.0));
  CHECK(bl.eval({2.0}) == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(std::abs(bl.fourier({0.5}) - cdouble(0.5)) < 1e-14);  // triangle
  CHECK(std::abs(bl.fourier({1.2})) == 0.0);                  // outside the band
  CHECK(bl.fourier_decay_half(0) == doctest::Approx(1.0));

  TestFunction rough = TestFunction::builtin("rough", 1);
  CHECK(rough.eval({0.0}) == 0.0);  // |sin|^{2/5} vanishes at integers/2
  CHECK(rough.eval({0.25}) == doctest::Approx(std::exp(-M_PI * 0.0625)));
  CHECK(!rough.has_deriv(1));

  TestFunction aniso = TestFunction::builtin("aniso", 2);
  CHECK(aniso.dim() == 2);
  CHECK(aniso.separable());
  // gaussian along x, rough along y.
  CHECK(aniso.eval({0.5, 0.25}) ==
        doctest::Approx(std::exp(-M_PI * 0.25) * std::exp(-M_PI * 0.0625)));
  CHECK(aniso.eval({0.5, 0.5}) == doctest::Approx(0.0));

  CHECK_THROWS_AS(TestFunction::builtin("aniso", 3), ConfigError);
  CHECK_THROWS_AS(TestFunction::builtin("nope", 1), ConfigError);
}

TEST_CASE("scaled: c f(diag(b) x) carries values, derivatives, and transform") {
  TestFunction f = TestFunction::builtin("gaussian", 1);
  TestFunction g = f.scaled(2.0, {3.0});
  CHECK(g.eval({0.4}) == doctest::Approx(2.0 * std::exp(-M_PI * 1.44)).epsilon(1e-14));
  // Transform: (c/|b|) fhat(xi/b).
  CHECK(std::abs(g.fourier({0.9}) - cdouble((2.0 / 3.0) * std::exp(-M_PI * 0.09))) < 1e-14);
  // Chain rule: g'(x) = c b f'(b x).
  CHECK(g.deriv(MultiIndex{1}, {0.4}) ==
        doctest::Approx(2.0 * 3.0 * (-2.0 * M_PI * 1.2) * std::exp(-M_PI * 1.44))
            .epsilon(1e-12));
  // Decay box shrinks by the same factor.
  CHECK(g.decay_half(0) == doctest::Approx(f.decay_half(0) / 3.0));

  TestFunction id = f.scaled(1.0, {1.0});
  for (double x : {-1.3, 0.0, 0.7}) CHECK(id.eval({x}) == doctest::Approx(f.eval({x})));
}

TEST_CASE("generic functions carry an evaluator and decay data only") {
  TestFunction f = TestFunction::generic(
      "shifted", 1, [](const std::vector<double>& x) { return x[0] - 5.0; }, {8.0},
      1e-9, "test");
  CHECK(f.eval({7.0}) == doctest::Approx(2.0));
  CHECK(!f.separable());
  CHECK(!f.has_fourier());
  CHECK(!f.has_deriv(1));
  CHECK(f.tail_bound() == doctest::Approx(1e-9));
  Box b = f.decay_box();
  CHECK(b[0][0] == doctest::Approx(-8.0));
  CHECK(b[0][1] == doctest::Approx(8.0));
  CHECK(f.smoothness_tag() == "test");
}

TEST_CASE("tensor runs the transform self-check at construction") {
  // A deliberately wrong closed-form transform must be rejected.
  Factor1D bad = gaussian_factor();
  bad.fourier = [](double xi) { return cdouble(std::exp(-M_PI * xi * xi) * 1.05); };
  CHECK_THROWS_AS(TestFunction::tensor("bad", {bad}), NumericError);
  CHECK_NOTHROW(TestFunction::tensor("good", {gaussian_factor(), bump_factor()}));
}
