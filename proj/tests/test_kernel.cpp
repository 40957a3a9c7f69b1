#include <cmath>
#include <complex>
#include <random>
#include <functional>
#include <vector>

#include "bspline.hpp"
#include "doctest.h"
#include "errors.hpp"
#include "kernel.hpp"

using namespace qp;

namespace {

// Independent transform oracle: composite Simpson over the support box,
// integrand written out by hand.
cdouble simpson_ft_1d(const std::function<double(double)>& f, double a, double b,
                      double xi, int n = 4096) {
  const double h = (b - a) / n;
  cdouble acc = 0.0;
  for (int i = 0; i <= n; ++i) {
    const double x = a + i * h;
    double w = (i == 0 || i == n) ? 1.0 : (i % 2 ? 4.0 : 2.0);
    acc += w * f(x) * std::exp(cdouble(0.0, -2.0 * M_PI * x * xi));
  }
  return acc * (h / 3.0);
}

cdouble simpson_ft_2d(const std::function<double(double, double)>& f, double half,
                      double xi0, double xi1, int n = 256) {
  const double h = 2.0 * half / n;
  cdouble acc = 0.0;
  for (int i = 0; i <= n; ++i) {
    const double wi = (i == 0 || i == n) ? 1.0 : (i % 2 ? 4.0 : 2.0);
    const double x = -half + i * h;
    for (int j = 0; j <= n; ++j) {
      const double wj = (j == 0 || j == n) ? 1.0 : (j % 2 ? 4.0 : 2.0);
      const double y = -half + j * h;
      acc += wi * wj * f(x, y) *
             std::exp(cdouble(0.0, -2.0 * M_PI * (x * xi0 + y * xi1)));
    }
  }
  return acc * (h / 3.0) * (h / 3.0);
}

double sinc(double u) {
  if (u == 0.0) return 1.0;
  return std::sin(M_PI * u) / (M_PI * u);
}

}  // namespace

TEST_CASE("bspline tensor kernel evaluates as a product of 1-D splines") {
  Kernel k = Kernel::bspline_tensor({2, 4});
  CHECK(k.dim() == 2);
  CHECK(k.variant() == Kernel::Variant::BsplineTensor);
  for (double x = -1.2; x <= 1.2; x += 0.3)
    for (double y = -2.2; y <= 2.2; y += 0.4)
      CHECK(k.eval({x, y}) == doctest::Approx(bspline_eval(2, x) * bspline_eval(4, y))
                                  .epsilon(1e-13));
  CHECK(k.support_half(0) == doctest::Approx(1.0));
  CHECK(k.support_half(1) == doctest::Approx(2.0));
  CHECK(k.support_radius() == doctest::Approx(2.0));
}

TEST_CASE("shifted combination evaluates and transforms with matching conventions") {
  // Single translate: phi(x) = B2(x - 1), the hat centered at 1.
  Kernel k = Kernel::bspline_tensor({2}, {{{1}, 1.0}});
  CHECK(k.eval({1.0}) == doctest::Approx(1.0));
  CHECK(k.eval({0.5}) == doctest::Approx(0.5));
  CHECK(k.eval({0.0}) == doctest::Approx(0.0));
  CHECK(k.support_half(0) == doctest::Approx(2.0));  // widened by the shift

  // The spatial form and the closed transform must agree as a pair; Simpson
  // over the support pins both the shift sign and the phase sign at once.
  // n = 4000 puts the hat's kinks (0, 1, 2) on panel boundaries.
  for (double xi : {-0.7, 0.3, 1.4}) {
    cdouble brute = simpson_ft_1d([&](double x) { return k.eval({x}); }, -2.5, 2.5, xi, 4000);
    cdouble closed = k.eval_fourier({xi});
    CHECK(std::abs(brute - closed) < 1e-9);
    // e^{-2 pi i xi} * sinc^2 for the translate convention used here.
    cdouble expect = std::exp(cdouble(0.0, -2.0 * M_PI * xi)) * sinc(xi) * sinc(xi);
    CHECK(std::abs(closed - expect) < 1e-12);
  }
}

TEST_CASE("tensor bspline transform matches quadrature in 2-D") {
  Kernel k = Kernel::bspline_tensor({2, 3});
  for (auto xi : {std::array<double, 2>{0.0, 0.0}, {0.4, -0.3}, {1.1, 0.7}}) {
    cdouble brute = simpson_ft_2d([&](double x, double y) { return k.eval({x, y}); },
                                  1.6, xi[0], xi[1]);
    CHECK(std::abs(brute - k.eval_fourier({xi[0], xi[1]})) < 1e-6);
  }
}

TEST_CASE("bspline transforms take closed sinc-power values") {
  Kernel hat = Kernel::bspline_tensor({2});
  Kernel cubic = Kernel::bspline_tensor({4});
  for (double xi : {0.0, 0.25, 0.5, 1.5, 2.0}) {
    CHECK(std::abs(hat.eval_fourier({xi}) - cdouble(std::pow(sinc(xi), 2))) < 1e-13);
    CHECK(std::abs(cubic.eval_fourier({xi}) - cdouble(std::pow(sinc(xi), 4))) < 1e-13);
  }
  // Integer frequencies: the transform vanishes to high order.
  CHECK(std::abs(cubic.eval_fourier({1.0})) < 1e-15);
}

TEST_CASE("fourier_jet derivatives agree with central differences") {
  Kernel k = Kernel::bspline_tensor({3}, {{{0}, 1.0}, {{1}, -0.25}});
  auto ft = [&](double xi) { return k.eval_fourier({xi}); };
  const double h = 1e-3;
  for (double xi : {0.0, 0.35, -0.8}) {
    Jet jet = k.fourier_jet({xi}, 2);
    cdouble d1_h = (ft(xi + h) - ft(xi - h)) / (2.0 * h);
    cdouble d1_h2 = (ft(xi + h / 2) - ft(xi - h / 2)) / h;
    cdouble d1 = (4.0 * d1_h2 - d1_h) / 3.0;  // one Richardson step
    cdouble d2_h = (ft(xi + h) - 2.0 * ft(xi) + ft(xi - h)) / (h * h);
    cdouble d2_h2 = (ft(xi + h / 2) - 2.0 * ft(xi) + ft(xi - h / 2)) / (h * h / 4);
    cdouble d2 = (4.0 * d2_h2 - d2_h) / 3.0;
    CHECK(std::abs(jet.at(MultiIndex{0}) - ft(xi)) < 1e-14);
    CHECK(std::abs(jet.at(MultiIndex{1}) - d1) < 1e-8);
    CHECK(std::abs(jet.at(MultiIndex{2}) - d2) < 1e-6);
  }
}

TEST_CASE("windowed sinc kernel: spatial form, transform, and derivative refusal") {
  Kernel k = Kernel::windowed_sinc({0.5}, 0.1, 40.0);
  CHECK(k.dim() == 1);
  CHECK(k.support_half(0) == doctest::Approx(40.0));
  // 2b sinc(2b x) with b = 1/2 is sinc(x); the taper is 1 on the flat core.
  CHECK(k.eval({0.0}) == doctest::Approx(1.0));
  CHECK(k.eval({0.5}) == doctest::Approx(sinc(0.5)));
  CHECK(k.eval({3.0}) == doctest::Approx(0.0).epsilon(1e-12));  // integer zero
  CHECK(k.eval({41.0}) == 0.0);                                 // past the radius
  // Taper region: strictly between 0 and the untapered value.
  double tapered = std::abs(k.eval({39.5}));
  CHECK(tapered < std::abs(sinc(39.5)));
  CHECK(tapered > 0.0);

  // Transform approximates the band indicator away from the edge.
  CHECK(std::abs(k.eval_fourier({0.0}) - cdouble(1.0)) < 5e-3);
  CHECK(std::abs(k.eval_fourier({0.25}) - cdouble(1.0)) < 5e-3);
  CHECK(std::abs(k.eval_fourier({0.9})) < 5e-3);

  CHECK(k.fourier_jet({0.0}, 0).at(MultiIndex{0}) == k.eval_fourier({0.0}));
  CHECK_THROWS_AS(k.fourier_jet({0.1}, 1), UnsupportedError);
  CHECK_THROWS_AS(k.eval_fourier_deriv(MultiIndex{1}, {0.1}), UnsupportedError);
}

TEST_CASE("custom kernel wires evaluators through and guards missing data") {
  auto spatial = [](const std::vector<double>& x) {
    return std::exp(-M_PI * x[0] * x[0]);
  };
  Kernel bare = Kernel::custom(1, spatial, {6.0});
  CHECK(bare.eval({0.5}) == doctest::Approx(std::exp(-M_PI * 0.25)));
  CHECK_THROWS_AS(bare.eval_fourier({0.3}), UnsupportedError);
  CHECK_THROWS_AS(bare.fourier_jet({0.3}, 0), UnsupportedError);

  Kernel full = Kernel::custom(
      1, spatial, {6.0},
      [](const std::vector<double>& xi) {
        return cdouble(std::exp(-M_PI * xi[0] * xi[0]));
      });
  CHECK(std::abs(full.eval_fourier({0.3}) - cdouble(std::exp(-M_PI * 0.09))) < 1e-15);
  CHECK_THROWS_AS(full.fourier_jet({0.3}, 1), UnsupportedError);
}

TEST_CASE("lp_class_norm: the box kernel periodizes to 1 for every p") {
  Kernel box = Kernel::bspline_tensor({1});
  for (double p : {1.0, 2.0, std::numeric_limits<double>::infinity()})
    CHECK(box.lp_class_norm(p, 64) == doctest::Approx(1.0).epsilon(1e-10));
  // The hat also periodizes to 1 (partition of unity), so every L_p norm of
  // the periodization over one cell is 1 as well.
  Kernel hat = Kernel::bspline_tensor({2});
  CHECK(hat.lp_class_norm(2.0, 128) == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("kernel constructor guards") {
  CHECK_THROWS_AS(Kernel::bspline_tensor({}), ConfigError);
  CHECK_THROWS_AS(Kernel::bspline_tensor({0}), ConfigError);
  CHECK_THROWS_AS(Kernel::bspline_tensor({2}, {{{1, 2}, 1.0}}), ConfigError);
  CHECK_THROWS_AS(Kernel::windowed_sinc({0.5}, 0.0, 10.0), ConfigError);
  CHECK_THROWS_AS(Kernel::windowed_sinc({0.5}, 0.1, -1.0), ConfigError);
  CHECK_THROWS_AS(Kernel::windowed_sinc({}, 0.1, 10.0), ConfigError);
  Kernel hat = Kernel::bspline_tensor({2});
  CHECK_THROWS_AS(hat.eval({0.0, 0.0}), ConfigError);  // dimension mismatch
  Kernel ws = Kernel::windowed_sinc({0.5}, 0.1, 10.0);
  CHECK_THROWS_AS(ws.orders(), UnsupportedError);
  CHECK_THROWS_AS(ws.terms(), UnsupportedError);
}

TEST_CASE("integer shifts of a tensor bspline sum to one at random points") {
  Kernel k = Kernel::bspline_tensor({2, 3});
  std::mt19937 rng(71u);
  std::uniform_real_distribution<double> cell(0.0, 1.0);
  for (int trial = 0; trial < 100; ++trial) {
    double x0 = cell(rng), x1 = cell(rng);
    double sum = 0.0;
    for (int a = -4; a <= 4; ++a)
      for (int b = -4; b <= 4; ++b) sum += k.eval({x0 + a, x1 + b});
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-10));
  }
}

TEST_CASE("bsplines are even and their transforms are real") {
  std::mt19937 rng(72u);
  std::uniform_real_distribution<double> pick(-3.0, 3.0);
  for (int order : {2, 4}) {
    Kernel k = Kernel::bspline_tensor({order});
    for (int trial = 0; trial < 40; ++trial) {
      double x = pick(rng);
      CHECK(k.eval({x}) == doctest::Approx(k.eval({-x})).epsilon(1e-12));
      CHECK(std::abs(k.eval_fourier({x}).imag()) < 1e-12);
    }
  }
}

TEST_CASE("transform matches simpson quadrature at random frequencies") {
  Kernel k = Kernel::bspline_tensor({4});
  double h = k.support_half(0);
  std::mt19937 rng(73u);
  std::uniform_real_distribution<double> freq(-2.0, 2.0);
  for (int trial = 0; trial < 25; ++trial) {
    double xi = freq(rng);
    cdouble brute =
        simpson_ft_1d([&](double x) { return k.eval({x}); }, -h, h, xi, 4096);
    CHECK(std::abs(brute - k.eval_fourier({xi})) < 1e-6);
  }
}
