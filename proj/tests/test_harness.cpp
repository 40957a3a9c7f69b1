#include <cmath>
#include <memory>
#include <vector>

#include "config.hpp"
#include "doctest.h"
#include "errors.hpp"
#include "harness.hpp"

using namespace qp;

namespace {

Experiment small_exp() {
  Experiment e;
  e.kernel = std::make_shared<Kernel>(Kernel::bspline_tensor({2}));
  e.analyzer = std::make_shared<Analyzer>(Analyzer::delta(1));
  e.dilation = std::make_shared<DilationMatrix>(std::vector<std::vector<double>>{{2}});
  e.levels = {2, 3, 4, 5};
  e.box = {{-4.0, 4.0}};
  e.shape = {2048};
  e.modulus_box = {{-4.0, 4.0}};
  e.modulus_shape = {1025};
  return e;
}

}  // namespace

TEST_CASE("default grid shapes scale down with dimension") {
  CHECK(default_error_shape(1) == std::vector<int>{16384});
  CHECK(default_error_shape(2) == std::vector<int>{1024, 1024});
  CHECK(default_error_shape(3) == std::vector<int>{128, 128, 128});
  CHECK(default_modulus_shape(1) == std::vector<int>{4097});
  CHECK(default_modulus_shape(2) == std::vector<int>{513, 513});
}

TEST_CASE("rate reports are deterministic") {
  Experiment e = small_exp();
  RateReport r1 = run(e);
  RateReport r2 = run(e);
  CHECK(to_json(r1).dump() == to_json(r2).dump());
}

TEST_CASE("a smooth pair produces a coherent report") {
  Experiment e = small_exp();
  RateReport r = run(e);
  REQUIRE(r.rows.size() == 4);
  CHECK(r.has_certificate);
  CHECK(r.certificate.effective_order == 2);
  CHECK(r.order_s == 2);
  CHECK(r.p == 2.0);
  // Gaussian through the hat: errors fall by about 4 per level.
  for (size_t i = 1; i < r.rows.size(); ++i)
    CHECK(r.rows[i].error < r.rows[i - 1].error);
  CHECK(r.slope_error == doctest::Approx(2.0).epsilon(0.15));
  for (const auto& row : r.rows) {
    CHECK(row.modulus > 0.0);
    CHECK(row.bound >= row.modulus);
    CHECK(row.error <= 50.0 * row.bound);
    CHECK(row.ratio == doctest::Approx(row.error / row.bound));
  }
  // Point sampling of a C^inf target: the class rate min(s, N + d/p) is
  // far below the observed decay, so the comparison is one-sided.
  CHECK(r.predicted_order == doctest::Approx(0.5));
  CHECK(r.one_sided);
}

TEST_CASE("averaging pairs use the modulus alone as the bound") {
  Experiment e = small_exp();
  e.analyzer = std::make_shared<Analyzer>(
      Analyzer::function_kernel(Kernel::bspline_tensor({1})));
  RateReport r = run(e);
  REQUIRE(r.rows.size() == 4);
  for (const auto& row : r.rows) {
    CHECK(row.tail_term == 0.0);
    CHECK(row.bound == doctest::Approx(row.modulus));
  }
  CHECK(r.predicted_order == doctest::Approx(2.0));
  CHECK(r.ratio_spread < 20.0);
}

TEST_CASE("the zero function short-circuits to TRIVIAL") {
  Experiment e = small_exp();
  e.f = TestFunction::generic(
      "zero", 1, [](const std::vector<double>&) { return 0.0; }, {4.0}, 0.0, "zero");
  RateReport r = run(e);
  CHECK(r.verdict == "TRIVIAL");
}

TEST_CASE("band-limited reproduction yields EXACT under an explicit floor") {
  Experiment e = small_exp();
  e.kernel = std::make_shared<Kernel>(Kernel::windowed_sinc({0.5}, 0.1, 200.0));
  e.f = TestFunction::builtin("bl_sinc2", 1);
  e.box = {{-3.0, 3.0}};
  e.shape = {2048};
  e.exact_floor = 1e-6;
  RateReport r = run(e);
  // No derivative data for the windowed sinc: the certificate is replaced by
  // a note, and the sub-sample errors sit at the truncation floor.
  CHECK(!r.has_certificate);
  CHECK(!r.certificate_note.empty());
  CHECK(r.verdict == "EXACT");
  for (const auto& row : r.rows) CHECK(row.error <= 1e-6);
}

TEST_CASE("experiment validation") {
  Experiment e = small_exp();
  e.kernel = nullptr;
  CHECK_THROWS_AS(run(e), ConfigError);

  e = small_exp();
  e.levels = {2, 2, 3, 4};
  CHECK_THROWS_AS(run(e), ConfigError);

  e = small_exp();
  e.levels = {-1, 0, 1, 2};
  CHECK_THROWS_AS(run(e), ConfigError);

  e = small_exp();
  e.p = 0.5;
  CHECK_THROWS_AS(run(e), ConfigError);

  e = small_exp();
  e.delta = 0.7;
  CHECK_THROWS_AS(run(e), ConfigError);

  // Slope fits need four positive levels at j >= 2.
  e = small_exp();
  e.levels = {0, 1, 2, 3};
  CHECK_THROWS_AS(run(e), ConfigError);
}

TEST_CASE("axis-split tracking on a separable 2-D target") {
  Experiment e;
  e.kernel = std::make_shared<Kernel>(Kernel::bspline_tensor({2, 2}));
  e.analyzer = std::make_shared<Analyzer>(Analyzer::delta(2));
  e.dilation = std::make_shared<DilationMatrix>(
      std::vector<std::vector<double>>{{2, 0}, {0, 2}});
  e.f = TestFunction::builtin("gaussian", 2);
  e.levels = {2, 3, 4, 5};
  e.box = {{-4.0, 4.0}, {-4.0, 4.0}};
  e.shape = {128, 128};
  e.modulus_box = e.box;
  e.modulus_shape = {129, 129};
  AnisoReport a = aniso_run(e);
  REQUIRE(a.tracking_ratio.size() == 4);
  // Identical factors: both axis runs see the same function, and the
  // combined error cannot stray far from the per-axis ones.
  CHECK(a.pass);
  for (double r : a.tracking_ratio) {
    CHECK(r >= 0.25);
    CHECK(r <= 4.0);
  }

  // The split needs a separable 2-D target and a diagonal dilation.
  Experiment bad = e;
  bad.dilation = std::make_shared<DilationMatrix>(
      std::vector<std::vector<double>>{{1, 1}, {1, -1}});
  CHECK_THROWS_AS(aniso_run(bad), ConfigError);
}
