#include <Eigen/Dense>
#include <cmath>

#include "dilation.hpp"
#include "doctest.h"
#include "errors.hpp"

using namespace qp;

TEST_CASE("constructor rejects malformed or non-expansive matrices") {
  CHECK_THROWS_AS(DilationMatrix({{2, 0}}), ConfigError);             // not square
  CHECK_THROWS_AS(DilationMatrix(std::vector<std::vector<double>>{{1}}), ConfigError);                // |eig| = 1
  CHECK_THROWS_AS(DilationMatrix({{1, 0}, {0, 2}}), ConfigError);     // one eig inside
  CHECK_THROWS_AS(DilationMatrix(std::vector<std::vector<double>>{{0.5}}), ConfigError);              // contraction
  CHECK_THROWS_AS(DilationMatrix(std::vector<std::vector<double>>{}), ConfigError);
  CHECK_NOTHROW(DilationMatrix(std::vector<std::vector<double>>{{-2}}));  // expansive despite the sign
}

TEST_CASE("determinant, eigenvalue moduli, and scale for standard examples") {
  DilationMatrix iso({{2, 0}, {0, 2}});
  CHECK(iso.det_abs() == doctest::Approx(4.0));
  CHECK(iso.min_eig_modulus() == doctest::Approx(2.0));
  CHECK(iso.level_scale() == doctest::Approx(2.0));
  CHECK(iso.is_isotropic());
  CHECK(iso.is_diagonal());
  CHECK(iso.is_integer());

  DilationMatrix aniso({{2, 0}, {0, 4}});
  CHECK(aniso.det_abs() == doctest::Approx(8.0));
  CHECK(aniso.min_eig_modulus() == doctest::Approx(2.0));
  CHECK(aniso.level_scale() == doctest::Approx(std::sqrt(8.0)));
  CHECK_FALSE(aniso.is_isotropic());

  // Quincunx-type: eigenvalues +-sqrt(2) i times rotation; moduli sqrt(2).
  DilationMatrix quincunx({{1, 1}, {1, -1}});
  CHECK(quincunx.det_abs() == doctest::Approx(2.0));
  CHECK(quincunx.min_eig_modulus() == doctest::Approx(std::sqrt(2.0)));
  CHECK(quincunx.is_isotropic());
  CHECK_FALSE(quincunx.is_diagonal());

  DilationMatrix rot({{0, 2}, {-2, 0}});
  CHECK(rot.det_abs() == doctest::Approx(4.0));
  CHECK(rot.min_eig_modulus() == doctest::Approx(2.0));
}

TEST_CASE("power additivity and inverse powers") {
  for (const auto& rows : {std::vector<std::vector<double>>{{2}},
                           {{1, 1}, {1, -1}},
                           {{2, 1}, {0, 3}}}) {
    DilationMatrix m(rows);
    for (int a : {0, 1, 3})
      for (int b : {1, 2}) {
        Eigen::MatrixXd lhs = m.power(a + b);
        Eigen::MatrixXd rhs = m.power(a) * m.power(b);
        CHECK((lhs - rhs).cwiseAbs().maxCoeff() < 1e-9);
      }
    Eigen::MatrixXd id = m.power(2) * m.power(-2);
    CHECK((id - Eigen::MatrixXd::Identity(m.dim(), m.dim())).cwiseAbs().maxCoeff() <
          1e-9);
  }
}

TEST_CASE("integer matrices power exactly") {
  DilationMatrix m({{2, 1}, {0, 3}});
  Eigen::MatrixXd p = m.power(10);
  CHECK(p(0, 0) == doctest::Approx(1024.0));
  CHECK(p(1, 1) == doctest::Approx(59049.0));
  double upper = 0.0;  // sum 2^a 3^b over a+b = 9
  for (int i = 0; i <= 9; ++i) upper += std::pow(2.0, i) * std::pow(3.0, 9 - i);
  CHECK(p(0, 1) == doctest::Approx(upper));
}

TEST_CASE("operator_norm matches the largest singular value") {
  Eigen::MatrixXd a(2, 2);
  a << 3, 1, -1, 2;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(a);
  CHECK(operator_norm(a) == doctest::Approx(svd.singularValues()(0)).epsilon(1e-10));

  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(3, 3);
  d.diagonal() << 1, -7, 2;
  CHECK(operator_norm(d) == doctest::Approx(7.0).epsilon(1e-10));
}

TEST_CASE("negative powers contract strictly once the dilation takes hold") {
  std::vector<DilationMatrix> mats;
  mats.emplace_back(std::vector<std::vector<double>>{{2}});
  mats.push_back(DilationMatrix({{2, 0}, {0, 4}}));
  mats.push_back(DilationMatrix({{1, 1}, {1, -1}}));
  mats.push_back(DilationMatrix({{0, 2}, {-2, 0}}));
  for (const auto& m : mats) {
    double prev = operator_norm(m.power(-4));
    for (int j = 5; j <= 12; ++j) {
      double cur = operator_norm(m.power(-j));
      CHECK(cur < prev);
      prev = cur;
    }
  }
}

TEST_CASE("isotropic powers stay inside a fixed norm bracket") {
  // For 2I and the quincunx matrix all singular values coincide, so the
  // norm of M^j divided by |det M|^{j/d} cannot drift.
  std::vector<DilationMatrix> mats;
  mats.push_back(DilationMatrix({{2, 0}, {0, 2}}));
  mats.push_back(DilationMatrix({{1, 1}, {1, -1}}));
  for (const auto& m : mats) {
    double lam = std::sqrt(m.det_abs());
    for (int j = 0; j <= 10; ++j) {
      double ratio = operator_norm(m.power(j)) / std::pow(lam, j);
      CHECK(ratio > 0.5);
      CHECK(ratio < 2.0);
    }
  }
}
