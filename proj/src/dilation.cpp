#include "dilation.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "errors.hpp"

namespace qp {

DilationMatrix::DilationMatrix(const std::vector<std::vector<double>>& rows) {
  int d = int(rows.size());
  if (d < 1 || d > 8) throw ConfigError("dilation matrix dimension must be in [1, 8]");
  mat_.resize(d, d);
  for (int r = 0; r < d; ++r) {
    if (int(rows[r].size()) != d) throw ConfigError("dilation matrix must be square");
    for (int c = 0; c < d; ++c) mat_(r, c) = rows[r][c];
  }

  integer_ = true;
  for (int r = 0; r < d && integer_; ++r)
    for (int c = 0; c < d; ++c)
      if (mat_(r, c) != std::floor(mat_(r, c))) {
        integer_ = false;
        break;
      }
  if (integer_) {
    imat_.resize(d, d);
    for (int r = 0; r < d; ++r)
      for (int c = 0; c < d; ++c) imat_(r, c) = (long long)std::llround(mat_(r, c));
  }

  Eigen::EigenSolver<Eigen::MatrixXd> es(mat_);
  if (es.info() != Eigen::Success) throw NumericError("eigenvalue computation failed");
  for (int i = 0; i < d; ++i) eig_moduli_.push_back(std::abs(es.eigenvalues()[i]));
  std::sort(eig_moduli_.begin(), eig_moduli_.end());
  if (eig_moduli_.front() <= 1.0 + 1e-9) {
    std::ostringstream msg;
    msg << "dilation matrix is not expansive: eigenvalue modulus " << eig_moduli_.front();
    throw ConfigError(msg.str());
  }

  det_abs_ = std::abs(mat_.determinant());
  double prod = 1.0;
  for (double v : eig_moduli_) prod *= v;
  if (std::abs(det_abs_ - prod) > 1e-10 * std::max(det_abs_, 1.0))
    throw NumericError("determinant and eigenvalue product disagree");

  bool equal_moduli = eig_moduli_.back() - eig_moduli_.front() <=
                      1e-8 * eig_moduli_.back();
  bool diagonalizable = false;
  if (equal_moduli) {
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(es.eigenvectors());
    double cond = svd.singularValues()(0) / svd.singularValues()(d - 1);
    diagonalizable = cond < 1e8;
  }
  isotropic_ = equal_moduli && diagonalizable;
}

double DilationMatrix::level_scale() const {
  return std::pow(det_abs_, 1.0 / dim());
}

bool DilationMatrix::is_diagonal() const {
  for (int r = 0; r < dim(); ++r)
    for (int c = 0; c < dim(); ++c)
      if (r != c && mat_(r, c) != 0.0) return false;
  return true;
}

Eigen::MatrixXd DilationMatrix::power(int j) const {
  int d = dim();
  if (j >= 0 && integer_) {
    Eigen::Matrix<long long, Eigen::Dynamic, Eigen::Dynamic> acc =
        Eigen::Matrix<long long, Eigen::Dynamic, Eigen::Dynamic>::Identity(d, d);
    for (int i = 0; i < j; ++i) {
      Eigen::Matrix<long long, Eigen::Dynamic, Eigen::Dynamic> next = acc * imat_;
      for (int r = 0; r < d; ++r)
        for (int c = 0; c < d; ++c)
          if (std::abs(double(next(r, c))) > 4.6e18)
            throw NumericError("integer overflow in matrix power");
      acc = next;
    }
    return acc.cast<double>();
  }
  Eigen::MatrixXd base = mat_;
  if (j < 0) {
    base = mat_.inverse();
    j = -j;
  }
  Eigen::MatrixXd acc = Eigen::MatrixXd::Identity(d, d);
  for (int i = 0; i < j; ++i) acc = acc * base;
  return acc;
}

double operator_norm(const Eigen::MatrixXd& a) {
  const int n = int(a.cols());
  Eigen::MatrixXd ata = a.transpose() * a;
  Eigen::VectorXd v(n);
  for (int i = 0; i < n; ++i) v(i) = 1.0 + 1e-3 * i;
  v.normalize();
  double lambda = 0.0;
  const int max_iters = 10000;
  for (int it = 1; it <= max_iters; ++it) {
    Eigen::VectorXd w = ata * v;
    double next = v.dot(w);
    double norm = w.norm();
    if (norm == 0.0) return 0.0;
    v = w / norm;
    if (it > 1 && std::abs(next - lambda) <= 1e-12 * std::max(std::abs(next), 1e-300))
      return std::sqrt(next);
    lambda = next;
  }
  std::ostringstream msg;
  msg << "operator norm power iteration did not converge in " << max_iters << " iterations";
  throw NumericError(msg.str());
}

}  // namespace qp
