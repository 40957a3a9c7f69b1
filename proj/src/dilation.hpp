#pragma once

#include <Eigen/Dense>
#include <vector>

namespace qp {

// Expansive dilation matrix: all eigenvalue moduli strictly greater than one.
// Carries the quantities the rest of the library keys on: m = |det M|, the
// spectral floor |lambda| = min eigenvalue modulus, and the per-level
// geometric scale m^(1/d).
class DilationMatrix {
 public:
  explicit DilationMatrix(const std::vector<std::vector<double>>& rows);

  int dim() const { return int(mat_.rows()); }
  const Eigen::MatrixXd& matrix() const { return mat_; }
  double entry(int r, int c) const { return mat_(r, c); }

  double det_abs() const { return det_abs_; }
  double min_eig_modulus() const { return eig_moduli_.front(); }
  const std::vector<double>& eig_moduli() const { return eig_moduli_; }
  double level_scale() const;  // m^(1/d)

  bool is_integer() const { return integer_; }
  bool is_diagonal() const;
  // Equal eigenvalue moduli and a well-conditioned eigenvector basis.
  bool is_isotropic() const { return isotropic_; }

  // M^j by repeated multiplication; integer matrices with j >= 0 are powered
  // in 64-bit integer arithmetic, negative powers use the inverse once.
  Eigen::MatrixXd power(int j) const;

 private:
  Eigen::MatrixXd mat_;
  Eigen::Matrix<long long, Eigen::Dynamic, Eigen::Dynamic> imat_;
  bool integer_ = false;
  bool isotropic_ = false;
  double det_abs_ = 0.0;
  std::vector<double> eig_moduli_;  // ascending
};

// Spectral norm via power iteration on A^T A, relative tolerance 1e-12,
// at most 10^4 iterations; throws NumericError with the iterate count on
// non-convergence.
double operator_norm(const Eigen::MatrixXd& a);

}  // namespace qp
