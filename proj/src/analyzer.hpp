#pragma once

#include <memory>
#include <string>
#include <vector>

#include "dilation.hpp"
#include "jet.hpp"
#include "kernel.hpp"
#include "test_function.hpp"

namespace qp {

// Analysis distribution phi~ producing the operator coefficients: point
// sampling (Delta), derivative sampling (Differential), or local averaging
// against an integrable kernel (FunctionKernel).
class Analyzer {
 public:
  enum class Variant { Delta, Differential, FunctionKernel };

  struct DiffTerm {
    MultiIndex beta;
    cdouble c;
  };

  static Analyzer delta(int dim);
  static Analyzer differential(int dim, std::vector<DiffTerm> terms);
  static Analyzer function_kernel(Kernel k);

  Variant variant() const { return variant_; }
  int dim() const { return dim_; }
  int order_N() const { return order_n_; }
  std::string describe() const;
  const Kernel& kernel() const;
  const std::vector<DiffTerm>& terms() const { return terms_; }

  // The transform symbol: 1 for Delta, sum of c_beta (2 pi i xi)^beta for
  // Differential, the kernel transform for FunctionKernel.
  cdouble eval_symbol(const std::vector<double>& xi) const;
  Jet symbol_jet(const std::vector<double>& xi, int order) const;
  int symbol_smoothness_order() const;

  // Empirical growth check |symbol(xi)| <= C |xi|^N on sampled points.
  // n_claim overrides the analyzer's own N when >= 0.
  struct SnBound {
    bool bounded = false;
    double constant = 0.0;
  };
  SnBound check_sn_bound(double grid_radius, int samples, int n_claim = -1,
                         uint64_t seed = 2026) const;

  // Coefficient of phi(M^j x + k) in Q_j f, normalized so no |det M|^{j/2}
  // factors appear in either half of the operator.
  cdouble coefficient(const TestFunction& f, const DilationMatrix& m, int j,
                      const std::vector<int>& k) const;

 private:
  Analyzer() = default;

  Variant variant_ = Variant::Delta;
  int dim_ = 0;
  int order_n_ = 0;
  std::vector<DiffTerm> terms_;
  std::shared_ptr<const Kernel> kernel_;
};

}  // namespace qp
