#pragma once

#include <vector>

#include "analyzer.hpp"
#include "kernel.hpp"
#include "multiindex.hpp"

namespace qp {

// Worst residual seen for one multi-index during an order scan.
struct ResidualEntry {
  MultiIndex beta;
  std::vector<double> point;
  double value = 0.0;
};

// Result of scanning derivative orders 0,1,... for the first non-vanishing one.
struct OrderScan {
  int order = 0;           // first failing total order, or max_s if none failed
  bool ambiguous = false;  // first failing residual under 10x tolerance
  bool capped = false;     // no order < max_s failed
  double tolerance = 0.0;
  std::vector<ResidualEntry> residuals;  // worst point per beta scanned
};

// Vanishing of D^beta phi_hat at nonzero lattice points for [beta] < order.
OrderScan strang_fix_scan(const Kernel& phi, int max_s, int lattice_radius = 50,
                          double tol = 1e-8);
int strang_fix_order(const Kernel& phi, int max_s, int lattice_radius = 50,
                     double tol = 1e-8);

// Vanishing of D^beta (1 - phi_hat * conj(symbol)) at 0 for [beta] < order.
OrderScan compatibility_scan(const Kernel& phi, const Analyzer& tilde, int max_s,
                             double tol = 1e-8);
int compatibility_order(const Kernel& phi, const Analyzer& tilde, int max_s,
                        double tol = 1e-8);

struct OrderCertificate {
  OrderScan strang_fix;
  OrderScan compatibility;
  int effective_order = 0;  // min of the two
  double tolerance = 0.0;
  bool ambiguous = false;
  int max_s_requested = 0;
  int lattice_radius = 0;
};

// Runs both scans; the compatibility probe is capped at the certified
// Strang-Fix order since the pair order cannot exceed it.
OrderCertificate make_certificate(const Kernel& phi, const Analyzer& tilde, int max_s,
                                  int lattice_radius = 50, double tol = 1e-8);

struct TailBetaDiag {
  MultiIndex beta;
  double partial_sum = 0.0;
  double last_shell_ratio = 0.0;
  double decay_exponent = 0.0;  // fitted alpha in shell_sum ~ r^{-alpha}
  bool divergent = false;
};

struct TailReport {
  double bound = 0.0;  // max over beta of the truncated lattice sums
  bool divergent = false;
  double worst_last_shell_ratio = 0.0;
  std::vector<TailBetaDiag> betas;
};

// Truncated sum over nonzero lattice shifts of sup_{|xi|<=delta per axis}
// |D^beta phi_hat(xi + l)| for s <= [beta] <= s+d+1, with shell-decay
// diagnostics instead of a convergence proof.
TailReport tail_derivative_bound(const Kernel& phi, int s, int lattice_radius = 50,
                                 double delta = 0.25);

// Coefficients making sum_t c_t B(. - t) reproduce polynomials against point
// sampling up to target_order: per-axis symmetric Taylor systems at 0.
std::vector<ShiftTerm> quasi_interpolation_coeffs(const Kernel& base, int target_order);

}  // namespace qp
