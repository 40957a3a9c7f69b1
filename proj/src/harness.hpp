#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "conditions.hpp"
#include "field.hpp"
#include "operator.hpp"

namespace qp {

struct RateThresholds {
  double ratio_spread = 20.0;
  double slope_tol = 0.25;
};

// One rate experiment: a kernel/analyzer/dilation triple swept over levels
// against a target function. Empty box/shape pick decay-sized defaults.
struct Experiment {
  std::shared_ptr<const Kernel> kernel;
  std::shared_ptr<const Analyzer> analyzer;
  std::shared_ptr<const DilationMatrix> dilation;
  TestFunction f = TestFunction::builtin("gaussian", 1);
  double p = 2.0;
  std::vector<int> levels;
  Box box;                  // error/best-approximation grid
  std::vector<int> shape;   // power-of-two per axis when set
  Box modulus_box;
  std::vector<int> modulus_shape;
  int max_order = 6;
  int lattice_radius = 50;
  double tol = 1e-8;
  int directions = 32;
  std::uint64_t seed = 2026;
  double delta = 0.25;  // scale of the best-approximation matrices delta M^nu
  int nu_extra = 4;     // tail levels past the last error level
  double exact_floor = 0.0;  // >0: EXACT verdict when every error is below it
  RateThresholds thresholds;
};

struct LevelRow {
  int j = 0;
  double error = 0.0;
  double modulus = 0.0;
  double tail_term = 0.0;
  double bound = 0.0;  // modulus + tail_term (modulus alone for averaging pairs)
  double ratio = 0.0;  // error / bound
  double uncertainty = 0.0;
  std::vector<double> collar;
};

struct RateReport {
  std::vector<LevelRow> rows;
  bool has_certificate = false;
  OrderCertificate certificate;
  std::string certificate_note;
  int order_s = 0;              // difference order used for the moduli
  double predicted_order = 0.0; // worst-case class rate for this pair
  bool one_sided = false;       // bound decays away from the class rate
  double slope_error = 0.0;     // fitted decay order of the errors
  double slope_bound = 0.0;     // fitted decay order of the bound
  double ratio_spread = 0.0;
  std::string verdict;          // PASS | FAIL | EXACT | TRIVIAL
  std::vector<std::string> notes;
  double p = 0.0;
  std::uint64_t seed = 0;
  RateThresholds thresholds;
};

// Grid sizes used when an experiment leaves box/shape empty: power-of-two
// error grids (Fourier-capable) and odd centered modulus grids.
std::vector<int> default_error_shape(int dim);
std::vector<int> default_modulus_shape(int dim);

// Full sweep: errors, moduli, Besov-style tail terms, slope fits, verdict.
// PASS means the error/bound ratio stays within the spread threshold and the
// error decays at the bound's own fitted order.
RateReport run(const Experiment& exp);

struct AnisoReport {
  RateReport combined;
  RateReport axis_x;  // f's x factor tensored with a smooth y factor
  RateReport axis_y;  // smooth x factor tensored with f's y factor
  std::vector<double> tracking_ratio;  // per level: e_comb / max(e_x, e_y)
  bool pass = false;                   // every ratio within [1/4, 4]
};

// Splits a separable 2-D target into single-axis variants and checks the
// combined error tracks the worse axis.
AnisoReport aniso_run(const Experiment& exp);

}  // namespace qp
