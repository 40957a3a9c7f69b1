#pragma once

#include <memory>
#include <string>

#include "json.hpp"

#include "harness.hpp"

namespace qp {

using ordered_json = nlohmann::ordered_json;

// All parsers are strict: unknown keys anywhere in the tree are a ConfigError,
// as are wrong types and out-of-range values. Malformed JSON text too.
ordered_json parse_json_text(const std::string& text);

// Kernel spec: shorthand strings "bspline:2" / "bspline:2,3" and
// "sinc:BAND:RADIUS" (rolloff 0.1), or objects
//   {"type":"bspline","orders":[2],"shifts":[[0]],"coeffs":[1.0]}
//   {"type":"sinc","band":[0.5],"rolloff":0.1,"radius":200}
//   {"type":"quasi","orders":[4],"target":4}   (point-sampling interpolant)
std::shared_ptr<const Kernel> parse_kernel(const ordered_json& spec);

// Analyzer spec: "delta", {"type":"diff","terms":[{"beta":[1],"c":[0,1]}]},
// or {"type":"kernel","kernel":<kernel spec>}. `c` is a real number or an
// [re, im] pair.
std::shared_ptr<const Analyzer> parse_analyzer(const ordered_json& spec, int dim);

// Matrix spec: a plain number (1-D) or nested row arrays.
std::shared_ptr<const DilationMatrix> parse_matrix(const ordered_json& spec);

// Grid spec: "auto" leaves box/shape empty (callers pick defaults), otherwise
// {"box": [[lo,hi],...], "shape": [n,...]}.
void parse_grid_spec(const ordered_json& spec, Box* box, std::vector<int>* shape);

struct RateConfig {
  Experiment exp;
  bool aniso = false;
};
RateConfig parse_rate_config(const ordered_json& cfg);

struct ApproxConfig {
  OperatorSpec spec;
  TestFunction f = TestFunction::builtin("gaussian", 1);
  Box box;
  std::vector<int> shape;
};
ApproxConfig parse_approx_config(const ordered_json& cfg);

struct ModuliConfig {
  TestFunction f = TestFunction::builtin("gaussian", 1);
  std::shared_ptr<const DilationMatrix> matrix;
  int s = 2;
  double p = 2.0;
  std::vector<int> levels;
  int directions = 32;
  std::uint64_t seed = 2026;
  Box box;
  std::vector<int> shape;
};
ModuliConfig parse_moduli_config(const ordered_json& cfg);

ordered_json to_json(const OrderScan& scan);
ordered_json to_json(const OrderCertificate& cert);
ordered_json to_json(const TailReport& tail);
ordered_json to_json(const RateReport& report);
ordered_json to_json(const AnisoReport& report);

// Plot-ready per-level table: j,error,modulus,tail_term,ratio.
std::string rate_csv(const RateReport& report);

// Doubles formatted with enough digits to round-trip exactly.
std::string format_double(double v);

}  // namespace qp
