#include "config.hpp"

#include <cmath>
#include <cstdio>
#include <initializer_list>
#include <limits>
#include <sstream>

#include "errors.hpp"

namespace qp {

namespace {

[[noreturn]] void bad(const std::string& where, const std::string& what) {
  throw ConfigError(where + ": " + what);
}

void check_keys(const ordered_json& j, const std::string& where,
                std::initializer_list<const char*> allowed) {
  if (!j.is_object()) bad(where, "expected an object");
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool known = false;
    for (const char* k : allowed) known = known || it.key() == k;
    if (!known) bad(where, "unknown key '" + it.key() + "'");
  }
}

const ordered_json& require(const ordered_json& j, const std::string& where,
                            const char* key) {
  auto it = j.find(key);
  if (it == j.end()) bad(where, std::string("missing key '") + key + "'");
  return *it;
}

double as_double(const ordered_json& j, const std::string& where) {
  if (!j.is_number()) bad(where, "expected a number");
  return j.get<double>();
}

int as_int(const ordered_json& j, const std::string& where) {
  if (!j.is_number_integer()) bad(where, "expected an integer");
  return j.get<int>();
}

std::vector<int> as_int_array(const ordered_json& j, const std::string& where) {
  if (!j.is_array() || j.empty()) bad(where, "expected a nonempty array of integers");
  std::vector<int> out;
  for (const auto& e : j) out.push_back(as_int(e, where));
  return out;
}

double parse_p(const ordered_json& j, const std::string& where) {
  if (j.is_string()) {
    if (j.get<std::string>() == "inf") return std::numeric_limits<double>::infinity();
    bad(where, "expected a number or \"inf\"");
  }
  double p = as_double(j, where);
  if (!(p >= 1.0)) bad(where, "p must be >= 1");
  return p;
}

std::vector<int> parse_levels(const ordered_json& j, const std::string& where) {
  if (j.is_array()) return as_int_array(j, where);
  check_keys(j, where, {"from", "to"});
  int from = as_int(require(j, where, "from"), where + ".from");
  int to = as_int(require(j, where, "to"), where + ".to");
  if (to < from) bad(where, "'to' must be >= 'from'");
  std::vector<int> out;
  for (int v = from; v <= to; ++v) out.push_back(v);
  return out;
}

void parse_grid(const ordered_json& j, const std::string& where, Box* box,
                std::vector<int>* shape) {
  if (j.is_string()) {
    if (j.get<std::string>() == "auto") return;  // leave empty: module defaults
    bad(where, "expected \"auto\" or a {box, shape} object");
  }
  check_keys(j, where, {"box", "shape"});
  const auto& jb = require(j, where, "box");
  if (!jb.is_array() || jb.empty()) bad(where + ".box", "expected an array of [lo, hi] pairs");
  for (const auto& pair : jb) {
    if (!pair.is_array() || pair.size() != 2) bad(where + ".box", "each entry is [lo, hi]");
    double lo = as_double(pair[0], where + ".box");
    double hi = as_double(pair[1], where + ".box");
    if (!(hi > lo)) bad(where + ".box", "hi must exceed lo");
    box->push_back({lo, hi});
  }
  *shape = as_int_array(require(j, where, "shape"), where + ".shape");
  if (shape->size() != box->size()) bad(where, "box and shape dimensions differ");
}

std::shared_ptr<const Kernel> parse_kernel_shorthand(const std::string& text) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  std::string piece;
  while (std::getline(ss, piece, ':')) parts.push_back(piece);
  const std::string where = "kernel '" + text + "'";
  try {
    if (parts.size() == 2 && parts[0] == "bspline") {
      std::vector<int> orders;
      std::stringstream os(parts[1]);
      while (std::getline(os, piece, ',')) orders.push_back(std::stoi(piece));
      return std::make_shared<Kernel>(Kernel::bspline_tensor(orders));
    }
    if (parts.size() == 3 && parts[0] == "sinc") {
      double band = std::stod(parts[1]);
      double radius = std::stod(parts[2]);
      return std::make_shared<Kernel>(Kernel::windowed_sinc({band}, 0.1, radius));
    }
  } catch (const std::invalid_argument&) {
    bad(where, "malformed number");
  } catch (const std::out_of_range&) {
    bad(where, "number out of range");
  }
  bad(where, "expected bspline:ORDERS or sinc:BAND:RADIUS");
}

}  // namespace

ordered_json parse_json_text(const std::string& text) {
  ordered_json j = ordered_json::parse(text, nullptr, false);
  if (j.is_discarded()) throw ConfigError("malformed JSON");
  return j;
}

void parse_grid_spec(const ordered_json& spec, Box* box, std::vector<int>* shape) {
  parse_grid(spec, "grid", box, shape);
}

std::shared_ptr<const Kernel> parse_kernel(const ordered_json& spec) {
  if (spec.is_string()) return parse_kernel_shorthand(spec.get<std::string>());
  if (!spec.is_object()) throw ConfigError("kernel: expected a string or object");
  const auto& jtype = require(spec, "kernel", "type");
  if (!jtype.is_string()) bad("kernel.type", "expected a string");
  const std::string type = jtype.get<std::string>();
  if (type == "bspline") {
    check_keys(spec, "kernel", {"type", "orders", "shifts", "coeffs"});
    std::vector<int> orders = as_int_array(require(spec, "kernel", "orders"), "kernel.orders");
    std::vector<ShiftTerm> terms;
    bool has_shifts = spec.contains("shifts"), has_coeffs = spec.contains("coeffs");
    if (has_shifts != has_coeffs) bad("kernel", "shifts and coeffs come together");
    if (has_shifts) {
      const auto& js = spec["shifts"];
      const auto& jc = spec["coeffs"];
      if (!js.is_array() || !jc.is_array() || js.size() != jc.size() || js.empty())
        bad("kernel", "shifts and coeffs must be equal-length nonempty arrays");
      for (size_t i = 0; i < js.size(); ++i) {
        ShiftTerm t;
        t.shift = as_int_array(js[i], "kernel.shifts");
        t.coeff = as_double(jc[i], "kernel.coeffs");
        terms.push_back(std::move(t));
      }
    }
    return std::make_shared<Kernel>(Kernel::bspline_tensor(orders, terms));
  }
  if (type == "sinc") {
    check_keys(spec, "kernel", {"type", "band", "rolloff", "radius"});
    std::vector<double> band;
    const auto& jb = require(spec, "kernel", "band");
    if (jb.is_array())
      for (const auto& e : jb) band.push_back(as_double(e, "kernel.band"));
    else
      band.push_back(as_double(jb, "kernel.band"));
    double rolloff =
        spec.contains("rolloff") ? as_double(spec["rolloff"], "kernel.rolloff") : 0.1;
    double radius = as_double(require(spec, "kernel", "radius"), "kernel.radius");
    return std::make_shared<Kernel>(Kernel::windowed_sinc(band, rolloff, radius));
  }
  if (type == "quasi") {
    check_keys(spec, "kernel", {"type", "orders", "target"});
    std::vector<int> orders = as_int_array(require(spec, "kernel", "orders"), "kernel.orders");
    int target = as_int(require(spec, "kernel", "target"), "kernel.target");
    Kernel base = Kernel::bspline_tensor(orders);
    std::vector<ShiftTerm> terms = quasi_interpolation_coeffs(base, target);
    return std::make_shared<Kernel>(Kernel::bspline_tensor(orders, terms));
  }
  throw ConfigError("kernel.type: unknown type '" + type + "'");
}

std::shared_ptr<const Analyzer> parse_analyzer(const ordered_json& spec, int dim) {
  if (spec.is_string()) {
    if (spec.get<std::string>() == "delta")
      return std::make_shared<Analyzer>(Analyzer::delta(dim));
    throw ConfigError("analyzer: unknown shorthand '" + spec.get<std::string>() + "'");
  }
  if (!spec.is_object()) throw ConfigError("analyzer: expected a string or object");
  const auto& jtype = require(spec, "analyzer", "type");
  if (!jtype.is_string()) bad("analyzer.type", "expected a string");
  const std::string type = jtype.get<std::string>();
  if (type == "diff") {
    check_keys(spec, "analyzer", {"type", "terms"});
    const auto& jt = require(spec, "analyzer", "terms");
    if (!jt.is_array() || jt.empty()) bad("analyzer.terms", "expected a nonempty array");
    std::vector<Analyzer::DiffTerm> terms;
    for (const auto& e : jt) {
      check_keys(e, "analyzer.terms[]", {"beta", "c"});
      Analyzer::DiffTerm t;
      t.beta = as_int_array(require(e, "analyzer.terms[]", "beta"), "analyzer.terms[].beta");
      const auto& jc = require(e, "analyzer.terms[]", "c");
      if (jc.is_array()) {
        if (jc.size() != 2) bad("analyzer.terms[].c", "expected [re, im]");
        t.c = cdouble(as_double(jc[0], "c"), as_double(jc[1], "c"));
      } else {
        t.c = cdouble(as_double(jc, "analyzer.terms[].c"), 0.0);
      }
      terms.push_back(std::move(t));
    }
    return std::make_shared<Analyzer>(Analyzer::differential(dim, std::move(terms)));
  }
  if (type == "kernel") {
    check_keys(spec, "analyzer", {"type", "kernel"});
    auto k = parse_kernel(require(spec, "analyzer", "kernel"));
    if (k->dim() != dim) bad("analyzer.kernel", "dimension mismatch");
    return std::make_shared<Analyzer>(Analyzer::function_kernel(*k));
  }
  throw ConfigError("analyzer.type: unknown type '" + type + "'");
}

std::shared_ptr<const DilationMatrix> parse_matrix(const ordered_json& spec) {
  std::vector<std::vector<double>> rows;
  if (spec.is_number()) {
    rows.push_back({as_double(spec, "matrix")});
  } else if (spec.is_array()) {
    for (const auto& r : spec) {
      if (!r.is_array() || r.empty()) bad("matrix", "expected nested row arrays");
      std::vector<double> row;
      for (const auto& e : r) row.push_back(as_double(e, "matrix"));
      rows.push_back(std::move(row));
    }
  } else {
    bad("matrix", "expected a number or nested row arrays");
  }
  return std::make_shared<DilationMatrix>(rows);
}

RateConfig parse_rate_config(const ordered_json& cfg) {
  check_keys(cfg, "config",
             {"kernel", "analyzer", "matrix", "function", "p", "levels", "grid",
              "modulus_grid", "seed", "directions", "max_order", "lattice_radius",
              "tol", "delta", "nu_extra", "exact_floor", "thresholds", "aniso"});
  RateConfig out;
  Experiment& exp = out.exp;
  exp.dilation = parse_matrix(require(cfg, "config", "matrix"));
  int dim = exp.dilation->dim();
  exp.kernel = parse_kernel(require(cfg, "config", "kernel"));
  if (exp.kernel->dim() != dim) bad("config.kernel", "dimension mismatch with matrix");
  exp.analyzer = parse_analyzer(require(cfg, "config", "analyzer"), dim);
  const auto& jf = require(cfg, "config", "function");
  if (!jf.is_string()) bad("config.function", "expected a builtin name");
  exp.f = TestFunction::builtin(jf.get<std::string>(), dim);
  if (cfg.contains("p")) exp.p = parse_p(cfg["p"], "config.p");
  exp.levels = parse_levels(require(cfg, "config", "levels"), "config.levels");
  if (cfg.contains("grid")) parse_grid(cfg["grid"], "config.grid", &exp.box, &exp.shape);
  if (cfg.contains("modulus_grid"))
    parse_grid(cfg["modulus_grid"], "config.modulus_grid", &exp.modulus_box,
               &exp.modulus_shape);
  if (cfg.contains("seed")) {
    if (!cfg["seed"].is_number_unsigned() && !cfg["seed"].is_number_integer())
      bad("config.seed", "expected an integer");
    exp.seed = cfg["seed"].get<std::uint64_t>();
  }
  if (cfg.contains("directions")) exp.directions = as_int(cfg["directions"], "config.directions");
  if (cfg.contains("max_order")) exp.max_order = as_int(cfg["max_order"], "config.max_order");
  if (cfg.contains("lattice_radius"))
    exp.lattice_radius = as_int(cfg["lattice_radius"], "config.lattice_radius");
  if (cfg.contains("tol")) exp.tol = as_double(cfg["tol"], "config.tol");
  if (cfg.contains("delta")) exp.delta = as_double(cfg["delta"], "config.delta");
  if (cfg.contains("nu_extra")) exp.nu_extra = as_int(cfg["nu_extra"], "config.nu_extra");
  if (cfg.contains("exact_floor"))
    exp.exact_floor = as_double(cfg["exact_floor"], "config.exact_floor");
  if (cfg.contains("thresholds")) {
    const auto& jt = cfg["thresholds"];
    check_keys(jt, "config.thresholds", {"ratio_spread", "slope_tol"});
    if (jt.contains("ratio_spread"))
      exp.thresholds.ratio_spread = as_double(jt["ratio_spread"], "thresholds.ratio_spread");
    if (jt.contains("slope_tol"))
      exp.thresholds.slope_tol = as_double(jt["slope_tol"], "thresholds.slope_tol");
  }
  if (cfg.contains("aniso")) {
    if (!cfg["aniso"].is_boolean()) bad("config.aniso", "expected true or false");
    out.aniso = cfg["aniso"].get<bool>();
  }
  return out;
}

ApproxConfig parse_approx_config(const ordered_json& cfg) {
  check_keys(cfg, "config", {"kernel", "analyzer", "matrix", "function", "level", "grid"});
  ApproxConfig out;
  out.spec.dilation = parse_matrix(require(cfg, "config", "matrix"));
  int dim = out.spec.dilation->dim();
  out.spec.kernel = parse_kernel(require(cfg, "config", "kernel"));
  if (out.spec.kernel->dim() != dim) bad("config.kernel", "dimension mismatch with matrix");
  out.spec.analyzer = parse_analyzer(require(cfg, "config", "analyzer"), dim);
  const auto& jf = require(cfg, "config", "function");
  if (!jf.is_string()) bad("config.function", "expected a builtin name");
  out.f = TestFunction::builtin(jf.get<std::string>(), dim);
  out.spec.level = as_int(require(cfg, "config", "level"), "config.level");
  if (cfg.contains("grid")) parse_grid(cfg["grid"], "config.grid", &out.box, &out.shape);
  return out;
}

ModuliConfig parse_moduli_config(const ordered_json& cfg) {
  check_keys(cfg, "config",
             {"function", "matrix", "s", "p", "levels", "directions", "seed", "grid"});
  ModuliConfig out;
  out.matrix = parse_matrix(require(cfg, "config", "matrix"));
  int dim = out.matrix->dim();
  const auto& jf = require(cfg, "config", "function");
  if (!jf.is_string()) bad("config.function", "expected a builtin name");
  out.f = TestFunction::builtin(jf.get<std::string>(), dim);
  out.s = as_int(require(cfg, "config", "s"), "config.s");
  if (out.s < 1) bad("config.s", "difference order must be >= 1");
  if (cfg.contains("p")) out.p = parse_p(cfg["p"], "config.p");
  out.levels = parse_levels(require(cfg, "config", "levels"), "config.levels");
  if (cfg.contains("directions")) out.directions = as_int(cfg["directions"], "config.directions");
  if (cfg.contains("seed")) {
    if (!cfg["seed"].is_number_unsigned() && !cfg["seed"].is_number_integer())
      bad("config.seed", "expected an integer");
    out.seed = cfg["seed"].get<std::uint64_t>();
  }
  if (cfg.contains("grid")) parse_grid(cfg["grid"], "config.grid", &out.box, &out.shape);
  return out;
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

ordered_json to_json(const OrderScan& scan) {
  ordered_json j;
  j["order"] = scan.order;
  j["ambiguous"] = scan.ambiguous;
  j["capped"] = scan.capped;
  j["tolerance"] = scan.tolerance;
  ordered_json rs = ordered_json::array();
  for (const auto& r : scan.residuals) {
    ordered_json e;
    e["beta"] = r.beta;
    e["point"] = r.point;
    e["value"] = r.value;
    rs.push_back(std::move(e));
  }
  j["residuals"] = std::move(rs);
  return j;
}

ordered_json to_json(const OrderCertificate& cert) {
  ordered_json j;
  j["strang_fix"] = to_json(cert.strang_fix);
  j["compatibility"] = to_json(cert.compatibility);
  j["effective_order"] = cert.effective_order;
  j["tolerance"] = cert.tolerance;
  j["ambiguous"] = cert.ambiguous;
  j["max_s_requested"] = cert.max_s_requested;
  j["lattice_radius"] = cert.lattice_radius;
  return j;
}

ordered_json to_json(const TailReport& tail) {
  ordered_json j;
  j["bound"] = tail.bound;
  j["divergent"] = tail.divergent;
  j["worst_last_shell_ratio"] = tail.worst_last_shell_ratio;
  ordered_json bs = ordered_json::array();
  for (const auto& b : tail.betas) {
    ordered_json e;
    e["beta"] = b.beta;
    e["partial_sum"] = b.partial_sum;
    e["last_shell_ratio"] = b.last_shell_ratio;
    e["decay_exponent"] = b.decay_exponent;
    e["divergent"] = b.divergent;
    bs.push_back(std::move(e));
  }
  j["betas"] = std::move(bs);
  return j;
}

ordered_json to_json(const RateReport& report) {
  ordered_json j;
  j["verdict"] = report.verdict;
  j["order_s"] = report.order_s;
  j["predicted_order"] = report.predicted_order;
  j["one_sided"] = report.one_sided;
  j["slope_error"] = report.slope_error;
  j["slope_bound"] = report.slope_bound;
  j["ratio_spread"] = report.ratio_spread;
  j["p"] = std::isinf(report.p) ? ordered_json("inf") : ordered_json(report.p);
  j["seed"] = report.seed;
  j["thresholds"] = {{"ratio_spread", report.thresholds.ratio_spread},
                     {"slope_tol", report.thresholds.slope_tol}};
  if (report.has_certificate)
    j["certificate"] = to_json(report.certificate);
  else
    j["certificate_note"] = report.certificate_note;
  ordered_json rows = ordered_json::array();
  for (const auto& r : report.rows) {
    ordered_json e;
    e["j"] = r.j;
    e["error"] = r.error;
    e["modulus"] = r.modulus;
    e["tail_term"] = r.tail_term;
    e["bound"] = r.bound;
    e["ratio"] = r.ratio;
    e["uncertainty"] = r.uncertainty;
    e["collar"] = r.collar;
    rows.push_back(std::move(e));
  }
  j["rows"] = std::move(rows);
  j["notes"] = report.notes;
  return j;
}

ordered_json to_json(const AnisoReport& report) {
  ordered_json j;
  j["pass"] = report.pass;
  j["tracking_ratio"] = report.tracking_ratio;
  j["combined"] = to_json(report.combined);
  j["axis_x"] = to_json(report.axis_x);
  j["axis_y"] = to_json(report.axis_y);
  return j;
}

std::string rate_csv(const RateReport& report) {
  std::string out = "j,error,modulus,tail_term,ratio\n";
  for (const auto& r : report.rows) {
    out += std::to_string(r.j);
    out += ',';
    out += format_double(r.error);
    out += ',';
    out += format_double(r.modulus);
    out += ',';
    out += format_double(r.tail_term);
    out += ',';
    out += format_double(r.ratio);
    out += '\n';
  }
  return out;
}

}  // namespace qp
