// qp: command-line front end for the qpsampling shared library.
//
// Exit codes: 0 success, 1 experiment verdict FAIL, 2 configuration error,
// 3 numeric/runtime failure. Reports are written atomically; timestamps go
// to a .meta.json sidecar so payload files are byte-reproducible.

#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "qpsampling.h"

namespace {

int exit_code_for(int qp_code) {
  switch (qp_code) {
    case QP_OK:
      return 0;
    case QP_ERR_VERDICT:
      return 1;
    case QP_ERR_CONFIG:
    case QP_ERR_UNSUPPORTED:
    case QP_ERR_INVALID:
      return 2;
    default:
      return 3;
  }
}

[[noreturn]] void die(int code, const std::string& message) {
  std::cerr << "qp: " << message << "\n";
  std::exit(code);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) die(2, "cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_atomic(const std::string& path, const std::string& content) {
  std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) die(3, "cannot write " + tmp);
    out << content;
    if (!out.good()) die(3, "short write to " + tmp);
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0) die(3, "cannot move " + tmp);
}

void write_sidecar(const std::string& path, const std::string& command) {
  char stamp[32];
  std::time_t now = std::time(nullptr);
  std::tm tm_utc{};
  gmtime_r(&now, &tm_utc);
  std::strftime(stamp, sizeof stamp, "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
  nlohmann::ordered_json meta;
  meta["tool"] = "qp";
  meta["version"] = qp_version();
  meta["command"] = command;
  meta["written_at"] = stamp;
  write_atomic(path + ".meta.json", meta.dump(2) + "\n");
}

void emit(const std::string& out_path, const std::string& content,
          const std::string& command) {
  if (out_path.empty()) {
    std::cout << content;
    if (!content.empty() && content.back() != '\n') std::cout << "\n";
    return;
  }
  write_atomic(out_path, content);
  write_sidecar(out_path, command);
}

// Flag values may be shorthand ("bspline:2", "delta") or inline JSON objects.
std::string as_json_text(const std::string& s) {
  if (!s.empty() && (s.front() == '{' || s.front() == '[')) return s;
  return "\"" + s + "\"";
}

[[noreturn]] void fail_from_api(int code) {
  die(exit_code_for(code), qp_last_error());
}

std::string take_string(char* s) {
  std::string out = s ? s : "";
  qp_string_free(s);
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  if (const char* threads = std::getenv("QP_THREADS")) {
    int n = std::atoi(threads);
    if (n >= 1) qp_set_threads(n);
  }

  CLI::App app{"sampling-type quasi-projection operators: certificates, "
               "approximation runs, rate experiments"};
  app.require_subcommand(1);

  auto* cmd_version = app.add_subcommand("version", "print the library version");

  std::string kernel_spec, analyzer_spec = "delta", out_path;
  int max_order = 6, lattice_radius = 50;
  double tol = 1e-8;
  auto* cmd_check = app.add_subcommand("check-kernel",
                                       "certify reproduction and compatibility orders");
  cmd_check->add_option("--kernel", kernel_spec, "kernel spec (shorthand or JSON)")
      ->required();
  cmd_check->add_option("--analyzer", analyzer_spec, "analyzer spec (default delta)");
  cmd_check->add_option("--max-order", max_order, "highest order to scan");
  cmd_check->add_option("--lattice-radius", lattice_radius, "lattice truncation radius");
  cmd_check->add_option("--tol", tol, "residual tolerance");
  cmd_check->add_option("--out", out_path, "output file (stdout if absent)");

  std::string approx_config, approx_out;
  auto* cmd_approx = app.add_subcommand("approx", "tabulate f and Q_j f on a grid");
  cmd_approx->add_option("--config", approx_config, "JSON config file")->required();
  cmd_approx->add_option("--out", approx_out, "CSV output file (stdout if absent)");

  std::string rate_config, rate_out, rate_csv_path;
  std::uint64_t seed_override = 0;
  bool has_seed = false;
  auto* cmd_rate = app.add_subcommand("rate", "run a level sweep and fit decay orders");
  cmd_rate->add_option("--config", rate_config, "JSON config file")->required();
  cmd_rate->add_option("--out", rate_out, "report JSON file (stdout if absent)");
  cmd_rate->add_option("--csv", rate_csv_path, "per-level CSV file");
  cmd_rate->add_option("--seed", seed_override, "override the config seed")
      ->each([&](const std::string&) { has_seed = true; });

  std::string moduli_config, moduli_out;
  auto* cmd_moduli = app.add_subcommand("moduli",
                                        "smoothness moduli and best approximations");
  cmd_moduli->add_option("--config", moduli_config, "JSON config file")->required();
  cmd_moduli->add_option("--out", moduli_out, "CSV output file (stdout if absent)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  if (cmd_version->parsed()) {
    std::cout << "qp " << qp_version() << "\n";
    return 0;
  }

  if (cmd_check->parsed()) {
    qp_kernel* k = nullptr;
    int rc = qp_kernel_create(as_json_text(kernel_spec).c_str(), &k);
    if (rc != QP_OK) fail_from_api(rc);
    int dim = 0;
    qp_kernel_dim(k, &dim);
    qp_analyzer* a = nullptr;
    rc = qp_analyzer_create(as_json_text(analyzer_spec).c_str(), dim, &a);
    if (rc != QP_OK) {
      qp_kernel_free(k);
      fail_from_api(rc);
    }
    char* json = nullptr;
    rc = qp_certificate(k, a, max_order, lattice_radius, tol, &json);
    qp_analyzer_free(a);
    qp_kernel_free(k);
    if (rc != QP_OK) fail_from_api(rc);
    emit(out_path, take_string(json) + "\n", "check-kernel");
    return 0;
  }

  if (cmd_approx->parsed()) {
    char* csv = nullptr;
    int rc = qp_approx_run(read_file(approx_config).c_str(), &csv);
    if (rc != QP_OK) fail_from_api(rc);
    emit(approx_out, take_string(csv), "approx");
    return 0;
  }

  if (cmd_rate->parsed()) {
    std::string config_text = read_file(rate_config);
    if (has_seed) {
      nlohmann::ordered_json cfg =
          nlohmann::ordered_json::parse(config_text, nullptr, false);
      if (cfg.is_discarded()) die(2, "malformed JSON in " + rate_config);
      cfg["seed"] = seed_override;
      config_text = cfg.dump();
    }
    char* report = nullptr;
    char* csv = nullptr;
    int rc = qp_rate_run(config_text.c_str(),
                         &report, rate_csv_path.empty() ? nullptr : &csv);
    if (rc != QP_OK && rc != QP_ERR_VERDICT) fail_from_api(rc);
    emit(rate_out, take_string(report) + "\n", "rate");
    if (!rate_csv_path.empty()) emit(rate_csv_path, take_string(csv), "rate");
    if (rc == QP_ERR_VERDICT) {
      std::cerr << "qp: " << qp_last_error() << "\n";
      return 1;
    }
    return 0;
  }

  if (cmd_moduli->parsed()) {
    char* csv = nullptr;
    int rc = qp_moduli_run(read_file(moduli_config).c_str(), &csv);
    if (rc != QP_OK) fail_from_api(rc);
    emit(moduli_out, take_string(csv), "moduli");
    return 0;
  }

  return 0;
}
