#include "conditions.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>

#include <Eigen/Dense>

#include "bspline.hpp"
#include "errors.hpp"
#include "jet.hpp"

namespace qp {

namespace {

// Walk all integer points with |k|_inf <= radius, reporting each to fn.
template <typename Fn>
void for_lattice_box(int dim, int radius, Fn&& fn) {
  std::vector<int> k(size_t(dim), -radius);
  while (true) {
    fn(k);
    int axis = dim - 1;
    while (axis >= 0 && ++k[size_t(axis)] > radius) k[size_t(axis--)] = -radius;
    if (axis < 0) break;
  }
}

OrderScan scan_orders(int dim, int max_s, double tol,
                      const std::map<MultiIndex, ResidualEntry>& worst) {
  OrderScan scan;
  scan.tolerance = tol;
  scan.order = max_s;
  scan.capped = true;
  for (int t = 0; t < max_s && scan.capped; ++t) {
    double worst_t = 0.0;
    for (const auto& beta : multi_indices_of_order(dim, t)) {
      auto it = worst.find(beta);
      if (it != worst.end()) worst_t = std::max(worst_t, it->second.value);
    }
    if (worst_t > tol) {
      scan.order = t;
      scan.capped = false;
      scan.ambiguous = worst_t < 10.0 * tol;
    }
  }
  int keep = scan.capped ? max_s - 1 : scan.order;
  for (const auto& [beta, entry] : worst)
    if (total_order(beta) <= keep) scan.residuals.push_back(entry);
  return scan;
}

}  // namespace

OrderScan strang_fix_scan(const Kernel& phi, int max_s, int lattice_radius, double tol) {
  if (max_s < 1) throw ConfigError("max_s must be >= 1");
  if (lattice_radius < 1) throw ConfigError("lattice_radius must be >= 1");
  if (!(tol > 0)) throw ConfigError("tolerance must be positive");
  int d = phi.dim();
  if (max_s > phi.fourier_smoothness_order() - d - 1)
    throw UnsupportedError("kernel transform derivatives available up to order " +
                           std::to_string(phi.fourier_smoothness_order()) +
                           "; scanning to order " + std::to_string(max_s) + " needs " +
                           std::to_string(max_s + d + 1));

  std::map<MultiIndex, ResidualEntry> worst;
  std::vector<double> xi(static_cast<size_t>(d));
  for_lattice_box(d, lattice_radius, [&](const std::vector<int>& k) {
    bool zero = true;
    for (int v : k) zero = zero && v == 0;
    if (zero) return;
    for (int i = 0; i < d; ++i) xi[size_t(i)] = k[size_t(i)];
    Jet jet = phi.fourier_jet(xi, max_s - 1);
    for (const auto& beta : jet.indices()) {
      double v = std::abs(jet.at(beta));
      auto& entry = worst[beta];
      if (entry.point.empty() || v > entry.value) entry = {beta, xi, v};
    }
  });
  return scan_orders(d, max_s, tol, worst);
}

int strang_fix_order(const Kernel& phi, int max_s, int lattice_radius, double tol) {
  return strang_fix_scan(phi, max_s, lattice_radius, tol).order;
}

OrderScan compatibility_scan(const Kernel& phi, const Analyzer& tilde, int max_s,
                             double tol) {
  if (max_s < 1) throw ConfigError("max_s must be >= 1");
  if (!(tol > 0)) throw ConfigError("tolerance must be positive");
  if (phi.dim() != tilde.dim())
    throw ConfigError("kernel and analyzer dimensions disagree");
  int d = phi.dim();
  int smooth = std::min(phi.fourier_smoothness_order(), tilde.symbol_smoothness_order());
  if (max_s > smooth - d - 1)
    throw UnsupportedError("pair transform derivatives available up to order " +
                           std::to_string(smooth) + "; scanning to order " +
                           std::to_string(max_s) + " needs " +
                           std::to_string(max_s + d + 1));

  std::vector<double> origin(size_t(d), 0.0);
  Jet product = phi.fourier_jet(origin, max_s - 1) *
                tilde.symbol_jet(origin, max_s - 1).conjugated();
  Jet diff = Jet::constant(d, max_s - 1, 1.0) - product;
  std::map<MultiIndex, ResidualEntry> worst;
  for (const auto& beta : diff.indices())
    worst[beta] = {beta, origin, std::abs(diff.at(beta))};
  return scan_orders(d, max_s, tol, worst);
}

int compatibility_order(const Kernel& phi, const Analyzer& tilde, int max_s, double tol) {
  return compatibility_scan(phi, tilde, max_s, tol).order;
}

OrderCertificate make_certificate(const Kernel& phi, const Analyzer& tilde, int max_s,
                                  int lattice_radius, double tol) {
  OrderCertificate cert;
  cert.strang_fix = strang_fix_scan(phi, max_s, lattice_radius, tol);
  int compat_cap = std::min(max_s, std::max(cert.strang_fix.order, 1));
  cert.compatibility = compatibility_scan(phi, tilde, compat_cap, tol);
  cert.effective_order = std::min(cert.strang_fix.order, cert.compatibility.order);
  cert.tolerance = tol;
  cert.ambiguous = cert.strang_fix.ambiguous || cert.compatibility.ambiguous;
  cert.max_s_requested = max_s;
  cert.lattice_radius = lattice_radius;
  return cert;
}

TailReport tail_derivative_bound(const Kernel& phi, int s, int lattice_radius,
                                 double delta) {
  if (s < 0) throw ConfigError("s must be >= 0");
  if (lattice_radius < 2) throw ConfigError("lattice_radius must be >= 2");
  if (!(delta > 0.0 && delta < 0.5)) throw ConfigError("delta must lie in (0, 1/2)");
  int d = phi.dim();
  int top = s + d + 1;
  if (top > phi.fourier_smoothness_order())
    throw UnsupportedError("tail bound needs transform derivatives up to order " +
                           std::to_string(top));

  std::vector<MultiIndex> betas;
  for (const auto& beta : multi_indices_up_to(d, top))
    if (total_order(beta) >= s) betas.push_back(beta);

  // Grid points of the 9^d sup grid per axis offset.
  std::vector<double> grid_axis(9);
  for (int i = 0; i < 9; ++i) grid_axis[size_t(i)] = -delta + i * (2.0 * delta / 8.0);

  // shell_sums[b][r-1] = sum over |l|_inf = r of sup over the grid.
  std::vector<std::vector<double>> shell_sums(betas.size(),
                                              std::vector<double>(size_t(lattice_radius), 0.0));

#pragma omp parallel for schedule(dynamic)
  for (int r = 1; r <= lattice_radius; ++r) {
    std::vector<double> local(betas.size(), 0.0);
    std::vector<double> sup(betas.size());
    std::vector<double> xi(static_cast<size_t>(d));
    std::vector<int> gidx(static_cast<size_t>(d));
    for_lattice_box(d, r, [&](const std::vector<int>& l) {
      int linf = 0;
      for (int v : l) linf = std::max(linf, std::abs(v));
      if (linf != r) return;
      std::fill(sup.begin(), sup.end(), 0.0);
      std::fill(gidx.begin(), gidx.end(), 0);
      while (true) {
        for (int i = 0; i < d; ++i)
          xi[size_t(i)] = l[size_t(i)] + grid_axis[size_t(gidx[size_t(i)])];
        Jet jet = phi.fourier_jet(xi, top);
        for (size_t b = 0; b < betas.size(); ++b)
          sup[b] = std::max(sup[b], std::abs(jet.at(betas[b])));
        int axis = d - 1;
        while (axis >= 0 && ++gidx[size_t(axis)] > 8) gidx[size_t(axis--)] = 0;
        if (axis < 0) break;
      }
      for (size_t b = 0; b < betas.size(); ++b) local[b] += sup[b];
    });
    for (size_t b = 0; b < betas.size(); ++b) shell_sums[b][size_t(r - 1)] = local[b];
  }

  TailReport report;
  for (size_t b = 0; b < betas.size(); ++b) {
    TailBetaDiag diag;
    diag.beta = betas[b];
    for (double v : shell_sums[b]) diag.partial_sum += v;
    if (diag.partial_sum > 0.0)
      diag.last_shell_ratio = shell_sums[b].back() / diag.partial_sum;

    // Fit shell_sum ~ r^{-alpha} over the outer shells; alpha <= 1 means the
    // full lattice sum cannot converge even though the last-shell ratio may
    // look small (harmonic-type tails).
    int lo = std::max(2, lattice_radius / 2);
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int pts = 0;
    for (int r = lo; r <= lattice_radius; ++r) {
      double v = shell_sums[b][size_t(r - 1)];
      if (v <= 0.0) continue;
      double x = std::log(double(r)), y = std::log(v);
      sx += x;
      sy += y;
      sxx += x * x;
      sxy += x * y;
      ++pts;
    }
    bool fit_valid = pts >= 3;
    if (fit_valid) {
      double denom = pts * sxx - sx * sx;
      diag.decay_exponent = -(pts * sxy - sx * sy) / denom;
    }
    diag.divergent = diag.last_shell_ratio > 0.1 ||
                     (fit_valid && diag.decay_exponent <= 1.05);
    report.bound = std::max(report.bound, diag.partial_sum);
    report.divergent = report.divergent || diag.divergent;
    report.worst_last_shell_ratio =
        std::max(report.worst_last_shell_ratio, diag.last_shell_ratio);
    report.betas.push_back(std::move(diag));
  }
  return report;
}

namespace {

// One axis of the quasi-interpolation solve: coefficients a_0..a_r for the
// symmetric combination a_0 B + sum_t a_t (B(.-t) + B(.+t)) whose symbol has
// D^k(1 - symbol)(0) = 0 for k < target (odd k vanish by symmetry).
std::vector<double> solve_axis(int n, int target) {
  int q = (target + 1) / 2;  // even-order conditions 0, 2, ..., 2(q-1)
  int jet_order = 2 * (q - 1);
  Jet1 spline = sinc_pow_jet(0.0, n, jet_order);

  double last_cond = 0.0;
  for (int r = q - 1; r <= q + 2; ++r) {
    Eigen::MatrixXd a(q, r + 1);
    for (int t = 0; t <= r; ++t) {
      Jet1 tau(size_t(jet_order) + 1, 0.0);
      if (t == 0) {
        tau[0] = 1.0;
      } else {
        Jet1 plus = phase_jet(double(t), 0.0, jet_order);
        Jet1 minus = phase_jet(double(-t), 0.0, jet_order);
        for (size_t i = 0; i < tau.size(); ++i) tau[i] = plus[i] + minus[i];
      }
      Jet1 prod = leibniz(spline, tau);
      for (int u = 0; u < q; ++u) a(u, t) = prod[size_t(2 * u)].real();
    }
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(q);
    rhs(0) = 1.0;

    Eigen::JacobiSVD<Eigen::MatrixXd> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const auto& sv = svd.singularValues();
    last_cond = sv(0) / sv(sv.size() - 1);
    if (last_cond >= 1e8) continue;
    Eigen::VectorXd x = svd.solve(rhs);
    if ((a * x - rhs).norm() >= 1e-10) continue;

    // Certify the axis before accepting: all orders below target must vanish.
    std::vector<ShiftTerm> terms;
    for (int t = -r; t <= r; ++t) terms.push_back({{t}, x(std::abs(t))});
    Kernel check = Kernel::bspline_tensor({n}, terms);
    OrderScan scan = compatibility_scan(check, Analyzer::delta(1), target);
    if (!scan.capped) continue;

    return std::vector<double>(x.data(), x.data() + x.size());
  }
  throw NumericError("quasi-interpolation system did not certify at target order " +
                     std::to_string(target) + " (condition number " +
                     std::to_string(last_cond) + ")");
}

}  // namespace

std::vector<ShiftTerm> quasi_interpolation_coeffs(const Kernel& base, int target_order) {
  if (base.variant() != Kernel::Variant::BsplineTensor)
    throw ConfigError("quasi-interpolation base must be a B-spline kernel");
  const auto& terms = base.terms();
  bool plain = terms.size() == 1 && terms[0].coeff == 1.0;
  if (plain)
    for (int v : terms[0].shift) plain = plain && v == 0;
  if (!plain)
    throw ConfigError("quasi-interpolation base must be a single unshifted B-spline");
  int d = base.dim();
  const auto& orders = base.orders();
  int sf = *std::min_element(orders.begin(), orders.end());
  if (target_order < 1 || target_order > sf)
    throw ConfigError("target order must lie in [1, " + std::to_string(sf) +
                      "] for this base");

  std::vector<std::vector<double>> axis(static_cast<size_t>(d));
  for (int i = 0; i < d; ++i) axis[size_t(i)] = solve_axis(orders[size_t(i)], target_order);

  // Tensor the per-axis symmetric combinations.
  std::vector<ShiftTerm> out;
  std::vector<int> shift(static_cast<size_t>(d));
  std::vector<int> idx(size_t(d), 0);
  while (true) {
    double coeff = 1.0;
    for (int i = 0; i < d; ++i) {
      int r = int(axis[size_t(i)].size()) - 1;
      shift[size_t(i)] = idx[size_t(i)] - r;
      coeff *= axis[size_t(i)][size_t(std::abs(shift[size_t(i)]))];
    }
    out.push_back({shift, coeff});
    int ax = d - 1;
    while (ax >= 0 && ++idx[size_t(ax)] >= int(axis[size_t(ax)].size()) * 2 - 1)
      idx[size_t(ax--)] = 0;
    if (ax < 0) break;
  }
  return out;
}

}  // namespace qp
