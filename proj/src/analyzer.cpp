#include "analyzer.hpp"

#include <cmath>
#include <map>
#include <sstream>

#include "errors.hpp"
#include "quadrature.hpp"
#include "rng.hpp"

namespace qp {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Derivative array of (2 pi i u)^b in u.
Jet1 monomial_jet(double u, int b, int order) {
  Jet1 j(size_t(order) + 1, 0.0);
  cdouble base = std::pow(cdouble(0.0, 2.0 * kPi), b);
  double fall = 1.0;
  for (int k = 0; k <= std::min(order, b); ++k) {
    j[size_t(k)] = base * fall * std::pow(u, b - k);
    fall *= double(b - k);
  }
  return j;
}

}  // namespace

Analyzer Analyzer::delta(int dim) {
  if (dim < 1) throw ConfigError("analyzer dimension must be positive");
  Analyzer a;
  a.variant_ = Variant::Delta;
  a.dim_ = dim;
  a.order_n_ = 0;
  return a;
}

Analyzer Analyzer::differential(int dim, std::vector<DiffTerm> terms) {
  if (dim < 1) throw ConfigError("analyzer dimension must be positive");
  if (terms.empty()) throw ConfigError("differential analyzer needs at least one term");
  Analyzer a;
  a.variant_ = Variant::Differential;
  a.dim_ = dim;
  for (const auto& t : terms) {
    if (int(t.beta.size()) != dim)
      throw ConfigError("differential term dimension mismatch");
    for (int b : t.beta)
      if (b < 0) throw ConfigError("differential multi-index entries must be >= 0");
    a.order_n_ = std::max(a.order_n_, total_order(t.beta));
  }
  a.terms_ = std::move(terms);
  return a;
}

Analyzer Analyzer::function_kernel(Kernel k) {
  Analyzer a;
  a.variant_ = Variant::FunctionKernel;
  a.dim_ = k.dim();
  a.order_n_ = 0;
  a.kernel_ = std::make_shared<Kernel>(std::move(k));
  for (int i = 0; i < a.dim_; ++i)
    if (std::isinf(a.kernel_->support_half(i)))
      throw ConfigError("function-kernel analyzer needs a bounded support box");
  return a;
}

std::string Analyzer::describe() const {
  switch (variant_) {
    case Variant::Delta:
      return "delta";
    case Variant::Differential: {
      std::ostringstream os;
      os << "differential N=" << order_n_ << " terms=" << terms_.size();
      return os.str();
    }
    case Variant::FunctionKernel:
      return "kernel(" + kernel_->describe() + ")";
  }
  return "";
}

const Kernel& Analyzer::kernel() const {
  if (variant_ != Variant::FunctionKernel)
    throw UnsupportedError("analyzer has no kernel");
  return *kernel_;
}

cdouble Analyzer::eval_symbol(const std::vector<double>& xi) const {
  switch (variant_) {
    case Variant::Delta:
      return 1.0;
    case Variant::Differential: {
      cdouble acc = 0.0;
      for (const auto& t : terms_) {
        cdouble prod = t.c;
        for (int i = 0; i < dim_; ++i)
          prod *= std::pow(cdouble(0.0, 2.0 * kPi * xi[i]), t.beta[i]);
        acc += prod;
      }
      return acc;
    }
    case Variant::FunctionKernel:
      return kernel_->eval_fourier(xi);
  }
  return 0.0;
}

Jet Analyzer::symbol_jet(const std::vector<double>& xi, int order) const {
  switch (variant_) {
    case Variant::Delta:
      return Jet::constant(dim_, order, 1.0);
    case Variant::Differential: {
      Jet acc = Jet::constant(dim_, order, 0.0);
      for (const auto& t : terms_) {
        std::vector<Jet1> axes(dim_);
        for (int i = 0; i < dim_; ++i) axes[i] = monomial_jet(xi[i], t.beta[i], order);
        acc = acc + Jet::from_axes(axes, order).scaled(t.c);
      }
      return acc;
    }
    case Variant::FunctionKernel:
      return kernel_->fourier_jet(xi, order);
  }
  throw UnsupportedError("unreachable analyzer variant");
}

int Analyzer::symbol_smoothness_order() const {
  if (variant_ == Variant::FunctionKernel) return kernel_->fourier_smoothness_order();
  return 64;
}

Analyzer::SnBound Analyzer::check_sn_bound(double grid_radius, int samples, int n_claim,
                                           uint64_t seed) const {
  if (samples < 1000) throw ConfigError("check_sn_bound needs at least 1000 samples");
  if (!(grid_radius > 0)) throw ConfigError("grid_radius must be positive");
  int n = n_claim >= 0 ? n_claim : order_n_;

  Rng rng(seed);
  double sup_inner = 0.0, sup_outer = 0.0, sup_all = 0.0;
  auto probe = [&](const std::vector<double>& xi) {
    double r2 = 0.0;
    for (double v : xi) r2 += v * v;
    double r = std::sqrt(r2);
    double ratio = std::abs(eval_symbol(xi)) / std::pow(std::max(1.0, r), n);
    sup_all = std::max(sup_all, ratio);
    double& slot = r <= 0.5 * grid_radius ? sup_inner : sup_outer;
    slot = std::max(slot, ratio);
  };
  for (int i = 0; i < samples; ++i) probe(rng.in_ball(dim_, grid_radius));
  for (int axis = 0; axis < dim_; ++axis)
    for (double scale : {0.5, 1.0})
      for (double sign : {-1.0, 1.0}) {
        std::vector<double> xi(dim_, 0.0);
        xi[axis] = sign * scale * grid_radius;
        probe(xi);
      }

  // Bounded when the outer half of the ball does not push the ratio up:
  // growth beyond |xi|^n shows as an inner/outer gap.
  SnBound out;
  out.bounded = sup_outer <= 1.2 * sup_inner + 1e-300;
  out.constant = sup_all;
  return out;
}

cdouble Analyzer::coefficient(const TestFunction& f, const DilationMatrix& m, int j,
                              const std::vector<int>& k) const {
  if (m.dim() != dim_ || f.dim() != dim_)
    throw ConfigError("analyzer, matrix, and function dimensions disagree");
  if (j < 0) throw ConfigError("operator level must be >= 0");
  Eigen::MatrixXd b = m.power(-j);

  switch (variant_) {
    case Variant::Delta: {
      std::vector<double> x0(dim_);
      for (int r = 0; r < dim_; ++r) {
        double acc = 0.0;
        for (int c = 0; c < dim_; ++c) acc -= b(r, c) * k[c];
        x0[r] = acc;
      }
      return f.eval(x0);
    }
    case Variant::Differential: {
      if (!f.has_deriv(order_n_))
        throw ConfigError("function '" + f.name() + "' lacks derivatives of order " +
                          std::to_string(order_n_));
      std::vector<double> x0(dim_);
      for (int r = 0; r < dim_; ++r) {
        double acc = 0.0;
        for (int c = 0; c < dim_; ++c) acc -= b(r, c) * k[c];
        x0[r] = acc;
      }
      // <f, conj-pair> against sum_beta c_beta D^beta delta at M^j x + k:
      // conj(c_beta) (-1)^[beta] D^beta_y [f(M^-j (y - k))](0), expanded by
      // the chain rule into derivatives of f at x0 = -M^-j k.
      cdouble acc = 0.0;
      for (const auto& t : terms_) {
        std::map<MultiIndex, double> weights{{MultiIndex(dim_, 0), 1.0}};
        for (int axis = 0; axis < dim_; ++axis)
          for (int rep = 0; rep < t.beta[axis]; ++rep) {
            std::map<MultiIndex, double> next;
            for (const auto& [alpha, w] : weights)
              for (int r = 0; r < dim_; ++r) {
                if (b(r, axis) == 0.0) continue;
                MultiIndex a2 = alpha;
                ++a2[size_t(r)];
                next[a2] += w * b(r, axis);
              }
            weights = std::move(next);
          }
        cdouble term = 0.0;
        for (const auto& [alpha, w] : weights) term += w * f.deriv(alpha, x0);
        double sign = total_order(t.beta) % 2 == 0 ? 1.0 : -1.0;
        acc += std::conj(t.c) * sign * term;
      }
      return acc;
    }
    case Variant::FunctionKernel: {
      // m^j int f(y) conj(phi~(M^j y + k)) dy, in the kernel's own frame:
      // int f(M^-j (u - k)) phi~(u) du over the support box.
      Box box;
      for (int i = 0; i < dim_; ++i) {
        double h = kernel_->support_half(i);
        box.push_back({-h, h});
      }
      std::vector<double> y(dim_);
      auto integrand = [&](const std::vector<double>& u) {
        for (int r = 0; r < dim_; ++r) {
          double acc = 0.0;
          for (int c = 0; c < dim_; ++c) acc += b(r, c) * (u[c] - k[c]);
          y[r] = acc;
        }
        return f.eval(y) * kernel_->eval(u);
      };
      int levels = dim_ == 1 ? 20 : 12;
      return integrate_adaptive_nd(integrand, box, 1e-12, levels, 1e-16);
    }
  }
  return 0.0;
}

}  // namespace qp
