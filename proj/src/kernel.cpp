#include "kernel.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "bspline.hpp"
#include "errors.hpp"
#include "quadrature.hpp"

namespace qp {

namespace {

constexpr double kPi = 3.14159265358979323846;

double sinc_val(double x) {
  double u = kPi * x;
  if (std::abs(u) < 1e-4) return 1.0 - u * u / 6.0 * (1.0 - u * u / 20.0);
  return std::sin(u) / u;
}

}  // namespace

Kernel Kernel::bspline_tensor(const std::vector<int>& orders,
                              const std::vector<ShiftTerm>& terms) {
  if (orders.empty()) throw ConfigError("bspline kernel needs at least one axis order");
  for (int n : orders)
    if (n < 1 || n > 12) throw ConfigError("bspline order out of range [1, 12]");
  Kernel k;
  k.variant_ = Variant::BsplineTensor;
  k.dim_ = int(orders.size());
  k.orders_ = orders;
  k.terms_ = terms;
  if (k.terms_.empty()) k.terms_.push_back({std::vector<int>(k.dim_, 0), 1.0});
  for (const auto& t : k.terms_)
    if (int(t.shift.size()) != k.dim_)
      throw ConfigError("bspline shift dimension does not match the order list");
  k.plain_tensor_ = k.terms_.size() == 1 && k.terms_[0].coeff == 1.0;
  if (k.plain_tensor_)
    for (int s : k.terms_[0].shift)
      if (s != 0) k.plain_tensor_ = false;
  k.support_half_.assign(k.dim_, 0.0);
  for (int i = 0; i < k.dim_; ++i) {
    int smax = 0;
    for (const auto& t : k.terms_) smax = std::max(smax, std::abs(t.shift[i]));
    k.support_half_[i] = 0.5 * orders[i] + smax;
  }
  k.fourier_order_ = 64;
  return k;
}

Kernel Kernel::windowed_sinc(const std::vector<double>& band, double rolloff,
                             double radius) {
  if (band.empty()) throw ConfigError("sinc kernel needs at least one band half-width");
  for (double b : band)
    if (!(b > 0)) throw ConfigError("sinc band half-widths must be positive");
  if (!(rolloff > 0 && rolloff <= 1)) throw ConfigError("sinc rolloff must lie in (0, 1]");
  if (!(radius > 0)) throw ConfigError("sinc truncation radius must be positive");
  Kernel k;
  k.variant_ = Variant::WindowedSinc;
  k.dim_ = int(band.size());
  k.band_ = band;
  k.rolloff_ = rolloff;
  k.radius_ = radius;
  k.support_half_.assign(k.dim_, radius);
  k.fourier_order_ = 0;
  return k;
}

Kernel Kernel::custom(int dim, std::function<double(const std::vector<double>&)> spatial,
                      std::vector<double> support_half,
                      std::function<cdouble(const std::vector<double>&)> fourier,
                      std::function<Jet(const std::vector<double>&, int)> fjet,
                      int fourier_smoothness_order) {
  if (dim < 1) throw ConfigError("kernel dimension must be positive");
  if (!spatial) throw ConfigError("custom kernel needs a spatial evaluator");
  if (int(support_half.size()) != dim)
    throw ConfigError("custom kernel support box dimension mismatch");
  Kernel k;
  k.variant_ = Variant::Custom;
  k.dim_ = dim;
  k.spatial_ = std::move(spatial);
  k.support_half_ = std::move(support_half);
  k.fourier_ = std::move(fourier);
  k.fjet_ = std::move(fjet);
  k.fourier_order_ = fourier_smoothness_order;
  return k;
}

double Kernel::support_radius() const {
  double r = 0.0;
  for (double h : support_half_) r = std::max(r, h);
  return r;
}

std::string Kernel::describe() const {
  std::ostringstream os;
  switch (variant_) {
    case Variant::BsplineTensor: {
      os << "bspline orders=[";
      for (int i = 0; i < dim_; ++i) os << (i ? "," : "") << orders_[i];
      os << "]";
      if (!plain_tensor_) os << " terms=" << terms_.size();
      break;
    }
    case Variant::WindowedSinc: {
      os << "sinc band=[";
      for (int i = 0; i < dim_; ++i) os << (i ? "," : "") << band_[i];
      os << "] rolloff=" << rolloff_ << " radius=" << radius_;
      break;
    }
    case Variant::Custom:
      os << "custom dim=" << dim_;
      break;
  }
  return os.str();
}

double Kernel::sinc_window(double u) const {
  double a = std::abs(u);
  if (a >= radius_) return 0.0;
  double flat = (1.0 - rolloff_) * radius_;
  if (a <= flat) return 1.0;
  double c = std::cos(0.5 * kPi * (a - flat) / (radius_ - flat));
  return c * c;
}

double Kernel::eval(const std::vector<double>& x) const {
  if (int(x.size()) != dim_) throw ConfigError("kernel argument dimension mismatch");
  switch (variant_) {
    case Variant::BsplineTensor: {
      double acc = 0.0;
      for (const auto& t : terms_) {
        double prod = t.coeff;
        for (int i = 0; i < dim_ && prod != 0.0; ++i)
          prod *= bspline_eval(orders_[i], x[i] - t.shift[i]);
        acc += prod;
      }
      return acc;
    }
    case Variant::WindowedSinc: {
      double prod = 1.0;
      for (int i = 0; i < dim_ && prod != 0.0; ++i)
        prod *= 2.0 * band_[i] * sinc_val(2.0 * band_[i] * x[i]) * sinc_window(x[i]);
      return prod;
    }
    case Variant::Custom:
      return spatial_(x);
  }
  return 0.0;
}

cdouble Kernel::eval_fourier(const std::vector<double>& xi) const {
  if (int(xi.size()) != dim_) throw ConfigError("kernel argument dimension mismatch");
  switch (variant_) {
    case Variant::BsplineTensor: {
      cdouble base = 1.0;
      for (int i = 0; i < dim_; ++i) {
        double s = sinc_val(xi[i]);
        base *= std::pow(s, orders_[i]);
      }
      cdouble trig = 0.0;
      for (const auto& t : terms_) {
        double phase = 0.0;
        for (int i = 0; i < dim_; ++i) phase += t.shift[i] * xi[i];
        trig += t.coeff * std::exp(cdouble(0.0, -2.0 * kPi * phase));
      }
      return base * trig;
    }
    case Variant::WindowedSinc: {
      // Even integrand per axis, so the transform is real:
      // 2 * int_0^R 2b sinc(2bu) w(u) cos(2 pi u xi) du.
      cdouble out = 1.0;
      for (int i = 0; i < dim_; ++i) {
        double b = band_[i], f = xi[i];
        int panels = std::max(64, int(std::ceil(4.0 * radius_ * (b + std::abs(f) + 1.0))));
        double v = 2.0 * integrate_panels(
                             [&](double u) {
                               return 2.0 * b * sinc_val(2.0 * b * u) * sinc_window(u) *
                                      std::cos(2.0 * kPi * u * f);
                             },
                             0.0, radius_, panels);
        out *= v;
      }
      return out;
    }
    case Variant::Custom:
      if (!fourier_) throw UnsupportedError("kernel has no fourier evaluator");
      return fourier_(xi);
  }
  return 0.0;
}

Jet Kernel::fourier_jet(const std::vector<double>& xi, int order) const {
  switch (variant_) {
    case Variant::BsplineTensor: {
      std::vector<Jet1> axes(dim_);
      for (int i = 0; i < dim_; ++i) axes[i] = sinc_pow_jet(xi[i], orders_[i], order);
      Jet base = Jet::from_axes(axes, order);
      if (plain_tensor_) return base;
      Jet trig = Jet::constant(dim_, order, 0.0);
      for (const auto& t : terms_) {
        std::vector<Jet1> ph(dim_);
        for (int i = 0; i < dim_; ++i) ph[i] = phase_jet(double(t.shift[i]), xi[i], order);
        trig = trig + Jet::from_axes(ph, order).scaled(t.coeff);
      }
      return base * trig;
    }
    case Variant::WindowedSinc:
      if (order == 0) {
        Jet j(dim_, 0);
        j.at(MultiIndex(dim_, 0)) = eval_fourier(xi);
        return j;
      }
      throw UnsupportedError("no fourier derivative data for windowed-sinc kernels");
    case Variant::Custom:
      if (fjet_) return fjet_(xi, order);
      if (order == 0 && fourier_) {
        Jet j(dim_, 0);
        j.at(MultiIndex(dim_, 0)) = fourier_(xi);
        return j;
      }
      throw UnsupportedError("kernel has no fourier derivative evaluator");
  }
  throw UnsupportedError("unreachable kernel variant");
}

cdouble Kernel::eval_fourier_deriv(const MultiIndex& beta, const std::vector<double>& xi) const {
  int k = total_order(beta);
  if (k > fourier_order_)
    throw UnsupportedError("fourier derivative order exceeds the kernel's smoothness data");
  if (k == 0) return eval_fourier(xi);
  return fourier_jet(xi, k).at(beta);
}

double Kernel::lp_class_norm(double p, int box_resolution) const {
  if (box_resolution < 2) throw ConfigError("box_resolution must be at least 2");
  bool inf = std::isinf(p);
  if (!inf && !(p >= 1.0)) throw ConfigError("p must be >= 1 or inf");
  for (double h : support_half_)
    if (std::isinf(h))
      throw UnsupportedError("kernel support is unbounded; no decay certificate available");

  // Lattice window: every shift whose support box can reach the unit cell.
  std::vector<int> lo(dim_), hi(dim_);
  for (int i = 0; i < dim_; ++i) {
    int r = int(std::ceil(support_half_[i] + 0.5)) + 1;
    lo[i] = -r;
    hi[i] = r;
  }

  double acc = 0.0, maxv = 0.0;
  std::vector<int> gidx(dim_, 0);
  std::vector<double> x(dim_), y(dim_);
  size_t cells = 1;
  for (int i = 0; i < dim_; ++i) cells *= size_t(box_resolution);
  for (size_t flat = 0; flat < cells; ++flat) {
    size_t rest = flat;
    for (int i = dim_ - 1; i >= 0; --i) {
      gidx[i] = int(rest % size_t(box_resolution));
      rest /= size_t(box_resolution);
    }
    for (int i = 0; i < dim_; ++i)
      x[i] = -0.5 + (double(gidx[i]) + 0.5) / double(box_resolution);

    double s = 0.0;
    std::vector<int> k(lo);
    while (true) {
      for (int i = 0; i < dim_; ++i) y[i] = x[i] + k[i];
      s += std::abs(eval(y));
      int ax = dim_ - 1;
      while (ax >= 0) {
        if (++k[ax] <= hi[ax]) break;
        k[ax] = lo[ax];
        --ax;
      }
      if (ax < 0) break;
    }
    if (inf)
      maxv = std::max(maxv, s);
    else
      acc += std::pow(s, p);
  }
  if (inf) return maxv;
  return std::pow(acc / double(cells), 1.0 / p);
}

const std::vector<int>& Kernel::orders() const {
  if (variant_ != Variant::BsplineTensor)
    throw UnsupportedError("kernel is not a bspline combination");
  return orders_;
}

const std::vector<ShiftTerm>& Kernel::terms() const {
  if (variant_ != Variant::BsplineTensor)
    throw UnsupportedError("kernel is not a bspline combination");
  return terms_;
}

}  // namespace qp
