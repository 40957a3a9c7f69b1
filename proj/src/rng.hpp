#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

namespace qp {

// Deterministic sampling helper. All randomized probes in the library go
// through this so that a fixed seed reproduces every report byte for byte.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  double uniform() {
    return double(gen_() >> 11) * 0x1.0p-53;
  }

  double uniform(double a, double b) { return a + (b - a) * uniform(); }

  double normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u1 = uniform(), u2 = uniform();
    while (u1 <= 1e-300) u1 = uniform();
    double r = std::sqrt(-2.0 * std::log(u1));
    double t = 2.0 * 3.14159265358979323846 * u2;
    spare_ = r * std::sin(t);
    have_spare_ = true;
    return r * std::cos(t);
  }

  std::vector<double> unit_vector(int d) {
    std::vector<double> v(d);
    double n = 0.0;
    do {
      n = 0.0;
      for (int i = 0; i < d; ++i) {
        v[i] = normal();
        n += v[i] * v[i];
      }
    } while (n < 1e-12);
    n = std::sqrt(n);
    for (auto& x : v) x /= n;
    return v;
  }

  // Uniform in the ball of the given radius.
  std::vector<double> in_ball(int d, double radius) {
    std::vector<double> v = unit_vector(d);
    double r = radius * std::pow(uniform(), 1.0 / d);
    for (auto& x : v) x *= r;
    return v;
  }

 private:
  std::mt19937_64 gen_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace qp
