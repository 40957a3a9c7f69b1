#include "fft.hpp"

#include <cmath>

#include "errors.hpp"

namespace qp {

bool is_power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

void fft(std::vector<cdouble>& a, bool inverse) {
  const size_t n = a.size();
  if (!is_power_of_two(int(n))) throw NumericError("fft size must be a power of two");
  for (size_t i = 1, j = 0; i < n; ++i) {
    size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  for (size_t len = 2; len <= n; len <<= 1) {
    double ang = 2.0 * 3.14159265358979323846 / double(len) * (inverse ? 1.0 : -1.0);
    cdouble wlen(std::cos(ang), std::sin(ang));
    for (size_t i = 0; i < n; i += len) {
      cdouble w(1.0);
      for (size_t k = 0; k < len / 2; ++k) {
        cdouble u = a[i + k];
        cdouble v = a[i + k + len / 2] * w;
        a[i + k] = u + v;
        a[i + k + len / 2] = u - v;
        w *= wlen;
      }
    }
  }
  if (inverse) {
    for (auto& x : a) x /= double(n);
  }
}

void fft_nd(std::vector<cdouble>& data, const std::vector<int>& shape, bool inverse) {
  const int d = int(shape.size());
  size_t total = 1;
  for (int s : shape) {
    if (!is_power_of_two(s)) throw NumericError("fft shape must be powers of two");
    total *= size_t(s);
  }
  if (data.size() != total) throw NumericError("fft data does not match shape");

  std::vector<size_t> stride(d, 1);
  for (int i = d - 2; i >= 0; --i) stride[i] = stride[i + 1] * size_t(shape[i + 1]);

  std::vector<cdouble> line;
  for (int axis = 0; axis < d; ++axis) {
    const size_t n = size_t(shape[axis]);
    const size_t st = stride[axis];
    line.assign(n, 0.0);
    const size_t lines = total / n;
    for (size_t l = 0; l < lines; ++l) {
      // base index of the l-th line along this axis
      size_t outer = l / st;
      size_t inner = l % st;
      size_t base = outer * st * n + inner;
      for (size_t k = 0; k < n; ++k) line[k] = data[base + k * st];
      fft(line, inverse);
      for (size_t k = 0; k < n; ++k) data[base + k * st] = line[k];
    }
  }
}

}  // namespace qp
