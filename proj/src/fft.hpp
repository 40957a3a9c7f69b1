#pragma once

#include <vector>

#include "jet.hpp"

namespace qp {

// In-place radix-2 complex FFT; size must be a power of two. The inverse
// transform includes the 1/N factor.
void fft(std::vector<cdouble>& a, bool inverse);

// Row-major d-dimensional transform: 1-D FFTs along every axis. Every shape
// entry must be a power of two.
void fft_nd(std::vector<cdouble>& data, const std::vector<int>& shape, bool inverse);

bool is_power_of_two(int n);

}  // namespace qp
