#pragma once

#include <cstdint>
#include <numeric>
#include <vector>

namespace qp {

// A multi-index is a vector of non-negative per-axis orders. [beta] denotes
// the total order beta_1 + ... + beta_d.
using MultiIndex = std::vector<int>;

inline int total_order(const MultiIndex& b) {
  return std::accumulate(b.begin(), b.end(), 0);
}

inline double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * double(n - k + i) / double(i);
  return r;
}

// Product of per-axis binomials C(g_i, a_i); the Leibniz weight for D^a f * D^(g-a) g.
inline double multi_binomial(const MultiIndex& g, const MultiIndex& a) {
  double r = 1.0;
  for (size_t i = 0; i < g.size(); ++i) r *= binomial(g[i], a[i]);
  return r;
}

// All multi-indices of dimension d with total order <= max_total, graded
// (ascending total order), lexicographic within a grade.
std::vector<MultiIndex> multi_indices_up_to(int d, int max_total);

// All multi-indices of dimension d with total order == total.
std::vector<MultiIndex> multi_indices_of_order(int d, int total);

}  // namespace qp
