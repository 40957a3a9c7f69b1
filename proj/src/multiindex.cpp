#include "multiindex.hpp"

namespace qp {

static void emit(int d, int axis, int remaining, MultiIndex& cur,
                 std::vector<MultiIndex>& out) {
  if (axis == d - 1) {
    cur[axis] = remaining;
    out.push_back(cur);
    return;
  }
  for (int v = 0; v <= remaining; ++v) {
    cur[axis] = v;
    emit(d, axis + 1, remaining - v, cur, out);
  }
}

std::vector<MultiIndex> multi_indices_of_order(int d, int total) {
  std::vector<MultiIndex> out;
  MultiIndex cur(d, 0);
  emit(d, 0, total, cur, out);
  return out;
}

std::vector<MultiIndex> multi_indices_up_to(int d, int max_total) {
  std::vector<MultiIndex> out;
  for (int t = 0; t <= max_total; ++t) {
    auto grade = multi_indices_of_order(d, t);
    out.insert(out.end(), grade.begin(), grade.end());
  }
  return out;
}

}  // namespace qp
