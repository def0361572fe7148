#pragma once

#include <algorithm>
#include <vector>

namespace ocse {

/// An ordered list of distinct node indices. Order matters for submatrix
/// extraction; helpers below treat NodeSets as mathematical sets.
using NodeSet = std::vector<int>;

inline bool set_contains(const NodeSet& s, int v) {
  return std::find(s.begin(), s.end(), v) != s.end();
}

inline NodeSet set_sorted(NodeSet s) {
  std::sort(s.begin(), s.end());
  return s;
}

/// Sorted union of two sets.
inline NodeSet set_union(const NodeSet& a, const NodeSet& b) {
  NodeSet out = a;
  for (int v : b)
    if (!set_contains(out, v)) out.push_back(v);
  std::sort(out.begin(), out.end());
  return out;
}

/// Copy of s with v removed (order preserved).
inline NodeSet set_minus(const NodeSet& s, int v) {
  NodeSet out;
  out.reserve(s.size());
  for (int x : s)
    if (x != v) out.push_back(x);
  return out;
}

inline bool is_subset(const NodeSet& a, const NodeSet& b) {
  return std::all_of(a.begin(), a.end(),
                     [&](int v) { return set_contains(b, v); });
}

inline bool same_set(const NodeSet& a, const NodeSet& b) {
  return set_sorted(a) == set_sorted(b);
}

}  // namespace ocse
