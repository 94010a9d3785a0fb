// Small-subset combinatorics shared by the analysis and scheme modules.
// Node sets are bitmasks over up to 31 nodes; all subset enumerations are in
// lexicographic order of the sorted member lists so that every run (and every
// language reimplementation) sees identical cell indexing.
#pragma once

#include <cstdint>
#include <vector>

namespace cdc {

inline long long binom(long long n, long long k) {
  if (k < 0 || k > n) return 0;
  if (k > n - k) k = n - k;
  long long r = 1;
  for (long long i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

inline int popcount_mask(uint32_t m) { return __builtin_popcount(m); }

// Members of a bitmask as ascending 1-based node indices.
inline std::vector<int> mask_to_nodes(uint32_t mask) {
  std::vector<int> v;
  for (int k = 1; mask != 0; ++k, mask >>= 1)
    if (mask & 1u) v.push_back(k);
  return v;
}

inline uint32_t nodes_to_mask(const std::vector<int>& nodes) {
  uint32_t m = 0;
  for (int k : nodes) m |= 1u << (k - 1);
  return m;
}

// All size-z submasks of `mask`, in lexicographic order of the sorted member
// lists. With members m1 < m2 < ..., subsets that contain m1 come first.
inline std::vector<uint32_t> submasks_of_size(uint32_t mask, int z) {
  std::vector<int> nodes = mask_to_nodes(mask);
  int n = static_cast<int>(nodes.size());
  std::vector<uint32_t> out;
  if (z < 0 || z > n) return out;
  std::vector<int> idx(z);
  for (int i = 0; i < z; ++i) idx[i] = i;
  while (true) {
    uint32_t sub = 0;
    for (int i : idx) sub |= 1u << (nodes[i] - 1);
    out.push_back(sub);
    int i = z - 1;
    while (i >= 0 && idx[i] == n - z + i) --i;
    if (i < 0) break;
    ++idx[i];
    for (int j = i + 1; j < z; ++j) idx[j] = idx[j - 1] + 1;
  }
  return out;
}

// All node subsets of {1..K} with the given size, lexicographic.
inline std::vector<uint32_t> masks_of_size(int K, int z) { return submasks_of_size((1u << K) - 1, z); }

}  // namespace cdc
