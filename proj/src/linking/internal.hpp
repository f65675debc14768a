#pragma once

// Helpers shared by the linking-system translation units; not installed.

#include <cstdint>
#include <vector>

#include "ff/linking.hpp"

namespace ff::detail {

inline std::uint64_t delta_key(const LinkingSystem& l, int a, int b, int x) {
  return ((std::uint64_t{1} * a * l.object_count() + b) << 6) |
         static_cast<std::uint64_t>(x);
}

inline std::uint64_t rep_key(const LinkingSystem& l, int a, int b, int r) {
  return ((std::uint64_t{1} * a * l.object_count() + b) << 10) |
         static_cast<std::uint64_t>(r);
}

// Composition adjacency of one linking system: every composable pair
// (inner, outer) with its result, sliced by inner and by outer morphism.
// For product systems only the factor adjacencies are materialized.
struct CompAdjacency {
  // dense table for kind-0 systems: table[outer * n + inner], -1 undefined
  std::vector<int> table;
  int n = 0;
  // per-morphism slices: by_inner[m] lists (outer, result), by_outer[m]
  // lists (inner, result)
  std::vector<std::vector<std::pair<int, int>>> by_inner;
  std::vector<std::vector<std::pair<int, int>>> by_outer;
};

CompAdjacency comp_adjacency(const LinkingSystem& l);

// Fast composition through precomputed tables; product systems combine the
// factor tables arithmetically.  -1 when not composable.
struct ComposeContext {
  const LinkingSystem* l = nullptr;
  CompAdjacency self;          // kind 0
  CompAdjacency left, right;   // kind 1
  int mr = 0;                  // |Mor(right)| for id arithmetic

  int compose(int outer, int inner) const {
    if (l->kind == 0) return self.table[outer * self.n + inner];
    int lo = left.table[(outer / mr) * left.n + inner / mr];
    if (lo < 0) return -1;
    int ro = right.table[(outer % mr) * right.n + inner % mr];
    if (ro < 0) return -1;
    return lo * mr + ro;
  }
};

ComposeContext compose_context(const LinkingSystem& l);

// The element permutation of S induced by a fusion automorphism of S.
std::vector<int> fmor_elem_map(const FusionSystem& f, const FMor& alpha);

}  // namespace ff::detail
