#pragma once

// Helpers shared by the fusion-system translation units; not installed.

#include <cstdint>
#include <set>
#include <vector>

#include "ff/fusion.hpp"

namespace ff::detail {

// Position of parent-element id x within a sorted member list, -1 if absent.
int member_pos(const std::vector<int>& members, int x);

std::uint64_t mask_of_members(const std::vector<int>& members);
std::uint64_t image_mask_of(const std::vector<std::uint8_t>& images);

// Finalizes one homset: attaches cod/image_mask to each graph and sorts.
void seal_homset(const FusionSystem& f, int dom,
                 const std::set<std::vector<std::uint8_t>>& graphs,
                 std::vector<FMor>* out);

// Subgroup index of the join <subs[a], subs[b]> inside f.
int join_sub(const FusionSystem& f, int a, int b);

inline std::vector<int> bits_of(std::uint64_t mask) {
  std::vector<int> out;
  for (; mask; mask &= mask - 1) out.push_back(__builtin_ctzll(mask));
  return out;
}

}  // namespace ff::detail
