#include <algorithm>
#include <set>
#include <stdexcept>
#include <vector>

#include "ff/constructions.hpp"
#include "src/fusion/internal.hpp"

namespace ff {

namespace {

using detail::mask_of_members;
using detail::member_pos;

// Projection of a product subgroup to one factor: sorted unique ids.
std::vector<int> project(const std::vector<int>& members, int n2, bool first) {
  std::vector<int> out;
  out.reserve(members.size());
  for (int e : members) out.push_back(first ? e / n2 : e % n2);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace

FusionSystem product_fusion(const FusionSystem& a, const FusionSystem& b) {
  if (a.p != b.p)
    throw std::invalid_argument("factors live at different primes");
  auto sp = std::make_shared<Group>(direct_product(*a.S, *b.S));
  int n2 = b.S->size();

  // The pair (i, j) must sit at id i*|S2| + j: both factors are sorted, so
  // the concatenated permutations sort lexicographically by (i, j).
  for (int i = 0; i < a.S->size(); ++i)
    for (int j = 0; j < n2; ++j) {
      const Perm& left = (*a.S)[i];
      const Perm& right = (*b.S)[j];
      const Perm& pair = (*sp)[i * n2 + j];
      for (std::size_t k = 0; k < pair.size(); ++k) {
        std::uint16_t want =
            k < left.size()
                ? left[k]
                : static_cast<std::uint16_t>(right[k - left.size()] +
                                             left.size());
        if (pair[k] != want)
          throw std::logic_error("product element ids are not id arithmetic");
      }
    }

  FusionSystem out = fusion_skeleton(sp, a.p);
  std::vector<std::set<std::vector<std::uint8_t>>> graphs(out.sub_count());
  for (int i = 0; i < out.sub_count(); ++i) {
    const auto& mem = out.subs[i].members;
    std::vector<int> p1 = project(mem, n2, true);
    std::vector<int> p2 = project(mem, n2, false);
    int i1 = a.sub_of_mask(mask_of_members(p1));
    int i2 = b.sub_of_mask(mask_of_members(p2));
    if (i1 < 0 || i2 < 0)
      throw std::logic_error("projection is not a subgroup");
    for (const FMor& m1 : a.mors[i1])
      for (const FMor& m2 : b.mors[i2]) {
        std::vector<std::uint8_t> img(mem.size());
        for (std::size_t k = 0; k < mem.size(); ++k) {
          int x = mem[k] / n2, y = mem[k] % n2;
          img[k] = static_cast<std::uint8_t>(
              m1.images[member_pos(p1, x)] * n2 + m2.images[member_pos(p2, y)]);
        }
        graphs[i].insert(std::move(img));
      }
  }
  for (int i = 0; i < out.sub_count(); ++i)
    detail::seal_homset(out, i, graphs[i], &out.mors[i]);
  return out;
}

}  // namespace ff
