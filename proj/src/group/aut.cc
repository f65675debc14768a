#include <algorithm>
#include <stdexcept>

#include "ff/caps.hpp"
#include "ff/group.hpp"

namespace ff {

namespace {

// Try to extend gens[k] |-> imgs[k] (k < assigned) to a homomorphism by
// sweeping the span of the assigned generators.  phi and used are scratch
// buffers reused across attempts.  Returns false on any conflict; on success
// phi holds the map on the whole span (all of G once every generator is
// assigned, since the generators were chosen to generate).
bool span_extends(const Group& g, const std::vector<int>& gens,
                  const std::vector<int>& imgs, std::vector<int>& phi,
                  std::vector<char>& used, std::vector<int>& queue) {
  std::fill(phi.begin(), phi.end(), -1);
  std::fill(used.begin(), used.end(), 0);
  phi[0] = 0;
  used[0] = 1;
  queue.clear();
  queue.push_back(0);
  for (std::size_t head = 0; head < queue.size(); ++head) {
    int x = queue[head];
    for (std::size_t k = 0; k < imgs.size(); ++k) {
      int y = g.mul(x, gens[k]);
      int yi = g.mul(phi[x], imgs[k]);
      if (phi[y] >= 0) {
        if (phi[y] != yi) return false;
      } else {
        if (used[yi]) return false;
        phi[y] = yi;
        used[yi] = 1;
        queue.push_back(y);
      }
    }
  }
  return true;
}

}  // namespace

AutGroup aut_group(const Group& g) {
  if (static_cast<std::size_t>(g.size()) > caps().aut)
    throw CapError("automorphism search exceeded the aut cap");
  // A short generating sequence (greedy over the sorted element list);
  // automorphisms are pinned down by the images of these, searched by
  // backtracking with span-consistency pruning.
  std::vector<int> ess;
  {
    std::vector<char> in_set(g.size(), 0);
    in_set[0] = 1;
    std::vector<int> members{0};
    for (int x = 1; x < g.size(); ++x) {
      if (in_set[x]) continue;
      ess.push_back(x);
      std::vector<int> frontier;
      std::size_t base = members.size();
      for (std::size_t k = 0; k < base; ++k) {
        int y = g.mul(members[k], x);
        if (!in_set[y]) {
          in_set[y] = 1;
          members.push_back(y);
          frontier.push_back(y);
        }
      }
      while (!frontier.empty()) {
        int u = frontier.back();
        frontier.pop_back();
        for (int t : ess) {
          int y = g.mul(u, t);
          if (!in_set[y]) {
            in_set[y] = 1;
            members.push_back(y);
            frontier.push_back(y);
          }
        }
      }
    }
  }
  // An automorphism preserves element order and conjugacy class size.
  std::vector<int> class_size(g.size(), 0);
  for (const auto& cls : conjugacy_classes(g))
    for (int x : cls) class_size[x] = static_cast<int>(cls.size());
  std::vector<std::vector<int>> cand(ess.size());
  for (std::size_t k = 0; k < ess.size(); ++k)
    for (int y = 1; y < g.size(); ++y)
      if (g.order_of(y) == g.order_of(ess[k]) && class_size[y] == class_size[ess[k]])
        cand[k].push_back(y);

  std::vector<Perm> found;
  std::vector<int> phi(g.size());
  std::vector<char> used(g.size());
  std::vector<int> queue;
  std::vector<int> imgs;
  auto dfs = [&](auto&& self, std::size_t depth) -> void {
    if (depth == ess.size()) {
      Perm total(g.size());
      for (int i = 0; i < g.size(); ++i) total[i] = static_cast<std::uint16_t>(phi[i]);
      found.push_back(std::move(total));
      return;
    }
    // phi is only read at the leaf, immediately after the successful
    // span_extends for the full assignment, so no restore is needed here.
    for (int c : cand[depth]) {
      imgs.push_back(c);
      if (span_extends(g, ess, imgs, phi, used, queue)) self(self, depth + 1);
      imgs.pop_back();
    }
  };
  if (ess.empty()) {
    found.push_back(identity_perm(g.size()));
  } else {
    dfs(dfs, 0);
  }

  AutGroup out;
  out.perm = group_from_elements(g.size(), std::move(found));
  for (int x = 0; x < g.size(); ++x) {
    Perm cx(g.size());
    for (int i = 0; i < g.size(); ++i) cx[i] = static_cast<std::uint16_t>(g.conj(x, i));
    int id = out.perm.id_of(cx);
    if (id < 0) throw std::logic_error("inner automorphism missing from search");
    out.inner_ids.push_back(id);
  }
  std::sort(out.inner_ids.begin(), out.inner_ids.end());
  out.inner_ids.erase(std::unique(out.inner_ids.begin(), out.inner_ids.end()),
                      out.inner_ids.end());
  std::vector<char> seen(out.perm.size(), 0);
  for (int a = 0; a < out.perm.size(); ++a) {
    if (seen[a]) continue;
    out.outer_reps.push_back(a);
    for (int n : out.inner_ids) seen[out.perm.mul(a, n)] = 1;
  }
  return out;
}

}  // namespace ff
