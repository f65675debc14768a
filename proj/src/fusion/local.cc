#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <stdexcept>
#include <vector>

#include "ff/fusion.hpp"
#include "src/fusion/internal.hpp"

namespace ff {

namespace {

using detail::bits_of;
using detail::join_sub;
using detail::member_pos;

// K as a position-permutation set, checked to be a subgroup of Aut(Q).
std::set<Perm> validate_k(const FusionSystem& f, int q_sub,
                          const std::vector<Perm>& k) {
  const Group& s = *f.S;
  const auto& mem = f.subs[q_sub].members;
  std::size_t n = mem.size();
  std::set<Perm> kset;
  for (const Perm& kappa : k) {
    if (kappa.size() != n)
      throw std::invalid_argument("automorphism degree does not match Q");
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b) {
        int prod = member_pos(mem, s.mul(mem[a], mem[b]));
        if (s.mul(mem[kappa[a]], mem[kappa[b]]) != mem[kappa[prod]])
          throw std::invalid_argument("map is not an automorphism of Q");
      }
    kset.insert(kappa);
  }
  if (!kset.count(identity_perm(static_cast<int>(n))))
    throw std::invalid_argument("K does not contain the identity");
  for (const Perm& a : kset)
    for (const Perm& b : kset)
      if (!kset.count(compose(a, b)))
        throw std::invalid_argument("K is not closed under composition");
  return kset;
}

// N_S^K(Q) = {x in N_S(Q) | c_x|Q in K}; kset == nullptr means K = Aut(Q).
std::uint64_t nk_mask_of(const FusionSystem& f, int q_sub,
                         const std::set<Perm>* kset) {
  const Group& s = *f.S;
  const auto& mem = f.subs[q_sub].members;
  std::uint64_t out = 0;
  Perm t(mem.size());
  for (int g = 0; g < s.size(); ++g) {
    bool norm = true;
    for (std::size_t k = 0; k < mem.size() && norm; ++k) {
      int pos = member_pos(mem, s.conj(g, mem[k]));
      if (pos < 0)
        norm = false;
      else
        t[k] = static_cast<std::uint16_t>(pos);
    }
    if (norm && (!kset || kset->count(t))) out |= std::uint64_t{1} << g;
  }
  return out;
}

bool fully_k_normalized_impl(const FusionSystem& f, int q_sub,
                             const std::set<Perm>* kset) {
  int base = __builtin_popcountll(nk_mask_of(f, q_sub, kset));
  const auto& qmem = f.subs[q_sub].members;
  for (const FMor& m : f.mors[q_sub]) {
    const auto& q2mem = f.subs[m.cod].members;
    std::set<Perm> conj_k;
    if (kset) {
      std::vector<int> pi(qmem.size());
      for (std::size_t k = 0; k < qmem.size(); ++k)
        pi[k] = member_pos(q2mem, m.images[k]);
      for (const Perm& kappa : *kset) {
        Perm t(qmem.size());
        for (std::size_t j = 0; j < qmem.size(); ++j)
          t[pi[j]] = static_cast<std::uint16_t>(pi[kappa[j]]);
        conj_k.insert(std::move(t));
      }
    }
    std::uint64_t other = nk_mask_of(f, m.cod, kset ? &conj_k : nullptr);
    if (__builtin_popcountll(other) > base) return false;
  }
  return true;
}

EmbeddedSystem local_impl(const FusionSystem& f, int q_sub,
                          const std::set<Perm>* kset) {
  std::uint64_t nk = nk_mask_of(f, q_sub, kset);
  int t_idx = f.sub_of_mask(nk);
  if (t_idx < 0) throw std::logic_error("N_S^K(Q) is not a subgroup");

  std::vector<int> to_parent;
  auto sg =
      std::make_shared<Group>(subgroup_as_group(f.subs[t_idx], &to_parent));
  FusionSystem out = fusion_skeleton(std::move(sg), f.p);

  const auto& tmem = f.subs[t_idx].members;
  const auto& qmem = f.subs[q_sub].members;
  std::vector<std::set<std::vector<std::uint8_t>>> graphs(out.sub_count());

  for (int i = 0; i < out.sub_count(); ++i) {
    std::vector<int> amem;  // members of this subgroup as parent ids
    amem.reserve(out.subs[i].members.size());
    for (int x : out.subs[i].members) amem.push_back(to_parent[x]);
    int a_idx = f.sub_of_mask(detail::mask_of_members(amem));
    if (a_idx < 0) throw std::logic_error("subgroup missing from the lattice");
    int pq = join_sub(f, a_idx, q_sub);
    const auto& bigmem = f.subs[pq].members;
    std::vector<int> qpos(qmem.size()), apos(amem.size());
    for (std::size_t k = 0; k < qmem.size(); ++k)
      qpos[k] = member_pos(bigmem, qmem[k]);
    for (std::size_t k = 0; k < amem.size(); ++k)
      apos[k] = member_pos(bigmem, amem[k]);

    Perm on_q(qmem.size());
    for (const FMor& big : f.mors[pq]) {
      // The extension must map Q onto itself, acting on it inside K.
      std::uint64_t qim = 0;
      for (std::size_t k = 0; k < qmem.size(); ++k)
        qim |= std::uint64_t{1} << big.images[qpos[k]];
      if (qim != f.masks[q_sub]) continue;
      if (kset) {
        for (std::size_t k = 0; k < qmem.size(); ++k)
          on_q[k] = static_cast<std::uint16_t>(
              member_pos(qmem, big.images[qpos[k]]));
        if (!kset->count(on_q)) continue;
      }
      std::vector<std::uint8_t> r(amem.size());
      bool inside = true;
      for (std::size_t k = 0; k < amem.size() && inside; ++k) {
        int y = big.images[apos[k]];
        inside = (nk >> y) & 1;
        r[k] = static_cast<std::uint8_t>(member_pos(tmem, y));
      }
      if (!inside)
        throw std::logic_error("restricted image escapes N_S^K(Q)");
      graphs[i].insert(std::move(r));
    }
  }
  for (int i = 0; i < out.sub_count(); ++i)
    detail::seal_homset(out, i, graphs[i], &out.mors[i]);

  EmbeddedSystem e{std::move(out), t_idx, std::move(to_parent)};
  if (fully_k_normalized_impl(f, q_sub, kset)) {
    if (!is_saturated(e.sys).saturated)
      throw std::logic_error("local subsystem failed saturation");
  }
  return e;
}

}  // namespace

EmbeddedSystem local_subsystem(const FusionSystem& f, int q_sub,
                               const std::vector<Perm>& k) {
  std::set<Perm> kset = validate_k(f, q_sub, k);
  return local_impl(f, q_sub, &kset);
}

EmbeddedSystem normalizer_subsystem(const FusionSystem& f, int q_sub) {
  return local_impl(f, q_sub, nullptr);
}

EmbeddedSystem centralizer_subsystem(const FusionSystem& f, int q_sub) {
  std::set<Perm> kset;
  kset.insert(identity_perm(static_cast<int>(f.subs[q_sub].members.size())));
  return local_impl(f, q_sub, &kset);
}

bool fully_k_normalized(const FusionSystem& f, int q_sub,
                        const std::vector<Perm>& k) {
  std::set<Perm> kset = validate_k(f, q_sub, k);
  return fully_k_normalized_impl(f, q_sub, &kset);
}

// --- Alperin decomposition -------------------------------------------------------

std::vector<AlperinStep> alperin_decomposition(const FusionSystem& f,
                                               const FMor& phi) {
  if (!has_morphism(f, phi))
    throw std::invalid_argument("morphism does not belong to the system");

  // Generator moves: automorphisms of subgroups that are centric, radical and
  // fully normalized, plus S itself; S comes first.
  Classification c = classify(f);
  std::vector<std::pair<int, FMor>> moves;
  for (int r = f.sub_count() - 1; r >= 0; --r) {
    const auto& pr = c.profile[r];
    if (r != f.s_sub() && !(pr.centric && pr.radical && pr.fully_normalized))
      continue;
    for (FMor& a : aut_morphisms(f, r))
      moves.emplace_back(r, std::move(a));
  }

  const auto& pmem = f.subs[phi.dom].members;
  std::vector<std::uint8_t> start(pmem.size());
  for (std::size_t k = 0; k < pmem.size(); ++k)
    start[k] = static_cast<std::uint8_t>(pmem[k]);

  struct Node {
    std::vector<std::uint8_t> images;
    int parent = -1;
    int move = -1;
  };
  std::vector<Node> nodes;
  std::map<std::vector<std::uint8_t>, int> seen;
  nodes.push_back({start, -1, -1});
  seen.emplace(start, 0);
  std::deque<int> queue{0};

  int goal = -1;
  if (start == phi.images) goal = 0;
  while (goal < 0 && !queue.empty()) {
    int cur = queue.front();
    queue.pop_front();
    std::uint64_t cur_mask = detail::image_mask_of(nodes[cur].images);
    for (int mi = 0; mi < static_cast<int>(moves.size()) && goal < 0; ++mi) {
      const auto& [r, alpha] = moves[mi];
      if (cur_mask & ~f.masks[r]) continue;
      const auto& rmem = f.subs[r].members;
      std::vector<std::uint8_t> next(nodes[cur].images.size());
      for (std::size_t k = 0; k < next.size(); ++k)
        next[k] = alpha.images[member_pos(rmem, nodes[cur].images[k])];
      auto [it, fresh] = seen.emplace(next, static_cast<int>(nodes.size()));
      if (!fresh) continue;
      nodes.push_back({std::move(next), cur, mi});
      if (nodes.back().images == phi.images) goal = it->second;
      queue.push_back(it->second);
    }
  }
  if (goal < 0)
    throw std::logic_error("no decomposition into local automorphisms");

  std::vector<AlperinStep> chain;
  for (int at = goal; nodes[at].parent >= 0; at = nodes[at].parent) {
    const auto& [r, alpha] = moves[nodes[at].move];
    int from = f.sub_of_mask(detail::image_mask_of(nodes[nodes[at].parent].images));
    chain.push_back({r, alpha, from});
  }
  std::reverse(chain.begin(), chain.end());
  return chain;
}

bool alperin_chain_composes(const FusionSystem& f, const FMor& phi,
                            const std::vector<AlperinStep>& chain) {
  const auto& pmem = f.subs[phi.dom].members;
  std::vector<std::uint8_t> cur(pmem.size());
  for (std::size_t k = 0; k < pmem.size(); ++k)
    cur[k] = static_cast<std::uint8_t>(pmem[k]);
  for (const AlperinStep& step : chain) {
    if (!has_morphism(f, step.alpha) || step.alpha.dom != step.r_sub ||
        step.alpha.image_mask != f.masks[step.r_sub])
      return false;
    std::uint64_t cur_mask = detail::image_mask_of(cur);
    if (f.sub_of_mask(cur_mask) != step.from_sub) return false;
    if (cur_mask & ~f.masks[step.r_sub]) return false;
    const auto& rmem = f.subs[step.r_sub].members;
    for (auto& v : cur) v = step.alpha.images[member_pos(rmem, v)];
  }
  return cur == phi.images;
}

}  // namespace ff
