#include <algorithm>
#include <optional>
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

int popcnt(std::uint64_t m) { return __builtin_popcountll(m); }

struct Dsu {
  std::vector<int> parent;
  explicit Dsu(int n) : parent(n) {
    for (int i = 0; i < n; ++i) parent[i] = i;
  }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (a > b) std::swap(a, b);  // least index stays the representative
    parent[b] = a;
  }
};

// Per-subgroup data needed by both classify() and is_saturated().
struct Basics {
  std::vector<std::uint64_t> nmask, cmask;  // N_S(P), C_S(P) as masks
  std::vector<std::set<std::vector<std::uint8_t>>> aut_s;  // Aut_S(P) graphs
  std::vector<int> aut_order;                              // |Aut_F(P)|
  std::vector<int> class_rep;
  std::vector<int> elem_rep;
  std::vector<char> fn, fc, fa, receptive;
  std::vector<std::optional<FMor>> ext_witness;  // least iso into P that
                                                 // fails to extend to N_phi
};

Basics compute_basics(const FusionSystem& f) {
  const Group& s = *f.S;
  int n = f.sub_count();
  Basics b;
  b.nmask.resize(n);
  b.cmask.resize(n);
  b.aut_s.resize(n);
  b.aut_order.assign(n, 0);
  b.fn.assign(n, 0);
  b.fc.assign(n, 0);
  b.fa.assign(n, 0);
  b.receptive.assign(n, 1);
  b.ext_witness.resize(n);

  for (int i = 0; i < n; ++i) {
    const auto& mem = f.subs[i].members;
    std::uint64_t nm = 0, cm = 0;
    for (int g = 0; g < s.size(); ++g) {
      bool norm = true, cent = true;
      for (int x : mem) {
        int y = s.conj(g, x);
        if (y != x) cent = false;
        if (!((f.masks[i] >> y) & 1)) {
          norm = false;
          break;
        }
      }
      if (norm) {
        nm |= std::uint64_t{1} << g;
        if (cent) cm |= std::uint64_t{1} << g;
      }
    }
    b.nmask[i] = nm;
    b.cmask[i] = cm;
    for (int g : bits_of(nm)) {
      std::vector<std::uint8_t> t(mem.size());
      for (std::size_t k = 0; k < mem.size(); ++k)
        t[k] = static_cast<std::uint8_t>(s.conj(g, mem[k]));
      b.aut_s[i].insert(std::move(t));
    }
    for (const FMor& m : f.mors[i])
      if (m.image_mask == f.masks[i]) ++b.aut_order[i];
  }

  // F-conjugacy classes of subgroups and of single elements.
  Dsu sub_dsu(n), elem_dsu(s.size());
  for (int i = 0; i < n; ++i) {
    const auto& mem = f.subs[i].members;
    for (const FMor& m : f.mors[i]) {
      sub_dsu.unite(i, m.cod);
      for (std::size_t k = 0; k < mem.size(); ++k)
        elem_dsu.unite(mem[k], m.images[k]);
    }
  }
  b.class_rep.resize(n);
  for (int i = 0; i < n; ++i) b.class_rep[i] = sub_dsu.find(i);
  b.elem_rep.resize(s.size());
  for (int e = 0; e < s.size(); ++e) b.elem_rep[e] = elem_dsu.find(e);

  std::vector<int> max_n(n, 0), max_c(n, 0);
  for (int i = 0; i < n; ++i) {
    int r = b.class_rep[i];
    max_n[r] = std::max(max_n[r], popcnt(b.nmask[i]));
    max_c[r] = std::max(max_c[r], popcnt(b.cmask[i]));
  }
  for (int i = 0; i < n; ++i) {
    int r = b.class_rep[i];
    b.fn[i] = popcnt(b.nmask[i]) == max_n[r];
    b.fc[i] = popcnt(b.cmask[i]) == max_c[r];
    int pp = 1;
    while (b.aut_order[i] % (pp * f.p) == 0) pp *= f.p;
    b.fa[i] = static_cast<int>(b.aut_s[i].size()) == pp;
  }

  // Receptivity sweep: one extension test per morphism.  phi: Q -> P lies in
  // N_phi = {g in N_S(Q) | phi c_g phi^-1 in Aut_S(P)}, and P is receptive
  // only if every such phi extends to a morphism on N_phi.
  for (int q = 0; q < n; ++q) {
    const auto& qmem = f.subs[q].members;
    for (const FMor& m : f.mors[q]) {
      int pi = m.cod;
      const auto& pmem = f.subs[pi].members;
      std::vector<int> preimage(pmem.size());
      for (std::size_t k = 0; k < qmem.size(); ++k)
        preimage[member_pos(pmem, m.images[k])] = qmem[k];
      std::uint64_t nphi = 0;
      std::vector<std::uint8_t> t(pmem.size());
      for (int g : bits_of(b.nmask[q])) {
        for (std::size_t j = 0; j < pmem.size(); ++j)
          t[j] = m.images[member_pos(qmem, s.conj(g, preimage[j]))];
        if (b.aut_s[pi].count(t)) nphi |= std::uint64_t{1} << g;
      }
      int ns = f.sub_of_mask(nphi);
      if (ns < 0) throw std::logic_error("extension domain is not a subgroup");
      const auto& nmem = f.subs[ns].members;
      std::vector<int> qpos(qmem.size());
      for (std::size_t k = 0; k < qmem.size(); ++k)
        qpos[k] = member_pos(nmem, qmem[k]);
      bool extended = false;
      for (const FMor& big : f.mors[ns]) {
        bool match = true;
        for (std::size_t k = 0; k < qmem.size() && match; ++k)
          match = big.images[qpos[k]] == m.images[k];
        if (match) {
          extended = true;
          break;
        }
      }
      if (!extended) {
        b.receptive[pi] = 0;
        if (!b.ext_witness[pi]) b.ext_witness[pi] = m;
      }
    }
  }
  return b;
}

// Every morphism out of Q must extend to one on <P,Q> that maps P onto
// itself (pointwise = false) or fixes P elementwise (pointwise = true).
bool extends_over_all(const FusionSystem& f, int pi, bool pointwise) {
  const auto& pmem = f.subs[pi].members;
  for (int q = 0; q < f.sub_count(); ++q) {
    if (f.mors[q].empty()) continue;
    int pq = join_sub(f, pi, q);
    const auto& qmem = f.subs[q].members;
    const auto& bigmem = f.subs[pq].members;
    std::vector<int> qpos(qmem.size()), ppos(pmem.size());
    for (std::size_t k = 0; k < qmem.size(); ++k)
      qpos[k] = member_pos(bigmem, qmem[k]);
    for (std::size_t k = 0; k < pmem.size(); ++k)
      ppos[k] = member_pos(bigmem, pmem[k]);
    std::set<std::vector<std::uint8_t>> admitted;
    for (const FMor& big : f.mors[pq]) {
      bool keeps = true;
      if (pointwise) {
        for (std::size_t k = 0; k < pmem.size() && keeps; ++k)
          keeps = big.images[ppos[k]] == pmem[k];
      } else {
        std::uint64_t im = 0;
        for (std::size_t k = 0; k < pmem.size(); ++k)
          im |= std::uint64_t{1} << big.images[ppos[k]];
        keeps = im == f.masks[pi];
      }
      if (!keeps) continue;
      std::vector<std::uint8_t> r(qmem.size());
      for (std::size_t k = 0; k < qmem.size(); ++k) r[k] = big.images[qpos[k]];
      admitted.insert(std::move(r));
    }
    for (const FMor& m : f.mors[q])
      if (!admitted.count(m.images)) return false;
  }
  return true;
}

// C_F(Q) = F_{C_S(Q)}(C_S(Q)): every morphism between subgroups of C_S(Q)
// admitting an extension that fixes Q elementwise must be conjugation by an
// element of C_S(Q).
bool centralizer_system_is_inner(const FusionSystem& f, const Basics& b,
                                 int q) {
  const Group& s = *f.S;
  std::uint64_t cm = b.cmask[q];
  const auto& qmem = f.subs[q].members;
  for (int a = 0; a < f.sub_count(); ++a) {
    if (f.masks[a] & ~cm) continue;
    const auto& amem = f.subs[a].members;
    std::set<std::vector<std::uint8_t>> inner;
    for (int g : bits_of(cm)) {
      std::vector<std::uint8_t> t(amem.size());
      for (std::size_t k = 0; k < amem.size(); ++k)
        t[k] = static_cast<std::uint8_t>(s.conj(g, amem[k]));
      inner.insert(std::move(t));
    }
    int pq = join_sub(f, a, q);
    const auto& bigmem = f.subs[pq].members;
    std::vector<int> qpos(qmem.size()), apos(amem.size());
    for (std::size_t k = 0; k < qmem.size(); ++k)
      qpos[k] = member_pos(bigmem, qmem[k]);
    for (std::size_t k = 0; k < amem.size(); ++k)
      apos[k] = member_pos(bigmem, amem[k]);
    std::vector<std::uint8_t> r(amem.size());
    for (const FMor& big : f.mors[pq]) {
      bool fixes = true;
      for (std::size_t k = 0; k < qmem.size() && fixes; ++k)
        fixes = big.images[qpos[k]] == qmem[k];
      if (!fixes) continue;
      for (std::size_t k = 0; k < amem.size(); ++k) r[k] = big.images[apos[k]];
      if (!inner.count(r)) return false;
    }
  }
  return true;
}

bool class_is_radical(const FusionSystem& f, int rep) {
  const Group& s = *f.S;
  Group aut = fusion_aut_group(f, rep);
  const auto& mem = f.subs[rep].members;
  std::vector<int> inn_ids;
  for (int x : mem) {
    Perm perm(mem.size());
    for (std::size_t k = 0; k < mem.size(); ++k)
      perm[k] = static_cast<std::uint16_t>(member_pos(mem, s.conj(x, mem[k])));
    int id = aut.id_of(perm);
    if (id < 0) throw std::logic_error("inner automorphism missing from Aut");
    inn_ids.push_back(id);
  }
  std::sort(inn_ids.begin(), inn_ids.end());
  inn_ids.erase(std::unique(inn_ids.begin(), inn_ids.end()), inn_ids.end());
  Subgroup inn{&aut, std::move(inn_ids)};
  Group out = quotient_group(aut, inn, nullptr);
  return core_p(out, f.p).size() == 1;
}

}  // namespace

Classification classify(const FusionSystem& f) {
  Basics b = compute_basics(f);
  const Group& s = *f.S;
  int n = f.sub_count();

  Classification c;
  c.profile.resize(n);
  c.class_rep = b.class_rep;
  c.element_class_rep = b.elem_rep;
  c.aut_order = b.aut_order;
  c.out_order.resize(n);

  std::vector<std::vector<int>> by_root(n);
  for (int i = 0; i < n; ++i) by_root[b.class_rep[i]].push_back(i);
  for (int i = 0; i < n; ++i)
    if (!by_root[i].empty()) c.classes.push_back(by_root[i]);

  for (int i = 0; i < n; ++i) {
    const auto& mem = f.subs[i].members;
    int zc = 0;
    for (int x : mem) {
      bool central = true;
      for (int y : mem)
        if (s.mul(x, y) != s.mul(y, x)) {
          central = false;
          break;
        }
      if (central) ++zc;
    }
    c.out_order[i] = c.aut_order[i] * zc / static_cast<int>(mem.size());
    c.profile[i].fully_normalized = b.fn[i];
    c.profile[i].fully_centralized = b.fc[i];
    c.profile[i].fully_automized = b.fa[i];
    c.profile[i].receptive = b.receptive[i];
  }

  // Class-invariant flags, decided once per class.
  std::uint64_t zs = b.cmask[f.s_sub()];  // Z(S)
  std::vector<std::uint64_t> elem_class_mask(s.size(), 0);
  for (int e = 0; e < s.size(); ++e)
    elem_class_mask[b.elem_rep[e]] |= std::uint64_t{1} << e;

  for (const auto& cls : c.classes) {
    bool centric = true;
    for (int j : cls) centric = centric && !(b.cmask[j] & ~f.masks[j]);
    bool radical = class_is_radical(f, cls.front());
    bool quasicentric = true;
    if (!centric)
      for (int j : cls)
        if (b.fc[j])
          quasicentric = quasicentric && centralizer_system_is_inner(f, b, j);
    for (int j : cls) {
      c.profile[j].centric = centric;
      c.profile[j].radical = radical;
      c.profile[j].quasicentric = quasicentric;
      c.profile[j].weakly_closed = cls.size() == 1;
    }
  }

  for (int i = 0; i < n; ++i) {
    bool sc = true;
    for (int x : f.subs[i].members)
      sc = sc && !(elem_class_mask[b.elem_rep[x]] & ~f.masks[i]);
    c.profile[i].strongly_closed = sc;
    c.profile[i].normal_in_f = sc && extends_over_all(f, i, false);
    c.profile[i].central_in_f =
        sc && !(f.masks[i] & ~zs) && extends_over_all(f, i, true);
  }
  return c;
}

SaturationReport is_saturated(const FusionSystem& f) {
  Basics b = compute_basics(f);
  for (int i = 0; i < f.sub_count(); ++i) {
    if (b.fn[i] && !(b.fa[i] && b.fc[i]))
      return {false, i, std::nullopt, "sylow"};
    if (b.fc[i] && b.ext_witness[i])
      return {false, i, b.ext_witness[i], "extension"};
  }
  return {};
}

CoreAndCenter o_p_and_center(const FusionSystem& f, const Classification& c) {
  Subgroup core = trivial_subgroup(*f.S);
  Subgroup center = trivial_subgroup(*f.S);
  for (int i = 0; i < f.sub_count(); ++i) {
    if (c.profile[i].normal_in_f) core = join(core, f.subs[i]);
    if (c.profile[i].central_in_f) center = join(center, f.subs[i]);
  }
  int ci = f.sub_of_mask(detail::mask_of_members(core.members));
  int zi = f.sub_of_mask(detail::mask_of_members(center.members));
  if (ci < 0 || !c.profile[ci].normal_in_f)
    throw std::logic_error("join of normal subgroups is not normal");
  if (zi < 0 || !c.profile[zi].central_in_f)
    throw std::logic_error("join of central subgroups is not central");
  if (!core.contains_all(center))
    throw std::logic_error("center escapes the p-core");
  return {std::move(core), std::move(center)};
}

CoreAndCenter o_p_and_center(const FusionSystem& f) {
  return o_p_and_center(f, classify(f));
}

bool is_strongly_closed_subgroup(const FusionSystem& f, int sub) {
  std::uint64_t pm = f.masks[sub];
  for (int i = 0; i < f.sub_count(); ++i) {
    const auto& mem = f.subs[i].members;
    for (const FMor& m : f.mors[i])
      for (std::size_t k = 0; k < mem.size(); ++k)
        if (((pm >> mem[k]) & 1) && !((pm >> m.images[k]) & 1)) return false;
  }
  return true;
}

bool is_central_subgroup(const FusionSystem& f, int sub) {
  const Group& s = *f.S;
  for (int x : f.subs[sub].members)
    for (int y = 0; y < s.size(); ++y)
      if (s.mul(x, y) != s.mul(y, x)) return false;  // not inside Z(S)
  return extends_over_all(f, sub, true);
}

}  // namespace ff
