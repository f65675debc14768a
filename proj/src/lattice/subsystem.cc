#include <algorithm>
#include <cassert>
#include <memory>
#include <stdexcept>
#include <utility>
#include <vector>

#include "ff/lattice.hpp"
#include "src/fusion/internal.hpp"

namespace ff {

namespace {

using detail::join_sub;
using detail::member_pos;

// Parent-element image table of an automorphism of subs[t_sub], indexed by
// parent element id (-1 off the subgroup).
std::vector<int> aut_elem_map(const FusionSystem& f, const FMor& alpha) {
  std::vector<int> map(f.S->size(), -1);
  const std::vector<int>& mem = f.subs[alpha.dom].members;
  for (int k = 0; k < static_cast<int>(mem.size()); ++k)
    map[mem[k]] = alpha.images[k];
  return map;
}

std::vector<int> invert_elem_map(const std::vector<int>& map) {
  std::vector<int> inv(map.size(), -1);
  for (int x = 0; x < static_cast<int>(map.size()); ++x)
    if (map[x] >= 0) inv[map[x]] = x;
  return inv;
}

// map must be defined on every member of subs[dom]; the image must again be
// a subgroup of S.  Returns the transported morphism phi' with
// phi'(map(x)) = map(phi(x)).
FMor transport_mor(const FusionSystem& f, const FMor& phi,
                   const std::vector<int>& map,
                   const std::vector<int>& inv) {
  const std::vector<int>& dom_mem = f.subs[phi.dom].members;
  std::uint64_t new_mask = 0;
  for (int x : dom_mem) new_mask |= std::uint64_t{1} << map[x];
  int nd = f.sub_of_mask(new_mask);
  if (nd < 0) throw std::logic_error("transported domain is not a subgroup");
  const std::vector<int>& new_mem = f.subs[nd].members;
  std::vector<std::uint8_t> images(new_mem.size());
  for (int k = 0; k < static_cast<int>(new_mem.size()); ++k) {
    int x = inv[new_mem[k]];
    int pos = member_pos(dom_mem, x);
    images[k] = static_cast<std::uint8_t>(map[phi.images[pos]]);
  }
  return morphism_from_images(f, nd, std::move(images));
}

bool homset_contains(const std::vector<FMor>& sorted_homs, const FMor& m) {
  return std::binary_search(sorted_homs.begin(), sorted_homs.end(), m);
}

const std::vector<FMor>* mapped_homs(const MappedSubsystem& e, int dom_sub) {
  auto it = std::lower_bound(e.dom_subs.begin(), e.dom_subs.end(), dom_sub);
  if (it == e.dom_subs.end() || *it != dom_sub) return nullptr;
  return &e.mors[it - e.dom_subs.begin()];
}

}  // namespace

// --- embedding -----------------------------------------------------------------

EmbeddedSystem inner_subsystem(const FusionSystem& f, int t_sub) {
  std::vector<int> to_parent;
  auto tg = std::make_shared<Group>(
      subgroup_as_group(f.subs[t_sub], &to_parent));
  EmbeddedSystem e;
  e.sys = fusion_of_p_group(tg, f.p);
  e.t_sub = t_sub;
  e.to_parent = std::move(to_parent);
  return e;
}

EmbeddedSystem subsystem_of_group(const FusionSystem& f, const Group& g,
                                  const Subgroup& s_in_g, const Subgroup& h,
                                  int p) {
  Subgroup t_g = intersect(s_in_g, h);
  int ppart = 1;
  for (int n = h.size(); n % p == 0; n /= p) ppart *= p;
  if (t_g.size() != ppart)
    throw std::invalid_argument("S cap H is not a Sylow p-subgroup of H");

  std::vector<int> h_to_g;
  auto hg = std::make_shared<Group>(subgroup_as_group(h, &h_to_g));
  std::vector<int> t_in_h;
  for (int k = 0; k < hg->size(); ++k)
    if (t_g.contains_id(h_to_g[k])) t_in_h.push_back(k);
  Subgroup t_sub_h{hg.get(), std::move(t_in_h)};

  EmbeddedSystem e;
  e.sys = fusion_of_group(*hg, p, t_sub_h);
  e.to_parent.resize(e.sys.S->size());
  std::uint64_t t_mask = 0;
  for (int k = 0; k < e.sys.S->size(); ++k) {
    int id = f.S->id_of(e.sys.S->elems[k]);
    if (id < 0) throw std::logic_error("subsystem Sylow escapes the parent S");
    e.to_parent[k] = id;
    t_mask |= std::uint64_t{1} << id;
  }
  e.t_sub = f.sub_of_mask(t_mask);
  return e;
}

EmbeddedSystem compose_embedding(const FusionSystem& f,
                                 const EmbeddedSystem& outer,
                                 const EmbeddedSystem& inner) {
  EmbeddedSystem e;
  e.sys = inner.sys;
  e.to_parent.resize(inner.to_parent.size());
  std::uint64_t mask = 0;
  for (int k = 0; k < static_cast<int>(inner.to_parent.size()); ++k) {
    e.to_parent[k] = outer.to_parent[inner.to_parent[k]];
    mask |= std::uint64_t{1} << e.to_parent[k];
  }
  e.t_sub = f.sub_of_mask(mask);
  if (e.t_sub < 0) throw std::logic_error("rebased subgroup not in the lattice");
  return e;
}

MappedSubsystem map_into_parent(const FusionSystem& f,
                                const EmbeddedSystem& e) {
  std::vector<std::pair<int, std::vector<FMor>>> by_sub;
  for (int i = 0; i < e.sys.sub_count(); ++i) {
    const std::vector<int>& mem = e.sys.subs[i].members;
    std::uint64_t mask = 0;
    for (int x : mem) mask |= std::uint64_t{1} << e.to_parent[x];
    int pd = f.sub_of_mask(mask);
    if (pd < 0) throw std::logic_error("subsystem subgroup not in the lattice");
    const std::vector<int>& pmem = f.subs[pd].members;
    // position of each parent member back in e's coordinates
    std::vector<int> back(pmem.size());
    for (int k = 0; k < static_cast<int>(pmem.size()); ++k) {
      int pos = -1;
      for (int j = 0; j < static_cast<int>(mem.size()); ++j)
        if (e.to_parent[mem[j]] == pmem[k]) { pos = j; break; }
      back[k] = pos;
    }
    std::vector<FMor> lifted;
    lifted.reserve(e.sys.mors[i].size());
    for (const FMor& m : e.sys.mors[i]) {
      std::vector<std::uint8_t> images(pmem.size());
      for (int k = 0; k < static_cast<int>(pmem.size()); ++k)
        images[k] = static_cast<std::uint8_t>(e.to_parent[m.images[back[k]]]);
      lifted.push_back(morphism_from_images(f, pd, std::move(images)));
    }
    std::sort(lifted.begin(), lifted.end());
    by_sub.emplace_back(pd, std::move(lifted));
  }
  std::sort(by_sub.begin(), by_sub.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  MappedSubsystem out;
  for (auto& [sub, homs] : by_sub) {
    out.dom_subs.push_back(sub);
    out.mors.push_back(std::move(homs));
  }
  return out;
}

// --- normality -----------------------------------------------------------------

SubsystemNormality normality_of(const FusionSystem& f,
                                const EmbeddedSystem& e) {
  SubsystemNormality r;
  const int t = e.t_sub;
  const std::uint64_t t_mask = f.masks[t];
  r.strongly_closed = is_strongly_closed_subgroup(f, t);
  if (!r.strongly_closed) return r;

  MappedSubsystem mapped = map_into_parent(f, e);
  std::vector<FMor> auts_t = aut_morphisms(f, t);

  // Conjugating every morphism of E by every alpha in Aut_F(T) must land
  // back inside E.
  r.invariant = true;
  for (const FMor& alpha : auts_t) {
    std::vector<int> amap = aut_elem_map(f, alpha);
    std::vector<int> ainv = invert_elem_map(amap);
    for (std::size_t k = 0; k < mapped.dom_subs.size() && r.invariant; ++k) {
      for (const FMor& phi : mapped.mors[k]) {
        FMor moved = transport_mor(f, phi, amap, ainv);
        const std::vector<FMor>* homs = mapped_homs(mapped, moved.dom);
        if (!homs || !homset_contains(*homs, moved)) {
          r.invariant = false;
          break;
        }
      }
    }
    if (!r.invariant) break;
  }

  // Every F-morphism P -> T with P <= T must split as alpha o phi0 with
  // phi0 in E; equivalently some alpha^-1 o phi lies in E.
  r.frattini = true;
  for (int d = 0; d < f.sub_count() && r.frattini; ++d) {
    if ((f.masks[d] & ~t_mask) != 0) continue;
    const std::vector<FMor>* homs_d = mapped_homs(mapped, d);
    for (const FMor& phi : f.mors[d]) {
      if ((phi.image_mask & ~t_mask) != 0) continue;
      bool split = false;
      for (const FMor& alpha : auts_t) {
        std::vector<int> ainv = invert_elem_map(aut_elem_map(f, alpha));
        std::vector<std::uint8_t> images(phi.images.size());
        for (std::size_t k = 0; k < phi.images.size(); ++k)
          images[k] = static_cast<std::uint8_t>(ainv[phi.images[k]]);
        FMor candidate = morphism_from_images(f, d, std::move(images));
        if (homs_d && homset_contains(*homs_d, candidate)) {
          split = true;
          break;
        }
      }
      if (!split) {
        r.frattini = false;
        break;
      }
    }
  }

  // Each alpha in Aut_E(T) must extend to a morphism of F on T C_S(T) whose
  // displacement x -> beta(x) x^-1 on C_S(T) stays inside Z(T).
  Subgroup cst = centralizer_sub(*f.S, f.subs[t]);
  int cst_sub = f.sub_of_mask(detail::mask_of_members(cst.members));
  int tc = join_sub(f, t, cst_sub);
  std::uint64_t zt_mask = 0;
  for (int z : center_of_subgroup(*f.S, f.subs[t]).members)
    zt_mask |= std::uint64_t{1} << z;
  const std::vector<FMor>* e_auts = mapped_homs(mapped, t);
  r.extension = true;
  if (e_auts) {
    const std::vector<int>& t_mem = f.subs[t].members;
    const std::vector<int>& tc_mem = f.subs[tc].members;
    for (const FMor& alpha : *e_auts) {
      if (alpha.image_mask != t_mask) continue;
      bool extends = false;
      for (const FMor& beta : f.mors[tc]) {
        bool good = true;
        for (std::size_t k = 0; k < t_mem.size() && good; ++k) {
          int pos = member_pos(tc_mem, t_mem[k]);
          good = beta.images[pos] == alpha.images[k];
        }
        for (std::size_t k = 0; k < cst.members.size() && good; ++k) {
          int x = cst.members[k];
          int moved = beta.images[member_pos(tc_mem, x)];
          int disp = f.S->mul(moved, f.S->inv(x));
          good = ((zt_mask >> disp) & 1) != 0;
        }
        if (good) {
          extends = true;
          break;
        }
      }
      if (!extends) {
        r.extension = false;
        break;
      }
    }
  }
  return r;
}

// --- automorphisms of F ----------------------------------------------------------

bool preserves_fusion(const FusionSystem& f, const Perm& beta) {
  std::vector<int> map(beta.begin(), beta.end());
  std::vector<int> inv = invert_elem_map(map);
  std::vector<int> image_sub(f.sub_count(), -1);
  for (int i = 0; i < f.sub_count(); ++i) {
    std::uint64_t mask = 0;
    for (int x : f.subs[i].members) mask |= std::uint64_t{1} << beta[x];
    image_sub[i] = f.sub_of_mask(mask);
    if (image_sub[i] < 0) return false;
    if (f.mors[i].size() != f.mors[image_sub[i]].size()) return false;
  }
  for (int i = 0; i < f.sub_count(); ++i) {
    for (const FMor& m : f.mors[i]) {
      FMor moved = transport_mor(f, m, map, inv);
      if (!homset_contains(f.mors[moved.dom], moved)) return false;
    }
  }
  return true;
}

FusionAutData aut_of_fusion(const FusionSystem& f) {
  AutGroup ag = aut_group(*f.S);
  FusionAutData out;
  for (const Perm& beta : ag.perm.elems)
    if (preserves_fusion(f, beta)) out.auts.push_back(beta);

  std::vector<Perm> inner;
  for (const FMor& alpha : aut_morphisms(f, f.s_sub())) {
    Perm q(f.S->size());
    for (int k = 0; k < f.S->size(); ++k)
      q[k] = static_cast<std::uint16_t>(alpha.images[k]);
    inner.push_back(q);
  }
  std::sort(inner.begin(), inner.end());
  out.aut_f_s = static_cast<int>(inner.size());
  for (const Perm& q : inner)
    if (!std::binary_search(out.auts.begin(), out.auts.end(), q))
      throw std::logic_error("Aut_F(S) escaped the automorphism scan");
  if (out.auts.size() % inner.size() != 0)
    throw std::logic_error("|Aut(F)| is not a multiple of |Aut_F(S)|");
  return out;
}

bool is_characteristic(const FusionSystem& f, const FusionAutData& auts,
                       const EmbeddedSystem& e) {
  if (!normality_of(f, e).normal()) return false;
  MappedSubsystem mapped = map_into_parent(f, e);
  const std::uint64_t t_mask = f.masks[e.t_sub];
  for (const Perm& beta : auts.auts) {
    std::uint64_t moved_mask = 0;
    for (int x : f.subs[e.t_sub].members)
      moved_mask |= std::uint64_t{1} << beta[x];
    if (moved_mask != t_mask) return false;
    std::vector<int> map(beta.begin(), beta.end());
    std::vector<int> inv = invert_elem_map(map);
    for (std::size_t k = 0; k < mapped.dom_subs.size(); ++k)
      for (const FMor& phi : mapped.mors[k]) {
        FMor moved = transport_mor(f, phi, map, inv);
        const std::vector<FMor>* homs = mapped_homs(mapped, moved.dom);
        if (!homs || !homset_contains(*homs, moved)) return false;
      }
  }
  return true;
}

// --- centralizer and center -------------------------------------------------------

namespace {

// Does every morphism of E extend to a morphism of F defined on the join
// with subs[x_sub] that fixes subs[x_sub] pointwise?
bool extends_with_identity_on(const FusionSystem& f,
                              const MappedSubsystem& mapped, int x_sub) {
  const std::vector<int>& x_mem = f.subs[x_sub].members;
  for (std::size_t k = 0; k < mapped.dom_subs.size(); ++k) {
    int d = mapped.dom_subs[k];
    int dx = join_sub(f, d, x_sub);
    const std::vector<int>& dx_mem = f.subs[dx].members;
    const std::vector<int>& d_mem = f.subs[d].members;
    for (const FMor& phi : mapped.mors[k]) {
      bool found = false;
      for (const FMor& ext : f.mors[dx]) {
        bool good = true;
        for (std::size_t j = 0; j < d_mem.size() && good; ++j)
          good = ext.images[member_pos(dx_mem, d_mem[j])] == phi.images[j];
        for (std::size_t j = 0; j < x_mem.size() && good; ++j)
          good = ext.images[member_pos(dx_mem, x_mem[j])] == x_mem[j];
        if (good) {
          found = true;
          break;
        }
      }
      if (!found) return false;
    }
  }
  return true;
}

}  // namespace

Subgroup subsystem_centralizer(const FusionSystem& f,
                               const EmbeddedSystem& e) {
  MappedSubsystem mapped = map_into_parent(f, e);
  Subgroup cst = centralizer_sub(*f.S, f.subs[e.t_sub]);
  std::uint64_t cst_mask = detail::mask_of_members(cst.members);

  std::vector<int> passing;
  for (int i = 0; i < f.sub_count(); ++i)
    if ((f.masks[i] & ~cst_mask) == 0 &&
        extends_with_identity_on(f, mapped, i))
      passing.push_back(i);
  if (passing.empty())  // even the trivial subgroup failed
    throw std::invalid_argument("subsystem is not contained in the parent");

  // The passing set must be join-closed, so its join is the unique maximum.
  int best = passing.front();
  for (int i : passing) best = join_sub(f, best, i);
  if (std::find(passing.begin(), passing.end(), best) == passing.end())
    throw std::logic_error("centralizer candidates are not join-closed");
  return f.subs[best];
}

bool is_centric_subsystem(const FusionSystem& f, const EmbeddedSystem& e) {
  Subgroup c = subsystem_centralizer(f, e);
  return (detail::mask_of_members(c.members) & ~f.masks[e.t_sub]) == 0;
}

Subgroup subsystem_center(const FusionSystem& f, const EmbeddedSystem& e) {
  CoreAndCenter cc = o_p_and_center(e.sys);
  std::vector<int> members;
  for (int x : cc.center.members) members.push_back(e.to_parent[x]);
  std::sort(members.begin(), members.end());
  return Subgroup{f.S.get(), std::move(members)};
}

}  // namespace ff
