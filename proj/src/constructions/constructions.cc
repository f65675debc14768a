#include "ff/constructions.hpp"

#include <algorithm>
#include <array>
#include <set>
#include <stdexcept>
#include <vector>

#include "ff/caps.hpp"
#include "src/fusion/internal.hpp"

namespace ff {

namespace {

using detail::bits_of;
using detail::image_mask_of;
using detail::join_sub;
using detail::mask_of_members;
using detail::member_pos;

void require_group_isomorphism(const Group& a, const Group& b,
                               const std::vector<int>& map) {
  if (static_cast<int>(map.size()) != a.size() || b.size() != a.size())
    throw std::invalid_argument("element map does not match the group sizes");
  std::uint64_t hit = 0;
  for (int y : map) {
    if (y < 0 || y >= b.size() || ((hit >> y) & 1))
      throw std::invalid_argument("element map is not a bijection");
    hit |= std::uint64_t{1} << y;
  }
  for (int x = 0; x < a.size(); ++x)
    for (int y = 0; y < a.size(); ++y)
      if (b.mul(map[x], map[y]) != map[a.mul(x, y)])
        throw std::invalid_argument("element map is not a homomorphism");
}

}  // namespace

// --- transport and isomorphism ---------------------------------------------------

FusionSystem transport(const FusionSystem& f, std::shared_ptr<const Group> t,
                       const std::vector<int>& alpha) {
  require_group_isomorphism(*f.S, *t, alpha);
  FusionSystem out = fusion_skeleton(std::move(t), f.p);
  std::vector<std::set<std::vector<std::uint8_t>>> graphs(out.sub_count());
  for (int i = 0; i < f.sub_count(); ++i) {
    const auto& mem = f.subs[i].members;
    std::vector<int> tmem;
    tmem.reserve(mem.size());
    for (int x : mem) tmem.push_back(alpha[x]);
    std::sort(tmem.begin(), tmem.end());
    int j = out.sub_of_mask(mask_of_members(tmem));
    if (j < 0) throw std::logic_error("translated subgroup missing");
    for (const FMor& m : f.mors[i]) {
      std::vector<std::uint8_t> img(mem.size());
      for (std::size_t k = 0; k < mem.size(); ++k)
        img[member_pos(tmem, alpha[mem[k]])] =
            static_cast<std::uint8_t>(alpha[m.images[k]]);
      graphs[j].insert(std::move(img));
    }
  }
  for (int i = 0; i < out.sub_count(); ++i)
    detail::seal_homset(out, i, graphs[i], &out.mors[i]);
  return out;
}

bool fusion_equal(const FusionSystem& a, const FusionSystem& b) {
  return a.p == b.p && a.S->elems == b.S->elems && a.mors == b.mors;
}

bool equal_under(const FusionSystem& a, const FusionSystem& b,
                 const std::vector<int>& member_map) {
  if (a.p != b.p) return false;
  require_group_isomorphism(*a.S, *b.S, member_map);
  if (a.sub_count() != b.sub_count()) return false;
  for (int i = 0; i < a.sub_count(); ++i) {
    const auto& mem = a.subs[i].members;
    std::vector<int> tmem;
    tmem.reserve(mem.size());
    for (int x : mem) tmem.push_back(member_map[x]);
    std::sort(tmem.begin(), tmem.end());
    int j = b.sub_of_mask(mask_of_members(tmem));
    if (j < 0 || a.mors[i].size() != b.mors[j].size()) return false;
    FMor probe;
    probe.dom = static_cast<std::uint16_t>(j);
    probe.images.resize(mem.size());
    for (const FMor& m : a.mors[i]) {
      for (std::size_t k = 0; k < mem.size(); ++k)
        probe.images[member_pos(tmem, member_map[mem[k]])] =
            static_cast<std::uint8_t>(member_map[m.images[k]]);
      if (!std::binary_search(b.mors[j].begin(), b.mors[j].end(), probe))
        return false;
    }
  }
  return true;
}

namespace {

std::vector<std::array<int, 3>> homset_profile(const FusionSystem& f) {
  std::vector<std::array<int, 3>> v;
  v.reserve(f.sub_count());
  for (int i = 0; i < f.sub_count(); ++i) {
    int aut = 0;
    for (const FMor& m : f.mors[i])
      if (m.image_mask == f.masks[i]) ++aut;
    v.push_back({f.subs[i].size(), static_cast<int>(f.mors[i].size()), aut});
  }
  std::sort(v.begin(), v.end());
  return v;
}

struct IsoSearch {
  const FusionSystem& a;
  const FusionSystem& b;
  std::vector<int> agens;
  std::vector<std::array<int, 2>> aprof, bprof;  // (order, |C_S(x)|)
  std::vector<int> amap;
  std::vector<char> used;
  std::vector<int> span;

  bool extend(int x, int y) {
    if (amap[x] >= 0) return amap[x] == y;
    if (used[y]) return false;
    amap[x] = y;
    used[y] = 1;
    span.push_back(x);
    for (std::size_t i = 0; i < span.size(); ++i)
      for (std::size_t j = 0; j < span.size(); ++j) {
        int prod = a.S->mul(span[i], span[j]);
        int want = b.S->mul(amap[span[i]], amap[span[j]]);
        if (amap[prod] < 0) {
          if (used[want]) return false;
          amap[prod] = want;
          used[want] = 1;
          span.push_back(prod);
        } else if (amap[prod] != want) {
          return false;
        }
      }
    return true;
  }

  std::optional<std::vector<int>> dfs(std::size_t k) {
    if (k == agens.size()) {
      if (static_cast<int>(span.size()) != a.S->size()) return std::nullopt;
      if (equal_under(a, b, amap)) return amap;
      return std::nullopt;
    }
    int g = agens[k];
    if (amap[g] >= 0) return dfs(k + 1);
    std::vector<int> save_map = amap;
    std::vector<char> save_used = used;
    std::size_t save_span = span.size();
    for (int c = 0; c < b.S->size(); ++c) {
      if (used[c] || aprof[g] != bprof[c]) continue;
      if (extend(g, c)) {
        if (auto hit = dfs(k + 1)) return hit;
      }
      amap = save_map;
      used = save_used;
      span.resize(save_span);
    }
    return std::nullopt;
  }
};

}  // namespace

std::optional<std::vector<int>> fusion_isomorphism(const FusionSystem& a,
                                                   const FusionSystem& b) {
  if (a.p != b.p || a.S->size() != b.S->size() ||
      a.sub_count() != b.sub_count() ||
      a.total_morphisms() != b.total_morphisms())
    return std::nullopt;
  if (homset_profile(a) != homset_profile(b)) return std::nullopt;

  auto element_profile = [](const Group& g) {
    std::vector<std::array<int, 2>> v(g.size());
    for (int x = 0; x < g.size(); ++x) {
      int cent = 0;
      for (int y = 0; y < g.size(); ++y)
        if (g.mul(x, y) == g.mul(y, x)) ++cent;
      v[x] = {g.order_of(x), cent};
    }
    return v;
  };

  IsoSearch search{a, b, {}, element_profile(*a.S), element_profile(*b.S),
                   std::vector<int>(a.S->size(), -1),
                   std::vector<char>(b.S->size(), 0), {}};
  for (const Perm& g : a.S->gens) {
    int id = a.S->id_of(g);
    if (id > 0) search.agens.push_back(id);
  }
  if (search.agens.empty())
    for (int x = 1; x < a.S->size(); ++x) search.agens.push_back(x);
  search.amap[0] = 0;
  search.used[0] = 1;
  search.span.push_back(0);
  return search.dfs(0);
}

// --- quotients --------------------------------------------------------------------

FusionSystem quotient_fusion(const FusionSystem& f, int q_sub,
                             std::vector<int>* to_quotient) {
  if (!is_strongly_closed_subgroup(f, q_sub))
    throw std::invalid_argument("quotient subgroup is not strongly closed");
  std::vector<int> toq;
  auto sq = std::make_shared<Group>(
      quotient_group(*f.S, f.subs[q_sub], &toq));
  FusionSystem out = fusion_skeleton(sq, f.p);

  std::vector<std::set<std::vector<std::uint8_t>>> graphs(out.sub_count());
  std::uint64_t qmask = f.masks[q_sub];
  for (int i = 0; i < f.sub_count(); ++i) {
    if (qmask & ~f.masks[i]) continue;  // only subgroups containing Q project
    const auto& mem = f.subs[i].members;
    std::vector<int> pmem;  // projected members, sorted unique
    for (int x : mem) pmem.push_back(toq[x]);
    std::sort(pmem.begin(), pmem.end());
    pmem.erase(std::unique(pmem.begin(), pmem.end()), pmem.end());
    int j = out.sub_of_mask(mask_of_members(pmem));
    if (j < 0) throw std::logic_error("projected subgroup missing");
    for (const FMor& m : f.mors[i]) {
      std::vector<int> img(pmem.size(), -1);
      for (std::size_t k = 0; k < mem.size(); ++k) {
        int at = member_pos(pmem, toq[mem[k]]);
        int val = toq[m.images[k]];
        if (img[at] < 0)
          img[at] = val;
        else if (img[at] != val)
          throw std::logic_error("quotient morphism is ill-defined");
      }
      std::vector<std::uint8_t> g(img.begin(), img.end());
      graphs[j].insert(std::move(g));
    }
  }
  for (int i = 0; i < out.sub_count(); ++i)
    detail::seal_homset(out, i, graphs[i], &out.mors[i]);
  if (to_quotient) *to_quotient = std::move(toq);
  return out;
}

// --- central extension of a subsystem ---------------------------------------------

EmbeddedSystem z_extend(const FusionSystem& f, const EmbeddedSystem& e,
                        int z_sub) {
  if (!is_central_subgroup(f, z_sub))
    throw std::invalid_argument("extension subgroup is not central");
  int zt_idx = join_sub(f, z_sub, e.t_sub);
  std::vector<int> to_parent;
  auto ztg =
      std::make_shared<Group>(subgroup_as_group(f.subs[zt_idx], &to_parent));
  FusionSystem out = fusion_skeleton(std::move(ztg), f.p);

  std::vector<int> t_local(f.S->size(), -1);  // parent id -> id in e.sys
  for (std::size_t k = 0; k < e.to_parent.size(); ++k)
    t_local[e.to_parent[k]] = static_cast<int>(k);
  const auto& ztmem = f.subs[zt_idx].members;
  std::uint64_t zt_mask = f.masks[zt_idx];
  std::uint64_t t_mask = f.masks[e.t_sub];

  const auto& zmem = f.subs[z_sub].members;
  std::vector<std::set<std::vector<std::uint8_t>>> graphs(out.sub_count());
  for (int i = 0; i < f.sub_count(); ++i) {
    if (f.masks[i] & ~zt_mask) continue;
    const auto& mem = f.subs[i].members;
    std::vector<int> local_mem;
    local_mem.reserve(mem.size());
    for (int x : mem) local_mem.push_back(member_pos(ztmem, x));
    int out_dom = out.sub_of_mask(mask_of_members(local_mem));
    if (out_dom < 0) throw std::logic_error("subgroup missing from lattice");

    // Each morphism on P extends uniquely to PZ with the identity on Z
    // (Z is central, so morphisms fix P's central part and pz -> phi(p)z is
    // well defined).  The membership test in E happens on the T-part of PZ,
    // which can be strictly larger than P's own T-part.
    int pz_idx = join_sub(f, i, z_sub);
    const auto& pzmem = f.subs[pz_idx].members;
    std::vector<std::pair<int, int>> split;  // (position in mem, z id)
    split.reserve(pzmem.size());
    for (int w : pzmem) {
      int p_pos = -1, z_id = -1;
      for (int z : zmem) {
        int cand = f.S->mul(w, f.S->inv(z));
        int pos = member_pos(mem, cand);
        if (pos >= 0) {
          p_pos = pos;
          z_id = z;
          break;
        }
      }
      if (p_pos < 0) throw std::logic_error("PZ element has no PZ splitting");
      split.emplace_back(p_pos, z_id);
    }
    // PZ intersect T, in parent ids and as a subgroup of E.
    std::vector<int> cut, cut_local;
    for (int w : pzmem)
      if ((t_mask >> w) & 1) {
        cut.push_back(w);
        cut_local.push_back(t_local[w]);
      }
    std::sort(cut_local.begin(), cut_local.end());
    int c_idx = e.sys.sub_of_mask(mask_of_members(cut_local));
    if (c_idx < 0) throw std::logic_error("intersection missing from E");

    FMor probe;
    probe.dom = static_cast<std::uint16_t>(c_idx);
    probe.images.resize(cut.size());
    for (const FMor& m : f.mors[i]) {
      if (m.image_mask & ~zt_mask) continue;
      for (int x : mem)
        if ((f.masks[z_sub] >> x) & 1 &&
            m.images[member_pos(mem, x)] != x)
          throw std::logic_error("morphism moves a central element");
      // The extension's restriction to PZ's T-part must land in T and
      // belong to E.
      bool in_t = true;
      for (std::size_t k = 0; k < cut.size() && in_t; ++k) {
        auto [p_pos, z_id] = split[member_pos(pzmem, cut[k])];
        int y = f.S->mul(m.images[p_pos], z_id);
        in_t = (t_mask >> y) & 1;
        if (in_t)
          probe.images[member_pos(cut_local, t_local[cut[k]])] =
              static_cast<std::uint8_t>(t_local[y]);
      }
      if (!in_t) continue;
      if (!std::binary_search(e.sys.mors[c_idx].begin(),
                              e.sys.mors[c_idx].end(), probe))
        continue;
      std::vector<std::uint8_t> img(mem.size());
      for (std::size_t k = 0; k < mem.size(); ++k)
        img[k] = static_cast<std::uint8_t>(member_pos(ztmem, m.images[k]));
      graphs[out_dom].insert(std::move(img));
    }
  }
  for (int i = 0; i < out.sub_count(); ++i)
    detail::seal_homset(out, i, graphs[i], &out.mors[i]);
  if (!is_saturated(out).saturated)
    throw std::logic_error("central extension failed saturation");
  return {std::move(out), zt_idx, std::move(to_parent)};
}

// --- focal and hyperfocal subgroups ------------------------------------------------

FocalData hyperfocal_and_focal(const FusionSystem& f) {
  const Group& s = *f.S;
  std::set<int> foc_gens, hyp_gens;
  for (int i = 0; i < f.sub_count(); ++i) {
    const auto& mem = f.subs[i].members;
    for (const FMor& m : f.mors[i])
      for (std::size_t k = 0; k < mem.size(); ++k)
        foc_gens.insert(s.mul(s.inv(mem[k]), m.images[k]));
    Group aut = fusion_aut_group(f, i);
    Subgroup op = residual_p(aut, whole_group(aut), f.p);
    for (int a : op.members) {
      const Perm& pi = aut[a];
      for (std::size_t k = 0; k < mem.size(); ++k)
        hyp_gens.insert(s.mul(s.inv(mem[k]), mem[pi[k]]));
    }
  }
  FocalData out{
      subgroup_closure(s, {hyp_gens.begin(), hyp_gens.end()}),
      subgroup_closure(s, {foc_gens.begin(), foc_gens.end()})};
  if (!out.focal.contains_all(out.hyperfocal))
    throw std::logic_error("hyperfocal subgroup escapes the focal subgroup");
  return out;
}

// --- O^p and O^{p'} -----------------------------------------------------------------

namespace {

struct SeedPlan {
  std::shared_ptr<const Group> t_group;
  int t_idx = -1;
  std::vector<int> to_parent;
  std::vector<AutSeed> seeds;             // all required automorphisms
  std::vector<std::vector<int>> families;  // seed indices per F-class
  // Required Aut-graphs per local subgroup index, as probes.
  std::vector<std::pair<int, std::vector<std::uint8_t>>> required;
};

// Collects O^p (p_index) or O^{p'} (otherwise) of Aut_F(P) for every P
// inside T, translated to T-local element ids.
SeedPlan plan_seeds(const FusionSystem& f, bool p_index) {
  SeedPlan plan;
  std::uint64_t t_mask;
  if (p_index) {
    FocalData fd = hyperfocal_and_focal(f);
    t_mask = mask_of_members(fd.hyperfocal.members);
    plan.t_idx = f.sub_of_mask(t_mask);
    if (plan.t_idx < 0)
      throw std::logic_error("hyperfocal subgroup missing from lattice");
  } else {
    plan.t_idx = f.s_sub();
    t_mask = f.masks[plan.t_idx];
  }
  plan.t_group = std::make_shared<Group>(
      subgroup_as_group(f.subs[plan.t_idx], &plan.to_parent));
  const auto& tmem = f.subs[plan.t_idx].members;

  // The lattice of the local group, for translating required graphs.
  FusionSystem shape = fusion_skeleton(plan.t_group, f.p);

  Classification c = classify(f);
  std::vector<std::vector<int>> family_of_rep(f.sub_count());
  for (int i = 0; i < f.sub_count(); ++i) {
    if (f.masks[i] & ~t_mask) continue;
    const auto& mem = f.subs[i].members;
    Group aut = fusion_aut_group(f, i);
    Subgroup req = p_index ? residual_p(aut, whole_group(aut), f.p)
                           : residual_p_prime(aut, whole_group(aut), f.p);
    std::vector<int> local_mem;
    local_mem.reserve(mem.size());
    for (int x : mem) local_mem.push_back(member_pos(tmem, x));
    int local_idx = shape.sub_of_mask(mask_of_members(local_mem));
    if (local_idx < 0) throw std::logic_error("subgroup missing from lattice");
    for (int a : req.members) {
      const Perm& pi = aut[a];
      std::vector<std::uint8_t> images(mem.size());
      for (std::size_t k = 0; k < mem.size(); ++k)
        images[k] = static_cast<std::uint8_t>(member_pos(tmem, mem[pi[k]]));
      plan.required.emplace_back(local_idx, images);
      if (a == 0) continue;  // the identity is never needed as a seed
      family_of_rep[c.class_rep[i]].push_back(
          static_cast<int>(plan.seeds.size()));
      plan.seeds.push_back({local_mem, std::move(images)});
    }
  }
  for (auto& fam : family_of_rep)
    if (!fam.empty()) plan.families.push_back(std::move(fam));
  return plan;
}

FusionSystem close_seeds(const SeedPlan& plan, int p,
                         const std::vector<int>& seed_ids) {
  std::vector<AutSeed> chosen;
  chosen.reserve(seed_ids.size());
  for (int id : seed_ids) chosen.push_back(plan.seeds[id]);
  return generate_fusion(plan.t_group, p, chosen);
}

bool contains_required(const SeedPlan& plan, const FusionSystem& sys) {
  FMor probe;
  for (const auto& [idx, images] : plan.required) {
    probe.dom = static_cast<std::uint16_t>(idx);
    probe.images = images;
    if (!std::binary_search(sys.mors[idx].begin(), sys.mors[idx].end(), probe))
      return false;
  }
  return true;
}

// Every morphism of sub must also belong to super (same skeleton).
bool subsystem_of(const FusionSystem& sub, const FusionSystem& super) {
  for (int i = 0; i < sub.sub_count(); ++i)
    for (const FMor& m : sub.mors[i])
      if (!std::binary_search(super.mors[i].begin(), super.mors[i].end(), m))
        return false;
  return true;
}

EmbeddedSystem o_residual(const FusionSystem& f, bool p_index,
                          bool exhaustive) {
  SeedPlan plan = plan_seeds(f, p_index);
  std::vector<int> all_ids(plan.seeds.size());
  for (std::size_t i = 0; i < all_ids.size(); ++i)
    all_ids[i] = static_cast<int>(i);
  FusionSystem sys = close_seeds(plan, f.p, all_ids);

  if (!contains_required(plan, sys))
    throw std::logic_error("closure lost a required automorphism");
  // The closure must sit inside F (translated back to parent ids).
  const auto& tmem = f.subs[plan.t_idx].members;
  for (int i = 0; i < sys.sub_count(); ++i) {
    const auto& mem = sys.subs[i].members;
    std::vector<int> parent_mem;
    parent_mem.reserve(mem.size());
    for (int x : mem) parent_mem.push_back(tmem[x]);
    int fp = f.sub_of_mask(mask_of_members(parent_mem));
    if (fp < 0) throw std::logic_error("subgroup missing from lattice");
    FMor probe;
    probe.dom = static_cast<std::uint16_t>(fp);
    probe.images.resize(mem.size());
    for (const FMor& m : sys.mors[i]) {
      for (std::size_t k = 0; k < mem.size(); ++k)
        probe.images[k] = static_cast<std::uint8_t>(tmem[m.images[k]]);
      if (!std::binary_search(f.mors[fp].begin(), f.mors[fp].end(), probe))
        throw std::logic_error("closure escaped the enclosing system");
    }
  }
  if (!is_saturated(sys).saturated)
    throw std::logic_error("residual closure failed saturation");

  // Deletion certificate: dropping any one seed class either breaks the
  // required containment or leaves the closure unchanged.
  for (std::size_t skip = 0; skip < plan.families.size(); ++skip) {
    std::vector<int> ids;
    for (std::size_t j = 0; j < plan.families.size(); ++j)
      if (j != skip)
        ids.insert(ids.end(), plan.families[j].begin(),
                   plan.families[j].end());
    FusionSystem candidate = close_seeds(plan, f.p, ids);
    if (contains_required(plan, candidate) && !fusion_equal(candidate, sys))
      throw std::logic_error("deletion certificate found a smaller closure");
  }
  if (exhaustive) {
    std::size_t k = plan.families.size();
    if (k > 20 || (1u << k) > static_cast<unsigned>(caps().budget))
      throw CapError("too many seed classes for exhaustive minimality");
    for (std::uint32_t pick = 0; pick < (1u << k); ++pick) {
      std::vector<int> ids;
      for (std::size_t j = 0; j < k; ++j)
        if ((pick >> j) & 1)
          ids.insert(ids.end(), plan.families[j].begin(),
                     plan.families[j].end());
      FusionSystem candidate = close_seeds(plan, f.p, ids);
      if (contains_required(plan, candidate) && !subsystem_of(sys, candidate))
        throw std::logic_error("exhaustive check found a smaller closure");
    }
  }
  return {std::move(sys), plan.t_idx, std::move(plan.to_parent)};
}

}  // namespace

EmbeddedSystem o_p_index_sub(const FusionSystem& f, bool exhaustive) {
  return o_residual(f, true, exhaustive);
}

EmbeddedSystem o_p_prime_sub(const FusionSystem& f, bool exhaustive) {
  return o_residual(f, false, exhaustive);
}

// --- reduction ---------------------------------------------------------------------

bool is_reduced(const FusionSystem& f) {
  CoreAndCenter cc = o_p_and_center(f);
  if (cc.core.size() > 1) return false;
  FocalData fd = hyperfocal_and_focal(f);
  if (fd.hyperfocal.size() != f.S->size()) return false;
  if (!fusion_equal(o_p_index_sub(f).sys, f)) return false;
  return fusion_equal(o_p_prime_sub(f).sys, f);
}

FusionSystem reduction(const FusionSystem& f) {
  CoreAndCenter cc = o_p_and_center(f);
  int qi = f.sub_of_mask(mask_of_members(cc.core.members));
  EmbeddedSystem cf = centralizer_subsystem(f, qi);
  Subgroup zq = center_of_subgroup(f.subs[qi]);
  std::vector<int> local(f.S->size(), -1);
  for (std::size_t k = 0; k < cf.to_parent.size(); ++k)
    local[cf.to_parent[k]] = static_cast<int>(k);
  std::vector<int> z_local;
  z_local.reserve(zq.members.size());
  for (int x : zq.members) {
    if (local[x] < 0)
      throw std::logic_error("center of the core escapes its centralizer");
    z_local.push_back(local[x]);
  }
  std::sort(z_local.begin(), z_local.end());
  int zi = cf.sys.sub_of_mask(mask_of_members(z_local));
  if (zi < 0) throw std::logic_error("center missing from lattice");
  // Quotienting by the trivial subgroup would only relabel the elements.
  FusionSystem cur = zq.size() == 1 ? cf.sys : quotient_fusion(cf.sys, zi);

  for (;;) {
    EmbeddedSystem op = o_p_index_sub(cur);
    bool shrunk = !fusion_equal(op.sys, cur);
    cur = std::move(op.sys);
    EmbeddedSystem opp = o_p_prime_sub(cur);
    bool shrunk2 = !fusion_equal(opp.sys, cur);
    cur = std::move(opp.sys);
    if (!shrunk && !shrunk2) return cur;
  }
}

}  // namespace ff
