#include <algorithm>
#include <cstdint>
#include <memory>
#include <set>
#include <stdexcept>
#include <unordered_set>
#include <vector>

#include "ff/lattice.hpp"
#include "ff/linking.hpp"
#include "src/fusion/internal.hpp"
#include "src/linking/internal.hpp"

namespace ff {

namespace {

// Parent-side element mask of an embedded subgroup.
std::uint64_t parent_mask(const EmbeddedSystem& e, int sub) {
  std::uint64_t msk = 0;
  for (int x : e.sys.subs[sub].members)
    msk |= std::uint64_t{1} << e.to_parent[x];
  return msk;
}

}  // namespace

LinkingPair normal_pair_of_groups(const Group& g, const Subgroup& h, int p) {
  if (!is_subgroup_normal(g, h))
    throw std::invalid_argument("H is not normal in G");
  auto f = std::make_shared<FusionSystem>(fusion_of_group(g, p));
  Subgroup s = sylow(g, p);

  LinkingPair pair;
  pair.e = subsystem_of_group(*f, g, s, h, p);
  pair.t_sub = pair.e.t_sub;
  auto ef = std::make_shared<FusionSystem>(pair.e.sys);

  // M lives on the E-centric subgroups of T, L on every P <= S whose
  // intersection with T is E-centric.
  Classification ecls = classify(*ef);
  std::vector<int> m_objects;
  std::set<std::uint64_t> centric_masks;
  for (int j = 0; j < ef->sub_count(); ++j)
    if (ecls.profile[j].centric) {
      m_objects.push_back(j);
      centric_masks.insert(parent_mask(pair.e, j));
    }
  std::uint64_t t_mask = f->masks[pair.t_sub];
  std::vector<int> l_objects;
  for (int i = 0; i < f->sub_count(); ++i)
    if (centric_masks.count(f->masks[i] & t_mask)) l_objects.push_back(i);

  pair.l = linking_of_group(g, p, f, s, l_objects);

  std::vector<int> h_to_g;
  Group hg = subgroup_as_group(h, &h_to_g);
  std::vector<int> t_in_h;
  for (const Perm& q : ef->S->elems) t_in_h.push_back(hg.id_of(q));
  std::sort(t_in_h.begin(), t_in_h.end());
  pair.m = linking_of_group(hg, p, ef, Subgroup{&hg, t_in_h}, m_objects);

  // each object and morphism of M under the inclusion H <= G
  pair.m_object_in_l.resize(pair.m.object_count());
  for (int o = 0; o < pair.m.object_count(); ++o) {
    int si = f->sub_of_mask(parent_mask(pair.e, pair.m.objects[o]));
    if (si < 0 || pair.l.object_index[si] < 0)
      throw std::logic_error("object of M is missing from L");
    pair.m_object_in_l[o] = pair.l.object_index[si];
  }
  pair.embed.resize(pair.m.morphism_count());
  for (int i = 0; i < pair.m.morphism_count(); ++i) {
    int a = pair.m_object_in_l[pair.m.mors[i].dom];
    int b = pair.m_object_in_l[pair.m.mors[i].cod];
    int rg = h_to_g[pair.m.rep[i]];
    auto it = pair.l.rep_id.find(
        detail::rep_key(pair.l, a, b, pair.l.canon_rep(a, rg)));
    if (it == pair.l.rep_id.end())
      throw std::logic_error("morphism of M is missing from L");
    pair.embed[i] = it->second;
  }
  return pair;
}

NormalPairReport check_normal_pair(const LinkingPair& pair) {
  const LinkingSystem& l = pair.l;
  const LinkingSystem& m = pair.m;
  if (l.kind != 0 || m.kind != 0)
    throw std::invalid_argument("normal pairs use the transporter model");
  const FusionSystem& f = *l.fsys;
  const Group& g = *l.g;
  NormalPairReport rep;

  std::vector<int> s_id_of(g.size(), -1);
  for (std::size_t i = 0; i < l.g_elem_of_s.size(); ++i)
    s_id_of[l.g_elem_of_s[i]] = static_cast<int>(i);

  // object sets: Ob(M) = E-centric subgroups of T, Ob(L) their closure shape
  Classification ecls = classify(*m.fsys);
  std::vector<int> want_m;
  std::set<std::uint64_t> centric_masks;
  for (int j = 0; j < m.fsys->sub_count(); ++j)
    if (ecls.profile[j].centric) {
      want_m.push_back(j);
      centric_masks.insert(parent_mask(pair.e, j));
    }
  std::uint64_t t_mask = f.masks[pair.t_sub];
  std::vector<int> want_l;
  for (int i = 0; i < f.sub_count(); ++i)
    if (centric_masks.count(f.masks[i] & t_mask)) want_l.push_back(i);
  rep.objects_l_shape = want_m == m.objects && want_l == l.objects;

  // closure of Ob(L) under conjugacy and overgroups; contains the centric
  // radicals of F
  Classification fcls = classify(f);
  rep.objects_closed = true;
  for (int i = 0; i < f.sub_count(); ++i)
    if (fcls.profile[i].centric && fcls.profile[i].radical &&
        l.object_index[i] < 0)
      rep.objects_closed = false;
  for (int o = 0; o < l.object_count() && rep.objects_closed; ++o) {
    for (const FMor& fm : f.mors[l.objects[o]])
      if (l.object_index[fm.cod] < 0) rep.objects_closed = false;
    for (int j = 0; j < f.sub_count(); ++j)
      if ((f.masks[l.objects[o]] & ~f.masks[j]) == 0 && l.object_index[j] < 0)
        rep.objects_closed = false;
  }

  // objects are quasicentric: C_S(P) meets O^p(C_G(P)) trivially (same on
  // the M side), so the transporter quotients carry a free C_S(P)-action
  auto free_at = [](const LinkingSystem& sys, int o) {
    const Group& amb = *sys.g;
    std::vector<char> in_kernel(amb.size(), 0);
    for (int k : sys.kernel[o]) in_kernel[k] = 1;
    for (int xs : sys.g_elem_of_s) {
      bool central = true;
      for (int y : sys.obj_members_g[o])
        if (amb.conj(xs, y) != y) {
          central = false;
          break;
        }
      if (central && xs != 0 && in_kernel[xs]) return false;
    }
    return true;
  };
  rep.quasicentric_free = true;
  for (int o = 0; o < l.object_count(); ++o)
    if (!free_at(l, o)) rep.quasicentric_free = false;
  for (int o = 0; o < m.object_count(); ++o)
    if (!free_at(m, o)) rep.quasicentric_free = false;

  // the embedding M -> L is injective
  std::vector<int> sorted_embed = pair.embed;
  std::sort(sorted_embed.begin(), sorted_embed.end());
  rep.embed_injective =
      (sorted_embed.empty() || sorted_embed.front() >= 0) &&
      std::adjacent_find(sorted_embed.begin(), sorted_embed.end()) ==
          sorted_embed.end();
  std::unordered_set<int> embed_set(pair.embed.begin(), pair.embed.end());

  int lt = l.object_index[pair.t_sub];
  int mt = m.object_index[m.fsys->s_sub()];
  if (lt < 0 || mt < 0) throw std::logic_error("T is not an object");
  std::unordered_set<int> m_mapped(pair.m_object_in_l.begin(),
                                   pair.m_object_in_l.end());

  // conjugated object position under an ambient element normalizing T
  auto conj_pos = [&](int tg, int o) {
    std::uint64_t msk = 0;
    for (int y : l.obj_members_g[o]) {
      int z = g.conj(tg, y);
      if (s_id_of[z] < 0) return -1;
      msk |= std::uint64_t{1} << s_id_of[z];
    }
    int si = f.sub_of_mask(msk);
    return si < 0 ? -1 : l.object_index[si];
  };

  // stability: gamma psi gamma^-1 stays in M for gamma in Aut_L(T)
  rep.invariant = true;
  for (int gam : l.hom[lt][lt]) {
    int tg = l.rep[gam];
    int tgi = g.inv(tg);
    std::vector<int> moved(l.object_count(), -1);
    for (int a : pair.m_object_in_l) {
      moved[a] = conj_pos(tg, a);
      if (moved[a] < 0 || !m_mapped.count(moved[a])) rep.invariant = false;
    }
    if (!rep.invariant) break;
    for (int eid : pair.embed) {
      int a2 = moved[l.mors[eid].dom], b2 = moved[l.mors[eid].cod];
      int r2 = g.mul(g.mul(tg, l.rep[eid]), tgi);
      auto it =
          l.rep_id.find(detail::rep_key(l, a2, b2, l.canon_rep(a2, r2)));
      if (it == l.rep_id.end() || !embed_set.count(it->second)) {
        rep.invariant = false;
        break;
      }
    }
    if (!rep.invariant) break;
  }

  // Frattini: every psi between objects of M factors as psi0 o gamma with
  // psi0 in M and gamma in Aut_L(T)
  rep.frattini = true;
  for (int a : pair.m_object_in_l) {
    for (int b : pair.m_object_in_l)
      for (int psi : l.hom[a][b]) {
        bool found = false;
        for (int gam : l.hom[lt][lt] ) {
          int tgi = g.inv(l.rep[gam]);
          int a2 = conj_pos(l.rep[gam], a);
          if (a2 < 0) continue;
          auto it = l.rep_id.find(detail::rep_key(
              l, a2, b, l.canon_rep(a2, g.mul(l.rep[psi], tgi))));
          if (it != l.rep_id.end() && embed_set.count(it->second)) {
            found = true;
            break;
          }
        }
        if (!found) {
          rep.frattini = false;
          break;
        }
      }
    if (!rep.frattini) break;
  }

  rep.l_over_m = static_cast<int>(l.hom[lt][lt].size() / m.hom[mt][mt].size());

  // C_S(M): elements of S fixing every object of M setwise and every
  // embedded morphism; gamma in Aut_L(T) centralizes M under the same test
  auto centralizes = [&](int xg) {
    for (int a : pair.m_object_in_l) {
      std::uint64_t msk = f.masks[l.objects[a]];
      for (int y : l.obj_members_g[a]) {
        int z = g.conj(xg, y);
        if (s_id_of[z] < 0 || !((msk >> s_id_of[z]) & 1)) return false;
      }
    }
    int xgi = g.inv(xg);
    for (int eid : pair.embed) {
      int a = l.mors[eid].dom, b = l.mors[eid].cod;
      int r2 = g.mul(g.mul(xg, l.rep[eid]), xgi);
      auto it = l.rep_id.find(detail::rep_key(l, a, b, l.canon_rep(a, r2)));
      if (it == l.rep_id.end() || it->second != eid) return false;
    }
    return true;
  };
  std::vector<int> csm_members;
  for (std::size_t xs = 0; xs < l.g_elem_of_s.size(); ++xs)
    if (centralizes(l.g_elem_of_s[xs])) csm_members.push_back(static_cast<int>(xs));
  rep.c_s_m = Subgroup{f.S.get(), csm_members};

  // delta_T carries C_S(M) exactly onto the centralizer of M in Aut_L(T)
  std::set<int> central_gammas;
  for (int gam : l.hom[lt][lt])
    if (centralizes(l.rep[gam])) central_gammas.insert(gam);
  std::set<int> delta_image;
  for (int x : csm_members) delta_image.insert(l.delta(lt, lt, x));
  rep.delta_exact = central_gammas == delta_image;

  rep.z_e = subsystem_center(f, pair.e);
  rep.z_f = o_p_and_center(f).center;
  rep.c_s_e = subsystem_centralizer(f, pair.e);

  Subgroup ze_zf = join(rep.z_e, rep.z_f);
  rep.sandwich = rep.c_s_m.contains_all(ze_zf) &&
                 rep.c_s_e.contains_all(rep.c_s_m);
  const Subgroup& t_in_s = f.subs[pair.t_sub];
  rep.m_centric = t_in_s.contains_all(rep.c_s_m);
  rep.e_centric = t_in_s.contains_all(rep.c_s_e);
  rep.odd_equality = l.p == 2 || rep.c_s_m == rep.c_s_e;

  // the T-automorphisms of M fix C_S(M) pointwise; the Aut_L(T)-fixed part
  // of C_S(M) is exactly Z(F)
  auto fixes = [&](int mor, int x) {
    if (!t_in_s.contains_id(x)) return false;
    int pos = detail::member_pos(t_in_s.members, x);
    return l.pi[mor].images[pos] == x;
  };
  rep.m_acts_trivially = true;
  for (int i : m.hom[mt][mt])
    for (int x : csm_members)
      if (!fixes(pair.embed[i], x)) rep.m_acts_trivially = false;
  std::vector<int> fixed;
  for (int x : csm_members) {
    bool all = true;
    for (int gam : l.hom[lt][lt])
      if (!fixes(gam, x)) {
        all = false;
        break;
      }
    if (all) fixed.push_back(x);
  }
  rep.fixed_is_z_f = fixed == rep.z_f.members;

  return rep;
}

}  // namespace ff
