#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "ff/constructions.hpp"
#include "ff/lattice.hpp"
#include "ff/linking.hpp"
#include "ff/parallel.hpp"
#include "src/fusion/internal.hpp"
#include "src/linking/internal.hpp"

namespace ff {

namespace {

// beta-transport of a fusion morphism: conjugate the graph of m by the
// element permutation beta, landing on the subgroup indices of sub_image.
// Only dom and images are filled, which is what FMor comparison reads.
FMor transport_pi(const FusionSystem& fa, const FusionSystem& fb,
                  const Perm& beta, const std::vector<int>& sub_image,
                  const FMor& m) {
  FMor out;
  out.dom = static_cast<std::uint16_t>(sub_image[m.dom]);
  const std::vector<int>& src = fa.subs[m.dom].members;
  const std::vector<int>& dst = fb.subs[out.dom].members;
  out.images.resize(dst.size());
  for (std::size_t k = 0; k < src.size(); ++k) {
    int pos = detail::member_pos(dst, beta[src[k]]);
    out.images[pos] = static_cast<std::uint8_t>(beta[m.images[k]]);
  }
  return out;
}

// Backtracking matcher for functors A -> B over a fixed object map: images
// are drawn from projection fibers, forced delta seeds start the assignment,
// and every composable pair is propagated (and thereby verified) as soon as
// both endpoints have images.  A global inverse array keeps the morphism map
// injective, so completed assignments are isomorphisms onto B.
struct MorMatcher {
  const LinkingSystem* A = nullptr;
  const LinkingSystem* B = nullptr;
  const detail::ComposeContext* ca = nullptr;
  const detail::ComposeContext* cb = nullptr;
  std::vector<int> obj_map;
  std::vector<std::vector<int>> fiber;     // per A-morphism: candidate images
  std::vector<std::pair<int, int>> seeds;  // forced (a-mor, b-mor)
  std::vector<int> assign, used, trail;
  bool first_only = false;
  long long count = 0;
  std::vector<LinkingAut>* store = nullptr;
  std::optional<std::vector<int>> first;

  bool set_image(int m, int v, std::vector<int>& work) {
    if (assign[m] == v) return true;
    if (assign[m] != -1 || used[v] != -1) return false;
    if (B->mors[v].dom != obj_map[A->mors[m].dom] ||
        B->mors[v].cod != obj_map[A->mors[m].cod])
      return false;
    assign[m] = v;
    used[v] = m;
    trail.push_back(m);
    work.push_back(m);
    return true;
  }

  // Assign m -> v and chase compositions with already-assigned partners.
  bool apply(int m, int v) {
    std::vector<int> work;
    if (!set_image(m, v, work)) return false;
    for (std::size_t h = 0; h < work.size(); ++h) {
      int cur = work[h];
      int vcur = assign[cur];
      int dcur = A->mors[cur].dom, ccur = A->mors[cur].cod;
      for (int c = 0; c < A->object_count(); ++c) {
        for (int outer : A->hom[ccur][c])
          if (assign[outer] != -1) {
            int r = ca->compose(outer, cur);
            if (r < 0)
              throw std::logic_error("category is not closed under composition");
            int rv = cb->compose(assign[outer], vcur);
            if (rv < 0 || !set_image(r, rv, work)) return false;
          }
        for (int inner : A->hom[c][dcur])
          if (assign[inner] != -1) {
            int r = ca->compose(cur, inner);
            if (r < 0)
              throw std::logic_error("category is not closed under composition");
            int rv = cb->compose(vcur, assign[inner]);
            if (rv < 0 || !set_image(r, rv, work)) return false;
          }
      }
    }
    return true;
  }

  void rollback(std::size_t mark) {
    while (trail.size() > mark) {
      int m = trail.back();
      trail.pop_back();
      used[assign[m]] = -1;
      assign[m] = -1;
    }
  }

  bool dfs(int cursor) {
    int n = A->morphism_count();
    while (cursor < n && assign[cursor] != -1) ++cursor;
    if (cursor == n) {
      ++count;
      if (store) store->push_back(LinkingAut{obj_map, assign});
      if (first_only) {
        first = assign;
        return true;
      }
      return false;
    }
    for (int v : fiber[cursor]) {
      if (used[v] != -1) continue;
      std::size_t mark = trail.size();
      if (apply(cursor, v) && dfs(cursor + 1)) return true;
      rollback(mark);
    }
    return false;
  }

  long long run() {
    assign.assign(A->morphism_count(), -1);
    used.assign(B->morphism_count(), -1);
    trail.clear();
    count = 0;
    for (auto [m, v] : seeds)
      if (!apply(m, v)) return 0;
    dfs(0);
    return count;
  }
};

// Object map, fibers and delta seeds for lifts of beta.  False when beta does
// not even map objects to objects or misses a projection fiber.
bool prepare(const LinkingSystem& a, const LinkingSystem& b, const Perm& beta,
             MorMatcher& mm) {
  const FusionSystem& fa = *a.fsys;
  const FusionSystem& fb = *b.fsys;
  mm.A = &a;
  mm.B = &b;
  mm.obj_map.assign(a.object_count(), -1);
  std::vector<int> sub_image(fa.sub_count(), -1);
  for (int o = 0; o < a.object_count(); ++o) {
    std::uint64_t msk = 0;
    for (int x : fa.subs[a.objects[o]].members)
      msk |= std::uint64_t{1} << beta[x];
    int si = fb.sub_of_mask(msk);
    if (si < 0 || b.object_index[si] < 0) return false;
    sub_image[a.objects[o]] = si;
    mm.obj_map[o] = b.object_index[si];
  }
  mm.fiber.assign(a.morphism_count(), {});
  for (int oa = 0; oa < a.object_count(); ++oa)
    for (int ob = 0; ob < a.object_count(); ++ob) {
      if (a.hom[oa][ob].empty()) continue;
      std::map<FMor, std::vector<int>> by_pi;
      for (int v : b.hom[mm.obj_map[oa]][mm.obj_map[ob]])
        by_pi[b.pi[v]].push_back(v);
      for (int m : a.hom[oa][ob]) {
        auto it = by_pi.find(transport_pi(fa, fb, beta, sub_image, a.pi[m]));
        if (it == by_pi.end()) return false;
        mm.fiber[m] = it->second;
      }
    }
  mm.seeds.clear();
  const int no = a.object_count();
  for (const auto& [key, id] : a.delta_id) {
    int x = static_cast<int>(key & 63);
    int pr = static_cast<int>(key >> 6);
    int tgt = b.delta(mm.obj_map[pr / no], mm.obj_map[pr % no], beta[x]);
    if (tgt < 0) return false;
    mm.seeds.emplace_back(id, tgt);
  }
  std::sort(mm.seeds.begin(), mm.seeds.end());
  return true;
}

// The distinct conjugation functors c_gamma, gamma in Aut_L(S): conjugation
// of representatives in the ambient group for the transporter model, pairs of
// factor functors for products.
std::vector<LinkingAut> inner_functors(const LinkingSystem& l) {
  const FusionSystem& f = *l.fsys;
  int so = l.object_index[f.s_sub()];
  if (so < 0) throw std::logic_error("S is not an object of the linking system");
  std::map<std::vector<int>, std::vector<int>> dedupe;  // mor map -> obj map
  if (l.kind == 0) {
    for (int gam : l.hom[so][so]) {
      std::vector<int> elem = detail::fmor_elem_map(f, l.pi[gam]);
      std::vector<int> omap(l.object_count());
      for (int o = 0; o < l.object_count(); ++o) {
        std::uint64_t msk = 0;
        for (int x : f.subs[l.objects[o]].members)
          msk |= std::uint64_t{1} << elem[x];
        int si = f.sub_of_mask(msk);
        if (si < 0 || l.object_index[si] < 0)
          throw std::logic_error("conjugation functor escaped the objects");
        omap[o] = l.object_index[si];
      }
      int rg = l.rep[gam];
      int rgi = l.g->inv(rg);
      std::vector<int> mmap(l.morphism_count());
      for (int m = 0; m < l.morphism_count(); ++m) {
        int a2 = omap[l.mors[m].dom], b2 = omap[l.mors[m].cod];
        int t = l.g->mul(l.g->mul(rg, l.rep[m]), rgi);
        auto it = l.rep_id.find(detail::rep_key(l, a2, b2, l.canon_rep(a2, t)));
        if (it == l.rep_id.end())
          throw std::logic_error("conjugation functor escaped the category");
        mmap[m] = it->second;
      }
      dedupe.emplace(std::move(mmap), std::move(omap));
    }
  } else {
    std::vector<LinkingAut> lefts = inner_functors(*l.left);
    std::vector<LinkingAut> rights = inner_functors(*l.right);
    int mr = l.right->morphism_count();
    std::map<std::pair<int, int>, int> obj_of_pair;
    for (int o = 0; o < l.object_count(); ++o) obj_of_pair[l.factor_obj[o]] = o;
    for (const LinkingAut& cl : lefts)
      for (const LinkingAut& cr : rights) {
        std::vector<int> omap(l.object_count());
        for (int o = 0; o < l.object_count(); ++o) {
          auto [oa, ob] = l.factor_obj[o];
          omap[o] = obj_of_pair.at({cl.obj[oa], cr.obj[ob]});
        }
        std::vector<int> mmap(l.morphism_count());
        for (int m = 0; m < l.morphism_count(); ++m)
          mmap[m] = cl.mor[m / mr] * mr + cr.mor[m % mr];
        dedupe.emplace(std::move(mmap), std::move(omap));
      }
  }
  std::vector<LinkingAut> out;
  out.reserve(dedupe.size());
  for (auto& [mmap, omap] : dedupe) out.push_back(LinkingAut{omap, mmap});
  return out;
}

// The kernel of gamma -> c_gamma is delta_S(Z(F)), so the functor count must
// be |Aut_L(S)| / |Z(F)|.
void check_inner_count(const LinkingSystem& l, std::size_t inner_count) {
  const FusionSystem& f = *l.fsys;
  int so = l.object_index[f.s_sub()];
  std::size_t aut_ls = l.hom[so][so].size();
  std::size_t z = static_cast<std::size_t>(o_p_and_center(f).center.size());
  if (inner_count * z != aut_ls)
    throw std::logic_error(
        "conjugation functors do not match |Aut_L(S)| / |Z(F)|");
}

// Least morphism map in the coset F . {c_gamma}: the canonical label of the
// outer class of F.
std::vector<int> out_class_key(const std::vector<int>& fm,
                               const std::vector<LinkingAut>& inner) {
  std::vector<int> best;
  for (const LinkingAut& c : inner) {
    std::vector<int> comp(fm.size());
    for (std::size_t m = 0; m < fm.size(); ++m) comp[m] = fm[c.mor[m]];
    if (best.empty() || comp < best) best = std::move(comp);
  }
  return best;
}

}  // namespace

LinkingAutData aut_of_linking(const LinkingSystem& l) {
  FusionAutData fa = aut_of_fusion(*l.fsys);
  detail::ComposeContext ctx = detail::compose_context(l);
  LinkingAutData out;
  for (const Perm& beta : fa.auts) {
    MorMatcher mm;
    mm.ca = &ctx;
    mm.cb = &ctx;
    mm.store = &out.auts;
    if (!prepare(l, l, beta, mm)) continue;
    mm.run();
  }
  out.inner = inner_functors(l);
  check_inner_count(l, out.inner.size());
  std::set<std::vector<int>> seen;
  for (const LinkingAut& a : out.auts) seen.insert(a.mor);
  if (seen.size() != out.auts.size())
    throw std::logic_error("duplicate automorphisms enumerated");
  for (const LinkingAut& c : out.inner)
    if (!seen.count(c.mor))
      throw std::logic_error("conjugation functor missing from the automorphisms");
  if (out.inner.empty() || out.auts.size() % out.inner.size() != 0)
    throw std::logic_error("|Aut(L)| is not a multiple of the inner functors");
  return out;
}

LinkingAutCounts count_linking_auts(const LinkingSystem& l, int jobs) {
  FusionAutData fa = aut_of_fusion(*l.fsys);
  detail::ComposeContext ctx = detail::compose_context(l);
  std::vector<long long> per(fa.auts.size(), 0);
  parallel_for(static_cast<int>(fa.auts.size()), jobs, [&](int i) {
    MorMatcher mm;
    mm.ca = &ctx;
    mm.cb = &ctx;
    if (!prepare(l, l, fa.auts[i], mm)) return;
    per[i] = mm.run();
  });
  LinkingAutCounts out;
  for (long long c : per) out.auts += c;
  out.inner = static_cast<int>(inner_functors(l).size());
  check_inner_count(l, static_cast<std::size_t>(out.inner));
  if (out.inner == 0 || out.auts % out.inner != 0)
    throw std::logic_error("|Aut(L)| is not a multiple of the inner functors");
  return out;
}

KappaReport kappa_of_group(const Group& g, int p) {
  LinkingSystem l = centric_linking_of_group(g, p);
  LinkingAutData la = aut_of_linking(l);
  const FusionSystem& f = *l.fsys;

  KappaReport rep;
  rep.out_l = la.out_order();
  AutGroup ag = aut_group(g);
  rep.out_g = static_cast<int>(ag.outer_reps.size());

  std::vector<char> in_s(g.size(), 0);
  std::vector<int> s_id_of(g.size(), -1);
  for (std::size_t i = 0; i < l.g_elem_of_s.size(); ++i) {
    in_s[l.g_elem_of_s[i]] = 1;
    s_id_of[l.g_elem_of_s[i]] = static_cast<int>(i);
  }
  detail::CompAdjacency adj = detail::comp_adjacency(l);

  // kappa on each outer class: adjust the representative to fix S, push it
  // through the transporter model, and take the canonical outer label.
  std::vector<std::vector<int>> keys;
  for (int rep_aut : ag.outer_reps) {
    const Perm& alpha = ag.perm.elems[rep_aut];
    int g0 = -1;
    for (int cand = 0; cand < g.size() && g0 < 0; ++cand) {
      bool ok = true;
      for (int x : l.g_elem_of_s)
        if (!in_s[g.conj(cand, alpha[x])]) {
          ok = false;
          break;
        }
      if (ok) g0 = cand;
    }
    if (g0 < 0)
      throw std::logic_error("no inner adjustment carries alpha(S) back to S");
    std::vector<int> aa(g.size());
    for (int x = 0; x < g.size(); ++x) aa[x] = g.conj(g0, alpha[x]);

    std::vector<int> omap(l.object_count());
    for (int o = 0; o < l.object_count(); ++o) {
      std::uint64_t msk = 0;
      for (int xg : l.obj_members_g[o])
        msk |= std::uint64_t{1} << s_id_of[aa[xg]];
      int si = f.sub_of_mask(msk);
      if (si < 0 || l.object_index[si] < 0)
        throw std::logic_error("adjusted automorphism does not preserve the objects");
      omap[o] = l.object_index[si];
    }
    std::vector<int> mmap(l.morphism_count());
    std::vector<int> hit(l.morphism_count(), -1);
    for (int m = 0; m < l.morphism_count(); ++m) {
      int a2 = omap[l.mors[m].dom], b2 = omap[l.mors[m].cod];
      auto it =
          l.rep_id.find(detail::rep_key(l, a2, b2, l.canon_rep(a2, aa[l.rep[m]])));
      if (it == l.rep_id.end())
        throw std::logic_error("adjusted automorphism does not act on the category");
      mmap[m] = it->second;
      if (hit[it->second] != -1)
        throw std::logic_error("induced functor is not injective");
      hit[it->second] = m;
    }
    for (int o = 0; o < adj.n; ++o)
      for (int i = 0; i < adj.n; ++i) {
        int r = adj.table[o * adj.n + i];
        if (r < 0) continue;
        int rr = adj.table[mmap[o] * adj.n + mmap[i]];
        if (rr < 0 || rr != mmap[r])
          throw std::logic_error("induced functor fails composition");
      }
    keys.push_back(out_class_key(mmap, la.inner));
  }

  std::set<std::vector<int>> image(keys.begin(), keys.end());
  rep.image = static_cast<int>(image.size());
  rep.injective = rep.image == rep.out_g;
  rep.surjective = rep.image == rep.out_l;

  // splitting: a subgroup of Out(G) of order |Out(L)| on which kappa stays
  // injective maps isomorphically onto Out(L).
  rep.split = false;
  if (rep.surjective) {
    int n = rep.out_g;
    if (n > 16)
      throw std::logic_error("outer automorphism group too large for the splitting scan");
    std::vector<Perm> inner_aut;
    inner_aut.reserve(ag.inner_ids.size());
    for (int i : ag.inner_ids) inner_aut.push_back(ag.perm.elems[i]);
    auto coset_key = [&](const Perm& q) {
      int best = -1;
      for (const Perm& c : inner_aut) {
        int id = ag.perm.id_of(compose(q, c));
        if (best < 0 || id < best) best = id;
      }
      return best;
    };
    std::map<int, int> rep_pos;
    for (int r = 0; r < n; ++r) rep_pos[ag.outer_reps[r]] = r;
    std::vector<int> mt(n * n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        mt[i * n + j] = rep_pos.at(coset_key(compose(
            ag.perm.elems[ag.outer_reps[i]], ag.perm.elems[ag.outer_reps[j]])));
    int ident = rep_pos.at(coset_key(identity_perm(g.size())));
    for (std::uint32_t sub = 0; sub < (1u << n) && !rep.split; ++sub) {
      if (!(sub >> ident & 1)) continue;
      if (__builtin_popcount(sub) != rep.out_l) continue;
      bool closed = true;
      for (int i = 0; i < n && closed; ++i)
        for (int j = 0; j < n && closed; ++j)
          if ((sub >> i & 1) && (sub >> j & 1) && !(sub >> mt[i * n + j] & 1))
            closed = false;
      if (!closed) continue;
      std::set<std::vector<int>> sub_image;
      for (int i = 0; i < n; ++i)
        if (sub >> i & 1) sub_image.insert(keys[i]);
      if (static_cast<int>(sub_image.size()) == rep.out_l) rep.split = true;
    }
  }
  return rep;
}

std::optional<std::vector<int>> linking_uniqueness_check(
    const LinkingSystem& a, const LinkingSystem& b) {
  if (!fusion_equal(*a.fsys, *b.fsys)) return std::nullopt;
  if (a.objects != b.objects || a.morphism_count() != b.morphism_count())
    return std::nullopt;
  detail::ComposeContext cta = detail::compose_context(a);
  detail::ComposeContext ctb = detail::compose_context(b);
  MorMatcher mm;
  mm.ca = &cta;
  mm.cb = &ctb;
  mm.first_only = true;
  if (!prepare(a, b, identity_perm(a.fsys->S->size()), mm)) return std::nullopt;
  mm.run();
  return mm.first;
}

ProductOutReport product_out_report(std::shared_ptr<const LinkingSystem> a,
                                    std::shared_ptr<const LinkingSystem> b,
                                    int jobs) {
  ProductOutReport out;
  out.out_left = static_cast<int>(count_linking_auts(*a).out_order());
  out.out_right = static_cast<int>(count_linking_auts(*b).out_order());
  out.gamma = linking_uniqueness_check(*a, *b) ? 2 : 1;
  LinkingSystem prod = product_linking(std::move(a), std::move(b));
  out.out_product = count_linking_auts(prod, jobs).out_order();
  out.formula_holds =
      out.out_product == 1LL * out.out_left * out.out_right * out.gamma;
  return out;
}

}  // namespace ff
