#include <algorithm>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "ff/caps.hpp"
#include "ff/linking.hpp"
#include "src/fusion/internal.hpp"
#include "src/linking/internal.hpp"

namespace ff {

namespace {

std::string mor_name(const LinkingSystem& l, int m) {
  return "morphism #" + std::to_string(m) + " (" +
         std::to_string(l.mors[m].dom) + " -> " + std::to_string(l.mors[m].cod) +
         ")";
}

LinkingAxiomReport fail(const std::string& axiom, const std::string& msg) {
  return LinkingAxiomReport{false, axiom, msg};
}

}  // namespace

LinkingAxiomReport verify_linking_axioms(const LinkingSystem& l,
                                         std::uint64_t budget) {
  if (budget == 0) budget = caps().budget;
  const FusionSystem& f = *l.fsys;
  const int no = l.object_count();
  const int nm = l.morphism_count();

  // category shape: homsets partition the morphisms and agree with dom/cod
  std::vector<char> seen(nm, 0);
  for (int a = 0; a < no; ++a)
    for (int b = 0; b < no; ++b)
      for (int m : l.hom[a][b]) {
        if (m < 0 || m >= nm || seen[m])
          return fail("category", "homsets do not partition the morphisms");
        seen[m] = 1;
        if (l.mors[m].dom != a || l.mors[m].cod != b)
          return fail("category", mor_name(l, m) + " filed in hom(" +
                                      std::to_string(a) + ", " +
                                      std::to_string(b) + ")");
        if (l.pi[m].dom != l.objects[a] ||
            (l.pi[m].image_mask & ~f.masks[l.objects[b]]) != 0)
          return fail("category", mor_name(l, m) + " projects outside hom(" +
                                      std::to_string(a) + ", " +
                                      std::to_string(b) + ")");
      }
  for (int m = 0; m < nm; ++m)
    if (!seen[m]) return fail("category", mor_name(l, m) + " is in no homset");

  // identities and two-sided neutrality
  for (int a = 0; a < no; ++a) {
    int e = l.identity_mor[a];
    if (e < 0) return fail("category", "object " + std::to_string(a) +
                                           " has no identity morphism");
    if (l.mors[e].dom != a || l.mors[e].cod != a ||
        !(l.pi[e] == identity_morphism(f, l.objects[a])))
      return fail("category", "identity of object " + std::to_string(a) +
                                  " does not project to the identity map");
  }
  for (int m = 0; m < nm; ++m) {
    if (l.compose(l.identity_mor[l.mors[m].cod], m) != m ||
        l.compose(m, l.identity_mor[l.mors[m].dom]) != m)
      return fail("category", "identity is not neutral on " + mor_name(l, m));
  }

  // compositions close and are associative (budgeted)
  std::uint64_t used = 0;
  for (int a = 0; a < no && used < budget; ++a)
    for (int b = 0; b < no && used < budget; ++b)
      for (int inner : l.hom[a][b]) {
        for (int c = 0; c < no && used < budget; ++c)
          for (int outer : l.hom[b][c]) {
            ++used;
            int r = l.compose(outer, inner);
            if (r < 0 || l.mors[r].dom != a || l.mors[r].cod != c)
              return fail("category", "composition escaped hom(" +
                                          std::to_string(a) + ", " +
                                          std::to_string(c) + ")");
            for (int d = 0; d < no && used < budget; ++d)
              for (int third : l.hom[c][d]) {
                ++used;
                if (l.compose(third, r) !=
                    l.compose(l.compose(third, outer), inner))
                  return fail("category",
                              "associativity fails at " + mor_name(l, inner) +
                                  ", " + mor_name(l, outer) + ", " +
                                  mor_name(l, third));
              }
          }
        if (used >= budget) break;
      }

  // object closure under F-conjugacy and overgroups; centric radicals present
  Classification cls = classify(f);
  for (int i = 0; i < f.sub_count(); ++i)
    if (cls.profile[i].centric && cls.profile[i].radical &&
        l.object_index[i] < 0)
      return fail("objects", "centric radical subgroup #" + std::to_string(i) +
                                 " is not an object");
  for (int a = 0; a < no; ++a) {
    int sub = l.objects[a];
    for (const FMor& m : f.mors[sub])
      if (l.object_index[m.cod] < 0)
        return fail("objects", "conjugate #" + std::to_string(m.cod) +
                                   " of object subgroup #" +
                                   std::to_string(sub) + " is not an object");
    for (int j = 0; j < f.sub_count(); ++j)
      if ((f.masks[sub] & ~f.masks[j]) == 0 && l.object_index[j] < 0)
        return fail("objects", "overgroup #" + std::to_string(j) +
                                   " of object subgroup #" +
                                   std::to_string(sub) + " is not an object");
  }

  // (A2): C_S(P) acts freely on every Mor(P, Q) and the projection is the
  // orbit map of that action; the projection is onto Hom_F(P, Q).
  for (int a = 0; a < no; ++a) {
    Subgroup c = centralizer_sub(*f.S, f.subs[l.objects[a]]);
    for (int b = 0; b < no; ++b) {
      std::map<FMor, std::vector<int>> fibers;
      for (int m : l.hom[a][b]) fibers[l.pi[m]].push_back(m);
      for (int m : l.hom[a][b])
        for (int x : c.members) {
          int dx = l.delta(a, a, x);
          if (dx < 0)
            return fail("A2", "central element " + std::to_string(x) +
                                  " has no delta at object " +
                                  std::to_string(a));
          int moved = l.compose(m, dx);
          if (x != 0 && moved == m)
            return fail("A2", "central element " + std::to_string(x) +
                                  " fixes " + mor_name(l, m));
          if (!(l.pi[moved] == l.pi[m]))
            return fail("A2", "projection is not constant on the orbit of " +
                                  mor_name(l, m));
        }
      for (auto& [proj, fiber] : fibers) {
        if (static_cast<int>(fiber.size()) != c.size())
          return fail("A2", "fiber over a map out of object " +
                                std::to_string(a) + " has size " +
                                std::to_string(fiber.size()) + ", expected " +
                                std::to_string(c.size()));
        std::vector<int> orbit;
        for (int x : c.members) orbit.push_back(l.compose(fiber[0], l.delta(a, a, x)));
        std::sort(orbit.begin(), orbit.end());
        if (orbit != fiber)
          return fail("A2", "fiber out of object " + std::to_string(a) +
                                " is not a single orbit");
      }
      std::vector<FMor> homs = homs_between(f, l.objects[a], l.objects[b]);
      if (fibers.size() != homs.size())
        return fail("A2", "projection misses fusion maps between objects " +
                              std::to_string(a) + " and " + std::to_string(b));
    }
  }

  // (B): the projection of delta_{P,Q}(x) is conjugation by x
  for (const auto& [key, id] : l.delta_id) {
    int x = static_cast<int>(key & 63);
    int pair = static_cast<int>(key >> 6);
    int a = pair / no;
    const std::vector<int>& mem = f.subs[l.objects[a]].members;
    const FMor& proj = l.pi[id];
    for (std::size_t k = 0; k < mem.size(); ++k)
      if (proj.images[k] != f.S->conj(x, mem[k]))
        return fail("B", "delta of element " + std::to_string(x) +
                             " at object " + std::to_string(a) +
                             " does not project to its conjugation");
  }

  // (C): psi o delta_P(x) = delta_Q(pi(psi)(x)) o psi
  for (int m = 0; m < nm; ++m) {
    int a = l.mors[m].dom, b = l.mors[m].cod;
    const std::vector<int>& mem = f.subs[l.objects[a]].members;
    for (std::size_t k = 0; k < mem.size(); ++k) {
      int lhs = l.compose(m, l.delta(a, a, mem[k]));
      int rhs = l.compose(l.delta(b, b, l.pi[m].images[k]), m);
      if (lhs != rhs)
        return fail("C", "naturality fails for " + mor_name(l, m) +
                             " at element " + std::to_string(mem[k]));
    }
  }

  // delta injectivity on each transporter (with full coverage)
  for (int a = 0; a < no; ++a)
    for (int b = 0; b < no; ++b) {
      std::vector<int> hits;
      int expected = 0;
      for (int x = 0; x < f.S->size(); ++x) {
        bool carries = true;
        for (int mreps : f.subs[l.objects[a]].members)
          if (!((f.masks[l.objects[b]] >> f.S->conj(x, mreps)) & 1)) {
            carries = false;
            break;
          }
        if (!carries) continue;
        ++expected;
        int id = l.delta(a, b, x);
        if (id < 0)
          return fail("delta", "transporter element " + std::to_string(x) +
                                   " missing between objects " +
                                   std::to_string(a) + " and " +
                                   std::to_string(b));
        hits.push_back(id);
      }
      std::sort(hits.begin(), hits.end());
      if (std::adjacent_find(hits.begin(), hits.end()) != hits.end())
        return fail("delta", "delta is not injective between objects " +
                                 std::to_string(a) + " and " +
                                 std::to_string(b));
      (void)expected;
    }

  // cancellation: every morphism is monic and epic (budgeted)
  used = 0;
  for (int m = 0; m < nm && used < budget; ++m) {
    int a = l.mors[m].dom, b = l.mors[m].cod;
    for (int d = 0; d < no && used < budget; ++d) {
      std::vector<int> post, pre;
      for (int x : l.hom[d][a]) {
        ++used;
        post.push_back(l.compose(m, x));
      }
      std::sort(post.begin(), post.end());
      if (std::adjacent_find(post.begin(), post.end()) != post.end())
        return fail("cancel", mor_name(l, m) + " is not monic");
      for (int x : l.hom[b][d]) {
        ++used;
        pre.push_back(l.compose(x, m));
      }
      std::sort(pre.begin(), pre.end());
      if (std::adjacent_find(pre.begin(), pre.end()) != pre.end())
        return fail("cancel", mor_name(l, m) + " is not epic");
    }
  }

  return LinkingAxiomReport{};
}

}  // namespace ff
