#include <algorithm>
#include <memory>
#include <string>
#include <vector>

#include "gtest/gtest.h"

#include "ff/caps.hpp"
#include "ff/fusion.hpp"
#include "ff/group.hpp"
#include "ff/perm.hpp"

using namespace ff;

namespace {

FusionSystem catalog_fusion(const std::string& name, int p) {
  return fusion_of_group(catalog_group(name), p);
}

// The headline invariants of one fusion system, compared against counts
// computed independently in tools/oracle_fusion.py.
struct Shape {
  int subs = 0;
  int classes = 0;
  int morphisms = 0;
  int centric = 0;
  int strongly_closed = 0;
  int core = 0;
  int center = 0;
  int aut_s = 0;
  int quasicentric = 0;
  std::vector<int> cr_orders;  // |P| per centric-radical class

  friend bool operator==(const Shape&, const Shape&) = default;
};

Shape shape_of(const FusionSystem& f) {
  Classification c = classify(f);
  CoreAndCenter cc = o_p_and_center(f, c);
  Shape s;
  s.subs = f.sub_count();
  s.classes = static_cast<int>(c.classes.size());
  s.morphisms = f.total_morphisms();
  for (int i = 0; i < f.sub_count(); ++i) {
    s.centric += c.profile[i].centric;
    s.strongly_closed += c.profile[i].strongly_closed;
    s.quasicentric += c.profile[i].quasicentric;
  }
  s.core = cc.core.size();
  s.center = cc.center.size();
  s.aut_s = c.aut_order[f.s_sub()];
  for (const auto& cls : c.classes)
    if (c.profile[cls.front()].centric && c.profile[cls.front()].radical)
      s.cr_orders.push_back(f.subs[cls.front()].size());
  std::sort(s.cr_orders.begin(), s.cr_orders.end());
  return s;
}

// Subgroup index by member permutations (cycle strings in S's degree).
int sub_by_cycles(const FusionSystem& f, const std::vector<std::string>& gens) {
  std::vector<int> ids;
  for (const auto& g : gens) {
    int id = f.S->id_of(parse_cycles(f.S->degree, g));
    EXPECT_GE(id, 0) << g;
    ids.push_back(id);
  }
  Subgroup h = subgroup_closure(*f.S, ids);
  std::uint64_t mask = 0;
  for (int x : h.members) mask |= std::uint64_t{1} << x;
  return f.sub_of_mask(mask);
}

// Index of a computed subgroup of f.S in the lattice.
int sub_index(const FusionSystem& f, const Subgroup& h) {
  std::uint64_t mask = 0;
  for (int x : h.members) mask |= std::uint64_t{1} << x;
  return f.sub_of_mask(mask);
}

// The subgroup of F's Sylow group as a subgroup of the original group.
Subgroup parent_subgroup(const FusionSystem& f, const Group& g, int sub) {
  std::vector<int> ids;
  for (int x : f.subs[sub].members) {
    int id = g.id_of((*f.S)[x]);
    EXPECT_GE(id, 0);
    ids.push_back(id);
  }
  std::sort(ids.begin(), ids.end());
  return Subgroup{&g, std::move(ids)};
}

}  // namespace

TEST(FusionOfGroup, DihedralSylowInSymmetricFour) {
  FusionSystem f = catalog_fusion("S4", 2);
  Shape want{10, 7, 28, 4, 3, 4, 1, 4, 9, {4, 8}};
  EXPECT_EQ(shape_of(f), want);
  EXPECT_TRUE(is_saturated(f).saturated);

  // The fixed-point-free Klein subgroup is the one normal in the whole
  // fusion system; it carries all six automorphisms.  (The cyclic C4 is
  // fixed-point-free too, so insist on involutions.)
  int v4n = -1;
  for (int i = 0; i < f.sub_count(); ++i) {
    if (f.subs[i].size() != 4) continue;
    bool free = true;
    for (int x : f.subs[i].members)
      if (x != 0) {
        if (f.S->order_of(x) != 2) free = false;
        const Perm& p = (*f.S)[x];
        for (std::size_t k = 0; k < p.size(); ++k)
          if (p[k] == k) free = false;
      }
    if (free) v4n = i;
  }
  ASSERT_GE(v4n, 0);
  EXPECT_EQ(aut_morphisms(f, v4n).size(), 6u);
  Classification c = classify(f);
  EXPECT_TRUE(c.profile[v4n].normal_in_f);
  EXPECT_TRUE(c.profile[v4n].weakly_closed);
  EXPECT_TRUE(c.profile[v4n].centric);
  EXPECT_TRUE(c.profile[v4n].radical);
  CoreAndCenter cc = o_p_and_center(f, c);
  EXPECT_EQ(cc.core.members, f.subs[v4n].members);
}

TEST(FusionOfGroup, SelfFusionOfD8) {
  auto d8 = std::make_shared<Group>(catalog_group("D8"));
  FusionSystem f = fusion_of_p_group(d8, 2);
  Shape want{10, 8, 20, 4, 6, 8, 2, 4, 10, {8}};
  EXPECT_EQ(shape_of(f), want);
  EXPECT_TRUE(is_saturated(f).saturated);

  // In the self-fusion every subgroup is quasicentric and S is the core.
  Classification c = classify(f);
  for (int i = 0; i < f.sub_count(); ++i)
    EXPECT_TRUE(c.profile[i].quasicentric) << i;
  EXPECT_TRUE(c.profile[f.s_sub()].normal_in_f);
}

TEST(FusionOfGroup, KleinSylowInAlternatingGroups) {
  FusionSystem a4 = catalog_fusion("A4", 2);
  Shape want{5, 3, 13, 1, 2, 4, 1, 3, 4, {4}};
  EXPECT_EQ(shape_of(a4), want);
  EXPECT_TRUE(is_saturated(a4).saturated);

  // A5 induces exactly the same fusion on its Klein Sylow subgroup.
  FusionSystem a5 = catalog_fusion("A5", 2);
  EXPECT_EQ(shape_of(a5), want);
}

TEST(FusionOfGroup, QuaternionSylowInSpecialLinear) {
  FusionSystem f = catalog_fusion("SL23", 2);
  Shape want{6, 4, 32, 4, 3, 8, 2, 12, 4, {8}};
  EXPECT_EQ(shape_of(f), want);
  EXPECT_TRUE(is_saturated(f).saturated);

  // Aut_F(Q8) has order 12: the three cyclic C4 subgroups are permuted.
  EXPECT_EQ(classify(f).aut_order[f.s_sub()], 12);
}

TEST(FusionOfGroup, AlternatingSixMatchesSL32) {
  FusionSystem a6 = catalog_fusion("A6", 2);
  Shape want{10, 6, 44, 4, 2, 1, 1, 4, 9, {4, 4, 8}};
  EXPECT_EQ(shape_of(a6), want);
  EXPECT_TRUE(is_saturated(a6).saturated);

  // PSL(3,2) has an isomorphic dihedral Sylow subgroup and, famously, the
  // same fusion data; S4 does not (extra class, fewer morphisms).
  FusionSystem sl32 = catalog_fusion("SL32", 2);
  EXPECT_EQ(shape_of(sl32), want);
  EXPECT_NE(shape_of(catalog_fusion("S4", 2)), want);
}

TEST(FusionOfGroup, OddPrimeSpots) {
  FusionSystem a6 = catalog_fusion("A6", 3);
  EXPECT_EQ(a6.S->size(), 9);
  EXPECT_EQ(classify(a6).aut_order[a6.s_sub()], 4);
  EXPECT_TRUE(is_saturated(a6).saturated);

  FusionSystem s5 = catalog_fusion("S5", 5);
  EXPECT_EQ(s5.S->size(), 5);
  EXPECT_EQ(classify(s5).aut_order[s5.s_sub()], 4);
  EXPECT_TRUE(is_saturated(s5).saturated);
}

TEST(FusionOfGroup, SylowMustBeFullPPart) {
  Group s4 = catalog_group("S4");
  EXPECT_THROW(fusion_of_group(s4, 2, trivial_subgroup(s4)),
               std::invalid_argument);
}

TEST(FusionSkeleton, RejectsAmbientGroupsBeyondOneWord) {
  Group big = direct_product(direct_product(catalog_group("D8"),
                                            catalog_group("D8")),
                             catalog_group("C2"));
  EXPECT_EQ(big.size(), 128);
  EXPECT_THROW(fusion_of_p_group(std::make_shared<Group>(big), 2), CapError);
}

TEST(Saturation, GroupFusionIsAlwaysSaturated) {
  const std::vector<std::pair<std::string, int>> cases = {
      {"S3", 3}, {"S4", 2},   {"A4", 2},   {"A5", 2},  {"A6", 2},
      {"A6", 3}, {"SL23", 2}, {"GL23", 2}, {"SL32", 2}, {"SD16", 2},
      {"S5", 5}, {"S5", 2},   {"GL23", 3}};
  for (const auto& [name, p] : cases) {
    FusionSystem f = catalog_fusion(name, p);
    SaturationReport rep = is_saturated(f);
    EXPECT_TRUE(rep.saturated) << name << " p=" << p << " axiom " << rep.axiom;

    Classification c = classify(f);
    for (int i = 0; i < f.sub_count(); ++i) {
      const SubgroupProfile& pr = c.profile[i];
      // Receptive subgroups are fully centralized; receptive and fully
      // automized together force fully normalized.
      EXPECT_TRUE(!pr.receptive || pr.fully_centralized) << name << " " << i;
      EXPECT_TRUE(!(pr.receptive && pr.fully_automized) || pr.fully_normalized)
          << name << " " << i;
      // In a saturated system the two saturation axioms hold.
      EXPECT_TRUE(!pr.fully_normalized ||
                  (pr.fully_automized && pr.fully_centralized))
          << name << " " << i;
      EXPECT_TRUE(!pr.fully_centralized || pr.receptive) << name << " " << i;
      EXPECT_TRUE(!pr.centric || pr.quasicentric) << name << " " << i;
      EXPECT_TRUE(!pr.normal_in_f || pr.strongly_closed) << name << " " << i;
      EXPECT_TRUE(!pr.central_in_f || pr.normal_in_f) << name << " " << i;
      EXPECT_EQ(pr.strongly_closed, is_strongly_closed_subgroup(f, i));
      EXPECT_EQ(pr.central_in_f, is_central_subgroup(f, i));
    }
    // S itself is centric, radical and fully normalized.
    const SubgroupProfile& top = c.profile[f.s_sub()];
    EXPECT_TRUE(top.centric && top.radical && top.fully_normalized) << name;
  }
}

TEST(Saturation, CentricMatchesPCentricInTheGroup) {
  for (const auto& [name, p] :
       std::vector<std::pair<std::string, int>>{{"S4", 2}, {"A6", 2},
                                                {"SL23", 2}, {"A6", 3}}) {
    Group g = catalog_group(name);
    FusionSystem f = fusion_of_group(g, p);
    Classification c = classify(f);
    for (int i = 0; i < f.sub_count(); ++i)
      EXPECT_EQ(c.profile[i].centric,
                p_centric_in(g, p, parent_subgroup(f, g, i)).centric)
          << name << " sub " << i;
  }
}

TEST(Saturation, SylowAxiomFailureIsWitnessed) {
  // V4 with one odd automorphism missing its square: Aut_F(S) = C2 cannot
  // contain a Sylow 2-subgroup image of Aut_S(S) = 1.
  auto v4 = std::make_shared<Group>(catalog_group("V4"));
  AutSeed swap;
  for (int x = 0; x < 4; ++x) swap.domain.push_back(x);
  int a = v4->id_of(parse_cycles(4, "(0 1)(2 3)"));
  int b = v4->id_of(parse_cycles(4, "(0 2)(1 3)"));
  int c = v4->id_of(parse_cycles(4, "(0 3)(1 2)"));
  swap.images.resize(4);
  swap.images[0] = 0;
  swap.images[a] = static_cast<std::uint8_t>(b);
  swap.images[b] = static_cast<std::uint8_t>(a);
  swap.images[c] = static_cast<std::uint8_t>(c);
  FusionSystem f = generate_fusion(v4, 2, {swap});
  SaturationReport rep = is_saturated(f);
  EXPECT_FALSE(rep.saturated);
  EXPECT_EQ(rep.axiom, "sylow");
  EXPECT_EQ(rep.sub, f.s_sub());
  EXPECT_FALSE(rep.witness.has_value());
}

TEST(Saturation, ExtensionAxiomFailureIsWitnessed) {
  // Fusing the center of D8 with a reflection cannot be saturated: the map
  // out of the reflection subgroup has no extension to its normalizer.
  auto d8 = std::make_shared<Group>(catalog_group("D8"));
  int z = d8->id_of(parse_cycles(4, "(0 2)(1 3)"));
  int t = d8->id_of(parse_cycles(4, "(0 2)"));
  AutSeed fuse{{0, std::min(z, t)}, {0, static_cast<std::uint8_t>(std::max(z, t))}};
  FusionSystem f = generate_fusion(d8, 2, {fuse});
  SaturationReport rep = is_saturated(f);
  EXPECT_FALSE(rep.saturated);
  EXPECT_EQ(rep.axiom, "extension");
  ASSERT_TRUE(rep.witness.has_value());
  EXPECT_EQ(rep.witness->cod, rep.sub);
  EXPECT_EQ(f.subs[rep.sub].size(), 2);
  // The violated target is the center, the fully centralized end of the arc.
  EXPECT_TRUE(f.subs[rep.sub].contains_id(z));
}

TEST(GenerateFusion, TriangleAutomorphismRealizesAlternatingFour) {
  Group a4 = catalog_group("A4");
  FusionSystem from_group = fusion_of_group(a4, 2);

  std::vector<int> to_parent;
  auto v4 = std::make_shared<Group>(
      subgroup_as_group(sylow(a4, 2), &to_parent));
  // Conjugation by a 3-cycle rotates the three involutions.
  Perm three = parse_cycles(v4->degree, "(1 2 3)");
  AutSeed rotate;
  for (int x = 0; x < 4; ++x) {
    rotate.domain.push_back(x);
    int y = v4->id_of(conjugate(three, (*v4)[x]));
    ASSERT_GE(y, 0);
    rotate.images.push_back(static_cast<std::uint8_t>(y));
  }
  FusionSystem gen = generate_fusion(v4, 2, {rotate});
  EXPECT_EQ(gen.total_morphisms(), 13);
  EXPECT_EQ(gen.mors, from_group.mors);
  EXPECT_TRUE(is_saturated(gen).saturated);
}

TEST(Morphisms, CompositionRestrictionInversion) {
  FusionSystem f = catalog_fusion("S4", 2);
  for (int i = 0; i < f.sub_count(); ++i)
    for (const FMor& m : f.mors[i]) {
      FMor inv = invert_morphism(f, m);
      EXPECT_TRUE(has_morphism(f, inv));
      EXPECT_EQ(compose_morphisms(f, inv, m), identity_morphism(f, i));
      for (int j = 0; j < f.sub_count(); ++j) {
        if (j != i && !(f.masks[j] & ~f.masks[i])) {
          EXPECT_TRUE(has_morphism(f, restrict_morphism(f, m, j)));
        }
      }
    }
  int v4n = sub_by_cycles(f, {"(0 1)(2 3)", "(0 2)(1 3)"});
  ASSERT_GE(v4n, 0);
  EXPECT_EQ(homs_between(f, v4n, v4n).size(), 6u);
  EXPECT_EQ(fusion_aut_group(f, v4n).size(), 6);

  EXPECT_THROW(morphism_from_images(f, v4n, {0, 0, 1, 2}),
               std::invalid_argument);
}

TEST(LocalSubsystems, TrivialSubgroupReproducesTheSystem) {
  FusionSystem f = catalog_fusion("S4", 2);
  EmbeddedSystem n = normalizer_subsystem(f, 0);
  EXPECT_EQ(n.t_sub, f.s_sub());
  EXPECT_EQ(n.sys.mors, f.mors);
  EmbeddedSystem c = centralizer_subsystem(f, 0);
  EXPECT_EQ(c.sys.mors, f.mors);
}

TEST(LocalSubsystems, NormalizerOfTheCoreIsEverything) {
  FusionSystem f = catalog_fusion("S4", 2);
  CoreAndCenter cc = o_p_and_center(f);
  std::uint64_t mask = 0;
  for (int x : cc.core.members) mask |= std::uint64_t{1} << x;
  int core = f.sub_of_mask(mask);
  ASSERT_GE(core, 0);
  EmbeddedSystem n = normalizer_subsystem(f, core);
  EXPECT_EQ(n.t_sub, f.s_sub());
  EXPECT_EQ(n.sys.mors, f.mors);
}

TEST(LocalSubsystems, CentralizerOfTheCenterIsInner) {
  // C_F(Z(S)) in the S4 fusion system is the self-fusion of D8: the center
  // is quasicentric.
  FusionSystem f = catalog_fusion("S4", 2);
  int z = sub_index(f, center_of(*f.S));
  ASSERT_GE(z, 0);
  EmbeddedSystem c = centralizer_subsystem(f, z);
  EXPECT_EQ(c.t_sub, f.s_sub());  // the center is central in S
  FusionSystem self = fusion_of_p_group(c.sys.S, 2);
  EXPECT_EQ(c.sys.mors, self.mors);
}

TEST(LocalSubsystems, FullyKNormalizedComparesCentralizers) {
  FusionSystem f = catalog_fusion("S4", 2);
  std::vector<Perm> trivial_k{identity_perm(2)};
  Subgroup zc = center_of(*f.S);
  int z = sub_index(f, zc);
  int other = -1;  // a double transposition outside the center
  for (const char* s : {"(0 1)(2 3)", "(0 2)(1 3)", "(0 3)(1 2)"}) {
    int id = f.S->id_of(parse_cycles(f.S->degree, s));
    if (id > 0 && !zc.contains_id(id)) {
      other = sub_by_cycles(f, {s});
      break;
    }
  }
  ASSERT_GE(z, 0);
  ASSERT_GE(other, 0);
  EXPECT_TRUE(fully_k_normalized(f, z, trivial_k));
  EXPECT_FALSE(fully_k_normalized(f, other, trivial_k));

  EXPECT_THROW(fully_k_normalized(f, z, {identity_perm(3)}),
               std::invalid_argument);
}

TEST(Alperin, EveryMorphismDecomposes) {
  for (const auto& [name, p] : std::vector<std::pair<std::string, int>>{
           {"S4", 2}, {"A6", 2}, {"SL23", 2}, {"A4", 2}}) {
    FusionSystem f = catalog_fusion(name, p);
    Classification c = classify(f);
    for (int i = 0; i < f.sub_count(); ++i)
      for (const FMor& m : f.mors[i]) {
        std::vector<AlperinStep> chain = alperin_decomposition(f, m);
        EXPECT_TRUE(alperin_chain_composes(f, m, chain)) << name;
        for (const AlperinStep& step : chain) {
          const SubgroupProfile& pr = c.profile[step.r_sub];
          EXPECT_TRUE(step.r_sub == f.s_sub() ||
                      (pr.centric && pr.radical && pr.fully_normalized))
              << name;
        }
      }
  }
}

TEST(Alperin, IdentityNeedsNoSteps) {
  FusionSystem f = catalog_fusion("S4", 2);
  FMor id = identity_morphism(f, 2);
  EXPECT_TRUE(alperin_decomposition(f, id).empty());
  EXPECT_TRUE(alperin_chain_composes(f, id, {}));
}
