#include <algorithm>
#include <cstdint>
#include <memory>
#include <numeric>
#include <string>
#include <vector>

#include "gtest/gtest.h"

#include "ff/constructions.hpp"
#include "ff/fusion.hpp"
#include "ff/group.hpp"
#include "ff/perm.hpp"

using namespace ff;

namespace {

FusionSystem catalog_fusion(const std::string& name, int p) {
  return fusion_of_group(catalog_group(name), p);
}

// Index of the subgroup of f.S with the given member ids.
int sub_index_of(const FusionSystem& f, const std::vector<int>& members) {
  std::uint64_t mask = 0;
  for (int m : members) mask |= std::uint64_t{1} << m;
  int idx = f.sub_of_mask(mask);
  EXPECT_GE(idx, 0) << "subgroup with " << members.size() << " members missing";
  return idx;
}

int sub_index_of(const FusionSystem& f, const Subgroup& h) {
  return sub_index_of(f, h.members);
}

// Builds F_{S1 x S2}(G1 x G2) where the Sylow subgroup is the product of the
// two factor Sylows, so that its elements coincide with product_fusion's.
FusionSystem direct_product_fusion(const Group& g1, const Group& g2,
                                   const FusionSystem& f1,
                                   const FusionSystem& f2, int p) {
  Group g = direct_product(g1, g2);
  Subgroup s{&g, {}};
  for (const Perm& a : f1.S->elems) {
    for (const Perm& b : f2.S->elems) {
      Perm pair = a;
      for (std::uint16_t x : b)
        pair.push_back(static_cast<std::uint16_t>(x + g1.degree));
      s.members.push_back(g.id_of(pair));
    }
  }
  std::sort(s.members.begin(), s.members.end());
  return fusion_of_group(g, p, s);
}

// True when every homset of `inner` is contained in the same-mask homset of
// `outer`; both systems must share the same element labels.
bool subsystem_of(const FusionSystem& inner, const FusionSystem& outer) {
  if (inner.S->elems != outer.S->elems) return false;
  for (int i = 0; i < inner.sub_count(); ++i) {
    int oi = outer.sub_of_mask(inner.masks[i]);
    if (oi < 0) return false;
    for (const FMor& m : inner.mors[i]) {
      FMor probe = m;
      probe.dom = static_cast<std::uint16_t>(oi);
      probe.cod = static_cast<std::uint16_t>(outer.sub_of_mask(m.image_mask));
      if (!has_morphism(outer, probe)) return false;
    }
  }
  return true;
}

}  // namespace

// ---------------------------------------------------------------------------
// Quotients
// ---------------------------------------------------------------------------

TEST(Quotients, CenterQuotientOfSpecialLinearIsAlternatingFour) {
  FusionSystem f = catalog_fusion("SL23", 2);
  int zi = sub_index_of(f, center_of(*f.S));
  ASSERT_EQ(f.subs[zi].size(), 2);

  std::vector<int> toq;
  FusionSystem q = quotient_fusion(f, zi, &toq);
  EXPECT_EQ(q.S->size(), 4);
  EXPECT_EQ(q.sub_count(), 5);
  EXPECT_EQ(q.total_morphisms(), 13);
  EXPECT_TRUE(is_saturated(q).saturated);

  // The element map collapses exactly the center onto the identity coset.
  ASSERT_EQ(static_cast<int>(toq.size()), f.S->size());
  for (int m = 0; m < f.S->size(); ++m)
    EXPECT_EQ(toq[m] == 0, f.subs[zi].contains_id(m)) << "element " << m;

  // SL(2,3)/Z has the fusion of A4 on its Klein Sylow subgroup.
  FusionSystem a4 = catalog_fusion("A4", 2);
  auto iso = fusion_isomorphism(q, a4);
  ASSERT_TRUE(iso.has_value());
  EXPECT_TRUE(equal_under(q, a4, *iso));
}

TEST(Quotients, TrivialQuotientOnlyRelabels) {
  FusionSystem f = catalog_fusion("S4", 2);
  std::vector<int> toq;
  FusionSystem q = quotient_fusion(f, 0, &toq);

  std::vector<int> iota(f.S->size());
  std::iota(iota.begin(), iota.end(), 0);
  EXPECT_EQ(toq, iota);
  EXPECT_EQ(q.total_morphisms(), f.total_morphisms());
  EXPECT_TRUE(equal_under(f, q, toq));
}

TEST(Quotients, QuotientByTheWholeSylowIsTrivial) {
  FusionSystem f = catalog_fusion("S4", 2);
  FusionSystem q = quotient_fusion(f, f.s_sub());
  EXPECT_EQ(q.S->size(), 1);
  EXPECT_EQ(q.sub_count(), 1);
  EXPECT_EQ(q.total_morphisms(), 1);
}

TEST(Quotients, RejectsSubgroupsThatAreNotStronglyClosed) {
  // Z(D8) is not strongly closed in the S4 fusion system: its involution
  // fuses onto the non-central involutions of D8.
  FusionSystem f = catalog_fusion("S4", 2);
  int zi = sub_index_of(f, center_of(*f.S));
  EXPECT_FALSE(is_strongly_closed_subgroup(f, zi));
  EXPECT_THROW(quotient_fusion(f, zi), std::invalid_argument);
}

TEST(Quotients, ResidualFreeQuotientCommutes) {
  // O^{2'}(F/Z) = O^{2'}(F)/Z for the central involution of SL(2,3).
  FusionSystem f = catalog_fusion("SL23", 2);
  int zi = sub_index_of(f, center_of(*f.S));

  EmbeddedSystem e = o_p_prime_sub(f);
  ASSERT_EQ(e.t_sub, f.s_sub());
  FusionSystem lhs = o_p_prime_sub(quotient_fusion(f, zi)).sys;
  FusionSystem rhs = quotient_fusion(e.sys, sub_index_of(e.sys, f.subs[zi].members));
  EXPECT_TRUE(fusion_equal(lhs, rhs));
}

// ---------------------------------------------------------------------------
// Products
// ---------------------------------------------------------------------------

namespace {

struct ProductCase {
  const char* left;
  const char* right;
  int subs;
  int morphisms;
  int centric;
  int core;
  int center;
};

// Counts cross-checked in tools/oracle_fusion.py (product.* lines).
const ProductCase kProductCases[] = {
    {"A4", "C2", 16, 44, 1, 8, 2},
    {"S4", "C2", 35, 107, 4, 8, 2},
    {"SL23", "C2", 19, 119, 4, 16, 4},
    {"A4", "D8", 158, 1034, 4, 32, 2},
};

}  // namespace

TEST(Products, ProductFusionMatchesFusionOfTheProductGroup) {
  for (const ProductCase& pc : kProductCases) {
    SCOPED_TRACE(std::string(pc.left) + " x " + pc.right);
    Group g1 = catalog_group(pc.left);
    Group g2 = catalog_group(pc.right);
    FusionSystem f1 = fusion_of_group(g1, 2);
    FusionSystem f2 = fusion_of_group(g2, 2);

    FusionSystem prod = product_fusion(f1, f2);
    FusionSystem direct = direct_product_fusion(g1, g2, f1, f2, 2);
    EXPECT_EQ(prod.sub_count(), pc.subs);
    EXPECT_EQ(prod.total_morphisms(), pc.morphisms);
    EXPECT_TRUE(fusion_equal(prod, direct));

    Classification c = classify(direct);
    CoreAndCenter cc = o_p_and_center(direct, c);
    int centric = 0;
    for (int i = 0; i < direct.sub_count(); ++i)
      centric += c.profile[i].centric;
    EXPECT_EQ(centric, pc.centric);
    EXPECT_EQ(cc.core.size(), pc.core);
    EXPECT_EQ(cc.center.size(), pc.center);
  }
}

TEST(Products, CentricSubgroupsFactorThroughProjections) {
  // P is centric in F1 x F2 exactly when both projections are centric and
  // Z(P1) x Z(P2) lies inside P.
  Group g1 = catalog_group("S4");
  Group g2 = catalog_group("C2");
  FusionSystem f1 = fusion_of_group(g1, 2);
  FusionSystem f2 = fusion_of_group(g2, 2);
  FusionSystem prod = product_fusion(f1, f2);

  Classification c1 = classify(f1);
  Classification c2 = classify(f2);
  Classification cp = classify(prod);
  int n2 = f2.S->size();

  for (int i = 0; i < prod.sub_count(); ++i) {
    std::vector<int> m1, m2;
    for (int e : prod.subs[i].members) {
      m1.push_back(e / n2);
      m2.push_back(e % n2);
    }
    auto dedupe = [](std::vector<int>* v) {
      std::sort(v->begin(), v->end());
      v->erase(std::unique(v->begin(), v->end()), v->end());
    };
    dedupe(&m1);
    dedupe(&m2);
    int i1 = sub_index_of(f1, m1);
    int i2 = sub_index_of(f2, m2);

    Subgroup z1 = center_of_subgroup(f1.subs[i1]);
    Subgroup z2 = center_of_subgroup(f2.subs[i2]);
    bool z_inside = true;
    for (int x : z1.members)
      for (int y : z2.members)
        z_inside = z_inside && prod.subs[i].contains_id(x * n2 + y);

    bool expect = c1.profile[i1].centric && c2.profile[i2].centric && z_inside;
    EXPECT_EQ(cp.profile[i].centric, expect) << "subgroup " << i;
  }
}

TEST(Products, RejectsMismatchedPrimes) {
  FusionSystem f1 = catalog_fusion("S4", 2);
  FusionSystem f2 = catalog_fusion("S3", 3);
  EXPECT_THROW(product_fusion(f1, f2), std::invalid_argument);
}

// ---------------------------------------------------------------------------
// Transport, equality, isomorphism
// ---------------------------------------------------------------------------

TEST(Transport, InnerAutomorphismFixesTheSystem) {
  FusionSystem f = catalog_fusion("S4", 2);
  for (int g = 0; g < f.S->size(); ++g) {
    std::vector<int> alpha(f.S->size());
    for (int x = 0; x < f.S->size(); ++x) alpha[x] = f.S->conj(g, x);
    EXPECT_TRUE(fusion_equal(transport(f, f.S, alpha), f)) << "element " << g;
  }
}

TEST(Transport, RoundTripThroughAnIsomorphism) {
  FusionSystem a = catalog_fusion("A4", 2);
  FusionSystem b = catalog_fusion("A5", 2);
  auto iso = fusion_isomorphism(a, b);
  ASSERT_TRUE(iso.has_value());
  EXPECT_TRUE(equal_under(a, b, *iso));
  EXPECT_TRUE(fusion_equal(transport(a, b.S, *iso), b));
}

TEST(Isomorphism, SeparatesTheSystemsOverDihedralEight) {
  FusionSystem s4 = catalog_fusion("S4", 2);
  FusionSystem a6 = catalog_fusion("A6", 2);
  FusionSystem sl32 = catalog_fusion("SL32", 2);
  FusionSystem d8 = fusion_of_p_group(s4.S, 2);

  EXPECT_TRUE(fusion_isomorphism(a6, a6).has_value());
  EXPECT_TRUE(fusion_isomorphism(sl32, a6).has_value());
  EXPECT_FALSE(fusion_isomorphism(s4, a6).has_value());
  EXPECT_FALSE(fusion_isomorphism(d8, s4).has_value());
}

TEST(Isomorphism, DistinguishesTheUnderlyingGroup) {
  // Self-fusion of D8 and of Q8: same order, non-isomorphic Sylow groups.
  FusionSystem d8 = fusion_of_p_group(catalog_fusion("S4", 2).S, 2);
  FusionSystem q8 = fusion_of_p_group(catalog_fusion("SL23", 2).S, 2);
  EXPECT_FALSE(fusion_isomorphism(d8, q8).has_value());
}

TEST(Isomorphism, EqualUnderRejectsTheWrongMap) {
  FusionSystem f = catalog_fusion("S4", 2);
  FusionSystem d8 = fusion_of_p_group(f.S, 2);
  std::vector<int> iota(f.S->size());
  std::iota(iota.begin(), iota.end(), 0);
  EXPECT_TRUE(equal_under(f, f, iota));
  EXPECT_FALSE(equal_under(f, d8, iota));
}

// ---------------------------------------------------------------------------
// Focal subgroups and residual subsystems
// ---------------------------------------------------------------------------

TEST(Focal, MatchesTheCommutatorData) {
  struct Case {
    const char* name;
    int p;
    int hyperfocal;
    int focal;
  };
  const Case cases[] = {
      {"S4", 2, 4, 4}, {"A4", 2, 4, 4}, {"SL23", 2, 8, 8}, {"A6", 2, 8, 8}};
  for (const Case& c : cases) {
    SCOPED_TRACE(c.name);
    FusionSystem f = catalog_fusion(c.name, c.p);
    FocalData fd = hyperfocal_and_focal(f);
    EXPECT_EQ(fd.hyperfocal.size(), c.hyperfocal);
    EXPECT_EQ(fd.focal.size(), c.focal);
    EXPECT_TRUE(fd.focal.contains_all(fd.hyperfocal));
  }

  // Self-fusion: the focal subgroup degenerates to the derived subgroup and
  // the hyperfocal subgroup to the identity.
  FusionSystem d8 = fusion_of_p_group(catalog_fusion("S4", 2).S, 2);
  FocalData fd = hyperfocal_and_focal(d8);
  EXPECT_EQ(fd.hyperfocal.size(), 1);
  EXPECT_EQ(fd.focal.size(), 2);
  EXPECT_EQ(fd.focal, commutator_subgroup(*d8.S));
}

TEST(ResidualSubsystems, OddResidualOfSymmetricFourIsEverything) {
  // Aut_F(V4) = S3 is generated by its involutions, so the odd residual
  // cannot lose anything.
  FusionSystem f = catalog_fusion("S4", 2);
  EmbeddedSystem e = o_p_prime_sub(f);
  EXPECT_EQ(e.t_sub, f.s_sub());
  EXPECT_TRUE(fusion_equal(e.sys, f));
}

TEST(ResidualSubsystems, EvenResidualOfSymmetricFourIsAlternatingFusion) {
  FusionSystem f = catalog_fusion("S4", 2);
  EmbeddedSystem e = o_p_index_sub(f);

  CoreAndCenter cc = o_p_and_center(f);
  EXPECT_EQ(f.subs[e.t_sub], cc.core);  // hyp(F) = O_2(F) = V4 here
  EXPECT_EQ(e.sys.S->size(), 4);
  EXPECT_EQ(e.sys.total_morphisms(), 13);
  EXPECT_TRUE(is_saturated(e.sys).saturated);

  auto iso = fusion_isomorphism(e.sys, catalog_fusion("A4", 2));
  EXPECT_TRUE(iso.has_value());
}

TEST(ResidualSubsystems, AlternatingFourResiduals) {
  FusionSystem f = catalog_fusion("A4", 2);
  EXPECT_TRUE(fusion_equal(o_p_index_sub(f).sys, f));
  EXPECT_TRUE(fusion_equal(o_p_prime_sub(f).sys, fusion_of_p_group(f.S, 2)));
}

TEST(ResidualSubsystems, SpecialLinearResiduals) {
  FusionSystem f = catalog_fusion("SL23", 2);
  EXPECT_TRUE(fusion_equal(o_p_index_sub(f).sys, f));
  EXPECT_TRUE(fusion_equal(o_p_prime_sub(f).sys, fusion_of_p_group(f.S, 2)));
}

TEST(ResidualSubsystems, ExhaustiveMinimalityAgrees) {
  FusionSystem s4 = catalog_fusion("S4", 2);
  EXPECT_TRUE(
      fusion_equal(o_p_index_sub(s4, true).sys, o_p_index_sub(s4).sys));
  FusionSystem sl = catalog_fusion("SL23", 2);
  EXPECT_TRUE(
      fusion_equal(o_p_prime_sub(sl, true).sys, o_p_prime_sub(sl).sys));
}

// ---------------------------------------------------------------------------
// Central extensions of subsystems
// ---------------------------------------------------------------------------

TEST(CentralExtension, TrivialCenterReturnsTheSubsystem) {
  FusionSystem f = catalog_fusion("S4", 2);
  EmbeddedSystem e = o_p_index_sub(f);
  EmbeddedSystem ze = z_extend(f, e, 0);
  EXPECT_EQ(ze.t_sub, e.t_sub);
  EXPECT_TRUE(fusion_equal(ze.sys, e.sys));
}

TEST(CentralExtension, CircleFactorTimesEvenResidualIsAProduct) {
  // In F(S4 x C2) with E = O^2(F) over V4 x 1 and Z = 1 x C2, the extension
  // ZE is exactly F_{V4}(A4) x F_{C2}(C2): the D8-conjugations that swap two
  // involutions of V4 restrict outside E and must be rejected.
  Group s4 = catalog_group("S4");
  Group c2 = catalog_group("C2");
  Group g = direct_product(s4, c2);
  FusionSystem f = fusion_of_group(g, 2);

  Perm circle = identity_perm(g.degree);
  circle[s4.degree] = static_cast<std::uint16_t>(s4.degree + 1);
  circle[s4.degree + 1] = static_cast<std::uint16_t>(s4.degree);
  int zi = sub_index_of(f, {0, f.S->id_of(circle)});
  ASSERT_TRUE(is_central_subgroup(f, zi));

  EmbeddedSystem e = o_p_index_sub(f);
  EXPECT_EQ(f.subs[e.t_sub].size(), 4);
  EmbeddedSystem ze = z_extend(f, e, zi);
  EXPECT_EQ(f.subs[ze.t_sub].size(), 8);

  FusionSystem expected = product_fusion(o_p_index_sub(catalog_fusion("S4", 2)).sys,
                                         catalog_fusion("C2", 2));
  EXPECT_TRUE(fusion_equal(ze.sys, expected));
}

TEST(CentralExtension, FullCircleFactorRecoversTheWholeSystem) {
  // With E = O^2(F(SL23 x C2)) over Q8 x 1 and Z = 1 x C2 the extension
  // climbs back up to all of F: every morphism splits as phi1 x phi2 with
  // phi1 already in E.
  Group sl = catalog_group("SL23");
  Group c2 = catalog_group("C2");
  Group g = direct_product(sl, c2);
  FusionSystem f = fusion_of_group(g, 2);

  Perm circle = identity_perm(g.degree);
  circle[sl.degree] = static_cast<std::uint16_t>(sl.degree + 1);
  circle[sl.degree + 1] = static_cast<std::uint16_t>(sl.degree);
  int zi = sub_index_of(f, {0, f.S->id_of(circle)});

  EmbeddedSystem e = o_p_index_sub(f);
  EXPECT_EQ(f.subs[e.t_sub].size(), 8);
  EmbeddedSystem ze = z_extend(f, e, zi);
  EXPECT_EQ(ze.t_sub, f.s_sub());
  EXPECT_TRUE(fusion_equal(ze.sys, f));
  EXPECT_TRUE(subsystem_of(ze.sys, f));
}

// ---------------------------------------------------------------------------
// Reduction
// ---------------------------------------------------------------------------

TEST(Reduction, ConstrainedSystemsCollapseCompletely) {
  EXPECT_FALSE(is_reduced(catalog_fusion("S4", 2)));
  EXPECT_EQ(reduction(catalog_fusion("S4", 2)).S->size(), 1);
  EXPECT_EQ(reduction(catalog_fusion("A4", 2)).S->size(), 1);
  EXPECT_EQ(reduction(catalog_fusion("SL23", 2)).S->size(), 1);
}

TEST(Reduction, SimpleAlternatingSixIsAlreadyReduced) {
  FusionSystem f = catalog_fusion("A6", 2);
  EXPECT_TRUE(is_reduced(f));
  EXPECT_TRUE(fusion_equal(reduction(f), f));
}

TEST(Reduction, SelfFusionIsNotReduced) {
  FusionSystem d8 = fusion_of_p_group(catalog_fusion("S4", 2).S, 2);
  EXPECT_FALSE(is_reduced(d8));
  EXPECT_EQ(reduction(d8).S->size(), 1);
}
