#include <algorithm>
#include <array>
#include <fstream>
#include <map>
#include <string>
#include <vector>

#include "gtest/gtest.h"

#include "ff/caps.hpp"
#include "ff/group.hpp"
#include "ff/monomial.hpp"
#include "ff/perm.hpp"

using namespace ff;

namespace {

Subgroup sub_from_cycles(const Group& g, const std::vector<std::string>& gens) {
  std::vector<int> ids;
  for (const auto& s : gens) {
    int id = g.id_of(parse_cycles(g.degree, s));
    EXPECT_GE(id, 0) << s;
    ids.push_back(id);
  }
  return subgroup_closure(g, ids);
}

std::vector<int> order_multiset(const Group& g, const Subgroup& h) {
  std::vector<int> out;
  for (int m : h.members) out.push_back(g.order_of(m));
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST(Perm, CycleParsingAndArithmetic) {
  Perm a = parse_cycles(5, "(0 1 2)(3 4)");
  EXPECT_EQ(cycle_string(a), "(0 1 2)(3 4)");
  EXPECT_EQ(perm_order(a), 6);
  EXPECT_EQ(perm_sign(a), -1);
  EXPECT_TRUE(is_identity(parse_cycles(5, "()")));
  EXPECT_TRUE(is_identity(compose(a, inverse(a))));

  // compose applies the right factor first.
  Perm b = parse_cycles(5, "(0 1)");
  EXPECT_EQ(compose(a, b)[0], a[b[0]]);

  // conjugate(g, x) relabels the cycle structure of x through g.
  Perm g = parse_cycles(5, "(0 3)");
  Perm c = conjugate(g, parse_cycles(5, "(0 1)"));
  EXPECT_EQ(cycle_string(c), "(1 3)");

  EXPECT_THROW(parse_cycles(3, "(0 5)"), ParseError);
  EXPECT_THROW(parse_cycles(3, "(0 1"), ParseError);
  EXPECT_THROW(parse_cycles(3, "(0 1)(1 2)"), ParseError);
}

TEST(Group, ClosureOrders) {
  Group d8 = closure(4, {parse_cycles(4, "(0 1 2 3)"), parse_cycles(4, "(0 2)")});
  EXPECT_EQ(d8.size(), 8);
  Group s4 = closure(4, {parse_cycles(4, "(0 1 2 3)"), parse_cycles(4, "(0 1)")});
  EXPECT_EQ(s4.size(), 24);
  EXPECT_TRUE(is_identity(s4[0]));  // sorted element list starts at the identity
}

TEST(Group, CatalogOrders) {
  const std::map<std::string, int> expected = {
      {"S3", 6},    {"S4", 24},   {"S5", 120},  {"A4", 12},   {"A5", 60},
      {"A6", 360},  {"D8", 8},    {"Q8", 8},    {"SD16", 16}, {"SL23", 24},
      {"GL23", 48}, {"SL32", 168}, {"C2", 2},   {"C5", 5},    {"C8", 8},
      {"V4", 4}};
  for (const auto& [name, order] : expected)
    EXPECT_EQ(catalog_group(name).size(), order) << name;
  for (const auto& name : catalog_names()) {
    Group g = catalog_group(name);
    EXPECT_GT(g.size(), 1) << name;
    // Every stored generator is a member and generates the whole group.
    std::vector<int> ids;
    for (const Perm& p : g.gens) ids.push_back(g.id_of(p));
    EXPECT_EQ(subgroup_closure(g, ids).size(), g.size()) << name;
  }
}

TEST(Group, MultiplicationAgreesWithComposition) {
  Group g = catalog_group("SL23");
  for (int a = 0; a < g.size(); a += 5)
    for (int b = 0; b < g.size(); b += 7) {
      EXPECT_EQ(g[g.mul(a, b)], compose(g[a], g[b]));
      EXPECT_EQ(g.mul(a, g.inv(a)), 0);
    }
}

TEST(Subgroups, LatticeCounts) {
  EXPECT_EQ(all_subgroups(catalog_group("D8")).size(), 10u);
  EXPECT_EQ(all_subgroups(catalog_group("S4")).size(), 30u);
  EXPECT_EQ(all_subgroups(catalog_group("Q8")).size(), 6u);
  EXPECT_EQ(all_subgroups(catalog_group("SD16")).size(), 15u);
  EXPECT_EQ(all_subgroups(catalog_group("A4")).size(), 10u);
}

TEST(Subgroups, LatticeEntriesSatisfyLagrange) {
  Group g = catalog_group("SD16");
  for (const Subgroup& h : all_subgroups(g)) {
    EXPECT_EQ(g.size() % h.size(), 0);
    EXPECT_TRUE(h.contains_id(0));
  }
}

TEST(Sylow, OrdersAndShape) {
  Group a6 = catalog_group("A6");
  Subgroup s = sylow(a6, 2);
  EXPECT_EQ(s.size(), 8);
  EXPECT_EQ(order_multiset(a6, s), (std::vector<int>{1, 2, 2, 2, 2, 2, 4, 4}));

  EXPECT_EQ(sylow(catalog_group("S4"), 5).size(), 1);

  Group gl23 = catalog_group("GL23");
  Subgroup s2 = sylow(gl23, 2);
  EXPECT_EQ(s2.size(), 16);
  EXPECT_EQ(order_multiset(gl23, s2),
            (std::vector<int>{1, 2, 2, 2, 2, 2, 4, 4, 4, 4, 4, 4, 8, 8, 8, 8}));
}

TEST(Sylow, OrderIsThePPartEverywhere) {
  for (const auto& name : {"S3", "S4", "S5", "A4", "A5", "A6", "Q8", "SD16",
                           "SL23", "GL23", "SL32"})
    for (int p : {2, 3, 5}) {
      Group g = catalog_group(name);
      int expected = 1;
      for (int n = g.size(); n % p == 0; n /= p) expected *= p;
      EXPECT_EQ(sylow(g, p).size(), expected) << name << " p=" << p;
    }
}

TEST(Sylow, CanonicalRepresentativeIsStable) {
  // The canonical Sylow subgroup is the lex-least conjugate, so recomputing
  // it or conjugating it never yields a smaller member list.
  Group g = catalog_group("A6");
  Subgroup s = sylow(g, 2);
  EXPECT_EQ(sylow(g, 2).members, s.members);
  for (int t = 0; t < g.size(); t += 17)
    EXPECT_LE(s.members, conjugate_subgroup(g, t, s).members);
}

TEST(LocalSubgroups, CentralizersAndNormalizers) {
  Group s4 = catalog_group("S4");
  Subgroup t01 = sub_from_cycles(s4, {"(0 1)"});
  EXPECT_EQ(centralizer_sub(s4, t01).size(), 4);

  Subgroup v4n = sub_from_cycles(s4, {"(0 1)(2 3)", "(0 2)(1 3)"});
  EXPECT_EQ(normalizer(s4, v4n).size(), 24);
  EXPECT_EQ(centralizer_sub(s4, v4n).size(), 4);
  EXPECT_TRUE(is_subgroup_normal(s4, v4n));

  Subgroup d8 = sylow(s4, 2);
  Subgroup z = center_of_subgroup(d8);
  EXPECT_EQ(z.size(), 2);
  EXPECT_EQ(centralizer_sub(s4, z).size(), 8);
}

TEST(LocalSubgroups, TransporterSizes) {
  Group s4 = catalog_group("S4");
  Subgroup p = sub_from_cycles(s4, {"(0 1)"});
  Subgroup q = sub_from_cycles(s4, {"(2 3)"});
  std::vector<int> t = transporter(s4, p, q);
  EXPECT_EQ(t.size(), 4u);
  for (int x : t)
    for (int m : p.members) EXPECT_TRUE(q.contains_id(s4.conj(x, m)));

  Group a5 = catalog_group("A5");
  Subgroup c5 = sub_from_cycles(a5, {"(0 1 2 3 4)"});
  Subgroup c3 = sub_from_cycles(a5, {"(0 1 2)"});
  EXPECT_TRUE(transporter(a5, c5, c3).empty());
}

TEST(LocalSubgroups, ConjugationHomCounts) {
  Group s4 = catalog_group("S4");
  Subgroup v4n = sub_from_cycles(s4, {"(0 1)(2 3)", "(0 2)(1 3)"});
  std::vector<GroupHom> homs = homs_by_conjugation(s4, v4n, v4n);
  EXPECT_EQ(homs.size(), 6u);

  Group a5 = catalog_group("A5");
  Subgroup s = sylow(a5, 2);
  EXPECT_EQ(homs_by_conjugation(a5, s, s).size(), 3u);

  // Each distinct map corresponds to a coset of the centralizer inside the
  // transporter.
  EXPECT_EQ(homs.size() * centralizer_sub(s4, v4n).size(),
            transporter(s4, v4n, v4n).size());
}

TEST(Quotients, CosetActionAndHomomorphism) {
  Group sl23 = catalog_group("SL23");
  Subgroup z = center_of(sl23);
  EXPECT_EQ(z.size(), 2);
  std::vector<int> to_q;
  Group q = quotient_group(sl23, z, &to_q);
  EXPECT_EQ(q.size(), 12);
  for (int a = 0; a < sl23.size(); a += 3)
    for (int b = 0; b < sl23.size(); b += 5)
      EXPECT_EQ(to_q[sl23.mul(a, b)], q.mul(to_q[a], to_q[b]));
  // SL23 / Z has the subgroup profile of A4.
  EXPECT_EQ(all_subgroups(q).size(), 10u);
}

TEST(Quotients, SubgroupAsGroupKeepsStructure) {
  Group s4 = catalog_group("S4");
  Subgroup d8 = sylow(s4, 2);
  std::vector<int> to_parent;
  Group h = subgroup_as_group(d8, &to_parent);
  EXPECT_EQ(h.size(), 8);
  for (int a = 0; a < h.size(); ++a)
    for (int b = 0; b < h.size(); ++b)
      EXPECT_EQ(to_parent[h.mul(a, b)], s4.mul(to_parent[a], to_parent[b]));
}

TEST(NormalStructure, NormalSubgroupsAndCores) {
  Group s4 = catalog_group("S4");
  std::vector<Subgroup> normals = normal_subgroups(s4);
  std::vector<int> orders;
  for (const Subgroup& n : normals) orders.push_back(n.size());
  EXPECT_EQ(orders, (std::vector<int>{1, 4, 12, 24}));

  EXPECT_EQ(core_p(s4, 2).size(), 4);
  EXPECT_EQ(core_p(s4, 3).size(), 1);
  EXPECT_EQ(core_p_prime(catalog_group("A4"), 3).size(), 4);
  EXPECT_EQ(commutator_subgroup(s4).size(), 12);
  EXPECT_EQ(commutator_subgroup(catalog_group("D8")).size(), 2);
}

TEST(NormalStructure, ResidualsByElementOrders) {
  Group a4 = catalog_group("A4");
  Subgroup whole = whole_group(a4);
  EXPECT_EQ(residual_p(a4, whole, 2).size(), 12);       // O^2(A4) = A4
  EXPECT_EQ(residual_p_prime(a4, whole, 2).size(), 4);  // O^{2'}(A4) = V4

  Group a5 = catalog_group("A5");
  EXPECT_EQ(residual_p_prime(a5, whole_group(a5), 3).size(), 60);

  // Idempotence of O^p.
  Subgroup r = residual_p(a4, whole, 2);
  EXPECT_EQ(residual_p(a4, r, 2).members, r.members);
}

TEST(NormalStructure, SimplicityVerdicts) {
  EXPECT_TRUE(is_simple_group(catalog_group("A5")));
  EXPECT_TRUE(is_simple_group(catalog_group("A6")));
  EXPECT_TRUE(is_simple_group(catalog_group("SL32")));
  EXPECT_FALSE(is_simple_group(catalog_group("S4")));
  EXPECT_FALSE(is_simple_group(catalog_group("C4")));

  // SL(2,3) is solvable: its commutator subgroup is the quaternion group.
  Group sl23 = catalog_group("SL23");
  EXPECT_FALSE(is_perfect(sl23, whole_group(sl23)));
  EXPECT_EQ(commutator_subgroup(sl23).size(), 8);
  EXPECT_FALSE(is_quasisimple(sl23, whole_group(sl23)));
  Group a5 = catalog_group("A5");
  EXPECT_TRUE(is_perfect(a5, whole_group(a5)));
  EXPECT_TRUE(is_quasisimple(a5, whole_group(a5)));
}

TEST(PCentric, WitnessesInS4) {
  Group s4 = catalog_group("S4");
  Subgroup d8 = sylow(s4, 2);
  Subgroup z = center_of_subgroup(d8);
  PCentricWitness wz = p_centric_in(s4, 2, z);
  EXPECT_FALSE(wz.centric);
  EXPECT_EQ(wz.centralizer_order, 8);

  Subgroup v4n = sub_from_cycles(s4, {"(0 1)(2 3)", "(0 2)(1 3)"});
  PCentricWitness wv = p_centric_in(s4, 2, v4n);
  EXPECT_TRUE(wv.centric);
  EXPECT_EQ(wv.centralizer_order, 4);
  EXPECT_EQ(wv.center_order * wv.odd_part_order, wv.centralizer_order);
}

TEST(Components, LayerAndGeneralizedFitting) {
  Group s4 = catalog_group("S4");
  ComponentData cd = components_of_group(s4);
  EXPECT_TRUE(cd.components.empty());
  EXPECT_EQ(cd.fitting.size(), 4);  // F(S4) = O_2(S4) = V4
  EXPECT_EQ(cd.f_star.size(), 4);

  Group a5 = catalog_group("A5");
  ComponentData ca = components_of_group(a5);
  ASSERT_EQ(ca.components.size(), 1u);
  EXPECT_EQ(ca.components[0].size(), 60);
  EXPECT_EQ(ca.f_star.size(), 60);
}

TEST(Components, FactorOfAProduct) {
  Group g = resolve_group("A6xS4");
  ComponentData cd = components_of_group(g);
  ASSERT_EQ(cd.components.size(), 1u);
  const Subgroup& comp = cd.components[0];
  EXPECT_EQ(comp.size(), 360);
  // The component is the A6 factor: all members fix the S4 points.
  for (int m : comp.members)
    for (int pt = 6; pt < 10; ++pt) EXPECT_EQ(g[m][pt], pt);
  // F*(A6 x S4) = A6 x V4.
  EXPECT_EQ(cd.fitting.size(), 4);
  EXPECT_EQ(cd.f_star.size(), 1440);

  Group h = resolve_group("A5xS4");
  ComponentData ch = components_of_group(h);
  ASSERT_EQ(ch.components.size(), 1u);
  EXPECT_EQ(ch.components[0].size(), 60);
}

TEST(Automorphisms, CatalogAutOrders) {
  const std::map<std::string, int> expected = {{"S4", 24},   {"D8", 8},
                                               {"Q8", 24},   {"A4", 24},
                                               {"SL32", 336}, {"A6", 1440}};
  for (const auto& [name, order] : expected) {
    Group g = catalog_group(name);
    AutGroup aut = aut_group(g);
    EXPECT_EQ(aut.perm.size(), order) << name;
    // |Inn(G)| = |G / Z(G)| and Inn is closed under conjugation in Aut.
    EXPECT_EQ(static_cast<int>(aut.inner_ids.size()),
              g.size() / center_of(g).size())
        << name;
    Subgroup inn{&aut.perm, aut.inner_ids};
    EXPECT_TRUE(is_subgroup_normal(aut.perm, inn)) << name;
    EXPECT_EQ(aut.outer_reps.size() * aut.inner_ids.size(),
              static_cast<std::size_t>(aut.perm.size()))
        << name;
  }
}

TEST(Automorphisms, OuterCounts) {
  EXPECT_EQ(aut_group(catalog_group("A6")).outer_reps.size(), 4u);
  EXPECT_EQ(aut_group(catalog_group("SL32")).outer_reps.size(), 2u);
  EXPECT_EQ(aut_group(catalog_group("S4")).outer_reps.size(), 1u);
  EXPECT_EQ(aut_group(catalog_group("D8")).outer_reps.size(), 2u);
}

TEST(Automorphisms, EveryMapIsAnAutomorphism) {
  Group g = catalog_group("D8");
  AutGroup aut = aut_group(g);
  for (const Perm& phi : aut.perm.elems) {
    EXPECT_EQ(phi[0], 0);
    for (int a = 0; a < g.size(); ++a)
      for (int b = 0; b < g.size(); ++b)
        EXPECT_EQ(phi[g.mul(a, b)], g.mul(phi[a], phi[b]));
  }
}

TEST(Monomial, GroupOrdersMatchFormula) {
  const std::vector<std::array<int, 4>> cases = {
      {1, 1, 3, 6},  {2, 1, 2, 8},  {4, 4, 3, 96},    {4, 2, 2, 16},
      {6, 3, 2, 24}, {4, 1, 2, 32}, {2, 2, 3, 24},    {4, 4, 5, 30720}};
  for (const auto& [m, r, k, expect] : cases) {
    MonomialGroup g = monomial_group(m, r, k);
    EXPECT_EQ(g.size(), expect) << "G(" << m << "," << r << "," << k << ")";
    long long formula = 1;
    for (int i = 0; i < k; ++i) formula *= m;
    for (int i = 2; i <= k; ++i) formula *= i;
    EXPECT_EQ(g.size(), formula / r);
    for (const MonoElt& x : g.elems) {
      int total = 0;
      for (auto v : x.v) total += v;
      EXPECT_EQ(total % r, 0);
    }
  }
}

TEST(Monomial, IndexTwoResidualSubgroup) {
  MonomialGroup g = monomial_group(4, 4, 5);
  MonomialGroup g0 = mono_residual_p_prime(g, 5);
  EXPECT_EQ(g0.size(), 15360);
  EXPECT_EQ(g.size() / g0.size(), 2);
  int diagonal = 0;
  for (const MonoElt& x : g0.elems) {
    EXPECT_EQ(perm_sign(x.s), 1);
    if (is_identity(x.s)) ++diagonal;
  }
  EXPECT_EQ(diagonal, 256);

  // The same subgroup arises from two permutations and one diagonal element.
  std::vector<MonoElt> triple = {
      MonoElt{parse_cycles(5, "(0 1 2)"), {0, 0, 0, 0, 0}},
      MonoElt{parse_cycles(5, "(0 1 2 3 4)"), {0, 0, 0, 0, 0}},
      MonoElt{identity_perm(5), {1, 3, 0, 0, 0}}};
  EXPECT_EQ(mono_closure(4, 5, triple).size(), 15360);
}

TEST(Monomial, ModuleSimplicity) {
  // zeta = 2 is a primitive 4th root of unity mod 5.
  std::vector<MonoElt> triple = {
      MonoElt{parse_cycles(5, "(0 1 2)"), {0, 0, 0, 0, 0}},
      MonoElt{parse_cycles(5, "(0 1 2 3 4)"), {0, 0, 0, 0, 0}},
      MonoElt{identity_perm(5), {1, 3, 0, 0, 0}}};
  std::vector<std::vector<std::vector<std::uint8_t>>> mats;
  for (const MonoElt& x : triple) mats.push_back(mono_matrix_mod_p(x, 5, 2));
  EXPECT_TRUE(is_simple_module(mats, 5, 5));

  // A diagonal group alone never acts irreducibly in rank two...
  std::vector<std::vector<std::vector<std::uint8_t>>> diag = {
      mono_matrix_mod_p(MonoElt{identity_perm(2), {1, 3}}, 5, 2)};
  EXPECT_FALSE(is_simple_module(diag, 5, 2));

  // ...and the plain permutation module keeps the all-ones fixed line.
  std::vector<std::vector<std::vector<std::uint8_t>>> perm5 = {
      mono_matrix_mod_p(MonoElt{parse_cycles(5, "(0 1)"), {0, 0, 0, 0, 0}}, 5, 2),
      mono_matrix_mod_p(MonoElt{parse_cycles(5, "(0 1 2 3 4)"), {0, 0, 0, 0, 0}},
                        5, 2)};
  EXPECT_FALSE(is_simple_module(perm5, 5, 5));
}

TEST(Monomial, ElementaryAbelianRankBounds) {
  EXPECT_EQ(max_elab_rank_off_subgroup(5, 1, 5), 2);
  EXPECT_EQ(max_elab_rank_off_subgroup(3, 1, 3), 2);
  EXPECT_EQ(max_elab_rank_off_subgroup(3, 2, 3), 2);
  EXPECT_EQ(d8_rank2_elab_count(), 2);
}

TEST(Resolver, ProductsFilesAndErrors) {
  Group g = resolve_group("S4xC2");
  EXPECT_EQ(g.size(), 48);
  EXPECT_EQ(g.degree, 6);
  EXPECT_EQ(resolve_group("A6xS4").size(), 8640);

  std::string path = testing::TempDir() + "klein.grp";
  {
    std::ofstream out(path);
    out << "# rank-two elementary abelian\n";
    out << "degree 4\n";
    out << "(0 1)(2 3)\n";
    out << "(0 2)(1 3)  # second generator\n";
  }
  EXPECT_EQ(resolve_group(path).size(), 4);
  EXPECT_THROW(resolve_group("NoSuchGroup"), ParseError);
  EXPECT_THROW(resolve_group("S4x"), ParseError);
}

TEST(Caps, LimitsRaiseCapError) {
  Caps saved = caps();
  caps().elements = 10;
  EXPECT_THROW(catalog_group("S4"), CapError);
  caps() = saved;

  caps().lattice = 100;
  EXPECT_THROW(all_subgroups(catalog_group("A6")), CapError);
  caps() = saved;

  caps().aut = 100;
  EXPECT_THROW(aut_group(catalog_group("A6")), CapError);
  caps() = saved;

  EXPECT_THROW(apply_caps_string("elements=abc"), ParseError);
  EXPECT_THROW(apply_caps_string("nonsense=3"), ParseError);
  apply_caps_string("lattice=123,budget=77");
  EXPECT_EQ(caps().lattice, 123u);
  EXPECT_EQ(caps().budget, 77u);
  caps() = saved;
}
