#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "ff/fusion.hpp"
#include "ff/group.hpp"
#include "ff/lattice.hpp"

namespace ff {

// Linking systems as explicit finite categories over a fusion system:
// objects are subgroup indices, morphisms carry a projection to the fusion
// system and distinguished delta morphisms, and composition is answered by
// the concrete model (transporter quotient in an ambient group, or a product
// of two smaller systems) instead of a stored table.

struct LMor {
  int dom = 0;  // positions into objects
  int cod = 0;
};

struct LinkingSystem {
  std::shared_ptr<const FusionSystem> fsys;
  int p = 2;
  std::vector<int> objects;       // ascending indices into fsys->subs
  std::vector<int> object_index;  // sub index -> position in objects, else -1
  std::vector<LMor> mors;
  std::vector<std::vector<std::vector<int>>> hom;  // hom[a][b]: morphism ids
  std::vector<FMor> pi;           // projection per morphism

  // delta: key(a, b, x) -> morphism id for x in T_S(P_a, P_b)
  std::unordered_map<std::uint64_t, int> delta_id;
  std::vector<int> identity_mor;  // per object position

  int kind = 0;  // 0 transporter model, 1 product model

  // model 0: Mor(P,Q) = T_G(P,Q) / O^p(C_G(P)), represented by the id-least
  // coset element; composition multiplies representatives and re-canonizes.
  std::shared_ptr<const Group> g;
  std::vector<int> g_elem_of_s;                 // S element id -> g id
  std::vector<std::vector<int>> obj_members_g;  // object members as g ids
  std::vector<std::vector<int>> kernel;         // O^p(C_G(P)) per object
  std::vector<int> rep;                         // canonical g element per morphism
  std::unordered_map<std::uint64_t, int> rep_id;  // key(a, b, rep) -> id

  // model 1: morphisms are pairs of factor morphisms.
  std::shared_ptr<const LinkingSystem> left, right;
  std::vector<std::pair<int, int>> factor_obj;  // per object position
  std::vector<std::pair<int, int>> factor_mor;  // per morphism id
  std::unordered_map<std::uint64_t, int> pair_id;

  int object_count() const { return static_cast<int>(objects.size()); }
  int morphism_count() const { return static_cast<int>(mors.size()); }
  int object_of_sub(int sub) const { return object_index[sub]; }

  // inner: a -> b, outer: b -> c; asserts the objects line up.
  int compose(int outer, int inner) const;

  // delta_{P_a, P_b}(x), or -1 when x does not conjugate P_a into P_b.
  int delta(int a, int b, int s_elem) const;

  // id-least coset representative for g-element t in Mor(a, b) (model 0).
  int canon_rep(int a, int t) const;
};

// --- construction -------------------------------------------------------------

// The linking system of (g, p) on an explicit object set (indices into f's
// subgroup list).  f must be the fusion system of (g, p) with Sylow subgroup
// s_in_g; every object must be quasicentric (C_S(P) a Sylow p-subgroup of
// C_G(P)) for the quotients to glue into a linking system, which
// verify_linking_axioms checks after the fact.
LinkingSystem linking_of_group(const Group& g, int p,
                               std::shared_ptr<const FusionSystem> f,
                               const Subgroup& s_in_g,
                               std::vector<int> objects);

// Objects = the F-centric subgroups.
LinkingSystem centric_linking_of_group(const Group& g, int p);

// L1 x L2 on the product-centric objects P1 x P2 (both factors centric);
// the fusion system underneath is product_fusion of the factor systems.
LinkingSystem product_linking(std::shared_ptr<const LinkingSystem> a,
                              std::shared_ptr<const LinkingSystem> b);

// --- axioms --------------------------------------------------------------------

// First violated axiom with a witness, or ok.  Checked: category shape and
// budgeted associativity; object closure under conjugacy and overgroups plus
// containment of the centric radicals; free C_S(P) action with the
// projection as orbit map; projections of deltas are conjugations; the
// naturality square psi o delta_P(x) = delta_Q(pi(psi)(x)) o psi; delta
// injectivity; cancellation of morphisms.  budget 0 means caps().budget.
struct LinkingAxiomReport {
  bool ok = true;
  std::string axiom;    // "category" "objects" "A1" "A2" "B" "C" "delta" "cancel"
  std::string message;  // witness description when not ok
};

LinkingAxiomReport verify_linking_axioms(const LinkingSystem& l,
                                         std::uint64_t budget = 0);

// --- automorphisms and kappa ----------------------------------------------------

// An isotypical automorphism: object and morphism permutations, functorial,
// carrying delta images onto delta images through an automorphism of S.
struct LinkingAut {
  std::vector<int> obj;
  std::vector<int> mor;
};

struct LinkingAutData {
  std::vector<LinkingAut> auts;
  std::vector<LinkingAut> inner;  // the distinct conjugation functors c_gamma
  int out_order() const {
    return static_cast<int>(auts.size() / inner.size());
  }
};

// Enumerates by candidate automorphism of the fusion system first, then
// extends over each homset through the delta seeds and composition closure;
// every composable pair of the completed functor has been checked.
LinkingAutData aut_of_linking(const LinkingSystem& l);

// Counting-only variant for large systems (results are not stored).
struct LinkingAutCounts {
  long long auts = 0;
  int inner = 0;
  long long out_order() const { return auts / inner; }
};
LinkingAutCounts count_linking_auts(const LinkingSystem& l, int jobs = 1);

// kappa_G: Out(G) -> Out(L^c): each outer automorphism class of G, adjusted
// to preserve S, induces a functor on the transporter model; classes are
// compared modulo the conjugation functors.
struct KappaReport {
  int out_g = 0;
  int out_l = 0;
  int image = 0;
  bool injective = false;
  bool surjective = false;
  bool split = false;  // some subgroup of Out(G) maps bijectively onto Out(L)

  bool tame() const { return split; }
};

KappaReport kappa_of_group(const Group& g, int p);

// --- uniqueness and products ----------------------------------------------------

// Isomorphism of linking systems over equal fusion systems: objects are
// matched by underlying subgroup, morphisms by per-homset backtracking that
// preserves delta, the projection, and composition.  Returns the morphism
// bijection a -> b, or nothing.
std::optional<std::vector<int>> linking_uniqueness_check(
    const LinkingSystem& a, const LinkingSystem& b);

// |Out(a x b)| enumerated on the product category, against
// |Out(a)| |Out(b)| |Gamma| where Gamma counts the factor swaps (2 when the
// factors are isomorphic as linking systems, else 1).
struct ProductOutReport {
  long long out_product = 0;
  int out_left = 0;
  int out_right = 0;
  int gamma = 1;
  bool formula_holds = false;
};

ProductOutReport product_out_report(std::shared_ptr<const LinkingSystem> a,
                                    std::shared_ptr<const LinkingSystem> b,
                                    int jobs = 1);

// --- normal pairs ----------------------------------------------------------------

// For H normal in G with T = S cap H and E = F_T(H): M is the linking system
// of H on the E-centric subgroups of T, L the linking system of G on
// {P <= S : P cap T E-centric}, and embed carries each morphism of M to its
// image in L (same ambient conjugation).
struct LinkingPair {
  LinkingSystem l;
  LinkingSystem m;
  EmbeddedSystem e;          // E = F_T(H) as a subsystem of l.fsys
  int t_sub = -1;            // T as an index into l.fsys->subs
  std::vector<int> embed;    // morphism id of m -> morphism id of l
  std::vector<int> m_object_in_l;  // object position of m -> object position of l
};

LinkingPair normal_pair_of_groups(const Group& g, const Subgroup& h, int p);

// The normal-pair battery: object shape and closure, quasicentric freeness,
// injectivity of the embedding, stability of M under Aut_L(T), the Frattini
// factorization psi = psi0 o gamma through Aut_L(T), the quotient order
// |Aut_L(T)| / |Aut_M(T)|, and the centralizer sandwich
// Z(E) Z(F) <= C_S(M) <= C_S(E) with its exactness statements.
struct NormalPairReport {
  bool objects_l_shape = false;
  bool objects_closed = false;
  bool quasicentric_free = false;
  bool embed_injective = false;
  bool invariant = false;
  bool frattini = false;
  int l_over_m = 0;
  Subgroup c_s_m;
  Subgroup c_s_e;
  Subgroup z_e;
  Subgroup z_f;
  bool sandwich = false;
  bool odd_equality = false;       // p odd only: C_S(M) == C_S(E)
  bool m_centric = false;          // C_S(M) <= T
  bool e_centric = false;          // C_S(E) <= T
  bool delta_exact = false;        // delta_T(C_S(M)) == C_{Aut_L(T)}(M)
  bool m_acts_trivially = false;   // Aut_M(T) fixes C_S(M) pointwise
  bool fixed_is_z_f = false;       // Aut_L(T)-fixed points of C_S(M) == Z(F)

  bool normal_pair() const {
    return objects_l_shape && objects_closed && quasicentric_free &&
           embed_injective && invariant && frattini;
  }
};

NormalPairReport check_normal_pair(const LinkingPair& pair);

}  // namespace ff
