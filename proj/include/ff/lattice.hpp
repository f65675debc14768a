#pragma once

#include <string>
#include <vector>

#include "ff/constructions.hpp"
#include "ff/fusion.hpp"
#include "ff/group.hpp"

namespace ff {

// The subsystem lattice of a saturated fusion system: embedding subsystems
// over smaller subgroups, normality and characteristic tests, automorphisms
// of the system itself, subsystem centralizers, and the component / layer /
// generalized-Fitting structure.

// --- building embedded subsystems -------------------------------------------------

// F_T(T) as a subsystem of f: inner conjugation maps of T only.
EmbeddedSystem inner_subsystem(const FusionSystem& f, int t_sub);

// F_{S cap H}(H) as a subsystem of f = F_S(G).  s_in_g must be the Sylow
// subgroup f was built from and h a subgroup of g whose Sylow p-subgroup is
// S cap H (asserted); the result's morphisms are conjugation maps of H.
EmbeddedSystem subsystem_of_group(const FusionSystem& f, const Group& g,
                                  const Subgroup& s_in_g, const Subgroup& h,
                                  int p);

// Rebase: inner is a subsystem of outer.sys; the result is the same system
// presented as a subsystem of the common enclosing f.
EmbeddedSystem compose_embedding(const FusionSystem& f,
                                 const EmbeddedSystem& outer,
                                 const EmbeddedSystem& inner);

// Locates each subgroup of e's T inside f's lattice and re-expresses every
// morphism of e in parent element ids.  mors[k] collects the morphisms with
// domain dom_subs[k] (an index into f.subs).  Shared by the checks below.
struct MappedSubsystem {
  std::vector<int> dom_subs;
  std::vector<std::vector<FMor>> mors;  // parallel to dom_subs, parent FMors
};
MappedSubsystem map_into_parent(const FusionSystem& f, const EmbeddedSystem& e);

// --- normality and characteristic subsystems --------------------------------------

// Normality of E <= F over T, tested in four layers:
//   strongly_closed  no morphism of F moves an element of T outside T;
//   invariant        conjugating E's homsets by any alpha in Aut_F(T) lands
//                    back inside E;
//   frattini         every phi in Hom_F(P, T) with P <= T splits as
//                    alpha o phi0 with alpha in Aut_F(T), phi0 in E;
//   extension        every alpha in Aut_E(T) extends to a morphism of F on
//                    T C_S(T) whose displacement x -> ext(x) x^-1 on C_S(T)
//                    stays inside Z(T).
// weakly_normal() is the first three; normal() is all four.
struct SubsystemNormality {
  bool strongly_closed = false;
  bool invariant = false;
  bool frattini = false;
  bool extension = false;

  bool weakly_normal() const { return strongly_closed && invariant && frattini; }
  bool normal() const { return weakly_normal() && extension; }
};

SubsystemNormality normality_of(const FusionSystem& f, const EmbeddedSystem& e);

// --- automorphisms of a fusion system ----------------------------------------------

// Aut(F): automorphisms beta of S carrying every homset of F onto the homset
// of the image subgroups; each is stored as a permutation of S's element
// ids.  Aut_F(S) always embeds, and Out(F) = Aut(F) / Aut_F(S).
struct FusionAutData {
  std::vector<Perm> auts;
  int aut_f_s = 0;  // |Aut_F(S)|, the inner part

  int out_order() const { return static_cast<int>(auts.size()) / aut_f_s; }
};

FusionAutData aut_of_fusion(const FusionSystem& f);

// Whether beta (an element-id permutation of S) is an automorphism of f.
bool preserves_fusion(const FusionSystem& f, const Perm& beta);

// Normal, and carried onto itself by every automorphism of F.
bool is_characteristic(const FusionSystem& f, const FusionAutData& auts,
                       const EmbeddedSystem& e);

// --- subsystem centralizer and center ----------------------------------------------

// C_S(E): the largest subgroup X of C_S(T) such that every morphism of E
// extends to a morphism of F defined on the join with X and fixing X
// pointwise.  Candidates are scanned in descending order; the passing set is
// verified to be closed under join, so the maximum is unique.
Subgroup subsystem_centralizer(const FusionSystem& f, const EmbeddedSystem& e);

// E is centric in F when C_S(E) <= T.
bool is_centric_subsystem(const FusionSystem& f, const EmbeddedSystem& e);

// Z(E), reported in parent element ids.
Subgroup subsystem_center(const FusionSystem& f, const EmbeddedSystem& e);

// --- components, layer, generalized Fitting ----------------------------------------

enum class Verdict { no, yes, unknown };

struct SimplicityReport {
  Verdict verdict = Verdict::unknown;
  std::string witness;  // obstruction description when the verdict is "no"
};

// Searches for a proper nontrivial normal subsystem.  "no" always comes with
// a verified witness: a nontrivial proper center, a proper O^p(F) or
// O^{p'}(F) tower, or an inner subsystem F_T(T) over a proper nontrivial
// strongly closed T that passes normality_of.  "yes" is reported when no
// proper nontrivial strongly closed subgroup exists and O^{p'}(F) = F: a
// normal subsystem must live over a strongly closed subgroup, and one over S
// itself always contains O^{p'}(F).  Anything else is "unknown".
SimplicityReport is_simple_fusion(const FusionSystem& f);

// O^p(F) = F and F/Z(F) simple.
SimplicityReport is_quasisimple_fusion(const FusionSystem& f);

// One component of F: the p'-residual subsystem of F_{T_i}(L_i) for a
// component L_i of the realizing group, kept when it is quasisimple.
struct FusionComponent {
  Subgroup l;             // the group component L_i (subgroup of g)
  EmbeddedSystem system;  // C_i over T_i = S cap L_i, embedded in f
};

struct FusionComponents {
  std::vector<FusionComponent> components;
  EmbeddedSystem layer;    // E(F): generated over the join of the T_i
  Subgroup core;           // O_p(F) inside S
  EmbeddedSystem f_star;   // F*(F): generated over T_E O_p(F)
  bool centralizer_is_center = false;  // C_S(F*(F)) == Z(F*(F))
};

// Components of F = F_S(G) from the components of G: for each group
// component L with T = S cap L nontrivial, the candidate O^{p'}(F_T(L)) is
// kept exactly when quasisimple.  The layer is generated by the surviving
// component morphisms, F*(F) additionally by O_p(F), and the final flag
// checks the centralizer identity that characterizes F*.
FusionComponents components_of_fusion(const FusionSystem& f, const Group& g,
                                      const Subgroup& s_in_g);

// --- the normalizer subsystem of the component set ---------------------------------

// The subsystem over N = intersection of the N_S(T_i) whose morphisms are
// exactly those phi in Hom_F(P, Q) with P, Q <= N and phi(P cap T_i) <= T_i
// for every i.  The homset family is verified to be closed under
// composition, restriction, and inversion, then checked saturated; the layer
// and each component must stay normal inside it.
struct ComponentNormalizer {
  Subgroup n;
  EmbeddedSystem system;
  bool closed = false;
  bool saturated = false;
  bool characteristic = false;
  bool layer_normal = false;
  bool components_normal = false;
  bool equals_parent = false;  // the subsystem is all of F (forces N = S)
};

ComponentNormalizer normalizer_of_components(const FusionSystem& f,
                                             const FusionComponents& comps,
                                             const FusionAutData& auts);

}  // namespace ff
