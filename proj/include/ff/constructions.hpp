#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "ff/fusion.hpp"

namespace ff {

// --- transport and isomorphism ---------------------------------------------------

// The fusion system over T whose homsets are alpha o Hom_F(...) o alpha^-1;
// alpha[e] is the image in T of element e of F's S and must be a group
// isomorphism.
FusionSystem transport(const FusionSystem& f, std::shared_ptr<const Group> t,
                       const std::vector<int>& alpha);

// Exact equality over the identity relabeling (both systems over equal
// groups), resp. over an explicit member bijection.
bool fusion_equal(const FusionSystem& a, const FusionSystem& b);
bool equal_under(const FusionSystem& a, const FusionSystem& b,
                 const std::vector<int>& member_map);

// Backtracking search for alpha with transport(a, alpha) = b, pruned by
// invariant vectors first; returns the first witness in generator-image
// order, or nothing.
std::optional<std::vector<int>> fusion_isomorphism(const FusionSystem& a,
                                                   const FusionSystem& b);

// --- quotients --------------------------------------------------------------------

// F/Q over S/Q (left-coset permutation group).  Q must be strongly closed
// (throws std::invalid_argument otherwise).  to_quotient, when supplied,
// receives the element map from S to S/Q.
FusionSystem quotient_fusion(const FusionSystem& f, int q_sub,
                             std::vector<int>* to_quotient = nullptr);

// --- products ---------------------------------------------------------------------

// F1 x F2 over S1 x S2: homsets generated by the product morphisms
// phi1 x phi2; element (i, j) of the product has id i*|S2| + j.
FusionSystem product_fusion(const FusionSystem& a, const FusionSystem& b);

// --- central extension of a subsystem (ZE) ----------------------------------------

// ZE over ZT for Z central in F: morphisms of F between subgroups of ZT
// whose unique central extension to PZ (the identity on Z) restricts into
// E on the T-part of PZ.  Testing P's own T-part instead would admit maps
// that act outside E's span on elements only reachable through Z, and the
// resulting system can fail the Sylow axiom.  Saturation is asserted.
EmbeddedSystem z_extend(const FusionSystem& f, const EmbeddedSystem& e,
                        int z_sub);

// --- focal and hyperfocal subgroups, O^p and O^{p'} --------------------------------

struct FocalData {
  Subgroup hyperfocal;  // hyp(F) = < g^-1 a(g) : a in O^p(Aut_F(P)) >
  Subgroup focal;       // foc(F) = < g^-1 phi(g) : phi in Hom_F(P, S) >
};

FocalData hyperfocal_and_focal(const FusionSystem& f);

// O^p(F): the smallest subsystem over hyp(F) whose automorphism groups
// contain O^p(Aut_F(P)); O^{p'}(F): over S with Aut containing
// O^{p'}(Aut_F(P)).  Both are computed as generate_fusion closures of the
// required automorphisms, which is minimal by construction.  A deletion
// certificate re-closes without each conjugacy class of seeds and checks
// that doing so either breaks the Aut-containment or changes nothing;
// `exhaustive` re-closes every subset of the seed classes (2^k closures,
// capped by caps().budget) and checks that each closure satisfying the
// containment contains the result.
EmbeddedSystem o_p_index_sub(const FusionSystem& f, bool exhaustive = false);
EmbeddedSystem o_p_prime_sub(const FusionSystem& f, bool exhaustive = false);

// --- reduction ---------------------------------------------------------------------

// O_p(F) = 1 and O^p(F) = F = O^{p'}(F).
bool is_reduced(const FusionSystem& f);

// red(F): quotient C_F(O_p(F)) / Z(O_p(F)), then alternately O^p and O^{p'}
// until both fix the system.
FusionSystem reduction(const FusionSystem& f);

}  // namespace ff
