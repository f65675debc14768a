#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "ff/group.hpp"

namespace ff {

// A morphism of a fusion system over S: an injective homomorphism from one
// subgroup of S into S, recorded by the image of each domain member.  All
// morphisms are isomorphisms onto their image subgroup.
struct FMor {
  std::uint16_t dom = 0;             // index of the domain in FusionSystem::subs
  std::uint16_t cod = 0;             // index of the image subgroup
  std::uint64_t image_mask = 0;      // bit e set iff element e of S is hit
  std::vector<std::uint8_t> images;  // images[k] = image of members[k] of the domain
};

inline bool operator==(const FMor& a, const FMor& b) {
  return a.dom == b.dom && a.images == b.images;
}
inline bool operator<(const FMor& a, const FMor& b) {
  return a.dom != b.dom ? a.dom < b.dom : a.images < b.images;
}

// A fusion system over a p-group S, stored explicitly: the full subgroup
// lattice of S in canonical (size, members) order, and for every subgroup
// the complete, sorted set of morphisms out of it.  Hom_F(P,Q) is recovered
// losslessly by filtering on the image mask, so nothing is kept only up to
// conjugacy.  |S| <= 64 keeps subgroup masks in one word.
struct FusionSystem {
  std::shared_ptr<const Group> S;  // the ambient p-group as its own Group
  int p = 2;
  std::vector<Subgroup> subs;            // all subgroups of S, ascending
  std::vector<std::uint64_t> masks;      // member bitmask per subgroup
  std::vector<std::vector<FMor>> mors;   // mors[i]: every morphism with domain subs[i]
  std::unordered_map<std::uint64_t, int> sub_index;  // mask -> subgroup index

  int sub_count() const { return static_cast<int>(subs.size()); }
  int s_sub() const { return sub_count() - 1; }  // S itself is the largest subgroup
  int sub_of_mask(std::uint64_t mask) const;     // -1 when no subgroup matches
  int total_morphisms() const;
};

// Shared scaffolding: fills subs/masks/sub_index from all_subgroups(*S) and
// sizes mors; morphism sets start empty.
FusionSystem fusion_skeleton(std::shared_ptr<const Group> s, int p);

// F_S(G) with S = sylow(g, p), or an explicitly chosen Sylow subgroup (its
// order must be the full p-part of |G|).  Morphisms are all restrictions of
// conjugation maps c_g landing inside S.
FusionSystem fusion_of_group(const Group& g, int p);
FusionSystem fusion_of_group(const Group& g, int p, const Subgroup& s);

// F_S(S): only the conjugation maps of S itself.
FusionSystem fusion_of_p_group(std::shared_ptr<const Group> s, int p);

// A seed automorphism for generate_fusion: an explicit map on an explicit
// domain (sorted element ids of S).
struct AutSeed {
  std::vector<int> domain;
  std::vector<std::uint8_t> images;
};

// Smallest fusion system over S containing all inner maps and all seeds,
// closed under composition, restriction to every subgroup, and inversion of
// isomorphisms onto the image.  Fixpoint detected by total homset size.
FusionSystem generate_fusion(std::shared_ptr<const Group> s, int p,
                             const std::vector<AutSeed>& seeds);

// --- morphism utilities -------------------------------------------------------

// Builds an FMor on subs[dom] from raw images; validates that the map is an
// injective homomorphism into S and that the image set is a subgroup.
FMor morphism_from_images(const FusionSystem& f, int dom,
                          std::vector<std::uint8_t> images);

FMor identity_morphism(const FusionSystem& f, int sub);
FMor restrict_morphism(const FusionSystem& f, const FMor& m, int sub);
// outer o inner; the image of inner must lie inside the domain of outer.
FMor compose_morphisms(const FusionSystem& f, const FMor& outer,
                       const FMor& inner);
FMor invert_morphism(const FusionSystem& f, const FMor& m);
bool has_morphism(const FusionSystem& f, const FMor& m);

// Hom_F(P,Q): morphisms out of P whose image lies inside Q.
std::vector<FMor> homs_between(const FusionSystem& f, int p_sub, int q_sub);
std::vector<FMor> aut_morphisms(const FusionSystem& f, int sub);

// Aut_F(P) as a permutation group on the member positions of P.
Group fusion_aut_group(const FusionSystem& f, int sub);

// --- classification -----------------------------------------------------------

struct SubgroupProfile {
  bool fully_normalized = false;
  bool fully_centralized = false;
  bool fully_automized = false;
  bool receptive = false;
  bool centric = false;
  bool radical = false;
  bool quasicentric = false;
  bool weakly_closed = false;
  bool strongly_closed = false;
  bool normal_in_f = false;
  bool central_in_f = false;
};

struct Classification {
  std::vector<SubgroupProfile> profile;  // per subgroup index
  std::vector<int> class_rep;            // least F-conjugate subgroup index
  std::vector<std::vector<int>> classes; // classes, ascending by representative
  std::vector<int> element_class_rep;    // per element id of S
  std::vector<int> aut_order;            // |Aut_F(P)| per subgroup
  std::vector<int> out_order;            // |Out_F(P)| = |Aut_F(P)| / |Inn(P)|
};

Classification classify(const FusionSystem& f);

// --- saturation ----------------------------------------------------------------

struct SaturationReport {
  bool saturated = true;
  int sub = -1;                  // least violating subgroup index
  std::optional<FMor> witness;   // violating isomorphism (extension failures)
  std::string axiom;             // "sylow" or "extension"
};

// Every fully normalized subgroup must be fully automized and fully
// centralized, and every fully centralized subgroup must be receptive; the
// witness is the lexicographically least violating (subgroup, morphism) pair.
SaturationReport is_saturated(const FusionSystem& f);

// --- largest normal and central subgroups ---------------------------------------

struct CoreAndCenter {
  Subgroup core;    // O_p(F): join of the normal-flagged subgroups
  Subgroup center;  // Z(F): join of the central-flagged subgroups
};

// Asserts that the joins are themselves flagged (a failure signals a
// non-saturated input) and that O_p(F) >= Z(F).
CoreAndCenter o_p_and_center(const FusionSystem& f, const Classification& c);
CoreAndCenter o_p_and_center(const FusionSystem& f);

// Standalone checks for one subgroup (no full classification pass): no
// morphism moves an element of the subgroup outside it, resp. every morphism
// on a domain containing it restricts to the identity on it.
bool is_strongly_closed_subgroup(const FusionSystem& f, int sub);
bool is_central_subgroup(const FusionSystem& f, int sub);

// --- subsystems over a smaller group --------------------------------------------

// A fusion system over a subgroup T of the enclosing system's S, together
// with the embedding data.  sys.S is T as its own Group; to_parent maps its
// element ids back to element ids of the enclosing S.
struct EmbeddedSystem {
  FusionSystem sys;
  int t_sub = -1;
  std::vector<int> to_parent;
};

// N_F^K(Q) over N_S^K(Q) = {x in N_S(Q) | c_x|Q in K}: morphisms that extend
// to PQ -> RQ mapping Q onto itself with restriction in K.  K is a subgroup
// of Aut(Q) given as permutations of Q's member positions.  Saturation is
// asserted when Q is fully K-normalized.
EmbeddedSystem local_subsystem(const FusionSystem& f, int q_sub,
                               const std::vector<Perm>& k);
EmbeddedSystem normalizer_subsystem(const FusionSystem& f, int q_sub);
EmbeddedSystem centralizer_subsystem(const FusionSystem& f, int q_sub);

// |N_S^K(Q)| >= |N_S^{phi K phi^-1}(Q')| for every iso phi: Q -> Q' in F.
bool fully_k_normalized(const FusionSystem& f, int q_sub,
                        const std::vector<Perm>& k);

// --- Alperin decomposition -------------------------------------------------------

struct AlperinStep {
  int r_sub = -1;    // centric, radical, fully normalized subgroup R
  FMor alpha;        // automorphism of R whose restriction is applied
  int from_sub = -1; // domain of the partial composite entering this step
};

// Writes phi as a composite of restrictions of automorphisms of subgroups
// that are centric, radical, and fully normalized (plus S itself); breadth-
// first search over those generator moves, so the chain is shortest.
std::vector<AlperinStep> alperin_decomposition(const FusionSystem& f,
                                               const FMor& phi);

// Applies the chain: composes the restricted steps and checks against phi.
bool alperin_chain_composes(const FusionSystem& f, const FMor& phi,
                            const std::vector<AlperinStep>& chain);

}  // namespace ff
