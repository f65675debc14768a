#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "ff/perm.hpp"

namespace ff {

// A finite permutation group with a fixed, lexicographically sorted element
// list.  Elements are addressed by their index ("id") into elems; id 0 is
// always the identity.  A multiplication table is cached for small groups.
class Group {
 public:
  int degree = 0;
  std::vector<Perm> gens;
  std::vector<Perm> elems;  // sorted; elems[0] is the identity

  int size() const { return static_cast<int>(elems.size()); }
  const Perm& operator[](int id) const { return elems[id]; }

  int id_of(const Perm& p) const;  // -1 if absent
  bool contains(const Perm& p) const { return id_of(p) >= 0; }

  int mul(int a, int b) const;  // id of elems[a] o elems[b]
  int inv(int a) const { return inv_[a]; }
  int conj(int g, int x) const;  // id of g x g^-1
  int order_of(int id) const;

  // Called once after elems is filled; builds the inverse table and, when
  // |G| <= 1024, the multiplication table.
  void finish();

 private:
  std::vector<int> inv_;
  std::vector<std::uint16_t> mul_;  // row-major when present
  bool has_table_ = false;
};

// Closure of a generating set; respects caps().elements.
Group closure(int degree, std::vector<Perm> generators);

// Wrap an already-closed element set as a Group (asserted closed under the
// cached products that finish() builds).  A small generating set is chosen
// greedily unless one is supplied.
Group group_from_elements(int degree, std::vector<Perm> elems,
                          std::vector<Perm> generators = {});

Group direct_product(const Group& a, const Group& b);

// --- subgroups -------------------------------------------------------------

// A subgroup of a fixed parent group, stored as the sorted list of member ids.
struct Subgroup {
  const Group* parent = nullptr;
  std::vector<int> members;  // sorted ids, always containing 0

  int size() const { return static_cast<int>(members.size()); }
  bool contains_id(int id) const;
  bool contains_all(const Subgroup& other) const;
  bool operator==(const Subgroup& o) const { return members == o.members; }
};

Subgroup whole_group(const Group& g);
Subgroup trivial_subgroup(const Group& g);
Subgroup subgroup_closure(const Group& g, std::vector<int> generator_ids);
Subgroup conjugate_subgroup(const Group& g, int by, const Subgroup& h);
Subgroup intersect(const Subgroup& a, const Subgroup& b);
Subgroup join(const Subgroup& a, const Subgroup& b);
bool is_subgroup_normal(const Group& g, const Subgroup& h);

// Make the members of h into a standalone permutation group (same degree).
// to_parent maps the new group's element ids back to parent ids.
Group subgroup_as_group(const Subgroup& h, std::vector<int>* to_parent);

// Left-multiplication action of g on the left cosets of h; returns the image
// permutation group (one point per coset, coset of the identity first after
// sorting by least member id).  to_quotient maps parent element ids to image
// element ids.
Group quotient_group(const Group& g, const Subgroup& h,
                     std::vector<int>* to_quotient);

// Full subgroup lattice via join closure; respects caps().lattice on |G|.
std::vector<Subgroup> all_subgroups(const Group& g);

// Conjugacy classes of elements, each sorted, in order of least member.
std::vector<std::vector<int>> conjugacy_classes(const Group& g);

// All normal subgroups (join closure of conjugacy-class closures).
std::vector<Subgroup> normal_subgroups(const Group& g);

// Canonical Sylow p-subgroup: lex-least member list among all conjugates.
Subgroup sylow(const Group& g, int p);

Subgroup normalizer(const Group& g, const Subgroup& h);
Subgroup centralizer_sub(const Group& g, const Subgroup& h);
Subgroup center_of(const Group& g);
Subgroup center_of_subgroup(const Subgroup& h);
Subgroup commutator_subgroup(const Group& g);

// O_p(G), O_{p'}(G): the largest normal p- (resp. p'-) subgroup.
Subgroup core_p(const Group& g, int p);
Subgroup core_p_prime(const Group& g, int p);

// O^p(H) = <elements of H of order prime to p> (smallest normal subgroup with
// p-group quotient); O^{p'}(H) = <elements of p-power order>.
Subgroup residual_p(const Group& g, const Subgroup& h, int p);
Subgroup residual_p_prime(const Group& g, const Subgroup& h, int p);

// {g in G : g P g^-1 <= Q}, as sorted element ids.
std::vector<int> transporter(const Group& g, const Subgroup& p,
                             const Subgroup& q);

// --- conjugation homomorphisms ----------------------------------------------

// An injective homomorphism between subgroups of one parent group, recorded
// by the image of each domain member (parent element ids, domain order).
struct GroupHom {
  Subgroup domain;
  Subgroup codomain;
  std::vector<int> images;  // images[k] = image of domain.members[k]
};

// All distinct maps c_g|_P : P -> Q with g in the transporter.
std::vector<GroupHom> homs_by_conjugation(const Group& g, const Subgroup& p,
                                          const Subgroup& q);

// --- p-centric test ----------------------------------------------------------

struct PCentricWitness {
  bool centric = false;
  int centralizer_order = 0;
  int center_order = 0;
  int odd_part_order = 0;  // |O^p(C_G(P))|
};

// P is p-centric in G when Z(P) is a Sylow p-subgroup of C_G(P); equivalently
// C_G(P) = Z(P) x O^p(C_G(P)) with the second factor of order prime to p.
PCentricWitness p_centric_in(const Group& g, int p, const Subgroup& sub);

// --- simplicity, components, generalized Fitting -----------------------------

bool is_perfect(const Group& g, const Subgroup& h);
bool is_simple_group(const Group& g);
bool is_simple_subgroup(const Group& g, const Subgroup& h);
bool is_quasisimple(const Group& g, const Subgroup& h);

struct ComponentData {
  std::vector<Subgroup> components;  // subnormal quasisimple subgroups
  Subgroup layer;                    // E(G), join of the components
  Subgroup fitting;                  // F(G), join of the O_q(G)
  Subgroup f_star;                   // F*(G) = E(G) F(G)
};

// Components of G found by recursing through proper normal subgroups;
// verifies C_G(F*(G)) <= F*(G) before returning.
ComponentData components_of_group(const Group& g);

// --- automorphism groups ------------------------------------------------------

// Aut(G) realized as a permutation group on the element ids of G (degree |G|).
struct AutGroup {
  Group perm;                  // each element: id permutation of G
  std::vector<int> inner_ids;  // sorted ids (into perm.elems) of Inn(G)
  std::vector<int> outer_reps; // one id per Inn-coset, canonical least
};

AutGroup aut_group(const Group& g);  // respects caps().aut on |G|

// --- catalog and parsing ------------------------------------------------------

// Built-in groups: S3 S4 S5 A4 A5 A6 D8 Q8 SD16 SL23 GL23 SL32, plus the
// cyclic groups C2..C8 and V4 as building blocks for product examples.
std::vector<std::string> catalog_names();
Group catalog_group(const std::string& name);

// "degree <n>" header, then one generator per line in cycle notation.
Group parse_group_file(const std::string& path);

// Resolve a CLI group spec: catalog name, AxB product of specs, or file path.
Group resolve_group(const std::string& spec);

}  // namespace ff
