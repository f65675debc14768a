#pragma once

#include <cstdint>
#include <vector>

#include "ff/perm.hpp"

namespace ff {

// An element of a monomial group: the matrix sending e_j to z^{v[j]} e_{s[j]}
// where z is a fixed primitive m-th root of unity.  Multiplication follows
// matrix multiplication: (s,v)(t,w) = (st, w + v o t) with (v o t)[j] = v[t[j]].
struct MonoElt {
  Perm s;
  std::vector<std::uint8_t> v;

  bool operator==(const MonoElt& o) const { return s == o.s && v == o.v; }
  bool operator<(const MonoElt& o) const {
    return s != o.s ? s < o.s : v < o.v;
  }
};

// The group of kappa x kappa monomial matrices whose nonzero entries are m-th
// roots of unity with product an (m/r)-th root of unity (r divides m).
struct MonomialGroup {
  int m = 1;
  int kappa = 1;
  std::vector<MonoElt> elems;  // sorted

  int size() const { return static_cast<int>(elems.size()); }
};

MonoElt mono_identity(int m, int kappa);
MonoElt mono_mul(const MonoElt& a, const MonoElt& b, int m);
MonoElt mono_inverse(const MonoElt& a, int m);
int mono_order(const MonoElt& a, int m);

// Direct enumeration; |G(m,r,kappa)| = m^kappa kappa! / r.
MonomialGroup monomial_group(int m, int r, int kappa);

MonomialGroup mono_closure(int m, int kappa, std::vector<MonoElt> gens);

// O^{p'}: the subgroup generated by all elements of p-power order.
MonomialGroup mono_residual_p_prime(const MonomialGroup& g, int p);

// Reduce a monomial element to a kappa x kappa matrix over F_p by sending the
// root of unity z to zeta (zeta must have multiplicative order m mod p).
std::vector<std::vector<std::uint8_t>> mono_matrix_mod_p(const MonoElt& x,
                                                         int p, int zeta);

// Does the given matrix list act irreducibly on F_p^k?  (Spinning: the orbit
// span of every nonzero vector must be the full space.)
bool is_simple_module(const std::vector<std::vector<std::vector<std::uint8_t>>>& mats,
                      int p, int k);

// For S = A x| E with A = (Z/p^ell)^kappa and E generated by a kappa-cycle:
// the largest rank of an elementary abelian subgroup of C_S(w) over all
// order-p elements w outside A.  Rank < kappa certifies that A is the unique
// abelian subgroup of its kind (the p = 2 dihedral counterexample fails this).
int max_elab_rank_off_subgroup(int p, int ell, int kappa);

// Number of rank-2 elementary abelian subgroups of D8 (the contrast case).
int d8_rank2_elab_count();

}  // namespace ff
