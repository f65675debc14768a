#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace ff {

// A permutation of {0, ..., n-1} stored as its image table: p[i] is the image
// of point i.  Lexicographic comparison of the image tables is the canonical
// order used everywhere; the identity is lex-least in any set containing it.
using Perm = std::vector<std::uint16_t>;

Perm identity_perm(int degree);
bool is_identity(const Perm& p);

// compose(a, b) applies b first, then a:  compose(a,b)[i] == a[b[i]].
Perm compose(const Perm& a, const Perm& b);
Perm inverse(const Perm& p);

// conjugate(g, x) = g x g^-1.
Perm conjugate(const Perm& g, const Perm& x);

int perm_order(const Perm& p);
int perm_sign(const Perm& p);

// Parse a disjoint-cycle expression such as "(0 1 2)(3 4)"; commas are also
// accepted as separators inside a cycle.  "()" denotes the identity.
Perm parse_cycles(int degree, const std::string& text);
std::string cycle_string(const Perm& p);

}  // namespace ff
