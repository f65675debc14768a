#include "ff/monomial.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>
#include <utility>

#include "ff/caps.hpp"
#include "ff/group.hpp"

namespace ff {

MonoElt mono_identity(int /*m*/, int kappa) {
  return MonoElt{identity_perm(kappa), std::vector<std::uint8_t>(kappa, 0)};
}

MonoElt mono_mul(const MonoElt& a, const MonoElt& b, int m) {
  MonoElt out;
  out.s = compose(a.s, b.s);
  out.v.resize(b.v.size());
  for (std::size_t j = 0; j < b.v.size(); ++j)
    out.v[j] = static_cast<std::uint8_t>((b.v[j] + a.v[b.s[j]]) % m);
  return out;
}

MonoElt mono_inverse(const MonoElt& a, int m) {
  MonoElt out;
  out.s = inverse(a.s);
  out.v.resize(a.v.size());
  for (std::size_t j = 0; j < a.v.size(); ++j)
    out.v[j] = static_cast<std::uint8_t>((m - a.v[out.s[j]]) % m);
  return out;
}

int mono_order(const MonoElt& a, int m) {
  MonoElt e = mono_identity(m, static_cast<int>(a.s.size()));
  MonoElt y = a;
  int c = 1;
  while (!(y == e)) {
    y = mono_mul(y, a, m);
    ++c;
  }
  return c;
}

MonomialGroup monomial_group(int m, int r, int kappa) {
  if (r < 1 || m < 1 || m % r != 0)
    throw ParseError("monomial group needs r dividing m");
  MonomialGroup out;
  out.m = m;
  out.kappa = kappa;
  Perm s = identity_perm(kappa);
  // next_permutation walks the permutations in lex order and the exponent
  // odometer walks vectors in lex order, so elems comes out sorted.
  do {
    std::vector<std::uint8_t> v(kappa, 0);
    while (true) {
      int total = 0;
      for (auto x : v) total += x;
      if (total % r == 0) out.elems.push_back(MonoElt{s, v});
      int j = kappa - 1;
      while (j >= 0 && v[j] == m - 1) v[j--] = 0;
      if (j < 0) break;
      ++v[j];
    }
  } while (std::next_permutation(s.begin(), s.end()));
  return out;
}

MonomialGroup mono_closure(int m, int kappa, std::vector<MonoElt> gens) {
  std::set<MonoElt> seen;
  MonoElt e = mono_identity(m, kappa);
  seen.insert(e);
  std::vector<MonoElt> frontier{e};
  while (!frontier.empty()) {
    std::vector<MonoElt> next;
    for (const MonoElt& x : frontier)
      for (const MonoElt& g : gens) {
        MonoElt y = mono_mul(x, g, m);
        if (seen.insert(y).second) {
          if (seen.size() > caps().elements)
            throw CapError("monomial closure exceeded the elements cap");
          next.push_back(std::move(y));
        }
      }
    frontier = std::move(next);
  }
  MonomialGroup out;
  out.m = m;
  out.kappa = kappa;
  out.elems.assign(seen.begin(), seen.end());
  return out;
}

MonomialGroup mono_residual_p_prime(const MonomialGroup& g, int p) {
  // Incremental closure over the p-power-order elements: generators already
  // inside the running subgroup are skipped, keeping the generating list
  // short.
  std::set<MonoElt> seen{mono_identity(g.m, g.kappa)};
  std::vector<MonoElt> ess;
  for (const MonoElt& x : g.elems) {
    int o = mono_order(x, g.m);
    if (o == 1) continue;
    while (o % p == 0) o /= p;
    if (o != 1 || seen.count(x)) continue;
    ess.push_back(x);
    std::vector<MonoElt> frontier;
    std::vector<MonoElt> base(seen.begin(), seen.end());
    for (const MonoElt& mem : base) {
      MonoElt y = mono_mul(mem, x, g.m);
      if (seen.insert(y).second) frontier.push_back(std::move(y));
    }
    while (!frontier.empty()) {
      MonoElt u = std::move(frontier.back());
      frontier.pop_back();
      for (const MonoElt& t : ess) {
        MonoElt y = mono_mul(u, t, g.m);
        if (seen.insert(y).second) frontier.push_back(std::move(y));
      }
    }
  }
  MonomialGroup out;
  out.m = g.m;
  out.kappa = g.kappa;
  out.elems.assign(seen.begin(), seen.end());
  return out;
}

namespace {

int mod_pow(int base, int exp, int mod) {
  long long acc = 1, b = base % mod;
  while (exp > 0) {
    if (exp & 1) acc = acc * b % mod;
    b = b * b % mod;
    exp >>= 1;
  }
  return static_cast<int>(acc);
}

}  // namespace

std::vector<std::vector<std::uint8_t>> mono_matrix_mod_p(const MonoElt& x,
                                                         int p, int zeta) {
  int k = static_cast<int>(x.s.size());
  std::vector<std::vector<std::uint8_t>> mat(k, std::vector<std::uint8_t>(k, 0));
  for (int j = 0; j < k; ++j)
    mat[x.s[j]][j] = static_cast<std::uint8_t>(mod_pow(zeta, x.v[j], p));
  return mat;
}

bool is_simple_module(
    const std::vector<std::vector<std::vector<std::uint8_t>>>& mats, int p,
    int k) {
  // Row-reduce vec against the running basis; nonzero remainder means it
  // extends the span.
  auto reduce_vec = [&](const std::vector<std::pair<int, std::vector<int>>>& basis,
                        std::vector<int> vec) {
    for (const auto& [piv, bv] : basis) {
      if (vec[piv] == 0) continue;
      int c = vec[piv] * mod_pow(bv[piv], p - 2, p) % p;
      for (int i = 0; i < k; ++i) vec[i] = ((vec[i] - c * bv[i]) % p + p) % p;
    }
    return vec;
  };
  auto first_nonzero = [&](const std::vector<int>& vec) {
    for (int i = 0; i < k; ++i)
      if (vec[i]) return i;
    return -1;
  };
  std::vector<int> v0(k, 0);
  while (true) {
    // Advance the odometer; the all-zero start is skipped below.
    int j = k - 1;
    while (j >= 0 && v0[j] == p - 1) v0[j--] = 0;
    if (j < 0) break;
    ++v0[j];
    std::vector<std::pair<int, std::vector<int>>> basis;
    std::vector<int> red = reduce_vec(basis, v0);
    basis.emplace_back(first_nonzero(red), red);
    std::vector<std::vector<int>> frontier{v0};
    while (!frontier.empty() && static_cast<int>(basis.size()) < k) {
      std::vector<int> v = std::move(frontier.back());
      frontier.pop_back();
      for (const auto& mat : mats) {
        std::vector<int> w(k, 0);
        for (int i = 0; i < k; ++i) {
          long long acc = 0;
          for (int jj = 0; jj < k; ++jj) acc += mat[i][jj] * v[jj];
          w[i] = static_cast<int>(acc % p);
        }
        red = reduce_vec(basis, w);
        int piv = first_nonzero(red);
        if (piv >= 0) {
          basis.emplace_back(piv, red);
          frontier.push_back(w);
        }
      }
    }
    if (static_cast<int>(basis.size()) != k) return false;
  }
  return true;
}

// --- rank bound for A = (Z/p^ell)^kappa inside A x| <kappa-cycle> -------------

namespace {

// Elements of S = A x| <c> as (translation vector mod q, shift amount).
using ShiftElt = std::pair<std::vector<int>, int>;

struct ShiftGroup {
  int q, k;

  std::vector<int> act(int times, const std::vector<int>& a) const {
    int t = ((times % k) + k) % k;
    std::vector<int> out(k);
    for (int j = 0; j < k; ++j) out[j] = a[((j - t) % k + k) % k];
    return out;
  }

  ShiftElt mul(const ShiftElt& x, const ShiftElt& y) const {
    std::vector<int> bb = act(x.second, y.first);
    std::vector<int> a(k);
    for (int j = 0; j < k; ++j) a[j] = (x.first[j] + bb[j]) % q;
    return {std::move(a), (x.second + y.second) % k};
  }

  ShiftElt inv(const ShiftElt& x) const {
    std::vector<int> neg(k);
    for (int j = 0; j < k; ++j) neg[j] = (q - x.first[j]) % q;
    return {act(-x.second, neg), ((-x.second) % k + k) % k};
  }

  ShiftElt ident() const { return {std::vector<int>(k, 0), 0}; }

  int order(const ShiftElt& x) const {
    ShiftElt e = ident();
    ShiftElt y = x;
    int c = 1;
    while (y != e) {
      y = mul(y, x);
      ++c;
    }
    return c;
  }

  std::set<ShiftElt> closure(std::vector<ShiftElt> gens) const {
    std::set<ShiftElt> seen{ident()};
    std::vector<ShiftElt> frontier{ident()};
    while (!frontier.empty()) {
      std::vector<ShiftElt> next;
      for (const ShiftElt& x : frontier)
        for (const ShiftElt& g : gens) {
          ShiftElt y = mul(x, g);
          if (seen.insert(y).second) next.push_back(std::move(y));
        }
      frontier = std::move(next);
    }
    return seen;
  }
};

}  // namespace

int max_elab_rank_off_subgroup(int p, int ell, int kappa) {
  int q = 1;
  for (int i = 0; i < ell; ++i) q *= p;
  ShiftGroup s{q, kappa};
  std::vector<ShiftElt> elements;
  {
    std::vector<int> a(kappa, 0);
    while (true) {
      for (int t = 0; t < kappa; ++t) elements.push_back({a, t});
      int j = kappa - 1;
      while (j >= 0 && a[j] == q - 1) a[j--] = 0;
      if (j < 0) break;
      ++a[j];
    }
  }
  std::vector<ShiftElt> sgens;
  for (int i = 0; i < kappa; ++i) {
    std::vector<int> e(kappa, 0);
    e[i] = 1;
    sgens.push_back({std::move(e), 0});
  }
  sgens.push_back({std::vector<int>(kappa, 0), 1});

  std::set<ShiftElt> unseen;
  for (const ShiftElt& x : elements)
    if (x.second != 0 && s.order(x) == p) unseen.insert(x);

  int max_rank = 0;
  while (!unseen.empty()) {
    // One conjugacy-orbit representative at a time: centralizers of
    // conjugate elements are conjugate, so their rank bounds agree.
    ShiftElt w0 = *unseen.begin();
    std::set<ShiftElt> orbit{w0};
    std::vector<ShiftElt> stack{w0};
    while (!stack.empty()) {
      ShiftElt w = std::move(stack.back());
      stack.pop_back();
      for (const ShiftElt& g : sgens) {
        ShiftElt wg = s.mul(s.mul(g, w), s.inv(g));
        if (orbit.insert(wg).second) stack.push_back(std::move(wg));
      }
    }
    for (const ShiftElt& w : orbit) unseen.erase(w);

    std::vector<ShiftElt> cent;
    for (const ShiftElt& x : elements)
      if (s.mul(x, w0) == s.mul(w0, x)) cent.push_back(x);
    std::vector<ShiftElt> ords;
    for (const ShiftElt& x : cent)
      if (s.order(x) == p) ords.push_back(x);

    // Grow every elementary abelian subgroup of the centralizer by adding
    // commuting order-p elements; track the best rank reached.
    std::set<std::set<ShiftElt>> subs;
    std::set<ShiftElt> triv{s.ident()};
    subs.insert(triv);
    std::vector<std::set<ShiftElt>> work{triv};
    while (!work.empty()) {
      std::set<ShiftElt> h = std::move(work.back());
      work.pop_back();
      for (const ShiftElt& x : ords) {
        if (h.count(x)) continue;
        bool commutes = true;
        for (const ShiftElt& y : h)
          if (s.mul(x, y) != s.mul(y, x)) {
            commutes = false;
            break;
          }
        if (!commutes) continue;
        std::vector<ShiftElt> gens(h.begin(), h.end());
        gens.push_back(x);
        std::set<ShiftElt> j = s.closure(std::move(gens));
        bool elab = true;
        for (const ShiftElt& u : j) {
          int o = s.order(u);
          if (o != 1 && o != p) {
            elab = false;
            break;
          }
        }
        if (elab && subs.insert(j).second) work.push_back(std::move(j));
      }
    }
    for (const auto& h : subs) {
      int rank = 0;
      for (std::size_t sz = h.size(); sz > 1; sz /= p) ++rank;
      max_rank = std::max(max_rank, rank);
    }
  }
  return max_rank;
}

int d8_rank2_elab_count() {
  Group d8 = catalog_group("D8");
  int count = 0;
  for (const Subgroup& h : all_subgroups(d8)) {
    if (h.size() != 4) continue;
    bool elab = true;
    for (int m : h.members)
      if (d8.order_of(m) > 2) {
        elab = false;
        break;
      }
    if (elab) ++count;
  }
  return count;
}

}  // namespace ff
