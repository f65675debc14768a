#include "ff/group.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

#include "ff/caps.hpp"

namespace ff {

namespace {

int p_part(int n, int p) {
  int r = 1;
  while (n % p == 0) {
    n /= p;
    r *= p;
  }
  return r;
}

bool is_p_power(int n, int p) { return n == p_part(n, p); }

// Ids of the group's stored generators (identity dropped).
std::vector<int> gen_ids(const Group& g) {
  std::vector<int> out;
  for (const Perm& p : g.gens) {
    int id = g.id_of(p);
    if (id > 0) out.push_back(id);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

// Closure of seed ids inside g.  Generators already inside the running set
// are skipped, so the essential generating list (written to ess_out when
// requested) stays short even for seeds the size of the whole subgroup.
std::vector<int> closure_ids(const Group& g, const std::vector<int>& seed,
                             std::vector<int>* ess_out = nullptr) {
  std::vector<char> in_set(g.size(), 0);
  std::vector<int> members{0};
  in_set[0] = 1;
  std::vector<int> ess;
  std::vector<int> frontier;
  for (int s : seed) {
    if (in_set[s]) continue;
    ess.push_back(s);
    frontier.clear();
    // Seed with all products old * s, then close the new wave against every
    // essential generator (old members are already closed against the rest).
    std::size_t base = members.size();
    for (std::size_t k = 0; k < base; ++k) {
      int y = g.mul(members[k], s);
      if (!in_set[y]) {
        in_set[y] = 1;
        members.push_back(y);
        frontier.push_back(y);
      }
    }
    while (!frontier.empty()) {
      int x = frontier.back();
      frontier.pop_back();
      for (int t : ess) {
        int y = g.mul(x, t);
        if (!in_set[y]) {
          in_set[y] = 1;
          members.push_back(y);
          frontier.push_back(y);
        }
      }
    }
  }
  std::sort(members.begin(), members.end());
  if (ess_out != nullptr) *ess_out = ess;
  return members;
}

// A short generating list for a subgroup (greedy over its sorted members).
std::vector<int> small_gens(const Subgroup& h) {
  std::vector<int> ess;
  closure_ids(*h.parent, h.members, &ess);
  return ess;
}

Subgroup make_sub(const Group& g, std::vector<int> members) {
  return Subgroup{&g, std::move(members)};
}

// Smallest normal subgroup containing the given elements.
Subgroup normal_closure(const Group& g, std::vector<int> seed) {
  std::vector<int> ggens = gen_ids(g);
  std::vector<int> ess;
  std::vector<int> members = closure_ids(g, seed, &ess);
  for (bool grew = true; grew;) {
    grew = false;
    std::vector<int> extra;
    for (int t : ggens)
      for (int e : ess) {
        int c = g.conj(t, e);
        if (!std::binary_search(members.begin(), members.end(), c))
          extra.push_back(c);
      }
    if (!extra.empty()) {
      std::vector<int> next_seed = members;
      next_seed.insert(next_seed.end(), extra.begin(), extra.end());
      members = closure_ids(g, next_seed, &ess);
      grew = true;
    }
  }
  return make_sub(g, std::move(members));
}

}  // namespace

// --- Group -------------------------------------------------------------------

int Group::id_of(const Perm& p) const {
  auto it = std::lower_bound(elems.begin(), elems.end(), p);
  if (it == elems.end() || *it != p) return -1;
  return static_cast<int>(it - elems.begin());
}

int Group::mul(int a, int b) const {
  if (has_table_) return mul_[static_cast<std::size_t>(a) * elems.size() + b];
  int id = id_of(compose(elems[a], elems[b]));
  if (id < 0) throw std::logic_error("element set not closed under products");
  return id;
}

int Group::conj(int g, int x) const { return mul(mul(g, x), inv_[g]); }

int Group::order_of(int id) const { return perm_order(elems[id]); }

void Group::finish() {
  if (elems.empty() || !is_identity(elems[0]))
    throw std::logic_error("group element list must start with the identity");
  inv_.resize(elems.size());
  for (std::size_t i = 0; i < elems.size(); ++i) {
    int id = id_of(inverse(elems[i]));
    if (id < 0) throw std::logic_error("element set not closed under inverses");
    inv_[i] = id;
  }
  has_table_ = elems.size() <= 1024;
  if (has_table_) {
    std::size_t n = elems.size();
    mul_.resize(n * n);
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b) {
        int id = id_of(compose(elems[a], elems[b]));
        if (id < 0) throw std::logic_error("element set not closed under products");
        mul_[a * n + b] = static_cast<std::uint16_t>(id);
      }
  }
}

Group closure(int degree, std::vector<Perm> generators) {
  std::set<Perm> seen;
  seen.insert(identity_perm(degree));
  std::vector<Perm> frontier{identity_perm(degree)};
  while (!frontier.empty()) {
    std::vector<Perm> next;
    for (const Perm& x : frontier)
      for (const Perm& g : generators) {
        Perm y = compose(x, g);
        if (seen.insert(y).second) {
          if (seen.size() > caps().elements)
            throw CapError("element closure exceeded the elements cap");
          next.push_back(std::move(y));
        }
      }
    frontier = std::move(next);
  }
  Group out;
  out.degree = degree;
  out.elems.assign(seen.begin(), seen.end());
  for (Perm& g : generators)
    if (!is_identity(g)) out.gens.push_back(std::move(g));
  out.finish();
  return out;
}

Group group_from_elements(int degree, std::vector<Perm> elems,
                          std::vector<Perm> generators) {
  Group out;
  out.degree = degree;
  std::sort(elems.begin(), elems.end());
  elems.erase(std::unique(elems.begin(), elems.end()), elems.end());
  out.elems = std::move(elems);
  out.finish();
  if (generators.empty()) {
    std::vector<int> all(out.size());
    for (int i = 0; i < out.size(); ++i) all[i] = i;
    std::vector<int> ess;
    closure_ids(out, all, &ess);
    for (int id : ess) generators.push_back(out.elems[id]);
  }
  for (Perm& g : generators)
    if (!is_identity(g)) out.gens.push_back(std::move(g));
  return out;
}

Group direct_product(const Group& a, const Group& b) {
  Group out;
  out.degree = a.degree + b.degree;
  out.elems.reserve(static_cast<std::size_t>(a.size()) * b.size());
  for (const Perm& x : a.elems)
    for (const Perm& y : b.elems) {
      Perm z = x;
      z.reserve(out.degree);
      for (auto v : y) z.push_back(static_cast<std::uint16_t>(v + a.degree));
      out.elems.push_back(std::move(z));
    }
  // a.elems and b.elems are sorted, so the nested loop emits sorted output.
  for (const Perm& g : a.gens) {
    Perm z = g;
    for (int i = 0; i < b.degree; ++i)
      z.push_back(static_cast<std::uint16_t>(i + a.degree));
    out.gens.push_back(std::move(z));
  }
  for (const Perm& g : b.gens) {
    Perm z = identity_perm(a.degree);
    for (auto v : g) z.push_back(static_cast<std::uint16_t>(v + a.degree));
    out.gens.push_back(std::move(z));
  }
  out.finish();
  return out;
}

// --- subgroups -----------------------------------------------------------------

bool Subgroup::contains_id(int id) const {
  return std::binary_search(members.begin(), members.end(), id);
}

bool Subgroup::contains_all(const Subgroup& other) const {
  return std::includes(members.begin(), members.end(), other.members.begin(),
                       other.members.end());
}

Subgroup whole_group(const Group& g) {
  std::vector<int> all(g.size());
  for (int i = 0; i < g.size(); ++i) all[i] = i;
  return make_sub(g, std::move(all));
}

Subgroup trivial_subgroup(const Group& g) { return make_sub(g, {0}); }

Subgroup subgroup_closure(const Group& g, std::vector<int> generator_ids) {
  return make_sub(g, closure_ids(g, generator_ids));
}

Subgroup conjugate_subgroup(const Group& g, int by, const Subgroup& h) {
  std::vector<int> out;
  out.reserve(h.members.size());
  for (int m : h.members) out.push_back(g.conj(by, m));
  std::sort(out.begin(), out.end());
  return make_sub(g, std::move(out));
}

Subgroup intersect(const Subgroup& a, const Subgroup& b) {
  std::vector<int> out;
  std::set_intersection(a.members.begin(), a.members.end(), b.members.begin(),
                        b.members.end(), std::back_inserter(out));
  return make_sub(*a.parent, std::move(out));
}

Subgroup join(const Subgroup& a, const Subgroup& b) {
  if (a.contains_all(b)) return a;
  if (b.contains_all(a)) return b;
  std::vector<int> seed = a.members;
  seed.insert(seed.end(), b.members.begin(), b.members.end());
  return make_sub(*a.parent, closure_ids(*a.parent, seed));
}

bool is_subgroup_normal(const Group& g, const Subgroup& h) {
  std::vector<int> hgens = small_gens(h);
  for (int t : gen_ids(g))
    for (int e : hgens)
      if (!h.contains_id(g.conj(t, e))) return false;
  return true;
}

Group subgroup_as_group(const Subgroup& h, std::vector<int>* to_parent) {
  std::vector<Perm> elems;
  elems.reserve(h.members.size());
  for (int m : h.members) elems.push_back((*h.parent)[m]);
  std::vector<Perm> gens;
  for (int id : small_gens(h)) gens.push_back((*h.parent)[id]);
  if (to_parent != nullptr) *to_parent = h.members;
  // h.members is sorted, so elems arrives sorted and ids line up with it.
  return group_from_elements(h.parent->degree, std::move(elems), std::move(gens));
}

Group quotient_group(const Group& g, const Subgroup& h,
                     std::vector<int>* to_quotient) {
  // Number the left cosets xH in order of least member id; the identity coset
  // H itself is coset 0.
  std::vector<int> coset_of(g.size(), -1);
  std::vector<int> coset_rep;
  for (int x = 0; x < g.size(); ++x) {
    if (coset_of[x] >= 0) continue;
    int idx = static_cast<int>(coset_rep.size());
    coset_rep.push_back(x);
    for (int m : h.members) coset_of[g.mul(x, m)] = idx;
  }
  int points = static_cast<int>(coset_rep.size());
  std::vector<Perm> images(g.size());
  for (int x = 0; x < g.size(); ++x) {
    Perm p(points);
    for (int c = 0; c < points; ++c)
      p[c] = static_cast<std::uint16_t>(coset_of[g.mul(x, coset_rep[c])]);
    images[x] = std::move(p);
  }
  std::vector<Perm> uniq = images;
  std::sort(uniq.begin(), uniq.end());
  uniq.erase(std::unique(uniq.begin(), uniq.end()), uniq.end());
  std::vector<Perm> qgens;
  for (const Perm& gen : g.gens) {
    int id = g.id_of(gen);
    if (id >= 0 && !is_identity(images[id])) qgens.push_back(images[id]);
  }
  Group out = group_from_elements(points, std::move(uniq), std::move(qgens));
  if (to_quotient != nullptr) {
    to_quotient->assign(g.size(), -1);
    for (int x = 0; x < g.size(); ++x) (*to_quotient)[x] = out.id_of(images[x]);
  }
  return out;
}

std::vector<Subgroup> all_subgroups(const Group& g) {
  if (static_cast<std::size_t>(g.size()) > caps().lattice)
    throw CapError("subgroup lattice walk exceeded the lattice cap");
  // Atoms are the cyclic subgroups; everything else arises as joins.
  std::set<std::vector<int>> atoms;
  for (int x = 1; x < g.size(); ++x) atoms.insert(closure_ids(g, {x}));
  std::set<std::vector<int>> subs;
  subs.insert({0});
  std::vector<std::vector<int>> frontier{{0}};
  while (!frontier.empty()) {
    std::vector<int> cur = std::move(frontier.back());
    frontier.pop_back();
    for (const std::vector<int>& a : atoms) {
      if (std::includes(cur.begin(), cur.end(), a.begin(), a.end())) continue;
      std::vector<int> seed = cur;
      seed.insert(seed.end(), a.begin(), a.end());
      std::vector<int> j = closure_ids(g, seed);
      if (subs.insert(j).second) frontier.push_back(std::move(j));
    }
  }
  std::vector<Subgroup> out;
  out.reserve(subs.size());
  for (const auto& members : subs) out.push_back(make_sub(g, members));
  std::sort(out.begin(), out.end(), [](const Subgroup& a, const Subgroup& b) {
    return a.size() != b.size() ? a.size() < b.size() : a.members < b.members;
  });
  return out;
}

std::vector<std::vector<int>> conjugacy_classes(const Group& g) {
  std::vector<int> ggens = gen_ids(g);
  std::vector<char> seen(g.size(), 0);
  std::vector<std::vector<int>> classes;
  for (int x = 0; x < g.size(); ++x) {
    if (seen[x]) continue;
    std::vector<int> cls{x};
    seen[x] = 1;
    std::vector<int> stack{x};
    while (!stack.empty()) {
      int y = stack.back();
      stack.pop_back();
      for (int t : ggens) {
        int z = g.conj(t, y);
        if (!seen[z]) {
          seen[z] = 1;
          cls.push_back(z);
          stack.push_back(z);
        }
      }
    }
    std::sort(cls.begin(), cls.end());
    classes.push_back(std::move(cls));
  }
  return classes;
}

std::vector<Subgroup> normal_subgroups(const Group& g) {
  std::set<std::vector<int>> atoms;
  for (const auto& cls : conjugacy_classes(g))
    if (cls[0] != 0) atoms.insert(normal_closure(g, {cls[0]}).members);
  std::set<std::vector<int>> subs;
  subs.insert({0});
  std::vector<std::vector<int>> frontier{{0}};
  while (!frontier.empty()) {
    std::vector<int> cur = std::move(frontier.back());
    frontier.pop_back();
    for (const std::vector<int>& a : atoms) {
      if (std::includes(cur.begin(), cur.end(), a.begin(), a.end())) continue;
      std::vector<int> seed = cur;
      seed.insert(seed.end(), a.begin(), a.end());
      std::vector<int> j = closure_ids(g, seed);
      if (subs.insert(j).second) frontier.push_back(std::move(j));
    }
  }
  std::vector<Subgroup> out;
  out.reserve(subs.size());
  for (const auto& members : subs) out.push_back(make_sub(g, members));
  std::sort(out.begin(), out.end(), [](const Subgroup& a, const Subgroup& b) {
    return a.size() != b.size() ? a.size() < b.size() : a.members < b.members;
  });
  return out;
}

Subgroup sylow(const Group& g, int p) {
  int target = p_part(g.size(), p);
  Subgroup cur = trivial_subgroup(g);
  while (cur.size() < target) {
    // Any p-power-order element normalizing cur and lying outside it extends
    // cur to a strictly larger p-subgroup (cur is normal in the extension and
    // the quotient is cyclic of p-power order); one always exists short of a
    // Sylow subgroup.
    std::vector<int> cgens = small_gens(cur);
    bool grown = false;
    for (int x = 1; x < g.size() && !grown; ++x) {
      if (cur.contains_id(x) || !is_p_power(g.order_of(x), p)) continue;
      bool normalizes = true;
      for (int e : cgens)
        if (!cur.contains_id(g.conj(x, e))) {
          normalizes = false;
          break;
        }
      if (!normalizes) continue;
      std::vector<int> seed = cur.members;
      seed.push_back(x);
      cur = make_sub(g, closure_ids(g, seed));
      grown = true;
    }
    if (!grown) throw std::logic_error("sylow ascent stalled");
  }
  // Canonical representative: lex-least member list over the conjugacy orbit.
  std::set<std::vector<int>> orbit;
  orbit.insert(cur.members);
  std::vector<std::vector<int>> stack{cur.members};
  std::vector<int> ggens = gen_ids(g);
  while (!stack.empty()) {
    std::vector<int> m = std::move(stack.back());
    stack.pop_back();
    Subgroup s = make_sub(g, m);
    for (int t : ggens) {
      std::vector<int> c = conjugate_subgroup(g, t, s).members;
      if (orbit.insert(c).second) stack.push_back(std::move(c));
    }
  }
  return make_sub(g, *orbit.begin());
}

Subgroup normalizer(const Group& g, const Subgroup& h) {
  std::vector<int> hgens = small_gens(h);
  std::vector<int> out;
  for (int x = 0; x < g.size(); ++x) {
    bool ok = true;
    for (int e : hgens)
      if (!h.contains_id(g.conj(x, e))) {
        ok = false;
        break;
      }
    if (ok) out.push_back(x);
  }
  return make_sub(g, std::move(out));
}

Subgroup centralizer_sub(const Group& g, const Subgroup& h) {
  std::vector<int> hgens = small_gens(h);
  std::vector<int> out;
  for (int x = 0; x < g.size(); ++x) {
    bool ok = true;
    for (int e : hgens)
      if (g.conj(x, e) != e) {
        ok = false;
        break;
      }
    if (ok) out.push_back(x);
  }
  return make_sub(g, std::move(out));
}

Subgroup center_of(const Group& g) { return centralizer_sub(g, whole_group(g)); }

Subgroup center_of_subgroup(const Subgroup& h) {
  const Group& g = *h.parent;
  std::vector<int> hgens = small_gens(h);
  std::vector<int> out;
  for (int x : h.members) {
    bool ok = true;
    for (int e : hgens)
      if (g.conj(x, e) != e) {
        ok = false;
        break;
      }
    if (ok) out.push_back(x);
  }
  return make_sub(g, std::move(out));
}

Subgroup commutator_subgroup(const Group& g) {
  // [G,G] is the normal closure of the commutators of the generators.
  std::vector<int> ggens = gen_ids(g);
  std::vector<int> comms;
  for (int a : ggens)
    for (int b : ggens)
      comms.push_back(g.mul(g.mul(g.inv(a), g.inv(b)), g.mul(a, b)));
  if (comms.empty()) return trivial_subgroup(g);
  return normal_closure(g, comms);
}

Subgroup core_p(const Group& g, int p) {
  // O_p(G) is the join of the normal closures of its conjugacy classes, and a
  // class closure lands inside O_p(G) exactly when it is a p-group.
  Subgroup best = trivial_subgroup(g);
  for (const auto& cls : conjugacy_classes(g)) {
    if (cls[0] == 0 || !is_p_power(g.order_of(cls[0]), p)) continue;
    Subgroup atom = normal_closure(g, {cls[0]});
    if (is_p_power(atom.size(), p)) best = join(best, atom);
  }
  return best;
}

Subgroup core_p_prime(const Group& g, int p) {
  Subgroup best = trivial_subgroup(g);
  for (const auto& cls : conjugacy_classes(g)) {
    if (cls[0] == 0 || g.order_of(cls[0]) % p == 0) continue;
    Subgroup atom = normal_closure(g, {cls[0]});
    if (atom.size() % p != 0) best = join(best, atom);
  }
  return best;
}

Subgroup residual_p(const Group& g, const Subgroup& h, int p) {
  std::vector<int> seed;
  for (int m : h.members)
    if (g.order_of(m) % p != 0) seed.push_back(m);
  return make_sub(g, closure_ids(g, seed));
}

Subgroup residual_p_prime(const Group& g, const Subgroup& h, int p) {
  std::vector<int> seed;
  for (int m : h.members)
    if (is_p_power(g.order_of(m), p)) seed.push_back(m);
  return make_sub(g, closure_ids(g, seed));
}

std::vector<int> transporter(const Group& g, const Subgroup& p,
                             const Subgroup& q) {
  std::vector<int> pgens = small_gens(p);
  std::vector<int> out;
  for (int x = 0; x < g.size(); ++x) {
    bool ok = true;
    for (int e : pgens)
      if (!q.contains_id(g.conj(x, e))) {
        ok = false;
        break;
      }
    if (ok) out.push_back(x);
  }
  return out;
}

std::vector<GroupHom> homs_by_conjugation(const Group& g, const Subgroup& p,
                                          const Subgroup& q) {
  std::map<std::vector<int>, int> seen;
  std::vector<GroupHom> out;
  for (int x : transporter(g, p, q)) {
    std::vector<int> images;
    images.reserve(p.members.size());
    for (int m : p.members) images.push_back(g.conj(x, m));
    if (seen.emplace(images, 1).second)
      out.push_back(GroupHom{p, q, std::move(images)});
  }
  std::sort(out.begin(), out.end(), [](const GroupHom& a, const GroupHom& b) {
    return a.images < b.images;
  });
  return out;
}

PCentricWitness p_centric_in(const Group& g, int p, const Subgroup& sub) {
  Subgroup c = centralizer_sub(g, sub);
  Subgroup z = intersect(c, sub);  // = Z(sub)
  Subgroup odd = residual_p(g, c, p);
  PCentricWitness w;
  w.centralizer_order = c.size();
  w.center_order = z.size();
  w.odd_part_order = odd.size();
  // Z(sub) is central in C_G(sub), so it is a Sylow p-subgroup of the
  // centralizer exactly when the complementary factor has order prime to p.
  w.centric = z.size() == p_part(c.size(), p);
  if (w.centric && (odd.size() % p == 0 ||
                    static_cast<long long>(odd.size()) * z.size() != c.size()))
    throw std::logic_error("centralizer failed to split as Z(P) x O^p");
  return w;
}

bool is_perfect(const Group&, const Subgroup& h) {
  Group sub = subgroup_as_group(h, nullptr);
  return commutator_subgroup(sub).size() == sub.size();
}

bool is_simple_group(const Group& g) {
  return g.size() > 1 && normal_subgroups(g).size() == 2;
}

bool is_simple_subgroup(const Group&, const Subgroup& h) {
  Group sub = subgroup_as_group(h, nullptr);
  return is_simple_group(sub);
}

bool is_quasisimple(const Group&, const Subgroup& h) {
  if (h.size() == 1) return false;
  Group sub = subgroup_as_group(h, nullptr);
  if (commutator_subgroup(sub).size() != sub.size()) return false;
  Group central_quot = quotient_group(sub, center_of(sub), nullptr);
  return is_simple_group(central_quot);
}

ComponentData components_of_group(const Group& g) {
  // Every component of a non-quasisimple group already lies in a proper
  // normal subgroup (components are subnormal), so recursing through the
  // normal subgroups and keeping the quasisimple stops finds them all.
  std::set<std::vector<int>> comps;
  std::set<std::vector<int>> visited;
  std::vector<std::vector<int>> stack{whole_group(g).members};
  while (!stack.empty()) {
    std::vector<int> cur = std::move(stack.back());
    stack.pop_back();
    if (!visited.insert(cur).second) continue;
    Subgroup n = make_sub(g, cur);
    if (n.size() == 1) continue;
    if (is_quasisimple(g, n)) {
      comps.insert(n.members);
      continue;
    }
    std::vector<int> to_parent;
    Group sub = subgroup_as_group(n, &to_parent);
    for (const Subgroup& m : normal_subgroups(sub)) {
      if (m.size() == 1 || m.size() == sub.size()) continue;
      std::vector<int> lifted;
      lifted.reserve(m.members.size());
      for (int id : m.members) lifted.push_back(to_parent[id]);
      stack.push_back(std::move(lifted));
    }
  }
  ComponentData out{{}, trivial_subgroup(g), trivial_subgroup(g),
                    trivial_subgroup(g)};
  for (const auto& members : comps) {
    Subgroup c = make_sub(g, members);
    out.layer = join(out.layer, c);
    out.components.push_back(std::move(c));
  }
  int n = g.size();
  for (int p = 2; p <= n; ++p) {
    if (n % p != 0) continue;
    out.fitting = join(out.fitting, core_p(g, p));
    while (n % p == 0) n /= p;
  }
  out.f_star = join(out.layer, out.fitting);
  Subgroup cent = centralizer_sub(g, out.f_star);
  if (!out.f_star.contains_all(cent))
    throw std::logic_error("generalized Fitting subgroup fails to absorb its centralizer");
  return out;
}

}  // namespace ff
