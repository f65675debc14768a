#!/usr/bin/env python3
"""Independent brute-force oracle for the values frozen into the C++ tests.

Everything here is computed with deliberately naive, definition-level
algorithms and shares no code with the C++ library.  Run it from the repo
root:

    python3 tools/oracle.py

It prints one `key = value` line per fact and exits nonzero if any internal
cross-check fails.  The unit tests quote these outputs as literals.
"""

import sys
from itertools import product

# ---------------------------------------------------------------------------
# permutations as tuples: p[i] = image of point i


def pmul(a, b):
    """(a*b)(x) = a(b(x))."""
    return tuple(a[b[i]] for i in range(len(a)))


def pinv(a):
    out = [0] * len(a)
    for i, v in enumerate(a):
        out[v] = i
    return tuple(out)


def pident(n):
    return tuple(range(n))


def conj(g, x):
    """g x g^-1."""
    return pmul(pmul(g, x), pinv(g))


def sgn(perm):
    n = len(perm)
    seen = [False] * n
    s = 1
    for i in range(n):
        if not seen[i]:
            j = i
            c = 0
            while not seen[j]:
                seen[j] = True
                j = perm[j]
                c += 1
            if c % 2 == 0:
                s = -s
    return s


def cycles_to_perm(n, cycles):
    img = list(range(n))
    for cyc in cycles:
        for i in range(len(cyc)):
            img[cyc[i]] = cyc[(i + 1) % len(cyc)]
    return tuple(img)


def closure(gens):
    n = len(gens[0])
    seen = {pident(n)}
    frontier = [pident(n)]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = pmul(x, g)
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return frozenset(seen)


def closure_set(elems):
    return closure(list(elems))


def order_of(x):
    n = len(x)
    e = pident(n)
    k, y = 1, x
    while y != e:
        y = pmul(y, x)
        k += 1
    return k


# ---------------------------------------------------------------------------
# catalog groups


def S(n):
    return closure([cycles_to_perm(n, [[0, 1]]), cycles_to_perm(n, [list(range(n))])])


def A(n):
    if n % 2 == 1:
        return closure([cycles_to_perm(n, [[0, 1, 2]]), cycles_to_perm(n, [list(range(n))])])
    return closure([cycles_to_perm(n, [[0, 1, 2]]), cycles_to_perm(n, [list(range(1, n))])])


def D8():
    return closure([cycles_to_perm(4, [[0, 1, 2, 3]]), cycles_to_perm(4, [[0, 2]])])


def Q8():
    # left-regular representation on {1,-1,i,-i,j,-j,k,-k} -> 0..7
    names = ["1", "-1", "i", "-i", "j", "-j", "k", "-k"]
    idx = {s: t for t, s in enumerate(names)}

    def neg(s):
        return s[1:] if s.startswith("-") else "-" + s

    def mul(a, b):
        sign = 1
        if a.startswith("-"):
            sign, a = -sign, a[1:]
        if b.startswith("-"):
            sign, b = -sign, b[1:]
        table = {
            ("1", "1"): "1", ("1", "i"): "i", ("1", "j"): "j", ("1", "k"): "k",
            ("i", "1"): "i", ("j", "1"): "j", ("k", "1"): "k",
            ("i", "i"): "-1", ("j", "j"): "-1", ("k", "k"): "-1",
            ("i", "j"): "k", ("j", "k"): "i", ("k", "i"): "j",
            ("j", "i"): "-k", ("k", "j"): "-i", ("i", "k"): "-j",
        }
        r = table[(a, b)]
        return neg(r) if sign < 0 else r

    def lperm(g):
        return tuple(idx[mul(g, names[x])] for x in range(8))

    return closure([lperm("i"), lperm("j")])


def SD16():
    return closure([cycles_to_perm(8, [[0, 1, 2, 3, 4, 5, 6, 7]]),
                    cycles_to_perm(8, [[1, 3], [2, 6], [5, 7]])])


def _matgroup_modq(q, dim, gen_mats):
    vecs = [v for v in product(range(q), repeat=dim) if any(v)]
    vidx = {v: i for i, v in enumerate(vecs)}

    def act(m):
        img = []
        for v in vecs:
            w = tuple(sum(m[i][j] * v[j] for j in range(dim)) % q for i in range(dim))
            img.append(vidx[w])
        return tuple(img)

    return closure([act(m) for m in gen_mats])


def SL23():
    return _matgroup_modq(3, 2, [[[1, 1], [0, 1]], [[0, 2], [1, 0]]])


def GL23():
    return _matgroup_modq(3, 2, [[[1, 1], [0, 1]], [[0, 2], [1, 0]], [[2, 0], [0, 1]]])


def SL32():
    return _matgroup_modq(2, 3, [
        [[1, 1, 0], [0, 1, 0], [0, 0, 1]],
        [[0, 0, 1], [1, 0, 0], [0, 1, 0]],
    ])


# ---------------------------------------------------------------------------
# subgroup machinery

FAILURES = []


def check(key, value, expect=None):
    print(f"{key} = {value}")
    if expect is not None and value != expect:
        FAILURES.append(f"{key}: got {value!r}, expected {expect!r}")


def all_subgroups(G):
    n = len(next(iter(G)))
    triv = frozenset([pident(n)])
    subs = {triv}
    frontier = [triv]
    elems = sorted(G)
    while frontier:
        H = frontier.pop()
        for g in elems:
            if g in H:
                continue
            J = closure_set(list(H) + [g])
            if J not in subs:
                subs.add(J)
                frontier.append(J)
    return subs


def ppart(m, p):
    r = 1
    while m % p == 0:
        m //= p
        r *= p
    return r


def is_pgroup(H, p):
    return len(H) == ppart(len(H), p)


def normalizer(G, H):
    return frozenset(g for g in G if all(conj(g, x) in H for x in H))


def centralizer(G, H):
    return frozenset(g for g in G if all(conj(g, x) == x for x in H))


def center(H):
    return centralizer(H, H)


def sylow(G, p):
    n = len(next(iter(G)))
    target = ppart(len(G), p)
    P = frozenset([pident(n)])
    while len(P) < target:
        N = normalizer(G, P)
        grown = False
        for g in sorted(N):
            if g in P:
                continue
            o = order_of(g)
            if o == 1 or o != ppart(o, p):
                continue
            J = closure_set(list(P) + [g])
            if is_pgroup(J, p):
                P = J
                grown = True
                break
        if not grown:
            raise RuntimeError("sylow ascent stuck")
    return P


def transporter(G, P, Q):
    return [g for g in G if all(conj(g, x) in Q for x in P)]


def conj_sub(g, H):
    return frozenset(conj(g, x) for x in H)


def commutator_subgroup(G):
    elems = list(G)
    comms = [pmul(pmul(pinv(a), pinv(b)), pmul(a, b)) for a in elems for b in elems]
    return closure_set(comms)


def direct_product(G, H):
    n = len(next(iter(G)))
    out = set()
    for g in G:
        for h in H:
            out.add(tuple(list(g) + [v + n for v in h]))
    return frozenset(out)


def o_p_of_group(H, p):
    """O^p(H): subgroup generated by all elements of order prime to p."""
    n = len(next(iter(H)))
    gens = [x for x in H if order_of(x) % p != 0]
    return closure_set(gens) if gens else frozenset([pident(n)])


# ---------------------------------------------------------------------------
# fusion systems F_S(G): morphisms stored as graphs, per domain


class Fusion:
    def __init__(self, G, p, S=None):
        self.G = G
        self.p = p
        self.S = S if S is not None else sylow(G, p)
        assert len(self.S) == ppart(len(G), p)
        self.subs = sorted(all_subgroups(self.S), key=lambda H: (len(H), sorted(H)))
        self.sub_index = {H: i for i, H in enumerate(self.subs)}
        self.mors = {}
        for H in self.subs:
            seen = set()
            for g in G:
                img = conj_sub(g, H)
                if img <= self.S:
                    seen.add(frozenset((x, conj(g, x)) for x in H))
            self.mors[H] = seen

    @staticmethod
    def image_of(graph):
        return frozenset(y for _, y in graph)

    def homs(self, P, Q):
        return [m for m in self.mors[P] if self.image_of(m) <= Q]

    def auts(self, P):
        return self.homs(P, P)

    def fclass(self, P):
        return sorted({self.image_of(m) for m in self.mors[P]}, key=sorted)

    def class_key(self, P):
        return min(tuple(sorted(Q)) for Q in self.fclass(P))

    def is_centric(self, P):
        return all(centralizer(self.S, Q) <= Q for Q in self.fclass(P))

    def aut_perm_group(self, P):
        """Aut_F(P) as permutations of the sorted member list, plus Inn(P)."""
        members = sorted(P)
        pos = {x: i for i, x in enumerate(members)}

        def as_perm(graph):
            d = dict(graph)
            return tuple(pos[d[x]] for x in members)

        autg = frozenset(as_perm(m) for m in self.auts(P))
        inn = frozenset(as_perm(frozenset((x, conj(s, x)) for x in P)) for s in P)
        return members, autg, inn

    def is_radical(self, P):
        """O_p(Out_F(P)) = 1."""
        _, autg, inn = self.aut_perm_group(P)
        best = inn
        for Hs in all_subgroups(autg):
            q = len(Hs) // len(inn) if len(Hs) % len(inn) == 0 else 0
            if inn <= Hs and q and q == ppart(q, self.p) and \
               all(conj_sub(a, Hs) == Hs for a in autg):
                best = closure_set(list(best) + list(Hs))
        return best == inn

    def is_strongly_closed(self, T):
        for P in self.subs:
            for m in self.mors[P]:
                for x, y in m:
                    if x in T and y not in T:
                        return False
        return True

    def extends_with(self, m, P, Q, fix_q_pointwise):
        """Does m: P -> S extend to PQ with image(Q) = Q (or id on Q)?"""
        PQ = closure_set(list(P) + list(Q))
        md = dict(m)
        for mm in self.mors[PQ]:
            d = dict(mm)
            if any(d[x] != md[x] for x in P):
                continue
            if fix_q_pointwise:
                if all(d[x] == x for x in Q):
                    return True
            else:
                if frozenset(d[x] for x in Q) == Q:
                    return True
        return False

    def is_normal_sub(self, Q):
        if any(conj_sub(s, Q) != Q for s in self.S):
            return False
        return all(self.extends_with(m, P, Q, False)
                   for P in self.subs for m in self.mors[P])

    def is_central_sub(self, Q):
        if not Q <= center(self.S):
            return False
        return all(self.extends_with(m, P, Q, True)
                   for P in self.subs for m in self.mors[P])

    def o_p(self):
        n = len(next(iter(self.S)))
        best = frozenset([pident(n)])
        for Q in self.subs:
            if self.is_normal_sub(Q):
                best = closure_set(list(best) + list(Q))
        return best

    def z_f(self):
        n = len(next(iter(self.S)))
        best = frozenset([pident(n)])
        for Q in self.subs:
            if self.is_central_sub(Q):
                best = closure_set(list(best) + list(Q))
        return best

    def focal(self):
        n = len(next(iter(self.S)))
        gens = [pident(n)]
        for P in self.subs:
            for m in self.mors[P]:
                for x, y in m:
                    gens.append(pmul(pinv(x), y))
        return closure_set(gens)

    def hyperfocal(self):
        n = len(next(iter(self.S)))
        gens = [pident(n)]
        for P in self.subs:
            members, autg, _ = self.aut_perm_group(P)
            pprime = [q for q in autg if order_of(q) % self.p != 0]
            opg = closure_set(pprime) if pprime else frozenset()
            for q in opg:
                for i, x in enumerate(members):
                    gens.append(pmul(pinv(x), members[q[i]]))
        return closure_set(gens)


# ---------------------------------------------------------------------------
# automorphism group order by generator-image backtracking


def aut_order(G, gens):
    assert closure(list(gens)) == G, "chosen generators do not generate"
    elems = sorted(G)
    orders = {x: order_of(x) for x in elems}
    n = len(next(iter(G)))
    gen_list = list(gens)
    cand = [[y for y in elems if orders[y] == orders[g]] for g in gen_list]
    count = 0
    for imgs in product(*cand):
        phi = {pident(n): pident(n)}
        frontier = [pident(n)]
        ok = True
        while frontier and ok:
            nxt = []
            for x in frontier:
                for g, gi in zip(gen_list, imgs):
                    y, yi = pmul(x, g), pmul(phi[x], gi)
                    if y in phi:
                        if phi[y] != yi:
                            ok = False
                            break
                    else:
                        phi[y] = yi
                        nxt.append(y)
                if not ok:
                    break
            frontier = nxt
        if ok and len(phi) == len(G) and len(set(phi.values())) == len(G):
            count += 1
    return count


def aut_of_s_maps(Sset):
    """All automorphisms of the group Sset, as dicts."""
    els = sorted(Sset)
    n = len(els[0])
    gens = []
    got = closure_set([els[0]])
    for x in els:
        if x not in got:
            gens.append(x)
            got = closure_set(list(got) + [x])
    if not gens:
        gens = [els[0]]
    cand = [[y for y in els if order_of(y) == order_of(g)] for g in gens]
    auts = []
    for imgs in product(*cand):
        phi = {pident(n): pident(n)}
        frontier = [pident(n)]
        ok = True
        while frontier and ok:
            nxt = []
            for x in frontier:
                for g, gi in zip(gens, imgs):
                    y, yi = pmul(x, g), pmul(phi[x], gi)
                    if y in phi:
                        if phi[y] != yi:
                            ok = False
                            break
                    else:
                        phi[y] = yi
                        nxt.append(y)
                if not ok:
                    break
            frontier = nxt
        if ok and len(phi) == len(els) and len(set(phi.values())) == len(els):
            auts.append(phi)
    return auts


def aut_f_count(f):
    """(|Aut(S)|, |{alpha in Aut(S) : alpha transports F to itself}|)."""
    auts = aut_of_s_maps(f.S)
    pres = 0
    for phi in auts:
        ok = True
        for P in f.subs:
            imgP = frozenset(phi[x] for x in P)
            transported = {frozenset((phi[x], phi[y]) for x, y in m)
                           for m in f.mors[P]}
            if transported != f.mors[imgP]:
                ok = False
                break
        if ok:
            pres += 1
    return len(auts), pres


# ---------------------------------------------------------------------------
# monomial groups G(m,r,kappa): pairs (perm, exponent-vector mod m)
# meaning M e_j = zeta^{v_j} e_{sigma(j)};  (s,v)(t,w) = (st, w + v.t)


def mono_mul(a, b, m):
    (s, v), (t, w) = a, b
    return (pmul(s, t), tuple((w[j] + v[t[j]]) % m for j in range(len(t))))


def mono_closure(gens, m):
    k = len(gens[0][0])
    e = (pident(k), tuple([0] * k))
    seen = {e}
    frontier = [e]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = mono_mul(x, g, m)
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return seen


def mono_order(x, m):
    k = len(x[0])
    e = (pident(k), tuple([0] * k))
    y, c = x, 1
    while y != e:
        y = mono_mul(y, x, m)
        c += 1
    return c


def gmrk(m, r, kappa):
    k = kappa
    gens = [(cycles_to_perm(k, [[0, 1]]), tuple([0] * k))]
    if k > 2:
        gens.append((cycles_to_perm(k, [list(range(k))]), tuple([0] * k)))
    if m > 1:
        v = [0] * k
        v[0], v[1] = 1 % m, (m - 1) % m
        gens.append((pident(k), tuple(v)))
        if r < m:
            w = [0] * k
            w[0] = r % m
            gens.append((pident(k), tuple(w)))
    return mono_closure(gens, m)


def mono_p_prime_residual(G, m, p):
    """O^{p'}(G) = <all p-elements>."""
    pelts = [x for x in G if mono_order(x, m) > 1 and
             mono_order(x, m) == ppart(mono_order(x, m), p)]
    k = len(next(iter(G))[0])
    e = (pident(k), tuple([0] * k))
    seen = {e}
    frontier = [e]
    while frontier:
        nxt = []
        for x in frontier:
            for g in pelts:
                y = mono_mul(x, g, m)
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return seen


def mono_matrix_mod_p(x, p, zeta):
    s, v = x
    k = len(s)
    M = [[0] * k for _ in range(k)]
    for j in range(k):
        M[s[j]][j] = pow(zeta, v[j], p)
    return M


def spin_is_full(gen_mats, p, k):
    """Is F_p^k a simple module for the group generated by gen_mats?"""
    def reduce_vec(basis, vec):
        vec = list(vec)
        for piv, bv in basis:
            if vec[piv]:
                c = vec[piv] * pow(bv[piv], p - 2, p) % p
                vec = [(vec[i] - c * bv[i]) % p for i in range(k)]
        return vec

    for v0 in product(range(p), repeat=k):
        if not any(v0):
            continue
        basis = []
        red = reduce_vec(basis, v0)
        basis.append((next(i for i in range(k) if red[i]), red))
        frontier = [list(v0)]
        while frontier and len(basis) < k:
            v = frontier.pop()
            for M in gen_mats:
                w = [sum(M[i][j] * v[j] for j in range(k)) % p for i in range(k)]
                red = reduce_vec(basis, w)
                if any(red):
                    basis.append((next(i for i in range(k) if red[i]), red))
                    frontier.append(w)
        if len(basis) != k:
            return False
    return True


# ---------------------------------------------------------------------------
# rank-kappa uniqueness: S = (Z/p^l)^k x| <k-cycle>; verify no elementary
# abelian subgroup of rank k meets the complement of A by bounding the
# elementary abelian rank inside C_S(w) for every order-p element w outside A.


def uniq_rank_check(p, ell, k):
    q = p ** ell

    def act(times, a):
        t = times % k
        return tuple(a[(j - t) % k] for j in range(k))

    def mul(x, y):
        (a, s), (b, t) = x, y
        bb = act(s, b)
        return (tuple((a[j] + bb[j]) % q for j in range(k)), (s + t) % k)

    def inv(x):
        a, s = x
        return (act(-s, tuple((-v) % q for v in a)), (-s) % k)

    ident = (tuple([0] * k), 0)

    def elt_order(x):
        y, c = x, 1
        while y != ident:
            y = mul(y, x)
            c += 1
        return c

    def grp_closure(gens):
        seen = {ident}
        frontier = [ident]
        while frontier:
            nxt = []
            for x in frontier:
                for g in gens:
                    y = mul(x, g)
                    if y not in seen:
                        seen.add(y)
                        nxt.append(y)
            frontier = nxt
        return frozenset(seen)

    elements = [(a, s) for a in product(range(q), repeat=k) for s in range(k)]
    sgens = [(tuple(1 if j == i else 0 for j in range(k)), 0) for i in range(k)]
    sgens.append((tuple([0] * k), 1))

    off_a = {x for x in elements if x[1] != 0 and elt_order(x) == p}
    max_rank = 0
    unseen = set(off_a)
    while unseen:
        w0 = unseen.pop()
        orbit = {w0}
        st = [w0]
        while st:
            w = st.pop()
            for g in sgens:
                wg = mul(mul(g, w), inv(g))
                if wg not in orbit:
                    orbit.add(wg)
                    st.append(wg)
        unseen -= orbit
        cent = [x for x in elements if mul(x, w0) == mul(w0, x)]
        ords = [x for x in cent if elt_order(x) == p]
        subs = {frozenset([ident])}
        st = [frozenset([ident])]
        best = 0
        while st:
            H = st.pop()
            for x in ords:
                if x in H:
                    continue
                if all(mul(x, h) == mul(h, x) for h in H):
                    J = grp_closure(list(H) + [x])
                    if J not in subs and all(elt_order(u) in (1, p) for u in J):
                        subs.add(J)
                        st.append(J)
        for H in subs:
            r, sz = 0, len(H)
            while sz > 1:
                sz //= p
                r += 1
            best = max(best, r)
        max_rank = max(max_rank, best)
    return max_rank


def d8_rank2_elab_count():
    G = D8()
    return sum(1 for H in all_subgroups(G)
               if len(H) == 4 and all(order_of(x) <= 2 for x in H))


# ---------------------------------------------------------------------------


# ---------------------------------------------------------------------------
# centric linking systems as explicit transporter-quotient categories, plus a
# brute-force automorphism search (functors that are bijective on objects and
# morphisms, send inclusions to inclusions and distinguished subgroups to
# distinguished subgroups).  Only viable for categories with <~100 morphisms;
# used to pin down |Aut(L)| and |Out(L)| on the smallest instances.


class LinkCat:
    def __init__(self, G, p, objects):
        self.G, self.p = G, p
        self.n = len(next(iter(G)))
        self.objects = sorted(objects, key=lambda H: (len(H), sorted(H)))
        self.obj_index = {P: i for i, P in enumerate(self.objects)}
        # kernel of the transporter quotient at P: O^p(C_G(P))
        self.K = [o_p_of_group(centralizer(G, P), p) for P in self.objects]
        self.mors = []      # mid -> (i, j, coset rep)
        self.mor_ids = {}
        for i, P in enumerate(self.objects):
            for j, Q in enumerate(self.objects):
                reps = {self.canon(i, t) for t in transporter(G, P, Q)}
                for t in sorted(reps):
                    self.mor_ids[(i, j, t)] = len(self.mors)
                    self.mors.append((i, j, t))
        # full composition table; entry ((m2: j->k) after (m1: i->j)) -> mid
        self.comp = {}
        for m1, (i, j, t) in enumerate(self.mors):
            for m2, (j2, k, u) in enumerate(self.mors):
                if j2 != j:
                    continue
                self.comp[(m2, m1)] = self.mor_ids[(i, k, self.canon(i, pmul(u, t)))]

    def canon(self, i, g):
        """Lex-least representative of the coset g * K_P."""
        return min(pmul(g, k) for k in self.K[i])

    def pair(self, i, j):
        return [m for m, (a, b, _) in enumerate(self.mors) if a == i and b == j]

    def inclusion(self, i, j):
        return self.mor_ids[(i, j, self.canon(i, pident(self.n)))]

    def delta_set(self, i):
        return frozenset(self.mor_ids[(i, i, self.canon(i, x))]
                         for x in self.objects[i])


def cat_auts(L):
    """All self-equivalences of L per the linking-system automorphism rules."""
    import itertools
    objs = L.objects
    n_obj = len(objs)
    M = len(L.mors)
    pair_list = {(i, j): L.pair(i, j) for i in range(n_obj) for j in range(n_obj)}
    deltas = [L.delta_set(i) for i in range(n_obj)]
    incl_pairs = [(i, j) for i in range(n_obj) for j in range(n_obj)
                  if objs[i] <= objs[j]]
    results = []

    def try_sigma(sigma):
        # pair sizes must match and inclusion order must be preserved
        for i in range(n_obj):
            if len(objs[i]) != len(objs[sigma[i]]):
                return
            if sorted(order_of(x) for x in objs[i]) != \
               sorted(order_of(x) for x in objs[sigma[i]]):
                return
        for (i, j) in itertools.product(range(n_obj), repeat=2):
            if len(pair_list[(i, j)]) != len(pair_list[(sigma[i], sigma[j])]):
                return
        for (i, j) in incl_pairs:
            if not objs[sigma[i]] <= objs[sigma[j]]:
                return
        amap = [-1] * M
        used = set()

        def assign(m, w, queue):
            i, j, _ = L.mors[m]
            wi, wj, _ = L.mors[w]
            if (wi, wj) != (sigma[i], sigma[j]):
                return False
            if (m in deltas[i]) != (w in deltas[sigma[i]]):
                return False
            if amap[m] != -1:
                return amap[m] == w
            if w in used:
                return False
            amap[m] = w
            used.add(w)
            queue.append(m)
            return True

        def propagate(queue):
            while queue:
                m = queue.pop()
                for m2 in range(M):
                    if amap[m2] == -1:
                        continue
                    for (a, b) in ((m, m2), (m2, m)):
                        c = L.comp.get((a, b))
                        if c is None:
                            continue
                        ic = L.comp.get((amap[a], amap[b]))
                        if ic is None or not assign(c, ic, queue):
                            return False
            return True

        queue = []
        ok = True
        for (i, j) in incl_pairs:
            ok = ok and assign(L.inclusion(i, j),
                               L.inclusion(sigma[i], sigma[j]), queue)
        if not ok or not propagate(queue):
            return

        def rec():
            m = next((x for x in range(M) if amap[x] == -1), None)
            if m is None:
                results.append((tuple(sigma), tuple(amap)))
                return
            i, j, _ = L.mors[m]
            for w in pair_list[(sigma[i], sigma[j])]:
                saved_amap, saved_used = amap[:], set(used)
                queue = []
                if assign(m, w, queue) and propagate(queue):
                    rec()
                amap[:] = saved_amap
                used.clear()
                used.update(saved_used)
            return

        rec()

    for sigma in itertools.permutations(range(n_obj)):
        try_sigma(sigma)
    # paranoia: every solution is a genuine functor
    for (sigma, amap) in results:
        for (a, b), c in L.comp.items():
            assert L.comp[(amap[a], amap[b])] == amap[c]
    return results


def inner_cat_auts(L):
    """The automorphisms c_gamma for gamma in Aut_L(S), S the largest object."""
    s_idx = max(range(len(L.objects)), key=lambda i: len(L.objects[i]))
    out = set()
    for t in (rep for (i, j, rep) in L.mors if i == s_idx and j == s_idx):
        sigma = tuple(L.obj_index[conj_sub(t, P)] for P in L.objects)
        amap = []
        for (i, j, u) in L.mors:
            w = L.canon(sigma[i], pmul(pmul(t, u), pinv(t)))
            amap.append(L.mor_ids[(sigma[i], sigma[j], w)])
        out.add((sigma, tuple(amap)))
    return out


def main():
    # --- closure / catalog orders
    d8 = D8()
    s4 = S(4)
    check("closure.D8.order", len(d8), 8)
    check("closure.S4.order", len(s4), 24)
    s3, s5 = S(3), S(5)
    a4, a5, a6 = A(4), A(5), A(6)
    q8, sd16 = Q8(), SD16()
    sl23, gl23, sl32 = SL23(), GL23(), SL32()
    for name, g, n in [("S3", s3, 6), ("S5", s5, 120), ("A4", a4, 12),
                       ("A5", a5, 60), ("A6", a6, 360), ("Q8", q8, 8),
                       ("SD16", sd16, 16), ("SL23", sl23, 24),
                       ("GL23", gl23, 48), ("SL32", sl32, 168)]:
        check(f"order.{name}", len(g), n)

    # --- subgroup counts
    check("subgroups.D8", len(all_subgroups(d8)), 10)
    check("subgroups.S4", len(all_subgroups(s4)), 30)
    check("subgroups.Q8", len(all_subgroups(q8)))
    check("subgroups.SD16", len(all_subgroups(sd16)))
    check("subgroups.A4", len(all_subgroups(a4)))

    # --- sylow
    syl_a6 = sylow(a6, 2)
    check("sylow.A6.2.order", len(syl_a6), 8)
    check("sylow.A6.2.order_multiset", sorted(order_of(x) for x in syl_a6),
          sorted([1, 2, 2, 2, 2, 2, 4, 4]))
    check("sylow.S4.5.order", len(sylow(s4, 5)), 1)
    syl_gl23 = sylow(gl23, 2)
    check("sylow.GL23.2.order", len(syl_gl23), 16)
    check("sylow.GL23.2.order_multiset", sorted(order_of(x) for x in syl_gl23),
          sorted(order_of(x) for x in sd16))

    # --- local subgroups
    t01 = cycles_to_perm(4, [[0, 1]])
    c2 = closure_set([t01])
    check("centralizer.S4.<(01)>.order", len(centralizer(s4, c2)), 4)
    f_s4 = Fusion(s4, 2)
    v4n = min((H for H in f_s4.subs
               if len(H) == 4 and all(order_of(x) <= 2 for x in H)
               and normalizer(s4, H) == s4), key=sorted)
    check("normalizer.S4.V4n.order", len(normalizer(s4, v4n)), 24)
    check("centralizer.S4.V4n.order", len(centralizer(s4, v4n)), 4)
    zd8 = center(f_s4.S)
    check("centralizer.S4.Z(D8).order", len(centralizer(s4, zd8)), 8)

    # --- transporters
    c2b = closure_set([cycles_to_perm(4, [[2, 3]])])
    check("transporter.S4.(01)->(23).size", len(transporter(s4, c2, c2b)), 4)
    check("transporter.A5.C5->C3.size",
          len(transporter(a5, sylow(a5, 5), sylow(a5, 3))), 0)

    # --- hom-set sizes
    check("homs.S4.V4n->V4n", len(f_s4.homs(v4n, v4n)), 6)
    f_a5 = Fusion(a5, 2)
    check("homs.A5.S->S", len(f_a5.auts(f_a5.S)), 3)

    # --- centric / radical classification of F_{D8}(S4)
    def p_centric_in_g(G, p, P):
        return len(center(P)) == ppart(len(centralizer(G, P)), p)

    centrics = [H for H in f_s4.subs if f_s4.is_centric(H)]
    check("fusion.S4.centric_subgroup_count", len(centrics), 4)
    for H in f_s4.subs:
        assert f_s4.is_centric(H) == p_centric_in_g(s4, 2, H), \
            "centric <-> p-centric mismatch on S4"
    cr = [H for H in centrics if f_s4.is_radical(H)]
    check("fusion.S4.centric_radical_count", len(cr), 2)
    check("fusion.S4.centric_radical_orders", sorted(len(H) for H in cr), [4, 8])
    assert v4n in cr
    check("pcentric.S4.Z(D8)", p_centric_in_g(s4, 2, zd8), False)
    check("pcentric.S4.V4n", p_centric_in_g(s4, 2, v4n), True)

    # --- focal / hyperfocal / O_p / Z
    foc = f_s4.focal()
    check("fusion.S4.focal.order", len(foc), 4)
    check("fusion.S4.focal.is_V4n", foc == v4n, True)
    check("fusion.S4.hyperfocal.order", len(f_s4.hyperfocal()), 4)
    check("fusion.S4.O2.order", len(f_s4.o_p()), 4)
    check("fusion.S4.Z.order", len(f_s4.z_f()), 1)

    f_sl23 = Fusion(sl23, 2)
    check("fusion.SL23.O2.order", len(f_sl23.o_p()), 8)
    check("fusion.SL23.Z.order", len(f_sl23.z_f()), 2)
    check("quotient.SL23.center.order", len(center(sl23)), 2)

    f_a4 = Fusion(a4, 2)
    check("fusion.A4.class_count", len({f_a4.class_key(P) for P in f_a4.subs}), 3)
    check("fusion.A4.autS", len(f_a4.auts(f_a4.S)), 3)
    check("fusion.A4.focal.order", len(f_a4.focal()), 4)
    check("fusion.A4.hyperfocal.order", len(f_a4.hyperfocal()), 4)
    check("fusion.A4.O2.order", len(f_a4.o_p()), 4)

    check("fusion.A5.O2.order", len(f_a5.o_p()), 4)
    check("fusion.A5.Z.order", len(f_a5.z_f()), 1)
    check("fusion.A5.hyperfocal.order", len(f_a5.hyperfocal()), 4)

    f_d8 = Fusion(d8, 2)
    check("fusion.D8self.focal.order", len(f_d8.focal()), 2)
    check("fusion.D8self.focal.eq_commutator",
          f_d8.focal() == commutator_subgroup(d8), True)
    check("fusion.D8self.hyperfocal.order", len(f_d8.hyperfocal()), 1)
    check("fusion.D8self.O2.order", len(f_d8.o_p()), 8)
    check("fusion.D8self.Z.order", len(f_d8.z_f()), 2)

    # --- F_{D8}(A6)
    f_a6 = Fusion(a6, 2)
    check("fusion.A6.subgroup_class_count",
          len({f_a6.class_key(P) for P in f_a6.subs}), 6)
    v4s = sorted((H for H in f_a6.subs
                  if len(H) == 4 and all(order_of(x) <= 2 for x in H)),
                 key=sorted)
    check("fusion.A6.V4_subgroups", len(v4s), 2)
    for tag, H in zip("ab", v4s):
        check(f"fusion.A6.V4{tag}.centric_radical",
              f_a6.is_centric(H) and f_a6.is_radical(H), True)
        check(f"fusion.A6.V4{tag}.aut_count", len(f_a6.auts(H)), 6)
    check("fusion.A6.autS", len(f_a6.auts(f_a6.S)), 4)
    check("fusion.A6.strongly_closed_count",
          sum(1 for H in f_a6.subs if f_a6.is_strongly_closed(H)), 2)
    check("fusion.A6.O2.order", len(f_a6.o_p()), 1)
    check("fusion.A6.Z.order", len(f_a6.z_f()), 1)
    check("fusion.A6.centric_radical_count",
          sum(1 for H in f_a6.subs
              if f_a6.is_centric(H) and f_a6.is_radical(H)), 3)
    check("fusion.A6.focal.order", len(f_a6.focal()), 8)

    # --- automorphism groups
    n4 = cycles_to_perm(4, [[0, 1, 2, 3]])
    check("aut.S4", aut_order(s4, [t01, n4]), 24)
    check("aut.D8", aut_order(d8, [n4, cycles_to_perm(4, [[0, 2]])]), 8)
    q8i = sorted(x for x in q8 if order_of(x) == 4)[0]
    q8j = next(x for x in sorted(q8)
               if order_of(x) == 4 and x not in closure_set([q8i]))
    check("aut.Q8", aut_order(q8, [q8i, q8j]), 24)
    check("aut.A4", aut_order(a4, [cycles_to_perm(4, [[0, 1, 2]]),
                                   cycles_to_perm(4, [[1, 2, 3]])]), 24)
    sl32_t = sorted(x for x in sl32 if order_of(x) == 2)[0]
    sl32_c = sorted(x for x in sl32 if order_of(x) == 7)[0]
    check("aut.SL32", aut_order(sl32, [sl32_t, sl32_c]), 336)
    check("aut.A6", aut_order(a6, [cycles_to_perm(6, [[0, 1, 2]]),
                                   cycles_to_perm(6, [[1, 2, 3, 4, 5]])]), 1440)

    # --- linking-system hom-set sizes over S4 (each O^2(C_G(P)) is trivial)
    c4 = next(H for H in f_s4.subs if len(H) == 4
              and any(order_of(x) == 4 for x in H))
    v4t = next(H for H in f_s4.subs if len(H) == 4 and H != v4n
               and all(order_of(x) <= 2 for x in H))
    for nm, P in [("V4n", v4n), ("C4", c4), ("V4t", v4t), ("D8", f_s4.S)]:
        T = transporter(s4, P, P)
        O = o_p_of_group(centralizer(s4, P), 2)
        check(f"linking.S4.Aut_L({nm})", len(T) // len(O))
    tot = 0
    for P in centrics:
        O = len(o_p_of_group(centralizer(s4, P), 2))
        for Q in centrics:
            tot += len(transporter(s4, P, Q)) // O
    check("linking.S4.total_morphisms", tot)

    d8_centrics = [H for H in f_d8.subs if f_d8.is_centric(H)]
    check("linking.D8self.object_count", len(d8_centrics), 4)
    check("linking.D8self.total_morphisms",
          sum(len(transporter(d8, P, Q))
              for P in d8_centrics for Q in d8_centrics), 56)

    # --- Aut(F) by transport filter
    auts_d8, pres_s4 = aut_f_count(f_s4)
    check("autgroup.D8.order", auts_d8, 8)
    check("autF.S4.order", pres_s4, 4)
    check("autF.S4.autFS", len(f_s4.auts(f_s4.S)), 4)  # hence Out(F(S4)) = 1
    _, pres_a6 = aut_f_count(f_a6)
    check("autF.A6.order", pres_a6)
    check("autF.A6.autFS", len(f_a6.auts(f_a6.S)), 4)

    # --- product fusion S4 x C2: centric criterion via projections
    c2grp = closure([cycles_to_perm(2, [[0, 1]])])
    g48 = direct_product(s4, c2grp)
    fp = Fusion(g48, 2)
    sp = fp.S
    s1_low = frozenset(x[:4] for x in sp)
    f1x = Fusion(s4, 2, s1_low)
    cents_set = frozenset(H for H in fp.subs if fp.is_centric(H))
    check("product.S4xC2.subgroup_count", len(fp.subs))
    check("product.S4xC2.centric_count", len(cents_set))
    match = 0
    for H in fp.subs:
        p1 = frozenset(x[:4] for x in H)
        p2 = frozenset(x[4:] for x in H)
        z1 = center(p1)
        rect = frozenset(tuple(list(a) + list(b)) for a in z1 for b in p2)
        pred = f1x.is_centric(p1) and len(p2) == 2 and rect <= H
        if pred == (H in cents_set):
            match += 1
    check("product.S4xC2.lemma32_projection_match",
          f"{match}/{len(fp.subs)}", f"{len(fp.subs)}/{len(fp.subs)}")

    # --- monomial groups G(m,r,kappa)
    for (m, r, k, expect) in [(1, 1, 3, 6), (2, 1, 2, 8), (4, 4, 3, 96),
                              (4, 2, 2, 16), (6, 3, 2, 24), (4, 1, 2, 32),
                              (2, 2, 3, 24), (4, 4, 5, 30720)]:
        Gm = gmrk(m, r, k)
        check(f"gmrk.G({m},{r},{k}).order", len(Gm), expect)
        if r > 1:
            assert all(sum(v) % r == 0 for (_, v) in Gm)

    g445 = gmrk(4, 4, 5)
    g0 = mono_p_prime_residual(g445, 4, 5)
    check("gmrk.G0(4,4,5).order", len(g0), 15360)
    check("gmrk.G0(4,4,5).index", len(g445) // len(g0), 2)
    check("gmrk.G0(4,4,5).perm_parts_even",
          all(sgn(s) == 1 for (s, _) in g0), True)
    check("gmrk.G0(4,4,5).diagonal_part",
          sum(1 for (s, _) in g0 if s == pident(5)), 256)
    gens_g0 = [(cycles_to_perm(5, [[0, 1, 2]]), (0, 0, 0, 0, 0)),
               (cycles_to_perm(5, [[0, 1, 2, 3, 4]]), (0, 0, 0, 0, 0)),
               (pident(5), (1, 3, 0, 0, 0))]
    check("gmrk.G0(4,4,5).generated_by_triple",
          len(mono_closure(gens_g0, 4)), 15360)

    # --- module simplicity (zeta = 2 is a primitive 4th root of unity mod 5)
    assert pow(2, 4, 5) == 1 and pow(2, 2, 5) != 1
    mats = [mono_matrix_mod_p(x, 5, 2) for x in gens_g0]
    check("module.G0(4,4,5).simple_F5^5", spin_is_full(mats, 5, 5), True)
    check("module.diag_only.simple_F5^2",
          spin_is_full([mono_matrix_mod_p((pident(2), (1, 3)), 5, 2)], 5, 2),
          False)
    sig5 = [mono_matrix_mod_p((cycles_to_perm(5, [[0, 1]]), (0,) * 5), 5, 2),
            mono_matrix_mod_p((cycles_to_perm(5, [[0, 1, 2, 3, 4]]), (0,) * 5),
                              5, 2)]
    check("module.Sigma5_perm.simple_F5^5", spin_is_full(sig5, 5, 5), False)

    # --- linking-system automorphism groups, exhaustive on tiny instances
    for gname, Gbig, fus in [("S4", s4, f_s4), ("D8self", d8, f_d8)]:
        cents = [H for H in fus.subs if p_centric_in_g(Gbig, 2, H)]
        L = LinkCat(Gbig, 2, cents)
        check(f"linkcat.{gname}.objects", len(L.objects), 4)
        check(f"linkcat.{gname}.morphisms", len(L.mors))
        auts = cat_auts(L)
        inner = inner_cat_auts(L)
        assert inner <= set(auts), f"inner automorphisms missed on {gname}"
        assert len(auts) % len(inner) == 0
        check(f"autL.{gname}.order", len(auts))
        check(f"autL.{gname}.inner_count", len(inner))
        check(f"outL.{gname}.order", len(auts) // len(inner))

    # --- rank-kappa uniqueness instances
    check("uniq.p5.l1.k5.max_offA_rank", uniq_rank_check(5, 1, 5), 2)
    check("uniq.p3.l1.k3.max_offA_rank", uniq_rank_check(3, 1, 3), 2)
    check("uniq.p3.l2.k3.max_offA_rank", uniq_rank_check(3, 2, 3), 2)
    check("uniq.p2.D8.rank2_elab_count", d8_rank2_elab_count(), 2)

    print()
    if FAILURES:
        print("ORACLE FAILURES:")
        for f in FAILURES:
            print("  " + f)
        sys.exit(1)
    print("oracle: all internal expectations satisfied")


if __name__ == "__main__":
    main()
