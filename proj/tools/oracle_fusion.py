#!/usr/bin/env python3
"""Fusion-system oracle: freezes invariants that the C++ tests assert.

Deliberately written as a second, independent implementation: subgroups of
the Sylow group are bitmasks over its element ids, the lattice is a join
closure over a cached multiplication table, and morphism sets come from
deduplicated partial conjugation maps.  Run with no arguments for the small
catalog systems; pass --heavy for the 64-element-Sylow products.
"""

import sys
import time

# --- permutations ------------------------------------------------------------


def pmul(a, b):  # (a*b)(x) = a(b(x))
    return tuple(a[x] for x in b)


def pinv(a):
    out = [0] * len(a)
    for i, v in enumerate(a):
        out[v] = i
    return tuple(out)


def pident(n):
    return tuple(range(n))


def order_of(x):
    e = pident(len(x))
    k, y = 1, x
    while y != e:
        y = pmul(y, x)
        k += 1
    return k


def from_cycles(n, spec):
    img = list(range(n))
    for chunk in spec.replace("(", " ").split(")"):
        pts = [int(t) for t in chunk.replace(",", " ").split()]
        for i in range(len(pts)):
            img[pts[i]] = pts[(i + 1) % len(pts)]
    return tuple(img)


def closure(n, gens):
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
    return sorted(seen)


# --- catalog (generator strings match the C++ catalog) -------------------------

CATALOG = {
    "S3": (3, ["(0 1)", "(0 1 2)"]),
    "S4": (4, ["(0 1)", "(0 1 2 3)"]),
    "S5": (5, ["(0 1)", "(0 1 2 3 4)"]),
    "A4": (4, ["(0 1 2)", "(1 2 3)"]),
    "A5": (5, ["(0 1 2)", "(0 1 2 3 4)"]),
    "A6": (6, ["(0 1 2)", "(1 2 3 4 5)"]),
    "D8": (4, ["(0 1 2 3)", "(0 2)"]),
    "Q8": (8, ["(0 2 1 3)(4 6 5 7)", "(0 4 1 5)(2 7 3 6)"]),
    "SD16": (8, ["(0 1 2 3 4 5 6 7)", "(1 3)(2 6)(5 7)"]),
    "SL23": (8, ["(0 3 6)(1 7 4)", "(0 5 1 2)(3 6 7 4)"]),
    "GL23": (8, ["(0 3 6)(1 7 4)", "(0 5 1 2)(3 6 7 4)", "(2 5)(3 6)(4 7)"]),
    "SL32": (7, ["(1 5)(2 6)", "(0 3 1)(2 4 5)"]),
    "C2": (2, ["(0 1)"]),
}


def catalog(name):
    n, gens = CATALOG[name]
    return closure(n, [from_cycles(n, s) for s in gens])


def direct(A, B):
    da, db = len(A[0]), len(B[0])
    out = []
    for a in A:
        for b in B:
            out.append(tuple(list(a) + [db and (x + da) for x in b]))
    return sorted(out)


def pad_pair(a, b, da):
    return tuple(list(a) + [x + da for x in b])


# --- fusion systems over bitmask subgroup lattices ------------------------------


def ppart(n, p):
    r = 1
    while n % p == 0:
        n //= p
        r *= p
    return r


def sylow_set(elems, p):
    n = len(elems[0])
    target = ppart(len(elems), p)
    pelems = [g for g in elems if order_of(g) == ppart(order_of(g), p)]
    P = {pident(n)}
    while len(P) < target:
        for g in pelems:
            if g in P:
                continue
            if all(pmul(pmul(g, x), pinv(g)) in P for x in P):
                P = set(closure(n, list(P) + [g]))
                break
        else:
            raise RuntimeError("sylow ascent stuck")
    return sorted(P)


def bits(mask):
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out


class Fusion:
    """F_S(G) with subgroups-as-masks and morphisms-as-image-tuples."""

    def __init__(self, elems, p, S=None):
        self.p = p
        S = S if S is not None else sylow_set(elems, p)
        assert len(S) == ppart(len(elems), p) and len(S) <= 64
        self.S = S
        m = self.m = len(S)
        sid = {x: i for i, x in enumerate(S)}
        self.mt = [[sid[pmul(a, b)] for b in S] for a in S]
        self.inv = [self.mt[i].index(0) for i in range(m)]
        self.subs = self._lattice()
        self.sub_index = {mask: i for i, mask in enumerate(self.subs)}
        self.mems = [bits(mask) for mask in self.subs]
        parts = set()
        for g in elems:
            gi = pinv(g)
            parts.add(tuple(sid.get(pmul(pmul(g, x), gi), -1) for x in S))
        self.mors = [set() for _ in self.subs]
        for pmap in parts:
            dom = 0
            for i, v in enumerate(pmap):
                if v >= 0:
                    dom |= 1 << i
            for si, mask in enumerate(self.subs):
                if mask & ~dom:
                    continue
                self.mors[si].add(tuple(pmap[i] for i in self.mems[si]))

    def close_mask(self, mask):
        while True:
            mem = bits(mask)
            new = mask
            for a in mem:
                row = self.mt[a]
                for b in mem:
                    new |= 1 << row[b]
            if new == mask:
                return mask
            mask = new

    def _lattice(self):
        atoms = sorted({self.close_mask(1 | (1 << x)) for x in range(self.m)})
        subs = {1}
        frontier = [1]
        while frontier:
            h = frontier.pop()
            for a in atoms:
                j = self.close_mask(h | a)
                if j not in subs:
                    subs.add(j)
                    frontier.append(j)
        return sorted(subs, key=lambda mask: (bin(mask).count("1"), bits(mask)))

    # -- basic invariants

    def morcount(self):
        return sum(len(ms) for ms in self.mors)

    def graph_image(self, g):
        im = 0
        for v in g:
            im |= 1 << v
        return im

    def class_reps(self):
        rep = []
        for si in range(len(self.subs)):
            orbit = {self.sub_index[self.graph_image(g)] for g in self.mors[si]}
            rep.append(min(orbit))
        return rep

    def centralizer_mask(self, mask):
        mem = bits(mask)
        out = 0
        for a in range(self.m):
            if all(self.mt[a][b] == self.mt[b][a] for b in mem):
                out |= 1 << a
        return out

    def centric_flags(self):
        rep = self.class_reps()
        byrep = {}
        for si in range(len(self.subs)):
            byrep.setdefault(rep[si], []).append(si)
        flag = [False] * len(self.subs)
        for r, cls in byrep.items():
            ok = all(self.centralizer_mask(self.subs[q]) | self.subs[q] == self.subs[q]
                     for q in cls)
            for q in cls:
                flag[q] = ok
        return flag

    def element_class(self):
        parent = list(range(self.m))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for x in range(self.m):
            si = self.sub_index[self.close_mask(1 | (1 << x))]
            mem = self.mems[si]
            for g in self.mors[si]:
                for k, a in enumerate(mem):
                    ra, rb = find(a), find(g[k])
                    if ra != rb:
                        parent[max(ra, rb)] = min(ra, rb)
        return [find(x) for x in range(self.m)]

    def strongly_closed_flags(self):
        ec = self.element_class()
        cmask = [0] * self.m
        for x in range(self.m):
            cmask[ec[x]] |= 1 << x
        flag = []
        for mask in self.subs:
            full = 0
            for x in bits(mask):
                full |= cmask[ec[x]]
            flag.append(full | mask == mask)
        return flag

    # -- automorphism groups of one subgroup

    def aut_perms(self, si):
        mask, mem = self.subs[si], self.mems[si]
        pos = {x: i for i, x in enumerate(mem)}
        return sorted(tuple(pos[v] for v in g) for g in self.mors[si]
                      if self.graph_image(g) == mask)

    def inn_perms(self, si):
        mem = self.mems[si]
        pos = {x: i for i, x in enumerate(mem)}
        out = set()
        for s in mem:
            out.add(tuple(pos[self.mt[self.mt[s][x]][self.inv[s]]] for x in mem))
        return sorted(out)

    def is_radical(self, si):
        auts = self.aut_perms(si)
        inn = set(self.inn_perms(si))
        n = len(self.mems[si])
        subs = {frozenset(closure(n, list(inn)))}
        frontier = list(subs)
        while frontier:
            H = frontier.pop()
            for g in auts:
                if g in H:
                    continue
                J = frozenset(closure(n, list(H) + [g]))
                if J not in subs:
                    subs.add(J)
                    frontier.append(J)
        for H in subs:
            q, r = divmod(len(H), len(inn))
            if r or q == 1 or q != ppart(q, self.p):
                continue
            if all(frozenset(pmul(pmul(a, h), pinv(a)) for h in H) == H for a in auts):
                return False
        return True

    # -- normal / central subgroups and the quasicentric test

    def _admitted_restrictions(self, si, t_si, pointwise):
        """Restrictions to subs[si] of morphisms on subs[si]*T preserving T."""
        tmask, tmem = self.subs[t_si], self.mems[t_si]
        pq = self.close_mask(self.subs[si] | tmask)
        pqmem = self.mems[self.sub_index[pq]]
        pqpos = {x: i for i, x in enumerate(pqmem)}
        ppos = [pqpos[x] for x in self.mems[si]]
        tpos = [pqpos[x] for x in tmem]
        good = set()
        for psi in self.mors[self.sub_index[pq]]:
            if pointwise:
                if any(psi[j] != tmem[k] for k, j in enumerate(tpos)):
                    continue
            elif self.graph_image(tuple(psi[j] for j in tpos)) != tmask:
                continue
            good.add(tuple(psi[j] for j in ppos))
        return good

    def is_normal_sub(self, t_si, pointwise=False):
        for si in range(len(self.subs)):
            good = self._admitted_restrictions(si, t_si, pointwise)
            if any(g not in good for g in self.mors[si]):
                return False
        return True

    def core_and_center(self):
        sc = self.strongly_closed_flags()
        zmask = self.centralizer_mask(self.subs[-1])
        core, center = 1, 1
        for si, mask in enumerate(self.subs):
            if not sc[si]:
                continue
            if self.is_normal_sub(si):
                core = self.close_mask(core | mask)
            if mask | zmask == zmask and self.is_normal_sub(si, pointwise=True):
                center = self.close_mask(center | mask)
        return core, center

    def quasicentric_flags(self):
        rep = self.class_reps()
        byrep = {}
        for si in range(len(self.subs)):
            byrep.setdefault(rep[si], []).append(si)
        centric = self.centric_flags()
        flag = [False] * len(self.subs)
        for r, cls in byrep.items():
            if centric[r]:
                ok = True
            else:
                cz = {q: bin(self.centralizer_mask(self.subs[q])).count("1") for q in cls}
                top = max(cz.values())
                ok = all(self._cf_is_inner(q) for q in cls if cz[q] == top)
            for q in cls:
                flag[q] = ok
        return flag

    def _cf_is_inner(self, q_si):
        """Is C_F(Q) just the inner fusion of the p-group C_S(Q)?"""
        cmask = self.centralizer_mask(self.subs[q_si])
        for si, mask in enumerate(self.subs):
            if mask & ~cmask:
                continue
            mem = self.mems[si]
            inner = {tuple(self.mt[self.mt[z][x]][self.inv[z]] for x in mem)
                     for z in bits(cmask)}
            for g in self._admitted_restrictions(si, q_si, pointwise=True):
                if self.graph_image(g) & ~cmask:
                    continue
                if g not in inner:
                    return False
        return True

    # -- focal and hyperfocal subgroups

    def focal_order(self):
        gens = 1
        for si, mem in enumerate(self.mems):
            for g in self.mors[si]:
                for k, x in enumerate(mem):
                    gens |= 1 << self.mt[self.inv[x]][g[k]]
        return bin(self.close_mask(gens)).count("1")

    def hyperfocal_order(self):
        gens = 1
        for si, mem in enumerate(self.mems):
            auts = self.aut_perms(si)
            n = len(mem)
            seeds = [a for a in auts if ppart(order_of(a), self.p) == 1]
            for a in closure(n, seeds):
                if a not in set(auts):
                    raise RuntimeError("O^p(Aut) escaped Aut")
                for k, x in enumerate(mem):
                    gens |= 1 << self.mt[self.inv[x]][mem[a[k]]]
        return bin(self.close_mask(gens)).count("1")

    # -- quotients

    def quotient_counts(self, z_si):
        zmem = self.mems[z_si]
        cos = [min(self.mt[x][z] for z in zmem) for x in range(self.m)]
        labels = sorted(set(cos))
        lid = {c: i for i, c in enumerate(labels)}
        qmt = [[lid[cos[self.mt[a][b]]] for b in labels] for a in labels]
        sub = Fusion.__new__(Fusion)
        sub.p, sub.m, sub.mt = self.p, len(labels), qmt
        sub.inv = [qmt[i].index(0) for i in range(len(labels))]
        sub.subs = sub._lattice()
        sub.sub_index = {mask: i for i, mask in enumerate(sub.subs)}
        sub.mems = [bits(mask) for mask in sub.subs]
        sub.mors = [set() for _ in sub.subs]
        for qi, qmask in enumerate(sub.subs):
            pre = [x for x in range(self.m) if (qmask >> lid[cos[x]]) & 1]
            premask = 0
            for x in pre:
                premask |= 1 << x
            pi = self.sub_index[premask]
            pmem = self.mems[pi]
            pos = {x: i for i, x in enumerate(pmem)}
            for g in self.mors[pi]:
                imgs = {}
                for k, x in enumerate(pmem):
                    c, v = lid[cos[x]], lid[cos[g[k]]]
                    assert imgs.setdefault(c, v) == v, "quotient map ill-defined"
                sub.mors[qi].add(tuple(imgs[c] for c in sub.mems[qi]))
        return sub


def product_fusion(FA, FB):
    """F_A x F_B over S_A x S_B, from restricted pairs of factor morphisms."""
    mB = FB.m
    S = [pad_pair(a, b, len(FA.S[0])) for a in FA.S for b in FB.S]
    out = Fusion.__new__(Fusion)
    out.p, out.m, out.S = FA.p, FA.m * mB, S
    out.mt = [[FA.mt[a // mB][b // mB] * mB + FB.mt[a % mB][b % mB]
               for b in range(out.m)] for a in range(out.m)]
    out.inv = [out.mt[i].index(0) for i in range(out.m)]
    out.subs = out._lattice()
    out.sub_index = {mask: i for i, mask in enumerate(out.subs)}
    out.mems = [bits(mask) for mask in out.subs]
    out.mors = [set() for _ in out.subs]
    for si, mem in enumerate(out.mems):
        amask = bmask = 0
        for e in mem:
            amask |= 1 << (e // mB)
            bmask |= 1 << (e % mB)
        amem = FA.mems[FA.sub_index[amask]]
        bmem = FB.mems[FB.sub_index[bmask]]
        apos = {x: i for i, x in enumerate(amem)}
        bpos = {x: i for i, x in enumerate(bmem)}
        for ga in FA.mors[FA.sub_index[amask]]:
            for gb in FB.mors[FB.sub_index[bmask]]:
                out.mors[si].add(tuple(ga[apos[e // mB]] * mB + gb[bpos[e % mB]]
                                       for e in mem))
    return out


# --- checks --------------------------------------------------------------------

FAILURES = []


def check(key, value, expect=None):
    print(f"{key} = {value}")
    if expect is not None and value != expect:
        FAILURES.append(f"{key}: got {value!r}, expected {expect!r}")
    sys.stdout.flush()


def summarize(tag, F):
    rep = F.class_reps()
    centric = F.centric_flags()
    sc = F.strongly_closed_flags()
    core, center = F.core_and_center()
    reps = sorted(set(rep))
    cr = [r for r in reps if centric[r] and F.is_radical(r)]
    check(f"{tag}.sub_count", len(F.subs))
    check(f"{tag}.class_count", len(reps))
    check(f"{tag}.morcount", F.morcount())
    check(f"{tag}.centric_subs", sum(centric))
    check(f"{tag}.cr_class_orders", sorted(bin(F.subs[r]).count("1") for r in cr))
    check(f"{tag}.strongly_closed_subs", sum(sc))
    check(f"{tag}.core_order", bin(core).count("1"))
    check(f"{tag}.center_order", bin(center).count("1"))
    check(f"{tag}.aut_s_order", len(F.mors[-1]))
    check(f"{tag}.focal_order", F.focal_order())
    check(f"{tag}.hyperfocal_order", F.hyperfocal_order())
    return F


def small_section():
    s4 = summarize("fusion.S4", Fusion(catalog("S4"), 2))
    check("fusion.S4.quasicentric_subs", sum(s4.quasicentric_flags()))
    v4n_si = next(si for si, mask in enumerate(s4.subs)
                  if bin(mask).count("1") == 4 and s4.centralizer_mask(mask) == mask
                  and s4.is_radical(si) and all(
                      s4.mt[x][x] == 0 for x in bits(mask)))
    check("fusion.S4.aut_v4n", len(s4.aut_perms(v4n_si)))

    d8 = summarize("fusion.D8self", Fusion(catalog("D8"), 2))
    check("fusion.D8self.quasicentric_subs", sum(d8.quasicentric_flags()))

    # C_F(Z(S)) on F(S4) should be exactly the inner fusion of C_S(Z(S)) = D8.
    zsi = s4.sub_index[s4.close_mask(s4.centralizer_mask(s4.subs[-1]))]
    check("local.S4.cf_center_is_inner", s4._cf_is_inner(zsi))

    a4 = summarize("fusion.A4", Fusion(catalog("A4"), 2))
    check("fusion.A4.quasicentric_subs", sum(a4.quasicentric_flags()))
    a5 = summarize("fusion.A5", Fusion(catalog("A5"), 2))
    check("fusion.A5.morcount_matches_A4", a5.morcount() == a4.morcount())

    sl23 = summarize("fusion.SL23", Fusion(catalog("SL23"), 2))
    check("fusion.SL23.quasicentric_subs", sum(sl23.quasicentric_flags()))
    q8_si = len(sl23.subs) - 1
    check("fusion.SL23.aut_q8", len(sl23.aut_perms(q8_si)))

    a6 = summarize("fusion.A6", Fusion(catalog("A6"), 2))
    check("fusion.A6.quasicentric_subs", sum(a6.quasicentric_flags()))
    sl32 = summarize("fusion.SL32", Fusion(catalog("SL32"), 2))
    check("fusion.SL32.morcount_matches_A6", sl32.morcount() == a6.morcount())

    check("fusion.A6p3.aut_s_order", len(Fusion(catalog("A6"), 3).mors[-1]))
    check("fusion.S5p5.aut_s_order", len(Fusion(catalog("S5"), 5).mors[-1]))

    # Quotient counts.
    zq = next(si for si, mask in enumerate(sl23.subs)
              if bin(mask).count("1") == 2 and sl23.strongly_closed_flags()[si])
    q = sl23.quotient_counts(zq)
    check("quotient.SL23.morcount", q.morcount())
    check("quotient.SL23.matches_A4", q.morcount() == a4.morcount()
          and len(q.subs) == len(a4.subs))

    # Products: construction from factors must equal plain fusion of the product.
    for tag, (ga, gb) in {
        "A4xC2": ("A4", "C2"),
        "S4xC2": ("S4", "C2"),
        "SL23xC2": ("SL23", "C2"),
        "A4xD8": ("A4", "D8"),
        "A5xQ8": ("A5", "Q8"),
        "A5xS4": ("A5", "S4"),
        "S4xS4": ("S4", "S4"),
    }.items():
        GA, GB = catalog(ga), catalog(gb)
        FA, FB = Fusion(GA, 2), Fusion(GB, 2)
        S = [pad_pair(a, b, len(GA[0])) for a in FA.S for b in FB.S]
        direct_f = Fusion(direct(GA, GB), 2, S=S)
        prod_f = product_fusion(FA, FB)
        check(f"product.{tag}.sub_count", len(direct_f.subs))
        check(f"product.{tag}.morcount", direct_f.morcount())
        check(f"product.{tag}.equal", prod_f.subs == direct_f.subs
              and prod_f.mors == direct_f.mors)
        check(f"product.{tag}.centric_subs", sum(direct_f.centric_flags()))
        core, center = direct_f.core_and_center()
        check(f"product.{tag}.core_order", bin(core).count("1"))
        check(f"product.{tag}.center_order", bin(center).count("1"))
        # Lemma 3.2: centric iff both projections centric and Z(P1)xZ(P2) <= P.
        cfa, cfb = FA.centric_flags(), FB.centric_flags()
        cfd = direct_f.centric_flags()
        mB = FB.m
        ok = True
        for si, mask in enumerate(direct_f.subs):
            amask = bmask = 0
            for e in direct_f.mems[si]:
                amask |= 1 << (e // mB)
                bmask |= 1 << (e % mB)
            za = FA.centralizer_mask(amask) & amask
            zb = FB.centralizer_mask(bmask) & bmask
            zprod = all((mask >> (x * mB + y)) & 1 for x in bits(za) for y in bits(zb))
            rhs = cfa[FA.sub_index[amask]] and cfb[FB.sub_index[bmask]] and zprod
            if cfd[si] != rhs:
                ok = False
        check(f"product.{tag}.lemma32", ok)


def heavy_section():
    ga, gb = catalog("A6"), catalog("S4")
    fa, fb = Fusion(ga, 2), Fusion(gb, 2)
    s = [pad_pair(a, b, 6) for a in fa.S for b in fb.S]
    f = Fusion(direct(ga, gb), 2, S=s)
    summarize("fusion.A6xS4", f)
    core, _ = f.core_and_center()
    factor_v4 = all(e // fb.m == 0 for e in bits(core))
    check("fusion.A6xS4.core_in_s4_factor", factor_v4)

    t0 = time.time()
    a6 = catalog("A6")
    faa = product_fusion(fa, fa)
    summarize("fusion.A6xA6.product", faa)
    f2 = Fusion(direct(a6, a6), 2, S=[pad_pair(a, b, 6) for a in fa.S for b in fa.S])
    check("fusion.A6xA6.direct_equals_product",
          f2.subs == faa.subs and f2.mors == faa.mors)
    check("heavy.seconds", round(time.time() - t0, 1))


def main():
    heavy = "--heavy" in sys.argv
    t0 = time.time()
    if heavy:
        heavy_section()
    else:
        small_section()
    print(f"elapsed = {time.time() - t0:.1f}s")
    if FAILURES:
        print("FAILURES:")
        for f in FAILURES:
            print(" ", f)
        sys.exit(1)
    print("oracle OK")


if __name__ == "__main__":
    main()
