"""Named verification suites, one per acceptance criterion."""
import random
import time
from itertools import product

import numpy as np

from . import distributivity as dist
from . import frames, karoubi, phifam, ultra, universe, vcat, vmod, vrel
from . import presheaf as ps
from . import quantale as qmod
from .errors import QwbError
from .presheaf import yoneda_vector
from .report import Report

DEFAULT_MAX = {"boolean": 4, "chain": 3}


def _q(name):
    return name if isinstance(name, qmod.Quantale) else qmod.by_name(name)


# -- 1. quantale -----------------------------------------------------------

def quantale_suite(quantales=None, **_):
    rep = Report("quantale")
    qs = [_q(q) for q in (quantales or ["boolean", "chain1", "chain2", "chain3", "chain5"])]
    for q in qs:
        bad = qmod.validate(q)
        laws = ("reflexivity", "antisymmetry", "transitivity", "lattice", "tensor closed", "associativity",
                "commutativity", "unit", "distributivity", "residuation")
        for law in laws:
            hits = [b for b in bad if law in b.split(":")[0]]
            rep.check(f"{law}", not hits, lambda: f"{q.name}: {hits[0]}")
        if q.name[5:].isdigit() and q == qmod.make_chain(int(q.name[5:])):
            n = int(q.name[5:])
            # hom(x, y) = max(y - x, 0) on the finite part
            for x, y in product(range(n + 1), repeat=2):
                rep.check("chain hom = truncated difference", q.hom(x, y) == max(y - x, 0),
                          lambda: (q.name, x, y, q.hom(x, y)))
    if any(q.name == "chain5" for q in qs):
        c5 = qmod.make_chain(5)
        rep.check("chain5 hom(3,5) = 2", c5.label(c5.hom(c5.idx("3"), c5.idx("5"))) == "2", None)
    return rep


# -- 2. relations (vectorised tables) ----------------------------------------

class _RelTables:
    """All relations of each shape over q, encoded as base-|q| integers."""

    def __init__(self, q):
        self.q = q
        self.k = q.size
        self.T = np.array(q.tensor_table, dtype=np.int64)
        self.J = np.array(q.join_table, dtype=np.int64)
        self.M = np.array(q.meet_table, dtype=np.int64)
        self.H = np.array(q.hom_table, dtype=np.int64)
        self.LE = np.array(q.leq_table, dtype=bool)
        self._rels = {}
        self._leq = {}

    def rels(self, a, b):
        if (a, b) not in self._rels:
            N = self.k ** (a * b)
            idx = np.arange(N, dtype=np.int64)
            cells = [(idx // self.k ** p) % self.k for p in range(a * b)]
            arr = np.stack(cells, axis=1) if cells else np.zeros((N, 0), dtype=np.int64)
            self._rels[(a, b)] = arr.reshape(N, a, b)
        return self._rels[(a, b)]

    def encode(self, cells, a, b):
        """cells[i][j] arrays of the same shape -> integer codes."""
        out = 0
        for i in range(a):
            for j in range(b):
                out = out + cells[i][j] * self.k ** (i * b + j)
        return np.asarray(out, dtype=np.int64)

    def leq(self, a, b):
        if (a, b) not in self._leq:
            R = self.rels(a, b)
            N = len(R)
            ok = np.ones((N, N), dtype=bool)
            for i in range(a):
                for j in range(b):
                    ok &= self.LE[R[:, i, j][:, None], R[:, i, j][None, :]]
            self._leq[(a, b)] = ok
        return self._leq[(a, b)]

    def compose(self, a, b, c):
        """C[r, s] = code of s·r for r: a⇸b, s: b⇸c."""
        R1, R2 = self.rels(a, b), self.rels(b, c)
        shape = (len(R1), len(R2))
        cells = [[None] * c for _ in range(a)]
        for i in range(a):
            for j in range(c):
                acc = np.full(shape, self.q.bottom, dtype=np.int64)
                for l in range(b):
                    acc = self.J[acc, self.T[R1[:, i, l][:, None], R2[:, l, j][None, :]]]
                cells[i][j] = acc
        return np.broadcast_to(self.encode(cells, a, c), shape) if a * c else np.zeros(shape, dtype=np.int64)

    def extend(self, a, b, c):
        """E[ψ, φ] = code of ψ◁φ: b⇸c for ψ: a⇸c, φ: a⇸b."""
        Psi, Phi = self.rels(a, c), self.rels(a, b)
        shape = (len(Psi), len(Phi))
        cells = [[None] * c for _ in range(b)]
        for y in range(b):
            for z in range(c):
                acc = np.full(shape, self.q.top, dtype=np.int64)
                for x in range(a):
                    acc = self.M[acc, self.H[Phi[:, x, y][None, :], Psi[:, x, z][:, None]]]
                cells[y][z] = acc
        return np.broadcast_to(self.encode(cells, b, c), shape) if b * c else np.zeros(shape, dtype=np.int64)

    def lift(self, a, b, c):
        """Lt[φ, ψ] = code of φ▷ψ: a⇸b for φ: b⇸c, ψ: a⇸c."""
        Phi, Psi = self.rels(b, c), self.rels(a, c)
        shape = (len(Phi), len(Psi))
        cells = [[None] * b for _ in range(a)]
        for x in range(a):
            for y in range(b):
                acc = np.full(shape, self.q.top, dtype=np.int64)
                for z in range(c):
                    acc = self.M[acc, self.H[Phi[:, y, z][:, None], Psi[:, x, z][None, :]]]
                cells[x][y] = acc
        return np.broadcast_to(self.encode(cells, a, b), shape) if a * b else np.zeros(shape, dtype=np.int64)

    def to_vrel(self, code, a, b):
        R = self.rels(a, b)[code]
        return vrel.VRel(self.q, tuple(f"a{i}" for i in range(a)), tuple(f"b{j}" for j in range(b)),
                         tuple(tuple(int(v) for v in row) for row in R))

    def code(self, r):
        a, b = r.shape
        return sum(r.m[i][j] * self.k ** (i * b + j) for i in range(a) for j in range(b))


def _pairs(n1, n2, limit, rng):
    if n1 * n2 <= limit:
        return product(range(n1), range(n2)), True
    return [(rng.randrange(n1), rng.randrange(n2)) for _ in range(limit)], False


def relation_suite(quantale=None, max=None, seed=0, crosscheck_limit=4096, **_):
    """Associativity, identities and the residual adjunctions, exhaustively.

    The exhaustive checks run on vectorised tables.  The tables are compared
    with the library's compose/extend/lift on every pair when there are at
    most ``crosscheck_limit`` pairs, and on that many seeded samples otherwise.
    """
    rep = Report("relation")
    if quantale is None:
        plan = [("boolean", 3), ("chain2", 2)]
    else:
        plan = [(quantale, max or (3 if _q(quantale).size == 2 else 2))]
    rng = random.Random(seed)
    sampled = False
    for qname, nmax in plan:
        q = _q(qname)
        tb = _RelTables(q)
        sizes = range(nmax + 1)
        C, E, Lt = {}, {}, {}
        for a, b, c in product(sizes, repeat=3):
            C[a, b, c] = tb.compose(a, b, c)
            E[a, b, c] = tb.extend(a, b, c)
            Lt[a, b, c] = tb.lift(a, b, c)
        # library cross-check
        for (a, b, c), tab in C.items():
            pairs, exh = _pairs(tab.shape[0], tab.shape[1], crosscheck_limit, rng)
            sampled |= not exh
            for i, j in pairs:
                got = tb.code(vrel.compose(tb.to_vrel(i, a, b), tb.to_vrel(j, b, c)))
                rep.check("tables agree with compose", got == tab[i, j], lambda: (q.name, a, b, c, i, j))
        for (a, b, c), tab in E.items():
            pairs, exh = _pairs(tab.shape[0], tab.shape[1], crosscheck_limit, rng)
            sampled |= not exh
            for i, j in pairs:
                got = tb.code(vrel.extend(tb.to_vrel(i, a, c), tb.to_vrel(j, a, b)))
                rep.check("tables agree with extend", got == tab[i, j], lambda: (q.name, a, b, c, i, j))
        for (a, b, c), tab in Lt.items():
            pairs, exh = _pairs(tab.shape[0], tab.shape[1], crosscheck_limit, rng)
            sampled |= not exh
            for i, j in pairs:
                got = tb.code(vrel.lift(tb.to_vrel(i, b, c), tb.to_vrel(j, a, c)))
                rep.check("tables agree with lift", got == tab[i, j], lambda: (q.name, a, b, c, i, j))
        # identities
        for a, b in product(sizes, repeat=2):
            ida = tb.code(vrel.identity(q, tuple(range(a))))
            idb = tb.code(vrel.identity(q, tuple(range(b))))
            n = len(tb.rels(a, b))
            rep.check("1.r = r", bool(np.all(C[a, a, b][ida, :] == np.arange(n))), lambda: (q.name, a, b))
            rep.check("r.1 = r", bool(np.all(C[a, b, b][:, idb] == np.arange(n))), lambda: (q.name, a, b))
        # associativity: (t·s)·r = t·(s·r)
        for a, b, c, d in product(sizes, repeat=4):
            Cabc, Cacd, Cbcd, Cabd = C[a, b, c], C[a, c, d], C[b, c, d], C[a, b, d]
            ok = True
            for r in range(Cabc.shape[0]):
                lhs = Cacd[Cabc[r][:, None], np.arange(Cbcd.shape[1])[None, :]]
                rhs = Cabd[r][Cbcd]
                if not np.array_equal(lhs, rhs):
                    ok = False
                    break
            rep.check("associativity", ok, lambda: (q.name, a, b, c, d, r))
        # residuals: χ·φ ⊑ ψ iff χ ⊑ ψ◁φ, and φ·ρ ⊑ ψ iff ρ ⊑ φ▷ψ
        for a, b, c in product(sizes, repeat=3):
            Lac, Lbc, Lab = tb.leq(a, c), tb.leq(b, c), tb.leq(a, b)
            Cabc, Eabc, Labc = C[a, b, c], E[a, b, c], Lt[a, b, c]
            ok = True
            for phi in range(Cabc.shape[0]):  # φ: a⇸b, χ ranges over b⇸c, ψ over a⇸c
                lhs = Lac[Cabc[phi][:, None], np.arange(Lac.shape[1])[None, :]]
                rhs = Lbc[:, Eabc[:, phi]]
                if not np.array_equal(lhs, rhs):
                    ok = False
                    break
            rep.check("extend adjunction", ok, lambda: (q.name, a, b, c, phi))
            ok = True
            for phi in range(Cabc.shape[1]):  # φ: b⇸c, ρ over a⇸b, ψ over a⇸c
                lhs = Lac[Cabc[:, phi][:, None], np.arange(Lac.shape[1])[None, :]]
                rhs = Lab[:, Labc[phi, :]]
                if not np.array_equal(lhs, rhs):
                    ok = False
                    break
            rep.check("lift adjunction", ok, lambda: (q.name, a, b, c, phi))
    if sampled:
        rep.note(f"library cross-check sampled ({crosscheck_limit} pairs) on the largest shapes")
    return rep


# -- 3. yoneda ---------------------------------------------------------------

def _universes(quantale, max, default):
    if quantale is None:
        return [universe.universe(_q(name), n) for name, n in default]
    q = _q(quantale)
    n = max if max is not None else DEFAULT_MAX["boolean" if q.size == 2 else "chain"]
    return [universe.universe(q, n)]


def yoneda_suite(quantale=None, max=None, cap=ps.DEFAULT_CAP, sampled=False, seed=0, **_):
    rep = Report("yoneda")
    for U in _universes(quantale, max, [("boolean", 4), ("chain2", 3)]):
        q = U.quantale
        for X in U:
            P = ps.build_presheaves(X, cap)
            y = P.yoneda()
            n = len(X)
            for x in range(n):
                yx = P.elements[y.map[x]]
                for psi in P.elements:
                    rep.check("[y x, psi] = psi(x)", ps.vec_hom(q, yx, psi) == psi[x], lambda: (X, x, psi))
                for x2 in range(n):
                    rep.check("y fully faithful", P.cat.hom[y.map[x]][y.map[x2]] == X.hom[x][x2], lambda: (X, x, x2))
            PPvecs, exhaustive = ps.presheaves_over(P, cap, sampled, seed)
            if not exhaustive:
                rep.note("sampled: Sup_PX checked on generated presheaves where PPX is not enumerable")
            if not PPvecs:
                continue
            Psis = np.array(PPvecs, dtype=np.int64)
            elems = np.array(P.elements, dtype=np.int64)
            sups = dist.suprema(P.cat, Psis)
            ms = ps.mult_vectors(P, Psis)
            ok = (sups >= 0) & (elems[sups] == ms).all(axis=1)
            bad = np.flatnonzero(~ok)
            rep.tally("Sup_PX = -.(y_X)_*", int(ok.sum()), len(bad),
                      lambda: (X, PPvecs[bad[0]]))
    return rep


# -- 4. kz -------------------------------------------------------------------

def kz_suite(quantale="boolean", max=3, cap=ps.DEFAULT_CAP, sampled=False, seed=0, **_):
    rep = Report("kz")
    q = _q(quantale or "boolean")
    for X in universe.universe(q, 3 if max is None else max):
        rep.merge(ps.kz_check(X, cap, sampled, seed))
    return rep


# -- 5. duality --------------------------------------------------------------

def duality_suite(max=4, lattice_max=6, **_):
    rep = Report("duality")
    for X in universe.posets(4 if max is None else max):
        P = ps.build_presheaves(X)
        et, wP, _ = dist.eta(X, P)
        rep.check("PX is ccd", wP is not None, lambda: X)
        rep.check("eta_X iso onto S(PX)", et is not None and vcat.is_iso(et), lambda: X)
        first, second = dist.triangle_identities(X, P)
        rep.check("S(eps).eta_S = 1 (L = PX)", first, lambda: X)
        rep.check("D(eta).eps_D = 1", second, lambda: X)
        for a, b in dist.equaliser_lemma(X, P):
            rep.check("equaliser of Py, yP = right adjoints", a == b, lambda: X)
    for L in universe.lattices(lattice_max):
        w = dist.ccd_witness(L)
        ccd = w is not None
        alg = ccd and dist.is_totally_algebraic(w)
        distrib = dist.is_distributive_lattice(L)
        rep.check("ccd iff distributive", ccd == distrib, lambda: L)
        rep.check("ccd iff totally algebraic", ccd == alg, lambda: L)
        rep.check("cocomplete (complete lattice)", (dist.is_cocomplete(L) is not None) == dist.is_complete_lattice(L),
                  lambda: L)
        if ccd:
            rep.check("S(eps).eta_S = 1", dist.first_triangle(w), lambda: L)
            SL, _ = dist.S_object(w)
            PS = ps.build_presheaves(SL)
            e, _, _, _ = dist.eps(w, PS)
            rep.check("eps_L iso for ccd L", vcat.is_iso(e), lambda: L)
    return rep


# -- 6. totally below ----------------------------------------------------------

def totally_below_suite(lattice_max=6, max=None, **_):
    rep = Report("totally_below")
    for L in universe.lattices(max or lattice_max):
        w = dist.ccd_witness(L)
        oracle = dist.totally_below_oracle(L)
        if w is None:
            rep.check("non-ccd lattice is not distributive", not dist.is_distributive_lattice(L), lambda: L)
            continue
        q = L.quantale
        th = w.theta.m
        n = len(L)
        same = all((th[a][b] == q.top) == oracle[a][b] for a in range(n) for b in range(n))
        rep.check("theta = brute-force totally-below", same, lambda: L)
    return rep


# -- 7. phi --------------------------------------------------------------------

def phi_suite(quantale="boolean", max=3, families=None, dedup=False, **_):
    rep = Report("phi")
    q = _q(quantale or "boolean")
    cats = universe.universe(q, 3 if max is None else max, dedup=dedup).cats
    for name in families or sorted(phifam.FAMILIES):
        fam = phifam.family_by_name(name)
        r, _, _ = phifam.check_saturated(fam, cats)
        rep.merge(_prefixed(r, name))
        rep.merge(_prefixed(phifam.kleisli_check(fam, cats), name))
        rep.merge(_prefixed(phifam.phiX_cocomplete_check(fam, cats), name))
    return rep


def _prefixed(r, prefix):
    out = Report(r.name)
    out.laws = {f"{prefix}: {law}": v for law, v in r.laws.items()}
    out.notes = [f"{prefix}: {n}" for n in r.notes]
    return out


# -- 8. karoubi ------------------------------------------------------------------

def karoubi_suite(max=3, lattice_max=8, **_):
    rep = Report("karoubi")
    nmax = 3 if max is None else max
    fam = phifam.family_all()
    # roundtrips on every labeled V-category; iso classes are counted on the
    # one labeling per V-category that equals its canonical form
    objs = []
    for X in universe.universe(qmod.make_boolean(), nmax):
        for th in karoubi.idempotent_modules(X, fam):
            k = karoubi.kar_object(X, th, fam)
            karoubi.roundtrip_witnesses(k, rep)
            if X.hom == universe.canonical_form(X):
                objs.append(k)
    classes = karoubi.kar_classes(objs, rep)
    kar_counts = {}
    for k, _ in classes:
        S = karoubi.split_S(k).cat
        r = len(dist.totally_compact(phifam.is_phi_distributive(S, fam)))
        kar_counts[r] = kar_counts.get(r, 0) + 1
    dist_counts = {}
    for L in universe.lattices(lattice_max):
        w = phifam.is_phi_distributive(L, fam)
        if w is None:
            continue
        r = len(dist.totally_compact(w))
        if r <= nmax:
            dist_counts[r] = dist_counts.get(r, 0) + 1
    for r in range(nmax + 1):
        rep.check("class counts agree per rank", kar_counts.get(r, 0) == dist_counts.get(r, 0),
                  lambda: (r, kar_counts, dist_counts))
    rep.note("kar classes per rank: " + ", ".join(f"{r}: {kar_counts.get(r, 0)}" for r in range(nmax + 1)))
    rep.note("distributive objects per rank: " + ", ".join(f"{r}: {dist_counts.get(r, 0)}" for r in range(nmax + 1)))
    return rep


# -- 9-11 ------------------------------------------------------------------------

def frames_suite(max=5, **_):
    rep = frames.frames_report(5 if max is None else max)
    frames.frame_image_criterion(4, 6, rep)
    rep.name = "frames"
    return rep


def ultra_suite(max=4, **_):
    return ultra.ultra_report(4 if max is None else max)


def tensor_action_suite(quantale="chain2", max=3, **_):
    rep = Report("tensor_action")
    q = _q(quantale or "chain2")
    count = 0
    for X in universe.universe(q, 3 if max is None else max):
        P = ps.build_presheaves(X)
        sup = dist.is_cocomplete(X, P)
        if sup is None:
            continue
        count += 1
        n = len(X)
        act = {(x, u): dist.tensor_action(X, x, u, P, sup) for x in range(n) for u in range(q.size)}
        for (x, u), xu in act.items():
            for y in range(n):
                rep.check("a(x+u, y) = hom(u, a(x, y))", X.hom[xu][y] == q.hom(u, X.hom[x][y]), lambda: (X, x, u, y))
            for v in range(q.size):
                rep.check("(x+u)+v = x+(u*v)", vcat.equivalent(X, act[xu, v], act[x, q.tensor(u, v)]),
                          lambda: (X, x, u, v))
    rep.note(f"cocomplete categories checked: {count}")
    return rep


SUITES = {
    "quantale": quantale_suite,
    "relation": relation_suite,
    "yoneda": yoneda_suite,
    "kz": kz_suite,
    "duality": duality_suite,
    "totally_below": totally_below_suite,
    "phi": phi_suite,
    "karoubi": karoubi_suite,
    "frames": frames_suite,
    "ultra": ultra_suite,
    "tensor_action": tensor_action_suite,
}


def run_suite(name, **options):
    if name not in SUITES:
        raise QwbError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")
    t0 = time.perf_counter()
    rep = SUITES[name](**{k: v for k, v in options.items() if v is not None})
    rep.seconds = time.perf_counter() - t0
    return rep
