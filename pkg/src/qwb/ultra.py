"""The finite ultrafilter monad, the Barr extension, and Kleisli composition.

Subsets of an n-element set are bitmasks; a family of subsets is a frozenset
of masks.  On finite sets every ultrafilter is principal, so everything here
collapses along x ↦ ẋ; the brute-force mode exists to certify that.
"""
from dataclasses import dataclass
from itertools import product

from . import vrel
from .errors import CapExceeded, QuantaleMismatch, ShapeError
from .quantale import make_boolean
from .report import Report

BRUTE_CAP = 4


@dataclass(frozen=True)
class UltraSpace:
    base: tuple
    ultrafilters: tuple  # frozensets of subset masks
    principal_map: tuple  # x ↦ index of ẋ

    def __len__(self):
        return len(self.ultrafilters)

    @property
    def n(self):
        return len(self.base)

    def index(self, fam):
        return self.ultrafilters.index(fam)

    def sharp(self, A):
        """A^# = {𝔵 | A ∈ 𝔵}, as a mask over ultrafilter indices."""
        return sum(1 << i for i, u in enumerate(self.ultrafilters) if A in u)

    def labels(self):
        inv = {u: x for x, u in enumerate(self.principal_map)}
        return tuple(f"u({self.base[inv[i]]})" if i in inv else f"nonprincipal{i}"
                     for i in range(len(self)))


def principal(n, x):
    return frozenset(A for A in range(1 << n) if A >> x & 1)


def is_ultrafilter(n, fam):
    full = (1 << n) - 1
    if 0 in fam or full not in fam:
        return False
    for A in range(1 << n):
        inA = A in fam
        if inA == ((full ^ A) in fam):
            return False
        if inA:
            for B in fam:
                if (A & B) not in fam:
                    return False
            # up-closure: every superset of A
            for B in range(1 << n):
                if B & A == A and B not in fam:
                    return False
    return True


def _brute(n):
    out = []
    for bits in range(1 << (1 << n)):
        # quick rejects: ∅ absent, full set present
        if bits & 1 or not bits >> ((1 << n) - 1) & 1:
            continue
        fam = frozenset(A for A in range(1 << n) if bits >> A & 1)
        if is_ultrafilter(n, fam):
            out.append(fam)
    return out


def ultrafilters(X, mode="brute", cap=BRUTE_CAP):
    """UX for X a tuple of labels (or a size)."""
    base = tuple(f"x{i}" for i in range(X)) if isinstance(X, int) else tuple(X)
    n = len(base)
    prin = [principal(n, x) for x in range(n)]
    if mode == "principal":
        ufs = prin
    elif mode == "brute":
        if n > cap:
            raise CapExceeded(f"brute-force ultrafilters need |X| <= {cap}, got {n}")
        ufs = sorted(_brute(n), key=lambda u: prin.index(u) if u in prin else n)
    else:
        raise ValueError(f"unknown mode {mode!r}")
    ufs = tuple(ufs)
    pmap = tuple(ufs.index(p) for p in prin)
    return UltraSpace(base, ufs, pmap)


def unit(UX):
    """e_X: x ↦ ẋ."""
    return UX.principal_map


def U_map(f, UX, UY):
    """Uf(𝔵) = {B | f⁻¹(B) ∈ 𝔵}."""
    out = []
    for u in UX.ultrafilters:
        img = frozenset(B for B in range(1 << UY.n)
                        if sum(1 << x for x in range(UX.n) if B >> f[x] & 1) in u)
        out.append(UY.index(img))
    return tuple(out)


def mult(UX, UUX):
    """m_X(𝔛) = {A ⊆ X | A^# ∈ 𝔛}, for UUX the ultrafilters on UX."""
    sharps = [UX.sharp(A) for A in range(1 << UX.n)]
    out = []
    for big in UUX.ultrafilters:
        out.append(UX.index(frozenset(A for A in range(1 << UX.n) if sharps[A] in big)))
    return tuple(out)


def barr_matrix(r, UX, UY):
    """𝔵 (Ur) 𝔶 iff every A ∈ 𝔵, B ∈ 𝔶 meet in some x r y, over a boolean matrix r."""
    nX, nY = UX.n, UY.n
    # rel_hit[A][B]: some x ∈ A, y ∈ B with x r y
    hit = [[any(A >> x & 1 and B >> y & 1 and r[x][y] for x in range(nX) for y in range(nY))
            for B in range(1 << nY)] for A in range(1 << nX)]
    return tuple(tuple(all(hit[A][B] for A in u for B in w) for w in UY.ultrafilters)
                 for u in UX.ultrafilters)


def _bool(r):
    q = r.quantale
    if q.name != "boolean":
        raise QuantaleMismatch("the Barr extension is implemented for the boolean quantale only")
    return tuple(tuple(v == q.top for v in row) for row in r.m)


def _vrel(q, dom, cod, m):
    return vrel.VRel(q, tuple(dom), tuple(cod), tuple(tuple(q.top if b else q.bottom for b in row) for row in m))


def barr_extension(r, UX=None, UY=None):
    """Ur: UX⇸UY for a boolean VRel r: X⇸Y."""
    m = _bool(r)
    UX = UX or ultrafilters(r.dom)
    UY = UY or ultrafilters(r.cod)
    return _vrel(r.quantale, UX.labels(), UY.labels(), barr_matrix(m, UX, UY))


def _compose(r, s):
    """s·r for boolean matrices r: A⇸B, s: B⇸C."""
    if r and s and len(r[0]) != len(s):
        raise ShapeError("relations not composable")
    nc = len(s[0]) if s else 0
    return tuple(tuple(any(r[a][b] and s[b][c] for b in range(len(s))) for c in range(nc)) for a in range(len(r)))


def _transpose(r, ncols):
    return tuple(tuple(r[i][j] for i in range(len(r))) for j in range(ncols))


def _graph(f, ncod):
    return tuple(tuple(f[x] == y for y in range(ncod)) for x in range(len(f)))


def kleisli_matrix(r, s, UX, UUX, UY):
    """s∘r = s·Ur·m_X° for r: UX⇸Y, s: UY⇸Z (boolean matrices)."""
    Ur = barr_matrix(r, UUX, UY)
    m = mult(UX, UUX)
    m_op = _transpose(_graph(m, len(UX)), len(UX))
    return _compose(_compose(m_op, Ur), s)


def kleisli_compose(r, s, UX, UY):
    """Kleisli composite of boolean VRels r: UX⇸Y and s: UY⇸Z."""
    mr, ms = _bool(r), _bool(s)
    if len(mr) != len(UX) or len(ms) != len(UY):
        raise ShapeError("relation domains must be the ultrafilter spaces")
    UUX = ultrafilters(UX.labels())
    return _vrel(r.quantale, r.dom, s.cod, kleisli_matrix(mr, ms, UX, UUX, UY))


def monad_ops(X, mode="brute"):
    """(UX, e_X, UUX, m_X)."""
    UX = ultrafilters(X, mode)
    UUX = ultrafilters(UX.labels(), mode)
    return UX, unit(UX), UUX, mult(UX, UUX)


def all_bool_relations(nA, nB):
    for bits in product((False, True), repeat=nA * nB):
        yield tuple(tuple(bits[i * nB:(i + 1) * nB]) for i in range(nA))


def convergence(X, UX):
    """𝔵 → x iff every open neighbourhood of x lies in 𝔵, for a FiniteSpace X."""
    masks = [sum(1 << i for i in U) for U in X.opens]
    return tuple(tuple(all(M in u for M in masks if M >> x & 1) for x in range(len(X))) for u in UX.ultrafilters)


def collapse(r, UX):
    """r̄(x, −) = r(ẋ, −) for r: UX⇸Y."""
    return tuple(r[UX.principal_map[x]] for x in range(UX.n))


def ultra_report(max_n=4, relation_n=3, kleisli_n=2, space_n=3):
    rep = Report("ultra")
    spaces = {}
    for n in range(max_n + 1):
        UX = ultrafilters(n, "brute")
        PX = ultrafilters(n, "principal")
        rep.check("ultrafilter count = |X|", len(UX) == n, lambda: len(UX))
        rep.check("brute force = principal", set(UX.ultrafilters) == set(PX.ultrafilters), lambda: n)
        spaces[n] = UX
    # monad laws
    for n in range(min(max_n, 3) + 1):
        UX = spaces[n]
        UUX = ultrafilters(UX.labels())
        UUUX = ultrafilters(UUX.labels())
        m = mult(UX, UUX)
        eU = unit(UUX)
        Ue = U_map(unit(UX), UX, UUX)
        rep.check("m.eU = 1", all(m[eU[i]] == i for i in range(len(UX))), lambda: n)
        rep.check("m.Ue = 1", all(m[Ue[i]] == i for i in range(len(UX))), lambda: n)
        mU = mult(UUX, UUUX)
        Um = U_map(m, UUUX, UUX)
        rep.check("m.mU = m.Um", all(m[mU[i]] == m[Um[i]] for i in range(len(UUUX))), lambda: n)
        pp = [UUX.principal_map[UX.principal_map[x]] for x in range(n)]
        rep.check("m on principal of principal", all(m[pp[x]] == UX.principal_map[x] for x in range(n)), lambda: n)
        # m via A^#: A ∈ m(𝔛) iff A^# ∈ 𝔛
        rep.check("A^# used by m", all(
            (A in UX.ultrafilters[m[i]]) == (UX.sharp(A) in UUX.ultrafilters[i])
            for i in range(len(UUX)) for A in range(1 << n)), lambda: n)
    # Barr extension
    for nX in range(relation_n + 1):
        for nY in range(relation_n + 1):
            UX, UY = spaces[nX], spaces[nY]
            rels = list(all_bool_relations(nX, nY))
            ext = {r: barr_matrix(r, UX, UY) for r in rels}
            for r in rels:
                Ur = ext[r]
                rep.check("Ur collapses to r", all(
                    Ur[UX.principal_map[x]][UY.principal_map[y]] == r[x][y]
                    for x in range(nX) for y in range(nY)), lambda: r)
                rop = _transpose(r, nY)
                rep.check("U(r^o) = (Ur)^o", barr_matrix(rop, UY, UX) == _transpose(Ur, len(UY)), lambda: r)
                rep.check("e.r <= Ur.e", all(
                    Ur[UX.principal_map[x]][UY.principal_map[y]] for x in range(nX) for y in range(nY) if r[x][y]),
                    lambda: r)
            for r, s in product(rels, rels):
                if all(s[x][y] or not r[x][y] for x in range(nX) for y in range(nY)):
                    rep.check("Barr monotone", all(
                        ext[s][i][j] or not ext[r][i][j] for i in range(len(UX)) for j in range(len(UY))),
                        lambda: (r, s))
            for f in product(range(nY), repeat=nX):
                Uf = U_map(f, UX, UY)
                rep.check("U(graph f) = graph(Uf)", barr_matrix(_graph(f, nY), UX, UY) == _graph(Uf, len(UY)),
                          lambda: f)
    # Kleisli composition and the e° laws
    for nX in range(kleisli_n + 1):
        UX = spaces[nX]
        UUX = ultrafilters(UX.labels())
        e_op = _transpose(_graph(unit(UX), len(UX)), nX)  # e_X°: UX⇸X as a U-relation X⇸X
        for nY in range(kleisli_n + 1):
            UY = spaces[nY]
            UUY = ultrafilters(UY.labels())
            eY_op = _transpose(_graph(unit(UY), len(UY)), nY)
            for r in all_bool_relations(len(UX), nY):
                rep.check("r o e^o = r", kleisli_matrix(e_op, r, UX, UUX, UX) == r, lambda: r)
                got = kleisli_matrix(r, eY_op, UX, UUX, UY)
                rep.check("e^o o r >= r", all(got[i][y] or not r[i][y] for i in range(len(UX)) for y in range(nY)),
                          lambda: r)
            for nZ in range(kleisli_n + 1):
                for r in all_bool_relations(len(UX), nY):
                    for s in all_bool_relations(len(UY), nZ):
                        k = kleisli_matrix(r, s, UX, UUX, UY)
                        plain = _compose(collapse(r, UX), collapse(s, UY))
                        rep.check("Kleisli = plain composition", collapse(k, UX) == plain, lambda: (r, s))
    # convergence of finite spaces: a∘a = a iff transitive, e° ⊆ a iff reflexive
    from . import frames
    for n in range(space_n + 1):
        UX = spaces[n]
        UUX = ultrafilters(UX.labels())
        for X in frames.topologies(n):
            a = convergence(X, UX)
            le = X.order()
            rep.check("convergence collapses to the order", collapse(a, UX) == le, lambda: X.opens)
        e_op = _transpose(_graph(unit(UX), len(UX)), n)
        for a in all_bool_relations(len(UX), n):
            aa = kleisli_matrix(a, a, UX, UUX, UX)
            c = collapse(a, UX)
            trans = all(c[x][z] or not (c[x][y] and c[y][z]) for x in range(n) for y in range(n) for z in range(n))
            refl = all(c[x][x] for x in range(n))
            kle = all(aa[i][x] <= a[i][x] for i in range(len(UX)) for x in range(n))
            rep.check("a o a <= a iff transitive", kle == trans, lambda: a)
            rep.check("e^o <= a iff reflexive", all(a[i][x] or not e_op[i][x] for i in range(len(UX)) for x in range(n)) == refl,
                      lambda: a)
            if refl:
                rep.check("a o a = a iff transitive (reflexive a)", (aa == a) == trans, lambda: a)
    return rep


def boolean_vrel(dom, cod, m):
    return _vrel(make_boolean(), dom, cod, m)
