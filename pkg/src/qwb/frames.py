"""Finite meet-semilattices, frames, filter spaces and the points functor.

Polarity follows the two-point space 2 = {0 ≤ 1} with {1} closed: a map
φ: X → 2 is continuous when φ⁻¹(0) is open, and φ(x) = 0 reads "x lies in
the open set".  The underlying order of a space is the dual of the
specialisation order: x ≤ y iff every open containing y contains x, so the
opens of a finite space are down-sets.
"""
from dataclasses import dataclass
from itertools import product

from . import distributivity as dist
from . import vcat
from .errors import InvariantViolation
from .report import Report


def _closure(n, le):
    le = [list(row) for row in le]
    for i in range(n):
        le[i][i] = True
    for k in range(n):
        for i in range(n):
            if le[i][k]:
                for j in range(n):
                    if le[k][j]:
                        le[i][j] = True
    return tuple(tuple(row) for row in le)


@dataclass(frozen=True)
class MeetSemilattice:
    elements: tuple
    le: tuple

    def __len__(self):
        return len(self.elements)

    def idx(self, label):
        try:
            return self.elements.index(label)
        except ValueError:
            raise KeyError(f"unknown element {label!r}") from None

    def validate(self):
        n = len(self)
        out = []
        if n == 0:
            return ["empty carrier"]
        le = self.le
        for i in range(n):
            if not le[i][i]:
                out.append(f"reflexivity: {self.elements[i]}")
            for j in range(n):
                if i != j and le[i][j] and le[j][i]:
                    out.append(f"antisymmetry: {self.elements[i]} {self.elements[j]}")
                for k in range(n):
                    if le[i][j] and le[j][k] and not le[i][k]:
                        out.append(f"transitivity: {self.elements[i]} {self.elements[j]} {self.elements[k]}")
        if out:
            return out
        if self.top is None:
            out.append("no top element")
        for i in range(n):
            for j in range(n):
                if self._glb(i, j) is None:
                    out.append(f"no meet: {self.elements[i]} {self.elements[j]}")
        return out

    def _glb(self, i, j):
        lb = [u for u in range(len(self)) if self.le[u][i] and self.le[u][j]]
        c = [u for u in lb if all(self.le[v][u] for v in lb)]
        return c[0] if c else None

    @property
    def top(self):
        c = [u for u in range(len(self)) if all(self.le[v][u] for v in range(len(self)))]
        return c[0] if c else None

    @property
    def bottom(self):
        c = [u for u in range(len(self)) if all(self.le[u][v] for v in range(len(self)))]
        return c[0] if c else None

    def meet(self, i, j):
        return self._glb(i, j)

    def meet_all(self, xs):
        acc = self.top
        for x in xs:
            acc = self.meet(acc, x)
        return acc

    def join_all(self, xs):
        """Least upper bound; exists in any finite meet-semilattice with top."""
        xs = list(xs)
        ub = [u for u in range(len(self)) if all(self.le[x][u] for x in xs)]
        return self.meet_all(ub)

    def join(self, i, j):
        return self.join_all((i, j))

    def is_frame(self):
        n = len(self)
        return all(self.meet(x, self.join(y, z)) == self.join(self.meet(x, y), self.meet(x, z))
                   for x in range(n) for y in range(n) for z in range(n))

    def up(self, x):
        return frozenset(u for u in range(len(self)) if self.le[x][u])


def semilattice(elements, le):
    L = MeetSemilattice(tuple(elements), tuple(tuple(bool(v) for v in row) for row in le))
    problems = L.validate()
    if problems:
        raise InvariantViolation("not a meet-semilattice with top", problems[0])
    return L


def from_pairs(elements, pairs):
    """Reflexive-transitive closure of the given (a, b) meaning a ≤ b."""
    elements = tuple(elements)
    pos = {e: i for i, e in enumerate(elements)}
    n = len(elements)
    le = [[False] * n for _ in range(n)]
    for a, b in pairs:
        le[pos[a]][pos[b]] = True
    return semilattice(elements, _closure(n, le))


def from_vcat(C):
    n = len(C)
    return semilattice(C.objects, [[vcat.le(C, i, j) for j in range(n)] for i in range(n)])


def to_vcat(L):
    return vcat.from_preorder(L.elements, [list(r) for r in L.le])


def frames(max_size, min_size=1):
    """Iso classes of finite frames (distributive lattices)."""
    from .universe import lattices
    return [from_vcat(C) for C in lattices(max_size, min_size) if dist.is_distributive_lattice(C)]


def semilattices(max_size, min_size=1):
    """Finite meet-semilattices with top are exactly the finite lattices."""
    from .universe import lattices
    return [from_vcat(C) for C in lattices(max_size, min_size)]


# -- finite spaces ---------------------------------------------------------

@dataclass(frozen=True)
class FiniteSpace:
    points: tuple
    opens: tuple  # sorted tuple of frozensets of point indices

    def __len__(self):
        return len(self.points)

    def validate(self):
        n = len(self)
        full = frozenset(range(n))
        S = set(self.opens)
        out = []
        if frozenset() not in S:
            out.append("empty set missing")
        if full not in S:
            out.append("full set missing")
        for A in self.opens:
            if not A <= full:
                out.append(f"open out of range: {sorted(A)}")
            for B in self.opens:
                if A & B not in S:
                    out.append(f"not closed under intersection: {sorted(A)} {sorted(B)}")
                if A | B not in S:
                    out.append(f"not closed under union: {sorted(A)} {sorted(B)}")
        return out

    def order(self):
        """x ≤ y iff every open containing y contains x."""
        n = len(self)
        return tuple(tuple(all(x in U for U in self.opens if y in U) for y in range(n)) for x in range(n))

    def is_open(self, A):
        return frozenset(A) in set(self.opens)

    def is_t0(self):
        le = self.order()
        n = len(self)
        return all(not (le[x][y] and le[y][x]) for x in range(n) for y in range(n) if x != y)


def _sorted_opens(opens):
    return tuple(sorted(set(opens), key=lambda A: (len(A), sorted(A))))


def space(points, opens):
    X = FiniteSpace(tuple(points), _sorted_opens(frozenset(A) for A in opens))
    problems = X.validate()
    if problems:
        raise InvariantViolation("not a topology", problems[0])
    return X


def generate_topology(n, basis):
    """Smallest topology on n points containing the given sets."""
    opens = {frozenset(), frozenset(range(n))} | {frozenset(b) for b in basis}
    changed = True
    while changed:
        changed = False
        cur = list(opens)
        for A in cur:
            for B in cur:
                for C in (A | B, A & B):
                    if C not in opens:
                        opens.add(C)
                        changed = True
    return _sorted_opens(opens)


def topologies(n):
    """All topologies on n labeled points, by brute force over families of subsets."""
    subsets = [frozenset(i for i in range(n) if m >> i & 1) for m in range(1 << n)]
    inner = subsets[1:-1] if n > 0 else []
    points = tuple(f"p{i}" for i in range(n))
    out = []
    for bits in product((False, True), repeat=len(inner)):
        fam = {frozenset(), frozenset(range(n))} | {A for A, b in zip(inner, bits) if b}
        if all(A & B in fam and A | B in fam for A in fam for B in fam):
            out.append(FiniteSpace(points, _sorted_opens(fam)))
    return out


def space_to_vcat(X):
    return vcat.from_preorder(X.points, [list(r) for r in X.order()])


def vcat_to_space(C):
    """Alexandrov space of a boolean VCat: the opens are its down-sets."""
    n = len(C)
    opens = []
    for m in range(1 << n):
        A = frozenset(i for i in range(n) if m >> i & 1)
        if all(j in A for i in A for j in range(n) if vcat.le(C, j, i)):
            opens.append(A)
    return FiniteSpace(C.objects, _sorted_opens(opens))


def is_continuous(X, Y, f):
    opensX = set(X.opens)
    return all(frozenset(x for x in range(len(X)) if f[x] in V) in opensX for V in Y.opens)


def is_left_adjoint_map(leX, leY, g, f):
    """g ⊣ f for monotone g: Y → X, f: X → Y, i.e. g(y) ≤ x iff y ≤ f(x)."""
    return all(leX[g[y]][x] == leY[y][f[x]] for x in range(len(leX)) for y in range(len(leY)))


def left_adjoint_map(leX, leY, f):
    """g: Y → X with g ⊣ f: g(y) is the least x with y ≤ f(x), or None."""
    g = []
    for y in range(len(leY)):
        up = [x for x in range(len(leX)) if leY[y][f[x]]]
        least = [x for x in up if all(leX[x][u] for u in up)]
        if not least:
            return None
        g.append(least[0])
    return tuple(g) if is_left_adjoint_map(leX, leY, g, f) else None


def is_homeomorphism(X, Y, f):
    if len(X) != len(Y) or len(set(f)) != len(Y):
        return False
    inv = [0] * len(Y)
    for x, y in enumerate(f):
        inv[y] = x
    return is_continuous(X, Y, f) and is_continuous(Y, X, inv)


def homeomorphic(X, Y):
    from itertools import permutations
    if len(X) != len(Y) or len(X.opens) != len(Y.opens):
        return None
    for perm in permutations(range(len(Y))):
        if is_homeomorphism(X, Y, perm):
            return perm
    return None


# -- the filter space FL ---------------------------------------------------

@dataclass(frozen=True)
class FilterSpace:
    base: MeetSemilattice
    filters: tuple  # frozensets of element indices
    space: FiniteSpace
    sharp: tuple  # x^# as a frozenset of filter indices, per element x

    def principal(self, i):
        """The generator of the i-th filter (its meet) if the filter is ↑ of it."""
        L = self.base
        f = self.filters[i]
        g = L.meet_all(f)
        return g if L.up(g) == f else None


def is_filter(L, S):
    if L.top not in S:
        return False
    for x in S:
        if not L.up(x) <= S:
            return False
        for y in S:
            if L.meet(x, y) not in S:
                return False
    return True


def filters(L):
    n = len(L)
    out = []
    for m in range(1 << n):
        S = frozenset(i for i in range(n) if m >> i & 1)
        if is_filter(L, S):
            out.append(S)
    return out


def filter_space(L):
    fs = filters(L)
    sharp = tuple(frozenset(i for i, f in enumerate(fs) if x in f) for x in range(len(L)))
    labels = []
    for f in fs:
        g = L.meet_all(f)
        labels.append(f"up({L.elements[g]})" if L.up(g) == f else "{" + ",".join(L.elements[i] for i in sorted(f)) + "}")
    X = FiniteSpace(tuple(labels), generate_topology(len(fs), sharp))
    return FilterSpace(L, tuple(fs), X, sharp)


def is_meet_hom(L, M, f):
    n = len(L)
    return f[L.top] == M.top and all(f[L.meet(x, y)] == M.meet(f[x], f[y]) for x in range(n) for y in range(n))


def meet_homs(L, M):
    return [f for f in product(range(len(M)), repeat=len(L)) if is_meet_hom(L, M, f)]


def F_on_maps(f, FL, FM):
    """(Ff: FL → FM, f_!: FM → FL) for a meet-hom f: L → M."""
    L, M = FL.base, FM.base
    if not is_meet_hom(L, M, f):
        raise InvariantViolation("not a meet-semilattice homomorphism", tuple(f))
    posM = {g: i for i, g in enumerate(FM.filters)}
    posL = {g: i for i, g in enumerate(FL.filters)}
    Ff = []
    for fl in FL.filters:
        img = frozenset(u for x in fl for u in M.up(f[x]))
        Ff.append(posM[img])
    fshriek = []
    for g in FM.filters:
        fshriek.append(posL[frozenset(x for x in range(len(L)) if f[x] in g)])
    return tuple(Ff), tuple(fshriek)


def alpha_beta(FLs):
    """α(x) = x^#, and β on every open by the meet and by the join formula."""
    L, X = FLs.base, FLs.space
    n = len(L)
    alpha = FLs.sharp
    beta_meet, beta_join = {}, {}
    for A in X.opens:
        beta_meet[A] = L.meet_all(x for x in range(n) if A <= alpha[x])
        beta_join[A] = L.join_all(y for y in range(n) if alpha[y] <= A)
    return alpha, beta_meet, beta_join


def alpha_beta_report(FLs, report=None):
    rep = report or Report("alpha_beta")
    L, X = FLs.base, FLs.space
    n = len(L)
    alpha, bm, bj = alpha_beta(FLs)
    full = frozenset(range(len(X)))
    rep.check("1^# = FL", alpha[L.top] == full, lambda: L.elements[L.top])
    for x in range(n):
        for y in range(n):
            rep.check("x^# & y^# = (x^y)^#", alpha[x] & alpha[y] == alpha[L.meet(x, y)],
                      lambda: (L.elements[x], L.elements[y]))
            rep.check("alpha order-embedding", (alpha[x] <= alpha[y]) == L.le[x][y],
                      lambda: (L.elements[x], L.elements[y]))
    # all infima: every subset of L
    for m in range(1 << n):
        S = [i for i in range(n) if m >> i & 1]
        got = frozenset(range(len(X)))
        for s in S:
            got &= alpha[s]
        # the infimum of opens is the interior of the intersection
        interior = frozenset().union(*(U for U in X.opens if U <= got))
        rep.check("alpha preserves infima", interior == alpha[L.meet_all(S)], lambda: [L.elements[i] for i in S])
    for A in X.opens:
        rep.check("beta formulas agree", bm[A] == bj[A], lambda: sorted(A))
        for x in range(n):
            rep.check("beta -| alpha", L.le[bm[A]][x] == (A <= alpha[x]), lambda: (sorted(A), L.elements[x]))
    for x in range(n):
        rep.check("beta(x^#) = x", bm[alpha[x]] == x, lambda: L.elements[x])
    if L.is_frame():
        rep.check("beta preserves top", bm[full] == L.top, lambda: None)
        rep.check("beta preserves bottom", bm[frozenset()] == L.bottom, lambda: None)
        for A in X.opens:
            for B in X.opens:
                rep.check("beta preserves meets", bm[A & B] == L.meet(bm[A], bm[B]), lambda: (sorted(A), sorted(B)))
                rep.check("beta preserves joins", bm[A | B] == L.join(bm[A], bm[B]), lambda: (sorted(A), sorted(B)))
    return rep


# -- Λ, Pt, ρ, σ -----------------------------------------------------------

def phi_to_presheaf(phi, q=None):
    """φ: X → 2 as the boolean presheaf of its open part φ⁻¹(0)."""
    from .quantale import make_boolean
    q = q or make_boolean()
    return tuple(q.top if v == 0 else q.bottom for v in phi)


def continuous_maps(X):
    """𝒞(X): all φ: X → 2 with φ⁻¹(0) open."""
    n = len(X)
    out = []
    for phi in product((0, 1), repeat=n):
        if X.is_open(x for x in range(n) if phi[x] == 0):
            out.append(phi)
    return out


def right_adjoints_of(X, phi):
    """All g: 2 → X (as (g0, g1)) with φ(x) ≤ b iff x ≤ g(b)."""
    le = X.order()
    n = len(X)
    out = []
    for g in product(range(n), repeat=2):
        if all((phi[x] <= b) == le[x][g[b]] for x in range(n) for b in (0, 1)) and le[g[0]][g[1]]:
            out.append(g)
    return out


def lambda_maps(X):
    """Λ(X): continuous φ: X → 2 that are left adjoint for the underlying orders."""
    return [phi for phi in continuous_maps(X) if right_adjoints_of(X, phi)]


def lambda_pt(X):
    """(Λ(X), Pt(X)) with Pt(X) = Λ(X)^op as a MeetSemilattice."""
    lam = lambda_maps(X)
    k = len(lam)
    le_op = [[all(a >= b for a, b in zip(lam[i], lam[j])) for j in range(k)] for i in range(k)]
    labels = tuple("phi" + "".join(map(str, phi)) for phi in lam)
    return lam, MeetSemilattice(labels, tuple(tuple(r) for r in le_op))


def rho(FLs, lam=None):
    """ρ_L: x ↦ φ_x with φ_x(𝔣) = 0 iff x ∈ 𝔣, as indices into Λ(FL)."""
    lam = lam if lam is not None else lambda_maps(FLs.space)
    pos = {phi: i for i, phi in enumerate(lam)}
    out = []
    for x in range(len(FLs.base)):
        phi = tuple(0 if x in f else 1 for f in FLs.filters)
        out.append(pos.get(phi))
    return tuple(out)


def sigma(X, lam, FPt):
    """σ_X: x ↦ {φ ∈ Λ(X) | φ(x) = 0}, as indices into F Pt(X)."""
    pos = {f: i for i, f in enumerate(FPt.filters)}
    out = []
    for x in range(len(X)):
        S = frozenset(i for i, phi in enumerate(lam) if phi[x] == 0)
        out.append(pos.get(S))
    return tuple(out)


def is_cd_space(X):
    """T0 and completely distributive as a boolean VCat (ccd witness exists)."""
    if not X.is_t0() or len(X) == 0:
        return False
    return dist.ccd_witness(space_to_vcat(X)) is not None


def retraction(X, w, phi):
    """r(φ) = φ_L·t_X with φ_L(ψ) = max φ over the down-set ψ."""
    C = w.base
    q = C.quantale
    out = []
    for x in range(len(X)):
        tx = w.P.elements[w.t.map[x]]
        out.append(max((phi[z] for z in range(len(X)) if tx[z] == q.top), default=0))
    return tuple(out)


def lambda_report(X, report=None):
    """Λ(X) checks for a ccd space: the retraction r ⊢ i and the coframe law."""
    rep = report or Report("lambda")
    w = dist.ccd_witness(space_to_vcat(X))
    if w is None or not X.is_t0():
        rep.note("not completely distributive: retraction not applicable")
        return rep
    lam = lambda_maps(X)
    C = continuous_maps(X)
    lamset = set(lam)

    def ple(a, b):
        return all(u <= v for u, v in zip(a, b))

    for phi in C:
        r = retraction(X, w, phi)
        rep.check("r(phi) in Lambda", r in lamset, lambda: phi)
        rep.check("i.r <= 1", ple(r, phi), lambda: phi)
        for lmb in lam:
            rep.check("i -| r", ple(lmb, phi) == ple(lmb, r), lambda: (lmb, phi))
    for lmb in lam:
        rep.check("r.i = 1", retraction(X, w, lmb) == lmb, lambda: lmb)
    for a in C:
        for b in C:
            j = tuple(max(u, v) for u, v in zip(a, b))
            rep.check("r preserves binary joins", retraction(X, w, j) == tuple(
                max(u, v) for u, v in zip(retraction(X, w, a), retraction(X, w, b))), lambda: (a, b))
    zero = tuple(0 for _ in range(len(X)))
    rep.check("r preserves bottom", retraction(X, w, zero) == zero, lambda: None)
    _, Pt = lambda_pt(X)
    rep.check("Lambda is a coframe", Pt.is_frame(), lambda: lam)
    return rep


def rho_report(FLs, report=None):
    rep = report or Report("rho")
    L = FLs.base
    lam, Pt = lambda_pt(FLs.space)
    r = rho(FLs, lam)
    rep.check("rho lands in Lambda", all(i is not None for i in r), lambda: r)
    if any(i is None for i in r):
        return rep
    rep.check("rho bijective", sorted(r) == list(range(len(lam))), lambda: r)
    for x in range(len(L)):
        for y in range(len(L)):
            rep.check("rho order-isomorphism", L.le[x][y] == Pt.le[r[x]][r[y]], lambda: (L.elements[x], L.elements[y]))
    return rep


def sigma_report(X, report=None):
    rep = report or Report("sigma")
    if not is_cd_space(X):
        rep.note("sigma not applicable: space is not completely distributive")
        return rep
    lam, Pt = lambda_pt(X)
    FPt = filter_space(Pt)
    s = sigma(X, lam, FPt)
    rep.check("sigma lands in F Pt", all(i is not None for i in s), lambda: s)
    if all(i is not None for i in s):
        rep.check("sigma homeomorphism", is_homeomorphism(X, FPt.space, s), lambda: s)
        for i, phi in enumerate(lam):
            pre = frozenset(x for x in range(len(X)) if s[x] in FPt.sharp[i])
            rep.check("sigma^-1(phi^#) = phi^-1(0)", pre == frozenset(x for x in range(len(X)) if phi[x] == 0),
                      lambda: phi)
    return rep


def naturality_report(FL, FM, report=None):
    """For every meet-hom f: L → M: f_!⁻¹(x^#) = f(x)^#, f_! ⊣ Ff, ρ natural."""
    rep = report or Report("naturality")
    L, M = FL.base, FM.base
    leL, leM = FL.space.order(), FM.space.order()
    lamL, lamM = lambda_maps(FL.space), lambda_maps(FM.space)
    rL, rM = rho(FL, lamL), rho(FM, lamM)
    for f in meet_homs(L, M):
        Ff, fs = F_on_maps(f, FL, FM)
        for x in range(len(L)):
            pre = frozenset(g for g in range(len(FM.filters)) if fs[g] in FL.sharp[x])
            rep.check("f_!^-1(x^#) = f(x)^#", pre == FM.sharp[f[x]], lambda: (f, L.elements[x]))
            # ρ_M·f = Pt(Ff)·ρ_L, where Pt(Ff) precomposes with the left adjoint f_!
            rep.check("rho natural", tuple(lamL[rL[x]][fs[g]] for g in range(len(FM.filters))) == lamM[rM[f[x]]],
                      lambda: (f, L.elements[x]))
        rep.check("Ff continuous", is_continuous(FL.space, FM.space, Ff), lambda: f)
        rep.check("f_! continuous", is_continuous(FM.space, FL.space, fs), lambda: f)
        rep.check("f_! -| Ff", is_left_adjoint_map(leL, leM, fs, Ff), lambda: f)
    return rep


def sigma_naturality_report(X, Y, report=None):
    """F Pt(f)·σ_X = σ_Y·f for right adjoint continuous f: X → Y."""
    rep = report or Report("sigma naturality")
    leX, leY = X.order(), Y.order()
    lamX, PtX = lambda_pt(X)
    lamY, PtY = lambda_pt(Y)
    FX, FY = filter_space(PtX), filter_space(PtY)
    sX, sY = sigma(X, lamX, FX), sigma(Y, lamY, FY)
    posY = {phi: i for i, phi in enumerate(lamY)}
    for f in product(range(len(Y)), repeat=len(X)):
        if not is_continuous(X, Y, f):
            continue
        g = left_adjoint_map(leX, leY, f)
        if g is None:
            continue
        # Pt(f) = Λ(g)^op: φ ↦ φ·g
        ptf = tuple(posY[tuple(phi[g[y]] for y in range(len(Y)))] for phi in lamX)
        Ff, _ = F_on_maps(ptf, FX, FY)
        rep.check("sigma natural", all(Ff[sX[x]] == sY[f[x]] for x in range(len(X))), lambda: f)
    return rep


def frame_image_criterion(max_points, max_frame=6, report=None):
    """A space on ≤ max_points points is ≅ F(L) for a frame L iff it is ccd and T0."""
    rep = report or Report("frame image")
    images = [filter_space(L).space for L in frames(max_frame)]
    for n in range(max_points + 1):
        for X in topologies(n):
            hit = any(homeomorphic(X, Y) is not None for Y in images if len(Y) == n)
            rep.check("F-image iff ccd", hit == is_cd_space(X), lambda: (X.points, [sorted(A) for A in X.opens]))
    return rep


def frames_report(max_size=5, naturality_size=None):
    rep = Report("frames")
    fl = [(L, filter_space(L)) for L in frames(max_size)]
    for L, FLs in fl:
        for i in range(len(FLs.filters)):
            rep.check("every filter principal", FLs.principal(i) is not None, lambda: sorted(FLs.filters[i]))
        alpha_beta_report(FLs, rep)
        rho_report(FLs, rep)
        sigma_report(FLs.space, rep)
        lambda_report(FLs.space, rep)
    nat = [p for p in fl if len(p[0]) <= (naturality_size or max_size)]
    for _, FL in nat:
        for _, FM in nat:
            naturality_report(FL, FM, rep)
            sigma_naturality_report(FL.space, FM.space, rep)
    return rep

