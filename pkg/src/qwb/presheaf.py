"""Presheaf categories PX, the Yoneda embedding and the presheaf monad.

A presheaf on X is a module X⇸1, stored as a vector ψ with
ψ(x) ⊒ a(x, y) ⊗ ψ(y) for all x, y.
"""
import random

import numpy as np

from . import vcat
from .errors import CapExceeded
from .report import Report
from .vcat import VCat, VFunctor

DEFAULT_CAP = 10 ** 6
PPX_EXHAUSTIVE = 256  # associativity is quantified over all of PPPX up to this |PPX|


def is_presheaf(X, vec):
    q, a = X.quantale, X.hom
    n = len(X)
    return all(q.leq(q.tensor(a[x][y], vec[y]), vec[x]) for x in range(n) for y in range(n))


def presheaf_vectors(X, cap=DEFAULT_CAP, limit=None):
    """All presheaves on X in lexicographic index order.

    Backtracking assigns ψ(0), ψ(1), ... and prunes on the module law
    between assigned objects.  ``cap`` bounds the candidate space |V|^|X|;
    ``limit`` (optional) bounds the number of results.
    """
    q, a = X.quantale, X.hom
    n = len(X)
    if cap is not None and q.size ** n > cap:
        raise CapExceeded(f"{q.size}^{n} candidate presheaves exceed cap {cap}")
    le, T = q.leq_table, q.tensor_table
    out = []
    cur = [0] * n

    def rec(i):
        if i == n:
            out.append(tuple(cur))
            if limit is not None and len(out) > limit:
                raise CapExceeded(f"more than {limit} presheaves")
            return
        ai = a[i]
        for v in range(q.size):
            if not le[T[ai[i]][v]][v]:
                continue
            ok = True
            for j in range(i):
                if not (le[T[ai[j]][cur[j]]][v] and le[T[a[j][i]][v]][cur[j]]):
                    ok = False
                    break
            if ok:
                cur[i] = v
                rec(i + 1)

    rec(0)
    return out


def vec_hom(q, phi, psi):
    """[φ, ψ] = ⋀_x hom(φ(x), ψ(x))."""
    H, M = q.hom_table, q.meet_table
    acc = q.top
    for u, v in zip(phi, psi):
        acc = M[acc][H[u][v]]
    return acc


def vec_label(q, vec):
    return "<" + " ".join(q.label(v) for v in vec) + ">"


def precompose(q, vec, rel_m):
    """ψ·φ for ψ a vector on Y and φ: X⇸Y given by its matrix."""
    T, J, bot = q.tensor_table, q.join_table, q.bottom
    out = []
    for row in rel_m:
        acc = bot
        for r, v in zip(row, vec):
            acc = J[acc][T[r][v]]
        out.append(acc)
    return tuple(out)


def vec_join(q, u, v):
    return tuple(q.join(a, b) for a, b in zip(u, v))


def vec_leq(q, u, v):
    return all(q.leq(a, b) for a, b in zip(u, v))


def yoneda_vector(X, x):
    return tuple(row[x] for row in X.hom)


class PresheafCat:
    """PX: every presheaf on X, with hom [φ, ψ]."""

    def __init__(self, base, elements):
        self.base = base
        self.quantale = q = base.quantale
        self.elements = list(elements)
        self.index = {v: i for i, v in enumerate(self.elements)}
        self.cat = VCat(q, tuple(vec_label(q, v) for v in self.elements),
                        tuple(tuple(vec_hom(q, p, r) for r in self.elements) for p in self.elements))

    def __len__(self):
        return len(self.elements)

    def __contains__(self, vec):
        return tuple(vec) in self.index

    def hom(self, phi, psi):
        return vec_hom(self.quantale, phi, psi)

    def yoneda(self):
        X = self.base
        return VFunctor(X, self.cat, tuple(self.index[yoneda_vector(X, x)] for x in range(len(X))))

    @property
    def ystar(self):
        """Matrix of (y_X)_*: X⇸PX, entries [y x, p] = p(x)."""
        if getattr(self, "_ystar", None) is None:
            X = self.base
            self._ystar = tuple(tuple(self.hom(yoneda_vector(X, x), p) for p in self.elements)
                                for x in range(len(X)))
        return self._ystar

    def sub(self, keep):
        """PresheafCat-like restriction to the elements satisfying ``keep``."""
        return PresheafCat(self.base, [v for v in self.elements if keep(v)])


def build_presheaves(X, cap=DEFAULT_CAP):
    return PresheafCat(X, presheaf_vectors(X, cap))


def yoneda(P):
    return P.yoneda()


def companion_m(f):
    """Matrix of f_*: f_*(x, y) = b(f x, y)."""
    B = f.cod.hom
    return tuple(B[fx] for fx in f.map)


def conjoint_m(f):
    """Matrix of f^*: f^*(y, x) = b(y, f x)."""
    B = f.cod.hom
    return tuple(tuple(B[y][fx] for fx in f.map) for y in range(len(f.cod)))


def direct_image(f, vec):
    """Pf(φ) = φ·f^*."""
    return precompose(f.dom.quantale, vec, conjoint_m(f))


def inverse_image(f, vec):
    """ψ·f_*, which is ψ∘f pointwise."""
    return precompose(f.dom.quantale, vec, companion_m(f))


def right_image(f, vec):
    """φ◁f_*, the right adjoint of the inverse image."""
    q = f.dom.quantale
    B = f.cod.hom
    out = []
    for y in range(len(f.cod)):
        acc = q.top
        for x, fx in enumerate(f.map):
            acc = q.meet(acc, q.hom(B[fx][y], vec[x]))
        out.append(acc)
    return tuple(out)


def presheaf_functor(f, PX, PY):
    """(Pf: PX→PY, inverse image: PY→PX) as index-mapped V-functors."""
    pf = VFunctor(PX.cat, PY.cat, tuple(PY.index[direct_image(f, v)] for v in PX.elements))
    inv = VFunctor(PY.cat, PX.cat, tuple(PX.index[inverse_image(f, v)] for v in PY.elements))
    return pf, inv


def mult_vector(P, Psi):
    """m(Ψ) = Ψ·(y_X)_* for Ψ a presheaf on PX given as a vector over P.elements."""
    return precompose(P.quantale, Psi, P.ystar)


def mult_vectors(P, Psis):
    """mult_vector on every row of an N x |PX| array at once."""
    q = P.quantale
    T = np.array(q.tensor_table, dtype=np.int64)
    J = np.array(q.join_table, dtype=np.int64)
    Psis = np.asarray(Psis, dtype=np.int64).reshape(-1, len(P.elements))
    ys = np.array(P.ystar, dtype=np.int64).reshape(len(P.base), len(P.elements))
    out = np.full((len(Psis), len(ys)), q.bottom, dtype=np.int64)
    for i in range(ys.shape[1]):
        out = J[out, T[ys[:, i][None, :], Psis[:, i][:, None]]]
    return out


def mult_formula(P, Psi):
    """m(Ψ)(x) = ⋁_φ φ(x) ⊗ Ψ(φ), the pointwise form."""
    q = P.quantale
    return tuple(q.join_all(q.tensor(p[x], Psi[i]) for i, p in enumerate(P.elements))
                 for x in range(len(P.base)))


def monad_unit_mult(X, P=None, PP=None, cap=DEFAULT_CAP):
    """(y_X, m_X) with m_X: PPX→PX; PPX is built if not supplied."""
    P = P or build_presheaves(X, cap)
    PP = PP or build_presheaves(P.cat, cap)
    m = VFunctor(PP.cat, P.cat, tuple(P.index[mult_vector(P, Psi)] for Psi in PP.elements))
    return P.yoneda(), m


def generated_presheaves(P, rng=None, extra=0):
    """Presheaves on P.cat generated from Yoneda images and joins.

    Used in place of the full P(P.cat) when that is too large: the set holds
    y(p) and (P y)(p) for every p, their pairwise joins and, with an rng,
    ``extra`` random triple joins.
    """
    q = P.quantale
    PC = P.cat
    y = P.yoneda()
    found = set()
    for i in range(len(P)):
        found.add(yoneda_vector(PC, i))
        found.add(direct_image(y, P.elements[i]))
    base = sorted(found)
    if base:
        B = np.array(base, dtype=np.int64)
        J = np.array(q.join_table, dtype=np.int64)
        joins = J[B[:, None, :], B[None, :, :]].reshape(-1, B.shape[1])
        found.update(map(tuple, np.unique(joins, axis=0).tolist()))
    if rng is not None and base:
        pool = sorted(found)
        for _ in range(extra):
            a, b, c = rng.choice(pool), rng.choice(pool), rng.choice(pool)
            found.add(vec_join(q, vec_join(q, a, b), c))
    return sorted(found)


def presheaves_over(P, cap=DEFAULT_CAP, sampled=False, seed=0, limit=12, max_results=200000):
    """Presheaves on P.cat: exhaustive when feasible, else generated witnesses.

    Returns (vectors, exhaustive).  Enumeration is output-sensitive, so it is
    attempted whenever the result count stays under ``max_results``; for
    non-boolean quantales it is skipped once |P| exceeds ``limit``.
    """
    q = P.quantale
    feasible = q.size == 2 or len(P) <= limit
    if feasible and not sampled:
        try:
            return presheaf_vectors(P.cat, None, limit=min(max_results, cap)), True
        except CapExceeded:
            pass
    return generated_presheaves(P, random.Random(seed), extra=4 * len(P)), False


def kz_check(X, cap=DEFAULT_CAP, sampled=False, seed=0, search_algebras=True):
    """Kock-Zöberlein and monad-law checks for the presheaf monad on X.

    * P y_X ≤ y_PX pointwise;
    * m·y_P = 1 = m·P y on PX;
    * m·Pm = m·m_P on PPPX (exhaustive when PPX and PPPX are enumerable);
    * for every V-functor h: PX→X, h·y = 1 iff h is an algebra, and then h ⊣ y.
    """
    rep = Report("kz")
    q = X.quantale
    P = build_presheaves(X, cap)
    PC = P.cat
    y = P.yoneda()
    for i, phi in enumerate(P.elements):
        lhs = direct_image(y, phi)
        rhs = yoneda_vector(PC, i)
        rep.check("Py <= yP", q.leq(q.unit, vec_hom(q, lhs, rhs)), lambda: (phi, lhs, rhs))
        rep.check("m.yP = 1", mult_vector(P, rhs) == phi, lambda: phi)
        rep.check("m.Py = 1", mult_vector(P, lhs) == phi, lambda: phi)
    PPvecs, exhaustive = presheaves_over(P, cap, sampled, seed)
    for Psi in PPvecs:
        rep.check("m pointwise formula", mult_vector(P, Psi) == mult_formula(P, Psi), lambda: Psi)
    if exhaustive:
        PP = PresheafCat(PC, PPvecs)
        mP = VFunctor(PP.cat, PC, tuple(P.index[mult_vector(P, Psi)] for Psi in PP.elements))
        if len(PP) <= PPX_EXHAUSTIVE:
            Xis, exh3 = presheaves_over(PP, cap, sampled, seed)
        else:
            Xis, exh3 = generated_presheaves(PP, random.Random(seed), extra=4 * len(PP)), False
        for Xi in Xis:
            lhs = mult_vector(P, direct_image(mP, Xi))
            rhs = mult_vector(P, mult_vector(PP, Xi))
            rep.check("m.Pm = m.mP", lhs == rhs, lambda: Xi)
        if not exh3:
            rep.note("sampled: associativity checked on generated PPPX witnesses")
    else:
        rep.note("sampled: PPX not enumerable, associativity not evaluated; "
                 "PPX-level laws checked on generated witnesses")
    if search_algebras:
        algebra_checks(X, P, PPvecs, rep, exhaustive)
    return rep


def algebra_checks(X, P, PPvecs, rep, exhaustive=True):
    """Over all V-functors h: PX→X: h·y = 1 iff h is an algebra, and then h ⊣ y.

    Algebra means h·y = 1 and h·m = h·Ph; the second equation is read up to
    ≃ in X, which is exact when X is separated.
    """
    n = len(X)
    y = P.yoneda()
    mvals = [P.index[mult_vector(P, Psi)] for Psi in PPvecs]
    for h in vcat.all_functors(P.cat, X):
        retract = all(h.map[y.map[x]] == x for x in range(n))
        square = all(vcat.equivalent(X, h.map[mi], h.map[P.index[direct_image(h, Psi)]])
                     for Psi, mi in zip(PPvecs, mvals))
        algebra = retract and square
        rep.check("h.y = 1 iff algebra", retract == algebra, lambda: h.map)
        if retract:
            adj = all(X.hom[h.map[i]][x] == P.hom(p, yoneda_vector(X, x))
                      for i, p in enumerate(P.elements) for x in range(n))
            rep.check("algebra h is left adjoint to y", adj, lambda: h.map)
    if not exhaustive:
        rep.note("sampled: algebra square quantified over generated PPX witnesses")
