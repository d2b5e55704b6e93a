"""Cocompleteness, complete distributivity and the dual adjunction D ⊣ S."""
from dataclasses import dataclass

import numpy as np

from . import presheaf as ps
from . import vcat, vmod
from .presheaf import PresheafCat, yoneda_vector
from .vcat import VCat, VFunctor


def sup_row(X, psi):
    """(a◁ψ)(z) = ⋀_x hom(ψ(x), a(x, z)): the row a supremum must have."""
    q = X.quantale
    n = len(X)
    return tuple(q.meet_all(q.hom(psi[x], X.hom[x][z]) for x in range(n)) for z in range(n))


def supremum(X, psi):
    """x₀ with a(x₀, −) = a◁ψ, or None (first such x₀ if X is not separated)."""
    row = sup_row(X, psi)
    for x in range(len(X)):
        if X.hom[x] == row:
            return x
    return None


def suprema(X, Psis):
    """Batched supremum: index per row of ``Psis`` (an N x n array), -1 if none."""
    q = X.quantale
    n = len(X)
    Psis = np.asarray(Psis, dtype=np.int64).reshape(-1, n)
    H = np.array(q.hom_table, dtype=np.int64)
    M = np.array(q.meet_table, dtype=np.int64)
    A = np.array(X.hom, dtype=np.int64).reshape(n, n)
    rows = np.full((len(Psis), n), q.top, dtype=np.int64)
    for x in range(n):
        rows = M[rows, H[Psis[:, x][:, None], A[x][None, :]]]
    where = {}
    for x in range(n - 1, -1, -1):
        where[tuple(X.hom[x])] = x
    return np.array([where.get(tuple(r), -1) for r in rows.tolist()], dtype=np.int64)


def is_cocomplete(X, P=None):
    """The supremum map PX→X, left adjoint of y_X, or None."""
    P = P or ps.build_presheaves(X)
    smap = []
    for v in P.elements:
        s = supremum(X, v)
        if s is None:
            return None
        smap.append(s)
    sup = VFunctor(P.cat, X, tuple(smap))
    if not vcat.is_functor(sup):
        return None
    return sup


def is_complete_lattice(X):
    """Direct oracle for boolean X: every subset has a least upper bound."""
    n = len(X)
    le = [[vcat.le(X, i, j) for j in range(n)] for i in range(n)]
    if n == 0:
        return False
    for mask in range(1 << n):
        S = [i for i in range(n) if mask >> i & 1]
        ub = [u for u in range(n) if all(le[s][u] for s in S)]
        if not any(all(le[u][v] for v in ub) for u in ub):
            return False
    return True


@dataclass
class CcdWitness:
    base: VCat
    P: PresheafCat
    sup: VFunctor
    t: VFunctor

    @property
    def theta(self):
        """θ(x, y) = t(y)(x), the totally-below module."""
        X, P = self.base, self.P
        n = len(X)
        return vmod.VModule(X, X, vmod.rel_of(X, X, tuple(
            tuple(P.elements[self.t.map[y]][x] for y in range(n)) for x in range(n))))


def t_vector(X, P, sup, y):
    """t(y)(x) = ⋀_{ψ∈PX} hom(a(y, sup ψ), ψ(x))."""
    q = X.quantale
    out = []
    for x in range(len(X)):
        out.append(q.meet_all(q.hom(X.hom[y][sup.map[i]], v[x]) for i, v in enumerate(P.elements)))
    return tuple(out)


def ccd_witness(X, P=None):
    """Left adjoint t of Sup, verified exactly, or None."""
    P = P or ps.build_presheaves(X)
    sup = is_cocomplete(X, P)
    if sup is None:
        return None
    tmap = []
    for y in range(len(X)):
        v = t_vector(X, P, sup, y)
        if v not in P.index:
            return None
        tmap.append(P.index[v])
    t = VFunctor(X, P.cat, tuple(tmap))
    if not vcat.is_functor(t):
        return None
    # t ⊣ sup: [t(y), ψ] = a(y, sup ψ)
    for y in range(len(X)):
        ty = P.elements[tmap[y]]
        for i, v in enumerate(P.elements):
            if P.hom(ty, v) != X.hom[y][sup.map[i]]:
                return None
    return CcdWitness(X, P, sup, t)


def totally_below_oracle(X):
    """Boolean brute force: a ⋘ b iff a ∈ S for every down-set S with b ≤ ⋁S.

    Returns a matrix th[a][b] of booleans, or None if some down-set has no join.
    """
    n = len(X)
    le = [[vcat.le(X, i, j) for j in range(n)] for i in range(n)]
    downs = []
    for mask in range(1 << n):
        S = {i for i in range(n) if mask >> i & 1}
        if all(j in S for i in S for j in range(n) if le[j][i]):
            downs.append(S)
    joins = []
    for S in downs:
        ub = [u for u in range(n) if all(le[s][u] for s in S)]
        least = [u for u in ub if all(le[u][v] for v in ub)]
        if not least:
            return None
        joins.append(least[0])
    return [[all(a in S for S, j in zip(downs, joins) if le[b][j]) for b in range(n)] for a in range(n)]


def is_distributive_lattice(X):
    """Direct oracle: X is a lattice satisfying x∧(y∨z) = (x∧y)∨(x∧z)."""
    n = len(X)
    if n == 0 or not vcat.is_separated(X):
        return False
    le = [[vcat.le(X, i, j) for j in range(n)] for i in range(n)]

    def lub(i, j):
        ub = [u for u in range(n) if le[i][u] and le[j][u]]
        c = [u for u in ub if all(le[u][v] for v in ub)]
        return c[0] if c else None

    def glb(i, j):
        lb = [u for u in range(n) if le[u][i] and le[u][j]]
        c = [u for u in lb if all(le[v][u] for v in lb)]
        return c[0] if c else None

    J = [[lub(i, j) for j in range(n)] for i in range(n)]
    M = [[glb(i, j) for j in range(n)] for i in range(n)]
    if any(v is None for row in J + M for v in row):
        return False
    return all(M[x][J[y][z]] == J[M[x][y]][M[x][z]]
               for x in range(n) for y in range(n) for z in range(n))


# -- the dual adjunction D ⊣ S -------------------------------------------

def totally_compact(w):
    """Indices x with t(x) = y(x): the equaliser SL."""
    X = w.base
    return [x for x in range(len(X)) if w.P.elements[w.t.map[x]] == yoneda_vector(X, x)]


def ccd_obstruction(X, P=None):
    """First reason ccd_witness fails, as text; None if X is ccd."""
    P = P or ps.build_presheaves(X)
    q = X.quantale
    for v in P.elements:
        if supremum(X, v) is None:
            return f"no supremum for presheaf {ps.vec_label(q, v)}"
    sup = is_cocomplete(X, P)
    if sup is None:
        return "Sup is not a V-functor"
    for y in range(len(X)):
        v = t_vector(X, P, sup, y)
        if v not in P.index:
            return f"t({X.objects[y]}) = {ps.vec_label(q, v)} is not a presheaf"
    w = ccd_witness(X, P)
    if w is None:
        return "t is not left adjoint to Sup"
    return None


def S_object(w):
    """(SL, inclusion index list)."""
    idx = totally_compact(w)
    return vcat.full_sub(w.base, idx), idx


def D_object(X, cap=ps.DEFAULT_CAP):
    return ps.build_presheaves(X, cap)


def D_map(f, PX, PY):
    """Df = −·f_*: PY→PX."""
    return ps.presheaf_functor(f, PX, PY)[1]


def eta(X, P=None, w=None):
    """η_X: X → S(PX), the corestricted Yoneda embedding.

    Returns (η, w, idx) where w is the ccd witness of PX and idx the
    inclusion of S(PX) into PX.
    """
    P = P or ps.build_presheaves(X)
    w = w or ccd_witness(P.cat)
    SP, idx = S_object(w)
    pos = {p: i for i, p in enumerate(idx)}
    y = P.yoneda()
    if any(v not in pos for v in y.map):
        return None, w, idx
    return VFunctor(X, SP, tuple(pos[v] for v in y.map)), w, idx


def eps_vector(L, idx, x):
    """ε_L(x): the restriction of x^* to SL."""
    return tuple(L.hom[i][x] for i in idx)


def eps(w, PS=None):
    """ε_L: L → P(SL), x ↦ x^*·i_*."""
    L = w.base
    SL, idx = S_object(w)
    PS = PS or ps.build_presheaves(SL)
    return VFunctor(L, PS.cat, tuple(PS.index[eps_vector(L, idx, x)] for x in range(len(L)))), SL, idx, PS


def eps_left_adjoint(w, psi, idx):
    """c(ψ) = Sup_L(ψ·i^*) for ψ ∈ P(SL)."""
    L = w.base
    q = L.quantale
    # i^*: L⇸SL, i^*(z, s) = a(z, i s)
    istar = tuple(tuple(L.hom[z][i] for i in idx) for z in range(len(L)))
    vec = ps.precompose(q, psi, istar)
    return w.sup.map[w.P.index[vec]]


def S_map(f, wL, wM):
    """Sf: SM→SL, the restriction of the left adjoint g of f: L→M."""
    # left adjoint of f: g with g ⊣ f
    L, M = f.dom, f.cod
    gmap = []
    for m_ in range(len(M)):
        # g(m) represents the row z ↦ a_M(m, f z)
        row = tuple(M.hom[m_][f.map[z]] for z in range(len(L)))
        g = next((x for x in range(len(L)) if L.hom[x] == row), None)
        if g is None:
            return None
        gmap.append(g)
    SL, iL = S_object(wL)
    SM, iM = S_object(wM)
    posL = {v: i for i, v in enumerate(iL)}
    out = []
    for s in iM:
        if gmap[s] not in posL:
            return None
        out.append(posL[gmap[s]])
    return VFunctor(SM, SL, tuple(out))


def is_totally_algebraic(w):
    """Sup(x^*·i_*·i^*) ≅ x for every x."""
    L = w.base
    q = L.quantale
    idx = totally_compact(w)
    for x in range(len(L)):
        vec = tuple(q.join_all(q.tensor(L.hom[z][i], L.hom[i][x]) for i in idx) for z in range(len(L)))
        s = w.sup.map[w.P.index[vec]]
        if not vcat.equivalent(L, s, x):
            return False
    return True


def first_triangle(w):
    """S(ε_L)·η_{SL} = 1 on SL, for L with ccd witness w."""
    e, SL, idx, PS = eps(w)
    wPS = ccd_witness(PS.cat)
    if wPS is None:
        return False
    et, _, _ = eta(SL, PS, wPS)
    Se = S_map(e, w, wPS)
    if et is None or Se is None:
        return False
    return vcat.compose_functors(et, Se).map == tuple(range(len(SL)))


def second_triangle(X, P=None, wP=None):
    """D(η_X)·ε_{DX} = 1 on DX = PX."""
    P = P or ps.build_presheaves(X)
    wP = wP or ccd_witness(P.cat)
    _, idx = S_object(wP)
    et, _, _ = eta(X, P, wP)
    if et is None:
        return False
    return all(ps.inverse_image(et, eps_vector(P.cat, idx, j)) == psi for j, psi in enumerate(P.elements))


def triangle_identities(X, P=None):
    """(first identity on L = PX, second identity on DX = PX)."""
    P = P or ps.build_presheaves(X)
    wP = ccd_witness(P.cat)
    return first_triangle(wP), second_triangle(X, P, wP)


def tensor_action(X, x, u, P=None, sup=None):
    """x⊕u = Sup(a(−, x) ⊗ u)."""
    q = X.quantale
    vec = tuple(q.tensor(X.hom[z][x], u) for z in range(len(X)))
    if sup is not None and P is not None:
        return sup.map[P.index[vec]]
    s = supremum(X, vec)
    assert s is not None, "tensor action needs a cocomplete V-category"
    return s


def equaliser_lemma(X, P=None, covs=None):
    """Pairs (in equaliser of Py and y_P, has a left adjoint) for each ψ ∈ PX."""
    P = P or ps.build_presheaves(X)
    y = P.yoneda()
    covs = vmod.covariant_presheaves(X) if covs is None else covs
    out = []
    for i, psi in enumerate(P.elements):
        eq = ps.direct_image(y, psi) == yoneda_vector(P.cat, i)
        out.append((eq, bool(vmod.left_adjoint_partners(X, psi, covs))))
    return out
