"""Modules (distributors) between V-categories."""
from dataclasses import dataclass
from itertools import product

from . import presheaf as ps
from . import vcat, vrel
from .errors import InvariantViolation, ShapeError
from .vcat import VCat, VFunctor


@dataclass(frozen=True)
class VModule:
    dom: VCat
    cod: VCat
    rel: vrel.VRel

    @property
    def m(self):
        return self.rel.m

    def __call__(self, x, y):
        return self.rel.m[x][y]

    def then(self, other):
        """Diagrammatic composite: other·self."""
        return compose(self, other)


def module_violation(X, Y, r):
    """First pair/triple breaking the module laws, or None."""
    if r.shape != (len(X), len(Y)):
        raise ShapeError(f"relation shape {r.shape} does not match {len(X)}x{len(Y)}")
    q = X.quantale
    a, b, m = X.hom, Y.hom, r.m
    for x, x2, y in product(range(len(X)), range(len(X)), range(len(Y))):
        if not q.leq(q.tensor(a[x][x2], m[x2][y]), m[x][y]):
            return ("left", X.objects[x], X.objects[x2], Y.objects[y])
    for x, y, y2 in product(range(len(X)), range(len(Y)), range(len(Y))):
        if not q.leq(q.tensor(m[x][y], b[y][y2]), m[x][y2]):
            return ("right", X.objects[x], Y.objects[y], Y.objects[y2])
    return None


def is_module(X, Y, r):
    """φ·a = φ and b·φ = φ, as exact table equalities."""
    if r.shape != (len(X), len(Y)):
        raise ShapeError(f"relation shape {r.shape} does not match {len(X)}x{len(Y)}")
    return vrel.compose(X.rel, r) == r and vrel.compose(r, Y.rel) == r


def module(X, Y, r):
    if not is_module(X, Y, r):
        raise InvariantViolation("module law fails", module_violation(X, Y, r))
    return VModule(X, Y, r)


def rel_of(X, Y, m):
    return vrel.VRel(X.quantale, X.objects, Y.objects, tuple(tuple(row) for row in m))


def identity(X):
    return VModule(X, X, X.rel)


def compose(phi, psi):
    """ψ·φ for φ: X⇸Y, ψ: Y⇸Z."""
    if len(phi.cod) != len(psi.dom):
        raise ShapeError("modules not composable")
    return VModule(phi.dom, psi.cod, vrel.compose(phi.rel, psi.rel))


def leq(phi, psi):
    return vrel.leq(phi.rel, psi.rel)


def opposite_cat_module(phi):
    """φ° as a module Y^op⇸X^op."""
    return VModule(vcat.op(phi.cod), vcat.op(phi.dom), vrel.opposite(phi.rel))


def companion(f):
    """f_*: X⇸Y with f_*(x, y) = b(f x, y)."""
    return VModule(f.dom, f.cod, rel_of(f.dom, f.cod, ps.companion_m(f)))


def conjoint(f):
    """f^*: Y⇸X with f^*(y, x) = b(y, f x)."""
    return VModule(f.cod, f.dom, rel_of(f.cod, f.dom, ps.conjoint_m(f)))


def check_adjunction(phi, psi):
    """φ ⊣ ψ for φ: X⇸Y, ψ: Y⇸X, i.e. a ⊑ ψ·φ and φ·ψ ⊑ b."""
    if len(phi.dom) != len(psi.cod) or len(phi.cod) != len(psi.dom):
        raise ShapeError("adjunction needs φ: X⇸Y and ψ: Y⇸X")
    X, Y = phi.dom, phi.cod
    return (vrel.leq(X.rel, vrel.compose(phi.rel, psi.rel))
            and vrel.leq(vrel.compose(psi.rel, phi.rel), Y.rel))


def _represent_column(X, col):
    """An x with a(−, x) = col, or None."""
    for x in range(len(X)):
        if all(X.hom[z][x] == col[z] for z in range(len(X))):
            return x
    return None


def _represent_row(X, row):
    """An x with a(x, −) = row, or None."""
    for x in range(len(X)):
        if X.hom[x] == tuple(row):
            return x
    return None


def functor_adjoint(f):
    """Right adjoint g: Y→X of f (f_* = g^*), via representability of columns."""
    X, Y = f.dom, f.cod
    B = Y.hom
    gmap = []
    for y in range(len(Y)):
        col = tuple(B[fx][y] for fx in f.map)
        x = _represent_column(X, col)
        if x is None:
            return None
        gmap.append(x)
    g = VFunctor(Y, X, tuple(gmap))
    return g if vcat.is_functor(g) else None


def functor_adjoint_bruteforce(f):
    """All right adjoints of f found by scanning every map Y→X."""
    X, Y = f.dom, f.cod
    fs = companion(f).rel
    out = []
    for cand in product(range(len(X)), repeat=len(Y)):
        g = VFunctor(Y, X, cand)
        if vcat.is_functor(g) and conjoint(g).rel == fs:
            out.append(g)
    return out


def is_adjoint_pair(f, g):
    """f ⊣ g, read pointwise as b(f x, y) = a(x, g y)."""
    X, Y = f.dom, f.cod
    return all(Y.hom[f.map[x]][y] == X.hom[x][g.map[y]] for x in range(len(X)) for y in range(len(Y)))


def weighted_colimit(h, psi):
    """f: B→X with f_* = h_*◁ψ, for h: A→X and ψ: A⇸B, or None."""
    X = h.cod
    ext = vrel.extend(rel_of(h.dom, X, ps.companion_m(h)), psi.rel)  # B⇸X
    fmap = []
    for b in range(len(psi.cod)):
        x = _represent_row(X, ext.m[b])
        if x is None:
            return None
        fmap.append(x)
    f = VFunctor(psi.cod, X, tuple(fmap))
    return f if vcat.is_functor(f) else None


def mate(phi, P=None):
    """mate(φ): Y→PX with mate(φ)(y)(x) = φ(x, y)."""
    X, Y = phi.dom, phi.cod
    P = P or ps.build_presheaves(X)
    cols = [tuple(row[y] for row in phi.m) for y in range(len(Y))]
    return VFunctor(Y, P.cat, tuple(P.index[c] for c in cols))


def module_of_presheaf_functor(f, P):
    """The module X⇸Y whose mate is f: Y→PX."""
    X, Y = P.base, f.dom
    return VModule(X, Y, rel_of(X, Y, tuple(tuple(P.elements[f.map[y]][x] for y in range(len(Y)))
                                             for x in range(len(X)))))


def covariant_presheaves(X, cap=ps.DEFAULT_CAP):
    """All modules 1⇸X, as vectors (presheaves on X^op)."""
    return ps.presheaf_vectors(vcat.op(X), cap)


def all_modules(X, Y, cap=ps.DEFAULT_CAP):
    """Every module X⇸Y: presheaves on X ⊗ Y^op, reshaped."""
    Z = vcat.tensor(X, vcat.op(Y))
    nY = len(Y)
    out = []
    for v in ps.presheaf_vectors(Z, cap):
        out.append(VModule(X, Y, rel_of(X, Y, [v[i * nY:(i + 1) * nY] for i in range(len(X))])))
    return out


def left_adjoint_partners(X, psi, covs=None):
    """Covariant presheaves φ: 1⇸X with φ ⊣ ψ for ψ: X⇸1."""
    q = X.quantale
    covs = covariant_presheaves(X) if covs is None else covs
    n = len(X)
    out = []
    for phi in covs:
        unit = q.leq(q.unit, q.join_all(q.tensor(phi[x], psi[x]) for x in range(n)))
        counit = all(q.leq(q.tensor(psi[x], phi[y]), X.hom[x][y]) for x in range(n) for y in range(n))
        if unit and counit:
            out.append(phi)
    return out


def right_adjoint_presheaves(X, P=None, cap=ps.DEFAULT_CAP):
    """tilde X: the presheaves admitting a left adjoint, as a sub-PresheafCat."""
    P = P or ps.build_presheaves(X, cap)
    covs = covariant_presheaves(X, cap)
    return P.sub(lambda v: bool(left_adjoint_partners(X, v, covs)))


def representable_adjoint_report(X, P=None):
    """Counts of right-adjoint presheaves and how many are representable."""
    tilde = right_adjoint_presheaves(X, P)
    reps = {ps.yoneda_vector(X, x) for x in range(len(X))}
    return len(tilde), sum(1 for v in tilde.elements if v in reps)
