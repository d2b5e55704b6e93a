"""V-valued relations (matrices) between finite carriers.

Convention: for r: X⇸Y and s: Y⇸Z the composite is
(s·r)(x, z) = ⋁_y r(x, y) ⊗ s(y, z), computed by ``compose(r, s)``.
"""
from dataclasses import dataclass

from .errors import QuantaleMismatch, ShapeError


@dataclass(frozen=True)
class VRel:
    quantale: object
    dom: tuple
    cod: tuple
    m: tuple

    def __post_init__(self):
        if len(self.m) != len(self.dom) or any(len(row) != len(self.cod) for row in self.m):
            raise ShapeError(f"matrix is not {len(self.dom)}x{len(self.cod)}")

    def __call__(self, x, y):
        return self.m[x][y]

    @property
    def shape(self):
        return len(self.dom), len(self.cod)

    def labels(self):
        q = self.quantale
        return [[q.label(v) for v in row] for row in self.m]


def make(q, dom, cod, m):
    return VRel(q, tuple(dom), tuple(cod), tuple(tuple(row) for row in m))


def from_function(q, dom, cod, fn):
    """Relation with entries fn(i, j) over index pairs."""
    return VRel(q, tuple(dom), tuple(cod),
                tuple(tuple(fn(i, j) for j in range(len(cod))) for i in range(len(dom))))


def constant(q, dom, cod, value):
    return from_function(q, dom, cod, lambda i, j: value)


def bottom(q, dom, cod):
    return constant(q, dom, cod, q.bottom)


def identity(q, carrier):
    """k on the diagonal, ⊥ elsewhere."""
    return from_function(q, carrier, carrier, lambda i, j: q.unit if i == j else q.bottom)


def graph(q, dom, cod, fmap):
    """The relation of a function given as an index map."""
    return from_function(q, dom, cod, lambda i, j: q.unit if fmap[i] == j else q.bottom)


def _same_q(r, s):
    if r.quantale is not s.quantale:
        raise QuantaleMismatch(f"{r.quantale.name} vs {s.quantale.name}")


def compose(r, s):
    """s·r for r: X⇸Y and s: Y⇸Z."""
    _same_q(r, s)
    if len(r.cod) != len(s.dom):
        raise ShapeError(f"cannot compose {r.shape} with {s.shape}")
    q = r.quantale
    T, J, bot = q.tensor_table, q.join_table, q.bottom
    sm = s.m
    cols = range(len(s.cod))
    rows = []
    for rx in r.m:
        row = []
        for z in cols:
            acc = bot
            for y, v in enumerate(rx):
                acc = J[acc][T[v][sm[y][z]]]
            row.append(acc)
        rows.append(tuple(row))
    return VRel(q, r.dom, s.cod, tuple(rows))


def compose_all(*rels):
    """Compose in diagrammatic order: compose_all(r, s, t) = t·s·r."""
    out = rels[0]
    for nxt in rels[1:]:
        out = compose(out, nxt)
    return out


def opposite(r):
    return VRel(r.quantale, r.cod, r.dom, tuple(zip(*r.m)) if r.m else tuple(() for _ in r.cod))


def extend(psi, phi):
    """ψ◁φ: Y⇸Z for ψ: X⇸Z and φ: X⇸Y, the largest ρ with ρ·φ ⊑ ψ."""
    _same_q(psi, phi)
    if len(psi.dom) != len(phi.dom):
        raise ShapeError(f"extension needs equal domains, got {psi.shape} and {phi.shape}")
    q = psi.quantale
    H, M, top = q.hom_table, q.meet_table, q.top
    xs = range(len(psi.dom))
    rows = []
    for y in range(len(phi.cod)):
        row = []
        for z in range(len(psi.cod)):
            acc = top
            for x in xs:
                acc = M[acc][H[phi.m[x][y]][psi.m[x][z]]]
            row.append(acc)
        rows.append(tuple(row))
    return VRel(q, phi.cod, psi.cod, tuple(rows))


def lift(phi, psi):
    """φ▷ψ: X⇸Y for φ: Y⇸Z and ψ: X⇸Z, the largest ρ with φ·ρ ⊑ ψ."""
    _same_q(psi, phi)
    if len(psi.cod) != len(phi.cod):
        raise ShapeError(f"lifting needs equal codomains, got {phi.shape} and {psi.shape}")
    q = psi.quantale
    H, M, top = q.hom_table, q.meet_table, q.top
    zs = range(len(psi.cod))
    rows = []
    for x in range(len(psi.dom)):
        row = []
        for y in range(len(phi.dom)):
            acc = top
            for z in zs:
                acc = M[acc][H[phi.m[y][z]][psi.m[x][z]]]
            row.append(acc)
        rows.append(tuple(row))
    return VRel(q, psi.dom, phi.dom, tuple(rows))


def _check_same_shape(r, s):
    _same_q(r, s)
    if r.shape != s.shape:
        raise ShapeError(f"{r.shape} vs {s.shape}")


def leq(r, s):
    """Pointwise r ⊑ s."""
    _check_same_shape(r, s)
    le = r.quantale.leq_table
    return all(le[a][b] for ra, sa in zip(r.m, s.m) for a, b in zip(ra, sa))


def join(r, s):
    _check_same_shape(r, s)
    J = r.quantale.join_table
    return VRel(r.quantale, r.dom, r.cod,
                tuple(tuple(J[a][b] for a, b in zip(ra, sa)) for ra, sa in zip(r.m, s.m)))


def meet(r, s):
    _check_same_shape(r, s)
    M = r.quantale.meet_table
    return VRel(r.quantale, r.dom, r.cod,
                tuple(tuple(M[a][b] for a, b in zip(ra, sa)) for ra, sa in zip(r.m, s.m)))


def row_vector(r, x):
    return r.m[x]


def column(r, y):
    return tuple(row[y] for row in r.m)


def as_column(q, dom, vec, cod=("*",)):
    """A vector on X as a relation X⇸1."""
    return VRel(q, tuple(dom), tuple(cod), tuple((v,) for v in vec))


def as_row(q, cod, vec, dom=("*",)):
    """A vector on X as a relation 1⇸X."""
    return VRel(q, tuple(dom), tuple(cod), (tuple(vec),))
