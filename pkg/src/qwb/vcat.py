"""Finite V-categories and V-functors."""
from dataclasses import dataclass
from itertools import product

from . import vrel
from .errors import QuantaleMismatch, ShapeError
from .quantale import make_boolean


@dataclass(frozen=True)
class VCat:
    quantale: object
    objects: tuple
    hom: tuple  # hom[x][y] = a(x, y), quantale indices

    def __len__(self):
        return len(self.objects)

    def a(self, x, y):
        return self.hom[x][y]

    @property
    def rel(self):
        """The structure matrix as a relation X⇸X."""
        return vrel.VRel(self.quantale, self.objects, self.objects, self.hom)

    def index(self, label):
        return self.objects.index(label)


@dataclass(frozen=True)
class VFunctor:
    dom: VCat
    cod: VCat
    map: tuple  # object indices in cod

    def __call__(self, x):
        return self.map[x]


def make(q, objects, hom):
    return VCat(q, tuple(objects), tuple(tuple(r) for r in hom))


def from_rel(r):
    return VCat(r.quantale, r.dom, r.m)


def discrete(q, objects):
    return from_rel(vrel.identity(q, tuple(objects)))


def unit_cat(q):
    """The one-object V-category with hom k."""
    return VCat(q, ("*",), ((q.unit,),))


def empty(q):
    return VCat(q, (), ())


def from_preorder(objects, le, q=None):
    """Boolean V-category of a preorder given by a predicate or a matrix."""
    q = q or make_boolean()
    n = len(objects)
    get = le if callable(le) else (lambda i, j: le[i][j])
    return VCat(q, tuple(objects),
                tuple(tuple(q.top if get(i, j) else q.bottom for j in range(n)) for i in range(n)))


def validate(X):
    """Report reflexivity and transitivity violations (first witness each)."""
    q, a, n = X.quantale, X.hom, len(X)
    out = []
    for x in range(n):
        if not q.leq(q.unit, a[x][x]):
            out.append(f"reflexivity fails at {X.objects[x]}")
            break
    for x, y, z in product(range(n), repeat=3):
        if not q.leq(q.tensor(a[x][y], a[y][z]), a[x][z]):
            out.append(f"transitivity fails at ({X.objects[x]}, {X.objects[y]}, {X.objects[z]})")
            break
    return out


def is_valid(X):
    return not validate(X)


def op(X):
    n = len(X)
    return VCat(X.quantale, X.objects, tuple(tuple(X.hom[j][i] for j in range(n)) for i in range(n)))


def tensor(X, Y):
    if X.quantale is not Y.quantale:
        raise QuantaleMismatch("tensor of categories over different quantales")
    q = X.quantale
    pairs = [(x, y) for x in range(len(X)) for y in range(len(Y))]
    objs = tuple(f"({X.objects[x]},{Y.objects[y]})" for x, y in pairs)
    hom = tuple(tuple(q.tensor(X.hom[x][x2], Y.hom[y][y2]) for x2, y2 in pairs) for x, y in pairs)
    return VCat(q, objs, hom)


def le(X, x, y):
    """x ≤ y in the underlying order, i.e. k ⊑ a(x, y)."""
    q = X.quantale
    return q.leq(q.unit, X.hom[x][y])


def underlying_order(X):
    n = len(X)
    return from_preorder(X.objects, lambda i, j: le(X, i, j))


def equivalent(X, x, y):
    return le(X, x, y) and le(X, y, x)


def is_separated(X):
    n = len(X)
    return all(not equivalent(X, x, y) for x in range(n) for y in range(x + 1, n))


def separated_quotient(X):
    """Quotient by ≃; classes are represented by their first member.

    Returns (quotient, projection functor).
    """
    n = len(X)
    rep = list(range(n))
    reps = []
    for x in range(n):
        for r in reps:
            if equivalent(X, x, r):
                rep[x] = r
                break
        else:
            reps.append(x)
    pos = {r: i for i, r in enumerate(reps)}
    Q = VCat(X.quantale, tuple(X.objects[r] for r in reps),
             tuple(tuple(X.hom[r][s] for s in reps) for r in reps))
    return Q, VFunctor(X, Q, tuple(pos[rep[x]] for x in range(n)))


def full_sub(X, idxs):
    """Full sub-V-category on the given object indices."""
    idxs = tuple(idxs)
    return VCat(X.quantale, tuple(X.objects[i] for i in idxs),
                tuple(tuple(X.hom[i][j] for j in idxs) for i in idxs))


def validate_functor(f):
    q, A, B = f.dom.quantale, f.dom.hom, f.cod.hom
    n = len(f.dom)
    if len(f.map) != n:
        return ["map is not total"]
    for x, y in product(range(n), repeat=2):
        if not q.leq(A[x][y], B[f.map[x]][f.map[y]]):
            return [f"contraction fails at ({f.dom.objects[x]}, {f.dom.objects[y]})"]
    return []


def is_functor(f):
    return not validate_functor(f)


def identity_functor(X):
    return VFunctor(X, X, tuple(range(len(X))))


def compose_functors(f, g):
    """g∘f."""
    if len(f.cod) != len(g.dom):
        raise ShapeError("functors not composable")
    return VFunctor(f.dom, g.cod, tuple(g.map[v] for v in f.map))


def all_functors(X, Y):
    """Every V-functor X→Y, by brute force over |Y|^|X| maps with pruning."""
    q, A, B = X.quantale, X.hom, Y.hom
    n, m = len(X), len(Y)
    out = []
    cur = []

    def rec(i):
        if i == n:
            out.append(VFunctor(X, Y, tuple(cur)))
            return
        for v in range(m):
            ok = q.leq(A[i][i], B[v][v])
            j = 0
            while ok and j < i:
                ok = q.leq(A[i][j], B[v][cur[j]]) and q.leq(A[j][i], B[cur[j]][v])
                j += 1
            if ok:
                cur.append(v)
                rec(i + 1)
                cur.pop()

    rec(0)
    return out


def functor_leq(f, g):
    """f ≤ g pointwise: k ⊑ b(f x, g x) for all x."""
    return all(le(f.cod, fx, gx) for fx, gx in zip(f.map, g.map))


def is_iso(f):
    """f is bijective on objects and fully faithful."""
    n = len(f.dom)
    if n != len(f.cod) or len(set(f.map)) != n:
        return False
    A, B = f.dom.hom, f.cod.hom
    return all(A[x][y] == B[f.map[x]][f.map[y]] for x in range(n) for y in range(n))


def is_fully_faithful(f):
    A, B = f.dom.hom, f.cod.hom
    n = len(f.dom)
    return all(A[x][y] == B[f.map[x]][f.map[y]] for x in range(n) for y in range(n))
