"""Enumeration of small instances: V-categories, posets, lattices."""
from dataclasses import dataclass, field
from itertools import permutations, product

from . import vcat
from .errors import CapExceeded
from .quantale import make_boolean
from .vcat import VCat


def object_names(n):
    return tuple(f"x{i}" for i in range(n))


def enumerate_vcats(q, n, cap=10 ** 7):
    """All labeled V-categories on n objects, by backtracking over the matrix.

    Diagonal entries range over values v with k ⊑ v and v ⊗ v ⊑ v;
    transitivity is enforced on every fully assigned triple.  Raises
    CapExceeded once more than ``cap`` structures have been produced.
    """
    le, T = q.leq_table, q.tensor_table
    diag_vals = [v for v in range(q.size) if le[q.unit][v] and le[T[v][v]][v]]
    names = object_names(n)
    a = [[None] * n for _ in range(n)]
    out = []
    # order: fill the matrix object by object so triples close early
    order = []
    for k in range(n):
        for i in range(k + 1):
            for j in range(k + 1):
                if max(i, j) == k:
                    order.append((i, j))

    def consistent(i, j):
        # every triple touching cell (i, j) whose three cells are assigned
        for x, y, z in _triples_with(i, j, n):
            axy, ayz, axz = a[x][y], a[y][z], a[x][z]
            if axy is None or ayz is None or axz is None:
                continue
            if not le[T[axy][ayz]][axz]:
                return False
        return True

    def rec(p):
        if p == len(order):
            if len(out) >= cap:
                raise CapExceeded(f"more than {cap} V-categories on {n} objects over {q.name}")
            out.append(VCat(q, names, tuple(tuple(r) for r in a)))
            return
        i, j = order[p]
        for v in (diag_vals if i == j else range(q.size)):
            a[i][j] = v
            if consistent(i, j):
                rec(p + 1)
        a[i][j] = None

    rec(0)
    return out


def _triples_with(i, j, n):
    for y in range(n):
        yield i, y, j  # (i,j) as the composite
    for z in range(n):
        yield i, j, z
    for x in range(n):
        yield x, i, j


def preorders_by_closure(n):
    """Independent generator: relations equal to their reflexive-transitive closure."""
    pairs = [(i, j) for i in range(n) for j in range(n) if i != j]
    out = []
    for bits in product((False, True), repeat=len(pairs)):
        rel = [[i == j for j in range(n)] for i in range(n)]
        for (i, j), b in zip(pairs, bits):
            rel[i][j] = b
        clo = [row[:] for row in rel]
        for k in range(n):
            for i in range(n):
                if clo[i][k]:
                    for j in range(n):
                        if clo[k][j]:
                            clo[i][j] = True
        if clo == rel:
            out.append(rel)
    return out


def canonical_form(X):
    """Lexicographically least hom matrix over all relabelings."""
    n = len(X)
    best = None
    for perm in permutations(range(n)):
        m = tuple(tuple(X.hom[perm[i]][perm[j]] for j in range(n)) for i in range(n))
        if best is None or m < best:
            best = m
    return best


def refined_canonical_form(X):
    """Canonical form that only permutes within blocks of equal degree data.

    Exact (a relabeling invariant), and much cheaper than ``canonical_form``
    for the lattices up to eight elements used in the suites.
    """
    n = len(X)
    q = X.quantale

    def sig(i):
        return (tuple(sorted(X.hom[i])), tuple(sorted(X.hom[j][i] for j in range(n))), X.hom[i][i])

    sigs = [sig(i) for i in range(n)]
    blocks = {}
    for i in range(n):
        blocks.setdefault(sigs[i], []).append(i)
    keys = sorted(blocks)
    groups = [blocks[k] for k in keys]
    best = None
    for choice in product(*(permutations(g) for g in groups)):
        perm = [i for g in choice for i in g]
        m = tuple(tuple(X.hom[perm[i]][perm[j]] for j in range(n)) for i in range(n))
        if best is None or m < best:
            best = m
    return (tuple(keys), best)


def dedupe(cats, key=canonical_form):
    seen = {}
    for X in cats:
        seen.setdefault(key(X), X)
    return list(seen.values())


def natural_posets(n):
    """Posets on 0..n-1 where i < j in the order implies i < j as integers.

    Each poset is returned as a boolean matrix le[i][j].  Every finite poset
    is isomorphic to at least one of these.
    """
    out = []

    def rec(k, le):
        if k == n:
            out.append([row[:] for row in le])
            return
        # choose the strict down-set of k: a down-closed subset of 0..k-1
        for mask in range(1 << k):
            S = [i for i in range(k) if mask >> i & 1]
            Sset = set(S)
            if any(j not in Sset for i in S for j in range(k) if le[j][i]):
                continue
            for row in le:
                row.append(False)
            le.append([i == k for i in range(k + 1)])
            for i in S:
                le[i][k] = True
            rec(k + 1, le)
            le.pop()
            for row in le:
                row.pop()

    rec(0, [])
    return out


def poset_cat(le, names=None):
    n = len(le)
    return vcat.from_preorder(names or object_names(n), le)


def bounded_poset(middle):
    """1 ⊕ P ⊕ 1 for a poset P given as a matrix."""
    n = len(middle) + 2
    le = [[False] * n for _ in range(n)]
    for i in range(n):
        le[0][i] = True
        le[i][n - 1] = True
        le[i][i] = True
    for i in range(len(middle)):
        for j in range(len(middle)):
            if middle[i][j]:
                le[i + 1][j + 1] = True
    return le


def is_lattice_matrix(le):
    n = len(le)
    if n == 0:
        return False
    for i in range(n):
        for j in range(n):
            ub = [u for u in range(n) if le[i][u] and le[j][u]]
            if not any(all(le[u][v] for v in ub) for u in ub):
                return False
            lb = [u for u in range(n) if le[u][i] and le[u][j]]
            if not any(all(le[v][u] for v in lb) for u in lb):
                return False
    return True


def lattices(max_size, min_size=1):
    """Iso classes of lattices with min_size..max_size elements, as boolean VCats.

    Built as bounded posets 1 ⊕ P ⊕ 1 over all natural posets P, filtered by
    the lattice property and deduplicated by canonical form.
    """
    out = []
    for n in range(max(min_size, 1), max_size + 1):
        if n == 1:
            out.append(poset_cat([[True]]))
            continue
        found = {}
        for mid in natural_posets(n - 2):
            le = bounded_poset(mid)
            if is_lattice_matrix(le):
                X = poset_cat(le)
                found.setdefault(refined_canonical_form(X), X)
        out.extend(found[k] for k in sorted(found))
    return out


def posets(max_size, min_size=0):
    """Iso classes of posets (boolean, separated) up to max_size elements."""
    out = []
    for n in range(min_size, max_size + 1):
        found = {}
        for le in natural_posets(n):
            X = poset_cat(le)
            found.setdefault(refined_canonical_form(X), X)
        out.extend(found[k] for k in sorted(found))
    return out


@dataclass
class InstanceUniverse:
    quantale: object
    max_objects: int
    dedup: bool = False
    cats: list = field(default_factory=list)
    counts: dict = field(default_factory=dict)

    def __iter__(self):
        return iter(self.cats)

    def __len__(self):
        return len(self.cats)

    def functors(self, X, Y):
        return vcat.all_functors(X, Y)


def universe(q, max_objects, dedup=False, min_objects=0):
    U = InstanceUniverse(q, max_objects, dedup)
    for n in range(min_objects, max_objects + 1):
        cats = enumerate_vcats(q, n)
        if dedup:
            cats = dedupe(cats)
        U.counts[n] = len(cats)
        U.cats.extend(cats)
    return U


def boolean_universe(max_objects, dedup=False):
    return universe(make_boolean(), max_objects, dedup)
