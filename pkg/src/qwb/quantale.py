"""Finite commutative unital quantales given by explicit tables.

Elements are addressed by integer index everywhere in the package; labels
are only used for input and output.  Joins, meets and the internal hom are
derived from the order and tensor tables, never stored as input.
"""
from functools import lru_cache
from itertools import product

from .errors import QwbError


class Quantale:
    def __init__(self, name, elements, leq, tensor, unit):
        self.name = name
        self.elements = tuple(str(e) for e in elements)
        n = len(self.elements)
        self.size = n
        self._index = {e: i for i, e in enumerate(self.elements)}
        if len(self._index) != n:
            raise QwbError("duplicate element labels")
        self.leq_table = tuple(tuple(bool(leq[i][j]) for j in range(n)) for i in range(n))
        self.tensor_table = tuple(tuple(int(tensor[i][j]) for j in range(n)) for i in range(n))
        self.unit = unit if isinstance(unit, int) else self._index[str(unit)]
        self._derive()

    # derived structure; entries are None where the order is not a lattice
    def _derive(self):
        n, le = self.size, self.leq_table
        self.bottom = self._least([i for i in range(n) if all(le[i][j] for j in range(n))])
        self.top = self._least([i for i in range(n) if all(le[j][i] for j in range(n))])
        self.join_table = tuple(
            tuple(self._least([u for u in range(n) if le[a][u] and le[b][u]]) for b in range(n))
            for a in range(n))
        self.meet_table = tuple(
            tuple(self._greatest([u for u in range(n) if le[u][a] and le[u][b]]) for b in range(n))
            for a in range(n))
        self.is_lattice = (n > 0 and self.bottom is not None and self.top is not None
                           and all(v is not None for row in self.join_table for v in row)
                           and all(v is not None for row in self.meet_table for v in row))
        if self.is_lattice:
            T = self.tensor_table
            self.hom_table = tuple(
                tuple(self.join_all(z for z in range(n) if le[T[x][z]][y]) for y in range(n))
                for x in range(n))
        else:
            self.hom_table = None

    def _least(self, cands):
        le = self.leq_table
        for c in cands:
            if all(le[c][d] for d in cands):
                return c
        return None

    def _greatest(self, cands):
        le = self.leq_table
        for c in cands:
            if all(le[d][c] for d in cands):
                return c
        return None

    def __repr__(self):
        return f"Quantale({self.name!r}, {list(self.elements)})"

    def _key(self):
        return (self.name, self.elements, self.leq_table, self.tensor_table, self.unit)

    def __eq__(self, other):
        if self is other:
            return True
        return isinstance(other, Quantale) and self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def __len__(self):
        return self.size

    def idx(self, label):
        """Index of an element given its label (ints pass through)."""
        if isinstance(label, int):
            return label
        try:
            return self._index[str(label)]
        except KeyError:
            raise QwbError(f"{label!r} is not an element of {self.name}") from None

    def label(self, i):
        return self.elements[i]

    @property
    def k(self):
        return self.unit

    def leq(self, a, b):
        return self.leq_table[a][b]

    def tensor(self, a, b):
        return self.tensor_table[a][b]

    def join(self, a, b):
        return self.join_table[a][b]

    def meet(self, a, b):
        return self.meet_table[a][b]

    def hom(self, a, b):
        return self.hom_table[a][b]

    def join_all(self, items):
        J = self.join_table
        acc = self.bottom
        for v in items:
            acc = J[acc][v]
        return acc

    def meet_all(self, items):
        M = self.meet_table
        acc = self.top
        for v in items:
            acc = M[acc][v]
        return acc

    @property
    def is_integral(self):
        return self.unit == self.top


def from_labels(name, elements, leq_pairs, tensor_rows, unit):
    """Build a quantale from label-level data.

    ``leq_pairs`` lists pairs (a, b) meaning a ⊑ b; reflexive pairs are added
    and the relation is closed transitively only if the caller does so.
    ``tensor_rows`` maps each label to the list of labels of its row.
    """
    elements = [str(e) for e in elements]
    index = {e: i for i, e in enumerate(elements)}
    n = len(elements)
    leq = [[i == j for j in range(n)] for i in range(n)]
    for a, b in leq_pairs:
        leq[index[str(a)]][index[str(b)]] = True
    tensor = [[index[str(v)] for v in tensor_rows[e]] for e in elements]
    return Quantale(name, elements, leq, tensor, index[str(unit)])


@lru_cache(maxsize=None)
def make_boolean():
    """The two-element quantale {0, 1} with ⊗ = ∧ and k = 1."""
    leq = [[True, True], [False, True]]
    tensor = [[0, 0], [0, 1]]
    return Quantale("boolean", ["0", "1"], leq, tensor, 1)


@lru_cache(maxsize=None)
def make_chain(n, nondegenerate=False):
    """Truncated [0, ∞]: carrier 0..n and inf, order numerically reversed.

    Index i < n+1 stands for the number i; index n+1 is inf.
    """
    if n < 0 or (nondegenerate and n == 0):
        raise QwbError(f"chain length must be {'positive' if nondegenerate else 'non-negative'}")
    inf = n + 1
    size = n + 2

    def num(i):
        return float("inf") if i == inf else i

    leq = [[num(b) <= num(a) for b in range(size)] for a in range(size)]
    tensor = [[inf if (a == inf or b == inf or a + b > n) else a + b for b in range(size)]
              for a in range(size)]
    labels = [str(i) for i in range(n + 1)] + ["inf"]
    return Quantale(f"chain{n}", labels, leq, tensor, 0)


def by_name(name):
    """Resolve a builtin quantale name: ``boolean`` or ``chainN``."""
    if name in ("boolean", "bool", "2"):
        return make_boolean()
    if name.startswith("chain"):
        rest = name[5:].strip("()")
        if rest.isdigit():
            return make_chain(int(rest))
    raise QwbError(f"unknown quantale {name!r}")


def validate(q):
    """Check every quantale axiom exhaustively; return a list of violations.

    Each entry names the law and the first failing tuple (as labels).
    """
    n, le, T = q.size, q.leq_table, q.tensor_table
    L = q.label
    report = []

    def first(law, cands, pred):
        for c in cands:
            if not pred(*c):
                report.append(f"{law}: {tuple(L(v) for v in c)}")
                return

    if n == 0:
        return ["empty carrier"]
    first("reflexivity", ((a,) for a in range(n)), lambda a: le[a][a])
    first("antisymmetry", product(range(n), repeat=2),
          lambda a, b: not (le[a][b] and le[b][a]) or a == b)
    first("order transitivity", product(range(n), repeat=3),
          lambda a, b, c: not (le[a][b] and le[b][c]) or le[a][c])
    if not q.is_lattice:
        report.append("order is not a complete lattice")
        return report
    first("tensor closed", product(range(n), repeat=2), lambda a, b: 0 <= T[a][b] < n)
    if report:
        return report
    first("associativity", product(range(n), repeat=3),
          lambda a, b, c: T[T[a][b]][c] == T[a][T[b][c]])
    first("commutativity", product(range(n), repeat=2), lambda a, b: T[a][b] == T[b][a])
    first("unit law", ((a,) for a in range(n)), lambda a: T[a][q.unit] == a)
    # finite: preserving binary joins and the empty join gives all joins
    first("distributivity (empty join)", ((a,) for a in range(n)), lambda a: T[a][q.bottom] == q.bottom)
    first("distributivity (binary join)", product(range(n), repeat=3),
          lambda a, b, c: T[a][q.join(b, c)] == q.join(T[a][b], T[a][c]))
    first("residuation", product(range(n), repeat=3),
          lambda x, y, z: le[T[x][z]][y] == le[z][q.hom(x, y)])
    return report
