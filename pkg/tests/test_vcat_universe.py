from itertools import product

import pytest

from qwb import quantale as qm
from qwb import universe, vcat
from qwb.errors import CapExceeded


def test_boolean_counts_small():
    b = qm.make_boolean()
    assert len(universe.enumerate_vcats(b, 0)) == 1
    assert len(universe.enumerate_vcats(b, 1)) == 1
    # discrete, x<=y, y<=x, full
    assert len(universe.enumerate_vcats(b, 2)) == 4


@pytest.mark.parametrize("n", [2, 3, 4])
def test_boolean_matches_closure_generator(n):
    got = {X.hom for X in universe.enumerate_vcats(qm.make_boolean(), n)}
    want = {tuple(tuple(int(v) for v in row) for row in rel) for rel in universe.preorders_by_closure(n)}
    assert got == want


def brute_vcats(q, n):
    # every matrix, filtered by reflexivity and transitivity
    out = set()
    for flat in product(range(q.size), repeat=n * n):
        a = [flat[i * n:(i + 1) * n] for i in range(n)]
        if all(q.leq(q.unit, a[x][x]) for x in range(n)) and all(
                q.leq(q.tensor(a[x][y], a[y][z]), a[x][z]) for x in range(n) for y in range(n) for z in range(n)):
            out.add(tuple(tuple(r) for r in a))
    return out


def test_chain2_n2_against_brute_force():
    q = qm.make_chain(2)
    got = {X.hom for X in universe.enumerate_vcats(q, 2)}
    assert got == brute_vcats(q, 2)


def test_enumeration_cap():
    with pytest.raises(CapExceeded):
        universe.enumerate_vcats(qm.make_boolean(), 3, cap=10)


def test_dedup_counts_posets_and_preorders():
    # unlabeled preorders on 0..4 points: 1, 1, 3, 9, 33
    U = universe.universe(qm.make_boolean(), 4, dedup=True)
    assert [U.counts[n] for n in range(5)] == [1, 1, 3, 9, 33]
    # unlabeled posets: 1, 1, 2, 5, 16
    assert [len(universe.posets(n, n)) for n in range(5)] == [1, 1, 2, 5, 16]


def test_validate_names_triple():
    b = qm.make_boolean()
    X = vcat.VCat(b, ("x", "y", "z"), ((1, 1, 0), (0, 1, 1), (1, 0, 1)))
    assert not vcat.is_valid(X)
    assert any("x" in v and "z" in v for v in vcat.validate(X))


def test_separated_quotient_and_op():
    b = qm.make_boolean()
    X = vcat.from_preorder(["a", "b", "c"], [[1, 1, 1], [1, 1, 1], [0, 0, 1]])
    assert not vcat.is_separated(X)
    Q = vcat.separated_quotient(X)
    Q = Q[0] if isinstance(Q, tuple) else Q
    assert len(Q) == 2 and vcat.is_separated(Q)
    assert vcat.op(vcat.op(X)).hom == X.hom
    assert vcat.op(X).hom[2][0] == 1 and X.hom[2][0] == 0
    assert b is X.quantale
