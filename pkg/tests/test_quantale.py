from itertools import product

import pytest
from hypothesis import given, strategies as st

from qwb import quantale as qm
from qwb.errors import QwbError

INF = float("inf")


def numeric(q):
    return [INF if e == "inf" else int(e) for e in q.elements]


@pytest.mark.parametrize("name", ["boolean", "chain0", "chain1", "chain2", "chain3", "chain5"])
def test_builtins_validate(name):
    assert qm.validate(qm.by_name(name)) == []


@pytest.mark.parametrize("n", [1, 2, 3, 5])
def test_chain_hom_against_arithmetic(n):
    # hom(x, y) is the numerically least z with y <= x + z, sums past n becoming inf
    q = qm.make_chain(n)
    vals = numeric(q)

    def trunc(v):
        return v if v <= n else INF

    for x, y in product(range(q.size), repeat=2):
        want = min((z for z in range(q.size) if vals[y] <= trunc(vals[x] + vals[z])), key=lambda z: vals[z])
        assert q.hom(x, y) == want


def test_chain5_hom_3_5():
    q = qm.make_chain(5)
    assert q.label(q.hom(q.idx("3"), q.idx("5"))) == "2"
    assert q.label(q.hom(q.idx("5"), q.idx("3"))) == "0"
    assert q.label(q.hom(q.idx("inf"), q.idx("inf"))) == "0"
    assert q.label(q.hom(q.idx("0"), q.idx("inf"))) == "inf"
    # truncation: 4 + 2 already overflows to inf
    assert q.label(q.hom(q.idx("4"), q.idx("inf"))) == "2"


def test_boolean_is_two_element_lattice():
    q = qm.make_boolean()
    assert (q.bottom, q.top, q.unit) == (0, 1, 1)
    assert q.is_integral
    assert [[q.hom(a, b) for b in range(2)] for a in range(2)] == [[1, 1], [0, 1]]


def test_corrupted_unit_reported():
    q = qm.Quantale("bad", ["0", "1"], [[1, 1], [0, 1]], [[0, 0], [0, 0]], 1)
    bad = qm.validate(q)
    assert any(b.startswith("unit law") for b in bad)


def test_non_lattice_order_reported():
    # two incomparable maximal elements
    leq = [[1, 1, 1], [0, 1, 0], [0, 0, 1]]
    q = qm.Quantale("v", ["0", "a", "b"], leq, [[0, 0, 0]] * 3, 0)
    assert "order is not a complete lattice" in qm.validate(q)


def test_unknown_quantale():
    with pytest.raises(QwbError):
        qm.by_name("chainX")
    with pytest.raises(QwbError):
        qm.make_chain(-1)


@given(st.integers(1, 6), st.data())
def test_residuation_law(n, data):
    q = qm.make_chain(n)
    x, y, z = (data.draw(st.integers(0, q.size - 1)) for _ in range(3))
    assert q.leq(q.tensor(x, z), y) == q.leq(z, q.hom(x, y))
