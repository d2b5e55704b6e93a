from itertools import product

import pytest
from hypothesis import given, strategies as st

from qwb import quantale as qm
from qwb import vrel
from qwb.errors import QuantaleMismatch, ShapeError

INF = float("inf")


def rel(q, m):
    return vrel.make(q, [f"a{i}" for i in range(len(m))], [f"b{j}" for j in range(len(m[0]))], m)


def matrices(q, a, b):
    return st.lists(st.lists(st.integers(0, q.size - 1), min_size=b, max_size=b), min_size=a, max_size=a)


def test_boolean_compose_is_relational_product():
    q = qm.make_boolean()
    r = rel(q, [[1, 0], [0, 1], [1, 1]])
    s = rel(q, [[0, 1, 0], [1, 0, 0]])
    want = [[int(any(r.m[x][y] and s.m[y][z] for y in range(2))) for z in range(3)] for x in range(3)]
    assert [list(row) for row in vrel.compose(r, s).m] == want


def test_chain_compose_is_min_plus():
    q = qm.make_chain(3)
    vals = [0, 1, 2, 3, INF]
    r = rel(q, [[0, 2], [4, 1]])
    s = rel(q, [[1, 4], [2, 0]])
    out = vrel.compose(r, s)
    for x, z in product(range(2), repeat=2):
        d = min(vals[r.m[x][y]] + vals[s.m[y][z]] for y in range(2))
        assert vals[out.m[x][z]] == (d if d <= 3 else INF)


@given(st.data())
def test_associativity_and_identity(data):
    q = qm.make_chain(2)
    r = rel(q, data.draw(matrices(q, 2, 3)))
    s = vrel.make(q, r.cod, ("c0", "c1"), data.draw(matrices(q, 3, 2)))
    t = vrel.make(q, s.cod, ("d0",), data.draw(matrices(q, 2, 1)))
    assert vrel.compose(vrel.compose(r, s), t) == vrel.compose(r, vrel.compose(s, t))
    assert vrel.compose(vrel.identity(q, r.dom), r) == r
    assert vrel.compose(r, vrel.identity(q, r.cod)) == r


@given(st.data())
def test_extend_and_lift_are_residuals(data):
    q = qm.make_chain(2)
    phi = rel(q, data.draw(matrices(q, 2, 2)))
    psi = vrel.make(q, phi.dom, ("z0", "z1"), data.draw(matrices(q, 2, 2)))
    rho = vrel.make(q, phi.cod, psi.cod, data.draw(matrices(q, 2, 2)))
    assert vrel.leq(vrel.compose(phi, rho), psi) == vrel.leq(rho, vrel.extend(psi, phi))
    chi = vrel.make(q, ("w0",), phi.dom, data.draw(matrices(q, 1, 2)))
    omega = vrel.make(q, ("w0",), psi.cod, data.draw(matrices(q, 1, 2)))
    assert vrel.leq(vrel.compose(chi, psi), omega) == vrel.leq(chi, vrel.lift(psi, omega))


def test_shape_and_quantale_errors():
    b, c = qm.make_boolean(), qm.make_chain(1)
    with pytest.raises(ShapeError):
        vrel.compose(rel(b, [[1, 0]]), rel(b, [[1]]))
    with pytest.raises(QuantaleMismatch):
        vrel.compose(rel(b, [[1]]), rel(c, [[0]]))
