import pytest

from qwb import quantale as qm
from qwb import ultra, vcat, vrel
from qwb.errors import QuantaleMismatch


def test_every_ultrafilter_is_principal():
    for n in range(5):
        U = ultra.ultrafilters(n)
        assert len(U) == n
        assert sorted(U.ultrafilters, key=sorted) == sorted((ultra.principal(n, x) for x in range(n)), key=sorted)


def test_non_ultrafilters_rejected():
    assert not ultra.is_ultrafilter(2, frozenset({0b11}))
    assert not ultra.is_ultrafilter(2, frozenset({0b01, 0b10, 0b11}))


def test_barr_extension_collapses():
    q = qm.make_boolean()
    r = vrel.make(q, ("a", "b"), ("c",), ((1,), (0,)))
    Ur = ultra.barr_extension(r)
    UX, UY = ultra.ultrafilters(r.dom), ultra.ultrafilters(r.cod)
    assert len(Ur.m) == len(UX) and len(Ur.m[0]) == len(UY)
    assert ultra.collapse(Ur.m, UX) == r.m


def test_barr_needs_boolean():
    r = vrel.make(qm.make_chain(1), ("a",), ("b",), ((0,),))
    with pytest.raises(QuantaleMismatch):
        ultra.barr_extension(r)


def test_report_small():
    assert ultra.ultra_report(max_n=3, relation_n=2, kleisli_n=2, space_n=2).ok
