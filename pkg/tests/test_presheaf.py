from itertools import product

import numpy as np
import pytest

from qwb import distributivity as dist
from qwb import presheaf as ps
from qwb import quantale as qm
from qwb import universe, vcat
from qwb.errors import CapExceeded


def chain_cat(n):
    return vcat.from_preorder([f"c{i}" for i in range(n)], [[i <= j for j in range(n)] for i in range(n)])


def test_presheaves_of_a_chain_are_down_sets():
    for n in range(5):
        assert len(ps.presheaf_vectors(chain_cat(n))) == n + 1


def test_presheaves_by_brute_force():
    q = qm.make_chain(2)
    for X in universe.enumerate_vcats(q, 2):
        brute = [v for v in product(range(q.size), repeat=2) if ps.is_presheaf(X, v)]
        assert ps.presheaf_vectors(X) == sorted(brute)


def test_yoneda_lemma_and_full_faithfulness():
    for X in universe.enumerate_vcats(qm.make_chain(1), 2):
        P = ps.build_presheaves(X)
        for x in range(len(X)):
            yx = ps.yoneda_vector(X, x)
            for psi in P.elements:
                assert ps.vec_hom(X.quantale, yx, psi) == psi[x]
            for z in range(len(X)):
                assert P.hom(yx, ps.yoneda_vector(X, z)) == X.hom[x][z]


def test_cap():
    with pytest.raises(CapExceeded):
        ps.presheaf_vectors(chain_cat(5), cap=10)


def test_batched_mult_and_suprema_agree_with_scalar():
    X = universe.enumerate_vcats(qm.make_boolean(), 2)[1]
    P = ps.build_presheaves(X)
    PP = ps.build_presheaves(P.cat)
    Psis = np.array(PP.elements)
    ms = ps.mult_vectors(P, Psis)
    sups = dist.suprema(P.cat, Psis)
    for i, Psi in enumerate(PP.elements):
        assert tuple(ms[i]) == ps.mult_vector(P, Psi) == ps.mult_formula(P, Psi)
        s = dist.supremum(P.cat, Psi)
        assert sups[i] == (-1 if s is None else s)


def test_kz_on_small_boolean():
    for X in universe.enumerate_vcats(qm.make_boolean(), 2):
        assert ps.kz_check(X).ok
