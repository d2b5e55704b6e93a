from qwb import distributivity as dist
from qwb import presheaf as ps
from qwb import universe, vcat


def lattice(names, le):
    return vcat.from_preorder(names, le)


def diamond():
    # 0 < a, b < 1
    return lattice(["0", "a", "b", "1"], [[1, 1, 1, 1], [0, 1, 0, 1], [0, 0, 1, 1], [0, 0, 0, 1]])


def m3():
    le = [[1, 1, 1, 1, 1], [0, 1, 0, 0, 1], [0, 0, 1, 0, 1], [0, 0, 0, 1, 1], [0, 0, 0, 0, 1]]
    return lattice(["0", "a", "b", "c", "1"], le)


def test_diamond_is_ccd_with_two_compacts():
    w = dist.ccd_witness(diamond())
    assert w is not None
    assert [w.base.objects[i] for i in dist.totally_compact(w)] == ["a", "b"]
    assert dist.is_totally_algebraic(w)


def test_m3_is_cocomplete_not_ccd():
    X = m3()
    assert dist.is_cocomplete(X) is not None
    assert dist.ccd_witness(X) is None
    assert not dist.is_distributive_lattice(X)
    assert dist.ccd_obstruction(X) is not None


def test_non_lattice_has_no_sup():
    X = vcat.discrete(diamond().quantale, ["p", "q"])
    assert dist.is_cocomplete(X) is None
    assert "no supremum" in dist.ccd_obstruction(X)


def test_theta_matches_oracle_on_lattices():
    for L in universe.lattices(6):
        w = dist.ccd_witness(L)
        if w is None:
            continue
        oracle = dist.totally_below_oracle(L)
        assert [[bool(v) for v in row] for row in w.theta.m] == oracle


def test_eta_iso_and_triangles():
    for X in universe.posets(3):
        P = ps.build_presheaves(X)
        et, _, _ = dist.eta(X, P)
        assert et is not None and vcat.is_iso(et)
        assert dist.triangle_identities(X, P) == (True, True)


def test_tensor_action_on_the_quantale_itself():
    from qwb import quantale as qm
    q = qm.make_chain(2)
    n = q.size
    V = vcat.make(q, q.elements, tuple(tuple(q.hom(x, y) for y in range(n)) for x in range(n)))
    assert vcat.is_valid(V)
    assert dist.is_cocomplete(V) is not None
    for x in range(n):
        for u in range(n):
            # x (+) u is truncated addition
            assert dist.tensor_action(V, x, u) == q.tensor(x, u)


def test_one_point_space_is_cocomplete():
    from qwb import quantale as qm
    X = vcat.make(qm.make_chain(2), ("a",), ((0,),))
    assert dist.is_cocomplete(X) is not None


def test_equaliser_lemma_on_chain_quantales():
    from qwb import quantale as qm
    for name in ("boolean", "chain1", "chain2"):
        for X in universe.universe(qm.by_name(name), 2):
            assert all(a == b for a, b in dist.equaliser_lemma(X))
