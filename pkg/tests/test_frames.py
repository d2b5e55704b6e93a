from qwb import frames


def test_counts_of_finite_frames():
    # distributive lattices with 1..7 elements: 1, 1, 1, 2, 3, 5, 8
    assert [len(frames.frames(n, n)) for n in range(1, 8)] == [1, 1, 1, 2, 3, 5, 8]


def test_topology_counts():
    # labeled topologies on 0..4 points
    assert [len(frames.topologies(n)) for n in range(5)] == [1, 1, 4, 29, 355]


def test_filters_principal_and_sharp_meets():
    for L in frames.frames(5):
        FL = frames.filter_space(L)
        assert len(FL.filters) == len(L)
        for x in range(len(L)):
            for y in range(len(L)):
                assert FL.sharp[x] & FL.sharp[y] == FL.sharp[L.meet(x, y)]


def test_sierpinski_is_sober_and_rho_iso():
    S = frames.space(["p", "q"], [[], [0], [0, 1]])
    assert frames.sigma_report(S).ok
    two = frames.from_pairs(["0", "1"], [("0", "1")])
    assert frames.rho_report(frames.filter_space(two)).ok


def test_non_t0_space_is_not_cd():
    S = frames.space(["p", "q"], [[], [0, 1]])
    assert not S.is_t0()
    assert not frames.is_cd_space(S)


def test_full_report():
    assert frames.frames_report(4).ok
