from qwb import karoubi, phifam, universe, vcat
from qwb import quantale as qm


def chain_cat(n):
    return vcat.from_preorder([f"c{i}" for i in range(n)], [[i <= j for j in range(n)] for i in range(n)])


def test_identity_splits_to_presheaves():
    X = chain_cat(2)
    k = karoubi.kar_object(X, X.rel)
    sp = karoubi.split_S(k)
    assert len(sp.cat) == 3
    assert karoubi.roundtrip_witnesses(k).ok


def test_all_idempotents_roundtrip_on_small_cats():
    for X in universe.universe(qm.make_boolean(), 2, dedup=True):
        for th in karoubi.idempotent_modules(X):
            assert karoubi.roundtrip_witnesses(karoubi.kar_object(X, th)).ok


def test_identity_morphism_is_iso():
    X = chain_cat(2)
    k = karoubi.kar_object(X, X.rel)
    assert karoubi.kar_isomorphism(k, k) is not None


def test_classes_on_one_object():
    X = chain_cat(1)
    objs = [karoubi.kar_object(X, th) for th in karoubi.idempotent_modules(X)]
    # θ = 0 and θ = 1 give non-isomorphic splittings
    assert len(karoubi.kar_classes(objs)) == 2


def test_family_must_contain_theta():
    X = chain_cat(2)
    fam = phifam.family_inhabited()
    bad = [th for th in karoubi.idempotent_modules(X) if not fam.contains_rel(X, th.m, len(X))]
    assert bad
    assert karoubi.KarObject(X, bad[0], fam).validate()
