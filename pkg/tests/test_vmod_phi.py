from qwb import phifam, vcat, vmod, vrel
from qwb import presheaf as ps
from qwb import quantale as qm
from qwb import universe


def chain_cat(n):
    return vcat.from_preorder([f"c{i}" for i in range(n)], [[i <= j for j in range(n)] for i in range(n)])


def test_companion_left_adjoint_to_conjoint():
    for X in universe.enumerate_vcats(qm.make_chain(1), 2):
        for Y in universe.enumerate_vcats(qm.make_chain(1), 2):
            for f in vcat.all_functors(X, Y):
                assert vmod.check_adjunction(vmod.companion(f), vmod.conjoint(f))


def test_identity_module_is_unit():
    X = chain_cat(3)
    for phi in vmod.all_modules(X, chain_cat(2)):
        assert vmod.compose(vmod.identity(X), phi).rel == phi.rel


def test_module_law_detects_non_module():
    X = chain_cat(2)
    r = vrel.make(X.quantale, X.objects, ("*",), ((0,), (1,)))
    # c0 <= c1 but r(c1) = 1 without r(c0)
    assert not vmod.is_module(X, vcat.unit_cat(X.quantale), r)


def test_family_sizes_on_a_chain():
    X = chain_cat(3)
    sizes = {name: len(phifam.phi_presheaves(X, phifam.family_by_name(name))) for name in phifam.FAMILIES}
    assert sizes["all"] == 4
    # inhabited: every down-set except the empty one
    assert sizes["inhabited"] == 3
    # tensor over boolean: representables and the empty presheaf
    assert sizes["tensor"] == 4


def test_saturation_and_kleisli_small():
    cats = universe.universe(qm.make_boolean(), 2, dedup=True).cats
    for name in phifam.FAMILIES:
        fam = phifam.family_by_name(name)
        rep, ok2, ok3 = phifam.check_saturated(fam, cats)
        assert rep.ok and ok2 and ok3
        assert phifam.kleisli_check(fam, cats).ok


def test_saturation_checker_rejects_a_broken_family():
    # down-sets with at most one point: not closed under identities or f^*
    fam = phifam.PhiFamily("at_most_one_point", lambda X, psi: sum(v == X.quantale.top for v in psi) <= 1)
    cats = universe.universe(qm.make_boolean(), 2, dedup=True).cats
    rep, ok2, ok3 = phifam.check_saturated(fam, cats)
    assert not rep.ok and not ok2 and not ok3
    assert rep.failures()


def test_presheaf_category_is_phi_distributive():
    X = chain_cat(2)
    P = ps.build_presheaves(X)
    assert phifam.is_phi_distributive(P.cat, phifam.family_all()) is not None
    assert phifam.is_phi_sober(X, phifam.family_all())


def test_right_adjoint_presheaves_are_representable_over_chains():
    for name in ("boolean", "chain1", "chain2"):
        for X in universe.universe(qm.by_name(name), 2):
            adjoint, representable = vmod.representable_adjoint_report(X)
            assert adjoint == representable


def test_discrete_pair_cocompleteness_per_family():
    X = vcat.discrete(qm.make_boolean(), ["a", "b"])
    verdict = {name: phifam.is_phi_cocomplete(X, phifam.family_by_name(name)) is not None
               for name in phifam.FAMILIES}
    # no binary join, and no bottom for the empty presheaf of the tensor family
    assert verdict == {"all": False, "inhabited": False, "tensor": False, "finite_sup": True}
