"""Classes Φ of modules, the presheaf object ΦX and Φ-relative notions."""
from dataclasses import dataclass
from functools import lru_cache

from . import presheaf as ps
from . import vcat, vmod
from .presheaf import PresheafCat, precompose, yoneda_vector
from .report import Report
from .vcat import VFunctor


class PhiFamily:
    """A class Φ of modules, decided columnwise by a presheaf test.

    ``test(X, psi)`` decides ψ ∈ Φ[X]; modules φ: X⇸Y belong to Mod_Φ iff
    every column φ(−, y) passes.
    """

    def __init__(self, name, test, note=None):
        self.name = name
        self.test = test
        self.note = note

    def __repr__(self):
        return f"PhiFamily({self.name!r})"

    # families are identified by name
    def __eq__(self, other):
        return isinstance(other, PhiFamily) and self.name == other.name

    def __hash__(self):
        return hash(("PhiFamily", self.name))

    def member(self, X, psi):
        return self.test(X, tuple(psi))

    def contains_module(self, phi):
        X = phi.dom
        return all(self.member(X, tuple(row[y] for row in phi.m)) for y in range(len(phi.cod)))

    def contains_rel(self, X, m, ncols):
        return all(self.member(X, tuple(row[y] for row in m)) for y in range(ncols))


def family_all():
    return PhiFamily("all", lambda X, psi: True)


def family_inhabited():
    def test(X, psi):
        q = X.quantale
        return q.join_all(psi) == q.top

    return PhiFamily("inhabited", test,
                     note="inhabited is read as ⋁ψ = ⊤; for non-integral quantales this differs from ⋁ψ ⊒ k")


@lru_cache(maxsize=4096)
def covariants(X):
    """All covariant presheaves 1⇸X on X (cached per V-category)."""
    return tuple(vmod.covariant_presheaves(X))


def pair_value(q, psi, phi):
    """ψ·φ: 1⇸1 for φ: 1⇸X, ψ: X⇸1."""
    return q.join_all(q.tensor(a, b) for a, b in zip(phi, psi))


def preserves_finite_meets(X, psi):
    """ψ·− preserves ⊤ and binary meets of covariant presheaves."""
    q = X.quantale
    covs = covariants(X)
    if pair_value(q, psi, tuple(q.top for _ in psi)) != q.top:
        return False
    vals = [pair_value(q, psi, c) for c in covs]
    for i, c1 in enumerate(covs):
        for j in range(i + 1, len(covs)):
            c2 = covs[j]
            mt = tuple(q.meet(a, b) for a, b in zip(c1, c2))
            if pair_value(q, psi, mt) != q.meet(vals[i], vals[j]):
                return False
    return True


def preserves_finite_joins(X, psi):
    """ψ·− preserves ⊥ and binary joins of covariant presheaves.

    Composition always preserves joins, so this holds for every ψ; it is
    kept to document why the finite_sup family uses meets.
    """
    q = X.quantale
    covs = covariants(X)
    if pair_value(q, psi, tuple(q.bottom for _ in psi)) != q.bottom:
        return False
    for c1 in covs:
        for c2 in covs:
            jn = tuple(q.join(a, b) for a, b in zip(c1, c2))
            if pair_value(q, psi, jn) != q.join(pair_value(q, psi, c1), pair_value(q, psi, c2)):
                return False
    return True


def family_finite_sup():
    """The "prime" analogue: ψ·− preserves finite infima of Mod(1, X).

    In the reversed numeric order of [0, ∞] these infima are finite suprema
    of distances, which is where the family's name comes from.
    """
    return PhiFamily("finite_sup", preserves_finite_meets)


def family_tensor():
    def test(X, psi):
        q = X.quantale
        n = len(X)
        for x in range(n):
            for u in range(q.size):
                if all(psi[z] == q.tensor(u, X.hom[z][x]) for z in range(n)):
                    return True
        return False

    return PhiFamily("tensor", test)


FAMILIES = {
    "all": family_all,
    "inhabited": family_inhabited,
    "finite_sup": family_finite_sup,
    "tensor": family_tensor,
}


def family_by_name(name):
    return FAMILIES[name]()


class PhiPresheafCat(PresheafCat):
    """ΦX as a full sub-V-category of PX."""

    def __init__(self, base, family, elements):
        super().__init__(base, elements)
        self.family = family


def phi_presheaves(X, family, P=None, cap=ps.DEFAULT_CAP):
    P = P or ps.build_presheaves(X, cap)
    return PhiPresheafCat(X, family, [v for v in P.elements if family.member(X, v)])


def phi_yoneda(F):
    """y^Φ: X → ΦX, or None if some representable is missing."""
    X = F.base
    ys = [yoneda_vector(X, x) for x in range(len(X))]
    if any(v not in F.index for v in ys):
        return None
    return VFunctor(X, F.cat, tuple(F.index[v] for v in ys))


def phi_sup(F):
    """Sup^Φ: ΦX → X as the left adjoint of y^Φ, or None."""
    X = F.base
    from .distributivity import supremum
    smap = []
    for v in F.elements:
        s = supremum(X, v)
        if s is None:
            return None
        smap.append(s)
    sup = VFunctor(F.cat, X, tuple(smap))
    return sup if vcat.is_functor(sup) else None


def is_phi_cocomplete(X, family, F=None):
    F = F or phi_presheaves(X, family)
    return phi_sup(F)


def phi_mult(F, Psi):
    """Sup^Φ_{ΦX}(Ψ) = Ψ·(y^Φ_X)_* for Ψ a presheaf on ΦX."""
    return precompose(F.quantale, Psi, F.ystar)


@dataclass
class PhiWitness:
    base: object
    F: PhiPresheafCat
    sup: VFunctor
    t: VFunctor

    @property
    def theta(self):
        X, F = self.base, self.F
        n = len(X)
        return vmod.VModule(X, X, vmod.rel_of(X, X, tuple(
            tuple(F.elements[self.t.map[y]][x] for y in range(n)) for x in range(n))))

    @property
    def P(self):
        return self.F


def is_phi_distributive(X, family, F=None):
    """Left adjoint t: X→ΦX of Sup^Φ, verified, or None."""
    F = F or phi_presheaves(X, family)
    sup = phi_sup(F)
    if sup is None:
        return None
    q = X.quantale
    tmap = []
    for y in range(len(X)):
        v = tuple(q.meet_all(q.hom(X.hom[y][sup.map[i]], p[x]) for i, p in enumerate(F.elements))
                  for x in range(len(X)))
        if v not in F.index:
            return None
        tmap.append(F.index[v])
    t = VFunctor(X, F.cat, tuple(tmap))
    if not vcat.is_functor(t):
        return None
    for y in range(len(X)):
        ty = F.elements[tmap[y]]
        for i, p in enumerate(F.elements):
            if F.hom(ty, p) != X.hom[y][sup.map[i]]:
                return None
    return PhiWitness(X, F, sup, t)


def is_phi_dense(f, family):
    """f_* ∈ Mod_Φ."""
    return family.contains_module(vmod.companion(f))


def is_phi_algebraic(X, family, w=None):
    """Equaliser i: A→X of y^Φ and mate θ is Φ-dense and i_*·i^* = θ."""
    w = w or is_phi_distributive(X, family)
    if w is None:
        return False
    F = w.F
    q = X.quantale
    A = [x for x in range(len(X)) if F.elements[w.t.map[x]] == yoneda_vector(X, x)]
    sub = vcat.full_sub(X, A)
    i = VFunctor(sub, X, tuple(A))
    if not is_phi_dense(i, family):
        return False
    th = w.theta.m
    n = len(X)
    for x in range(n):
        for z in range(n):
            v = q.join_all(q.tensor(X.hom[x][a], X.hom[a][z]) for a in A)
            if v != th[x][z]:
                return False
    return True


def tilde_phi(X, family, F=None):
    """tilde X_Φ: members of ΦX that are right adjoint modules."""
    F = F or phi_presheaves(X, family)
    covs = covariants(X)
    return F.sub(lambda v: bool(vmod.left_adjoint_partners(X, v, covs)))


def is_phi_sober(X, family, F=None):
    """X → tilde X_Φ, the corestricted Yoneda, is surjective up to ≃.

    The Yoneda image always lies in tilde X_Φ, so soberness amounts to every
    right-adjoint member of ΦX being representable.
    """
    T = tilde_phi(X, family, F)
    reps = {yoneda_vector(X, x) for x in range(len(X))}
    return all(v in reps for v in T.elements)


# -- saturation ---------------------------------------------------------------

def phi_modules(X, Y, family, cap=ps.DEFAULT_CAP):
    return [phi for phi in vmod.all_modules(X, Y, cap) if family.contains_module(phi)]


def check_saturated(family, cats, report=None, full_triples=False):
    """Saturation on a finite universe of V-categories.

    (iii) ψ·f^* ∈ Φ[Y] and ψ·g_* ∈ Φ[Y] for ψ ∈ Φ[X], f: X→Y, Φ-dense g: Y→X.
    (ii)  Mod_Φ contains identities and is closed under composition.  Since a
          composite ψ·φ lies in Mod_Φ iff each column of ψ composed with φ
          does, closure is checked for ψ: Y⇸1 exactly; with ``full_triples``
          all ψ: Y⇸Z in the universe are also composed.
    The verdicts of (ii) and (iii) are recorded and must agree.
    """
    rep = report or Report(f"saturation {family.name}")
    cats = list(cats)
    Fs = {id(X): phi_presheaves(X, family) for X in cats}
    ok2 = ok3 = True
    for X in cats:
        F = Fs[id(X)]
        idm = X.rel
        ok = rep.check("identities in Mod_Phi", family.contains_rel(X, idm.m, len(X)), lambda: X)
        ok2 &= ok
        for Y in cats:
            FY = Fs[id(Y)]
            fs = vcat.all_functors(X, Y)
            gs = [g for g in vcat.all_functors(Y, X) if is_phi_dense(g, family)]
            for psi in F.elements:
                for f in fs:
                    v = precompose(X.quantale, psi, ps.conjoint_m(f))
                    ok = rep.check("(iii) psi.f^* in Phi", family.member(Y, v), lambda: (X, Y, psi, f.map))
                    ok3 &= ok
                for g in gs:
                    v = precompose(X.quantale, psi, ps.companion_m(g))
                    ok = rep.check("(iii) psi.g_* in Phi", family.member(Y, v), lambda: (X, Y, psi, g.map))
                    ok3 &= ok
            mods = phi_modules(X, Y, family)
            for phi in mods:
                for psi in FY.elements:
                    v = precompose(X.quantale, psi, phi.m)
                    ok = rep.check("(ii) Mod_Phi closed under composition", family.member(X, v),
                                   lambda: (X, Y, phi.m, psi))
                    ok2 &= ok
            if full_triples:
                for Z in cats:
                    for psi in phi_modules(Y, Z, family):
                        for phi in mods:
                            comp = vmod.compose(phi, psi)
                            ok = rep.check("(ii) Mod_Phi closed under composition",
                                           family.contains_module(comp), lambda: (X, Y, Z))
                            ok2 &= ok
    rep.check("(ii) iff (iii)", ok2 == ok3, lambda: (ok2, ok3))
    return rep, ok2, ok3


def kleisli_check(family, cats, report=None):
    """mate(ψ·φ) = m^Φ · Φ(mate φ) · mate ψ for φ ∈ Mod_Φ(X, Y), ψ ∈ Φ[Y].

    Modules into a general Z are handled column by column, which is how both
    sides are computed, so ψ: Y⇸1 covers every Z.
    """
    rep = report or Report(f"kleisli {family.name}")
    Fs = {id(X): phi_presheaves(X, family) for X in cats}
    for X in cats:
        F = Fs[id(X)]
        q = X.quantale
        for Y in cats:
            FY = Fs[id(Y)]
            for phi in phi_modules(X, Y, family):
                mate = vmod.mate(phi, F)
                mstar = ps.conjoint_m(mate)  # ΦX ⇸ Y
                for psi in FY.elements:
                    Xi = precompose(q, psi, mstar)  # Φ(mate φ)(ψ), a presheaf on ΦX
                    rep.check("Phi(mate phi)(psi) in Phi[PhiX]", family.member(F.cat, Xi),
                              lambda: (X, Y, phi.m, psi))
                    lhs = phi_mult(F, Xi)
                    rhs = precompose(q, psi, phi.m)
                    rep.check("Kleisli composite = module composite", lhs == rhs,
                              lambda: (X, Y, phi.m, psi))
    return rep


def phiX_cocomplete_check(family, cats, report=None, cap=ps.DEFAULT_CAP):
    """ΦX is Φ-cocomplete with Sup^Φ_{ΦX} = −·(y^Φ_X)_*."""
    rep = report or Report(f"PhiX cocomplete {family.name}")
    for X in cats:
        F = phi_presheaves(X, family)
        FF = phi_presheaves(F.cat, family, cap=cap)
        sup = phi_sup(FF)
        rep.check("PhiX is Phi-cocomplete", sup is not None, lambda: X)
        if sup is None:
            continue
        for i, Psi in enumerate(FF.elements):
            v = phi_mult(F, Psi)
            rep.check("Sup_PhiX = -.(y^Phi)_*", v in F.index and vcat.equivalent(F.cat, F.index[v], sup.map[i]),
                      lambda: (X, Psi))
    return rep
