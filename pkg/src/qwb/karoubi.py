"""The Karoubi envelope of Mod_Φ and its splitting by Φ-distributive objects.

Notation: for modules φ: X⇸Y and ψ: Y⇸Z, ``ψ∘φ`` means first φ, then ψ,
which is ``vrel.compose(φ, ψ)``.
"""
from dataclasses import dataclass
from itertools import product

from . import phifam, vcat, vmod, vrel
from . import presheaf as ps
from .errors import InvariantViolation, ShapeError
from .presheaf import precompose, yoneda_vector
from .report import Report
from .vcat import VFunctor


@dataclass(frozen=True)
class KarObject:
    base: vcat.VCat
    theta: vrel.VRel
    family: object

    def validate(self):
        out = []
        X, th = self.base, self.theta
        if not vmod.is_module(X, X, th):
            out.append("theta is not a module")
        if vrel.compose(th, th) != th:
            out.append("theta is not idempotent")
        if not self.family.contains_rel(X, th.m, len(X)):
            out.append("theta is not in Mod_Phi")
        return out


@dataclass(frozen=True)
class KarMorphism:
    source: KarObject
    target: KarObject
    phi: vrel.VRel

    def validate(self):
        th, th2, phi = self.source.theta, self.target.theta, self.phi
        out = []
        if vrel.compose(phi, th2) != phi:
            out.append("theta'∘phi != phi")
        if vrel.compose(th, phi) != phi:
            out.append("phi∘theta != phi")
        return out


def kar_object(X, theta, family=None, check=True):
    family = family or phifam.family_all()
    if not isinstance(theta, vrel.VRel):
        theta = vmod.rel_of(X, X, theta)
    k = KarObject(X, theta, family)
    if check:
        bad = k.validate()
        if bad:
            raise InvariantViolation("; ".join(bad), theta)
    return k


def kar_identity(k):
    return KarMorphism(k, k, k.theta)


def kar_compose(f, g):
    """g∘f for f: k1→k2 and g: k2→k3."""
    if f.target != g.source:
        raise ShapeError("kar morphisms not composable")
    if f.source.family.name != g.target.family.name:
        raise ShapeError("family mismatch")
    return KarMorphism(f.source, g.target, vrel.compose(f.phi, g.phi))


def is_kar_morphism(th, th2, phi):
    return vrel.compose(phi, th2) == phi and vrel.compose(th, phi) == phi


def kar_morphisms(k1, k2):
    """All KarMorphisms k1→k2, by brute force over relations X⇸X'."""
    X, Y = k1.base, k2.base
    q = X.quantale
    nX, nY = len(X), len(Y)
    out = []
    for cells in product(range(q.size), repeat=nX * nY):
        phi = vmod.rel_of(X, Y, [cells[i * nY:(i + 1) * nY] for i in range(nX)])
        if is_kar_morphism(k1.theta, k2.theta, phi) and k1.family.contains_rel(X, phi.m, nY):
            out.append(phi)
    return out


def kar_isomorphism(k1, k2, mors=None):
    """(φ, ψ) mutually inverse in kar, or None.

    For an iso φ the inverse is forced: ψ = (θ◁φ)∘θ' where θ◁φ is the
    largest ρ with ρ∘φ ⊑ θ, so one candidate per φ is tested.
    """
    th, th2 = k1.theta, k2.theta
    for phi in (mors if mors is not None else kar_morphisms(k1, k2)):
        psi = vrel.compose(th2, vrel.extend(th, phi))
        if (is_kar_morphism(th2, th, psi) and vrel.compose(phi, psi) == th
                and vrel.compose(psi, phi) == th2 and k1.family.contains_rel(k2.base, psi.m, len(k1.base))):
            return phi, psi
    return None


def idempotent_modules(X, family=None):
    family = family or phifam.family_all()
    out = []
    for phi in vmod.all_modules(X, X):
        if vrel.compose(phi.rel, phi.rel) == phi.rel and family.contains_module(phi):
            out.append(phi.rel)
    return out


# -- S: kar(Mod_Φ)^op → Dist ----------------------------------------------------

@dataclass
class Split:
    kar: KarObject
    F: object          # ΦX
    elements: list     # S(X, θ) as presheaf vectors
    cat: vcat.VCat     # S(X, θ)
    r: VFunctor        # ΦX → S
    s: VFunctor        # S → ΦX

    @property
    def index(self):
        return {v: i for i, v in enumerate(self.elements)}


def split_S(k, F=None):
    X, th = k.base, k.theta
    q = X.quantale
    F = F or phifam.phi_presheaves(X, k.family)
    keep = [i for i, v in enumerate(F.elements) if precompose(q, v, th.m) == v]
    S = vcat.full_sub(F.cat, keep)
    elements = [F.elements[i] for i in keep]
    pos = {v: j for j, v in enumerate(elements)}
    r = VFunctor(F.cat, S, tuple(pos[precompose(q, v, th.m)] for v in F.elements))
    s = VFunctor(S, F.cat, tuple(keep))
    return Split(k, F, elements, S, r, s)


def S_on_morphism(f, split_src, split_tgt):
    """Sφ: S(X', θ') → S(X, θ), ψ ↦ ψ∘φ, for φ: (X, θ) → (X', θ')."""
    q = f.phi.quantale
    idx = split_src.index
    return VFunctor(split_tgt.cat, split_src.cat,
                    tuple(idx[precompose(q, v, f.phi.m)] for v in split_tgt.elements))


@dataclass
class ThetaHat:
    hat: VFunctor      # X → S(X, θ), x ↦ x^*∘θ
    plus_low: vrel.VRel   # θ̂₊ = θ̂_*∘θ : X⇸S
    plus_up: vrel.VRel    # θ̂⁺ = θ∘θ̂^* : S⇸X
    omega: vrel.VRel      # θ̂₊∘θ̂⁺ : S⇸S


def theta_hat(sp):
    k = sp.kar
    X, th = k.base, k.theta
    q = X.quantale
    idx = sp.index
    hat = VFunctor(X, sp.cat, tuple(idx[precompose(q, yoneda_vector(X, x), th.m)] for x in range(len(X))))
    low = vrel.compose(th, vmod.rel_of(X, sp.cat, ps.companion_m(hat)))
    up = vrel.compose(vmod.rel_of(sp.cat, X, ps.conjoint_m(hat)), th)
    omega = vrel.compose(up, low)
    return ThetaHat(hat, low, up, omega)


def split_I(X, family=None, w=None):
    """I(X) = (X, θ) with θ the module of t ⊣ Sup^Φ."""
    family = family or phifam.family_all()
    w = w or phifam.is_phi_distributive(X, family)
    if w is None:
        raise InvariantViolation("not Phi-distributive")
    return kar_object(X, w.theta.rel, family), w


def functor_image(f, k_src, k_tgt):
    """f^# : (X', θ') → (X, θ) for f: X → X', as θ∘f^*∘θ' in diagrammatic form."""
    X, Xp = f.dom, f.cod
    fstar = vmod.rel_of(Xp, X, ps.conjoint_m(f))
    phi = vrel.compose(vrel.compose(k_tgt.theta, fstar), k_src.theta)
    return KarMorphism(k_tgt, k_src, phi)


def is_phi_cocontinuous(f, wX, wY):
    """f(Sup^Φ ψ) ≅ Sup^Φ(Φf(ψ)) for every ψ ∈ ΦX."""
    q = f.dom.quantale
    FX, FY = wX.F, wY.F
    for i, v in enumerate(FX.elements):
        img = ps.direct_image(f, v)
        if img not in FY.index:
            return False
        if not vcat.equivalent(f.cod, f.map[wX.sup.map[i]], wY.sup.map[FY.index[img]]):
            return False
    return True


def roundtrip_witnesses(k, report=None):
    """Check (X, θ) ≅ I S(X, θ) and S(X, θ) ≅ S I S(X, θ).

    * θ̂⁺∘θ̂₊ = θ and θ̂₊∘θ̂⁺ = ω, where ω is the module of the left adjoint t
      of Sup^Φ on S(X, θ), computed independently;
    * Sup^Φ_S = −∘θ̂₊ and t = mate(ω);
    * for L = S(X, θ): x ↦ x^*∘θ_L and Sup^Φ are inverse V-functor isomorphisms.
    """
    rep = report or Report("karoubi roundtrip")
    sp = split_S(k)
    th = theta_hat(sp)
    X, q = k.base, k.base.quantale
    rep.check("theta+ . theta_+ = theta", vrel.compose(th.plus_low, th.plus_up) == k.theta, lambda: k)
    L = sp.cat
    w = phifam.is_phi_distributive(L, k.family)
    if not rep.check("S(X,theta) is Phi-distributive", w is not None, lambda: k):
        return rep
    rep.check("theta_+ . theta+ = omega", th.omega.m == w.theta.m, lambda: k)
    # Sup^Φ_S(Ψ) = Ψ∘θ̂₊ as presheaves on X
    for i, Psi in enumerate(w.F.elements):
        v = precompose(q, Psi, th.plus_low.m)
        rep.check("Sup_S = -.theta_+", v == sp.elements[w.sup.map[i]], lambda: (k, Psi))
    # t = mate(ω)
    for s in range(len(L)):
        col = tuple(row[s] for row in th.omega.m)
        rep.check("t = mate(omega)", col == w.F.elements[w.t.map[s]], lambda: (k, s))
    si_roundtrip(L, k.family, w, rep)
    return rep


def si_roundtrip(L, family, w=None, report=None):
    """For Φ-distributive L: x ↦ x^*∘θ and Sup^Φ are inverse isomorphisms L ≅ S I L."""
    rep = report or Report("SI roundtrip")
    kI, w = split_I(L, family, w)
    sp = split_S(kI, w.F)
    q = L.quantale
    idx = sp.index
    to_S = []
    for x in range(len(L)):
        v = precompose(q, yoneda_vector(L, x), kI.theta.m)
        to_S.append(idx.get(v))
    if not rep.check("x -> x^*.theta lands in S", None not in to_S, lambda: L):
        return rep
    f = VFunctor(L, sp.cat, tuple(to_S))
    g = VFunctor(sp.cat, L, tuple(w.sup.map[w.F.index[v]] for v in sp.elements))
    rep.check("x -> x^*.theta is a V-functor", vcat.is_functor(f), lambda: L)
    rep.check("Sup on S is a V-functor", vcat.is_functor(g), lambda: L)
    rep.check("Sup(x^*.theta) = x", all(vcat.equivalent(L, g.map[f.map[x]], x) for x in range(len(L))), lambda: L)
    rep.check("(Sup psi)^*.theta = psi", all(f.map[g.map[j]] == j for j in range(len(sp.cat))), lambda: L)
    return rep


def general_split(X, h, family=None, F=None):
    """Φ-cocontinuous sections t: X → ΦX of an algebra h: ΦX → X.

    Returns the list of all sections found by exhaustive search; by the KZ
    property it has at most one element, which is then left adjoint to h.
    """
    family = family or phifam.family_all()
    F = F or phifam.phi_presheaves(X, family)
    q = X.quantale
    out = []
    for t in vcat.all_functors(X, F.cat):
        if any(h.map[t.map[x]] != x for x in range(len(X))):
            continue
        ok = True
        for i, v in enumerate(F.elements):
            img = ps.direct_image(t, v)
            if not family.member(F.cat, img):
                ok = False
                break
            lhs = F.elements[t.map[h.map[i]]]
            if phifam.phi_mult(F, img) != lhs:
                ok = False
                break
        if ok:
            out.append(t)
    return out


def is_left_adjoint_to(t, h):
    """t ⊣ h: b(t x, p) = a(x, h p)."""
    X, B = t.dom, t.cod
    return all(B.hom[t.map[x]][p] == X.hom[x][h.map[p]] for x in range(len(X)) for p in range(len(B)))


# -- iso classes ----------------------------------------------------------------

def kar_classes(objects, report=None):
    """Partition KarObjects into kar-iso classes.

    The canonical form of S(X, θ) groups candidates (an invariant, since S is
    a functor); within a group each object is matched to a class
    representative by an explicit kar-isomorphism search, and a failure
    opens a new class.  Returns a list of (representative, members).
    """
    from .universe import refined_canonical_form
    rep = report
    groups = {}
    for k in objects:
        key = refined_canonical_form(split_S(k).cat)
        groups.setdefault(key, []).append(k)
    classes = []
    for key in sorted(groups):
        reps = []
        for k in groups[key]:
            for r in reps:
                if kar_isomorphism(k, r[0]) is not None:
                    r[1].append(k)
                    break
            else:
                reps.append((k, [k]))
        if rep is not None:
            rep.check("one kar-iso class per S-invariant", len(reps) == 1, lambda: key)
        classes.extend(reps)
    return classes
