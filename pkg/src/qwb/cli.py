"""Command line entry point: ``qwb <command> ...``.

Exit status is 0 when every checked law holds, 1 when some law fails and
2 for input errors (bad files, unknown names, caps exceeded).
"""
import argparse
import json
import sys

from . import distributivity as dist
from . import frames, karoubi, phifam, suites, textio, ultra, universe, vcat
from . import presheaf as ps
from . import quantale as qmod
from .errors import QwbError
from .report import Report

DEFAULT_MAX = {"boolean": 4}
DEFAULT_CHAIN_MAX = 3


def _warn(msg):
    print(f"warning: {msg}", file=sys.stderr)


def _check_caps(args):
    if getattr(args, "cap", None) is not None and args.cap > ps.DEFAULT_CAP:
        _warn(f"presheaf cap raised above the default {ps.DEFAULT_CAP}")
    m = getattr(args, "max", None)
    if m is not None:
        q = args.quantale or "boolean"
        limit = DEFAULT_MAX.get(q, DEFAULT_CHAIN_MAX)
        if m > limit:
            _warn(f"--max {m} exceeds the default bound {limit} for {q}")


def _emit(args, data, text):
    if args.format == "machine":
        print(json.dumps(data, sort_keys=True, ensure_ascii=False))
    else:
        print(text)


def _emit_report(args, rep, timing=True):
    print(rep.render(args.format, timing=timing))
    return 0 if rep.ok else 1


def _load(path):
    return textio.parse_file(path)


def _vcat_of(doc, name=None):
    return doc.get("vcat", name)


def _table(X):
    q = X.quantale
    w = max([len(o) for o in X.objects] + [len(e) for e in q.elements])
    head = " " * w + " | " + " ".join(o.rjust(w) for o in X.objects)
    rows = [head, "-" * len(head)]
    for i, o in enumerate(X.objects):
        rows.append(o.rjust(w) + " | " + " ".join(q.label(v).rjust(w) for v in X.hom[i]))
    return "\n".join(rows)


def _hom_labels(X):
    q = X.quantale
    return [[q.label(v) for v in row] for row in X.hom]


# -- commands -----------------------------------------------------------------

def cmd_check(args):
    doc = _load(args.file)
    rep = Report("check")
    for it in doc.items:
        if it.kind == "quantale":
            bad = qmod.validate(it.obj)
            rep.check(f"quantale {it.name} axioms", not bad, lambda: "; ".join(bad))
        elif it.kind == "vcat":
            rep.check(f"vcat {it.name} valid", vcat.is_valid(it.obj), lambda: it.obj)
        elif it.kind == "kar":
            bad = it.obj.validate()
            rep.check(f"kar {it.name} valid", not bad, lambda: "; ".join(bad))
        elif it.kind == "lattice":
            rep.check(f"lattice {it.name} is a lattice", not it.obj.validate(), lambda: it.obj)
        elif it.kind == "space":
            rep.check(f"space {it.name} is a topology", not it.obj.validate(), lambda: it.obj)
        else:
            rep.check(f"{it.kind} {it.name} parsed", True)
    again = textio.parse(textio.dump_document(doc))
    rep.check("parse . dump = identity", [i.obj for i in again.items] == [i.obj for i in doc.items])
    return _emit_report(args, rep, timing=False)


def cmd_presheaf(args):
    X = _vcat_of(_load(args.file), args.name)
    q = X.quantale
    vecs = ps.presheaf_vectors(X, args.cap)
    data = {"count": len(vecs), "presheaves": [[q.label(v) for v in p] for p in vecs]}
    lines = [f"psi{i}: " + " ".join(q.label(v) for v in p) for i, p in enumerate(vecs)]
    _emit(args, data, "\n".join(lines))
    return 0


def cmd_ccd(args):
    X = _vcat_of(_load(args.file), args.name)
    q = X.quantale
    P = ps.build_presheaves(X, args.cap)
    w = dist.ccd_witness(X, P)
    if w is None:
        why = dist.ccd_obstruction(X, P)
        _emit(args, {"ccd": False, "obstruction": why}, f"not ccd: {why}")
        return 1
    t = {X.objects[y]: [q.label(v) for v in P.elements[w.t.map[y]]] for y in range(len(X))}
    theta = [[q.label(v) for v in row] for row in w.theta.m]
    lines = ["ccd: yes", "t (left adjoint of Sup):"]
    lines += [f"  t({o}) = " + " ".join(v) for o, v in t.items()]
    lines.append("totally-below relation theta(x, y):")
    lines += ["  " + X.objects[i] + ": " + " ".join(r) for i, r in enumerate(theta)]
    _emit(args, {"ccd": True, "t": t, "theta": theta}, "\n".join(lines))
    return 0


def cmd_dualize(args):
    X = _vcat_of(_load(args.file), args.name)
    P = ps.build_presheaves(X, args.cap)
    DX = P.cat
    data = {"DX": {"objects": list(DX.objects), "hom": _hom_labels(DX)}}
    text = ["DX = PX:", _table(DX)]
    w = dist.ccd_witness(X, P)
    if w is None:
        data["SL"] = None
        text += ["", f"SL: not ccd ({dist.ccd_obstruction(X, P)})"]
    else:
        SL, _ = dist.S_object(w)
        data["SL"] = {"objects": list(SL.objects), "hom": _hom_labels(SL)}
        text += ["", "SL (totally compact elements):", _table(SL)]
    _emit(args, data, "\n".join(text))
    return 0


def cmd_phi(args):
    family = phifam.family_by_name(args.family)
    X = _vcat_of(_load(args.file), args.name)
    F = phifam.phi_presheaves(X, family, cap=args.cap)
    check = args.check
    if check == "cocomplete":
        ok = phifam.is_phi_cocomplete(X, family, F) is not None
    elif check == "distributive":
        ok = phifam.is_phi_distributive(X, family, F) is not None
    elif check == "algebraic":
        ok = phifam.is_phi_algebraic(X, family)
    else:
        ok = phifam.is_phi_sober(X, family, F)
    _emit(args, {"family": family.name, "check": check, "holds": bool(ok), "phi_size": len(F)},
          f"{check} ({family.name}): {'yes' if ok else 'no'}  [|PhiX| = {len(F)}]")
    return 0 if ok else 1


def cmd_split(args):
    doc = _load(args.file)
    k = doc.get("kar", args.name)
    bad = k.validate()
    if bad:
        raise QwbError("; ".join(bad))
    sp = karoubi.split_S(k)
    S = sp.cat
    q = S.quantale
    fmt = lambda v: "<" + " ".join(q.label(x) for x in v) + ">"
    rep = karoubi.roundtrip_witnesses(k)
    if args.format == "machine":
        data = {
            "S": {"objects": list(S.objects), "elements": [[q.label(x) for x in v] for v in sp.elements],
                  "hom": _hom_labels(S)},
            "r": [S.objects[j] for j in sp.r.map],
            "s": [sp.F.cat.objects[j] for j in sp.s.map],
            "roundtrip": json.loads(rep.render("machine", timing=False)),
        }
        print(json.dumps(data, sort_keys=True, ensure_ascii=False))
    else:
        lines = ["S(X, theta):", _table(S), "r: PhiX -> S"]
        lines += [f"  {fmt(v)} -> {S.objects[j]}" for v, j in zip(sp.F.elements, sp.r.map)]
        lines.append("s: S -> PhiX")
        lines += [f"  {S.objects[i]} -> {fmt(sp.F.elements[j])}" for i, j in enumerate(sp.s.map)]
        lines.append(rep.render("text", timing=False))
        print("\n".join(lines))
    return 0 if rep.ok else 1


def cmd_frames(args):
    if args.roundtrip is None:
        rep = frames.frames_report(args.max or 5)
        return _emit_report(args, rep)
    doc = _load(args.roundtrip)
    rep = Report("frames roundtrip")
    for it in doc.items:
        if it.kind == "lattice":
            L = it.obj
            if not rep.check(f"{it.name} is a frame", L.is_frame(), lambda: L):
                continue
            FL = frames.filter_space(L)
            rep.check("every filter principal", len(FL.filters) == len(L), lambda: L)
            frames.rho_report(FL, rep)
            frames.sigma_report(FL.space, rep)
        elif it.kind == "space":
            X = it.obj
            frames.sigma_report(X, rep)
            if frames.is_cd_space(X):
                frames.lambda_report(X, rep)
    again = textio.parse(textio.dump_document(doc))
    rep.check("parse . dump = identity", [i.obj for i in again.items] == [i.obj for i in doc.items])
    return _emit_report(args, rep, timing=False)


def cmd_ultra(args):
    n = args.verify if args.verify is not None else (args.max or 4)
    rep = ultra.ultra_report(max_n=n, relation_n=min(n, 3), kleisli_n=min(n, 2), space_n=min(n, 3))
    return _emit_report(args, rep)


def cmd_suite(args):
    names = list(suites.SUITES) if args.name == "all" else [args.name]
    extra = {}
    if args.file:
        if names != ["quantale"]:
            raise QwbError("--file applies to the quantale suite only")
        extra["quantales"] = textio.parse_file(args.file, strict=False).of_kind("quantale")
    status = 0
    for name in names:
        rep = suites.run_suite(name, quantale=args.quantale, max=args.max, cap=args.cap,
                               sampled=args.sampled or None, seed=args.seed, **extra)
        status = max(status, _emit_report(args, rep, timing=not args.no_timing))
    return status


def cmd_enumerate(args):
    q = qmod.by_name(args.quantale or "boolean")
    m = args.max if args.max is not None else DEFAULT_MAX.get(q.name, DEFAULT_CHAIN_MAX)
    U = universe.universe(q, m, dedup=args.dedup, min_objects=0)
    data = {"quantale": q.name, "dedup": args.dedup, "counts": {str(k): v for k, v in U.counts.items()}}
    text = "\n".join(f"{q.name} n={k}: {v}" for k, v in U.counts.items())
    _emit(args, data, text)
    return 0


# -- parser -------------------------------------------------------------------

def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--quantale", help="boolean or chainN")
    common.add_argument("--max", type=int, help="largest instance size")
    common.add_argument("--cap", type=int, default=ps.DEFAULT_CAP, help="presheaf candidate cap")
    common.add_argument("--sampled", action="store_true", help="allow seeded sampling past the cap")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--format", choices=("text", "machine"), default="text")

    p = argparse.ArgumentParser(prog="qwb", description="Finite quantale-enriched category workbench")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("check", parents=[common], help="parse and validate a file")
    s.add_argument("file")
    s.set_defaults(func=cmd_check)

    for name, func, hlp in (("presheaf", cmd_presheaf, "list all presheaves of a vcat"),
                            ("ccd", cmd_ccd, "complete distributivity witness or obstruction"),
                            ("dualize", cmd_dualize, "print the SL and DX tables")):
        s = sub.add_parser(name, parents=[common], help=hlp)
        s.add_argument("file")
        s.add_argument("--name", help="vcat section to use (default: first)")
        s.set_defaults(func=func)

    s = sub.add_parser("phi", parents=[common], help="Phi-family checks")
    s.add_argument("family", choices=sorted(phifam.FAMILIES))
    s.add_argument("file")
    s.add_argument("--name")
    s.add_argument("--check", choices=("cocomplete", "distributive", "algebraic", "sober"), default="cocomplete")
    s.set_defaults(func=cmd_phi)

    s = sub.add_parser("split", parents=[common], help="split an idempotent module")
    s.add_argument("file")
    s.add_argument("--name")
    s.set_defaults(func=cmd_split)

    s = sub.add_parser("frames", parents=[common], help="frame/space duality checks")
    s.add_argument("--roundtrip", metavar="FILE")
    s.set_defaults(func=cmd_frames)

    s = sub.add_parser("ultra", parents=[common], help="ultrafilter monad checks")
    s.add_argument("--verify", type=int, metavar="N")
    s.set_defaults(func=cmd_ultra)

    s = sub.add_parser("suite", parents=[common], help="run an acceptance suite")
    s.add_argument("name", choices=[*suites.SUITES, "all"])
    s.add_argument("--no-timing", action="store_true", help="omit wall-clock (for byte comparisons)")
    s.add_argument("--file", help="quantale suite: check the quantales in this file instead")
    s.set_defaults(func=cmd_suite)

    s = sub.add_parser("enumerate", parents=[common], help="count V-categories per size")
    s.add_argument("--dedup", action="store_true", help="count isomorphism classes")
    s.set_defaults(func=cmd_enumerate)
    return p


def main(argv=None):
    args = build_parser().parse_args(argv)
    _check_caps(args)
    try:
        return args.func(args)
    except (QwbError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
