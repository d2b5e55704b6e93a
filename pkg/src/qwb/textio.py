"""Plain-text sections for quantales, relations, categories, modules,
Karoubi objects, lattices and finite spaces.

A file is a sequence of sections, each opened by a header such as
``[vcat]`` and followed by ``key value…`` lines.  ``#`` starts a comment.
Sections may refer by name to quantales and categories defined earlier in
the same file; ``boolean`` and ``chainN`` are always available.
"""
import re
from dataclasses import dataclass, field

from . import frames, quantale, vcat, vmod, vrel
from .errors import InvariantViolation, ParseError, QwbError

KINDS = ("quantale", "vrel", "vcat", "vmod", "kar", "lattice", "space")


@dataclass
class Item:
    kind: str
    name: str
    obj: object
    line: int = 0


@dataclass
class Document:
    items: list = field(default_factory=list)

    def get(self, kind=None, name=None):
        for it in self.items:
            if (kind is None or it.kind == kind) and (name is None or it.name == name):
                return it.obj
        raise KeyError(f"no {kind or 'section'}{' ' + name if name else ''} in document")

    def of_kind(self, kind):
        return [it.obj for it in self.items if it.kind == kind]

    def names(self, kind):
        return {it.name: it.obj for it in self.items if it.kind == kind}


@dataclass
class _Line:
    no: int
    tokens: list  # (text, column)

    @property
    def key(self):
        return self.tokens[0][0]

    @property
    def args(self):
        return [t for t, _ in self.tokens[1:]]

    def col(self, i):
        return self.tokens[i][1] if i < len(self.tokens) else (self.tokens[-1][1] if self.tokens else 1)

    def err(self, msg, i=0):
        return ParseError(msg, self.no, self.col(i))


def _lines(text):
    for no, raw in enumerate(text.splitlines(), 1):
        body = raw.split("#", 1)[0]
        toks = [(m.group(), m.start() + 1) for m in re.finditer(r"\S+", body)]
        if toks:
            yield _Line(no, toks)


def _sections(text):
    out = []
    for ln in _lines(text):
        tok = ln.key
        if tok.startswith("["):
            if not tok.endswith("]") or len(ln.tokens) != 1:
                raise ln.err("malformed section header")
            kind = tok[1:-1]
            if kind not in KINDS:
                raise ln.err(f"unknown section [{kind}]")
            out.append((kind, ln, []))
        elif not out:
            raise ln.err("content before the first section header")
        else:
            out[-1][2].append(ln)
    return out


def _single(lines, key, required=True, default=None, hdr=None):
    found = [ln for ln in lines if ln.key == key]
    if len(found) > 1:
        raise found[1].err(f"duplicate '{key}'")
    if not found:
        if required:
            raise ParseError(f"missing '{key}'", hdr.no if hdr else (lines[0].no if lines else 0), 1)
        return default, None
    return found[0].args, found[0]


def _check_keys(lines, allowed):
    for ln in lines:
        if ln.key not in allowed:
            raise ln.err(f"unknown key '{ln.key}'")


class _Ctx:
    def __init__(self, strict=True):
        self.strict = strict
        self.doc = Document()
        self.quantales = {}
        self.cats = {}

    def quantale(self, name, ln, col=1):
        if name in self.quantales:
            return self.quantales[name]
        try:
            return quantale.by_name(name)
        except QwbError:
            raise ln.err(f"unknown quantale {name!r}", col) from None

    def cat(self, name, ln, col=1):
        if name not in self.cats:
            raise ln.err(f"unknown vcat {name!r}", col)
        return self.cats[name]


def _label(ln, i, table, what):
    tok = ln.tokens[i][0] if i < len(ln.tokens) else None
    if tok is None:
        raise ln.err(f"missing {what}", i)
    if tok not in table:
        raise ln.err(f"unknown {what} {tok!r}", i)
    return table[tok]


def _entries(lines, key, dom, cod, q, default_fn):
    pos_d = {x: i for i, x in enumerate(dom)}
    pos_c = {y: i for i, y in enumerate(cod)}
    vals = {v: i for i, v in enumerate(q.elements)}
    m = [[default_fn(i, j) for j in range(len(cod))] for i in range(len(dom))]
    for ln in lines:
        if ln.key != key:
            continue
        if len(ln.tokens) != 4:
            raise ln.err(f"'{key}' needs three arguments")
        i = _label(ln, 1, pos_d, "object")
        j = _label(ln, 2, pos_c, "object")
        m[i][j] = _label(ln, 3, vals, "value")
    return tuple(tuple(r) for r in m)


def _parse_quantale(hdr, lines, ctx):
    _check_keys(lines, {"name", "elements", "order", "tensor", "row", "unit"})
    name, _ = _single(lines, "name", hdr=hdr)
    elems, eln = _single(lines, "elements", hdr=hdr)
    if not name:
        raise hdr.err("quantale needs a name")
    name = name[0]
    pos = {e: i for i, e in enumerate(elems)}
    if len(pos) != len(elems):
        raise eln.err("duplicate element labels")
    n = len(elems)
    order_lines = [ln for ln in lines if ln.key == "order"]
    if not order_lines:
        raise hdr.err("missing 'order'")
    numeric = None

    def numbers(ln):
        try:
            vals = [float("inf") if e == "inf" else int(e) for e in elems]
        except ValueError:
            raise ln.err("numeric shorthand needs integer labels and 'inf'", 1) from None
        finite = sorted(v for v in vals if v != float("inf"))
        if finite != list(range(len(finite))) or vals.count(float("inf")) != 1:
            raise ln.err("numeric shorthand needs labels 0..n and inf", 1)
        return vals

    if len(order_lines) == 1 and order_lines[0].args == ["numeric-reversed"]:
        numeric = numbers(order_lines[0])
        leq = [[numeric[b] <= numeric[a] for b in range(n)] for a in range(n)]
    else:
        leq = [[i == j for j in range(n)] for i in range(n)]
        for ln in order_lines:
            for k, pair in enumerate(ln.args, 1):
                if pair.count("<=") != 1:
                    raise ln.err("order pairs are written a<=b", k)
                a, b = pair.split("<=")
                if a not in pos or b not in pos:
                    raise ln.err(f"unknown element in {pair!r}", k)
                leq[pos[a]][pos[b]] = True
    targ, tln = _single(lines, "tensor", hdr=hdr)
    if targ == ["plus-truncated"]:
        vals = numeric or numbers(tln)
        top = max(v for v in vals if v != float("inf"))
        inf = vals.index(float("inf"))
        tensor = [[vals.index(vals[a] + vals[b]) if vals[a] + vals[b] <= top else inf
                   for b in range(n)] for a in range(n)]
    elif targ == ["table"]:
        rows = {}
        for ln in lines:
            if ln.key != "row":
                continue
            a = _label(ln, 1, pos, "element")
            if len(ln.tokens) != n + 2:
                raise ln.err(f"row needs {n} entries", len(ln.tokens) - 1)
            rows[a] = [_label(ln, 2 + j, pos, "element") for j in range(n)]
        if len(rows) != n:
            raise tln.err("tensor table needs one row per element")
        tensor = [rows[a] for a in range(n)]
    else:
        raise tln.err("tensor is 'plus-truncated' or 'table'", 1)
    uarg, uln = _single(lines, "unit", hdr=hdr)
    unit = _label(uln, 1, pos, "element")
    q = quantale.Quantale(name, elems, leq, tensor, unit)
    bad = quantale.validate(q)
    if bad and ctx.strict:
        raise InvariantViolation(f"line {hdr.no}: quantale {name}: {bad[0]}", bad[0])
    ctx.quantales[name] = q
    return name, q


def _parse_vrel(hdr, lines, ctx):
    _check_keys(lines, {"name", "quantale", "dom", "cod", "entry"})
    name, _ = _single(lines, "name", False, ["r"])
    qn, qln = _single(lines, "quantale", hdr=hdr)
    q = ctx.quantale(qn[0], qln, 1)
    dom, _ = _single(lines, "dom", False, [])
    cod, _ = _single(lines, "cod", False, [])
    m = _entries(lines, "entry", dom, cod, q, lambda i, j: q.bottom)
    return name[0], vrel.VRel(q, tuple(dom), tuple(cod), m)


def _parse_vcat(hdr, lines, ctx):
    _check_keys(lines, {"name", "quantale", "objects", "hom"})
    name, _ = _single(lines, "name", False, [f"X{len(ctx.cats)}"])
    qn, qln = _single(lines, "quantale", hdr=hdr)
    q = ctx.quantale(qn[0], qln, 1)
    objs, oln = _single(lines, "objects", False, [])
    if len(set(objs)) != len(objs):
        raise oln.err("duplicate object labels")
    m = _entries(lines, "hom", objs, objs, q, lambda i, j: q.unit if i == j else q.bottom)
    X = vcat.VCat(q, tuple(objs), m)
    bad = vcat.validate(X)
    if bad:
        raise InvariantViolation(f"line {hdr.no}: vcat {name[0]}: {bad[0]}", bad[0])
    ctx.cats[name[0]] = X
    return name[0], X


def _parse_vmod(hdr, lines, ctx):
    _check_keys(lines, {"name", "dom", "cod", "entry"})
    name, _ = _single(lines, "name", False, ["phi"])
    dn, dln = _single(lines, "dom", hdr=hdr)
    cn, cln = _single(lines, "cod", hdr=hdr)
    X = ctx.cat(dn[0], dln, 1)
    Y = ctx.cat(cn[0], cln, 1)
    if X.quantale is not Y.quantale and X.quantale != Y.quantale:
        raise cln.err("dom and cod are over different quantales", 1)
    q = X.quantale
    m = _entries(lines, "entry", X.objects, Y.objects, q, lambda i, j: q.bottom)
    r = vmod.rel_of(X, Y, m)
    if not vmod.is_module(X, Y, r):
        w = vmod.module_violation(X, Y, r)
        raise InvariantViolation(f"line {hdr.no}: vmod {name[0]}: module law fails at {w}", w)
    return name[0], vmod.VModule(X, Y, r)


def _parse_kar(hdr, lines, ctx):
    from . import karoubi, phifam
    _check_keys(lines, {"name", "vcat", "family", "entry"})
    name, _ = _single(lines, "name", False, ["k"])
    cn, cln = _single(lines, "vcat", hdr=hdr)
    X = ctx.cat(cn[0], cln, 1)
    fam, fln = _single(lines, "family", False, ["all"])
    try:
        family = phifam.family_by_name(fam[0])
    except (KeyError, QwbError):
        raise fln.err(f"unknown family {fam[0]!r}", 1) from None
    q = X.quantale
    m = _entries(lines, "entry", X.objects, X.objects, q, lambda i, j: q.bottom)
    try:
        k = karoubi.kar_object(X, vmod.rel_of(X, X, m), family)
    except InvariantViolation as e:
        raise InvariantViolation(f"line {hdr.no}: kar {name[0]}: {e}", e.witness) from None
    return name[0], k


def _parse_lattice(hdr, lines, ctx):
    _check_keys(lines, {"name", "elements", "leq"})
    name, _ = _single(lines, "name", False, ["L"])
    elems, eln = _single(lines, "elements", hdr=hdr)
    pos = {e: i for i, e in enumerate(elems)}
    if len(pos) != len(elems):
        raise eln.err("duplicate element labels")
    pairs = []
    for ln in lines:
        if ln.key == "leq":
            if len(ln.tokens) != 3:
                raise ln.err("'leq' needs two elements")
            a = _label(ln, 1, pos, "element")
            b = _label(ln, 2, pos, "element")
            pairs.append((elems[a], elems[b]))
    try:
        L = frames.from_pairs(elems, pairs)
    except InvariantViolation as e:
        raise InvariantViolation(f"line {hdr.no}: lattice {name[0]}: {e.witness}", e.witness) from None
    return name[0], L


def _parse_space(hdr, lines, ctx):
    _check_keys(lines, {"name", "points", "open"})
    name, _ = _single(lines, "name", False, ["S"])
    pts, pln = _single(lines, "points", False, [])
    pos = {p: i for i, p in enumerate(pts)}
    opens = []
    for ln in lines:
        if ln.key == "open":
            opens.append(frozenset(_label(ln, i, pos, "point") for i in range(1, len(ln.tokens))))
    try:
        X = frames.space(pts, opens)
    except InvariantViolation as e:
        raise InvariantViolation(f"line {hdr.no}: space {name[0]}: {e.witness}", e.witness) from None
    return name[0], X


_PARSERS = {
    "quantale": _parse_quantale, "vrel": _parse_vrel, "vcat": _parse_vcat, "vmod": _parse_vmod,
    "kar": _parse_kar, "lattice": _parse_lattice, "space": _parse_space,
}


def parse(text, strict=True):
    """Parse a document; ``strict=False`` keeps quantales that fail their axioms."""
    ctx = _Ctx(strict)
    for kind, hdr, lines in _sections(text):
        name, obj = _PARSERS[kind](hdr, lines, ctx)
        ctx.doc.items.append(Item(kind, name, obj, hdr.no))
    return ctx.doc


def parse_file(path, strict=True):
    with open(path, encoding="utf-8") as fh:
        return parse(fh.read(), strict)


# -- dumping ---------------------------------------------------------------

def _is_builtin(q):
    try:
        return quantale.by_name(q.name) == q
    except QwbError:
        return False


def dump_quantale(q):
    out = ["[quantale]", f"name {q.name}", "elements " + " ".join(q.elements)]
    pairs = [f"{q.elements[a]}<={q.elements[b]}" for a in range(q.size) for b in range(q.size)
             if a != b and q.leq_table[a][b]]
    out.append("order " + " ".join(pairs) if pairs else "order")
    out.append("tensor table")
    for a in range(q.size):
        out.append(f"row {q.elements[a]} " + " ".join(q.elements[v] for v in q.tensor_table[a]))
    out.append(f"unit {q.elements[q.unit]}")
    return out


def _entry_lines(key, dom, cod, m, skip):
    return [f"{key} {dom[i]} {cod[j]} {m[i][j]}" for i in range(len(dom)) for j in range(len(cod)) if not skip(i, j)]


def _lbl(q, m):
    return tuple(tuple(q.elements[v] for v in row) for row in m)


def dump_vrel(r, name="r"):
    q = r.quantale
    out = ["[vrel]", f"name {name}", f"quantale {q.name}", "dom " + " ".join(r.dom), "cod " + " ".join(r.cod)]
    out += _entry_lines("entry", r.dom, r.cod, _lbl(q, r.m), lambda i, j: r.m[i][j] == q.bottom)
    return out


def dump_vcat(X, name="X"):
    q = X.quantale
    out = ["[vcat]", f"name {name}", f"quantale {q.name}", "objects " + " ".join(X.objects)]
    out += _entry_lines("hom", X.objects, X.objects, _lbl(q, X.hom),
                        lambda i, j: X.hom[i][j] == (q.unit if i == j else q.bottom))
    return out


def dump_vmod(phi, name="phi", dom="X", cod="Y"):
    q = phi.dom.quantale
    out = ["[vmod]", f"name {name}", f"dom {dom}", f"cod {cod}"]
    out += _entry_lines("entry", phi.dom.objects, phi.cod.objects, _lbl(q, phi.m),
                        lambda i, j: phi.m[i][j] == q.bottom)
    return out


def dump_kar(k, name="k", cat="X"):
    q = k.base.quantale
    out = ["[kar]", f"name {name}", f"vcat {cat}", f"family {k.family.name}"]
    out += _entry_lines("entry", k.base.objects, k.base.objects, _lbl(q, k.theta.m),
                        lambda i, j: k.theta.m[i][j] == q.bottom)
    return out


def dump_lattice(L, name="L"):
    out = ["[lattice]", f"name {name}", "elements " + " ".join(L.elements)]
    n = len(L)
    for a in range(n):
        for b in range(n):
            # covering pairs only; parsing closes transitively
            if a != b and L.le[a][b] and not any(c not in (a, b) and L.le[a][c] and L.le[c][b] for c in range(n)):
                out.append(f"leq {L.elements[a]} {L.elements[b]}")
    return out


def dump_space(X, name="S"):
    out = ["[space]", f"name {name}", "points " + " ".join(X.points)]
    for U in X.opens:
        out.append(("open " + " ".join(X.points[i] for i in sorted(U))).rstrip())
    return out


def dump(obj, name=None):
    """Text for one structure, preceded by whatever it refers to."""
    blocks = []
    quants = []

    def need_q(q):
        if not _is_builtin(q) and q not in quants:
            quants.append(q)
            blocks.append(dump_quantale(q))

    if isinstance(obj, Document):
        return dump_document(obj)
    if isinstance(obj, quantale.Quantale):
        blocks.append(dump_quantale(obj))
    elif isinstance(obj, vrel.VRel):
        need_q(obj.quantale)
        blocks.append(dump_vrel(obj, name or "r"))
    elif isinstance(obj, vcat.VCat):
        need_q(obj.quantale)
        blocks.append(dump_vcat(obj, name or "X"))
    elif isinstance(obj, vmod.VModule):
        need_q(obj.dom.quantale)
        blocks.append(dump_vcat(obj.dom, "X"))
        blocks.append(dump_vcat(obj.cod, "Y"))
        blocks.append(dump_vmod(obj, name or "phi", "X", "Y"))
    elif isinstance(obj, frames.MeetSemilattice):
        blocks.append(dump_lattice(obj, name or "L"))
    elif isinstance(obj, frames.FiniteSpace):
        blocks.append(dump_space(obj, name or "S"))
    else:
        from .karoubi import KarObject
        if not isinstance(obj, KarObject):
            raise TypeError(f"cannot dump {type(obj).__name__}")
        need_q(obj.base.quantale)
        blocks.append(dump_vcat(obj.base, "X"))
        blocks.append(dump_kar(obj, name or "k", "X"))
    return "\n\n".join("\n".join(b) for b in blocks) + "\n"


def dump_document(doc):
    blocks = []
    cat_names = {}
    for it in doc.items:
        o = it.obj
        if it.kind == "quantale":
            blocks.append(dump_quantale(o))
        elif it.kind == "vrel":
            blocks.append(dump_vrel(o, it.name))
        elif it.kind == "vcat":
            cat_names[id(o)] = it.name
            blocks.append(dump_vcat(o, it.name))
        elif it.kind == "vmod":
            blocks.append(dump_vmod(o, it.name, cat_names[id(o.dom)], cat_names[id(o.cod)]))
        elif it.kind == "kar":
            blocks.append(dump_kar(o, it.name, cat_names[id(o.base)]))
        elif it.kind == "lattice":
            blocks.append(dump_lattice(o, it.name))
        else:
            blocks.append(dump_space(o, it.name))
    return "\n\n".join("\n".join(b) for b in blocks) + "\n"
