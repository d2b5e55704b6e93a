import glob
import os

import pytest

from qwb import frames, karoubi, textio, universe, vcat, vmod
from qwb import quantale as qm
from qwb.errors import InvariantViolation, ParseError


def roundtrip(obj, name=None):
    doc = textio.parse(textio.dump(obj, name))
    return doc.items[-1].obj


def test_sample_files_roundtrip(samples):
    for path in sorted(glob.glob(os.path.join(samples, "*.txt"))):
        if os.path.basename(path).startswith("bad_"):
            continue
        doc = textio.parse_file(path)
        again = textio.parse(textio.dump_document(doc))
        assert [i.obj for i in again.items] == [i.obj for i in doc.items], path


def test_structures_roundtrip():
    q = qm.make_chain(2)
    for X in universe.enumerate_vcats(q, 2):
        assert roundtrip(X, "X") == X
    X = universe.enumerate_vcats(q, 2)[5]
    phi = vmod.all_modules(X, X)[3]
    assert roundtrip(phi).rel == phi.rel
    assert roundtrip(phi.rel, "r") == phi.rel
    B = vcat.from_preorder(["a", "b"], [[1, 1], [0, 1]])
    k = karoubi.kar_object(B, karoubi.idempotent_modules(B)[1])
    assert roundtrip(k) == k
    L = frames.frames(4, 4)[0]
    assert roundtrip(L) == L
    S = frames.topologies(3)[7]
    assert roundtrip(S) == S


def test_custom_quantale_roundtrip():
    b = qm.make_boolean()
    q = qm.Quantale("mine", b.elements, b.leq_table, b.tensor_table, b.unit)
    again = roundtrip(q)
    assert again == q


def test_unknown_object_error_line():
    text = "[vcat]\nname X\nquantale boolean\nobjects a b\nhom a c 1\n"
    with pytest.raises(ParseError) as e:
        textio.parse(text)
    assert e.value.line == 5


def test_unknown_quantale():
    with pytest.raises(ParseError) as e:
        textio.parse("[vcat]\nname X\nquantale nope\nobjects a\n")
    assert e.value.line == 3 and "nope" in str(e.value)


def test_unknown_section_and_key():
    with pytest.raises(ParseError):
        textio.parse("[widget]\nname X\n")
    with pytest.raises(ParseError):
        textio.parse("[vcat]\nname X\nquantale boolean\nobjects a\ncolour red\n")


def test_three_cycle_transitivity_violation():
    text = "[vcat]\nname cyc\nquantale boolean\nobjects x y z\nhom x y 1\nhom y z 1\nhom z x 1\n"
    with pytest.raises(InvariantViolation) as e:
        textio.parse(text)
    assert "transitivity" in str(e.value)
    assert "(x, y, z)" in str(e.value)


def test_bad_quantale_strict_and_lenient(samples):
    path = os.path.join(samples, "bad_quantale.txt")
    with pytest.raises(InvariantViolation):
        textio.parse_file(path)
    q = textio.parse_file(path, strict=False).get("quantale")
    assert qm.validate(q)
