"""The eleven acceptance criteria, one suite each, with runtime budgets.

Each test prints one line ``[PASS|FAIL] <criterion> (<seconds>s / <budget>s)``.
Run directly (``python tests/test_acceptance.py``) for just those lines.
"""
import sys

import pytest

from qwb.suites import run_suite

# (criterion, suite name, options, budget in seconds)
CRITERIA = [
    ("1 quantale axioms and residuation", "quantale", {}, 1),
    ("2 relation composition and residuals", "relation", {}, 30),
    ("3 yoneda lemma and Sup_PX", "yoneda", {}, 120),
    ("4 kz monad laws", "kz", {}, 120),
    ("5 duality D -| S", "duality", {}, 300),
    ("6 totally-below oracle", "totally_below", {}, 60),
    ("7 phi saturation and cocompleteness", "phi", {}, 300),
    ("8 karoubi splitting", "karoubi", {}, 600),
    ("9 frames and filter spaces", "frames", {}, 120),
    ("10 ultrafilter monad", "ultra", {}, 60),
    ("11 tensor action", "tensor_action", {}, 60),
]


def evaluate(name, options, budget):
    rep = run_suite(name, **options)
    within = rep.seconds < budget
    return rep, within, rep.ok and within


def line(label, rep, within, ok, budget):
    extra = "" if within else " over budget"
    return f"[{'PASS' if ok else 'FAIL'}] {label} ({rep.seconds:.2f}s / {budget}s{extra})"


@pytest.mark.parametrize("label,name,options,budget", CRITERIA, ids=[c[1] for c in CRITERIA])
def test_criterion(label, name, options, budget, capsys):
    rep, within, ok = evaluate(name, options, budget)
    with capsys.disabled():
        print("\n" + line(label, rep, within, ok, budget))
    assert rep.ok, rep.render()
    assert within, f"{name} took {rep.seconds:.2f}s, budget {budget}s"


def test_kz_is_exhaustive_on_boolean_3():
    # every PPX in the boolean n <= 3 universe has at most 256 elements
    rep = run_suite("kz")
    assert not any("sampled" in n for n in rep.notes)


def test_sampling_is_flagged_for_chain2_yoneda():
    rep = run_suite("yoneda", quantale="chain2", max=2)
    assert rep.ok
    assert any("sampled" in n for n in rep.notes)


if __name__ == "__main__":
    failed = 0
    for label, name, options, budget in CRITERIA:
        rep, within, ok = evaluate(name, options, budget)
        print(line(label, rep, within, ok, budget), flush=True)
        failed += not ok
    sys.exit(1 if failed else 0)
