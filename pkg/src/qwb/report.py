"""Law-check bookkeeping shared by all verification routines."""
import json


def show_witness(w):
    """Counterexample text; structures are written as parseable sections."""
    from . import textio
    parts = w if isinstance(w, tuple) else (w,)
    out = []
    for i, part in enumerate(parts):
        try:
            out.append(textio.dump(part, f"w{i}").rstrip())
        except TypeError:
            out.append(part if isinstance(part, str) else repr(part))
    return "\n".join(out)


class Report:
    """Per-law pass/fail counts with the first counterexample of each law."""

    def __init__(self, name):
        self.name = name
        self.laws = {}
        self.notes = []
        self.seconds = None

    def check(self, law, ok, witness=None):
        entry = self.laws.setdefault(law, [0, 0, None])
        if ok:
            entry[0] += 1
        else:
            entry[1] += 1
            if entry[2] is None:
                entry[2] = witness() if callable(witness) else witness
        return ok

    def tally(self, law, passed, failed=0, witness=None):
        """Record counts computed in bulk; ``witness`` is the first failure."""
        entry = self.laws.setdefault(law, [0, 0, None])
        entry[0] += passed
        entry[1] += failed
        if failed and entry[2] is None:
            entry[2] = witness() if callable(witness) else witness

    def note(self, text):
        if text not in self.notes:
            self.notes.append(text)

    def merge(self, other):
        for law, (p, f, w) in other.laws.items():
            entry = self.laws.setdefault(law, [0, 0, None])
            entry[0] += p
            entry[1] += f
            if entry[2] is None:
                entry[2] = w
        for n in other.notes:
            self.note(n)
        return self

    @property
    def ok(self):
        return all(f == 0 for _, f, _ in self.laws.values())

    def failures(self):
        return {law: w for law, (_, f, w) in self.laws.items() if f}

    def __bool__(self):
        return self.ok

    def render(self, fmt="text", timing=True):
        if fmt == "machine":
            data = {
                "suite": self.name,
                "ok": self.ok,
                "laws": {law: {"pass": p, "fail": f, "witness": None if w is None else show_witness(w)}
                         for law, (p, f, w) in sorted(self.laws.items())},
                "notes": list(self.notes),
            }
            if timing and self.seconds is not None:
                data["seconds"] = round(self.seconds, 3)
            return json.dumps(data, sort_keys=True, ensure_ascii=False)
        lines = [f"suite {self.name}: {'PASS' if self.ok else 'FAIL'}"]
        for law, (p, f, w) in sorted(self.laws.items()):
            lines.append(f"  {'ok  ' if f == 0 else 'FAIL'} {law}: {p} passed, {f} failed")
            if f:
                lines.append("       first counterexample:")
                lines.extend("         " + ln for ln in show_witness(w).splitlines())
        for n in self.notes:
            lines.append(f"  note: {n}")
        if timing and self.seconds is not None:
            lines.append(f"  wall-clock: {self.seconds:.2f}s")
        return "\n".join(lines)

    def __str__(self):
        return self.render()
