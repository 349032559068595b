"""Python bindings for the cinf smooth-ring calculus."""

import json
import shlex
from dataclasses import dataclass, field

from ._cinf import ERROR, PROVED, REFUTED, UNKNOWN, normalize, to_sexpr
from ._cinf import Session as _Session

__all__ = [
    "Result", "Session", "normalize", "to_sexpr",
    "PROVED", "REFUTED", "UNKNOWN", "ERROR",
]

_OUTCOMES = {PROVED: "Proved", REFUTED: "Refuted", UNKNOWN: "Unknown", ERROR: "Error"}


@dataclass
class Result:
    code: int
    text: str
    artifact: dict = field(default_factory=dict)

    @property
    def outcome(self):
        return _OUTCOMES[self.code]


def _quote(term):
    return shlex.quote(term) if any(c.isspace() for c in term) else term


class Session:
    """A command session holding named terms, ideals and certificates."""

    def __init__(self, depth=None, cell_budget=None, workers=None):
        self._s = _Session()
        if depth is not None:
            self._s.depth = depth
        if cell_budget is not None:
            self._s.cell_budget = cell_budget
        if workers is not None:
            self._s.workers = workers

    def execute(self, line):
        code, text, artifact = self._s.execute(line)
        return Result(code, text, json.loads(artifact) if artifact else {})

    def _query(self, verb, terms, mod=None, on=None, witness=None):
        parts = [verb, *(_quote(t) for t in terms)]
        if mod is not None:
            parts += ["mod", _quote(mod)]
        if witness is not None:
            parts += ["witness", _quote(witness)]
        if on is not None:
            parts += ["on", _quote(on)]
        return self.execute(" ".join(parts))

    def order(self, f, g, mod=None, on=None, witness=None):
        return self._query("order", [f, g], mod, on, witness)

    def equal(self, f, g, mod=None, on=None):
        return self._query("equal", [f, g], mod, on)

    def invertible(self, f, mod=None, on=None, witness=None):
        return self._query("invertible", [f], mod, on, witness)

    def square(self, f, mod=None, on=None, witness=None):
        return self._query("square", [f], mod, on, witness)

    def radical_member(self, f, mod, on=None):
        return self._query("radical-member", [f], mod, on)

    def root(self, f, lo, hi, tol="1e-10"):
        return self.execute(f"root {_quote(f)} --on [{lo},{hi}] --tol {tol}")

    def to_json(self):
        return json.loads(self._s.to_json())

    def save(self, path):
        self._s.save(str(path))

    def load(self, path):
        self._s.load(str(path))
