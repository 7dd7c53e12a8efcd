"""Spec files: one ``key = JSON value`` per line, ``#`` starts a comment line.

Example::

    type = "B2"
    nullity = 2
    S_generators = [[1, 0], [0, 1], [1, 1]]
    L_generators = [[2, 0], [0, 1], [2, 1]]
    m = 4
    K = [[1, 1], [1, 0]]
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field

from .ears import EarsError, build_descriptor
from .finroot import RootSystemError
from .qtorus import Cocycle, CocycleError
from .scalars import OrderError

KEYS = ("type", "nullity", "S_generators", "L_generators", "k", "twist", "m", "K", "bound", "seed")
REQUIRED = ("type", "nullity", "S_generators")


class SpecError(ValueError):
    def __init__(self, message, line=None, path=None):
        self.line = line
        self.path = path
        where = f"{path or '<spec>'}:{line}: " if line else f"{path or '<spec>'}: "
        super().__init__(where + message)


@dataclass
class Spec:
    values: dict
    lines: dict = field(default_factory=dict)
    path: str | None = None

    def get(self, key, default=None):
        return self.values.get(key, default)

    def cocycle(self):
        nu = self.values["nullity"]
        m = self.values.get("m", 1)
        K = self.values.get("K")
        if K is None:
            K = [[0] * nu for _ in range(nu)]
        try:
            return Cocycle(m, K)
        except (OrderError, CocycleError) as e:
            raise SpecError(str(e), self.lines.get("K", self.lines.get("m")), self.path) from e

    def descriptor(self):
        v = self.values
        coc = self.cocycle()
        if coc.nu != v["nullity"]:
            raise SpecError(f"K must be {v['nullity']}x{v['nullity']}", self.lines.get("K"), self.path)
        try:
            return build_descriptor(
                v["type"], v["nullity"], v["S_generators"], v.get("L_generators"),
                v.get("k"), v.get("twist"), coc,
            )
        except RootSystemError as e:
            raise SpecError(str(e), self.lines.get("type"), self.path) from e
        except EarsError as e:
            raise SpecError(str(e), self._blame(str(e)), self.path) from e

    def _blame(self, msg):
        for prefix, key in (("S:", "S_generators"), ("S must", "S_generators"), ("L:", "L_generators"),
                            ("interaction", "L_generators"), ("basis not adapted", "L_generators"),
                            ("k=", "k"), ("twist", "twist"), ("cocycle", "K"), ("requires a commutative", "K"),
                            ("needs L_generators", "type"), ("has no long roots", "L_generators"),
                            ("nullity", "nullity")):
            if prefix in msg and key in self.lines:
                return self.lines[key]
        return self.lines.get("type")

    def to_json(self):
        return {k: self.values[k] for k in KEYS if k in self.values}


def parse_spec(text, path=None):
    values, lines = {}, {}
    for n, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise SpecError("expected 'key = value'", n, path)
        key, _, rest = line.partition("=")
        key = key.strip()
        if key not in KEYS:
            raise SpecError(f"unknown key {key!r}", n, path)
        if key in values:
            raise SpecError(f"duplicate key {key!r} (first on line {lines[key]})", n, path)
        try:
            val = json.loads(rest.strip())
        except json.JSONDecodeError as e:
            raise SpecError(f"bad value for {key}: {e.msg}", n, path) from e
        _check_value(key, val, n, path)
        values[key] = val
        lines[key] = n
    for key in REQUIRED:
        if key not in values:
            raise SpecError(f"missing required key {key!r}", None, path)
    return Spec(values, lines, path)


def _is_int(x):
    return isinstance(x, int) and not isinstance(x, bool)


def _check_value(key, val, n, path):
    if key == "type":
        if not isinstance(val, str):
            raise SpecError("type must be a string such as \"B2\"", n, path)
    elif key in ("nullity", "k", "twist", "m", "bound", "seed"):
        if not _is_int(val):
            raise SpecError(f"{key} must be an integer", n, path)
        if key in ("nullity", "twist", "bound", "seed") and val < 0:
            raise SpecError(f"{key} must be nonnegative", n, path)
    elif key in ("S_generators", "L_generators", "K"):
        if not isinstance(val, list) or not all(isinstance(r, list) and all(_is_int(x) for x in r) for r in val):
            raise SpecError(f"{key} must be a list of integer rows", n, path)


def load_spec(path):
    try:
        with open(path) as fh:
            text = fh.read()
    except OSError as e:
        raise SpecError(f"cannot read spec: {e.strerror}", None, str(path)) from e
    return parse_spec(text, str(path))


def dump_spec(values):
    return "".join(f"{k} = {json.dumps(values[k])}\n" for k in KEYS if k in values)
