"""Group and polynomial description files (JSON).

A group file::

    {"name": "heisenberg", "ring": "cyclotomic", "cyclotomic_order": 3,
     "dimension": 3, "projective": false,
     "generators": [[[{"0": "1"}, {}, ...], ...], ...]}

Cyclotomic entries are sparse maps {exponent: "p/q"} meaning sum (p/q) zeta^k;
bare integers or rational strings are accepted for rational entries.  With
``"ring": "integer"`` every entry must be an integer.

A polynomial file is a list of {"exponents": [...], "coeff": map}, optionally
wrapped as {"cyclotomic_order": N, "terms": [...]}.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

from .cyclotomic import cyc_from_json, get_context
from .errors import ParseError, ValidationError
from .groups import DEFAULT_CLOSURE_CAP, closure
from .lattice import IntMatrix, int_closure, int_element_order, parse_int_matrix
from .matrices import DEFAULT_ELEMENT_ORDER_CAP, CycMatrix, element_order, parse_matrix
from .projective import Polynomial, pgl_image

BUILTIN_PREFIX = "builtin:"


@dataclass
class GroupDescription:
    ring: str
    dimension: int
    generators: list
    cyclotomic_order: int = 3
    projective: bool = False
    name: str | None = None
    extra: dict = field(default_factory=dict)

    @property
    def ctx(self):
        return get_context(self.cyclotomic_order)

    def identity(self):
        if self.ring == "integer":
            return IntMatrix.identity_matrix(self.dimension)
        return CycMatrix.identity_matrix(self.dimension, self.ctx)

    def check_orders(self, cap: int = DEFAULT_ELEMENT_ORDER_CAP) -> list[int]:
        """Element order of every generator; OrderCapExceeded flags infinite order early."""
        order = int_element_order if self.ring == "integer" else element_order
        return [order(g, cap) for g in self.generators]

    def matrix_group(self, cap: int = DEFAULT_CLOSURE_CAP, order_cap: int = DEFAULT_ELEMENT_ORDER_CAP):
        self.check_orders(order_cap)
        if self.ring == "integer":
            return int_closure(self.generators, cap=cap, dimension=self.dimension)
        return closure(self.generators, cap=cap, identity=self.identity())

    def group(self, cap: int = DEFAULT_CLOSURE_CAP, order_cap: int = DEFAULT_ELEMENT_ORDER_CAP):
        """The group the file describes: the PGL image when ``projective`` is set."""
        G = self.matrix_group(cap, order_cap)
        return pgl_image(G, cap=cap) if self.projective else G

    def to_json(self) -> dict:
        out = {
            "ring": self.ring,
            "dimension": self.dimension,
            "generators": [g.to_json() for g in self.generators],
        }
        if self.ring == "cyclotomic":
            out["cyclotomic_order"] = self.cyclotomic_order
        if self.projective:
            out["projective"] = True
        if self.name:
            out["name"] = self.name
        return out


def _load_json(text: str, source: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{source}:{exc.lineno}:{exc.colno}: {exc.msg}") from None


def _read(path) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise ParseError(f"{path}: {exc.strerror}") from None


def group_from_json(data, source: str = "<input>") -> GroupDescription:
    def bad(msg):
        return ValidationError(f"{source}: {msg}")

    if not isinstance(data, dict):
        raise bad("top level must be an object")
    unknown = set(data) - {"name", "ring", "cyclotomic_order", "dimension", "generators", "projective"}
    if unknown:
        raise bad(f"unknown field(s) {sorted(unknown)}")
    ring = data.get("ring", "cyclotomic")
    if ring not in ("cyclotomic", "integer"):
        raise bad(f"field 'ring': expected 'cyclotomic' or 'integer', got {ring!r}")
    N = data.get("cyclotomic_order", 3)
    if isinstance(N, bool) or not isinstance(N, int) or N < 1:
        raise bad(f"field 'cyclotomic_order': expected a positive integer, got {N!r}")
    if ring == "integer" and "cyclotomic_order" in data and N != 1:
        raise bad("field 'cyclotomic_order': integer ring takes no cyclotomic order")
    n = data.get("dimension")
    if isinstance(n, bool) or not isinstance(n, int) or n < 1:
        raise bad(f"field 'dimension': expected a positive integer, got {n!r}")
    gens = data.get("generators")
    if not isinstance(gens, list):
        raise bad("field 'generators': expected a list of matrices")
    projective = data.get("projective", False)
    if not isinstance(projective, bool):
        raise bad("field 'projective': expected true or false")
    if projective and ring == "integer":
        raise bad("field 'projective': not available for the integer ring")
    name = data.get("name")
    if name is not None and not isinstance(name, str):
        raise bad("field 'name': expected a string")
    ctx = get_context(N)
    matrices = []
    for k, m in enumerate(gens):
        where = f"generators[{k}]"
        if not isinstance(m, list) or len(m) != n or any(not isinstance(r, list) or len(r) != n for r in m):
            raise bad(f"{where}: expected a {n}x{n} matrix")
        try:
            if ring == "integer":
                matrices.append(parse_int_matrix(m, where))
            else:
                matrices.append(parse_matrix(m, ctx, where))
        except ValidationError as exc:
            raise bad(str(exc)) from None
    return GroupDescription(ring, n, matrices, N, projective, name)


def parse_group_file(path) -> GroupDescription:
    """Load a group file, or a catalog entry given as ``builtin:<id>``."""
    path = str(path)
    if path.startswith(BUILTIN_PREFIX):
        return builtin_description(path[len(BUILTIN_PREFIX):])
    return group_from_json(_load_json(_read(path), path), path)


def builtin_description(id: str) -> GroupDescription:
    from .catalog import builtin

    entry = builtin(id)
    if entry.kind == "polynomial":
        raise ValidationError(f"{id} is a polynomial, not a group")
    if entry.kind == "integer":
        return GroupDescription("integer", entry.dimension, list(entry.generators), 1, False, entry.id)
    return GroupDescription(
        "cyclotomic", entry.dimension, list(entry.generators), entry.root_order,
        entry.kind == "projective", entry.id,
    )


def polynomial_from_json(data, root_order: int, source: str = "<input>") -> Polynomial:
    if isinstance(data, dict):
        unknown = set(data) - {"cyclotomic_order", "terms", "name"}
        if unknown:
            raise ValidationError(f"{source}: unknown field(s) {sorted(unknown)}")
        N = data.get("cyclotomic_order", root_order)
        if N != root_order:
            raise ValidationError(
                f"{source}: polynomial over Q(zeta_{N}) but group over Q(zeta_{root_order})"
            )
        data = data.get("terms")
    try:
        return Polynomial.from_json(data, get_context(root_order))
    except ValidationError as exc:
        raise ValidationError(f"{source}: {exc}") from None


def parse_polynomial_file(path, root_order: int) -> Polynomial:
    path = str(path)
    if path.startswith(BUILTIN_PREFIX):
        from .catalog import builtin

        entry = builtin(path[len(BUILTIN_PREFIX):])
        if entry.kind != "polynomial":
            raise ValidationError(f"{entry.id} is not a polynomial")
        poly = entry.polynomial
        if entry.root_order != root_order:
            raise ValidationError(f"{entry.id} lives over Q(zeta_{entry.root_order})")
        return poly
    return polynomial_from_json(_load_json(_read(path), path), root_order, path)


def polynomial_to_json(poly: Polynomial) -> dict:
    return {"cyclotomic_order": poly.ctx.root_order, "terms": poly.to_json()}


def parse_point(text: str, root_order: int) -> tuple:
    """A point as a JSON array of entries, or comma-separated rationals."""
    ctx = get_context(root_order)
    text = text.strip()
    if text.startswith("["):
        data = _load_json(text, "--point")
        if not isinstance(data, list):
            raise ValidationError("--point: expected a list")
        items = data
    else:
        items = [t.strip() for t in text.split(",")]
    try:
        point = tuple(cyc_from_json(x, ctx) for x in items)
    except ValidationError as exc:
        raise ValidationError(f"--point: {exc}") from None
    if not any(point):
        raise ValidationError("--point: the zero vector is not a projective point")
    return point


def rational_str(q: Fraction) -> str:
    return str(Fraction(q))
