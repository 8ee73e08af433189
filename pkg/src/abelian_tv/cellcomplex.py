"""Cellular decompositions of closed oriented 3-manifolds.

A :class:`CellComplex` stores the three integer boundary matrices of a
decomposition ``C = (P, F, E, V)``.  Column ``k`` of ``boundary_k`` is the
boundary of the ``k``-th cell in the basis of cells one dimension lower:

* ``boundary3``  F x P  (faces of each 3-cell)
* ``boundary2``  E x F  (edges of each face)
* ``boundary1``  V x E  (vertices of each edge)

The dual decomposition swaps dimensions and transposes the matrices, so the
coboundary ``d`` acting on edge labelings is ``boundary2.T``.

``orientation`` is ``+1`` when the face / dual-edge intersection numbers are
``+delta`` for the chosen orientation of M and ``-1`` when M carries the
opposite orientation.  It multiplies every pairing evaluated on M: linking
phases and the cup-product phases of the state sum.  Reordering or
reorienting cells leaves it unchanged.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field, replace
from enum import Enum
from pathlib import Path
from typing import Sequence

from .intlinalg import IntMatrix, kernel_basis, rank

__all__ = [
    "Side",
    "CellComplex",
    "Cycle",
    "ValidationReport",
    "ComplexFormatError",
    "InvalidComplexError",
    "validate",
    "dualize",
    "builtin",
    "BUILTIN_NAMES",
    "load",
    "save",
    "to_json_dict",
    "from_json_dict",
    "fundamental_class",
]


class Side(str, Enum):
    PRIMAL = "primal"
    DUAL = "dual"

    @property
    def other(self) -> Side:
        return Side.DUAL if self is Side.PRIMAL else Side.PRIMAL


class ComplexFormatError(ValueError):
    """A complex file could not be parsed."""


class InvalidComplexError(ValueError):
    """A complex failed one of the structural checks."""

    def __init__(self, report: ValidationReport):
        self.report = report
        failed = "; ".join(f"{c.name}: {c.detail}" for c in report.failures)
        super().__init__(f"invalid complex {report.name!r}: {failed}")


@dataclass(frozen=True)
class CellComplex:
    name: str
    boundary3: IntMatrix
    boundary2: IntMatrix
    boundary1: IntMatrix
    orientation: int = 1

    def __post_init__(self):
        b3, b2, b1 = self.boundary3, self.boundary2, self.boundary1
        if b2.cols != b3.rows:
            raise ValueError(f"boundary2 has {b2.cols} columns but boundary3 has {b3.rows} rows")
        if b1.cols != b2.rows:
            raise ValueError(f"boundary1 has {b1.cols} columns but boundary2 has {b2.rows} rows")
        if self.orientation not in (1, -1):
            raise ValueError("orientation must be +1 or -1")

    @classmethod
    def from_lists(cls, name, boundary3, boundary2, boundary1, *, counts=None, orientation=1):
        """Build from nested lists; ``counts`` (P, F, E, V) is needed only for empty matrices."""
        P, F, E, V = counts if counts is not None else (None,) * 4
        if P is None:
            P = len(boundary3[0]) if boundary3 else 0
            F = len(boundary3)
            E = len(boundary2)
            V = len(boundary1)
        return cls(
            name,
            IntMatrix.from_rows(boundary3, cols=P),
            IntMatrix.from_rows(boundary2, cols=F),
            IntMatrix.from_rows(boundary1, cols=E),
            orientation=orientation,
        )

    @property
    def P(self) -> int:
        return self.boundary3.cols

    @property
    def F(self) -> int:
        return self.boundary3.rows

    @property
    def E(self) -> int:
        return self.boundary2.rows

    @property
    def V(self) -> int:
        return self.boundary1.rows

    @property
    def counts(self) -> dict[str, int]:
        return {"P": self.P, "F": self.F, "E": self.E, "V": self.V}

    @property
    def d(self) -> IntMatrix:
        """Coboundary on edge labelings, F x E."""
        return self.boundary2.T

    def cycle_length(self, side: Side) -> int:
        return self.E if side is Side.PRIMAL else self.F

    def cycle_boundary(self, side: Side) -> IntMatrix:
        """Boundary map whose kernel is the 1-cycles of ``side``."""
        return self.boundary1 if side is Side.PRIMAL else self.boundary3.T

    def face_boundary(self, side: Side) -> IntMatrix:
        """Boundary map from 2-chains of ``side`` to its 1-chains."""
        return self.boundary2 if side is Side.PRIMAL else self.boundary2.T


@dataclass(frozen=True)
class Cycle:
    """Integer 1-cycle on the primal edges (length E) or dual edges (length F)."""

    side: Side
    components: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "side", Side(self.side))
        object.__setattr__(self, "components", tuple(int(x) for x in self.components))

    @classmethod
    def primal(cls, c: CellComplex, components: Sequence[int] | None = None) -> Cycle:
        return cls.checked(c, Side.PRIMAL, components)

    @classmethod
    def dual(cls, c: CellComplex, components: Sequence[int] | None = None) -> Cycle:
        return cls.checked(c, Side.DUAL, components)

    @classmethod
    def checked(cls, c: CellComplex, side: Side, components=None) -> Cycle:
        side = Side(side)
        n = c.cycle_length(side)
        if components is None:
            components = (0,) * n
        z = cls(side, tuple(components))
        if len(z.components) != n:
            raise ValueError(f"{side.value} cycle needs {n} components, got {len(z.components)}")
        if any(c.cycle_boundary(side).matvec(z.components)):
            raise ValueError(f"{z.components} is not a {side.value} 1-cycle of {c.name}")
        return z

    def __add__(self, other: Cycle) -> Cycle:
        if other.side is not self.side:
            raise ValueError("cannot add cycles from different sides")
        return Cycle(self.side, tuple(a + b for a, b in zip(self.components, other.components)))

    def __sub__(self, other: Cycle) -> Cycle:
        return self + other * -1

    def __mul__(self, k: int) -> Cycle:
        return Cycle(self.side, tuple(k * a for a in self.components))

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return not any(self.components)


@dataclass(frozen=True)
class Check:
    name: str
    passed: bool
    detail: str = ""


@dataclass(frozen=True)
class ValidationReport:
    name: str
    checks: tuple[Check, ...] = field(default_factory=tuple)

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def failures(self) -> list[Check]:
        return [c for c in self.checks if not c.passed]

    def __getitem__(self, name: str) -> Check:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def raise_if_invalid(self):
        if not self.ok:
            raise InvalidComplexError(self)

    def to_text(self) -> str:
        lines = [f"complex {self.name}"]
        for c in self.checks:
            mark = "pass" if c.passed else "FAIL"
            lines.append(f"  {mark}  {c.name}" + (f"  ({c.detail})" if c.detail else ""))
        return "\n".join(lines)


def _product_check(name, A: IntMatrix, B: IntMatrix, label: str) -> Check:
    prod = A @ B
    for i in range(prod.rows):
        for j in range(prod.cols):
            if prod[i, j]:
                return Check(name, False, f"entry ({i}, {j}) of {label} is {prod[i, j]}")
    return Check(name, True)


def fundamental_class(c: CellComplex) -> tuple[int, ...] | None:
    """Generator of ``H_3`` with first nonzero coefficient ``+1``, or ``None`` if ``H_3 != Z``."""
    ker = kernel_basis(c.boundary3)
    if len(ker) != 1:
        return None
    g = ker[0]
    s = 1 if next(x for x in g if x) > 0 else -1
    return tuple(s * x for x in g)


def validate(c: CellComplex) -> ValidationReport:
    """Check the axioms every downstream computation relies on."""
    checks = [
        _product_check("boundary1 @ boundary2 == 0", c.boundary1, c.boundary2,
                       "boundary1 @ boundary2"),
        _product_check("boundary2 @ boundary3 == 0", c.boundary2, c.boundary3,
                       "boundary2 @ boundary3"),
    ]
    chi = c.V - c.E + c.F - c.P
    checks.append(Check("euler characteristic == 0", chi == 0,
                        "" if chi == 0 else f"V - E + F - P = {chi}"))
    r1 = rank(c.boundary1)
    checks.append(Check("connected (rank boundary1 == V - 1)", r1 == c.V - 1,
                        "" if r1 == c.V - 1 else f"rank {r1}, V - 1 = {c.V - 1}"))
    r3 = rank(c.boundary3)
    ker = kernel_basis(c.boundary3)
    ok3 = r3 == c.P - 1 and len(ker) == 1 and all(abs(x) == 1 for x in ker[0])
    detail = ""
    if not ok3:
        detail = f"rank {r3}, kernel rank {len(ker)}"
        if len(ker) == 1:
            detail += f", generator {ker[0]}"
    checks.append(Check("closed oriented (H_3 = Z, unit fundamental class)", ok3, detail))
    return ValidationReport(c.name, tuple(checks))


def _dual_name(name: str) -> str:
    return name[:-1] if name.endswith("*") else name + "*"


def dualize(c: CellComplex) -> CellComplex:
    """The dual decomposition: dimensions swap and boundary matrices transpose."""
    validate(c).raise_if_invalid()
    return CellComplex(
        _dual_name(c.name),
        boundary3=c.boundary1.T,
        boundary2=c.boundary2.T,
        boundary1=c.boundary3.T,
        orientation=c.orientation,
    )


# -- builtin manifolds ------------------------------------------------------

# Genus-1 Heegaard decompositions.  The boundary2 data is the transpose of the
# printed coboundary matrices; boundary1 and boundary3 are the unique choices
# (up to relabelling) compatible with d o d = 0, H_0 = H_3 = Z and H_1.

_TWO_CELLS_SHARING_TORUS = [[1, -1], [1, -1], [0, 0], [0, 0]]

BUILTIN_NAMES = ("s3", "s1xs2", "rp3", "lens")


def _s3() -> CellComplex:
    d1 = [[0, 0], [1, 0], [0, 1]]
    return CellComplex.from_lists(
        "s3",
        boundary3=[[1, -1], [0, 0], [0, 0]],
        boundary2=IntMatrix.from_rows(d1).T.to_rows(),
        boundary1=[[0, 0]],
        orientation=-1,
    )


def _s1xs2() -> CellComplex:
    d1 = [[0, 0, 0, 1, -1],
          [0, 0, 0, -1, 1],
          [1, 1, 1, 0, 0],
          [1, 1, 1, 0, 0]]
    # e1, e2, e3 run around a triangle of vertices; e4, e5 are loops
    return CellComplex.from_lists(
        "s1xs2",
        boundary3=_TWO_CELLS_SHARING_TORUS,
        boundary2=IntMatrix.from_rows(d1).T.to_rows(),
        boundary1=[[-1, 0, 1, 0, 0],
                   [1, -1, 0, 0, 0],
                   [0, 1, -1, 0, 0]],
        orientation=-1,
    )


def _lens(p: int, name: str) -> CellComplex:
    # Meridian discs S3, S4 bound e1+e2 and e3+e4; the torus faces S1 = -S2
    # carry the gluing curve, winding p times around the core of the second
    # solid torus.  p = 2 reproduces the RP^3 diagram.
    w = [p - 1, -1, -1, p - 1]
    d1 = [w, [-x for x in w], [1, 1, 0, 0], [0, 0, 1, 1]]
    return CellComplex.from_lists(
        name,
        boundary3=_TWO_CELLS_SHARING_TORUS,
        boundary2=IntMatrix.from_rows(d1).T.to_rows(),
        boundary1=[[-1, 1, -1, 1],
                   [1, -1, 1, -1]],
        orientation=1,
    )


def builtin(name: str, p: int | None = None) -> CellComplex:
    """One of the builtin decompositions: ``s3``, ``s1xs2``, ``rp3`` or ``lens`` (with ``p >= 2``)."""
    if name == "s3":
        return _s3()
    if name == "s1xs2":
        return _s1xs2()
    if name == "rp3":
        return _lens(2, "rp3")
    if name == "lens":
        if p is None or isinstance(p, bool) or not isinstance(p, int) or p < 2:
            raise ValueError(f"lens needs an integer p >= 2, got {p!r}")
        return _lens(p, f"lens({p})")
    raise ValueError(f"unknown builtin manifold {name!r}; choose from {', '.join(BUILTIN_NAMES)}")


# -- file format --------------------------------------------------------------

_KEYS = {"name", "counts", "boundary3", "boundary2", "boundary1", "orientation"}
_REQUIRED = _KEYS - {"orientation"}


def to_json_dict(c: CellComplex) -> dict:
    out = {
        "name": c.name,
        "counts": c.counts,
        "boundary3": c.boundary3.to_rows(),
        "boundary2": c.boundary2.to_rows(),
        "boundary1": c.boundary1.to_rows(),
    }
    if c.orientation != 1:
        out["orientation"] = c.orientation
    return out


def _int(value, where: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise ComplexFormatError(f"{where}: expected an integer, got {value!r}")
    return value


def _matrix(data, rows: int, cols: int, key: str) -> IntMatrix:
    if not isinstance(data, list):
        raise ComplexFormatError(f"{key}: expected an array of rows")
    if len(data) != rows:
        raise ComplexFormatError(f"{key}: expected {rows} rows, got {len(data)}")
    out = []
    for i, row in enumerate(data):
        if not isinstance(row, list) or len(row) != cols:
            raise ComplexFormatError(f"{key}[{i}]: expected a row of {cols} integers")
        out.append([_int(x, f"{key}[{i}][{j}]") for j, x in enumerate(row)])
    return IntMatrix.from_rows(out, cols=cols)


def from_json_dict(data) -> CellComplex:
    """Parse the JSON object form; validation is left to the caller."""
    if not isinstance(data, dict):
        raise ComplexFormatError("top level: expected a JSON object")
    unknown = set(data) - _KEYS
    if unknown:
        raise ComplexFormatError(f"unknown field(s): {', '.join(sorted(unknown))}")
    missing = _REQUIRED - set(data)
    if missing:
        raise ComplexFormatError(f"missing field(s): {', '.join(sorted(missing))}")
    if not isinstance(data["name"], str):
        raise ComplexFormatError("name: expected a string")
    counts = data["counts"]
    if not isinstance(counts, dict) or set(counts) != {"P", "F", "E", "V"}:
        raise ComplexFormatError("counts: expected an object with exactly P, F, E, V")
    n = {k: _int(v, f"counts.{k}") for k, v in counts.items()}
    for k, v in n.items():
        if v < 0:
            raise ComplexFormatError(f"counts.{k}: must be non-negative")
    orientation = _int(data.get("orientation", 1), "orientation")
    if orientation not in (1, -1):
        raise ComplexFormatError("orientation: must be 1 or -1")
    return CellComplex(
        data["name"],
        boundary3=_matrix(data["boundary3"], n["F"], n["P"], "boundary3"),
        boundary2=_matrix(data["boundary2"], n["E"], n["F"], "boundary2"),
        boundary1=_matrix(data["boundary1"], n["V"], n["E"], "boundary1"),
        orientation=orientation,
    )


def load(path) -> CellComplex:
    """Read and validate a complex file."""
    text = Path(path).read_text()
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ComplexFormatError(f"{path}: line {exc.lineno} column {exc.colno}: {exc.msg}") from exc
    c = from_json_dict(data)
    validate(c).raise_if_invalid()
    return c


def save(c: CellComplex, path) -> None:
    Path(path).write_text(json.dumps(to_json_dict(c), indent=2) + "\n")


def with_name(c: CellComplex, name: str) -> CellComplex:
    return replace(c, name=name)
