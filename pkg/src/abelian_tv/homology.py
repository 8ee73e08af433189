"""First homology, class coordinates and the torsion linking pairing.

H_1 is presented twice: once from the primal complex and once from its dual.
A cycle's class coordinates come from a fixed integer transform, so they are
additive and vanish exactly on boundaries.

The linking pairing is realised between a primal torsion class ``x`` and a
dual torsion class ``y``: if ``p x`` bounds the face chain ``sigma`` then
``Q(x, y) = (sigma . y) / p mod 1``.  Faces of the primal complex and edges of
the dual complex are in canonical bijection, so the dot product is the
intersection number.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from .cellcomplex import CellComplex, Cycle, Side, dualize, validate
from .intlinalg import IntMatrix, SmithDecomposition, smith_normal_form, solve_integer

__all__ = [
    "Presentation",
    "HomologyProfile",
    "ClassCoordinates",
    "BoundingData",
    "LinkingData",
    "FreeClassError",
    "homology_h1",
    "class_of",
    "class_order",
    "bounding_data",
    "linking_number",
    "linking_pairing",
    "linking_form",
]


class FreeClassError(ValueError):
    """The cycle has a nonzero free class, so no multiple of it bounds."""


@dataclass(frozen=True)
class Presentation:
    """``ker(cycle_boundary) / im(face_boundary)`` in invariant-factor form.

    ``transform`` maps a cycle to its coordinates ``y`` in the generator
    basis; ``y[i]`` is trivial when ``diagonal[i] == 1``, lives in
    ``Z_{diagonal[i]}`` when it is larger, and is free past the rank.
    """

    side: Side
    face_boundary: IntMatrix
    transform: IntMatrix
    generators: tuple[tuple[int, ...], ...]
    diagonal: tuple[int, ...]
    torsion_indices: tuple[int, ...]
    free_indices: tuple[int, ...]
    face_snf: SmithDecomposition

    @property
    def torsion(self) -> tuple[int, ...]:
        return tuple(self.diagonal[i] for i in self.torsion_indices)

    @property
    def torsion_generators(self) -> tuple[tuple[int, ...], ...]:
        return tuple(self.generators[i] for i in self.torsion_indices)

    @property
    def free_generators(self) -> tuple[tuple[int, ...], ...]:
        return tuple(self.generators[i] for i in self.free_indices)


def _present(side: Side, cycle_boundary: IntMatrix, face_boundary: IntMatrix) -> Presentation:
    n = cycle_boundary.cols
    outer = smith_normal_form(cycle_boundary)
    r = outer.rank
    k = n - r
    # cycles = span of V[:, r:]; coordinates of a cycle are rows r: of V^-1
    cycle_basis = IntMatrix.from_columns([outer.V.column(j) for j in range(r, n)], rows=n)
    to_cycle_coords = IntMatrix.from_rows([outer.V_inv.row(i) for i in range(r, n)], cols=n)
    relations = to_cycle_coords @ face_boundary
    inner = smith_normal_form(relations)
    diag = tuple(inner.diagonal) + (0,) * (k - len(inner.diagonal))
    transform = inner.U @ to_cycle_coords
    gens_matrix = cycle_basis @ inner.U_inv
    generators = tuple(gens_matrix.column(j) for j in range(k))
    return Presentation(
        side=side,
        face_boundary=face_boundary,
        transform=transform,
        generators=generators,
        diagonal=diag,
        torsion_indices=tuple(i for i, d in enumerate(diag) if d > 1),
        free_indices=tuple(i for i, d in enumerate(diag) if d == 0),
        face_snf=smith_normal_form(face_boundary),
    )


@dataclass(frozen=True)
class HomologyProfile:
    complex: CellComplex
    primal: Presentation
    dual: Presentation

    @property
    def b1(self) -> int:
        return len(self.primal.free_indices)

    @property
    def torsion(self) -> tuple[int, ...]:
        return self.primal.torsion

    @property
    def torsion_order(self) -> int:
        return math.prod(self.torsion)

    @property
    def orientation(self) -> int:
        return self.complex.orientation

    def presentation(self, side: Side) -> Presentation:
        return self.primal if Side(side) is Side.PRIMAL else self.dual

    @property
    def free_generators(self) -> list[Cycle]:
        return [Cycle(Side.PRIMAL, g) for g in self.primal.free_generators]

    @property
    def free_generators_dual(self) -> list[Cycle]:
        return [Cycle(Side.DUAL, g) for g in self.dual.free_generators]

    @property
    def torsion_generators_primal(self) -> list[Cycle]:
        return [Cycle(Side.PRIMAL, g) for g in self.primal.torsion_generators]

    @property
    def torsion_generators_dual(self) -> list[Cycle]:
        return [Cycle(Side.DUAL, g) for g in self.dual.torsion_generators]

    def summary(self) -> str:
        return f"b1={self.b1} torsion={list(self.torsion)}"


@dataclass(frozen=True)
class ClassCoordinates:
    free: tuple[int, ...]
    torsion: tuple[int, ...]

    def is_trivial(self) -> bool:
        return not any(self.free) and not any(self.torsion)


@dataclass(frozen=True)
class BoundingData:
    """``order * cycle == face_boundary @ chain``."""

    order: int
    chain: tuple[int, ...]


@lru_cache(maxsize=256)
def homology_h1(c: CellComplex) -> HomologyProfile:
    validate(c).raise_if_invalid()
    dc = dualize(c)
    primal = _present(Side.PRIMAL, c.boundary1, c.boundary2)
    dual = _present(Side.DUAL, dc.boundary1, dc.boundary2)
    if (len(primal.free_indices), primal.torsion) != (len(dual.free_indices), dual.torsion):
        raise ValueError(
            f"{c.name}: primal H_1 (b1={len(primal.free_indices)}, torsion={primal.torsion}) "
            f"differs from dual H_1 (b1={len(dual.free_indices)}, torsion={dual.torsion})")
    return HomologyProfile(c, primal, dual)


def _checked(profile: HomologyProfile, z: Cycle) -> Cycle:
    return Cycle.checked(profile.complex, z.side, z.components)


def class_of(profile: HomologyProfile, z: Cycle) -> ClassCoordinates:
    z = _checked(profile, z)
    pres = profile.presentation(z.side)
    y = pres.transform.matvec(z.components)
    return ClassCoordinates(
        free=tuple(y[i] for i in pres.free_indices),
        torsion=tuple(y[i] % pres.diagonal[i] for i in pres.torsion_indices),
    )


def class_order(torsion: Sequence[int], coords: Sequence[int]) -> int:
    return math.lcm(1, *(p // math.gcd(t, p) for p, t in zip(torsion, coords)))


def bounding_data(profile: HomologyProfile, z: Cycle) -> BoundingData:
    """Smallest ``p`` with ``p z`` a boundary, and a face chain it bounds."""
    coords = class_of(profile, z)
    if any(coords.free):
        raise FreeClassError(f"cycle {z.components} has free class {coords.free}; no multiple bounds")
    pres = profile.presentation(z.side)
    p = class_order(pres.torsion, coords.torsion)
    chain = solve_integer(pres.face_boundary, [p * x for x in z.components], snf=pres.face_snf)
    assert chain is not None
    return BoundingData(p, tuple(chain))


def linking_number(profile: HomologyProfile, z1: Cycle, z2: Cycle) -> Fraction:
    """Unreduced ``(sigma . z2) / p`` where ``p z1`` bounds ``sigma``.

    The value is the coordinate pairing; the orientation sign of the complex
    is applied by the callers that build phases from it.
    """
    if Side(z1.side) is not Side.PRIMAL or Side(z2.side) is not Side.DUAL:
        raise ValueError("linking_number takes a primal z1 and a dual z2")
    _checked(profile, z2)
    bd = bounding_data(profile, z1)
    return Fraction(sum(a * b for a, b in zip(bd.chain, z2.components)), bd.order)


@dataclass(frozen=True)
class LinkingData:
    """``form_matrix[i][j] = Q(primal generator i, dual generator j)`` in ``[0, 1)``."""

    torsion: tuple[int, ...]
    form_matrix: tuple[tuple[Fraction, ...], ...]

    @property
    def denominators(self) -> tuple[tuple[int, ...], ...]:
        return tuple(tuple(q.denominator for q in row) for row in self.form_matrix)

    def pair(self, primal: Sequence[int], dual: Sequence[int]) -> Fraction:
        """Bilinear extension to torsion coordinates, reduced mod 1."""
        total = Fraction(0)
        for i, x in enumerate(primal):
            if x:
                for j, y in enumerate(dual):
                    if y:
                        total += x * y * self.form_matrix[i][j]
        return total % 1

    def classes(self):
        return itertools.product(*(range(p) for p in self.torsion))

    def is_nondegenerate(self) -> bool:
        """Every nonzero primal class pairs nontrivially with some dual generator."""
        n = len(self.torsion)
        for kappa in self.classes():
            if any(kappa) and all(self.pair(kappa, [int(i == j) for i in range(n)]) == 0
                                  for j in range(n)):
                return False
        return True


def linking_pairing(profile: HomologyProfile, x: Cycle, y: Cycle) -> Fraction:
    """``Q(x, y)`` reduced mod 1; ``y`` must be a dual torsion cycle."""
    if any(class_of(profile, y).free):
        raise FreeClassError("the dual cycle must have zero free class")
    return linking_number(profile, x, y) % 1


@lru_cache(maxsize=256)
def linking_form(profile: HomologyProfile) -> LinkingData:
    gs = profile.torsion_generators_primal
    hs = profile.torsion_generators_dual
    matrix = tuple(tuple(linking_pairing(profile, g, h) for h in hs) for g in gs)
    return LinkingData(profile.torsion, matrix)
