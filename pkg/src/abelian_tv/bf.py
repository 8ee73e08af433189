"""Closed-form Z_N BF expectation values from homology and linking data.

For a primal cycle ``g1`` and a dual cycle ``g2`` with free classes ``f1, f2``
and torsion classes ``t1`` (primal) and ``t2`` (dual)::

    <<g1, g2>> = delta_N(f1) delta_N(f2) e(-w lk(g1', g2') / N)
                 * sum_{k primal, v dual} e(-w (N Q(k, v) + Q(t1, v) + Q(k, t2)))

where ``g_i'`` is ``g_i`` with its free part removed, ``Q`` is the mixed
linking pairing and ``w`` the orientation sign of the complex.  Each
coupling pairs a primal class with a dual one.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction

from .cellcomplex import Cycle, Side
from .cyclotomic import PhaseSum
from .homology import (ClassCoordinates, HomologyProfile, LinkingData, class_of,
                       linking_number)

__all__ = ["BfObservable", "free_delta", "bf_partition", "bf_expectation"]


@dataclass(frozen=True)
class BfObservable:
    gamma1: Cycle
    gamma2: Cycle
    level: int

    def __post_init__(self):
        if isinstance(self.level, bool) or not isinstance(self.level, int) or self.level < 1:
            raise ValueError(f"level must be an integer >= 1, got {self.level!r}")
        if Side(self.gamma1.side) is not Side.PRIMAL or Side(self.gamma2.side) is not Side.DUAL:
            raise ValueError("gamma1 must be a primal cycle and gamma2 a dual cycle")


def free_delta(coords: ClassCoordinates, N: int) -> int:
    return int(all(f % N == 0 for f in coords.free))


def _gauss_sum(linking: LinkingData, N: int, orientation: int,
               t1=None, t2=None) -> PhaseSum:
    n = len(linking.torsion)
    t1 = tuple(t1) if t1 is not None else (0,) * n
    t2 = tuple(t2) if t2 is not None else (0,) * n
    hist: dict[Fraction, int] = defaultdict(int)
    for kappa in linking.classes():
        c2 = linking.pair(kappa, t2)
        for v in linking.classes():
            q = N * linking.pair(kappa, v) + linking.pair(t1, v) + c2
            hist[-orientation * q] += 1
    return PhaseSum(hist)


def bf_partition(profile: HomologyProfile, linking: LinkingData, N: int) -> PhaseSum:
    """``sum_{k, v} e(-w N Q(k, v))``; equals 1 when there is no torsion."""
    return _gauss_sum(linking, N, profile.orientation)


def _strip_free(coords: ClassCoordinates, z: Cycle, generators: list[Cycle]) -> Cycle:
    out = z
    for f, g in zip(coords.free, generators):
        out = out - g * f
    return out


def bf_expectation(profile: HomologyProfile, linking: LinkingData, obs: BfObservable) -> PhaseSum:
    N = obs.level
    c1 = class_of(profile, obs.gamma1)
    c2 = class_of(profile, obs.gamma2)
    if not (free_delta(c1, N) and free_delta(c2, N)):
        return PhaseSum.zero()
    z1 = _strip_free(c1, obs.gamma1, profile.free_generators)
    z2 = _strip_free(c2, obs.gamma2, profile.free_generators_dual)
    lk = linking_number(profile, z1, z2)
    w = profile.orientation
    phase = PhaseSum({-w * lk / N: 1})
    return phase * _gauss_sum(linking, N, w, c1.torsion, c2.torsion)
