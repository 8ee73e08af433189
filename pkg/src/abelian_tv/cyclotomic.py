"""Exact finite sums of roots of unity.

A :class:`PhaseSum` is a formal combination ``sum_q c_q e(2 pi i q)`` with
rational phases ``q`` in ``[0, 1)`` and rational coefficients.  Equality is
decided inside the cyclotomic field: lift to a common denominator ``n``,
reduce the resulting polynomial in ``zeta_n`` modulo the ``n``-th cyclotomic
polynomial and compare remainders.
"""

from __future__ import annotations

import cmath
import math
from fractions import Fraction
from functools import lru_cache
from types import MappingProxyType
from typing import Mapping, Union

import mpmath

__all__ = ["PhaseSum", "root_of_unity", "cyclotomic_polynomial"]

Rational = Union[int, Fraction]


def _divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple[int, ...]:
    """Integer coefficients of ``Phi_n``, lowest degree first.

    Uses ``x^n - 1 = prod_{d | n} Phi_d(x)``.
    """
    if n < 1:
        raise ValueError("n must be positive")
    num = [-1] + [0] * (n - 1) + [1]
    for d in _divisors(n)[:-1]:
        num = _exact_div(num, cyclotomic_polynomial(d))
    return tuple(num)


def _exact_div(num: list[int], den: tuple[int, ...]) -> list[int]:
    # den is monic
    num = list(num)
    dd = len(den) - 1
    q = [0] * (len(num) - dd)
    for k in range(len(num) - 1, dd - 1, -1):
        c = num[k]
        if c:
            q[k - dd] = c
            for j, dj in enumerate(den):
                num[k - dd + j] -= c * dj
    assert not any(num), "non-exact cyclotomic division"
    return q


def _reduce(coeffs: list[Fraction], n: int) -> list[Fraction]:
    # remainder of sum coeffs[k] x^k modulo Phi_n
    phi = cyclotomic_polynomial(n)
    deg = len(phi) - 1
    c = list(coeffs)
    for k in range(len(c) - 1, deg - 1, -1):
        lead = c[k]
        if lead:
            for j, pj in enumerate(phi):
                if pj:
                    c[k - deg + j] -= lead * pj
    return c[:deg]


def _solve_rational(columns: list[list[Fraction]], rhs: list[Fraction]) -> list[Fraction] | None:
    # Gaussian elimination for sum_j x_j columns[j] = rhs; None if inconsistent.
    rows = len(rhs)
    ncols = len(columns)
    M = [[columns[j][i] for j in range(ncols)] + [rhs[i]] for i in range(rows)]
    pivots = []
    r = 0
    for col in range(ncols):
        piv = next((i for i in range(r, rows) if M[i][col]), None)
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        inv = 1 / M[r][col]
        M[r] = [x * inv for x in M[r]]
        for i in range(rows):
            if i != r and M[i][col]:
                f = M[i][col]
                M[i] = [a - f * b for a, b in zip(M[i], M[r])]
        pivots.append(col)
        r += 1
    if any(M[i][-1] for i in range(r, rows)):
        return None
    x = [Fraction(0)] * ncols
    for i, col in enumerate(pivots):
        x[col] = M[i][-1]
    return x


class PhaseSum:
    """Immutable finite sum of roots of unity with rational coefficients.

    ``==`` is exact equality in the cyclotomic field, so two sums with
    different term maps may compare equal (``1 + e(1/2) == 0``).  Use
    :meth:`canonical` for a unique representative.
    """

    __slots__ = ("_terms", "_canon")

    def __init__(self, terms: Mapping[Rational, Rational] | None = None):
        acc: dict[Fraction, Fraction] = {}
        for q, c in (terms or {}).items():
            q = Fraction(q) % 1
            acc[q] = acc.get(q, Fraction(0)) + Fraction(c)
        self._terms = MappingProxyType({q: c for q, c in sorted(acc.items()) if c})
        self._canon = None

    # -- construction -----------------------------------------------------

    @classmethod
    def constant(cls, r: Rational) -> PhaseSum:
        return cls({0: r})

    @classmethod
    def zero(cls) -> PhaseSum:
        return cls()

    @classmethod
    def from_histogram(cls, counts, n: int, scale: Rational = 1, sign: int = 1) -> PhaseSum:
        """``scale * sum_k counts[k] e(sign * k / n)``."""
        return cls({Fraction(sign * k, n): scale * int(c) for k, c in enumerate(counts) if c})

    @property
    def terms(self) -> Mapping[Fraction, Fraction]:
        return self._terms

    def denominator(self) -> int:
        return math.lcm(1, *(q.denominator for q in self._terms))

    # -- ring operations --------------------------------------------------

    @staticmethod
    def _coerce(x) -> PhaseSum:
        if isinstance(x, PhaseSum):
            return x
        if isinstance(x, (int, Fraction)):
            return PhaseSum.constant(x)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        merged = dict(self._terms)
        for q, c in other._terms.items():
            merged[q] = merged.get(q, 0) + c
        return PhaseSum(merged)

    __radd__ = __add__

    def __neg__(self):
        return PhaseSum({q: -c for q, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, r: Rational) -> PhaseSum:
        r = Fraction(r)
        return PhaseSum({q: c * r for q, c in self._terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not isinstance(other, PhaseSum):
            return NotImplemented
        out: dict[Fraction, Fraction] = {}
        for q1, c1 in self._terms.items():
            for q2, c2 in other._terms.items():
                q = (q1 + q2) % 1
                out[q] = out.get(q, 0) + c1 * c2
        return PhaseSum(out)

    __rmul__ = __mul__

    def conjugate(self) -> PhaseSum:
        return PhaseSum({-q: c for q, c in self._terms.items()})

    def galois(self, a: int) -> PhaseSum:
        """Apply ``zeta -> zeta^a``; ``a`` must be coprime to the denominator."""
        return PhaseSum({a * q: c for q, c in self._terms.items()})

    # -- exact comparison -------------------------------------------------

    def _remainder(self, n: int) -> list[Fraction]:
        coeffs = [Fraction(0)] * n
        for q, c in self._terms.items():
            coeffs[q.numerator * (n // q.denominator)] += c
        return _reduce(coeffs, n)

    def is_zero(self) -> bool:
        if not self._terms:
            return True
        return not any(self._remainder(self.denominator()))

    def equals_exact(self, other) -> bool:
        other = self._coerce(other)
        if other is NotImplemented:
            return False
        return (self - other).is_zero()

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.equals_exact(other)

    def __hash__(self):
        return hash(tuple(self.canonical()._terms.items()))

    def as_rational(self) -> Fraction | None:
        """The value as a rational number, or ``None`` if it is not rational."""
        c = self.canonical()
        if not c._terms:
            return Fraction(0)
        if len(c._terms) == 1 and 0 in c._terms:
            return c._terms[Fraction(0)]
        return None

    def canonical(self) -> PhaseSum:
        """Unique representative of this value.

        A single ``r e(k/n)`` with ``r > 0`` when the value is a rational
        multiple of a root of unity, except that negative rationals stay at
        phase 0.  Otherwise the power-basis expansion over the smallest
        cyclotomic field containing the value.
        """
        if self._canon is None:
            self._canon = self._compute_canonical()
        return self._canon

    def _compute_canonical(self) -> PhaseSum:
        if self.is_zero():
            return PhaseSum()
        n = self.denominator()
        n2 = n if n % 2 == 0 else 2 * n
        # the float argument only proposes k; membership is decided exactly
        z = self.evaluate()
        guess = round(cmath.phase(z) / (2 * math.pi) * n2)
        for k in (guess, guess - 1, guess + 1):
            k %= n2
            rem = (self * PhaseSum({Fraction(-k, n2): 1}))._remainder(n2)
            if not any(rem[1:]) and rem[0] > 0:
                if 2 * k == n2:
                    return PhaseSum({0: -rem[0]})
                return PhaseSum({Fraction(k, n2): rem[0]})
        d = self._conductor(n2)
        basis_size = len(cyclotomic_polynomial(d)) - 1
        columns = [PhaseSum({Fraction(j, d): 1})._remainder(n2) for j in range(basis_size)]
        x = _solve_rational(columns, self._remainder(n2))
        assert x is not None
        return PhaseSum({Fraction(j, d): c for j, c in enumerate(x)})

    def _conductor(self, n: int) -> int:
        units = [a for a in range(1, n) if math.gcd(a, n) == 1]
        for d in _divisors(n):
            if all(self.galois(a) == self for a in units if a % d == 1 % d):
                return d
        return n

    # -- display ----------------------------------------------------------

    def evaluate(self, precision: int = 15) -> complex:
        """Floating-point value, accurate to ``10**-precision``."""
        with mpmath.workdps(max(precision, 15) + 10):
            total = mpmath.mpc(0)
            for q, c in self._terms.items():
                total += mpmath.mpf(c.numerator) / c.denominator * mpmath.expjpi(
                    2 * mpmath.mpf(q.numerator) / q.denominator)
            return complex(total)

    def __complex__(self):
        return self.evaluate()

    def to_text(self) -> str:
        terms = self.canonical()._terms
        if not terms:
            return "0"
        parts = []
        for q, c in terms.items():
            mag = abs(c)
            if q == 0:
                body = str(mag)
            else:
                body = f"e(2πi·{q.numerator}/{q.denominator})"
                if mag != 1:
                    body = f"{mag}·{body}"
            if not parts:
                parts.append(body if c > 0 else f"-{body}")
            else:
                parts.append(f"{'+' if c > 0 else '-'} {body}")
        return " ".join(parts)

    def to_float_text(self, digits: int = 12) -> str:
        z = self.evaluate()
        scale = max(1.0, abs(z))
        re = 0.0 if abs(z.real) < 1e-13 * scale else z.real
        im = 0.0 if abs(z.imag) < 1e-13 * scale else z.imag
        sign = "-" if im < 0 else "+"
        return f"{re:.{digits}g} {sign} {abs(im):.{digits}g}i"

    def to_json_terms(self) -> list[list[int]]:
        """``[[phase_num, phase_den, coeff_num, coeff_den], ...]`` of the canonical form."""
        return [[q.numerator, q.denominator, c.numerator, c.denominator]
                for q, c in self.canonical()._terms.items()]

    @classmethod
    def from_json_terms(cls, rows) -> PhaseSum:
        return cls({Fraction(a, b): Fraction(c, d) for a, b, c, d in rows})

    def __str__(self):
        return self.to_text()

    def __repr__(self):
        inner = ", ".join(f"{q}: {c}" for q, c in self._terms.items())
        return f"PhaseSum({{{inner}}})"


def root_of_unity(k: int, n: int) -> PhaseSum:
    """``e(2 pi i k / n)`` as a one-term :class:`PhaseSum`."""
    if n < 1:
        raise ValueError("root_of_unity needs n >= 1")
    return PhaseSum({Fraction(k, n): 1})
