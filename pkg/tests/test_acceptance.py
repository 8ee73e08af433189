"""Acceptance suite: one test group per criterion, reported per criterion at the end of the run.

Instances whose literal statement is false are kept as strict xfails with
the reason, next to a passing test of the corrected statement.
"""

import itertools
import math
import random
from fractions import Fraction

import pytest

from abelian_tv.bf import BfObservable, bf_expectation, bf_partition
from abelian_tv.cellcomplex import Cycle, InvalidComplexError, builtin, dualize, validate
from abelian_tv.cyclotomic import PhaseSum, root_of_unity as R
from abelian_tv.homology import homology_h1, linking_form
from abelian_tv.intlinalg import IntMatrix, smith_normal_form
from abelian_tv.reciprocity import lemma_check, reciprocity_check, reciprocity_factor
from abelian_tv.tv import (count_closed_labelings, count_liftable_closed_labelings,
                           covariant_gauge_partition, tv_expectation, tv_partition)

from conftest import all_complexes, cycle_pairs, relabel

BUILTINS = [builtin("s3"), builtin("s1xs2"), builtin("rp3")]
ALL = all_complexes()


def ids(c):
    return c.name


def zeta(k, n):
    return R(k, n)


# -- 1 ------------------------------------------------------------------------

@pytest.mark.criterion(1)
@pytest.mark.parametrize("strategy", ["constrained", "tree"])
@pytest.mark.parametrize("N", range(1, 9))
def test_c1_sphere(N, strategy):
    assert tv_expectation(builtin("s3"), N, (1, 0), (0, 1, 0), strategy=strategy) == zeta(1, N)


# -- 2 ------------------------------------------------------------------------

def _s1xs2_strategy(N):
    return "brute" if N <= 3 else "constrained"


@pytest.mark.criterion(2)
@pytest.mark.parametrize("N", range(1, 7))
def test_c2_s1xs2_values(N):
    c, st = builtin("s1xs2"), _s1xs2_strategy(N)
    assert tv_partition(c, N, strategy=st) == N
    assert tv_expectation(c, N, (1, 1, 1, 0, 0), None, strategy=st) == N
    assert tv_expectation(c, N, (1, 1, 1, 0, 0), (1, -1, 1, 1), strategy=st) == zeta(1, N) * N


_TRIVIAL_GROUP = ("at N=1 every phase is 1 and the free-class delta is 1, so the value is "
                  "the partition function 1, not 0")


@pytest.mark.criterion(2)
@pytest.mark.parametrize("N", [pytest.param(1, marks=pytest.mark.xfail(strict=True, reason=_TRIVIAL_GROUP))]
                         + list(range(2, 7)))
def test_c2_s1xs2_free_cycle_vanishes(N):
    assert tv_expectation(builtin("s1xs2"), N, (0, 0, 0, 1, 0), None,
                          strategy=_s1xs2_strategy(N)).is_zero()


def test_c2_free_cycle_at_level_one_is_one():
    assert tv_expectation(builtin("s1xs2"), 1, (0, 0, 0, 1, 0), None, strategy="brute") == 1


# -- 3 ------------------------------------------------------------------------

@pytest.mark.criterion(3)
@pytest.mark.parametrize("N", range(1, 9))
def test_c3_projective_space(N):
    c = builtin("rp3")
    odd = N % 2
    z1 = (1, 0, 0, 1)
    expected_a = zeta(-1, N) * odd
    expected_b = -zeta(-1, 2 * N) * odd
    for z2, expected in (((0, 0, 1, 1), expected_a), ((0, 0, 1, 0), expected_b)):
        truth = tv_expectation(c, N, z1, z2, strategy="brute")
        assert truth == expected
        assert tv_expectation(c, N, z1, z2, strategy="tree") == truth
        assert tv_expectation(c, N, z1, z2, strategy="constrained") == truth


# -- 4 ------------------------------------------------------------------------

@pytest.mark.criterion(4)
@pytest.mark.parametrize("c", ALL, ids=ids)
@pytest.mark.parametrize("N", range(1, 7))
def test_c4_reciprocity(c, N):
    pairs = cycle_pairs(c)
    assert len(pairs) >= 4
    for z1, z2 in pairs:
        report = reciprocity_check(c, N, z1, z2)
        assert report.equal, (z1, z2, report.lhs.to_text(), report.rhs.to_text())


# -- 5 ------------------------------------------------------------------------

@pytest.mark.criterion(5)
@pytest.mark.parametrize("c", ALL, ids=ids)
@pytest.mark.parametrize("N", range(1, 7))
def test_c5_partition_identity(c, N):
    h = homology_h1(c)
    z_bf = bf_partition(h, linking_form(h), N)
    assert tv_partition(c, N) == z_bf.scale(reciprocity_factor(h, N))
    if c.name == "rp3":
        assert z_bf == 3 + (-1) ** N


# -- 6 ------------------------------------------------------------------------

def _kernel_params():
    out = []
    for c in ALL:
        h = homology_h1(c)
        for N in (2, 3):
            extra = math.prod(math.gcd(N, p) for p in h.torsion)
            marks = []
            if extra != 1:
                marks = [pytest.mark.xfail(strict=True, reason=(
                    f"labelings closed mod {N} that are not reductions of integer cocycles add a "
                    f"factor {extra}; the count holds for the integer kernel reduced mod N"))]
            out.append(pytest.param(c, N, marks=marks, id=f"{c.name}-N{N}"))
    return out


@pytest.mark.criterion(6)
@pytest.mark.parametrize("c,N", _kernel_params())
def test_c6_kernel_count(c, N):
    h = homology_h1(c)
    assert count_closed_labelings(c, N) == N ** (h.b1 + c.V - 1)


@pytest.mark.parametrize("c", ALL, ids=ids)
@pytest.mark.parametrize("N", [2, 3, 4])
def test_c6_corrected_kernel_count(c, N):
    h = homology_h1(c)
    base = N ** (h.b1 + c.V - 1)
    assert count_liftable_closed_labelings(c, N) == base
    assert count_closed_labelings(c, N) == base * math.prod(math.gcd(N, p) for p in h.torsion)


# -- 7 ------------------------------------------------------------------------

EXAMPLE_DUAL_CYCLES = {"s3": [(0, 1, 0)], "s1xs2": [(1, -1, 1, 1)]}
HEEGAARD_DUAL_CYCLES = [(0, 0, 1, 0), (0, 0, 1, 1)]


@pytest.mark.criterion(7)
@pytest.mark.parametrize("c", ALL, ids=ids)
@pytest.mark.parametrize("N", [2, 3])
def test_c7_lemma(c, N):
    for z2 in [None] + EXAMPLE_DUAL_CYCLES.get(c.name, HEEGAARD_DUAL_CYCLES):
        rep = lemma_check(c, N, z2)
        assert rep.solutions == rep.kernel * rep.classes, rep.to_dict()
        assert rep.kernel == rep.kernel_formula
        assert rep.fibres_are_cosets


# -- 8 ------------------------------------------------------------------------

@pytest.mark.criterion(8)
@pytest.mark.parametrize("c", ALL, ids=ids)
def test_c8_duality(c):
    d = dualize(c)
    for N in range(1, 7):
        assert tv_partition(c, N) == tv_partition(d, N)


# -- 9 ------------------------------------------------------------------------

@pytest.mark.criterion(9)
@pytest.mark.parametrize("name", ["s3", "s1xs2"])
@pytest.mark.parametrize("N", range(1, 7))
def test_c9_covariant_matches(name, N):
    r = covariant_gauge_partition(builtin(name), N)
    assert r.matches and r.value == tv_partition(builtin(name), N)


@pytest.mark.criterion(9)
@pytest.mark.parametrize("N", range(1, 7))
def test_c9_covariant_rp3_produces_gcd_factor(N):
    r = covariant_gauge_partition(builtin("rp3"), N)
    assert r.raw_count == math.gcd(N, 4)
    assert r.degeneracy == math.gcd(N, 2)


_RATIO = ("the degeneracy divisor gcd(N, 2) cancels part of the gcd(N, 4) count, so at N=4 "
          "the covariant value equals the partition function and the ratio is 1")


@pytest.mark.criterion(9)
@pytest.mark.parametrize("N", [1, 2, 3, pytest.param(4, marks=pytest.mark.xfail(strict=True, reason=_RATIO)),
                               5, 6])
def test_c9_covariant_rp3_ratio(N):
    r = covariant_gauge_partition(builtin("rp3"), N)
    assert r.ratio == math.gcd(N, 4)


# -- 10 -----------------------------------------------------------------------

@pytest.mark.criterion(10)
@pytest.mark.parametrize("c", ALL, ids=ids)
@pytest.mark.parametrize("N", range(1, 5))
def test_c10_nilpotency(c, N):
    h = homology_h1(c)
    L = linking_form(h)

    def bf(z1, z2):
        return bf_expectation(h, L, BfObservable(Cycle.primal(c, z1), Cycle.dual(c, z2), N))

    for z1, z2 in cycle_pairs(c):
        nz1 = tuple(N * x for x in z1)
        zero1 = (0,) * c.E
        assert tv_expectation(c, N, nz1, z2) == tv_expectation(c, N, zero1, z2)
        assert bf(nz1, z2) == bf(zero1, z2)
        nz2 = tuple(N * x for x in z2)
        zero2 = (0,) * c.F
        assert tv_expectation(c, N, z1, nz2) == tv_expectation(c, N, z1, zero2)
        assert bf(z1, nz2) == bf(z1, zero2)


# -- 11 -----------------------------------------------------------------------

def _perturb(c, rng):
    rows = c.boundary2.to_rows()
    i, j = rng.randrange(c.E), rng.randrange(c.F)
    rows[i][j] += rng.choice((-1, 1))
    return type(c)(c.name + "!", c.boundary3, IntMatrix.from_rows(rows, cols=c.F), c.boundary1,
                   orientation=c.orientation)


@pytest.mark.criterion(11)
@pytest.mark.parametrize("seed", range(8))
def test_c11_strategy_agreement(seed):
    rng = random.Random(seed)
    bases = ALL + [dualize(c) for c in BUILTINS]
    rejected = 0
    for base in bases:
        c, q1, q2 = relabel(base, rng)
        candidates = [c, _perturb(c, rng)]
        for cand in candidates:
            if not validate(cand).ok:
                rejected += 1
                for s in ("brute", "constrained", "tree"):
                    with pytest.raises(InvalidComplexError):
                        tv_partition(cand, 2, strategy=s)
                continue
            for N in range(1, 4):
                if N ** (cand.E + cand.F) > 2 * 10**5:
                    continue
                z1s = [(0,) * cand.E] + ([q1.matvec(z) for z, _ in cycle_pairs(base)[::4]]
                                         if cand is c and not base.name.endswith("*") else [])
                z2s = [(0,) * cand.F] + ([q2.matvec(z) for _, z in cycle_pairs(base)[:4]]
                                         if cand is c and not base.name.endswith("*") else [])
                for z1, z2 in itertools.product(z1s, z2s):
                    vals = [tv_expectation(cand, N, z1, z2, strategy=s)
                            for s in ("brute", "constrained", "tree")]
                    assert vals[0] == vals[1] == vals[2], (cand.name, N, z1, z2)
    assert rejected >= 1


# -- 12 -----------------------------------------------------------------------

def _det(rows):
    n = len(rows)
    total = 0
    for perm in itertools.permutations(range(n)):
        inv = sum(1 for a, b in itertools.combinations(range(n), 2) if perm[a] > perm[b])
        term = -1 if inv % 2 else 1
        for i, p in enumerate(perm):
            term *= rows[i][p]
            if not term:
                break
        total += term
    return total


def _minors_diagonal(rows, m, n):
    out, prev = [], 1
    for k in range(1, min(m, n) + 1):
        g = 0
        for r in itertools.combinations(range(m), k):
            for c in itertools.combinations(range(n), k):
                g = math.gcd(g, _det([[rows[i][j] for j in c] for i in r]))
        if g == 0:
            return tuple(out) + (0,) * (min(m, n) - k + 1)
        out.append(g // prev)
        prev = g
    return tuple(out)


@pytest.mark.criterion(12)
@pytest.mark.parametrize("block", range(4))
def test_c12_snf_oracle(block):
    rng = random.Random(1000 + block)
    for _ in range(50):
        m, n = rng.randint(1, 5), rng.randint(1, 5)
        rows = [[rng.randint(-3, 3) for _ in range(n)] for _ in range(m)]
        snf = smith_normal_form(IntMatrix.from_rows(rows, cols=n))
        assert snf.diagonal == _minors_diagonal(rows, m, n), rows
