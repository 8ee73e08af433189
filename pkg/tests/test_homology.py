import itertools
import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from abelian_tv.cellcomplex import Cycle, Side, builtin, dualize
from abelian_tv.homology import (FreeClassError, bounding_data, class_of, homology_h1,
                                 linking_form, linking_number, linking_pairing)
from abelian_tv.intlinalg import kernel_basis

from conftest import all_complexes

EXPECTED = {"s3": (0, ()), "s1xs2": (1, ()), "rp3": (0, (2,)),
            "lens(3)": (0, (3,)), "lens(4)": (0, (4,)), "lens(5)": (0, (5,))}


def h1_mod_n_size(c, N):
    """|H_1(M; Z_N)| by enumerating cycles and boundaries mod N."""
    b1 = c.boundary1.to_rows()
    b2 = c.boundary2.to_rows()
    cycles = sum(1 for z in itertools.product(range(N), repeat=c.E)
                 if all(sum(r[i] * z[i] for i in range(c.E)) % N == 0 for r in b1))
    bounds = {tuple(sum(r[a] * s[a] for a in range(c.F)) % N for r in b2)
              for s in itertools.product(range(N), repeat=c.F)}
    return cycles // len(bounds)


@pytest.mark.parametrize("c", all_complexes(), ids=lambda c: c.name)
def test_profile_matches_mod_n_oracle(c):
    h = homology_h1(c)
    assert (h.b1, h.torsion) == EXPECTED[c.name]
    for N in range(2, 7):
        assert h1_mod_n_size(c, N) == N**h.b1 * math.prod(math.gcd(N, p) for p in h.torsion)


@pytest.mark.parametrize("c", all_complexes(), ids=lambda c: c.name)
def test_profile_structure(c):
    h = homology_h1(c)
    assert all(b % a == 0 for a, b in zip(h.torsion, h.torsion[1:]))
    hd = homology_h1(dualize(c))
    assert (hd.b1, hd.torsion) == (h.b1, h.torsion)
    for side, gens in ((Side.PRIMAL, h.torsion_generators_primal),
                       (Side.DUAL, h.torsion_generators_dual)):
        for g, p in zip(gens, h.torsion):
            Cycle.checked(c, side, g.components)
            assert bounding_data(h, g).order == p
    assert len(h.free_generators) == h.b1 == len(h.free_generators_dual)


def test_class_of_examples():
    s3, s, r = builtin("s3"), builtin("s1xs2"), builtin("rp3")
    assert class_of(homology_h1(s3), Cycle.primal(s3, (1, 0))).is_trivial()
    assert class_of(homology_h1(r), Cycle.primal(r, (1, 0, 0, 1))).torsion == (1,)
    free = class_of(homology_h1(s), Cycle.primal(s, (0, 0, 0, 1, 0))).free
    assert free in ((1,), (-1,))


def test_bounding_data_examples():
    r, s = builtin("rp3"), builtin("s1xs2")
    bd = bounding_data(homology_h1(r), Cycle.primal(r, (1, 0, 0, 1)))
    assert (bd.order, bd.chain) == (2, (1, 0, 1, 1))
    bd = bounding_data(homology_h1(s), Cycle.primal(s, (1, 1, 1, 0, 0)))
    assert (bd.order, bd.chain) == (1, (0, 0, 1, 0))
    with pytest.raises(FreeClassError):
        bounding_data(homology_h1(s), Cycle.primal(s, (0, 0, 0, 1, 0)))


def test_linking_number_examples():
    s3, r = builtin("s3"), builtin("rp3")
    assert linking_number(homology_h1(s3), Cycle.primal(s3, (1, 0)), Cycle.dual(s3, (0, 1, 0))) == 1
    hr = homology_h1(r)
    z1 = Cycle.primal(r, (1, 0, 0, 1))
    assert linking_number(hr, z1, Cycle.dual(r, (0, 0, 1, 0))) == Fraction(1, 2)
    assert linking_number(hr, z1, Cycle.dual(r, (0, 0, 1, 1))) == 1


def test_linking_number_side_check():
    r = builtin("rp3")
    with pytest.raises(ValueError):
        linking_number(homology_h1(r), Cycle.dual(r, (0, 0, 1, 0)), Cycle.primal(r, (1, 0, 0, 1)))


def test_linking_form_examples():
    assert linking_form(homology_h1(builtin("s3"))).form_matrix == ()
    assert linking_form(homology_h1(builtin("rp3"))).form_matrix == ((Fraction(1, 2),),)
    L = linking_form(homology_h1(builtin("lens", 3)))
    (q,), = L.form_matrix
    assert q.denominator == 3 and math.gcd(q.numerator, 3) == 1


@pytest.mark.parametrize("p", [2, 3, 4, 5, 6, 7])
def test_linking_form_nondegenerate(p):
    L = linking_form(homology_h1(builtin("lens", p)))
    assert L.is_nondegenerate()
    for i, row in enumerate(L.form_matrix):
        for j, q in enumerate(row):
            assert 0 <= q < 1
            assert (q * math.lcm(L.torsion[i], L.torsion[j])).denominator == 1


def _random_cycle(kernel, coeffs):
    return tuple(sum(a * k[i] for a, k in zip(coeffs, kernel)) for i in range(len(kernel[0])))


HEEGAARD = ["rp3", ("lens", 3), ("lens", 4), "s1xs2"]


def _get(source):
    return builtin(*source) if isinstance(source, tuple) else builtin(source)


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(HEEGAARD), st.lists(st.integers(-4, 4), min_size=8, max_size=8),
       st.lists(st.integers(-3, 3), min_size=4, max_size=4))
def test_class_of_additive_and_kills_boundaries(source, coeffs, sigma):
    c = _get(source)
    h = homology_h1(c)
    K = kernel_basis(c.boundary1)
    za = Cycle.primal(c, _random_cycle(K, coeffs[:len(K)]))
    zb = Cycle.primal(c, _random_cycle(K, coeffs[4:4 + len(K)]))
    ca, cb, cs = class_of(h, za), class_of(h, zb), class_of(h, za + zb)
    assert cs.free == tuple(x + y for x, y in zip(ca.free, cb.free))
    assert cs.torsion == tuple((x + y) % p for x, y, p in zip(ca.torsion, cb.torsion, h.torsion))
    bd = Cycle.primal(c, c.boundary2.matvec(sigma[:c.F]))
    assert class_of(h, bd).is_trivial()
    assert class_of(h, za + bd) == ca


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(["rp3", ("lens", 3), ("lens", 4), ("lens", 6)]),
       st.lists(st.integers(-4, 4), min_size=3, max_size=3),
       st.lists(st.integers(-3, 3), min_size=4, max_size=4))
def test_bounding_data_minimal(source, coeffs, sigma):
    c = _get(source)
    h = homology_h1(c)
    K = kernel_basis(c.boundary1)
    z = Cycle.primal(c, _random_cycle(K, coeffs))
    bd = bounding_data(h, z)
    assert c.boundary2.matvec(bd.chain) == tuple(bd.order * x for x in z.components)
    for q in range(1, bd.order):
        if bd.order % q == 0:
            assert any(class_of(h, z * q).torsion)


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(["rp3", ("lens", 3), ("lens", 5)]),
       st.lists(st.integers(-3, 3), min_size=9, max_size=9))
def test_linking_bilinear_and_representative_independent(source, co):
    c = _get(source)
    h = homology_h1(c)
    K1 = kernel_basis(c.boundary1)
    K2 = kernel_basis(c.boundary3.T)
    z1 = Cycle.primal(c, _random_cycle(K1, co[:3]))
    y = Cycle.dual(c, _random_cycle(K2, co[3:6]))
    y2 = Cycle.dual(c, _random_cycle(K2, co[6:9]))
    assert linking_number(h, z1, y + y2) == linking_number(h, z1, y) + linking_number(h, z1, y2)
    shifted = z1 + Cycle.primal(c, c.boundary2.matvec(co[:4]))
    assert (linking_number(h, shifted, y) - linking_number(h, z1, y)).denominator == 1
    L = linking_form(h)
    assert linking_pairing(h, z1, y) == L.pair(class_of(h, z1).torsion, class_of(h, y).torsion)


def test_profile_rejects_invalid():
    from dataclasses import replace
    from abelian_tv.intlinalg import IntMatrix
    c = builtin("s3")
    rows = c.boundary2.to_rows()
    rows[0][0] = 1
    with pytest.raises(ValueError):
        homology_h1(replace(c, boundary2=IntMatrix.from_rows(rows)))
