import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from modlattice import rings as Rg
from modlattice.errors import InvalidSpec, NotProper, ParseError, UnsupportedRing

SMALL = ["Z/2", "Z/4", "Z/6", "Z/8", "Z/2 x Z/2", "Z/2 x Z/3", "GF(2)[x]/[1,1,1]", "GF(2)[x]/[0,0,1]", "Z/3 x Z/3"]


def brute_ideals(R):
    """Every subset containing 0 closed under + and under multiplication by R."""
    n = R.size
    out = []
    for mask in range(1, 1 << n, 2):
        members = [i for i in range(n) if mask >> i & 1]
        ok = all((mask >> R.add(a, b)) & 1 for a in members for b in members)
        ok = ok and all((mask >> R.mul(r, a)) & 1 for r in range(n) for a in members)
        if ok:
            out.append(mask)
    return sorted(out)


def brute_is_prime(R, mask):
    if mask == (1 << R.size) - 1:
        return False
    inside = lambda x: (mask >> x) & 1
    return all(inside(a) or inside(b) for a in range(R.size) for b in range(R.size) if inside(R.mul(a, b)))


@pytest.mark.parametrize("spec", SMALL)
def test_ideals_match_subset_enumeration(spec):
    R = Rg.parse_ring(spec)
    assert sorted(I.mask for I in Rg.all_ideals(R)) == brute_ideals(R)


@pytest.mark.parametrize("spec", SMALL)
def test_prime_and_maximal_match_definitions(spec):
    R = Rg.parse_ring(spec)
    ideals = Rg.all_ideals(R)
    full = (1 << R.size) - 1
    for I in ideals:
        assert Rg.is_prime_ideal(R, I) == brute_is_prime(R, I.mask)
        between = [J for J in ideals if I.mask & J.mask == I.mask and I.mask != J.mask != full]
        assert Rg.is_maximal_ideal(R, I) == (I.mask != full and not between)
    # finite rings are zero-dimensional
    assert Rg.is_zero_dimensional(R)


def test_ideal_counts():
    assert len(Rg.all_ideals(Rg.parse_ring("Z/6"))) == 4
    assert len(Rg.all_ideals(Rg.parse_ring("Z/4"))) == 3
    assert len(Rg.all_ideals(Rg.parse_ring("GF(2)[x]/[1,1,1]"))) == 2


def test_prime_examples():
    Z6 = Rg.parse_ring("Z/6")
    assert Rg.is_prime_ideal(Z6, Rg.ideal_generated(Z6, [Z6.from_int(2)]))
    Z4 = Rg.parse_ring("Z/4")
    assert not Rg.is_prime_ideal(Z4, Rg.zero_ideal(Z4))
    assert Rg.parse_ring("Z/6").size == 6
    assert Rg.parse_ring("Z/4 x Z/9").size == 36


def test_field_detection():
    assert Rg.parse_ring("GF(2)[x]/[1,1,1]").is_field
    assert Rg.parse_ring("Z/5").is_field
    assert not Rg.parse_ring("Z/4").is_field
    assert not Rg.parse_ring("GF(2)[x]/[1,0,1]").is_field


def test_radicals():
    Z12 = Rg.parse_ring("Z/12")
    nil = Rg.nilradical(Z12)
    assert sorted(Z12.encode(i) for i in nil.elements) == [0, 6]
    assert Rg.jacobson_radical(Z12) == nil
    Z4 = Rg.parse_ring("Z/4")
    assert [Z4.encode(i) for i in Rg.nilradical(Z4).elements] == [0, 2]


@pytest.mark.parametrize("spec", SMALL)
def test_ring_axioms(spec):
    R = Rg.parse_ring(spec)
    for a, b, c in itertools.product(range(R.size), repeat=3):
        assert R.mul(a, R.add(b, c)) == R.add(R.mul(a, b), R.mul(a, c))
        assert R.mul(R.mul(a, b), c) == R.mul(a, R.mul(b, c))
    for a in range(R.size):
        assert R.mul(R.one, a) == a and R.add(a, R.neg(a)) == R.zero


@pytest.mark.parametrize("spec", SMALL)
def test_encode_decode_roundtrip(spec):
    R = Rg.parse_ring(spec)
    for i in range(R.size):
        assert R.decode(R.encode(i)) == i


@given(st.integers(2, 30), st.integers(2, 30))
@settings(max_examples=30, deadline=None)
def test_quotient_ring_size(n, d):
    R = Rg.parse_ring(f"Z/{n}")
    I = Rg.ideal_generated(R, [R.from_int(d)])
    if not I.is_proper:
        with pytest.raises(NotProper):
            Rg.quotient_ring(R, I)
        return
    Q, proj = Rg.quotient_ring(R, I)
    assert Q.size * I.size == R.size
    for a in range(R.size):
        for b in range(R.size):
            assert proj[R.mul(a, b)] == Q.mul(proj[a], proj[b])
            assert proj[R.add(a, b)] == Q.add(proj[a], proj[b])


def test_parse_errors():
    with pytest.raises(UnsupportedRing):
        Rg.parse_ring("Z/1")
    with pytest.raises(UnsupportedRing):
        Rg.parse_ring("Q")
    with pytest.raises(InvalidSpec):
        Rg.parse_ring("GF(4)[x]/[1,1]")
    with pytest.raises(ParseError):
        Rg.parse_ring("Z/6 x Z/2").decode([1])
    assert Rg.parse_ring("Z/6 x Z/2").encode(Rg.parse_ring("Z/6 x Z/2").decode(3)) == [3, 1]


def test_make_finite_ring_descriptors():
    R = Rg.make_finite_ring([("Z", 4), ("GF", 2, (1, 1, 1))])
    assert R.size == 16 and R.spec() == Rg.parse_ring(R.spec()).spec()
