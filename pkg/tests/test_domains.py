import math
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from modlattice.domains import (
    Integers,
    LocalIntegers,
    PolyOverGF,
    factor_int,
    is_prime_int,
    p_valuation,
    parse_domain,
)
from modlattice.errors import DivisionByZero, InvalidSpec, ParseError, UnsupportedRing

Z = Integers()
F2 = PolyOverGF(2)
F5 = PolyOverGF(5)
L3 = LocalIntegers(3)


def local_elements(p):
    nums = st.integers(-60, 60)
    dens = st.integers(1, 60).filter(lambda d: d % p)
    return st.builds(Fraction, nums, dens)


def gf_elements(D, max_degree=5):
    return st.lists(st.integers(0, D.p - 1), max_size=max_degree + 1).map(D.coerce)


DOMAINS = [
    (Z, st.integers(-10**6, 10**6)),
    (F2, gf_elements(F2)),
    (F5, gf_elements(F5)),
    (L3, local_elements(3)),
    (LocalIntegers(2), local_elements(2)),
]


def test_gcd_examples():
    assert Z.gcd(12, -18) == 6
    assert F2.gcd((1, 0, 1), (1, 1)) == (1, 1)
    assert L3.normal(Fraction(6, 5)) == 3


def test_is_prime_int_matches_trial_division():
    for n in range(-5, 2000):
        brute = n >= 2 and all(n % d for d in range(2, n))
        assert is_prime_int(n) == brute


@given(st.integers(1, 10**7))
def test_factor_int_roundtrip(n):
    f = factor_int(n)
    assert math.prod(q**e for q, e in f.items()) == n
    assert all(is_prime_int(q) for q in f)


def test_p_valuation():
    assert p_valuation(48, 2) == 4
    assert p_valuation(0, 3) == math.inf


@pytest.mark.parametrize("D,elems", DOMAINS, ids=lambda x: getattr(x, "spec", lambda: "")())
@given(data=st.data())
def test_divmod_is_euclidean(D, elems, data):
    a = data.draw(elems)
    b = data.draw(elems)
    if D.is_zero(b):
        with pytest.raises(DivisionByZero):
            D.divmod(a, b)
        return
    q, r = D.divmod(a, b)
    assert D.add(D.mul(q, b), r) == a
    assert D.is_zero(r) or D.size(r) < D.size(b)


@pytest.mark.parametrize("D,elems", DOMAINS, ids=lambda x: getattr(x, "spec", lambda: "")())
@given(data=st.data())
def test_xgcd_and_normal(D, elems, data):
    a = data.draw(elems)
    b = data.draw(elems)
    g, s, t = D.xgcd(a, b)
    assert D.add(D.mul(s, a), D.mul(t, b)) == g
    assert g == D.gcd(a, b)
    assert D.normal(g) == g
    if not D.is_zero(g):
        assert D.divides(g, a) and D.divides(g, b)
    if not D.is_zero(a):
        assert D.mul(D.unit_part(a), D.normal(a)) == a
        assert D.is_unit(D.unit_part(a))


@pytest.mark.parametrize("D,elems", DOMAINS, ids=lambda x: getattr(x, "spec", lambda: "")())
@given(data=st.data())
def test_divisors_divide(D, elems, data):
    a = data.draw(elems)
    if D.is_zero(a):
        return
    for d in D.divisors(a):
        assert D.divides(d, a) and not D.is_unit(d)
    for q in D.prime_divisors(a):
        assert D.is_prime(q)


def test_local_ring_structure():
    assert L3.is_unit(Fraction(2, 5))
    assert not L3.is_unit(Fraction(3, 5))
    assert L3.prime_divisors(Fraction(18)) == [3]
    assert L3.divisors(Fraction(18)) == [3, 9]
    assert L3.jacobson() == 3
    with pytest.raises(ParseError):
        L3.coerce("1/3")
    assert L3.coerce("4/5") == Fraction(4, 5)


def test_poly_coerce_and_format():
    assert F5.coerce([6, 0, 5]) == (1,)
    assert F5.format((1, 0, 2)) == "2*x^2 + 1"
    assert F2.is_prime((1, 1, 1))
    assert not F2.is_prime((1, 0, 1))


def test_parse_domain():
    assert parse_domain("Z") == Z
    assert parse_domain("GF(5)[x]") == F5
    assert parse_domain(" Zloc(3) ") == L3
    with pytest.raises(UnsupportedRing):
        parse_domain("Q")
    with pytest.raises(InvalidSpec):
        parse_domain("Zloc(4)")
    with pytest.raises(InvalidSpec):
        parse_domain("GF(6)[x]")


def test_domain_equality_and_hash():
    assert PolyOverGF(2) == F2 and hash(PolyOverGF(2)) == hash(F2)
    assert F2 != F5
    assert LocalIntegers(3) != PolyOverGF(3)
