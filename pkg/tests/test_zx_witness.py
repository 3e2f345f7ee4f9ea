import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from modlattice import zx_witness as Z
from modlattice.errors import InvalidSpec

polys = st.lists(st.integers(-9, 9), max_size=5).map(Z.trim)


def box(degree, bound):
    for coeffs in itertools.product(range(-bound, bound + 1), repeat=degree + 1):
        yield Z.trim(coeffs)


def ideal_elements(p, bound=5):
    """Every p*u + x*w with u constant in [-3, 3] and deg w <= 2, |w_i| <= bound.

    For f of degree <= 3 with coefficients in [-bound, bound] any cofactor
    pair can be chosen inside this box, so the set decides membership there.
    """
    out = set()
    for u in range(-3, 4):
        for w in box(2, bound):
            out.add(Z.add(Z.const(p * u), Z.shift(w)))
    return out


@pytest.mark.parametrize("p", [2, 3, 5])
def test_ideal_membership_matches_cofactor_search(p):
    members = ideal_elements(p)
    for f in box(3, 5):
        assert Z.in_ideal_px(f, p) == (f in members)


def brute_in_ppx(v, p, zbound=4, zdeg=3):
    """Search z in (p, x) with z*(p, x) == v over a box of candidates."""
    for z in box(zdeg, zbound):
        if Z.in_ideal_px(z, p) and Z.vec_scale(z, Z.generator(p)) == (tuple(v[0]), tuple(v[1])):
            return True
    return False


@pytest.mark.parametrize("p", [2, 3])
def test_submodule_membership_matches_search(p):
    rng = random.Random(p)
    for _ in range(150):
        z = Z.random_poly(rng, 3, 4) if rng.random() < 0.5 else Z.trim(rng.randint(-2, 2) for _ in range(2))
        v = Z.vec_scale(z, Z.generator(p))
        if rng.random() < 0.3:
            v = (Z.add(v[0], Z.const(p)), v[1])
        assert Z.in_ppx_submodule(v, p) == brute_in_ppx(v, p)


def test_membership_examples():
    p = 3
    assert Z.in_ideal_px(Z.const(p), p)
    assert Z.in_ideal_px((7 * p, 0, 1), p)
    assert not Z.in_ideal_px((1,), p)
    assert Z.in_ppx_submodule((Z.const(p * p), (0, p)), p)
    assert not Z.in_ppx_submodule(Z.generator(p), p)
    assert Z.in_ppx_submodule(((0, p), (0, 0, 1)), p)


@given(st.sampled_from([2, 3, 5, 7]), st.integers(0, 10**6))
@settings(max_examples=100)
def test_roundtrip_and_weak_form(p, seed):
    rng = random.Random(seed)
    z = Z.random_ideal_element(rng, p, 4, 9)
    v = Z.vec_scale(z, Z.generator(p))
    assert Z.in_ppx_submodule(v, p)
    assert Z.in_ideal_px(v[0], p) and Z.in_ideal_px(v[1], p)


@given(st.sampled_from([2, 3, 5]), polys, polys)
def test_membership_implies_components_in_ideal(p, f, g):
    if Z.in_ppx_submodule((f, g), p):
        assert Z.in_ideal_px(f, p) and Z.in_ideal_px(g, p)


@given(polys, polys, polys)
def test_polynomial_ring_laws(a, b, c):
    assert Z.mul(a, Z.add(b, c)) == Z.add(Z.mul(a, b), Z.mul(a, c))
    assert Z.mul(a, b) == Z.mul(b, a)
    assert Z.sub(a, a) == ()
    assert Z.shift(a, 2) == Z.mul((0, 0, 1), a)


@pytest.mark.parametrize("p", [2, 3, 5, 7])
def test_witnesses_verified(p):
    w = Z.not_prime_witness(p)
    assert w.verified and w.r == (p,) and w.m == Z.generator(p)
    assert Z.in_ppx_submodule(Z.vec_scale(w.r, ((), ())), p)
    obs = Z.radical_obstruction(p)
    assert obs.verified
    assert obs.not_in_submodule == (not Z.in_ppx_submodule(Z.generator(p), p))


def test_bad_inputs():
    with pytest.raises(InvalidSpec):
        Z.not_prime_witness(4)
    with pytest.raises(InvalidSpec):
        Z.classical_prime_falsify(2, 10, 4, 0, seed=1)


def test_falsifier_is_deterministic():
    a = Z.classical_prime_falsify(3, 2000, 4, 9, seed=17)
    b = Z.classical_prime_falsify(3, 2000, 4, 9, seed=17)
    assert a == b and isinstance(a, Z.NoCounterexample)
    assert a.tested > 0


@pytest.mark.parametrize("p", [2, 3, 5])
def test_mutation_is_caught(p):
    found = Z.classical_prime_falsify(p, 1000, 4, 9, seed=0, ideal_member=Z.in_ideal_p2x)
    assert isinstance(found, Z.Counterexample)
    rsv = Z.vec_scale(Z.mul(found.r, found.s), found.v)
    assert Z.in_ppx_submodule(rsv, p, Z.in_ideal_p2x)
    assert not Z.in_ppx_submodule(Z.vec_scale(found.r, found.v), p, Z.in_ideal_p2x)


def test_report_shape():
    rep = Z.witness_report(2, 200, seed=1)
    assert rep["notPrime"]["verified"] and rep["radicalObstruction"]["verified"]
    assert rep["falsifier"]["kind"] == "NoCounterexample"
    assert rep == Z.witness_report(2, 200, seed=1)


def test_to_str():
    assert Z.to_str(()) == "0"
    assert Z.to_str((2, -1, 0, 3)) == "2 - x + 3*x^3"
