import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from modlattice import polygf as G
from modlattice.errors import DivisionByZero, RequiresFactorization

PRIMES = [2, 3, 5, 7]


@st.composite
def poly_and_p(draw, max_degree=6):
    p = draw(st.sampled_from(PRIMES))
    coeffs = draw(st.lists(st.integers(0, p - 1), max_size=max_degree + 1))
    return G.trim(coeffs, p), p


def _brute_irreducible(f, p):
    """No monic factor of degree 1..deg/2 divides f."""
    d = G.degree(f)
    if d < 1:
        return False
    for g in G.iter_polys(p, d // 2, monic_only=True):
        if 1 <= G.degree(g) <= d // 2 and not G.mod(f, g, p):
            return False
    return True


@pytest.mark.parametrize("p,max_degree", [(2, 6), (3, 4), (5, 3)])
def test_irreducibility_matches_trial_division(p, max_degree):
    for f in G.iter_polys(p, max_degree, monic_only=True):
        assert G.is_irreducible(f, p) == _brute_irreducible(f, p), f


def test_irreducible_counts_over_gf2():
    # number of monic irreducibles of degree 1..5 over GF(2)
    counts = [sum(1 for f in G.iter_polys(2, d, monic_only=True) if G.degree(f) == d and G.is_irreducible(f, 2)) for d in range(1, 6)]
    assert counts == [2, 1, 2, 3, 6]


def test_iter_polys_counts():
    assert len(list(G.iter_polys(3, 2))) == 27
    assert len(list(G.iter_polys(3, 2, monic_only=True))) == 1 + 3 + 9


def test_trim_and_degree():
    assert G.trim([1, 0, 2, 0, 0], 2) == (1,)
    assert G.trim([0, 0], 5) == ()
    assert G.degree(()) == -1
    assert G.degree((0, 1)) == 1


@given(poly_and_p(), poly_and_p())
def test_divmod_identity(fp, gp):
    f, p = fp
    g = G.trim(gp[0], p)
    if not g:
        with pytest.raises(DivisionByZero):
            G.divmod_(f, g, p)
        return
    q, r = G.divmod_(f, g, p)
    assert G.add(G.mul(q, g, p), r, p) == f
    assert G.degree(r) < G.degree(g)


@given(poly_and_p(), poly_and_p())
def test_xgcd_bezout_and_divides(fp, gp):
    f, p = fp
    g = G.trim(gp[0], p)
    d, s, t = G.xgcd(f, g, p)
    assert G.add(G.mul(s, f, p), G.mul(t, g, p), p) == d
    assert d == G.gcd(f, g, p)
    if d:
        assert d[-1] == 1
        assert not G.mod(f, d, p) and not G.mod(g, d, p)
    else:
        assert not f and not g


@given(poly_and_p(max_degree=5))
@settings(max_examples=60)
def test_factor_multiplies_back(fp):
    f, p = fp
    if not f:
        return
    prod = (f[-1],)
    for g, k in G.factor(f, p):
        assert g[-1] == 1 and G.is_irreducible(g, p)
        for _ in range(k):
            prod = G.mul(prod, g, p)
    assert prod == f


@given(poly_and_p(max_degree=5))
@settings(max_examples=60)
def test_radical_is_squarefree_and_divides(fp):
    f, p = fp
    if not f:
        return
    r = G.radical(f, p)
    assert not G.mod(f, r, p)
    assert all(k == 1 for _, k in G.factor(r, p))


def test_ring_axioms_exhaustive_small():
    p = 2
    polys = list(G.iter_polys(p, 2))
    for a, b, c in itertools.product(polys, repeat=3):
        assert G.mul(a, G.add(b, c, p), p) == G.add(G.mul(a, b, p), G.mul(a, c, p), p)
        assert G.mul(G.mul(a, b, p), c, p) == G.mul(a, G.mul(b, c, p), p)
    for a in polys:
        assert G.add(a, G.neg(a, p), p) == ()


def test_factor_degree_bound():
    f = (1,) + (0,) * (G.MAX_FACTOR_DEGREE) + (1,)
    with pytest.raises(RequiresFactorization):
        G.factor(f, 2)


def test_to_str():
    assert G.to_str(()) == "0"
    assert G.to_str((1, 1, 0, 1)) == "x^3 + x + 1"
