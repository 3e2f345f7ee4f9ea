"""The submodule (p, x)*(p, x) of Z[x] + Z[x].

P = (p, x) is a maximal ideal of Z[x], and P(p, x) = {z*(p, x) : z in P} is a
classical prime submodule of Z[x]^2 that is neither prime nor an intersection
of maximal submodules.  This module checks the concrete arithmetic behind
those facts and runs a randomized search for counterexamples to classical
primality.  It is specialized to this one ideal on purpose.

Polynomials are tuples of ints in ascending degree with no trailing zeros.
"""

import random
from dataclasses import dataclass

from .domains import is_prime_int
from .errors import InvalidSpec


def trim(coeffs):
    c = list(coeffs)
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


def degree(f):
    return len(f) - 1 if f else -1


def add(f, g):
    n = max(len(f), len(g))
    return trim((f[i] if i < len(f) else 0) + (g[i] if i < len(g) else 0) for i in range(n))


def sub(f, g):
    return add(f, scale(g, -1))


def scale(f, c):
    return trim(c * a for a in f)


def mul(f, g):
    if not f or not g:
        return ()
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a:
            for j, b in enumerate(g):
                out[i + j] += a * b
    return trim(out)


def shift(f, k=1):
    """x^k * f."""
    return (0,) * k + tuple(f) if f else ()


def const(c):
    return trim((c,))


def to_str(f):
    if not f:
        return "0"
    terms = []
    for i, a in enumerate(f):
        if a == 0:
            continue
        mono = "" if i == 0 else "x" if i == 1 else f"x^{i}"
        if i == 0:
            terms.append(str(a))
        elif a == 1:
            terms.append(mono)
        elif a == -1:
            terms.append("-" + mono)
        else:
            terms.append(f"{a}*{mono}")
    return " + ".join(terms).replace("+ -", "- ")


def _check_prime(p):
    if not is_prime_int(p):
        raise InvalidSpec(f"{p} is not prime")


def in_ideal_px(f, p):
    """f is in (p, x) iff its constant term is divisible by p."""
    return (f[0] if f else 0) % p == 0


def in_ideal_p2x(f, p):
    """Membership in (p^2, x); used as a deliberately wrong stand-in for (p, x)."""
    return (f[0] if f else 0) % (p * p) == 0


def in_ppx_submodule(v, p, ideal_member=in_ideal_px):
    """(f, g) = z*(p, x) for some z in (p, x).

    Writing f = p*z forces p to divide every coefficient of f, and then g must
    equal x*z.  ``ideal_member`` decides z in (p, x) and can be swapped for a
    corrupted predicate in tests of the falsifier.
    """
    f, g = v
    if any(a % p for a in f):
        return False
    z = trim(a // p for a in f)
    if shift(z) != tuple(g):
        return False
    return ideal_member(z, p)


def vec_scale(r, v):
    return (mul(r, v[0]), mul(r, v[1]))


def generator(p):
    """The vector (p, x)."""
    return (const(p), (0, 1))


@dataclass(frozen=True)
class NotPrimeWitness:
    p: int
    r: tuple
    m: tuple
    rm_in_p: bool
    m_not_in_p: bool
    probe_not_in_p: bool

    @property
    def verified(self):
        return self.rm_in_p and self.m_not_in_p and self.probe_not_in_p

    def to_json(self):
        return {
            "p": self.p,
            "r": list(self.r),
            "m": [list(self.m[0]), list(self.m[1])],
            "rmInP": self.rm_in_p,
            "mNotInP": self.m_not_in_p,
            "probeNotInP": self.probe_not_in_p,
            "verified": self.verified,
        }


def not_prime_witness(p):
    """r = p, m = (p, x): rm lies in P(p, x), m does not, and r*(1, 0) does not,
    so r is outside (P(p, x) : Z[x]^2)."""
    _check_prime(p)
    r = const(p)
    m = generator(p)
    return NotPrimeWitness(
        p=p,
        r=r,
        m=m,
        rm_in_p=in_ppx_submodule(vec_scale(r, m), p),
        m_not_in_p=not in_ppx_submodule(m, p),
        probe_not_in_p=not in_ppx_submodule(vec_scale(r, ((1,), ())), p),
    )


@dataclass(frozen=True)
class RadicalObstruction:
    p: int
    in_ideal_times_module: bool
    not_in_submodule: bool

    @property
    def verified(self):
        return self.in_ideal_times_module and self.not_in_submodule

    def to_json(self):
        return {
            "p": self.p,
            "inIdealTimesModule": self.in_ideal_times_module,
            "notInSubmodule": self.not_in_submodule,
            "verified": self.verified,
        }


def radical_obstruction(p):
    """(p, x) = p*(1, 0) + x*(0, 1) lies in (p, x)*Z[x]^2 but not in P(p, x).

    The step from here to "P(p, x) is not an intersection of maximal
    submodules" quantifies over all maximal submodules and is not checked.
    """
    _check_prime(p)
    a, b = const(p), (0, 1)
    combo = (add(mul(a, (1,)), mul(b, ())), add(mul(a, ()), mul(b, (1,))))
    fact1 = combo == generator(p) and in_ideal_px(a, p) and in_ideal_px(b, p)
    return RadicalObstruction(p, fact1, not in_ppx_submodule(generator(p), p))


@dataclass(frozen=True)
class Counterexample:
    r: tuple
    s: tuple
    v: tuple
    sample: int

    def to_json(self):
        return {
            "kind": "Counterexample",
            "r": list(self.r),
            "s": list(self.s),
            "v": [list(self.v[0]), list(self.v[1])],
            "sample": self.sample,
        }


@dataclass(frozen=True)
class NoCounterexample:
    samples: int
    tested: int

    def to_json(self):
        return {"kind": "NoCounterexample", "samples": self.samples, "tested": self.tested}


def random_poly(rng, degree_bound, coeff_bound):
    return trim(rng.randint(-coeff_bound, coeff_bound) for _ in range(degree_bound + 1))


def random_nonzero_poly(rng, degree_bound, coeff_bound):
    while True:
        f = random_poly(rng, degree_bound, coeff_bound)
        if f:
            return f


def random_ideal_element(rng, p, degree_bound, coeff_bound):
    """p*u + x*w with u, w from the bounded box, total degree <= degree_bound."""
    while True:
        u = random_poly(rng, degree_bound, coeff_bound)
        w = random_poly(rng, max(degree_bound - 1, 0), coeff_bound)
        f = add(scale(u, p), shift(w))
        if f:
            return f


def _sample(rng, p, degree_bound, coeff_bound):
    """One triple (r, s, v).

    If r*s*v = z*(p, x) then v is a multiple w*(p, x) (the line through (p, x)
    is saturated), so samples are drawn as v = w*(p, x).  The strategy picks
    which of r, s, w is forced into (p, x); the last strategy is unconstrained
    and relies on the caller's membership filter.
    """
    kind = rng.randrange(4)
    box = (rng, degree_bound, coeff_bound)
    r = random_ideal_element(rng, p, degree_bound, coeff_bound) if kind == 0 else random_nonzero_poly(*box)
    s = random_ideal_element(rng, p, degree_bound, coeff_bound) if kind == 1 else random_nonzero_poly(*box)
    w = random_ideal_element(rng, p, degree_bound, coeff_bound) if kind == 2 else random_nonzero_poly(*box)
    return r, s, vec_scale(w, generator(p))


def classical_prime_falsify(p, sample_count, degree_bound, coeff_bound, seed, ideal_member=in_ideal_px):
    """Search for r, s, v with rsv in P(p, x) but rv and sv both outside it.

    Deterministic for a fixed seed.  Finding nothing is evidence, not proof.
    """
    _check_prime(p)
    if sample_count < 0 or degree_bound < 0 or coeff_bound < 1:
        raise InvalidSpec("bounds must be positive")
    rng = random.Random(seed)
    tested = 0
    for i in range(sample_count):
        r, s, v = _sample(rng, p, degree_bound, coeff_bound)
        if not in_ppx_submodule(vec_scale(mul(r, s), v), p, ideal_member):
            continue
        tested += 1
        if in_ppx_submodule(vec_scale(r, v), p, ideal_member):
            continue
        if in_ppx_submodule(vec_scale(s, v), p, ideal_member):
            continue
        return Counterexample(r, s, v, i)
    return NoCounterexample(sample_count, tested)


def witness_report(p, samples, seed, degree_bound=4, coeff_bound=9):
    """Everything the ``witness zx`` command prints."""
    npw = not_prime_witness(p)
    obs = radical_obstruction(p)
    fal = classical_prime_falsify(p, samples, degree_bound, coeff_bound, seed)
    return {
        "p": p,
        "seed": seed,
        "samples": samples,
        "degreeBound": degree_bound,
        "coeffBound": coeff_bound,
        "notPrime": npw.to_json(),
        "radicalObstruction": obs.to_json(),
        "falsifier": fal.to_json(),
    }
