"""Dense polynomial arithmetic over GF(p).

A polynomial a_0 + a_1 x + ... + a_n x^n is the tuple (a_0, ..., a_n) with
entries in range(p) and a_n != 0; the zero polynomial is ().
"""

from sympy.polys.domains import ZZ
from sympy.polys.galoistools import gf_factor

from .errors import DivisionByZero, RequiresFactorization

MAX_FACTOR_DEGREE = 64


def trim(coeffs, p):
    c = [int(a) % p for a in coeffs]
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


def degree(f):
    return len(f) - 1


def add(f, g, p):
    if len(f) < len(g):
        f, g = g, f
    out = list(f)
    for i, b in enumerate(g):
        out[i] = (out[i] + b) % p
    return trim(out, p)


def neg(f, p):
    return tuple((-a) % p for a in f)


def sub(f, g, p):
    return add(f, neg(g, p), p)


def scale(f, c, p):
    c %= p
    if c == 0:
        return ()
    return tuple(a * c % p for a in f)


def mul(f, g, p):
    if not f or not g:
        return ()
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a:
            for j, b in enumerate(g):
                out[i + j] += a * b
    return trim(out, p)


def shift(f, k):
    """Multiply by x^k."""
    if not f:
        return ()
    return (0,) * k + tuple(f)


def divmod_(f, g, p):
    if not g:
        raise DivisionByZero("polynomial division by zero")
    inv = pow(g[-1], -1, p)
    r = list(f)
    dg = len(g) - 1
    if len(r) <= dg:
        return (), tuple(f)
    q = [0] * (len(r) - dg)
    for k in range(len(r) - 1, dg - 1, -1):
        c = r[k] * inv % p
        if c:
            q[k - dg] = c
            for j, b in enumerate(g):
                r[k - dg + j] = (r[k - dg + j] - c * b) % p
    return trim(q, p), trim(r[:dg], p)


def mod(f, g, p):
    return divmod_(f, g, p)[1]


def monic(f, p):
    if not f:
        return ()
    return scale(f, pow(f[-1], -1, p), p)


def gcd(f, g, p):
    while g:
        f, g = g, mod(f, g, p)
    return monic(f, p)


def xgcd(f, g, p):
    """Return (d, s, t) with s*f + t*g = d and d monic (or zero)."""
    r0, r1 = f, g
    s0, s1 = (1,), ()
    t0, t1 = (), (1,)
    while r1:
        q, r = divmod_(r0, r1, p)
        r0, r1 = r1, r
        s0, s1 = s1, sub(s0, mul(q, s1, p), p)
        t0, t1 = t1, sub(t0, mul(q, t1, p), p)
    if not r0:
        return (), s0, t0
    inv = pow(r0[-1], -1, p)
    return scale(r0, inv, p), scale(s0, inv, p), scale(t0, inv, p)


def factor(f, p):
    """Monic irreducible factors with multiplicities, sorted by (degree, coeffs)."""
    if len(f) - 1 > MAX_FACTOR_DEGREE:
        raise RequiresFactorization(f"degree {len(f) - 1} exceeds factoring bound {MAX_FACTOR_DEGREE}")
    if len(f) <= 1:
        return []
    _, facs = gf_factor([int(a) for a in reversed(f)], p, ZZ)
    out = [(trim(reversed([int(a) for a in g]), p), int(k)) for g, k in facs]
    out.sort(key=lambda gk: (len(gk[0]), gk[0]))
    return out


def is_irreducible(f, p):
    if len(f) < 2:
        return False
    facs = factor(f, p)
    return len(facs) == 1 and facs[0][1] == 1


def radical(f, p):
    """Product of the distinct monic irreducible factors of f (f != 0)."""
    out = (1,)
    for g, _ in factor(f, p):
        out = mul(out, g, p)
    return out


def iter_polys(p, max_degree, monic_only=False):
    """All polynomials of degree <= max_degree (zero included unless monic_only)."""
    if not monic_only:
        yield ()
    for d in range(0, max_degree + 1):
        n = p ** d
        for k in range(n):
            low = []
            for _ in range(d):
                low.append(k % p)
                k //= p
            leads = (1,) if monic_only else range(1, p)
            for lead in leads:
                yield tuple(low) + (lead,)


def to_str(f, var="x"):
    if not f:
        return "0"
    terms = []
    for i in range(len(f) - 1, -1, -1):
        a = f[i]
        if not a:
            continue
        if i == 0:
            terms.append(str(a))
        else:
            mono = var if i == 1 else f"{var}^{i}"
            terms.append(mono if a == 1 else f"{a}*{mono}")
    return " + ".join(terms)
