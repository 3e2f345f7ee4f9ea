"""The three computable Euclidean domains: Z, GF(p)[x] and Z localized at p.

Each domain object is stateless apart from its parameter and exposes the same
small vocabulary (``divmod``, ``gcd``, ``normal``, ...) so the matrix code in
:mod:`modlattice.euclid` can stay generic.  Elements are plain Python values:
``int`` for Z, coefficient tuples for GF(p)[x], ``Fraction`` for Z_(p).
"""

import math
import re
from fractions import Fraction

from . import polygf
from .errors import DivisionByZero, InvalidSpec, ParseError, RequiresFactorization, UnsupportedRing

TRIAL_DIVISION_BOUND = 10**6


def is_prime_int(n):
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0 or n % 3 == 0:
        return False
    d = 5
    while d * d <= n:
        if n % d == 0 or n % (d + 2) == 0:
            return False
        d += 6
    return True


def factor_int(n, bound=TRIAL_DIVISION_BOUND):
    """Prime factorization of |n| by trial division; {prime: exponent}.

    Raises RequiresFactorization when a cofactor could hide a prime factor
    larger than ``bound``.
    """
    n = abs(n)
    if n == 0:
        raise ValueError("cannot factor 0")
    out = {}
    d = 2
    while d * d <= n:
        if d > bound:
            if n >= bound * bound:
                raise RequiresFactorization(f"cofactor {n} may have prime factors above {bound}")
            break
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def p_valuation(n, p):
    if n == 0:
        return math.inf
    k = 0
    while n % p == 0:
        n //= p
        k += 1
    return k


class EuclideanDomain:
    """Shared interface; subclasses fill in the arithmetic."""

    kind = None

    def __eq__(self, other):
        return type(self) is type(other) and self.key() == other.key()

    def __hash__(self):
        return hash((type(self).__name__, self.key()))

    def key(self):
        return ()

    def __repr__(self):
        return self.spec()

    # generic helpers built on the primitive ops

    def is_unit(self, a):
        return not self.is_zero(a) and self.normal(a) == self.one

    def divides(self, a, b):
        """True iff a | b."""
        if self.is_zero(a):
            return self.is_zero(b)
        return self.is_zero(self.divmod(b, a)[1])

    def exact_div(self, a, b):
        q, r = self.divmod(a, b)
        if not self.is_zero(r):
            raise ValueError(f"{self.format(b)} does not divide {self.format(a)}")
        return q

    def associates(self, a, b):
        return self.normal(a) == self.normal(b)

    def gcd(self, a, b):
        while not self.is_zero(b):
            a, b = b, self.divmod(a, b)[1]
        return self.normal(a)

    def xgcd(self, a, b):
        """(g, s, t) with s*a + t*b = g, g the normalized gcd."""
        r0, r1 = a, b
        s0, s1 = self.one, self.zero
        t0, t1 = self.zero, self.one
        while not self.is_zero(r1):
            q, r = self.divmod(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, self.sub(s0, self.mul(q, s1))
            t0, t1 = t1, self.sub(t0, self.mul(q, t1))
        if self.is_zero(r0):
            return self.zero, s0, t0
        u = self.unit_inverse(self.unit_part(r0))
        return self.mul(r0, u), self.mul(s0, u), self.mul(t0, u)

    def radical(self, a):
        out = self.one
        for q in self.prime_divisors(a):
            out = self.mul(out, q)
        return out

    def valuation(self, a, q):
        """Exponent of the prime q in a (a nonzero)."""
        k = 0
        while True:
            quo, r = self.divmod(a, q)
            if not self.is_zero(r):
                return k
            a = quo
            k += 1

    def pow(self, a, k):
        out = self.one
        for _ in range(k):
            out = self.mul(out, a)
        return out

    def divisors(self, a):
        """Normalized non-unit divisors of a nonzero a, sorted by size then value."""
        primes = self.prime_divisors(a)
        exps = [self.valuation(a, q) for q in primes]
        out = [self.one]
        for q, e in zip(primes, exps):
            out = [self.mul(d, self.pow(q, k)) for d in out for k in range(e + 1)]
        out = [self.normal(d) for d in out if not self.is_unit(d)]
        return sorted(set(out), key=self.sort_key)


class Integers(EuclideanDomain):
    kind = "Int"
    zero = 0
    one = 1

    def spec(self):
        return "Z"

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def is_zero(self, a):
        return a == 0

    def size(self, a):
        return abs(a)

    def divmod(self, a, b):
        if b == 0:
            raise DivisionByZero("integer division by zero")
        q, r = divmod(a, b)
        # least absolute remainder keeps pivots small
        if 2 * abs(r) > abs(b):
            r -= b
            q += 1
        return q, r

    def normal(self, a):
        return abs(a)

    def unit_part(self, a):
        return -1 if a < 0 else 1

    def unit_inverse(self, u):
        return u

    def gcd(self, a, b):
        return math.gcd(a, b)

    def prime_divisors(self, a):
        return sorted(factor_int(a))

    def is_prime(self, a):
        a = abs(a)
        if a < 2:
            return False
        if a < TRIAL_DIVISION_BOUND**2:
            return is_prime_int(a)
        return list(factor_int(a).items()) == [(a, 1)]

    def jacobson(self):
        return 0

    def sort_key(self, a):
        return (abs(a), a)

    def coerce(self, v):
        if isinstance(v, bool):
            raise ParseError(f"not an integer: {v!r}")
        if isinstance(v, int):
            return v
        if isinstance(v, str) and re.fullmatch(r"\s*[+-]?\d+\s*", v):
            return int(v)
        raise ParseError(f"not an integer: {v!r}")

    def to_json(self, a):
        return a if abs(a) < 2**53 else str(a)

    def format(self, a):
        return str(a)

    def random(self, rng, bound):
        return rng.randint(-bound, bound)


class PolyOverGF(EuclideanDomain):
    kind = "PolyOverGF"

    def __init__(self, p):
        if not is_prime_int(p):
            raise InvalidSpec(f"GF({p}): {p} is not prime")
        self.p = p
        self.zero = ()
        self.one = (1,)

    def key(self):
        return (self.p,)

    def spec(self):
        return f"GF({self.p})[x]"

    def add(self, a, b):
        return polygf.add(a, b, self.p)

    def sub(self, a, b):
        return polygf.sub(a, b, self.p)

    def neg(self, a):
        return polygf.neg(a, self.p)

    def mul(self, a, b):
        return polygf.mul(a, b, self.p)

    def is_zero(self, a):
        return not a

    def size(self, a):
        return len(a) - 1

    def divmod(self, a, b):
        return polygf.divmod_(a, b, self.p)

    def normal(self, a):
        return polygf.monic(a, self.p)

    def unit_part(self, a):
        return (a[-1],) if a else (1,)

    def unit_inverse(self, u):
        return (pow(u[0], -1, self.p),)

    def gcd(self, a, b):
        return polygf.gcd(a, b, self.p)

    def prime_divisors(self, a):
        return [g for g, _ in polygf.factor(a, self.p)]

    def is_prime(self, a):
        return polygf.is_irreducible(a, self.p)

    def radical(self, a):
        return polygf.radical(a, self.p)

    def jacobson(self):
        return ()

    def sort_key(self, a):
        return (len(a), tuple(reversed(a)))

    def coerce(self, v):
        if isinstance(v, (list, tuple)):
            return polygf.trim([self._int(c) for c in v], self.p)
        return polygf.trim([self._int(v)], self.p)

    @staticmethod
    def _int(c):
        if isinstance(c, bool):
            raise ParseError(f"bad coefficient {c!r}")
        if isinstance(c, int):
            return c
        if isinstance(c, str) and re.fullmatch(r"\s*[+-]?\d+\s*", c):
            return int(c)
        raise ParseError(f"bad coefficient {c!r}")

    def to_json(self, a):
        return list(a)

    def format(self, a):
        return polygf.to_str(a)

    def random(self, rng, bound):
        deg = rng.randint(-1, bound)
        return polygf.trim([rng.randrange(self.p) for _ in range(deg + 1)], self.p)


class LocalIntegers(EuclideanDomain):
    """Z localized at the prime p: fractions a/b with p not dividing b.

    The euclidean size is the p-adic valuation, so every nonzero element is a
    unit times a power of p and division with remainder is trivial.
    """

    kind = "IntLocAt"

    def __init__(self, p):
        if not is_prime_int(p):
            raise InvalidSpec(f"Zloc({p}): {p} is not prime")
        self.p = p
        self.zero = Fraction(0)
        self.one = Fraction(1)

    def key(self):
        return (self.p,)

    def spec(self):
        return f"Zloc({self.p})"

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def is_zero(self, a):
        return a == 0

    def size(self, a):
        return p_valuation(a.numerator, self.p)

    def divmod(self, a, b):
        if b == 0:
            raise DivisionByZero("division by zero in Z_(p)")
        if a == 0 or self.size(a) >= self.size(b):
            return a / b, self.zero
        return self.zero, a

    def normal(self, a):
        if a == 0:
            return self.zero
        return Fraction(self.p ** self.size(a))

    def unit_part(self, a):
        if a == 0:
            return self.one
        return a / self.p ** self.size(a)

    def unit_inverse(self, u):
        return 1 / u

    def gcd(self, a, b):
        if a == 0:
            return self.normal(b)
        if b == 0:
            return self.normal(a)
        return Fraction(self.p ** min(self.size(a), self.size(b)))

    def prime_divisors(self, a):
        return [] if self.size(a) == 0 else [Fraction(self.p)]

    def is_prime(self, a):
        return a != 0 and self.size(a) == 1

    def jacobson(self):
        return Fraction(self.p)

    def sort_key(self, a):
        return (self.size(a) if a != 0 else math.inf, a)

    def coerce(self, v):
        if isinstance(v, bool):
            raise ParseError(f"bad element {v!r}")
        if isinstance(v, int):
            out = Fraction(v)
        elif isinstance(v, Fraction):
            out = v
        elif isinstance(v, str) and re.fullmatch(r"\s*[+-]?\d+\s*(/\s*[+-]?\d+\s*)?", v):
            try:
                out = Fraction(v.replace(" ", ""))
            except ZeroDivisionError:
                raise ParseError(f"zero denominator in {v!r}") from None
        else:
            raise ParseError(f"bad element of {self.spec()}: {v!r}")
        if out.denominator % self.p == 0:
            raise ParseError(f"{v!r} is not in {self.spec()}: denominator divisible by {self.p}")
        return out

    def to_json(self, a):
        return str(a)

    def format(self, a):
        return str(a)

    def random(self, rng, bound):
        num = rng.randint(-bound, bound)
        den = rng.randint(1, bound)
        while den % self.p == 0:
            den = rng.randint(1, bound)
        return Fraction(num, den)


def parse_domain(text):
    """Parse ``Z``, ``GF(p)[x]`` or ``Zloc(p)``."""
    s = text.strip()
    if s in ("Z", "ZZ"):
        return Integers()
    m = re.fullmatch(r"GF\(\s*(\d+)\s*\)\s*\[\s*x\s*\]", s)
    if m:
        return PolyOverGF(int(m.group(1)))
    m = re.fullmatch(r"Zloc\(\s*(\d+)\s*\)", s)
    if m:
        return LocalIntegers(int(m.group(1)))
    raise UnsupportedRing(f"unsupported domain {text!r}")
