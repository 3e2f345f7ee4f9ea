"""Finite commutative rings built as products of Z/n and GF(p)[x]/(f).

Elements are addressed by integer indices.  Index order is the lexicographic
order on coordinate tuples, so sorting indices sorts elements canonically and
index 0 is always the zero element.
"""

import re
from dataclasses import dataclass, field
from functools import cached_property
from math import gcd, prod

from . import config, polygf
from ._lattice import bits, close, enumerate_subgroups, mask_of
from .domains import is_prime_int
from .errors import BoundExceeded, InvalidSpec, NotProper, ParseError, UnsupportedRing

TABLE_LIMIT = 512


@dataclass(frozen=True)
class CyclicInt:
    """The component Z/n."""

    n: int

    def __post_init__(self):
        if not isinstance(self.n, int) or self.n < 2:
            raise UnsupportedRing(f"Z/{self.n}: modulus must be an integer >= 2")

    @property
    def size(self):
        return self.n

    @property
    def zero(self):
        return 0

    @property
    def one(self):
        return 1

    def add(self, a, b):
        return (a + b) % self.n

    def neg(self, a):
        return (-a) % self.n

    def mul(self, a, b):
        return a * b % self.n

    def from_int(self, k):
        return k % self.n

    def local_index(self, c):
        return c

    def coord(self, i):
        return i

    def spec(self):
        return f"Z/{self.n}"

    def decode(self, v):
        if isinstance(v, bool) or not isinstance(v, int):
            raise ParseError(f"expected an integer coordinate for {self.spec()}, got {v!r}")
        return v % self.n

    def encode(self, c):
        return c


@dataclass(frozen=True)
class PolyQuot:
    """The component GF(p)[x]/(f); f is stored monic and need not be irreducible."""

    p: int
    f: tuple

    def __post_init__(self):
        if not isinstance(self.p, int) or not is_prime_int(self.p):
            raise InvalidSpec(f"GF({self.p}): characteristic must be prime")
        f = polygf.monic(polygf.trim(self.f, self.p), self.p)
        if len(f) < 2:
            raise InvalidSpec(f"GF({self.p})[x]/{list(self.f)}: modulus must have degree >= 1")
        object.__setattr__(self, "f", f)

    @property
    def degree(self):
        return len(self.f) - 1

    @property
    def size(self):
        return self.p ** self.degree

    @property
    def zero(self):
        return (0,) * self.degree

    @property
    def one(self):
        return (1,) + (0,) * (self.degree - 1)

    def _pad(self, g):
        return tuple(g) + (0,) * (self.degree - len(g))

    def add(self, a, b):
        return tuple((x + y) % self.p for x, y in zip(a, b))

    def neg(self, a):
        return tuple((-x) % self.p for x in a)

    def mul(self, a, b):
        prod_ = polygf.mul(polygf.trim(a, self.p), polygf.trim(b, self.p), self.p)
        return self._pad(polygf.mod(prod_, self.f, self.p))

    def from_int(self, k):
        return ((k % self.p),) + (0,) * (self.degree - 1)

    def reduce(self, g):
        return self._pad(polygf.mod(polygf.trim(g, self.p), self.f, self.p))

    def local_index(self, c):
        i = 0
        for a in c:
            i = i * self.p + a
        return i

    def coord(self, i):
        out = []
        for _ in range(self.degree):
            out.append(i % self.p)
            i //= self.p
        return tuple(reversed(out))

    def spec(self):
        return f"GF({self.p})[x]/[{','.join(str(a) for a in self.f)}]"

    def decode(self, v):
        if isinstance(v, bool):
            raise ParseError(f"bad coordinate {v!r}")
        if isinstance(v, int):
            v = [v]
        if not isinstance(v, (list, tuple)) or not all(isinstance(a, int) and not isinstance(a, bool) for a in v):
            raise ParseError(f"expected a coefficient array for {self.spec()}, got {v!r}")
        return self.reduce(v)

    def encode(self, c):
        return list(c)


class FiniteRing:
    """A finite product of CyclicInt / PolyQuot components."""

    def __init__(self, components):
        components = tuple(components)
        if not components:
            raise InvalidSpec("a ring needs at least one component")
        for c in components:
            if not isinstance(c, (CyclicInt, PolyQuot)):
                raise InvalidSpec(f"unknown component {c!r}")
        self.components = components
        self._sizes = tuple(c.size for c in components)
        self.size = prod(self._sizes)
        self.zero = 0
        self.one = self.index(tuple(c.one for c in components))

    def __eq__(self, other):
        return isinstance(other, FiniteRing) and self.components == other.components

    def __hash__(self):
        return hash(self.components)

    def __repr__(self):
        return f"FiniteRing({self.spec()!r})"

    def __len__(self):
        return self.size

    def spec(self):
        return " x ".join(c.spec() for c in self.components)

    @property
    def carrier_size(self):
        return self.size

    # index <-> coordinates

    def element(self, i):
        out = []
        for c, s in zip(reversed(self.components), reversed(self._sizes)):
            out.append(c.coord(i % s))
            i //= s
        return tuple(reversed(out))

    def index(self, coords):
        i = 0
        for c, s, a in zip(self.components, self._sizes, coords):
            i = i * s + c.local_index(a)
        return i

    @cached_property
    def elements(self):
        if self.size > config.max_cells():
            raise BoundExceeded(f"ring of size {self.size} exceeds cell ceiling")
        return [self.element(i) for i in range(self.size)]

    # arithmetic on indices

    @cached_property
    def _tables(self):
        if self.size > TABLE_LIMIT:
            return None
        els = self.elements
        comps = self.components
        add_t, mul_t = [], []
        for a in els:
            add_t.append([self.index(tuple(c.add(x, y) for c, x, y in zip(comps, a, b))) for b in els])
            mul_t.append([self.index(tuple(c.mul(x, y) for c, x, y in zip(comps, a, b))) for b in els])
        neg_t = [self.index(tuple(c.neg(x) for c, x in zip(comps, a))) for a in els]
        return add_t, mul_t, neg_t

    @property
    def add_table(self):
        t = self._tables
        return None if t is None else t[0]

    @property
    def mul_table(self):
        t = self._tables
        return None if t is None else t[1]

    def add(self, i, j):
        t = self._tables
        if t is not None:
            return t[0][i][j]
        a, b = self.element(i), self.element(j)
        return self.index(tuple(c.add(x, y) for c, x, y in zip(self.components, a, b)))

    def mul(self, i, j):
        t = self._tables
        if t is not None:
            return t[1][i][j]
        a, b = self.element(i), self.element(j)
        return self.index(tuple(c.mul(x, y) for c, x, y in zip(self.components, a, b)))

    def neg(self, i):
        t = self._tables
        if t is not None:
            return t[2][i]
        return self.index(tuple(c.neg(x) for c, x in zip(self.components, self.element(i))))

    def sub(self, i, j):
        return self.add(i, self.neg(j))

    def from_int(self, k):
        return self.index(tuple(c.from_int(k) for c in self.components))

    @cached_property
    def units(self):
        return [a for a in range(self.size) if any(self.mul(a, b) == self.one for b in range(self.size))]

    @cached_property
    def is_field(self):
        return len(self.units) == self.size - 1

    # element serialization

    def decode(self, v):
        """Ring element from JSON: an int n means n*1, else coordinates."""
        if isinstance(v, bool):
            raise ParseError(f"bad ring element {v!r}")
        if isinstance(v, int):
            return self.from_int(v)
        comps = self.components
        if len(comps) == 1:
            c = comps[0]
            if isinstance(c, PolyQuot) and isinstance(v, (list, tuple)) and all(isinstance(a, int) for a in v):
                return self.index((c.decode(v),))
            if isinstance(v, (list, tuple)) and len(v) == 1:
                return self.index((c.decode(v[0]),))
            raise ParseError(f"bad element {v!r} for {self.spec()}")
        if not isinstance(v, (list, tuple)) or len(v) != len(comps):
            raise ParseError(f"element of {self.spec()} needs {len(comps)} coordinates, got {v!r}")
        return self.index(tuple(c.decode(a) for c, a in zip(comps, v)))

    def encode(self, i):
        coords = self.element(i)
        if len(self.components) == 1:
            return self.components[0].encode(coords[0])
        return [c.encode(a) for c, a in zip(self.components, coords)]


def make_finite_ring(spec):
    """Build a FiniteRing from a spec string or a list of component descriptors.

    Descriptors may be CyclicInt / PolyQuot instances, ``("Z", n)`` or
    ``("GF", p, f)`` tuples.

    >>> make_finite_ring("Z/4 x Z/9").size
    36
    """
    if isinstance(spec, FiniteRing):
        return spec
    if isinstance(spec, str):
        return parse_ring(spec)
    comps = []
    for d in spec:
        if isinstance(d, (CyclicInt, PolyQuot)):
            comps.append(d)
        elif isinstance(d, (tuple, list)) and d and d[0] == "Z":
            comps.append(CyclicInt(d[1]))
        elif isinstance(d, (tuple, list)) and d and d[0] == "GF":
            comps.append(PolyQuot(d[1], tuple(d[2])))
        else:
            raise InvalidSpec(f"bad component descriptor {d!r}")
    return FiniteRing(comps)


_CYCLIC = re.compile(r"Z\s*/\s*(-?\d+)")
_POLYQ = re.compile(r"GF\(\s*(\d+)\s*\)\s*\[\s*x\s*\]\s*/\s*\[([^\]]*)\]")


def parse_ring(text):
    parts = re.split(r"\s+x\s+", text.strip())
    comps = []
    for part in parts:
        part = part.strip()
        m = _CYCLIC.fullmatch(part)
        if m:
            comps.append(CyclicInt(int(m.group(1))))
            continue
        m = _POLYQ.fullmatch(part)
        if m:
            try:
                coeffs = tuple(int(a) for a in m.group(2).split(",") if a.strip())
            except ValueError:
                raise InvalidSpec(f"bad coefficient list in {part!r}") from None
            comps.append(PolyQuot(int(m.group(1)), coeffs))
            continue
        raise UnsupportedRing(f"unsupported ring component {part!r}")
    return FiniteRing(comps)


@dataclass(frozen=True, eq=False)
class IdealF:
    """An ideal of a finite ring, stored as a bitmask over element indices."""

    ring: FiniteRing
    mask: int
    generators: tuple = field(default=())

    def __eq__(self, other):
        return isinstance(other, IdealF) and self.ring == other.ring and self.mask == other.mask

    def __hash__(self):
        return hash((self.ring, self.mask))

    def __le__(self, other):
        return self.mask & ~other.mask == 0

    def __lt__(self, other):
        return self <= other and self.mask != other.mask

    def __contains__(self, i):
        return bool((self.mask >> i) & 1)

    def __repr__(self):
        return f"IdealF({self.ring.spec()}, {[self.ring.encode(i) for i in self.elements]})"

    @cached_property
    def elements(self):
        return bits(self.mask)

    @property
    def size(self):
        return len(self.elements)

    @property
    def is_proper(self):
        return self.size < self.ring.size

    def sort_key(self):
        return (self.size, self.elements)

    def encode(self):
        return [self.ring.encode(i) for i in self.elements]


def _principal(R, a):
    return sorted({R.mul(r, a) for r in range(R.size)})


def _translate(R):
    t = R.add_table
    if t is not None:
        return lambda x, members: [t[x][s] for s in members]
    return lambda x, members: [R.add(x, s) for s in members]


def ideal_from_mask(R, mask, generators=()):
    return IdealF(R, mask, tuple(generators))


def ideal_generated(R, generators):
    gens = [g if isinstance(g, int) else R.index(g) for g in generators]
    mask, _ = close(gens, lambda a: _principal(R, a), _translate(R))
    return IdealF(R, mask, tuple(gens))


def zero_ideal(R):
    return IdealF(R, 1, ())


def unit_ideal(R):
    return IdealF(R, (1 << R.size) - 1, (R.one,))


def all_ideals(R, max_size=config.MAX_RING_FOR_IDEALS, max_count=config.MAX_IDEALS):
    """Every ideal of R once, sorted by (size, element list)."""
    if R.size > max_size:
        raise BoundExceeded(f"ring of size {R.size} exceeds ideal enumeration bound {max_size}")
    cache = R.__dict__.setdefault("_ideal_cache", {})
    key = (max_size, max_count)
    if key not in cache:
        principal = {}

        def cyclic(a):
            if a not in principal:
                principal[a] = _principal(R, a)
            return principal[a]

        seen = enumerate_subgroups(R.size, cyclic, _translate(R), max_count)
        ideals = [IdealF(R, m) for m in seen]
        ideals.sort(key=IdealF.sort_key)
        cache[key] = ideals
    return list(cache[key])


def _memo(R, name, mask, compute):
    cache = R.__dict__.setdefault(name, {})
    if mask not in cache:
        cache[mask] = compute()
    return cache[mask]


def is_prime_ideal(R, I):
    return _memo(R, "_prime_cache", I.mask, lambda: _is_prime_ideal(R, I))


def _is_prime_ideal(R, I):
    if not I.is_proper:
        return False
    outside = [a for a in range(R.size) if a not in I]
    mul = R.mul
    for a in outside:
        for b in outside:
            if mul(a, b) in I:
                return False
    return True


def is_maximal_ideal(R, I):
    """No proper ideal strictly contains I."""
    return _memo(R, "_maximal_cache", I.mask, lambda: _is_maximal_ideal(R, I))


def _is_maximal_ideal(R, I):
    if not I.is_proper:
        return False
    full = (1 << R.size) - 1
    for a in range(R.size):
        if a in I:
            continue
        if ideal_generated(R, list(I.elements) + [a]).mask != full:
            return False
    return True


def prime_ideals(R):
    return [I for I in all_ideals(R) if is_prime_ideal(R, I)]


def maximal_ideals(R):
    return [I for I in all_ideals(R) if is_maximal_ideal(R, I)]


def minimal_prime_ideals(R):
    primes = prime_ideals(R)
    return [P for P in primes if not any(Q < P for Q in primes)]


def intersection(R, ideals):
    mask = (1 << R.size) - 1
    for I in ideals:
        mask &= I.mask
    return IdealF(R, mask)


def nilradical(R):
    return intersection(R, prime_ideals(R))


def jacobson_radical(R):
    return intersection(R, maximal_ideals(R))


def is_zero_dimensional(R):
    return all(is_maximal_ideal(R, P) for P in prime_ideals(R))


def is_hilbert_ring(R):
    # Finite rings are zero-dimensional, so every prime is maximal.
    return True


def quotient_ring(R, I):
    """R/I as a product ring, plus the surjection as an index list.

    An ideal of a product is the product of its projections, and every ideal
    of Z/n or GF(p)[x]/(f) is principal, so R/I is again a product of Z/d and
    GF(p)[x]/(g) components (components with d = 1 or g = 1 vanish).
    """
    if not I.is_proper:
        raise NotProper("quotient by the unit ideal")
    coords = [R.element(i) for i in I.elements]
    new_comps, reducers = [], []
    for k, c in enumerate(R.components):
        if isinstance(c, CyclicInt):
            d = c.n
            for e in coords:
                d = gcd(d, e[k])
            if d > 1:
                new_comps.append(CyclicInt(d))
                reducers.append((k, lambda a, d=d: a % d))
        else:
            g = c.f
            for e in coords:
                g = polygf.gcd(g, polygf.trim(e[k], c.p), c.p)
            if len(g) > 1:
                comp = PolyQuot(c.p, g)
                new_comps.append(comp)
                reducers.append((k, comp.reduce))
    Q = FiniteRing(new_comps)
    proj = []
    for i in range(R.size):
        e = R.element(i)
        proj.append(Q.index(tuple(red(e[k]) for k, red in reducers)))
    if Q.size * I.size != R.size:
        raise AssertionError("quotient size mismatch")
    return Q, proj


def ideal_mask(R, indices):
    return mask_of(indices)
