"""Prime, classical prime and maximal submodules of finite modules, and the
(classical) Hilbert property.

Two independent routes decide classical primality: the element-wise
definition (``is_classical_prime_def``) and the annihilator-chain criterion
(``is_classical_prime_chain``).  Prime submodules likewise have a definitional
and a spectrum-based test.  The module radical is computed from homomorphisms
onto the simple modules R/m; the lattice and J(R)M routes exist as oracles.
"""

from dataclasses import dataclass
from itertools import product

from ._lattice import mask_of
from .errors import NotProper
from .finmod import (
    SubmoduleF,
    all_submodules,
    colon_ideal,
    ideal_times_module,
    quotient_module,
    submodule_as_module,
)
from .rings import IdealF, is_prime_ideal, jacobson_radical, maximal_ideals, quotient_ring


def _require_proper(M, P):
    if P.parent is not M:
        raise ValueError("submodule belongs to a different module")
    if not P.is_proper:
        raise NotProper("classification needs a proper submodule of a nonzero module")


def _residue_rows(M, P):
    """For each m outside P, the bitmask {r : r*m in P}."""
    pmask = P.mask
    rows = {}
    for m in range(M.size):
        if (pmask >> m) & 1:
            continue
        row = 0
        for r, x in enumerate(_column(M, m)):
            if (pmask >> x) & 1:
                row |= 1 << r
        rows[m] = row
    return rows


def _column(M, m):
    """[r*m for r in R], cached per module."""
    cache = M.__dict__.setdefault("_column_cache", {})
    col = cache.get(m)
    if col is None:
        col = cache[m] = [M.smul(r, m) for r in range(M.ring.size)]
    return col


def ann_spectrum(M, P):
    """{(0 :_R m + P) : m not in P}, deduplicated and sorted."""
    _require_proper(M, P)
    R = M.ring
    masks = set(_residue_rows(M, P).values())
    out = [IdealF(R, m) for m in masks]
    out.sort(key=IdealF.sort_key)
    return out


def is_classical_prime_def(M, P):
    """abm in P implies am in P or bm in P, checked over all (a, b, m)."""
    _require_proper(M, P)
    R = M.ring
    n = R.size
    smul = M.smul
    for m in range(M.size):
        am = [smul(a, m) for a in range(n)]
        in_p = [x in P for x in am]
        for b in range(n):
            if in_p[b]:
                continue
            bm = am[b]
            for a in range(n):
                if not in_p[a] and smul(a, bm) in P:
                    return False
    return True


def _is_chain(ideals):
    for i, I in enumerate(ideals):
        for J in ideals[i + 1 :]:
            if not (I <= J or J <= I):
                return False
    return True


def is_classical_prime_chain(M, P):
    """Every annihilator of a nonzero element of M/P is prime, and they form a chain."""
    spectrum = ann_spectrum(M, P)
    R = M.ring
    return all(is_prime_ideal(R, I) for I in spectrum) and _is_chain(spectrum)


is_classical_prime = is_classical_prime_chain


def is_prime_sub(M, P):
    """(P : M) is prime and M/P has a single annihilator ideal."""
    spectrum = ann_spectrum(M, P)
    return len(spectrum) == 1 and is_prime_ideal(M.ring, colon_ideal(P, M))


def is_prime_sub_def(M, P):
    """am in P implies m in P or a in (P : M)."""
    _require_proper(M, P)
    colon = colon_ideal(P, M)
    smul = M.smul
    for m in range(M.size):
        if m in P:
            continue
        for a in range(M.ring.size):
            if a not in colon and smul(a, m) in P:
                return False
    return True


def is_maximal_sub(M, P):
    """No submodule strictly between P and M: P + Rm = M for every m outside P."""
    _require_proper(M, P)
    from .finmod import close_into

    full = (1 << M.size) - 1
    members = P.elements
    for m in range(M.size):
        if m in P:
            continue
        mask, _ = close_into(M, P.mask, members, m)
        if mask != full:
            return False
    return True


def _field_homs(M, field_ideal):
    """Kernels (as bitmasks) of all homomorphisms M -> R/m for a maximal ideal m."""
    R = M.ring
    K, proj = quotient_ring(R, field_ideal)
    k = M.rank
    kadd, kmul = K.add, K.mul
    rels = [[proj[a] for a in row] for row in M.relations]
    vecs = [[proj[a] for a in M.vector(i)] for i in range(M.size)]

    def value(vec, phi):
        s = 0
        for a, f in zip(vec, phi):
            if a and f:
                s = kadd(s, kmul(a, f))
        return s

    for phi in product(range(K.size), repeat=k):
        if not any(phi):
            continue
        if any(value(row, phi) for row in rels):
            continue
        yield mask_of(i for i, v in enumerate(vecs) if value(v, phi) == 0)


def maximal_submodules(M):
    """Kernels of the nonzero maps onto simple modules R/m, deduplicated."""
    cache = M.__dict__.setdefault("_maximal_cache", None)
    if cache is None:
        masks = set()
        for I in maximal_ideals(M.ring):
            masks.update(_field_homs(M, I))
        cache = sorted((SubmoduleF(M, m) for m in masks), key=SubmoduleF.sort_key)
        M.__dict__["_maximal_cache"] = cache
    return list(cache)


def radical_of_module(M):
    """Intersection of all maximal submodules (M itself when there are none)."""
    full = (1 << M.size) - 1
    mask = full
    for I in maximal_ideals(M.ring):
        for ker in _field_homs(M, I):
            mask &= ker
            if mask == 1:
                return SubmoduleF(M, 1)
    return SubmoduleF(M, mask)


def radical_via_lattice(M):
    """Oracle: intersect the coatoms of the full submodule lattice."""
    subs = all_submodules(M)
    full = (1 << M.size) - 1
    proper = [N for N in subs if N.mask != full]
    mask = full
    for N in proper:
        if not any(N < L for L in proper):
            mask &= N.mask
    return SubmoduleF(M, mask)


def radical_via_jacobson(M):
    """Oracle: J(R)M, which equals Rad(M) for finitely generated modules over finite rings."""
    return ideal_times_module(jacobson_radical(M.ring), M)


def is_intersection_of_maximals(M, P):
    """P is the meet of the maximal submodules of M that contain it."""
    _require_proper(M, P)
    mask = (1 << M.size) - 1
    for N in maximal_submodules(M):
        if P.mask & ~N.mask == 0:
            mask &= N.mask
            if mask == P.mask:
                return True
    return mask == P.mask


def is_intersection_of_maximals_via_quotient(M, P):
    """Oracle: Rad(M/P) = 0, computed on the quotient module."""
    _require_proper(M, P)
    return radical_of_module(quotient_module(M, P)).is_zero


def meet_of_maximals_above(M, P):
    """Lattice route: intersect every coatom of the lattice that contains P."""
    subs = all_submodules(M)
    full = (1 << M.size) - 1
    proper = [N for N in subs if N.mask != full]
    mask = full
    for N in proper:
        if P <= N and not any(N < L for L in proper):
            mask &= N.mask
    return SubmoduleF(M, mask)


def classical_primes(M):
    return [P for P in all_submodules(M) if P.is_proper and is_classical_prime_chain(M, P)]


def prime_submodules(M):
    return [P for P in all_submodules(M) if P.is_proper and is_prime_sub(M, P)]


def minimal_classical_primes(M):
    cps = classical_primes(M)
    return [P for P in cps if not any(Q < P for Q in cps)]


def cl_hilbert_witness(M):
    """First classical prime that is not an intersection of maximals, or None."""
    if M.is_zero:
        return None
    if "_cl_hilbert_witness" not in M.__dict__:
        found = None
        for P in classical_primes(M):
            if not is_intersection_of_maximals(M, P):
                found = P
                break
        M.__dict__["_cl_hilbert_witness"] = found
    return M.__dict__["_cl_hilbert_witness"]


def is_cl_hilbert(M):
    return cl_hilbert_witness(M) is None


def is_hilbert(M):
    if M.is_zero:
        return True
    return all(is_intersection_of_maximals(M, P) for P in prime_submodules(M))


def larger_primes_criterion(M):
    """Every non-maximal classical prime is the meet of the strictly larger ones."""
    cps = classical_primes(M)
    full = (1 << M.size) - 1
    for P in cps:
        if is_maximal_sub(M, P):
            continue
        mask = full
        for Q in cps:
            if P < Q:
                mask &= Q.mask
        if mask != P.mask:
            return False
    return True


def larger_primes_equivalence_holds(M):
    """Compute cl.Hilbert status and the larger-primes criterion separately; True iff they agree."""
    return is_cl_hilbert(M) == larger_primes_criterion(M)


def search_non_hilbert_submodules(M, limit=None):
    """Submodules N of M that fail to be cl.Hilbert as modules in their own right.

    This is an exploratory search; an empty result is not a proof of anything.
    """
    found = []
    for N in all_submodules(M):
        if N.is_zero:
            continue
        if not is_cl_hilbert(submodule_as_module(N)):
            found.append(N)
            if limit is not None and len(found) >= limit:
                break
    return found


@dataclass(frozen=True)
class Classification:
    is_proper: bool
    is_maximal: bool
    is_prime: bool
    is_classical_prime: bool
    is_intersection_of_maximals: bool
    ann_spectrum: tuple
    colon: IdealF

    def to_json(self):
        return {
            "proper": self.is_proper,
            "maximal": self.is_maximal,
            "prime": self.is_prime,
            "classicalPrime": self.is_classical_prime,
            "intersectionOfMaximals": self.is_intersection_of_maximals,
            "colon": self.colon.encode(),
            "annSpectrum": [I.encode() for I in self.ann_spectrum],
        }


def classify(M, P):
    _require_proper(M, P)
    return Classification(
        is_proper=True,
        is_maximal=is_maximal_sub(M, P),
        is_prime=is_prime_sub(M, P),
        is_classical_prime=is_classical_prime_chain(M, P),
        is_intersection_of_maximals=is_intersection_of_maximals(M, P),
        ann_spectrum=tuple(ann_spectrum(M, P)),
        colon=colon_ideal(P, M),
    )
