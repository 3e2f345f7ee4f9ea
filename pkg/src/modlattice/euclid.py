"""Finitely generated modules over Z, GF(p)[x] and Z_(p).

A module is D^k modulo the row span of a relation matrix.  A submodule is
always carried as its full preimage in D^k: its generators stacked with the
module's relations.  Everything structural is read off the Smith normal form
of that stacked matrix.

Over a PID the annihilators of the nonzero elements of
D^r + D/(d_1) + ... + D/(d_t) are (0) (when r >= 1) and the ideals (e) for the
non-unit divisors e of d_t.  They form a chain of primes exactly when every
d_i is one and the same prime pi, since distinct nonzero primes are
incomparable and (0) < (pi).  So P is classical prime iff M/P has shape
D^r + (D/pi)^s, and prime iff additionally r = 0 or s = 0.
"""

import random as _random
from dataclasses import dataclass, field

from . import polygf
from .domains import EuclideanDomain, Integers, LocalIntegers, PolyOverGF, parse_domain
from .errors import NotProper, ParseError

# ---------------------------------------------------------------- matrices


def identity(D, n):
    return [[D.one if i == j else D.zero for j in range(n)] for i in range(n)]


def mat_mul(D, A, B):
    if not A:
        return []
    inner = len(B)
    cols = len(B[0]) if B else 0
    out = []
    for row in A:
        new = []
        for j in range(cols):
            s = D.zero
            for t in range(inner):
                a = row[t]
                if not D.is_zero(a):
                    b = B[t][j]
                    if not D.is_zero(b):
                        s = D.add(s, D.mul(a, b))
            new.append(s)
        out.append(new)
    return out


def vec_mat(D, v, A):
    return mat_mul(D, [list(v)], A)[0] if A else []


def det(D, A):
    """Fraction-free (Bareiss) determinant."""
    n = len(A)
    if n == 0:
        return D.one
    M = [list(r) for r in A]
    negate = False
    prev = D.one
    for k in range(n - 1):
        if D.is_zero(M[k][k]):
            for i in range(k + 1, n):
                if not D.is_zero(M[i][k]):
                    M[k], M[i] = M[i], M[k]
                    negate = not negate
                    break
            else:
                return D.zero
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = D.sub(D.mul(M[i][j], M[k][k]), D.mul(M[i][k], M[k][j]))
                M[i][j] = D.exact_div(num, prev)
        prev = M[k][k]
    d = M[n - 1][n - 1]
    return D.neg(d) if negate else d


def is_unimodular(D, A):
    return D.is_unit(det(D, A))


def _is_zero_row(D, row):
    return all(D.is_zero(x) for x in row)


# ------------------------------------------------------------- Smith form


def smith_decomposition(D, A, ncols=None):
    """Return (U, S, V, Vinv) with U*A*V = S in Smith normal form.

    Pivots are chosen by smallest euclidean size, ties broken by position;
    diagonal entries are normalized and each divides the next.
    """
    m = len(A)
    n = len(A[0]) if A else (ncols or 0)
    S = [list(r) for r in A]
    U = identity(D, m)
    V = identity(D, n)
    Vi = identity(D, n)
    sub, mul, dm, isz = D.sub, D.mul, D.divmod, D.is_zero

    def row_add(i, j, c):  # row_i += c * row_j
        for X in (S, U):
            ri, rj = X[i], X[j]
            for t in range(len(ri)):
                if not isz(rj[t]):
                    ri[t] = D.add(ri[t], mul(c, rj[t]))

    def col_add(i, j, c):  # col_i += c * col_j
        for row in S:
            if not isz(row[j]):
                row[i] = D.add(row[i], mul(c, row[j]))
        for row in V:
            if not isz(row[j]):
                row[i] = D.add(row[i], mul(c, row[j]))
        ri, rj = Vi[j], Vi[i]
        for t in range(n):
            if not isz(rj[t]):
                ri[t] = sub(ri[t], mul(c, rj[t]))

    def swap_rows(i, j):
        S[i], S[j] = S[j], S[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for X in (S, V):
            for row in X:
                row[i], row[j] = row[j], row[i]
        Vi[i], Vi[j] = Vi[j], Vi[i]

    for t in range(min(m, n)):
        best = None
        for i in range(t, m):
            for j in range(t, n):
                if not isz(S[i][j]):
                    sz = D.size(S[i][j])
                    if best is None or sz < best[0]:
                        best = (sz, i, j)
        if best is None:
            break
        _, i, j = best
        if i != t:
            swap_rows(i, t)
        if j != t:
            swap_cols(j, t)
        while True:
            clean = True
            for i in range(t + 1, m):
                if not isz(S[i][t]):
                    q, r = dm(S[i][t], S[t][t])
                    row_add(i, t, D.neg(q))
                    if not isz(r):
                        swap_rows(i, t)
                        clean = False
            for j in range(t + 1, n):
                if not isz(S[t][j]):
                    q, r = dm(S[t][j], S[t][t])
                    col_add(j, t, D.neg(q))
                    if not isz(r):
                        swap_cols(j, t)
                        clean = False
            if not clean:
                continue
            bad = None
            for i in range(t + 1, m):
                for j in range(t + 1, n):
                    if not isz(S[i][j]) and not isz(dm(S[i][j], S[t][t])[1]):
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            row_add(t, bad, D.one)
        u = D.unit_part(S[t][t])
        if u != D.one:
            inv = D.unit_inverse(u)
            S[t] = [mul(inv, x) for x in S[t]]
            U[t] = [mul(inv, x) for x in U[t]]
    return U, S, V, Vi


def smith_normal_form(D, A):
    """(U, S, V) with U*A*V = S diagonal, unimodular U and V, d_i | d_(i+1)."""
    U, S, V, _ = smith_decomposition(D, A)
    return U, S, V


def diagonal(D, S):
    out = []
    for i in range(min(len(S), len(S[0]) if S else 0)):
        out.append(S[i][i])
    return out


def is_smith_form(D, S):
    m = len(S)
    n = len(S[0]) if S else 0
    for i in range(m):
        for j in range(n):
            if i != j and not D.is_zero(S[i][j]):
                return False
    diag = diagonal(D, S)
    for a, b in zip(diag, diag[1:]):
        if not D.divides(a, b):
            return False
    return all(D.normal(d) == d for d in diag)


def verify_smith(D, A, U, S, V):
    """The full postcondition: U*A*V = S, unit determinants, Smith shape."""
    if A:
        if mat_mul(D, mat_mul(D, U, A), V) != S:
            return False
    return is_unimodular(D, U) and is_unimodular(D, V) and is_smith_form(D, S)


# ------------------------------------------------------------ echelon form


def echelon(D, rows, ncols):
    """Row echelon basis of the span, pivots normalized and entries above reduced."""
    pool = [list(r) for r in rows if not _is_zero_row(D, r)]
    out = []
    for col in range(ncols):
        if not pool:
            break
        nz = [r for r in pool if not D.is_zero(r[col])]
        if not nz:
            continue
        rest = [r for r in pool if D.is_zero(r[col])]
        while len(nz) > 1:
            k = min(range(len(nz)), key=lambda i: D.size(nz[i][col]))
            piv = nz.pop(k)
            keep = [piv]
            for r in nz:
                q, _ = D.divmod(r[col], piv[col])
                r2 = [D.sub(x, D.mul(q, y)) for x, y in zip(r, piv)]
                if D.is_zero(r2[col]):
                    if not _is_zero_row(D, r2):
                        rest.append(r2)
                else:
                    keep.append(r2)
            nz = keep
        piv = nz[0]
        inv = D.unit_inverse(D.unit_part(piv[col]))
        piv = [D.mul(inv, x) for x in piv]
        for r in out:
            if not D.is_zero(r[col]):
                q, _ = D.divmod(r[col], piv[col])
                for t in range(ncols):
                    r[t] = D.sub(r[t], D.mul(q, piv[t]))
        out.append(piv)
        pool = rest
    return out


def _pivot(D, row):
    for i, x in enumerate(row):
        if not D.is_zero(x):
            return i
    return None


def solve_in_span(D, basis, v):
    """Coefficients c with sum c_i * basis_i = v, or None; basis must be echelon."""
    v = list(v)
    coeffs = []
    for row in basis:
        c = _pivot(D, row)
        q, r = D.divmod(v[c], row[c])
        if not D.is_zero(r):
            return None
        coeffs.append(q)
        if not D.is_zero(q):
            v = [D.sub(x, D.mul(q, y)) for x, y in zip(v, row)]
    if not _is_zero_row(D, v):
        return None
    return coeffs


def hermite_membership(D, gens, v, ncols=None):
    """True iff v lies in the submodule of D^k generated by gens."""
    ncols = len(v) if ncols is None else ncols
    return solve_in_span(D, echelon(D, gens, ncols), v) is not None


def span_contains(D, gens, vectors, ncols):
    basis = echelon(D, gens, ncols)
    return all(solve_in_span(D, basis, v) is not None for v in vectors)


def intersect_spans(D, A, B, ncols):
    """Generators of span(A) & span(B) by the Zassenhaus stacking trick."""
    z = [D.zero] * ncols
    rows = [list(a) + list(a) for a in A] + [list(b) + z for b in B]
    E = echelon(D, rows, 2 * ncols)
    return [r[ncols:] for r in E if _is_zero_row(D, r[:ncols])]


def kernel_of_map(D, phi, target_relations):
    """{x in D^k : x*phi lies in span(target_relations)} for a k x c matrix phi."""
    k = len(phi)
    c = len(phi[0]) if phi else 0
    rows = []
    for i in range(k):
        e = [D.zero] * k
        e[i] = D.one
        rows.append(list(phi[i]) + e)
    for t in target_relations:
        rows.append(list(t) + [D.zero] * k)
    E = echelon(D, rows, c + k)
    return [r[c:] for r in E if _is_zero_row(D, r[:c])]


# ----------------------------------------------------------------- modules


@dataclass(frozen=True)
class PresentedModule:
    domain: EuclideanDomain
    rank: int
    relations: tuple = ()

    def __post_init__(self):
        if self.rank < 1:
            raise ValueError("rank must be >= 1")
        rels = tuple(tuple(r) for r in self.relations)
        for r in rels:
            if len(r) != self.rank:
                raise ParseError(f"relation {r} has wrong length for rank {self.rank}")
        object.__setattr__(self, "relations", rels)

    def zero_submodule(self):
        return SubmodulePres(self, ())

    def whole(self):
        D = self.domain
        return SubmodulePres(self, tuple(tuple(r) for r in identity(D, self.rank)))

    def submodule(self, gens):
        return SubmodulePres(self, tuple(tuple(g) for g in gens))

    def to_json(self):
        D = self.domain
        return {
            "domain": D.spec(),
            "rank": self.rank,
            "relations": [[D.to_json(a) for a in r] for r in self.relations],
        }


@dataclass(frozen=True)
class SubmodulePres:
    parent: PresentedModule
    generators: tuple = field(default=())

    @property
    def preimage(self):
        """Generators of the full preimage in D^k."""
        return list(self.generators) + list(self.parent.relations)

    def to_json(self):
        D = self.parent.domain
        return {"generators": [[D.to_json(a) for a in g] for g in self.generators]}


@dataclass(frozen=True)
class QuotientShape:
    free_rank: int
    invariant_factors: tuple

    @property
    def is_zero(self):
        return self.free_rank == 0 and not self.invariant_factors

    @property
    def is_torsion(self):
        return self.free_rank == 0

    def to_json(self, D):
        return {"freeRank": self.free_rank, "invariantFactors": [D.to_json(d) for d in self.invariant_factors]}


def _stacked_smith(M, P):
    D = M.domain
    rows = [list(r) for r in P.preimage]
    return smith_decomposition(D, rows, ncols=M.rank) if rows else (
        [],
        [],
        identity(D, M.rank),
        identity(D, M.rank),
    )


def _diag_and_basis(M, P):
    """Diagonal of the stacked Smith form and the matching basis of D^k.

    The preimage of P is spanned by d_i * f_i where f_i are the rows of V^-1.
    """
    D = M.domain
    U, S, V, Vi = _stacked_smith(M, P)
    diag = [S[i][i] for i in range(min(len(S), M.rank))] if S else []
    diag = [d for d in diag if not D.is_zero(d)]
    return diag, Vi


def quotient_shape(M, P=None):
    D = M.domain
    P = M.zero_submodule() if P is None else P
    diag, _ = _diag_and_basis(M, P)
    factors = tuple(D.normal(d) for d in diag if not D.is_unit(d))
    return QuotientShape(M.rank - len(diag), factors)


def module_shape(M):
    return quotient_shape(M, M.zero_submodule())


def _proper_shape(M, P):
    shape = quotient_shape(M, P)
    if shape.is_zero:
        raise NotProper("submodule is the whole module")
    return shape


def _single_prime(D, factors):
    """The common prime when every factor is the same prime, else None."""
    if not factors:
        return None
    first = factors[0]
    if any(f != first for f in factors):
        return None
    return first if D.is_prime(first) else None


def is_classical_prime_fg(M, P):
    shape = _proper_shape(M, P)
    if not shape.invariant_factors:
        return True
    return _single_prime(M.domain, shape.invariant_factors) is not None


def is_prime_fg(M, P):
    shape = _proper_shape(M, P)
    if not shape.invariant_factors:
        return True
    return shape.free_rank == 0 and _single_prime(M.domain, shape.invariant_factors) is not None


def is_maximal_fg(M, P):
    shape = _proper_shape(M, P)
    return shape.free_rank == 0 and len(shape.invariant_factors) == 1 and M.domain.is_prime(shape.invariant_factors[0])


@dataclass(frozen=True)
class RadicalShape:
    """Rad(M/P) read componentwise off the Smith basis.

    ``generators`` are preimages in D^k of generators of Rad(M/P) that are
    not already in P; the radical is zero exactly when there are none.
    """

    is_zero: bool
    torsion: tuple
    free_rank: int
    jacobson: object
    generators: tuple

    def to_json(self, D):
        return {
            "zero": self.is_zero,
            "torsion": [{"factor": D.to_json(d), "radical": D.to_json(r)} for d, r in self.torsion],
            "freeRank": self.free_rank,
            "jacobson": D.to_json(self.jacobson),
            "generators": [[D.to_json(a) for a in g] for g in self.generators],
        }


def radical_shape(M, P=None):
    """Rad(D/(d)) = (rad d)/(d), Rad(D) = J(D), and radicals commute with finite sums."""
    D = M.domain
    P = M.zero_submodule() if P is None else P
    diag, basis = _diag_and_basis(M, P)
    gens = []
    torsion = []
    for i, d in enumerate(diag):
        if D.is_unit(d):
            continue
        d = D.normal(d)
        r = D.radical(d)
        torsion.append((d, r))
        if not D.divides(d, r):
            gens.append(tuple(D.mul(r, x) for x in basis[i]))
    J = D.jacobson()
    free_rank = M.rank - len(diag)
    if not D.is_zero(J):
        for j in range(len(diag), M.rank):
            gens.append(tuple(D.mul(J, x) for x in basis[j]))
    return RadicalShape(not gens, tuple(torsion), free_rank, J, tuple(gens))


def torsion_submodule(M):
    """Preimage of the torsion part of M, as a submodule of M."""
    D = M.domain
    diag, basis = _diag_and_basis(M, M.zero_submodule())
    gens = [tuple(basis[i]) for i, d in enumerate(diag) if not D.is_unit(d)]
    return M.submodule(gens)


def quotient_torsion_preimage(M, P):
    """Preimage in M of the torsion part of M/P (contains P)."""
    diag, basis = _diag_and_basis(M, P)
    return M.submodule(list(P.generators) + [tuple(basis[i]) for i in range(len(diag))])


def is_torsion_free_quotient(M, N):
    return not quotient_shape(M, N).invariant_factors


def contains(M, A, B):
    """A contains B, as submodules of M."""
    return span_contains(M.domain, A.preimage, B.preimage, M.rank)


def equal(M, A, B):
    return contains(M, A, B) and contains(M, B, A)


def intersection(M, A, B):
    return M.submodule(intersect_spans(M.domain, A.preimage, B.preimage, M.rank))


def scaled(M, a, N):
    """a*N as a submodule of M."""
    D = M.domain
    return M.submodule([tuple(D.mul(a, x) for x in g) for g in N.preimage])


def is_pure_submodule(M, N):
    """aN = N & aM for every a; only prime powers q^e with q^e dividing the
    exponent of the torsion of M/N can fail."""
    D = M.domain
    shape = quotient_shape(M, N)
    if not shape.invariant_factors:
        return True
    top = shape.invariant_factors[-1]
    whole = M.whole()
    for q in D.prime_divisors(top):
        a = D.one
        for _ in range(D.valuation(top, q)):
            a = D.mul(a, q)
            lhs = scaled(M, a, N)
            rhs = intersection(M, N, scaled(M, a, whole))
            if not contains(M, lhs, rhs):
                return False
    return True


def submodule_as_module(M, N):
    """N as a presented module in its own right, with a coordinate map.

    Returns (module, to_coords) where to_coords sends a vector of the preimage
    of N to its coordinates in the chosen basis.
    """
    D = M.domain
    basis = echelon(D, N.preimage, M.rank)
    if not basis:
        return PresentedModule(D, 1, ((D.one,),)), lambda v: [D.zero]

    def to_coords(v):
        c = solve_in_span(D, basis, v)
        if c is None:
            raise ValueError("vector is not in the submodule")
        return c

    rels = [tuple(to_coords(r)) for r in M.relations]
    return PresentedModule(D, len(basis), tuple(rels)), to_coords


def sub_of_sub(M, N, P):
    """The submodule P (inside N) transported into N's own presentation."""
    NM, to_coords = submodule_as_module(M, N)
    return NM, NM.submodule([tuple(to_coords(g)) for g in P.preimage])


def lambda_submodule(a, b, D=None):
    """{(x, y) in D^2 : x*b = y*a}, generated by (a, b)/gcd(a, b)."""
    D = Integers() if D is None else D
    M = PresentedModule(D, 2, ())
    if D.is_zero(a) and D.is_zero(b):
        return M, M.whole()
    g = D.gcd(a, b)
    return M, M.submodule([(D.exact_div(a, g), D.exact_div(b, g))])


# ------------------------------------------------------------ verdicts


@dataclass(frozen=True)
class Verdict:
    value: bool
    tag: str
    reason: str
    witness: object = None
    radical: object = None

    def to_json(self, D):
        out = {"verdict": self.value, "tag": self.tag, "reason": self.reason}
        if self.witness is not None:
            out["witness"] = self.witness.to_json()
        if self.radical is not None:
            out["radical"] = self.radical.to_json(D)
        return out


def is_cl_hilbert_fg(M):
    """cl.Hilbert verdict for a finitely generated module over a supported domain.

    Z and GF(p)[x] are Dedekind with zero Jacobson radical, so every f.g.
    module is cl.Hilbert.  Over Z_(p), Rad(A) = pA for f.g. A, so a classical
    prime P is an intersection of maximals iff p(M/P) = 0; the quotient of M by
    the preimage of its torsion is free and nonzero exactly when M has free
    rank >= 1, and then it is a counterexample.
    """
    D = M.domain
    if isinstance(D, (Integers, PolyOverGF)):
        return Verdict(True, "TheoremBacked", "Dedekind domain with zero Jacobson radical")
    shape = module_shape(M)
    if shape.free_rank == 0:
        return Verdict(True, "Derived", "torsion module over a local PID")
    witness = torsion_submodule(M)
    return Verdict(
        False,
        "Derived",
        "free part over a local PID has nonzero radical",
        witness=witness,
        radical=radical_shape(M, witness),
    )


def annihilator_spectrum_fg(M, P):
    """Normalized generators of the annihilators of nonzero elements of M/P."""
    D = M.domain
    shape = _proper_shape(M, P)
    out = []
    if shape.free_rank:
        out.append(D.zero)
    if shape.invariant_factors:
        out.extend(D.divisors(shape.invariant_factors[-1]))
    return out


def classify_fg(M, P):
    """Classification record with the same field names as the finite classifier."""
    D = M.domain
    shape = _proper_shape(M, P)
    colon = D.zero if shape.free_rank else shape.invariant_factors[-1]
    return {
        "proper": True,
        "maximal": is_maximal_fg(M, P),
        "prime": is_prime_fg(M, P),
        "classicalPrime": is_classical_prime_fg(M, P),
        "intersectionOfMaximals": radical_shape(M, P).is_zero,
        "colon": D.to_json(colon),
        "annSpectrum": [D.to_json(a) for a in annihilator_spectrum_fg(M, P)],
        "shape": shape.to_json(D),
    }


def prime_cover_of_classical_prime(M, P):
    """Two prime submodules whose intersection is the classical prime P.

    For M/P = D^r + (D/pi)^s with r, s >= 1: the preimage of the torsion of
    M/P, and the preimage of pi*D^r + 0.
    """
    D = M.domain
    diag, basis = _diag_and_basis(M, P)
    nontrivial = [d for d in diag if not D.is_unit(d)]
    if not nontrivial:
        raise ValueError("quotient is torsion-free")
    pi = D.normal(nontrivial[0])
    t = len(diag)
    torsion_pre = M.submodule(list(P.generators) + [tuple(basis[i]) for i in range(t)])
    free_pre = M.submodule(
        list(P.generators) + [tuple(D.mul(pi, x) for x in basis[j]) for j in range(t, M.rank)]
    )
    return torsion_pre, free_pre


# ----------------------------------------------------------------- sampling


def small_primes(D, rng=None):
    if isinstance(D, Integers):
        return [2, 3, 5, 7, 11, 13]
    if isinstance(D, LocalIntegers):
        return [D.one * D.p]
    return [f for f in polygf.iter_polys(D.p, 2, monic_only=True) if len(f) >= 2 and D.is_prime(f)]


def random_unimodular(D, n, rng, steps=None, bound=3):
    A = identity(D, n)
    if n == 1:
        return _unit_scale(D, A, 0, rng)
    for _ in range(steps or 3 * n):
        i, j = rng.sample(range(n), 2)
        choice = rng.random()
        if choice < 0.7:
            c = D.random(rng, bound)
            A[i] = [D.add(x, D.mul(c, y)) for x, y in zip(A[i], A[j])]
        elif choice < 0.85:
            A[i], A[j] = A[j], A[i]
        else:
            A = _unit_scale(D, A, i, rng)
    return A


def _unit_scale(D, A, i, rng):
    if isinstance(D, Integers):
        u = rng.choice([1, -1])
    elif isinstance(D, PolyOverGF):
        u = (rng.randrange(1, D.p),)
    else:
        u = D.random(rng, 5)
        while u == 0 or D.size(u) > 0:
            u = D.random(rng, 5)
    A = [list(r) for r in A]
    A[i] = [D.mul(u, x) for x in A[i]]
    return A


def random_module(D, rng, max_rank=3, bound=None, min_free=0):
    """Random presentation of rank <= max_rank with sparse small relations."""
    k = rng.randint(max(1, min_free), max_rank)
    nrels = rng.randint(0, k - min_free) if k > min_free else 0
    bound = bound or (12 if isinstance(D, Integers) else 2 if isinstance(D, PolyOverGF) else 9)
    rels = []
    for _ in range(nrels):
        rels.append(tuple(D.random(rng, bound) if rng.random() < 0.7 else D.zero for _ in range(k)))
    rels = [r for r in rels if not _is_zero_row(D, r)]
    return PresentedModule(D, k, tuple(rels))


def sample_classical_prime(M, rng, free_rank=None, torsion_rank=None, pi=None):
    """A random classical prime P of M with M/P = D^r + (D/pi)^s.

    Builds a random surjection M -> D^r + (D/pi)^s and returns its kernel, or
    None when M admits no quotient of the requested kind.
    """
    D = M.domain
    k = M.rank
    rel_rows = [list(r) for r in M.relations]
    if rel_rows:
        _, S, V, _ = smith_decomposition(D, rel_rows, ncols=k)
        diag = [S[i][i] for i in range(min(len(S), k)) if not D.is_zero(S[i][i])]
    else:
        V = identity(D, k)
        diag = []
    t = len(diag)
    f = k - t
    if pi is None:
        divisors = sorted({q for d in diag if not D.is_unit(d) for q in D.prime_divisors(d)}, key=D.sort_key)
        pool = divisors if divisors and (f == 0 or rng.random() < 0.6) else small_primes(D)
        pi = rng.choice(pool)
    T0 = [i for i, d in enumerate(diag) if D.divides(pi, d)]
    r = rng.randint(0, f) if free_rank is None else free_rank
    if r > f:
        return None
    c = len(T0) + f - r
    s = rng.randint(0, c) if torsion_rank is None else torsion_rank
    if s > c or r + s == 0:
        return None
    G = random_unimodular(D, f, rng) if f else []
    H = random_unimodular(D, c, rng) if c else []
    mix = [[D.random(rng, 2) if rng.random() < 0.5 else D.zero for _ in range(s)] for _ in range(r)]
    phi_y = [[D.zero] * (r + s) for _ in range(k)]
    for a, i in enumerate(range(t, k)):
        for col in range(r):
            phi_y[i][col] = G[a][col]
    for col in range(s):
        for b, i in enumerate(T0):
            phi_y[i][r + col] = H[b][col]
        for a, i in enumerate(range(t, k)):
            acc = D.zero
            for z in range(r, f):
                acc = D.add(acc, D.mul(G[a][z], H[len(T0) + z - r][col]))
            for z in range(r):
                acc = D.add(acc, D.mul(G[a][z], mix[z][col]))
            phi_y[i][r + col] = acc
    phi = mat_mul(D, V, phi_y)
    target = []
    for col in range(s):
        row = [D.zero] * (r + s)
        row[r + col] = pi
        target.append(row)
    gens = kernel_of_map(D, phi, target)
    P = M.submodule(gens)
    shape = quotient_shape(M, P)
    expect = (r, tuple([D.normal(pi)] * s))
    if (shape.free_rank, shape.invariant_factors) != expect:
        raise AssertionError(f"sampler produced shape {shape}, expected {expect}")
    return P


def reject_sample_classical_prime(M, rng, tries=50, bound=None):
    """Rejection sampling: random extra generators until a classical prime appears."""
    D = M.domain
    bound = bound or (6 if isinstance(D, Integers) else 1 if isinstance(D, PolyOverGF) else 6)
    for _ in range(tries):
        gens = [tuple(D.random(rng, bound) for _ in range(M.rank)) for _ in range(rng.randint(1, M.rank))]
        P = M.submodule(gens)
        shape = quotient_shape(M, P)
        if not shape.is_zero and is_classical_prime_fg(M, P):
            return P
    return None


# ---------------------------------------------------------------- parsing


def module_from_json(obj, domain=None):
    if not isinstance(obj, dict):
        raise ParseError("module spec must be a JSON object")
    if domain is None:
        if "domain" not in obj:
            raise ParseError("module spec needs a domain")
        domain = parse_domain(obj["domain"])
    D = domain
    rank = obj.get("rank")
    if isinstance(rank, bool) or not isinstance(rank, int) or rank < 1:
        raise ParseError(f"rank must be a positive integer, got {rank!r}")
    rels = obj.get("relations", [])
    if not isinstance(rels, list):
        raise ParseError("relations must be an array")
    rows = []
    for row in rels:
        if not isinstance(row, list) or len(row) != rank:
            raise ParseError(f"relation row {row!r} must have {rank} entries")
        rows.append(tuple(D.coerce(a) for a in row))
    return PresentedModule(D, rank, tuple(rows))


def submodule_from_json(M, obj):
    if not isinstance(obj, dict) or not isinstance(obj.get("generators", []), list):
        raise ParseError('submodule spec must be {"generators": [...]}')
    D = M.domain
    gens = []
    for g in obj.get("generators", []):
        if not isinstance(g, list) or len(g) != M.rank:
            raise ParseError(f"generator {g!r} must have {M.rank} entries")
        gens.append(tuple(D.coerce(a) for a in g))
    return M.submodule(gens)


def default_rng(seed):
    return _random.Random(seed)
