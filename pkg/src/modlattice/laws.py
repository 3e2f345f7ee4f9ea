"""Executable laws: each registered law generates instances, evaluates a
predicate through the finite or PID machinery, and reports.

Every law draws its instances from a generator seeded by (root seed, law id),
so laws can be run in any order or alone with identical results.  A failing
instance is shrunk before it is reported.
"""

import hashlib
import random
import time
from dataclasses import dataclass, field, replace
from fractions import Fraction

from . import classify as C
from . import euclid as E
from .domains import Integers, LocalIntegers, PolyOverGF, parse_domain
from .errors import BoundExceeded, InvalidSpec, ModLatticeError, UnknownLaw
from .finmod import (
    FiniteModule,
    all_submodules,
    annihilator,
    change_ring,
    colon_ideal,
    direct_sum,
    ideal_times_module,
    module_from_json,
    quotient_module,
    submodule_as_module,
    submodule_from_json,
    submodule_generated,
)
from .rings import (
    CyclicInt,
    FiniteRing,
    PolyQuot,
    all_ideals,
    is_maximal_ideal,
    is_zero_dimensional,
    minimal_prime_ideals,
    nilradical,
    parse_ring,
    quotient_ring,
)

CORPUS_RINGS = (
    "Z/2",
    "Z/3",
    "Z/4",
    "Z/6",
    "Z/8",
    "Z/12",
    "GF(2)[x]/[0,0,1]",
    "GF(2)[x]/[1,1,1]",
    "Z/2 x Z/3",
)

PID_DOMAINS = ("Z", "GF(2)[x]", "GF(5)[x]", "Zloc(2)", "Zloc(3)")


@dataclass(frozen=True)
class LawConfig:
    max_module: int = 256
    max_free: int = 64
    max_lattice: int = 3000
    random_modules: int = 3
    pid_modules: int = 500
    mixed_primes: int = 200
    samples_per_module: int = 6
    ring: str = None


def derive_seed(root_seed, label):
    digest = hashlib.sha256(f"{root_seed}:{label}".encode()).digest()
    return int.from_bytes(digest[:8], "big")


# ------------------------------------------------------------------ corpora


def _lattice_ok(M, cfg):
    try:
        all_submodules(M, max_size=cfg.max_module, max_count=cfg.max_lattice)
    except BoundExceeded:
        return False
    return True


def _try_module(R, rank, rels, cfg):
    try:
        M = FiniteModule(R, rank, rels, max_size=cfg.max_module)
    except BoundExceeded:
        return None
    return M if _lattice_ok(M, cfg) else None


def corpus_rings(cfg):
    if cfg.ring is not None:
        try:
            return [parse_ring(cfg.ring)]
        except InvalidSpec:
            pass
    return [parse_ring(s) for s in CORPUS_RINGS]


def pid_domains(cfg):
    if cfg.ring is not None:
        try:
            return [parse_domain(cfg.ring)]
        except InvalidSpec:
            pass
    return [parse_domain(s) for s in PID_DOMAINS]


def _ring_modules(R, cfg, rng):
    """Free modules, cyclic modules R/I, sums R/I + R/J and random presentations."""
    out = []
    seen = set()

    def add(M):
        if M is None or M.is_zero:
            return
        key = (M.ring.spec(), M.rank, M.relations)
        if key not in seen:
            seen.add(key)
            out.append(M)

    k = 1
    while R.size**k <= min(cfg.max_free, cfg.max_module):
        add(_try_module(R, k, (), cfg))
        k += 1
    ideals = [I for I in all_ideals(R) if I.is_proper]
    gens = [list(I.elements) for I in ideals]
    for g in gens[1:]:
        add(_try_module(R, 1, [(a,) for a in g], cfg))
    for i, g1 in enumerate(gens):
        for g2 in gens[i:]:
            rels = [(a, 0) for a in g1] + [(0, b) for b in g2]
            if R.size**2 // (len(g1) * len(g2)) <= cfg.max_module:
                add(_try_module(R, 2, rels, cfg))
    made = tries = 0
    while made < cfg.random_modules and tries < 50 * (cfg.random_modules + 1):
        tries += 1
        rank = rng.randint(1, 3)
        if R.size**rank > 4096:
            continue
        nrels = rng.randint(0, rank + 1)
        rels = [tuple(rng.randrange(R.size) if rng.random() < 0.6 else 0 for _ in range(rank)) for _ in range(nrels)]
        M = _try_module(R, rank, rels, cfg)
        if M is not None and not M.is_zero:
            before = len(out)
            add(M)
            made += len(out) > before
    return out


_CORPUS_CACHE = {}


def finite_corpus(cfg, root_seed=0):
    """The finite module corpus for a config; cached so lattices are shared."""
    if cfg.max_module < 2:
        raise BoundExceeded(f"module bound {cfg.max_module} admits no nonzero module")
    key = (cfg.max_module, cfg.max_free, cfg.max_lattice, cfg.random_modules, cfg.ring, root_seed)
    if key not in _CORPUS_CACHE:
        rng = random.Random(derive_seed(root_seed, "corpus"))
        mods = []
        for R in corpus_rings(cfg):
            mods.extend(_ring_modules(R, cfg, rng))
        _CORPUS_CACHE.clear()
        _CORPUS_CACHE[key] = mods
    return _CORPUS_CACHE[key]


# ---------------------------------------------------------------- instances


@dataclass
class Instance:
    spec: dict
    payload: tuple


def fin_spec(M, P=None, **extra):
    spec = M.presentation()
    if P is not None:
        spec["submodule"] = [M.encode(g) for g in P.generators]
    spec.update(extra)
    return spec


def build_fin(spec):
    M = module_from_json(spec)
    P = submodule_from_json(M, {"generators": spec["submodule"]}) if "submodule" in spec else None
    return M, P


def pid_spec(M, P=None, **extra):
    spec = M.to_json()
    if P is not None:
        spec["submodule"] = P.to_json()["generators"]
    spec.update(extra)
    return spec


def build_pid(spec):
    M = E.module_from_json(spec)
    P = E.submodule_from_json(M, {"generators": spec["submodule"]}) if "submodule" in spec else None
    return M, P


def _fin(M, P=None, **extra):
    return Instance(fin_spec(M, P, **extra), (M, P))


def _pid(M, P=None, **extra):
    return Instance(pid_spec(M, P, **extra), (M, P))


def _sample(rng, items, k):
    items = list(items)
    return items if len(items) <= k else rng.sample(items, k)


def _proper_subs(M):
    return [P for P in all_submodules(M) if P.is_proper]


# ------------------------------------------------------------ finite laws


def gen_per_submodule(ctx, rng):
    for M in ctx.corpus():
        for P in _proper_subs(M):
            yield _fin(M, P)


def gen_per_module(ctx, rng):
    for M in ctx.corpus():
        yield _fin(M)


def check_classical_prime_routes(M, P):
    """Definition, all-annihilators-prime, prime chain, and colon-prime-plus-chain agree."""
    R = M.ring
    spec = C.ann_spectrum(M, P)
    all_prime = all(C.is_prime_ideal(R, I) for I in spec)
    chain = all_prime and C._is_chain(spec)
    with_colon = C.is_prime_ideal(R, colon_ideal(P, M)) and chain
    return len({C.is_classical_prime_def(M, P), all_prime, chain, with_colon}) == 1


def check_prime_routes(M, P):
    """Definition, each annihilator prime and equal to the colon, and singleton spectrum agree."""
    R = M.ring
    colon = colon_ideal(P, M)
    spec = C.ann_spectrum(M, P)
    each = all(C.is_prime_ideal(R, I) and I == colon for I in spec)
    return len({C.is_prime_sub_def(M, P), each, C.is_prime_sub(M, P)}) == 1


def check_larger_primes(M, P=None):
    return C.is_cl_hilbert(M) == C.larger_primes_criterion(M)


def gen_quotients(ctx, rng):
    for M in ctx.corpus():
        for N in _sample(rng, all_submodules(M), ctx.cfg.samples_per_module):
            yield _fin(M, N)


def check_homomorphic_image(M, N):
    return not C.is_cl_hilbert(M) or C.is_cl_hilbert(quotient_module(M, N))


def check_minimal_quotients(M, P=None):
    via_minimal = all(C.is_cl_hilbert(quotient_module(M, N)) for N in C.minimal_classical_primes(M))
    return C.is_cl_hilbert(M) == via_minimal


def gen_sums(ctx, rng):
    by_ring = {}
    for M in ctx.corpus():
        if M.size <= 16:
            by_ring.setdefault(M.ring.spec(), []).append(M)
    for mods in by_ring.values():
        pairs = [
            (A, B)
            for i, A in enumerate(mods)
            for B in mods[i:]
            if A.size * B.size <= ctx.cfg.max_module and A.ring.size ** (A.rank + B.rank) <= 4096
        ]
        for A, B in _sample(rng, pairs, 2 * ctx.cfg.samples_per_module):
            S = direct_sum(A, B)
            if _lattice_ok(S, ctx.cfg):
                yield Instance(fin_spec(S, left=A.rank), (S, A.rank))


def build_sum(spec):
    S, _ = build_fin(spec)
    return S, spec["left"]


def _summand(S, lo, hi):
    """The summand on coordinates lo..hi-1, as the quotient of S by the other one."""
    R = S.ring
    others = []
    for i in range(S.rank):
        if not lo <= i < hi:
            others.append(S.element_of(tuple(R.one if j == i else 0 for j in range(S.rank))))
    return quotient_module(S, submodule_generated(S, others))


def check_summands(S, left):
    if not C.is_cl_hilbert(S):
        return True
    return C.is_cl_hilbert(_summand(S, 0, left)) and C.is_cl_hilbert(_summand(S, left, S.rank))


def gen_annihilating_ideals(ctx, rng):
    for M in ctx.corpus():
        ann = annihilator(M)
        inside = [I for I in all_ideals(M.ring) if I <= ann]
        for I in _sample(rng, inside, 4):
            yield Instance(fin_spec(M, ideal=[M.ring.encode(a) for a in I.elements]), (M, I))


def build_with_ideal(spec):
    from .rings import ideal_generated

    M, _ = build_fin(spec)
    return M, ideal_generated(M.ring, [M.ring.decode(a) for a in spec["ideal"]])


def check_change_ring(M, I):
    return C.is_cl_hilbert(M) == C.is_cl_hilbert(change_ring(M, I))


def check_nilradical(M, P=None):
    nil = nilradical(M.ring)
    Q = quotient_module(M, ideal_times_module(nil, M))
    if Q.is_zero:
        return C.is_cl_hilbert(M)
    over_reduced = change_ring(Q, nil)
    return len({C.is_cl_hilbert(M), C.is_cl_hilbert(Q), C.is_cl_hilbert(over_reduced)}) == 1


def check_radical_quotients(M, P=None):
    cps = C.classical_primes(M)
    rad_zero = all(C.is_intersection_of_maximals(M, Q) for Q in cps)
    rng = random.Random(M.size * 7919 + M.rank)
    over_colon = all(
        C.is_cl_hilbert(change_ring(quotient_module(M, Q), colon_ideal(Q, M))) for Q in _sample(rng, cps, 6)
    )
    return len({C.is_cl_hilbert(M), rad_zero, over_colon}) == 1


def gen_field_submodules(ctx, rng):
    for M in ctx.corpus():
        if not M.ring.is_field:
            continue
        for N in _sample(rng, all_submodules(M), ctx.cfg.samples_per_module):
            if not N.is_zero:
                yield _fin(M, N)


def _torsion_free_quotient(M, N):
    Q = quotient_module(M, N)
    return all(Q.smul(r, q) != 0 for q in range(1, Q.size) for r in range(1, Q.ring.size))


def check_torsion_free_quotient_finite(M, N):
    if not (C.is_cl_hilbert(M) and _torsion_free_quotient(M, N)):
        return True
    return C.is_cl_hilbert(submodule_as_module(N))


def check_spectrum_maximal(M, P):
    if not C.is_classical_prime(M, P):
        return True
    if not all(is_maximal_ideal(M.ring, I) for I in C.ann_spectrum(M, P)):
        return True
    return C.is_intersection_of_maximals(M, P)


def check_zero_dimensional(M, P=None):
    R = M.ring
    if not is_zero_dimensional(R):
        return True
    for Q in C.classical_primes(M):
        if not all(is_maximal_ideal(R, I) for I in C.ann_spectrum(M, Q)):
            return False
    return C.is_cl_hilbert(M)


def check_artinian(M, P=None):
    """Finite modules are Artinian: every R/Ann(m) is a field, and M is cl.Hilbert."""
    R = M.ring
    for Q in C.classical_primes(M):
        for I in C.ann_spectrum(M, Q):
            if not quotient_ring(R, I)[0].is_field:
                return False
    return C.is_cl_hilbert(M)


def check_all_modules(M, P=None):
    if not is_zero_dimensional(M.ring):
        return True
    return C.is_cl_hilbert(M) and C.is_hilbert(M)


def gen_nilpotent_transport(ctx, rng):
    for M in ctx.corpus():
        R = M.ring
        if nilradical(R).size == 1:
            continue
        for P in _sample(rng, C.classical_primes(M), ctx.cfg.samples_per_module):
            yield _fin(M, P)


def check_minimal_prime_transport(M, P):
    """Rad of M/P over R and over R/P0, for each minimal prime P0 inside (P : M), agree."""
    R = M.ring
    colon = colon_ideal(P, M)
    Q = quotient_module(M, P)
    over_r = C.radical_of_module(Q).is_zero
    for P0 in minimal_prime_ideals(R):
        if P0 <= colon:
            if C.radical_of_module(change_ring(Q, P0)).is_zero != over_r:
                return False
    return True


def gen_free_pairs(ctx, rng):
    for R in corpus_rings(ctx.cfg):
        if nilradical(R).size == 1 or R.size**2 > ctx.cfg.max_module:
            continue
        yield Instance({"ring": R.spec(), "rank": 2, "relations": []}, (R,))


def build_free_pair(spec):
    return (parse_ring(spec["ring"]),)


def check_free_pairs(R):
    whole = C.is_cl_hilbert(FiniteModule(R, 2))
    reduced = []
    for P0 in minimal_prime_ideals(R):
        Rp, _ = quotient_ring(R, P0)
        reduced.append(C.is_cl_hilbert(FiniteModule(Rp, 2)))
    return whole == all(reduced) and whole


# --------------------------------------------------------------- PID laws


def _pid_rng_module(D, rng, **kw):
    return E.random_module(D, rng, **kw)


def _pid_classical_prime(M, rng):
    P = E.sample_classical_prime(M, rng) if rng.random() < 0.75 else E.reject_sample_classical_prime(M, rng)
    return P


def gen_pid_classical(ctx, rng):
    """Random modules over each domain with sampled classical primes."""
    for D in ctx.domains():
        n = ctx.cfg.pid_modules if isinstance(D, (Integers, PolyOverGF)) else max(1, ctx.cfg.pid_modules // 10)
        made = 0
        while made < n:
            M = _pid_rng_module(D, rng)
            P = _pid_classical_prime(M, rng)
            if P is None:
                continue
            made += 1
            yield _pid(M, P)


def check_dedekind_radical(M, P):
    """Over Z and GF(p)[x] every classical prime has Rad(M/P) = 0; over Z_(p)
    that happens exactly when M/P is torsion."""
    D = M.domain
    if not E.is_classical_prime_fg(M, P):
        return False
    rad = E.radical_shape(M, P)
    if D.is_zero(D.jacobson()):
        return rad.is_zero
    return rad.is_zero == (E.quotient_shape(M, P).free_rank == 0)


def gen_free_squares(ctx, rng):
    for D in ctx.domains():
        yield _pid(E.PresentedModule(D, 2))


def check_free_square(M, P=None):
    """R + R is cl.Hilbert iff J(R) = 0; when it is not, the witness really fails."""
    D = M.domain
    verdict = E.is_cl_hilbert_fg(M)
    if verdict.value != D.is_zero(D.jacobson()):
        return False
    if verdict.value:
        return True
    W = verdict.witness
    return E.is_classical_prime_fg(M, W) and not E.radical_shape(M, W).is_zero


def gen_mixed_primes(ctx, rng):
    domains = ctx.domains()
    made = 0
    while made < ctx.cfg.mixed_primes:
        D = domains[made % len(domains)]
        M = _pid_rng_module(D, rng, min_free=1)
        P = E.sample_classical_prime(M, rng, free_rank=1 if M.rank == 1 else rng.randint(1, 2), torsion_rank=1)
        if P is None:
            continue
        made += 1
        yield _pid(M, P)


def check_prime_cover(M, P):
    if not E.is_classical_prime_fg(M, P):
        return False
    P1, P2 = E.prime_cover_of_classical_prime(M, P)
    if not (E.is_prime_fg(M, P1) and E.is_prime_fg(M, P2)):
        return False
    if not (E.contains(M, P1, P) and E.contains(M, P2, P)):
        return False
    return E.contains(M, P, E.intersection(M, P1, P2))


def gen_torsion_free_quotients(ctx, rng):
    for D in ctx.domains():
        for _ in range(max(4, ctx.cfg.pid_modules // 25)):
            M = _pid_rng_module(D, rng)
            K = M.submodule([tuple(D.random(rng, 3) for _ in range(M.rank))])
            N = E.quotient_torsion_preimage(M, K)
            yield _pid(M, N)


def check_torsion_free_quotient_pid(M, N):
    if not E.is_torsion_free_quotient(M, N):
        return False
    if not E.is_cl_hilbert_fg(M).value:
        return True
    NM, _ = E.submodule_as_module(M, N)
    if not E.is_cl_hilbert_fg(NM).value:
        return False
    D = M.domain
    if not D.is_zero(D.jacobson()):
        return True
    rng = random.Random(repr(pid_spec(M, N)))
    for _ in range(3):
        P = E.sample_classical_prime(NM, rng)
        if P is not None and not E.radical_shape(NM, P).is_zero:
            return False
    return True


def gen_pure(ctx, rng):
    for D in ctx.domains():
        for _ in range(max(4, ctx.cfg.pid_modules // 25)):
            M = _pid_rng_module(D, rng)
            kind = rng.randrange(3)
            if kind == 0:
                N = E.torsion_submodule(M)
                yield Instance(pid_spec(M, N, part="torsion"), (M, N, "torsion"))
                continue
            F = E.PresentedModule(D, M.rank)
            N = F.submodule([tuple(D.random(rng, 3) for _ in range(M.rank)) for _ in range(rng.randint(1, M.rank))])
            if kind == 1:
                N = E.quotient_torsion_preimage(F, N)
            yield Instance(pid_spec(F, N, part="pure"), (F, N, "pure"))


def check_pure(M, N, part):
    if part == "torsion":
        if not E.is_cl_hilbert_fg(M).value:
            return True
        TM, _ = E.submodule_as_module(M, N)
        return E.is_cl_hilbert_fg(TM).value
    pure = E.is_pure_submodule(M, N)
    if pure != E.is_torsion_free_quotient(M, N):
        return False
    if not (pure and E.is_cl_hilbert_fg(M).value):
        return True
    NM, _ = E.submodule_as_module(M, N)
    return E.is_cl_hilbert_fg(NM).value


def build_pid_part(spec):
    M, N = build_pid(spec)
    return M, N, spec["part"]


def _to_finite_ring(D, e):
    if isinstance(D, Integers):
        return FiniteRing([CyclicInt(abs(e))])
    if isinstance(D, LocalIntegers):
        return FiniteRing([CyclicInt(int(e))])
    return FiniteRing([PolyQuot(D.p, tuple(e))])


def _to_finite_element(D, R, a, e):
    comp = R.components[0]
    if isinstance(D, Integers):
        return R.index((a % comp.n,))
    if isinstance(D, LocalIntegers):
        a = Fraction(a)
        n = comp.n
        return R.index((a.numerator * pow(a.denominator, -1, n) % n,))
    return R.index((comp.reduce(a),))


def realize_finite(M, max_size):
    """A torsion module over a PID as a module over the finite ring D/(exponent)."""
    D = M.domain
    shape = E.module_shape(M)
    if shape.free_rank or not shape.invariant_factors:
        return None
    e = shape.invariant_factors[-1]
    R = _to_finite_ring(D, e)
    if R.size**M.rank > 4096:
        return None
    rels = [tuple(_to_finite_element(D, R, a, e) for a in row) for row in M.relations]
    try:
        F = FiniteModule(R, M.rank, rels, max_size=max_size)
    except BoundExceeded:
        return None
    return F


def gen_torsion(ctx, rng):
    for D in ctx.domains():
        made = tries = 0
        while made < max(4, ctx.cfg.pid_modules // 25) and tries < 500:
            tries += 1
            k = rng.randint(1, 3)
            bound = 6 if isinstance(D, Integers) else 1 if isinstance(D, PolyOverGF) else 4
            rels = [tuple(D.random(rng, bound) for _ in range(k)) for _ in range(k + rng.randint(0, 1))]
            M = E.PresentedModule(D, k, tuple(rels))
            shape = E.module_shape(M)
            if shape.free_rank or shape.is_zero:
                continue
            F = realize_finite(M, ctx.cfg.max_module)
            if F is None or not _lattice_ok(F, ctx.cfg):
                continue
            made += 1
            yield _pid(M)
        if isinstance(D, LocalIntegers):
            for k in (1, 2):
                yield _pid(E.PresentedModule(D, k))


def check_torsion(M, P=None):
    """Torsion modules are cl.Hilbert (also via a finite realization); over
    Z_(p) a module with a free part is not."""
    verdict = E.is_cl_hilbert_fg(M).value
    shape = E.module_shape(M)
    if shape.free_rank:
        return verdict == (not isinstance(M.domain, LocalIntegers))
    if not verdict:
        return False
    F = realize_finite(M, 4096)
    if F is None:
        return True
    size = 1
    for d in shape.invariant_factors:
        size *= _to_finite_ring(M.domain, d).size
    return F.size == size and C.is_cl_hilbert(F)


# ---------------------------------------------------------------- registry


@dataclass(frozen=True)
class Law:
    id: str
    description: str
    generate: object
    check: object
    build: object = build_fin


def _law(id, description, generate, check, build=build_fin):
    return Law(id, description, generate, check, build)


REGISTRY = {
    law.id: law
    for law in (
        _law("L2.3eq", "four characterizations of classical prime submodules agree", gen_per_submodule, check_classical_prime_routes),
        _law("L2.4eq", "three characterizations of prime submodules agree", gen_per_submodule, check_prime_routes),
        _law("L2.5", "cl.Hilbert iff every non-maximal classical prime is the meet of larger ones", gen_per_module, check_larger_primes),
        _law("L2.6", "quotients of cl.Hilbert modules are cl.Hilbert", gen_quotients, check_homomorphic_image),
        _law("L2.7", "cl.Hilbert iff M/N is cl.Hilbert for every minimal classical prime N", gen_per_module, check_minimal_quotients),
        _law("L2.8fwd", "summands of a cl.Hilbert direct sum are cl.Hilbert", gen_sums, check_summands, build_sum),
        _law("L2.10", "cl.Hilbert status is unchanged by passing to R/I with I inside Ann(M)", gen_annihilating_ideals, check_change_ring, build_with_ideal),
        _law("L2.11", "cl.Hilbert status of M, M/Nil(R)M over R, and over R/Nil(R) agree", gen_per_module, check_nilradical),
        _law("L2.12", "cl.Hilbert iff every classical prime quotient has zero radical", gen_per_module, check_radical_quotients),
        _law("L2.13", "torsion-free quotient of a cl.Hilbert module has cl.Hilbert kernel", None, None),
        _law("L2.14", "torsion and pure submodules of cl.Hilbert modules are cl.Hilbert", gen_pure, check_pure, build_pid_part),
        _law("L2.16", "classical primes whose annihilators are all maximal are meets of maximals", gen_per_submodule, check_spectrum_maximal),
        _law("L2.17.1", "modules over zero-dimensional rings are cl.Hilbert", gen_per_module, check_zero_dimensional),
        _law("L2.17.2", "torsion modules over one-dimensional PIDs are cl.Hilbert", gen_torsion, check_torsion, build_pid),
        _law("L2.17.3", "Artinian modules are cl.Hilbert", gen_per_module, check_artinian),
        _law("L2.18", "over a zero-dimensional ring every module is cl.Hilbert and Hilbert", gen_per_module, check_all_modules),
        _law("L3.2", "classical primes over a PID are meets of two primes", gen_mixed_primes, check_prime_cover, build_pid),
        _law("L3.6", "classical prime quotients over Z and GF(p)[x] have zero radical", None, None),
        _law("L3.7min", "cl.Hilbert transports along minimal primes of rings with nilpotents", None, None),
    )
}


class _Dispatch:
    """Payload wrapper so one law can mix instance kinds with different checks."""

    def __init__(self, kinds):
        self.kinds = kinds

    def generate(self, ctx, rng):
        for kind, (gen, _, _) in self.kinds.items():
            for inst in gen(ctx, rng):
                inst.spec["kind"] = kind
                inst.payload = (kind,) + tuple(inst.payload)
                yield inst

    def build(self, spec):
        kind = spec["kind"]
        return (kind,) + tuple(self.kinds[kind][2](spec))

    def check(self, kind, *payload):
        return self.kinds[kind][1](*payload)


def _register_dispatch(law_id, kinds):
    d = _Dispatch(kinds)
    REGISTRY[law_id] = replace(REGISTRY[law_id], generate=d.generate, check=d.check, build=d.build)


_register_dispatch(
    "L2.13",
    {
        "field": (gen_field_submodules, check_torsion_free_quotient_finite, build_fin),
        "pid": (gen_torsion_free_quotients, check_torsion_free_quotient_pid, build_pid),
    },
)
_register_dispatch(
    "L3.6",
    {
        "classical": (gen_pid_classical, check_dedekind_radical, build_pid),
        "free2": (gen_free_squares, check_free_square, build_pid),
    },
)
_register_dispatch(
    "L3.7min",
    {
        "transport": (gen_nilpotent_transport, check_minimal_prime_transport, build_fin),
        "free2": (gen_free_pairs, check_free_pairs, build_free_pair),
    },
)

LAW_IDS = tuple(REGISTRY)


# ---------------------------------------------------------------- shrinking


def _drop_column(spec, j):
    out = dict(spec)
    out["rank"] = spec["rank"] - 1
    out["relations"] = [r[:j] + r[j + 1 :] for r in spec.get("relations", [])]
    if "submodule" in spec:
        out["submodule"] = [g[:j] + g[j + 1 :] for g in spec["submodule"]]
    out.pop("left", None)
    return out


def _smaller_rings(spec):
    """Z/n becomes Z/d for proper divisors d > 1 of n, entries reduced mod d."""
    text = spec.get("ring")
    if not isinstance(text, str):
        return []
    try:
        R = parse_ring(text)
    except ModLatticeError:
        return []
    if len(R.components) != 1 or not isinstance(R.components[0], CyclicInt):
        return []
    n = R.components[0].n
    out = []
    for d in range(2, n):
        if n % d:
            continue
        cand = dict(spec)
        cand["ring"] = f"Z/{d}"
        red = lambda rows: [[(a % d) if isinstance(a, int) else a for a in r] for r in rows]
        cand["relations"] = red(spec.get("relations", []))
        if "submodule" in spec:
            cand["submodule"] = red(spec["submodule"])
        cand.pop("ideal", None)
        out.append(cand)
    return out


def shrink_candidates(spec):
    out = []
    for key in ("submodule", "relations"):
        for i in range(len(spec.get(key, []) or [])):
            cand = dict(spec)
            cand[key] = spec[key][:i] + spec[key][i + 1 :]
            out.append(cand)
    rank = spec.get("rank")
    if isinstance(rank, int) and rank > 1 and "ideal" not in spec:
        out.extend(_drop_column(spec, j) for j in range(rank))
    out.extend(_smaller_rings(spec))
    return out


def _fails(law, spec):
    try:
        payload = law.build(spec)
        return not law.check(*payload)
    except Exception:
        return False


def shrink(law, spec, max_steps=200):
    """Greedy shrink to a fixpoint: take the first smaller spec that still fails."""
    for _ in range(max_steps):
        for cand in shrink_candidates(spec):
            if _fails(law, cand):
                spec = cand
                break
        else:
            return spec
    return spec


# ---------------------------------------------------------------- running


@dataclass
class LawReport:
    law: str
    instances_generated: int = 0
    passed: int = 0
    counterexample: dict = None
    seed: int = 0
    error: str = None
    elapsed: float = 0.0

    @property
    def ok(self):
        return self.error is None and self.counterexample is None and self.passed == self.instances_generated

    def to_json(self, include_timing=False):
        out = {
            "law": self.law,
            "instancesGenerated": self.instances_generated,
            "passed": self.passed,
            "counterexample": self.counterexample,
            "seed": str(self.seed),
            "error": self.error,
        }
        if include_timing:
            out["elapsed"] = round(self.elapsed, 3)
        return out


@dataclass
class _Context:
    cfg: LawConfig
    root_seed: int
    _domains: list = field(default=None)

    def corpus(self):
        return finite_corpus(self.cfg, self.root_seed)

    def domains(self):
        if self._domains is None:
            self._domains = pid_domains(self.cfg)
        return self._domains


def run_law(law_id, cfg=None, seed=0, registry=None):
    registry = REGISTRY if registry is None else registry
    if law_id not in registry:
        raise UnknownLaw(f"unknown law {law_id!r}; known: {', '.join(registry)}")
    cfg = cfg or LawConfig()
    law = registry[law_id]
    law_seed = derive_seed(seed, law_id)
    report = LawReport(law_id, seed=law_seed)
    start = time.perf_counter()
    try:
        if cfg.max_module < 2:
            raise BoundExceeded(f"module bound {cfg.max_module} admits no nonzero module")
        ctx = _Context(cfg, seed)
        rng = random.Random(law_seed)
        for inst in law.generate(ctx, rng):
            report.instances_generated += 1
            if law.check(*inst.payload):
                report.passed += 1
            else:
                report.counterexample = shrink(law, inst.spec)
                break
    except BoundExceeded as exc:
        report.error = f"BoundExceeded: {exc}"
    except Exception as exc:
        report.error = f"{type(exc).__name__}: {exc}"
    report.elapsed = time.perf_counter() - start
    return report


def run_all(cfg=None, seed=0, registry=None):
    registry = REGISTRY if registry is None else registry
    return [run_law(law_id, cfg, seed, registry) for law_id in registry]


def exit_status(reports):
    """0 all passed, 1 some law failed, 4 bounds exceeded, 5 other errors."""
    if any(r.counterexample is not None for r in reports):
        return 1
    if any(r.error and r.error.startswith("BoundExceeded") for r in reports):
        return 4
    if any(r.error for r in reports):
        return 5
    return 0
