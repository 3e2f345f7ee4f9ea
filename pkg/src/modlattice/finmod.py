"""Finite modules over finite rings, presented as R^k / (row span of relations).

Module elements are integer indices into the sorted list of canonical coset
representatives (the lexicographically least vector of each coset), so index
0 is zero.  Submodules are bitmasks over those indices.
"""

from dataclasses import dataclass, field
from functools import cached_property

from . import config
from ._lattice import bits, close, enumerate_subgroups, mask_of
from .errors import BoundExceeded, NotProper, ParseError, RingMismatch
from .rings import FiniteRing, IdealF, quotient_ring

TABLE_LIMIT = 1024


class FiniteModule:
    def __init__(self, ring, rank, relations=(), max_size=config.MAX_MODULE):
        if not isinstance(ring, FiniteRing):
            raise TypeError("ring must be a FiniteRing")
        if rank < 1:
            raise ValueError("rank must be >= 1")
        self.ring = ring
        self.rank = rank
        rels = []
        for row in relations:
            row = tuple(row)
            if len(row) != rank:
                raise ParseError(f"relation {list(row)} has length {len(row)}, expected {rank}")
            rels.append(row)
        self.relations = tuple(rels)
        cells = ring.size**rank
        if cells > config.max_cells():
            raise BoundExceeded(f"free cover of {cells} vectors exceeds cell ceiling {config.max_cells()}")
        self._cells = cells
        self.source = None
        self.projection = None
        self.lift = None
        self.injections = None
        self._build(max_size)

    # vectors of R^k are addressed by mixed-radix index, first coordinate most significant

    def _vec(self, v):
        n = self.ring.size
        out = [0] * self.rank
        for j in range(self.rank - 1, -1, -1):
            v, out[j] = divmod(v, n)
        return tuple(out)

    def _vidx(self, vec):
        n = self.ring.size
        i = 0
        for a in vec:
            i = i * n + a
        return i

    def _vadd(self, u, v):
        add = self.ring.add
        return self._vidx([add(a, b) for a, b in zip(self._vec(u), self._vec(v))])

    def _vscale(self, r, v):
        mul = self.ring.mul
        return self._vidx([mul(r, a) for a in self._vec(v)])

    def _build(self, max_size):
        R = self.ring
        gens = [self._vidx(row) for row in self.relations]
        gens = [g for g in gens if g != 0]
        if not gens:
            if self._cells > max_size:
                raise BoundExceeded(f"module of size {self._cells} exceeds bound {max_size}")
            self.proj = None
            self.reps = None
            self.size = self._cells
            return
        mask, members = close(
            gens,
            lambda g: sorted({self._vscale(r, g) for r in range(R.size)}),
            lambda x, ms: [self._vadd(x, s) for s in ms],
        )
        size = self._cells // len(members)
        if size > max_size:
            raise BoundExceeded(f"module of size {size} exceeds bound {max_size}")
        proj = [-1] * self._cells
        reps = []
        for v in range(self._cells):
            if proj[v] < 0:
                cid = len(reps)
                reps.append(v)
                vec = self._vec(v)
                add = R.add
                n = R.size
                for s in members:
                    i = 0
                    for a, b in zip(vec, self._vec(s)):
                        i = i * n + add(a, b)
                    proj[i] = cid
        self.proj = proj
        self.reps = reps
        self.size = len(reps)

    def __repr__(self):
        return f"FiniteModule({self.ring.spec()}, rank={self.rank}, size={self.size})"

    def __len__(self):
        return self.size

    # coset representatives

    def rep(self, i):
        return i if self.reps is None else self.reps[i]

    def class_of(self, vidx):
        return vidx if self.proj is None else self.proj[vidx]

    def vector(self, i):
        """Canonical representative of element i as a tuple of ring indices."""
        return self._vec(self.rep(i))

    def element_of(self, vec):
        """Module element of a vector of ring indices."""
        if len(vec) != self.rank:
            raise ParseError(f"vector {list(vec)} has length {len(vec)}, expected {self.rank}")
        return self.class_of(self._vidx(vec))

    @property
    def elements(self):
        return [self.vector(i) for i in range(self.size)]

    @property
    def is_zero(self):
        return self.size == 1

    # arithmetic

    @cached_property
    def add_table(self):
        if self.size > TABLE_LIMIT:
            return None
        return [[self._add(i, j) for j in range(self.size)] for i in range(self.size)]

    @cached_property
    def smul_table(self):
        if self.size * self.ring.size > TABLE_LIMIT * 64:
            return None
        return [[self._smul(r, i) for i in range(self.size)] for r in range(self.ring.size)]

    def _add(self, i, j):
        return self.class_of(self._vadd(self.rep(i), self.rep(j)))

    def _smul(self, r, i):
        return self.class_of(self._vscale(r, self.rep(i)))

    def add(self, i, j):
        t = self.add_table
        return t[i][j] if t is not None else self._add(i, j)

    def smul(self, r, i):
        t = self.smul_table
        return t[r][i] if t is not None else self._smul(r, i)

    def neg(self, i):
        return self.smul(self.ring.neg(self.ring.one), i)

    def generators(self):
        """Classes of the standard basis vectors."""
        R = self.ring
        out = []
        for j in range(self.rank):
            vec = [0] * self.rank
            vec[j] = R.one
            out.append(self.element_of(vec))
        return out

    def cyclic(self, m):
        cache = self.__dict__.setdefault("_cyclic_cache", {})
        if m not in cache:
            t = self.smul_table
            if t is not None:
                cache[m] = sorted({row[m] for row in t})
            else:
                cache[m] = sorted({self._smul(r, m) for r in range(self.ring.size)})
        return cache[m]

    def translate(self, x, members):
        t = self.add_table
        if t is not None:
            row = t[x]
            return [row[s] for s in members]
        return [self._add(x, s) for s in members]

    # serialization

    def encode(self, i):
        return [self.ring.encode(a) for a in self.vector(i)]

    def decode(self, v):
        if not isinstance(v, (list, tuple)):
            if self.rank == 1:
                v = [v]
            else:
                raise ParseError(f"module element must be an array of {self.rank} ring elements")
        return self.element_of(tuple(self.ring.decode(a) for a in v))

    def presentation(self):
        R = self.ring
        return {
            "ring": R.spec(),
            "rank": self.rank,
            "relations": [[R.encode(a) for a in row] for row in self.relations],
        }


@dataclass(frozen=True, eq=False)
class SubmoduleF:
    parent: FiniteModule
    mask: int
    gens: tuple = field(default=())

    def __eq__(self, other):
        return isinstance(other, SubmoduleF) and self.parent is other.parent and self.mask == other.mask

    def __hash__(self):
        return hash((id(self.parent), self.mask))

    def __le__(self, other):
        return self.mask & ~other.mask == 0

    def __lt__(self, other):
        return self <= other and self.mask != other.mask

    def __contains__(self, i):
        return bool((self.mask >> i) & 1)

    def __repr__(self):
        return f"SubmoduleF(size={self.size}, {[self.parent.encode(i) for i in self.elements]})"

    @cached_property
    def elements(self):
        return bits(self.mask)

    @property
    def size(self):
        return len(self.elements)

    @property
    def is_proper(self):
        return self.size < self.parent.size

    @property
    def is_zero(self):
        return self.mask == 1

    @cached_property
    def generators(self):
        """Explicit generators if given, else a greedy generating set."""
        if self.gens:
            return self.gens
        M = self.parent
        mask, members = 1, [0]
        out = []
        for m in self.elements:
            if not (mask >> m) & 1:
                out.append(m)
                mask, members = close_into(M, mask, members, m)
        return tuple(out)

    def sort_key(self):
        return (self.size, self.elements)

    def encode(self):
        return [self.parent.encode(i) for i in self.elements]


def close_into(M, mask, members, m):
    from ._lattice import join_cyclic

    return join_cyclic(mask, members, M.cyclic(m), M.translate)


def make_module(R, k, relations=(), max_size=config.MAX_MODULE):
    return FiniteModule(R, k, relations, max_size=max_size)


def submodule_generated(M, gens):
    gens = tuple(gens)
    mask, _ = close(gens, M.cyclic, M.translate)
    return SubmoduleF(M, mask, gens)


def zero_submodule(M):
    return SubmoduleF(M, 1, ())


def full_submodule(M):
    return SubmoduleF(M, (1 << M.size) - 1, tuple(M.generators()))


def submodule_from_mask(M, mask):
    return SubmoduleF(M, mask)


def all_submodules(M, max_size=config.MAX_LATTICE_MODULE, max_count=config.MAX_SUBMODULES):
    """Every submodule once, sorted by (size, element list)."""
    if M.size > max_size:
        raise BoundExceeded(f"module of size {M.size} exceeds lattice bound {max_size}")
    cache = M.__dict__.setdefault("_lattice_cache", {})
    if max_count not in cache:
        seen = enumerate_subgroups(M.size, M.cyclic, M.translate, max_count)
        subs = [SubmoduleF(M, m) for m in seen]
        subs.sort(key=SubmoduleF.sort_key)
        cache[max_count] = subs
    return list(cache[max_count])


def quotient_module(M, N):
    """M/N with ``projection`` (M index -> quotient index) and ``lift`` attached."""
    if N.parent is not M:
        raise ValueError("submodule of a different module")
    R = M.ring
    rels = list(M.relations) + [M.vector(g) for g in N.generators]
    Q = FiniteModule(R, M.rank, rels, max_size=max(M.size, 1))
    Q.source = M
    Q.projection = [Q.class_of(M.rep(i)) for i in range(M.size)]
    Q.lift = [M.class_of(Q.rep(q)) for q in range(Q.size)]
    return Q


def direct_sum(M1, M2):
    if M1.ring != M2.ring:
        raise RingMismatch(f"{M1.ring.spec()} vs {M2.ring.spec()}")
    k1, k2 = M1.rank, M2.rank
    rels = [tuple(r) + (0,) * k2 for r in M1.relations] + [(0,) * k1 + tuple(r) for r in M2.relations]
    S = FiniteModule(M1.ring, k1 + k2, rels, max_size=max(M1.size * M2.size, 1))
    inj1 = [S.element_of(M1.vector(i) + (0,) * k2) for i in range(M1.size)]
    inj2 = [S.element_of((0,) * k1 + M2.vector(i)) for i in range(M2.size)]
    S.injections = (inj1, inj2)
    return S


def image_submodule(M, indices):
    return submodule_generated(M, indices)


def ann_of_element(M, m):
    R = M.ring
    return IdealF(R, mask_of(r for r in range(R.size) if M.smul(r, m) == 0))


def annihilator(M):
    """Ann_R(M) = (0 : M)."""
    return colon_ideal(zero_submodule(M), M)


def colon_ideal(N, M=None):
    """(N : M) = {r : rM is inside N}; checking the generators of M suffices."""
    M = N.parent if M is None else M
    R = M.ring
    gens = M.generators()
    return IdealF(R, mask_of(r for r in range(R.size) if all(M.smul(r, g) in N for g in gens)))


def ideal_times_module(I, M):
    """The submodule I*M."""
    gens = {M.smul(a, g) for a in I.elements for g in M.generators()}
    return submodule_generated(M, sorted(gens))


def change_ring(M, I):
    """M as a module over R/I; requires I inside Ann_R(M)."""
    ann = annihilator(M)
    if not I <= ann:
        raise ValueError("ideal does not annihilate the module")
    Q, proj = quotient_ring(M.ring, I)
    rels = [tuple(proj[a] for a in row) for row in M.relations]
    out = FiniteModule(Q, M.rank, rels, max_size=max(M.size, 1))
    if out.size != M.size:
        raise AssertionError("transport changed the module size")
    return out


def submodule_as_module(N, max_cells=None):
    """A presentation R^t / K of the submodule N as a module in its own right."""
    M = N.parent
    R = M.ring
    gens = list(N.generators) or [0]
    t = len(gens)
    cells = R.size**t
    if cells > (max_cells or config.max_cells()):
        raise BoundExceeded(f"free cover of the submodule has {cells} vectors")
    free = FiniteModule(R, t, (), max_size=cells)
    kernel = []
    for v in range(cells):
        vec = free._vec(v)
        x = 0
        for a, g in zip(vec, gens):
            x = M.add(x, M.smul(a, g))
        if x == 0 and v:
            kernel.append(v)
    kmask, kmembers = 1, [0]
    rels = []
    for v in kernel:
        if not (kmask >> v) & 1:
            rels.append(free._vec(v))
            kmask, kmembers = close_into(free, kmask, kmembers, v)
    out = FiniteModule(R, t, rels, max_size=max(N.size, 1))
    if out.size != N.size:
        raise AssertionError("submodule presentation has the wrong size")
    return out


def module_from_json(obj, ring=None):
    """Parse {"ring": spec, "rank": k, "relations": [[...], ...]}."""
    from .rings import parse_ring

    if not isinstance(obj, dict):
        raise ParseError("module spec must be a JSON object")
    if ring is None:
        if "ring" not in obj:
            raise ParseError("module spec needs a ring")
        ring = parse_ring(obj["ring"])
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
        rows.append(tuple(ring.decode(a) for a in row))
    return FiniteModule(ring, rank, rows)


def submodule_from_json(M, obj):
    if not isinstance(obj, dict) or not isinstance(obj.get("generators", []), list):
        raise ParseError('submodule spec must be {"generators": [...]}')
    return submodule_generated(M, [M.decode(g) for g in obj.get("generators", [])])
