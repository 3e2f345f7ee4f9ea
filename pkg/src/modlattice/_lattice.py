"""Bitmask closure helpers shared by ideal and submodule enumeration.

A subgroup of a finite carrier {0, ..., n-1} is a Python int used as a bitset,
paired with the list of its members.  ``translate(x, members)`` must return
``[x + s for s in members]`` as carrier indices.
"""

from .errors import BoundExceeded


def iter_bits(mask):
    i = 0
    while mask:
        if mask & 1:
            yield i
        mask >>= 1
        i += 1


def bits(mask):
    out = []
    base = 0
    while mask:
        chunk = mask & 0xFFFFFFFFFFFFFFFF
        while chunk:
            low = chunk & -chunk
            out.append(base + low.bit_length() - 1)
            chunk ^= low
        mask >>= 64
        base += 64
    return out


def mask_of(indices):
    m = 0
    for i in indices:
        m |= 1 << i
    return m


def join_cyclic(mask, members, multiples, translate):
    """Return S + Rm given S = (mask, members) and the member list of Rm.

    Both are subgroups, so the join is the union of the cosets x + S.
    """
    members = list(members)
    base = members[:]
    for x in multiples:
        if not (mask >> x) & 1:
            coset = translate(x, base)
            for y in coset:
                mask |= 1 << y
            members.extend(coset)
    return mask, members


def close(generators, cyclic, translate):
    """Smallest subgroup closed under the scalar action containing ``generators``."""
    mask, members = 1, [0]
    for g in generators:
        if not (mask >> g) & 1:
            mask, members = join_cyclic(mask, members, cyclic(g), translate)
    return mask, members


def enumerate_subgroups(n, cyclic, translate, max_count):
    """Every subobject of a carrier of size n, keyed by bitmask.

    Starts from {0} and adds one cyclic subobject at a time; every finitely
    generated subobject is reached along a chain of such joins.  Elements of a
    coset x + S all give the same join with S, so each coset is tried once.
    """
    seen = {1: [0]}
    stack = [1]
    full = (1 << n) - 1
    while stack:
        mask = stack.pop()
        if mask == full:
            continue
        members = seen[mask]
        done = mask
        for m in range(n):
            if (done >> m) & 1:
                continue
            for y in translate(m, members):
                done |= 1 << y
            new_mask, new_members = join_cyclic(mask, members, cyclic(m), translate)
            if new_mask not in seen:
                seen[new_mask] = new_members
                if len(seen) > max_count:
                    raise BoundExceeded(f"more than {max_count} subobjects")
                stack.append(new_mask)
    return seen
