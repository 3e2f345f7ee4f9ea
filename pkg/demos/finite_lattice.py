"""Walk through the submodule lattices of a few small modules.

For each module every submodule is printed with its size and flags:
M maximal, P prime, C classical prime, R intersection of maximal submodules.
The last line per module reports the cl.Hilbert verdict, which is always true
over a finite ring.

Run with ``python3 demos/finite_lattice.py``.
"""

from modlattice import classify as C
from modlattice import finmod as F
from modlattice.rings import parse_ring


def show(ring, rank=1, relations=()):
    R = parse_ring(ring)
    M = F.make_module(R, rank, [tuple(R.decode(a) for a in row) for row in relations])
    print(f"{ring}, rank {rank}, relations {list(relations)}: {M.size} elements")
    for N in F.all_submodules(M):
        flags = ""
        if N.is_proper:
            flags += "M" if C.is_maximal_sub(M, N) else ""
            flags += "P" if C.is_prime_sub(M, N) else ""
            flags += "C" if C.is_classical_prime_def(M, N) else ""
            flags += "R" if C.is_intersection_of_maximals(M, N) else ""
        print(f"  {N.encode()!s:40} {flags}")
    minimal = [N.encode() for N in C.minimal_classical_primes(M)]
    print(f"  minimal classical primes: {minimal}")
    print(f"  radical: {C.radical_of_module(M).encode()}")
    print(f"  cl.Hilbert: {C.is_cl_hilbert(M)}\n")


if __name__ == "__main__":
    # Z/4: the zero submodule fails because 2*2*1 = 0 while 2*1 != 0.
    show("Z/4")
    # Z/6: {0} is not classical prime since (0:2) = (3) and (0:3) = (2) are incomparable.
    show("Z/6")
    # Over a field every proper subspace is prime.
    show("Z/2", rank=2)
    # A module with a nonzero radical.
    show("Z/4", rank=2, relations=[[2, 0]])
