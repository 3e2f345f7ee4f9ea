"""Classical primes of finitely generated modules over a PID.

Shows the shape criterion on Z^2, samples classical primes and splits a mixed
one into two primes, and contrasts Z with the local ring Z_(3), where a free
module is not cl.Hilbert.

Run with ``python3 demos/pid_classical_primes.py``.
"""

import random

from modlattice import euclid as E
from modlattice.domains import Integers, LocalIntegers

Z = Integers()


def describe(M, P):
    rec = E.classify_fg(M, P)
    gens = [list(g) for g in P.generators]
    print(f"  P = span{gens}: shape {rec['shape']}, classical prime {rec['classicalPrime']}, prime {rec['prime']}")


def shapes_on_z2():
    print("Submodules of Z^2")
    M = E.PresentedModule(Z, 2)
    for gens in ([(5, 0)], [(4, 0)], [(3, 0), (0, 3)], [(2, 3)], [(2, 0), (0, 3)]):
        describe(M, M.submodule(gens))
    print()


def split_a_mixed_prime():
    print("A mixed classical prime as the meet of two primes")
    rng = random.Random(4)
    while True:
        M = E.random_module(Z, rng, max_rank=3, min_free=2)
        P = E.sample_classical_prime(M, rng, free_rank=1, torsion_rank=1)
        if P is not None:
            break
    print(f"  M = Z^{M.rank} / {[list(r) for r in M.relations]}")
    describe(M, P)
    P1, P2 = E.prime_cover_of_classical_prime(M, P)
    describe(M, P1)
    describe(M, P2)
    print(f"  P1 meet P2 equals P: {E.equal(M, E.intersection(M, P1, P2), P)}\n")


def local_contrast():
    print("Z versus Z_(3)")
    for D in (Z, LocalIntegers(3)):
        M = E.PresentedModule(D, 1)
        v = E.is_cl_hilbert_fg(M)
        print(f"  {D.spec()}: cl.Hilbert {v.value} ({v.tag}: {v.reason})")
        if v.witness is not None:
            print(f"    witness {v.witness.to_json()}, radical {v.radical.to_json(D)['generators']}")
    T = E.module_from_json({"domain": "Zloc(3)", "rank": 2, "relations": [["9", "0"], ["0", "3"]]})
    print(f"  Zloc(3) torsion module Z/9 + Z/3: cl.Hilbert {E.is_cl_hilbert_fg(T).value}")


if __name__ == "__main__":
    shapes_on_z2()
    split_a_mixed_prime()
    local_contrast()
