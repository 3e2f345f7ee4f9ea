"""The submodule (p, x)*(p, x) of Z[x]^2.

Prints the non-primality witness and the radical obstruction, runs the
randomized search for classical-prime counterexamples, and then shows the same
search catching a deliberately wrong membership test.

Run with ``python3 demos/zx_witness.py [p] [samples]``.
"""

import sys

from modlattice import zx_witness as Z


def main(p=2, samples=20000):
    w = Z.not_prime_witness(p)
    r, m = w.r, w.m
    print(f"p = {p}")
    print(f"  r = {Z.to_str(r)}, m = ({Z.to_str(m[0])}, {Z.to_str(m[1])})")
    print(f"  r*m in P(p,x): {w.rm_in_p}; m in P(p,x): {not w.m_not_in_p}; r*(1,0) in P(p,x): {not w.probe_not_in_p}")
    obs = Z.radical_obstruction(p)
    print(f"  (p,x) in (p,x)*Z[x]^2: {obs.in_ideal_times_module}; (p,x) in P(p,x): {not obs.not_in_submodule}")

    result = Z.classical_prime_falsify(p, samples, 4, 9, seed=p)
    print(f"  search over {samples} samples: {result.to_json()}")

    broken = Z.classical_prime_falsify(p, 1000, 4, 9, seed=p, ideal_member=Z.in_ideal_p2x)
    if isinstance(broken, Z.Counterexample):
        v = broken.v
        print(f"  with (p^2, x) in place of (p, x) the search fails at sample {broken.sample}:")
        print(f"    r = {Z.to_str(broken.r)}, s = {Z.to_str(broken.s)}, v = ({Z.to_str(v[0])}, {Z.to_str(v[1])})")


if __name__ == "__main__":
    args = [int(a) for a in sys.argv[1:3]]
    main(*args)
