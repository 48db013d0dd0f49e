#!/usr/bin/env python3
"""Scan ring families at a fixed residue cardinality and compare degree multisets.

For each q and level r in the configured grid, computes dimirr over every ring
kind available at that (q, r) -- unramified, equal characteristic, and the tame
Eisenstein quotients -- and reports whether the multisets agree, as the
dimension-preserving-bijection prediction says they must.
"""

from repzoo.groups import GroupScheme
from repzoo.harness import compare_rings
from repzoo.localring import RingSpec


def specs_for(p, f, r):
    out = [RingSpec("unramified", p, f, r), RingSpec("eqchar", p, f, r)]
    for e in (2, 3):
        if e >= r and p % e and e % p:
            out.append(RingSpec("eisenstein", p, f, r, e))
    return out


def main():
    scheme = GroupScheme("GL", 2)
    failures = 0
    for p, f, r in [(2, 1, 2), (3, 1, 2), (5, 1, 2)]:
        family = specs_for(p, f, r)
        baseline = family[0]
        for other in family[1:]:
            rep = compare_rings(scheme, baseline, other)
            verdict = "equal" if rep.equal else f"DIFFER {rep.diff}"
            print(f"GL2: {baseline.label():16s} vs {other.label():16s} -> {verdict}")
            failures += 0 if rep.equal else 1
    if failures:
        raise SystemExit(1)


if __name__ == "__main__":
    main()
