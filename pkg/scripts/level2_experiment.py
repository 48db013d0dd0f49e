#!/usr/bin/env python3
"""Level-2 experiment: fit dimension rows of GL2(o/p^2) and predict GL2(Z/25).

Samples q = 2, 3, 4 (rings Z/4, Z/9, GR(4,2)) through the Clifford engine,
fits the (d_i, m_i) rows from the stratified orbit data, and checks the
prediction against the 300000-element group GL2(Z/25), which only the
Clifford engine can reach at reasonable cost.
"""

import time

from repzoo.groups import GroupScheme
from repzoo.harness import (
    compute_clifford_report,
    compute_degrees,
    fit_polynomials,
    render_fit_markdown,
)
from repzoo.localring import RingSpec


def main():
    scheme = GroupScheme("GL", 2)
    sample_specs = {
        2: RingSpec("unramified", 2, 1, 2),
        3: RingSpec("unramified", 3, 1, 2),
        4: RingSpec("unramified", 2, 2, 2),
    }
    samples = {}
    for q, spec in sample_specs.items():
        t0 = time.time()
        samples[q] = compute_clifford_report(scheme, spec)
        print(
            f"q={q}: {spec.label():14s} |G|={samples[q].degrees.sum_of_squares:>8}"
            f"  #irr={samples[q].degrees.total_count:>4}  ({time.time()-t0:.1f}s)"
        )
    t0 = time.time()
    holdout = compute_degrees(scheme, RingSpec("unramified", 5, 1, 2), "clifford")
    print(f"q=5: unram:5,1,2    |G|={holdout.sum_of_squares:>8}  #irr={holdout.total_count:>4}  ({time.time()-t0:.1f}s)")

    report = fit_polynomials(scheme, 2, samples, holdout=(5, holdout))
    print()
    print(render_fit_markdown(report))
    if not report.holdout_match:
        raise SystemExit(1)


if __name__ == "__main__":
    main()
