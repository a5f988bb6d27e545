#!/usr/bin/env python3
"""Tabulate v_P(U_{P,d}(1)) around the cutoff D(s), to see how tight the bound is.

    python3 scripts/measure_tail_bound.py --q 3 --max-deg 2 --s 0 1 --extra 2
"""

import argparse

from carlitz_goss.algebra import enumerate_monics, field_for_q, is_irreducible
from carlitz_goss.rings import RingDescriptor
from carlitz_goss.zeta import ZetaConfig, lemma2_cutoff, measured_valuations


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--q", type=int, default=3)
    ap.add_argument("--max-deg", type=int, default=2)
    ap.add_argument("--s", type=int, nargs="+", default=[0, 1])
    ap.add_argument("--below", type=int, default=2, help="degrees below D(s) to include")
    ap.add_argument("--extra", type=int, default=2, help="degrees above D(s) to include")
    ap.add_argument("--workers", type=int, default=None)
    args = ap.parse_args()

    ring = RingDescriptor(args.q)
    F = field_for_q(args.q)
    config = ZetaConfig.from_env(args.workers)
    print(f"{'P':>12} {'s':>2} {'D':>3} {'target':>6}  valuations (d: v, capped at target)")
    for deg in range(1, args.max_deg + 1):
        for P in (f for f in enumerate_monics(F, deg) if is_irreducible(f)):
            for s in args.s:
                D = lemma2_cutoff(ring, P, s)
                target = args.q ** (s + 1)
                lo = max(0, D - args.below)
                vals = measured_valuations(ring, 1, P, range(lo, D + args.extra + 1), target, config)
                cells = " ".join(f"{d}{'*' if d >= D else ''}:{v}" for d, v in vals.items())
                print(f"{str(P):>12} {s:>2} {D:>3} {target:>6}  {cells}")
    print("* marks d >= D(s), where the bound is claimed")


if __name__ == "__main__":
    main()
