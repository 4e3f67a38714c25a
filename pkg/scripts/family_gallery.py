"""Invariant tables and level intervals for the two intersection families.

For each n this prints the invariant report of

  family A:  R = k[x1..xn],                      I = (x1) meet (x2..xn)
  family B:  R = k[x1..xn]/((x1) meet (x2..xn)), I = (x2..xn)

followed by the certified level intervals of the complexes that
separate the bounds: K(x1) measured against the intersection ideal,
K(gens I) with its dimension-gap certificate, and the endomorphism
complex hom(K(x1), K(x1)) over the family B quotient.

Usage: python3 scripts/family_gallery.py [--nmin 3] [--nmax 5] [--char 101]
"""

import argparse

from levelbounds.complexes import hom_complex, koszul_complex
from levelbounds.groebner import ideal, ideal_intersection
from levelbounds.invariants import invariant_report
from levelbounds.level import level_interval
from levelbounds.polys import PolyRing
from levelbounds.rings import QuotientRing

FIELDS = [
    "dim_R", "depth_R", "edim", "dim_RmodI", "depth_I",
    "height", "bigheight", "lech_independent", "frank_conormal", "is_psop",
]


def gallery_row(rep):
    d = rep.as_dict()
    return [str(d[f]) if d[f] is not None else "-" for f in FIELDS]


def print_table(title, rows):
    print(f"\n{title}")
    header = ["n"] + FIELDS
    widths = [max(len(h), max((len(r[i]) for r in rows), default=0))
              for i, h in enumerate(header)]
    line = "  ".join(h.ljust(w) for h, w in zip(header, widths))
    print(line)
    print("-" * len(line))
    for r in rows:
        print("  ".join(c.ljust(w) for c, w in zip(r, widths)))


def print_interval(rep):
    flag = "exact" if rep.exact else "open"
    certs = ", ".join(f"{c.kind}={c.value}" for c in rep.certificates)
    print(f"  {rep.label:<34} [{rep.lower}, {rep.upper}] {flag}  ({certs})")


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--nmin", type=int, default=3)
    ap.add_argument("--nmax", type=int, default=5)
    ap.add_argument("--char", type=int, default=101)
    args = ap.parse_args()

    rows_a, rows_b = [], []
    intervals = []
    for n in range(args.nmin, args.nmax + 1):
        P = PolyRing(n, args.char)
        xs = P.variables()
        meet = ideal_intersection(ideal(P, [xs[0]]), ideal(P, list(xs[1:])))
        R_free = QuotientRing.free(P)
        RB = QuotientRing(meet)
        tail = ideal(P, list(xs[1:]))

        rows_a.append([str(n)] + gallery_row(
            invariant_report(R_free, I=meet, seq=list(meet.gens))))
        rows_b.append([str(n)] + gallery_row(
            invariant_report(RB, I=tail, seq=list(tail.gens))))

        K1 = koszul_complex([xs[0]], R_free)
        Kg = koszul_complex(list(meet.gens), R_free)
        Kq = koszul_complex([xs[0]], RB)
        intervals.append((n, [
            level_interval(K1, I=meet, label=f"koszul(x1) vs meet, n={n}"),
            level_interval(Kg, I=meet, label=f"koszul(gens meet), n={n}"),
            level_interval(hom_complex(Kq, Kq), label=f"hom self over quotient, n={n}"),
        ]))

    print_table("family A: free ring, intersection ideal", rows_a)
    print_table("family B: intersection quotient, tail ideal", rows_b)

    print("\nlevel intervals")
    for n, reps in intervals:
        for rep in reps:
            print_interval(rep)


if __name__ == "__main__":
    main()
