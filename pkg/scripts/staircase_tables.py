"""Write plot tables for the standard partition pictures of [0, 1]_k.

Produces, in the output directory:

* ``diagonal_squares.dat`` and ``stairs.dat``: rectangles as ``lo_e1 lo_e2 hi_e1 hi_e2``
* ``lift_<strategy>.dat``: the strong partition lifted from thirds and fifths
"""
import argparse
from fractions import Fraction
from pathlib import Path

from hyperk.hypnum import Hyp
from hyperk.interval import HypInterval
from hyperk.partition import STRATEGIES, IntervalCollection, check_regular, check_weak, gen_strong

T = Fraction(1, 3)
UNIT = HypInterval(Hyp(0, 0), Hyp(1, 1))


def box(lo, hi):
    return HypInterval(Hyp(*lo), Hyp(*hi))


COLLECTIONS = {
    "diagonal_squares": [box((0, 0), (T, T)), box((T, T), (2 * T, 2 * T)), box((2 * T, 2 * T), (1, 1))],
    "stairs": [box((0, 0), (T, T)), box((T, T), (2 * T, T)), box((2 * T, T), (2 * T, 2 * T)),
               box((2 * T, 2 * T), (1, 1))],
}


def write(path, header, rows):
    with open(path, "w") as fh:
        fh.write("# " + " ".join(header) + "\n")
        for row in rows:
            fh.write(" ".join(repr(float(v)) for v in row) + "\n")


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out", default="plot_data")
    args = ap.parse_args(argv)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)

    for name, pieces in COLLECTIONS.items():
        coll = IntervalCollection(UNIT, pieces)
        rows = [(p.lo.a1, p.lo.a2, p.hi.a1, p.hi.a2) for p in pieces]
        write(out / f"{name}.dat", ["lo_e1", "lo_e2", "hi_e1", "hi_e2"], rows)
        print(f"{name:18s} weak={bool(check_weak(coll))} regular={bool(check_regular(coll))}")

    P = [Fraction(k, 3) for k in range(4)]
    Q = [Fraction(k, 5) for k in range(6)]
    for strategy in STRATEGIES:
        part = gen_strong(P, Q, strategy, seed=0)
        write(out / f"lift_{strategy}.dat", ["e1", "e2"], [(p.a1, p.a2) for p in part.points])
        print(f"lift_{strategy:14s} {len(part)} points")


if __name__ == "__main__":
    main()
