"""Classify the nine-square collection of the unit interval and print the verdicts.

    python3 scripts/nine_squares.py [path/to/collection.json]
"""
import json
import sys
from pathlib import Path

from hyperk.partition import IntervalCollection, check_regular, check_weak

DEFAULT = Path(__file__).resolve().parent.parent / "data" / "nine_squares.json"


def main(path=DEFAULT):
    coll = IntervalCollection.from_json(json.loads(Path(path).read_text()))
    reg = check_regular(coll)
    weak = check_weak(coll)
    print(f"pieces          {len(coll.pieces)}")
    print(f"regular         {reg.regular} ({reg.reason or 'exact tiling'})")
    print(f"covered area    {reg.covered_area} of {reg.parent_area}")
    print(f"length sum      {weak.length_sum}")
    print(f"parent length   {weak.parent_length}")
    print(f"weak            {weak.weak} (deficit {weak.deficit})")


if __name__ == "__main__":
    main(*sys.argv[1:])
