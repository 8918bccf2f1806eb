"""Print isotypic multiplicity tables for the cataloged groups."""

import argparse

from symsos.groups import catalog
from symsos.molien import dimension_table


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--groups", default="dihedral:4,cyclic:4,symmetric:4",
                        help="comma-separated catalog specs")
    parser.add_argument("--dmax", type=int, default=10)
    args = parser.parse_args()
    for spec in args.groups.split(","):
        cat = catalog(spec)
        table = dimension_table(cat, args.dmax)
        print(f"\n{spec}  (order {cat.action.order})")
        width = max(len(k) for k in table)
        print(" " * (width + 1) + "".join(f"{d:>5}" for d in range(args.dmax + 1)))
        for label in [r.label for r in cat.irreps] + ["total"]:
            print(f"{label:<{width}} " +
                  "".join(f"{v:>5}" for v in table[label]))


if __name__ == "__main__":
    main()
