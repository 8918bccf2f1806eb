"""Block-size savings for even forms, computed from exact multiplicity series.

Prints, for a range of variable counts and form degrees, the unreduced Gram
dimension next to the census of reduced blocks (size, count).  No SDP is
solved; everything follows from the sign-character multiplicity series
s^r / (1 - s^2)^n.
"""

import math

from symsos.molien import even_form_block_census


def main():
    print(f"{'n':>3} {'deg':>4} {'unreduced':>10}   reduced blocks (size x count)")
    for n, degree in [(4, 6), (6, 6), (8, 6), (10, 6), (6, 8), (10, 8), (12, 8)]:
        half = degree // 2
        unreduced = math.comb(n + half - 1, half)
        census = even_form_block_census(n, degree)
        parts = " + ".join(f"{count} x {size}x{size}" for size, count in census)
        print(f"{n:>3} {degree:>4} {unreduced:>7}^2    {parts}")


if __name__ == "__main__":
    main()
