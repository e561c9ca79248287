"""Compute the first zeta zero ordinates to about a thousand digits.

    python scripts/zeros_head.py OUT [--count 9]

Takes a few minutes per zero.
"""

import argparse

import mpmath


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("out")
    parser.add_argument("--count", type=int, default=9)
    args = parser.parse_args()

    mpmath.mp.dps = 1030
    with open(args.out, "w", newline="\n") as f:
        for k in range(1, args.count + 1):
            t = mpmath.zetazero(k).imag
            f.write(mpmath.nstr(t, 1010, strip_zeros=False) + "\n")
            f.flush()
            print(k, flush=True)


if __name__ == "__main__":
    main()
