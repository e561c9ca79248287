"""Extract Odlyzko's table of zeta zero ordinates to a text file.

The table ships inside the passagemath ``database_odlyzko_zeta`` wheel as a
zlib-compressed pickle of floats. Each ordinate is written with nine
decimals, one per line.

    python scripts/extract_zero_table.py WHEEL OUT [--count N]
"""

import argparse
import pickle
import zipfile
import zlib

MEMBER = "sage_wheels/share/odlyzko/zeros.sobj"


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("wheel", help="passagemath_database_odlyzko_zeta-*.whl")
    parser.add_argument("out", help="output text file")
    parser.add_argument("--count", type=int, default=None, help="keep only the first N ordinates")
    args = parser.parse_args()

    with zipfile.ZipFile(args.wheel) as wheel:
        zeros = pickle.loads(zlib.decompress(wheel.read(MEMBER)))
    if args.count is not None:
        zeros = zeros[: args.count]
    with open(args.out, "w", newline="\n") as f:
        for t in zeros:
            f.write(f"{t:.9f}\n")
    print(f"wrote {len(zeros)} ordinates, last {zeros[-1]:.9f}")


if __name__ == "__main__":
    main()
