"""Unexpected cells of one root system, with per-cell timing and certificate kind.

    python scripts/root_system_scan.py F4 --dmax 10
    python scripts/root_system_scan.py D --rank 5 --dmax 6 --csv d5.csv
"""

import argparse
import time

from unexpected.cli import cells_csv
from unexpected.detector import DetectConfig, detect
from unexpected.pointsets import root_system


def main():
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("system")
    ap.add_argument("--rank", type=int, default=0)
    ap.add_argument("--dmin", type=int, default=2)
    ap.add_argument("--dmax", type=int, default=6)
    ap.add_argument("--mode", default="hybrid", choices=["symbolic", "probabilistic", "hybrid"])
    ap.add_argument("--all", action="store_true", help="print expected cells too")
    ap.add_argument("--csv")
    args = ap.parse_args()
    Z = root_system(args.system, args.rank)
    print(f"{Z.label}: {len(Z)} points in P^{Z.n}")
    cfg = DetectConfig(mode=args.mode)
    cells = []
    for d in range(args.dmin, args.dmax + 1):
        for m in range(2, d + 1):
            t0 = time.time()
            c = detect(Z, d, m, cfg)
            cells.append(c)
            if c.unexpected or args.all:
                how = c.details.get("rank_n", {}).get("how", "")
                flag = "UNEXPECTED" if c.unexpected else ""
                print(f"{c.tuple}  {c.certificate:13s} {how:40s} {time.time() - t0:6.1f}s  {flag}")
    if args.csv:
        with open(args.csv, "w") as fh:
            fh.write(cells_csv(cells))


if __name__ == "__main__":
    main()
