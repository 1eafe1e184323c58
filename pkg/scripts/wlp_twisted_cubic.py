"""Weak Lefschetz scans for powers of the duals of points on a twisted cubic.

For 31 points, k = 2 has the WLP and k = 3..5 fail from degree k-1 to k.
"""

import argparse

from unexpected.lefschetz import wlp_scan
from unexpected.pointsets import twisted_cubic_points


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--points", type=int, default=31)
    ap.add_argument("--kmax", type=int, default=5)
    args = ap.parse_args()
    Z = twisted_cubic_points(args.points)
    for k in range(2, args.kmax + 1):
        scan = wlp_scan(Z, k)
        bad = [v.degree for v in scan if v.fails]
        print(f"k={k}: " + ("WLP holds" if not bad else "fails in " + ", ".join(f"degree {i} to {i + 1}" for i in bad)))
        for v in scan:
            print(f"   {v.degree}->{v.degree + 1}: dims {v.dim_source}->{v.dim_target}, rank {v.map_rank}")


if __name__ == "__main__":
    main()
