"""Scan the B_{n+1} root systems for n = 2..6, d, m in 2..6, and compare with the reference cells."""

import argparse
import time

from unexpected import golden
from unexpected.detector import DetectConfig, search
from unexpected.pointsets import root_system


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--mode", default="hybrid", choices=["symbolic", "probabilistic", "hybrid"])
    ap.add_argument("--threads", type=int, default=1)
    args = ap.parse_args()
    system, ranks, d_range, expected = golden.SCANS["table1"]
    found = []
    for r in ranks:
        t0 = time.time()
        cells = search(root_system(system, r), d_range, config=DetectConfig(mode=args.mode), threads=args.threads)
        hits = [c for c in cells if c.unexpected]
        found += [c.tuple for c in hits]
        for c in hits:
            print(f"B{r}  {c.tuple}  {c.certificate}")
        print(f"B{r}: {len(cells)} cells, {time.time() - t0:.1f}s")
    diff = golden.diff(found, expected)
    print("match" if not diff["missing"] and not diff["extra"] else f"mismatch {diff}")


if __name__ == "__main__":
    main()
