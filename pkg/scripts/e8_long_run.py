"""E7 and E8 scans for d <= 6, resumable through a JSON-lines store.

The hard cells take minutes each in hybrid mode; --mode probabilistic
skips the kernel certificates.
"""

import argparse
import time

from unexpected import golden
from unexpected.detector import DetectConfig, ResultStore, detect
from unexpected.pointsets import root_system


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--systems", nargs="+", default=["E7", "E8"])
    ap.add_argument("--mode", default="hybrid", choices=["symbolic", "probabilistic", "hybrid"])
    ap.add_argument("--store", default="e_scans.jsonl")
    ap.add_argument("--dmax", type=int, default=6)
    args = ap.parse_args()
    store = ResultStore(args.store)
    cfg = DetectConfig(mode=args.mode)
    for name in args.systems:
        Z = root_system(name)
        found = []
        for d in range(2, args.dmax + 1):
            for m in range(2, d + 1):
                t0 = time.time()
                c = store.get(Z.label, d, m, cfg.mode, cfg.seed)
                if c is None:
                    c = detect(Z, d, m, cfg)
                    store.put(c)
                print(f"{name} {c.tuple} {'UNEXPECTED' if c.unexpected else 'expected':10s} "
                      f"{c.certificate} {time.time() - t0:.1f}s", flush=True)
                if c.unexpected:
                    found.append(c.tuple)
        diff = golden.diff(found, golden.SCANS[name.lower()][3])
        print(name, "match" if not diff["missing"] and not diff["extra"] else f"mismatch {diff}")


if __name__ == "__main__":
    main()
