"""Reference tuples (n, d, m, edim, adim) of unexpected cells from the root-system scans."""

from __future__ import annotations

from typing import Dict, List, Tuple

Cell = Tuple[int, int, int, int, int]

# B_{n+1}, n = 2..6, d and m in 2..6
TABLE1: List[Cell] = [
    (2, 4, 3, 0, 1),
    (3, 4, 4, -1, 1),
    (4, 4, 4, 10, 11),
    (5, 3, 3, -1, 5),
    (5, 4, 4, 34, 35),
    (6, 3, 3, 7, 14),
    (6, 4, 4, 77, 78),
]

D4: List[Cell] = [(3, 3, 3, -2, 1), (3, 4, 4, 3, 4)]

# d in 2..10
F4: List[Cell] = [(3, 4, 3, 2, 4), (3, 4, 4, -8, 1), (3, 5, 5, -3, 3), (3, 6, 6, 4, 7), (3, 7, 7, 12, 13)]

# d in 2..8 over t^2 = 5
H3: List[Cell] = [(2, 6, 5, -2, 1), (2, 7, 6, 0, 2), (2, 8, 7, 2, 3)]

# d in 2..6 over t^2 = t + 1
H4: List[Cell] = [(3, 6, 3, 14, 15), (3, 6, 4, 4, 9), (3, 6, 5, -11, 4), (3, 6, 6, -32, 1)]

E7: List[Cell] = [(6, 4, 4, 63, 64)]

E8: List[Cell] = [(7, 4, 3, 174, 175), (7, 4, 4, 90, 99), (7, 5, 5, 342, 343)]

# ten points on a twisted cubic: the cone over the curve
TWISTED_CUBIC_10: List[Cell] = [(3, 3, 3, 0, 1)]

# search ranges that produced the lists above: (system, ranks, d range)
SCANS: Dict[str, Tuple[str, Tuple[int, ...], range, List[Cell]]] = {
    "table1": ("B", (3, 4, 5, 6, 7), range(2, 7), TABLE1),
    "a": ("A", (3, 4, 5, 6, 7), range(2, 7), []),
    "d4": ("D", (4,), range(2, 7), D4),
    "f4": ("F4", (4,), range(2, 11), F4),
    "h3": ("H3", (3,), range(2, 9), H3),
    "h4": ("H4", (4,), range(2, 7), H4),
    "e6": ("E6", (6,), range(2, 7), []),
    "e7": ("E7", (7,), range(2, 7), E7),
    "e8": ("E8", (8,), range(2, 7), E8),
}


def diff(found: List[Cell], expected: List[Cell]) -> Dict[str, List[Cell]]:
    """Structural comparison of tuple lists."""
    f, e = set(found), set(expected)
    return {"missing": sorted(e - f), "extra": sorted(f - e)}


# the unexpected quartic of the B3 configuration, reference form
B3_QUARTIC = (
    "1*a2^3*x0^3*x1 + -1*a2^3*x0*x1^3 + -1*a1^3*x0^3*x2"
    " + 3*a0*a1^2*x0^2*x1*x2 + -3*a0*a2^2*x0^2*x1*x2"
    " + -3*a0^2*a1*x0*x1^2*x2 + 3*a1*a2^2*x0*x1^2*x2"
    " + 1*a0^3*x1^3*x2 + 3*a0^2*a2*x0*x1*x2^2 + -3*a1^2*a2*x0*x1*x2^2"
    " + 1*a1^3*x0*x2^3 + -1*a0^3*x1*x2^3"
)
