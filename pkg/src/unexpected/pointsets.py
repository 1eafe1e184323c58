"""Finite point configurations in projective space.

Root systems are projectivized (v and -v give one point), the E-series is cut
out of the explicit E8 list, and F4, H3, H4 are transcribed verbatim.
"""

from __future__ import annotations

import ast
import csv
import io
import itertools
import json
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, List, Sequence, Tuple, Union

from . import data
from .field import QQ, QQ_GOLDEN, QQ_OMEGA, QQ_SQRT5, FieldScalar, FieldSpec, split_rng
from .poly import SparsePoly

Coords = Tuple[FieldScalar, ...]


class PointSetError(ValueError):
    """Malformed point data; the message names the offending row."""


def canonical(coords: Sequence[FieldScalar]) -> Coords:
    """Scale so the first nonzero coordinate is 1."""
    lead = next((c for c in coords if c), None)
    if lead is None:
        raise PointSetError("the zero vector is not a projective point")
    if lead == 1:
        return tuple(coords)
    inv = lead.inv()
    return tuple(c * inv for c in coords)


@dataclass(frozen=True)
class ProjectivePoint:
    coords: Coords

    @classmethod
    def of(cls, coords: Iterable, spec: FieldSpec = QQ) -> "ProjectivePoint":
        return cls(canonical([FieldScalar.parse(c, spec) for c in coords]))

    @property
    def n(self) -> int:
        return len(self.coords) - 1

    def __iter__(self):
        return iter(self.coords)

    def __len__(self):
        return len(self.coords)

    def __getitem__(self, i):
        return self.coords[i]

    def __str__(self) -> str:
        return "[" + ":".join(str(c) for c in self.coords) + "]"


@dataclass
class PointSet:
    n: int
    field: FieldSpec
    points: List[ProjectivePoint]
    label: str = ""

    def __post_init__(self):
        seen = set()
        unique = []
        for p in self.points:
            if not isinstance(p, ProjectivePoint):
                p = ProjectivePoint.of(p, self.field)
            if p.n != self.n:
                raise PointSetError(f"point {p} does not lie in P^{self.n}")
            if any(c.spec != self.field for c in p.coords):
                raise PointSetError(f"point {p} is not over {self.field}")
            if p.coords not in seen:
                seen.add(p.coords)
                unique.append(p)
        self.points = unique

    def __len__(self) -> int:
        return len(self.points)

    def __iter__(self):
        return iter(self.points)

    def __contains__(self, p) -> bool:
        if not isinstance(p, ProjectivePoint):
            p = ProjectivePoint.of(p, self.field)
        return any(q.coords == p.coords for q in self.points)

    def union(self, other: "PointSet", label: str = "") -> "PointSet":
        return PointSet(self.n, self.field, self.points + other.points, label or f"{self.label}+{other.label}")

    # serialization

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "field": self.field.to_json(),
            "points": [[str(c) for c in p.coords] for p in self.points],
            "label": self.label,
        }

    @classmethod
    def from_json(cls, obj: dict) -> "PointSet":
        try:
            spec = FieldSpec.from_json(obj.get("field", {"kind": "rationals"}))
            n = int(obj["n"])
        except (KeyError, ValueError, TypeError) as exc:
            raise PointSetError(f"bad header: {exc}") from exc
        pts = []
        for i, row in enumerate(obj.get("points", [])):
            pts.append(_parse_row(row, spec, n, f"point {i}"))
        return cls(n, spec, pts, obj.get("label", ""))

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        for p in self.points:
            w.writerow([str(c) for c in p.coords])
        return buf.getvalue()

    @classmethod
    def from_csv(cls, text: str, spec: FieldSpec = QQ, label: str = "") -> "PointSet":
        pts = []
        n = None
        for lineno, row in enumerate(csv.reader(io.StringIO(text)), start=1):
            if not row or all(not c.strip() for c in row):
                continue
            if n is None:
                n = len(row) - 1
            pts.append(_parse_row(row, spec, n, f"row {lineno}"))
        if n is None:
            raise PointSetError("no points in CSV input")
        return cls(n, spec, pts, label)

    def save(self, path: Union[str, Path], fmt: str = "") -> None:
        path = Path(path)
        fmt = fmt or ("csv" if path.suffix == ".csv" else "json")
        if fmt == "csv":
            path.write_text(self.to_csv())
        else:
            path.write_text(json.dumps(self.to_json(), indent=1) + "\n")

    @classmethod
    def load(cls, path: Union[str, Path], fmt: str = "", spec: FieldSpec = QQ) -> "PointSet":
        path = Path(path)
        fmt = fmt or ("csv" if path.suffix == ".csv" else "json")
        text = path.read_text()
        if fmt == "csv":
            return cls.from_csv(text, spec, label=path.stem)
        try:
            obj = json.loads(text)
        except json.JSONDecodeError as exc:
            raise PointSetError(f"line {exc.lineno} column {exc.colno}: {exc.msg}") from exc
        return cls.from_json(obj)


def _parse_row(row, spec: FieldSpec, n: int, where: str) -> ProjectivePoint:
    if len(row) != n + 1:
        raise PointSetError(f"{where}: expected {n + 1} coordinates, got {len(row)}")
    coords = []
    for col, text in enumerate(row, start=1):
        try:
            coords.append(FieldScalar.parse(str(text).strip(), spec))
        except (ValueError, ZeroDivisionError) as exc:
            raise PointSetError(f"{where}, column {col}: cannot parse {text!r}") from exc
    try:
        return ProjectivePoint(canonical(coords))
    except PointSetError as exc:
        raise PointSetError(f"{where}: {exc}") from exc


# coordinate expressions such as "-(2*t+4)" or "t^2"


def eval_coordinate(expr: str, spec: FieldSpec) -> FieldScalar:
    tree = ast.parse(expr.replace("^", "**"), mode="eval")

    def ev(node):
        if isinstance(node, ast.Expression):
            return ev(node.body)
        if isinstance(node, ast.Constant) and isinstance(node.value, int):
            return FieldScalar(node.value, 0, spec)
        if isinstance(node, ast.Name) and node.id == "t":
            return spec.gen
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
            v = ev(node.operand)
            return -v if isinstance(node.op, ast.USub) else v
        if isinstance(node, ast.BinOp):
            if isinstance(node.op, ast.Pow):
                if not isinstance(node.right, ast.Constant):
                    raise ValueError("exponent must be an integer literal")
                return ev(node.left) ** node.right.value
            left, right = ev(node.left), ev(node.right)
            if isinstance(node.op, ast.Add):
                return left + right
            if isinstance(node.op, ast.Sub):
                return left - right
            if isinstance(node.op, ast.Mult):
                return left * right
            if isinstance(node.op, ast.Div):
                return left / right
        raise ValueError(f"unsupported coordinate expression {expr!r}")

    return ev(tree)


def _from_rows(rows: Sequence[str], spec: FieldSpec, label: str) -> PointSet:
    pts = [ProjectivePoint(canonical([eval_coordinate(c, spec) for c in r.split(",")])) for r in rows]
    return PointSet(len(pts[0]) - 1, spec, pts, label)


def _integer_points(vectors: Iterable[Sequence[int]], label: str) -> PointSet:
    pts = [ProjectivePoint.of(v) for v in vectors]
    return PointSet(len(pts[0]) - 1, QQ, pts, label)


# root systems


def _unit(i: int, size: int) -> List[int]:
    v = [0] * size
    v[i] = 1
    return v


def b_vectors(size: int) -> List[List[int]]:
    """Vectors e_i and e_i +- e_j, one per pair of opposite roots."""
    out = [_unit(i, size) for i in range(size)]
    for i, j in itertools.combinations(range(size), 2):
        for s in (1, -1):
            v = _unit(i, size)
            v[j] = s
            out.append(v)
    return out


def d_vectors(size: int) -> List[List[int]]:
    out = []
    for i, j in itertools.combinations(range(size), 2):
        for s in (1, -1):
            v = _unit(i, size)
            v[j] = s
            out.append(v)
    return out


def a_vectors(size: int) -> List[List[int]]:
    """Roots e_i - e_j of A in R^(size+1) with the last coordinate dropped."""
    out = []
    for i in range(size + 1):
        for j in range(size + 1):
            if i != j:
                v = [0] * (size + 1)
                v[i], v[j] = 1, -1
                out.append(v[:size])
    return out


def e8_vectors() -> List[List[int]]:
    return [[int(x) for x in r.split(",")] for r in data.E8_ROWS]


def e7_vectors() -> List[List[int]]:
    return [v[1:] for v in e8_vectors() if v[0] == v[1]]


def e6_vectors() -> List[List[int]]:
    return [v[1:] for v in e7_vectors() if v[0] == v[1]]


SYSTEMS = ("A", "B", "C", "D", "E6", "E7", "E8", "F4", "H3", "H4")
FIXED_RANK = {"E6": 6, "E7": 7, "E8": 8, "F4": 4, "H3": 3, "H4": 4}


def root_system(name: str, rank: int = 0) -> PointSet:
    """Projectivized roots; the ambient space is P^(rank-1).

    For A the rank is the number of coordinates kept after dropping the last,
    so ``root_system("A", n + 1)`` lies in P^n.
    """
    name = name.upper()
    if name not in SYSTEMS:
        raise ValueError(f"unknown root system {name!r}")
    if name in FIXED_RANK:
        if rank and rank != FIXED_RANK[name]:
            raise ValueError(f"{name} has rank {FIXED_RANK[name]}, not {rank}")
        rank = FIXED_RANK[name]
    elif rank < 2:
        raise ValueError(f"{name} needs rank at least 2")
    label = f"{name}{rank}" if name not in FIXED_RANK else name
    if name == "A":
        return _integer_points(a_vectors(rank), label)
    if name in ("B", "C"):
        return _integer_points(b_vectors(rank), f"B{rank}")
    if name == "D":
        return _integer_points(d_vectors(rank), label)
    if name == "E8":
        return _integer_points(e8_vectors(), label)
    if name == "E7":
        return _integer_points(e7_vectors(), label)
    if name == "E6":
        return _integer_points(e6_vectors(), label)
    if name == "F4":
        return _from_rows(data.F4_ROWS, QQ, label)
    if name == "H3":
        return _from_rows(data.H3_ROWS, QQ_SQRT5, label)
    return _from_rows(data.H4_ROWS, QQ_GOLDEN, label)


def fermat_supersolvable_duals() -> PointSet:
    """Duals of the 12 lines of xyz(x^3-y^3)(x^3-z^3)(y^3-z^3) over Q(omega)."""
    spec = QQ_OMEGA
    w = spec.gen
    powers = [spec.one, w, w * w]
    one, zero = spec.one, spec.zero
    pts = [(one, zero, zero), (zero, one, zero), (zero, zero, one)]
    for c in powers:
        pts.append((one, -c, zero))
        pts.append((one, zero, -c))
        pts.append((zero, one, -c))
    return PointSet(2, spec, [ProjectivePoint(canonical(p)) for p in pts], "Fermat12")


def twisted_cubic_points(count: int, seed=None) -> PointSet:
    """Points [1:t:t^2:t^3] at t = 1..count, or at seeded distinct integers."""
    if count < 1:
        raise ValueError("count must be positive")
    if seed is None:
        params = list(range(1, count + 1))
    else:
        rng = split_rng(seed, "twisted-cubic")
        params = rng.sample(range(-10 * count - 10, 10 * count + 11), count)
    pts = [ProjectivePoint.of((1, t, t * t, t ** 3)) for t in params]
    return PointSet(3, QQ, pts, f"cubic{count}")


def dualize(Z: PointSet) -> List[SparsePoly]:
    """The linear form c_0 x_0 + ... + c_n x_n for each point [c_0:...:c_n]."""
    return [SparsePoly.linear_form(p.coords, "x", Z.field) for p in Z.points]


def sign_points() -> List[Tuple[int, ...]]:
    """The eight extra base points of the B4 unexpected quartic surfaces."""
    return [
        (1, 1, 1, 1), (-1, 1, 1, 1), (1, -1, 1, 1), (1, 1, -1, 1),
        (1, 1, 1, -1), (-1, -1, 1, 1), (-1, 1, -1, 1), (1, -1, -1, 1),
    ]
