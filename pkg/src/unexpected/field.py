"""Exact scalars over the rationals and over quadratic fields Q[t]/(t^2 - p t - q).

Every value is immutable.  Rationals are kept as :class:`fractions.Fraction`,
which already stores lowest terms with a positive denominator.
"""

from __future__ import annotations

import hashlib
import random
from dataclasses import dataclass
from fractions import Fraction
from math import isqrt
from typing import Union

DEFAULT_BOUND = 2**31


class FieldMismatchError(ValueError):
    """Raised when operands live in different fields."""


def parse_rational(text: Union[str, int, Fraction]) -> Fraction:
    if isinstance(text, Fraction):
        return text
    if isinstance(text, int):
        return Fraction(text)
    s = str(text).strip()
    if not s:
        raise ValueError("empty rational")
    return Fraction(s)


def format_rational(r: Fraction) -> str:
    if r.denominator == 1:
        return str(r.numerator)
    return f"{r.numerator}/{r.denominator}"


def _is_rational_square(r: Fraction) -> bool:
    if r < 0:
        return False
    n, d = r.numerator, r.denominator
    return isqrt(n) ** 2 == n and isqrt(d) ** 2 == d


@dataclass(frozen=True)
class FieldSpec:
    """Either the rationals or Q[t]/(t^2 - p*t - q)."""

    kind: str = "rationals"
    p: Fraction = Fraction(0)
    q: Fraction = Fraction(0)

    def __post_init__(self):
        if self.kind not in ("rationals", "quadratic"):
            raise ValueError(f"unknown field kind {self.kind!r}")
        object.__setattr__(self, "p", parse_rational(self.p))
        object.__setattr__(self, "q", parse_rational(self.q))
        if self.kind == "rationals":
            if self.p or self.q:
                raise ValueError("the rationals take no minimal polynomial")
        elif _is_rational_square(self.discriminant):
            raise ValueError(
                f"t^2 - ({self.p})t - ({self.q}) is reducible over Q"
            )

    @classmethod
    def quadratic(cls, p, q) -> "FieldSpec":
        return cls("quadratic", parse_rational(p), parse_rational(q))

    @property
    def is_quadratic(self) -> bool:
        return self.kind == "quadratic"

    @property
    def discriminant(self) -> Fraction:
        return self.p * self.p + 4 * self.q

    def __call__(self, c0=0, c1=0) -> "FieldScalar":
        return FieldScalar(c0, c1, self)

    @property
    def zero(self) -> "FieldScalar":
        return FieldScalar(0, 0, self)

    @property
    def one(self) -> "FieldScalar":
        return FieldScalar(1, 0, self)

    @property
    def gen(self) -> "FieldScalar":
        if not self.is_quadratic:
            raise ValueError("the rationals have no generator t")
        return FieldScalar(0, 1, self)

    def parse(self, text: str) -> "FieldScalar":
        return FieldScalar.parse(text, self)

    def to_json(self) -> dict:
        if not self.is_quadratic:
            return {"kind": "rationals"}
        return {
            "kind": "quadratic",
            "p": format_rational(self.p),
            "q": format_rational(self.q),
        }

    @classmethod
    def from_json(cls, obj: dict) -> "FieldSpec":
        kind = obj.get("kind")
        if kind == "rationals":
            return QQ
        if kind == "quadratic":
            return cls.quadratic(obj["p"], obj["q"])
        raise ValueError(f"unknown field kind {kind!r}")

    def __str__(self) -> str:
        if not self.is_quadratic:
            return "QQ"
        return f"QQ[t]/(t^2-({format_rational(self.p)})t-({format_rational(self.q)}))"


QQ = FieldSpec()
# sqrt(5), the golden ratio and a primitive cube root of unity
QQ_SQRT5 = FieldSpec.quadratic(0, 5)
QQ_GOLDEN = FieldSpec.quadratic(1, 1)
QQ_OMEGA = FieldSpec.quadratic(-1, -1)


class FieldScalar:
    """The element c0 + c1*t of a :class:`FieldSpec`."""

    __slots__ = ("c0", "c1", "spec")

    def __init__(self, c0=0, c1=0, spec: FieldSpec = QQ):
        c0 = c0 if type(c0) is Fraction else Fraction(c0)
        c1 = c1 if type(c1) is Fraction else Fraction(c1)
        if c1 and not spec.is_quadratic:
            raise ValueError("nonzero t-component over the rationals")
        self.c0 = c0
        self.c1 = c1
        self.spec = spec

    # construction helpers

    @classmethod
    def parse(cls, text, spec: FieldSpec = QQ) -> "FieldScalar":
        """Parse ``"3/2"``, ``"-1"`` or ``"(c0)+(c1)t"``."""
        if isinstance(text, FieldScalar):
            return text._check(spec)
        if isinstance(text, (int, Fraction)):
            return cls(text, 0, spec)
        s = str(text).replace(" ", "")
        if s.endswith("t") and s.startswith("("):
            head, sep, tail = s.rpartition(")+(")
            if not sep or not tail.endswith(")t"):
                raise ValueError(f"cannot parse field element {text!r}")
            return cls(parse_rational(head[1:]), parse_rational(tail[:-2]), spec)
        return cls(parse_rational(s), 0, spec)

    def _check(self, spec: FieldSpec) -> "FieldScalar":
        if self.spec is not spec and self.spec != spec:
            raise FieldMismatchError(f"{self.spec} vs {spec}")
        return self

    def _coerce(self, other) -> "FieldScalar":
        if isinstance(other, FieldScalar):
            if other.spec is not self.spec and other.spec != self.spec:
                raise FieldMismatchError(f"{self.spec} vs {other.spec}")
            return other
        if isinstance(other, (int, Fraction)):
            return FieldScalar(other, 0, self.spec)
        return NotImplemented

    # arithmetic

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FieldScalar(self.c0 + o.c0, self.c1 + o.c1, self.spec)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FieldScalar(self.c0 - o.c0, self.c1 - o.c1, self.spec)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o - self

    def __neg__(self):
        return FieldScalar(-self.c0, -self.c1, self.spec)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        a, b, c, d = self.c0, self.c1, o.c0, o.c1
        if not b and not d:
            return FieldScalar(a * c, 0, self.spec)
        bd = b * d
        spec = self.spec
        return FieldScalar(a * c + bd * spec.q, a * d + b * c + bd * spec.p, spec)

    __rmul__ = __mul__

    def conj(self) -> "FieldScalar":
        """Image under t -> p - t, the other root of the minimal polynomial."""
        return FieldScalar(self.c0 + self.c1 * self.spec.p, -self.c1, self.spec)

    def norm(self) -> Fraction:
        if not self.c1:
            return self.c0 * self.c0
        return (self * self.conj()).c0

    def inv(self) -> "FieldScalar":
        if not self:
            raise ZeroDivisionError("inverse of zero")
        if not self.c1:
            return FieldScalar(1 / self.c0, 0, self.spec)
        nrm = self.norm()
        cj = self.conj()
        return FieldScalar(cj.c0 / nrm, cj.c1 / nrm, self.spec)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * o.inv()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o * self.inv()

    def __pow__(self, e: int):
        if e < 0:
            return self.inv() ** (-e)
        result = FieldScalar(1, 0, self.spec)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    # comparisons and hashing

    def __bool__(self) -> bool:
        return bool(self.c0) or bool(self.c1)

    def __eq__(self, other) -> bool:
        if isinstance(other, FieldScalar):
            return self.c0 == other.c0 and self.c1 == other.c1 and self.spec == other.spec
        if isinstance(other, (int, Fraction)):
            return not self.c1 and self.c0 == other
        return NotImplemented

    def __hash__(self) -> int:
        if not self.c1:
            return hash(self.c0)
        return hash((self.c0, self.c1))

    @property
    def is_rational(self) -> bool:
        return not self.c1

    def __str__(self) -> str:
        if not self.spec.is_quadratic:
            return format_rational(self.c0)
        if not self.c1:
            return format_rational(self.c0)
        return f"({format_rational(self.c0)})+({format_rational(self.c1)})t"

    def __repr__(self) -> str:
        return f"FieldScalar({self})"


# deterministic randomness


def split_rng(seed: int, *key) -> random.Random:
    """A PRNG determined by ``seed`` and a task key, independent of call order."""
    material = repr((int(seed),) + tuple(key)).encode()
    digest = hashlib.blake2b(material, digest_size=16).digest()
    return random.Random(int.from_bytes(digest, "big"))


def sample_nonzero(seed: int, bound: int = DEFAULT_BOUND, spec: FieldSpec = QQ) -> FieldScalar:
    """A reproducible integer in [1, bound], embedded in ``spec``."""
    if bound < 2:
        raise ValueError("bound must be at least 2")
    return FieldScalar(split_rng(seed, "sample").randint(1, bound), 0, spec)
