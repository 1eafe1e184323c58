"""Sparse bi-graded polynomials in the blocks a_0..a_n and x_0..x_n.

A term is keyed by ``(a_exp, x_exp)``.  The canonical order is graded
lexicographic on the x-block followed by the a-block, with x_0 > x_1 > ...
and a_0 > a_1 > ...; for bi-homogeneous polynomials this is plain lex on x,
then lex on a.
"""

from __future__ import annotations

from itertools import combinations_with_replacement
from math import comb
from typing import Dict, Iterable, List, Mapping, Optional, Tuple

from .field import QQ, FieldScalar, FieldSpec
from .gcd import DPoly, d_exact_div, gcd_list

Exp = Tuple[int, ...]
Key = Tuple[Exp, Exp]
Var = Tuple[str, int]


class PolyMismatchError(ValueError):
    """Raised when polynomials with different n or field are combined."""


def monomials(nvars: int, deg: int) -> List[Exp]:
    """All exponent vectors of total degree ``deg``, descending lex order."""
    if deg < 0:
        return []
    out = []
    for combo in combinations_with_replacement(range(nvars), deg):
        e = [0] * nvars
        for i in combo:
            e[i] += 1
        out.append(tuple(e))
    return out


def monomials_upto(nvars: int, deg: int) -> List[Exp]:
    out = []
    for k in range(deg, -1, -1):
        out.extend(monomials(nvars, k))
    return out


def order_key(key: Key):
    a, x = key
    return (sum(a) + sum(x), x, a)


def _add_exp(e: Exp, f: Exp) -> Exp:
    return tuple(i + j for i, j in zip(e, f))


class SparsePoly:
    """Immutable polynomial with terms ``{(a_exp, x_exp): coefficient}``."""

    __slots__ = ("n", "field", "terms", "_hash")

    def __init__(self, n: int, field: FieldSpec = QQ, terms: Optional[Mapping[Key, FieldScalar]] = None):
        self.n = n
        self.field = field
        clean: Dict[Key, FieldScalar] = {}
        if terms:
            width = n + 1
            for (a, x), c in terms.items():
                if not isinstance(c, FieldScalar):
                    c = FieldScalar(c, 0, field)
                elif c.spec is not field and c.spec != field:
                    raise PolyMismatchError("coefficient field mismatch")
                if len(a) != width or len(x) != width:
                    raise ValueError("exponent vector has the wrong length")
                if c:
                    clean[(tuple(a), tuple(x))] = c
        self.terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, n: int, field: FieldSpec, terms: Dict[Key, FieldScalar]) -> "SparsePoly":
        obj = cls.__new__(cls)
        obj.n = n
        obj.field = field
        obj.terms = terms
        obj._hash = None
        return obj

    # constructors

    @classmethod
    def zero(cls, n: int, field: FieldSpec = QQ) -> "SparsePoly":
        return cls._raw(n, field, {})

    @classmethod
    def constant(cls, c, n: int, field: FieldSpec = QQ) -> "SparsePoly":
        z = (0,) * (n + 1)
        c = c if isinstance(c, FieldScalar) else FieldScalar(c, 0, field)
        return cls._raw(n, field, {(z, z): c} if c else {})

    @classmethod
    def var(cls, block: str, index: int, n: int, field: FieldSpec = QQ) -> "SparsePoly":
        e = [0] * (n + 1)
        e[index] = 1
        z = (0,) * (n + 1)
        key = (tuple(e), z) if block == "a" else (z, tuple(e))
        if block not in ("a", "x"):
            raise ValueError(f"unknown block {block!r}")
        return cls._raw(n, field, {key: field.one})

    @classmethod
    def monomial(cls, a_exp: Exp, x_exp: Exp, c=1, field: FieldSpec = QQ) -> "SparsePoly":
        n = len(x_exp) - 1
        return cls(n, field, {(tuple(a_exp), tuple(x_exp)): c})

    @classmethod
    def from_a_dict(cls, d: DPoly, n: int, field: FieldSpec = QQ) -> "SparsePoly":
        z = (0,) * (n + 1)
        return cls._raw(n, field, {(e, z): c for e, c in d.items() if c})

    @classmethod
    def from_x_dict(cls, d: DPoly, n: int, field: FieldSpec = QQ) -> "SparsePoly":
        z = (0,) * (n + 1)
        return cls._raw(n, field, {(z, e): c for e, c in d.items() if c})

    @classmethod
    def linear_form(cls, coeffs: Iterable, block: str = "x", field: FieldSpec = QQ) -> "SparsePoly":
        cs = list(coeffs)
        n = len(cs) - 1
        out = cls.zero(n, field)
        for i, c in enumerate(cs):
            out = out + cls.var(block, i, n, field) * c
        return out

    # structure

    def _check(self, other: "SparsePoly"):
        if self.n != other.n or (self.field is not other.field and self.field != other.field):
            raise PolyMismatchError("dimension or field mismatch")

    def _lift(self, other) -> "SparsePoly":
        if isinstance(other, SparsePoly):
            self._check(other)
            return other
        if isinstance(other, (int, FieldScalar)) or type(other).__name__ == "Fraction":
            return SparsePoly.constant(FieldScalar.parse(other, self.field), self.n, self.field)
        return NotImplemented

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def sorted_terms(self) -> List[Tuple[Key, FieldScalar]]:
        return sorted(self.terms.items(), key=lambda kv: order_key(kv[0]), reverse=True)

    def leading_term(self) -> Tuple[Key, FieldScalar]:
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        k = max(self.terms, key=order_key)
        return k, self.terms[k]

    def bidegrees(self) -> set:
        return {(sum(a), sum(x)) for a, x in self.terms}

    def is_bihomogeneous(self) -> bool:
        return len(self.bidegrees()) <= 1

    def bidegree(self) -> Tuple[int, int]:
        bd = self.bidegrees()
        if len(bd) != 1:
            raise ValueError("polynomial is not bi-homogeneous")
        return next(iter(bd))

    def degree(self) -> int:
        return max((sum(a) + sum(x) for a, x in self.terms), default=-1)

    def x_degree(self) -> int:
        return max((sum(x) for _, x in self.terms), default=-1)

    def a_degree(self) -> int:
        return max((sum(a) for a, _ in self.terms), default=-1)

    def is_homogeneous(self) -> bool:
        return len({sum(a) + sum(x) for a, x in self.terms}) <= 1

    # arithmetic

    def __add__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        out = dict(self.terms)
        for k, c in o.terms.items():
            v = out.get(k)
            if v is None:
                out[k] = c
            else:
                v = v + c
                if v:
                    out[k] = v
                else:
                    del out[k]
        return SparsePoly._raw(self.n, self.field, out)

    __radd__ = __add__

    def __neg__(self):
        return SparsePoly._raw(self.n, self.field, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return o + (-self)

    def scale(self, c) -> "SparsePoly":
        c = FieldScalar.parse(c, self.field)
        if not c:
            return SparsePoly.zero(self.n, self.field)
        return SparsePoly._raw(self.n, self.field, {k: v * c for k, v in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, SparsePoly):
            if isinstance(other, (int, FieldScalar)) or type(other).__name__ == "Fraction":
                return self.scale(other)
            return NotImplemented
        self._check(other)
        f, g = self.terms, other.terms
        if len(f) > len(g):
            f, g = g, f
        out: Dict[Key, FieldScalar] = {}
        for (a1, x1), c1 in f.items():
            for (a2, x2), c2 in g.items():
                k = (_add_exp(a1, a2), _add_exp(x1, x2))
                v = out.get(k)
                out[k] = c1 * c2 if v is None else v + c1 * c2
        return SparsePoly._raw(self.n, self.field, {k: c for k, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "SparsePoly":
        if e < 0:
            raise ValueError("negative power")
        result = SparsePoly.constant(1, self.n, self.field)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, SparsePoly):
            return self.n == other.n and self.field == other.field and self.terms == other.terms
        if isinstance(other, (int, FieldScalar)):
            return self == self._lift(other)
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.n, frozenset(self.terms.items())))
        return self._hash

    # calculus

    def partial_derivative(self, block: str, index: int) -> "SparsePoly":
        """Formal partial derivative in the variable ``block``_``index``."""
        pos = 0 if block == "a" else 1
        out: Dict[Key, FieldScalar] = {}
        for key, c in self.terms.items():
            e = key[pos]
            k = e[index]
            if not k:
                continue
            e2 = e[:index] + (k - 1,) + e[index + 1:]
            nk = (e2, key[1]) if pos == 0 else (key[0], e2)
            out[nk] = c * k
        return SparsePoly._raw(self.n, self.field, out)

    def apply_operator(self, op: "SparsePoly", block: str = "x") -> "SparsePoly":
        """Act by ``op`` as a differential operator, monomials read as partials."""
        self._check(op)
        result = SparsePoly.zero(self.n, self.field)
        pos = 0 if block == "a" else 1
        for key, c in op.terms.items():
            term = self
            for i, k in enumerate(key[pos]):
                for _ in range(k):
                    term = term.partial_derivative(block, i)
            other_block = key[1 - pos]
            if any(other_block):
                term = term * SparsePoly._raw(self.n, self.field, {key_with(other_block, pos): self.field.one})
            result = result + term.scale(c)
        return result

    def evaluate(self, assignment: Mapping[Var, object]) -> "SparsePoly":
        """Substitute field values for some variables, e.g. ``{("a", 0): 1}``."""
        subs_a = {}
        subs_x = {}
        for (block, i), v in assignment.items():
            if not 0 <= i <= self.n:
                raise ValueError(f"variable {block}{i} out of range")
            v = FieldScalar.parse(v, self.field)
            if block == "a":
                subs_a[i] = v
            elif block == "x":
                subs_x[i] = v
            else:
                raise ValueError(f"unknown block {block!r}")
        powers: Dict[Tuple[int, int, int], FieldScalar] = {}

        def pw(pos, i, k, v):
            key = (pos, i, k)
            r = powers.get(key)
            if r is None:
                r = v ** k
                powers[key] = r
            return r

        out: Dict[Key, FieldScalar] = {}
        for (a, x), c in self.terms.items():
            if subs_a:
                a2 = list(a)
                for i, v in subs_a.items():
                    if a[i]:
                        c = c * pw(0, i, a[i], v)
                        a2[i] = 0
                a = tuple(a2)
            if subs_x:
                x2 = list(x)
                for i, v in subs_x.items():
                    if x[i]:
                        c = c * pw(1, i, x[i], v)
                        x2[i] = 0
                x = tuple(x2)
            if not c:
                continue
            k = (a, x)
            prev = out.get(k)
            out[k] = c if prev is None else prev + c
        return SparsePoly._raw(self.n, self.field, {k: c for k, c in out.items() if c})

    def substitute(self, assignment: Mapping[Var, "SparsePoly"]) -> "SparsePoly":
        """Replace variables by polynomials, e.g. ``{("x", 1): a1}``."""
        pos_of = {"a": 0, "x": 1}
        subs = {(pos_of[b], i): self._lift(g) for (b, i), g in assignment.items()}
        out = SparsePoly.zero(self.n, self.field)
        for key, c in self.terms.items():
            rest = [list(key[0]), list(key[1])]
            factor = SparsePoly.constant(c, self.n, self.field)
            for (pos, i), g in subs.items():
                k = rest[pos][i]
                if k:
                    factor = factor * g ** k
                    rest[pos][i] = 0
            out = out + factor * SparsePoly._raw(self.n, self.field, {(tuple(rest[0]), tuple(rest[1])): self.field.one})
        return out

    def evaluate_block(self, block: str, values) -> "SparsePoly":
        return self.evaluate({(block, i): v for i, v in enumerate(values)})

    def constant_value(self) -> FieldScalar:
        z = (0,) * (self.n + 1)
        if any(k != (z, z) for k in self.terms):
            raise ValueError("polynomial is not constant")
        return self.terms.get((z, z), self.field.zero)

    def value_at(self, a=None, x=None) -> FieldScalar:
        """Value at a full assignment of the variables that occur."""
        assign = {}
        if a is not None:
            assign.update({("a", i): v for i, v in enumerate(a)})
        if x is not None:
            assign.update({("x", i): v for i, v in enumerate(x)})
        return self.evaluate(assign).constant_value()

    # block views

    def coefficients_in_x(self) -> Dict[Exp, DPoly]:
        """Map x-exponent -> coefficient polynomial in the a-block."""
        out: Dict[Exp, DPoly] = {}
        for (a, x), c in self.terms.items():
            out.setdefault(x, {})[a] = c
        return out

    def coefficients_in_a(self) -> Dict[Exp, DPoly]:
        """Map a-exponent -> coefficient polynomial in the x-block."""
        out: Dict[Exp, DPoly] = {}
        for (a, x), c in self.terms.items():
            out.setdefault(a, {})[x] = c
        return out

    def a_part(self) -> DPoly:
        """The polynomial as a dict over the a-block (x must be absent)."""
        out = {}
        for (a, x), c in self.terms.items():
            if any(x):
                raise ValueError("polynomial involves the x-block")
            out[a] = c
        return out

    def x_part(self) -> DPoly:
        out = {}
        for (a, x), c in self.terms.items():
            if any(a):
                raise ValueError("polynomial involves the a-block")
            out[x] = c
        return out

    # normalizations

    def normalized(self) -> "SparsePoly":
        """Scale so the canonically first coefficient is 1."""
        if not self.terms:
            return self
        _, c = self.leading_term()
        return self if c == 1 else self.scale(c.inv())

    def content_in_a(self) -> "SparsePoly":
        """Monic gcd in K[a] of the x-coefficients."""
        if not self.terms:
            raise ValueError("content of the zero polynomial")
        g = gcd_list(self.coefficients_in_x().values())
        return SparsePoly.from_a_dict(g, self.n, self.field)

    def div_a(self, g: "SparsePoly") -> "SparsePoly":
        """Exact division by a polynomial in the a-block alone."""
        gd = g.a_part()
        out: Dict[Key, FieldScalar] = {}
        for x, coeff in self.coefficients_in_x().items():
            for a, c in d_exact_div(coeff, gd).items():
                out[(a, x)] = c
        return SparsePoly._raw(self.n, self.field, out)

    def star(self) -> "SparsePoly":
        """Remove the pure-a content and normalize the leading coefficient."""
        if not self.terms:
            raise ValueError("star of the zero polynomial")
        c = self.content_in_a()
        f = self if c == 1 else self.div_a(c)
        return f.normalized()

    def swap_blocks(self) -> "SparsePoly":
        return SparsePoly._raw(self.n, self.field, {(x, a): c for (a, x), c in self.terms.items()})

    def diagonal_shift(self) -> "SparsePoly":
        """Substitute a_i -> x_i + e_i; the e-block is stored in the a-slot."""
        n, field = self.n, self.field
        cache: Dict[Tuple[int, int], SparsePoly] = {}

        def shifted_power(i: int, k: int) -> SparsePoly:
            r = cache.get((i, k))
            if r is None:
                base = SparsePoly.var("x", i, n, field) + SparsePoly.var("a", i, n, field)
                r = base ** k
                cache[(i, k)] = r
            return r

        result = SparsePoly.zero(n, field)
        for a, x_terms in self.coefficients_in_a().items():
            piece = SparsePoly.from_x_dict(x_terms, n, field)
            for i, k in enumerate(a):
                if k:
                    piece = piece * shifted_power(i, k)
            result = result + piece
        return result

    def min_a_degree(self) -> int:
        return min((sum(a) for a, _ in self.terms), default=-1)

    def lowest_a_part(self) -> "SparsePoly":
        k = self.min_a_degree()
        return SparsePoly._raw(self.n, self.field, {key: c for key, c in self.terms.items() if sum(key[0]) == k})

    def equal_up_to_scalar(self, other: "SparsePoly") -> bool:
        self._check(other)
        if not self.terms or not other.terms:
            return not self.terms and not other.terms
        return self.normalized() == other.normalized()

    # text

    def to_text(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for (a, x), c in self.sorted_terms():
            factors = [str(c)]
            for name, e in (("a", a), ("x", x)):
                for i, k in enumerate(e):
                    if k == 1:
                        factors.append(f"{name}{i}")
                    elif k > 1:
                        factors.append(f"{name}{i}^{k}")
            parts.append("*".join(factors))
        return " + ".join(parts)

    @classmethod
    def from_text(cls, text: str, n: int, field: FieldSpec = QQ) -> "SparsePoly":
        text = text.strip()
        if text == "0":
            return cls.zero(n, field)
        out = cls.zero(n, field)
        for chunk in text.split(" + "):
            factors = chunk.strip().split("*")
            c = FieldScalar.parse(factors[0], field)
            a = [0] * (n + 1)
            x = [0] * (n + 1)
            for fac in factors[1:]:
                name, _, power = fac.partition("^")
                block, idx = name[0], int(name[1:])
                target = a if block == "a" else x if block == "x" else None
                if target is None:
                    raise ValueError(f"bad variable {name!r}")
                target[idx] += int(power) if power else 1
            out = out + SparsePoly.monomial(tuple(a), tuple(x), c, field)
        return out

    def __str__(self) -> str:
        return self.to_text()

    def __repr__(self) -> str:
        return f"SparsePoly(n={self.n}, {self.to_text()})"


def key_with(block_exp: Exp, pos: int) -> Key:
    z = (0,) * len(block_exp)
    return (z, block_exp) if pos == 0 else (block_exp, z)


def num_monomials(n: int, d: int) -> int:
    return comb(n + d, n)
