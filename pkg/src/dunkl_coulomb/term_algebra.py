"""Exact function space of finite sums of x1^a x2^eps r^c exp(-s r).

Every function is kept in a canonical form where the relation
r^2 = x1^2 + x2^2 has been used to push all powers of x2 above one into
powers of r and x1.  In polar form a monomial x1^a x2^eps r^c is
r^(a+eps+c) cos^a(phi) sin^eps(phi), and those angular factors are linearly
independent, so two canonical expressions describe the same function on the
punctured plane iff they are identical.  Zero-testing is therefore syntactic.
"""

from __future__ import annotations

import math
from fractions import Fraction
from math import comb
from typing import Iterable, Iterator, Mapping, Sequence, Tuple, Union

# (a, eps, c, s): exponent of x1, exponent of x2 (0 or 1), exponent of r, decay rate
Key = Tuple[int, int, int, Fraction]
RationalLike = Union[int, Fraction, str]


class DomainError(ValueError):
    """Raised when evaluating a negative power of r at the origin."""


def as_rational(value: RationalLike) -> Fraction:
    """Coerce ints, Fractions and "p/q" strings to a Fraction; floats are refused."""
    if isinstance(value, bool):
        raise TypeError("booleans are not rational scalars")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        text = value.strip()
        if not text or any(ch in text for ch in ".eE"):
            raise ValueError(f"not an exact rational literal: {value!r}")
        return Fraction(text)
    raise TypeError(f"cannot use {type(value).__name__} as an exact rational")


def fmt_rational(q: RationalLike) -> str:
    q = as_rational(q)
    return f"{q.numerator}/{q.denominator}"


def _reduce_into(acc: dict, coeff: Fraction, a: int, b: int, c: int, s: Fraction) -> None:
    # x2^(2q+e) = x2^e (r^2 - x1^2)^q
    if b < 2:
        key = (a, b, c, s)
        acc[key] = acc.get(key, 0) + coeff
        return
    q, e = divmod(b, 2)
    for j in range(q + 1):
        cj = comb(q, j)
        if j % 2:
            cj = -cj
        key = (a + 2 * j, e, c + 2 * (q - j), s)
        acc[key] = acc.get(key, 0) + coeff * cj


class FunctionExpr:
    """Immutable canonical sum of terms; the empty sum is the zero function."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[Key, Fraction] | None = None):
        items = [] if terms is None else [(k, Fraction(v)) for k, v in terms.items() if v]
        for (a, eps, c, s), _ in items:
            if a < 0 or eps not in (0, 1) or s < 0:
                raise ValueError(f"non-canonical key {(a, eps, c, s)}")
        items.sort(key=lambda kv: kv[0])
        self._terms: Tuple[Tuple[Key, Fraction], ...] = tuple(items)
        self._hash = None

    @classmethod
    def _from_acc(cls, acc: dict) -> "FunctionExpr":
        out = cls.__new__(cls)
        out._terms = tuple(sorted(((k, v) for k, v in acc.items() if v), key=lambda kv: kv[0]))
        out._hash = None
        return out

    # -- container protocol ---------------------------------------------
    def items(self) -> Iterator[Tuple[Key, Fraction]]:
        return iter(self._terms)

    def keys(self) -> list[Key]:
        return [k for k, _ in self._terms]

    def coeff(self, key: Key) -> Fraction:
        for k, v in self._terms:
            if k == key:
                return v
        return Fraction(0)

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FunctionExpr):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self._terms)
        return self._hash

    def __repr__(self) -> str:
        if not self._terms:
            return "FunctionExpr(0)"
        parts = []
        for (a, eps, c, s), v in self._terms:
            mono = [str(v)]
            if a:
                mono.append(f"x1^{a}")
            if eps:
                mono.append("x2")
            if c:
                mono.append(f"r^{c}")
            if s:
                mono.append(f"exp(-{s} r)")
            parts.append("*".join(mono))
        return "FunctionExpr(" + " + ".join(parts) + ")"

    # -- arithmetic ------------------------------------------------------
    def __add__(self, other: "FunctionExpr") -> "FunctionExpr":
        return linear_combine([(1, self), (1, other)])

    def __sub__(self, other: "FunctionExpr") -> "FunctionExpr":
        return linear_combine([(1, self), (-1, other)])

    def __neg__(self) -> "FunctionExpr":
        return FunctionExpr._from_acc({k: -v for k, v in self._terms})

    def scale(self, q: RationalLike) -> "FunctionExpr":
        q = as_rational(q)
        if not q:
            return ZERO
        return FunctionExpr._from_acc({k: q * v for k, v in self._terms})

    def __rmul__(self, q: RationalLike) -> "FunctionExpr":
        return self.scale(q)

    def __mul__(self, other):
        if not isinstance(other, FunctionExpr):
            return self.scale(other)
        acc: dict = {}
        for (a, e, c, s), v in self._terms:
            for (a2, e2, c2, s2), v2 in other._terms:
                _reduce_into(acc, v * v2, a + a2, e + e2, c + c2, s + s2)
        return FunctionExpr._from_acc(acc)

    def max_abs_coeff(self) -> Fraction:
        return max((abs(v) for _, v in self._terms), default=Fraction(0))

    def rates(self) -> set[Fraction]:
        return {k[3] for k, _ in self._terms}

    def __call__(self, x1: float, x2: float) -> float:
        return evaluate(self, (x1, x2))


ZERO = FunctionExpr()


def term(coeff: RationalLike = 1, a: int = 0, eps: int = 0, c: int = 0, s: RationalLike = 0) -> FunctionExpr:
    """Single term coeff * x1^a x2^eps r^c exp(-s r); eps may exceed 1 and is reduced."""
    return normalize([(coeff, a, eps, c, s)])


def constant(q: RationalLike) -> FunctionExpr:
    return term(q)


def normalize(raw: Iterable[Sequence]) -> FunctionExpr:
    """Canonicalize (coeff, a, b, c, s) tuples with arbitrary x2 exponent b >= 0."""
    acc: dict = {}
    for coeff, a, b, c, s in raw:
        if a < 0 or b < 0:
            raise ValueError("x1 and x2 exponents must be nonnegative")
        s = as_rational(s)
        if s < 0:
            raise ValueError("decay rates must be nonnegative")
        _reduce_into(acc, as_rational(coeff), int(a), int(b), int(c), s)
    return FunctionExpr._from_acc(acc)


def linear_combine(pairs: Iterable[Tuple[RationalLike, FunctionExpr]]) -> FunctionExpr:
    acc: dict = {}
    for q, f in pairs:
        q = as_rational(q)
        if not q:
            continue
        for k, v in f.items():
            acc[k] = acc.get(k, 0) + q * v
    return FunctionExpr._from_acc(acc)


def evaluate(f: FunctionExpr, point: Tuple[float, float]) -> float:
    x1, x2 = float(point[0]), float(point[1])
    r = math.hypot(x1, x2)
    total = 0.0
    for (a, eps, c, s), v in f.items():
        if c < 0 and r == 0.0:
            raise DomainError("negative power of r evaluated at the origin")
        val = float(v) * x1**a
        if eps:
            val *= x2
        if c:
            val *= r**c
        if s:
            val *= math.exp(-float(s) * r)
        total += val
    return total


def dilate(f: FunctionExpr, lam: RationalLike) -> FunctionExpr:
    """Substitute x_i -> lam * x_i exactly."""
    lam = as_rational(lam)
    if lam <= 0:
        raise ValueError("dilation factor must be positive")
    acc = {}
    for (a, eps, c, s), v in f.items():
        acc[(a, eps, c, lam * s)] = v * lam ** (a + eps + c)
    return FunctionExpr._from_acc(acc)


def reflect(f: FunctionExpr, axis: int) -> FunctionExpr:
    if axis not in (1, 2):
        raise ValueError("axis must be 1 or 2")
    idx = 0 if axis == 1 else 1
    return FunctionExpr._from_acc({k: (-v if k[idx] % 2 else v) for k, v in f.items()})


def to_json(f: FunctionExpr) -> dict:
    return {
        "terms": [
            {"coeff": fmt_rational(v), "a": a, "eps": eps, "c": c, "s": fmt_rational(s)}
            for (a, eps, c, s), v in f.items()
        ]
    }


def from_json(obj: Mapping) -> FunctionExpr:
    return normalize(
        (as_rational(t["coeff"]), int(t["a"]), int(t["eps"]), int(t["c"]), as_rational(t["s"]))
        for t in obj["terms"]
    )


X1 = term(1, a=1)
X2 = term(1, eps=1)
ONE = constant(1)
