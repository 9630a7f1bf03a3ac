"""Operators of the Dunkl-Coulomb model as composition trees over exact primitives.

Trees are built from a handful of primitives (partial derivatives,
multiplication by x_i and powers of r, reflections and the fused Dunkl
difference quotient) combined by scaling, summation and composition.
``Compose(A, B)`` applies ``B`` first.  Application is linear, so each node
memoizes its image of unit basis terms; operator identities are tested by
applying both sides to a family of basis functions.

The Dunkl angular momentum J3 carries a factor of i and is never built.
Everything is written with Jcal = x1 D2 - x2 D1 = i J3, so J3^2 = -Jcal^2.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable

from .term_algebra import (
    FunctionExpr,
    Key,
    RationalLike,
    as_rational,
    linear_combine,
    normalize,
)

PRIMITIVE_TAGS = (
    "Identity",
    "PartialX1",
    "PartialX2",
    "MulX1",
    "MulX2",
    "MulRPow",
    "Refl1",
    "Refl2",
    "ReflDiff1",
    "ReflDiff2",
)


@dataclass(frozen=True)
class ModelParams:
    """Reflection couplings mu1, mu2 >= 0 and Coulomb strength alpha != 0."""

    mu1: Fraction
    mu2: Fraction
    alpha: Fraction = Fraction(-1)

    def __post_init__(self):
        for name in ("mu1", "mu2", "alpha"):
            object.__setattr__(self, name, as_rational(getattr(self, name)))
        if self.mu1 < 0 or self.mu2 < 0:
            raise ValueError("mu1 and mu2 must be nonnegative")
        if self.alpha == 0:
            raise ValueError("alpha must be nonzero")

    @property
    def mu(self) -> Fraction:
        return self.mu1 + self.mu2

    def require_bound_states(self) -> None:
        if self.alpha >= 0:
            raise ValueError("bound states need an attractive potential (alpha < 0)")

    def label(self) -> str:
        return f"mu1={self.mu1},mu2={self.mu2},alpha={self.alpha}"


class Operator:
    """Base class: linear operator on FunctionExpr with per-basis-term memo."""

    __slots__ = ("_memo",)

    def __init__(self):
        self._memo: dict = {}

    def image(self, key: Key) -> FunctionExpr:
        out = self._memo.get(key)
        if out is None:
            out = self._compute(key)
            self._memo[key] = out
        return out

    def _compute(self, key: Key) -> FunctionExpr:
        raise NotImplementedError

    def apply(self, f: FunctionExpr) -> FunctionExpr:
        return linear_combine((v, self.image(k)) for k, v in f.items())

    __call__ = apply

    # combinators
    def __add__(self, other: "Operator") -> "Operator":
        return Sum([self, other])

    def __sub__(self, other: "Operator") -> "Operator":
        return Sum([self, Scale(-1, other)])

    def __neg__(self) -> "Operator":
        return Scale(-1, self)

    def __rmul__(self, q: RationalLike) -> "Operator":
        return Scale(q, self)

    def __matmul__(self, other: "Operator") -> "Operator":
        return Compose(self, other)


class Primitive(Operator):
    __slots__ = ("tag", "param")

    def __init__(self, tag: str, param: int = 0):
        super().__init__()
        if tag not in PRIMITIVE_TAGS:
            raise ValueError(f"unknown primitive {tag!r}")
        self.tag = tag
        self.param = param

    def __repr__(self) -> str:
        return f"{self.tag}({self.param})" if self.tag == "MulRPow" else self.tag

    def _compute(self, key: Key) -> FunctionExpr:
        a, e, c, s = key
        one = Fraction(1)
        tag = self.tag
        if tag == "Identity":
            raw = [(one, a, e, c, s)]
        elif tag == "MulX1":
            raw = [(one, a + 1, e, c, s)]
        elif tag == "MulX2":
            raw = [(one, a, e + 1, c, s)]
        elif tag == "MulRPow":
            raw = [(one, a, e, c + self.param, s)]
        elif tag == "Refl1":
            raw = [(-one if a % 2 else one, a, e, c, s)]
        elif tag == "Refl2":
            raw = [(-one if e else one, a, e, c, s)]
        elif tag == "PartialX1":
            # d/dx1 r^c = c x1 r^(c-2);  d/dx1 exp(-s r) = -s x1 r^-1 exp(-s r)
            raw = [(c, a + 1, e, c - 2, s), (-s, a + 1, e, c - 1, s)]
            if a:
                raw.append((a, a - 1, e, c, s))
        elif tag == "PartialX2":
            raw = [(c, a, e + 1, c - 2, s), (-s, a, e + 1, c - 1, s)]
            if e:
                raw.append((one, a, 0, c, s))
        elif tag == "ReflDiff1":
            # (1 - R1)/x1: zero on even terms, 2/x1 times odd ones
            raw = [(2, a - 1, e, c, s)] if a % 2 else []
        else:  # ReflDiff2
            raw = [(2, a, 0, c, s)] if e else []
        return normalize(r for r in raw if r[0])


class Scale(Operator):
    __slots__ = ("q", "op")

    def __init__(self, q: RationalLike, op: Operator):
        super().__init__()
        self.q = as_rational(q)
        self.op = op

    def __repr__(self) -> str:
        return f"({self.q})*{self.op!r}"

    def _compute(self, key: Key) -> FunctionExpr:
        return self.op.image(key).scale(self.q)


class Sum(Operator):
    __slots__ = ("ops",)

    def __init__(self, ops: Iterable[Operator]):
        super().__init__()
        flat: list[Operator] = []
        for op in ops:
            flat.extend(op.ops if isinstance(op, Sum) else [op])
        self.ops = tuple(flat)

    def __repr__(self) -> str:
        return "(" + " + ".join(map(repr, self.ops)) + ")"

    def _compute(self, key: Key) -> FunctionExpr:
        return linear_combine((1, op.image(key)) for op in self.ops)


class Compose(Operator):
    __slots__ = ("outer", "inner")

    def __init__(self, outer: Operator, inner: Operator):
        super().__init__()
        self.outer = outer
        self.inner = inner

    def __repr__(self) -> str:
        return f"{self.outer!r}@{self.inner!r}"

    def _compute(self, key: Key) -> FunctionExpr:
        return self.outer.apply(self.inner.image(key))


def apply(op: Operator, f: FunctionExpr) -> FunctionExpr:
    return op.apply(f)


def compose(*ops: Operator) -> Operator:
    """compose(A, B, C) applies C, then B, then A."""
    out = ops[-1]
    for op in reversed(ops[:-1]):
        out = Compose(op, out)
    return out


def commutator(x: Operator, y: Operator) -> Operator:
    return Compose(x, y) - Compose(y, x)


def anticommutator(x: Operator, y: Operator) -> Operator:
    return Compose(x, y) + Compose(y, x)


IDENTITY = Primitive("Identity")
PARTIAL_X1 = Primitive("PartialX1")
PARTIAL_X2 = Primitive("PartialX2")
MUL_X1 = Primitive("MulX1")
MUL_X2 = Primitive("MulX2")
REFL1 = Primitive("Refl1")
REFL2 = Primitive("Refl2")


def mul_rpow(c: int) -> Operator:
    return IDENTITY if c == 0 else Primitive("MulRPow", c)


def scalar(q: RationalLike) -> Operator:
    return Scale(q, IDENTITY)


def dunkl_derivative(i: int, params: ModelParams) -> Operator:
    """D_i = d/dx_i + mu_i (1 - R_i)/x_i, the difference part as one primitive."""
    if i == 1:
        return PARTIAL_X1 + Scale(params.mu1, Primitive("ReflDiff1"))
    if i == 2:
        return PARTIAL_X2 + Scale(params.mu2, Primitive("ReflDiff2"))
    raise ValueError("Dunkl derivative index must be 1 or 2")


CATALOGUE = (
    "laplacian",
    "hamiltonian",
    "dilation",
    "L0",
    "Lplus",
    "Lminus",
    "casimir_so21",
    "Jcal",
    "A1",
    "A2",
    "Q",
    "Refl1",
    "Refl2",
)


def runge_lenz(params: ModelParams, d1: Operator, d2: Operator, jcal: Operator) -> tuple[Operator, Operator]:
    alpha = params.alpha
    x1_over_r = mul_rpow(-1) @ MUL_X1
    x2_over_r = mul_rpow(-1) @ MUL_X2
    a1 = Sum([
        x1_over_r,
        Scale(-params.mu1 / alpha, d1 @ REFL1),
        Scale(-1 / (2 * alpha), anticommutator(jcal, d2)),
    ])
    a2 = Sum([
        x2_over_r,
        Scale(-params.mu2 / alpha, d2 @ REFL2),
        Scale(1 / (2 * alpha), anticommutator(jcal, d1)),
    ])
    return a1, a2


@lru_cache(maxsize=None)
def catalogue(params: ModelParams) -> dict:
    """All named operators for one parameter set, sharing memoized subtrees."""
    mu1, mu2, alpha = params.mu1, params.mu2, params.alpha
    d1 = dunkl_derivative(1, params)
    d2 = dunkl_derivative(2, params)
    lap = (d1 @ d1) + (d2 @ d2)
    r = mul_rpow(1)
    ham = Scale(Fraction(-1, 2), lap) + Scale(alpha, mul_rpow(-1))
    dil = Sum([MUL_X1 @ PARTIAL_X1, MUL_X2 @ PARTIAL_X2, scalar(mu1 + mu2 + Fraction(1, 2))])
    r_lap = r @ lap
    l0 = -r_lap + Scale(Fraction(1, 4), r)
    lplus = Sum([-r_lap, Scale(Fraction(-1, 4), r), dil])
    lminus = Sum([-r_lap, Scale(Fraction(-1, 4), r), -dil])
    cas = (l0 @ l0) - Scale(Fraction(1, 2), (lplus @ lminus) + (lminus @ lplus))
    jcal = (MUL_X1 @ d2) - (MUL_X2 @ d1)
    a1, a2 = runge_lenz(params, d1, d2, jcal)
    two_h = Scale(2 / alpha**2, ham)
    refl_mix = Sum([Scale(mu1, REFL1), Scale(mu2, REFL2), Scale(2 * mu1 * mu2, REFL1 @ REFL2)])
    q = Sum([a1 @ a1, a2 @ a2, two_h @ jcal @ jcal, -(two_h @ refl_mix)])
    return {
        "D1": d1,
        "D2": d2,
        "laplacian": lap,
        "hamiltonian": ham,
        "dilation": dil,
        "L0": l0,
        "Lplus": lplus,
        "Lminus": lminus,
        "casimir_so21": cas,
        "Jcal": jcal,
        "A1": a1,
        "A2": a2,
        "Q": q,
        "Refl1": REFL1,
        "Refl2": REFL2,
    }


def named_operator(name: str, params: ModelParams) -> Operator:
    if name not in CATALOGUE:
        raise KeyError(f"unknown operator {name!r}; choose from {', '.join(CATALOGUE)}")
    return catalogue(params)[name]
