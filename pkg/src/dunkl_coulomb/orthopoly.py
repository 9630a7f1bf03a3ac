"""Jacobi and Laguerre polynomials, log-gamma, and Gauss rules.

Polynomial coefficients are exact rationals generated by the classical
three-term recurrences.  Quadrature nodes are floats: they come from the
Golub-Welsch eigenproblem of the symmetric tridiagonal Jacobi matrix, are
polished by Newton steps on the orthonormal recurrence, and the weights are
taken from the Christoffel function, which keeps tiny weights (far Laguerre
nodes) accurate to full relative precision.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Tuple, Union

import numpy as np
from scipy.linalg import eigvalsh_tridiagonal

from .term_algebra import RationalLike, as_rational


@dataclass(frozen=True)
class Jacobi:
    a: Fraction
    b: Fraction


@dataclass(frozen=True)
class Laguerre:
    a: Fraction


@dataclass(frozen=True)
class PolynomialCoeffs:
    """Monomial coefficients, constant term first."""

    family: Union[Jacobi, Laguerre]
    degree: int
    coeffs: Tuple[Fraction, ...]

    def __post_init__(self):
        if len(self.coeffs) != self.degree + 1 or self.coeffs[-1] == 0:
            raise ValueError("coefficient list does not match the degree")

    def __call__(self, x: float) -> float:
        acc = 0.0
        for q in reversed(self.coeffs):
            acc = acc * x + float(q)
        return acc

    def exact(self, x: RationalLike) -> Fraction:
        x = as_rational(x)
        acc = Fraction(0)
        for q in reversed(self.coeffs):
            acc = acc * x + q
        return acc


def _check_param(p: Fraction, name: str) -> None:
    if p <= -1:
        raise ValueError(f"{name} must exceed -1, got {p}")


def _padd(p: list, q: list) -> list:
    n = max(len(p), len(q))
    return [(p[i] if i < len(p) else 0) + (q[i] if i < len(q) else 0) for i in range(n)]


def _pscale(p: list, s) -> list:
    return [s * v for v in p]


def _pshift(p: list) -> list:
    return [Fraction(0)] + p


@lru_cache(maxsize=None)
def jacobi_coeffs(k: int, a: RationalLike, b: RationalLike) -> PolynomialCoeffs:
    a, b = as_rational(a), as_rational(b)
    _check_param(a, "a")
    _check_param(b, "b")
    if k < 0:
        raise ValueError("degree must be nonnegative")
    prev = [Fraction(1)]
    if k == 0:
        return PolynomialCoeffs(Jacobi(a, b), 0, tuple(prev))
    cur = [(a - b) / 2, (a + b + 2) / 2]
    for n in range(2, k + 1):
        s = 2 * n + a + b
        # 2n(n+a+b)(s-2) P_n = (s-1)[s(s-2) x + a^2 - b^2] P_{n-1} - 2(n+a-1)(n+b-1) s P_{n-2}
        lead = 2 * n * (n + a + b) * (s - 2)
        term1 = _padd(_pscale(_pshift(cur), (s - 1) * s * (s - 2)), _pscale(cur, (s - 1) * (a * a - b * b)))
        term2 = _pscale(prev, -2 * (n + a - 1) * (n + b - 1) * s)
        prev, cur = cur, _pscale(_padd(term1, term2), 1 / lead)
    return PolynomialCoeffs(Jacobi(a, b), k, tuple(cur))


@lru_cache(maxsize=None)
def laguerre_coeffs(l: int, a: RationalLike) -> PolynomialCoeffs:
    a = as_rational(a)
    _check_param(a, "a")
    if l < 0:
        raise ValueError("degree must be nonnegative")
    prev = [Fraction(1)]
    if l == 0:
        return PolynomialCoeffs(Laguerre(a), 0, tuple(prev))
    cur = [1 + a, Fraction(-1)]
    for n in range(2, l + 1):
        # n L_n = (2n-1+a-x) L_{n-1} - (n-1+a) L_{n-2}
        t = _padd(_pscale(cur, 2 * n - 1 + a), _pscale(_pshift(cur), -1))
        t = _padd(t, _pscale(prev, -(n - 1 + a)))
        prev, cur = cur, _pscale(t, Fraction(1, n))
    return PolynomialCoeffs(Laguerre(a), l, tuple(cur))


def log_gamma(x: float) -> float:
    """log Gamma(x) for x > 0 (libm lgamma)."""
    x = float(x)
    if not x > 0:
        raise ValueError("log_gamma is defined here for positive arguments only")
    return math.lgamma(x)


@dataclass(frozen=True)
class GaussJacobi:
    a: float
    b: float

    support = (-1.0, 1.0)

    def mass(self) -> float:
        a, b = self.a, self.b
        return math.exp((a + b + 1) * math.log(2) + log_gamma(a + 1) + log_gamma(b + 1) - log_gamma(a + b + 2))

    def recurrence(self, n: int) -> tuple[np.ndarray, np.ndarray]:
        """Monic recurrence: diagonal alpha_0..alpha_{n-1}, beta_1..beta_{n-1}."""
        a, b = self.a, self.b
        alpha = np.empty(n)
        beta = np.empty(max(n - 1, 0))
        alpha[0] = (b - a) / (a + b + 2)
        for k in range(1, n):
            s = 2 * k + a + b
            alpha[k] = (b * b - a * a) / (s * (s + 2))
        for k in range(1, n):
            s = 2 * k + a + b
            if k == 1:
                beta[0] = 4 * (1 + a) * (1 + b) / ((2 + a + b) ** 2 * (3 + a + b))
            else:
                beta[k - 1] = 4 * k * (k + a) * (k + b) * (k + a + b) / (s * s * (s + 1) * (s - 1))
        return alpha, beta


@dataclass(frozen=True)
class GaussLaguerre:
    a: float

    support = (0.0, math.inf)

    def mass(self) -> float:
        return math.exp(log_gamma(self.a + 1))

    def recurrence(self, n: int) -> tuple[np.ndarray, np.ndarray]:
        k = np.arange(n, dtype=float)
        alpha = 2 * k + self.a + 1
        kk = np.arange(1, n, dtype=float)
        beta = kk * (kk + self.a)
        return alpha, beta


@dataclass(frozen=True)
class QuadratureRule:
    kind: Union[GaussJacobi, GaussLaguerre]
    order: int
    nodes: np.ndarray
    weights: np.ndarray

    def integrate(self, fn) -> float:
        return float(np.dot(self.weights, fn(self.nodes)))


def _orthonormal_table(x: np.ndarray, alpha: np.ndarray, sqb: np.ndarray, mass: float, n: int):
    """Rows p_0..p_n of the orthonormal family at x, and derivative of p_n."""
    p = np.zeros((n + 1, x.size))
    dp = np.zeros((n + 1, x.size))
    p[0] = 1.0 / math.sqrt(mass)
    for k in range(n):
        prev = p[k - 1] if k else 0.0
        dprev = dp[k - 1] if k else 0.0
        b_prev = sqb[k - 1] if k else 0.0
        p[k + 1] = ((x - alpha[k]) * p[k] - b_prev * prev) / sqb[k]
        dp[k + 1] = (p[k] + (x - alpha[k]) * dp[k] - b_prev * dprev) / sqb[k]
    return p, dp


@lru_cache(maxsize=256)
def gauss_rule(kind: Union[GaussJacobi, GaussLaguerre], order: int) -> QuadratureRule:
    if order < 1:
        raise ValueError("quadrature order must be positive")
    params = (kind.a, kind.b) if isinstance(kind, GaussJacobi) else (kind.a,)
    if any(p <= -1 for p in params):
        raise ValueError("weight parameters must exceed -1")
    n = order
    alpha, beta = kind.recurrence(n + 1)
    sqb = np.sqrt(beta)
    mass = kind.mass()
    if n == 1:
        nodes = alpha[:1].copy()
    else:
        nodes = eigvalsh_tridiagonal(alpha[:n], sqb[: n - 1])
    if not np.all(np.isfinite(nodes)):
        raise ArithmeticError("tridiagonal eigensolver did not converge")
    for _ in range(3):
        p, dp = _orthonormal_table(nodes, alpha, sqb, mass, n)
        step = p[n] / dp[n]
        nodes = nodes - step
        if np.all(np.abs(step) <= 1e-15 * np.maximum(1.0, np.abs(nodes))):
            break
    p, _ = _orthonormal_table(nodes, alpha, sqb, mass, n)
    weights = 1.0 / np.sum(p[:n] ** 2, axis=0)
    lo, hi = kind.support
    if np.any(np.diff(nodes) <= 0) or nodes[0] <= lo or nodes[-1] >= hi or np.any(weights <= 0):
        raise ArithmeticError("quadrature rule failed its sanity checks")
    nodes.setflags(write=False)
    weights.setflags(write=False)
    return QuadratureRule(kind, order, nodes, weights)


def gauss_jacobi(order: int, a: float, b: float) -> QuadratureRule:
    return gauss_rule(GaussJacobi(float(a), float(b)), order)


def gauss_laguerre(order: int, a: float) -> QuadratureRule:
    return gauss_rule(GaussLaguerre(float(a)), order)
