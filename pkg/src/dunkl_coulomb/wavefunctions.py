"""Separated eigenfunctions: Dunkl harmonics, Laguerre radial factors, full states.

Each state exists twice: as an exact unnormalized FunctionExpr (for the
operator identity checks) and through a float normalization constant.  The
angular factor is carried as the homogeneous polynomial
h = r^(2n) cos^e1 sin^e2 P_k(-cos 2 phi), so the product with the radial
factor stripped of its r^(2n) has no negative powers of r.

Inner products use the measure |x1|^(2 mu1) |x2|^(2 mu2) dx1 dx2, which in
polar form factorizes into r^(2 mu1 + 2 mu2 + 1) dr times
|cos|^(2 mu1) |sin|^(2 mu2) dphi.  The angular part of a product of monomials
is folded onto one quadrant and mapped to t = -cos 2 phi, where it is a
polynomial against a Jacobi weight; the radial part is a polynomial against
a generalized Laguerre weight after u = (s_f + s_g) r.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence, Union

import numpy as np

from . import spectra
from .operators import ModelParams
from .orthopoly import gauss_jacobi, gauss_laguerre, jacobi_coeffs, laguerre_coeffs, log_gamma
from .spectra import QuantumNumbers
from .term_algebra import ONE, X1, X2, FunctionExpr, evaluate, fmt_rational, term


def angular_harmonic(qn: QuantumNumbers, params: ModelParams) -> FunctionExpr:
    """Homogeneous Dunkl harmonic of degree 2n in the sector (e1, e2)."""
    k = qn.jacobi_degree
    poly = jacobi_coeffs(k, params.mu1 - Fraction(1, 2) + qn.e1, params.mu2 - Fraction(1, 2) + qn.e2)
    t_num = term(1, eps=2) - term(1, a=2)  # x2^2 - x1^2 = -r^2 cos 2phi
    r2 = term(1, c=2)
    t_pows = [ONE]
    r_pows = [ONE]
    for _ in range(k):
        t_pows.append(t_pows[-1] * t_num)
        r_pows.append(r_pows[-1] * r2)
    h = FunctionExpr()
    for j, cj in enumerate(poly.coeffs):
        if cj:
            h = h + (t_pows[j] * r_pows[k - j]).scale(cj)
    if qn.e1:
        h = h * X1
    if qn.e2:
        h = h * X2
    return h


def _radial_terms(qn: QuantumNumbers, params: ModelParams, r_offset: int) -> FunctionExpr:
    beta = spectra.beta(params, qn)
    poly = laguerre_coeffs(qn.l, 2 * qn.two_n + 2 * params.mu)
    raw = {}
    for i, ci in enumerate(poly.coeffs):
        if ci:
            raw[(0, 0, r_offset + i, beta / 2)] = ci * beta ** (qn.two_n + i)
    return FunctionExpr(raw)


def radial_factor(qn: QuantumNumbers, params: ModelParams) -> FunctionExpr:
    """exp(-beta r/2) (beta r)^(2n) L_l^(4n + 2mu1 + 2mu2)(beta r), expanded exactly."""
    return _radial_terms(qn, params, qn.two_n)


def angular_norm_constant(qn: QuantumNumbers, params: ModelParams) -> float:
    """Closed-form eta normalizing cos^e1 sin^e2 P_k(-cos 2phi) on the weighted circle."""
    n = float(qn.n)
    mu1, mu2 = float(params.mu1), float(params.mu2)
    e1, e2 = qn.e1, qn.e2
    if qn.two_n == 0:
        # (mu/2) Gamma(mu) written as Gamma(mu+1)/2 so that mu = 0 is finite
        head = math.log(0.5) + log_gamma(mu1 + mu2 + 1)
    else:
        head = math.log((2 * n + mu1 + mu2) / 2) + log_gamma(n + mu1 + mu2 + (e1 + e2) / 2)
    log_eta2 = (
        head
        + log_gamma(qn.jacobi_degree + 1)
        - log_gamma(n + mu1 + (1 + e1 - e2) / 2)
        - log_gamma(n + mu2 + (1 + e2 - e1) / 2)
    )
    return math.exp(log_eta2 / 2)


def radial_norm_constant(qn: QuantumNumbers, params: ModelParams) -> float:
    """Closed-form xi normalizing radial_factor against r^(2mu1+2mu2+1) dr."""
    mu = float(params.mu)
    l, four_n = qn.l, 2 * qn.two_n
    beta = float(spectra.beta(params, qn))
    log_xi2 = (
        log_gamma(l + 1)
        - log_gamma(l + four_n + 2 * mu + 1)
        + (2 * mu + 2) * math.log(beta)
        - math.log(2 * l + four_n + 2 * mu + 1)
    )
    return math.exp(log_xi2 / 2)


@dataclass(frozen=True)
class WavefunctionBundle:
    qn: QuantumNumbers
    params: ModelParams
    exact_unnormalized: FunctionExpr
    norm_constant: float
    energy: Fraction
    beta: Fraction

    def __call__(self, x1: float, x2: float) -> float:
        return self.norm_constant * evaluate(self.exact_unnormalized, (x1, x2))

    def forced_norm_constant(self, quad_order: int | None = None) -> float:
        """Constant that makes the quadrature norm of the exact expression one."""
        nrm = inner_product(self.exact_unnormalized, self.exact_unnormalized, self.params, quad_order)
        return 1.0 / math.sqrt(nrm)

    def normalization_ratio(self, quad_order: int | None = None) -> float:
        return self.forced_norm_constant(quad_order) / self.norm_constant

    def sidecar(self) -> dict:
        rec = self.qn.as_dict()
        rec.update(energy=fmt_rational(self.energy), beta=fmt_rational(self.beta), norm=self.norm_constant)
        return rec


def full_wavefunction(qn: QuantumNumbers, params: ModelParams) -> WavefunctionBundle:
    params.require_bound_states()
    psi = angular_harmonic(qn, params) * _radial_terms(qn, params, 0)
    assert all(k[2] >= 0 for k in psi.keys()), "negative power of r in an eigenfunction"
    assert len(psi.rates()) == 1
    return WavefunctionBundle(
        qn=qn,
        params=params,
        exact_unnormalized=psi,
        norm_constant=angular_norm_constant(qn, params) * radial_norm_constant(qn, params),
        energy=spectra.energy(params, qn),
        beta=spectra.beta(params, qn),
    )


# ---------------------------------------------------------------------------
# quadrature inner products

Operand = Union[WavefunctionBundle, FunctionExpr]


def _unpack(f: Operand) -> tuple[FunctionExpr, float]:
    if isinstance(f, WavefunctionBundle):
        return f.exact_unnormalized, f.norm_constant
    return f, 1.0


def _order_for(degree: int, quad_order: int | None) -> int:
    if quad_order is None:
        return degree // 2 + 4
    if 2 * quad_order - 1 < degree:
        raise ValueError(f"quadrature order {quad_order} cannot integrate degree {degree} exactly")
    return quad_order


def _angular_moments(pairs: set, params: ModelParams, quad_order: int | None) -> dict:
    """Integral of cos^A sin^E |cos|^(2mu1) |sin|^(2mu2) over [0, 2pi] for even A, E."""
    if not pairs:
        return {}
    a = float(params.mu1) - 0.5
    b = float(params.mu2) - 0.5
    max_deg = max((A + E) // 2 for A, E in pairs)
    rule = gauss_jacobi(_order_for(max_deg, quad_order), a, b)
    c2 = (1 - rule.nodes) / 2  # cos^2
    s2 = (1 + rule.nodes) / 2  # sin^2
    scale = 2.0 ** (-(a + b))
    return {(A, E): scale * float(np.dot(rule.weights, c2 ** (A // 2) * s2 ** (E // 2))) for A, E in pairs}


def _radial_moments(pairs: set, params: ModelParams, quad_order: int | None) -> dict:
    """Integral over (0, inf) of r^p exp(-S r) r^(2mu+1) dr for integer p >= 0, S > 0."""
    if not pairs:
        return {}
    mu = float(params.mu)
    if any(p < 0 for p, _ in pairs):
        raise ValueError("radial integrand has a negative power of r; not a Laguerre polynomial")
    if any(S <= 0 for _, S in pairs):
        raise ValueError("combined decay rate must be positive")
    max_deg = max(p for p, _ in pairs)
    rule = gauss_laguerre(_order_for(max_deg, quad_order), 2 * mu + 1)
    out = {}
    for p, S in pairs:
        base = float(np.dot(rule.weights, rule.nodes**p))
        out[(p, S)] = base / float(S) ** (p + 2 * mu + 2)
    return out


def inner_product(f: Operand, g: Operand, params: ModelParams, quad_order: int | None = None) -> float:
    """Weighted L2 product over the plane; bundles enter normalized."""
    fe, cf = _unpack(f)
    ge, cg = _unpack(g)
    ang_keys, rad_keys, contributions = set(), set(), []
    for (a, e, c, s), v in fe.items():
        for (a2, e2, c2, s2), v2 in ge.items():
            A, E = a + a2, e + e2
            if A % 2 or E % 2:
                continue  # odd under a reflection: integrates to zero
            rad = (a + e + c + a2 + e2 + c2, s + s2)
            ang_keys.add((A, E))
            rad_keys.add(rad)
            contributions.append((float(v) * float(v2), (A, E), rad))
    ang = _angular_moments(ang_keys, params, quad_order)
    rad = _radial_moments(rad_keys, params, quad_order)
    total = sum(w * ang[ak] * rad[rk] for w, ak, rk in contributions)
    return cf * cg * total


def angular_inner_product(f: FunctionExpr, g: FunctionExpr, params: ModelParams, quad_order: int | None = None) -> float:
    """Product of the restrictions to the unit circle under |cos|^(2mu1) |sin|^(2mu2) dphi."""
    keys, contributions = set(), []
    for (a, e, _, s), v in f.items():
        for (a2, e2, _, s2), v2 in g.items():
            if (a + a2) % 2 or (e + e2) % 2:
                continue
            w = float(v) * float(v2) * math.exp(-float(s + s2))
            keys.add((a + a2, e + e2))
            contributions.append((w, (a + a2, e + e2)))
    ang = _angular_moments(keys, params, quad_order)
    return sum(w * ang[k] for w, k in contributions)


def radial_inner_product(f: FunctionExpr, g: FunctionExpr, params: ModelParams, quad_order: int | None = None) -> float:
    """Product of purely radial expressions under r^(2mu1+2mu2+1) dr."""
    keys, contributions = set(), []
    for (a, e, c, s), v in f.items():
        for (a2, e2, c2, s2), v2 in g.items():
            if a or e or a2 or e2:
                raise ValueError("radial_inner_product needs expressions in r only")
            keys.add((c + c2, s + s2))
            contributions.append((float(v) * float(v2), (c + c2, s + s2)))
    rad = _radial_moments(keys, params, quad_order)
    return sum(w * rad[k] for w, k in contributions)


# ---------------------------------------------------------------------------
# Gram matrices


def angular_states(max_two_n: int) -> list[QuantumNumbers]:
    out = []
    for two_n in range(max_two_n + 1):
        for e1, e2 in ((0, 0), (1, 1)) if two_n % 2 == 0 else ((1, 0), (0, 1)):
            if e1 + e2 <= two_n:
                out.append(QuantumNumbers(0, two_n, e1, e2))
    return out


def angular_gram(params: ModelParams, max_two_n: int, quad_order: int | None = None):
    states = angular_states(max_two_n)
    funcs = [angular_harmonic(qn, params) for qn in states]
    etas = [angular_norm_constant(qn, params) for qn in states]
    G = np.empty((len(states), len(states)))
    for i in range(len(states)):
        for j in range(i, len(states)):
            G[i, j] = G[j, i] = etas[i] * etas[j] * angular_inner_product(funcs[i], funcs[j], params, quad_order)
    return states, G


def radial_gram(params: ModelParams, two_n: int, max_l: int, quad_order: int | None = None):
    e = (0, 0) if two_n % 2 == 0 else (1, 0)
    states = [QuantumNumbers(l, two_n, *e) for l in range(max_l + 1)]
    funcs = [radial_factor(qn, params) for qn in states]
    xis = [radial_norm_constant(qn, params) for qn in states]
    G = np.empty((len(states), len(states)))
    for i in range(len(states)):
        for j in range(i, len(states)):
            G[i, j] = G[j, i] = xis[i] * xis[j] * radial_inner_product(funcs[i], funcs[j], params, quad_order)
    return states, G


def state_gram(params: ModelParams, states: Sequence[QuantumNumbers], quad_order: int | None = None):
    bundles = [full_wavefunction(qn, params) for qn in states]
    G = np.empty((len(states), len(states)))
    for i in range(len(states)):
        for j in range(i, len(states)):
            G[i, j] = G[j, i] = inner_product(bundles[i], bundles[j], params, quad_order)
    return list(states), G


def sample_grid(bundle: WavefunctionBundle, grid: tuple[int, int], box: tuple[float, float, float, float]):
    """Rows (x1, x2, psi) of the normalized state on a W x H Cartesian grid."""
    W, H = grid
    x0, x1, y0, y1 = box
    xs = np.linspace(x0, x1, W)
    ys = np.linspace(y0, y1, H)
    return [(float(x), float(y), bundle(float(x), float(y))) for y in ys for x in xs]
