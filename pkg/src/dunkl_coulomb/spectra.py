"""Closed-form spectral data of the Dunkl-Coulomb Hamiltonian.

With kappa = l + 2n + mu1 + mu2 + 1/2 the bound-state energy is
-alpha^2 / (2 kappa^2), the decay constant is beta = 2|alpha|/kappa and the
compact so(2,1) generator has eigenvalue kappa.  Half-integer n is stored as
the integer two_n so everything stays rational.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .operators import ModelParams
from .term_algebra import fmt_rational


@dataclass(frozen=True, order=True)
class QuantumNumbers:
    l: int
    two_n: int
    e1: int = 0
    e2: int = 0

    def __post_init__(self):
        if self.l < 0 or self.two_n < 0:
            raise ValueError("l and two_n must be nonnegative")
        if self.e1 not in (0, 1) or self.e2 not in (0, 1):
            raise ValueError("e1, e2 must be 0 or 1")
        if (self.two_n - self.e1 - self.e2) % 2:
            raise ValueError(
                f"n={self.n} is incompatible with sector (e1,e2)=({self.e1},{self.e2}): "
                "n must be an integer iff e1+e2 is even"
            )
        if self.two_n < self.e1 + self.e2:
            raise ValueError("Jacobi degree n-(e1+e2)/2 would be negative")

    @property
    def n(self) -> Fraction:
        return Fraction(self.two_n, 2)

    @property
    def level(self) -> int:
        return self.l + self.two_n

    @property
    def jacobi_degree(self) -> int:
        return (self.two_n - self.e1 - self.e2) // 2

    @property
    def sector(self) -> int:
        """Eigenvalue of R1 R2."""
        return -1 if (self.e1 + self.e2) % 2 else 1

    def as_dict(self) -> dict:
        return {"l": self.l, "two_n": self.two_n, "e1": self.e1, "e2": self.e2}


@dataclass(frozen=True)
class SpectralData:
    kappa: Fraction
    energy: Fraction
    beta: Fraction
    nu: Fraction
    l0_eigenvalue: Fraction


def kappa(params: ModelParams, qn: QuantumNumbers) -> Fraction:
    return qn.l + qn.two_n + params.mu + Fraction(1, 2)


def nu(params: ModelParams, qn: QuantumNumbers) -> Fraction:
    return qn.two_n + params.mu + Fraction(1, 2)


def l0_eigenvalue(params: ModelParams, qn: QuantumNumbers) -> Fraction:
    return kappa(params, qn)


def energy(params: ModelParams, qn: QuantumNumbers) -> Fraction:
    params.require_bound_states()
    return -params.alpha**2 / (2 * kappa(params, qn) ** 2)


def beta(params: ModelParams, qn: QuantumNumbers) -> Fraction:
    params.require_bound_states()
    return 2 * abs(params.alpha) / kappa(params, qn)


def j3_eigenvalue_squared(params: ModelParams, qn: QuantumNumbers) -> Fraction:
    """Square of the J3 eigenvalue; J3 itself has the pair of roots +-sqrt of this."""
    n = qn.n
    if qn.sector == 1:
        return 4 * n * (n + params.mu)
    return 4 * (n + params.mu1) * (n + params.mu2)


def separation_constant(params: ModelParams, qn: QuantumNumbers) -> Fraction:
    """m^2 = 4n(n + mu1 + mu2)."""
    return 4 * qn.n * (qn.n + params.mu)


def spectral_data(params: ModelParams, qn: QuantumNumbers) -> SpectralData:
    return SpectralData(
        kappa=kappa(params, qn),
        energy=energy(params, qn),
        beta=beta(params, qn),
        nu=nu(params, qn),
        l0_eigenvalue=l0_eigenvalue(params, qn),
    )


def enumerate_level(params: ModelParams, N: int) -> list[QuantumNumbers]:
    """All (l, n, e1, e2) with l + 2n = N; there are 2N + 1 of them."""
    if N < 0:
        raise ValueError("level must be nonnegative")
    states = []
    for two_n in range(N + 1):
        l = N - two_n
        if two_n == 0:
            sectors = [(0, 0)]
        elif two_n % 2 == 0:
            sectors = [(0, 0), (1, 1)]
        else:
            sectors = [(1, 0), (0, 1)]
        states.extend(QuantumNumbers(l, two_n, e1, e2) for e1, e2 in sectors)
    return states


def states_up_to(params: ModelParams, max_level: int) -> list[QuantumNumbers]:
    return [qn for N in range(max_level + 1) for qn in enumerate_level(params, N)]


def spectrum_record(params: ModelParams, qn: QuantumNumbers) -> dict:
    rec = qn.as_dict()
    rec.update(
        kappa=fmt_rational(kappa(params, qn)),
        energy=fmt_rational(energy(params, qn)),
        beta=fmt_rational(beta(params, qn)),
        j3_sq=fmt_rational(j3_eigenvalue_squared(params, qn)),
    )
    return rec
