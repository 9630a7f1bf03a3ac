"""Executable identity suite for the Dunkl-Coulomb model.

Operator identities are checked extensionally: both sides are applied to a
family of canonical basis terms and the difference must be literally zero in
rational arithmetic.  Each check also has one documented single-coefficient
mutation; running a check with ``mutate=True`` must make it fail.
"""

from __future__ import annotations

import os
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Optional, Sequence

import numpy as np

from . import spectra
from .operators import (
    IDENTITY,
    REFL1,
    REFL2,
    ModelParams,
    Operator,
    Scale,
    Sum,
    anticommutator,
    catalogue,
    commutator,
    scalar,
)
from .spectra import QuantumNumbers
from .term_algebra import FunctionExpr, evaluate, fmt_rational, term, to_json
from .wavefunctions import angular_harmonic, angular_states, full_wavefunction, radial_factor

CHECKS = (
    "so21",
    "casimir",
    "constants_of_motion",
    "invariance_algebra",
    "su2",
    "eigenfunctions",
    "separation",
)

MUTATIONS = {
    "so21": "L0 shifted by +1 (identity added to the compact generator)",
    "casimir": "constant -1/4 in the Casimir expression replaced by -1/2",
    "constants_of_motion": "mu1 coefficient of the D1 R1 term in A1 raised by 1",
    "invariance_algebra": "reflection factor 1 + 2 mu1 R1 replaced by 1 + (2 mu1 + 1) R1",
    "su2": "reflection factor 1 + 2 mu2 R2 replaced by 1 + (2 mu2 + 1) R2",
    "eigenfunctions": "energy E replaced by E + 1",
    "separation": "separation constant m^2 replaced by m^2 + 1",
}

DEFAULT_PARAMS = (
    ModelParams(0, 0, -1),
    ModelParams(Fraction(1, 4), Fraction(3, 4), -1),
    ModelParams(1, 2, -1),
)


@dataclass(frozen=True)
class ProbeFamily:
    """Basis terms used to test operator identities.

    All canonical keys with a <= a_max, eps in {0, 1}, c in [c_min, c_max],
    s in rates, followed by n_random seeded random terms with random rational
    coefficients, a <= random_a_max and |c| <= random_c_abs.
    """

    a_max: int = 6
    c_min: int = -4
    c_max: int = 4
    rates: tuple = (Fraction(0), Fraction(1, 2), Fraction(1))
    n_random: int = 50
    random_a_max: int = 10
    random_c_abs: int = 6
    random_rates: tuple = (Fraction(0), Fraction(1, 3), Fraction(1, 2), Fraction(1), Fraction(3, 2), Fraction(2))
    seed: int = 0

    def terms(self) -> list[FunctionExpr]:
        out = [
            term(1, a, eps, c, s)
            for s in self.rates
            for a in range(self.a_max + 1)
            for eps in (0, 1)
            for c in range(self.c_min, self.c_max + 1)
        ]
        rng = random.Random(self.seed)
        for _ in range(self.n_random):
            coeff = Fraction(rng.choice([-1, 1]) * rng.randint(1, 9), rng.randint(1, 9))
            out.append(
                term(
                    coeff,
                    rng.randint(0, self.random_a_max),
                    rng.randint(0, 1),
                    rng.randint(-self.random_c_abs, self.random_c_abs),
                    rng.choice(self.random_rates),
                )
            )
        return out

    def describe(self) -> str:
        rates = ",".join(str(s) for s in self.rates)
        return (
            f"canonical(a<={self.a_max},eps<=1,c in [{self.c_min},{self.c_max}],s in {{{rates}}})"
            f"+random(n={self.n_random},a<={self.random_a_max},|c|<={self.random_c_abs},seed={self.seed})"
        )


@dataclass(frozen=True)
class SuiteConfig:
    seed: int = 0
    l_max: int = 3
    two_n_max: int = 4
    su2_max_level: int = 3
    separation_two_n_max: int = 8
    separation_l_max: int = 1
    fd_step: float = 1e-4
    fd_tolerance: float = 1e-5

    def family(self) -> ProbeFamily:
        return ProbeFamily(seed=self.seed)


@dataclass
class CheckReport:
    name: str
    params: dict
    status: str
    exactness: str
    residual: Optional[str] = None
    float_residual: Optional[float] = None
    tolerance: Optional[float] = None
    witness: Optional[dict] = None
    family: Optional[str] = None
    mutation: Optional[str] = None
    elapsed_ms: int = 0

    @property
    def passed(self) -> bool:
        return self.status == "pass"

    def to_dict(self, timing: bool = True) -> dict:
        d = asdict(self)
        if not timing:
            d.pop("elapsed_ms")
        return d


def _params_dict(params: ModelParams) -> dict:
    return {"mu1": fmt_rational(params.mu1), "mu2": fmt_rational(params.mu2), "alpha": fmt_rational(params.alpha)}


Residual = Callable[[FunctionExpr], FunctionExpr]


@dataclass
class _ExactRun:
    worst: Fraction = Fraction(0)
    witness: Optional[dict] = None

    def feed(self, label: str, fn: Residual, inputs: Iterable[FunctionExpr], describe=None) -> None:
        for idx, f in enumerate(inputs):
            res = fn(f)
            if res.is_zero():
                continue
            size = res.max_abs_coeff()
            if size > self.worst:
                self.worst = size
                self.witness = {"relation": label, "input": to_json(f), "image": to_json(res)}
                if describe is not None:
                    self.witness["state"] = describe(idx)


def _finish(name, params, run: _ExactRun, start, family=None, mutation=None, float_residual=None, tol=None):
    ok = run.worst == 0 and (float_residual is None or float_residual <= tol)
    exactness = "exact" if float_residual is None else "mixed"
    return CheckReport(
        name=name,
        params=_params_dict(params),
        status="pass" if ok else "fail",
        exactness=exactness,
        residual=fmt_rational(run.worst),
        float_residual=float_residual,
        tolerance=tol,
        witness=run.witness,
        family=family,
        mutation=mutation,
        elapsed_ms=int(round((time.perf_counter() - start) * 1000)),
    )


def _op_residual(op: Operator) -> Residual:
    return op.apply


def _refl_factor(coeff: Fraction, refl: Operator) -> Operator:
    return IDENTITY + Scale(coeff, refl)


# ---------------------------------------------------------------------------
# checks


def check_so21(params: ModelParams, family: ProbeFamily = ProbeFamily(), mutate: bool = False) -> CheckReport:
    start = time.perf_counter()
    cat = catalogue(params)
    l0, lp, lm = cat["L0"], cat["Lplus"], cat["Lminus"]
    if mutate:
        l0 = l0 + IDENTITY
    terms = family.terms()
    run = _ExactRun()
    run.feed("[L0,L+] - L+", _op_residual(commutator(l0, lp) - lp), terms)
    run.feed("[L0,L-] + L-", _op_residual(commutator(l0, lm) + lm), terms)
    run.feed("[L+,L-] + 2 L0", _op_residual(commutator(lp, lm) + Scale(2, l0)), terms)
    return _finish("so21", params, run, start, family.describe(), MUTATIONS["so21"] if mutate else None)


def casimir_expression(params: ModelParams, constant: Fraction = Fraction(-1, 4)) -> Operator:
    """-Jcal^2 + (mu1 R1 + mu2 R2)^2 + constant, i.e. J3^2 + (mu1 R1 + mu2 R2)^2 - 1/4."""
    jcal = catalogue(params)["Jcal"]
    mix = Scale(params.mu1, REFL1) + Scale(params.mu2, REFL2)
    return Sum([-(jcal @ jcal), mix @ mix, scalar(constant)])


def check_casimir(params: ModelParams, family: ProbeFamily = ProbeFamily(), mutate: bool = False, two_n_max: int = 4) -> CheckReport:
    start = time.perf_counter()
    cas = catalogue(params)["casimir_so21"]
    rhs = casimir_expression(params, Fraction(-1, 2) if mutate else Fraction(-1, 4))
    run = _ExactRun()
    run.feed("C - (J3^2 + (mu1 R1 + mu2 R2)^2 - 1/4)", _op_residual(cas - rhs), family.terms())
    # on a degree-2n Dunkl harmonic the Casimir is nu(nu - 1) with nu = 2n + mu1 + mu2 + 1/2
    states = angular_states(two_n_max)
    harmonics = [angular_harmonic(qn, params) for qn in states]
    for qn, h in zip(states, harmonics):
        nu = spectra.nu(params, qn)
        run.feed(
            f"C h - nu(nu-1) h  [two_n={qn.two_n}, e=({qn.e1},{qn.e2})]",
            lambda f, nu=nu: rhs.apply(f) - f.scale(nu * (nu - 1)),
            [h],
        )
    return _finish("casimir", params, run, start, family.describe(), MUTATIONS["casimir"] if mutate else None)


def check_constants_of_motion(params: ModelParams, family: ProbeFamily = ProbeFamily(), mutate: bool = False) -> CheckReport:
    start = time.perf_counter()
    cat = catalogue(params)
    ham, jcal, a1, a2 = cat["hamiltonian"], cat["Jcal"], cat["A1"], cat["A2"]
    if mutate:
        a1 = a1 + Scale(-1 / params.alpha, cat["D1"] @ REFL1)
    terms = family.terms()
    run = _ExactRun()
    for label, op in (("[H,Jcal]", jcal), ("[H,A1]", a1), ("[H,A2]", a2), ("[H,R1]", REFL1), ("[H,R2]", REFL2)):
        run.feed(label, _op_residual(commutator(ham, op)), terms)
    return _finish(
        "constants_of_motion", params, run, start, family.describe(), MUTATIONS["constants_of_motion"] if mutate else None
    )


def check_invariance_algebra(params: ModelParams, family: ProbeFamily = ProbeFamily(), mutate: bool = False) -> CheckReport:
    start = time.perf_counter()
    cat = catalogue(params)
    ham, jcal, a1, a2, q = cat["hamiltonian"], cat["Jcal"], cat["A1"], cat["A2"], cat["Q"]
    mu1, mu2, alpha = params.mu1, params.mu2, params.alpha
    f1 = _refl_factor(2 * mu1 + (1 if mutate else 0), REFL1)
    f2 = _refl_factor(2 * mu2, REFL2)
    q_value = (2 * mu1**2 + 2 * mu2**2 + Fraction(1, 2)) / alpha**2
    relations = [
        ("[A1,A2] + (2/alpha^2) H Jcal", commutator(a1, a2) + Scale(2 / alpha**2, ham @ jcal)),
        ("[A1,Jcal] - A2 (1 + 2 mu1 R1)", commutator(a1, jcal) - a2 @ f1),
        ("[Jcal,A2] - A1 (1 + 2 mu2 R2)", commutator(jcal, a2) - a1 @ f2),
        ("{Jcal,R1}", anticommutator(jcal, REFL1)),
        ("{Jcal,R2}", anticommutator(jcal, REFL2)),
        ("{A1,R1}", anticommutator(a1, REFL1)),
        ("[A1,R2]", commutator(a1, REFL2)),
        ("{A2,R2}", anticommutator(a2, REFL2)),
        ("[A2,R1]", commutator(a2, REFL1)),
        ("[R1,R2]", commutator(REFL1, REFL2)),
        ("Q - (H/alpha^2)(2 mu1^2 + 2 mu2^2 + 1/2) - 1", q - Scale(q_value, ham) - IDENTITY),
    ]
    terms = family.terms()
    run = _ExactRun()
    for label, op in relations:
        run.feed(label, _op_residual(op), terms)
    for label, op in (("[Q,A1]", a1), ("[Q,A2]", a2), ("[Q,Jcal]", jcal)):
        run.feed(label, _op_residual(commutator(q, op)), terms)
    if alpha < 0:
        ground = full_wavefunction(QuantumNumbers(0, 0), params)
        target = ground.energy * q_value + 1
        run.feed("Q psi_00 - ((E/alpha^2)(2mu1^2+2mu2^2+1/2) + 1) psi_00",
                 lambda f: q.apply(f) - f.scale(target), [ground.exact_unnormalized])
    return _finish(
        "invariance_algebra", params, run, start, family.describe(), MUTATIONS["invariance_algebra"] if mutate else None
    )


def check_su2_deformation(params: ModelParams, N: int, mutate: bool = False) -> CheckReport:
    """Renormalized relations on the energy eigenspace of level N.

    On that eigenspace sqrt(alpha^2 / (-2H)) is the rational kappa, and with
    J1 = kappa A1, J2 = kappa A2, J3 = -i Jcal the deformed su(2) relations read
    [J1, J2] = Jcal, [J2, Jcal] = -J1 (1 + 2 mu2 R2), [Jcal, J1] = -J2 (1 + 2 mu1 R1).
    """
    params.require_bound_states()
    start = time.perf_counter()
    cat = catalogue(params)
    ham, jcal, a1, a2 = cat["hamiltonian"], cat["Jcal"], cat["A1"], cat["A2"]
    mu1, mu2 = params.mu1, params.mu2
    f1 = _refl_factor(2 * mu1, REFL1)
    f2 = _refl_factor(2 * mu2 + (1 if mutate else 0), REFL2)
    mix = Sum([Scale(mu1, REFL1), Scale(mu2, REFL2), Scale(2 * mu1 * mu2, REFL1 @ REFL2)])
    run = _ExactRun()
    states = spectra.enumerate_level(params, N)
    bundles = [full_wavefunction(qn, params) for qn in states]
    psis = [b.exact_unnormalized for b in bundles]
    k = spectra.kappa(params, states[0])
    energy = bundles[0].energy

    def describe(i):
        return states[i].as_dict()

    run.feed("H psi - E psi", lambda f: ham.apply(f) - f.scale(energy), psis, describe)
    j1, j2 = Scale(k, a1), Scale(k, a2)
    run.feed("[J1,J2] - Jcal", _op_residual(commutator(j1, j2) - jcal), psis, describe)
    run.feed("[J2,Jcal] + J1 (1 + 2 mu2 R2)", _op_residual(commutator(j2, jcal) + j1 @ f2), psis, describe)
    run.feed("[Jcal,J1] + J2 (1 + 2 mu1 R1)", _op_residual(commutator(jcal, j1) + j2 @ f1), psis, describe)
    casimir = Sum([j1 @ j1, j2 @ j2, -(jcal @ jcal), mix])
    q_level = k * k - (mu1**2 + mu2**2 + Fraction(1, 4))
    run.feed("J1^2 + J2^2 + J3^2 + mix - (kappa^2 - mu1^2 - mu2^2 - 1/4)",
             lambda f: casimir.apply(f) - f.scale(q_level), psis, describe)
    return _finish(f"su2[N={N}]", params, run, start, f"level {N} eigenbasis ({len(states)} states)",
                   MUTATIONS["su2"] if mutate else None)


def _states_in_range(l_max: int, two_n_max: int) -> list[QuantumNumbers]:
    out = []
    for l in range(l_max + 1):
        for qn in angular_states(two_n_max):
            out.append(QuantumNumbers(l, qn.two_n, qn.e1, qn.e2))
    return out


def check_eigenfunctions(params: ModelParams, l_max: int = 3, two_n_max: int = 4, mutate: bool = False) -> CheckReport:
    params.require_bound_states()
    start = time.perf_counter()
    ham = catalogue(params)["hamiltonian"]
    states = _states_in_range(l_max, two_n_max)
    run = _ExactRun()
    for qn in states:
        b = full_wavefunction(qn, params)
        e = b.energy + (1 if mutate else 0)
        run.feed("H psi - E psi", lambda f, e=e: ham.apply(f) - f.scale(e), [b.exact_unnormalized],
                 lambda _, qn=qn: qn.as_dict())
    return _finish("eigenfunctions", params, run, start, f"l<={l_max}, two_n<={two_n_max}, all sectors",
                   MUTATIONS["eigenfunctions"] if mutate else None)


@dataclass(frozen=True)
class PolarSeparation:
    """Separated polar equations for one state.

    radial_order holds the coefficients of A_r = c_d2 d^2/dr^2 + (c_d1/r) d/dr + alpha/r;
    angular_order holds the parameters entering B_phi.
    """

    m_squared: Fraction
    sector: int
    radial_order: dict = field(default_factory=dict)
    angular_order: dict = field(default_factory=dict)


def polar_separation(params: ModelParams, qn: QuantumNumbers) -> PolarSeparation:
    return PolarSeparation(
        m_squared=spectra.separation_constant(params, qn),
        sector=qn.sector,
        radial_order={"d2": Fraction(-1, 2), "d1_over_r": -(1 + 2 * params.mu) / 2, "alpha_over_r": params.alpha},
        angular_order={"mu1": params.mu1, "mu2": params.mu2, "R1": 1 - 2 * qn.e1, "R2": 1 - 2 * qn.e2},
    )


def radial_ode_residual(params: ModelParams, qn: QuantumNumbers, m_squared: Fraction,
                        step: float = 1e-4, grid: Optional[np.ndarray] = None) -> tuple[float, float]:
    """Max relative central-difference residual of (A_r - E + m^2/(2 r^2)) R = 0.

    Returns (max relative residual, radius where it occurs).  The residual at
    each radius is divided by the sum of the magnitudes of the individual terms.
    """
    if grid is None:
        grid = np.geomspace(0.1, 20.0, 200)
    rf = radial_factor(qn, params)
    E = float(spectra.energy(params, qn))
    mu = float(params.mu)
    alpha = float(params.alpha)
    m2 = float(m_squared)
    worst, where = 0.0, float(grid[0])
    for r in grid:
        f0 = evaluate(rf, (r, 0.0))
        fp = evaluate(rf, (r + step, 0.0))
        fm = evaluate(rf, (r - step, 0.0))
        d1 = (fp - fm) / (2 * step)
        d2 = (fp - 2 * f0 + fm) / step**2
        parts = (-0.5 * d2, -(1 + 2 * mu) / (2 * r) * d1, alpha / r * f0, -E * f0, m2 / (2 * r * r) * f0)
        scale = sum(abs(p) for p in parts)
        if scale == 0.0:
            continue
        rel = abs(sum(parts)) / scale
        if rel > worst:
            worst, where = rel, float(r)
    return worst, where


def check_separation(params: ModelParams, qn: QuantumNumbers, mutate: bool = False,
                     step: float = 1e-4, tolerance: float = 1e-5) -> CheckReport:
    params.require_bound_states()
    start = time.perf_counter()
    sep = polar_separation(params, qn)
    m2 = sep.m_squared + (1 if mutate else 0)
    jcal = catalogue(params)["Jcal"]
    h = angular_harmonic(qn, params)
    # J3^2 = 2 B_phi + 2 mu1 mu2 (1 - R1 R2) and B_phi = m^2/2 on the harmonic
    j3_sq = m2 + 2 * params.mu1 * params.mu2 * (1 - sep.sector)
    run = _ExactRun()
    run.feed("Jcal^2 h + (m^2 + 2 mu1 mu2 (1 - R1R2)) h", lambda f: jcal.apply(jcal.apply(f)) + f.scale(j3_sq), [h],
             lambda _: qn.as_dict())
    fd, where = radial_ode_residual(params, qn, m2, step)
    if fd > tolerance and run.witness is None:
        run.witness = {"relation": "radial ODE", "state": qn.as_dict(), "r": where}
    return _finish(f"separation[{qn.l},{qn.two_n},{qn.e1},{qn.e2}]", params, run, start,
                   None, MUTATIONS["separation"] if mutate else None, float_residual=fd, tol=tolerance)


def merge_reports(name: str, reports: Sequence[CheckReport]) -> CheckReport:
    """Fold several reports into one carrying the worst residuals."""
    first_fail = next((r for r in reports if not r.passed), None)
    worst_exact = max((Fraction(r.residual) for r in reports if r.residual is not None), default=None)
    floats = [r.float_residual for r in reports if r.float_residual is not None]
    return CheckReport(
        name=name,
        params=reports[0].params,
        status="fail" if first_fail else "pass",
        exactness=reports[0].exactness,
        residual=None if worst_exact is None else fmt_rational(worst_exact),
        float_residual=max(floats) if floats else None,
        tolerance=reports[0].tolerance,
        witness=first_fail.witness if first_fail else None,
        family=f"{len(reports)} sub-checks",
        mutation=reports[0].mutation,
        elapsed_ms=sum(r.elapsed_ms for r in reports),
    )


def check_separation_range(params: ModelParams, two_n_max: int = 8, l_max: int = 1, mutate: bool = False,
                           step: float = 1e-4, tolerance: float = 1e-5) -> CheckReport:
    reports = [
        check_separation(params, QuantumNumbers(l, qn.two_n, qn.e1, qn.e2), mutate, step, tolerance)
        for l in range(l_max + 1)
        for qn in angular_states(two_n_max)
    ]
    return merge_reports("separation", reports)


# ---------------------------------------------------------------------------
# suite


def _run_one(task) -> list[CheckReport]:
    name, params, config, mutate = task
    fam = config.family()
    if name == "so21":
        return [check_so21(params, fam, mutate)]
    if name == "casimir":
        return [check_casimir(params, fam, mutate)]
    if name == "constants_of_motion":
        return [check_constants_of_motion(params, fam, mutate)]
    if name == "invariance_algebra":
        return [check_invariance_algebra(params, fam, mutate)]
    if params.alpha >= 0:
        return []  # the remaining checks need bound states
    if name == "su2":
        levels = [check_su2_deformation(params, N, mutate) for N in range(config.su2_max_level + 1)]
        merged = merge_reports("su2", levels)
        merged.family = f"eigenbases of levels 0..{config.su2_max_level}"
        return [merged]
    if name == "eigenfunctions":
        return [check_eigenfunctions(params, config.l_max, config.two_n_max, mutate)]
    if name == "separation":
        return [check_separation_range(params, config.separation_two_n_max, config.separation_l_max, mutate,
                                       config.fd_step, config.fd_tolerance)]
    raise KeyError(name)


def _worker_count() -> int:
    try:
        return max(1, int(os.environ.get("DCP_THREADS", "1")))
    except ValueError:
        return 1


def run_suite(params_list: Sequence[ModelParams] = DEFAULT_PARAMS, config: SuiteConfig = SuiteConfig(),
              only: Optional[Iterable[str]] = None, mutate: Optional[str] = None) -> list[CheckReport]:
    """Run every selected check over the parameter list; output order is fixed."""
    names = list(CHECKS if only is None else only)
    for n in names + ([mutate] if mutate else []):
        if n not in CHECKS:
            raise KeyError(f"unknown check {n!r}; choose from {', '.join(CHECKS)}")
    tasks = [(n, p, config, n == mutate) for p in params_list for n in names]
    workers = min(_worker_count(), len(tasks))
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_run_one, tasks))
    else:
        results = [_run_one(t) for t in tasks]
    return [rep for batch in results for rep in batch]


def all_passed(reports: Iterable[CheckReport]) -> bool:
    return all(r.passed for r in reports)


__all__ = [
    "CHECKS",
    "MUTATIONS",
    "DEFAULT_PARAMS",
    "CheckReport",
    "PolarSeparation",
    "ProbeFamily",
    "SuiteConfig",
    "all_passed",
    "casimir_expression",
    "check_casimir",
    "check_constants_of_motion",
    "check_eigenfunctions",
    "check_invariance_algebra",
    "check_separation",
    "check_separation_range",
    "check_so21",
    "check_su2_deformation",
    "merge_reports",
    "polar_separation",
    "radial_ode_residual",
    "run_suite",
]
