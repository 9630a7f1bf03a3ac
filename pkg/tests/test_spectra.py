import itertools
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from dunkl_coulomb.operators import ModelParams
from dunkl_coulomb.spectra import (
    QuantumNumbers,
    beta,
    energy,
    enumerate_level,
    j3_eigenvalue_squared,
    kappa,
    l0_eigenvalue,
    nu,
    separation_constant,
    spectral_data,
    spectrum_record,
)

P0 = ModelParams(0, 0, -1)
P12 = ModelParams(1, 2, -1)

mus = st.fractions(min_value=0, max_value=5, max_denominator=12)
params_st = st.builds(ModelParams, mus, mus, st.fractions(max_value=Fraction(-1, 10), min_value=-5, max_denominator=12))


@st.composite
def quantum_numbers(draw):
    e1, e2 = draw(st.integers(0, 1)), draw(st.integers(0, 1))
    k = draw(st.integers(0, 6))
    return QuantumNumbers(draw(st.integers(0, 6)), 2 * k + e1 + e2, e1, e2)


def brute_force_level(N):
    found = []
    for l, two_n, e1, e2 in itertools.product(range(N + 1), range(N + 1), (0, 1), (0, 1)):
        if l + two_n != N:
            continue
        try:
            found.append(QuantumNumbers(l, two_n, e1, e2))
        except ValueError:
            pass
    return found


def test_quantum_number_invariants():
    with pytest.raises(ValueError):
        QuantumNumbers(0, 1, 0, 0)  # half-integer n needs an odd sector
    with pytest.raises(ValueError):
        QuantumNumbers(0, 0, 1, 1)  # Jacobi degree would be negative
    with pytest.raises(ValueError):
        QuantumNumbers(-1, 0)
    qn = QuantumNumbers(1, 3, 0, 1)
    assert qn.n == Fraction(3, 2) and qn.sector == -1 and qn.jacobi_degree == 1 and qn.level == 4


def test_energy_examples():
    assert energy(P0, QuantumNumbers(0, 0)) == -2
    assert energy(P0, QuantumNumbers(2, 0)) == energy(P0, QuantumNumbers(0, 2))
    assert energy(P12, QuantumNumbers(1, 1, 1, 0)) == Fraction(-2, 121)


def test_beta_examples():
    assert beta(P0, QuantumNumbers(0, 0)) == 4
    assert beta(P12, QuantumNumbers(1, 1, 0, 1)) == Fraction(4, 11)


def test_bound_state_routines_need_negative_alpha():
    with pytest.raises(ValueError):
        energy(ModelParams(0, 0, 1), QuantumNumbers(0, 0))


@given(params_st, quantum_numbers())
def test_beta_squared_is_minus_eight_energy(params, qn):
    assert beta(params, qn) ** 2 + 8 * energy(params, qn) == 0
    assert kappa(params, qn) ** 2 * (-8 * energy(params, qn)) == 4 * params.alpha**2


def test_j3_examples():
    assert j3_eigenvalue_squared(P12, QuantumNumbers(0, 0)) == 0
    assert j3_eigenvalue_squared(P0, QuantumNumbers(0, 3, 1, 0)) == 9
    assert j3_eigenvalue_squared(P12, QuantumNumbers(0, 2, 0, 0)) == 16


def test_zero_j3_eigenvalue_is_nondegenerate():
    p = ModelParams(Fraction(1, 4), Fraction(3, 4), -1)
    angular = [qn for N in range(7) for qn in brute_force_level(N) if qn.l == 0]
    zero = [qn for qn in angular if j3_eigenvalue_squared(p, qn) == 0]
    assert zero == [QuantumNumbers(0, 0, 0, 0)]


def test_l0_eigenvalue_examples():
    assert l0_eigenvalue(P0, QuantumNumbers(0, 0)) == Fraction(1, 2)
    # 2 + 2 + 1/4 + 3/4 + 1/2
    assert l0_eigenvalue(ModelParams(Fraction(1, 4), Fraction(3, 4), -1), QuantumNumbers(2, 2)) == Fraction(11, 2)


@given(params_st, quantum_numbers())
def test_spectral_data_consistency(params, qn):
    d = spectral_data(params, qn)
    assert d.nu == d.l0_eigenvalue - qn.l == nu(params, qn)
    assert d.l0_eigenvalue == d.kappa
    assert d.energy == -params.alpha**2 / (2 * d.kappa**2)
    assert d.beta == 2 * abs(params.alpha) / d.kappa


@given(params_st, quantum_numbers())
def test_j3_square_and_separation_constant(params, qn):
    m2 = separation_constant(params, qn)
    if qn.sector == 1:
        assert j3_eigenvalue_squared(params, qn) == m2
    else:
        assert j3_eigenvalue_squared(params, qn) == m2 + 4 * params.mu1 * params.mu2


def test_enumerate_level_examples():
    assert enumerate_level(P0, 0) == [QuantumNumbers(0, 0, 0, 0)]
    assert enumerate_level(P0, 1) == [QuantumNumbers(1, 0), QuantumNumbers(0, 1, 1, 0), QuantumNumbers(0, 1, 0, 1)]
    assert len(enumerate_level(P0, 4)) == 9


@pytest.mark.parametrize("N", range(8))
def test_enumeration_matches_brute_force(N):
    assert sorted(enumerate_level(P12, N)) == sorted(brute_force_level(N))
    assert len(enumerate_level(P12, N)) == 2 * N + 1


@given(params_st, st.integers(0, 6))
def test_energy_constant_on_levels(params, N):
    assert len({energy(params, qn) for qn in enumerate_level(params, N)}) == 1


def test_mu_zero_reduction():
    for N in range(6):
        for qn in enumerate_level(P0, N):
            assert energy(P0, qn) == Fraction(-1, 2) / (N + Fraction(1, 2)) ** 2
            j = j3_eigenvalue_squared(P0, qn)
            assert j == (qn.two_n) ** 2  # (2m)^2 or (2k)^2: perfect squares of integers


def test_spectrum_record_schema():
    rec = spectrum_record(P12, QuantumNumbers(1, 1, 1, 0))
    assert rec == {"l": 1, "two_n": 1, "e1": 1, "e2": 0, "kappa": "11/2", "energy": "-2/121",
                   "beta": "4/11", "j3_sq": "15/1"}
