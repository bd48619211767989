import math
from fractions import Fraction

import pytest

from hydrogrid.coordinate import (
    ZeroPivotError,
    alpha_assemble,
    alpha_inner,
    ansatz_constraint_system,
    c_coeff,
    continuum_energy,
    difference0_residual,
    difference_residual,
    eigen_data,
    laguerre_ref,
    solve_constraint_system,
    wavefunction,
    wavefunction_float,
)
from hydrogrid.numerics import QuadraticSurd, floats_close, surd_pow

DELTAS = [Fraction(1, 2), Fraction(1), Fraction(3, 2)]


def test_eigen_data_n1_delta1():
    ed = eigen_data(1, 1)
    assert ed.mu == QuadraticSurd(0, 1, 2)
    assert ed.E == QuadraticSurd(1, -1, 2)
    assert ed.q == QuadraticSurd(-1, 1, 2)
    assert floats_close(float(ed.E), -0.41421356237309504)


def test_eigen_data_small_delta_energy():
    # series oracle: E = -1/(2n^2) + delta^2/(8n^4) + O(delta^4)
    ed = eigen_data(1, Fraction(1, 10))
    assert floats_close(float(ed.E), -0.49875621120890270, rel_tol=1e-12)
    series = -0.5 + 0.01 / 8
    assert abs(float(ed.E) - series) < 1e-5


def test_eigen_data_invariants_exact():
    for delta in DELTAS:
        for n in range(1, 13):
            ed = eigen_data(n, delta)
            t = delta / n
            assert ed.mu * ed.mu - t * t == 1
            assert -delta * delta * ed.E + 1 == ed.mu
            assert ed.q * (ed.mu + t) == 1


def test_eigen_data_rejects_bad_input():
    with pytest.raises(ValueError):
        eigen_data(0, 1)
    with pytest.raises(ValueError):
        eigen_data(2, 0)


def test_continuum_energy():
    assert continuum_energy(2) == Fraction(-1, 8)
    assert continuum_energy(1) == Fraction(-1, 2)


def test_laguerre_ref_small_n():
    assert dict(laguerre_ref(1).coefficients) == {1: Fraction(1)}
    assert dict(laguerre_ref(2).coefficients) == {1: Fraction(1),
                                                  2: Fraction(-1, 2)}
    assert laguerre_ref(3).coefficients[2] == Fraction(-2, 3)
    for n in range(1, 10):
        assert laguerre_ref(n).coefficients[1] == 1


def test_laguerre_ref_evaluates_ground_state():
    ref = laguerre_ref(1)
    for r in (0.3, 1.0, 2.5):
        assert floats_close(ref.evaluate(r), r * math.exp(-r))


def test_c_coeff_values():
    for n in (0, 1, 4, 9):
        assert c_coeff(n, 0, 0) == 1
    assert c_coeff(3, 1, 1) == -18
    with pytest.raises(ValueError):
        c_coeff(2, 1, 2)
    with pytest.raises(ValueError):
        c_coeff(3, -1, 0)


@pytest.mark.parametrize("n", range(3, 13))
def test_alpha_inner_leading_terms(n):
    table = alpha_inner(n, min(4, n - 1))
    assert table.inner_coeff(2, 1) == Fraction(3 * n - 1, 3 * n * n * (n - 1))
    if n >= 4:
        assert table.inner_coeff(3, 1) == Fraction(1, n * (n - 2))
    if n >= 5:
        assert table.inner_coeff(4, 1) == Fraction(2 * (n - 1), n * n * (n - 3))
        assert table.inner_coeff(4, 2) == Fraction(
            15 * n ** 3 - 30 * n ** 2 + 5 * n + 2,
            15 * n ** 4 * (n - 1) * (n - 2) * (n - 3))


def test_alpha_inner_base_row_and_impossible_entries():
    table = alpha_inner(6, 5)
    for k in range(6):
        assert table.inner_coeff(k, 0) == 1
    assert table.inner_coeff(3, 2) == 0
    assert table.inner_coeff(2, 5) == 0


def test_alpha_inner_rejects_kmax_beyond_n():
    with pytest.raises(ValueError):
        alpha_inner(4, 4)


def test_alpha_assemble_examples():
    table = alpha_inner(3, 2)
    assert alpha_assemble(table, 0, 1) == 1
    assert alpha_assemble(table, 1, 1) == eigen_data(3, 1).mu
    assert alpha_assemble(table, 2, 1) == Fraction(31, 27)


def test_alpha_assemble_parity_structure():
    table = alpha_inner(7, 6)
    for delta in DELTAS:
        for k in range(7):
            value = alpha_assemble(table, k, delta)
            if k % 2 == 0:
                assert value.is_rational()
            else:
                assert value.D == 1 + (delta / 7) ** 2


def test_ansatz_rows_for_top_powers_vanish():
    for n in (2, 4, 7):
        system = ansatz_constraint_system(n, Fraction(1, 2))
        for row in (system.rows[n], system.rows[n - 1]):
            assert all(c.is_zero() for c in row)


def test_ansatz_n1_vacuous():
    system = ansatz_constraint_system(1, 1)
    assert solve_constraint_system(system) == (QuadraticSurd(1),)


def test_ansatz_n2_ratio_is_mu():
    system = ansatz_constraint_system(2, 1)
    alphas = solve_constraint_system(system)
    assert alphas[1] == 1
    assert alphas[0] == eigen_data(2, 1).mu


@pytest.mark.parametrize("delta", [Fraction(1, 2), Fraction(1)])
@pytest.mark.parametrize("n", range(1, 9))
def test_ansatz_solution_matches_alpha_tables(n, delta):
    solved = solve_constraint_system(ansatz_constraint_system(n, delta))
    table = alpha_inner(n, n - 1)
    expected = tuple(table.assembled(n - j, delta) for j in range(1, n + 1))
    assert solved == expected


def test_wavefunction_n1_closed_form():
    q = eigen_data(1, 1).q
    for k in (1, 2, 5, 9):
        assert wavefunction(1, 1, k) == k * surd_pow(q, k)


def test_wavefunction_rejects_bad_grid_index():
    with pytest.raises(ValueError):
        wavefunction(2, 1, 0)


def test_wavefunction_float_at_origin():
    for n in (1, 3, 5):
        assert wavefunction_float(n, Fraction(1, 2), 0.0) == 0.0


def test_wavefunction_float_matches_exact_grid_values():
    for n in (1, 2, 4):
        for delta in DELTAS:
            for k in (1, 2, 6):
                exact = float(wavefunction(n, delta, k))
                approx = wavefunction_float(n, delta, float(k * delta))
                assert floats_close(exact, approx, rel_tol=1e-9, abs_tol=1e-12)


def test_wavefunction_small_delta_tends_to_continuum():
    # continuum limit oracle: u_1(r) = r e^{-r}
    delta = Fraction(1, 100)
    for r in (0.5, 1.0, 2.0):
        lattice = wavefunction_float(1, delta, r)
        continuum = r * math.exp(-r)
        assert abs(lattice - continuum) < 5e-5 * continuum + 1e-12


@pytest.mark.parametrize("delta", DELTAS)
@pytest.mark.parametrize("n", range(1, 13))
def test_difference_residual_exactly_zero(n, delta):
    for k in range(1, 41):
        assert difference_residual(n, delta, k).is_zero()


def test_perturbed_eigenvalue_leaves_residual():
    # residual with mu shifted by 1/1000 is off by exactly shift*u_k
    n, delta, k = 2, Fraction(1), 3
    mu = eigen_data(n, delta).mu
    shift = Fraction(1, 1000)
    u_prev = wavefunction(n, delta, k - 1)
    u_here = wavefunction(n, delta, k)
    u_next = wavefunction(n, delta, k + 1)
    residual = (u_prev / 2 + u_next / 2 + u_here * (delta / k)
                - (mu + shift) * u_here)
    assert not residual.is_zero()
    assert residual == -shift * u_here


def test_difference0_residual_second_order():
    # Taylor-expansion oracle: the residual of the continuum solution is
    # O(delta^2) and shrinks by ~4 when delta halves
    u = laguerre_ref(2).evaluate
    energy = float(continuum_energy(2))
    for r in (0.8, 1.7, 3.0):
        coarse = difference0_residual(u, r, 0.1, energy)
        fine = difference0_residual(u, r, 0.05, energy)
        ratio = coarse / fine
        assert 3.4 < ratio < 4.6


def test_zero_pivot_error_carries_indices():
    err = ZeroPivotError(5, 3, 1)
    assert (err.n, err.k, err.m) == (5, 3, 1)
    assert "n=5" in str(err)
