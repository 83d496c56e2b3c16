import math
from fractions import Fraction

import pytest

from axoball import PotentialSpec, solve_charge_density
from axoball.electrostatics import axial_force, multipole_moment
from axoball.moment_matrix import f_entry_closed_form
from axoball.oracle import (
    CollocationError,
    axis_kernel_integral,
    brute_force_axis_potential,
    brute_force_force,
    brute_force_moment,
    chebyshev_points,
    collocation_solve,
    equation_residual,
    gauss_legendre,
    generating_function_check,
    legendre_eval,
    moment_quadrature,
)
from conftest import random_spec


def test_legendre_values():
    assert legendre_eval(0, 0.3) == 1.0
    assert legendre_eval(1, -0.4) == -0.4
    assert legendre_eval(2, 0.5) == pytest.approx(-0.125, abs=1e-16)
    for n in range(51):
        assert legendre_eval(n, 1.0) == pytest.approx(1.0, abs=1e-12)
        assert legendre_eval(n, -1.0) == pytest.approx((-1.0) ** n, abs=1e-12)
    x = 0.7321
    assert legendre_eval(3, x) == pytest.approx((5 * x**3 - 3 * x) / 2, rel=1e-15)


def test_legendre_domain_and_degree_checks():
    with pytest.raises(ValueError):
        legendre_eval(2, 1.1)
    with pytest.raises(ValueError):
        legendre_eval(-1, 0.0)
    # a sliver of slack for roundoff at the endpoints
    legendre_eval(2, 1.0 + 1e-13)


def test_rule_weights_sum_to_two():
    for order in (1, 2, 3, 5, 8, 13, 21, 34, 40):
        rule = gauss_legendre(order)
        assert len(rule.nodes) == order
        assert abs(sum(rule.weights) - 2.0) < 1e-14
        assert all(-1.0 < x < 1.0 for x in rule.nodes)
        assert all(w > 0 for w in rule.weights)


def test_rule_is_exact_to_design_degree():
    for order in (2, 5, 11, 20):
        rule = gauss_legendre(order)
        for k in range(2 * order):
            exact = 2.0 / (k + 1) if k % 2 == 0 else 0.0
            got = rule.integrate(lambda x: x**k)
            assert abs(got - exact) < 1e-13


def test_rule_nodes_are_symmetric():
    rule = gauss_legendre(9)
    paired = sorted(rule.nodes)
    for lo, hi in zip(paired, reversed(paired)):
        assert abs(lo + hi) < 1e-15


def test_rule_cached():
    assert gauss_legendre(12) is gauss_legendre(12)


def test_moment_quadrature_matches_exact_entries():
    assert moment_quadrature(1, 1) == pytest.approx(2.0, abs=1e-15)
    assert moment_quadrature(2, 2) == pytest.approx(2 / 3, abs=1e-14)
    for i, j in ((3, 3), (4, 10), (7, 19), (20, 20), (1, 45)):
        assert moment_quadrature(i, j) == pytest.approx(
            float(f_entry_closed_form(i, j)), abs=1e-13
        )
    # below the diagonal: orthogonality kills the integral
    for i, j in ((3, 2), (10, 4), (25, 1)):
        assert abs(moment_quadrature(i, j)) < 1e-13


def test_moment_quadrature_bounds():
    with pytest.raises(ValueError):
        moment_quadrature(61, 1)
    with pytest.raises(ValueError):
        moment_quadrature(1, 0)


def test_generating_function_agreement():
    series, closed = generating_function_check(0.0, 0.4, 10)
    assert series == closed == 1.0
    series, closed = generating_function_check(0.5, 1.0, 200)
    assert closed == pytest.approx(2.0, rel=1e-15)
    assert series == pytest.approx(2.0, rel=1e-12)
    series, closed = generating_function_check(0.3, -0.7, 60)
    assert series == pytest.approx(closed, abs=1e-12)


def test_generating_function_rejects_divergent_ratio():
    with pytest.raises(ValueError):
        generating_function_check(1.0, 0.5, 10)
    with pytest.raises(ValueError):
        generating_function_check(-1.2, 0.5, 10)
    with pytest.raises(ValueError):
        generating_function_check(0.5, 0.5, 0)


def test_kernel_integral_constant_mode():
    # int d eta / sqrt(xi^2+1-2 xi eta) is exactly 2 inside, 2/|xi| outside
    for xi in (0.1, -0.35, 0.62, -0.9, 0.988):
        assert axis_kernel_integral(1, xi) == pytest.approx(2.0, rel=1e-12)
    for xi in (1.5, -2.0, 10.0):
        assert axis_kernel_integral(1, xi) == pytest.approx(
            2.0 / abs(xi), rel=1e-12
        )


def test_kernel_integral_matches_legendre_expansion():
    # K_j(xi) = sum_k F_{k+1,j} xi^k inside and, outside,
    # (1/|xi|) sum_k F_{k+1,j} xi^-k (the |xi| carries the sign of the
    # Coulomb prefactor on the negative axis)
    for j in (2, 3, 5):
        for xi in (0.37, -0.81):
            expected = sum(
                float(f_entry_closed_form(k + 1, j)) * xi**k for k in range(j)
            )
            assert axis_kernel_integral(j, xi) == pytest.approx(expected, rel=1e-11)
        for xi in (1.25, -3.0):
            expected = sum(
                float(f_entry_closed_form(k + 1, j)) * xi**-k for k in range(j)
            ) / abs(xi)
            assert axis_kernel_integral(j, xi) == pytest.approx(expected, rel=1e-11)


def test_chebyshev_points_lie_inside():
    pts = chebyshev_points(32)
    assert len(pts) == 32
    assert all(-1 < p < 1 for p in pts)
    assert len(set(pts)) == 32


def test_collocation_recovers_constant_density():
    sol = collocation_solve(PotentialSpec(1, (1,), epsilon0=1.0))
    assert sol.coeffs[0] == pytest.approx(0.5, abs=1e-9)
    assert sol.residual_norm < 1e-9


def test_collocation_recovers_linear_density():
    sol = collocation_solve(PotentialSpec(1, (0, 1), epsilon0=1.0))
    assert sol.coeffs[0] == pytest.approx(0.0, abs=1e-9)
    assert sol.coeffs[1] == pytest.approx(1.5, abs=1e-9)


def test_collocation_quadratic_with_radius():
    r = 2.0
    sol = collocation_solve(PotentialSpec(2, (0, 0, 1), epsilon0=1.0))
    assert sol.coeffs[0] == pytest.approx(-1.25 * r * r, rel=1e-8)
    assert sol.coeffs[1] == pytest.approx(0.0, abs=1e-8)
    assert sol.coeffs[2] == pytest.approx(3.75, rel=1e-8)
    assert sol.condition_estimate < 1e6


def test_collocation_needs_enough_points():
    with pytest.raises(ValueError):
        collocation_solve(PotentialSpec(1, (1, 1, 1)), n_points=2)


def test_collocation_reports_residual_breach():
    # an honest solve cannot reach an absurd tolerance
    with pytest.raises(CollocationError):
        collocation_solve(PotentialSpec(1, (1, 2, 3)), residual_tol=1e-30)


def test_equation_residual_small_for_exact_solutions(rng):
    for _ in range(5):
        density = solve_charge_density(random_spec(rng, max_degree=8, max_radius=2))
        assert equation_residual(density) < 1e-9


def test_brute_moment_odd_mode_vanishes():
    density = solve_charge_density(PotentialSpec(1, (4,), epsilon0=1.0))
    assert abs(brute_force_moment(density, 1)) < 1e-13


def test_brute_moment_matches_exact(rng):
    for _ in range(6):
        spec = random_spec(rng, max_degree=8, max_radius=2, epsilon0=1.0)
        density = solve_charge_density(spec)
        r = float(spec.radius)
        for m in (0, 1, 2, 5):
            brute = brute_force_moment(density, m)
            exact = float(multipole_moment(density, m))
            scale = math.pi * 8.0 * sum(
                abs(float(c)) * r ** (m + j) / (m + j)
                for j, c in enumerate(density.coeffs_c, start=1)
            )
            assert abs(brute - exact) <= 1e-10 * max(scale, 1e-30)


def test_brute_moment_order_capped():
    density = solve_charge_density(PotentialSpec(1, (1,)))
    with pytest.raises(ValueError):
        brute_force_moment(density, 41)


def test_brute_force_even_density_gives_zero():
    density = solve_charge_density(PotentialSpec(1, (3,), epsilon0=1.0))
    assert abs(brute_force_force(density)) < 1e-12


def test_brute_force_matches_exact(rng):
    for _ in range(6):
        spec = random_spec(rng, max_degree=5, max_radius=2, epsilon0=1.0)
        density = solve_charge_density(spec)
        brute = brute_force_force(density)
        exact = float(axial_force(spec))
        rule = gauss_legendre(16)
        r = float(spec.radius)
        scale = math.pi * r * rule.integrate(
            lambda eta: abs(r * eta) * density.sigma(r * eta) ** 2
        )
        assert abs(brute - exact) <= 1e-10 * max(scale, 1e-30)


def test_brute_axis_potential_interior_matches_negated_phi0():
    spec = PotentialSpec(1, (2, -1, Fraction(1, 2)), epsilon0=1.0)
    density = solve_charge_density(spec)
    for s in (-0.6, 0.0, 0.5):
        expected = 2 - s + 0.5 * s * s
        assert brute_force_axis_potential(density, s) == pytest.approx(
            expected, rel=1e-11
        )


def test_brute_axis_potential_rejects_surface_points():
    density = solve_charge_density(PotentialSpec(1, (1,)))
    with pytest.raises(ValueError):
        brute_force_axis_potential(density, 1.0)
