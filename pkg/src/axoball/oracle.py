"""Independent floating-point checks for the exact machinery.

Nothing here touches the moment-matrix code path beyond reading plain
coefficient tuples, so agreement between this module and the exact one is
evidence, not tautology.  Contents: Legendre evaluation by the three-term
recurrence, Gauss-Legendre rules with Newton-iterated nodes, the moment
integrals by quadrature, a direct collocation solve of the boundary
integral equation

    int_{-1}^{1} s(eta) / sqrt(xi^2 + 1 - 2 xi eta) d eta = rhs(xi),

and brute-force quadrature versions of the multipole moments, the force
and the axis potential.

The kernel above is smooth for |xi| < 1: xi^2 + 1 - 2 xi eta >=
(1 - |xi|)^2 > 0, asserted before every evaluation.  Near |xi| -> 1 it
develops a boundary layer at eta = sign(xi), which the adaptive panel
subdivision in ``axis_kernel_integral`` resolves.
"""

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np


class CollocationError(RuntimeError):
    """The collocation residual exceeded tolerance.

    This signals disagreement between the oracle and the analytic solution
    (or an under-resolved solve) and is a test failure, not a state the
    caller recovers from.
    """


@dataclass(frozen=True)
class QuadratureRule:
    """Gauss-Legendre nodes/weights on [-1, 1]; exact to degree 2*order-1."""

    nodes: tuple
    weights: tuple
    order: int

    def integrate(self, fn):
        return sum(w * fn(x) for x, w in zip(self.nodes, self.weights))


def _legendre_pair(n, x):
    # returns (P_n(x), P_{n-1}(x)) by the three-term recurrence
    if n == 0:
        return 1.0, 0.0
    prev, cur = 1.0, x
    for k in range(2, n + 1):
        prev, cur = cur, ((2 * k - 1) * x * cur - (k - 1) * prev) / k
    return cur, prev


def legendre_eval(n, x):
    """P_n(x) via the three-term recurrence; domain [-1, 1] (tiny slack)."""
    if n < 0:
        raise ValueError("degree must be >= 0")
    if abs(x) > 1.0 + 1e-12:
        raise ValueError(f"x = {x} outside [-1, 1]")
    return _legendre_pair(n, float(x))[0]


@lru_cache(maxsize=None)
def gauss_legendre(order):
    """Gauss-Legendre rule with the given node count.

    Nodes are the roots of P_order, found by Newton iteration from the
    Chebyshev initial guess; weights are 2 / ((1 - x^2) P'_order(x)^2).
    Cached per order; the cache is read-mostly and initialization is
    idempotent, so concurrent use is fine.
    """
    if order < 1:
        raise ValueError("order must be >= 1")
    nodes = []
    weights = []
    for k in range(1, order + 1):
        x = math.cos(math.pi * (4 * k - 1) / (4 * order + 2))
        for _ in range(60):
            p, p_prev = _legendre_pair(order, x)
            dp = order * (x * p - p_prev) / (x * x - 1.0)
            step = p / dp
            x -= step
            if abs(step) < 1e-15:
                break
        p, p_prev = _legendre_pair(order, x)
        dp = order * (x * p - p_prev) / (x * x - 1.0)
        nodes.append(x)
        weights.append(2.0 / ((1.0 - x * x) * dp * dp))
    return QuadratureRule(tuple(nodes), tuple(weights), order)


def moment_quadrature(i, j):
    """Numeric moment integral of P_{i-1} against eta^(j-1) on [-1, 1].

    The integrand is a polynomial of degree i + j - 2, so a rule with
    (i+j)//2 + 1 nodes integrates it exactly up to roundoff.
    """
    if not (1 <= i <= 60 and 1 <= j <= 60):
        raise ValueError("indices must lie in 1..60")
    rule = gauss_legendre((i + j) // 2 + 1)
    return rule.integrate(lambda x: legendre_eval(i - 1, x) * x ** (j - 1))


def generating_function_check(xi, eta, terms):
    """Partial sum of sum_n P_n(eta) xi^n against 1/sqrt(1 - 2 xi eta + xi^2).

    Returns the pair (series, closed form); the caller asserts agreement
    within the truncation bound.  Convergence needs |xi| < 1 (stay at or
    below 0.9 for a practical margin).
    """
    if abs(xi) >= 1.0:
        raise ValueError("generating function series needs |xi| < 1")
    if terms < 1:
        raise ValueError("need at least one term")
    acc = 0.0
    power = 1.0
    for n in range(terms):
        acc += legendre_eval(n, eta) * power
        power *= xi
    closed = 1.0 / math.sqrt(1.0 - 2.0 * xi * eta + xi * xi)
    return acc, closed


_PANEL_RULE = gauss_legendre(16)


def _kernel_panel(power, xi, a, b):
    # fixed 16-node panel for int_a^b eta^power / sqrt(xi^2+1-2 xi eta) d eta
    half = 0.5 * (b - a)
    mid = 0.5 * (a + b)
    total = 0.0
    for x, w in zip(_PANEL_RULE.nodes, _PANEL_RULE.weights):
        eta = mid + half * x
        den = xi * xi + 1.0 - 2.0 * xi * eta
        assert den > 0.0, "kernel lost positivity"
        total += w * eta**power / math.sqrt(den)
    return half * total


def _kernel_adaptive(power, xi, a, b, estimate, tol, scale, depth):
    mid = 0.5 * (a + b)
    left = _kernel_panel(power, xi, a, mid)
    right = _kernel_panel(power, xi, mid, b)
    err = abs(left + right - estimate)
    # absolute floor keeps the per-panel target above float resolution in
    # the boundary layer near eta = sign(xi) when |xi| -> 1
    if err <= max(tol * (b - a) / 2.0, 1e-16) * scale or depth >= 30:
        return left + right
    return _kernel_adaptive(
        power, xi, a, mid, left, tol, scale, depth + 1
    ) + _kernel_adaptive(power, xi, mid, b, right, tol, scale, depth + 1)


def axis_kernel_integral(j, xi, tol=1e-13):
    """K_j(xi) = int_{-1}^{1} eta^(j-1) / sqrt(xi^2 + 1 - 2 xi eta) d eta.

    Adaptive bisection over 16-node panels.  Valid for any xi with
    |xi| != 1; for |xi| > 1 this is the (smooth) exterior kernel.
    """
    if j < 1:
        raise ValueError("indices are 1-based")
    whole = _kernel_panel(j - 1, xi, -1.0, 1.0)
    scale = max(1.0, abs(whole))
    return _kernel_adaptive(j - 1, xi, -1.0, 1.0, whole, tol, scale, 0)


@dataclass(frozen=True)
class CollocationSolution:
    """Least-squares density coefficients plus solve diagnostics."""

    coeffs: tuple
    residual_norm: float
    condition_estimate: float


def chebyshev_points(count):
    """count Chebyshev points cos((2k-1) pi / (2 count)), k = 1..count."""
    return [math.cos((2 * k - 1) * math.pi / (2 * count)) for k in range(1, count + 1)]


def collocation_solve(spec, n_points=32, residual_tol=1e-9):
    """Solve the boundary integral equation directly, bypassing all the
    closed forms.

    The dimensionless density s(eta) = (r / 2 eps0) sigma(r eta) is
    expanded over monomials eta^(j-1); enforcing

        sum_j gamma_j K_j(xi) = sum_i b_i (r xi)^(i-1)

    at ``n_points`` Chebyshev points and solving in the least-squares sense
    yields gamma_j = c_j r^(j-1).  Raises CollocationError when the
    residual stays above ``residual_tol`` (relative to the right side).
    The monomial basis turns ill-conditioned beyond degree ~12; keep the
    degree at or below 10, where coefficients are good to ~1e-8.
    """
    b = [float(x) for x in spec.coeffs_b]
    r = float(spec.radius)
    n1 = len(b)
    if n_points < n1:
        raise ValueError("need at least degree+1 collocation points")
    points = chebyshev_points(n_points)
    matrix = np.empty((n_points, n1))
    for row, xi in enumerate(points):
        for j in range(1, n1 + 1):
            matrix[row, j - 1] = axis_kernel_integral(j, xi)
    rhs = np.array(
        [sum(bi * (r * xi) ** i for i, bi in enumerate(b)) for xi in points]
    )
    gamma, _, rank, singular = np.linalg.lstsq(matrix, rhs, rcond=None)
    if rank < n1:
        raise CollocationError(f"collocation matrix rank {rank} < {n1}")
    residual = float(np.max(np.abs(matrix @ gamma - rhs)))
    residual /= max(1.0, float(np.max(np.abs(rhs))))
    condition = float(singular[0] / singular[-1]) if singular.size else math.inf
    if residual > residual_tol:
        raise CollocationError(
            f"collocation residual {residual:.3e} above {residual_tol:.1e}"
        )
    coeffs = tuple(float(g) / r**j for j, g in enumerate(gamma))
    return CollocationSolution(coeffs, residual, condition)


def equation_residual(density, n_points=32):
    """Max relative residual of the integral equation for an exact density.

    Substitutes sigma back into the kernel integral and compares against
    the potential it was solved from (recovered through the Legendre charge
    moments), at Chebyshev collocation points.
    """
    from .electrostatics import charge_legendre_moments

    r = float(density.radius)
    gammas = [float(c) * r**j for j, c in enumerate(density.coeffs_c)]
    moments = [float(m) for m in charge_legendre_moments(density)]
    worst = 0.0
    scale = 1.0
    for xi in chebyshev_points(n_points):
        lhs = sum(g * axis_kernel_integral(j + 1, xi) for j, g in enumerate(gammas))
        rhs = 0.0
        for m in reversed(moments):
            rhs = rhs * xi + m
        worst = max(worst, abs(lhs - rhs))
        scale = max(scale, abs(rhs))
    return worst / scale


def brute_force_moment(density, m):
    """2 pi r int z^m sigma(z) dz by quadrature, treating sigma as a black
    box; SI float."""
    if m < 0 or m > 40:
        raise ValueError("moment order must be in 0..40")
    r = float(density.radius)
    rule = gauss_legendre(max((m + density.degree) // 2 + 2, 8))
    total = rule.integrate(lambda eta: (r * eta) ** m * density.sigma(r * eta))
    return 2.0 * math.pi * r * r * total


def brute_force_force(density):
    """(pi / eps0) int z sigma^2 dz by quadrature; SI float."""
    r = float(density.radius)
    rule = gauss_legendre(max(density.degree + 2, 8))
    total = rule.integrate(lambda eta: (r * eta) * density.sigma(r * eta) ** 2)
    return math.pi / density.epsilon0 * r * total


def brute_force_axis_potential(density, s):
    """Axis potential of the induced charge by direct Coulomb quadrature.

    u(s) = sum_j c_j r^(j-1) K_j(s/r); valid inside and outside the ball
    (|s| = r excluded, where the kernel touches zero).
    """
    r = float(density.radius)
    xi = float(s) / r
    if abs(abs(xi) - 1.0) < 1e-12:
        raise ValueError("|s| = r sits on the surface; kernel is singular")
    return sum(
        float(c) * r**j * axis_kernel_integral(j + 1, xi)
        for j, c in enumerate(density.coeffs_c)
    )
