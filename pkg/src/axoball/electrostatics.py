"""Grounded conducting ball on the axis of an axial electric field.

The external field is axisymmetric and source-free near the ball, so it is
fixed by its axial potential, assumed polynomial and given through its
negation:

    -phi0(s) = b_1 + b_2 s + ... + b_{n+1} s^n.

A grounded ball of radius r centered at the origin then carries a surface
charge density that is again a polynomial in the axial coordinate z of the
surface point:

    sigma(z) = (2 eps0 / r) (c_1 + c_2 z + ... + c_{n+1} z^n),   |z| <= r,

with the coefficient map c_i = sum_j r^(j-i) G_ij b_j, where G is the
exact inverse of the Legendre moment matrix.  Every overall quantity has a
closed form in the b coefficients:

    total charge        Q   = 4 pi eps0 r b_1
    dipole moment       D   = 4 pi eps0 r^3 b_2
    multipole, order m  D_m = 2 pi eps0 r^(m+1) sum_i (2i-1) r^(i-1) F_{i,m+1} b_i
    axial force         F   = 4 pi eps0 sum_i i r^(2i-1) b_i b_{i+1}

Each of those is also evaluated a second, independent way by exact
polynomial integration of its defining integral (2 pi r int z^m sigma dz
for the moments, (pi/eps0) int z sigma^2 dz for the force on the surface),
and the two results are required to match identically.  A mismatch raises
ConsistencyError and indicates a bug, never bad input.

Exact results are rational multiples of pi*eps0 (ExactPhysical); the
numeric permittivity enters only when rendering floats.
"""

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import ClassVar

from .moment_matrix import f_entry_closed_form, g_entry
from .rational import format_rational, parse_rational

# CODATA 2018 vacuum permittivity, F/m; rendering only, never exact math
VACUUM_PERMITTIVITY = 8.8541878128e-12


class ConsistencyError(ArithmeticError):
    """Two independent exact evaluation paths for one quantity disagreed."""


@dataclass(frozen=True)
class ExactPhysical:
    """An exact rational multiple of the symbolic unit factor pi*eps0.

    The rational coefficient is the truth; the float rendering multiplies
    in pi and the stored permittivity on demand.
    """

    coeff: Fraction
    epsilon0: float = VACUUM_PERMITTIVITY

    UNIT_FACTOR: ClassVar[str] = "pi*eps0"

    def to_float(self):
        return float(self.coeff) * math.pi * self.epsilon0

    def __float__(self):
        return self.to_float()

    def as_dict(self):
        return {
            "coeff": format_rational(self.coeff),
            "unit_factor": self.UNIT_FACTOR,
            "float": self.to_float(),
        }


@dataclass(frozen=True)
class PotentialSpec:
    """Ball radius and the coefficients b of the negated axial potential.

    ``coeffs_b`` holds b_1..b_{n+1} with -phi0(s) = sum b_i s^(i-1).
    Entries pass through ``parse_rational``, so ints, Fractions and strings
    are accepted and binary floats are rejected.  Trailing zeros are
    normalized away (the degree is the index of the last nonzero
    coefficient); the all-zero potential collapses to a single 0.

    ``epsilon0`` is a plain float used only for float rendering.
    """

    radius: Fraction
    coeffs_b: tuple
    epsilon0: float = VACUUM_PERMITTIVITY

    def __post_init__(self):
        radius = parse_rational(self.radius)
        if radius <= 0:
            raise ValueError("radius must be positive")
        coeffs = [parse_rational(b) for b in self.coeffs_b]
        if not coeffs:
            raise ValueError("coeffs_b must not be empty")
        while len(coeffs) > 1 and coeffs[-1] == 0:
            coeffs.pop()
        eps = float(self.epsilon0)
        if not math.isfinite(eps) or eps <= 0:
            raise ValueError("epsilon0 must be positive and finite")
        object.__setattr__(self, "radius", radius)
        object.__setattr__(self, "coeffs_b", tuple(coeffs))
        object.__setattr__(self, "epsilon0", eps)

    @classmethod
    def from_phi0(cls, radius, phi0_coeffs, epsilon0=VACUUM_PERMITTIVITY):
        """Build from the coefficients of phi0 itself; signs flip here."""
        coeffs = tuple(-parse_rational(a) for a in phi0_coeffs)
        return cls(radius, coeffs, epsilon0)

    @property
    def degree(self):
        return len(self.coeffs_b) - 1


@dataclass(frozen=True)
class ChargeDensity:
    """Induced surface density sigma(z) = (2 eps0 / r) sum_j c_j z^(j-1)."""

    radius: Fraction
    coeffs_c: tuple
    epsilon0: float = VACUUM_PERMITTIVITY

    def __post_init__(self):
        radius = parse_rational(self.radius)
        if radius <= 0:
            raise ValueError("radius must be positive")
        coeffs = tuple(parse_rational(c) for c in self.coeffs_c)
        if not coeffs:
            raise ValueError("coeffs_c must not be empty")
        eps = float(self.epsilon0)
        if not math.isfinite(eps) or eps <= 0:
            raise ValueError("epsilon0 must be positive and finite")
        object.__setattr__(self, "radius", radius)
        object.__setattr__(self, "coeffs_c", coeffs)
        object.__setattr__(self, "epsilon0", eps)

    @property
    def degree(self):
        return len(self.coeffs_c) - 1

    def sigma(self, z):
        """Density at axial coordinate z, in SI units (float).

        Meaningful for |z| <= r, the axial range covered by the surface.
        """
        zf = float(z)
        acc = 0.0
        for c in reversed(self.coeffs_c):
            acc = acc * zf + float(c)
        return 2.0 * self.epsilon0 / float(self.radius) * acc


@dataclass(frozen=True)
class BallReport:
    """Charge, dipole, requested multipoles and force for one problem."""

    charge_Q: ExactPhysical
    dipole_D: ExactPhysical
    multipoles: dict
    force_F: ExactPhysical


def solve_charge_density(spec):
    """Induced surface density for the given potential.

    c_i = sum_j r^(j-i) G_ij b_j.  The system behind this is triangular
    with nonzero diagonal, so it is always solvable and the solution is
    exact.
    """
    r = spec.radius
    b = spec.coeffs_b
    n1 = len(b)
    coeffs = []
    for i in range(1, n1 + 1):
        acc = Fraction(0)
        for j in range(i, n1 + 1, 2):
            acc += r ** (j - i) * g_entry(i, j) * b[j - 1]
        coeffs.append(acc)
    return ChargeDensity(r, tuple(coeffs), spec.epsilon0)


def reconstruct_potential(density):
    """Invert the density map: b_k = sum_j r^(j-k) F_kj c_j.

    Exact because F and G are exact inverses; round-trips with
    ``solve_charge_density`` bit for bit (up to trailing-zero
    normalization).
    """
    r = density.radius
    c = density.coeffs_c
    n1 = len(c)
    coeffs = []
    for k in range(1, n1 + 1):
        acc = Fraction(0)
        for j in range(k, n1 + 1, 2):
            acc += r ** (j - k) * f_entry_closed_form(k, j) * c[j - 1]
        coeffs.append(acc)
    return PotentialSpec(r, tuple(coeffs), density.epsilon0)


def charge_legendre_moments(density):
    """Legendre projections of the dimensionless density.

    m_k = sum_j F_kj c_j r^(j-1) = integral of (r/(2 eps0)) sigma(r eta)
    P_{k-1}(eta) d eta; identically equal to r^(k-1) b_k.  These drive the
    axis potential of the induced charge.
    """
    r = density.radius
    c = density.coeffs_c
    n1 = len(c)
    out = []
    for k in range(1, n1 + 1):
        acc = Fraction(0)
        for j in range(k, n1 + 1, 2):
            acc += f_entry_closed_form(k, j) * c[j - 1] * r ** (j - 1)
        out.append(acc)
    return out


def _coeffs_b(density):
    return reconstruct_potential(density).coeffs_b


def total_charge(density):
    """Total induced charge Q = 2 pi r int sigma dz = 4 pi eps0 r b_1.

    Both sides are computed exactly and must agree.
    """
    r = density.radius
    c = density.coeffs_c
    # 2 pi r * (2 eps0 / r) * sum_j c_j int z^(j-1) dz over [-r, r]
    integrated = 8 * sum(
        c[j - 1] * r**j / j for j in range(1, len(c) + 1, 2)
    )
    closed = 4 * r * _coeffs_b(density)[0]
    if integrated != closed:
        raise ConsistencyError(
            f"charge paths disagree: integrated {integrated}, closed {closed}"
        )
    return ExactPhysical(closed, density.epsilon0)


def dipole_moment(density):
    """Dipole moment D = 2 pi r int z sigma dz = 4 pi eps0 r^3 b_2."""
    r = density.radius
    c = density.coeffs_c
    integrated = 8 * sum(
        c[j - 1] * r ** (j + 1) / (j + 1) for j in range(2, len(c) + 1, 2)
    )
    b = _coeffs_b(density)
    closed = 4 * r**3 * b[1] if len(b) > 1 else Fraction(0)
    if integrated != closed:
        raise ConsistencyError(
            f"dipole paths disagree: integrated {integrated}, closed {closed}"
        )
    return ExactPhysical(closed, density.epsilon0)


def multipole_moment(density, m):
    """Multipole moment of order m, D_m = 2 pi r int z^m sigma dz.

    Closed form: 2 pi eps0 r^(m+1) sum over i = delta, delta+2, ..., m+1 of
    (2i-1) r^(i-1) F_{i,m+1} b_i, with delta = 1 for even m and 2 for odd
    m, and b_i = 0 past the end of the coefficient vector.  Orders 0 and 1
    collapse to the charge and the dipole moment.
    """
    if isinstance(m, bool) or not isinstance(m, int) or m < 0:
        raise ValueError("moment order must be a non-negative integer")
    r = density.radius
    c = density.coeffs_c
    integrated = 8 * sum(
        c[j - 1] * r ** (m + j) / (m + j)
        for j in range(1, len(c) + 1)
        if (m + j) % 2
    )
    b = _coeffs_b(density)
    delta = 1 if m % 2 == 0 else 2
    acc = Fraction(0)
    for i in range(delta, m + 2, 2):
        if i > len(b):
            break
        acc += (2 * i - 1) * r ** (i - 1) * f_entry_closed_form(i, m + 1) * b[i - 1]
    closed = 2 * r ** (m + 1) * acc
    if integrated != closed:
        raise ConsistencyError(
            f"order-{m} moment paths disagree: "
            f"integrated {integrated}, closed {closed}"
        )
    return ExactPhysical(closed, density.epsilon0)


def axial_force(spec):
    """Net force on the ball along the axis.

    The electric pressure sigma^2 / (2 eps0) acts along the outward normal;
    its axial component integrates to F = (pi/eps0) int z sigma^2 dz, which
    has the closed form 4 pi eps0 sum_i i r^(2i-1) b_i b_{i+1}.  Positive
    values point along +z (increasing s).  Both paths are exact and must
    agree.
    """
    density = solve_charge_density(spec)
    r = spec.radius
    b = spec.coeffs_b
    c = density.coeffs_c
    closed = 4 * sum(
        i * r ** (2 * i - 1) * b[i - 1] * b[i] for i in range(1, len(b))
    )
    closed = Fraction(closed)
    # square of the density polynomial, 0-based: q[d] multiplies z^d
    q = [Fraction(0)] * (2 * len(c) - 1)
    for a, ca in enumerate(c):
        for e, ce in enumerate(c):
            q[a + e] += ca * ce
    integrated = 8 * sum(
        q[d] * r**d / (d + 2) for d in range(1, len(q), 2)
    )
    if integrated != closed:
        raise ConsistencyError(
            f"force paths disagree: integrated {integrated}, closed {closed}"
        )
    return ExactPhysical(closed, spec.epsilon0)


def induced_axis_potential(density, s):
    """Axis potential of the induced charge alone, at axial coordinate s.

    Inside the ball (|s| <= r) the induced charge cancels the external
    potential, so u(s) = -phi0(s) = sum m_k (s/r)^(k-1) with m_k the
    Legendre charge moments.  Outside, expanding the Coulomb kernel in the
    Legendre generating function gives the finite series

        u(s) = (1/|xi|) sum_k m_k xi^-(k-1),    xi = s/r, |xi| > 1,

    finite because the moment matrix is triangular.  The two branches agree
    exactly at |s| = r.  Evaluation is in floats; this exists for physical
    sanity checks, not exact results.
    """
    sf = float(s)
    if not math.isfinite(sf):
        raise ValueError("axial coordinate must be finite")
    moments = [float(m) for m in charge_legendre_moments(density)]
    r = float(density.radius)
    xi = sf / r
    if abs(xi) <= 1.0:
        acc = 0.0
        for m in reversed(moments):
            acc = acc * xi + m
        return acc
    t = 1.0 / xi
    acc = 0.0
    for m in reversed(moments):
        acc = acc * t + m
    return acc / abs(xi)


def build_report(spec, moments=(0, 1, 2, 3)):
    """Solve the problem and collect charge, dipole, multipoles, force."""
    density = solve_charge_density(spec)
    table = {}
    for m in moments:
        table[m] = multipole_moment(density, m)
    return BallReport(
        charge_Q=total_charge(density),
        dipole_D=dipole_moment(density),
        multipoles=table,
        force_F=axial_force(spec),
    )
