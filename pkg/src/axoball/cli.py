"""Command-line front end.

Three subcommands:

    axoball solve <file> [--verify] [--out path]
    axoball matrix --order N --which F|G|B|D [--format table|csv]
    axoball profile <file> [--out path]

Problem files are JSON.  Rational values travel as strings ("p/q", integer
or decimal text); decimals are converted exactly through power-of-ten
denominators, never through binary floats (json parse_float is redirected
to str for the same reason).  Reports are JSON with a schema_version
field; parsers ignore unknown fields so the schema can grow.

Exit codes: 0 on success, 2 on input/validation errors, 3 when --verify
finds a tolerance breach.
"""

import argparse
import csv
import io
import json
import math
import os
import sys
from fractions import Fraction

from . import oracle
from .electrostatics import (
    VACUUM_PERMITTIVITY,
    PotentialSpec,
    axial_force,
    build_report,
    induced_axis_potential,
    multipole_moment,
    solve_charge_density,
)
from .moment_matrix import build_b, build_d, build_f, build_g
from .rational import format_rational, parse_rational

SCHEMA_VERSION = 1

ENV_EPS0 = "AXOBALL_EPS0"


class ProblemError(Exception):
    """Bad problem file or bad arguments; message names the field."""


def _parse_field(value, field):
    try:
        return parse_rational(value)
    except ValueError as exc:
        raise ProblemError(f"field '{field}': {exc}") from None


def _reject_nonfinite(token):
    raise ProblemError(f"non-finite number {token} is not allowed")


class ProblemInput:
    """Validated problem file: spec + report options."""

    def __init__(self, spec, moments, profile, given, phi0_echo):
        self.spec = spec
        self.moments = moments
        self.profile = profile  # (samples, span) or None
        self.given = given  # which coefficient key the file used
        self.phi0_echo = phi0_echo  # original phi0 coefficients, if given


def load_problem(path):
    try:
        with open(path, "r", encoding="utf-8") as handle:
            text = handle.read()
    except OSError as exc:
        raise ProblemError(f"cannot read problem file: {exc}") from None
    try:
        data = json.loads(text, parse_float=str, parse_constant=_reject_nonfinite)
    except json.JSONDecodeError as exc:
        raise ProblemError(f"invalid JSON in {path}: {exc}") from None
    if not isinstance(data, dict):
        raise ProblemError("problem file must be a JSON object")

    if "radius" in data and "r" in data:
        raise ProblemError("give the radius once, as 'radius' or 'r'")
    if "radius" in data:
        radius = _parse_field(data["radius"], "radius")
    elif "r" in data:
        radius = _parse_field(data["r"], "r")
    else:
        raise ProblemError("missing field 'radius'")

    pot = data.get("potential")
    if pot is not None and not isinstance(pot, dict):
        raise ProblemError("field 'potential': must be an object")
    candidates = []
    for container, prefix in ((pot or {}, "potential."), (data, "")):
        for key in ("coeffs_b", "phi0_coeffs"):
            if key in container:
                candidates.append((prefix + key, key, container[key]))
    if len(candidates) != 1:
        found = ", ".join(name for name, _, _ in candidates) or "none"
        raise ProblemError(
            f"exactly one of coeffs_b / phi0_coeffs must be given (found: {found})"
        )
    fieldname, kind, raw_coeffs = candidates[0]
    if not isinstance(raw_coeffs, list) or not raw_coeffs:
        raise ProblemError(f"field '{fieldname}': must be a non-empty list")
    coeffs = [
        _parse_field(value, f"{fieldname}[{idx}]")
        for idx, value in enumerate(raw_coeffs)
    ]

    # permittivity for float rendering: file beats env beats vacuum default
    if "epsilon0" in data:
        epsilon0 = float(_parse_field(data["epsilon0"], "epsilon0"))
    elif os.environ.get(ENV_EPS0):
        epsilon0 = float(_parse_field(os.environ[ENV_EPS0], ENV_EPS0))
    else:
        epsilon0 = VACUUM_PERMITTIVITY

    try:
        if kind == "coeffs_b":
            spec = PotentialSpec(radius, tuple(coeffs), epsilon0)
        else:
            spec = PotentialSpec.from_phi0(radius, coeffs, epsilon0)
    except ValueError as exc:
        raise ProblemError(str(exc)) from None

    moments_raw = data.get("moments", [0, 1, 2, 3])
    if not isinstance(moments_raw, list) or not moments_raw:
        raise ProblemError("field 'moments': must be a non-empty list")
    moments = []
    for idx, m in enumerate(moments_raw):
        if isinstance(m, bool) or not isinstance(m, int) or m < 0:
            raise ProblemError(
                f"field 'moments[{idx}]': must be a non-negative integer"
            )
        if m not in moments:
            moments.append(m)

    profile = None
    if "profile" in data:
        block = data["profile"]
        if not isinstance(block, dict):
            raise ProblemError("field 'profile': must be an object")
        samples = block.get("samples")
        if isinstance(samples, bool) or not isinstance(samples, int) or samples < 2:
            raise ProblemError("field 'profile.samples': must be an integer >= 2")
        span = _parse_field(block.get("span", 2), "profile.span")
        if span <= 0:
            raise ProblemError("field 'profile.span': must be positive")
        profile = (samples, span)

    phi0_echo = coeffs if kind == "phi0_coeffs" else None
    return ProblemInput(spec, moments, profile, kind, phi0_echo)


def _profile_arrays(density, samples, span):
    """Sample sigma over [-r, r] and the axis potential over span*[-r, r].

    Sample points are exact rationals floated at the end, so the endpoints
    land exactly on +-r and +-span*r.
    """
    r = density.radius
    zs = [-r + 2 * r * Fraction(k, samples - 1) for k in range(samples)]
    ss = [-span * r + 2 * span * r * Fraction(k, samples - 1) for k in range(samples)]
    return {
        "z": [float(z) for z in zs],
        "sigma": [density.sigma(float(z)) for z in zs],
        "s": [float(s) for s in ss],
        "u": [induced_axis_potential(density, float(s)) for s in ss],
    }


def run_verification(spec, density, moments):
    """Oracle cross-checks; returns (report block, all passed)."""
    checks = {}
    eps = density.epsilon0
    r = float(density.radius)

    if spec.degree <= 10:
        try:
            sol = oracle.collocation_solve(spec)
            scale = max(abs(float(c)) for c in density.coeffs_c) or 1.0
            deviation = max(
                abs(float(exact) - got) / scale
                for exact, got in zip(density.coeffs_c, sol.coeffs)
            )
            checks["collocation"] = {
                "max_coeff_deviation": deviation,
                "residual_norm": sol.residual_norm,
                "condition_estimate": sol.condition_estimate,
                "tolerance": 1e-8,
                "passed": deviation <= 1e-8,
            }
        except oracle.CollocationError as exc:
            checks["collocation"] = {"error": str(exc), "passed": False}
    else:
        # monomial collocation degrades past degree ~12; not a failure
        checks["collocation"] = {"skipped": "degree above 10", "passed": True}

    residual = oracle.equation_residual(density)
    checks["equation_residual"] = {
        "value": residual,
        "tolerance": 1e-9,
        "passed": residual <= 1e-9,
    }

    # moment quadrature vs exact, relative to the cancellation-free
    # magnitude of the integral (the roundoff scale of the quadrature)
    worst = 0.0
    for m in moments:
        exact = float(multipole_moment(density, m))
        brute = oracle.brute_force_moment(density, m)
        magnitude = 8.0 * sum(
            abs(float(c)) * r ** (m + j) / (m + j)
            for j, c in enumerate(density.coeffs_c, start=1)
        )
        scale = math.pi * eps * magnitude
        deviation = abs(brute - exact) / scale if scale else abs(brute - exact)
        worst = max(worst, deviation)
    checks["moments"] = {
        "max_relative_deviation": worst,
        "tolerance": 1e-10,
        "passed": worst <= 1e-10,
    }

    exact_force = float(axial_force(spec))
    brute_force = oracle.brute_force_force(density)
    rule = oracle.gauss_legendre(max(density.degree + 2, 8))
    magnitude = math.pi / eps * r * rule.integrate(
        lambda eta: abs(r * eta) * density.sigma(r * eta) ** 2
    )
    force_dev = (
        abs(brute_force - exact_force) / magnitude
        if magnitude
        else abs(brute_force - exact_force)
    )
    checks["force"] = {
        "relative_deviation": force_dev,
        "tolerance": 1e-10,
        "passed": force_dev <= 1e-10,
    }

    u_in = induced_axis_potential(density, r * (1.0 - 1e-8))
    u_out = induced_axis_potential(density, r * (1.0 + 1e-8))
    gap = abs(u_out - u_in)
    limit = 1e-6 * max(1.0, abs(u_in), abs(u_out))
    checks["continuity"] = {
        "gap": gap,
        "tolerance": limit,
        "passed": gap <= limit,
    }

    passed = all(entry["passed"] for entry in checks.values())
    deviations = [
        checks["moments"]["max_relative_deviation"],
        checks["force"]["relative_deviation"],
        checks["equation_residual"]["value"],
    ]
    if "max_coeff_deviation" in checks["collocation"]:
        deviations.append(checks["collocation"]["max_coeff_deviation"])
    block = {
        "passed": passed,
        "max_relative_deviation": max(deviations),
        "checks": checks,
    }
    return block, passed


def _emit(text, out_path):
    if out_path:
        with open(out_path, "w", encoding="utf-8") as handle:
            handle.write(text)
    else:
        sys.stdout.write(text)
        if not text.endswith("\n"):
            sys.stdout.write("\n")


def cmd_solve(args):
    prob = load_problem(args.problem)
    spec = prob.spec
    density = solve_charge_density(spec)
    report = build_report(spec, prob.moments)

    doc = {
        "schema_version": SCHEMA_VERSION,
        "input": {
            "radius": format_rational(spec.radius),
            "epsilon0": spec.epsilon0,
            "given": prob.given,
            "coeffs_b": [format_rational(b) for b in spec.coeffs_b],
            "moments": prob.moments,
        },
        "charge_density": {
            "prefactor": "2*eps0/r",
            "coeffs_c": [format_rational(c) for c in density.coeffs_c],
        },
        "charge": report.charge_Q.as_dict(),
        "dipole": report.dipole_D.as_dict(),
        "multipoles": {str(m): ep.as_dict() for m, ep in report.multipoles.items()},
        "force": report.force_F.as_dict(),
    }
    if prob.phi0_echo is not None:
        doc["input"]["phi0_coeffs"] = [format_rational(a) for a in prob.phi0_echo]
    if prob.profile is not None:
        samples, span = prob.profile
        doc["profile"] = _profile_arrays(density, samples, span)

    code = 0
    if args.verify:
        block, passed = run_verification(spec, density, prob.moments)
        doc["verification"] = block
        if not passed:
            code = 3
    _emit(json.dumps(doc, indent=2), args.out)
    if code:
        print("verification failed; see the verification block", file=sys.stderr)
    return code


_MATRIX_BUILDERS = {
    "F": build_f,
    "G": build_g,
    "B": build_b,
    "D": build_d,
}


def cmd_matrix(args):
    if args.order < 1 or args.order > 200:
        raise ProblemError("--order must lie in 1..200")
    matrix = _MATRIX_BUILDERS[args.which](args.order)
    if args.which == "D":
        rows = [matrix.diagonal()]  # diagonal matrix prints as one row
    else:
        rows = matrix.rows()
    if args.format == "csv":
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        for row in rows:
            writer.writerow([format_rational(v) for v in row])
        sys.stdout.write(buffer.getvalue())
    else:
        for row in rows:
            sys.stdout.write(" ".join(format_rational(v) for v in row) + "\n")
    return 0


def cmd_profile(args):
    prob = load_problem(args.problem)
    if prob.profile is None:
        raise ProblemError("problem file has no 'profile' section")
    samples, span = prob.profile
    density = solve_charge_density(prob.spec)
    arrays = _profile_arrays(density, samples, span)
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(["z", "sigma", "s", "u"])
    for k in range(samples):
        writer.writerow(
            [
                format(arrays["z"][k], ".17g"),
                format(arrays["sigma"][k], ".17g"),
                format(arrays["s"][k], ".17g"),
                format(arrays["u"][k], ".17g"),
            ]
        )
    _emit(buffer.getvalue(), args.out)
    return 0


def parse_report(text):
    """Read a solve report back; exact fields come back as Fractions.

    Only known fields are interpreted; anything else is ignored so that
    reports from newer schema versions still parse.
    """
    data = json.loads(text)
    out = {"schema_version": data.get("schema_version")}
    block = data.get("input", {})
    if "radius" in block:
        out["radius"] = Fraction(block["radius"])
    if "coeffs_b" in block:
        out["coeffs_b"] = tuple(Fraction(b) for b in block["coeffs_b"])
    density = data.get("charge_density", {})
    if "coeffs_c" in density:
        out["coeffs_c"] = tuple(Fraction(c) for c in density["coeffs_c"])
    for key in ("charge", "dipole", "force"):
        if key in data:
            out[key] = Fraction(data[key]["coeff"])
    if "multipoles" in data:
        out["multipoles"] = {
            int(m): Fraction(entry["coeff"])
            for m, entry in data["multipoles"].items()
        }
    return out


def main(argv=None):
    parser = argparse.ArgumentParser(
        prog="axoball",
        description=(
            "Exact induced charge, multipole moments, force and axis "
            "potential for a grounded conducting ball in an axial field"
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_solve = sub.add_parser("solve", help="solve a problem file, emit a report")
    p_solve.add_argument("problem", help="path to the JSON problem file")
    p_solve.add_argument(
        "--verify", action="store_true", help="run oracle cross-checks"
    )
    p_solve.add_argument("--out", help="write the report here instead of stdout")
    p_solve.set_defaults(func=cmd_solve)

    p_matrix = sub.add_parser("matrix", help="print an exact matrix")
    p_matrix.add_argument("--order", type=int, required=True)
    p_matrix.add_argument("--which", required=True, choices=sorted(_MATRIX_BUILDERS))
    p_matrix.add_argument("--format", choices=("table", "csv"), default="table")
    p_matrix.set_defaults(func=cmd_matrix)

    p_profile = sub.add_parser("profile", help="emit CSV profiles of sigma and u")
    p_profile.add_argument("problem", help="path to the JSON problem file")
    p_profile.add_argument("--out", help="write the CSV here instead of stdout")
    p_profile.set_defaults(func=cmd_profile)

    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ProblemError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
