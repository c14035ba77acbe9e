"""Command-line front end: verification batteries, solves, figure data.

Three things are exposed:

* ``verify`` runs a fixed battery of independent checks on one medium
  (``--case d1`` or ``d3``) and exits 0 only if every check passes;
* ``solve`` integrates the corresponding wave equation numerically and
  tabulates it against the closed form;
* ``figure`` emits the data behind the five standard plots.

``report`` is ``verify`` with a machine-readable report file required.

All output is deterministic: fixed float formatting (17 significant
digits), no timestamps, '\\n' line endings, and headers rebuilt from the
parsed configuration rather than echoed from the raw argv, so a repeated
run with the same configuration is byte-identical.

Spans and coordinates on the command line are in lab-frame units and are
converted internally using the de Broglie length built from --mass,
--energy and --hbar; the defaults (0.5, 1, 1) make that length exactly 1,
so by default lab and dimensionless coordinates coincide.
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from typing import Optional, TextIO

import numpy as np

from . import __version__
from .fields import Geometry, richardson_d1
from .media import (
    MediumSpec,
    SingularPotentialForm,
    compensating_log_momentum_1d,
    compensating_log_momentum_3d,
    compensating_momentum_1d,
    compensating_momentum_3d,
    compensating_wave_1d,
    compensating_wave_3d,
    psi_1d,
    psi_1d_derivatives,
    psi_1d_scaled,
    psi_3d,
    psi_3d_derivatives,
    psi_3d_scaled,
    singular_potential,
)
from .odesolve import (
    IvpProblem,
    StepUnderflowError,
    ToleranceError,
    WaveEquation,
    integrate,
    node_locations,
    residual,
)
from .quantumhj import (
    QBlowupError,
    q_residual,
    quantum_correction_1d,
    quantum_correction_3d,
    solve_q_ivp,
)
from .specfun import bessel_j_first_zero
from .units import PhysicalParams, ScaledCoords, to_dimensionless

__all__ = ["RunConfig", "UsageError", "main"]

_CASES = ("d1", "d3")
_FORMATS = ("csv", "json")
_COMMANDS = ("verify", "solve", "figure", "report")

_DEFAULT_VERIFY_SPAN = {"d1": (0.2, 10.0), "d3": (0.2, 10.0)}
_DEFAULT_SOLVE_SPAN = {"d1": (0.05, 10.0), "d3": (0.0, 4.0)}


class UsageError(ValueError):
    """Configuration problem; maps to exit status 2."""


@dataclass(frozen=True)
class RunConfig:
    """Fully parsed and defaulted run configuration."""

    command: str
    case: str = "d1"
    figure_id: int = 0
    span: Optional[tuple[float, float]] = None
    points: Optional[int] = None
    rel_tol: float = 1e-10
    abs_tol: float = 1e-12
    fmt: str = "csv"
    output: Optional[str] = None
    mass: float = 0.5
    energy: float = 1.0
    hbar: float = 1.0


def _parse_span(text: str) -> tuple[float, float]:
    parts = text.split(",")
    if len(parts) != 2:
        raise UsageError(f"--span expects 'a,b', got {text!r}")
    try:
        return float(parts[0]), float(parts[1])
    except ValueError as exc:
        raise UsageError(f"--span values must be numbers: {exc}") from None


def validate_config(cfg: RunConfig) -> None:
    if cfg.command not in _COMMANDS:
        raise UsageError(f"unknown command {cfg.command!r}")
    if cfg.case not in _CASES:
        raise UsageError(f"--case must be one of {_CASES}, got {cfg.case!r}")
    if cfg.fmt not in _FORMATS:
        raise UsageError(f"--format must be one of {_FORMATS}")
    if cfg.command == "figure" and cfg.figure_id not in (1, 2, 3, 4, 5):
        raise UsageError(f"--id must be 1..5, got {cfg.figure_id}")
    if cfg.command == "report" and not cfg.output:
        raise UsageError("report requires --output")
    if cfg.points is not None and cfg.points < 8:
        raise UsageError(f"--points must be at least 8, got {cfg.points}")
    if not (1e-12 <= cfg.rel_tol <= 1e-3):
        raise UsageError(f"--rel-tol must lie in [1e-12, 1e-3], got {cfg.rel_tol:g}")
    if not (0.0 < cfg.abs_tol <= 1e-3):
        raise UsageError(f"--abs-tol must lie in (0, 1e-3], got {cfg.abs_tol:g}")
    if cfg.mass <= 0.0 or cfg.energy <= 0.0 or cfg.hbar <= 0.0:
        raise UsageError("--mass, --energy and --hbar must all be positive")
    if cfg.span is not None:
        a, b = cfg.span
        if not a < b:
            raise UsageError(f"span must satisfy a < b, got {a},{b}")
        if cfg.command in ("verify", "solve", "report"):
            if cfg.case == "d1" and a <= 0.0 <= b:
                raise UsageError(
                    "1D span touches the singular point x = 0; "
                    "pick a span on one side of it"
                )
            if cfg.case == "d3" and a < 0.0:
                raise UsageError("3D span needs r >= 0")
        if cfg.command == "figure" and cfg.figure_id in (3, 5) and a < 0.0:
            raise UsageError("radial figure spans need r >= 0")


def _span_or_default(cfg: RunConfig) -> tuple[float, float]:
    if cfg.span is not None:
        return cfg.span
    table = _DEFAULT_VERIFY_SPAN if cfg.command in ("verify", "report") else _DEFAULT_SOLVE_SPAN
    return table[cfg.case]


def _params(cfg: RunConfig) -> PhysicalParams:
    return PhysicalParams(mass=cfg.mass, energy=cfg.energy, hbar=cfg.hbar)


def canonical_command(cfg: RunConfig) -> str:
    """Reconstruct a normalized command line for output headers."""
    parts = ["compmedia", cfg.command]
    if cfg.command == "figure":
        parts.append(f"--id {cfg.figure_id}")
    else:
        parts.append(f"--case {cfg.case}")
    if cfg.span is not None:
        parts.append(f"--span {cfg.span[0]:g},{cfg.span[1]:g}")
    if cfg.points is not None:
        parts.append(f"--points {cfg.points}")
    if cfg.command == "solve":
        parts.append(f"--rel-tol {cfg.rel_tol:g} --abs-tol {cfg.abs_tol:g}")
    if (cfg.mass, cfg.energy, cfg.hbar) != (0.5, 1.0, 1.0):
        parts.append(f"--mass {cfg.mass:g} --energy {cfg.energy:g} --hbar {cfg.hbar:g}")
    if cfg.fmt != "csv":
        parts.append(f"--format {cfg.fmt}")
    return " ".join(parts)


def _fmt(v: float) -> str:
    return f"{float(v):.17g}"


def _write_table(stream: TextIO, cfg: RunConfig, columns: list[str],
                 rows, extra_header: list[str] = ()) -> None:
    if cfg.fmt == "csv":
        stream.write(f"# {canonical_command(cfg)}\n")
        stream.write(f"# compmedia {__version__}\n")
        for line in extra_header:
            stream.write(f"# {line}\n")
        stream.write(",".join(columns) + "\n")
        for row in rows:
            stream.write(",".join(_fmt(v) for v in row) + "\n")
    else:
        doc = {
            "command": canonical_command(cfg),
            "version": __version__,
            "notes": list(extra_header),
            "columns": list(columns),
            "rows": [[float(v) for v in row] for row in rows],
        }
        json.dump(doc, stream, sort_keys=True, indent=1)
        stream.write("\n")


def _open_output(cfg: RunConfig):
    """Target stream for data output; '-' or None means stdout."""
    if cfg.output in (None, "-"):
        return sys.stdout, False
    try:
        return open(cfg.output, "w", encoding="utf-8", newline=""), True
    except OSError as exc:
        raise UsageError(f"cannot open output path {cfg.output!r}: {exc}")


# ---------------------------------------------------------------------------
# verify
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class _Check:
    name: str
    max_abs: float
    tolerance: float

    @property
    def passed(self) -> bool:
        return self.max_abs <= self.tolerance


def _verify_battery_1d(span, n: int) -> list[_Check]:
    a, b = span
    xs = np.linspace(a, b, n)
    checks = []

    p = compensating_momentum_1d()
    qc = np.array([quantum_correction_1d(p, float(x)) for x in xs])
    checks.append(_Check("classicality_analytic", float(np.max(np.abs(qc))), 1e-12))

    qc_fd = np.array(
        [quantum_correction_1d(lambda t: 1.0 / (t * t), float(x)) for x in xs]
    )
    checks.append(_Check("classicality_fd", float(np.max(np.abs(qc_fd))), 1e-6))

    q = compensating_log_momentum_1d()
    qres = np.abs(q_residual(Geometry.ONE_D, q, xs))
    checks.append(_Check("log_momentum_equation", float(np.max(qres)), 1e-12))

    x0 = float(np.clip(1.0 if a > 0 else -1.0, a, b))
    lm = solve_q_ivp(Geometry.ONE_D, qprime0=-2.0 / x0, span=span, coord0=x0,
                     q0=-2.0 * np.log(abs(x0)), n_points=n)
    dev = np.abs(lm.values - (-2.0 * np.log(np.abs(lm.grid))))
    checks.append(_Check("log_momentum_ivp_match", float(np.max(dev)), 1e-9))

    psi0, dpsi0, _ = psi_1d_derivatives(a)
    prob = IvpProblem(kind=WaveEquation.WAVE_1D, start=a, end=b,
                      psi0=psi0, dpsi0=dpsi0)
    sol = integrate(prob)
    err = np.abs(sol(xs) - psi_1d(xs))
    checks.append(_Check("wave_ivp_match", float(np.max(err)), 1e-7))

    rep = residual(WaveEquation.WAVE_1D, compensating_wave_1d(), xs, tolerance=1e-12)
    checks.append(_Check("wave_residual_analytic", rep.max_abs, rep.tolerance))

    spec = MediumSpec(kind=Geometry.ONE_D)
    nn = spec.index(xs) ** 2
    vv = spec.potential(xs)
    rel = np.abs(nn - (1.0 - vv)) / np.maximum(1.0, np.abs(nn))
    checks.append(_Check("index_potential_identity", float(np.max(rel)), 1e-14))

    u = singular_potential(SingularPotentialForm(kind=Geometry.ONE_D), xs)
    split = np.abs(vv - (1.0 + u))
    checks.append(_Check("potential_split_identity", float(np.max(split)), 0.0))

    ds = np.array(
        [richardson_d1(lambda t: spec.action(t), float(x), h=1e-3 * abs(float(x)))
         for x in xs]
    )
    checks.append(
        _Check("action_gradient_match", float(np.max(np.abs(ds - spec.momentum(xs)))),
               1e-8)
    )

    # node spacing is uniform in 1/x with gap pi; checked on a fixed
    # oscillation-rich window on the same side of 0 as the span
    window = (0.05, 1.0) if a > 0 else (-1.0, -0.05)
    nodes = node_locations(lambda x: psi_1d(x), window, kind=WaveEquation.WAVE_1D)
    if nodes.size >= 2:
        gaps = np.abs(np.diff(1.0 / nodes))
        spacing_dev = float(np.max(np.abs(gaps - np.pi)))
    else:
        spacing_dev = np.inf
    checks.append(_Check("node_pattern", spacing_dev, 1e-9))
    return checks


def _verify_battery_3d(span, n: int) -> list[_Check]:
    a, b = span
    rs = np.linspace(a, b, n)
    checks = []

    p = compensating_momentum_3d()
    qc_a = np.array([quantum_correction_3d(p, float(r), form="amplitude") for r in rs])
    qc_l = np.array([quantum_correction_3d(p, float(r), form="log") for r in rs])
    checks.append(
        _Check("classicality_analytic",
               float(max(np.max(np.abs(qc_a)), np.max(np.abs(qc_l)))), 1e-12)
    )
    checks.append(
        _Check("correction_form_agreement", float(np.max(np.abs(qc_a - qc_l))), 1e-10)
    )

    qc_fd = np.array(
        [quantum_correction_3d(lambda t: t * t, float(r)) for r in rs]
    )
    checks.append(_Check("classicality_fd", float(np.max(np.abs(qc_fd))), 1e-6))

    q = compensating_log_momentum_3d()
    qres = np.abs(q_residual(Geometry.THREE_D, q, rs))
    checks.append(_Check("log_momentum_equation", float(np.max(qres)), 1e-12))

    r0 = float(np.clip(1.0, a, b))
    lm = solve_q_ivp(Geometry.THREE_D, qprime0=2.0 / r0, span=span, coord0=r0,
                     q0=2.0 * np.log(r0), n_points=n)
    dev = np.abs(lm.values - 2.0 * np.log(lm.grid))
    checks.append(_Check("log_momentum_ivp_match", float(np.max(dev)), 1e-9))

    psi0, dpsi0, _ = psi_3d_derivatives(a)
    prob = IvpProblem(kind=WaveEquation.WAVE_3D, start=a, end=b,
                      psi0=psi0, dpsi0=dpsi0)
    sol = integrate(prob)
    err = np.abs(sol(rs) - psi_3d(rs))
    checks.append(_Check("wave_ivp_match", float(np.max(err)), 1e-7))

    origin_end = min(4.0, b)
    prob0 = IvpProblem(kind=WaveEquation.WAVE_3D, start=0.0, end=origin_end,
                       psi0=psi_3d(0.0), dpsi0=0.0)
    sol0 = integrate(prob0)
    rs0 = np.linspace(0.0, origin_end, n)
    err0 = np.abs(sol0(rs0) - psi_3d(rs0))
    checks.append(_Check("wave_ivp_from_origin", float(np.max(err0)), 1e-7))

    rep = residual(WaveEquation.WAVE_3D, compensating_wave_3d(), rs, tolerance=1e-10)
    checks.append(_Check("wave_residual_analytic", rep.max_abs, rep.tolerance))

    spec = MediumSpec(kind=Geometry.THREE_D)
    nn = spec.index(rs) ** 2
    vv = spec.potential(rs)
    rel = np.abs(nn - (1.0 - vv)) / np.maximum(1.0, np.abs(nn))
    checks.append(_Check("index_potential_identity", float(np.max(rel)), 1e-14))

    u = singular_potential(SingularPotentialForm(kind=Geometry.THREE_D), rs)
    split = np.abs(vv - (1.0 + u))
    checks.append(_Check("potential_split_identity", float(np.max(split)), 0.0))

    ds = np.array(
        [richardson_d1(lambda t: spec.action(t), float(r), h=1e-3 * max(abs(float(r)), 0.1))
         for r in rs]
    )
    checks.append(
        _Check("action_gradient_match", float(np.max(np.abs(ds - spec.momentum(rs)))),
               1e-8)
    )

    first = node_locations(lambda r: psi_3d(r), (0.5, 3.0), kind=WaveEquation.WAVE_3D)
    target = (3.0 * bessel_j_first_zero()) ** (1.0 / 3.0)
    dev_node = abs(float(first[0]) - target) if first.size else np.inf
    checks.append(_Check("first_node_location", dev_node, 1e-8))
    return checks


def run_verify(cfg: RunConfig) -> int:
    params = _params(cfg)
    span_lab = _span_or_default(cfg)
    span = (
        float(to_dimensionless(span_lab[0], params)),
        float(to_dimensionless(span_lab[1], params)),
    )
    # re-check the converted span; scaling cannot move a span across 0,
    # but this keeps the invariant local
    if cfg.case == "d1" and span[0] <= 0.0 <= span[1]:
        raise UsageError("1D span touches the singular point x = 0")
    n = cfg.points or 200

    if cfg.case == "d1":
        checks = _verify_battery_1d(span, n)
    else:
        checks = _verify_battery_3d(span, n)

    width = max(len(c.name) for c in checks)
    lines = [f"case {cfg.case}: span [{span[0]:g}, {span[1]:g}], {n} points"]
    for c in checks:
        status = "pass" if c.passed else "FAIL"
        lines.append(
            f"{c.name:<{width}}  max {c.max_abs:12.5e}  tol {c.tolerance:8.1e}  {status}"
        )
    n_pass = sum(c.passed for c in checks)
    lines.append(f"{n_pass}/{len(checks)} checks passed")
    print("\n".join(lines))

    if cfg.output:
        stream, owned = _open_output(cfg)
        try:
            rows = [(c.max_abs, c.tolerance, 1.0 if c.passed else 0.0) for c in checks]
            names = [c.name for c in checks]
            if cfg.fmt == "csv":
                stream.write(f"# {canonical_command(cfg)}\n")
                stream.write(f"# compmedia {__version__}\n")
                stream.write("check,max_abs,tolerance,status\n")
                for name, (mx, tol, ok) in zip(names, rows):
                    stream.write(
                        f"{name},{_fmt(mx)},{_fmt(tol)},{'pass' if ok else 'fail'}\n"
                    )
            else:
                doc = {
                    "command": canonical_command(cfg),
                    "version": __version__,
                    "checks": [
                        {
                            "name": c.name,
                            "max_abs": c.max_abs,
                            "tolerance": c.tolerance,
                            "passed": c.passed,
                        }
                        for c in checks
                    ],
                }
                json.dump(doc, stream, sort_keys=True, indent=1)
                stream.write("\n")
        finally:
            if owned:
                stream.close()

    return 0 if n_pass == len(checks) else 1


# ---------------------------------------------------------------------------
# solve
# ---------------------------------------------------------------------------


def run_solve(cfg: RunConfig) -> int:
    params = _params(cfg)
    span_lab = _span_or_default(cfg)
    a = float(to_dimensionless(span_lab[0], params))
    b = float(to_dimensionless(span_lab[1], params))
    n = cfg.points or 401

    if cfg.case == "d1":
        kind = WaveEquation.WAVE_1D
        psi0, dpsi0, _ = psi_1d_derivatives(a)
        exact = psi_1d
    else:
        kind = WaveEquation.WAVE_3D
        if a == 0.0:
            # origin value of the closed form, so C2 = 1 for the comparison
            psi0, dpsi0 = psi_3d(0.0), 0.0
        else:
            psi0, dpsi0, _ = psi_3d_derivatives(a)
        exact = psi_3d

    prob = IvpProblem(kind=kind, start=a, end=b, psi0=psi0, dpsi0=dpsi0)
    sol = integrate(prob, rel_tol=cfg.rel_tol, abs_tol=cfg.abs_tol)

    xs = np.linspace(a, b, n)
    num = sol(xs)
    ana = np.array([exact(float(x)) for x in xs])
    err = np.abs(num - ana)

    stream, owned = _open_output(cfg)
    try:
        _write_table(
            stream,
            cfg,
            ["coord", "psi_numeric", "psi_analytic", "abs_error"],
            zip(xs, num, ana, err),
            extra_header=[
                f"max_abs_error = {_fmt(float(np.max(err)))}",
                f"accepted_steps = {sol.n_steps}",
            ],
        )
    finally:
        if owned:
            stream.close()
    return 0


# ---------------------------------------------------------------------------
# figure data
# ---------------------------------------------------------------------------


def _figure_rows(cfg: RunConfig, params: PhysicalParams):
    fid = cfg.figure_id
    if fid == 1:
        a, b = cfg.span or (-3.0, 3.0)
        n = cfg.points or 2001
        xs = np.linspace(a, b, n)
        rows = [(x, psi_1d(float(to_dimensionless(x, params)))) for x in xs]
        return ["x", "psi"], rows, ["1D compensating wave C x sin(1/x)"]
    if fid == 2:
        n = cfg.points or 201
        zetas = np.linspace(-3.0, 3.0, n)
        es = np.linspace(0.5, 2.5, 41)
        rows = [
            (z, se, psi_1d_scaled(ScaledCoords(zeta=float(z), sqrtE=float(se))))
            for se in es
            for z in zetas
        ]
        return ["zeta", "sqrtE", "psi"], rows, [
            "1D wave on the (zeta, sqrt(E)) sheet; rows grouped by sqrtE"
        ]
    if fid == 3:
        a, b = cfg.span or (0.0, 4.0)
        n = cfg.points or 2001
        rs = np.linspace(a, b, n)
        rows = [(r, psi_3d(float(to_dimensionless(r, params)))) for r in rs]
        return ["r", "psi"], rows, ["regular radial compensating wave"]
    if fid == 4:
        a, b = cfg.span or (-4.0, 4.0)
        n = cfg.points or 201
        xs = np.linspace(a, b, n)
        rows = []
        for x in xs:
            for y in xs:
                r = float(np.hypot(to_dimensionless(x, params),
                                   to_dimensionless(y, params)))
                rows.append((x, y, psi_3d(r)))
        return ["x", "y", "psi"], rows, [
            "equatorial slice of the radial wave; rows grouped by x"
        ]
    # fid == 5
    n = cfg.points or 201
    zetas = np.linspace(0.0, 4.0, n)
    es = np.linspace(0.5, 2.5, 41)
    rows = [
        (z, se, psi_3d_scaled(ScaledCoords(zeta=float(z), sqrtE=float(se))))
        for se in es
        for z in zetas
    ]
    return ["zeta", "sqrtE", "psi"], rows, [
        "radial wave on the (zeta, sqrt(E)) sheet; rows grouped by sqrtE"
    ]


def run_figure(cfg: RunConfig) -> int:
    params = _params(cfg)
    columns, rows, notes = _figure_rows(cfg, params)
    stream, owned = _open_output(cfg)
    try:
        _write_table(stream, cfg, columns, rows, extra_header=notes)
    finally:
        if owned:
            stream.close()
    return 0


# ---------------------------------------------------------------------------
# argument parsing and entry point
# ---------------------------------------------------------------------------


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="compmedia",
        description="Verify and tabulate the compensating quantum media.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, with_case=True):
        if with_case:
            p.add_argument("--case", choices=_CASES, default="d1",
                           help="which medium: 1D (d1) or radial (d3)")
        p.add_argument("--span", type=str, default=None,
                       help="coordinate window 'a,b' in lab units")
        p.add_argument("--points", type=int, default=None,
                       help="number of sample points")
        p.add_argument("--format", dest="fmt", choices=_FORMATS, default="csv")
        p.add_argument("--output", type=str, default=None,
                       help="output path ('-' or omitted: stdout)")
        p.add_argument("--mass", type=float, default=0.5)
        p.add_argument("--energy", type=float, default=1.0)
        p.add_argument("--hbar", type=float, default=1.0)

    pv = sub.add_parser("verify", help="run the independent check battery")
    common(pv)
    pr = sub.add_parser("report", help="verify and write a report file")
    common(pr)
    ps = sub.add_parser("solve", help="integrate the wave equation numerically")
    common(ps)
    ps.add_argument("--rel-tol", type=float, default=1e-10)
    ps.add_argument("--abs-tol", type=float, default=1e-12)
    pf = sub.add_parser("figure", help="emit data behind one of the figures")
    pf.add_argument("--id", dest="figure_id", type=int, required=True,
                    help="figure number, 1..5")
    common(pf, with_case=False)
    return parser


def _config_from_args(args: argparse.Namespace) -> RunConfig:
    span = _parse_span(args.span) if args.span else None
    return RunConfig(
        command=args.command,
        case=getattr(args, "case", "d1"),
        figure_id=getattr(args, "figure_id", 0),
        span=span,
        points=args.points,
        rel_tol=getattr(args, "rel_tol", 1e-10),
        abs_tol=getattr(args, "abs_tol", 1e-12),
        fmt=args.fmt,
        output=args.output,
        mass=args.mass,
        energy=args.energy,
        hbar=args.hbar,
    )


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = _config_from_args(args)
        validate_config(cfg)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2

    try:
        if cfg.command in ("verify", "report"):
            return run_verify(cfg)
        if cfg.command == "solve":
            return run_solve(cfg)
        return run_figure(cfg)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (StepUnderflowError, QBlowupError, ToleranceError) as exc:
        print(f"solver error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
