"""Command-line interface.

Subcommands: build, verify, invert, magic, simulate, profile.  All numeric
output is plain UTF-8 text; floats are printed with repr (shortest
round-trip, at most 17 significant digits) so identical flags give
byte-identical output.  Exit codes: 0 success, 1 verification failure,
2 usage error.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from fractions import Fraction
from pathlib import Path

import numpy as np

from perfectchain import chain, dynamics, eigensolve, inverse, jacobi, plotting


class VerificationFailure(Exception):
    pass


def _fmt(x) -> str:
    return repr(float(x))


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text, encoding="utf-8", newline="\n")
    else:
        sys.stdout.write(text)


def _matrix_csv(m: jacobi.JacobiMatrix) -> str:
    lines = ["i,diag,offdiag"]
    for i in range(m.n):
        off = _fmt(m.offdiag[i]) if i < m.n - 1 else ""
        lines.append(f"{i + 1},{_fmt(m.diag[i])},{off}")
    return "\n".join(lines) + "\n"


def cmd_build(args) -> int:
    m = jacobi.square_spectrum_matrix(args.n)
    if args.format == "csv":
        _emit(_matrix_csv(m), args.out)
    else:
        _emit(m.to_json() + "\n", args.out)
    return 0


def _load_matrix(path: str) -> jacobi.JacobiMatrix:
    data = json.loads(Path(path).read_text(encoding="utf-8"))
    return jacobi.JacobiMatrix.from_json_dict(data)


def _verify_checks(n: int, tol: float):
    """Yield (name, passed, residual, bound) for the full invariant suite."""
    m = jacobi.square_spectrum_matrix(n)
    target = jacobi.target_spectrum(n)
    scale = max(2.0 * (n - 1) ** 2, 1.0)

    vals = eigensolve.eigenvalues(m)
    resid = float(np.max(np.abs(vals - target)))
    yield "spectrum", resid <= tol * scale, resid, tol * scale

    vals_b = eigensolve.eigenvalues(m, method="bisect")
    agree = float(np.max(np.abs(vals - vals_b)))
    bound = 1e-10 * max(m.inf_norm(), 1.0)
    yield "solver_agreement", agree <= bound, agree, bound

    yield "persymmetry", jacobi.is_persymmetric(m, 0.0), 0.0, 0.0

    report = jacobi.verify_factorization(n)
    yield "factorization", report.ok, float(len(report.failures)), 0.0

    trace_target = n * (n - 1) * (2 * n - 1) // 3
    yield "trace_identity", jacobi.trace_exact(m) == trace_target, 0.0, 0.0

    if n >= 2:
        if n <= 80:  # validated float-mode range of the inverse recursion
            w = inverse.square_integer_weights(n)
            rebuilt = inverse.deboor_golub(target, w)
            rel = max(
                float(np.max(np.abs(rebuilt.diag - m.diag) / np.maximum(np.abs(m.diag), 1.0))),
                float(np.max(np.abs(rebuilt.offdiag - m.offdiag) / np.maximum(m.offdiag, 1.0))),
            )
            yield "inverse_roundtrip", rel <= 1e-9, rel, 1e-9
        if n <= 20:
            exact = inverse.deboor_golub_exact([2 * k * k for k in range(n)], w)
            ok = exact.diag_exact == m.diag_exact and tuple(
                exact.offdiag_sq_exact
            ) == tuple(m.offdiag_sq_exact or ())
            yield "inverse_roundtrip_exact", ok, 0.0, 0.0

        design = chain.design_chain_exact(n, 1, 2)
        dm = chain.dynamical_matrix(design)
        ok = tuple(dm.diag_exact) == tuple(m.diag_exact) and tuple(
            dm.offdiag_sq_exact or ()
        ) == tuple(m.offdiag_sq_exact or ())
        yield "chain_roundtrip_exact", ok, 0.0, 0.0

        omega = chain.default_omega(n)
        d = chain.design_chain(n, chain.default_m1(n), omega)
        start = dynamics.initial_pulse(d)
        prop = dynamics.ModalPropagator(d)
        t_star = math.pi / omega
        mirrored = prop.evolve(start, t_star)
        fid, dev = dynamics.mirror_fidelity(start, mirrored)
        yield "mirror_transfer", dev <= 1e-8, dev, 1e-8
        again = prop.evolve(start, 2 * t_star)
        perr = float(np.max(np.abs(again.q - start.q)))
        yield "periodicity", perr <= 1e-8, perr, 1e-8


def cmd_verify(args) -> int:
    lines = []
    failed = False
    if args.matrix:
        m = _load_matrix(args.matrix)
        checks = []
        persym = jacobi.is_persymmetric(m, args.tol * max(m.inf_norm(), 1.0))
        checks.append(("persymmetry", persym, 0.0, 0.0))
        target = jacobi.target_spectrum(m.n)
        vals = eigensolve.eigenvalues(m)
        scale = max(2.0 * (m.n - 1) ** 2, 1.0)
        resid = float(np.max(np.abs(vals - target)))
        checks.append(("spectrum", resid <= args.tol * scale, resid, args.tol * scale))
    else:
        checks = list(_verify_checks(args.n, args.tol))
    for name, ok, resid, bound in checks:
        status = "PASS" if ok else "FAIL"
        lines.append(f"{status} {name} residual={_fmt(resid)} bound={_fmt(bound)}")
        failed = failed or not ok
    _emit("\n".join(lines) + "\n", args.out)
    return 1 if failed else 0


def _read_column(path: str) -> list[str]:
    tokens = []
    for line in Path(path).read_text(encoding="utf-8").splitlines():
        line = line.strip()
        if line and not line.startswith("#"):
            tokens.append(line)
    if not tokens:
        raise ValueError(f"no values found in {path}")
    return tokens


def cmd_invert(args) -> int:
    tokens = _read_column(args.spectrum)
    if args.mode == "exact":
        spectrum = [Fraction(t) for t in tokens]
        if args.weights == "auto":
            weights = inverse.persymmetric_weights_exact(spectrum)
        else:
            weights = inverse.WeightVector(
                tuple(Fraction(t) for t in _read_column(args.weights))
            )
        m = inverse.deboor_golub_exact(spectrum, weights)
    else:
        spectrum = np.array([float(t) for t in tokens])
        if args.weights == "auto":
            weights = inverse.persymmetric_weights(spectrum)
        else:
            weights = inverse.WeightVector(
                tuple(float(t) for t in _read_column(args.weights))
            )
        m = inverse.deboor_golub(spectrum, weights)
    if args.format == "csv":
        _emit(_matrix_csv(m), args.out)
    else:
        _emit(m.to_json() + "\n", args.out)
    return 0


def _parse_range(spec: str) -> range:
    if ".." in spec:
        lo, hi = spec.split("..", 1)
        return range(int(lo), int(hi) + 1)
    n = int(spec)
    return range(n, n + 1)


def magic_table(ns) -> str:
    lines = ["n omega^2 masses springs"]
    for n in ns:
        d = chain.magic_design(n)
        w2 = d.omega_squared
        lines.append(
            f"{n} {w2.numerator}/{w2.denominator} "
            + ",".join(str(m) for m in d.masses)
            + " "
            + ",".join(str(k) for k in d.springs)
        )
    return "\n".join(lines) + "\n"


def cmd_magic(args) -> int:
    ns = _parse_range(args.n_range)
    if args.format == "json":
        payload = [chain.magic_design(n).to_json_dict() for n in ns]
        _emit(json.dumps(payload, indent=2) + "\n", args.out)
    else:
        _emit(magic_table(ns), args.out)
    return 0


def _trajectory_csv(traj: dynamics.Trajectory) -> str:
    lines = ["t,i,q,qdot,u"]
    for state in traj.states:
        u = state.physical_displacements(traj.design)
        for i in range(state.n):
            lines.append(
                f"{_fmt(state.t)},{i + 1},{_fmt(state.q[i])},"
                f"{_fmt(state.qdot[i])},{_fmt(u[i])}"
            )
    return "\n".join(lines) + "\n"


def cmd_simulate(args) -> int:
    n = args.n
    omega = args.omega if args.omega else chain.default_omega(n)
    m1 = args.m1 if args.m1 else chain.default_m1(n)
    d = chain.design_chain(n, m1, omega)
    t_end = args.t_end if args.t_end is not None else math.pi / omega
    interval = args.interval if args.interval else (t_end / 10 if t_end else 1.0)
    start = dynamics.initial_pulse(d)
    if args.integrator == "verlet":
        traj = dynamics.integrate_verlet(d, start, t_end, args.dt, interval if t_end else None)
    else:
        traj = dynamics.snapshot_series(d, start, t_end, interval)
    csv_text = _trajectory_csv(traj)
    if args.format == "svg":
        if not args.out:
            raise ValueError("--format svg requires --out")
        rows = [
            (s.t, list(s.physical_displacements(d))) for s in traj.states
        ]
        svg = plotting.stacked_snapshots(f"chain n={n} snapshots", rows)
        _emit(svg, args.out)
        _emit(csv_text, str(Path(args.out).with_suffix(".csv")))
    else:
        _emit(csv_text, args.out)
    return 0


def profile_rows(n: int, omega: float, m1: float) -> list[tuple[str, int, float, float, float | None]]:
    m = jacobi.square_spectrum_matrix(n)
    d = chain.design_chain(n, m1, omega)
    half_w2 = 0.5 * omega * omega
    # limiting shapes 2 amp x(1-x) and amp x(1-x); amp = omega^2 (n-1)^2
    # equals pi^2 in the default time unit omega = pi/(n-1)
    amp = omega * omega * (n - 1) ** 2
    rows = []
    for i in range(1, n + 1):
        x = (i - 1) / (n - 1)
        rows.append(("a_tilde", i, x, half_w2 * float(m.diag[i - 1]), 2 * amp * x * (1 - x)))
    for i in range(1, n):
        x = (i - 0.5) / (n - 1)
        rows.append(("b_tilde", i, x, half_w2 * float(m.offdiag[i - 1]), amp * x * (1 - x)))
    for i in range(1, n + 1):
        x = (i - 1) / (n - 1)
        rows.append(("mass", i, x, float(d.masses[i - 1]), None))
    for i in range(1, n):
        x = (i - 0.5) / (n - 1)
        rows.append(("spring", i, x, float(d.springs[i - 1]), None))
    return rows


def cmd_profile(args) -> int:
    n = args.n
    omega = args.omega if args.omega else chain.default_omega(n)
    m1 = args.m1 if args.m1 else chain.default_m1(n)
    rows = profile_rows(n, omega, m1)
    if args.format == "svg":
        if not args.out:
            raise ValueError("--format svg requires --out")
        by_series: dict[str, list[tuple[float, float]]] = {}
        for series, _, x, value, _ in rows:
            by_series.setdefault(series, []).append((x, value))
        xs = [j / 200 for j in range(201)]
        amp = omega * omega * (n - 1) ** 2
        data = [
            ("a_tilde", by_series["a_tilde"], False),
            ("b_tilde", by_series["b_tilde"], False),
            ("mass", by_series["mass"], False),
            ("spring", by_series["spring"], False),
            ("parabola_a", [(x, 2 * amp * x * (1 - x)) for x in xs], True),
            ("parabola_b", [(x, amp * x * (1 - x)) for x in xs], True),
        ]
        svg = plotting.series_plot(f"profile n={n}", data)
        _emit(svg, args.out)
        csv_path = str(Path(args.out).with_suffix(".csv"))
    else:
        csv_path = args.out
    lines = ["series,i,x,value,parabola"]
    for series, i, x, value, parabola in rows:
        par = _fmt(parabola) if parabola is not None else ""
        lines.append(f"{series},{i},{_fmt(x)},{_fmt(value)},{par}")
    _emit("\n".join(lines) + "\n", csv_path)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="perfectchain",
        description="Persymmetric Jacobi matrices with spectrum {2k^2} and "
        "the dispersionless mass-spring chains built from them.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, need_n=True):
        if need_n:
            p.add_argument("--n", type=int, required=True, help="matrix/chain order")
        p.add_argument("--out", help="output path (default: stdout)")

    p_build = sub.add_parser("build", help="emit the closed-form matrix")
    add_common(p_build)
    p_build.add_argument("--format", choices=["json", "csv"], default="json")
    p_build.set_defaults(func=cmd_build)

    p_verify = sub.add_parser("verify", help="run the invariant suite")
    add_common(p_verify)
    p_verify.add_argument("--tol", type=float, default=1e-10,
                          help="relative spectrum tolerance factor")
    p_verify.add_argument("--matrix", help="verify a matrix JSON file instead")
    p_verify.set_defaults(func=cmd_verify)

    p_invert = sub.add_parser("invert", help="reconstruct a matrix from a spectrum file")
    p_invert.add_argument("spectrum", help="file with one eigenvalue per line")
    p_invert.add_argument("--weights", default="auto",
                          help="'auto' (persymmetric) or a weights file")
    p_invert.add_argument("--mode", choices=["float", "exact"], default="float")
    p_invert.add_argument("--format", choices=["json", "csv"], default="json")
    p_invert.add_argument("--out")
    p_invert.set_defaults(func=cmd_invert)

    p_magic = sub.add_parser("magic", help="coprime integer mass/spring table")
    p_magic.add_argument("--n-range", required=True, help="e.g. 3..10 or 7")
    p_magic.add_argument("--format", choices=["table", "json"], default="table")
    p_magic.add_argument("--out")
    p_magic.set_defaults(func=cmd_magic)

    p_sim = sub.add_parser("simulate", help="evolve the chain from a pulse at mass 1")
    add_common(p_sim)
    p_sim.add_argument("--omega", type=float, help="frequency spacing (default pi/(n-1))")
    p_sim.add_argument("--m1", type=float, help="first mass (default sqrt((n-1)/pi))")
    p_sim.add_argument("--t-end", type=float, dest="t_end",
                       help="end time (default half period pi/omega)")
    p_sim.add_argument("--interval", type=float, help="snapshot interval (default t_end/10)")
    p_sim.add_argument("--integrator", choices=["modal", "verlet"], default="modal")
    p_sim.add_argument("--dt", type=float, default=1e-3, help="verlet step")
    p_sim.add_argument("--format", choices=["csv", "svg"], default="csv")
    p_sim.set_defaults(func=cmd_simulate)

    p_prof = sub.add_parser("profile", help="matrix/chain parameter profiles vs x")
    add_common(p_prof)
    p_prof.add_argument("--omega", type=float)
    p_prof.add_argument("--m1", type=float)
    p_prof.add_argument("--format", choices=["csv", "svg"], default="csv")
    p_prof.set_defaults(func=cmd_profile)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (eigensolve.SolverError, inverse.BreakdownError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
