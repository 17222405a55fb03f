"""Command line entry point ``qgue``.

Exit codes: 0 success, 1 verification failure or internal inconsistency,
2 configuration error, 3 budget or tolerance infeasible.
"""

from __future__ import annotations

import argparse
import math
import sys
from fractions import Fraction

from . import __version__, emit, enumor, moments, spectral, verify
from .config import overrides
from .exceptions import (
    BudgetExceededError,
    DomainError,
    InconsistentEntryError,
    IntegralityError,
    SingularPointError,
    ToleranceError,
    UnsupportedModeError,
)

EXIT_OK, EXIT_FAIL, EXIT_CONFIG, EXIT_BUDGET = 0, 1, 2, 3


class ConfigError(ValueError):
    pass


# ------------------------------------------------------------- parsing ----


def parse_int_range(text: str) -> list[int]:
    """``"3"``, ``"1-4"`` or ``"1,2,5"`` (pieces may mix) to a sorted unique list."""
    out: set[int] = set()
    try:
        for piece in text.split(","):
            piece = piece.strip()
            if "-" in piece[1:]:
                lo, hi = piece.split("-", 1) if not piece.startswith("-") else (piece, piece)
                lo_i, hi_i = int(lo), int(hi)
                if hi_i < lo_i:
                    raise ConfigError(f"empty range {piece!r}")
                out.update(range(lo_i, hi_i + 1))
            else:
                out.add(int(piece))
    except ValueError as exc:
        raise ConfigError(f"bad integer range {text!r}") from exc
    if not out:
        raise ConfigError(f"empty range {text!r}")
    return sorted(out)


def parse_float(text: str) -> float:
    t = text.strip().lower()
    if t in ("log2", "ln2"):
        return math.log(2.0)
    try:
        return float(Fraction(t)) if "/" in t else float(t)
    except (ValueError, ZeroDivisionError) as exc:
        raise ConfigError(f"bad number {text!r}") from exc


def parse_float_list(text: str) -> list[float]:
    vals = [parse_float(t) for t in text.split(",") if t.strip()]
    if not vals:
        raise ConfigError("empty list")
    return vals


def parse_q(text: str) -> Fraction:
    """Exact rational ``q``: ``"a/b"`` or a decimal literal."""
    try:
        q = Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise ConfigError(f"bad q {text!r}") from exc
    if not 0 < q <= 1:
        raise ConfigError("q must lie in (0, 1]")
    return q


# ------------------------------------------------------------- output ----


def _meta(args, command: str) -> dict:
    keep = {k: v for k, v in vars(args).items() if k not in ("func", "out", "inject_fault")}
    return {"command": command, "config": {k: str(v) for k, v in sorted(keep.items())}}


def _write(args, text: str) -> None:
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _emit_rows(args, command, header, rows, svg=None, extra_meta=None) -> None:
    fmt = args.format
    if fmt == "csv":
        text = emit.to_csv(header, rows)
    elif fmt == "json":
        text = emit.to_json(header, rows, {**_meta(args, command), **(extra_meta or {})})
    elif fmt == "svg":
        if svg is None:
            raise ConfigError(f"svg output is not available for {command}")
        text = svg()
    else:
        text = emit.to_text(header, rows)
    _write(args, text)


# ------------------------------------------------------------- commands ----


def cmd_moments(args) -> int:
    Ns, ps = parse_int_range(args.N), parse_int_range(args.p)
    if min(Ns) < 1 or min(ps) < 0:
        raise ConfigError("need N >= 1 and p >= 0")
    q = parse_q(args.at_q) if args.at_q else None
    if args.kind == "gue":
        kind = "GUE"
    else:
        kind = "qGUE-symbolic" if q is None else "qGUE-numeric"
    table = moments.build_table(kind, Ns, ps, q)
    if args.oracle:
        for N in Ns:
            for p in ps:
                poly = enumor.matching_total(N, p, budget=args.budget, jobs=args.jobs)
                value = poly.evaluate(1) if kind == "GUE" else poly if q is None else poly.evaluate(q)
                if kind == "GUE":
                    value = int(value)
                table.insert((N, p), value, "oracle")
    if args.format == "csv":
        _write(args, table.to_csv())
    elif args.format == "json":
        _write(args, table.to_json({"version": __version__, **_meta(args, "moments")}))
    elif args.format == "svg":
        raise ConfigError("svg output is not available for moments")
    elif len(table) == 1:
        _write(args, table.rows()[0][-1] + "\n")
    else:
        _write(args, emit.to_text(table.HEADER, table.rows()))
    return EXIT_OK


def cmd_verify(args) -> int:
    if min(args.max_p, args.max_j, args.max_N) < 0 or args.max_p < 1 or args.max_N < 1:
        raise ConfigError("need max-p >= 1, max-N >= 1 and max-j >= 0")
    fault = verify.bump_constant((args.max_p, args.max_j)) if args.inject_fault else None
    report = verify.VerifyReport()
    if args.suite in ("exact", "all"):
        kw = {"fault": fault} if fault else {}
        report.checks += verify.exact_suite(args.max_p, args.max_j, args.max_N, args.budget, args.jobs, **kw).checks
    if args.suite in ("numeric", "all"):
        report.checks += verify.numeric_suite().checks
    rows = report.rows()
    if args.format == "text":
        lines = [f"{r[0]:<24} {r[2]:<9} {r[3]:>8}s  {r[1]}" + (f"  [{r[5]}]" if r[5] else "") for r in rows]
        lines.append(f"overall: {'pass' if report.passed else 'FAIL'}")
        _write(args, "\n".join(lines) + "\n")
    else:
        _emit_rows(args, "verify", verify.VerifyReport.HEADER, rows,
                   extra_meta={"overall": "pass" if report.passed else "fail"})
    bad = report.first_failure()
    if bad is not None:
        print(f"first failure: {bad.name} {verify._params_text(bad.witness or {})}", file=sys.stderr)
        return EXIT_FAIL
    return EXIT_OK


ASYM_HEADER = ("p", "lambda", "N", "scaled", "M0", "M1", "predicted", "error", "residual", "residual_minus_M1")


def asym_rows(ps, lams, Ns) -> list[tuple]:
    rows = []
    for p in ps:
        for lam in lams:
            c = spectral.asym_coeffs(p, lam)
            for N in Ns:
                s = moments.scaled_moment(N, p, lam)
                pred = c.predict(N)
                resid = (s - c.M0 * N) * N
                rows.append((p, lam, N, s, c.M0, c.M1, pred, abs(s - pred), resid, resid - c.M1))
    return rows


def cmd_asym(args) -> int:
    ps, lams, Ns = parse_int_range(args.p), parse_float_list(args.lam), parse_int_range(args.N)
    if min(Ns) < 1 or min(ps) < 0 or min(lams) < 0:
        raise ConfigError("need N >= 1, p >= 0, lambda >= 0")
    rows = asym_rows(ps, lams, Ns)

    def svg():
        series, hl = [], []
        for p in ps:
            for lam in lams:
                sel = [r for r in rows if r[0] == p and r[1] == lam]
                series.append((f"p={p} lambda={lam:.4g} residual", [r[2] for r in sel], [r[8] for r in sel], "dots"))
                hl.append(sel[0][5])
        return emit.svg_plot(series, "(q^p m - M0 N) N against N; lines at M1", hlines=hl)

    _emit_rows(args, "asym", ASYM_HEADER, rows, svg)
    return EXIT_OK


def cmd_density(args) -> int:
    lam = parse_float(args.lam)
    if lam <= 0:
        raise ConfigError("lambda must be positive")
    prof = spectral.density_profile(lam, args.order, args.points)

    def svg():
        name = "rho0" if args.order == 0 else "rho1"
        return emit.svg_plot([(f"{name} lambda={lam:.4g}", prof.xs, prof.values, "line")],
                             f"{name}(x), support |x|<=1, edge b={prof.b:.6g}",
                             vlines=(-1.0, 1.0, -prof.b, prof.b))

    _emit_rows(args, "density", ("x", "value", "order", "lambda"), prof.rows(), svg,
               extra_meta={"b": prof.b, "masked": list(prof.masked)})
    return EXIT_OK


def lattice_summary(ld: spectral.LatticeDensity, ps) -> list[str]:
    lines = [f"normalization {ld.normalization()!r} K={ld.K} tail_bound={ld.tail_bound:.3e}"]
    for p in ps:
        sym = (1 - ld.q) ** p * float(moments.qgue_moment_positive(ld.N, p).evaluate(ld.q))
        lines.append(f"moment p={p} jackson={ld.jackson_moment(p)!r} symbolic={sym!r}")
    return lines


def cmd_lattice(args) -> int:
    q = parse_float(args.q)
    if not 0 < q < 1:
        raise ConfigError("q must lie in (0, 1)")
    if args.N < 1:
        raise ConfigError("N must be positive")
    ps = parse_int_range(args.p)
    ld = spectral.lattice_density(args.N, q, args.K)
    rows = []
    for k, x, w, v in zip(ld.ks, ld.xs, ld.weights, ld.values):
        rows.append((k, -x, w, v))
        rows.append((k, x, w, v))
    summary = lattice_summary(ld, ps)

    def svg():
        xs = [r[1] for r in rows]
        return emit.svg_plot([(f"rho_N N={ld.N} q={q:g}", xs, [r[3] for r in rows], "dots")],
                             "lattice density", vlines=(-1.0, 1.0))

    header = ("k", "x", "weight", "density")
    if args.format == "text":
        _write(args, emit.to_text(header, rows) + "\n".join(summary) + "\n")
    else:
        _emit_rows(args, "lattice", header, rows, svg, extra_meta={"summary": summary})
        if args.format == "csv":
            # keep the CSV body pure; summary goes to stderr
            print("\n".join(summary), file=sys.stderr)
    return EXIT_OK


def cmd_genus(args) -> int:
    if args.max_p < 0:
        raise ConfigError("max-p must be nonnegative")
    rows = [(c.g, c.p, c.value) for c in moments.genus_table(args.max_p)]
    _emit_rows(args, "genus", ("g", "p", "value"), rows)
    return EXIT_OK


# ------------------------------------------------------------- wiring ----


def _positive_int(text: str) -> int:
    try:
        v = int(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from exc
    if v <= 0:
        raise argparse.ArgumentTypeError("must be positive")
    return v


def _positive_float(text: str) -> float:
    try:
        v = float(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from exc
    if not v > 0:
        raise argparse.ArgumentTypeError("must be positive")
    return v


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("csv", "json", "svg", "text"), default="text")
    common.add_argument("--out", help="write output to this file instead of stdout")
    common.add_argument("--tol", type=_positive_float, help="float comparison tolerance")
    common.add_argument("--budget", type=_positive_int, help="maximum matchings to enumerate")
    common.add_argument("--jobs", type=_positive_int, default=1, help="worker processes for enumeration")
    common.add_argument("--seed", type=int, default=0, help="reserved; recorded in metadata")

    parser = argparse.ArgumentParser(prog="qgue", description="Moments and densities of the discrete q-deformed GUE.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    m = sub.add_parser("moments", parents=[common], help="exact moment tables")
    m.add_argument("--kind", choices=("gue", "qgue"), default="qgue")
    m.add_argument("--N", required=True, help="matrix sizes, e.g. 4 or 1-8")
    m.add_argument("--p", required=True, help="half moment orders, e.g. 1 or 0-5")
    m.add_argument("--at-q", help="evaluate at rational q, e.g. 1/2")
    m.add_argument("--oracle", action="store_true", help="also enumerate matchings and cross-check")
    m.set_defaults(func=cmd_moments)

    v = sub.add_parser("verify", parents=[common], help="run the cross-check suites")
    v.add_argument("--suite", choices=("exact", "numeric", "all"), default="all")
    v.add_argument("--max-p", type=int, default=4)
    v.add_argument("--max-j", type=int, default=5)
    v.add_argument("--max-N", type=int, default=8)
    v.add_argument("--inject-fault", action="store_true", help=argparse.SUPPRESS)
    v.set_defaults(func=cmd_verify)

    a = sub.add_parser("asym", parents=[common], help="scaled moments against the 1/N expansion")
    a.add_argument("--p", required=True)
    a.add_argument("--lam", required=True, help="comma list; 'log2' accepted")
    a.add_argument("--N", required=True)
    a.set_defaults(func=cmd_asym)

    d = sub.add_parser("density", parents=[common], help="limiting density profile")
    d.add_argument("--lam", required=True)
    d.add_argument("--order", type=int, choices=(0, 1), default=0)
    d.add_argument("--points", type=_positive_int, default=201)
    d.set_defaults(func=cmd_density)

    lt = sub.add_parser("lattice", parents=[common], help="finite-N density on the q-lattice")
    lt.add_argument("--N", type=int, required=True)
    lt.add_argument("--q", required=True)
    lt.add_argument("--K", type=int, help="lattice depth; default extends until the tail is negligible")
    lt.add_argument("--p", default="1", help="moment orders for the summary lines")
    lt.set_defaults(func=cmd_lattice)

    g = sub.add_parser("genus", parents=[common], help="genus coefficient table")
    g.add_argument("--max-p", type=int, default=8)
    g.set_defaults(func=cmd_genus)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.tol is not None:
            with overrides(acceptance=args.tol):
                return args.func(args)
        return args.func(args)
    except (ConfigError, DomainError, UnsupportedModeError, SingularPointError) as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (BudgetExceededError, ToleranceError) as exc:
        print(f"infeasible: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (InconsistentEntryError, IntegralityError) as exc:
        print(f"inconsistency: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
