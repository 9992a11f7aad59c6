"""``ladderkit`` command line: eval, step, walk and verify.

Exit codes: 0 success, 1 verification failure, 2 usage or configuration
error, 3 mathematical degeneracy (gamma = 0, gamma pole, no convergence).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import asdict, dataclass, fields
from decimal import Decimal, InvalidOperation
from typing import Sequence

from . import __version__, lattice, recurrence
from .canonical.model import Family, ParamPoint, StepKind
from .canonical.steps import elementary_step
from .errors import (
    ConvergenceError,
    DegenerateStepError,
    DomainError,
    FamilyMismatchError,
    PoleError,
    SingularEliminationError,
)
from .verify import SUITES, VerifyConfig, run

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_DEGENERATE = 0, 1, 2, 3
T_FLOOR = 1e-6

EVAL_COLUMNS = ("t", "m_re", "m_im", "m_err", "m_terms", "canonical_re", "canonical_im")
STEP_COLUMNS = ("t", "q_re", "q_im", "out_re", "out_im", "oracle_re", "oracle_im", "rel_dev")
WALK_COLUMNS = ("t", "knot", "token", "alpha", "beta", "zeta", "q_re", "q_im",
                "oracle_re", "oracle_im", "rel_dev")
VERIFY_COLUMNS = ("suite", "check", "max_residual", "threshold", "count", "status")

_HELP_COLUMNS = f"""\
CSV columns (header row, LF line endings, floats printed with 17 significant digits):
  eval    {', '.join(EVAL_COLUMNS)}
  step    {', '.join(STEP_COLUMNS)}
  walk    {', '.join(WALK_COLUMNS)}
  verify  {', '.join(VERIFY_COLUMNS)}

Complex values take two columns (_re, _im); eval leaves the canonical
columns blank when the normalisation sits on a gamma pole.  Settings come from built-in
defaults, then --config (flat key=value lines, '#' comments), then flags.
Exit codes: 0 ok, 1 verification failure, 2 usage/config error, 3 degeneracy.
"""


class UsageError(Exception):
    pass


@dataclass(frozen=True)
class RunConfig:
    """Validated settings shared by all commands; numbers kept as given."""

    family: str = "chg"
    alpha: str = "2"
    beta: str = "1"
    zeta: str | None = None
    t_start: str = "0.1"
    t_stop: str = "0.9"
    t_count: str = "9"
    tol: str = "1e-16"
    format: str = "csv"
    seed: str = "1,0"

    @property
    def fam(self) -> Family:
        return Family(self.family)

    def point(self) -> ParamPoint:
        values = [float(getattr(self, name)) for name in self.fam.params]
        return ParamPoint(self.fam, *values)

    @property
    def tolerance(self) -> float:
        return float(self.tol)

    @property
    def C(self) -> complex:
        re, im = self.seed.split(",")
        return complex(float(re), float(im))

    def t_grid(self) -> list[float]:
        start, stop, n = float(self.t_start), float(self.t_stop), int(self.t_count)
        if n == 1:
            grid = [start]
        else:
            grid = [start + (stop - start) * i / (n - 1) for i in range(n)]
        return [T_FLOOR if t == 0 else t for t in grid]


_KEYS = {f.name for f in fields(RunConfig)}


def _decimal(name: str, text: str) -> Decimal:
    try:
        value = Decimal(text)
    except InvalidOperation:
        raise UsageError(f"{name}: {text!r} is not a decimal number") from None
    if not value.is_finite():
        raise UsageError(f"{name} must be finite")
    return value


def validate(cfg: RunConfig) -> RunConfig:
    family = cfg.family.lower()
    if family not in ("chg", "hg"):
        raise UsageError(f"family must be chg or hg, got {cfg.family!r}")
    cfg = RunConfig(**{**asdict(cfg), "family": family})
    for name in Family(family).params:
        if getattr(cfg, name) is None:
            raise UsageError(f"{family} needs --{name}")
        _decimal(name, getattr(cfg, name))
    if family == "chg" and cfg.zeta is not None:
        raise UsageError("chg takes no zeta")
    start, stop = _decimal("t-start", cfg.t_start), _decimal("t-stop", cfg.t_stop)
    try:
        count = int(cfg.t_count)
    except ValueError:
        raise UsageError(f"t-count must be an integer, got {cfg.t_count!r}") from None
    if count < 1:
        raise UsageError("t-grid is empty (t-count must be >= 1)")
    if start < 0 or (count > 1 and stop < start):
        raise UsageError("t-grid must be increasing and start at t >= 0")
    last = start if count == 1 else stop
    if family == "hg" and last >= 1:
        raise UsageError("hg needs the t-grid inside (0, 1)")
    if not _decimal("tol", cfg.tol) > 0:
        raise UsageError("tol must be positive")
    if cfg.format not in ("csv", "json"):
        raise UsageError("format must be csv or json")
    parts = cfg.seed.split(",")
    if len(parts) != 2:
        raise UsageError("seed must be 're,im'")
    for p in parts:
        _decimal("seed", p)
    return cfg


def read_config(path: str) -> dict[str, str]:
    out = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise UsageError(f"{path}:{lineno}: expected key=value")
            key, value = (s.strip() for s in line.split("=", 1))
            key = key.replace("-", "_")
            if key not in _KEYS:
                raise UsageError(f"{path}:{lineno}: unknown key {key!r}")
            out[key] = value
    return out


def build_config(args: argparse.Namespace) -> RunConfig:
    values = {}
    if args.config:
        try:
            values.update(read_config(args.config))
        except OSError as exc:
            raise UsageError(f"cannot read config: {exc}") from None
    for key in _KEYS:
        flag = getattr(args, key, None)
        if flag is not None:
            values[key] = flag
    return validate(RunConfig(**values))


# --- output -------------------------------------------------------------------

def fmt(x) -> str:
    if isinstance(x, float):
        return format(x, ".17g")
    return "" if x is None else str(x)


def emit(cfg: RunConfig, command: str, columns: Sequence[str], rows: list[dict], out) -> None:
    if cfg.format == "json":
        doc = {
            "meta": {"tool": "ladderkit", "version": __version__, "command": command,
                     "config": asdict(cfg)},
            "columns": list(columns),
            "rows": rows,
        }
        out.write(json.dumps(doc, indent=2) + "\n")
        return
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow([fmt(row[c]) for c in columns])
    out.write(buf.getvalue())


def emit_error(cfg: RunConfig | None, command: str, kind: str, message: str, out) -> None:
    if cfg is not None and cfg.format == "json":
        out.write(json.dumps({"meta": {"tool": "ladderkit", "version": __version__,
                                       "command": command},
                              "error": {"kind": kind, "message": message}}, indent=2) + "\n")
    else:
        out.write(f"error,kind,message\nerror,{kind},{json.dumps(message)}\n")


def _re_im(prefix: str, z: complex) -> dict:
    z = complex(z)
    return {f"{prefix}_re": z.real, f"{prefix}_im": z.imag}


def _rel(x: complex, ref: complex) -> float:
    return abs(x - ref) / max(1.0, abs(ref))


# --- commands -------------------------------------------------------------------

def cmd_eval(cfg: RunConfig, axis: str) -> tuple[Sequence[str], list[dict]]:
    point = cfg.point()
    try:
        mu = cfg.C * recurrence.normalization_value(StepKind.from_axis(axis, 1), point)
    except PoleError:
        mu = None  # canonical columns left blank
    rows = []
    for t in cfg.t_grid():
        m = recurrence.series(point, t, tol=cfg.tolerance)
        canon = {"canonical_re": None, "canonical_im": None} if mu is None \
            else _re_im("canonical", mu * m.value)
        rows.append({"t": t, **_re_im("m", m.value), "m_err": m.abs_error_bound,
                     "m_terms": m.terms_used, **canon})
    return EVAL_COLUMNS, rows


def cmd_step(cfg: RunConfig, kind: StepKind, lower: bool) -> tuple[Sequence[str], list[dict]]:
    point = cfg.point()
    coeffs = elementary_step(point, kind)
    src, dst = (coeffs.target, point) if lower else (point, coeffs.target)
    if lower and coeffs.degenerate:
        raise DegenerateStepError(f"gamma = 0 for {kind.token} at {point}: no lowering map")
    norm = kind.up
    mu_src = cfg.C * recurrence.normalization_value(norm, src)
    mu_dst = cfg.C * recurrence.normalization_value(norm, dst)
    rows = []
    for t in cfg.t_grid():
        q = mu_src * recurrence.series(src, t, tol=cfg.tolerance).value
        dq = mu_src * recurrence.series(src, t, deriv=1, tol=cfg.tolerance).value
        if lower:
            out = recurrence.apply_lower(coeffs, q, dq, t)
        else:
            out = recurrence.apply_raise(coeffs, q, dq, t)
        oracle = mu_dst * recurrence.series(dst, t, tol=cfg.tolerance).value
        rows.append({"t": t, **_re_im("q", q), **_re_im("out", out), **_re_im("oracle", oracle),
                     "rel_dev": _rel(out, oracle)})
    return STEP_COLUMNS, rows


def cmd_walk(cfg: RunConfig, path: Sequence[StepKind], crosscheck: bool):
    start = lattice.KnotIndex(cfg.point())
    rows = []
    for t in cfg.t_grid():
        q = cfg.C * recurrence.series(start.base, t, tol=cfg.tolerance).value
        dq = cfg.C * recurrence.series(start.base, t, deriv=1, tol=cfg.tolerance).value
        for rec in lattice.walk_trace(q, dq, start, path, t, crosscheck):
            p = rec.point
            rows.append({"t": t, "knot": rec.index, "token": rec.token,
                         "alpha": float(p.alpha), "beta": float(p.beta),
                         "zeta": None if p.zeta is None else float(p.zeta),
                         **_re_im("q", rec.q), **_re_im("oracle", rec.expected),
                         "rel_dev": rec.deviation})
    return WALK_COLUMNS, rows


def cmd_verify(suite: str, corrupt: bool) -> tuple[Sequence[str], list[dict], bool]:
    cfg = VerifyConfig(corrupt_b=1e-3 if corrupt else 0.0)
    checks = run(suite, cfg)
    rows = [{"suite": c.suite, "check": c.name, "max_residual": float(c.max_residual),
             "threshold": float(c.threshold), "count": c.count,
             "status": "pass" if c.passed else "FAIL"} for c in checks]
    return VERIFY_COLUMNS, rows, all(c.passed for c in checks)


# --- argument parsing ---------------------------------------------------------

def _common(p: argparse.ArgumentParser) -> None:
    g = p.add_argument_group("configuration")
    g.add_argument("--config", help="flat key=value file; flags override it")
    g.add_argument("--family", help="chg (Kummer) or hg (Gauss); default chg")
    g.add_argument("--alpha", help="decimal string; default 2")
    g.add_argument("--beta", help="decimal string; default 1")
    g.add_argument("--zeta", help="decimal string (hg only)")
    g.add_argument("--t-start", dest="t_start", help="first t (0 is floored to 1e-6)")
    g.add_argument("--t-stop", dest="t_stop", help="last t")
    g.add_argument("--t-count", dest="t_count", help="number of grid points (>= 1)")
    g.add_argument("--tol", help="series tolerance; default 1e-16")
    g.add_argument("--format", choices=("csv", "json"))
    g.add_argument("--seed", help="integration constant C as 're,im'; default 1,0")


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ladderkit",
        description="Canonical ladder maps on Kummer and Gauss parameter lattices.",
        epilog=_HELP_COLUMNS,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    parser.add_argument("--version", action="version", version=f"ladderkit {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    kw = dict(formatter_class=argparse.RawDescriptionHelpFormatter, epilog=_HELP_COLUMNS)

    p = sub.add_parser("eval", help="series value and canonical solution on the t-grid", **kw)
    _common(p)
    p.add_argument("--axis", default="alpha", choices=("alpha", "beta", "zeta"),
                   help="normalisation used for the canonical column")

    p = sub.add_parser("step", help="one ladder map against the oracle", **kw)
    _common(p)
    p.add_argument("--step", required=True, help="a+ a- b+ b- z+ z-")
    p.add_argument("--direction", default="raise", choices=("raise", "lower"))

    p = sub.add_parser("walk", help="walk along comma-separated step tokens", **kw)
    _common(p)
    p.add_argument("--path", default="", help='e.g. "a+,b+,a-"; empty echoes the seed')
    p.add_argument("--propagate", action="store_true",
                   help="propagate derivatives instead of refreshing them from the series")

    p = sub.add_parser("verify", help="run verification suites", **kw)
    _common(p)
    p.add_argument("--suite", default="all", choices=SUITES + ("all",))
    p.add_argument("--corrupt-coeffs", action="store_true", help=argparse.SUPPRESS)
    return parser


def main(argv: Sequence[str] | None = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = make_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    cfg = None
    try:
        cfg = build_config(args)
        if args.command == "eval":
            columns, rows = cmd_eval(cfg, args.axis)
        elif args.command == "step":
            columns, rows = cmd_step(cfg, StepKind.from_token(args.step),
                                     args.direction == "lower")
        elif args.command == "walk":
            columns, rows = cmd_walk(cfg, lattice.parse_path(args.path), not args.propagate)
        else:
            columns, rows, ok = cmd_verify(args.suite, args.corrupt_coeffs)
            emit(cfg, "verify", columns, rows, out)
            return EXIT_OK if ok else EXIT_FAIL
    except (DegenerateStepError, SingularEliminationError, ConvergenceError, PoleError) as exc:
        return _degenerate(cfg, args.command, exc, out, err)
    except (UsageError, FamilyMismatchError, DomainError, ValueError) as exc:
        err.write(f"ladderkit: error: {exc}\n")
        return EXIT_USAGE
    emit(cfg, args.command, columns, rows, out)
    return EXIT_OK


def _degenerate(cfg, command: str, exc: Exception, out, err) -> int:
    emit_error(cfg, command, type(exc).__name__, str(exc), out)
    err.write(f"ladderkit: degenerate: {exc}\n")
    return EXIT_DEGENERATE


def main_entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    main_entry()
