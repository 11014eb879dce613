"""Command-line front end.

    fraclap profile   --alpha 0.9 --methods full_quadrature,ring
    fraclap compare   --alpha 0.8889 --methods full_quadrature,ring
    fraclap asymptote --alpha 0.995 --rmin 10 --rmax 300
    fraclap selftest

Exit status: 0 success, 1 self-test failure, 2 evaluation error, 64 bad usage.
"""

from __future__ import annotations

import argparse
import contextlib
import csv
import enum
import io
import json
import math
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

from . import model
from .dequad import QuadratureConfig
from .errors import FraclapError, UsageError
from .model import Method, ModelParams

EXIT_OK = 0
EXIT_SELFTEST = 1
EXIT_EVAL = 2
EXIT_USAGE = 64


class Command(str, enum.Enum):
    PROFILE = "profile"
    COMPARE = "compare"
    ASYMPTOTE = "asymptote"
    SELFTEST = "selftest"


class OutputFormat(str, enum.Enum):
    CSV = "csv"
    JSON = "json"


_DEFAULT_METHODS = {
    Command.PROFILE: ("full_quadrature",),
    Command.COMPARE: ("full_quadrature", "integer_closed"),
    Command.ASYMPTOTE: ("point_asymptotic", "tail_asymptotic"),
    Command.SELFTEST: (),
}


@dataclass(frozen=True)
class RunConfig:
    command: Command
    params: ModelParams = field(default_factory=ModelParams)
    r_min: float = 0.05
    r_max: float = 20.0
    points: int = 200
    methods: tuple = ()
    tol: float | None = None
    format: OutputFormat = OutputFormat.CSV
    output: str | None = None

    def __post_init__(self):
        if not (0 < self.r_min < self.r_max and math.isfinite(self.r_max)):
            raise UsageError(f"need 0 < rmin < rmax, got {self.r_min}, {self.r_max}")
        if self.points < 2:
            raise UsageError(f"need at least 2 points, got {self.points}")
        if self.tol is not None and not self.tol > 0:
            raise UsageError(f"tol must be positive, got {self.tol}")
        if self.command in (Command.PROFILE, Command.COMPARE) and not self.methods:
            raise UsageError("at least one method is required")
        if self.command is Command.COMPARE and len(self.methods) != 2:
            raise UsageError(f"compare takes exactly two methods, got {len(self.methods)}")

    @property
    def quad_cfg(self):
        if self.tol is None:
            return model.DEFAULT_CFG
        return QuadratureConfig(abs_tol=self.tol, rel_tol=max(self.tol, 1e-14))

    def as_dict(self) -> dict:
        return {
            "command": self.command.value,
            "params": self.params.as_dict(),
            "r_min": self.r_min,
            "r_max": self.r_max,
            "points": self.points,
            "methods": [m.value for m in self.methods],
            "tol": self.tol,
            "format": self.format.value,
        }


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="fraclap", description="Radial profiles of the fractional "
                "reaction-diffusion steady state.")
    p.add_argument("command", choices=[c.value for c in Command])
    p.add_argument("--alpha", type=float, default=1.0)
    p.add_argument("--sigma", type=float, default=1.0)
    p.add_argument("--q", type=float, default=1.0)
    p.add_argument("--L", type=float, default=1.0)
    p.add_argument("--D", type=float, default=1.0)
    p.add_argument("--rmin", type=float, default=None, help="default 0.05 L")
    p.add_argument("--rmax", type=float, default=None, help="default 20 L")
    p.add_argument("--points", type=int, default=200)
    p.add_argument("--methods", default=None,
                   help="comma-separated: " + ",".join(m.value for m in Method))
    p.add_argument("--tol", type=float, default=None)
    p.add_argument("--format", choices=[f.value for f in OutputFormat], default="csv")
    p.add_argument("--output", default=None, help="file path; standard output if omitted")
    return p


def parse_config(argv) -> RunConfig:
    ns = build_parser().parse_args(argv)
    command = Command(ns.command)
    try:
        params = ModelParams(sigma=ns.sigma, q=ns.q, D=ns.D, L=ns.L, alpha=ns.alpha)
    except FraclapError as exc:
        raise UsageError(str(exc)) from None
    names = ns.methods.split(",") if ns.methods else _DEFAULT_METHODS[command]
    try:
        methods = tuple(Method(n.strip()) for n in names if n.strip())
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    r_min = ns.rmin if ns.rmin is not None else 0.05 * params.L
    r_max = ns.rmax if ns.rmax is not None else 20.0 * params.L
    return RunConfig(command, params, r_min, r_max, ns.points, methods, ns.tol,
                     OutputFormat(ns.format), ns.output)


class _EvalFailure(Exception):
    pass


def _column(cfg: RunConfig, method: Method, radii) -> list:
    """(value, err) per radius; failures name the radius and method."""
    ring_sigma = None
    if method is Method.RING:
        try:
            ring_sigma = model.calibrate_ring(cfg.params, cfg=cfg.quad_cfg)
        except FraclapError as exc:
            raise _EvalFailure(f"method {method.value}: calibration failed: {exc}") from exc

    def one(r):
        try:
            return model.evaluate(method, cfg.params, r, ring_sigma=ring_sigma,
                                  cfg=cfg.quad_cfg)
        except FraclapError as exc:
            raise _EvalFailure(f"method {method.value} at r={r!r}: "
                               f"{type(exc).__name__}: {exc}") from exc

    workers = min(model.thread_count(), len(radii))
    if workers <= 1:
        return [one(r) for r in radii]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(one, radii))


def _fmt(v) -> str:
    return "" if v is None else f"{v:.17g}"


def _emit(cfg: RunConfig, columns, rows, out):
    if cfg.format is OutputFormat.JSON:
        json.dump({"config": cfg.as_dict(), "columns": columns, "rows": rows}, out,
                  separators=(",", ":"))
        out.write("\n")
        return
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow([_fmt(v) for v in row])


def cmd_profile(cfg: RunConfig, out) -> int:
    radii = model.log_grid(cfg.r_min, cfg.r_max, cfg.points)
    columns = ["r"]
    data = []
    for m in cfg.methods:
        col = _column(cfg, m, radii)
        columns.append(m.value)
        data.append([c for c, _ in col])
        if m.has_error:
            columns.append(f"err_{m.value}")
            data.append([e for _, e in col])
    rows = [[r] + [d[i] for d in data] for i, r in enumerate(radii)]
    _emit(cfg, columns, rows, out)
    return EXIT_OK


def _rel(a, b):
    scale = max(abs(a), abs(b))
    return 0.0 if scale == 0.0 else abs(a - b) / scale


def cmd_compare(cfg: RunConfig, out, err=None) -> int:
    radii = model.log_grid(cfg.r_min, cfg.r_max, cfg.points)
    err = err or sys.stderr
    m_a, m_b = cfg.methods
    col_a = _column(cfg, m_a, radii)
    col_b = col_a if m_b is m_a else _column(cfg, m_b, radii)
    rows = []
    for r, (va, _), (vb, _) in zip(radii, col_a, col_b):
        rows.append([r, va, vb, abs(va - vb), _rel(va, vb)])
    _emit(cfg, ["r", "value_a", "value_b", "abs_diff", "rel_diff"], rows, out)
    worst = max(rows, key=lambda row: row[3])
    err.write(f"{m_a.value} vs {m_b.value}: max abs_diff {worst[3]:.3e} at r={worst[0]:.6g}\n")
    return EXIT_OK


def cmd_asymptote(cfg: RunConfig, out, err=None) -> int:
    """Point solution against the algebraic tail, with their ratio."""
    err = err or sys.stderr
    radii = model.log_grid(cfg.r_min, cfg.r_max, cfg.points)
    point = _column(cfg, Method.POINT_ASYMPTOTIC, radii)
    tail = _column(cfg, Method.TAIL_ASYMPTOTIC, radii)
    rows = []
    for r, (vp, ep), (vt, _) in zip(radii, point, tail):
        ratio = vp / vt if vt != 0.0 else None
        rows.append([r, vp, ep, vt, ratio])
    _emit(cfg, ["r", "point_asymptotic", "err_point_asymptotic", "tail_asymptotic",
                "ratio"], rows, out)
    crossover = None
    for i, row in enumerate(rows):
        if all(x[4] is not None and abs(x[4] - 1.0) <= 0.1 for x in rows[i:]):
            crossover = row[0]
            break
    if crossover is None:
        err.write("tail within 10% nowhere on the grid\n")
    else:
        err.write(f"tail within 10% for r >= {crossover:.6g}\n")
    return EXIT_OK


def cmd_selftest(tol: float | None, out) -> int:
    from .selftest import run_checks

    failed = 0
    for check in run_checks(tol):
        failed += not check.passed
        out.write(f"{'PASS' if check.passed else 'FAIL'} {check.name}: "
                  f"error {check.error:.3e} (tol {check.tol:.1e})\n")
    out.write(f"{'all checks passed' if not failed else f'{failed} check(s) failed'}\n")
    return EXIT_OK if not failed else EXIT_SELFTEST


@contextlib.contextmanager
def _sink(path):
    if path is None:
        yield sys.stdout
    else:
        with open(path, "w", newline="", encoding="utf-8") as fh:
            yield fh


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    try:
        cfg = parse_config(argv)
    except UsageError as exc:
        sys.stderr.write(f"fraclap: {exc}\n")
        return EXIT_USAGE
    # buffered so a failed run leaves no partial table behind
    buf = io.StringIO()
    try:
        if cfg.command is Command.SELFTEST:
            status = cmd_selftest(cfg.tol, buf)
        elif cfg.command is Command.PROFILE:
            status = cmd_profile(cfg, buf)
        elif cfg.command is Command.COMPARE:
            status = cmd_compare(cfg, buf)
        else:
            status = cmd_asymptote(cfg, buf)
    except _EvalFailure as exc:
        sys.stderr.write(f"fraclap: {exc}\n")
        return EXIT_EVAL
    try:
        with _sink(cfg.output) as out:
            out.write(buf.getvalue())
    except OSError as exc:
        sys.stderr.write(f"fraclap: cannot write output: {exc}\n")
        return EXIT_USAGE
    return status


if __name__ == "__main__":
    sys.exit(main())
