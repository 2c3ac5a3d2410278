"""``qcalc`` command line: derive, basis, taylor, verify, algebra.

Exit codes: 0 pass, 1 verification failure, 2 usage error, 3 domain error,
4 degree error.
"""
from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import dataclass, field
from typing import Optional

from . import __version__
from .algebra import (
    OperatorTower,
    build_difference_instance,
    kernel_gradation,
    right_inverse,
    initial_from_right,
    taylor_identity_residual,
)
from .basis import ConstantBasis, basis_rows
from .config import RunConfig, frame_from_dict
from .derivative import default_samples, make_preset, qderiv_all
from .errors import DegreeExceeded, DomainError, ParseError, QCalcError
from .expr import parse_polynomial
from .matrix import LinOp
from .scalars import format_scalar, is_zero, to_scalar
from .suites import SUITES, SuiteOptions, run_suite
from .taylor import taylor_expand, taylor_reconstruct

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_DOMAIN, EXIT_DEGREE = 0, 1, 2, 3, 4

STANDARD_PRESETS = ({"kind": "h", "h": "1"}, {"kind": "q", "q": "2"},
                    {"kind": "h_symmetric", "h": "1"}, {"kind": "q_symmetric", "q": "2"})


@dataclass
class Report:
    command: str
    checks: list = field(default_factory=list)   # (name, passed, detail)
    rows: list = field(default_factory=list)     # tabular payload
    header: tuple = ()
    data: dict = field(default_factory=dict)     # extra JSON payload
    elapsed: float = 0.0                         # never serialised

    @property
    def ok(self) -> bool:
        return all(passed for _, passed, _ in self.checks)

    def to_json(self) -> str:
        out = {"command": self.command, "ok": self.ok,
               "checks": [{"name": n, "status": "pass" if p else "fail", "detail": d}
                          for n, p, d in self.checks]}
        if self.rows:
            out["rows"] = [dict(zip(self.header, map(str, r))) for r in self.rows]
        out.update(self.data)
        return json.dumps(out, indent=2, sort_keys=True) + "\n"

    def to_tsv(self) -> str:
        lines = []
        if self.header:
            lines.append("\t".join(self.header))
        lines += ["\t".join(str(c) for c in r) for r in self.rows]
        if self.checks:
            if lines:
                lines.append("")
            lines += [f"{n}\t{'pass' if p else 'fail'}\t{d}" for n, p, d in self.checks]
        return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# argument handling

def _add_globals(p: argparse.ArgumentParser, suppress: bool) -> None:
    d = argparse.SUPPRESS if suppress else None
    p.add_argument("--config", default=d, help="JSON run configuration")
    p.add_argument("--out", default=d, help="write the report here instead of stdout")
    p.add_argument("--format", choices=("tsv", "json"), default=d)


def _add_frame(p: argparse.ArgumentParser) -> None:
    g = p.add_argument_group("frame")
    g.add_argument("--kind", choices=("h", "q", "h_symmetric", "q_symmetric", "affine"))
    g.add_argument("--h")
    g.add_argument("--q")
    g.add_argument("--h-prime", dest="h_prime")
    g.add_argument("--q-prime", dest="q_prime")
    g.add_argument("--base", help="base point q_s")
    g.add_argument("--exclude", action="append", help="remove a point from the domain")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qcalc", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    _add_globals(parser, suppress=False)
    sub = parser.add_subparsers(dest="command")

    p = sub.add_parser("derive", help="evaluate D^k f at points")
    _add_globals(p, True), _add_frame(p)
    p.add_argument("--fn")
    p.add_argument("--at", action="append", dest="points")
    p.add_argument("--order", type=int)

    p = sub.add_parser("basis", help="dump theta/zeta/lambda basis values")
    _add_globals(p, True), _add_frame(p)
    p.add_argument("--family", choices=("theta", "zeta", "lambda"))
    p.add_argument("--max-order", type=int, dest="max_order")
    p.add_argument("--at", action="append", dest="points")

    p = sub.add_parser("taylor", help="expand a D-polynomial and check the reconstruction")
    _add_globals(p, True), _add_frame(p)
    p.add_argument("--fn")
    p.add_argument("--degree", "--n", type=int, dest="degree")
    p.add_argument("--samples", type=int)

    p = sub.add_parser("verify", help="run a property suite")
    _add_globals(p, True), _add_frame(p)
    p.add_argument("--suite", choices=SUITES + ("all",))
    p.add_argument("--max-order", type=int, dest="max_order")
    p.add_argument("--instance", choices=("forward", "stride"))
    p.add_argument("--n", type=int)
    p.add_argument("--m", type=int)
    p.add_argument("--stride", type=int)
    p.add_argument("--samples", type=int)
    p.add_argument("--cases", type=int)
    p.add_argument("--seed", type=int)

    p = sub.add_parser("algebra", help="inspect a difference instance")
    _add_globals(p, True)
    p.add_argument("--instance", choices=("forward", "stride"))
    p.add_argument("--n", type=int)
    p.add_argument("--stride", type=int)
    p.add_argument("--m", type=int)
    p.add_argument("--matrix", help="read D from a text matrix file instead")
    p.add_argument("--show", choices=("matrix", "right-inverse", "initial", "gradation",
                                      "taylor-residual"))
    return parser


def _merge(args: argparse.Namespace) -> RunConfig:
    cfg = RunConfig()
    path = getattr(args, "config", None)
    if path:
        try:
            with open(path) as fh:
                cfg = RunConfig.from_json(fh.read())
        except OSError as exc:
            raise ParseError(f"cannot read config {path}: {exc}") from None
    for name in ("command", "fn", "points", "order", "max_order", "degree", "family", "suite",
                 "instance", "n", "m", "stride", "samples", "cases", "seed", "show",
                 "matrix", "out", "format"):
        value = getattr(args, name, None)
        if value is not None:
            setattr(cfg, name, value)
    frame = dict(cfg.frame)
    if getattr(args, "kind", None):
        frame = {"kind": args.kind}
    for key, attr in (("h", "h"), ("q", "q"), ("h'", "h_prime"), ("q'", "q_prime")):
        if getattr(args, attr, None) is not None:
            frame[key] = getattr(args, attr)
    if getattr(args, "exclude", None):
        frame["exclude"] = list(frame.get("exclude", [])) + args.exclude
    if getattr(args, "base", None) is not None:
        frame["base_points"] = [["1", args.base]]
    cfg.frame = frame
    return cfg


def _frame(cfg: RunConfig):
    if not cfg.frame:
        raise ParseError("no frame given: use --kind/--q/--h or a config file")
    return frame_from_dict(cfg.frame)


# ---------------------------------------------------------------------------
# commands

def run_derive(cfg: RunConfig) -> Report:
    frame = _frame(cfg)
    if not cfg.fn or not cfg.points:
        raise ParseError("derive needs --fn and at least one --at")
    f = parse_polynomial(cfg.fn)
    k = 1 if cfg.order is None else cfg.order
    report = Report("derive", header=("point", "order", "value"))
    for text in cfg.points:
        p = to_scalar(text)
        value = qderiv_all(frame, f, k, p)[-1]
        report.rows.append((format_scalar(p), k, format_scalar(value)))
    return report


def run_basis(cfg: RunConfig) -> Report:
    frame = _frame(cfg)
    basis = ConstantBasis.for_frame(frame)
    family = cfg.family or "lambda"
    max_order = 4 if cfg.max_order is None else cfg.max_order
    points = cfg.points or [format_scalar(basis.point(basis.labels[0]))]
    report = Report("basis", header=("family", "order", "node_points", "value_at_p"))
    for text in points:
        report.rows += basis_rows(frame, basis, family, max_order, to_scalar(text))
    return report


def run_taylor(cfg: RunConfig) -> Report:
    frame = _frame(cfg)
    if not cfg.fn:
        raise ParseError("taylor needs --fn")
    W = parse_polynomial(cfg.fn)
    n = max(W.degree, 0) if cfg.degree is None else cfg.degree
    basis = ConstantBasis.for_frame(frame)
    exp = taylor_expand(frame, basis, W, n)
    report = Report("taylor", header=("k", "s", "lambda", "lambda_normalized"))
    report.rows = [(k, s, format_scalar(a), format_scalar(b)) for k, s, a, b in exp.rows()]
    nodes = default_samples(frame, cfg.samples or 12)
    residuals = []
    for x in nodes:
        r = taylor_reconstruct(exp, basis, x) - W(x)
        residuals.append({"node": format_scalar(x), "residual": format_scalar(r)})
        report.checks.append((f"residual@{format_scalar(x)}", is_zero(r), format_scalar(r)))
    report.data["residuals"] = residuals
    return report


def run_verify(cfg: RunConfig) -> Report:
    suite = cfg.suite or "all"
    opts = SuiteOptions()
    for name in ("max_order", "instance", "n", "m", "stride", "samples", "cases", "seed"):
        value = getattr(cfg, name)
        if value is not None:
            setattr(opts, name, value)
    names = SUITES if suite == "all" else (suite,)
    frames = [frame_from_dict(cfg.frame)] if cfg.frame else [
        make_preset(**{k: (v if k == "kind" else to_scalar(v)) for k, v in spec.items()})
        for spec in STANDARD_PRESETS]
    report = Report(f"verify {suite}")
    for name in names:
        if name == "algebra":
            for c in run_suite(name, None, opts):
                report.checks.append((f"algebra/{c.name}", c.passed, c.detail))
            continue
        for frame in frames:
            for c in run_suite(name, frame, opts):
                report.checks.append((f"{name}/{frame.name}/{c.name}", c.passed, c.detail))
    report.checks.sort(key=lambda c: c[0])
    return report


def run_algebra(cfg: RunConfig) -> Report:
    if cfg.matrix:
        with open(cfg.matrix) as fh:
            D = LinOp.from_text(fh.read())
    else:
        instance = cfg.instance or "forward"
        k = 1 if instance == "forward" else (cfg.stride or 2)
        D = build_difference_instance(instance, cfg.n or 4, k)
    show = cfg.show or "matrix"
    report = Report(f"algebra {show}")
    if show == "matrix":
        M = D
    elif show == "right-inverse":
        M = right_inverse(D)
    elif show == "initial":
        M = initial_from_right(D, right_inverse(D))
    elif show == "taylor-residual":
        M = taylor_identity_residual(OperatorTower(D), 3 if cfg.m is None else cfg.m)
        report.checks.append(("taylor_identity", M.is_zero(), ""))
    else:
        grad = kernel_gradation(D, cfg.m or 3)
        report.header = ("m", "dim_ker")
        report.rows = [(m + 1, d) for m, d in enumerate(grad.dims)]
        return report
    report.data["matrix"] = [[str(a) for a in r] for r in M.entries]
    report.data["text"] = M.to_text()
    return report


COMMANDS = {"derive": run_derive, "basis": run_basis, "taylor": run_taylor,
            "verify": run_verify, "algebra": run_algebra}


def _render(report: Report, fmt: str) -> str:
    if fmt == "json":
        return report.to_json()
    if report.command == "derive":
        return "".join(f"{r[2]}\n" for r in report.rows)
    if "text" in report.data:
        text = report.data["text"]
        return text + (report.to_tsv() if report.checks else "")
    return report.to_tsv()


def main(argv: Optional[list] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # --help, --version or a usage error
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    if not args.command:
        parser.print_help(sys.stderr)
        return EXIT_USAGE
    start = time.perf_counter()
    try:
        cfg = _merge(args)
        report = COMMANDS[args.command](cfg)
    except DegreeExceeded as exc:
        print(f"qcalc: {exc}", file=sys.stderr)
        return EXIT_DEGREE
    except DomainError as exc:
        print(f"qcalc: domain error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except (QCalcError, ValueError, OSError) as exc:
        print(f"qcalc: {exc}", file=sys.stderr)
        return EXIT_USAGE
    report.elapsed = time.perf_counter() - start
    text = _render(report, cfg.format or "tsv")
    if cfg.out:
        with open(cfg.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK if report.ok else EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
