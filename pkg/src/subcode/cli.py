"""Command-line front end.

Subcommands: construct, table1, verify, cells, lift, pluecker.
Exit codes: 0 success, 1 usage, 2 verification failure, 3 budget exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

from . import __version__
from .algebra import MatrixGF, field
from .codebuild import (
    DEFAULT_PAIR_BUDGET,
    METRICS,
    TABLE1,
    SubspaceCode,
    build_code,
    min_pairwise_distance,
    rate_lower_bound,
    table1_bound,
    verify_min_distance,
)
from .errors import BudgetExceeded, SubcodeError
from .lifting import generalized_lift
from .pluecker import Subspace, check_quadratic_relations, pluecker_coordinates
from .schubert import ProfileVector, asterisk_pattern, cell_dimension, enumerate_cells

EXIT_OK, EXIT_USAGE, EXIT_VERIFY, EXIT_BUDGET = 0, 1, 2, 3
# reserved; every algorithm here is deterministic
SEED_ENV = "SUBCODE_SEED"


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


@dataclass
class RunConfig:
    subcommand: str
    n: int | None = None
    q: int = 2
    metric: str = "subspace"
    target_distance: int | None = None
    rule_variant: str = "strict"
    output_format: str = "table"
    output_path: Path | None = None
    budget: int = DEFAULT_PAIR_BUDGET

    def validate(self):
        try:
            field(self.q)
        except ValueError as e:
            raise UsageError(f"--q: {e}") from None
        if self.n is not None and not 1 <= self.n <= 16:
            raise UsageError("--n must be between 1 and 16")
        if self.target_distance is not None and self.target_distance < 1:
            raise UsageError("--dmin must be >= 1")
        if self.metric not in METRICS:
            raise UsageError(f"unknown metric {self.metric}")


def _emit(text: str, out: Path | None):
    if out is None:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")
    else:
        Path(out).write_text(text if text.endswith("\n") else text + "\n")


def _table(rows: list[dict]) -> str:
    if not rows:
        return ""
    keys = list(rows[0])
    widths = {k: max(len(k), *(len(str(r[k])) for r in rows)) for k in keys}
    lines = ["  ".join(k.ljust(widths[k]) for k in keys)]
    lines += ["  ".join(str(r[k]).ljust(widths[k]) for k in keys) for r in rows]
    return "\n".join(line.rstrip() for line in lines)


def _csv(rows: list[dict]) -> str:
    import csv
    import io

    buf = io.StringIO()
    if rows:
        w = csv.DictWriter(buf, fieldnames=list(rows[0]), lineterminator="\n")
        w.writeheader()
        w.writerows(rows)
    return buf.getvalue()


def _format(rows: list[dict], fmt: str) -> str:
    if fmt == "json":
        return json.dumps(rows, indent=2)
    if fmt == "csv":
        return _csv(rows)
    return _table(rows)


def parse_matrix(text: str, q: int) -> MatrixGF:
    """Rows split by ';' or newlines, entries by ',' or whitespace.

    ``text`` may also name a file holding such a matrix.
    """
    p = Path(text)
    if "\n" not in text and p.is_file():
        text = p.read_text()
    rows = []
    for chunk in text.replace(";", "\n").splitlines():
        chunk = chunk.strip()
        if chunk:
            rows.append([int(x) for x in chunk.replace(",", " ").split()])
    if not rows:
        raise UsageError("empty matrix")
    return MatrixGF(field(q), rows)


def cmd_construct(cfg: RunConfig, verify: bool = False, report_path: Path | None = None, rounding: str = "ceil") -> int:
    code, report = build_code(cfg.n, cfg.q, cfg.metric, cfg.target_distance, cfg.rule_variant, rounding)
    if cfg.output_path is not None:
        Path(cfg.output_path).write_text(json.dumps(code.to_json(), indent=1) + "\n")
    if report_path is not None:
        Path(report_path).write_text(report.to_csv())
    selected = [r for r in report.rows() if r["status"] == "selected"]
    print(_format(selected, cfg.output_format))
    for note in report.notes:
        print(f"note: {note}", file=sys.stderr)
    lb = rate_lower_bound(report)
    print(f"cells={len(code.cells)} codewords={len(code)} rate_lb={lb:.4f} log_q_size={code.log_size():.4f}")
    if verify:
        try:
            ok, witness = verify_min_distance(code, cfg.budget)
            dmin, _ = min_pairwise_distance(code.subspaces(), cfg.metric, cfg.budget)
        except BudgetExceeded as e:
            print(f"budget exceeded: {e}", file=sys.stderr)
            return EXIT_BUDGET
        if not ok:
            U, V, d = witness
            print(f"verification FAILED: {U!r} and {V!r} at {cfg.metric} distance {d} < {cfg.target_distance}")
            return EXIT_VERIFY
        shown = "n/a (single codeword)" if dmin is None else dmin
        print(f"verified: minimum {cfg.metric} distance {shown} >= {cfg.target_distance}")
    return EXIT_OK


def table1_rows() -> list[dict]:
    rows = []
    for r in TABLE1:
        ds = table1_bound(r.n, r.q, "subspace", r.d_subspace)
        ds_ill = table1_bound(r.n, r.q, "subspace", r.d_subspace, "paper-illustration")
        di = table1_bound(r.n, r.q, "injection", r.d_injection)
        di_dm = table1_bound(r.n, r.q, "injection", r.d_injection, "dm")
        rows.append(
            {
                "q": r.q,
                "d_I": r.d_injection,
                "d_s": r.d_subspace,
                "N": r.n,
                "LB_ds": f"{ds:.4f}",
                "ref_LB_ds": f"{r.lb_subspace:.4f}",
                "delta_ds": f"{round(ds, 4) - r.lb_subspace:+.4f}",
                "LB_ds_illustration": f"{ds_ill:.4f}",
                "LB_dI": f"{di:.4f}",
                "ref_LB_dI": f"{r.lb_injection:.4f}",
                "delta_dI": f"{round(di, 4) - r.lb_injection:+.4f}",
                "LB_dI_dm": f"{di_dm:.4f}",
            }
        )
    return rows


def cmd_table1(cfg: RunConfig) -> int:
    rows = table1_rows()
    fmt = cfg.output_format if cfg.output_format != "table" else "csv"
    _emit(_format(rows, fmt), cfg.output_path)
    bad = [r for r in rows if abs(float(r["delta_ds"])) > 1e-4 or abs(float(r["delta_dI"])) > 1e-4]
    for r in bad:
        print(f"mismatch at q={r['q']} N={r['N']}", file=sys.stderr)
    return EXIT_VERIFY if bad else EXIT_OK


def implied_target(code_metric: str, target: int, metric: str) -> int:
    """Distance guaranteed under ``metric`` by a code built for ``code_metric``.

    Uses d_I = (d_s + |dim U - dim V|) / 2, so d_I >= ceil(d_s / 2) and d_s >= d_I.
    """
    if metric == code_metric:
        return target
    if metric == "injection":
        return -(-target // 2)
    return target


def cmd_verify(cfg: RunConfig, code_path: Path) -> int:
    code = SubspaceCode.from_json(json.loads(Path(code_path).read_text()))
    metric = cfg.metric or code.metric
    try:
        dmin, where = min_pairwise_distance(code.subspaces(), metric, cfg.budget)
    except BudgetExceeded as e:
        print(f"budget exceeded: {e}", file=sys.stderr)
        return EXIT_BUDGET
    target = implied_target(code.metric, code.target_distance, metric)
    print(f"codewords={len(code)} metric={metric} min_distance={dmin if dmin is not None else 'n/a'} target={target}")
    if dmin is not None and dmin < target:
        print(f"FAIL: pair {where} below target")
        return EXIT_VERIFY
    print("PASS")
    return EXIT_OK


def cmd_cells(cfg: RunConfig) -> int:
    rows = [
        {
            "tuple": "(" + ",".join(map(str, t.one_based)) + ")",
            "d": t.d,
            "dimension": cell_dimension(t),
            "asterisks": asterisk_pattern(t).size,
        }
        for t in enumerate_cells(cfg.n)
    ]
    _emit(_format(rows, cfg.output_format), cfg.output_path)
    return EXIT_OK


def cmd_lift(cfg: RunConfig, v: str, x: str) -> int:
    pv = ProfileVector.from_string(v)
    X = parse_matrix(x, cfg.q)
    S = generalized_lift(X, pv)
    P = pluecker_coordinates(S)
    pivots = list(S.pivots)
    if cfg.output_format == "json":
        out = {"basis": S.basis.tolist(), "pivot_tuple": pivots, "value": P[tuple(pivots)]}
        _emit(json.dumps(out), cfg.output_path)
    else:
        lines = [" ".join(map(str, r)) for r in S.basis.data]
        lines.append(f"D{tuple(pivots)} = {P[tuple(pivots)]}")
        _emit("\n".join(lines), cfg.output_path)
    return EXIT_OK


def cmd_pluecker(cfg: RunConfig, matrix_text: str, check: bool = False) -> int:
    S = Subspace(parse_matrix(matrix_text, cfg.q))
    P = pluecker_coordinates(S)
    _emit(json.dumps(P.to_json()), cfg.output_path)
    if check and not check_quadratic_relations(P):
        print("quadratic relations FAILED", file=sys.stderr)
        return EXIT_VERIFY
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="subcode", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"subcode {__version__}")
    sub = parser.add_subparsers(dest="subcommand", required=True, parser_class=_Parser)

    def common(p, metric=True):
        p.add_argument("--q", type=int, default=2, help="field order (prime power <= 256)")
        p.add_argument("--format", choices=["json", "csv", "table"], default="table")
        p.add_argument("--out", type=Path, help="output path (default stdout)")
        if metric:
            p.add_argument("--metric", choices=METRICS, default="subspace")
        p.add_argument("--budget", type=int, default=DEFAULT_PAIR_BUDGET, help="max subspaces for pairwise checks")

    p = sub.add_parser("construct", help="build and report a subspace code")
    p.add_argument("--n", type=int, required=True, help="ambient vector dimension")
    p.add_argument("--dmin", type=int, required=True, help="target minimum distance")
    p.add_argument("--rule", choices=["strict", "paper-illustration", "dm"], default="strict")
    p.add_argument("--report", type=Path, help="write the selection report CSV here")
    p.add_argument("--verify", action="store_true", help="brute-force the minimum distance")
    p.add_argument("--floor-delta", action="store_true", help="use floor(dmin/2) as the in-cell rank")
    common(p)

    p = sub.add_parser(
        "table1",
        help="reproduce the reference rate lower bounds",
        description="N in the reference table is taken as the ambient vector dimension n.",
    )
    common(p, metric=False)

    p = sub.add_parser("verify", help="minimum pairwise distance of a code dump")
    p.add_argument("--code", type=Path, required=True)
    common(p)
    p.set_defaults(metric=None)

    p = sub.add_parser("cells", help="list Schubert cells of GF(q)^n")
    p.add_argument("--n", type=int, required=True)
    common(p, metric=False)

    p = sub.add_parser("lift", help="generalized lifting of a matrix by a profile vector")
    p.add_argument("--v", required=True, help="profile vector as a bit string, e.g. 110101")
    p.add_argument("--x", required=True, help="matrix as '1,1;1,1;0,1' or a CSV file path")
    common(p, metric=False)

    p = sub.add_parser("pluecker", help="normalized Pluecker coordinates of a row space")
    p.add_argument("--matrix", required=True, help="matrix as '1,0,1;0,1,1' or a CSV file path")
    p.add_argument("--check", action="store_true", help="also check the quadratic relations")
    common(p, metric=False)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    cfg = RunConfig(
        subcommand=args.subcommand,
        n=getattr(args, "n", None),
        q=args.q,
        metric=getattr(args, "metric", "subspace") or "subspace",
        target_distance=getattr(args, "dmin", None),
        rule_variant=getattr(args, "rule", "strict"),
        output_format=args.format,
        output_path=args.out,
        budget=args.budget,
    )
    try:
        cfg.validate()
        if args.subcommand == "construct":
            return cmd_construct(cfg, args.verify, args.report, "floor" if args.floor_delta else "ceil")
        if args.subcommand == "table1":
            return cmd_table1(cfg)
        if args.subcommand == "verify":
            cfg.metric = args.metric
            return cmd_verify(cfg, args.code)
        if args.subcommand == "cells":
            return cmd_cells(cfg)
        if args.subcommand == "lift":
            return cmd_lift(cfg, args.v, args.x)
        if args.subcommand == "pluecker":
            return cmd_pluecker(cfg, args.matrix, args.check)
    except BudgetExceeded as e:
        print(f"budget exceeded: {e}", file=sys.stderr)
        return EXIT_BUDGET
    except (UsageError, SubcodeError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
