"""Command-line front end.

    bezout verify [--config PATH] [--checks ...] [--dims ...] [--trials N]
    bezout bounds N M R
    bezout construct N ALPHA [ALPHA ...] [--t T]
    bezout mv BODY.json [BODY.json ...] [--mult I ...] [--oracle]
    bezout md MATRIX.json [MATRIX.json ...] [--mult I ...] [--oracle]

Exit codes: 0 success, 1 unexpected inequality failure, 2 bad input,
3 numerical inconsistency.
"""
from __future__ import annotations

import argparse
import csv
import json
import math
import sys
from pathlib import Path
from typing import Sequence

from .campaign import (
    CHECKS,
    EXIT_CONFIG,
    EXIT_FAILURE,
    EXIT_NUMERICAL,
    EXIT_OK,
    CampaignConfig,
    ConfigError,
    run_campaign,
)
from .constants import bound_table
from .constructions import build_cor_body, sum_bezout_construction, verify_cor_ratio
from .discriminant import matrix_from_json, mixed_discriminant, mixed_discriminant_interp
from .discriminant import MAX_DIM as MD_MAX_DIM
from .inequalities import check_sum_bezout
from .mixed_volume import MAX_DIM as MV_MAX_DIM
from .mixed_volume import NumericalConsistencyError, mixed_volume, mixed_volume_interp
from .polytope import polytope_from_json
from .report import serialize

__all__ = ["main", "build_parser"]

ORACLE_RTOL = {"mv": 1e-7, "md": 1e-8}


def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--config", type=Path, help="JSON file mirroring CampaignConfig")
    p.add_argument("--seed", type=int, help="master seed (unsigned 64-bit)")
    p.add_argument("--out", type=Path, help="output file (default: stdout)")
    p.add_argument("--format", choices=("json", "csv"), help="record format")
    p.add_argument("--max-dim", type=int, help="refuse dimensions above this")
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = argparse.ArgumentParser(prog="bezout", description=__doc__.split("\n\n")[0])
    sub = parser.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", parents=[common], help="run a randomized campaign")
    v.add_argument("--checks", nargs="+", metavar="NAME", help=f"subset of: {', '.join(CHECKS)}")
    v.add_argument("--dims", nargs="+", type=int, metavar="N")
    v.add_argument("--trials", type=int)
    v.add_argument("--workers", type=int)
    v.add_argument("--summary", type=Path, help="write the JSON summary here")
    v.add_argument("--quiet", action="store_true", help="do not print the summary table")

    b = sub.add_parser("bounds", parents=[common], help="table of bound constants")
    b.add_argument("n", type=int)
    b.add_argument("m", type=int)
    b.add_argument("r", type=int)

    c = sub.add_parser("construct", parents=[common], help="block construction for (n, alpha)")
    c.add_argument("n", type=int)
    c.add_argument("alpha", nargs="+", type=int)
    c.add_argument("--t", type=float, default=1e6, help="scale of the B_i in the sum check")

    for name, what in (("mv", "mixed volume of polytope files"),
                       ("md", "mixed discriminant of matrix files")):
        s = sub.add_parser(name, parents=[common], help=what)
        s.add_argument("files", nargs="+", type=Path)
        s.add_argument("--mult", nargs="+", type=int, help="multiplicity of each file")
        s.add_argument("--oracle", action="store_true", help="cross-check by interpolation")
    return parser


def _emit(text: str, out: Path | None) -> None:
    if out is None:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")
    else:
        out.write_text(text if text.endswith("\n") else text + "\n")


def _rows_csv(rows: Sequence[tuple[str, object]]) -> str:
    import io

    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["key", "value"])
    w.writerows(rows)
    return buf.getvalue()


def _config_from_args(args) -> CampaignConfig:
    base = CampaignConfig.from_file(args.config).to_dict() if args.config else {}
    overrides = {
        "checks": args.checks, "dims": args.dims, "trials": args.trials, "seed": args.seed,
        "format": args.format, "workers": args.workers, "max_dim": args.max_dim,
        "out": str(args.out) if args.out else None,
    }
    base.update({k: v for k, v in overrides.items() if v is not None})
    return CampaignConfig.from_dict(base)


def _cmd_verify(args) -> int:
    config = _config_from_args(args)
    stream = sys.stdout if config.out is None else None
    summary = run_campaign(config, stream=stream)
    if args.summary:
        args.summary.write_text(summary.to_json() + "\n")
    if not args.quiet:
        print(summary.to_text(), file=sys.stderr)
    return summary.exit_code


def _cmd_bounds(args) -> int:
    table = bound_table(args.n, args.m, args.r)
    if args.format == "json":
        _emit(table.to_json(), args.out)
    elif args.format == "csv":
        d = table.to_dict()
        rows = [(k, v) for k, v in d.items() if not isinstance(v, dict)]
        rows += [(f"weaker.{k}", v) for k, v in d["weaker_bounds"].items()]
        _emit(_rows_csv(rows), args.out)
    else:
        _emit(table.to_text(), args.out)
    return EXIT_OK


def _cmd_construct(args) -> int:
    body = build_cor_body(args.n, args.alpha)
    report = verify_cor_ratio(args.n, args.alpha)
    A, B = sum_bezout_construction(args.n, args.alpha, args.t)
    sb = check_sum_bezout(A, B)
    doc = {
        "n": body.n,
        "alpha": list(body.alpha),
        "d": body.d,
        "blocks": body.blocks,
        "common_block": body.E_cap,
        "A": serialize(body.A),
        "cor_ratio": report.to_dict(),
        "sum_bezout": {"t": args.t, "raw_ratio": sb.extra["raw_ratio"], "report": sb.to_dict()},
    }
    if args.format == "csv":
        rows = [("n", body.n), ("alpha", " ".join(map(str, body.alpha))), ("d", body.d),
                ("cor_ratio_direct", report.lhs), ("cor_ratio_closed_form", report.extra["closed_form"]),
                ("cor_ratio_pass", report.passed), ("t", args.t),
                ("sum_bezout_raw_ratio", sb.extra["raw_ratio"])]
        _emit(_rows_csv(rows), args.out)
    else:
        _emit(json.dumps(doc, indent=2), args.out)
    return EXIT_OK if report.passed else EXIT_FAILURE


def _cmd_one_shot(args, kind: str) -> int:
    if kind == "mv":
        objs = [polytope_from_json(f.read_text()) for f in args.files]
        cap = args.max_dim or MV_MAX_DIM
        value = mixed_volume(objs, args.mult, max_dim=cap)
        oracle = mixed_volume_interp(objs, args.mult, max_dim=cap) if args.oracle else None
    else:
        objs = [matrix_from_json(f.read_text()) for f in args.files]
        cap = args.max_dim or MD_MAX_DIM
        value = mixed_discriminant(objs, args.mult, max_dim=cap)
        oracle = mixed_discriminant_interp(objs, args.mult, max_dim=cap) if args.oracle else None
    doc = {"value": value}
    code = EXIT_OK
    if oracle is not None:
        agree = math.isclose(value, oracle, rel_tol=ORACLE_RTOL[kind], abs_tol=1e-12)
        doc.update(oracle=oracle, agree=agree)
        if not agree:
            code = EXIT_NUMERICAL
    if args.format == "csv":
        _emit(_rows_csv(list(doc.items())), args.out)
    else:
        _emit(json.dumps(doc), args.out)
    return code


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "verify":
            return _cmd_verify(args)
        if args.command == "bounds":
            return _cmd_bounds(args)
        if args.command == "construct":
            return _cmd_construct(args)
        return _cmd_one_shot(args, args.command)
    except NumericalConsistencyError as exc:
        print(f"bezout: numerical inconsistency: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except (ConfigError, ValueError, KeyError, OSError) as exc:
        print(f"bezout: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    raise SystemExit(main())
