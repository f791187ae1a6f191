"""Randomized verification campaigns over the inequality suite.

A campaign visits every (check, n, m, trial) cell in a fixed order, draws
the instance from a generator seeded by the cell, and writes one record per
report. Records carry no timestamps, so two runs with the same config give
byte-identical files; timing lives only in the summary.
"""
from __future__ import annotations

import csv
import io
import json
import math
import time
import zlib
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from datetime import datetime, timezone
from pathlib import Path
from typing import Any, Callable, Iterable, Sequence

import numpy as np

from .constants import c_lower_binom
from .constructions import sum_bezout_construction
from .discriminant import linear_image_check, random_psd
from .inequalities import (
    check_bezout_simplex,
    check_bnr_bound,
    check_cor_itxiao,
    check_cube_violation,
    check_fenchel,
    check_gen_fenchel,
    check_gx,
    check_gxv,
    check_ruzsa_convex,
    check_sum_bezout,
    check_xiao,
    random_multi_index,
    random_polytope,
)
from .mixed_volume import MAX_DIM, NumericalConsistencyError, expansion_identity_check
from .report import InequalityReport

__all__ = [
    "ConfigError",
    "CheckSpec",
    "CHECKS",
    "EXPECTED_FAILURES",
    "CSV_COLUMNS",
    "CampaignConfig",
    "CheckSummary",
    "CampaignSummary",
    "cell_seed",
    "run_cell",
    "iter_cells",
    "run_campaign",
    "record_line",
    "EXIT_OK",
    "EXIT_FAILURE",
    "EXIT_CONFIG",
    "EXIT_NUMERICAL",
]

EXIT_OK, EXIT_FAILURE, EXIT_CONFIG, EXIT_NUMERICAL = 0, 1, 2, 3
CSV_COLUMNS = ("name", "n", "m", "seed", "trial", "lhs", "rhs", "ratio", "pass")
EXPECTED_FAILURES = frozenset({"cube_violation"})


class ConfigError(ValueError):
    """Invalid campaign configuration."""


Generator = Callable[[int, int, np.random.Generator, dict], list[InequalityReport]]


@dataclass(frozen=True)
class CheckSpec:
    """A registered check.

    ``generate(n, m, rng, tol)`` draws an instance and returns its reports.
    ``valid_m(n)`` lists the admissible counts and ``default_m(n)`` the
    ones run when the config gives none. The meaning of ``m`` is per check
    (bodies, matrices, or the index k).
    """

    generate: Generator
    valid_m: Callable[[int], Sequence[int]]
    default_m: Callable[[int], Sequence[int]]
    doc: str = ""


def _polys(n, k, rng):
    return [random_polytope(n, rng) for _ in range(k)]


def _psds(n, k, rng, eps=1e-6):
    return [random_psd(n, rng, eps=eps) for _ in range(k)]


def _gen_fenchel_basic(n, m, rng, tol):
    A, B, C, *K = _polys(n, n + 1, rng)
    return [check_fenchel(A, B, C, K, **tol)]


def _gen_xiao(n, k, rng, tol):
    A, B, *M = _psds(n, 2 + n - k, rng)
    return [check_xiao(A, B, M, k, **tol)]


def _gen_gx(n, m, rng, tol):
    i = random_multi_index(n, m, rng)
    A, *rest = _psds(n, 1 + m + n - sum(i), rng, eps=0.0)
    return [check_gx(A, rest[:m], rest[m:], i, **tol)]


def _gen_gxv(n, m, rng, tol):
    i = random_multi_index(n, m, rng)
    A, *rest = _polys(n, 1 + m + n - sum(i), rng)
    return [check_gxv(A, rest[:m], rest[m:], i, **tol)]


def _gen_cor_itxiao(n, m, rng, tol):
    i = random_multi_index(n, m, rng)
    j = int(rng.integers(m))
    A, *B = _polys(n, 1 + m, rng)
    return [check_cor_itxiao(A, B, i, j, **tol)]


def _gen_gen_fenchel(n, m, rng, tol):
    A, *B = _polys(n, 1 + m, rng)
    return list(check_gen_fenchel(A, B, **tol))


def _gen_bezout_simplex(n, r, rng, tol):
    return [check_bezout_simplex(_polys(n, r, rng), **tol)]


def _gen_cube_violation(n, m, rng, tol):
    return [check_cube_violation(float(rng.uniform(0.1, 10.0)), **tol)]


def _gen_bnr(n, r, rng, tol):
    A, *B = _polys(n, 1 + r, rng)
    return [check_bnr_bound(A, B, **tol)]


def _gen_ruzsa(n, m, rng, tol):
    A, *B = _polys(n, 1 + m, rng)
    return [check_ruzsa_convex(A, B, **tol)]


def _gen_sum_bezout(n, m, rng, tol):
    A, *B = _polys(n, 1 + m, rng)
    return [check_sum_bezout(A, B, **tol)]


def _gen_factdet(n, m, rng, tol):
    mats = _psds(n, m, rng, eps=0.0)
    mult = list(random_multi_index(n, m, rng, total=n))
    T = rng.normal(size=(n, n))
    return [linear_image_check(T, mats, mult)]


def _gen_expansion(n, m, rng, tol):
    A, *B = _polys(n, 1 + m, rng)
    return [expansion_identity_check(A, B)]


def _gen_sum_bezout_construction(n, m, rng, tol):
    # the best block pattern for (n, m), pushed far along t
    low = c_lower_binom(n, m)
    t = 1e7 * float(rng.uniform(1.0, 2.0))
    A, B = sum_bezout_construction(n, low.alpha, t)
    rep = check_sum_bezout(A, B, **tol)
    rep.name = "sum_bezout_construction"
    rep.instance = {"alpha": list(low.alpha), "t": t}
    rep.extra["c_lower_binom"] = str(low.value)
    return [rep]


def _upto(lo):
    return lambda n: list(range(lo, n + 1))


def _fixed(*ms):
    return lambda n: list(ms)


def _only_n2(n):
    return [2] if n == 2 else []


def _capped(ms):
    return lambda n: [m for m in ms if m <= n]


CHECKS: dict[str, CheckSpec] = {
    "fenchel": CheckSpec(_gen_fenchel_basic, _fixed(3), _fixed(3),
                         "Fenchel's inequality; A, B, C and n-2 bodies K"),
    "xiao": CheckSpec(_gen_xiao, _upto(1), lambda n: list(range(1, n + 1)),
                      "Xiao's mixed-discriminant inequality; m is k"),
    "gx": CheckSpec(_gen_gx, _fixed(1, 2, 3), _fixed(1, 2),
                    "mixed-discriminant Bezout-type inequality, random multi-index"),
    "gxv": CheckSpec(_gen_gxv, _fixed(1, 2, 3), _fixed(1, 2),
                     "mixed-volume Bezout-type inequality, random multi-index"),
    "cor_itxiao": CheckSpec(_gen_cor_itxiao, _fixed(1, 2, 3), _fixed(2),
                            "iterated Xiao-type inequality, random multi-index and slot"),
    "gen_fenchel": CheckSpec(_gen_gen_fenchel, _upto(1), _capped([2, 3]),
                             "generalized Fenchel, iterated and product forms"),
    "bezout_simplex": CheckSpec(_gen_bezout_simplex, _upto(2), _fixed(2),
                                "Bezout inequality with the standard simplex"),
    "cube_violation": CheckSpec(_gen_cube_violation, _only_n2, _only_n2,
                                "the square in place of the simplex; expected to fail"),
    "bnr_bound": CheckSpec(_gen_bnr, _upto(2), _capped([2, 3]),
                           "Bezout inequality with the b(n, r) constant"),
    "ruzsa_convex": CheckSpec(_gen_ruzsa, _upto(1), _fixed(2, 3),
                              "Ruzsa-type inequality for convex bodies"),
    "sum_bezout": CheckSpec(_gen_sum_bezout, _upto(1), _fixed(2, 3),
                            "Minkowski-sum inequality with the c_upper constant"),
    "factdet": CheckSpec(_gen_factdet, _upto(1), _fixed(2),
                         "D(T M T^t) = det(T)^2 D(M)"),
    "expansion": CheckSpec(_gen_expansion, _upto(1), _fixed(2, 3),
                           "multinomial expansions of Minkowski-sum volumes"),
    "sum_bezout_construction": CheckSpec(_gen_sum_bezout_construction, _upto(2), _fixed(2),
                                         "Minkowski-sum inequality on the block construction"),
}


def cell_seed(seed: int, check: str, n: int, m: int, trial: int) -> int:
    """64-bit seed for one cell, stable across runs and platforms."""
    ss = np.random.SeedSequence([int(seed), zlib.crc32(check.encode()), n, m, trial])
    return int(ss.generate_state(1, dtype=np.uint64)[0])


@dataclass
class CampaignConfig:
    """Campaign parameters; ``counts`` maps a check name to its m values."""

    checks: list[str] | None = None
    dims: list[int] = field(default_factory=lambda: [2, 3, 4])
    counts: dict[str, list[int]] = field(default_factory=dict)
    trials: int = 200
    seed: int = 0
    out: str | None = None
    format: str = "json"
    rtol: float = 1e-9
    atol: float = 1e-12
    workers: int = 1
    max_dim: int = MAX_DIM

    def __post_init__(self):
        if self.checks is None:
            self.checks = list(CHECKS)
        self.validate()

    def validate(self) -> None:
        unknown = [c for c in self.checks if c not in CHECKS]
        unknown += [c for c in self.counts if c not in CHECKS]
        if unknown:
            raise ConfigError(f"unknown check(s): {', '.join(sorted(set(unknown)))}")
        if not self.checks:
            raise ConfigError("no checks selected")
        if self.trials < 1:
            raise ConfigError("trials must be at least 1")
        if not self.dims or any(int(n) < 2 for n in self.dims):
            raise ConfigError("dims must be a nonempty list of integers >= 2")
        if any(int(n) > self.max_dim for n in self.dims):
            raise ConfigError(f"dimension above max_dim = {self.max_dim}")
        if self.format not in ("json", "csv"):
            raise ConfigError("format must be 'json' or 'csv'")
        if self.workers < 1:
            raise ConfigError("workers must be at least 1")
        if not 0 <= int(self.seed) < 2**64:
            raise ConfigError("seed must fit in 64 unsigned bits")
        if self.rtol < 0 or self.atol < 0:
            raise ConfigError("tolerances must be nonnegative")

    @classmethod
    def from_dict(cls, d: dict[str, Any]) -> "CampaignConfig":
        known = set(cls.__dataclass_fields__)
        extra = set(d) - known
        if extra:
            raise ConfigError(f"unknown config key(s): {', '.join(sorted(extra))}")
        try:
            return cls(**d)
        except TypeError as exc:
            raise ConfigError(str(exc)) from exc

    @classmethod
    def from_json(cls, text: str) -> "CampaignConfig":
        try:
            d = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ConfigError(f"config is not valid JSON: {exc}") from exc
        if not isinstance(d, dict):
            raise ConfigError("config must be a JSON object")
        return cls.from_dict(d)

    @classmethod
    def from_file(cls, path: str | Path) -> "CampaignConfig":
        try:
            text = Path(path).read_text()
        except OSError as exc:
            raise ConfigError(f"cannot read config {path}: {exc}") from exc
        return cls.from_json(text)

    def to_dict(self) -> dict[str, Any]:
        return asdict(self)

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)


def iter_cells(config: CampaignConfig) -> Iterable[tuple[str, int, int, int]]:
    """Cells in (check, n, m, trial) order; m values invalid for n are skipped."""
    for name in config.checks:
        spec = CHECKS[name]
        for n in config.dims:
            valid = set(spec.valid_m(n))
            ms = config.counts.get(name, spec.default_m(n))
            for m in ms:
                if m in valid:
                    for trial in range(config.trials):
                        yield name, int(n), int(m), trial


def run_cell(name: str, n: int, m: int, trial: int, seed: int,
             rtol: float = 1e-9, atol: float = 1e-12) -> list[dict[str, Any]]:
    """Records for one cell: the report dicts plus n, m, trial and the cell seed."""
    s = cell_seed(seed, name, n, m, trial)
    reports = CHECKS[name].generate(n, m, np.random.default_rng(s), {"rtol": rtol, "atol": atol})
    out = []
    for rep in reports:
        rep.seed = s
        d = rep.to_dict()
        d.update(check=name, n=n, m=m, trial=trial)
        out.append(d)
    return out


def _run_cell_args(args):
    return run_cell(*args)


def _fmt(x) -> str:
    if x is None:
        return "nan"
    return repr(float(x))


def record_line(rec: dict[str, Any], fmt: str) -> str:
    """One output line (without newline) for a record."""
    if fmt == "json":
        return json.dumps(rec, sort_keys=True, allow_nan=True)
    buf = io.StringIO()
    csv.writer(buf, lineterminator="").writerow(
        [rec["name"], rec["n"], rec["m"], rec["seed"], rec["trial"],
         _fmt(rec["lhs"]), _fmt(rec["rhs"]), _fmt(rec["ratio"]), str(rec["pass"]).lower()])
    return buf.getvalue()


@dataclass
class CheckSummary:
    name: str
    passed: int = 0
    failed: int = 0
    min_ratio: float = math.inf
    max_ratio: float = -math.inf
    argmax: dict[str, int] | None = None
    min_raw_ratio: float | None = None
    max_raw_ratio: float | None = None
    expected_failure: bool = False
    # "n=3,m=2" -> [min, max] of raw_ratio
    raw_by_cell: dict[str, list[float]] = field(default_factory=dict)

    def add(self, rec: dict[str, Any]) -> None:
        if rec["pass"]:
            self.passed += 1
        else:
            self.failed += 1
        r = rec["ratio"]
        if r is not None and not math.isnan(r):
            self.min_ratio = min(self.min_ratio, r)
            if r > self.max_ratio:
                self.max_ratio = r
                self.argmax = {k: rec[k] for k in ("n", "m", "trial", "seed")}
        raw = rec["extra"].get("raw_ratio")
        if raw is not None and not math.isnan(raw):
            self.min_raw_ratio = raw if self.min_raw_ratio is None else min(self.min_raw_ratio, raw)
            self.max_raw_ratio = raw if self.max_raw_ratio is None else max(self.max_raw_ratio, raw)
            lo_hi = self.raw_by_cell.setdefault(f"n={rec['n']},m={rec['m']}", [raw, raw])
            lo_hi[0], lo_hi[1] = min(lo_hi[0], raw), max(lo_hi[1], raw)

    @property
    def unexpected_failures(self) -> int:
        return 0 if self.expected_failure else self.failed


@dataclass
class CampaignSummary:
    checks: dict[str, CheckSummary]
    cells: dict[str, dict[str, int]]
    records: int
    wall_time: float
    started: str
    exit_code: int
    error: str | None = None
    out: str | None = None

    @property
    def unexpected_failures(self) -> int:
        return sum(c.unexpected_failures for c in self.checks.values())

    def to_dict(self) -> dict[str, Any]:
        d = asdict(self)
        for c in d["checks"].values():
            for k in ("min_ratio", "max_ratio"):
                if math.isinf(c[k]):
                    c[k] = None
        return d

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)

    def to_text(self) -> str:
        lines = [f"{'check':<28}{'pass':>7}{'fail':>6}{'min ratio':>14}{'max ratio':>14}"]
        for c in self.checks.values():
            lo = f"{c.min_ratio:.6g}" if math.isfinite(c.min_ratio) else "-"
            hi = f"{c.max_ratio:.6g}" if math.isfinite(c.max_ratio) else "-"
            tag = "  (expected)" if c.expected_failure and c.failed else ""
            lines.append(f"{c.name:<28}{c.passed:>7}{c.failed:>6}{lo:>14}{hi:>14}{tag}")
        lines.append(f"{self.records} records in {self.wall_time:.1f}s, exit code {self.exit_code}")
        if self.error:
            lines.append(f"error: {self.error}")
        return "\n".join(lines)


def run_campaign(config: CampaignConfig, stream: io.TextIOBase | None = None) -> CampaignSummary:
    """Run every cell of ``config`` and write its records.

    Records go to ``stream`` if given, else to ``config.out`` (nothing is
    written when both are None). A :class:`NumericalConsistencyError`
    stops the run with exit code 3; records written so far are kept.
    """
    config.validate()
    started = datetime.now(timezone.utc).isoformat(timespec="seconds")
    t0 = time.perf_counter()
    cells = list(iter_cells(config))

    handle = None
    if stream is None and config.out is not None:
        try:
            handle = open(config.out, "w", newline="")
        except OSError as exc:
            raise ConfigError(f"cannot write {config.out}: {exc}") from exc
    sink = stream if stream is not None else handle

    checks: dict[str, CheckSummary] = {}
    cell_counts: dict[str, dict[str, int]] = {}
    n_records = 0
    error = None
    args = [(name, n, m, trial, config.seed, config.rtol, config.atol) for name, n, m, trial in cells]
    try:
        if sink is not None and config.format == "csv":
            sink.write(",".join(CSV_COLUMNS) + "\n")
        if config.workers > 1:
            pool = ProcessPoolExecutor(config.workers)
            results = pool.map(_run_cell_args, args, chunksize=8)
        else:
            pool = None
            results = map(_run_cell_args, args)
        try:
            for (name, n, m, _), recs in zip(cells, results):
                key = f"n={n},m={m}"
                cell_counts.setdefault(name, {}).setdefault(key, 0)
                cell_counts[name][key] += 1
                for rec in recs:
                    summ = checks.setdefault(rec["name"], CheckSummary(
                        rec["name"], expected_failure=name in EXPECTED_FAILURES))
                    summ.add(rec)
                    if sink is not None:
                        sink.write(record_line(rec, config.format) + "\n")
                    n_records += 1
        finally:
            if pool is not None:
                pool.shutdown(cancel_futures=True)
    except NumericalConsistencyError as exc:
        error = f"numerical consistency: {exc}"
    finally:
        if handle is not None:
            handle.close()

    summary = CampaignSummary(checks, cell_counts, n_records, time.perf_counter() - t0, started,
                              EXIT_OK, error, config.out)
    if error is not None:
        summary.exit_code = EXIT_NUMERICAL
    elif summary.unexpected_failures:
        summary.exit_code = EXIT_FAILURE
    return summary
