"""Batch command line front end.

    stabilab verify corollary2 --k 2 --n 5
    stabilab verify conjecture2 --k 2 --n 4 --m 3 --strict
    stabilab series plethysm --mu 2,1 --k 2 --d 4
    stabilab dim g --lambda 2 --mu 3,1
    stabilab cache list

Exit status: 0 when every check passes, 1 when a theorem check fails (or a
conjecture check under --strict), 2 on usage errors, 3 when a resource cap
or the cache directory stops the run.  A partial report is still written
in the last case.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
import time
from concurrent.futures import FIRST_COMPLETED, ThreadPoolExecutor, wait
from pathlib import Path
from typing import Callable, Sequence

from . import cache
from .characters import MAX_TABLE_N, character_table
from .errors import ResourceError
from .groebner import (FAMILIES, SIGNIFICANCE_SCHEMES, coinvariant_hilbert,
                       coinvariant_hilbert_check, verify_conjecture2, verify_qfactorial)
from .multiplicities import (METHODS, g_coeff, invariant_dim, m_mu_L, verify_corollary2,
                             verify_g_stability, verify_multigraded, verify_product_formula,
                             verify_weyl_stability, weyl_invariant_dim)
from .partitions import parse_partition
from .polyring import (first_relation_degree, harmonic_dims, quasifree_check,
                       verify_quasifree_corollaries, verify_theorem1)
from .reports import SCHEMA, Perturb, StabilityReport, dumps_csv, dumps_json, to_document
from .symfunc import plethysm_series, product_series

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_RESOURCE = 0, 1, 2, 3
DEFAULT_MAX_DEGREE = 12

VERIFY = ("corollary2", "theorem1", "weyl", "gstab", "multigraded", "quasifree",
          "conjecture2", "coinvariants")
SERIES = ("product", "plethysm", "hilbert")
DIMS = ("invariants", "weyl", "g", "mL")
CACHE = ("list", "clear", "path")

Job = Callable[[], list[StabilityReport]]


class UsageError(Exception):
    pass


def _int_list(text: str) -> list[int]:
    """"3", "1,2,4" or "1-3"."""
    out: set[int] = set()
    try:
        for piece in text.split(","):
            piece = piece.strip()
            if "-" in piece[1:]:
                lo, hi = piece.split("-", 1)
                out.update(range(int(lo), int(hi) + 1))
            else:
                out.add(int(piece))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected integers like 3, 1,2 or 1-3; got {text!r}")
    if not out or min(out) < 0:
        raise argparse.ArgumentTypeError(f"expected nonnegative integers; got {text!r}")
    return sorted(out)


def _partition(text: str):
    try:
        return parse_partition(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc))


def _vector(text: str) -> tuple[int, ...]:
    try:
        vec = tuple(int(x) for x in text.replace("+", ",").strip("[]()").split(",") if x.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a comma separated vector; got {text!r}")
    if not vec or min(vec) < 0:
        raise argparse.ArgumentTypeError(f"expected nonnegative entries; got {text!r}")
    return vec


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--k", type=_int_list, help="number of variable sets (list or range allowed)")
    common.add_argument("--n", type=_int_list, help="number of points, or the sweep maximum")
    common.add_argument("--m", type=_int_list, help="truncation degree")
    common.add_argument("--d", type=int, help="degree bound")
    common.add_argument("--r", type=int, help="first-row shift bound")
    common.add_argument("--mu", type=_partition)
    common.add_argument("--lambda", dest="lam", type=_partition)
    common.add_argument("--L", dest="L", type=_vector, help="multidegree, e.g. 2,1")
    common.add_argument("--method", choices=METHODS + ("both",), default=None)
    common.add_argument("--index", choices=("products", "generators"), default="products",
                        help="index set of the quasi-free map")
    common.add_argument("--order-family", choices=FAMILIES, default="graded-reverse-lex")
    common.add_argument("--significance", choices=SIGNIFICANCE_SCHEMES, default="interleaved")
    common.add_argument("--out", help="write the report here instead of stdout")
    common.add_argument("--format", choices=("json", "csv"), default="json")
    common.add_argument("--cache-dir", help=f"cache directory (default ${cache.ENV_VAR} or {cache.DEFAULT_DIR})")
    common.add_argument("--strict", action="store_true", help="conjecture failures fail the run")
    common.add_argument("--threads", type=int, default=1)
    common.add_argument("--max-degree", type=int, default=DEFAULT_MAX_DEGREE)
    common.add_argument("--time-budget", type=float, default=None,
                        help="seconds; no new grid instance starts after this")

    parser = argparse.ArgumentParser(prog="stabilab", description="Exact checks of representation stability statements.")
    sub = parser.add_subparsers(dest="group", required=True)
    for name, choices in (("verify", VERIFY), ("series", SERIES), ("dim", DIMS), ("cache", CACHE)):
        p = sub.add_parser(name, parents=[common])
        p.add_argument("target", choices=choices)
    return parser


# -- configuration -----------------------------------------------------------

def _require(args, *names: str) -> None:
    missing = [n for n in names if getattr(args, n) is None]
    if missing:
        flags = ", ".join("--" + ("lambda" if n == "lam" else n) for n in missing)
        raise UsageError(f"{args.group} {args.target} needs {flags}")


def _one(values: list[int] | None, flag: str) -> int:
    if values is None:
        raise UsageError(f"--{flag} is required")
    if len(values) != 1:
        raise UsageError(f"--{flag} takes a single value here")
    return values[0]


def _positive(values: list[int], flag: str) -> list[int]:
    if min(values) < 1:
        raise UsageError(f"--{flag} must be positive")
    return values


def _resolve_cache(args) -> Path:
    if args.cache_dir:
        return Path(args.cache_dir)
    env = os.environ.get(cache.ENV_VAR)
    return Path(env) if env else cache.DEFAULT_DIR


def _check_writable(root: Path) -> None:
    try:
        root.mkdir(parents=True, exist_ok=True)
    except OSError as exc:
        raise ResourceError(f"cache directory {root} is not usable: {exc}")
    if not root.is_dir() or not os.access(root, os.W_OK | os.X_OK):
        raise ResourceError(f"cache directory {root} is not writable")


def _cap(value: int, cap: int, what: str) -> None:
    if value > cap:
        raise ResourceError(f"{what} = {value} exceeds cap {cap}")


# -- verify ------------------------------------------------------------------

def _verify_jobs(args, perturb: Perturb | None) -> list[Job]:
    t = args.target
    jobs: list[Job] = []
    cap = args.max_degree
    if args.threads < 1:
        raise UsageError("--threads must be positive")

    if t in ("corollary2", "weyl", "gstab", "multigraded"):
        _require(args, "n")
        n_max = max(_positive(args.n, "n"))
        _cap(n_max, MAX_TABLE_N, "n")
        r_max = 3 if args.r is None else args.r
        if t in ("gstab", "multigraded"):
            _cap(n_max + r_max, cap, "degree n + r")
        else:
            _cap(n_max, cap, "degree n")
        if t == "corollary2":
            methods = METHODS if args.method in (None, "both") else (args.method,)
            for k in _positive(args.k or [1], "k"):
                jobs.append(lambda k=k: verify_corollary2(k, n_max, methods, perturb))
                jobs.append(lambda k=k: [verify_product_formula(k, n_max, perturb)])
        elif t == "weyl":
            def weyl():
                for n in range(1, n_max + 1):
                    character_table(n)
                return [verify_weyl_stability(n_max, perturb)]
            jobs.append(weyl)
        elif t == "gstab":
            jobs.append(lambda: [verify_g_stability(n_max, r_max, perturb)])
        else:
            for k in _positive(args.k or [1], "k"):
                jobs.append(lambda k=k: [verify_multigraded(k, n_max, r_max, perturb)])
        return jobs

    _require(args, "k", "n")
    ks, ns = _positive(args.k, "k"), _positive(args.n, "n")
    if t == "theorem1":
        for k in ks:
            for n in ns:
                _cap(n + 1, cap, "degree n + 1")
                jobs.append(lambda k=k, n=n: _theorem1(k, n, perturb))
        return jobs

    for k in ks:
        for n in ns:
            if t == "quasifree":
                ms = args.m or list(range(1, n + 1))
                if max(ms) > n or min(ms) < 1:
                    raise UsageError("quasifree needs 1 <= m <= n")
            else:
                ms = args.m or list(range(1, n))
                if not ms or max(ms) >= n or min(ms) < 1:
                    raise UsageError(f"{t} needs 1 <= m < n")
            for m in ms:
                _cap(m, cap, "degree m")
                if t == "quasifree":
                    jobs.append(lambda k=k, n=n, m=m: _quasifree(k, n, m, args.index, perturb))
                elif t == "conjecture2":
                    jobs.append(lambda k=k, n=n, m=m: [verify_conjecture2(
                        k, n, m, args.order_family, args.significance, perturb)])
                else:
                    jobs.append(lambda k=k, n=n, m=m: [coinvariant_hilbert_check(
                        k, n, m, args.order_family, args.significance, perturb)])
            if t == "coinvariants" and k == 1:
                _cap(n * (n - 1) // 2 + 1, cap, "degree of [n]_q!")
                jobs.append(lambda n=n: [verify_qfactorial(n, args.order_family, args.significance, perturb)])
    return jobs


def _theorem1(k: int, n: int, perturb: Perturb | None) -> list[StabilityReport]:
    reports = [verify_theorem1(k, n, perturb)]
    if k >= 2:
        rel = StabilityReport("first-relation", grid={"k": k, "n": n}, perturb=perturb)
        with rel.timed():
            rel.add({"k": k, "n": n}, first_relation_degree(k, n, n + 2) or -1, n + 2)
        reports.append(rel)
    return reports


def _quasifree(k: int, n: int, m: int, index: str, perturb: Perturb | None) -> list[StabilityReport]:
    reports = [quasifree_check(k, n, m, index, perturb)]
    if reports[0].passed:
        reports.append(verify_quasifree_corollaries(k, n, m, perturb=perturb))
    return reports


def _run_jobs(jobs: list[Job], threads: int, budget: float | None) -> tuple[list[StabilityReport], str | None]:
    """Run jobs on a bounded pool; reports come back in job order.

    Returns the reports of finished jobs and, if the run was cut short, why.
    """
    start = time.perf_counter()
    results: dict[int, list[StabilityReport]] = {}
    problem: str | None = None
    with ThreadPoolExecutor(max_workers=threads) as pool:
        pending = {}
        nxt = 0
        while nxt < len(jobs) or pending:
            while problem is None and nxt < len(jobs) and len(pending) < threads:
                if budget is not None and time.perf_counter() - start > budget:
                    problem = f"time budget of {budget}s exhausted after {len(results)} of {len(jobs)} instances"
                    break
                pending[pool.submit(jobs[nxt])] = nxt
                nxt += 1
            if not pending:
                break
            done, _ = wait(pending, return_when=FIRST_COMPLETED)
            for fut in done:
                idx = pending.pop(fut)
                try:
                    results[idx] = fut.result()
                except ResourceError as exc:
                    problem = problem or str(exc)
    return [r for idx in sorted(results) for r in results[idx]], problem


def _verify(args, perturb: Perturb | None, command: str) -> tuple[str, int]:
    jobs = _verify_jobs(args, perturb)
    reports, problem = _run_jobs(jobs, args.threads, args.time_budget)
    if args.format == "csv":
        text = dumps_csv(reports)
    else:
        doc = to_document(reports, command)
        if problem:
            doc["partial"] = True
            doc["error"] = problem
        text = dumps_json(doc)
    if problem:
        return text, EXIT_RESOURCE
    failed = any(not r.passed and (r.kind == "theorem" or args.strict) for r in reports)
    return text, EXIT_FAIL if failed else EXIT_OK


# -- series / dim --------------------------------------------------------------

def _series(args) -> dict:
    t = args.target
    _require(args, "d")
    _cap(args.d, args.max_degree, "degree d")
    if t == "product":
        k = _one(args.k or [1], "k")
        return {"k": k, "bound": args.d, "coefficients": product_series(k, args.d).specialize()}
    if t == "plethysm":
        _require(args, "mu")
        k = _one(args.k or [1], "k")
        series = plethysm_series(args.mu, k, args.d)
        return {"k": k, "mu": list(args.mu), "bound": args.d, "terms": series.to_json()}
    k, n = _one(args.k, "k"), _one(args.n, "n")
    return {"k": k, "n": n, "bound": args.d,
            "harmonics": harmonic_dims(k, n, args.d),
            "coinvariants": coinvariant_hilbert(k, n, args.d, args.order_family, args.significance)}


def _dim(args) -> dict:
    t = args.target
    if t == "invariants":
        _require(args, "n", "d")
        k, n = _one(args.k or [1], "k"), _one(args.n, "n")
        method = args.method or "enumeration"
        return {"k": k, "n": n, "d": args.d, "method": method, "value": invariant_dim(n, k, args.d, method)}
    if t == "weyl":
        _require(args, "lam", "n")
        n = _one(args.n, "n")
        _cap(n, MAX_TABLE_N, "n")
        return {"lambda": list(args.lam), "n": n, "value": weyl_invariant_dim(args.lam, n)}
    if t == "g":
        _require(args, "lam", "mu")
        _cap(sum(args.mu), MAX_TABLE_N, "|mu|")
        return {"lambda": list(args.lam), "mu": list(args.mu), "value": g_coeff(args.lam, args.mu)}
    _require(args, "mu", "L")
    n = _one(args.n, "n") if args.n else None
    return {"mu": list(args.mu), "L": list(args.L), "value": m_mu_L(args.mu, args.L, n)}


def _flat_csv(result: dict) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(("key", "value"))
    for key in sorted(result):
        writer.writerow((key, json.dumps(result[key], sort_keys=True)))
    return buf.getvalue()


def _cache(args, root: Path) -> tuple[str, int]:
    if args.target == "path":
        result: dict = {"cache_dir": str(root)}
    elif args.target == "list":
        result = {"cache_dir": str(root), "entries": cache.list_entries(root)}
    else:
        _check_writable(root)
        result = {"cache_dir": str(root), "removed": cache.clear(root)}
    if args.format == "csv":
        return _flat_csv(result), EXIT_OK
    return dumps_json({"schema": SCHEMA, "command": f"cache {args.target}", "result": result}), EXIT_OK


# -- entry point ---------------------------------------------------------------

def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def main(argv: Sequence[str] | None = None, perturb: Perturb | None = None) -> int:
    """Run one command.  ``perturb`` rewrites left-hand sides before they are
    compared, which lets tests inject failures."""
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    command = " ".join(argv)
    root = _resolve_cache(args)
    previous = cache.cache_dir()
    try:
        if args.group == "cache":
            text, code = _cache(args, root)
            _emit(text, args.out)
            return code
        _check_writable(root)
        cache.set_cache_dir(root)
        if args.group == "verify":
            text, code = _verify(args, perturb, command)
        else:
            result = _series(args) if args.group == "series" else _dim(args)
            text = (_flat_csv(result) if args.format == "csv"
                    else dumps_json({"schema": SCHEMA, "command": command, "result": result}))
            code = EXIT_OK
        _emit(text, args.out)
        return code
    except (UsageError, ValueError) as exc:
        print(f"stabilab: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ResourceError as exc:
        print(f"stabilab: resource limit: {exc}", file=sys.stderr)
        partial = {"schema": SCHEMA, "command": command, "partial": True, "error": str(exc),
                   "summary": [], "records": [], "timing": {}}
        try:
            _emit(dumps_json(partial), getattr(args, "out", None))
        except OSError:
            pass
        return EXIT_RESOURCE
    finally:
        cache.set_cache_dir(previous)


if __name__ == "__main__":
    raise SystemExit(main())
