"""Command-line front end: socle values, verification suites, tables.

Exit codes form a stable contract for CI use: 0 success/agreement,
1 usage error, 2 mathematical disagreement.  A failed identity is a
result with a serialized witness, not a crash.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import random
import sys
from dataclasses import asdict, dataclass

from .drcycle import dr3_bssz_check, dr3_closed, dr3_recursive, dr_standard
from .elliptic import check_propagator_identity, top_weight_check
from .exact import factorial, format_rational
from .modfit import basis
from .qseries import eisenstein
from .report import CheckResult, failed, jsonable, passed
from .socle import (
    DimensionError,
    SocleQuery,
    iter_socle_queries,
    relation_integral_check,
    socle_compute,
    verify_string_consistency,
    wheel_collapse_check,
)

__all__ = ["RunConfig", "main"]

ENV_PREFIX = "SOCLECALC_"
SUITES = ("dr", "string", "relation", "propagator", "topweight")
EXIT_OK, EXIT_USAGE, EXIT_DISAGREE = 0, 1, 2


@dataclass(frozen=True)
class RunConfig:
    q_order: int = 20
    w_order: int = 8
    g_max: int = 6
    fmt: str = "markdown"
    seed: int = 0

    def __post_init__(self):
        if self.q_order < 1 or self.w_order < 1:
            raise ValueError("orders must be >= 1")
        if self.fmt not in ("json", "csv", "markdown"):
            raise ValueError(f"unknown format {self.fmt!r}")


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on usage problems; the disagreement code is 2
    # here, so reroute usage errors to exit 1
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _env_default(name: str, fallback):
    raw = os.environ.get(ENV_PREFIX + name)
    if raw is None:
        return fallback
    if isinstance(fallback, int):
        try:
            return int(raw)
        except ValueError:
            raise SystemExit(EXIT_USAGE)
    return raw


def build_parser() -> _Parser:
    parser = _Parser(prog="soclecalc", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--format",
        choices=("json", "csv", "markdown"),
        default=_env_default("FORMAT", "markdown"),
    )

    p_socle = sub.add_parser(
        "socle", parents=[common], help="evaluate one socle query"
    )
    p_socle.add_argument("--g", type=int, required=True)
    p_socle.add_argument(
        "--d", required=True, help="comma-separated exponents, e.g. 2,0"
    )
    p_socle.add_argument(
        "--method", choices=("faber", "necklace", "both"), default="both"
    )

    p_verify = sub.add_parser(
        "verify", parents=[common], help="run a verification suite"
    )
    p_verify.add_argument("suite", choices=SUITES + ("all",))
    p_verify.add_argument(
        "--q-order", type=int, default=_env_default("Q_ORDER", 20)
    )
    p_verify.add_argument(
        "--w-order", type=int, default=_env_default("W_ORDER", 8)
    )
    p_verify.add_argument("--g-max", type=int, default=_env_default("G_MAX", 6))
    p_verify.add_argument("--m-max", type=int, default=4)
    p_verify.add_argument("--g", type=int, help="restrict to one genus")
    p_verify.add_argument("--m", type=int, help="restrict to one edge count")
    p_verify.add_argument("--samples", type=int, default=20)
    p_verify.add_argument("--seed", type=int, default=_env_default("SEED", 0))

    p_table = sub.add_parser(
        "table", parents=[common], help="emit a golden value table"
    )
    p_table.add_argument("kind", choices=("socle", "dr", "eisenstein"))
    p_table.add_argument("--g-max", type=int, default=_env_default("G_MAX", 3))
    p_table.add_argument("--n-max", type=int, default=3)
    p_table.add_argument("--a-max", type=int, default=3)
    p_table.add_argument("--k", default="2,4,6")
    p_table.add_argument(
        "--order", type=int, default=_env_default("Q_ORDER", 10)
    )
    return parser


# ---------------------------------------------------------------- suites


def suite_dr(g_max: int) -> list[CheckResult]:
    checks = []
    for g in range(1, min(g_max, 8) + 1):
        for a1 in range(-5, 6):
            for a2 in range(-5, 6):
                c, r = dr3_closed(g, a1, a2), dr3_recursive(g, a1, a2)
                if c == r:
                    checks.append(passed("dr.oracle", g=g, a1=a1, a2=a2))
                else:
                    checks.append(
                        failed(
                            "dr.oracle", {"closed": c, "recursive": r},
                            g=g, a1=a1, a2=a2,
                        )
                    )
    for g in range(1, min(g_max, 6) + 1):
        for a1 in range(1, 5):
            for a2 in range(1, 5):
                checks.append(dr3_bssz_check(g, a1, a2))
    for g in range(0, 13):
        lhs = dr_standard(g) * (
            factorial(2 * g + 1) // (2**g * factorial(g))
        ) * 4**g
        if lhs == 1:
            checks.append(passed("dr.standard_unit", g=g))
        else:
            checks.append(failed("dr.standard_unit", {"value": lhs}, g=g))
    return checks


def _positive_lists(total: int, parts: int):
    # ordered lists of positive integers with the given sum
    if parts == 1:
        if total >= 1:
            yield (total,)
        return
    for first in range(1, total - parts + 2):
        for rest in _positive_lists(total - first, parts - 1):
            yield (first,) + rest


def suite_string(g_max: int, n_max: int = 5) -> list[CheckResult]:
    # all-positive d with sum(d) = g-1+n, the domain where the appended
    # query is canonical and the consistency identity is a theorem
    checks = []
    for g in range(1, g_max + 1):
        for n in range(1, n_max + 1):
            for d in _positive_lists(g - 1 + n, n):
                checks.append(verify_string_consistency(g, d))
    return checks


def suite_relation(
    g_max: int, m_max: int = 4, samples: int = 20, seed: int = 0
) -> list[CheckResult]:
    checks = []
    for g in range(1, min(g_max, 5) + 1):
        for m in range(1, m_max + 1):
            for d in _positive_lists(g - 1 + m, m):
                checks.append(relation_integral_check(g, d))
    rng = random.Random(seed)
    for _ in range(samples):
        g = rng.randint(1, 6)
        m = rng.randint(1, 5)
        cuts = sorted(rng.randint(0, g - 1) for _ in range(m - 1))
        parts = [b - a for a, b in zip([0] + cuts, cuts + [g - 1])]
        d = tuple(p + 1 for p in parts)
        checks.append(wheel_collapse_check(g, d))
    return checks


def suite_propagator(q_order: int, w_order: int) -> list[CheckResult]:
    checks = [check_propagator_identity(q_order, w_order)]
    wrong = check_propagator_identity(q_order, w_order, divisor_power_shift=1)
    if wrong.ok:
        checks.append(
            failed(
                "elliptic.propagator_must_fail_with_divisor_power_k",
                {"unexpected": "agreement"},
                q_order=q_order,
                w_order=w_order,
            )
        )
    else:
        checks.append(
            passed(
                "elliptic.propagator_must_fail_with_divisor_power_k",
                q_order=q_order,
                w_order=w_order,
                mismatch_at=(
                    wrong.witness["q_power"],
                    wrong.witness["w_power"],
                ),
            )
        )
    return checks


def suite_topweight(
    g_max: int = 3,
    m_max: int = 4,
    g_only: int | None = None,
    m_only: int | None = None,
) -> list[CheckResult]:
    checks = []
    for g in range(1, min(g_max, 3) + 1):
        if g_only is not None and g != g_only:
            continue
        for m in range(1, m_max + 1):
            if m_only is not None and m != m_only:
                continue
            q_order = len(basis(2 * g - 2 + 2 * m)) + 5
            for j_plus in range(1, m + 1):
                checks.append(
                    top_weight_check(g, j_plus, m - j_plus, q_order)
                )
    return checks


def run_suites(names, args) -> list[CheckResult]:
    checks: list[CheckResult] = []
    for name in names:
        if name == "dr":
            checks += suite_dr(args.g_max)
        elif name == "string":
            checks += suite_string(args.g_max)
        elif name == "relation":
            checks += suite_relation(
                args.g_max, args.m_max, args.samples, args.seed
            )
        elif name == "propagator":
            checks += suite_propagator(
                min(args.q_order, 8), min(args.w_order, 8)
            )
        elif name == "topweight":
            checks += suite_topweight(
                min(args.g_max, 3), args.m_max, args.g, args.m
            )
    return checks


# ------------------------------------------------------------- rendering


def render_report(suite: str, checks: list[CheckResult], fmt: str, config: dict) -> str:
    if fmt == "json":
        payload = {
            "suite": suite,
            "checks": [
                {
                    "id": c.check_id,
                    "status": c.status,
                    "witness": jsonable(c.witness),
                }
                for c in checks
            ],
            "config": config,
        }
        return json.dumps(payload, indent=2)
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf)
        writer.writerow(["id", "status", "witness"])
        for c in checks:
            writer.writerow(
                [c.check_id, c.status, json.dumps(jsonable(c.witness))]
            )
        return buf.getvalue().rstrip("\n")
    lines = [f"## verify {suite}", ""]
    lines.append("| check | status |")
    lines.append("|---|---|")
    for c in checks:
        mark = "pass" if c.ok else f"FAIL {json.dumps(jsonable(c.witness))}"
        lines.append(f"| {c.check_id} | {mark} |")
    n_fail = sum(not c.ok for c in checks)
    lines.append("")
    lines.append(f"{len(checks)} checks, {len(checks) - n_fail} passed, {n_fail} failed")
    return "\n".join(lines)


def _rows_to_output(header, rows, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(
            [dict(zip(header, jsonable(list(r)))) for r in rows], indent=2
        )
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf)
        writer.writerow(header)
        for r in rows:
            writer.writerow(jsonable(list(r)))
        return buf.getvalue().rstrip("\n")
    widths = [
        max(len(str(h)), *(len(str(jsonable(r[i]))) for r in rows)) if rows else len(str(h))
        for i, h in enumerate(header)
    ]
    out = [
        "| " + " | ".join(str(h).ljust(w) for h, w in zip(header, widths)) + " |",
        "|" + "|".join("-" * (w + 2) for w in widths) + "|",
    ]
    for r in rows:
        out.append(
            "| "
            + " | ".join(
                str(jsonable(v)).ljust(w) for v, w in zip(r, widths)
            )
            + " |"
        )
    return "\n".join(out)


# ------------------------------------------------------------- commands


def cmd_socle(args) -> int:
    try:
        d = tuple(int(x) for x in args.d.split(","))
        query = SocleQuery(args.g, d)
    except (ValueError, DimensionError) as exc:
        print(f"soclecalc socle: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    result = socle_compute(query, args.method)
    payload = {
        "g": query.g,
        "d": list(query.d),
        "method": args.method,
        "value": format_rational(result.value),
    }
    if result.faber_value is not None:
        payload["faber"] = format_rational(result.faber_value)
    if result.necklace_value is not None:
        payload["necklace"] = format_rational(result.necklace_value)
    if result.agree is not None:
        payload["agree"] = result.agree
    if args.format == "json":
        print(json.dumps(payload, indent=2))
    elif args.format == "csv":
        keys = list(payload)
        buf = io.StringIO()
        writer = csv.writer(buf)
        writer.writerow(keys)
        writer.writerow([payload[k] for k in keys])
        print(buf.getvalue().rstrip("\n"))
    else:
        if args.method == "both":
            print(f"faber    = {format_rational(result.faber_value)}")
            print(f"necklace = {format_rational(result.necklace_value)}")
            print(f"agree    = {'yes' if result.agree else 'NO'}")
        else:
            print(format_rational(result.value))
    if result.agree is False:
        return EXIT_DISAGREE
    return EXIT_OK


def cmd_verify(args) -> int:
    cfg = RunConfig(
        q_order=args.q_order,
        w_order=args.w_order,
        g_max=args.g_max,
        fmt=args.format,
        seed=args.seed,
    )
    names = SUITES if args.suite == "all" else (args.suite,)
    checks = run_suites(names, args)
    config = asdict(cfg) | {"m_max": args.m_max, "samples": args.samples}
    print(render_report(args.suite, checks, cfg.fmt, config))
    return EXIT_OK if all(c.ok for c in checks) else EXIT_DISAGREE


def cmd_table(args) -> int:
    if args.kind == "socle":
        header = ["g", "d", "faber", "necklace", "equal"]
        rows = []
        for q in iter_socle_queries(args.g_max, args.n_max):
            r = socle_compute(q, "both")
            rows.append(
                (
                    q.g,
                    ",".join(str(x) for x in q.d),
                    r.faber_value,
                    r.necklace_value,
                    r.agree,
                )
            )
    elif args.kind == "dr":
        header = ["g", "a1", "a2", "value"]
        rows = [
            (g, a1, a2, dr3_closed(g, a1, a2))
            for g in range(0, args.g_max + 1)
            for a1 in range(-args.a_max, args.a_max + 1)
            for a2 in range(-args.a_max, args.a_max + 1)
        ]
    else:
        try:
            ks = [int(x) for x in args.k.split(",")]
        except ValueError:
            print("soclecalc table: error: bad --k list", file=sys.stderr)
            return EXIT_USAGE
        header = ["k", "n", "coefficient"]
        rows = [
            (k, n, eisenstein(k, args.order).coeffs[n])
            for k in ks
            for n in range(args.order + 1)
        ]
    print(_rows_to_output(header, rows, args.format))
    return EXIT_OK


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "socle":
            return cmd_socle(args)
        if args.command == "verify":
            return cmd_verify(args)
        return cmd_table(args)
    except (ValueError, DimensionError) as exc:
        print(f"soclecalc: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def entry() -> None:
    raise SystemExit(main())


if __name__ == "__main__":
    entry()
