"""Command-line interface.

Exit codes: 0 success, 1 usage or parse error, 2 verification failure,
3 period recovery exhausted.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys

from . import orientation as orient
from .cube import format_set, full_mask, parse_mask
from .orientation import Outmap
from .period import naive_walk_count, orbit_period, sink_via_period
from .qpf import QpfConfig, RecoveryExhausted, find_sink
from .solvers import (
    CountingOutmap,
    StepCapExceeded,
    brute_decision,
    counted_scan,
    period_decision,
    random_edge_walk,
    solve_by_facet_decision,
)
from .verifier import VERIFY_CAP, enumerate_usos, global_sink, is_bijection, is_orientation, is_uso

EXIT_OK, EXIT_USAGE, EXIT_VERIFY, EXIT_QPF = 0, 1, 2, 3

METHODS = ("scan", "period", "qpf", "facet", "random-edge")
BENCH_METHODS = ("scan", "naive-walk", "period", "qpf", "facet", "random-edge")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


class Report:
    """Ordered key/value report printed as ``key=value`` lines or one JSON object."""

    def __init__(self):
        self.items: dict[str, object] = {}

    def add(self, key, value):
        self.items[key] = value

    def mask(self, key, value):
        if value is None:
            self.items[key] = None
            self.items[key + "_set"] = None
        else:
            self.items[key] = int(value)
            self.items[key + "_set"] = format_set(int(value))

    def emit(self, as_json: bool, out=None):
        out = out or sys.stdout
        if as_json:
            out.write(json.dumps(self.items) + "\n")
            return
        for key, value in self.items.items():
            if isinstance(value, bool):
                value = str(value).lower()
            elif isinstance(value, (list, tuple)):
                value = ",".join(map(str, value))
            elif value is None:
                value = "absent"
            out.write(f"{key}={value}\n")


def _load(path: str) -> Outmap:
    try:
        if path == "-":
            return orient.deserialize(sys.stdin.read())
        return orient.load(path)
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc}") from None
    except ValueError as exc:
        raise UsageError(f"{path}: {exc}") from None


def _write(text: str, path: str | None):
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w") as fh:
            fh.write(text)


def _int_range(text: str) -> list[int]:
    for sep in ("..", "-", ":"):
        if sep in text:
            lo, hi = text.split(sep, 1)
            return list(range(int(lo), int(hi) + 1))
    return [int(tok) for tok in text.split(",")]


# -- generators shared by gen and bench --------------------------------------


def build_family(family: str, n: int, a: int | None = None, seed: int | None = None) -> Outmap:
    if family == "psi":
        return orient.psi(n)
    if family == "uniform":
        return orient.uniform(n, full_mask(n) if a is None else a)
    if family == "random":
        if seed is None:
            raise UsageError("family random requires --seed")
        return orient.random_uso(n, seed)
    raise UsageError(f"unknown family {family!r}")


def cmd_gen(args) -> int:
    family = args.family
    if family == "product":
        if not (args.lower and args.upper and args.dir):
            raise UsageError("family product requires --lower, --upper and --dir")
        m = orient.combine(_load(args.lower), _load(args.upper), args.dir)
    else:
        if args.n is None:
            raise UsageError(f"family {family} requires --n")
        if family == "uniform" and args.a is None:
            raise UsageError("family uniform requires --a")
        a = parse_mask(args.a) if args.a is not None else None
        try:
            m = build_family(family, args.n, a, args.seed)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
    _write(orient.serialize(m), args.out)
    return EXIT_OK


def cmd_verify(args) -> int:
    m = _load(args.input)
    if m.n > VERIFY_CAP:
        raise UsageError(f"verification is capped at n <= {VERIFY_CAP}, file has n={m.n}")
    rep = Report()
    rep.add("n", m.n)
    oriented = is_orientation(m)
    uso = oriented and is_uso(m)
    rep.add("orientation", oriented)
    rep.add("uso", uso)
    rep.add("bijection", is_bijection(m))
    rep.mask("sink", global_sink(m) if uso else None)
    rep.emit(args.json)
    return EXIT_OK if uso else EXIT_VERIFY


def cmd_period(args) -> int:
    m = _load(args.input)
    start = parse_mask(args.start)
    if start > full_mask(m.n):
        raise UsageError(f"start {start} is not a vertex of the {m.n}-cube")
    if not is_bijection(m):
        sys.stderr.write("outmap is not a bijection; no period\n")
        return EXIT_VERIFY
    res = orbit_period(m, start)
    rep = Report()
    rep.add("n", m.n)
    rep.mask("start", start)
    rep.add("period", res.period)
    if start == 0:
        rep.mask("sink", res.sink_candidate)
        rep.add("sink_valid", m.eval(res.sink_candidate) == 0)
    if args.orbit:
        rep.add("orbit", list(res.orbit))
    rep.emit(args.json)
    return EXIT_OK


def _qpf_config(args) -> QpfConfig:
    return QpfConfig(t=args.t, samples=args.samples, seed=args.seed, mode=args.mode, attempts=args.attempts)


def solve(m: Outmap, method: str, seed: int = 0, cfg: QpfConfig | None = None, start: int = 0) -> dict:
    """Run one solver and return its report fields (sink plus cost counters)."""
    out: dict[str, object] = {"method": method}
    if method == "scan":
        oracle = CountingOutmap(m)
        out["sink"] = counted_scan(oracle)
        out["queries"] = oracle.count
    elif method == "period":
        oracle = CountingOutmap(m)
        out["period"] = naive_walk_count(oracle)
        out["sink"] = sink_via_period(m)
        out["queries"] = oracle.count
    elif method == "qpf":
        cfg = cfg or QpfConfig(seed=seed)
        search = find_sink(m, cfg)
        last = search.attempts[-1]
        out["sink"] = search.sink
        out["t"] = last.t
        out["recovered_period"] = last.recovered_period
        out["measured"] = last.measured
        out["candidates"] = last.candidates
        out["attempts"] = len(search.attempts)
        out["oracle_calls"] = search.oracle_calls
        out["validation_calls"] = search.validation_calls
        out["queries"] = search.oracle_calls + search.validation_calls
    elif method == "facet":
        res = solve_by_facet_decision(m, brute_decision(m) if m.n <= VERIFY_CAP else period_decision(m))
        out["sink"] = res.sink
        out["decision_calls"] = res.decision_calls
    elif method == "random-edge":
        sink, counter = random_edge_walk(m, start, seed)
        out["sink"] = sink
        out["queries"] = counter.count
    else:
        raise UsageError(f"unknown method {method!r}")
    return out


def cmd_solve(args) -> int:
    m = _load(args.input)
    if m.n <= VERIFY_CAP:
        if not is_uso(m):
            sys.stderr.write("input is not a unique sink orientation\n")
            return EXIT_VERIFY
    else:
        sys.stderr.write(f"warning: n={m.n} > {VERIFY_CAP}, skipping USO verification\n")
    cfg = _qpf_config(args)
    try:
        fields = solve(m, args.method, seed=args.seed, cfg=cfg, start=parse_mask(args.start))
    except RecoveryExhausted as exc:
        sys.stderr.write(f"qpf: {exc}\n")
        return EXIT_QPF
    except StepCapExceeded as exc:
        sys.stderr.write(f"random-edge: {exc}\n")
        return EXIT_VERIFY
    rep = Report()
    rep.add("n", m.n)
    rep.add("method", fields.pop("method"))
    rep.mask("sink", fields.pop("sink"))
    for key, value in fields.items():
        rep.add(key, value)
    rep.emit(args.json)
    return EXIT_OK


def cmd_enum(args) -> int:
    if not 0 <= args.n <= 3:
        raise UsageError("enumeration supports 0 <= n <= 3")
    rep = Report()
    rep.add("n", args.n)
    rep.add("orientations", 2 ** (args.n << (args.n - 1)) if args.n else 1)
    rep.add("usos", sum(1 for _ in enumerate_usos(args.n)))
    rep.emit(args.json)
    return EXIT_OK


def bench_rows(family: str, dims: list[int], methods: list[str], seeds: list[int],
               a: int | None = None, t: int | None = None, samples: int = 20, attempts: int = 1):
    """One row per (n, seed): reference sink and period plus per-method sink and cost."""
    for n in dims:
        for seed in seeds:
            m = build_family(family, n, a, seed)
            ref = orbit_period(m, 0)
            row = {"family": family, "n": n, "seed": seed, "period": ref.period}
            for method in methods:
                if method == "naive-walk":
                    oracle = CountingOutmap(m)
                    row["naive-walk_queries"] = naive_walk_count(oracle)
                    row["naive-walk_sink"] = ref.sink_candidate
                    continue
                cfg = QpfConfig(t=t, samples=samples, seed=seed, attempts=attempts)
                try:
                    fields = solve(m, method, seed=seed, cfg=cfg)
                except RecoveryExhausted:
                    fields = {"sink": None, "queries": None}
                row[f"{method}_sink"] = fields.get("sink")
                if method == "facet":
                    row["facet_queries"] = fields["decision_calls"]
                else:
                    row[f"{method}_queries"] = fields.get("queries")
                if method == "qpf":
                    row["qpf_oracle_calls"] = fields.get("oracle_calls")
                    row["qpf_validation_calls"] = fields.get("validation_calls")
                    row["qpf_period"] = fields.get("recovered_period")
            yield row


def cmd_bench(args) -> int:
    methods = [s.strip() for s in args.methods.split(",") if s.strip()]
    for method in methods:
        if method not in BENCH_METHODS:
            raise UsageError(f"unknown bench method {method!r}")
    dims = _int_range(args.n_range)
    seeds = _int_range(args.seeds)
    a = parse_mask(args.a) if args.a is not None else None
    rows = list(bench_rows(args.family, dims, methods, seeds, a=a, t=args.t, samples=args.samples,
                           attempts=args.attempts))
    buf = io.StringIO()
    fieldnames = list(rows[0]) if rows else ["family", "n", "seed", "period"]
    writer = csv.DictWriter(buf, fieldnames=fieldnames, lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow({k: ("" if v is None else v) for k, v in row.items()})
    _write(buf.getvalue(), args.csv)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="usoq", description="Unique sink orientations and simulated period finding.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    g = sub.add_parser("gen", help="generate an outmap file")
    g.add_argument("--family", required=True, choices=["uniform", "psi", "product", "random"])
    g.add_argument("--n", type=int)
    g.add_argument("--a", help="sink of the uniform orientation: integer mask or {1,3}")
    g.add_argument("--seed", type=int)
    g.add_argument("--lower")
    g.add_argument("--upper")
    g.add_argument("--dir", choices=["up", "down"])
    g.add_argument("--out", "-o")
    g.set_defaults(func=cmd_gen)

    v = sub.add_parser("verify", help="check orientation, USO and bijection properties")
    v.add_argument("input")
    v.add_argument("--json", action="store_true")
    v.set_defaults(func=cmd_verify)

    pr = sub.add_parser("period", help="period of an orbit of the outmap")
    pr.add_argument("input")
    pr.add_argument("--start", default="0")
    pr.add_argument("--orbit", action="store_true", help="also print the orbit")
    pr.add_argument("--json", action="store_true")
    pr.set_defaults(func=cmd_period)

    s = sub.add_parser("solve", help="find the global sink")
    s.add_argument("input")
    s.add_argument("--method", choices=METHODS, default="scan")
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--t", type=int, default=None)
    s.add_argument("--samples", type=int, default=20)
    s.add_argument("--attempts", type=int, default=3)
    s.add_argument("--mode", choices=["analytic", "statevector"], default="analytic")
    s.add_argument("--start", default="0", help="start vertex for random-edge")
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=cmd_solve)

    e = sub.add_parser("enum", help="count USOs by exhaustive enumeration")
    e.add_argument("--n", type=int, required=True)
    e.add_argument("--json", action="store_true")
    e.set_defaults(func=cmd_enum)

    b = sub.add_parser("bench", help="query-count comparison across methods")
    b.add_argument("--family", required=True, choices=["uniform", "psi", "random"])
    b.add_argument("--n-range", required=True, help="e.g. 1..12 or 3,5,8")
    b.add_argument("--methods", default="scan,naive-walk,qpf")
    b.add_argument("--seeds", default="0", help="e.g. 0..9 or 1,2,3")
    b.add_argument("--a", help="uniform family sink (default: the full set)")
    b.add_argument("--t", type=int, default=None)
    b.add_argument("--samples", type=int, default=20)
    b.add_argument("--attempts", type=int, default=1)
    b.add_argument("--csv")
    b.set_defaults(func=cmd_bench)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    try:
        return args.func(args)
    except UsageError as exc:
        sys.stderr.write(f"usoq: {exc}\n")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
