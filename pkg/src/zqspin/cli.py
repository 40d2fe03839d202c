"""Command-line front end.

Exit codes: 0 success, 1 internal invariant failure (including a symmetry
check above tolerance), 2 unreadable or malformed input, 3 infeasible or
rejected computation.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from collections import Counter
from contextlib import contextmanager
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

from . import __version__
from .codes import cut_code, cycle_code, to_digits
from .engines import DEFAULT_MEMORY_BUDGET, METHODS, EvalReport, partition
from .errors import InputError, InvariantError, ZqSpinError
from .graph import tree_decomposition
from .io import (
    graph_to_json,
    load_graph,
    load_model,
    model_from_json,
    model_to_json,
    parse_beta_range,
    read_json,
    write_json,
)
from .model import InteractionTable, as_weights
from .scaled import relative_error
from .transforms import apply_symmetry, dual_model, symmetry_group_sample

CSV_HEADER = ["beta", "value_re_mantissa", "value_im_mantissa", "exponent2", "value_decimal", "method", "width", "cost"]
SYMCHECK_TOLERANCE = 1e-9


class _ParseError(Exception):
    pass


@contextmanager
def _loading():
    """Errors raised while reading inputs are parse errors (exit 2)."""
    try:
        yield
    except ZqSpinError as exc:
        raise _ParseError(f"{type(exc).__name__}: {exc}") from exc


def _report_row(beta, r: EvalReport) -> dict:
    row = {"beta": beta}
    row.update(r.to_json())
    return row


def _dump(data) -> str:
    return json.dumps(data, indent=2, sort_keys=True)


def cmd_partition(args) -> int:
    with _loading():
        g = load_graph(args.graph)
        raw = read_json(args.model)
        betas = parse_beta_range(args.beta_range) if args.beta_range else [args.beta]
        models = [model_from_json(raw, b) for b in betas]

    def run(m):
        return partition(g, m, method=args.method, memory_budget=args.mem_budget)

    # evaluations are independent; output order follows the beta list
    with ThreadPoolExecutor(max_workers=min(len(models), 8)) as pool:
        reports = list(pool.map(run, models))
    shown = [m.beta if isinstance(m, InteractionTable) else None for m in models]
    if args.format == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(CSV_HEADER)
        for b, r in zip(shown, reports):
            v = r.value
            writer.writerow(
                [
                    "" if b is None else repr(b),
                    repr(v.mantissa.real),
                    repr(v.mantissa.imag),
                    v.exponent,
                    v.decimal(),
                    r.method,
                    "" if r.width is None else r.width,
                    r.cost,
                ]
            )
        sys.stdout.write(buf.getvalue())
    else:
        print(_dump({"results": [_report_row(b, r) for b, r in zip(shown, reports)]}))
    return 0


def cmd_dual(args) -> int:
    with _loading():
        g = load_graph(args.graph)
        m = load_model(args.model, args.beta)
    d, wd, cert = dual_model(g, m)
    prefix = Path(args.out)
    prefix.parent.mkdir(parents=True, exist_ok=True)
    paths = {
        "graph": f"{prefix}.graph.json",
        "model": f"{prefix}.model.json",
        "certificate": f"{prefix}.cert.json",
    }
    write_json(paths["graph"], graph_to_json(d))
    write_json(paths["model"], model_to_json(wd))
    write_json(paths["certificate"], cert.to_json())
    out = {"written": paths, "certificate": cert.to_json()}
    if args.verify:
        zg = partition(g, m, method=args.method, memory_budget=args.mem_budget).value
        zd = partition(d, wd, method=args.method, memory_budget=args.mem_budget).value
        out["relative_error"] = relative_error(zd, zg * cert.scale)
        out["primal_value"] = zg.to_json()
        out["dual_value"] = zd.to_json()
    print(_dump(out))
    return 0


def run_symcheck(g, m, elements, method="auto", memory_budget=DEFAULT_MEMORY_BUDGET) -> float:
    """Largest relative change of Z over the given symmetry elements."""
    w = as_weights(m)
    base = partition(g, w, method=method, memory_budget=memory_budget).value
    worst = 0.0
    for s in elements:
        z = partition(g, apply_symmetry(s, w), method=method, memory_budget=memory_budget).value
        worst = max(worst, relative_error(z, base))
    return worst


def cmd_symcheck(args) -> int:
    with _loading():
        g = load_graph(args.graph)
        m = load_model(args.model, args.beta)
    elements = symmetry_group_sample(g, m.q, args.count, args.seed)
    worst = run_symcheck(g, m, elements, args.method, args.mem_budget)
    ok = worst < SYMCHECK_TOLERANCE
    print(_dump({"count": len(elements), "seed": args.seed, "max_relative_deviation": worst, "ok": ok}))
    return 0 if ok else 1


def _q_from_args(args) -> int:
    if args.q is not None:
        return args.q
    if args.model:
        try:
            return int(read_json(args.model)["q"])
        except (KeyError, TypeError, ValueError) as exc:
            raise InputError(f"model has no usable q: {exc}") from exc
    raise InputError("codeinfo needs --q or --model")


def cmd_codeinfo(args) -> int:
    with _loading():
        g = load_graph(args.graph)
        q = _q_from_args(args)
    cut = cut_code(g, q)
    cyc = cycle_code(g, q)
    out = {
        "q": q,
        "n": g.n,
        "num_edges": g.num_edges,
        "cut_code": {
            "cardinality": cut.cardinality,
            "expected_q_pow_n_minus_1": q ** (g.n - 1),
            "matches": cut.cardinality == q ** (g.n - 1),
            "independent_generators": cut.dimension,
            "generators": [to_digits(v) for v in cut.basis],
        },
        "cycle_code": {
            "cardinality": cyc.cardinality,
            "independent_generators": cyc.dimension,
            "generators": [to_digits(v) for v in cyc.basis],
            "trivial": cyc.dimension == 0,
        },
        "product_equals_q_pow_N": cut.cardinality * cyc.cardinality == q**g.num_edges,
    }
    print(_dump(out))
    return 0


def cmd_tdinfo(args) -> int:
    with _loading():
        g = load_graph(args.graph)
    td = tree_decomposition(g, args.strategy)
    td.validate(g)
    hist = Counter(len(b) for b in td.bags)
    print(
        _dump(
            {
                "strategy": args.strategy,
                "width": td.width,
                "bags": len(td.bags),
                "bag_size_histogram": {str(k): hist[k] for k in sorted(hist)},
            }
        )
    )
    return 0


def _positive_float(text):
    value = float(text)
    if not value > 0:
        raise argparse.ArgumentTypeError("must be positive")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="zqspin", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, model=True):
        p.add_argument("--graph", required=True, help="graph JSON file")
        if model:
            p.add_argument("--model", required=True, help="model JSON file")
            p.add_argument("--beta", type=_positive_float, help="override the model's inverse temperature")
            p.add_argument("--method", choices=METHODS, default="auto")
            p.add_argument("--mem-budget", type=int, default=DEFAULT_MEMORY_BUDGET, help="max table entries")

    p = sub.add_parser("partition", help="evaluate the partition function")
    common(p)
    p.add_argument("--beta-range", help="start:stop:steps sweep")
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--seed", type=int, default=0, help="accepted for consistency with symcheck; unused")
    p.set_defaults(func=cmd_partition)

    p = sub.add_parser("dual", help="write the planar dual model")
    common(p)
    p.add_argument("--out", default="dual", help="output path prefix")
    p.add_argument("--verify", action="store_true", help="evaluate both sides and report the error")
    p.set_defaults(func=cmd_dual)

    p = sub.add_parser("symcheck", help="check invariance of Z under sampled stabilizer symmetries")
    common(p)
    p.add_argument("--count", type=int, default=50)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_symcheck)

    p = sub.add_parser("codeinfo", help="describe the cut and cycle codes")
    common(p, model=False)
    p.add_argument("--model", help="model JSON (only q is read)")
    p.add_argument("--q", type=int)
    p.set_defaults(func=cmd_codeinfo)

    p = sub.add_parser("tdinfo", help="describe a tree decomposition")
    common(p, model=False)
    p.add_argument("--strategy", choices=("min_fill", "min_degree", "exact_small"), default="min_fill")
    p.set_defaults(func=cmd_tdinfo)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except InvariantError as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return 1
    except _ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return 2
    except ZqSpinError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
