"""Compare the compiled and numpy kernels on the three hot loops.

    python benchmarks/bench_kernels.py [--repeat 5] [--json out.json]

Each case is timed on every available backend (best of ``--repeat``) and the
results are checked against each other before timings are reported.
"""

import argparse
import json
import time

import numpy as np

from zqspin import kernels
from zqspin.engines import treewidth_contract
from zqspin.generators import grid_graph, random_connected_multigraph
from zqspin.model import boltzmann_weights, general, potts
from zqspin.scaled import relative_error


def _best(fn, repeat):
    best, result = float("inf"), None
    for _ in range(repeat):
        t = time.perf_counter()
        result = fn()
        best = min(best, time.perf_counter() - t)
    return best, result


def cases(rng):
    g = random_connected_multigraph(rng, 9, 14)
    w = boltzmann_weights(general(4, rng.uniform(-2, 2, (14, 4)), 0.5)).weights
    yield "configuration_sum n=9 q=4", lambda mod: mod.configuration_sum(g.n, 4, g.heads, g.tails, w)
    yield "codeword_sum n=9 q=4", lambda mod: mod.codeword_sum(g.n, 4, g.heads, g.tails, w)
    strip = grid_graph(4, 50, embed=False)
    m = potts(3, 1.0, 0.4, num_edges=strip.num_edges)
    yield "contract 4x50 strip q=3", lambda mod: treewidth_contract(strip, m, backend=mod).value.to_complex()
    square = grid_graph(6, 6, embed=False)
    m5 = potts(5, 1.0, 0.4, num_edges=square.num_edges)
    yield "contract 6x6 grid q=5", lambda mod: treewidth_contract(square, m5, backend=mod).value.to_complex()


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=5)
    parser.add_argument("--json", help="also write results to this file")
    args = parser.parse_args(argv)

    mods = kernels.backends()
    if "compiled" not in mods:
        print("compiled extension not available; timing the numpy kernels only")
    rows = []
    print(f"{'case':28s}" + "".join(f"{name:>12s}" for name in mods) + f"{'speedup':>10s}")
    for label, run in cases(np.random.default_rng(7)):
        times, values = {}, {}
        for name, mod in mods.items():
            times[name], values[name] = _best(lambda: run(mod), args.repeat)
        ref = values["python"]
        agree = all(relative_error(v, ref) < 1e-12 for v in values.values())
        speedup = times["python"] / times["compiled"] if "compiled" in times else None
        rows.append({"case": label, "seconds": times, "speedup": speedup, "agree": agree})
        line = f"{label:28s}" + "".join(f"{times[n]:12.4f}" for n in mods)
        line += f"{speedup:9.1f}x" if speedup else f"{'-':>10s}"
        print(line + ("" if agree else "  MISMATCH"))
    if args.json:
        with open(args.json, "w") as fh:
            json.dump(rows, fh, indent=2)
    return 0 if all(r["agree"] for r in rows) else 1


if __name__ == "__main__":
    raise SystemExit(main())
