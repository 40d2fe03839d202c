"""Partition-function evaluators.

Every engine returns an ``EvalReport`` whose value is a ``ScaledValue``.  The
brute-force sum over spin assignments is the oracle the others are checked
against.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

import numpy as np

from . import kernels
from .codes import CUT, CodeOverZq
from .errors import (
    DimensionMismatch,
    DisconnectedGraph,
    InputError,
    NotACoherentCycle,
    NotATree,
    TooLarge,
    WidthTooLarge,
)
from .graph import OrientedGraph, TreeDecomposition, components, is_connected, subgraph, tree_decomposition
from .model import InteractionTable, WeightTable, as_weights
from .scaled import ScaledValue, scaled_product

BRUTE_FORCE_LOG2_LIMIT = 40.0
DEFAULT_MEMORY_BUDGET = 1 << 28
AUTO_CONTRACT_MAX_WIDTH = 12


@dataclass(frozen=True)
class EvalReport:
    value: ScaledValue
    method: str
    cost: int
    width: int | None = None
    extra: dict = field(default_factory=dict, compare=False)

    def to_json(self) -> dict:
        out = {"value": self.value.to_json(), "method": self.method, "cost": self.cost, "width": self.width}
        out.update(self.extra)
        return out


def _weights_for(g: OrientedGraph, m: InteractionTable | WeightTable) -> WeightTable:
    w = as_weights(m)
    if w.num_edges != g.num_edges:
        raise DimensionMismatch(f"model has {w.num_edges} edge rows, graph has {g.num_edges} edges")
    return w


def _normalized_rows(weights: np.ndarray) -> tuple[np.ndarray, int]:
    """Scale each row by a power of two so its largest entry is in [0.5, 1).

    Returns the scaled rows and the total exponent removed.  An all-zero row
    is left alone.
    """
    rows = np.array(weights, dtype=np.complex128)
    total = 0
    for e in range(rows.shape[0]):
        peak = float(np.max(np.abs(rows[e]))) if rows.shape[1] else 0.0
        if peak > 0:
            _, k = math.frexp(peak)
            rows[e] = rows[e] * 2.0**-k
            total += k
    return rows, total


def _guard(log2_work: float, what: str, limit: float = BRUTE_FORCE_LOG2_LIMIT):
    if log2_work > limit:
        raise TooLarge(f"{what} needs 2^{log2_work:.1f} terms, above the 2^{limit:g} guard")


def brute_force_partition(
    g: OrientedGraph, m: InteractionTable | WeightTable, log2_limit: float = BRUTE_FORCE_LOG2_LIMIT
) -> EvalReport:
    """Sum of prod_e w_e((s_head - s_tail) mod q) over all q**n assignments."""
    w = _weights_for(g, m)
    _guard(g.n * math.log2(w.q), "brute force", log2_limit)
    rows, shift = _normalized_rows(w.weights)
    z = kernels.configuration_sum(g.n, w.q, g.heads, g.tails, rows)
    return EvalReport(ScaledValue.of(z, shift), "brute", w.q**g.n)


def codeword_overlap_partition(
    g: OrientedGraph, m: InteractionTable | WeightTable, log2_limit: float = BRUTE_FORCE_LOG2_LIMIT
) -> EvalReport:
    """q times the sum over cut codewords c of prod_e w_e(c_e)."""
    if not is_connected(g):
        raise DisconnectedGraph("the overlap formula needs a connected graph")
    w = _weights_for(g, m)
    _guard((g.n - 1) * math.log2(w.q), "codeword enumeration", log2_limit)
    rows, shift = _normalized_rows(w.weights)
    z = kernels.codeword_sum(g.n, w.q, g.heads, g.tails, rows)
    return EvalReport(ScaledValue.of(z, shift) * w.q, "overlap", w.q ** (g.n - 1))


# ---------------------------------------------------------------------------
# junction-tree contraction


@dataclass(frozen=True)
class _NodePlan:
    bag: tuple[int, ...]
    edges: tuple[int, ...]
    edge_a: tuple[int, ...]
    edge_b: tuple[int, ...]
    children: tuple[int, ...]
    out_positions: tuple[int, ...]


def _plan(g: OrientedGraph, td: TreeDecomposition) -> tuple[list[_NodePlan], list[int]]:
    """Edge placement and separators for each node; returns plans and self-loop ids."""
    td.validate(g)
    depth = td.depth()
    kids = td.children()
    holders: list[list[int]] = [[] for _ in range(g.n)]
    for i, bag in enumerate(td.bags):
        for v in bag:
            holders[v].append(i)
    placed: list[list[int]] = [[] for _ in td.bags]
    loops = []
    for e, (h, t) in enumerate(g.edges):
        if h == t:
            loops.append(e)
            continue
        both = set(holders[h]).intersection(holders[t])
        placed[min(both, key=lambda i: (depth[i], i))].append(e)
    plans = []
    for i, bag in enumerate(td.bags):
        pos = {v: p for p, v in enumerate(bag)}
        parent = td.parent[i]
        keep = set(td.bags[parent]) if parent >= 0 else set()
        plans.append(
            _NodePlan(
                bag=bag,
                edges=tuple(placed[i]),
                edge_a=tuple(pos[g.edges[e][0]] for e in placed[i]),
                edge_b=tuple(pos[g.edges[e][1]] for e in placed[i]),
                children=tuple(kids[i]),
                out_positions=tuple(p for p, v in enumerate(bag) if v in keep),
            )
        )
    return plans, loops


def treewidth_contract(
    g: OrientedGraph,
    m: InteractionTable | WeightTable,
    td: TreeDecomposition | None = None,
    memory_budget: int = DEFAULT_MEMORY_BUDGET,
    backend=None,
) -> EvalReport:
    """Dynamic program over a rooted tree decomposition.

    Each node multiplies the edge factors placed at it (an edge goes to the
    highest bag holding both endpoints) with its children's messages and sums
    out the vertices that do not appear in its parent.  Messages are rescaled
    by powers of two as they are produced.
    """
    w = _weights_for(g, m)
    q = w.q
    if td is None:
        td = tree_decomposition(g, "min_fill")
    biggest = max(len(b) for b in td.bags)
    if biggest * math.log2(q) > math.log2(memory_budget):
        raise WidthTooLarge(
            f"a bag of {biggest} vertices needs {q}^{biggest} table entries, budget is {memory_budget}"
        )
    contract_node = (backend or kernels).contract_node
    plans, loops = _plan(g, td)
    rows, shift = _normalized_rows(w.weights)
    messages: dict[int, np.ndarray] = {}
    exponent = shift
    cost = 0
    for i in td.postorder():
        plan = plans[i]
        children = []
        for c in plan.children:
            sep = plans[c].out_positions
            sep_vertices = [plans[c].bag[p] for p in sep]
            positions = [plan.bag.index(v) for v in sep_vertices]
            children.append((messages.pop(c), positions))
        edge_rows = rows[list(plan.edges)] if plan.edges else np.zeros((0, q), dtype=np.complex128)
        msg = contract_node(q, len(plan.bag), plan.edge_a, plan.edge_b, edge_rows, children, plan.out_positions)
        cost += q ** len(plan.bag)
        peak = float(np.max(np.abs(msg)))
        if peak > 0:
            _, k = math.frexp(peak)
            msg = msg * 2.0**-k
            exponent += k
        messages[i] = msg
    z = ScaledValue.of(complex(messages[td.root][0]), exponent)
    for e in loops:
        z = z * complex(rows[e, 0])
    return EvalReport(z, "contract", cost, td.width, {"strategy": td.strategy})


# ---------------------------------------------------------------------------
# closed forms


def _is_tree(g: OrientedGraph) -> bool:
    return g.num_edges == g.n - 1 and is_connected(g)


def tree_closed_form(g: OrientedGraph, m: InteractionTable | WeightTable) -> ScaledValue:
    """q * prod_e sum_j w_e(j); the cut code of a tree is all of Z_q^N."""
    if not _is_tree(g):
        raise NotATree("tree_closed_form needs a tree")
    w = _weights_for(g, m)
    return scaled_product(complex(row.sum()) for row in w.weights) * w.q


def _cycle_order(g: OrientedGraph) -> list[int] | None:
    """Edge ids in walking order if g is one coherently oriented cycle."""
    if g.num_edges != g.n or not is_connected(g):
        return None
    out_edge: dict[int, int] = {}
    for e, (h, t) in enumerate(g.edges):
        if t in out_edge:
            return None
        out_edge[t] = e
    order, v = [], 0
    for _ in range(g.n):
        e = out_edge[v]
        order.append(e)
        v = g.edges[e][0]
    return order if v == 0 and len(set(order)) == g.n else None


def is_coherent_cycle(g: OrientedGraph) -> bool:
    return _cycle_order(g) is not None


def cycle_closed_form(g: OrientedGraph, m: InteractionTable | WeightTable) -> ScaledValue:
    """sum_k prod_e lambda_e(k), lambda_e(k) = sum_j omega**(k j) w_e(j).

    The transfer matrix of each edge is circulant, so all of them share the
    Fourier eigenbasis and the trace of their product is this sum.
    """
    if _cycle_order(g) is None:
        raise NotACoherentCycle("cycle_closed_form needs a single coherently oriented cycle")
    w = _weights_for(g, m)
    q = w.q
    if q == 2:
        plus = scaled_product(complex(a + b) for a, b in w.weights)
        minus = scaled_product(complex(a - b) for a, b in w.weights)
        return plus + minus
    omega = np.exp(2j * np.pi * np.outer(np.arange(q), np.arange(q)) / q)
    eig = w.weights @ omega.T  # eig[e, k] = sum_j w_e(j) omega^(k j)
    total = ScaledValue.zero()
    for k in range(q):
        total = total + scaled_product(complex(x) for x in eig[:, k])
    return total


# ---------------------------------------------------------------------------
# weight enumerator


def weight_enumerator(
    c: CodeOverZq, x, memory_budget: int = DEFAULT_MEMORY_BUDGET, log2_limit: float = BRUTE_FORCE_LOG2_LIMIT
) -> ScaledValue:
    """Complete weight enumerator sum_{v in c} prod_e x(v_e) at a point x.

    For the cut code this is Z/q with every edge row equal to x.  For the cycle
    code the MacWilliams identity turns it into the cut-code enumerator at the
    Fourier transform of x, divided by the cut code's size.
    """
    x = np.asarray(x, dtype=np.complex128)
    if x.shape != (c.q,):
        raise DimensionMismatch(f"x must have length q={c.q}")
    g, q = c.graph, c.q
    if c.kind == CUT:
        rows = WeightTable(q, np.tile(x, (g.num_edges, 1)))
        return partition(g, rows, memory_budget=memory_budget, log2_limit=log2_limit).value / q
    omega = np.exp(2j * np.pi * np.outer(np.arange(q), np.arange(q)) / q)
    xhat = omega @ x
    rows = WeightTable(q, np.tile(xhat, (g.num_edges, 1)))
    cut_size = ScaledValue.of(1) * ScaledValue.of(q) ** (g.n - 1)
    z = partition(g, rows, memory_budget=memory_budget, log2_limit=log2_limit).value
    return z / q / cut_size


def weight_enumerator_by_enumeration(c: CodeOverZq, x, log2_limit: float = BRUTE_FORCE_LOG2_LIMIT) -> complex:
    """Direct sum over the codewords; only for small codes."""
    from .codes import enumerate_codewords

    x = np.asarray(x, dtype=np.complex128)
    _guard(c.dimension * math.log2(c.q), "codeword enumeration", log2_limit)
    return complex(sum(np.prod(x[v]) for v in enumerate_codewords(c)))


# ---------------------------------------------------------------------------
# dispatcher

METHODS = ("auto", "brute", "overlap", "contract", "closed")


def _evaluate_component(g, w, method, memory_budget, log2_limit, strategy) -> EvalReport:
    if method == "brute":
        return brute_force_partition(g, w, log2_limit)
    if method == "overlap":
        return codeword_overlap_partition(g, w, log2_limit)
    if method == "contract":
        return treewidth_contract(g, w, tree_decomposition(g, strategy), memory_budget)
    if method == "closed":
        if _is_tree(g):
            return EvalReport(tree_closed_form(g, w), "closed", g.num_edges, 1 if g.num_edges else 0)
        if is_coherent_cycle(g):
            return EvalReport(cycle_closed_form(g, w), "closed", g.num_edges * w.q, 2 if g.n > 2 else 1)
        raise InputError("closed forms exist only for trees and coherently oriented cycles")
    # auto
    if _is_tree(g) or is_coherent_cycle(g):
        return _evaluate_component(g, w, "closed", memory_budget, log2_limit, strategy)
    td = tree_decomposition(g, strategy)
    bag = td.width + 1
    contract_ok = bag <= AUTO_CONTRACT_MAX_WIDTH + 1 and bag * math.log2(w.q) <= math.log2(memory_budget)
    brute_log2 = g.n * math.log2(w.q)
    if contract_ok and not (brute_log2 <= 12 and bag * math.log2(w.q) >= brute_log2 - 1):
        return treewidth_contract(g, w, td, memory_budget)
    if brute_log2 <= log2_limit:
        return brute_force_partition(g, w, log2_limit)
    return treewidth_contract(g, w, td, memory_budget)


def partition(
    g: OrientedGraph,
    m: InteractionTable | WeightTable,
    method: str = "auto",
    memory_budget: int = DEFAULT_MEMORY_BUDGET,
    log2_limit: float = BRUTE_FORCE_LOG2_LIMIT,
    strategy: str = "min_fill",
) -> EvalReport:
    """Evaluate Z with the chosen engine, factorizing over connected components.

    ``auto`` uses a closed form for trees and coherent cycles, contraction when
    the decomposition is narrow, and brute force for tiny dense graphs where
    contraction would not save anything.
    """
    if method not in METHODS:
        raise InputError(f"unknown method {method!r}; choose from {', '.join(METHODS)}")
    w = _weights_for(g, m)
    parts = components(g)
    if len(parts) == 1:
        return _evaluate_component(g, w, method, memory_budget, log2_limit, strategy)
    reports = []
    for vertices, edge_ids in parts:
        sub = subgraph(g, vertices, edge_ids)
        sub_w = WeightTable(w.q, w.weights[list(edge_ids)])
        reports.append(_evaluate_component(sub, sub_w, method, memory_budget, log2_limit, strategy))
    methods = sorted({r.method for r in reports})
    widths = [r.width for r in reports if r.width is not None]
    return EvalReport(
        scaled_product(r.value for r in reports),
        methods[0] if len(methods) == 1 else "+".join(methods),
        sum(r.cost for r in reports),
        max(widths) if widths else None,
        {"components": len(reports)},
    )


def phase_deviation(z: ScaledValue) -> float:
    return abs(cmath.phase(z.mantissa)) if not z.is_zero() else 0.0
