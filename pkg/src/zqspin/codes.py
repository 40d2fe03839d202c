"""The cut code of an oriented graph over Z_q and its annihilator, the cycle code.

The cut code is the additive span of the incidence rows mod q, equivalently
the set of edge-difference vectors ``s[head] - s[tail]`` of vertex potentials.
It stands in for the stabilizer state: a uniform superposition over the cut
code is never built, only the code itself.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Iterator

import numpy as np

from .errors import DimensionMismatch, DisconnectedGraph, InputError
from .graph import OrientedGraph, fundamental_cycles, incidence_matrix, is_connected, spanning_tree

CUT = "cut"
CYCLE = "cycle"


def as_zq(v, q: int) -> np.ndarray:
    """Reduce an integer vector mod q (entries end up in 0..q-1)."""
    return np.mod(np.asarray(v, dtype=np.int64), q)


@dataclass(frozen=True, eq=False)
class CodeOverZq:
    """A graphic code over Z_q.

    ``generators`` span the code; ``basis`` is an independent subset whose
    Z_q-combinations list every codeword exactly once.  ``checks`` span the
    complementary code and define membership by orthogonality.
    """

    q: int
    kind: str
    graph: OrientedGraph
    generators: np.ndarray
    basis: np.ndarray
    checks: np.ndarray

    @property
    def length(self) -> int:
        return self.graph.num_edges

    @property
    def dimension(self) -> int:
        return self.basis.shape[0]

    @property
    def cardinality(self) -> int:
        return self.q**self.dimension

    def __contains__(self, v) -> bool:
        return contains(self, v)


def _require_connected(g: OrientedGraph):
    if not is_connected(g):
        raise DisconnectedGraph("codes are defined for connected graphs only")


def _cycle_vectors(g: OrientedGraph) -> np.ndarray:
    cycles = fundamental_cycles(g, spanning_tree(g))
    return np.array(cycles, dtype=np.int64).reshape(len(cycles), g.num_edges)


def cut_code(g: OrientedGraph, q: int) -> CodeOverZq:
    if q < 2:
        raise InputError("modulus q must be at least 2")
    _require_connected(g)
    rows = as_zq(incidence_matrix(g), q)
    # rows of all vertices but the last are independent for a connected graph
    return CodeOverZq(q, CUT, g, rows, rows[:-1], as_zq(_cycle_vectors(g), q))


def cycle_code(g: OrientedGraph, q: int) -> CodeOverZq:
    if q < 2:
        raise InputError("modulus q must be at least 2")
    _require_connected(g)
    cycles = as_zq(_cycle_vectors(g), q)
    return CodeOverZq(q, CYCLE, g, cycles, cycles, as_zq(incidence_matrix(g), q))


def complement(c: CodeOverZq) -> CodeOverZq:
    return cycle_code(c.graph, c.q) if c.kind == CUT else cut_code(c.graph, c.q)


def enumerate_codewords(c: CodeOverZq, g: OrientedGraph | None = None) -> Iterator[np.ndarray]:
    """Yield every codeword once in a deterministic order.

    Cut codewords come from vertex potentials with the last vertex pinned to
    zero, vertex n-2 varying fastest.  Cycle codewords are combinations of the
    fundamental cycles, the last cycle varying fastest.
    """
    g = c.graph if g is None else g
    q = c.q
    if c.kind == CUT:
        heads, tails = g.heads, g.tails
        for free in product(range(q), repeat=g.n - 1):
            s = np.array(free + (0,), dtype=np.int64)
            yield np.mod(s[heads] - s[tails], q)
    else:
        for coeffs in product(range(q), repeat=c.dimension):
            yield np.mod(np.asarray(coeffs, dtype=np.int64) @ c.basis, q) if c.dimension else np.zeros(
                c.length, dtype=np.int64
            )


def contains(c: CodeOverZq, v) -> bool:
    """Membership by orthogonality to the complementary code's generators."""
    v = np.asarray(v, dtype=np.int64)
    if v.shape != (c.length,):
        raise DimensionMismatch(f"vector of shape {v.shape} vs code length {c.length}")
    if np.any((v < 0) | (v >= c.q)):
        raise DimensionMismatch(f"vector entries must lie in 0..{c.q - 1}")
    if c.checks.shape[0] == 0:
        return True
    return not np.any(np.mod(c.checks @ v, c.q))


def stabilizer_generators(g: OrientedGraph, q: int) -> list[tuple[np.ndarray, np.ndarray]]:
    """X-type pairs ``(row, 0)`` per vertex, then Z-type pairs ``(0, cycle)`` per fundamental cycle."""
    cut = cut_code(g, q)
    cyc = cycle_code(g, q)
    zero = np.zeros(g.num_edges, dtype=np.int64)
    pairs = [(row.copy(), zero.copy()) for row in cut.generators]
    pairs += [(zero.copy(), cycle.copy()) for cycle in cyc.generators]
    return pairs


def to_digits(v) -> str:
    """Codeword as a base-q digit string (digits above 9 use letters)."""
    return "".join("0123456789abcdefghijklmnopqrstuvwxyz"[int(x)] for x in v)
