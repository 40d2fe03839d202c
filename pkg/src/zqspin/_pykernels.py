"""Pure numpy implementations of the hot loops.

Each function has the same signature and result as its counterpart in the
compiled ``_ckernels`` module; ``zqspin.kernels`` picks one at import time.
"""

from __future__ import annotations

import math

import numpy as np

_CHUNK = 1 << 16


def _digits(start: int, stop: int, width: int, q: int) -> np.ndarray:
    """Base-q digits of ``start..stop-1``, most significant first."""
    idx = np.arange(start, stop, dtype=np.int64)
    out = np.empty((idx.size, width), dtype=np.int64)
    for p in range(width - 1, -1, -1):
        out[:, p] = idx % q
        idx //= q
    return out


def _exact_sum(parts) -> complex:
    return complex(math.fsum(z.real for z in parts), math.fsum(z.imag for z in parts))


def configuration_sum(n, q, heads, tails, weights):
    """Sum over all q**n spin assignments of prod_e weights[e, (s[h]-s[t]) % q]."""
    heads = np.asarray(heads, dtype=np.int64)
    tails = np.asarray(tails, dtype=np.int64)
    weights = np.asarray(weights, dtype=np.complex128)
    total = q**n
    edges = np.arange(heads.size)
    parts = []
    for start in range(0, total, _CHUNK):
        s = _digits(start, min(start + _CHUNK, total), n, q)
        diff = np.mod(s[:, heads] - s[:, tails], q)
        parts.append(np.prod(weights[edges, diff], axis=1).sum())
    return _exact_sum(parts)


def codeword_sum(n, q, heads, tails, weights):
    """Sum over cut codewords (potentials with vertex 0 pinned) of prod_e weights[e, c_e]."""
    heads = np.asarray(heads, dtype=np.int64)
    tails = np.asarray(tails, dtype=np.int64)
    weights = np.asarray(weights, dtype=np.complex128)
    total = q ** (n - 1)
    edges = np.arange(heads.size)
    parts = []
    for start in range(0, total, _CHUNK):
        free = _digits(start, min(start + _CHUNK, total), n - 1, q)
        s = np.concatenate([np.zeros((free.shape[0], 1), dtype=np.int64), free], axis=1)
        words = np.mod(s[:, heads] - s[:, tails], q)
        parts.append(np.prod(weights[edges, words], axis=1).sum())
    return _exact_sum(parts)


def contract_node(q, k, edge_a, edge_b, edge_rows, children, out_positions):
    """Message of one decomposition node.

    The node's table over its ``k`` bag positions is the product of the edge
    factors ``edge_rows[i][(x[a]-x[b]) % q]`` and of the child tables (each a
    flat C-order array over the listed bag positions); positions not in
    ``out_positions`` are summed out.  Returns a flat C-order array over
    ``out_positions``.
    """
    operands = []
    covered = set()
    if len(edge_a):
        diff = np.mod(np.arange(q)[:, None] - np.arange(q)[None, :], q)
        for a, b, row in zip(edge_a, edge_b, np.asarray(edge_rows, dtype=np.complex128)):
            operands += [row[diff], [int(a), int(b)]]
            covered.update((int(a), int(b)))
    for table, positions in children:
        positions = [int(p) for p in positions]
        operands += [np.asarray(table, dtype=np.complex128).reshape((q,) * len(positions)), positions]
        covered.update(positions)
    missing = [p for p in range(k) if p not in covered]
    if missing:
        operands += [np.ones((q,) * len(missing), dtype=np.complex128), missing]
    out = [int(p) for p in out_positions]
    result = np.einsum(*operands, out, optimize="greedy")
    return np.ascontiguousarray(result, dtype=np.complex128).reshape(-1)
