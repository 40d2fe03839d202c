"""Edge Hamiltonians and Boltzmann weight tables.

An edge term depends only on ``(s[head] - s[tail]) mod q``, so a model is one
row of q energies per edge plus an inverse temperature.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import DimensionMismatch, InputError


def _rows(values, q: int, dtype) -> np.ndarray:
    arr = np.array(values, dtype=dtype)
    if arr.size == 0:
        arr = arr.reshape(0, q)
    if arr.ndim != 2 or arr.shape[1] != q:
        raise DimensionMismatch(f"expected rows of length q={q}, got shape {arr.shape}")
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class InteractionTable:
    q: int
    beta: float
    energies: np.ndarray

    def __post_init__(self):
        if self.q < 2:
            raise InputError("modulus q must be at least 2")
        if not self.beta > 0:
            raise InputError("beta must be positive")
        rows = _rows(self.energies, self.q, np.float64)
        if not np.all(np.isfinite(rows)):
            raise InputError("energies must be finite")
        object.__setattr__(self, "energies", rows)

    @property
    def num_edges(self) -> int:
        return self.energies.shape[0]

    def with_beta(self, beta: float) -> "InteractionTable":
        return InteractionTable(self.q, beta, self.energies)


@dataclass(frozen=True, eq=False)
class WeightTable:
    """Per-edge weight rows ``w_e(j)``; complex after Fourier or symmetry maps."""

    q: int
    weights: np.ndarray

    def __post_init__(self):
        if self.q < 2:
            raise InputError("modulus q must be at least 2")
        object.__setattr__(self, "weights", _rows(self.weights, self.q, np.complex128))

    @property
    def num_edges(self) -> int:
        return self.weights.shape[0]

    @property
    def is_real(self) -> bool:
        return not np.any(self.weights.imag)


def boltzmann_weights(t: InteractionTable) -> WeightTable:
    return WeightTable(t.q, np.exp(-t.beta * t.energies))


def as_weights(m: InteractionTable | WeightTable) -> WeightTable:
    return m if isinstance(m, WeightTable) else boltzmann_weights(m)


def _couplings(J, num_edges: int | None) -> np.ndarray:
    J = np.atleast_1d(np.asarray(J, dtype=np.float64))
    if num_edges is not None and J.size == 1:
        J = np.full(num_edges, J[0])
    return J


def potts(q: int, J: Sequence[float] | float, beta: float = 1.0, num_edges: int | None = None) -> InteractionTable:
    """h_e(0) = -J_e and h_e(j) = 0 otherwise."""
    J = _couplings(J, num_edges)
    h = np.zeros((J.size, q))
    h[:, 0] = -J
    return InteractionTable(q, beta, h)


def ising(J: Sequence[float] | float, beta: float = 1.0, num_edges: int | None = None) -> InteractionTable:
    """q = 2 with the +-J convention: h(0) = -J, h(1) = +J."""
    J = _couplings(J, num_edges)
    return InteractionTable(2, beta, np.stack([-J, J], axis=1))


def clock(q: int, J: Sequence[float] | float, beta: float = 1.0, num_edges: int | None = None) -> InteractionTable:
    """h_e(j) = -J_e cos(2 pi j / q)."""
    J = _couplings(J, num_edges)
    h = -np.outer(J, np.cos(2 * np.pi * np.arange(q) / q))
    # cos(pi/2) and friends are not exactly zero in floating point
    h[np.abs(h) < 1e-15 * np.maximum(1.0, np.abs(J)[:, None])] = 0.0
    return InteractionTable(q, beta, h)


def general(q: int, energies, beta: float = 1.0) -> InteractionTable:
    return InteractionTable(q, beta, energies)


def reflect(row: np.ndarray) -> np.ndarray:
    """``row[(q - j) % q]``: the row an edge needs after its orientation is reversed."""
    q = row.shape[-1]
    return row[..., (-np.arange(q)) % q]
