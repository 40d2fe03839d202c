"""Planar duality and stabilizer symmetries acting on weight tables."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .codes import contains, cut_code, cycle_code, stabilizer_generators
from .errors import DimensionMismatch, NonFerromagnetic
from .graph import OrientedGraph, incidence_matrix, planar_dual
from .model import InteractionTable, WeightTable, as_weights


def _omega(q: int) -> np.ndarray:
    """omega**(k*j) as a q x q matrix, omega = exp(2 pi i / q)."""
    kj = np.outer(np.arange(q), np.arange(q)) % q
    return np.exp(2j * np.pi * kj / q)


def fourier_dual_weights(w: WeightTable) -> WeightTable:
    """w'(j) = q**-1/2 * sum_k exp(-2 pi i k j / q) w(k), edge by edge."""
    q = w.q
    return WeightTable(q, w.weights @ _omega(q).conj() / math.sqrt(q))


@dataclass(frozen=True)
class DualityCertificate:
    """Z(dual, dual weights) == q**r * Z(primal, weights) with r = N/2 - n + 1."""

    primal: OrientedGraph
    dual: OrientedGraph
    q: int
    r: Fraction

    @property
    def scale(self) -> float:
        return self.q ** float(self.r)

    def to_json(self) -> dict:
        return {
            "q": self.q,
            "r": {"numerator": self.r.numerator, "denominator": self.r.denominator},
            "primal": {"n": self.primal.n, "num_edges": self.primal.num_edges},
            "dual": {"n": self.dual.n, "num_edges": self.dual.num_edges},
        }


def duality_exponent(g: OrientedGraph) -> Fraction:
    return Fraction(g.num_edges, 2) - g.n + 1


def dual_model(
    g: OrientedGraph, m: InteractionTable | WeightTable
) -> tuple[OrientedGraph, WeightTable, DualityCertificate]:
    w = as_weights(m)
    if w.num_edges != g.num_edges:
        raise DimensionMismatch("model rows do not match the graph's edges")
    d = planar_dual(g)
    cert = DualityCertificate(g, d, w.q, duality_exponent(g))
    return d, fourier_dual_weights(w), cert


def potts_dual_coupling(J: float, q: int, beta: float) -> float:
    """J' with (exp(beta J') - 1)(exp(beta J) - 1) = q, for ferromagnetic J."""
    x = math.expm1(beta * J)
    if not x > 0:
        raise NonFerromagnetic("dual coupling is real only for beta*J > 0; use dual_model instead")
    return math.log1p(q / x) / beta


# ---------------------------------------------------------------------------
# symmetries


@dataclass(frozen=True, eq=False)
class SymmetryElement:
    """The Pauli operator X(u) Z(v); it fixes the cut-code state with eigenvalue 1."""

    q: int
    u: np.ndarray
    v: np.ndarray
    eigenvalue: complex = 1 + 0j

    def combine(self, other: "SymmetryElement") -> "SymmetryElement":
        return SymmetryElement(self.q, (self.u + other.u) % self.q, (self.v + other.v) % self.q)

    def is_valid_for(self, g: OrientedGraph) -> bool:
        return (
            contains(cut_code(g, self.q), self.u)
            and contains(cycle_code(g, self.q), self.v)
            and int(self.u @ self.v) % self.q == 0
        )


def apply_symmetry(s: SymmetryElement, w: WeightTable) -> WeightTable:
    """w'_e(j) = omega**(v_e (j - u_e)) * w_e((j - u_e) mod q)."""
    q = w.q
    if s.q != q or s.u.shape != (w.num_edges,) or s.v.shape != (w.num_edges,):
        raise DimensionMismatch("symmetry element does not match the weight table")
    j = np.arange(q)
    shifted = np.mod(j[None, :] - s.u[:, None], q)
    rows = np.take_along_axis(w.weights, shifted, axis=1)
    phase = np.exp(2j * np.pi * np.mod(s.v[:, None] * shifted, q) / q)
    return WeightTable(q, phase * rows / s.eigenvalue)


def vertex_flip(g: OrientedGraph, a: int, q: int = 2) -> SymmetryElement:
    """X-type element whose support is the incidence row of vertex a."""
    u = np.mod(incidence_matrix(g)[a], q)
    return SymmetryElement(q, u, np.zeros(g.num_edges, dtype=np.int64))


def symmetry_group_sample(g: OrientedGraph, q: int, count: int, seed: int = 0) -> list[SymmetryElement]:
    """Random Z_q-combinations of the stabilizer generators, reproducible from ``seed``."""
    if count <= 0:
        return []
    gens = stabilizer_generators(g, q)
    rng = np.random.default_rng(seed)
    out = []
    for _ in range(count):
        coeffs = rng.integers(q, size=len(gens))
        u = np.zeros(g.num_edges, dtype=np.int64)
        v = np.zeros(g.num_edges, dtype=np.int64)
        for c, (gu, gv) in zip(coeffs, gens):
            u += c * gu
            v += c * gv
        out.append(SymmetryElement(q, u % q, v % q))
    return out
