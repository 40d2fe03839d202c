"""JSON formats for graphs and models.

Graph::

    {"n": 3, "edges": [{"id": 0, "head": 1, "tail": 0}, ...],
     "rotation": {"0": [[0, "tail"], [2, "head"]], ...}}

Model::

    {"q": 3, "beta": 0.5, "edges": [{"type": "potts", "J": 1.0},
                                    {"table": [h0, h1, h2]},
                                    {"weights": [[re, im], ...]}]}

Edges given by ``weights`` bypass the energies; a model containing any such
edge is a weight table and ignores beta.
"""

from __future__ import annotations

import json
import math
from pathlib import Path

import numpy as np

from .errors import InputError
from .graph import OrientedGraph
from .model import InteractionTable, WeightTable, clock, ising, potts


def graph_from_json(data: dict) -> OrientedGraph:
    try:
        n = int(data["n"])
        raw = sorted(data.get("edges", []), key=lambda e: int(e["id"]))
        if [int(e["id"]) for e in raw] != list(range(len(raw))):
            raise InputError("edge ids must be 0..N-1")
        edges = tuple((int(e["head"]), int(e["tail"])) for e in raw)
        rotation = None
        if data.get("rotation") is not None:
            rot = {int(k): v for k, v in data["rotation"].items()}
            rotation = tuple(tuple((int(e), str(end)) for e, end in rot.get(v, [])) for v in range(n))
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"malformed graph JSON: {exc}") from exc
    return OrientedGraph(n, edges, rotation)


def graph_to_json(g: OrientedGraph) -> dict:
    out = {"n": g.n, "edges": [{"id": e, "head": h, "tail": t} for e, (h, t) in enumerate(g.edges)]}
    if g.rotation is not None:
        out["rotation"] = {str(v): [[e, end] for e, end in cyc] for v, cyc in enumerate(g.rotation)}
    return out


def _energy_row(spec: dict, q: int) -> np.ndarray:
    if "table" in spec:
        row = np.asarray(spec["table"], dtype=np.float64)
        if row.shape != (q,):
            raise InputError(f"energy table must have {q} entries")
        return row
    kind = spec.get("type")
    J = float(spec["J"])
    if kind == "potts":
        return potts(q, [J]).energies[0]
    if kind == "ising":
        if q != 2:
            raise InputError("ising edges need q = 2")
        return ising([J]).energies[0]
    if kind == "clock":
        return clock(q, [J]).energies[0]
    raise InputError(f"unknown edge type {kind!r}")


def model_from_json(data: dict, beta: float | None = None) -> InteractionTable | WeightTable:
    """Parse a model; ``beta`` overrides the file's value."""
    try:
        q = int(data["q"])
        b = float(beta if beta is not None else data.get("beta", 1.0))
        specs = data["edges"]
        if any("weights" in s for s in specs):
            rows = []
            for s in specs:
                if "weights" in s:
                    row = np.array([complex(re, im) for re, im in s["weights"]])
                    if row.shape != (q,):
                        raise InputError(f"weight row must have {q} entries")
                    rows.append(row)
                else:
                    rows.append(np.exp(-b * _energy_row(s, q)))
            return WeightTable(q, np.array(rows, dtype=np.complex128).reshape(len(rows), q))
        energies = np.array([_energy_row(s, q) for s in specs], dtype=np.float64).reshape(len(specs), q)
        return InteractionTable(q, b, energies)
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"malformed model JSON: {exc}") from exc


def model_to_json(m: InteractionTable | WeightTable) -> dict:
    if isinstance(m, WeightTable):
        return {
            "q": m.q,
            "edges": [{"weights": [[z.real, z.imag] for z in row]} for row in m.weights],
        }
    return {"q": m.q, "beta": m.beta, "edges": [{"table": [float(x) for x in row]} for row in m.energies]}


def read_json(path: str | Path) -> dict:
    try:
        with open(path) as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc


def write_json(path: str | Path, data: dict):
    with open(path, "w") as fh:
        json.dump(data, fh, indent=2, sort_keys=True)
        fh.write("\n")


def load_graph(path) -> OrientedGraph:
    return graph_from_json(read_json(path))


def load_model(path, beta: float | None = None):
    return model_from_json(read_json(path), beta)


def parse_beta_range(text: str) -> list[float]:
    """``start:stop:steps`` -> ascending list of ``steps`` evenly spaced values."""
    try:
        a, b, steps = text.split(":")
        a, b, steps = float(a), float(b), int(steps)
    except ValueError as exc:
        raise InputError(f"beta range must look like start:stop:steps, got {text!r}") from exc
    if steps < 1:
        raise InputError("beta range needs at least one step")
    values = sorted(np.linspace(a, b, steps).tolist()) if steps > 1 else [a]
    if not all(v > 0 and math.isfinite(v) for v in values):
        raise InputError("beta values must be positive")
    return values
