"""Oriented multigraphs, incidence structure, spanning trees, tree
decompositions and planar duals.

Edges are identified by their position in ``OrientedGraph.edges``; each edge
is stored as ``(head, tail)``.  An optional rotation system lists, for every
vertex, the cyclic order of edge-ends ``(edge_id, "head" | "tail")`` incident
to it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Sequence

import numpy as np

from .errors import (
    DisconnectedGraph,
    EulerViolation,
    ExactTooLarge,
    InputError,
    InvalidDecomposition,
    InvariantError,
    MissingEmbedding,
    NotASpanningTree,
)

HEAD = "head"
TAIL = "tail"
EXACT_MAX_VERTICES = 12

EdgeEnd = tuple[int, str]


@dataclass(frozen=True)
class OrientedGraph:
    n: int
    edges: tuple[tuple[int, int], ...]
    rotation: tuple[tuple[EdgeEnd, ...], ...] | None = None

    def __post_init__(self):
        if self.n < 1:
            raise InputError("a graph needs at least one vertex")
        edges = tuple((int(h), int(t)) for h, t in self.edges)
        object.__setattr__(self, "edges", edges)
        for e, (h, t) in enumerate(edges):
            if not (0 <= h < self.n and 0 <= t < self.n):
                raise InputError(f"edge {e} has an endpoint outside 0..{self.n - 1}")
        if self.rotation is not None:
            rot = tuple(tuple((int(e), str(end)) for e, end in cyc) for cyc in self.rotation)
            object.__setattr__(self, "rotation", rot)
            self._check_rotation()

    def _check_rotation(self):
        if len(self.rotation) != self.n:
            raise InputError("rotation system must list every vertex")
        seen = set()
        for v, cyc in enumerate(self.rotation):
            for e, end in cyc:
                if end not in (HEAD, TAIL) or not 0 <= e < self.num_edges:
                    raise InputError(f"bad edge-end {(e, end)!r} at vertex {v}")
                if self.endpoint(e, end) != v:
                    raise InputError(f"edge-end {(e, end)!r} listed at the wrong vertex {v}")
                if (e, end) in seen:
                    raise InputError(f"edge-end {(e, end)!r} appears twice in the rotation")
                seen.add((e, end))
        if len(seen) != 2 * self.num_edges:
            raise InputError("rotation system does not cover every edge-end")

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    @property
    def heads(self) -> np.ndarray:
        return np.array([h for h, _ in self.edges], dtype=np.intp)

    @property
    def tails(self) -> np.ndarray:
        return np.array([t for _, t in self.edges], dtype=np.intp)

    def endpoint(self, e: int, end: str) -> int:
        h, t = self.edges[e]
        return h if end == HEAD else t

    def neighbors(self) -> list[set[int]]:
        """Simple-graph adjacency (loops dropped, parallel edges merged)."""
        adj = [set() for _ in range(self.n)]
        for h, t in self.edges:
            if h != t:
                adj[h].add(t)
                adj[t].add(h)
        return adj

    def incident_edges(self, v: int) -> list[int]:
        return [e for e, (h, t) in enumerate(self.edges) if v in (h, t)]

    def with_embedding(self, rotation) -> "OrientedGraph":
        return OrientedGraph(self.n, self.edges, rotation)

    def reoriented(self, flip: Iterable[int]) -> "OrientedGraph":
        """Copy with the listed edges reversed (the rotation is relabelled)."""
        flip = set(flip)
        edges = tuple((t, h) if e in flip else (h, t) for e, (h, t) in enumerate(self.edges))
        rotation = None
        if self.rotation is not None:
            swap = {HEAD: TAIL, TAIL: HEAD}
            rotation = tuple(
                tuple((e, swap[end]) if e in flip else (e, end) for e, end in cyc)
                for cyc in self.rotation
            )
        return OrientedGraph(self.n, edges, rotation)


def incidence_matrix(g: OrientedGraph) -> np.ndarray:
    """Signed vertex-by-edge incidence matrix; self-loop columns are zero."""
    b = np.zeros((g.n, g.num_edges), dtype=np.int64)
    for e, (h, t) in enumerate(g.edges):
        b[h, e] += 1
        b[t, e] -= 1
    return b


class _UnionFind:
    def __init__(self, n):
        self.parent = list(range(n))

    def find(self, x):
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, a, b) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        self.parent[max(ra, rb)] = min(ra, rb)
        return True


def components(g: OrientedGraph) -> list[tuple[list[int], list[int]]]:
    """Connected components as ``(vertices, edge_ids)``, ordered by smallest vertex."""
    uf = _UnionFind(g.n)
    for h, t in g.edges:
        uf.union(h, t)
    groups: dict[int, tuple[list[int], list[int]]] = {}
    for v in range(g.n):
        groups.setdefault(uf.find(v), ([], []))[0].append(v)
    for e, (h, _) in enumerate(g.edges):
        groups[uf.find(h)][1].append(e)
    return [groups[r] for r in sorted(groups)]


def is_connected(g: OrientedGraph) -> bool:
    return len(components(g)) == 1


def subgraph(g: OrientedGraph, vertices: Sequence[int], edge_ids: Sequence[int]) -> OrientedGraph:
    """Induced relabelled copy on the given vertices and edges (no embedding)."""
    index = {v: i for i, v in enumerate(vertices)}
    return OrientedGraph(len(vertices), tuple((index[g.edges[e][0]], index[g.edges[e][1]]) for e in edge_ids))


def spanning_tree(g: OrientedGraph) -> frozenset[int]:
    """Kruskal over edge ids in increasing order: the lowest-id spanning tree."""
    uf = _UnionFind(g.n)
    tree = [e for e, (h, t) in enumerate(g.edges) if uf.union(h, t)]
    if len(tree) != g.n - 1:
        raise DisconnectedGraph("graph is not connected")
    return frozenset(tree)


def _tree_adjacency(g: OrientedGraph, tree: Iterable[int]) -> list[list[tuple[int, int]]]:
    adj: list[list[tuple[int, int]]] = [[] for _ in range(g.n)]
    for e in sorted(tree):
        h, t = g.edges[e]
        adj[h].append((t, e))
        adj[t].append((h, e))
    return adj


def _check_spanning_tree(g: OrientedGraph, tree: frozenset[int]):
    if len(tree) != g.n - 1 or any(not 0 <= e < g.num_edges for e in tree):
        raise NotASpanningTree("wrong number of tree edges")
    uf = _UnionFind(g.n)
    for e in tree:
        h, t = g.edges[e]
        if not uf.union(h, t):
            raise NotASpanningTree(f"tree edge {e} closes a cycle")


def fundamental_cycles(g: OrientedGraph, tree: Iterable[int]) -> list[np.ndarray]:
    """One signed cycle vector per non-tree edge, in edge-id order.

    The vector has +1 on the non-tree edge and +-1 along the tree path from
    its head back to its tail, so that ``incidence_matrix(g) @ v == 0``.
    """
    tree = frozenset(tree)
    _check_spanning_tree(g, tree)
    adj = _tree_adjacency(g, tree)
    # root the tree at vertex 0: parent vertex, parent edge, depth
    parent = [-1] * g.n
    parent_edge = [-1] * g.n
    depth = [0] * g.n
    order = [0]
    seen = [False] * g.n
    seen[0] = True
    for v in order:
        for w, e in adj[v]:
            if not seen[w]:
                seen[w] = True
                parent[w], parent_edge[w], depth[w] = v, e, depth[v] + 1
                order.append(w)

    def step(vec, x, sign):
        # traverse the tree edge between x and parent[x], moving towards the root if sign > 0
        e = parent_edge[x]
        h, t = g.edges[e]
        up = 1 if (t == x and h == parent[x]) else -1
        vec[e] += sign * up

    cycles = []
    for e, (h, t) in enumerate(g.edges):
        if e in tree:
            continue
        vec = np.zeros(g.num_edges, dtype=np.int64)
        vec[e] = 1
        # flow from h to t along the tree
        a, b = h, t
        while depth[a] > depth[b]:
            step(vec, a, +1)
            a = parent[a]
        while depth[b] > depth[a]:
            step(vec, b, -1)
            b = parent[b]
        while a != b:
            step(vec, a, +1)
            a = parent[a]
            step(vec, b, -1)
            b = parent[b]
        cycles.append(vec)
    return cycles


# ---------------------------------------------------------------------------
# tree decompositions


@dataclass(frozen=True)
class TreeDecomposition:
    """Rooted tree of bags.  ``parent[i] == -1`` exactly for the root."""

    bags: tuple[tuple[int, ...], ...]
    parent: tuple[int, ...]
    root: int
    strategy: str = field(default="", compare=False)

    @property
    def width(self) -> int:
        return max((len(b) for b in self.bags), default=0) - 1

    def children(self) -> list[list[int]]:
        kids: list[list[int]] = [[] for _ in self.bags]
        for i, p in enumerate(self.parent):
            if p >= 0:
                kids[p].append(i)
        return kids

    def postorder(self) -> list[int]:
        kids = self.children()
        out, stack = [], [(self.root, False)]
        while stack:
            node, done = stack.pop()
            if done:
                out.append(node)
                continue
            stack.append((node, True))
            stack.extend((c, False) for c in reversed(kids[node]))
        return out

    def depth(self) -> list[int]:
        d = [0] * len(self.bags)
        for node in reversed(self.postorder()):
            if self.parent[node] >= 0:
                d[node] = d[self.parent[node]] + 1
        return d

    def validate(self, g: OrientedGraph):
        """Raise ``InvalidDecomposition`` unless the three axioms hold."""
        m = len(self.bags)
        if len(self.parent) != m or not 0 <= self.root < m or self.parent[self.root] != -1:
            raise InvalidDecomposition("malformed rooted tree")
        if sum(p == -1 for p in self.parent) != 1:
            raise InvalidDecomposition("decomposition must have exactly one root")
        if len(self.postorder()) != m:
            raise InvalidDecomposition("parent pointers do not form a tree")
        holders: list[list[int]] = [[] for _ in range(g.n)]
        for i, bag in enumerate(self.bags):
            for v in bag:
                if not 0 <= v < g.n:
                    raise InvalidDecomposition(f"bag {i} holds unknown vertex {v}")
                holders[v].append(i)
        for v, hs in enumerate(holders):
            if not hs:
                raise InvalidDecomposition(f"vertex {v} is in no bag")
            # bags holding v are connected iff exactly one of them has a parent not holding v
            tops = [i for i in hs if self.parent[i] < 0 or v not in self.bags[self.parent[i]]]
            if len(tops) != 1:
                raise InvalidDecomposition(f"bags holding vertex {v} are not connected")
        bag_sets = [set(b) for b in self.bags]
        for e, (h, t) in enumerate(g.edges):
            if not any(h in b and t in b for b in bag_sets):
                raise InvalidDecomposition(f"no bag covers edge {e}")


def _fill_in(adj: list[set[int]], v: int) -> int:
    return sum(1 for a, b in combinations(adj[v], 2) if b not in adj[a])


def _eliminate(adj: list[set[int]], v: int):
    nbrs = adj[v]
    for a in nbrs:
        adj[a] |= nbrs
        adj[a].discard(a)
        adj[a].discard(v)
    adj[v] = set()


def _greedy_order(g: OrientedGraph, score) -> list[int]:
    adj = g.neighbors()
    remaining = set(range(g.n))
    order = []
    while remaining:
        v = min(remaining, key=lambda x: (score(adj, x), len(adj[x]), x))
        order.append(v)
        _eliminate(adj, v)
        remaining.remove(v)
    return order


def _exact_order(g: OrientedGraph) -> list[int]:
    # dynamic program over subsets of eliminated vertices; cost of eliminating v
    # after S is the number of vertices outside S+v reachable from v through S
    n = g.n
    nbr = [0] * n
    for v, ns in enumerate(g.neighbors()):
        for w in ns:
            nbr[v] |= 1 << w

    def q_size(s: int, v: int) -> int:
        frontier, seen = 1 << v, 1 << v
        reach = 0
        while frontier:
            nxt = 0
            x = frontier
            while x:
                low = x & -x
                nxt |= nbr[low.bit_length() - 1]
                x ^= low
            nxt &= ~seen
            seen |= nxt
            reach |= nxt & ~s
            frontier = nxt & s
        return bin(reach).count("1")

    full = (1 << n) - 1
    best = [math.inf] * (1 << n)
    choice = [-1] * (1 << n)
    best[0] = -1
    for s in range(1, full + 1):
        x = s
        while x:
            low = x & -x
            v = low.bit_length() - 1
            x ^= low
            rest = s ^ low
            cand = max(best[rest], q_size(rest, v))
            if cand < best[s]:
                best[s], choice[s] = cand, v
    order, s = [], full
    while s:
        v = choice[s]
        order.append(v)
        s ^= 1 << v
    order.reverse()
    return order


def decomposition_from_order(g: OrientedGraph, order: Sequence[int], strategy: str = "") -> TreeDecomposition:
    """Tree decomposition induced by a vertex elimination order.

    Node ``i`` holds the bag created when ``order[i]`` is eliminated; its parent
    is the node of the earliest-eliminated later neighbour.  Component roots
    are chained under the last node, which keeps the tree connected.
    """
    pos = {v: i for i, v in enumerate(order)}
    adj = g.neighbors()
    bags, parent = [], []
    for v in order:
        nbrs = adj[v]
        bags.append(tuple(sorted(nbrs | {v})))
        parent.append(min((pos[w] for w in nbrs), default=-1))
        _eliminate(adj, v)
    root = len(order) - 1
    parent = [root if (p == -1 and i != root) else p for i, p in enumerate(parent)]
    return TreeDecomposition(tuple(bags), tuple(parent), root, strategy)


def tree_decomposition(
    g: OrientedGraph, strategy: str = "min_fill", exact_limit: int = EXACT_MAX_VERTICES
) -> TreeDecomposition:
    """Build a tree decomposition by ``min_fill``, ``min_degree`` or ``exact_small``.

    ``exact_small`` runs an O(2^n n^2) search over elimination orders and is
    refused above ``exact_limit`` vertices.
    """
    if strategy == "min_fill":
        order = _greedy_order(g, _fill_in)
    elif strategy == "min_degree":
        order = _greedy_order(g, lambda adj, v: len(adj[v]))
    elif strategy == "exact_small":
        if g.n > exact_limit:
            raise ExactTooLarge(f"exact search limited to n <= {exact_limit}, got {g.n}")
        order = _exact_order(g)
    else:
        raise InputError(f"unknown decomposition strategy {strategy!r}")
    return decomposition_from_order(g, order, strategy)


# ---------------------------------------------------------------------------
# embeddings and planar duals


def embedding_from_coordinates(g: OrientedGraph, coords: Sequence[tuple[float, float]]) -> OrientedGraph:
    """Attach the counter-clockwise rotation system of a straight-line drawing.

    Only meaningful for loop-free graphs without parallel edges whose drawing
    is planar.
    """
    rotation = []
    for v in range(g.n):
        ends = []
        x0, y0 = coords[v]
        for e, (h, t) in enumerate(g.edges):
            if h == t:
                raise InputError("straight-line embeddings cannot hold self-loops")
            if v in (h, t):
                w = t if v == h else h
                angle = math.atan2(coords[w][1] - y0, coords[w][0] - x0)
                ends.append((angle, e, HEAD if v == h else TAIL))
        rotation.append(tuple((e, end) for _, e, end in sorted(ends)))
    return g.with_embedding(tuple(rotation))


def faces(g: OrientedGraph) -> list[list[EdgeEnd]]:
    """Face boundary walks traced from the rotation system.

    A dart is named by the edge-end it leaves from; after arriving at a vertex
    the walk continues with the successor of the arrival end in that vertex's
    rotation.
    """
    if g.rotation is None:
        raise MissingEmbedding("planar operations need a rotation system")
    succ: dict[EdgeEnd, EdgeEnd] = {}
    for cyc in g.rotation:
        for i, end in enumerate(cyc):
            succ[end] = cyc[(i + 1) % len(cyc)]
    other = {HEAD: TAIL, TAIL: HEAD}
    visited: set[EdgeEnd] = set()
    out = []
    for e in range(g.num_edges):
        for start in ((e, TAIL), (e, HEAD)):
            if start in visited:
                continue
            walk, dart = [], start
            while dart not in visited:
                visited.add(dart)
                walk.append(dart)
                dart = succ[(dart[0], other[dart[1]])]
            out.append(walk)
    return out


def planar_dual(g: OrientedGraph) -> OrientedGraph:
    """Dual graph on the faces of the embedding, with its own rotation system.

    Dual edge ``e`` points into the face walked by the tail-to-head dart of
    ``e`` and out of the face walked by its head-to-tail dart.  With this
    convention ``B(G) @ B(D).T == 0``, which is verified before returning.
    """
    if g.rotation is None:
        raise MissingEmbedding("planar_dual needs a rotation system")
    if not is_connected(g):
        raise DisconnectedGraph("planar_dual needs a connected graph")
    walks = faces(g)
    if g.n - g.num_edges + len(walks) != 2:
        raise EulerViolation(
            f"n - N + f = {g.n} - {g.num_edges} + {len(walks)} != 2; the rotation is not planar"
        )
    head = [0] * g.num_edges
    tail = [0] * g.num_edges
    rotation = []
    for f, walk in enumerate(walks):
        cyc = []
        for e, end in walk:
            if end == TAIL:
                head[e] = f
                cyc.append((e, HEAD))
            else:
                tail[e] = f
                cyc.append((e, TAIL))
        rotation.append(tuple(cyc))
    dual = OrientedGraph(len(walks), tuple(zip(head, tail)), tuple(rotation))
    if np.any(incidence_matrix(g) @ incidence_matrix(dual).T):
        raise InvariantError("dual orientation violates B(G) B(D)^T = 0")
    return dual
