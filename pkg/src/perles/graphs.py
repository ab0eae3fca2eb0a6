"""Simple undirected graphs and vertex connectivity.

Two independent ways to decide k-connectivity live here:

* :func:`vertex_connectivity` computes the exact value with Even's pair
  scheme, counting disjoint paths by max-flow on the node-split digraph
  (scipy's Dinic solver does the flows).
* :func:`naatz_k_connected` only looks at pairs at distance two and counts
  disjoint paths with a small augmenting-path routine written here.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from typing import Iterable, NamedTuple

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import maximum_flow


class GraphError(ValueError):
    pass


class Witnessed(NamedTuple):
    ok: bool
    witness: object = None


@dataclass(frozen=True)
class Graph:
    node_count: int
    adjacency: tuple  # tuple of frozensets, symmetric, no loops

    @classmethod
    def from_edges(cls, n: int, edges: Iterable) -> "Graph":
        adj = [set() for _ in range(n)]
        for u, v in edges:
            if u == v:
                raise GraphError(f"loop at node {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"edge ({u}, {v}) outside 0..{n - 1}")
            adj[u].add(v)
            adj[v].add(u)
        return cls(n, tuple(frozenset(a) for a in adj))

    @cached_property
    def edges(self) -> tuple:
        return tuple(sorted((u, v) for u in range(self.node_count) for v in self.adjacency[u] if u < v))

    def neighbors(self, v: int) -> frozenset:
        return self.adjacency[v]

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    @property
    def min_degree(self) -> int:
        return min((len(a) for a in self.adjacency), default=0)

    def __repr__(self) -> str:
        return f"Graph(nodes={self.node_count}, edges={len(self.edges)})"


def complete_graph(n: int) -> Graph:
    return Graph.from_edges(n, combinations(range(n), 2))


def cycle_graph(n: int) -> Graph:
    return Graph.from_edges(n, ((i, (i + 1) % n) for i in range(n)))


def path_graph(n: int) -> Graph:
    return Graph.from_edges(n, ((i, i + 1) for i in range(n - 1)))


def petersen_graph() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return Graph.from_edges(10, outer + spokes + inner)


def cartesian_product(G: Graph, H: Graph) -> Graph:
    """Nodes (g, h) numbered g * |H| + h."""
    m = H.node_count
    edges = [(g * m + a, g * m + b) for g in range(G.node_count) for a, b in H.edges]
    edges += [(a * m + h, b * m + h) for a, b in G.edges for h in range(m)]
    return Graph.from_edges(G.node_count * m, edges)


def induced_subgraph(G: Graph, S: Iterable[int]) -> tuple:
    """Return ``(subgraph, nodes)`` where ``nodes[i]`` is the G-node of subgraph node i."""
    nodes = sorted(set(S))
    for v in nodes:
        if not 0 <= v < G.node_count:
            raise GraphError(f"invalid node {v}")
    pos = {v: i for i, v in enumerate(nodes)}
    edges = [(pos[u], pos[w]) for u in nodes for w in G.adjacency[u] if w in pos and u < w]
    return Graph.from_edges(len(nodes), edges), nodes


def is_k_regular(G: Graph, k: int) -> Witnessed:
    for v in range(G.node_count):
        if len(G.adjacency[v]) != k:
            return Witnessed(False, v)
    return Witnessed(True)


def connected_components(G: Graph) -> list:
    seen = [False] * G.node_count
    comps = []
    for s in range(G.node_count):
        if seen[s]:
            continue
        seen[s] = True
        comp, queue = [s], deque([s])
        while queue:
            u = queue.popleft()
            for w in G.adjacency[u]:
                if not seen[w]:
                    seen[w] = True
                    comp.append(w)
                    queue.append(w)
        comps.append(sorted(comp))
    return comps


def is_connected(G: Graph) -> bool:
    return len(connected_components(G)) <= 1


# ------------------------------------------------------------------ Menger

def local_connectivity(G: Graph, s: int, t: int, cap: int | None = None) -> int:
    """Number of internally disjoint s-t paths for non-adjacent s != t, stopping at ``cap``.

    Unit-capacity augmenting paths on the node-split digraph (node v becomes
    v_in -> v_out).  Only saturated arcs are stored, so a call costs nothing
    beyond the breadth-first searches themselves.
    """
    if s == t or t in G.adjacency[s]:
        raise GraphError("local connectivity needs two distinct non-adjacent nodes")
    used_node: set = set()   # v with flow on v_in -> v_out
    used_arc: set = set()    # (u, w) with flow on u_out -> w_in
    adj = G.adjacency
    flow = 0
    limit = cap if cap is not None else len(adj[s])
    # search states: (v, 0) = v_in, (v, 1) = v_out
    while flow < limit:
        start = (s, 1)
        goal = (t, 0)
        parent = {start: None}
        queue = deque([start])
        found = False
        while queue and not found:
            state = queue.popleft()
            v, side = state
            if side == 1:
                nxt = [(w, 0) for w in adj[v] if (v, w) not in used_arc and w != s]
                if v in used_node:
                    nxt.append((v, 0))
            else:
                nxt = [(u, 1) for u in adj[v] if (u, v) in used_arc]
                if v not in used_node and v != t:
                    nxt.append((v, 1))
            for st in nxt:
                if st not in parent:
                    parent[st] = state
                    if st == goal:
                        found = True
                        break
                    queue.append(st)
        if not found:
            break
        st = goal
        while parent[st] is not None:
            prev = parent[st]
            (a, sa), (b, _) = prev, st
            if a == b:
                if sa == 0:
                    used_node.add(a)          # v_in -> v_out
                else:
                    used_node.discard(a)      # cancel v_in -> v_out
            elif sa == 1:
                used_arc.add((a, b))
            else:
                used_arc.discard((b, a))      # residual of b_out -> a_in
            st = prev
        flow += 1
    return flow


def _split_network(G: Graph) -> csr_matrix:
    n = G.node_count
    rows, cols = [], []
    for v in range(n):
        rows.append(2 * v)
        cols.append(2 * v + 1)
        for w in G.adjacency[v]:
            rows.append(2 * v + 1)
            cols.append(2 * w)
    data = np.ones(len(rows), dtype=np.int32)
    return csr_matrix((data, (rows, cols)), shape=(2 * n, 2 * n))


def vertex_connectivity(G: Graph) -> int:
    """Smallest number of nodes whose removal disconnects G or leaves one node.

    Even's scheme: with nodes v_0, v_1, ... only pairs (v_i, v_j), i < j,
    i <= kappa need a flow, since some v_i with i <= kappa avoids a minimum
    separator and some later node lies on its other side.
    """
    n = G.node_count
    if n < 2:
        raise GraphError("vertex connectivity needs at least two nodes")
    best = G.min_degree
    net = _split_network(G)
    for i in range(n):
        if i > best:
            break
        for j in range(i + 1, n):
            if best == 0:
                return 0
            if j in G.adjacency[i]:
                continue
            res = maximum_flow(net, 2 * i + 1, 2 * j, method="dinic")
            best = min(best, int(res.flow_value))
    return best


def distance_two_pairs(G: Graph) -> list:
    pairs = set()
    for v in range(G.node_count):
        for u in G.adjacency[v]:
            for w in G.adjacency[u]:
                if w > v and w not in G.adjacency[v]:
                    pairs.add((v, w))
    return sorted(pairs)


def naatz_k_connected(G: Graph, k: int) -> Witnessed:
    """k-connectivity via distance-two pairs; witness is a failing pair.

    Plain connectivity is required explicitly: a disconnected graph can
    satisfy the distance-two condition vacuously.
    """
    if G.node_count <= k:
        raise GraphError(f"need more than {k} nodes, got {G.node_count}")
    comps = connected_components(G)
    if len(comps) > 1:
        return Witnessed(False, (comps[0][0], comps[1][0]))
    for v, w in distance_two_pairs(G):
        if local_connectivity(G, v, w, cap=k) < k:
            return Witnessed(False, (v, w))
    return Witnessed(True)


# -------------------------------------------------------------- isomorphism

def _refine(G: Graph, colors: list) -> list:
    """Colour refinement; new colours are canonical so two graphs stay comparable."""
    while True:
        sigs = [(colors[v], tuple(sorted(colors[w] for w in G.adjacency[v]))) for v in range(G.node_count)]
        table = {s: i for i, s in enumerate(sorted(set(sigs)))}
        new = [table[s] for s in sigs]
        if len(table) == len(set(colors)):
            return new
        colors = new


def _joint_refine(G1: Graph, G2: Graph, c1: list, c2: list) -> tuple:
    # refine the disjoint union so the colour names agree across both graphs
    n1 = G1.node_count
    adj = list(G1.adjacency) + [frozenset(w + n1 for w in a) for a in G2.adjacency]
    U = Graph(n1 + G2.node_count, tuple(adj))
    col = _refine(U, list(c1) + list(c2))
    return col[:n1], col[n1:]


def find_isomorphism(G1: Graph, G2: Graph, colors1=None, colors2=None) -> list | None:
    """Colour-preserving isomorphism G1 -> G2 as a list, or None."""
    n = G1.node_count
    if n != G2.node_count or len(G1.edges) != len(G2.edges):
        return None
    c1 = list(colors1) if colors1 is not None else [0] * n
    c2 = list(colors2) if colors2 is not None else [0] * n
    if sorted(c1) != sorted(c2):
        return None

    def search(c1, c2):
        c1, c2 = _joint_refine(G1, G2, c1, c2)
        if sorted(c1) != sorted(c2):
            return None
        classes = {}
        for v, c in enumerate(c1):
            classes.setdefault(c, []).append(v)
        if all(len(vs) == 1 for vs in classes.values()):
            where = {c: v for v, c in enumerate(c2)}
            mapping = [where[c1[v]] for v in range(n)]
            ok = all(mapping[w] in G2.adjacency[mapping[v]] for v, w in G1.edges)
            return mapping if ok else None
        target = min((vs for vs in classes.values() if len(vs) > 1), key=lambda vs: (len(vs), vs[0]))
        v = target[0]
        fresh = max(max(c1), max(c2)) + 1
        for u in [u for u in range(n) if c2[u] == c1[v]]:
            d1, d2 = list(c1), list(c2)
            d1[v], d2[u] = fresh, fresh
            found = search(d1, d2)
            if found is not None:
                return found
        return None

    return search(c1, c2)


def are_isomorphic(G1: Graph, G2: Graph) -> bool:
    return find_isomorphism(G1, G2) is not None
