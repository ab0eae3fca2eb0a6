"""Perles' conditions on simple polytopes and the core obstruction.

Primal side: a :class:`SimplePolytopeModel` (vertex/facet incidences) and
its graph.  Dual side: the boundary complex of the polar simplicial polytope.
Vertex ``i`` of a model built by :func:`from_simplicial_boundary` is facet
``i`` of the complex, so a candidate vertex set is also a set of facet indices.
"""
from __future__ import annotations

import json
import time
from collections import defaultdict
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations

import numpy as np

from .complex import (
    SimplicialComplex,
    build_complex,
    dual_graph,
    free_ridges,
    induced_pure_subcomplex,
    is_closed_pseudomanifold,
    ridge_incidence,
)
from .graphs import Graph, induced_subgraph, is_connected, is_k_regular, vertex_connectivity
from .homology import homology_profile, separates_sphere


class ModelError(ValueError):
    pass


class CoreError(ValueError):
    """Some facet of Gamma does not have exactly one free ridge."""

    def __init__(self, message: str, facet=None):
        super().__init__(message)
        self.facet = facet


@dataclass(frozen=True)
class SimplePolytopeModel:
    d: int
    vertex_count: int
    facets: tuple  # tuple of sorted vertex tuples

    @classmethod
    def from_facets(cls, d: int, facets, vertex_count: int | None = None) -> "SimplePolytopeModel":
        fs = tuple(tuple(sorted(set(f))) for f in facets)
        n = vertex_count if vertex_count is not None else 1 + max(v for f in fs for v in f)
        model = cls(d, n, fs)
        model.validate()
        return model

    @property
    def facet_membership(self) -> tuple:
        return self.facets

    @cached_property
    def vertex_facets(self) -> tuple:
        vf = [[] for _ in range(self.vertex_count)]
        for j, f in enumerate(self.facets):
            for v in f:
                vf[v].append(j)
        return tuple(tuple(x) for x in vf)

    @cached_property
    def graph(self) -> Graph:
        """Vertices are adjacent iff they share exactly d-1 facets."""
        if self.d == 1:
            return Graph.from_edges(self.vertex_count, combinations(range(self.vertex_count), 2))
        buckets = defaultdict(list)
        for v, fs in enumerate(self.vertex_facets):
            for sub in combinations(fs, self.d - 1):
                buckets[sub].append(v)
        edges = set()
        for vs in buckets.values():
            edges.update(combinations(vs, 2))
        return Graph.from_edges(self.vertex_count, edges)

    def validate(self) -> None:
        if self.d < 1:
            raise ModelError("dimension must be at least 1")
        for v, fs in enumerate(self.vertex_facets):
            if len(fs) != self.d:
                raise ModelError(f"vertex {v} lies in {len(fs)} facets, expected {self.d}")
        G = self.graph
        for v in range(G.node_count):
            if G.degree(v) != self.d:
                raise ModelError(f"graph is not {self.d}-regular at vertex {v}")
        if not is_connected(G):
            raise ModelError("graph is disconnected")

    def __repr__(self) -> str:
        return f"SimplePolytopeModel(d={self.d}, vertices={self.vertex_count}, facets={len(self.facets)})"


def from_simplicial_boundary(Delta: SimplicialComplex) -> SimplePolytopeModel:
    """Dual model: vertices are the facets of Delta, facets are its vertex stars."""
    ok = is_closed_pseudomanifold(Delta)
    if not ok.ok:
        raise ModelError(f"not a closed pseudomanifold (witness {ok.witness})")
    facets = [Delta.facets_containing((v,)) for v in Delta.vertices]
    return SimplePolytopeModel.from_facets(Delta.dim + 1, facets, len(Delta.facets))


def to_simplicial_boundary(P: SimplePolytopeModel) -> tuple:
    """Polar boundary complex of P and the map model vertex -> facet index of it."""
    Delta = build_complex(P.vertex_facets, len(P.facets))
    index = [Delta.facet_index[tuple(fs)] for fs in P.vertex_facets]
    return Delta, index


def facet_subgraph_vertex_sets(P: SimplePolytopeModel) -> list:
    return sorted(tuple(f) for f in P.facets)


# ------------------------------------------------------------ candidates

@dataclass(frozen=True)
class PerlesCandidate:
    vertex_set: tuple
    regular: bool
    connected: bool
    complement_connected: bool

    @property
    def is_perles(self) -> bool:
        return self.regular and self.connected and self.complement_connected


def candidate_flags(G: Graph, d: int, H) -> PerlesCandidate:
    """Perles flags of H inside a d-regular graph G."""
    hs = tuple(sorted(set(H)))
    if not hs or len(hs) >= G.node_count:
        raise ModelError("H must be a nonempty proper vertex subset")
    inside = set(hs)
    regular = all(sum(w in inside for w in G.adjacency[v]) == d - 1 for v in hs)
    sub, _ = induced_subgraph(G, hs)
    comp, _ = induced_subgraph(G, [v for v in range(G.node_count) if v not in inside])
    return PerlesCandidate(hs, regular, is_connected(sub), is_connected(comp))


def is_perles_subgraph(P: SimplePolytopeModel, H) -> PerlesCandidate:
    return candidate_flags(P.graph, P.d, H)


def weak_perles_flag(P: SimplePolytopeModel, H) -> bool:
    """Is the subgraph induced on H (d-1)-connected?"""
    sub, _ = induced_subgraph(P.graph, H)
    if sub.node_count < 2:
        return P.d - 1 <= 0
    return vertex_connectivity(sub) >= P.d - 1


_UND, _IN, _OUT = 0, 1, 2


class _Search:
    """In/out/undecided assignment with propagation.

    An IN vertex needs exactly one OUT neighbour; a vertex with two OUT
    neighbours (or with every neighbour IN) can only be OUT.
    """

    def __init__(self, G: Graph, d: int):
        self.n = G.node_count
        self.d = d
        self.adj = [sorted(a) for a in G.adjacency]
        self.state = [_UND] * self.n
        self.n_in = [0] * self.n
        self.n_out = [0] * self.n
        self.trail: list = []
        self.results: list = []

    def assign(self, v: int, s: int) -> bool:
        """Set v and propagate; False on contradiction (trail keeps what was set)."""
        stack = [(v, s)]
        while stack:
            v, s = stack.pop()
            cur = self.state[v]
            if cur == s:
                continue
            if cur != _UND:
                return False
            self.state[v] = s
            self.trail.append(v)
            counter = self.n_in if s == _IN else self.n_out
            for w in self.adj[v]:
                counter[w] += 1
            if s == _IN:
                if self.n_out[v] > 1 or self.n_in[v] > self.d - 1:
                    return False
            for u in [v] + self.adj[v]:
                su = self.state[u]
                if su == _IN:
                    if self.n_out[u] > 1 or self.n_in[u] > self.d - 1:
                        return False
                    if self.n_out[u] == 1 or self.n_in[u] == self.d - 1:
                        fill = _IN if self.n_out[u] == 1 else _OUT
                        for w in self.adj[u]:
                            if self.state[w] == _UND:
                                stack.append((w, fill))
                elif su == _UND:
                    if self.n_out[u] >= 2 or self.n_in[u] == self.d:
                        stack.append((u, _OUT))
        return True

    def undo(self, mark: int) -> None:
        while len(self.trail) > mark:
            v = self.trail.pop()
            counter = self.n_in if self.state[v] == _IN else self.n_out
            for w in self.adj[v]:
                counter[w] -= 1
            self.state[v] = _UND

    def _reach_ok(self, s: int) -> bool:
        """All s-vertices connected through s-or-undecided vertices."""
        members = [v for v in range(self.n) if self.state[v] == s]
        if not members:
            return True
        seen = {members[0]}
        stack = [members[0]]
        while stack:
            u = stack.pop()
            for w in self.adj[u]:
                if w not in seen and self.state[w] != (_OUT if s == _IN else _IN):
                    seen.add(w)
                    stack.append(w)
        return all(v in seen for v in members)

    def _pick(self) -> int:
        best, best_key = -1, None
        for v in range(self.n):
            if self.state[v] != _UND:
                continue
            dec = self.n_in[v] + self.n_out[v]
            key = (-dec, -self.n_in[v], v)
            if best_key is None or key < best_key:
                best, best_key = v, key
        return best

    def run(self, seed: int) -> None:
        """Candidates whose least vertex is ``seed``."""
        mark = len(self.trail)
        ok = all(self.assign(u, _OUT) for u in range(seed)) and self.assign(seed, _IN)
        if ok:
            self._dfs()
        self.undo(mark)

    def _dfs(self) -> None:
        if not (self._reach_ok(_IN) and self._reach_ok(_OUT)):
            return
        v = self._pick()
        if v < 0:
            ins = tuple(u for u in range(self.n) if self.state[u] == _IN)
            if 0 < len(ins) < self.n:
                self.results.append(ins)
            return
        for s in (_IN, _OUT):
            mark = len(self.trail)
            if self.assign(v, s):
                self._dfs()
            self.undo(mark)


def _seed_results(args) -> list:
    G, d, seeds = args
    search = _Search(G, d)
    for seed in seeds:
        search.run(seed)
    return search.results


def search_candidates(G: Graph, d: int, workers: int = 1) -> list:
    """Perles candidates of a d-regular graph by propagating depth-first search.

    The search splits by least member; with ``workers > 1`` those subtrees
    run in separate processes.  Output is sorted either way.
    """
    if not is_k_regular(G, d).ok:
        raise ModelError(f"graph is not {d}-regular")
    seeds = list(range(G.node_count))
    if workers > 1:
        chunks = [(G, d, seeds[i::workers]) for i in range(workers)]
        with ProcessPoolExecutor(workers) as pool:
            found = [hs for part in pool.map(_seed_results, chunks) for hs in part]
    else:
        found = _seed_results((G, d, seeds))
    out = []
    for hs in sorted(set(found)):
        cand = candidate_flags(G, d, hs)
        if cand.is_perles:
            out.append(cand)
    return out


def enumerate_perles_subgraphs(P: SimplePolytopeModel, workers: int = 1) -> list:
    """All induced, connected, (d-1)-regular, non-separating proper subgraphs."""
    return search_candidates(P.graph, P.d, workers)


BRUTE_FORCE_LIMIT = 20


def _popcount(x: np.ndarray) -> np.ndarray:
    return np.bitwise_count(x)


def brute_force_candidates(G: Graph, d: int) -> list:
    """Scan every vertex subset; the regularity filter runs vectorised over bitmasks."""
    n = G.node_count
    if n > BRUTE_FORCE_LIMIT:
        raise ModelError(f"brute force limited to {BRUTE_FORCE_LIMIT} vertices, got {n}")
    masks = np.arange(1, (1 << n) - 1, dtype=np.uint32)  # nonempty, proper
    keep = np.ones(masks.shape, dtype=bool)
    for v in range(n):
        nb = sum(1 << w for w in G.adjacency[v])
        has_v = (masks >> v) & 1 == 1
        deg = _popcount(masks & np.uint32(nb))
        keep &= ~has_v | (deg == d - 1)
    out = []
    for m in masks[keep].tolist():
        hs = [v for v in range(n) if m >> v & 1]
        cand = candidate_flags(G, d, hs)
        if cand.is_perles:
            out.append(cand)
    return sorted(out, key=lambda c: c.vertex_set)


def brute_force_perles_subgraphs(P: SimplePolytopeModel) -> list:
    """Same answer as :func:`enumerate_perles_subgraphs` by scanning every subset."""
    return brute_force_candidates(P.graph, P.d)


# ------------------------------------------------------------------ core

def gamma_of_subgraph(Delta: SimplicialComplex, H) -> SimplicialComplex:
    return induced_pure_subcomplex(Delta, H)


@dataclass(frozen=True)
class CoreComplex:
    triangles: SimplicialComplex   # pure, one dimension below Gamma; may be empty
    free_vertex: dict              # facet of Gamma -> vertex opposite its free ridge

    @property
    def is_empty(self) -> bool:
        return self.triangles.is_empty


def free_vertex_map(Gamma: SimplicialComplex) -> dict:
    """v(sigma) for every facet; CoreError names the first facet without exactly one free ridge."""
    counts = defaultdict(list)
    for ridge, facet in free_ridges(Gamma):
        counts[facet].append(ridge)
    out = {}
    for f in Gamma.facets:
        rs = counts.get(f, [])
        if len(rs) != 1:
            raise CoreError(f"facet {f} has {len(rs)} free ridges", f)
        (v,) = set(f) - set(rs[0])
        out[f] = v
    return out


def compute_core(Delta: SimplicialComplex, Gamma: SimplicialComplex) -> CoreComplex:
    """Ridges of Delta whose two facets lie in Gamma with different free vertices."""
    if Gamma.is_empty or not Gamma.is_pure or Gamma.dim != Delta.dim:
        raise CoreError("Gamma must be a nonempty pure subcomplex of full dimension")
    fv = free_vertex_map(Gamma)
    faces = []
    for ridge, fs in ridge_incidence(Delta).items():
        if len(fs) != 2:
            raise CoreError(f"ridge {ridge} of Delta lies in {len(fs)} facets")
        a, b = Delta.facets[fs[0]], Delta.facets[fs[1]]
        if a in fv and b in fv and fv[a] != fv[b]:
            faces.append(ridge)
    if faces:
        tri = build_complex(faces, Delta.vertex_count)
    else:
        tri = SimplicialComplex((), Delta.vertex_count)
    return CoreComplex(tri, fv)


def vertex_star_facets(Delta: SimplicialComplex) -> dict:
    return {v: frozenset(Delta.facets_containing((v,))) for v in Delta.vertices}


def facet_indices(Delta: SimplicialComplex, Gamma: SimplicialComplex) -> frozenset:
    return frozenset(Delta.facet_index[f] for f in Gamma.facets)


def complement_connected(Delta: SimplicialComplex, Gamma: SimplicialComplex) -> bool:
    """Graph-level non-separation: facets outside Gamma induce a connected, nonempty dual graph."""
    inside = facet_indices(Delta, Gamma)
    rest = [i for i in range(len(Delta.facets)) if i not in inside]
    if not rest:
        return False
    sub, _ = induced_subgraph(dual_graph(Delta), rest)
    return is_connected(sub)


@dataclass
class ObstructionReport:
    core_nonempty: bool
    core_has_free_face: bool
    free_face_witness: object
    is_vertex_star: bool
    star_vertex: object
    empty_iff_star: bool
    non_separating: bool
    core_top_homology_zero: bool
    core_dually_connected: bool

    @property
    def ok(self) -> bool:
        claim3 = self.core_top_homology_zero or not self.non_separating
        return (not self.core_has_free_face) and self.empty_iff_star and claim3 and self.core_dually_connected

    def fields(self) -> list:
        return [
            ("core_nonempty", self.core_nonempty),
            ("core_no_free_face", not self.core_has_free_face),
            ("core_free_face_witness", self.free_face_witness),
            ("gamma_is_vertex_star", self.is_vertex_star),
            ("gamma_star_vertex", self.star_vertex),
            ("core_empty_iff_vertex_star", self.empty_iff_star),
            ("gamma_non_separating", self.non_separating),
            ("core_top_homology_zero", self.core_top_homology_zero),
            ("core_dually_connected", self.core_dually_connected),
            ("obstruction_checks_pass", self.ok),
        ]


def which_vertex_star(Delta: SimplicialComplex, Gamma: SimplicialComplex):
    idx = facet_indices(Delta, Gamma)
    for v, fs in vertex_star_facets(Delta).items():
        if fs == idx:
            return v
    return None


def check_obstruction(Delta: SimplicialComplex, Gamma: SimplicialComplex, core: CoreComplex) -> ObstructionReport:
    """Claims about the core: no free face; empty iff Gamma is a vertex star;
    trivial top homology when Gamma does not separate; dual connectivity."""
    K = core.triangles
    free = free_ridges(K) if not K.is_empty and K.dim >= 1 else []
    v = which_vertex_star(Delta, Gamma)
    nonsep = complement_connected(Delta, Gamma)
    if K.is_empty:
        top_zero, dual_ok = True, True
    else:
        h = homology_profile(K)
        top_zero = h.betti[K.dim] == 0 if K.dim >= 1 else False
        dual_ok = is_connected(dual_graph(K))
    return ObstructionReport(
        core_nonempty=not K.is_empty,
        core_has_free_face=bool(free),
        free_face_witness=free[0] if free else None,
        is_vertex_star=v is not None,
        star_vertex=v,
        empty_iff_star=(K.is_empty == (v is not None)),
        non_separating=nonsep,
        core_top_homology_zero=top_zero,
        core_dually_connected=dual_ok,
    )


# ------------------------------------------------------------ verdicts

@dataclass
class Violation:
    vertex_set: tuple
    gamma: SimplicialComplex
    core: CoreComplex
    weak_perles: bool
    obstruction: ObstructionReport


@dataclass
class ConjectureReport:
    polytope_id: str
    d: int
    vertex_count: int
    facet_count: int
    candidates: list
    facet_subgraphs: list
    violations: list
    engine: str
    seconds: float = 0.0
    homology_crosscheck: list = field(default_factory=list)

    @property
    def satisfies(self) -> bool:
        return not self.violations

    @property
    def weakly_satisfies(self) -> bool:
        return not any(v.weak_perles for v in self.violations)


def check_model(P: SimplePolytopeModel, *, polytope_id: str = "", brute_force: bool = False,
                homology_crosscheck: bool = False, Delta: SimplicialComplex | None = None,
                candidates=None, workers: int = 1) -> ConjectureReport:
    """Enumerate Perles candidates of P and sort them into facets and violations.

    ``candidates`` replaces the enumeration by the given vertex sets (those
    failing a Perles flag are dropped), for models too large to search.
    """
    t0 = time.perf_counter()
    if Delta is None:
        Delta, index = to_simplicial_boundary(P)
    else:
        index = list(range(P.vertex_count))
    if candidates is not None:
        cands = [c for c in (is_perles_subgraph(P, H) for H in candidates) if c.is_perles]
        engine = "given"
    elif brute_force:
        cands, engine = brute_force_perles_subgraphs(P), "brute-force"
    else:
        cands, engine = enumerate_perles_subgraphs(P, workers), "search"
    facet_sets = {tuple(f) for f in facet_subgraph_vertex_sets(P)}
    facet_hits, violations, cross = [], [], []
    for c in cands:
        gamma = gamma_of_subgraph(Delta, [index[v] for v in c.vertex_set])
        if homology_crosscheck:
            cross.append((c.vertex_set, not separates_sphere(gamma, Delta.dim) == c.complement_connected))
        if c.vertex_set in facet_sets:
            facet_hits.append(c)
            continue
        core = compute_core(Delta, gamma)
        violations.append(Violation(c.vertex_set, gamma, core, weak_perles_flag(P, c.vertex_set),
                                    check_obstruction(Delta, gamma, core)))
    return ConjectureReport(
        polytope_id=polytope_id,
        d=P.d,
        vertex_count=P.vertex_count,
        facet_count=len(P.facets),
        candidates=cands,
        facet_subgraphs=facet_hits,
        violations=violations,
        engine=engine,
        seconds=time.perf_counter() - t0,
        homology_crosscheck=cross,
    )


def check_conjecture(Delta: SimplicialComplex, *, polytope_id: str = "", brute_force: bool = False,
                     homology_crosscheck: bool = False, candidates=None, workers: int = 1) -> ConjectureReport:
    """Does the simple polytope dual to the sphere ``Delta`` satisfy Perles' conjecture?

    Candidate vertex sets are facet indices of ``Delta``.
    """
    P = from_simplicial_boundary(Delta)
    return check_model(P, polytope_id=polytope_id, brute_force=brute_force,
                       homology_crosscheck=homology_crosscheck, Delta=Delta,
                       candidates=candidates, workers=workers)


# ------------------------------------------------------------ reports
#
# A report is an ordered list of (key, value) pairs.  Text form: one
# "key: value" line each, values JSON-encoded (lists stay on one line).
# Timing data goes on a leading "#" line that comparisons skip.

def report_fields(report: ConjectureReport) -> list:
    fields = [
        ("polytope", report.polytope_id),
        ("dimension", report.d),
        ("vertices", report.vertex_count),
        ("facets", report.facet_count),
        ("engine", report.engine),
        ("candidate_count", len(report.candidates)),
        ("candidates", [list(c.vertex_set) for c in report.candidates]),
        ("facet_subgraphs", [list(c.vertex_set) for c in report.facet_subgraphs]),
        ("violation_count", len(report.violations)),
        ("verdict", "satisfies" if report.satisfies else "violates"),
        ("weak_verdict", "satisfies" if report.weakly_satisfies else "violates"),
    ]
    if report.homology_crosscheck:
        fields.append(("homology_crosscheck_agrees", all(ok for _, ok in report.homology_crosscheck)))
    for k, v in enumerate(report.violations):
        fields += [
            (f"violation.{k}.vertex_set", list(v.vertex_set)),
            (f"violation.{k}.weak_perles", v.weak_perles),
            (f"violation.{k}.gamma", [list(f) for f in v.gamma.facets]),
            (f"violation.{k}.core", [list(f) for f in v.core.triangles.facets]),
        ]
        fields += [(f"violation.{k}.{name}", val) for name, val in v.obstruction.fields()]
    return fields


def _plain(value):
    if isinstance(value, tuple):
        return [_plain(x) for x in value]
    if isinstance(value, list):
        return [_plain(x) for x in value]
    return value


def format_report(fields, header: str | None = None) -> str:
    lines = [f"# {header}"] if header else []
    lines += [f"{k}: {json.dumps(_plain(v))}" for k, v in fields]
    return "\n".join(lines) + "\n"


def parse_report(text: str) -> list:
    out = []
    for ln in text.splitlines():
        if not ln.strip() or ln.startswith("#"):
            continue
        key, _, raw = ln.partition(": ")
        out.append((key, json.loads(raw)))
    return out


def report_to_json(fields) -> str:
    return json.dumps({k: _plain(v) for k, v in fields}, indent=2)


# ------------------------------------------------------------ model files
#
# "d <d>" on the first line, then one facet per line as vertex ids.

def format_model(P: SimplePolytopeModel) -> str:
    return "\n".join([f"d {P.d}"] + [" ".join(map(str, F)) for F in P.facets]) + "\n"


def parse_model(text: str) -> SimplePolytopeModel:
    lines = [ln.strip() for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
    if not lines:
        raise ModelError("empty model input")
    head = lines[0].split()
    if len(head) != 2 or head[0] != "d":
        raise ModelError(f"bad model header: {lines[0]!r}")
    return SimplePolytopeModel.from_facets(int(head[1]), [tuple(int(t) for t in ln.split()) for ln in lines[1:]])
