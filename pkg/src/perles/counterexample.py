"""A 3-sphere with a non-separating, dually 3-connected Perles-type subcomplex
that is not a vertex star.

Pipeline: embed a two-room house B (Bing's house with two walls left out)
in the Freudenthal triangulation of a 2x3x4 pile of cubes, cone off the
pile boundary, subdivide one pair of vertical edges in each chimney, make
B induced, flood-fill the three regions cut out by B, and collect the
partial vertex stars that point into the region of matching colour.

:func:`verify_certificate` re-derives every claimed property from the two
facet lists alone.
"""
from __future__ import annotations

import heapq
import time
from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

from .complex import (
    SimplicialComplex,
    build_complex,
    dual_graph,
    free_ridges,
    is_closed_pseudomanifold,
    ridge_incidence,
    subdivide_facets,
)
from .conjecture import (
    CoreError,
    complement_connected,
    compute_core,
    free_vertex_map,
    which_vertex_star,
)
from .generators import PileSpec, pile_triangulation, sphere_from_pile
from .graphs import (
    Graph,
    connected_components,
    induced_subgraph,
    is_connected,
    naatz_k_connected,
    vertex_connectivity,
)
from .homology import homology_profile, separates_sphere


class PipelineError(RuntimeError):
    def __init__(self, stage: str, message: str, witness=None):
        super().__init__(f"[{stage}] {message}" + (f" (witness {witness})" if witness is not None else ""))
        self.stage = stage
        self.witness = witness


OUTSIDE, UPSTAIRS, DOWNSTAIRS = 0, 1, 2
REGION_NAMES = {OUTSIDE: "outside", UPSTAIRS: "upstairs", DOWNSTAIRS: "downstairs"}
MIN_SPEC = PileSpec(2, 3, 4)


@dataclass
class ColoredSubcomplex:
    B: SimplicialComplex
    color: dict                                   # vertex -> 0/1/2; separation vertices absent
    coords: dict = field(default_factory=dict)    # vertex -> (x, y, z); the cone apex has none
    chimney_walls: dict = field(default_factory=dict)  # "upper"/"lower" -> frozenset of triangles
    apex: int | None = None                       # cone vertex of the ambient sphere


@dataclass(frozen=True)
class Separation:
    edges: tuple      # ring edges inside the chimneys
    membrane: tuple   # triangles spanning each ring; tracked through later subdivisions


# ----------------------------------------------------------------- embedding
#
# Axis x is vertical (extent 2), y and z are horizontal (extents 3 and 4).
# A square is (normal axis, level, (i, j)) with (i, j) the least corner in the
# two remaining axes, taken in increasing axis order.
#
#   x = 2 roof          everything except the cell (y, z) = (1, 2)   <- upper chimney exit
#   x = 1 middle floor  everything except the cells (1, 1) and (1, 2)
#   x = 0 bottom        everything except the cell (1, 1)            <- lower chimney entrance
#   y = 0, y = 3, z = 0, z = 4   the four outer walls, full height
#
#   upper chimney  x in [1, 2] around cell (y, z) = (1, 2): the tube from the
#                  downstairs room (through the floor hole) out through the roof
#   lower chimney  x in [0, 1] around cell (y, z) = (1, 1): the tube from the
#                  outside (through the bottom hole) up into the upstairs room
#
#            x=2  +-----+-----+-----+-----+
#                 |     |     | ^^^ |     |     ^^^ roof hole, cell (1,2)
#            x=1  +-----+-----+=====+-----+     === floor holes (1,1),(1,2)
#                 |     | vvv |     |     |     vvv bottom hole, cell (1,1)
#            x=0  +-----+-----+-----+-----+
#                       (section along z at fixed y)

def _house_squares(spec: PileSpec) -> tuple:
    a, b, c = spec.extents
    shell, floor = [], []
    for y in range(b):
        for z in range(c):
            if (y, z) != (1, 1):
                shell.append((0, 0, (y, z)))
            if (y, z) != (1, 2):
                shell.append((0, a, (y, z)))
            if (y, z) not in ((1, 1), (1, 2)):
                floor.append((0, 1, (y, z)))
    for x in range(a):
        for z in range(c):
            shell += [(1, 0, (x, z)), (1, b, (x, z))]
        for y in range(b):
            shell += [(2, 0, (x, y)), (2, c, (x, y))]
    upper = [(1, 1, (1, 2)), (1, 2, (1, 2)), (2, 2, (1, 1)), (2, 3, (1, 1))]
    lower = [(1, 1, (0, 1)), (1, 2, (0, 1)), (2, 1, (0, 1)), (2, 2, (0, 1))]
    return shell + floor, upper, lower


def _square_triangles(spec: PileSpec, square) -> list:
    """The two Freudenthal triangles of a unit square (diagonal in the (+,+) direction)."""
    axis, level, (i, j) = square
    u, w = [t for t in range(3) if t != axis]
    p = [0, 0, 0]
    p[axis], p[u], p[w] = level, i, j

    def vid(du, dw):
        q = list(p)
        q[u] += du
        q[w] += dw
        return spec.vertex_id(q)

    return [tuple(sorted((vid(0, 0), vid(1, 0), vid(1, 1)))),
            tuple(sorted((vid(0, 0), vid(0, 1), vid(1, 1))))]


def embed_bing_house(spec: PileSpec = MIN_SPEC) -> ColoredSubcomplex:
    if spec.extents != MIN_SPEC.extents:
        raise PipelineError("embed", f"the embedding table is drawn for extents {MIN_SPEC.extents}", spec.extents)
    rest, upper, lower = _house_squares(spec)
    tri = lambda sq: [t for s in sq for t in _square_triangles(spec, s)]  # noqa: E731
    B = build_complex(tri(rest + upper + lower), spec.point_count + 1)
    pile = pile_triangulation(spec)
    missing = [t for t in B.facets if t not in pile]
    if missing:
        raise PipelineError("embed", "house triangle not in the pile triangulation", missing[0])
    coords = {v: tuple(Fraction(x) for x in spec.point(v)) for v in range(spec.point_count)}
    color = {v: int(sum(coords[v])) % 3 for v in B.vertices}
    walls = {"upper": frozenset(tri(upper)), "lower": frozenset(tri(lower))}
    house = ColoredSubcomplex(B, color, coords, walls, apex=spec.point_count)
    problem = house_invariant_failure(house)
    if problem:
        raise PipelineError("embed", problem[0], problem[1])
    return house


def edge_degrees(B: SimplicialComplex) -> dict:
    deg = defaultdict(int)
    for t in B.facets:
        for e in combinations(t, 2):
            deg[e] += 1
    return dict(deg)


def house_invariant_failure(house: ColoredSubcomplex):
    """None, or (reason, witness) for the first violated house invariant."""
    B = house.B
    if not B.is_pure or B.dim != 2:
        return ("B must be a pure 2-complex", B.dim)
    for e, k in sorted(edge_degrees(B).items()):
        if k not in (2, 3):
            return (f"edge in {k} triangles", e)
        a, b = e
        if a in house.color and b in house.color and house.color[a] == house.color[b]:
            return ("monochromatic edge", e)
    h = homology_profile(B)
    if h.betti[2] != 0 or h.torsion[1]:
        return ("unexpected homology", str(h))
    return None


# ------------------------------------------------------------- subdivisions

class _Working:
    """Mutable pure complex with tracked subcomplexes, for long runs of subdivisions."""

    def __init__(self, K: SimplicialComplex, coords: dict, tracked: dict):
        self.facets = set(K.facets)
        self.by_vertex = defaultdict(set)
        for f in self.facets:
            for v in f:
                self.by_vertex[v].add(f)
        self.next_id = K.vertex_count
        self.coords = dict(coords)
        self.tracked = {k: set(v) for k, v in tracked.items()}
        self.created = []

    def containing(self, face) -> set:
        sets = sorted((self.by_vertex.get(v, set()) for v in face), key=len)
        out = set(sets[0])
        for s in sets[1:]:
            out &= s
        return out

    def is_face(self, face) -> bool:
        return bool(self.containing(face))

    def neighbors(self, v: int) -> set:
        return {w for f in self.by_vertex.get(v, ()) for w in f} - {v}

    def subdivide(self, face) -> int:
        face = tuple(sorted(face))
        old = self.containing(face)
        if not old:
            raise PipelineError("subdivide", "not a face", face)
        u = self.next_id
        self.next_id += 1
        for f in old:
            self.facets.discard(f)
            for v in f:
                self.by_vertex[v].discard(f)
        for g in subdivide_facets(old, face, u):
            self.facets.add(g)
            for v in g:
                self.by_vertex[v].add(g)
        for name, faces in self.tracked.items():
            hit = [f for f in faces if set(face) <= set(f)]
            for f in hit:
                faces.discard(f)
            faces.update(subdivide_facets(hit, face, u))
        pts = [self.coords.get(v) for v in face]
        if all(p is not None for p in pts):
            self.coords[u] = tuple(sum(c) / len(pts) for c in zip(*pts))
        self.created.append((u, face))
        return u

    def complex(self) -> SimplicialComplex:
        return SimplicialComplex(tuple(sorted(self.facets)), self.next_id)


def _sub_house(house: ColoredSubcomplex, B_facets, coords, vertex_count) -> ColoredSubcomplex:
    B = SimplicialComplex(tuple(sorted(B_facets)), vertex_count)
    return ColoredSubcomplex(B, dict(house.color), coords, house.chimney_walls, house.apex)


# colour of (bottom, top) end of the designated vertical edges
CHIMNEY_PATTERNS = {"upper": (2, 0), "lower": (0, 1)}


def chimney_edges(house: ColoredSubcomplex) -> dict:
    out = {}
    for name, (lo, hi) in CHIMNEY_PATTERNS.items():
        edges = set()
        for t in house.chimney_walls[name]:
            for a, b in combinations(t, 2):
                pa, pb = house.coords[a], house.coords[b]
                if pa[1:] != pb[1:] or abs(pa[0] - pb[0]) != 1:
                    continue
                bottom, top = (a, b) if pa[0] < pb[0] else (b, a)
                if (house.color[bottom], house.color[top]) == (lo, hi):
                    edges.add((a, b))
        if len(edges) != 2:
            raise PipelineError("chimneys", f"expected two {lo}-below-{hi} edges in the {name} chimney",
                                sorted(edges))
        out[name] = sorted(edges)
    return out


def subdivide_chimneys(S: SimplicialComplex, house: ColoredSubcomplex) -> tuple:
    """Subdivide the four designated vertical chimney edges.

    Returns ``(S', house', separation)``.  In each chimney the two new
    vertices and the two ring vertices (their remaining B'-neighbours) form a
    4-cycle; the two triangles through the ring's diagonal span it.
    """
    targets = chimney_edges(house)
    work = _Working(S, house.coords, {"B": house.B.facets})
    ring_edges, membrane = [], []
    for name in ("upper", "lower"):
        mids = []
        for e in targets[name]:
            m = work.subdivide(e)
            mids.append((m, e))
        ring = None
        for m, e in mids:
            nb = {w for t in work.tracked["B"] if m in t for w in t} - {m, *e}
            if len(nb) != 2 or (ring is not None and nb != ring):
                raise PipelineError("chimneys", f"{name} chimney ring is not a 4-cycle", sorted(nb))
            ring = nb
            ring_edges += [tuple(sorted((m, w))) for w in nb]
        p0, p1 = sorted(ring)
        for m, _ in mids:
            t = tuple(sorted((p0, p1, m)))
            if not work.is_face(t):
                raise PipelineError("chimneys", "membrane triangle missing", t)
            membrane.append(t)
    S2 = work.complex()
    house2 = _sub_house(house, work.tracked["B"], work.coords, S2.vertex_count)
    return S2, house2, Separation(tuple(sorted(ring_edges)), tuple(sorted(membrane)))


ITERATION_CAP = 100_000


def make_induced(S: SimplicialComplex, house: ColoredSubcomplex, sep: Separation) -> tuple:
    """Subdivide until B is induced and no outside vertex sees one colour twice.

    Returns ``(P_dual, house'', separation'')``; the membrane is carried along.
    """
    work = _Working(S, house.coords, {"B": house.B.facets, "membrane": sep.membrane})
    in_b = set(house.B.vertices)
    b_faces = set()
    for t in house.B.facets:
        for k in (1, 2, 3):
            b_faces.update(combinations(t, k))
    steps = 0
    # (a) minimal non-faces of B, by increasing dimension, lexicographically
    for k in (2, 3, 4):
        while True:
            bad = set()
            for f in work.facets:
                for s in combinations([v for v in f if v in in_b], k):
                    if s not in b_faces and all(r in b_faces for r in combinations(s, k - 1)):
                        bad.add(s)
            if not bad:
                break
            for s in sorted(bad):
                if work.is_face(s):
                    work.subdivide(s)
                    steps += 1
                    if steps > ITERATION_CAP:
                        raise PipelineError("induce", "iteration cap exceeded", s)
    # (b) outside vertices adjacent to two B-vertices of one colour
    def conflict(w):
        seen = {}
        for v in sorted(work.neighbors(w)):
            c = house.color.get(v)
            if c is None:
                continue
            if c in seen:
                return seen[c], v
            seen[c] = v
        return None

    heap = [w for w in work.by_vertex if w not in in_b]
    heapq.heapify(heap)
    while heap:
        w = heapq.heappop(heap)
        pair = conflict(w)
        if pair is None:
            continue
        u = work.subdivide((min(pair), w))
        steps += 1
        if steps > ITERATION_CAP:
            raise PipelineError("induce", "iteration cap exceeded", (w, pair))
        heapq.heappush(heap, w)
        heapq.heappush(heap, u)
    P = work.complex()
    house2 = _sub_house(house, work.tracked["B"], work.coords, P.vertex_count)
    sep2 = Separation(sep.edges, tuple(sorted(work.tracked["membrane"])))
    return P, house2, sep2


def induced_violations(P: SimplicialComplex, house: ColoredSubcomplex) -> tuple:
    """(faces of P on B-vertices that are not in B, same-colour conflicts); both empty when done."""
    in_b = set(house.B.vertices)
    nonfaces = set()
    for f in P.facets:
        sub = [v for v in f if v in in_b]
        for k in range(2, len(sub) + 1):
            for s in combinations(sub, k):
                if s not in house.B:
                    nonfaces.add(s)
    adj = defaultdict(set)
    for f in P.facets:
        for a, b in combinations(f, 2):
            adj[a].add(b)
            adj[b].add(a)
    conflicts = []
    for w in sorted(adj):
        if w in in_b:
            continue
        cols = [house.color[v] for v in adj[w] if v in house.color]
        if len(cols) != len(set(cols)):
            conflicts.append(w)
    return sorted(nonfaces), conflicts


# ------------------------------------------------------------------ regions

def classify_regions(P: SimplicialComplex, house: ColoredSubcomplex, sep: Separation) -> dict:
    """Label every tetrahedron outside / upstairs / downstairs.

    Flood fill across triangles that are neither in B nor in the chimney
    membranes.  Outside holds the cone apex; of the other two, the region
    whose vertices sit higher on average (larger x) is upstairs.
    """
    cut = set(house.B.facets) | set(sep.membrane)
    edges = []
    for r, fs in ridge_incidence(P).items():
        if len(fs) == 2 and r not in cut:
            edges.append(tuple(fs))
    comps = connected_components(Graph.from_edges(len(P.facets), edges))
    if len(comps) != 3:
        raise PipelineError("regions", f"expected 3 regions, found {len(comps)}", [len(c) for c in comps])
    outside = [c for c in comps if any(house.apex in P.facets[i] for i in c)]
    if len(outside) != 1:
        raise PipelineError("regions", "cannot locate the outside region", house.apex)
    inner = [c for c in comps if c is not outside[0]]

    def height(comp):
        xs = [house.coords[v][0] for i in comp for v in P.facets[i] if v in house.coords]
        return sum(xs) / len(xs)

    down, up = sorted(inner, key=height)
    labels = {}
    for lab, comp in ((OUTSIDE, outside[0]), (UPSTAIRS, up), (DOWNSTAIRS, down)):
        for i in comp:
            labels[P.facets[i]] = lab
    return labels


def assemble_gamma(P: SimplicialComplex, house: ColoredSubcomplex, regions: dict) -> SimplicialComplex:
    """Union of the partial stars: for B-vertex v of colour c, the tetrahedra
    around v in the region labelled c."""
    owner = {}
    for v in sorted(house.color):
        c = house.color[v]
        for i in P.facets_containing((v,)):
            f = P.facets[i]
            if regions[f] != c:
                continue
            if f in owner:
                raise PipelineError("assemble", f"tetrahedron claimed by {owner[f]} and {v}", f)
            owner[f] = v
    if not owner:
        raise PipelineError("assemble", "no partial stars")
    return SimplicialComplex(tuple(sorted(owner)), P.vertex_count)


# --------------------------------------------------------------- certificate

def gb_star_graph(Delta: SimplicialComplex, Gamma: SimplicialComplex, core_triangles: SimplicialComplex) -> tuple:
    """Core triangles, joined when they share an edge and are joinable by a
    dual path of Gamma-tetrahedra around that edge.  Returns (graph, triangles)."""
    tris = list(core_triangles.facets)
    index = {t: i for i, t in enumerate(tris)}
    gamma = set(Gamma.facets)
    by_edge = defaultdict(list)
    for t in tris:
        for e in combinations(t, 2):
            by_edge[e].append(t)
    edges = set()
    for rho, ts in by_edge.items():
        if len(ts) < 2:
            continue
        tets = [Delta.facets[i] for i in Delta.facets_containing(rho) if Delta.facets[i] in gamma]
        pos = {f: k for k, f in enumerate(tets)}
        links = []
        for f, g in combinations(tets, 2):
            if len(set(f) & set(g)) == 3:
                links.append((pos[f], pos[g]))
        comp_of = {}
        for k, comp in enumerate(connected_components(Graph.from_edges(len(tets), links))):
            for x in comp:
                comp_of[tets[x]] = k
        groups = defaultdict(list)
        for t in ts:
            # both tetrahedra next to a core triangle lie in Gamma, hence in one arc
            f = next(tets[x] for x in range(len(tets)) if set(t) <= set(tets[x]))
            groups[comp_of[f]].append(index[t])
        for g in groups.values():
            edges.update(combinations(sorted(g), 2))
    return Graph.from_edges(len(tris), edges), tris


def _kconn(G: Graph, k: int) -> tuple:
    """(exact connectivity >= k, distance-two criterion) with small graphs handled directly."""
    if G.node_count <= k:
        return False, False
    return vertex_connectivity(G) >= k, naatz_k_connected(G, k).ok


def _joinable(Gamma: SimplicialComplex, fv: dict, core: SimplicialComplex) -> bool:
    """Every tetrahedron reaches, through tetrahedra with the same free vertex,
    one that has a core triangle as a face."""
    core_tris = set(core.facets)
    by_v = defaultdict(list)
    for f, v in fv.items():
        by_v[v].append(f)
    for v, tets in by_v.items():
        pos = {f: k for k, f in enumerate(tets)}
        links = [(pos[f], pos[g]) for f, g in combinations(tets, 2) if len(set(f) & set(g)) == 3]
        for comp in connected_components(Graph.from_edges(len(tets), links)):
            if not any(tuple(x for x in tets[k] if x != y) in core_tris for k in comp for y in tets[k]):
                return False
    return True


def _planar(G: Graph):
    try:
        import networkx as nx
    except ImportError:
        return None
    H = nx.Graph()
    H.add_nodes_from(range(G.node_count))
    H.add_edges_from(G.edges)
    return bool(nx.check_planarity(H)[0])


@dataclass
class Certificate:
    checks: list                      # (name, value) in fixed order
    timings: dict = field(default_factory=dict, compare=False)

    def get(self, name):
        return dict(self.checks)[name]

    @property
    def verdict(self) -> str:
        return "counterexample" if self.get("counterexample") else "not-a-counterexample"


REQUIRED = (
    "pure_3_dimensional", "dually_connected", "one_free_ridge_per_facet", "non_separating",
    "not_a_vertex_star", "dually_3_connected", "core_nonempty", "core_no_free_edge",
    "core_h2_zero", "core_dually_connected", "gb_star_3_connected",
)


def verify_certificate(Delta: SimplicialComplex, Gamma: SimplicialComplex) -> Certificate:
    """Check every claimed property of (Delta, Gamma) from the facet lists alone."""
    checks, timings = [], {}
    clock = time.perf_counter

    def put(name, value):
        checks.append((name, value))

    t = clock()
    put("sphere_facets", len(Delta.facets))
    put("sphere_vertices", len(Delta.vertices))
    put("gamma_facets", len(Gamma.facets))
    closed = is_closed_pseudomanifold(Delta)
    put("sphere_closed_pseudomanifold", closed.ok)
    subset = [f for f in Gamma.facets if f not in Delta.facet_index]
    put("gamma_facets_in_sphere", not subset)
    put("pure_3_dimensional", Gamma.is_pure and Gamma.dim == 3 == Delta.dim and not subset)
    dual = dual_graph(Gamma) if Gamma.is_pure and not Gamma.is_empty else Graph(0, ())
    put("dually_connected", dual.node_count > 0 and is_connected(dual))
    try:
        fv = free_vertex_map(Gamma)
        put("one_free_ridge_per_facet", True)
        put("one_free_ridge_witness", None)
    except CoreError as exc:
        fv = None
        put("one_free_ridge_per_facet", False)
        put("one_free_ridge_witness", exc.facet)
    put("non_separating", complement_connected(Delta, Gamma))
    timings["shape"] = clock() - t

    t = clock()
    put("non_separating_homology", not separates_sphere(Gamma, Delta.dim) if not Gamma.is_empty else False)
    timings["homology"] = clock() - t

    star = which_vertex_star(Delta, Gamma)
    put("not_a_vertex_star", star is None)
    put("vertex_star_witness", star)

    t = clock()
    exact3, naatz3 = _kconn(dual, 3) if dual.node_count else (False, False)
    put("dual_connectivity_flow", exact3)
    put("dual_connectivity_naatz", naatz3)
    put("dually_3_connected", exact3 and naatz3)
    put("weak_perles", exact3 and naatz3)
    timings["dual_connectivity"] = clock() - t

    t = clock()
    core_ok = fv is not None and closed.ok and checks[5][1]
    core = compute_core(Delta, Gamma) if core_ok else None
    K = core.triangles if core else None
    put("core_triangles", len(K.facets) if K is not None else None)
    put("core_nonempty", K is not None and not K.is_empty)
    nonempty = K is not None and not K.is_empty
    free = free_ridges(K) if nonempty else []
    put("core_no_free_edge", K is not None and not free)
    put("core_free_edge_witness", free[0][0] if free else None)
    if nonempty:
        h = homology_profile(K)
        put("core_homology", str(h))
        put("core_h2_zero", h.betti[2] == 0 if K.dim == 2 else False)
        put("core_dually_connected", is_connected(dual_graph(K)))
    else:
        put("core_homology", None)
        put("core_h2_zero", K is not None)
        put("core_dually_connected", K is not None)
    timings["core"] = clock() - t

    t = clock()
    if nonempty and K.dim == 2:
        gb, tris = gb_star_graph(Delta, Gamma, K)
        gb_exact, gb_naatz = _kconn(gb, 3)
        local_ok, local_witness = True, None
        by_vertex = defaultdict(list)
        for i, tri in enumerate(tris):
            for v in tri:
                by_vertex[v].append(i)
        for v in sorted(by_vertex):
            sub, _ = induced_subgraph(gb, by_vertex[v])
            if sub.node_count < 3 or vertex_connectivity(sub) < 2:
                local_ok, local_witness = False, v
                break
        joinable = _joinable(Gamma, fv, K)
        put("gb_star_nodes", gb.node_count)
        put("gb_star_edges", len(gb.edges))
        put("gb_star_3_connected_flow", gb_exact)
        put("gb_star_3_connected_naatz", gb_naatz)
        put("gb_star_3_connected", gb_exact and gb_naatz)
        put("gb_star_local_2_connected", local_ok)
        put("gb_star_local_witness", local_witness)
        put("joinable_to_core", joinable)
        implied = gb_exact and gb_naatz and joinable
        put("gb_star_implies_dual_3_connected", (not implied) or (exact3 and naatz3))
    else:
        for name in ("gb_star_nodes", "gb_star_edges"):
            put(name, 0)
        for name in ("gb_star_3_connected_flow", "gb_star_3_connected_naatz", "gb_star_3_connected",
                     "gb_star_local_2_connected"):
            put(name, False)
        put("gb_star_local_witness", None)
        put("joinable_to_core", False)
        put("gb_star_implies_dual_3_connected", True)
    timings["gb_star"] = clock() - t
    put("dual_graph_planar", _planar(dual) if dual.node_count else None)

    d = dict(checks)
    put("counterexample", all(d[k] for k in REQUIRED) and d["sphere_closed_pseudomanifold"])
    return Certificate(checks, timings)


# ------------------------------------------------------------------ driver

@dataclass
class Counterexample:
    sphere: SimplicialComplex
    gamma: SimplicialComplex
    certificate: Certificate
    house: ColoredSubcomplex
    separation: Separation
    regions: dict
    new_vertex_counts: dict


def run_pipeline(spec: PileSpec = MIN_SPEC) -> Counterexample:
    S = sphere_from_pile(spec)
    house = embed_bing_house(spec)
    n0 = S.vertex_count
    S1, house1, sep = subdivide_chimneys(S, house)
    n1 = S1.vertex_count
    P, house2, sep2 = make_induced(S1, house1, sep)
    ok = is_closed_pseudomanifold(P)
    if not ok.ok:
        raise PipelineError("induce", "result is not a closed pseudomanifold", ok.witness)
    regions = classify_regions(P, house2, sep2)
    gamma = assemble_gamma(P, house2, regions)
    cert = verify_certificate(P, gamma)
    counts = {"chimneys": n1 - n0, "induce": P.vertex_count - n1}
    return Counterexample(P, gamma, cert, house2, sep2, regions, counts)


def build_counterexample() -> tuple:
    """(P_dual, Gamma, certificate) for the 2x3x4 pile."""
    ce = run_pipeline(MIN_SPEC)
    return ce.sphere, ce.gamma, ce.certificate
