"""Polytope families, on the simple (model) side or the simplicial (sphere) side."""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, permutations, product

from .complex import (
    SimplicialComplex,
    build_complex,
    cone_over,
    free_ridges,
    stellar_subdivide,
)
from .conjecture import ModelError, SimplePolytopeModel
from .graphs import find_isomorphism, Graph


class GeneratorError(ValueError):
    pass


def simplex_boundary(d: int) -> SimplicialComplex:
    """Boundary of the d-simplex: the d+1 subsets of {0..d} missing one vertex."""
    if d < 1:
        raise GeneratorError("d must be at least 1")
    return build_complex(combinations(range(d + 1), d), d + 1)


# ----------------------------------------------------------------- cyclic

@dataclass(frozen=True)
class CyclicSpec:
    d: int
    n: int

    def __post_init__(self):
        if self.d < 2 or self.n <= self.d:
            raise GeneratorError(f"need d >= 2 and n > d, got d={self.d}, n={self.n}")


def gale_evenness(S, n: int) -> bool:
    """Every pair of non-members has an even number of members strictly between them."""
    inside = set(S)
    outside = [i for i in range(n) if i not in inside]
    for a, b in zip(outside, outside[1:]):
        if sum(1 for x in range(a + 1, b) if x in inside) % 2:
            return False
    return True


def cyclic_facets_gale(spec: CyclicSpec) -> SimplicialComplex:
    facets = [S for S in combinations(range(spec.n), spec.d) if gale_evenness(S, spec.n)]
    return build_complex(facets, spec.n)


def is_cyclic_pair_union(S, n: int) -> bool:
    """Even d only: S splits into pairs {i, i+1} taken mod n."""
    rest = set(S)
    if len(rest) % 2:
        return False

    def peel(rest):
        if not rest:
            return True
        i = min(rest)
        if (i + 1) % n in rest and peel(rest - {i, (i + 1) % n}):
            return True
        # i may instead be the upper end of the wrap-around pair {n-1, 0}
        return i == 0 and n - 1 in rest and peel(rest - {0, n - 1})

    return peel(frozenset(rest))


# ----------------------------------------------------------------- models

def simplex_model(d: int) -> SimplePolytopeModel:
    """The d-simplex: vertex i is on every facet except facet i."""
    facets = [tuple(v for v in range(d + 1) if v != j) for j in range(d + 1)]
    return SimplePolytopeModel.from_facets(d, facets, d + 1)


def segment_model() -> SimplePolytopeModel:
    return simplex_model(1)


def polygon_model(n: int) -> SimplePolytopeModel:
    if n < 3:
        raise GeneratorError("a polygon needs at least 3 vertices")
    return SimplePolytopeModel.from_facets(2, [(i, (i + 1) % n) for i in range(n)], n)


def product_model(P1: SimplePolytopeModel, P2: SimplePolytopeModel) -> SimplePolytopeModel:
    """Vertex (i, j) gets id i * |V2| + j."""
    n2 = P2.vertex_count
    facets = [[i * n2 + j for i in F for j in range(n2)] for F in P1.facets]
    facets += [[i * n2 + j for i in range(P1.vertex_count) for j in G] for G in P2.facets]
    return SimplePolytopeModel.from_facets(P1.d + P2.d, facets, P1.vertex_count * n2)


def cube_model(d: int = 3) -> SimplePolytopeModel:
    P = segment_model()
    for _ in range(d - 1):
        P = product_model(P, segment_model())
    return P


def prism_model(n: int) -> SimplePolytopeModel:
    return product_model(polygon_model(n), segment_model())


def wedge_model(P: SimplePolytopeModel, F: int) -> SimplePolytopeModel:
    """Wedge over facet F.  Ids: vertices of F first (in order), then a
    (top, bottom) pair for each remaining vertex.  Facets: top, bottom, then
    the wedge of every other facet in order."""
    if not 0 <= F < len(P.facets):
        raise GeneratorError(f"invalid facet index {F}")
    in_f = P.facets[F]
    off = [v for v in range(P.vertex_count) if v not in set(in_f)]
    new_id = {v: i for i, v in enumerate(in_f)}
    top = {v: len(in_f) + 2 * i for i, v in enumerate(off)}
    bot = {v: len(in_f) + 2 * i + 1 for i, v in enumerate(off)}
    facets = [[new_id[v] for v in in_f] + [top[v] for v in off],
              [new_id[v] for v in in_f] + [bot[v] for v in off]]
    for j, G in enumerate(P.facets):
        if j == F:
            continue
        facets.append([new_id[v] if v in new_id else top[v] for v in G] + [bot[v] for v in G if v not in new_id])
    try:
        return SimplePolytopeModel.from_facets(P.d + 1, facets, len(in_f) + 2 * len(off))
    except ModelError as exc:
        raise GeneratorError(f"wedge construction broke simplicity: {exc}") from exc


def truncate_vertex_model(P: SimplePolytopeModel, v: int) -> SimplePolytopeModel:
    """Cut off vertex v.  The new vertices take ids n, n+1, ... in the order of
    v's sorted neighbours; v itself is removed and the ids above it shift down."""
    if not 0 <= v < P.vertex_count:
        raise GeneratorError(f"invalid vertex {v}")
    nbrs = sorted(P.graph.adjacency[v])
    n = P.vertex_count
    fresh = {w: n + i for i, w in enumerate(nbrs)}
    facets = []
    for G in P.facets:
        if v in G:
            # v_i lies on G iff the edge v w_i does
            G = [u for u in G if u != v] + [fresh[w] for w in nbrs if w in G]
        facets.append(list(G))
    facets.append(list(fresh.values()))
    shift = lambda u: u - 1 if u > v else u  # noqa: E731
    facets = [[shift(u) for u in G] for G in facets]
    try:
        return SimplePolytopeModel.from_facets(P.d, facets, n - 1 + len(nbrs))
    except ModelError as exc:
        raise GeneratorError(f"truncation bookkeeping failed: {exc}") from exc


def stacked_boundary(d: int, stackings=()) -> SimplicialComplex:
    """Boundary of a stacked d-polytope; each step cones over the chosen facet's boundary."""
    if d < 2:
        raise GeneratorError("d must be at least 2")
    K = simplex_boundary(d)
    for idx in stackings:
        if not 0 <= idx < len(K.facets):
            raise GeneratorError(f"facet index {idx} out of range 0..{len(K.facets) - 1}")
        K = stellar_subdivide(K, K.facets[idx], K.vertex_count)
    return K


def incidence_graph(P: SimplePolytopeModel) -> tuple:
    """Vertex-facet incidence graph with colours 0 (vertex) and 1 (facet)."""
    n = P.vertex_count
    edges = [(v, n + j) for j, F in enumerate(P.facets) for v in F]
    return Graph.from_edges(n + len(P.facets), edges), [0] * n + [1] * len(P.facets)


def models_isomorphic(P1: SimplePolytopeModel, P2: SimplePolytopeModel) -> bool:
    """Combinatorial equivalence, decided on the coloured incidence graphs."""
    if (P1.d, P1.vertex_count, len(P1.facets)) != (P2.d, P2.vertex_count, len(P2.facets)):
        return False
    G1, c1 = incidence_graph(P1)
    G2, c2 = incidence_graph(P2)
    return find_isomorphism(G1, G2, c1, c2) is not None


# ------------------------------------------------------------------- pile

@dataclass(frozen=True)
class PileSpec:
    a: int
    b: int
    c: int

    def __post_init__(self):
        if min(self.a, self.b, self.c) < 1:
            raise GeneratorError("pile extents must be positive")

    @property
    def extents(self) -> tuple:
        return (self.a, self.b, self.c)

    @property
    def point_count(self) -> int:
        return (self.a + 1) * (self.b + 1) * (self.c + 1)

    def vertex_id(self, p) -> int:
        x, y, z = p
        return (x * (self.b + 1) + y) * (self.c + 1) + z

    def point(self, vid: int) -> tuple:
        z = vid % (self.c + 1)
        rest = vid // (self.c + 1)
        return (rest // (self.b + 1), rest % (self.b + 1), z)


_UNIT = ((1, 0, 0), (0, 1, 0), (0, 0, 1))


def pile_triangulation(spec: PileSpec) -> SimplicialComplex:
    """Freudenthal triangulation: one monotone lattice path per cube and axis order."""
    tets = []
    for corner in product(range(spec.a), range(spec.b), range(spec.c)):
        for perm in permutations(range(3)):
            p = list(corner)
            path = [spec.vertex_id(p)]
            for axis in perm:
                p[axis] += 1
                path.append(spec.vertex_id(p))
            tets.append(path)
    return build_complex(tets, spec.point_count)


def sphere_from_pile(spec: PileSpec) -> SimplicialComplex:
    """The pile plus a cone (apex id = point count) over its boundary."""
    ball = pile_triangulation(spec)
    boundary = [r for r, _ in free_ridges(ball)]
    cone = cone_over(build_complex(boundary, spec.point_count), spec.point_count)
    return build_complex(list(ball.facets) + list(cone.facets), spec.point_count + 1)
