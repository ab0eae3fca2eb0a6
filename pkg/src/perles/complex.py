"""Finite simplicial complexes stored by their facets.

A simplex is a strictly increasing tuple of nonnegative ints.  A complex keeps
only its inclusion-maximal faces, sorted lexicographically, so two complexes
compare equal exactly when they have the same faces.
"""
from __future__ import annotations

import heapq
from collections import defaultdict
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from pathlib import Path
from typing import Iterable, NamedTuple, Sequence

from .graphs import Graph, connected_components

Simplex = tuple  # strictly increasing tuple of vertex ids


class ComplexError(ValueError):
    pass


class Witnessed(NamedTuple):
    ok: bool
    witness: object = None


def simplex(vertices: Iterable[int]) -> Simplex:
    """Canonical simplex from an iterable of distinct vertex ids."""
    vs = tuple(sorted(vertices))
    if not vs:
        raise ComplexError("empty simplex")
    for a, b in zip(vs, vs[1:]):
        if a == b:
            raise ComplexError(f"repeated vertex {a} in face {vs}")
    if vs[0] < 0:
        raise ComplexError(f"negative vertex id in {vs}")
    return vs


def _proper_faces(face: Simplex) -> Iterable[Simplex]:
    for k in range(1, len(face)):
        yield from combinations(face, k)


@dataclass(frozen=True)
class SimplicialComplex:
    """Complex given by its facets; ``vertex_count`` bounds the vertex ids."""

    facets: tuple
    vertex_count: int

    @property
    def dim(self) -> int:
        return max((len(f) for f in self.facets), default=0) - 1

    @property
    def is_empty(self) -> bool:
        return not self.facets

    @cached_property
    def vertices(self) -> tuple:
        return tuple(sorted({v for f in self.facets for v in f}))

    @cached_property
    def is_pure(self) -> bool:
        return len({len(f) for f in self.facets}) <= 1

    @cached_property
    def facet_index(self) -> dict:
        return {f: i for i, f in enumerate(self.facets)}

    @cached_property
    def _faces_by_dim(self) -> dict:
        out = defaultdict(set)
        for f in self.facets:
            for k in range(1, len(f) + 1):
                out[k - 1].update(combinations(f, k))
        return {k: sorted(v) for k, v in out.items()}

    @cached_property
    def _face_set(self) -> frozenset:
        return frozenset(s for faces in self._faces_by_dim.values() for s in faces)

    @cached_property
    def _vertex_facets(self) -> dict:
        out = defaultdict(list)
        for i, f in enumerate(self.facets):
            for v in f:
                out[v].append(i)
        return dict(out)

    def __contains__(self, face) -> bool:
        return tuple(sorted(face)) in self._face_set

    def facets_containing(self, face: Sequence[int]) -> list:
        """Indices of the facets that contain ``face``."""
        face = tuple(face)
        if not face:
            return list(range(len(self.facets)))
        cand = self._vertex_facets.get(face[0], ())
        fs = set(face)
        return [i for i in cand if fs.issubset(self.facets[i])]

    def f_vector(self) -> tuple:
        return tuple(len(self._faces_by_dim.get(k, ())) for k in range(self.dim + 1))

    def euler_characteristic(self) -> int:
        return sum((-1) ** k * n for k, n in enumerate(self.f_vector()))

    def __len__(self) -> int:
        return len(self.facets)

    def __repr__(self) -> str:
        return f"SimplicialComplex(dim={self.dim}, facets={len(self.facets)}, vertex_count={self.vertex_count})"


def _from_maximal(facets: Iterable[Simplex], vertex_count: int | None = None) -> SimplicialComplex:
    fs = tuple(sorted(set(facets)))
    top = max((f[-1] for f in fs), default=-1) + 1
    n = top if vertex_count is None else max(vertex_count, top)
    return SimplicialComplex(fs, n)


def empty_complex(vertex_count: int = 0) -> SimplicialComplex:
    return SimplicialComplex((), vertex_count)


def build_complex(facet_list: Iterable[Iterable[int]], vertex_count: int | None = None) -> SimplicialComplex:
    """Canonical complex generated by ``facet_list``.

    Faces contained in other listed faces are absorbed.  Raises
    :class:`ComplexError` on empty input or a face with a repeated vertex.
    """
    faces = {simplex(f) for f in facet_list}
    if not faces:
        raise ComplexError("cannot build a complex from an empty facet list")
    by_size = sorted(faces, key=len, reverse=True)
    kept: list = []
    kept_sets: dict = defaultdict(list)  # vertex -> kept facets through it, for subset tests
    for f in by_size:
        fs = set(f)
        if any(fs.issubset(g) for g in kept_sets.get(f[0], ())):
            continue
        kept.append(f)
        for v in f:
            kept_sets[v].append(fs)
    return _from_maximal(kept, vertex_count)


def k_faces(K: SimplicialComplex, k: int) -> list:
    if not 0 <= k <= K.dim:
        raise ComplexError(f"k={k} out of range for a complex of dimension {K.dim}")
    return list(K._faces_by_dim[k])


def _require_face(K: SimplicialComplex, sigma) -> Simplex:
    s = simplex(sigma)
    if s not in K:
        raise ComplexError(f"{s} is not a face of the complex")
    return s


def star(K: SimplicialComplex, sigma) -> SimplicialComplex:
    s = _require_face(K, sigma)
    return _from_maximal((K.facets[i] for i in K.facets_containing(s)), K.vertex_count)


def link(K: SimplicialComplex, sigma) -> SimplicialComplex:
    """Faces tau disjoint from sigma with tau | sigma in K; empty if sigma is a facet."""
    s = _require_face(K, sigma)
    ss = set(s)
    rest = [tuple(v for v in K.facets[i] if v not in ss) for i in K.facets_containing(s)]
    rest = [r for r in rest if r]
    if not rest:
        return empty_complex(K.vertex_count)
    return build_complex(rest, K.vertex_count)


def _require_pure(K: SimplicialComplex) -> None:
    if not K.is_pure:
        raise ComplexError("operation needs a pure complex")


def ridge_incidence(K: SimplicialComplex) -> dict:
    """Map each ridge to the list of facet indices containing it (pure K)."""
    inc = defaultdict(list)
    for i, f in enumerate(K.facets):
        for j in range(len(f)):
            inc[f[:j] + f[j + 1:]].append(i)
    return inc


def free_ridges(K: SimplicialComplex) -> list:
    """All (ridge, facet) pairs where the ridge lies in exactly one facet."""
    _require_pure(K)
    if K.dim < 1:
        return []
    out = [(r, K.facets[fs[0]]) for r, fs in ridge_incidence(K).items() if len(fs) == 1]
    return sorted(out)


def dual_graph(K: SimplicialComplex) -> Graph:
    """Node i is facet i; nodes are adjacent when the facets share a ridge."""
    _require_pure(K)
    edges = set()
    if K.dim >= 1:
        for fs in ridge_incidence(K).values():
            for a, b in combinations(fs, 2):
                edges.add((a, b))
    return Graph.from_edges(len(K.facets), edges)


def is_closed_pseudomanifold(K: SimplicialComplex) -> Witnessed:
    """Every ridge in exactly two facets and the dual graph connected.

    The witness is the first bad ridge, or the components of a disconnected
    dual graph.
    """
    _require_pure(K)
    if K.dim < 1 or K.is_empty:
        raise ComplexError("closed pseudomanifold check needs dimension >= 1")
    inc = ridge_incidence(K)
    for r in sorted(inc):
        if len(inc[r]) != 2:
            return Witnessed(False, r)
    comps = connected_components(dual_graph(K))
    if len(comps) != 1:
        return Witnessed(False, comps)
    return Witnessed(True)


def induced_pure_subcomplex(K: SimplicialComplex, facet_subset: Iterable[int]) -> SimplicialComplex:
    idx = sorted(set(facet_subset))
    for i in idx:
        if not 0 <= i < len(K.facets):
            raise ComplexError(f"invalid facet index {i}")
    if not idx:
        return empty_complex(K.vertex_count)
    return _from_maximal((K.facets[i] for i in idx), K.vertex_count)


def subdivide_facets(facets: Iterable[Simplex], sigma: Simplex, new_vertex: int) -> list:
    """Replacement facets for a stellar subdivision of ``sigma``; the rule shared
    by every subdividing routine."""
    out = []
    ss = set(sigma)
    for f in facets:
        if ss.issubset(f):
            for x in sigma:
                out.append(tuple(sorted([new_vertex] + [v for v in f if v != x])))
        else:
            out.append(f)
    return out


def stellar_subdivide(K: SimplicialComplex, sigma, new_vertex: int) -> SimplicialComplex:
    s = _require_face(K, sigma)
    if len(s) < 2:
        raise ComplexError("stellar subdivision needs a face of dimension >= 1")
    if new_vertex < 0 or new_vertex in K.vertices:
        raise ComplexError(f"vertex id {new_vertex} already in use")
    return _from_maximal(subdivide_facets(K.facets, s, new_vertex), max(K.vertex_count, new_vertex + 1))


def cone_over(K: SimplicialComplex, apex: int) -> SimplicialComplex:
    if K.is_empty:
        raise ComplexError("cannot cone over the empty complex")
    if apex < 0 or apex in K.vertices:
        raise ComplexError(f"apex {apex} already in use")
    return _from_maximal((tuple(sorted(f + (apex,))) for f in K.facets), max(K.vertex_count, apex + 1))


def collapse_greedy(K: SimplicialComplex) -> SimplicialComplex:
    """Elementary collapses, lexicographically least free face first, until none is left.

    A face is free when exactly one other face of the complex contains it.
    """
    if K.is_empty:
        return K
    cofaces: dict = defaultdict(int)
    alive = set()
    for faces in K._faces_by_dim.values():
        alive.update(faces)
    for f in alive:
        for g in _proper_faces(f):
            cofaces[g] += 1
    # the unique coface of a free face is a facet one dimension up
    facet_of: dict = {}
    for f in alive:
        for j in range(len(f)):
            facet_of.setdefault(f[:j] + f[j + 1:], set()).add(f)

    heap = [f for f in alive if cofaces[f] == 1]
    heapq.heapify(heap)
    while heap:
        f = heapq.heappop(heap)
        if f not in alive or cofaces[f] != 1:
            continue
        (g,) = [h for h in facet_of[f] if h in alive]
        alive.discard(f)
        alive.discard(g)
        for h in _proper_faces(g):
            cofaces[h] -= 1
        for h in _proper_faces(f):
            cofaces[h] -= 1
        for h in set(_proper_faces(g)):
            if h in alive and cofaces[h] == 1:
                heapq.heappush(heap, h)
    maximal = [f for f in alive if cofaces[f] == 0]
    return _from_maximal(maximal, K.vertex_count)


# ---------------------------------------------------------------- .cplx files

def format_cplx(K: SimplicialComplex) -> str:
    lines = [f"dim {K.dim} vertices {K.vertex_count}"]
    lines += [" ".join(map(str, f)) for f in K.facets]
    return "\n".join(lines) + "\n"


def parse_cplx(text: str) -> SimplicialComplex:
    lines = [ln.strip() for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
    if not lines:
        raise ComplexError("empty .cplx input")
    head = lines[0].split()
    if len(head) != 4 or head[0] != "dim" or head[2] != "vertices":
        raise ComplexError(f"bad .cplx header: {lines[0]!r}")
    dim, n = int(head[1]), int(head[3])
    body = [tuple(int(t) for t in ln.split()) for ln in lines[1:]]
    if not body:
        if dim != -1:
            raise ComplexError("header declares a nonempty complex but no facets follow")
        return empty_complex(n)
    K = build_complex(body, n)
    if K.dim != dim:
        raise ComplexError(f"header says dim {dim}, facets give dim {K.dim}")
    if K.vertex_count != n:
        raise ComplexError(f"vertex id {K.vertex_count - 1} exceeds declared count {n}")
    return K


def write_cplx(K: SimplicialComplex, path) -> None:
    Path(path).write_text(format_cplx(K))


def read_cplx(path) -> SimplicialComplex:
    return parse_cplx(Path(path).read_text())
