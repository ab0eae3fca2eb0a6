"""Integral simplicial homology through Smith normal form.

Everything is exact Python integers.  Boundary matrices are sparse and
mostly +-1, so the elimination works on a dict-of-rows and only falls back
to general gcd steps once no unit entry is left.
"""
from __future__ import annotations

import heapq
from dataclasses import dataclass, field

from .complex import SimplicialComplex, k_faces


@dataclass
class IntegerMatrix:
    rows: int
    cols: int
    entries: dict = field(default_factory=dict)  # (i, j) -> nonzero int

    @classmethod
    def from_dense(cls, data) -> "IntegerMatrix":
        data = [list(r) for r in data]
        nr = len(data)
        nc = len(data[0]) if nr else 0
        ent = {(i, j): int(x) for i, r in enumerate(data) for j, x in enumerate(r) if x}
        return cls(nr, nc, ent)

    def to_dense(self) -> list:
        out = [[0] * self.cols for _ in range(self.rows)]
        for (i, j), x in self.entries.items():
            out[i][j] = x
        return out

    def __matmul__(self, other: "IntegerMatrix") -> "IntegerMatrix":
        if self.cols != other.rows:
            raise ValueError("shape mismatch")
        by_row: dict = {}
        for (k, j), x in other.entries.items():
            by_row.setdefault(k, []).append((j, x))
        acc: dict = {}
        for (i, k), x in self.entries.items():
            for j, y in by_row.get(k, ()):
                acc[i, j] = acc.get((i, j), 0) + x * y
        return IntegerMatrix(self.rows, other.cols, {key: v for key, v in acc.items() if v})


def boundary_matrix(K: SimplicialComplex, k: int) -> IntegerMatrix:
    """Matrix of the k-th boundary map in the lexicographic face bases.

    Dropping the i-th vertex of a face contributes sign (-1)**i.
    """
    if not 1 <= k <= K.dim:
        raise ValueError(f"k={k} out of range 1..{K.dim}")
    rows = k_faces(K, k - 1)
    cols = k_faces(K, k)
    pos = {f: i for i, f in enumerate(rows)}
    ent = {}
    for j, f in enumerate(cols):
        for i in range(len(f)):
            ent[pos[f[:i] + f[i + 1:]], j] = -1 if i % 2 else 1
    return IntegerMatrix(len(rows), len(cols), ent)


def _general_snf(rows: dict) -> list:
    """Diagonal entries of a (small) remaining block, classical gcd elimination."""
    divisors = []
    while rows:
        entries = [(abs(x), i, j) for i, r in rows.items() for j, x in r.items()]
        if not entries:
            break
        _, pi, pj = min(entries)
        while True:
            a = rows[pi][pj]
            dirty = False
            # clear column pj by row operations
            for r in list(rows):
                if r == pi or pj not in rows[r]:
                    continue
                q = rows[r][pj] // a
                _axpy(rows[r], rows[pi], -q)
                if pj in rows[r]:
                    dirty = True
            # clear row pi by column operations
            for c in list(rows[pi]):
                if c == pj:
                    continue
                q = rows[pi][c] // a
                for r in rows:
                    if pj in rows[r]:
                        v = rows[r].get(c, 0) - q * rows[r][pj]
                        if v:
                            rows[r][c] = v
                        else:
                            rows[r].pop(c, None)
                if c in rows[pi]:
                    dirty = True
            if dirty:
                # a remainder smaller than |a| appeared; pivot on it
                cand = [(abs(x), r, pj) for r in rows if (x := rows[r].get(pj))]
                cand += [(abs(x), pi, c) for c, x in rows[pi].items()]
                _, pi, pj = min(cand)
                continue
            # pivot isolated: it must divide everything else
            bad = next((r for r in rows if r != pi and any(x % a for x in rows[r].values())), None)
            if bad is None:
                break
            _axpy(rows[pi], rows[bad], 1)
        divisors.append(abs(rows[pi][pj]))
        del rows[pi]
        for r in list(rows):
            if not rows[r]:
                del rows[r]
    return divisors


def _axpy(dst: dict, src: dict, q: int) -> None:
    """dst += q * src on sparse rows."""
    for c, x in src.items():
        v = dst.get(c, 0) + q * x
        if v:
            dst[c] = v
        else:
            dst.pop(c, None)


def smith_normal_form(M: IntegerMatrix) -> tuple:
    """Return ``(rank, divisors)`` with d_1 | d_2 | ... | d_rank, all positive."""
    rows: dict = {}
    cols: dict = {}
    for (i, j), x in M.entries.items():
        if x:
            rows.setdefault(i, {})[j] = x
            cols.setdefault(j, set()).add(i)
    units = 0
    heap = [(len(rs), j) for j, rs in cols.items()]
    heapq.heapify(heap)
    while heap:
        size, j = heapq.heappop(heap)
        rs = cols.get(j)
        if not rs or size != len(rs):
            continue
        pivots = [i for i in rs if abs(rows[i][j]) == 1]
        if not pivots:
            continue
        pi = min(pivots, key=lambda i: (len(rows[i]), i))
        a = rows[pi][j]
        prow = rows.pop(pi)
        for c in prow:
            cols[c].discard(pi)
        touched = set()
        for r in list(cols[j]):
            row = rows[r]
            q = -row[j] * a
            for c, x in prow.items():
                v = row.get(c, 0) + q * x
                if v:
                    if c not in row:
                        cols[c].add(r)
                    row[c] = v
                else:
                    row.pop(c, None)
                    cols[c].discard(r)
                touched.add(c)
            if not row:
                del rows[r]
        del cols[j]
        units += 1
        for c in touched:
            if c in cols and cols[c]:
                heapq.heappush(heap, (len(cols[c]), c))
            elif c in cols:
                del cols[c]
    rest = _general_snf({i: dict(r) for i, r in rows.items() if r})
    divisors = [1] * units + sorted(rest)
    return len(divisors), divisors


@dataclass(frozen=True)
class HomologyProfile:
    betti: tuple
    torsion: tuple  # per dimension, the elementary divisors > 1

    @property
    def dim(self) -> int:
        return len(self.betti) - 1

    def euler_characteristic(self) -> int:
        return sum((-1) ** k * b for k, b in enumerate(self.betti))

    def truncated(self, dim: int) -> "HomologyProfile":
        return HomologyProfile(self.betti[: dim + 1], self.torsion[: dim + 1])

    def __str__(self) -> str:
        parts = []
        for k, (b, t) in enumerate(zip(self.betti, self.torsion)):
            terms = ([f"Z^{b}"] if b else []) + [f"Z/{x}" for x in t]
            parts.append(f"H{k}={'+'.join(terms) or '0'}")
        return " ".join(parts)


def homology_profile(K: SimplicialComplex) -> HomologyProfile:
    if K.is_empty:
        raise ValueError("homology of the empty complex is not defined here")
    d = K.dim
    counts = K.f_vector()
    ranks = [0] * (d + 2)
    divs = [[] for _ in range(d + 2)]
    for k in range(1, d + 1):
        r, ds = smith_normal_form(boundary_matrix(K, k))
        ranks[k] = r
        divs[k] = [x for x in ds if x > 1]
    betti = tuple(counts[k] - ranks[k] - ranks[k + 1] for k in range(d + 1))
    torsion = tuple(tuple(divs[k + 1]) for k in range(d + 1))
    return HomologyProfile(betti, torsion)


def separates_sphere(Gamma: SimplicialComplex, sphere_dim: int) -> bool:
    """Alexander-duality test: does this subcomplex disconnect a ``sphere_dim``-sphere?

    The complement is disconnected iff reduced H^(n-1) of the subcomplex is
    nonzero, i.e. iff its H_(n-1) has free part or its H_(n-2) has torsion.
    """
    if Gamma.is_empty:
        return False
    h = homology_profile(Gamma)
    top = sphere_dim - 1
    betti = list(h.betti) + [0] * (top + 2)
    torsion = list(h.torsion) + [()] * (top + 2)
    free = betti[top] - (1 if top == 0 else 0)
    tors = bool(torsion[top - 1]) if top >= 1 else False
    return free > 0 or tors
