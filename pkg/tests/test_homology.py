from __future__ import annotations

import random

import numpy as np
import pytest
import sympy
from hypothesis import given, settings, strategies as st

from perles.complex import build_complex, dual_graph, induced_pure_subcomplex
from perles.generators import PileSpec, simplex_boundary, sphere_from_pile, stacked_boundary
from perles.graphs import induced_subgraph, is_connected
from perles.homology import (
    IntegerMatrix,
    boundary_matrix,
    homology_profile,
    separates_sphere,
    smith_normal_form,
)

from conftest import DUNCE_HAT, RP2, TORUS


def test_boundary_signs():
    K = build_complex([(0, 1, 2)])
    assert boundary_matrix(K, 1).to_dense()[:2] == [[-1, -1, 0], [1, 0, -1]]
    assert boundary_matrix(K, 2).to_dense() == [[1], [-1], [1]]
    with pytest.raises(ValueError):
        boundary_matrix(K, 3)


@settings(max_examples=40)
@given(st.lists(st.sets(st.integers(0, 6), min_size=2, max_size=4), min_size=1, max_size=10))
def test_boundary_squares_to_zero(fs):
    K = build_complex(fs)
    for k in range(2, K.dim + 1):
        prod = boundary_matrix(K, k - 1) @ boundary_matrix(K, k)
        assert not prod.entries


def _sympy_divisors(dense):
    M = sympy.Matrix(dense)
    from sympy.matrices.normalforms import smith_normal_form as snf
    D = snf(M, domain=sympy.ZZ)
    ds = [abs(int(D[i, i])) for i in range(min(D.shape)) if D[i, i] != 0]
    return len(ds), sorted(ds)


def test_snf_against_sympy():
    rng = random.Random(11)
    for _ in range(150):
        r, c = rng.randint(1, 6), rng.randint(1, 6)
        dense = [[rng.choice([0, 0, 1, -1, 2, 3, -4, 6]) for _ in range(c)] for _ in range(r)]
        assert smith_normal_form(IntegerMatrix.from_dense(dense)) == _sympy_divisors(dense)


def test_snf_examples():
    assert smith_normal_form(IntegerMatrix.from_dense([[2, 4], [6, 8]])) == (2, [2, 4])
    assert smith_normal_form(IntegerMatrix.from_dense([[2, 0], [0, 0]])) == (1, [2])
    assert smith_normal_form(IntegerMatrix(3, 3, {})) == (0, [])


def test_snf_divisibility_chain():
    rng = random.Random(5)
    for _ in range(100):
        dense = [[rng.randint(-9, 9) for _ in range(4)] for _ in range(4)]
        _, ds = smith_normal_form(IntegerMatrix.from_dense(dense))
        assert all(b % a == 0 for a, b in zip(ds, ds[1:]))


def _betti_over_q(K):
    """Independent oracle: ranks over the rationals via floating point."""
    f = K.f_vector()
    ranks = [0] * (K.dim + 2)
    for k in range(1, K.dim + 1):
        ranks[k] = int(np.linalg.matrix_rank(np.array(boundary_matrix(K, k).to_dense(), dtype=float)))
    return tuple(f[k] - ranks[k] - ranks[k + 1] for k in range(K.dim + 1))


@pytest.mark.parametrize("facets, betti, torsion", [
    (list(simplex_boundary(4).facets), (1, 0, 0, 1), ((), (), (), ())),
    (TORUS, (1, 2, 1), ((), (), ())),
    (RP2, (1, 0, 0), ((), (2,), ())),
    (DUNCE_HAT, (1, 0, 0), ((), (), ())),
])
def test_known_profiles(facets, betti, torsion):
    K = build_complex(facets)
    h = homology_profile(K)
    assert h.betti == betti and h.torsion == torsion
    assert h.betti == _betti_over_q(K)
    assert h.euler_characteristic() == K.euler_characteristic()


def test_profile_string_and_truncation():
    h = homology_profile(build_complex(RP2))
    assert str(h) == "H0=Z^1 H1=Z/2 H2=0"
    assert h.truncated(1).betti == (1, 0)
    with pytest.raises(ValueError):
        homology_profile(build_complex([(0,)]).__class__((), 0))


@pytest.mark.parametrize("extents", [(1, 1, 1), (1, 2, 1), (2, 2, 2)])
def test_pile_spheres(extents):
    h = homology_profile(sphere_from_pile(PileSpec(*extents)))
    assert h.betti == (1, 0, 0, 1)


@settings(max_examples=40, deadline=None)
@given(st.lists(st.integers(0, 10 ** 6), max_size=4), st.sets(st.integers(0, 50), min_size=1, max_size=10))
def test_separation_two_ways(stack, picks):
    """Alexander duality agrees with the complement's dual graph."""
    Delta = stacked_boundary(4, [s % (5 + 3 * i) for i, s in enumerate(stack)])
    idx = sorted({p % len(Delta.facets) for p in picks})
    if len(idx) == len(Delta.facets):
        return
    Gamma = induced_pure_subcomplex(Delta, idx)
    rest = [i for i in range(len(Delta.facets)) if i not in idx]
    comp, _ = induced_subgraph(dual_graph(Delta), rest)
    assert separates_sphere(Gamma, 3) == (not is_connected(comp))


def test_euler_poincare_on_random_complexes():
    rng = random.Random(2)
    for _ in range(50):
        fs = [rng.sample(range(8), rng.randint(1, 4)) for _ in range(rng.randint(1, 9))]
        K = build_complex(fs)
        assert homology_profile(K).euler_characteristic() == K.euler_characteristic()
