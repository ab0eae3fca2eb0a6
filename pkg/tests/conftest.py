from __future__ import annotations

import re

import numpy as np
import pytest
from scipy.spatial import ConvexHull

from perles.complex import build_complex
from perles.conjecture import from_simplicial_boundary
from perles.generators import (
    CyclicSpec,
    cube_model,
    cyclic_facets_gale,
    polygon_model,
    prism_model,
    product_model,
    segment_model,
    simplex_model,
    truncate_vertex_model,
    wedge_model,
)

# 8-vertex dunce hat: Delaunay triangulation of a 9-gon with boundary word
# 0 1 2 0 1 2 0 2 1 and five interior points, frozen once.
DUNCE_HAT = [
    (0, 1, 3), (0, 1, 6), (0, 1, 7), (0, 2, 3), (0, 2, 4), (0, 2, 5), (0, 4, 5), (0, 6, 7), (1, 2, 4),
    (1, 2, 6), (1, 2, 7), (1, 3, 4), (2, 3, 7), (2, 5, 6), (3, 4, 5), (3, 5, 6), (3, 6, 7),
]

# 7-vertex torus
TORUS = [tuple(sorted((i % 7, (i + 1) % 7, (i + 3) % 7))) for i in range(7)] + \
        [tuple(sorted((i % 7, (i + 2) % 7, (i + 3) % 7))) for i in range(7)]

RP2 = [(0, 1, 2), (0, 2, 3), (0, 3, 4), (0, 4, 5), (0, 1, 5), (1, 2, 4), (2, 4, 5), (2, 3, 5), (1, 3, 5), (1, 3, 4)]


def hull_sphere(points):
    hull = ConvexHull(np.asarray(points, dtype=float))
    return build_complex([tuple(s) for s in hull.simplices])


def icosahedron():
    phi = (1 + 5 ** 0.5) / 2
    pts = []
    for a in (-1, 1):
        for b in (-phi, phi):
            pts += [(0, a, b), (a, b, 0), (b, 0, a)]
    return hull_sphere(pts)


def dodecahedron_model():
    return from_simplicial_boundary(icosahedron())


def low_dim_corpus() -> dict:
    """Simple 3-polytopes up to 20 vertices."""
    out = {"tetrahedron": simplex_model(3), "cube": cube_model(3), "dodecahedron": dodecahedron_model()}
    for n in range(3, 11):
        out[f"prism{n}"] = prism_model(n)
    for n in range(3, 12):
        out[f"wedge_polygon{n}"] = wedge_model(polygon_model(n), 0)
    out["truncated_cube"] = truncate_vertex_model(cube_model(3), 0)
    out["truncated_tetrahedron"] = truncate_vertex_model(simplex_model(3), 0)
    return out


def model_corpus() -> dict:
    out = dict(low_dim_corpus())
    out["simplex4"] = simplex_model(4)
    out["tri_x_tri"] = product_model(polygon_model(3), polygon_model(3))
    out["tri_x_square"] = product_model(polygon_model(3), polygon_model(4))
    out["cube4"] = cube_model(4)
    out["square_x_segment_x_segment"] = product_model(product_model(polygon_model(4), segment_model()), segment_model())
    for d, n in [(4, 6), (4, 7), (4, 8), (5, 7), (3, 5), (3, 6)]:
        out[f"dual_C{d}({n})"] = from_simplicial_boundary(cyclic_facets_gale(CyclicSpec(d, n)))
    return out


@pytest.fixture(scope="session")
def corpus():
    return model_corpus()


@pytest.fixture(scope="session")
def pipeline():
    from perles.counterexample import run_pipeline
    return run_pipeline()


# ---------------------------------------------------- acceptance summary

_ACCEPT = {}


def pytest_runtest_logreport(report):
    m = re.search(r"test_acceptance\.py::test_criterion_(\d+)", report.nodeid)
    if not m:
        return
    n = int(m.group(1))
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        _ACCEPT[n] = report.outcome


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPT:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_ACCEPT):
        verdict = "PASS" if _ACCEPT[n] == "passed" else "FAIL"
        terminalreporter.write_line(f"criterion {n}: {verdict}")
