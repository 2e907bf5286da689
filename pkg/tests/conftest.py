"""Shared fixtures: the small worked examples used across the test suite."""

from __future__ import annotations

import math

import pytest

from idealtda.complexes import Graph, SimplicialComplex, clique_complex
from idealtda.labelled import make_labelled
from idealtda.linalg import Polynomial
from idealtda.monomials import AtomTable, FactoredElement


@pytest.fixture
def three_point_dist() -> list[list[float]]:
    """Isoceles right triangle: d(1,2) = d(1,3) = 2, d(2,3) = 2*sqrt(2)."""
    s = 2.0 * math.sqrt(2.0)
    return [[0.0, 2.0, 2.0], [2.0, 0.0, s], [2.0, s, 0.0]]


@pytest.fixture
def demo_graph() -> Graph:
    """Four vertices, a triangle 1-2-3 with a pendant edge 3-4."""
    return Graph.from_edges(4, [(1, 2), (1, 3), (2, 3), (3, 4)])


@pytest.fixture
def demo_clique_complex(demo_graph) -> SimplicialComplex:
    return clique_complex(demo_graph)


@pytest.fixture
def demo_hollow_complex() -> SimplicialComplex:
    """Same 1-skeleton as demo_clique_complex but without the filled triangle."""
    return SimplicialComplex.from_faces(
        4, [(1,), (2,), (3,), (4,), (3, 4), (1, 2), (1, 3), (2, 3)]
    )


@pytest.fixture
def worked_labelled():
    """Reduced labelled complex: closure of {1,2,3} and {1,4} over 4 variables,
    labels x1, x2*x3, x2*x4, x3*x4."""
    K = SimplicialComplex.from_faces(4, [(1, 2, 3), (1, 4)], close=True)
    table = AtomTable.for_variables(4)
    labels = [
        FactoredElement(table, (1, 0, 0, 0)),
        FactoredElement(table, (0, 1, 1, 0)),
        FactoredElement(table, (0, 1, 0, 1)),
        FactoredElement(table, (0, 0, 1, 1)),
    ]
    return make_labelled(K, labels, reduced=True)


@pytest.fixture
def poly_labelled():
    """Filled triangle with a composite atom: labels x1+x2, x1, x1*x2."""
    expansion = Polynomial(2, {(1, 0): 1, (0, 1): 1})
    table = AtomTable(("x1", "x2", "x1+x2"), (("x1+x2", expansion),))
    K = SimplicialComplex.from_faces(3, [(1, 2, 3)], close=True)
    labels = [
        FactoredElement(table, (0, 0, 1)),
        FactoredElement(table, (1, 0, 0)),
        FactoredElement(table, (1, 1, 0)),
    ]
    return make_labelled(K, labels)
