"""Ideals attached to complexes and graphs, and the inverse correspondence.

Two independent routes to the associated primes are kept on purpose:
the combinatorial characterizations (complements of maximal faces for
face ideals of complexes, complements of maximal independent sets for
edge ideals) and the generic minimal-transversal decomposition from
:mod:`idealtda.monomials`.  They are cross-checked permanently in the
test and verification suites.
"""

from __future__ import annotations

from itertools import combinations

from .complexes import (
    Graph,
    SimplicialComplex,
    face_mask,
    mask_face,
    maximal_clique_masks,
    maximal_faces,
    minimal_nonfaces,
)
from .monomials import (
    AtomTable,
    FactoredElement,
    LinearPrime,
    MonomialIdeal,
    membership,
)

__all__ = [
    "stanley_reisner",
    "edge_ideal",
    "complex_of_squarefree_ideal",
    "sr_associated_primes",
    "minimal_vertex_covers",
    "complement_graph",
    "one_skeleton",
]


def _variable_table(n: int) -> AtomTable:
    return AtomTable.for_variables(n)


def stanley_reisner(K: SimplicialComplex) -> MonomialIdeal:
    """Face ideal of K: generated by the monomials of its minimal non-faces.

    The minimal non-faces already form the minimal basis; a simplex over
    the full vertex set yields the zero ideal.
    """
    table = _variable_table(K.n)
    gens = [FactoredElement.from_support(table, f) for f in minimal_nonfaces(K)]
    return MonomialIdeal.from_generators(table, gens)


def edge_ideal(obj: SimplicialComplex | Graph) -> MonomialIdeal:
    """Ideal generated by x_i*x_j over the edges (1-faces) of the input."""
    if isinstance(obj, Graph):
        n, edges = obj.n, obj.sorted_edges()
    else:
        n, edges = obj.n, obj.faces_of_dim(1)
    table = _variable_table(n)
    gens = [FactoredElement.from_support(table, e) for e in edges]
    return MonomialIdeal.from_generators(table, gens)


def complex_of_squarefree_ideal(ideal: MonomialIdeal, n: int) -> SimplicialComplex:
    """The complex whose face ideal is the given square-free proper ideal.

    Faces are the nonempty subsets sigma with x_sigma outside the ideal;
    inverse of :func:`stanley_reisner`.
    """
    if not ideal.is_squarefree:
        raise ValueError("only square-free ideals correspond to complexes")
    if not ideal.is_proper:
        raise ValueError("the unit ideal does not correspond to a complex")
    table = ideal.table
    if len(table.atoms) != n:
        raise ValueError(f"ideal lives over {len(table.atoms)} variables, not {n}")
    masks = set()
    for size in range(1, n + 1):
        for comb in combinations(range(1, n + 1), size):
            if not membership(FactoredElement.from_support(table, comb), ideal):
                masks.add(face_mask(comb))
    return SimplicialComplex(n, frozenset(masks))


def sr_associated_primes(K: SimplicialComplex) -> frozenset[LinearPrime]:
    """Associated primes of the face ideal of K.

    Combinatorial route: one prime per maximal face, generated by the
    variables of the complementary vertex set.
    """
    full = (1 << K.n) - 1
    out = set()
    for f in maximal_faces(K):
        comp = full & ~face_mask(f)
        out.add(LinearPrime(mask_face(comp)))
    if K.is_empty:
        out.add(LinearPrime(tuple(range(1, K.n + 1))))
    return frozenset(out)


def minimal_vertex_covers(g: Graph) -> frozenset[LinearPrime]:
    """All inclusion-minimal vertex covers of g, as linear primes.

    Combinatorial route: complements of the maximal independent sets,
    i.e. of the maximal cliques of the complement graph.
    """
    full = (1 << g.n) - 1
    covers = set()
    for clique in maximal_clique_masks(complement_graph(g)):
        covers.add(LinearPrime(mask_face(full & ~clique)))
    if g.n == 0:
        covers.add(LinearPrime(()))
    return frozenset(covers)


def complement_graph(g: Graph) -> Graph:
    """Graph with edge {i,j} present exactly when absent from g."""
    edges = [
        (i, j)
        for i in range(1, g.n + 1)
        for j in range(i + 1, g.n + 1)
        if not g.has_edge(i, j)
    ]
    return Graph.from_edges(g.n, edges)


def one_skeleton(K: SimplicialComplex) -> Graph:
    """Underlying graph of a complex: its vertices and 1-faces."""
    return Graph.from_edges(K.n, K.faces_of_dim(1))
