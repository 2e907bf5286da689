"""Labelled complexes over factored UFDs and their chain complexes.

Each vertex carries a nonzero factored ring element; a face is labelled
by the lcm of its vertex labels, and the boundary map multiplies each
facet by the exact label quotient:

    d(sigma) = sum_u (-1)^u (m_sigma / m_{sigma\\{i_u}}) sigma\\{i_u},

with u counting the removed vertex's position from 1 (so removing the
smallest vertex carries sign -1, and in reduced mode d({i}) = -m_i * 0).

Boundary entries are kept as polynomials in the atom ring (atoms treated
as independent symbols), which is exact for the formal identities here;
fraction-field ranks substitute composite atoms by their expansions and
run fraction-free elimination over the genuine polynomial ring.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Mapping, Sequence

from .complexes import Face, SimplicialComplex, boundary_entries, face_mask, full_subcomplex, mask_face
from .linalg import QQ, Polynomial, bareiss_rank, rank_dense
from .monomials import AtomTable, FactoredElement

__all__ = [
    "LabelledComplex",
    "ChainMatrix",
    "BoundaryMatrices",
    "EvaluationPoint",
    "EvaluatedChain",
    "InadmissiblePointError",
    "GradedSlice",
    "make_labelled",
    "boundary_matrices",
    "chain_condition_check",
    "diag_relation_check",
    "evaluate_chain",
    "evaluation_ranks",
    "fraction_field_ranks",
    "classical_boundary_ranks",
    "classical_betti",
    "local_subcomplex",
    "graded_slice",
    "slice_iso_check",
]


class InadmissiblePointError(ValueError):
    """Raised when an evaluation point kills some vertex label."""

    def __init__(self, vanishing: list[tuple[int, str]]):
        self.vanishing = vanishing
        detail = ", ".join(f"m_{v} = {label}" for v, label in vanishing)
        super().__init__(f"evaluation point kills vertex labels: {detail}")


@dataclass(frozen=True)
class LabelledComplex:
    """A complex together with one nonzero factored label per vertex."""

    complex: SimplicialComplex
    table: AtomTable
    vertex_labels: tuple[FactoredElement, ...]
    reduced: bool = False

    def __post_init__(self):
        if len(self.vertex_labels) != self.complex.n:
            raise ValueError("need exactly one label per vertex in 1..n")
        for v, label in enumerate(self.vertex_labels, start=1):
            if label is None:
                raise ValueError(f"vertex {v} has a zero label")
            if label.table != self.table:
                raise ValueError(f"label of vertex {v} lives over a different atom table")

    @cached_property
    def face_labels(self) -> dict[int, FactoredElement]:
        """Face mask -> lcm of the vertex labels (the empty face maps to 1)."""
        labels = {0: FactoredElement.unit(self.table)}
        for m in sorted(self.complex.face_masks, key=lambda m: m.bit_count()):
            low = m & -m
            if m == low:
                labels[m] = self.vertex_labels[low.bit_length() - 1]
            else:
                labels[m] = labels[m ^ low].lcm(labels[low])
        return labels

    def label_of(self, face: Iterable[int]) -> FactoredElement:
        return self.face_labels[face_mask(face)]

    def dims(self) -> list[int]:
        out = [-1] if self.reduced else []
        if not self.complex.is_empty:
            out.extend(range(self.complex.max_dim + 1))
        return out

    def ncells(self, k: int) -> int:
        if k == -1:
            return 1 if self.reduced else 0
        return len(self.complex.masks_of_dim(k))

    def restrict(self, W: Iterable[int]) -> "LabelledComplex":
        return LabelledComplex(
            full_subcomplex(self.complex, W), self.table, self.vertex_labels, self.reduced
        )


def make_labelled(
    K: SimplicialComplex,
    labels: Sequence[FactoredElement],
    reduced: bool = False,
) -> LabelledComplex:
    """Attach vertex labels to a complex and derive all face labels."""
    if not labels:
        raise ValueError("at least one vertex label is required")
    return LabelledComplex(K, labels[0].table, tuple(labels), reduced)


@dataclass(frozen=True)
class ChainMatrix:
    """Matrix of the boundary map in one dimension, canonical bases.

    Rows are the (k-1)-faces, columns the k-faces, both in colex order;
    in reduced degree 0 the single row is the empty face ().
    """

    k: int
    rows: tuple[Face, ...]
    cols: tuple[Face, ...]
    entries: tuple[tuple[Polynomial, ...], ...]

    def render(self, names: Sequence[str]) -> list[list[str]]:
        return [[e.render(names) for e in row] for row in self.entries]


@dataclass(frozen=True)
class BoundaryMatrices:
    matrices: tuple[ChainMatrix, ...]

    def matrix(self, k: int) -> ChainMatrix | None:
        for m in self.matrices:
            if m.k == k:
                return m
        return None

    def dims(self) -> list[int]:
        return [m.k for m in self.matrices]


def _quotient_poly(num: FactoredElement, den: FactoredElement, sign: int) -> Polynomial:
    q = num.over(den)
    return Polynomial.monomial(len(q.table.atoms), q.exps, sign)


def boundary_matrices(LC: LabelledComplex) -> BoundaryMatrices:
    """All boundary matrices of the labelled chain complex.

    Dimensions run from 1 (or 0 in reduced mode) to the top dimension;
    entries are signed atom-ring monomials m_sigma / m_tau.
    """
    K = LC.complex
    natoms = len(LC.table.atoms)
    labels = LC.face_labels
    out = []
    start = 0 if LC.reduced else 1
    for k in range(start, K.max_dim + 1):
        col_masks = K.masks_of_dim(k)
        if not col_masks:
            continue
        if k == 0:
            rows: tuple[Face, ...] = ((),)
            row_index = {0: 0}
            row_masks = [0]
        else:
            row_masks = K.masks_of_dim(k - 1)
            rows = tuple(mask_face(m) for m in row_masks)
            row_index = {m: i for i, m in enumerate(row_masks)}
        zero = Polynomial.zero(natoms)
        dense = [[zero] * len(col_masks) for _ in row_masks]
        for j, cm in enumerate(col_masks):
            verts = mask_face(cm)
            for u, v in enumerate(verts, start=1):
                sub = cm ^ (1 << (v - 1))
                sign = -1 if u % 2 else 1
                dense[row_index[sub]][j] = _quotient_poly(labels[cm], labels[sub], sign)
        out.append(
            ChainMatrix(
                k,
                rows,
                tuple(mask_face(m) for m in col_masks),
                tuple(tuple(r) for r in dense),
            )
        )
    return BoundaryMatrices(tuple(out))


def chain_condition_check(LC: LabelledComplex) -> bool:
    """Verify d_{k-1} o d_k = 0 symbolically in the atom ring."""
    bm = boundary_matrices(LC)
    natoms = len(LC.table.atoms)
    zero = Polynomial.zero(natoms)
    for upper in bm.matrices:
        lower = bm.matrix(upper.k - 1)
        if lower is None:
            continue
        for i in range(len(lower.rows)):
            for j in range(len(upper.cols)):
                acc = zero
                for t in range(len(upper.rows)):
                    a = lower.entries[i][t]
                    b = upper.entries[t][j]
                    if a and b:
                        acc = acc + a * b
                if acc:
                    return False
    return True


def diag_relation_check(LC: LabelledComplex) -> bool:
    """Entrywise identity D~_k = diag(1/m_row) D_k diag(m_col) over Frac(R).

    Checked by cross multiplication in the atom ring: for every entry,
    D~[t, s] * m_t must equal D[t, s] * m_s, where D is the classical
    signed boundary matrix built independently.
    """
    bm = boundary_matrices(LC)
    natoms = len(LC.table.atoms)
    labels = LC.face_labels
    for cm in bm.matrices:
        _, _, classical = boundary_entries(LC.complex, cm.k, reduced=LC.reduced)
        dense_classical = [[0] * len(cm.cols) for _ in cm.rows]
        for (i, j), s in classical.items():
            dense_classical[i][j] = s
        for i, tau in enumerate(cm.rows):
            m_tau = Polynomial.monomial(natoms, labels[face_mask(tau)].exps)
            for j, sigma in enumerate(cm.cols):
                m_sigma = Polynomial.monomial(natoms, labels[face_mask(sigma)].exps)
                lhs = cm.entries[i][j] * m_tau
                rhs = m_sigma * dense_classical[i][j]
                if lhs != rhs:
                    return False
    return True


@dataclass(frozen=True)
class EvaluationPoint:
    """Rational coordinates for the variable atoms of a table.

    Composite atoms evaluate through their polynomial expansions; the
    point is admissible for a labelled complex when no vertex label
    evaluates to zero.
    """

    coords: tuple[tuple[str, Fraction], ...]

    @classmethod
    def of(cls, mapping: Mapping[str, Fraction | int | str]) -> "EvaluationPoint":
        items = tuple(sorted((k, Fraction(v)) for k, v in mapping.items()))
        return cls(items)

    @property
    def coord_map(self) -> dict[str, Fraction]:
        return dict(self.coords)

    def atom_values(self, table: AtomTable) -> list[Fraction]:
        coords = self.coord_map
        missing = [v for v in table.variables if v not in coords]
        if missing:
            raise ValueError(f"missing coordinates for variables: {', '.join(missing)}")
        var_values = [coords[v] for v in table.variables]
        return [poly.evaluate(var_values) for poly in table.atom_polynomials()]

    def label_value(self, label: FactoredElement) -> Fraction:
        values = self.atom_values(label.table)
        out = Fraction(1)
        for v, e in zip(values, label.exps):
            if e:
                out *= v**e
        return out


@dataclass
class EvaluatedChain:
    """Field matrices of a labelled chain complex at an evaluation point."""

    field: object
    ncells: dict[int, int]
    matrices: dict[int, list[list]]

    def ranks(self) -> dict[int, int]:
        out = {}
        for k, mat in self.matrices.items():
            out[k] = rank_dense(mat, self.field) if mat else 0
        return out

    def betti(self) -> dict[int, int]:
        ranks = self.ranks()
        out = {}
        for k, count in self.ncells.items():
            out[k] = count - ranks.get(k, 0) - ranks.get(k + 1, 0)
        return out


def evaluate_chain(LC: LabelledComplex, point: EvaluationPoint, field=QQ) -> EvaluatedChain:
    """Evaluate every boundary entry at an admissible point.

    Admissibility is checked in the target field (a label may evaluate
    nonzero over the rationals yet vanish in a prime field); an
    :class:`InadmissiblePointError` lists the vanishing vertex labels.
    """
    values = point.atom_values(LC.table)

    def to_field(q: Fraction):
        try:
            return field.from_fraction(q)
        except ZeroDivisionError:
            raise ValueError(
                f"coordinate denominators are not invertible in {field.name}"
            ) from None

    vanishing = []
    for v in sorted(LC.complex.vertices()):
        label = LC.vertex_labels[v - 1]
        val = Fraction(1)
        for x, e in zip(values, label.exps):
            if e:
                val *= x**e
        if to_field(val) == field.zero:
            vanishing.append((v, str(label)))
    if vanishing:
        raise InadmissiblePointError(vanishing)
    bm = boundary_matrices(LC)
    ncells = {k: LC.ncells(k) for k in LC.dims()}
    matrices: dict[int, list[list]] = {}
    for cm in bm.matrices:
        dense = []
        for row in cm.entries:
            dense.append([to_field(e.evaluate(values)) for e in row])
        matrices[cm.k] = dense
    return EvaluatedChain(field, ncells, matrices)


def evaluation_ranks(LC: LabelledComplex, point: EvaluationPoint, field=QQ) -> dict[int, int]:
    """Ranks of the evaluated boundary matrices (probabilistic rank probe)."""
    return evaluate_chain(LC, point, field).ranks()


def _expanded_matrix(cm: ChainMatrix, table: AtomTable) -> list[list[Polynomial]]:
    atoms = table.atom_polynomials()
    nv = len(table.variables)
    cache: dict[Polynomial, Polynomial] = {}

    def expand(p: Polynomial) -> Polynomial:
        if p not in cache:
            cache[p] = p.substitute(atoms, nv)
        return cache[p]

    return [[expand(e) for e in row] for row in cm.entries]


def fraction_field_ranks(LC: LabelledComplex) -> dict[int, int]:
    """Rank of every boundary matrix over the fraction field of the ring.

    Composite atoms are substituted by their polynomial expansions and the
    rank is computed by exact fraction-free elimination.
    """
    out = {}
    for cm in boundary_matrices(LC).matrices:
        out[cm.k] = bareiss_rank(_expanded_matrix(cm, LC.table))
    return out


def classical_boundary_ranks(K: SimplicialComplex, field=QQ, reduced: bool = False) -> dict[int, int]:
    """Field ranks of the classical boundary matrices of a complex."""
    out = {}
    start = 0 if reduced else 1
    for k in range(start, K.max_dim + 1):
        rows, cols, entries = boundary_entries(K, k, reduced=reduced)
        if not rows or not cols:
            continue
        dense = [[field.zero] * len(cols) for _ in rows]
        for (i, j), s in entries.items():
            dense[i][j] = field.from_int(s)
        out[k] = rank_dense(dense, field)
    return out


def classical_betti(K: SimplicialComplex, field=QQ, reduced: bool = False) -> dict[int, int]:
    """Betti numbers of a complex as a dimension-indexed dict."""
    ranks = classical_boundary_ranks(K, field, reduced)
    out = {}
    if reduced:
        out[-1] = 1 - ranks.get(0, 0)
    top = K.max_dim if not K.is_empty else -1
    for k in range(0, top + 1):
        out[k] = len(K.masks_of_dim(k)) - ranks.get(k, 0) - ranks.get(k + 1, 0)
    return out


def local_subcomplex(
    LC: LabelledComplex,
    point: EvaluationPoint | None = None,
    allowed_atoms: Iterable[str] | None = None,
    field=QQ,
) -> tuple[tuple[int, ...], LabelledComplex]:
    """Vertex window W on which the equivalences hold, plus the restriction.

    Point form: W is the set of vertices whose label survives evaluation
    in the given field.  Atom form: W is the set of vertices whose label
    lies in the multiplicative set generated by the allowed atoms, i.e.
    whose label only uses allowed atoms.
    """
    if (point is None) == (allowed_atoms is None):
        raise ValueError("supply exactly one of point / allowed_atoms")
    W = []
    if point is not None:
        for v in range(1, LC.complex.n + 1):
            try:
                value = field.from_fraction(point.label_value(LC.vertex_labels[v - 1]))
            except ZeroDivisionError:
                raise ValueError(
                    f"coordinate denominators are not invertible in {field.name}"
                ) from None
            if value != field.zero:
                W.append(v)
    else:
        allowed = set(allowed_atoms)
        unknown = allowed - set(LC.table.atoms)
        if unknown:
            raise ValueError(f"unknown atoms: {', '.join(sorted(unknown))}")
        allowed_idx = {LC.table.index(a) + 1 for a in allowed}
        for v in range(1, LC.complex.n + 1):
            if set(LC.vertex_labels[v - 1].support()) <= allowed_idx:
                W.append(v)
    return tuple(W), LC.restrict(W)


@dataclass(frozen=True)
class GradedSlice:
    """Degree-alpha homogeneous part of a reduced labelled chain complex.

    The slice basis in dimension k is {(m_alpha / m_sigma) sigma} over the
    faces of the divisibility subcomplex; its boundary matrices have
    entries in {0, +-1} and agree with the classical reduced matrices of
    that subcomplex.
    """

    alpha: tuple[int, ...]
    m_alpha: FactoredElement
    subcomplex: SimplicialComplex
    bases: tuple[tuple[int, tuple[tuple[Face, FactoredElement], ...]], ...]
    matrices: tuple[tuple[int, tuple[tuple[Fraction, ...], ...]], ...]

    @cached_property
    def basis_map(self) -> dict[int, tuple[tuple[Face, FactoredElement], ...]]:
        return dict(self.bases)

    @cached_property
    def matrix_map(self) -> dict[int, tuple[tuple[Fraction, ...], ...]]:
        return dict(self.matrices)

    def betti(self) -> dict[int, int]:
        ranks = {
            k: rank_dense([list(r) for r in mat], QQ) if mat else 0
            for k, mat in self.matrix_map.items()
        }
        out = {}
        for k, basis in self.bases:
            out[k] = len(basis) - ranks.get(k, 0) - ranks.get(k + 1, 0)
        return out


def graded_slice(LC: LabelledComplex, alpha: Sequence[int]) -> GradedSlice:
    """Degree-alpha slice of a monomially labelled reduced complex.

    Requires a pure-variable atom table and a reduced complex; the slice
    is spanned, in each dimension, by the faces whose label divides
    x^alpha, scaled by the cofactor monomial.
    """
    if not LC.reduced:
        raise ValueError("graded slices are defined for reduced labelled complexes")
    if not LC.table.is_pure_variables:
        raise ValueError("graded slices need monomial labels over variable atoms only")
    if len(alpha) != len(LC.table.atoms):
        raise ValueError("alpha length must match the number of variables")
    m_alpha = FactoredElement.from_exponents(LC.table, alpha)
    labels = LC.face_labels
    sub_masks = frozenset(
        m for m in LC.complex.face_masks if labels[m].divides(m_alpha)
    )
    sub = SimplicialComplex(LC.complex.n, sub_masks)
    dims = [-1] + (list(range(sub.max_dim + 1)) if sub_masks else [])
    bases: dict[int, list[tuple[Face, FactoredElement]]] = {}
    order: dict[int, dict[int, int]] = {}
    for k in dims:
        masks = [0] if k == -1 else sub.masks_of_dim(k)
        order[k] = {m: i for i, m in enumerate(masks)}
        bases[k] = [(mask_face(m), m_alpha.over(labels[m])) for m in masks]
    matrices: dict[int, tuple[tuple[Fraction, ...], ...]] = {}
    for k in dims:
        if k == -1 or not bases[k]:
            continue
        rows = bases[k - 1]
        dense = [[Fraction(0)] * len(bases[k]) for _ in rows]
        for j, (sigma, _) in enumerate(bases[k]):
            cm = face_mask(sigma)
            for u, v in enumerate(sigma, start=1):
                sub_mask = cm ^ (1 << (v - 1))
                sign = -1 if u % 2 else 1
                # slice coefficient: sign * (m_sigma/m_tau) * cofactor ratio, a unit
                ratio = labels[cm].over(labels[sub_mask])
                cof = m_alpha.over(labels[cm]).times(ratio)
                if cof.exps != m_alpha.over(labels[sub_mask]).exps:
                    raise AssertionError("slice coefficient is not a unit")
                dense[order[k - 1][sub_mask]][j] = Fraction(sign)
        matrices[k] = tuple(tuple(r) for r in dense)
    return GradedSlice(
        tuple(alpha),
        m_alpha,
        sub,
        tuple((k, tuple(bases[k])) for k in dims),
        tuple(sorted(matrices.items())),
    )


def slice_iso_check(LC: LabelledComplex, alpha: Sequence[int]) -> bool:
    """Verify the slice equals the reduced classical complex of the
    divisibility subcomplex, dimension by dimension, on the nose."""
    sl = graded_slice(LC, alpha)
    sub = sl.subcomplex
    for k, basis in sl.bases:
        if k == -1:
            if [f for f, _ in basis] != [()]:
                return False
            continue
        if [f for f, _ in basis] != sub.faces_of_dim(k):
            return False
    start = 0
    top = sub.max_dim if not sub.is_empty else -1
    for k in range(start, top + 1):
        rows, cols, entries = boundary_entries(sub, k, reduced=True)
        dense = [[Fraction(0)] * len(cols) for _ in rows]
        for (i, j), s in entries.items():
            dense[i][j] = Fraction(s)
        got = sl.matrix_map.get(k)
        if not cols:
            if got:
                return False
            continue
        if got is None or [list(r) for r in got] != dense:
            return False
    return True
