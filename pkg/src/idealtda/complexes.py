"""Simplicial complexes, graphs, clique complexes and Vietoris-Rips filtrations.

Vertices are integers 1..n.  Faces are stored internally as bitmasks
(bit v-1 set iff vertex v belongs to the face), which makes subset and
superset queries cheap; the public face representation is the strictly
increasing tuple of vertices.

Canonical basis order: within each dimension, faces are sorted by their
bitmask value, i.e. colexicographically.  All boundary matrices in the
package use this order.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from typing import Iterable, Mapping, Sequence

__all__ = [
    "Face",
    "face_mask",
    "mask_face",
    "SimplicialComplex",
    "Graph",
    "Filtration",
    "clique_complex",
    "full_subcomplex",
    "maximal_faces",
    "minimal_nonfaces",
    "vr_filtration",
    "validate_distance_matrix",
    "boundary_entries",
    "maximal_clique_masks",
]

Face = tuple[int, ...]


def face_mask(face: Iterable[int]) -> int:
    """Bitmask of a vertex collection; validates vertices are positive ints."""
    mask = 0
    for v in face:
        if not isinstance(v, int) or v < 1:
            raise ValueError(f"vertex {v!r} is not a positive integer")
        bit = 1 << (v - 1)
        if mask & bit:
            raise ValueError(f"duplicate vertex {v}")
        mask |= bit
    return mask


def mask_face(mask: int) -> Face:
    """Strictly increasing vertex tuple of a bitmask."""
    out = []
    v = 1
    while mask:
        if mask & 1:
            out.append(v)
        mask >>= 1
        v += 1
    return tuple(out)


def _iter_bits(mask: int):
    while mask:
        bit = mask & -mask
        yield bit
        mask ^= bit


def _downward_closure(masks: Iterable[int]) -> frozenset[int]:
    closed: set[int] = set()
    stack = [m for m in masks if m]
    while stack:
        m = stack.pop()
        if m in closed:
            continue
        closed.add(m)
        if m.bit_count() > 1:
            for bit in _iter_bits(m):
                sub = m ^ bit
                if sub not in closed:
                    stack.append(sub)
    return frozenset(closed)


@dataclass(frozen=True)
class SimplicialComplex:
    """Downward-closed family of nonempty faces over the vertex universe [n]."""

    n: int
    face_masks: frozenset[int]

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("vertex universe size must be nonnegative")
        universe = (1 << self.n) - 1
        for m in self.face_masks:
            if m == 0:
                raise ValueError("the empty face is never stored in a complex")
            if m & ~universe:
                raise ValueError(f"face {mask_face(m)} has vertices outside 1..{self.n}")

    @classmethod
    def from_faces(cls, n: int, faces: Iterable[Iterable[int]], close: bool = False) -> "SimplicialComplex":
        masks = {face_mask(f) for f in faces}
        masks.discard(0)
        if close:
            masks = _downward_closure(masks)
        complex_ = cls(n, frozenset(masks))
        if not close:
            complex_.validate_closed()
        return complex_

    @classmethod
    def simplex(cls, n: int, vertices: Iterable[int]) -> "SimplicialComplex":
        return cls.from_faces(n, [tuple(vertices)], close=True)

    def validate_closed(self) -> None:
        for m in self.face_masks:
            if m.bit_count() > 1:
                for bit in _iter_bits(m):
                    if (m ^ bit) not in self.face_masks:
                        raise ValueError(
                            f"not downward closed: {mask_face(m)} present, "
                            f"{mask_face(m ^ bit)} missing"
                        )

    @property
    def is_empty(self) -> bool:
        return not self.face_masks

    @cached_property
    def max_dim(self) -> int:
        return max((m.bit_count() for m in self.face_masks), default=0) - 1

    @cached_property
    def vertex_mask(self) -> int:
        mask = 0
        for m in self.face_masks:
            mask |= m
        return mask

    def vertices(self) -> Face:
        return mask_face(self.vertex_mask)

    def has_face(self, face: Iterable[int]) -> bool:
        return face_mask(face) in self.face_masks

    def masks_of_dim(self, k: int) -> list[int]:
        return sorted(m for m in self.face_masks if m.bit_count() == k + 1)

    def faces_of_dim(self, k: int) -> list[Face]:
        return [mask_face(m) for m in self.masks_of_dim(k)]

    def faces(self) -> list[Face]:
        return [mask_face(m) for m in sorted(self.face_masks, key=lambda m: (m.bit_count(), m))]

    def is_subcomplex_of(self, other: "SimplicialComplex") -> bool:
        return self.face_masks <= other.face_masks

    def is_simplex_over(self, vertices: Iterable[int]) -> bool:
        w = face_mask(vertices)
        return self.face_masks == _downward_closure([w]) if w else self.is_empty

    def __len__(self) -> int:
        return len(self.face_masks)


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph on vertices 1..n."""

    n: int
    edges: frozenset[tuple[int, int]]

    def __post_init__(self):
        for e in self.edges:
            i, j = e
            if not (1 <= i < j <= self.n):
                raise ValueError(f"bad edge {e}: need 1 <= i < j <= {self.n}")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Iterable[int]]) -> "Graph":
        norm = set()
        for e in edges:
            i, j = sorted(e)
            if i == j:
                raise ValueError(f"loop at vertex {i} is not allowed")
            norm.add((i, j))
        return cls(n, frozenset(norm))

    @cached_property
    def adjacency(self) -> list[int]:
        """adjacency[v] is the neighbor bitmask of vertex v (index 0 unused)."""
        adj = [0] * (self.n + 1)
        for i, j in self.edges:
            adj[i] |= 1 << (j - 1)
            adj[j] |= 1 << (i - 1)
        return adj

    def has_edge(self, i: int, j: int) -> bool:
        a, b = min(i, j), max(i, j)
        return (a, b) in self.edges

    def sorted_edges(self) -> list[tuple[int, int]]:
        return sorted(self.edges)


@dataclass(frozen=True)
class Filtration:
    """Monotone sequence of complexes at strictly increasing parameters."""

    n: int
    steps: tuple[tuple[float, SimplicialComplex], ...]

    def __post_init__(self):
        if not self.steps:
            raise ValueError("a filtration needs at least one step")
        params = [t for t, _ in self.steps]
        if any(b <= a for a, b in zip(params, params[1:])):
            raise ValueError("filtration parameters must be strictly increasing")
        for (_, a), (_, b) in zip(self.steps, self.steps[1:]):
            if not a.is_subcomplex_of(b):
                raise ValueError("filtration is not monotone")

    @classmethod
    def from_births(
        cls,
        n: int,
        births: Mapping[int, float],
        params: Sequence[float] | None = None,
    ) -> "Filtration":
        """Build steps from a face-mask -> birth-time map.

        Every face must be born no earlier than its subfaces.  Extra
        ``params`` may be supplied to force steps at parameters where the
        complex does not change.
        """
        for m, t in births.items():
            if m.bit_count() > 1:
                for bit in _iter_bits(m):
                    sub = m ^ bit
                    if sub not in births or births[sub] > t:
                        raise ValueError(
                            f"face {mask_face(m)} born at {t} before subface {mask_face(sub)}"
                        )
        crit = set(births.values())
        if params is not None:
            crit.update(params)
        ordered = sorted(crit)
        by_birth = sorted(births.items(), key=lambda kv: kv[1])
        steps = []
        acc: set[int] = set()
        pos = 0
        for t in ordered:
            while pos < len(by_birth) and by_birth[pos][1] <= t:
                acc.add(by_birth[pos][0])
                pos += 1
            steps.append((t, SimplicialComplex(n, frozenset(acc))))
        return cls(n, tuple(steps))

    @classmethod
    def single(cls, complex_: SimplicialComplex, t: float = 0.0) -> "Filtration":
        return cls(complex_.n, ((t, complex_),))

    def params(self) -> tuple[float, ...]:
        return tuple(t for t, _ in self.steps)

    def final(self) -> SimplicialComplex:
        return self.steps[-1][1]

    @cached_property
    def birth_map(self) -> dict[int, float]:
        """Face mask -> first parameter at which the face is present."""
        births: dict[int, float] = {}
        for t, complex_ in self.steps:
            for m in complex_.face_masks:
                if m not in births:
                    births[m] = t
        return births

    def index_at(self, t: float) -> int:
        """Index of the last step with parameter <= t; -1 if before the first."""
        idx = -1
        for i, (p, _) in enumerate(self.steps):
            if p <= t:
                idx = i
            else:
                break
        return idx

    def complex_at(self, t: float) -> SimplicialComplex:
        idx = self.index_at(t)
        if idx < 0:
            return SimplicialComplex(self.n, frozenset())
        return self.steps[idx][1]


def clique_complex(g: Graph, max_dim: int | None = None) -> SimplicialComplex:
    """Complex of all cliques of g with dimension <= max_dim (default n-1)."""
    max_size = g.n if max_dim is None else max_dim + 1
    if max_size < 1:
        raise ValueError("max_dim must be nonnegative")
    adj = g.adjacency
    cliques: set[int] = set()

    def grow(mask: int, cand: int, size: int) -> None:
        cliques.add(mask)
        if size == max_size:
            return
        rest = cand
        while rest:
            bit = rest & -rest
            rest ^= bit
            v = bit.bit_length()
            grow(mask | bit, rest & adj[v], size + 1)

    above = 0
    for v in range(g.n, 0, -1):
        bit = 1 << (v - 1)
        grow(bit, above & adj[v], 1)
        above |= bit
    return SimplicialComplex(g.n, frozenset(cliques))


def full_subcomplex(K: SimplicialComplex, W: Iterable[int]) -> SimplicialComplex:
    """Faces of K contained in the vertex subset W (may be empty/degenerate)."""
    w = face_mask(W)
    return SimplicialComplex(K.n, frozenset(m for m in K.face_masks if m & ~w == 0))


def maximal_faces(K: SimplicialComplex) -> frozenset[Face]:
    """Faces of K with no proper superface in K."""
    out = []
    for m in K.face_masks:
        for v in range(1, K.n + 1):
            bit = 1 << (v - 1)
            if not (m & bit) and (m | bit) in K.face_masks:
                break
        else:
            out.append(m)
    return frozenset(mask_face(m) for m in out)


def minimal_nonfaces(K: SimplicialComplex) -> frozenset[Face]:
    """Subsets of [n] outside K all of whose proper nonempty subsets lie in K."""
    out: set[int] = set()
    for v in range(1, K.n + 1):
        bit = 1 << (v - 1)
        if bit not in K.face_masks:
            out.add(bit)
    seen: set[int] = set()
    for m in K.face_masks:
        for v in range(1, K.n + 1):
            bit = 1 << (v - 1)
            if m & bit:
                continue
            cand = m | bit
            if cand in K.face_masks or cand in seen:
                continue
            seen.add(cand)
            if all((cand ^ b) in K.face_masks for b in _iter_bits(cand)):
                out.add(cand)
    return frozenset(mask_face(m) for m in out)


def validate_distance_matrix(dist: Sequence[Sequence[float]]) -> int:
    """Check a distance matrix is square, symmetric, nonnegative with zero
    diagonal; returns the number of points."""
    n = len(dist)
    if n == 0:
        raise ValueError("distance matrix is empty")
    for i, row in enumerate(dist):
        if len(row) != n:
            raise ValueError(f"row {i + 1} has {len(row)} entries, expected {n}")
    for i in range(n):
        if dist[i][i] != 0:
            raise ValueError(f"nonzero diagonal entry at ({i + 1},{i + 1}): {dist[i][i]}")
        for j in range(i + 1, n):
            if dist[i][j] != dist[j][i]:
                raise ValueError(
                    f"matrix not symmetric at ({i + 1},{j + 1}): "
                    f"{dist[i][j]} != {dist[j][i]}"
                )
            if dist[i][j] < 0:
                raise ValueError(f"negative distance at ({i + 1},{j + 1}): {dist[i][j]}")
    return n


def vr_filtration(dist: Sequence[Sequence[float]], max_dim: int | None = None) -> Filtration:
    """Vietoris-Rips filtration of a distance matrix.

    Edge {i,j} enters at parameter dist[i][j]/2 (closed threshold); at each
    parameter the complex is the clique complex of the threshold graph,
    truncated to faces of dimension <= max_dim.  Critical parameters are
    exactly {0} union {dist[i][j]/2 : i < j}.
    """
    n = validate_distance_matrix(dist)
    if max_dim is None:
        max_dim = n - 1
    if max_dim < 0:
        raise ValueError("max_dim must be nonnegative")
    half = {}
    for i in range(n):
        for j in range(i + 1, n):
            half[(i + 1, j + 1)] = dist[i][j] / 2.0
    births: dict[int, float] = {}
    verts = range(1, n + 1)
    for size in range(1, min(max_dim + 1, n) + 1):
        for comb in combinations(verts, size):
            if size == 1:
                t = 0.0
            else:
                t = max(half[(a, b)] for a, b in combinations(comb, 2))
            births[face_mask(comb)] = t
    params = [0.0] + list(half.values())
    return Filtration.from_births(n, births, params=params)


def boundary_entries(
    K: SimplicialComplex, k: int, reduced: bool = False
) -> tuple[list[Face], list[Face], dict[tuple[int, int], int]]:
    """Classical boundary matrix data in dimension k under the canonical order.

    Returns (row faces, column faces, entries); entries map (row index,
    column index) to the sign (-1)^u where u counts the removed vertex's
    position from 1.  With ``reduced`` and k = 0 the single row is the
    empty face () and each column carries -1.
    """
    cols = K.faces_of_dim(k)
    if k == 0:
        if not reduced:
            return [], cols, {}
        return [()], cols, {(0, j): -1 for j in range(len(cols))}
    rows = K.faces_of_dim(k - 1)
    row_index = {f: i for i, f in enumerate(rows)}
    entries: dict[tuple[int, int], int] = {}
    for j, sigma in enumerate(cols):
        for u, v in enumerate(sigma, start=1):
            tau = tuple(w for w in sigma if w != v)
            entries[(row_index[tau], j)] = -1 if u % 2 else 1
    return rows, cols, entries


def maximal_clique_masks(g: Graph) -> list[int]:
    """All maximal cliques of g as bitmasks (Bron-Kerbosch with pivoting)."""
    adj = g.adjacency
    out: list[int] = []
    all_mask = (1 << g.n) - 1

    def bk(r: int, p: int, x: int) -> None:
        if not p and not x:
            if r:
                out.append(r)
            return
        pool = p | x
        u = (pool & -pool).bit_length()
        # branch only on vertices not adjacent to the pivot u
        for bit in _iter_bits(p & ~adj[u]):
            v = bit.bit_length()
            bk(r | bit, p & adj[v], x & adj[v])
            p ^= bit
            x |= bit

    if g.n:
        bk(0, all_mask, 0)
    return sorted(out)
