"""Persistence along a filtration: prime barcodes, Betti profiles, PH bars.

A prime barcode tracks, per critical parameter, which linear primes are
associated to the step's ideal (face ideal for kind ``SR``, edge ideal
for kind ``EDGE``).  Between critical parameters everything is constant,
so barcodes are computed on the finite critical set only.  Descending
(SR) and ascending (EDGE) chains of decomposable ideals admit no
resurrection, hence every prime carries exactly one interval; this is
asserted at assembly time.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from typing import Callable, Iterable, Sequence

from .complexes import Filtration, SimplicialComplex, boundary_entries
from .ideals import minimal_vertex_covers, one_skeleton, sr_associated_primes, stanley_reisner
from .linalg import GF2, PrimeField, persistence_reduce, rank_dense, rank_gf2_columns
from .monomials import LinearPrime, ideal_in_prime

__all__ = [
    "PrimeInterval",
    "PrimeBarcode",
    "BettiProfile",
    "PHBarcode",
    "JumpWitness",
    "CoverageReport",
    "NoResurrectionError",
    "step_associated_primes",
    "prime_barcode",
    "betti_numbers",
    "betti_profile",
    "ph_barcode",
    "jump_witness",
    "witness_between_steps",
    "coverage_report",
]

KIND_SR = "SR"
KIND_EDGE = "EDGE"


class NoResurrectionError(AssertionError):
    """A prime re-entered the associated set after leaving it."""


@dataclass(frozen=True)
class PrimeInterval:
    """Half-open lifespan [birth, death) of one associated prime."""

    prime: LinearPrime
    birth: float
    death: float | None  # None encodes +infinity
    kind: str

    @property
    def is_zero_ideal_epoch(self) -> bool:
        """Flags the P_0 intervals of full-simplex or edgeless epochs."""
        return self.prime.is_zero_ideal

    def alive_at(self, t: float) -> bool:
        return self.birth <= t and (self.death is None or t < self.death)


@dataclass(frozen=True)
class PrimeBarcode:
    kind: str
    intervals: tuple[PrimeInterval, ...]
    params: tuple[float, ...]

    def primes(self) -> frozenset[LinearPrime]:
        return frozenset(iv.prime for iv in self.intervals)

    def intervals_for(self, prime: LinearPrime) -> tuple[PrimeInterval, ...]:
        return tuple(iv for iv in self.intervals if iv.prime == prime)

    def finite_endpoints(self) -> list[float]:
        out = []
        for iv in self.intervals:
            out.append(iv.birth)
            if iv.death is not None:
                out.append(iv.death)
        return out


@dataclass(frozen=True)
class BettiProfile:
    """Per-step Betti vectors b_0..b_maxdim (b_{-1} first when reduced)."""

    params: tuple[float, ...]
    betti: tuple[tuple[int, ...], ...]
    field_name: str
    reduced: bool

    def at(self, t: float, k: int) -> int:
        idx = -1
        for i, p in enumerate(self.params):
            if p <= t:
                idx = i
        if idx < 0:
            raise ValueError(f"parameter {t} precedes the filtration")
        row = self.betti[idx]
        pos = k + 1 if self.reduced else k
        if pos < 0:
            raise ValueError(f"dimension {k} not tracked")
        return row[pos] if pos < len(row) else 0


@dataclass(frozen=True)
class PHBarcode:
    """Classical persistence bars per dimension; death None is +infinity."""

    bars: tuple[tuple[int, tuple[tuple[float, float | None], ...]], ...]
    field_name: str

    @cached_property
    def by_dim(self) -> dict[int, tuple[tuple[float, float | None], ...]]:
        return dict(self.bars)

    def count_at(self, t: float, k: int) -> int:
        return sum(
            1
            for birth, death in self.by_dim.get(k, ())
            if birth <= t and (death is None or t < death)
        )

    def finite_endpoints(self) -> list[float]:
        out = []
        for _, bars in self.bars:
            for birth, death in bars:
                out.append(birth)
                if death is not None:
                    out.append(death)
        return out


@dataclass(frozen=True)
class JumpWitness:
    prime: LinearPrime
    level: str  # "associated" or "containment"


@dataclass(frozen=True)
class CoverageReport:
    """Which half-distances appear among the barcode endpoints."""

    pairs_checked: int
    violations: tuple[tuple[int, int, float], ...]

    @property
    def ok(self) -> bool:
        return not self.violations


def step_associated_primes(
    f: Filtration,
    kind: str = KIND_SR,
    ass_fn: Callable[[SimplicialComplex], Iterable[LinearPrime]] | None = None,
) -> list[frozenset[LinearPrime]]:
    """Associated prime set at every filtration step.

    ``kind`` selects the face-ideal or edge-ideal decomposition; a custom
    ``ass_fn`` may supply any other monotone square-free ideal family.
    """
    if ass_fn is not None:
        return [frozenset(ass_fn(K)) for _, K in f.steps]
    if kind == KIND_SR:
        return [sr_associated_primes(K) for _, K in f.steps]
    if kind == KIND_EDGE:
        return [minimal_vertex_covers(one_skeleton(K)) for _, K in f.steps]
    raise ValueError(f"unknown barcode kind {kind!r}")


def _intervals_from_runs(
    ass_per_step: Sequence[frozenset[LinearPrime]],
    params: Sequence[float],
    kind: str,
) -> tuple[PrimeInterval, ...]:
    present: dict[LinearPrime, list[int]] = {}
    for i, ass in enumerate(ass_per_step):
        for p in ass:
            present.setdefault(p, []).append(i)
    intervals = []
    for prime, idxs in present.items():
        if idxs[-1] - idxs[0] + 1 != len(idxs):
            raise NoResurrectionError(
                f"prime {prime} resurrects in kind {kind}: steps {idxs}"
            )
        birth = params[idxs[0]]
        last = idxs[-1]
        death = None if last == len(params) - 1 else params[last + 1]
        intervals.append(PrimeInterval(prime, birth, death, kind))
    intervals.sort(
        key=lambda iv: (
            iv.birth,
            iv.death is None,
            iv.death if iv.death is not None else 0.0,
            iv.prime.sort_key(),
        )
    )
    return tuple(intervals)


def prime_barcode(
    f: Filtration,
    kind: str = KIND_SR,
    ass_fn: Callable[[SimplicialComplex], Iterable[LinearPrime]] | None = None,
) -> PrimeBarcode:
    """Persistent associated-prime barcode of a filtration.

    Each prime's interval spans the maximal run of consecutive critical
    steps at which it is associated; the zero-ideal prime is emitted like
    any other and flagged on the interval.
    """
    params = f.params()
    ass_per_step = step_associated_primes(f, kind, ass_fn)
    label = kind if ass_fn is None else "CUSTOM"
    return PrimeBarcode(label, _intervals_from_runs(ass_per_step, params, label), params)


def _betti_gf2(K: SimplicialComplex, reduced: bool, top: int) -> list[int]:
    ranks = []
    for k in range(top + 2):
        rows, cols, entries = boundary_entries(K, k, reduced=reduced)
        if not rows or not cols:
            ranks.append(0)
            continue
        col_masks = [0] * len(cols)
        for (i, j), _ in entries.items():
            col_masks[j] |= 1 << i
        ranks.append(rank_gf2_columns(col_masks))
    counts = [len(K.masks_of_dim(k)) for k in range(top + 1)]
    out = []
    if reduced:
        # the empty face spans one dimension in degree -1
        out.append(1 - ranks[0])
    for k in range(top + 1):
        out.append(counts[k] - ranks[k] - ranks[k + 1])
    return out


def _betti_field(K: SimplicialComplex, field, reduced: bool, top: int) -> list[int]:
    ranks = []
    for k in range(top + 2):
        rows, cols, entries = boundary_entries(K, k, reduced=reduced)
        if not rows or not cols:
            ranks.append(0)
            continue
        dense = [[field.zero] * len(cols) for _ in rows]
        for (i, j), s in entries.items():
            dense[i][j] = field.from_int(s)
        ranks.append(rank_dense(dense, field))
    counts = [len(K.masks_of_dim(k)) for k in range(top + 1)]
    out = []
    if reduced:
        out.append(1 - ranks[0])
    for k in range(top + 1):
        out.append(counts[k] - ranks[k] - ranks[k + 1])
    return out


def betti_numbers(
    K: SimplicialComplex, field=GF2, reduced: bool = False, top: int | None = None
) -> list[int]:
    """Betti numbers b_0..b_top of one complex (b_{-1} prepended if reduced)."""
    if top is None:
        top = max(K.max_dim, 0)
    if isinstance(field, PrimeField) and field.p == 2:
        return _betti_gf2(K, reduced, top)
    return _betti_field(K, field, reduced, top)


def betti_profile(
    f: Filtration, field=GF2, reduced: bool = False, top: int | None = None
) -> BettiProfile:
    """Betti vectors at every critical parameter, via exact ranks."""
    if top is None:
        top = max(f.final().max_dim, 0)
    rows = tuple(tuple(betti_numbers(K, field, reduced, top)) for _, K in f.steps)
    return BettiProfile(f.params(), rows, field.name, reduced)


def ph_barcode(f: Filtration, field=GF2, max_dim: int | None = None) -> PHBarcode:
    """Persistence barcode by column reduction over a prime field.

    Simplices are ordered by (birth, dimension, colex); zero-length bars
    are dropped, unpaired creators yield infinite bars.
    """
    births = f.birth_map
    order = sorted(births, key=lambda m: (births[m], m.bit_count(), m))
    index = {m: i for i, m in enumerate(order)}
    columns: list[dict[int, int]] = []
    for m in order:
        col: dict[int, int] = {}
        if m.bit_count() > 1:
            verts = [v + 1 for v in range(f.n) if m >> v & 1]
            for u, v in enumerate(verts, start=1):
                sub = m ^ (1 << (v - 1))
                col[index[sub]] = -1 if u % 2 else 1
        columns.append(col)
    pairs, unpaired = persistence_reduce(columns, field)
    top = max(f.final().max_dim, 0) if max_dim is None else max_dim
    bars: dict[int, list[tuple[float, float | None]]] = {}
    for i, j in pairs:
        dim = order[i].bit_count() - 1
        if dim > top:
            continue
        birth, death = births[order[i]], births[order[j]]
        if birth == death:
            continue
        bars.setdefault(dim, []).append((birth, death))
    for i in unpaired:
        dim = order[i].bit_count() - 1
        if dim > top:
            continue
        bars.setdefault(dim, []).append((births[order[i]], None))
    packed = tuple(
        (dim, tuple(sorted(bars[dim], key=lambda bd: (bd[0], bd[1] is None, bd[1] or 0.0))))
        for dim in sorted(bars)
    )
    return PHBarcode(packed, field.name)


def _all_primes_ordered(n: int) -> list[LinearPrime]:
    out = [LinearPrime(())]
    for size in range(1, n + 1):
        for comb in combinations(range(1, n + 1), size):
            out.append(LinearPrime(comb))
    out.sort(key=LinearPrime.sort_key)
    return out


def witness_between_steps(f: Filtration, i: int) -> JumpWitness | None:
    """A linear prime whose indicator changes between steps i-1 and i.

    Primes entering or leaving the associated set of the face ideal are
    searched first, in (|W|, lex) order; if none changes (only possible
    when the two step complexes coincide) the ideal-containment indicator
    is tried as a fallback.  None means no indicator changes at all.
    """
    if not 1 <= i < len(f.steps):
        raise ValueError(f"step index {i} out of range")
    K_lo, K_hi = f.steps[i - 1][1], f.steps[i][1]
    ass_lo, ass_hi = sr_associated_primes(K_lo), sr_associated_primes(K_hi)
    changed = sorted(ass_lo ^ ass_hi, key=LinearPrime.sort_key)
    if changed:
        return JumpWitness(changed[0], "associated")
    I_lo, I_hi = stanley_reisner(K_lo), stanley_reisner(K_hi)
    for prime in _all_primes_ordered(f.n):
        if ideal_in_prime(I_lo, prime) != ideal_in_prime(I_hi, prime):
            return JumpWitness(prime, "containment")
    return None


def jump_witness(f: Filtration, k0: int, t0: float, field=GF2) -> JumpWitness | None:
    """A linear prime whose indicator changes across t0 when b_k0 jumps there.

    t0 must lie strictly between the first and last critical parameters.
    Returns None when the Betti number is continuous at t0.
    """
    params = f.params()
    if not (params[0] < t0 < params[-1]):
        raise ValueError(f"t0={t0} is not strictly between {params[0]} and {params[-1]}")
    hi = f.index_at(t0)
    lo = hi - 1 if params[hi] == t0 else hi
    if lo == hi:
        return None
    K_lo, K_hi = f.steps[lo][1], f.steps[hi][1]
    top = max(k0, 0)
    b_lo = betti_numbers(K_lo, field, top=top)
    b_hi = betti_numbers(K_hi, field, top=top)
    if b_lo[k0] == b_hi[k0]:
        return None
    return witness_between_steps(f, hi)


def coverage_report(
    dist: Sequence[Sequence[float]], barcode: PrimeBarcode, tol: float = 1e-12
) -> CoverageReport:
    """Check every half-distance h_ij/2 appears among barcode endpoints."""
    endpoints = barcode.finite_endpoints()
    violations = []
    n = len(dist)
    pairs = 0
    for i in range(n):
        for j in range(i + 1, n):
            pairs += 1
            target = dist[i][j] / 2.0
            if not any(abs(e - target) <= tol for e in endpoints):
                violations.append((i + 1, j + 1, target))
    return CoverageReport(pairs, tuple(violations))
