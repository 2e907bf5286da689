"""File formats: distance CSV, complex/ideal/labelled JSON, barcode JSON, SVG.

All writers are deterministic: identical inputs produce byte-identical
output (keys sorted, canonical interval order, no timestamps).
"""

from __future__ import annotations

import json
import math
from fractions import Fraction
from typing import Mapping, Sequence

from .complexes import SimplicialComplex, maximal_faces
from .labelled import LabelledComplex, make_labelled
from .linalg import Polynomial
from .monomials import AtomTable, FactoredElement, MonomialIdeal
from .persistence import PHBarcode, PrimeBarcode

__all__ = [
    "InputError",
    "load_distance_csv",
    "parse_distance_csv",
    "points_to_distances",
    "parse_points_json",
    "complex_to_dict",
    "complex_from_dict",
    "factored_to_dict",
    "factored_from_dict",
    "ideal_to_dict",
    "ideal_from_dict",
    "labelled_from_dict",
    "labelled_to_dict",
    "prime_barcode_to_dict",
    "ph_barcode_to_dict",
    "dumps_json",
    "barcodes_svg",
]


class InputError(ValueError):
    """Malformed user input; carries a position-aware diagnostic."""


def parse_distance_csv(text: str, origin: str = "<input>") -> list[list[float]]:
    rows: list[list[float]] = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        if not line.strip():
            continue
        row = []
        for colno, cell in enumerate(line.split(","), start=1):
            try:
                row.append(float(cell.strip()))
            except ValueError:
                raise InputError(
                    f"{origin}:{lineno}:{colno}: not a number: {cell.strip()!r}"
                ) from None
        rows.append(row)
    if not rows:
        raise InputError(f"{origin}: empty distance matrix")
    n = len(rows)
    for lineno, row in enumerate(rows, start=1):
        if len(row) != n:
            raise InputError(f"{origin}:{lineno}: expected {n} columns, found {len(row)}")
    return rows


def load_distance_csv(path) -> list[list[float]]:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_distance_csv(fh.read(), origin=str(path))


def points_to_distances(points: Sequence[Sequence[float]]) -> list[list[float]]:
    """Euclidean distance matrix of a coordinate list."""
    n = len(points)
    out = [[0.0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            d = math.dist(points[i], points[j])
            out[i][j] = out[j][i] = d
    return out


def parse_points_json(data, origin: str = "<input>") -> list[list[float]]:
    if not isinstance(data, dict) or "points" not in data:
        raise InputError(f"{origin}: expected an object with a 'points' key")
    points = data["points"]
    if not isinstance(points, list) or not points:
        raise InputError(f"{origin}: 'points' must be a nonempty list")
    dim = None
    for i, p in enumerate(points, start=1):
        if not isinstance(p, list) or not all(isinstance(c, (int, float)) for c in p):
            raise InputError(f"{origin}: point {i} is not a list of numbers")
        if dim is None:
            dim = len(p)
        elif len(p) != dim:
            raise InputError(f"{origin}: point {i} has {len(p)} coordinates, expected {dim}")
    return [list(map(float, p)) for p in points]


def complex_to_dict(K: SimplicialComplex) -> dict:
    """Complexes serialize by their maximal faces; closure restores the rest."""
    faces = sorted(maximal_faces(K), key=lambda f: (len(f), f))
    return {"n": K.n, "faces": [list(f) for f in faces]}


def complex_from_dict(data, origin: str = "<input>") -> SimplicialComplex:
    try:
        n = int(data["n"])
        faces = [tuple(int(v) for v in f) for f in data["faces"]]
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"{origin}: malformed complex JSON ({exc})") from None
    try:
        return SimplicialComplex.from_faces(n, faces, close=True)
    except ValueError as exc:
        raise InputError(f"{origin}: {exc}") from None


def factored_to_dict(m: FactoredElement) -> dict:
    return {"atoms": list(m.table.atoms), "exp": list(m.exps)}


def factored_from_dict(data, table: AtomTable | None = None, origin: str = "<input>") -> FactoredElement:
    try:
        atoms = tuple(data["atoms"])
        exps = tuple(int(e) for e in data["exp"])
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"{origin}: malformed factored element ({exc})") from None
    if table is None:
        table = AtomTable(atoms)
    elif table.atoms != atoms:
        raise InputError(f"{origin}: atom list {atoms} does not match table {table.atoms}")
    return FactoredElement(table, exps)


def ideal_to_dict(I: MonomialIdeal) -> dict:
    return {
        "ambient_n": I.ambient_n,
        "generators": [factored_to_dict(g) for g in I.generators],
    }


def ideal_from_dict(data, origin: str = "<input>") -> MonomialIdeal:
    try:
        n = int(data["ambient_n"])
        gens_raw = data["generators"]
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"{origin}: malformed ideal JSON ({exc})") from None
    table = AtomTable.for_variables(n)
    gens = [factored_from_dict(g, table, origin) for g in gens_raw]
    return MonomialIdeal.from_generators(table, gens)


def _expansion_from_json(raw, nvars: int, origin: str) -> Polynomial:
    terms = {}
    for item in raw:
        try:
            coeff, exps = item
            exps = tuple(int(e) for e in exps)
        except (TypeError, ValueError) as exc:
            raise InputError(f"{origin}: malformed atom expansion term ({exc})") from None
        if len(exps) != nvars:
            raise InputError(f"{origin}: expansion term arity {len(exps)} != {nvars}")
        terms[exps] = terms.get(exps, 0) + Fraction(coeff)
    return Polynomial(nvars, terms)


def _expansion_to_json(poly: Polynomial) -> list:
    items = sorted(poly.terms.items())
    out = []
    for exps, c in items:
        coeff = int(c) if c.denominator == 1 else str(c)
        out.append([coeff, list(exps)])
    return out


def labelled_from_dict(data, reduced: bool = False, origin: str = "<input>") -> LabelledComplex:
    """Labelled complex JSON: n, faces, atoms, labels, optional atom_polys."""
    try:
        n = int(data["n"])
        faces = [tuple(int(v) for v in f) for f in data["faces"]]
        atoms = tuple(str(a) for a in data["atoms"])
        labels_raw = data["labels"]
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"{origin}: malformed labelled-complex JSON ({exc})") from None
    atom_polys = data.get("atom_polys", {})
    nvars = len([a for a in atoms if a not in atom_polys])
    expansions = tuple(
        sorted((name, _expansion_from_json(raw, nvars, origin)) for name, raw in atom_polys.items())
    )
    try:
        table = AtomTable(atoms, expansions)
    except ValueError as exc:
        raise InputError(f"{origin}: {exc}") from None
    if len(labels_raw) != n:
        raise InputError(f"{origin}: expected {n} labels, found {len(labels_raw)}")
    labels = []
    for i, exps in enumerate(labels_raw, start=1):
        try:
            labels.append(FactoredElement(table, tuple(int(e) for e in exps)))
        except (TypeError, ValueError) as exc:
            raise InputError(f"{origin}: bad label for vertex {i} ({exc})") from None
    try:
        K = SimplicialComplex.from_faces(n, faces, close=True)
        return make_labelled(K, labels, reduced=reduced)
    except ValueError as exc:
        raise InputError(f"{origin}: {exc}") from None


def labelled_to_dict(LC: LabelledComplex) -> dict:
    out = {
        "n": LC.complex.n,
        "faces": [list(f) for f in sorted(maximal_faces(LC.complex), key=lambda f: (len(f), f))],
        "atoms": list(LC.table.atoms),
        "labels": [list(m.exps) for m in LC.vertex_labels],
    }
    if LC.table.expansions:
        out["atom_polys"] = {
            name: _expansion_to_json(poly) for name, poly in LC.table.expansions
        }
    return out


def _death_json(death: float | None):
    return "inf" if death is None else death


def prime_barcode_to_dict(barcode: PrimeBarcode) -> dict:
    intervals = []
    for iv in barcode.intervals:
        intervals.append(
            {
                "prime": list(iv.prime.vars),
                "dim": None,
                "birth": iv.birth,
                "death": _death_json(iv.death),
            }
        )
    return {"kind": barcode.kind, "intervals": intervals}


def ph_barcode_to_dict(barcode: PHBarcode) -> dict:
    intervals = []
    for dim, bars in barcode.bars:
        for birth, death in bars:
            intervals.append(
                {"prime": None, "dim": dim, "birth": birth, "death": _death_json(death)}
            )
    return {"kind": "PH", "intervals": intervals}


def dumps_json(obj) -> str:
    """Canonical JSON text: sorted keys, two-space indent, trailing newline."""
    return json.dumps(obj, indent=2, sort_keys=True, allow_nan=False) + "\n"


def _svg_escape(text: str) -> str:
    return text.replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;")


def barcodes_svg(groups: Sequence[tuple[str, Sequence[Mapping]]]) -> str:
    """Static SVG rendering: one horizontal bar per interval, grouped by kind.

    ``groups`` holds (kind, intervals) pairs where intervals are the JSON
    dicts produced above.  Infinite deaths are drawn to the right margin
    with an arrow head.
    """
    bar_h, gap, left, right_pad, top = 14.0, 6.0, 150.0, 40.0, 30.0
    span = 520.0
    finite: list[float] = []
    total = 0
    for _, intervals in groups:
        total += len(intervals)
        for iv in intervals:
            finite.append(iv["birth"])
            if iv["death"] != "inf":
                finite.append(iv["death"])
    tmax = max(finite, default=1.0)
    if tmax <= 0:
        tmax = 1.0

    def x(t: float) -> float:
        return left + span * t / tmax

    height = top * 2 + total * (bar_h + gap) + len(groups) * 24
    width = left + span + right_pad
    lines = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width:.0f}" '
        f'height="{height:.0f}" viewBox="0 0 {width:.0f} {height:.0f}">',
        f'<line x1="{left}" y1="{top - 10}" x2="{left}" y2="{height - 10}" '
        'stroke="#888" stroke-width="1"/>',
    ]
    y = top
    palette = {"SR": "#1f77b4", "EDGE": "#2ca02c", "PH": "#d62728"}
    for kind, intervals in groups:
        color = palette.get(kind, "#555555")
        lines.append(f'<g id="group-{_svg_escape(kind)}">')
        lines.append(
            f'<text x="8" y="{y + 10:.1f}" font-size="13" font-family="monospace">'
            f"{_svg_escape(kind)}</text>"
        )
        y += 24
        for iv in intervals:
            x0 = x(iv["birth"])
            infinite = iv["death"] == "inf"
            x1 = left + span + right_pad / 2 if infinite else x(iv["death"])
            if iv["prime"] is not None:
                label = "<0>" if not iv["prime"] else "<" + ",".join(f"x{v}" for v in iv["prime"]) + ">"
            else:
                label = f"dim {iv['dim']}"
            lines.append(
                f'<text x="12" y="{y + bar_h - 3:.1f}" font-size="11" '
                f'font-family="monospace">{_svg_escape(label)}</text>'
            )
            lines.append(
                f'<rect class="bar" x="{x0:.3f}" y="{y:.1f}" '
                f'width="{max(x1 - x0, 1.0):.3f}" height="{bar_h:.1f}" fill="{color}"/>'
            )
            if infinite:
                ax = left + span + right_pad / 2
                ay = y + bar_h / 2
                lines.append(
                    f'<path d="M {ax:.1f} {ay - 5:.1f} L {ax + 9:.1f} {ay:.1f} '
                    f'L {ax:.1f} {ay + 5:.1f} Z" fill="{color}"/>'
                )
            y += bar_h + gap
        lines.append("</g>")
    lines.append(
        f'<text x="{left}" y="{height - 2:.0f}" font-size="10" font-family="monospace">0</text>'
    )
    lines.append(
        f'<text x="{left + span - 20:.0f}" y="{height - 2:.0f}" font-size="10" '
        f'font-family="monospace">{tmax:.4g}</text>'
    )
    lines.append("</svg>")
    return "\n".join(lines) + "\n"
