"""Exact linear algebra kernels.

Everything here is exact: arbitrary-precision rationals, prime fields,
sparse multivariate polynomials over the rationals, fraction-free
(Bareiss) elimination over integral domains, and the column reduction
used for persistence pairing.  No floating point enters any rank or
homology computation.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping, Sequence

__all__ = [
    "PrimeField",
    "RationalField",
    "QQ",
    "GF2",
    "parse_field",
    "Polynomial",
    "rank_dense",
    "rank_kernel",
    "rank_gf2_columns",
    "bareiss_rank",
    "persistence_reduce",
]


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


class PrimeField:
    """Arithmetic of GF(p); elements are plain ints in 0..p-1."""

    __slots__ = ("p", "zero", "one")

    def __init__(self, p: int):
        if not _is_prime(p):
            raise ValueError(f"modulus {p} is not prime")
        self.p = p
        self.zero = 0
        self.one = 1 % p

    @property
    def name(self) -> str:
        return "f2" if self.p == 2 else f"fp:{self.p}"

    def from_int(self, n: int) -> int:
        return n % self.p

    def from_fraction(self, q: Fraction) -> int:
        return (q.numerator % self.p) * self.inv(q.denominator % self.p) % self.p

    def add(self, a: int, b: int) -> int:
        return (a + b) % self.p

    def sub(self, a: int, b: int) -> int:
        return (a - b) % self.p

    def mul(self, a: int, b: int) -> int:
        return (a * b) % self.p

    def neg(self, a: int) -> int:
        return (-a) % self.p

    def inv(self, a: int) -> int:
        if a % self.p == 0:
            raise ZeroDivisionError("inverse of 0 in prime field")
        return pow(a, self.p - 2, self.p)

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def __eq__(self, other) -> bool:
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self) -> int:
        return hash(("PrimeField", self.p))

    def __repr__(self) -> str:
        return f"PrimeField({self.p})"


class RationalField:
    """Arithmetic of Q via fractions.Fraction."""

    zero = Fraction(0)
    one = Fraction(1)
    name = "q"

    @staticmethod
    def from_int(n: int) -> Fraction:
        return Fraction(n)

    @staticmethod
    def from_fraction(q: Fraction) -> Fraction:
        return q

    @staticmethod
    def add(a: Fraction, b: Fraction) -> Fraction:
        return a + b

    @staticmethod
    def sub(a: Fraction, b: Fraction) -> Fraction:
        return a - b

    @staticmethod
    def mul(a: Fraction, b: Fraction) -> Fraction:
        return a * b

    @staticmethod
    def neg(a: Fraction) -> Fraction:
        return -a

    @staticmethod
    def inv(a: Fraction) -> Fraction:
        return 1 / a

    @staticmethod
    def div(a: Fraction, b: Fraction) -> Fraction:
        return a / b

    def __eq__(self, other) -> bool:
        return isinstance(other, RationalField)

    def __hash__(self) -> int:
        return hash("RationalField")

    def __repr__(self) -> str:
        return "QQ"


QQ = RationalField()
GF2 = PrimeField(2)


def parse_field(spec: str):
    """Parse a field descriptor: 'q', 'f2', or 'fp:<prime>'."""
    if spec == "q":
        return QQ
    if spec == "f2":
        return GF2
    if spec.startswith("fp:"):
        return PrimeField(int(spec[3:]))
    raise ValueError(f"unknown field descriptor {spec!r} (expected q, f2 or fp:<p>)")


def _grlex(exps: tuple) -> tuple:
    return (sum(exps), exps)


class Polynomial:
    """Sparse multivariate polynomial with Fraction coefficients.

    Terms are stored as a dict mapping exponent tuples (length ``nvars``)
    to nonzero coefficients.  Instances are treated as immutable.
    """

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: Mapping[tuple, Fraction] | None = None):
        self.nvars = nvars
        clean: dict[tuple, Fraction] = {}
        if terms:
            for exps, c in terms.items():
                c = Fraction(c)
                if not c:
                    continue
                if len(exps) != nvars or any(e < 0 for e in exps):
                    raise ValueError(f"bad exponent vector {exps} for {nvars} variables")
                clean[tuple(exps)] = c
        self.terms = clean

    @classmethod
    def zero(cls, nvars: int) -> "Polynomial":
        return cls(nvars)

    @classmethod
    def const(cls, nvars: int, c) -> "Polynomial":
        return cls(nvars, {(0,) * nvars: Fraction(c)})

    @classmethod
    def variable(cls, nvars: int, i: int) -> "Polynomial":
        exps = tuple(1 if j == i else 0 for j in range(nvars))
        return cls(nvars, {exps: Fraction(1)})

    @classmethod
    def monomial(cls, nvars: int, exps: Sequence[int], c=1) -> "Polynomial":
        return cls(nvars, {tuple(exps): Fraction(c)})

    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            if other.nvars != self.nvars:
                raise ValueError("variable arity mismatch")
            return other
        if isinstance(other, (int, Fraction)):
            return Polynomial.const(self.nvars, other)
        return NotImplemented

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = Polynomial.const(self.nvars, other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.nvars == other.nvars and self.terms == other.terms

    def __hash__(self) -> int:
        return hash((self.nvars, frozenset(self.terms.items())))

    def __add__(self, other) -> "Polynomial":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        out = dict(self.terms)
        for exps, c in other.terms.items():
            v = out.get(exps, 0) + c
            if v:
                out[exps] = v
            else:
                out.pop(exps, None)
        return Polynomial(self.nvars, out)

    __radd__ = __add__

    def __neg__(self) -> "Polynomial":
        return Polynomial(self.nvars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other) -> "Polynomial":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "Polynomial":
        return -(self - other)

    def __mul__(self, other) -> "Polynomial":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        out: dict[tuple, Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                v = out.get(e, 0) + c1 * c2
                if v:
                    out[e] = v
                else:
                    out.pop(e, None)
        return Polynomial(self.nvars, out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "Polynomial":
        if k < 0:
            raise ValueError("negative power of a polynomial")
        out = Polynomial.const(self.nvars, 1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=0)

    def leading_term(self) -> tuple[tuple, Fraction]:
        """Greatest term under graded-lex order; polynomial must be nonzero."""
        exps = max(self.terms, key=_grlex)
        return exps, self.terms[exps]

    def evaluate(self, values: Sequence) -> Fraction:
        if len(values) != self.nvars:
            raise ValueError("variable arity mismatch")
        vals = [Fraction(v) for v in values]
        total = Fraction(0)
        for exps, c in self.terms.items():
            term = c
            for v, e in zip(vals, exps):
                if e:
                    term *= v**e
            total += term
        return total

    def substitute(self, targets: Sequence["Polynomial"], nvars_out: int) -> "Polynomial":
        """Ring homomorphism sending variable i to ``targets[i]``."""
        if len(targets) != self.nvars:
            raise ValueError("variable arity mismatch")
        out = Polynomial.zero(nvars_out)
        for exps, c in self.terms.items():
            term = Polynomial.const(nvars_out, c)
            for t, e in zip(targets, exps):
                if e:
                    term = term * t**e
            out = out + term
        return out

    def exact_div(self, divisor: "Polynomial") -> "Polynomial":
        """Exact quotient self/divisor; raises ValueError if not divisible.

        Repeated graded-lex leading-term cancellation.  When the division
        is exact this terminates with zero remainder; Bareiss only ever
        requests exact divisions.
        """
        divisor = self._coerce(divisor)
        if not divisor:
            raise ZeroDivisionError("polynomial division by zero")
        if not self:
            return Polynomial.zero(self.nvars)
        g_exps, g_c = divisor.leading_term()
        rem = dict(self.terms)
        out: dict[tuple, Fraction] = {}
        while rem:
            f_exps = max(rem, key=_grlex)
            q_exps = tuple(a - b for a, b in zip(f_exps, g_exps))
            if any(e < 0 for e in q_exps):
                raise ValueError("inexact polynomial division")
            q_c = rem[f_exps] / g_c
            out[q_exps] = out.get(q_exps, 0) + q_c
            for d_exps, d_c in divisor.terms.items():
                e = tuple(a + b for a, b in zip(q_exps, d_exps))
                v = rem.get(e, 0) - q_c * d_c
                if v:
                    rem[e] = v
                else:
                    rem.pop(e, None)
        return Polynomial(self.nvars, out)

    def render(self, names: Sequence[str] | None = None) -> str:
        """Human-readable form, terms in descending graded-lex order."""
        if not self.terms:
            return "0"
        if names is None:
            names = [f"x{i + 1}" for i in range(self.nvars)]
        pieces = []
        for exps in sorted(self.terms, key=_grlex, reverse=True):
            c = self.terms[exps]
            factors = []
            for name, e in zip(names, exps):
                if any(op in name for op in "+- "):
                    name = f"({name})"
                if e == 1:
                    factors.append(name)
                elif e > 1:
                    factors.append(f"{name}^{e}")
            body = "*".join(factors)
            if not body:
                term = str(abs(c))
            elif abs(c) == 1:
                term = body
            else:
                term = f"{abs(c)}*{body}"
            sign = "-" if c < 0 else "+"
            pieces.append((sign, term))
        first_sign, first_term = pieces[0]
        text = ("-" if first_sign == "-" else "") + first_term
        for sign, term in pieces[1:]:
            text += f" {sign} {term}"
        return text

    def __repr__(self) -> str:
        return f"Polynomial({self.render()})"


def _as_rows(rows: Sequence[Sequence]) -> list[list]:
    return [list(r) for r in rows]


def rank_dense(rows: Sequence[Sequence], field=QQ) -> int:
    """Rank of a dense matrix over a field, by Gaussian elimination."""
    m = _as_rows(rows)
    nr = len(m)
    nc = len(m[0]) if nr else 0
    zero = field.zero
    rank = 0
    r = 0
    for c in range(nc):
        piv = None
        for i in range(r, nr):
            if m[i][c] != zero:
                piv = i
                break
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv_p = field.inv(m[r][c])
        for i in range(r + 1, nr):
            if m[i][c] == zero:
                continue
            f = field.mul(m[i][c], inv_p)
            row_i, row_r = m[i], m[r]
            for j in range(c, nc):
                row_i[j] = field.sub(row_i[j], field.mul(f, row_r[j]))
        r += 1
        rank += 1
        if r == nr:
            break
    return rank


def rank_kernel(rows: Sequence[Sequence], ncols: int | None = None, field=QQ) -> tuple[int, int]:
    """(rank, kernel dimension) of a matrix over a field; rank + kdim = ncols."""
    if ncols is None:
        if not rows:
            raise ValueError("ncols required for a matrix with no rows")
        ncols = len(rows[0])
    rank = rank_dense(rows, field) if rows else 0
    return rank, ncols - rank


def rank_gf2_columns(columns: Iterable[int]) -> int:
    """Rank over GF(2) of a matrix given as column bitmasks (bit i = row i)."""
    pivots: dict[int, int] = {}
    rank = 0
    for col in columns:
        while col:
            low = col.bit_length() - 1
            other = pivots.get(low)
            if other is None:
                pivots[low] = col
                rank += 1
                break
            col ^= other
    return rank


def _domain_exact_div(num, den):
    if isinstance(num, Polynomial):
        return num.exact_div(den)
    if isinstance(num, Fraction) or isinstance(den, Fraction):
        return Fraction(num) / Fraction(den)
    q, r = divmod(num, den)
    if r:
        raise ValueError("inexact integer division in fraction-free elimination")
    return q


def bareiss_rank(rows: Sequence[Sequence]) -> int:
    """Rank over the fraction field of an integral domain.

    Entries may be Polynomial, Fraction or int.  Fraction-free one-step
    Bareiss elimination: every division is by the previous pivot and is
    exact by the Sylvester determinant identity.
    """
    m = _as_rows(rows)
    nr = len(m)
    nc = len(m[0]) if nr else 0
    rank = 0
    r = 0
    prev = None
    for c in range(nc):
        piv = None
        for i in range(r, nr):
            if m[i][c]:
                piv = i
                break
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        p = m[r][c]
        zero = p - p
        for i in range(r + 1, nr):
            mic = m[i][c]
            row_i, row_r = m[i], m[r]
            for j in range(c + 1, nc):
                num = p * row_i[j] - mic * row_r[j]
                row_i[j] = _domain_exact_div(num, prev) if prev is not None else num
            row_i[c] = zero
        prev = p
        r += 1
        rank += 1
        if r == nr:
            break
    return rank


def persistence_reduce(
    columns: Sequence[Mapping[int, object]], field=GF2
) -> tuple[list[tuple[int, int]], list[int]]:
    """Standard persistence column reduction over a prime field.

    ``columns[j]`` maps row indices (< j) to nonzero coefficients; columns
    must be listed in a filtration-compatible total order (every face
    before its cofaces).  Returns (pairs, unpaired) where pairs are
    (birth index, death index) and unpaired indices are creators of
    essential classes.
    """
    reduced: dict[int, dict[int, object]] = {}
    low_to_col: dict[int, int] = {}
    pairs: list[tuple[int, int]] = []
    zero = field.zero
    for j, raw in enumerate(columns):
        col: dict[int, object] = {}
        for i, c in raw.items():
            if i >= j:
                raise ValueError(f"column {j} references row {i}: subfaces must precede faces")
            c = field.from_int(c) if isinstance(c, int) else c
            if c != zero:
                col[i] = c
        while col:
            low = max(col)
            k = low_to_col.get(low)
            if k is None:
                break
            other = reduced[k]
            f = field.div(col[low], other[low])
            for i, c in other.items():
                v = field.sub(col.get(i, zero), field.mul(f, c))
                if v == zero:
                    col.pop(i, None)
                else:
                    col[i] = v
        if col:
            reduced[j] = col
            low = max(col)
            low_to_col[low] = j
            pairs.append((low, j))
    killed = {i for i, _ in pairs}
    unpaired = [j for j in range(len(columns)) if j not in reduced and j not in killed]
    return pairs, unpaired
