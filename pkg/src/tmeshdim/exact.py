"""Exact rational arithmetic and dense linear algebra over the rationals.

Everything here works on :class:`fractions.Fraction`; no floating point is
ever introduced. Matrices are small (a few hundred rows at most), so dense
storage and cubic elimination are adequate.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Sequence, Union

Rational = Fraction
RationalLike = Union[int, str, Fraction]


class DimensionError(ValueError):
    """Matrix shapes are incompatible with the requested operation."""


class InvalidGeometryError(ValueError):
    """Coordinates violate a distinctness or placement requirement."""


class PreconditionError(ValueError):
    """An input violates a documented precondition."""


def to_rational(value: RationalLike) -> Fraction:
    """Coerce an int, Fraction or ``"p/q"`` string to a Fraction.

    Floats are rejected on purpose: a binary float silently carries
    rounding error into what must be exact coordinates.
    """
    if type(value) is Fraction:
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, (int, Fraction)):
        return Fraction(value)
    if isinstance(value, str):
        text = value.strip()
        if not text:
            raise ValueError("empty rational string")
        if "/" in text:
            num, den = text.split("/", 1)
            return Fraction(int(num), int(den))
        return Fraction(int(text))
    raise TypeError(f"cannot interpret {value!r} as an exact rational")


def format_rational(value: Fraction) -> Union[int, str]:
    """Canonical JSON form: a bare integer, or a ``"p/q"`` string."""
    value = Fraction(value)
    if value.denominator == 1:
        return value.numerator
    return f"{value.numerator}/{value.denominator}"


class ExactMatrix:
    """Immutable dense matrix of Fractions in row-major order."""

    __slots__ = ("_rows", "nrows", "ncols")

    def __init__(self, rows: Iterable[Iterable[RationalLike]], ncols: int | None = None):
        data = tuple(tuple(to_rational(x) for x in row) for row in rows)
        if data:
            width = len(data[0])
            if any(len(r) != width for r in data):
                raise DimensionError("ragged rows")
            if ncols is not None and ncols != width:
                raise DimensionError(f"expected {ncols} columns, got {width}")
        else:
            width = ncols or 0
        self._rows = data
        self.nrows = len(data)
        self.ncols = width

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> "ExactMatrix":
        zero = Fraction(0)
        return cls([[zero] * ncols for _ in range(nrows)], ncols=ncols)

    @classmethod
    def identity(cls, n: int) -> "ExactMatrix":
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)], ncols=n)

    @property
    def shape(self) -> tuple[int, int]:
        return (self.nrows, self.ncols)

    @property
    def rows(self) -> tuple[tuple[Fraction, ...], ...]:
        return self._rows

    def __getitem__(self, idx: tuple[int, int]) -> Fraction:
        i, j = idx
        return self._rows[i][j]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        return self.shape == other.shape and self._rows == other._rows

    def __hash__(self) -> int:
        return hash((self.shape, self._rows))

    def __repr__(self) -> str:
        return f"ExactMatrix({self.nrows}x{self.ncols})"

    def column(self, j: int) -> tuple[Fraction, ...]:
        return tuple(row[j] for row in self._rows)

    def transpose(self) -> "ExactMatrix":
        return ExactMatrix(zip(*self._rows), ncols=self.nrows) if self.nrows else ExactMatrix.zeros(self.ncols, 0)

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "ExactMatrix":
        return ExactMatrix([[self._rows[i][j] for j in cols] for i in rows], ncols=len(cols))

    def to_lists(self) -> list[list[Fraction]]:
        return [list(r) for r in self._rows]

    def to_json(self) -> list[list[Union[int, str]]]:
        return [[format_rational(x) for x in r] for r in self._rows]


def _integer_rows(m: ExactMatrix) -> tuple[list[list[int]], Fraction]:
    """Scale each row to integers; return the rows and the product of scales."""
    out = []
    scale = Fraction(1)
    for row in m.rows:
        den = 1
        for x in row:
            if x.denominator != 1:
                den = lcm(den, x.denominator)
        out.append([x.numerator * (den // x.denominator) if x else 0 for x in row])
        scale *= den
    return out, scale


def rank(m: ExactMatrix) -> int:
    """Exact rank over the rationals via fraction-free elimination."""
    rows, _ = _integer_rows(m)
    nrows, ncols = m.nrows, m.ncols
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        piv = next((i for i in range(r, nrows) if rows[i][c] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        prow = rows[r]
        p = prow[c]
        for i in range(r + 1, nrows):
            row = rows[i]
            a = row[c]
            if a == 0:
                continue
            new = [p * row[k] - a * prow[k] for k in range(ncols)]
            g = 0
            for x in new:
                if x:
                    g = gcd(g, x)
                    if g == 1:
                        break
            if g > 1:
                new = [x // g for x in new]
            rows[i] = new
        r += 1
    return r


def det(m: ExactMatrix) -> Fraction:
    """Exact determinant (Bareiss elimination on the integer-scaled matrix)."""
    if m.nrows != m.ncols:
        raise DimensionError(f"determinant of non-square {m.nrows}x{m.ncols} matrix")
    n = m.nrows
    if n == 0:
        return Fraction(1)
    a, scale = _integer_rows(m)
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if swap is None:
                return Fraction(0)
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        akk = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            row_i, row_k = a[i], a[k]
            for j in range(k + 1, n):
                row_i[j] = (row_i[j] * akk - aik * row_k[j]) // prev
            row_i[k] = 0
        prev = akk
    return Fraction(sign * a[n - 1][n - 1]) / scale


def rref(m: ExactMatrix) -> tuple[ExactMatrix, list[int]]:
    """Reduced row echelon form and pivot column indices.

    The pivot in each column is the first nonzero entry at or below the
    current row, so the output is reproducible for a given input.
    """
    rows = [list(r) for r in m.rows]
    nrows, ncols = m.nrows, m.ncols
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        piv = next((i for i in range(r, nrows) if rows[i][c] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        p = rows[r][c]
        rows[r] = [x / p for x in rows[r]]
        for i in range(nrows):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
    return ExactMatrix(rows, ncols=ncols), pivots


def vandermonde(nodes: Sequence[RationalLike], degree: int) -> ExactMatrix:
    """The (degree+1) x k matrix whose row p holds ``node**p``."""
    xs = [to_rational(x) for x in nodes]
    if len(set(xs)) != len(xs):
        raise InvalidGeometryError(f"duplicate Vandermonde nodes: {xs}")
    if degree < 0:
        raise PreconditionError("degree must be non-negative")
    rows = []
    power = [Fraction(1)] * len(xs)
    for _ in range(degree + 1):
        rows.append(list(power))
        power = [p * x for p, x in zip(power, xs)]
    return ExactMatrix(rows, ncols=len(xs))


def lagrange_ratio(mono_nodes: Sequence[RationalLike], source: RationalLike, target: RationalLike) -> Fraction:
    """``prod_j (target - s_j) / (source - s_j)`` over the given nodes."""
    a = to_rational(source)
    b = to_rational(target)
    num = Fraction(1)
    den = Fraction(1)
    for s in mono_nodes:
        s = to_rational(s)
        if a == s:
            raise ZeroDivisionError(f"source coordinate {a} coincides with node {s}")
        num *= b - s
        den *= a - s
    return num / den


def cycle_matrix(a: Sequence[RationalLike], b: Sequence[RationalLike]) -> ExactMatrix:
    """The 2n x 2n matrix with one 1 per column and two nonzeros per row.

    Row i < n has 1 at column 2i and a_i at 2i+1; row n+k has 1 at 2k+1 and
    b_k at 2k+2, the last one wrapping around to column 0.
    """
    n = len(a)
    if n != len(b):
        raise DimensionError("a and b must have equal length")
    m = [[Fraction(0)] * (2 * n) for _ in range(2 * n)]
    for i in range(n):
        m[i][2 * i] = Fraction(1)
        m[i][2 * i + 1] = to_rational(a[i])
    for k in range(n):
        m[n + k][2 * k + 1] = Fraction(1)
        m[n + k][(2 * k + 2) % (2 * n)] = to_rational(b[k])
    return ExactMatrix(m, ncols=2 * n)


def cycle_matrix_abs_det(a: Sequence[RationalLike], b: Sequence[RationalLike]) -> Fraction:
    """``|1 - prod a_i b_i|``, the absolute determinant of :func:`cycle_matrix`."""
    if len(a) != len(b):
        raise DimensionError("a and b must have equal length")
    if len(a) < 2:
        raise PreconditionError("cycle needs n >= 2")
    prod = Fraction(1)
    for x in list(a) + list(b):
        x = to_rational(x)
        if x == 0:
            raise PreconditionError("cycle entries must be nonzero")
        prod *= x
    return abs(1 - prod)
