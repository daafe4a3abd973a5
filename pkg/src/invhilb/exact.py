"""Exact rational matrices and the small amount of linear algebra built on them.

Entries are :class:`fractions.Fraction`; every computation is exact.  Matrices
are immutable, stored row-major as a tuple of row tuples.  Subspaces of Q^n are
passed around as matrices whose rows span them.
"""
from __future__ import annotations

import json
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Sequence

Rational = Fraction


def as_rational(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, float):
        raise TypeError("floats are not accepted; pass an int, str or Fraction")
    return Fraction(x)


def rational_to_str(x: Fraction) -> str:
    return str(as_rational(x))


def rational_from_str(s: str) -> Fraction:
    return Fraction(s)


class Matrix:
    """Dense immutable matrix over Q."""

    __slots__ = ("nrows", "ncols", "_rows")

    def __init__(self, rows: Iterable[Iterable], ncols: int | None = None):
        data = tuple(tuple(as_rational(x) for x in row) for row in rows)
        if data:
            width = len(data[0])
            if any(len(r) != width for r in data):
                raise ValueError("ragged rows")
            if ncols is not None and ncols != width:
                raise ValueError("column count mismatch")
        else:
            width = ncols or 0
        self.nrows = len(data)
        self.ncols = width
        self._rows = data

    # construction -----------------------------------------------------------

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> "Matrix":
        return cls([[0] * ncols for _ in range(nrows)], ncols=ncols)

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)], ncols=n)

    @classmethod
    def elementary(cls, n: int, i: int, j: int, value=1) -> "Matrix":
        """``value`` times the matrix unit E_ij (0-based indices)."""
        rows = [[0] * n for _ in range(n)]
        rows[i][j] = value
        return cls(rows)

    @classmethod
    def from_columns(cls, cols: Sequence[Sequence], nrows: int | None = None) -> "Matrix":
        if not cols:
            return cls.zeros(nrows or 0, 0)
        return cls(zip(*cols))

    @classmethod
    def stack(cls, *blocks: "Matrix") -> "Matrix":
        widths = {b.ncols for b in blocks}
        if len(widths) > 1:
            raise ValueError("cannot stack matrices of different widths")
        rows = [r for b in blocks for r in b._rows]
        return cls(rows, ncols=widths.pop() if widths else 0)

    @classmethod
    def hstack(cls, *blocks: "Matrix") -> "Matrix":
        heights = {b.nrows for b in blocks}
        if len(heights) > 1:
            raise ValueError("cannot concatenate matrices of different heights")
        n = heights.pop()
        return cls([sum((b._rows[i] for b in blocks), ()) for i in range(n)])

    # access -----------------------------------------------------------------

    @property
    def shape(self) -> tuple[int, int]:
        return (self.nrows, self.ncols)

    @property
    def rows(self) -> tuple[tuple[Fraction, ...], ...]:
        return self._rows

    def __getitem__(self, key):
        if isinstance(key, tuple):
            i, j = key
            return self._rows[i][j]
        return self._rows[key]

    def row(self, i: int) -> tuple[Fraction, ...]:
        return self._rows[i]

    def col(self, j: int) -> tuple[Fraction, ...]:
        return tuple(r[j] for r in self._rows)

    def entries(self) -> list[Fraction]:
        return [x for r in self._rows for x in r]

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "Matrix":
        return Matrix([[self._rows[i][j] for j in cols] for i in rows], ncols=len(cols))

    # arithmetic -------------------------------------------------------------

    @property
    def T(self) -> "Matrix":
        return Matrix(zip(*self._rows), ncols=self.nrows) if self.nrows else Matrix.zeros(self.ncols, 0)

    def __add__(self, other: "Matrix") -> "Matrix":
        self._same_shape(other)
        return Matrix([[a + b for a, b in zip(r, s)] for r, s in zip(self._rows, other._rows)], ncols=self.ncols)

    def __sub__(self, other: "Matrix") -> "Matrix":
        self._same_shape(other)
        return Matrix([[a - b for a, b in zip(r, s)] for r, s in zip(self._rows, other._rows)], ncols=self.ncols)

    def __neg__(self) -> "Matrix":
        return Matrix([[-a for a in r] for r in self._rows], ncols=self.ncols)

    def __mul__(self, scalar) -> "Matrix":
        if isinstance(scalar, Matrix):
            return self @ scalar
        c = as_rational(scalar)
        return Matrix([[c * a for a in r] for r in self._rows], ncols=self.ncols)

    __rmul__ = __mul__

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.ncols != other.nrows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        cols = other.T._rows if other.ncols else ()
        return Matrix(
            [[sum((a * b for a, b in zip(r, c)), Fraction(0)) for c in cols] for r in self._rows],
            ncols=other.ncols,
        )

    def apply(self, vec: Sequence) -> tuple[Fraction, ...]:
        v = [as_rational(x) for x in vec]
        if len(v) != self.ncols:
            raise ValueError("vector length mismatch")
        return tuple(sum((a * b for a, b in zip(r, v)), Fraction(0)) for r in self._rows)

    def __pow__(self, k: int) -> "Matrix":
        if self.nrows != self.ncols or k < 0:
            raise ValueError("only non-negative powers of square matrices")
        out = Matrix.identity(self.nrows)
        for _ in range(k):
            out = out @ self
        return out

    def commutator(self, other: "Matrix") -> "Matrix":
        return self @ other - other @ self

    def _same_shape(self, other: "Matrix") -> None:
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")

    # predicates -------------------------------------------------------------

    def __eq__(self, other) -> bool:
        return isinstance(other, Matrix) and self.shape == other.shape and self._rows == other._rows

    def __hash__(self) -> int:
        return hash((self.shape, self._rows))

    def is_zero(self) -> bool:
        return all(x == 0 for r in self._rows for x in r)

    def is_square(self) -> bool:
        return self.nrows == self.ncols

    def is_skew(self) -> bool:
        return self.is_square() and self == -self.T

    def trace(self) -> Fraction:
        return sum((self._rows[i][i] for i in range(min(self.shape))), Fraction(0))

    # derived quantities -----------------------------------------------------

    def rank(self) -> int:
        return rref(self)[1]

    def det(self) -> Fraction:
        if not self.is_square():
            raise ValueError("determinant of a non-square matrix")
        m = [list(r) for r in self._rows]
        n = self.nrows
        sign = 1
        out = Fraction(1)
        for c in range(n):
            p = next((r for r in range(c, n) if m[r][c] != 0), None)
            if p is None:
                return Fraction(0)
            if p != c:
                m[c], m[p] = m[p], m[c]
                sign = -sign
            piv = m[c][c]
            out *= piv
            for r in range(c + 1, n):
                f = m[r][c] / piv
                if f:
                    m[r] = [a - f * b for a, b in zip(m[r], m[c])]
        return sign * out

    def inverse(self) -> "Matrix":
        n = self.nrows
        if not self.is_square():
            raise ValueError("inverse of a non-square matrix")
        aug, rank, pivots = rref(Matrix.hstack(self, Matrix.identity(n)))
        if rank < n or pivots[:n] != list(range(n)):
            raise ZeroDivisionError("matrix is singular")
        return aug.submatrix(range(n), range(n, 2 * n))

    # serialization ----------------------------------------------------------

    def to_json(self) -> list[list[str]]:
        return [[str(x) for x in r] for r in self._rows]

    @classmethod
    def from_json(cls, data) -> "Matrix":
        if isinstance(data, str):
            data = json.loads(data)
        return cls([[Fraction(x) for x in r] for r in data])

    def __repr__(self) -> str:
        return f"Matrix({self.to_json()})"

    def __str__(self) -> str:
        cells = [[str(x) for x in r] for r in self._rows]
        w = max((len(c) for r in cells for c in r), default=1)
        return "\n".join("[" + " ".join(c.rjust(w) for c in r) + "]" for r in cells)


def vector(*xs) -> tuple[Fraction, ...]:
    return tuple(as_rational(x) for x in xs)


def unit_vector(n: int, i: int) -> tuple[Fraction, ...]:
    """Standard basis vector e_{i+1} of Q^n (``i`` is 0-based)."""
    return tuple(Fraction(1 if k == i else 0) for k in range(n))


def rref(m: Matrix) -> tuple[Matrix, int, list[int]]:
    """Reduced row echelon form.  Returns ``(R, rank, pivot_columns)``."""
    rows = [list(r) for r in m.rows]
    nr, nc = m.shape
    pivots: list[int] = []
    r = 0
    for c in range(nc):
        if r == nr:
            break
        p = next((i for i in range(r, nr) if rows[i][c] != 0), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        piv = rows[r][c]
        if piv != 1:
            rows[r] = [x / piv for x in rows[r]]
        support = [(j, b) for j, b in enumerate(rows[r]) if b]
        for i in range(nr):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                row = rows[i]
                for j, b in support:
                    row[j] -= f * b
        pivots.append(c)
        r += 1
    return Matrix(rows, ncols=nc), len(pivots), pivots


def kernel(m: Matrix) -> list[tuple[Fraction, ...]]:
    """Basis of {v : m v = 0}, one vector per free column of the RREF."""
    red, rank, pivots = rref(m)
    nc = m.ncols
    free = [c for c in range(nc) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * nc
        v[f] = Fraction(1)
        for i, p in enumerate(pivots):
            v[p] = -red[i, f]
        basis.append(tuple(v))
    return basis


def kernel_matrix(m: Matrix) -> Matrix:
    return Matrix(kernel(m), ncols=m.ncols)


def row_basis(m: Matrix) -> Matrix:
    """Nonzero rows of the RREF: a canonical basis of the row space."""
    red, rank, _ = rref(m)
    return Matrix(red.rows[:rank], ncols=m.ncols)


def span_contains(space: Matrix, vectors: Matrix | Sequence[Sequence]) -> bool:
    """True iff every row of ``vectors`` lies in the row space of ``space``."""
    vecs = vectors if isinstance(vectors, Matrix) else Matrix(vectors, ncols=space.ncols)
    if vecs.nrows == 0:
        return True
    if space.nrows == 0:
        return vecs.is_zero()
    return Matrix.stack(space, vecs).rank() == space.rank()


def span_equal(a: Matrix, b: Matrix) -> bool:
    return row_basis(a) == row_basis(b)


def solve(m: Matrix, rhs: Sequence) -> tuple[Fraction, ...] | None:
    """One solution of m x = rhs, or None if the system is inconsistent."""
    aug = Matrix.hstack(m, Matrix([[as_rational(x)] for x in rhs], ncols=1))
    red, rank, pivots = rref(aug)
    if pivots and pivots[-1] == m.ncols:
        return None
    x = [Fraction(0)] * m.ncols
    for i, p in enumerate(pivots):
        x[p] = red[i, m.ncols]
    return tuple(x)


def minor2(m, s: int, t: int):
    """Column minor x_{1s} x_{2t} - x_{1t} x_{2s} of a two-row matrix.

    Indices are 1-based.  ``s > t`` gives the antisymmetric value; ``s == t``
    is rejected.  Works for any two-row array whose entries support ``*`` and
    ``-`` (rationals or polynomials).
    """
    ncols = len(m[0])
    if len(m) != 2:
        raise ValueError("minor2 needs a two-row matrix")
    if not (1 <= s <= ncols and 1 <= t <= ncols):
        raise IndexError(f"column index out of range: ({s}, {t})")
    if s == t:
        raise ValueError("minor2 needs two distinct columns")
    return m[0][s - 1] * m[1][t - 1] - m[0][t - 1] * m[1][s - 1]


def pfaffian4_entries(m) -> object:
    """Pfaffian of a 4x4 skew array over any commutative ring."""
    return m[0][1] * m[2][3] - m[0][2] * m[1][3] + m[0][3] * m[1][2]


def pfaffian4(m: Matrix) -> Fraction:
    if m.shape != (4, 4):
        raise ValueError("pfaffian4 needs a 4x4 matrix")
    if not m.is_skew():
        raise ValueError("pfaffian4 needs a skew-symmetric matrix")
    return pfaffian4_entries(m.rows)


def principal_pfaffians(m: Matrix) -> dict[tuple[int, ...], Fraction]:
    """All 4x4 principal Pfaffians of a skew matrix, keyed by 0-based index set."""
    return {idx: pfaffian4(m.submatrix(idx, idx)) for idx in combinations(range(m.nrows), 4)}


def exp_nilpotent(n: Matrix) -> Matrix:
    """exp(n) for nilpotent n; the series is a finite sum."""
    if not n.is_square():
        raise ValueError("exp_nilpotent needs a square matrix")
    size = n.nrows
    term = Matrix.identity(size)
    total = term
    for k in range(1, size + 1):
        term = (term @ n) * Fraction(1, k)
        if term.is_zero():
            return total
        total = total + term
    # term now holds n^size / size!, which vanishes for nilpotent n
    raise ValueError("matrix is not nilpotent")


def matrix_to_json(m: Matrix) -> str:
    return json.dumps(m.to_json())


def matrix_from_json(s: str) -> Matrix:
    return Matrix.from_json(s)
