"""Exact dense linear algebra over the rationals.

Everything here is exact: entries are Python ints or ``fractions.Fraction``
values, never floats.  Elimination is deterministic (first nonzero entry in
column order is promoted), so ranks, nullspace bases and solutions are
reproducible bit for bit across runs and platforms.

The elimination inner loop runs fraction-free over the integers after
clearing denominators row by row.  It lives in a compiled Cython kernel
when available and in an identical pure-Python twin otherwise; set
``ORIDIAL_PURE_KERNELS=1`` to force the fallback.  Both produce identical
output, see ``benchmarks/bench_linalg.py`` for the speed comparison.
"""

from __future__ import annotations

import os
from fractions import Fraction
from math import gcd

if os.environ.get("ORIDIAL_PURE_KERNELS"):
    from . import _kernels_py as _kernels
else:
    try:
        from . import _kernels  # type: ignore[attr-defined]
    except ImportError:
        from . import _kernels_py as _kernels

KERNEL_BACKEND: str = _kernels.BACKEND


def kernel_backend() -> str:
    """Name of the row-reduction backend in use ("cython" or "python")."""
    return KERNEL_BACKEND


class ShapeMismatchError(ValueError):
    """Operand dimensions do not line up."""


class NonComplexError(ValueError):
    """A pair of maps expected to compose to zero does not."""


def normalize_scalar(x):
    """Canonical exact scalar: ints stay ints, integral fractions collapse."""
    if isinstance(x, Fraction):
        return int(x) if x.denominator == 1 else x
    if isinstance(x, int):
        return x
    raise TypeError(f"exact scalar expected, got {type(x).__name__}")


def parse_rational(value) -> Fraction:
    """Read a rational from an int or a "p/q" / "p" string."""
    if isinstance(value, bool):
        raise ValueError("boolean is not a rational")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value)
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"malformed rational {value!r}") from exc
    raise ValueError(f"malformed rational {value!r}")


def format_rational(x) -> str:
    """Canonical string form: "p" when the denominator is 1, else "p/q"."""
    f = Fraction(x)
    return str(f.numerator) if f.denominator == 1 else f"{f.numerator}/{f.denominator}"


class Matrix:
    """A dense rows x cols matrix with exact rational entries (row-major)."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, rows: int, cols: int, entries):
        entries = [normalize_scalar(x) for x in entries]
        if len(entries) != rows * cols:
            raise ShapeMismatchError(
                f"{rows}x{cols} matrix needs {rows * cols} entries, got {len(entries)}"
            )
        self.rows = rows
        self.cols = cols
        self.entries = entries

    @classmethod
    def from_rows(cls, rows_data) -> "Matrix":
        rows_data = [list(r) for r in rows_data]
        nrows = len(rows_data)
        ncols = len(rows_data[0]) if rows_data else 0
        if any(len(r) != ncols for r in rows_data):
            raise ShapeMismatchError("ragged rows")
        return cls(nrows, ncols, [x for r in rows_data for x in r])

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        return cls(n, n, [1 if i == j else 0 for i in range(n) for j in range(n)])

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "Matrix":
        return cls(rows, cols, [0] * (rows * cols))

    def at(self, i: int, j: int):
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> list:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def to_rows(self) -> list[list]:
        return [self.row(i) for i in range(self.rows)]

    def transpose(self) -> "Matrix":
        return Matrix(
            self.cols,
            self.rows,
            [self.entries[i * self.cols + j] for j in range(self.cols) for i in range(self.rows)],
        )

    def matvec(self, v: list) -> list:
        if len(v) != self.cols:
            raise ShapeMismatchError(f"vector of length {self.cols} expected, got {len(v)}")
        out = []
        for i in range(self.rows):
            base = i * self.cols
            acc = 0
            for j in range(self.cols):
                x = v[j]
                if x:
                    acc += self.entries[base + j] * x
            out.append(normalize_scalar(acc))
        return out

    def mul(self, other: "Matrix") -> "Matrix":
        if self.cols != other.rows:
            raise ShapeMismatchError(f"cannot multiply {self.shape()} by {other.shape()}")
        out = [0] * (self.rows * other.cols)
        for i in range(self.rows):
            base = i * self.cols
            for k in range(self.cols):
                a = self.entries[base + k]
                if a:
                    obase = k * other.cols
                    rbase = i * other.cols
                    for j in range(other.cols):
                        b = other.entries[obase + j]
                        if b:
                            out[rbase + j] += a * b
        return Matrix(self.rows, other.cols, out)

    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def is_zero(self) -> bool:
        return all(x == 0 for x in self.entries)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Matrix)
            and self.shape() == other.shape()
            and all(Fraction(a) == Fraction(b) for a, b in zip(self.entries, other.entries))
        )

    def __hash__(self):
        return hash((self.rows, self.cols, tuple(map(Fraction, self.entries))))

    def __repr__(self) -> str:
        return f"Matrix({self.rows}x{self.cols})"


def _integer_rows(m: Matrix) -> list[list[int]]:
    """Copy of the matrix with each row scaled to integers (rank-preserving)."""
    out = []
    for i in range(m.rows):
        row = m.row(i)
        denom = 1
        for x in row:
            if isinstance(x, Fraction):
                denom = denom // gcd(denom, x.denominator) * x.denominator
        if denom == 1:
            out.append([int(x) for x in row])
        else:
            out.append([int(x * denom) for x in row])
    return out


def rank(m: Matrix) -> int:
    """Rank over the rationals."""
    if m.rows == 0 or m.cols == 0:
        return 0
    rows = _integer_rows(m)
    return len(_kernels.ff_row_echelon(rows, m.cols))


def rref(m: Matrix) -> tuple[list[int], list[list]]:
    """Reduced row echelon form over the rationals.

    Returns (pivot columns, nonzero rows).  The forward pass is the
    fraction-free integer kernel; only the surviving pivot rows are
    back-substituted with exact fractions.
    """
    if m.rows == 0 or m.cols == 0:
        return [], []
    rows = _integer_rows(m)
    pivots = _kernels.ff_row_echelon(rows, m.cols)
    reduced = []
    for r, pc in enumerate(pivots):
        piv = Fraction(rows[r][pc])
        reduced.append([Fraction(x) / piv for x in rows[r]])
    for r in range(len(pivots) - 1, -1, -1):
        row = reduced[r]
        for above in range(r):
            c = reduced[above][pivots[r]]
            if c:
                reduced[above] = [x - c * y for x, y in zip(reduced[above], row)]
    return pivots, [[normalize_scalar(x) for x in row] for row in reduced]


def nullspace(m: Matrix) -> list[list]:
    """Canonical basis of the kernel of m.

    One basis vector per free column f, with entry 1 at f, the negated
    reduced-echelon column above the pivots, and 0 at the other free
    columns.  Size is always cols - rank.
    """
    if m.cols == 0:
        return []
    pivots, reduced = rref(m)
    pivot_set = set(pivots)
    basis = []
    for f in range(m.cols):
        if f in pivot_set:
            continue
        v = [0] * m.cols
        v[f] = 1
        for r, pc in enumerate(pivots):
            v[pc] = normalize_scalar(-Fraction(reduced[r][f]))
        basis.append(v)
    return basis


def in_image(m: Matrix, v: list):
    """A preimage u with m*u = v, or None when v is not in the column space."""
    if len(v) != m.rows:
        raise ShapeMismatchError(f"vector of length {m.rows} expected, got {len(v)}")
    aug = Matrix.from_rows([m.row(i) + [v[i]] for i in range(m.rows)])
    pivots, reduced = rref(aug)
    if m.cols in pivots:
        return None
    u = [0] * m.cols
    for r, pc in enumerate(pivots):
        u[pc] = reduced[r][m.cols]
    return u


def column_space_complement(image: Matrix, candidates: list[list]) -> list[int]:
    """Indices of candidate vectors that extend the column space of ``image``.

    Candidates are scanned in order; one index is kept for each new pivot
    it contributes beyond the columns of ``image``.  Deterministic, used to
    pick cohomology representatives.
    """
    n = image.rows
    data = [[image.at(i, j) for j in range(image.cols)] + [c[i] for c in candidates]
            for i in range(n)]
    m = Matrix.from_rows(data) if n else Matrix.zeros(0, image.cols + len(candidates))
    pivots, _ = rref(m)
    return [p - image.cols for p in pivots if p >= image.cols]


def cohomology_dim(d_out: Matrix, d_in: Matrix) -> int:
    """dim ker(d_out) - rank(d_in) for a composable pair with d_out∘d_in = 0."""
    if d_out.cols != d_in.rows:
        raise ShapeMismatchError(
            f"middle space mismatch: d_out has {d_out.cols} columns, d_in has {d_in.rows} rows"
        )
    if not d_out.mul(d_in).is_zero():
        raise NonComplexError("d_out . d_in is not zero; the pair is not a complex")
    return (d_out.cols - rank(d_out)) - rank(d_in)
