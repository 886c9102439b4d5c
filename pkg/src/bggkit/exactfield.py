"""Exact linear algebra over the rationals.

Every linear map in the package is a :class:`Matrix` of :class:`fractions.Fraction`
entries.  Matrices are immutable; all routines here are pure functions.

Pivoting is leftmost column / topmost row with no magnitude heuristics, so
every basis returned is a deterministic function of the input.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from typing import Iterable, NamedTuple, Optional, Sequence

import numpy as np

from . import _modp

PRIME = 1000003

_RATIONAL_RE = re.compile(r"^-?\d+(/\d+)?$")


def parse_rational(text: str) -> Fraction:
    """Parse ``"p"`` or ``"p/q"`` with ``q > 0``."""
    if isinstance(text, int) and not isinstance(text, bool):
        return Fraction(text)
    if not isinstance(text, str) or not _RATIONAL_RE.match(text.strip()):
        raise ValueError(f"malformed rational {text!r}")
    value = text.strip()
    if "/" in value and int(value.split("/")[1]) == 0:
        raise ValueError(f"zero denominator in {text!r}")
    return Fraction(value)


def format_rational(x: Fraction) -> str:
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def _frac_array(rows: int, cols: int, fill=None) -> np.ndarray:
    a = np.empty((rows, cols), dtype=object)
    a.fill(Fraction(0) if fill is None else fill)
    return a


def _integer_form(a: np.ndarray) -> tuple[np.ndarray, int]:
    """Integer object array ``n`` and ``den > 0`` with ``a == n / den``."""
    den = math.lcm(*(x.denominator for x in a.flat))
    if den == 1:
        return np.frompyfunc(lambda x: x.numerator, 1, 1)(a), 1
    return np.frompyfunc(lambda x: x.numerator * (den // x.denominator), 1, 1)(a), den


class Matrix:
    """Dense immutable rational matrix.

    0-row and 0-column matrices are ordinary values; they represent maps to and
    from the zero space.
    """

    __slots__ = ("_a",)

    def __init__(self, data, shape: Optional[tuple[int, int]] = None):
        if isinstance(data, Matrix):
            a = data._a
        elif isinstance(data, np.ndarray) and data.dtype == object and data.ndim == 2:
            a = data.copy()
        else:
            rows = [list(r) for r in data]
            if shape is None:
                ncols = len(rows[0]) if rows else 0
                shape = (len(rows), ncols)
            if len(rows) != shape[0] or any(len(r) != shape[1] for r in rows):
                raise ValueError(f"ragged or mis-shaped rows for shape {shape}")
            a = _frac_array(*shape)
            for i, r in enumerate(rows):
                for j, x in enumerate(r):
                    a[i, j] = x if isinstance(x, Fraction) else Fraction(x)
        if shape is not None and a.shape != tuple(shape):
            raise ValueError(f"shape mismatch {a.shape} != {shape}")
        a.flags.writeable = False
        self._a = a

    # construction ---------------------------------------------------------

    @classmethod
    def _wrap(cls, a: np.ndarray) -> "Matrix":
        m = cls.__new__(cls)
        a.flags.writeable = False
        m._a = a
        return m

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "Matrix":
        return cls._wrap(_frac_array(rows, cols))

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        a = _frac_array(n, n)
        for i in range(n):
            a[i, i] = Fraction(1)
        return cls._wrap(a)

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence], nrows: int) -> "Matrix":
        a = _frac_array(nrows, len(columns))
        for j, col in enumerate(columns):
            if len(col) != nrows:
                raise ValueError("column length mismatch")
            for i, x in enumerate(col):
                a[i, j] = Fraction(x)
        return cls._wrap(a)

    @classmethod
    def unit_columns(cls, indices: Sequence[int], n: int) -> "Matrix":
        """Columns e_k for k in ``indices`` inside an n-dimensional space."""
        a = _frac_array(n, len(indices))
        for j, k in enumerate(indices):
            a[k, j] = Fraction(1)
        return cls._wrap(a)

    @classmethod
    def hstack(cls, mats: Sequence["Matrix"], rows: Optional[int] = None) -> "Matrix":
        if not mats:
            return cls.zeros(rows or 0, 0)
        return cls._wrap(np.concatenate([m._a for m in mats], axis=1))

    @classmethod
    def vstack(cls, mats: Sequence["Matrix"], cols: Optional[int] = None) -> "Matrix":
        if not mats:
            return cls.zeros(0, cols or 0)
        return cls._wrap(np.concatenate([m._a for m in mats], axis=0))

    @classmethod
    def block(cls, blocks: Sequence[Sequence["Matrix"]]) -> "Matrix":
        return cls.vstack([cls.hstack(list(row)) for row in blocks])

    @classmethod
    def block_diag(cls, *mats: "Matrix") -> "Matrix":
        r = sum(m.rows for m in mats)
        c = sum(m.cols for m in mats)
        a = _frac_array(r, c)
        i = j = 0
        for m in mats:
            a[i:i + m.rows, j:j + m.cols] = m._a
            i += m.rows
            j += m.cols
        return cls._wrap(a)

    # access ---------------------------------------------------------------

    @property
    def shape(self) -> tuple[int, int]:
        return self._a.shape

    @property
    def rows(self) -> int:
        return self._a.shape[0]

    @property
    def cols(self) -> int:
        return self._a.shape[1]

    @property
    def T(self) -> "Matrix":
        return Matrix._wrap(self._a.T.copy())

    def array(self) -> np.ndarray:
        """Writable copy of the underlying object array."""
        return self._a.copy()

    def tolist(self) -> list[list[Fraction]]:
        return [list(r) for r in self._a]

    def column(self, j: int) -> list[Fraction]:
        return list(self._a[:, j])

    def columns(self) -> list[list[Fraction]]:
        return [self.column(j) for j in range(self.cols)]

    def __getitem__(self, key):
        out = self._a[key]
        if isinstance(out, np.ndarray):
            if out.ndim == 1:
                return list(out)
            return Matrix._wrap(out.copy())
        return out

    def select_columns(self, idx: Sequence[int]) -> "Matrix":
        return Matrix._wrap(self._a[:, list(idx)].copy())

    def select_rows(self, idx: Sequence[int]) -> "Matrix":
        return Matrix._wrap(self._a[list(idx), :].copy())

    # arithmetic -----------------------------------------------------------

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.cols != other.rows:
            raise ValueError(f"cannot multiply {self.shape} by {other.shape}")
        if self.cols == 0 or self.rows == 0 or other.cols == 0:
            return Matrix.zeros(self.rows, other.cols)
        # clear denominators so the inner products run on Python ints
        a, da = _integer_form(self._a)
        b, db = _integer_form(other._a)
        num = a.dot(b)
        den = da * db
        out = _frac_array(self.rows, other.cols)
        for idx, x in np.ndenumerate(num):
            if x:
                out[idx] = Fraction(x, den)
        return Matrix._wrap(out)

    def apply(self, v: Sequence) -> list[Fraction]:
        if len(v) != self.cols:
            raise ValueError("vector length mismatch")
        if self.cols == 0:
            return [Fraction(0)] * self.rows
        return list(self._a.dot(np.array(list(v), dtype=object)))

    def __add__(self, other: "Matrix") -> "Matrix":
        if self.shape != other.shape:
            raise ValueError(f"cannot add {self.shape} and {other.shape}")
        return Matrix._wrap(self._a + other._a)

    def __sub__(self, other: "Matrix") -> "Matrix":
        if self.shape != other.shape:
            raise ValueError(f"cannot subtract {self.shape} and {other.shape}")
        return Matrix._wrap(self._a - other._a)

    def __neg__(self) -> "Matrix":
        return Matrix._wrap(-self._a)

    def scale(self, c) -> "Matrix":
        c = Fraction(c)
        if self._a.size == 0:
            return Matrix.zeros(*self.shape)
        return Matrix._wrap(self._a * c)

    def kron_identity(self, m: int) -> "Matrix":
        """``self ⊗ I_m`` with the identity factor varying fastest."""
        a = _frac_array(self.rows * m, self.cols * m)
        for i in range(self.rows):
            for j in range(self.cols):
                x = self._a[i, j]
                if x:
                    for k in range(m):
                        a[i * m + k, j * m + k] = x
        return Matrix._wrap(a)

    def is_zero(self) -> bool:
        return not any(x != 0 for x in self._a.flat)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Matrix):
            return NotImplemented
        if self.shape != other.shape:
            return False
        return self._a.size == 0 or bool(np.all(self._a == other._a))

    def __hash__(self):
        return hash((self.shape, tuple(self._a.flat)))

    def __repr__(self) -> str:
        body = "; ".join(" ".join(format_rational(x) for x in r) for r in self._a)
        return f"Matrix{self.shape}[{body}]"

    # serialization --------------------------------------------------------

    def to_strings(self) -> list[list[str]]:
        return [[format_rational(x) for x in r] for r in self._a]

    @classmethod
    def from_strings(cls, rows: Sequence[Sequence[str]], shape: tuple[int, int]) -> "Matrix":
        return cls([[parse_rational(x) for x in r] for r in rows], shape=shape)


class RREF(NamedTuple):
    reduced: Matrix
    pivot_cols: tuple[int, ...]
    rank: int


def _rref_lists(a: list[list[Fraction]], ncols: int) -> tuple[list[list[Fraction]], list[int]]:
    rows = len(a)
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r == rows:
            break
        piv = next((i for i in range(r, rows) if a[i][c] != 0), None)
        if piv is None:
            continue
        if piv != r:
            a[r], a[piv] = a[piv], a[r]
        row = a[r]
        inv = 1 / row[c]
        if inv != 1:
            row = [x * inv if x else x for x in row]
            a[r] = row
        nz = [k for k in range(c, ncols) if row[k] != 0]
        for i in range(rows):
            if i == r:
                continue
            f = a[i][c]
            if f:
                other = a[i]
                for k in nz:
                    other[k] -= f * row[k]
        pivots.append(c)
        r += 1
    return a, pivots


def rref(m: Matrix) -> RREF:
    """Reduced row echelon form, pivot columns and rank."""
    a, pivots = _rref_lists(m.tolist(), m.cols)
    return RREF(Matrix(a, shape=m.shape), tuple(pivots), len(pivots))


def rank(m: Matrix) -> int:
    if m.rows == 0 or m.cols == 0:
        return 0
    return rref(m).rank


def kernel_basis(m: Matrix) -> Matrix:
    """Kernel basis from free variables, each column scaled to lead with 1."""
    red, pivots, r = rref(m)
    n = m.cols
    pivset = set(pivots)
    free = [c for c in range(n) if c not in pivset]
    red_rows = red.tolist()
    cols = []
    for f in free:
        v = [Fraction(0)] * n
        v[f] = Fraction(1)
        for k, p in enumerate(pivots):
            v[p] = -red_rows[k][f]
        lead = next(x for x in v if x != 0)
        if lead != 1:
            v = [x / lead for x in v]
        cols.append(v)
    return Matrix.from_columns(cols, n)


def image_basis(m: Matrix) -> Matrix:
    """The pivot columns of ``m`` itself."""
    return m.select_columns(rref(m).pivot_cols)


def solve_matrix(m: Matrix, rhs: Matrix) -> Optional[Matrix]:
    """Solve ``m X = rhs`` column by column, free variables set to zero.

    Returns ``None`` if any column is inconsistent.
    """
    if rhs.rows != m.rows:
        raise ValueError(f"right-hand side has {rhs.rows} rows, matrix has {m.rows}")
    n = m.cols
    aug = [list(r) + list(b) for r, b in zip(m.tolist(), rhs.tolist())]
    red, pivots = _rref_lists(aug, n + rhs.cols)
    core = [p for p in pivots if p < n]
    if len(core) != len(pivots):
        return None
    out = _frac_array(n, rhs.cols)
    for k, p in enumerate(core):
        out[p, :] = red[k][n:]
    return Matrix._wrap(out)


def solve(m: Matrix, b: Sequence) -> Optional[list[Fraction]]:
    """Particular solution of ``m x = b`` with free variables zero, or ``None``."""
    if len(b) != m.rows:
        raise ValueError(f"vector has {len(b)} entries, matrix has {m.rows} rows")
    x = solve_matrix(m, Matrix.from_columns([list(b)], m.rows))
    return None if x is None else x.column(0)


def inverse(m: Matrix) -> Matrix:
    if m.rows != m.cols:
        raise ValueError("inverse of a non-square matrix")
    x = solve_matrix(m, Matrix.identity(m.rows))
    if x is None or rank(m) != m.rows:
        raise ValueError("matrix is singular")
    return x


def complement_basis(sub: Matrix, ambient_dim: int, policy: str = "first") -> Matrix:
    """Standard basis vectors completing the columns of ``sub`` to a basis.

    ``policy="first"`` takes the non-pivot coordinates of ``rref(sub.T)`` in
    increasing order.  ``policy="last"`` runs the same rule on the reversed
    coordinate order, giving a second valid choice.
    """
    if sub.rows != ambient_dim:
        raise ValueError(f"subspace vectors have length {sub.rows}, ambient is {ambient_dim}")
    if policy not in ("first", "last"):
        raise ValueError(f"unknown complement policy {policy!r}")
    order = list(range(ambient_dim))
    if policy == "last":
        order.reverse()
    red = rref(sub.T.select_columns(order)) if sub.cols else RREF(Matrix.zeros(0, ambient_dim), (), 0)
    if red.rank != sub.cols:
        raise ValueError("subspace columns are linearly dependent")
    pivset = set(red.pivot_cols)
    picked = sorted(order[k] for k in range(ambient_dim) if k not in pivset)
    return Matrix.unit_columns(picked, ambient_dim)


class Pseudoinverse(NamedTuple):
    T: Matrix
    P_C: Matrix
    P_K: Matrix


def pseudoinverse(S: Matrix, policy: str = "first") -> Pseudoinverse:
    """Pseudoinverse of ``S`` built from complements of ``img S`` and ``ker S``.

    ``T`` inverts ``S`` from the chosen complement of ``ker S`` onto ``img S``
    and vanishes on the chosen complement of ``img S``.
    """
    b, a = S.shape
    img = image_basis(S)
    cimg = complement_basis(img, b, policy)
    ker = kernel_basis(S)
    cker = complement_basis(ker, a, policy)
    r = img.cols
    coords = inverse(Matrix.hstack([S @ cker, cimg], rows=b))
    T = cker @ coords.select_rows(range(r))
    P_C = Matrix.identity(b) - S @ T
    P_K = Matrix.identity(a) - T @ S
    return Pseudoinverse(T, P_C, P_K)


def in_span(basis: Matrix, vectors: Matrix) -> bool:
    return solve_matrix(basis, vectors) is not None


# prime-field shadow ---------------------------------------------------------

def to_mod_p(m: Matrix, p: int = PRIME) -> np.ndarray:
    out = np.zeros(m.shape, dtype=np.int64)
    for (i, j), x in np.ndenumerate(m._a):
        if x:
            den = x.denominator % p
            if den == 0:
                raise ZeroDivisionError(f"denominator of {x} vanishes mod {p}")
            out[i, j] = (x.numerator % p) * pow(den, p - 2, p) % p
    return out


def rank_mod_p(m: Matrix, p: int = PRIME) -> int:
    """Rank of the reduction of ``m`` modulo ``p`` (independent cross-check)."""
    if m.rows == 0 or m.cols == 0:
        return 0
    return _modp.rank_mod_p(to_mod_p(m, p), p)


def as_matrix(rows: Iterable[Iterable]) -> Matrix:
    return Matrix([list(r) for r in rows])
