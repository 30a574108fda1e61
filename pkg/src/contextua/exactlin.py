"""Exact linear algebra over the field Q(sqrt2, i).

Every scalar is ``a + b*r2 + c*i + d*i*r2`` with rational ``a, b, c, d``.
Internally the four numerators share one positive denominator, which keeps
arithmetic on plain Python ints (arbitrary precision) and makes the canonical
form a simple gcd reduction.

Vectors and matrices are thin immutable wrappers around tuples of
:class:`Scalar`; the elimination routines work on lists of rows.
"""

from __future__ import annotations

import math
import os
import re
from fractions import Fraction
from typing import Iterable, Sequence, Union

from contextua.errors import (
    DimensionError,
    DomainError,
    ParseError,
    ScalarZeroDivisionError,
)

Number = Union[int, Fraction, "Scalar"]

_DEFAULT_MAX_DIM = 8
_max_dim: int | None = None


def max_dim() -> int:
    """Current ambient-dimension soft cap (``CONTEXTUA_MAX_DIM`` overrides the default 8)."""
    if _max_dim is not None:
        return _max_dim
    raw = os.environ.get("CONTEXTUA_MAX_DIM")
    if raw is None:
        return _DEFAULT_MAX_DIM
    try:
        value = int(raw)
    except ValueError:
        raise DomainError(f"CONTEXTUA_MAX_DIM must be a positive integer, got {raw!r}")
    if value < 1:
        raise DomainError(f"CONTEXTUA_MAX_DIM must be a positive integer, got {raw!r}")
    return value


def set_max_dim(value: int | None) -> None:
    """Override the soft cap for this process; ``None`` restores env/default lookup."""
    global _max_dim
    if value is not None and value < 1:
        raise DomainError("dimension cap must be positive")
    _max_dim = value


def check_dim(n: int) -> None:
    if n < 1:
        raise DimensionError(f"dimension must be positive, got {n}")
    cap = max_dim()
    if n > cap:
        raise DimensionError(f"dimension {n} exceeds soft cap {cap} (set CONTEXTUA_MAX_DIM)")


# ---------------------------------------------------------------------------
# Scalars


_TERM_RE = re.compile(r"([+-]?)(?:(\d+)(?:/(\d+))?)?(i\*r2|r2|i)?")
_UNITS = ("", "r2", "i", "i*r2")


class Scalar:
    """Immutable element of Q(sqrt2, i) in canonical form.

    >>> Scalar.parse("r2") * Scalar.parse("r2")
    Scalar('2')
    >>> Scalar(1) / Scalar.parse("1+r2")
    Scalar('-1+r2')
    """

    __slots__ = ("_n", "_den", "_hash")

    def __init__(self, a: int | Fraction = 0, b: int | Fraction = 0,
                 c: int | Fraction = 0, d: int | Fraction = 0) -> None:
        parts = [Fraction(x) for x in (a, b, c, d)]
        den = 1
        for p in parts:
            den = den * p.denominator // math.gcd(den, p.denominator)
        nums = tuple(p.numerator * (den // p.denominator) for p in parts)
        self._set(nums[0], nums[1], nums[2], nums[3], den)

    def _set(self, a: int, b: int, c: int, d: int, den: int) -> None:
        if den < 0:
            a, b, c, d, den = -a, -b, -c, -d, -den
        g = math.gcd(a, b, c, d, den)
        if g != 1:
            a, b, c, d, den = a // g, b // g, c // g, d // g, den // g
        self._n = (a, b, c, d)
        self._den = den
        self._hash = None

    @classmethod
    def _raw(cls, a: int, b: int, c: int, d: int, den: int) -> "Scalar":
        obj = object.__new__(cls)
        obj._set(a, b, c, d, den)
        return obj

    @classmethod
    def coerce(cls, x: Number) -> "Scalar":
        if isinstance(x, Scalar):
            return x
        if isinstance(x, int):
            return cls._raw(x, 0, 0, 0, 1)
        if isinstance(x, Fraction):
            return cls._raw(x.numerator, 0, 0, 0, x.denominator)
        raise TypeError(f"cannot convert {type(x).__name__} to Scalar")

    # -- components ---------------------------------------------------------

    @property
    def a(self) -> Fraction:
        return Fraction(self._n[0], self._den)

    @property
    def b(self) -> Fraction:
        return Fraction(self._n[1], self._den)

    @property
    def c(self) -> Fraction:
        return Fraction(self._n[2], self._den)

    @property
    def d(self) -> Fraction:
        return Fraction(self._n[3], self._den)

    def components(self) -> tuple[Fraction, Fraction, Fraction, Fraction]:
        return (self.a, self.b, self.c, self.d)

    def is_zero(self) -> bool:
        return not any(self._n)

    def is_real(self) -> bool:
        return self._n[2] == 0 and self._n[3] == 0

    def is_rational(self) -> bool:
        n = self._n
        return n[1] == 0 and n[2] == 0 and n[3] == 0

    # -- arithmetic -----------------------------------------------------------

    def __add__(self, other: Number) -> "Scalar":
        if not isinstance(other, Scalar):
            try:
                other = Scalar.coerce(other)
            except TypeError:
                return NotImplemented
        (a1, b1, c1, d1), e1 = self._n, self._den
        (a2, b2, c2, d2), e2 = other._n, other._den
        if e1 == e2:
            return Scalar._raw(a1 + a2, b1 + b2, c1 + c2, d1 + d2, e1)
        return Scalar._raw(a1 * e2 + a2 * e1, b1 * e2 + b2 * e1,
                           c1 * e2 + c2 * e1, d1 * e2 + d2 * e1, e1 * e2)

    __radd__ = __add__

    def __neg__(self) -> "Scalar":
        a, b, c, d = self._n
        return Scalar._raw(-a, -b, -c, -d, self._den)

    def __sub__(self, other: Number) -> "Scalar":
        if not isinstance(other, Scalar):
            try:
                other = Scalar.coerce(other)
            except TypeError:
                return NotImplemented
        return self + (-other)

    def __rsub__(self, other: Number) -> "Scalar":
        return Scalar.coerce(other) - self

    def __mul__(self, other: Number) -> "Scalar":
        if not isinstance(other, Scalar):
            try:
                other = Scalar.coerce(other)
            except TypeError:
                return NotImplemented
        (a1, b1, c1, d1), e1 = self._n, self._den
        (a2, b2, c2, d2), e2 = other._n, other._den
        if not (b1 or c1 or d1 or b2 or c2 or d2):
            return Scalar._raw(a1 * a2, 0, 0, 0, e1 * e2)
        # (p1 + q1 i)(p2 + q2 i) with p, q in Q(sqrt2)
        ra = a1 * a2 + 2 * b1 * b2 - c1 * c2 - 2 * d1 * d2
        rb = a1 * b2 + b1 * a2 - c1 * d2 - d1 * c2
        rc = a1 * c2 + 2 * b1 * d2 + c1 * a2 + 2 * d1 * b2
        rd = a1 * d2 + b1 * c2 + c1 * b2 + d1 * a2
        return Scalar._raw(ra, rb, rc, rd, e1 * e2)

    __rmul__ = __mul__

    def inverse(self) -> "Scalar":
        (a, b, c, d), e = self._n, self._den
        if not (a or b or c or d):
            raise ScalarZeroDivisionError("division by zero scalar")
        if not (b or c or d):
            return Scalar._raw(e, 0, 0, 0, a)
        # |x|^2 * e^2 = n0 + n1*r2, then rationalize with (n0 - n1*r2)
        n0 = a * a + 2 * b * b + c * c + 2 * d * d
        n1 = 2 * (a * b + c * d)
        m = n0 * n0 - 2 * n1 * n1
        ra = (a * n0 - 2 * b * n1) * e
        rb = (b * n0 - a * n1) * e
        rc = (-c * n0 + 2 * d * n1) * e
        rd = (-d * n0 + c * n1) * e
        return Scalar._raw(ra, rb, rc, rd, m)

    def __truediv__(self, other: Number) -> "Scalar":
        if not isinstance(other, Scalar):
            try:
                other = Scalar.coerce(other)
            except TypeError:
                return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other: Number) -> "Scalar":
        return Scalar.coerce(other) * self.inverse()

    def __pow__(self, k: int) -> "Scalar":
        if not isinstance(k, int):
            return NotImplemented
        base = self if k >= 0 else self.inverse()
        result = ONE
        for _ in range(abs(k)):
            result = result * base
        return result

    def conj(self) -> "Scalar":
        """Complex conjugate (i -> -i)."""
        a, b, c, d = self._n
        return Scalar._raw(a, b, -c, -d, self._den)

    def sqrt2_conj(self) -> "Scalar":
        """Galois conjugate sending r2 -> -r2."""
        a, b, c, d = self._n
        return Scalar._raw(a, -b, c, -d, self._den)

    def abs2(self) -> "Scalar":
        """Squared modulus ``x * conj(x)``; always real."""
        return self * self.conj()

    # -- ordering (real scalars only) ----------------------------------------

    def sign(self) -> int:
        if not self.is_real():
            raise DomainError(f"sign of non-real scalar {self}")
        a, b = self._n[0], self._n[1]
        if b == 0:
            return (a > 0) - (a < 0)
        if a == 0:
            return (b > 0) - (b < 0)
        if (a > 0) == (b > 0):
            return 1 if a > 0 else -1
        # opposite signs: compare a^2 with 2 b^2
        diff = a * a - 2 * b * b
        return (1 if a > 0 else -1) * ((diff > 0) - (diff < 0))

    def __lt__(self, other: Number) -> bool:
        return (self - other).sign() < 0

    def __le__(self, other: Number) -> bool:
        return (self - other).sign() <= 0

    def __gt__(self, other: Number) -> bool:
        return (self - other).sign() > 0

    def __ge__(self, other: Number) -> bool:
        return (self - other).sign() >= 0

    def __float__(self) -> float:
        if not self.is_real():
            raise DomainError(f"float() of non-real scalar {self}")
        return float(self.a) + float(self.b) * math.sqrt(2)

    def __complex__(self) -> complex:
        r2 = math.sqrt(2)
        return complex(float(self.a) + float(self.b) * r2, float(self.c) + float(self.d) * r2)

    # -- identity ------------------------------------------------------------

    def __eq__(self, other: object) -> bool:
        if isinstance(other, Scalar):
            return self._n == other._n and self._den == other._den
        if isinstance(other, (int, Fraction)):
            return self == Scalar.coerce(other)
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            if self.is_rational():
                self._hash = hash(Fraction(self._n[0], self._den))
            else:
                self._hash = hash((self._n, self._den))
        return self._hash

    def __bool__(self) -> bool:
        return not self.is_zero()

    # -- text form -------------------------------------------------------------

    def __str__(self) -> str:
        terms = []
        for coef, unit in zip(self.components(), _UNITS):
            if coef == 0:
                continue
            if unit and coef == 1:
                text = unit
            elif unit and coef == -1:
                text = "-" + unit
            else:
                text = str(coef) + unit
            if terms and not text.startswith("-"):
                text = "+" + text
            terms.append(text)
        return "".join(terms) if terms else "0"

    def __repr__(self) -> str:
        return f"Scalar('{self}')"

    @classmethod
    def parse(cls, text: str) -> "Scalar":
        """Parse the canonical scalar grammar, e.g. ``"1/2+1/2i"`` or ``"3-2r2"``."""
        if not isinstance(text, str):
            raise ParseError(f"scalar must be a string, got {type(text).__name__}")
        if not text:
            raise ParseError("empty scalar")
        acc = [Fraction(0)] * 4
        pos = 0
        while pos < len(text):
            m = _TERM_RE.match(text, pos)
            sign, num, den, unit = m.groups()
            if num is None and unit is None:
                raise ParseError(f"bad scalar {text!r} at offset {pos}")
            if pos > 0 and not sign:
                raise ParseError(f"missing '+' or '-' in scalar {text!r} at offset {pos}")
            if den is not None and int(den) == 0:
                raise ParseError(f"zero denominator in scalar {text!r}")
            coef = Fraction(int(num), int(den) if den else 1) if num is not None else Fraction(1)
            if sign == "-":
                coef = -coef
            acc[_UNITS.index(unit or "")] += coef
            pos = m.end()
        return cls(*acc)


ZERO = Scalar._raw(0, 0, 0, 0, 1)
ONE = Scalar._raw(1, 0, 0, 0, 1)
I = Scalar._raw(0, 0, 1, 0, 1)
R2 = Scalar._raw(0, 1, 0, 0, 1)


def scalar(x: Number | str) -> Scalar:
    """Convenience coercion accepting ints, Fractions, Scalars and grammar strings."""
    if isinstance(x, str):
        return Scalar.parse(x)
    return Scalar.coerce(x)


def scalar_arith(x: Scalar, y: Scalar, op: str) -> Scalar:
    if op == "add":
        return x + y
    if op == "sub":
        return x - y
    if op == "mul":
        return x * y
    if op == "div":
        return x / y
    raise DomainError(f"unknown scalar operation {op!r}")


# ---------------------------------------------------------------------------
# Vectors and matrices


class Vect:
    """Column vector of scalars."""

    __slots__ = ("entries",)

    def __init__(self, entries: Iterable[Number | str]) -> None:
        self.entries = tuple(scalar(x) for x in entries)
        check_dim(len(self.entries))

    @property
    def dim(self) -> int:
        return len(self.entries)

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def __getitem__(self, i: int) -> Scalar:
        return self.entries[i]

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Vect) and self.entries == other.entries

    def __hash__(self) -> int:
        return hash(self.entries)

    def __repr__(self) -> str:
        return "Vect([" + ", ".join(f"'{x}'" for x in self.entries) + "])"

    def __add__(self, other: "Vect") -> "Vect":
        _same_dim(self.dim, other.dim)
        return Vect(x + y for x, y in zip(self.entries, other.entries))

    def __sub__(self, other: "Vect") -> "Vect":
        _same_dim(self.dim, other.dim)
        return Vect(x - y for x, y in zip(self.entries, other.entries))

    def scale(self, k: Number) -> "Vect":
        k = scalar(k)
        return Vect(k * x for x in self.entries)

    def conj(self) -> "Vect":
        return Vect(x.conj() for x in self.entries)

    def is_zero(self) -> bool:
        return all(x.is_zero() for x in self.entries)


def _same_dim(m: int, n: int) -> None:
    if m != n:
        raise DimensionError(f"dimension mismatch: {m} vs {n}")


def inner(u: Vect, v: Vect) -> Scalar:
    """Inner product, conjugate-linear in ``u`` and linear in ``v``."""
    _same_dim(u.dim, v.dim)
    return _dot_conj(u.entries, v.entries)


def _dot_conj(u: Sequence[Scalar], v: Sequence[Scalar]) -> Scalar:
    total = ZERO
    for x, y in zip(u, v):
        if x.is_zero() or y.is_zero():
            continue
        total = total + x.conj() * y
    return total


class Mat:
    """Dense row-major matrix of scalars."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, rows: int, cols: int, entries: Iterable[Number | str]) -> None:
        self.rows = rows
        self.cols = cols
        self.entries = tuple(scalar(x) for x in entries)
        if rows < 1 or cols < 1:
            raise DimensionError(f"matrix shape must be positive, got {rows}x{cols}")
        if len(self.entries) != rows * cols:
            raise DimensionError(f"{rows}x{cols} matrix needs {rows * cols} entries, got {len(self.entries)}")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[Number | str]]) -> "Mat":
        if not rows:
            raise DimensionError("matrix needs at least one row")
        ncols = len(rows[0])
        if any(len(r) != ncols for r in rows):
            raise DimensionError("ragged matrix rows")
        return cls(len(rows), ncols, [x for r in rows for x in r])

    @classmethod
    def from_columns(cls, cols: Sequence[Sequence[Number | str]]) -> "Mat":
        return cls.from_rows(cols).transpose()

    @classmethod
    def identity(cls, n: int) -> "Mat":
        return cls(n, n, [ONE if i == j else ZERO for i in range(n) for j in range(n)])

    @classmethod
    def zero(cls, rows: int, cols: int | None = None) -> "Mat":
        cols = rows if cols is None else cols
        return cls(rows, cols, [ZERO] * (rows * cols))

    @classmethod
    def diag(cls, values: Sequence[Number | str]) -> "Mat":
        n = len(values)
        vals = [scalar(v) for v in values]
        return cls(n, n, [vals[i] if i == j else ZERO for i in range(n) for j in range(n)])

    def __getitem__(self, ij: tuple[int, int]) -> Scalar:
        i, j = ij
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> tuple[Scalar, ...]:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def col(self, j: int) -> tuple[Scalar, ...]:
        return self.entries[j::self.cols]

    def to_rows(self) -> list[list[Scalar]]:
        return [list(self.row(i)) for i in range(self.rows)]

    def columns(self) -> list[Vect]:
        return [Vect(self.col(j)) for j in range(self.cols)]

    def __eq__(self, other: object) -> bool:
        return (isinstance(other, Mat) and self.rows == other.rows
                and self.cols == other.cols and self.entries == other.entries)

    def __hash__(self) -> int:
        return hash((self.rows, self.cols, self.entries))

    def __repr__(self) -> str:
        body = "; ".join(" ".join(str(x) for x in self.row(i)) for i in range(self.rows))
        return f"Mat[{body}]"

    def __add__(self, other: "Mat") -> "Mat":
        self._same_shape(other)
        return Mat(self.rows, self.cols, [x + y for x, y in zip(self.entries, other.entries)])

    def __sub__(self, other: "Mat") -> "Mat":
        self._same_shape(other)
        return Mat(self.rows, self.cols, [x - y for x, y in zip(self.entries, other.entries)])

    def _same_shape(self, other: "Mat") -> None:
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise DimensionError(f"shape mismatch: {self.rows}x{self.cols} vs {other.rows}x{other.cols}")

    def scale(self, k: Number) -> "Mat":
        k = scalar(k)
        return Mat(self.rows, self.cols, [k * x for x in self.entries])

    def __matmul__(self, other: "Mat | Vect"):
        if isinstance(other, Vect):
            _same_dim(self.cols, other.dim)
            return Vect(_dot(self.row(i), other.entries) for i in range(self.rows))
        if self.cols != other.rows:
            raise DimensionError(f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}")
        other_cols = [other.col(j) for j in range(other.cols)]
        out = []
        for i in range(self.rows):
            r = self.row(i)
            out.extend(_dot(r, c) for c in other_cols)
        return Mat(self.rows, other.cols, out)

    def transpose(self) -> "Mat":
        return Mat(self.cols, self.rows, [x for j in range(self.cols) for x in self.col(j)])

    def adjoint(self) -> "Mat":
        """Conjugate transpose."""
        return Mat(self.cols, self.rows, [x.conj() for j in range(self.cols) for x in self.col(j)])

    def trace(self) -> Scalar:
        if self.rows != self.cols:
            raise DimensionError("trace of non-square matrix")
        total = ZERO
        for i in range(self.rows):
            total = total + self[i, i]
        return total

    def is_square(self) -> bool:
        return self.rows == self.cols

    def is_hermitian(self) -> bool:
        return self.is_square() and self == self.adjoint()

    def is_idempotent(self) -> bool:
        return self.is_square() and self @ self == self

    def rank(self) -> int:
        return len(rref(self.to_rows(), self.cols)[1])

    def inverse(self) -> "Mat":
        if not self.is_square():
            raise DimensionError("inverse of non-square matrix")
        n = self.rows
        aug = [list(self.row(i)) + [ONE if i == j else ZERO for j in range(n)] for i in range(n)]
        reduced, pivots = rref(aug, n)
        if pivots != list(range(n)):
            raise DomainError("matrix is singular")
        return Mat(n, n, [x for r in reduced for x in r[n:]])


def _dot(u: Sequence[Scalar], v: Sequence[Scalar]) -> Scalar:
    total = ZERO
    for x, y in zip(u, v):
        if x.is_zero() or y.is_zero():
            continue
        total = total + x * y
    return total


# ---------------------------------------------------------------------------
# Elimination


def rref(rows: Sequence[Sequence[Scalar]], ncols: int | None = None) -> tuple[list[list[Scalar]], list[int]]:
    """Reduced row echelon form by exact Gauss-Jordan elimination.

    Only the first ``ncols`` columns are used for pivoting (the rest ride
    along, which is how augmented systems are solved). Zero rows are dropped
    from the returned matrix unless they carry augmented data.

    Returns the reduced rows and the list of pivot columns.
    """
    m = [list(r) for r in rows]
    if not m:
        return [], []
    width = len(m[0])
    ncols = width if ncols is None else ncols
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r == len(m):
            break
        p = next((i for i in range(r, len(m)) if not m[i][c].is_zero()), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        pivot_row = m[r]
        inv = pivot_row[c].inverse()
        if inv != ONE:
            pivot_row = [x * inv if not x.is_zero() else x for x in pivot_row]
            m[r] = pivot_row
        for i in range(len(m)):
            if i == r:
                continue
            f = m[i][c]
            if f.is_zero():
                continue
            row = m[i]
            m[i] = [x - f * y if not y.is_zero() else x for x, y in zip(row, pivot_row)]
        pivots.append(c)
        r += 1
    reduced = m[:r] + [row for row in m[r:] if any(not x.is_zero() for x in row)]
    return reduced, pivots


def kernel(M: Mat) -> list[Vect]:
    """Basis of the null space of ``M`` (one vector per free column)."""
    return [Vect(v) for v in _kernel_rows(M.to_rows(), M.cols)]


def _kernel_rows(rows: Sequence[Sequence[Scalar]], ncols: int) -> list[tuple[Scalar, ...]]:
    reduced, pivots = rref(rows, ncols) if rows else ([], [])
    pivot_set = set(pivots)
    basis = []
    for f in range(ncols):
        if f in pivot_set:
            continue
        v = [ZERO] * ncols
        v[f] = ONE
        for row, p in zip(reduced, pivots):
            v[p] = -row[f]
        basis.append(tuple(v))
    return basis


def projector_onto(basis: Sequence[Vect], dim: int | None = None) -> Mat:
    """Orthogonal projector ``B (B* B)^-1 B*`` onto the span of ``basis``.

    No vector is normalised, so the result stays inside the field even when
    norms like ``sqrt(3)`` would not. ``dim`` is required for an empty basis.
    """
    if not basis:
        if dim is None:
            raise DimensionError("projector onto empty basis needs an explicit dimension")
        return Mat.zero(dim)
    n = basis[0].dim
    if dim is not None:
        _same_dim(n, dim)
    for v in basis:
        _same_dim(n, v.dim)
    B = Mat.from_columns([v.entries for v in basis])
    gram = B.adjoint() @ B
    try:
        gram_inv = gram.inverse()
    except DomainError:
        raise DomainError("basis vectors are linearly dependent") from None
    return B @ gram_inv @ B.adjoint()
