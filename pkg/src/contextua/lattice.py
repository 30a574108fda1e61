"""The orthomodular lattice of subspaces of an n-dimensional space.

A :class:`Subspace` is stored by the reduced row echelon form of its basis
vectors laid out as rows. Read column-wise this is the reduced column
echelon form, so two subspaces are equal exactly when their stored tuples
are equal, and every lattice law can be checked with ``==``.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Iterable, Sequence

from contextua.errors import DimensionError, DomainError
from contextua.exactlin import (
    ONE,
    ZERO,
    Mat,
    Scalar,
    Vect,
    _kernel_rows,
    check_dim,
    projector_onto,
    rref,
    scalar,
)

Row = tuple[Scalar, ...]


class Subspace:
    """Closed subspace of the ambient space, in canonical form.

    Build one from any spanning list of vectors; the basis is reduced on
    construction. Operators mirror the lattice: ``P <= Q`` (order),
    ``P & Q`` (meet), ``P | Q`` (join) and ``~P`` (orthocomplement).
    """

    __slots__ = ("dim_ambient", "_rows", "_pivots", "_hash", "_projector")

    def __init__(self, dim: int, vectors: Iterable[Vect | Sequence] = ()) -> None:
        check_dim(dim)
        rows = []
        for v in vectors:
            entries = v.entries if isinstance(v, Vect) else tuple(scalar(x) for x in v)
            if len(entries) != dim:
                raise DimensionError(f"vector of length {len(entries)} in ambient dimension {dim}")
            rows.append(entries)
        reduced, pivots = rref(rows, dim) if rows else ([], [])
        self._init(dim, tuple(tuple(r) for r in reduced), tuple(pivots))

    def _init(self, dim: int, rows: tuple[Row, ...], pivots: tuple[int, ...]) -> None:
        self.dim_ambient = dim
        self._rows = rows
        self._pivots = pivots
        self._hash = hash((dim, rows))
        self._projector = None

    @classmethod
    def _canonical(cls, dim: int, rows: Sequence[Sequence[Scalar]]) -> "Subspace":
        reduced, pivots = rref(rows, dim) if rows else ([], [])
        obj = object.__new__(cls)
        obj._init(dim, tuple(tuple(r) for r in reduced), tuple(pivots))
        return obj

    @classmethod
    def zero(cls, dim: int) -> "Subspace":
        return cls(dim)

    @classmethod
    def full(cls, dim: int) -> "Subspace":
        check_dim(dim)
        return cls._canonical(dim, [[ONE if i == j else ZERO for j in range(dim)] for i in range(dim)])

    @classmethod
    def span(cls, vectors: Sequence[Vect | Sequence]) -> "Subspace":
        if not vectors:
            raise DimensionError("span of no vectors needs an explicit dimension; use Subspace.zero")
        return cls(len(vectors[0]), vectors)

    @property
    def rank(self) -> int:
        return len(self._rows)

    @property
    def basis(self) -> list[Vect]:
        """Canonical basis vectors (the columns of the reduced column echelon form)."""
        return [Vect(r) for r in self._rows]

    @property
    def rows(self) -> tuple[Row, ...]:
        return self._rows

    @property
    def pivots(self) -> tuple[int, ...]:
        return self._pivots

    def basis_matrix(self) -> Mat:
        if not self._rows:
            raise DomainError("the zero subspace has no basis matrix")
        return Mat.from_columns(self._rows)

    def is_zero(self) -> bool:
        return not self._rows

    def is_full(self) -> bool:
        return len(self._rows) == self.dim_ambient

    def is_ray(self) -> bool:
        return len(self._rows) == 1

    def residual(self, v: Sequence[Scalar]) -> list[Scalar]:
        """``v`` minus its reduction against the canonical basis; zero iff ``v`` lies in the span."""
        w = list(v)
        for row, p in zip(self._rows, self._pivots):
            f = w[p]
            if f.is_zero():
                continue
            w = [x - f * y if not y.is_zero() else x for x, y in zip(w, row)]
        return w

    def contains(self, v: Vect | Sequence[Scalar]) -> bool:
        entries = v.entries if isinstance(v, Vect) else v
        if len(entries) != self.dim_ambient:
            raise DimensionError(f"vector of length {len(entries)} in ambient dimension {self.dim_ambient}")
        return all(x.is_zero() for x in self.residual(entries))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Subspace):
            return NotImplemented
        return self.dim_ambient == other.dim_ambient and self._rows == other._rows

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        if not self._rows:
            return f"Subspace(dim={self.dim_ambient}, zero)"
        cols = ", ".join("(" + ",".join(str(x) for x in r) + ")" for r in self._rows)
        return f"Subspace(dim={self.dim_ambient}, span[{cols}])"

    def __le__(self, other: "Subspace") -> bool:
        return leq(self, other)

    def __ge__(self, other: "Subspace") -> bool:
        return leq(other, self)

    def __and__(self, other: "Subspace") -> "Subspace":
        return meet(self, other)

    def __or__(self, other: "Subspace") -> "Subspace":
        return join(self, other)

    def __invert__(self) -> "Subspace":
        return ortho(self)

    def projector(self) -> Mat:
        if self._projector is None:
            self._projector = projector_onto(self.basis, self.dim_ambient)
        return self._projector


def ray(v: Vect | Sequence) -> Subspace:
    """The one-dimensional subspace spanned by a nonzero vector."""
    entries = v.entries if isinstance(v, Vect) else tuple(scalar(x) for x in v)
    if all(x.is_zero() for x in entries):
        raise DomainError("a ray needs a nonzero vector")
    return Subspace(len(entries), [entries])


def _check_same(P: Subspace, Q: Subspace) -> None:
    if P.dim_ambient != Q.dim_ambient:
        raise DimensionError(f"ambient dimension mismatch: {P.dim_ambient} vs {Q.dim_ambient}")


def leq(P: Subspace, Q: Subspace) -> bool:
    """True iff every basis vector of ``P`` lies in ``Q``."""
    _check_same(P, Q)
    if P.rank > Q.rank:
        return False
    if Q.is_full() or P.is_zero():
        return True
    return all(Q.contains(r) for r in P.rows)


def meet(P: Subspace, Q: Subspace) -> Subspace:
    """Intersection of two subspaces (greatest lower bound)."""
    _check_same(P, Q)
    return _meet(P, Q)


@lru_cache(maxsize=1 << 16)
def _meet(P: Subspace, Q: Subspace) -> Subspace:
    n = P.dim_ambient
    if P.is_zero() or Q.is_full():
        return P
    if Q.is_zero() or P.is_full():
        return Q
    # v = sum x_j p_j lies in Q iff sum x_j residual_Q(p_j) = 0: solve for x
    residuals = [Q.residual(r) for r in P.rows]
    system = [[residuals[j][i] for j in range(P.rank)] for i in range(n)]
    coeffs = _kernel_rows(system, P.rank)
    if not coeffs:
        return Subspace.zero(n)
    vectors = []
    for x in coeffs:
        v = [ZERO] * n
        for xj, row in zip(x, P.rows):
            if xj.is_zero():
                continue
            v = [a + xj * b for a, b in zip(v, row)]
        vectors.append(v)
    return Subspace._canonical(n, vectors)


def join(P: Subspace, Q: Subspace) -> Subspace:
    """Span of the union (least upper bound)."""
    _check_same(P, Q)
    return _join(P, Q)


@lru_cache(maxsize=1 << 16)
def _join(P: Subspace, Q: Subspace) -> Subspace:
    if P.is_zero() or Q.is_full():
        return Q
    if Q.is_zero() or P.is_full():
        return P
    return Subspace._canonical(P.dim_ambient, list(P.rows) + list(Q.rows))


@lru_cache(maxsize=1 << 16)
def ortho(P: Subspace) -> Subspace:
    """Orthocomplement: the kernel of the conjugate transpose of the basis."""
    n = P.dim_ambient
    if P.is_zero():
        return Subspace.full(n)
    if P.is_full():
        return Subspace.zero(n)
    conj_rows = [[x.conj() for x in r] for r in P.rows]
    return Subspace._canonical(n, _kernel_rows(conj_rows, n))


def meet_all(items: Iterable[Subspace], dim: int) -> Subspace:
    acc = Subspace.full(dim)
    for P in items:
        acc = meet(acc, P)
    return acc


def join_all(items: Iterable[Subspace], dim: int) -> Subspace:
    acc = Subspace.zero(dim)
    for P in items:
        acc = join(acc, P)
    return acc


def orthogonal(P: Subspace, Q: Subspace) -> bool:
    """True iff ``P`` lies in the orthocomplement of ``Q``."""
    return leq(P, ortho(Q))


def to_projector(P: Subspace) -> Mat:
    return P.projector()


def from_projector(M: Mat) -> Subspace:
    """Subspace onto which a Hermitian idempotent matrix projects (its column space)."""
    if not M.is_square():
        raise DomainError("projector must be square")
    if not M.is_hermitian():
        raise DomainError("projector must be Hermitian")
    if not M.is_idempotent():
        raise DomainError("projector must be idempotent")
    n = M.rows
    return Subspace._canonical(n, [M.col(j) for j in range(n)])
