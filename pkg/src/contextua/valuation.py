"""Three-valued truth of propositions in a pure state, and 2-valued homomorphism checks."""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass
from typing import Mapping, NamedTuple, Sequence

from contextua.errors import DimensionError, DomainError
from contextua.exactlin import Scalar, Vect
from contextua.lattice import Subspace, join, leq, meet, ortho, ray


class TruthValue(enum.Enum):
    TRUE = "true"
    FALSE = "false"
    INDETERMINATE = "indeterminate"


@dataclass(frozen=True)
class State:
    """A pure state, represented by the ray it spans."""

    ray: Subspace

    def __post_init__(self) -> None:
        if not self.ray.is_ray():
            raise DomainError(f"a state must be a ray, got rank {self.ray.rank}")

    @classmethod
    def from_vector(cls, v: Vect | Sequence) -> "State":
        return cls(ray(v))

    @property
    def dim(self) -> int:
        return self.ray.dim_ambient


def _check_dims(s: State, P: Subspace) -> None:
    if s.dim != P.dim_ambient:
        raise DimensionError(f"state in dimension {s.dim}, proposition in dimension {P.dim_ambient}")


def classify(s: State, P: Subspace) -> TruthValue:
    """True if the state lies in ``P``, false if it lies in ``P``'s orthocomplement, else indeterminate."""
    _check_dims(s, P)
    if leq(s.ray, P):
        return TruthValue.TRUE
    if leq(s.ray, ortho(P)):
        return TruthValue.FALSE
    return TruthValue.INDETERMINATE


def born_probability(s: State, P: Subspace) -> Scalar:
    """``trace(D P)`` for the state projector ``D``; exact and real."""
    _check_dims(s, P)
    return (s.ray.projector() @ P.projector()).trace()


class Violation(NamedTuple):
    rule: str
    operands: tuple[Subspace, ...]
    result: Subspace
    expected: int
    actual: int


class HomomorphismChecker:
    """Precomputed closure relations of a finite family of subspaces.

    Building the table costs one meet, join and orthocomplement per pair;
    afterwards each assignment is checked with index lookups only, which is
    what makes exhaustive assignment searches over a fixed family cheap.

    ``unit`` is the element forced to 1 (the full space by default). Passing
    a smaller unit treats the family as an algebra relative to that top.
    """

    def __init__(self, family: Sequence[Subspace], unit: Subspace | None = None) -> None:
        members = list(dict.fromkeys(family))
        if not members:
            raise DomainError("empty family")
        n = members[0].dim_ambient
        for P in members:
            if P.dim_ambient != n:
                raise DimensionError("family mixes ambient dimensions")
        self.family = members
        self.index = {P: i for i, P in enumerate(members)}
        self.dim = n
        unit = Subspace.full(n) if unit is None else unit
        self.unit = self.index.get(unit)
        self.zero = self.index.get(Subspace.zero(n))
        self.ortho_pairs: list[tuple[int, int]] = []
        self.meets: list[tuple[int, int, int]] = []
        self.joins: list[tuple[int, int, int]] = []
        for i, P in enumerate(members):
            j = self.index.get(ortho(P))
            if j is not None:
                self.ortho_pairs.append((i, j))
        for i, j in itertools.combinations(range(len(members)), 2):
            P, Q = members[i], members[j]
            m = self.index.get(meet(P, Q))
            if m is not None:
                self.meets.append((i, j, m))
            k = self.index.get(join(P, Q))
            if k is not None:
                self.joins.append((i, j, k))

    def values(self, h: Mapping[Subspace, int]) -> list[int]:
        out = []
        for P in self.family:
            if P not in h:
                raise DomainError(f"assignment is not total: missing {P!r}")
            v = h[P]
            if v not in (0, 1):
                raise DomainError(f"assignment values must be 0 or 1, got {v!r}")
            out.append(int(v))
        return out

    def check_values(self, vals: Sequence[int]) -> list[Violation]:
        F = self.family
        bad = []
        if self.unit is not None and vals[self.unit] != 1:
            bad.append(Violation("unit", (), F[self.unit], 1, vals[self.unit]))
        if self.zero is not None and vals[self.zero] != 0:
            bad.append(Violation("zero", (), F[self.zero], 0, vals[self.zero]))
        for i, j in self.ortho_pairs:
            if vals[j] != 1 - vals[i]:
                bad.append(Violation("ortho", (F[i],), F[j], 1 - vals[i], vals[j]))
        for i, j, m in self.meets:
            want = min(vals[i], vals[j])
            if vals[m] != want:
                bad.append(Violation("meet", (F[i], F[j]), F[m], want, vals[m]))
        for i, j, k in self.joins:
            want = max(vals[i], vals[j])
            if vals[k] != want:
                bad.append(Violation("join", (F[i], F[j]), F[k], want, vals[k]))
        return bad

    def passes(self, vals: Sequence[int]) -> bool:
        """Same rules as :meth:`check_values`, stopping at the first violation."""
        if self.unit is not None and vals[self.unit] != 1:
            return False
        if self.zero is not None and vals[self.zero] != 0:
            return False
        return (all(vals[j] == 1 - vals[i] for i, j in self.ortho_pairs)
                and all(vals[m] == min(vals[i], vals[j]) for i, j, m in self.meets)
                and all(vals[k] == max(vals[i], vals[j]) for i, j, k in self.joins))

    def check(self, h: Mapping[Subspace, int]) -> list[Violation]:
        return self.check_values(self.values(h))


def check_homomorphism(family: Sequence[Subspace], h: Mapping[Subspace, int],
                       unit: Subspace | None = None) -> list[Violation]:
    """List every violated meet/join/orthocomplement/bound rule; empty means ``h`` passes.

    Only pairs whose meet, join or orthocomplement is itself in ``family``
    are tested; the family is not closed first.
    """
    return HomomorphismChecker(family, unit).check(h)


def induced_assignment(s: State, family: Sequence[Subspace]) -> dict[Subspace, int]:
    """``P -> 1`` iff the state ray lies under ``P``."""
    return {P: int(leq(s.ray, P)) for P in family}


def _propagators(checker: HomomorphismChecker):
    """Constraint list and per-variable watch lists for :func:`enumerate_homomorphisms`."""
    cons: list[tuple[str, tuple[int, ...]]] = []
    for i, j in checker.ortho_pairs:
        cons.append(("not", (i, j)))
    for i, j, m in checker.meets:
        cons.append(("and", (i, j, m)))
    for i, j, k in checker.joins:
        cons.append(("or", (i, j, k)))
    watch: list[list[int]] = [[] for _ in checker.family]
    for c, (_, vs) in enumerate(cons):
        for v in set(vs):
            watch[v].append(c)
    return cons, watch


def enumerate_homomorphisms(family: Sequence[Subspace], limit: int | None = None,
                            unit: Subspace | None = None,
                            checker: HomomorphismChecker | None = None) -> list[dict[Subspace, int]]:
    """All assignments on ``family`` passing :func:`check_homomorphism`, up to ``limit``.

    Exhaustive depth-first search: branch on the lowest unassigned member,
    propagate every meet/join/orthocomplement relation to fixpoint, undo on
    conflict. Each solution is re-verified with the plain checker before it
    is returned.
    """
    checker = checker or HomomorphismChecker(family, unit)
    n = len(checker.family)
    cons, watch = _propagators(checker)
    vals: list[int | None] = [None] * n
    found: list[dict[Subspace, int]] = []

    def assign(v: int, x: int, trail: list[int], queue: list[int]) -> bool:
        cur = vals[v]
        if cur is None:
            vals[v] = x
            trail.append(v)
            queue.append(v)
            return True
        return cur == x

    def propagate(trail: list[int], queue: list[int]) -> bool:
        while queue:
            v = queue.pop()
            for c in watch[v]:
                kind, vs = cons[c]
                if kind == "not":
                    a, b = vs
                    if vals[a] is not None and not assign(b, 1 - vals[a], trail, queue):
                        return False
                    if vals[b] is not None and not assign(a, 1 - vals[b], trail, queue):
                        return False
                    continue
                a, b, z = vs
                # "or" is "and" under negation of all three values
                lo, hi = (0, 1) if kind == "and" else (1, 0)
                xa, xb, xz = vals[a], vals[b], vals[z]
                if xa == lo or xb == lo:
                    if not assign(z, lo, trail, queue):
                        return False
                elif xa == hi and xb == hi:
                    if not assign(z, hi, trail, queue):
                        return False
                xz = vals[z]
                if xz == hi:
                    if not (assign(a, hi, trail, queue) and assign(b, hi, trail, queue)):
                        return False
                elif xz == lo:
                    if vals[a] == hi and not assign(b, lo, trail, queue):
                        return False
                    if vals[b] == hi and not assign(a, lo, trail, queue):
                        return False
        return True

    def undo(trail: list[int]) -> None:
        for v in trail:
            vals[v] = None

    root: list[int] = []
    for forced, x in ((checker.unit, 1), (checker.zero, 0)):
        if forced is None:
            continue
        queue: list[int] = []
        if not (assign(forced, x, root, queue) and propagate(root, queue)):
            return found

    def search(start: int) -> bool:
        v = next((i for i in range(start, n) if vals[i] is None), None)
        if v is None:
            full = [int(x) for x in vals]
            if checker.check_values(full):
                raise AssertionError("propagation accepted an invalid assignment")
            found.append(dict(zip(checker.family, full)))
            return limit is not None and len(found) >= limit
        for x in (1, 0):
            trail: list[int] = []
            queue: list[int] = []
            if assign(v, x, trail, queue) and propagate(trail, queue):
                if search(v + 1):
                    return True
            undo(trail)
        return False

    search(0)
    return found
