"""Classical baseline: a finite phase space whose properties are subsets.

Every point fixes a truth value for every property by membership, and that
assignment preserves intersection, union and complement. There is no
indeterminate value here.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Sequence

from contextua.errors import DomainError, UnknownNameError


@dataclass(frozen=True)
class PhaseSpace:
    points: tuple[str, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "points", tuple(self.points))
        if not self.points:
            raise DomainError("phase space needs at least one point")
        if len(set(self.points)) != len(self.points):
            raise DomainError("point labels must be unique")

    def __len__(self) -> int:
        return len(self.points)

    def index(self, label: str) -> int:
        try:
            return self.points.index(label)
        except ValueError:
            raise UnknownNameError(f"unknown point {label!r}") from None

    def prop(self, labels: Iterable[str]) -> "ClassicalProperty":
        return ClassicalProperty(frozenset(self.index(x) for x in labels), len(self.points))

    def whole(self) -> "ClassicalProperty":
        return ClassicalProperty(frozenset(range(len(self.points))), len(self.points))

    def empty(self) -> "ClassicalProperty":
        return ClassicalProperty(frozenset(), len(self.points))

    def power_set(self) -> list["ClassicalProperty"]:
        n = len(self.points)
        return [ClassicalProperty(frozenset(c), n)
                for r in range(n + 1) for c in itertools.combinations(range(n), r)]


@dataclass(frozen=True)
class ClassicalProperty:
    subset: frozenset[int]
    size: int  # number of points in the space it lives in

    def __post_init__(self) -> None:
        if any(not 0 <= i < self.size for i in self.subset):
            raise DomainError("property refers to points outside the space")

    def __and__(self, other: "ClassicalProperty") -> "ClassicalProperty":
        return ClassicalProperty(self.subset & other.subset, self.size)

    def __or__(self, other: "ClassicalProperty") -> "ClassicalProperty":
        return ClassicalProperty(self.subset | other.subset, self.size)

    def complement(self) -> "ClassicalProperty":
        return ClassicalProperty(frozenset(range(self.size)) - self.subset, self.size)

    __invert__ = complement


def classical_truth(space: PhaseSpace, point: str, P: ClassicalProperty) -> bool:
    """Characteristic function of ``P`` evaluated at ``point``."""
    return space.index(point) in P.subset


def point_homomorphism(space: PhaseSpace, point: str,
                       family: Sequence[ClassicalProperty]) -> dict[ClassicalProperty, int]:
    i = space.index(point)
    return {P: int(i in P.subset) for P in family}


def check_boolean_homomorphism(family: Sequence[ClassicalProperty],
                               h: dict[ClassicalProperty, int]) -> list[tuple[str, tuple]]:
    """Meet/join/complement/bound violations among pairs whose results lie in ``family``."""
    members = set(family)
    for P in members:
        if P not in h:
            raise DomainError("assignment is not total on the family")
    bad = []
    for P in members:
        if not P.subset and h[P] != 0:
            bad.append(("zero", (P,)))
        if len(P.subset) == P.size and h[P] != 1:
            bad.append(("unit", (P,)))
        C = P.complement()
        if C in members and h[C] != 1 - h[P]:
            bad.append(("complement", (P, C)))
    for P, Q in itertools.combinations(list(dict.fromkeys(family)), 2):
        M, J = P & Q, P | Q
        if M in members and h[M] != min(h[P], h[Q]):
            bad.append(("meet", (P, Q)))
        if J in members and h[J] != max(h[P], h[Q]):
            bad.append(("join", (P, Q)))
    return bad


def count_point_homomorphisms(space: PhaseSpace) -> int:
    """Number of points whose induced assignment passes the check on the full power set."""
    family = space.power_set()
    return sum(1 for x in space.points
               if not check_boolean_homomorphism(family, point_homomorphism(space, x, family)))
