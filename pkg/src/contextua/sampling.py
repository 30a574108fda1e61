"""Seeded random generators for exact vectors, subspaces, observables and contexts.

All entries are small rationals so elimination stays cheap; every draw goes
through the supplied :class:`random.Random` and is reproducible.
"""

from __future__ import annotations

import random
from fractions import Fraction

from contextua.bubclifton import Context, DeterminateSublattice, Observable, is_member
from contextua.exactlin import ZERO, Scalar, Vect
from contextua.lattice import Subspace, join, join_all, leq, meet, ortho
from contextua.valuation import State


def random_rational(rng: random.Random, bound: int = 3) -> Scalar:
    num = rng.randint(-bound, bound)
    den = rng.choice((1, 1, 1, 2, 3))
    return Scalar(Fraction(num, den))


def random_vector(rng: random.Random, dim: int, bound: int = 3) -> Vect:
    while True:
        v = Vect(random_rational(rng, bound) for _ in range(dim))
        if not v.is_zero():
            return v


def random_vector_in(rng: random.Random, S: Subspace, bound: int = 3) -> Vect:
    """Random nonzero vector inside ``S`` (which must be nonzero)."""
    basis = S.rows
    while True:
        coeffs = [random_rational(rng, bound) for _ in basis]
        v = [ZERO] * S.dim_ambient
        for c, row in zip(coeffs, basis):
            v = [a + c * b for a, b in zip(v, row)]
        if any(not x.is_zero() for x in v):
            return Vect(v)


def random_subspace_in(rng: random.Random, S: Subspace, rank: int) -> Subspace:
    """Random subspace of ``S`` with the given rank (``0 <= rank <= S.rank``)."""
    if rank == 0:
        return Subspace.zero(S.dim_ambient)
    if rank == S.rank:
        return S
    while True:
        P = Subspace(S.dim_ambient, [random_vector_in(rng, S) for _ in range(rank)])
        if P.rank == rank:
            return P


def random_subspace(rng: random.Random, dim: int, rank: int | None = None) -> Subspace:
    if rank is None:
        rank = rng.randint(0, dim)
    return random_subspace_in(rng, Subspace.full(dim), rank)


def random_ray(rng: random.Random, dim: int) -> Subspace:
    return random_subspace(rng, dim, 1)


def random_observable(rng: random.Random, dim: int, parts: int | None = None) -> Observable:
    """Random orthogonal split of the space into ``parts`` eigenspaces (random ranks)."""
    if parts is None:
        parts = rng.randint(1, dim)
    # random composition of dim into `parts` positive ranks
    cuts = sorted(rng.sample(range(1, dim), parts - 1))
    ranks = [b - a for a, b in zip([0] + cuts, cuts + [dim])]
    remaining = Subspace.full(dim)
    spaces = []
    for r in ranks[:-1]:
        E = random_subspace_in(rng, remaining, r)
        spaces.append(E)
        remaining = meet(remaining, ortho(E))
    spaces.append(remaining)
    values = rng.sample(range(-9, 10), parts)
    return Observable.from_eigenspaces(spaces, [Scalar(v) for v in values])


def random_state(rng: random.Random, dim: int) -> State:
    return State.from_vector(random_vector(rng, dim))


def random_context(rng: random.Random, dim: int, parts: int | None = None) -> Context:
    return Context(random_state(rng, dim), random_observable(rng, dim, parts))


def random_member(rng: random.Random, dl: DeterminateSublattice) -> Subspace:
    """Join of a random subset of projected rays with a random subspace of the remainder."""
    chosen = [r for r in dl.projected_rays if rng.random() < 0.5]
    R = dl.remainder()
    part = random_subspace_in(rng, R, rng.randint(0, R.rank)) if R.rank else R
    return join(join_all(chosen, dl.dim), part)


def random_non_member_ray(rng: random.Random, dl: DeterminateSublattice,
                          general_position: bool = False) -> Subspace:
    """A ray outside the member sublattice.

    With ``general_position`` the ray is also required to be non-orthogonal
    to every projected ray. A ray orthogonal to one of them can leave a
    surviving homomorphism on its generated family.
    """
    while True:
        r = random_ray(rng, dl.dim)
        if is_member(dl, r):
            continue
        if general_position and any(leq(r, ortho(a)) for a in dl.projected_rays):
            continue
        return r
