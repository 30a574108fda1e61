"""Maximal determinate sublattice of a state relative to a measured observable.

Given a state ray ``D`` and an observable with eigenspaces ``A_1..A_m``, the
projected rays ``D_i = (D | ~A_i) & A_i`` (kept only when nonzero) fix which
propositions can be simultaneously true or false: exactly those ``P`` with
every ``D_i`` under ``P`` or under ``~P``. On that sublattice the i-th
2-valued homomorphism sends ``P`` to 1 iff ``D_i <= P``.

Caveat on the homomorphism count: the k evaluators are always valid and
pairwise distinct. When the orthocomplement of the projected rays is exactly
one-dimensional, that remainder is itself an atom of the (then finite,
Boolean) sublattice, and sending it to 1 gives one more lattice
homomorphism. It carries zero Born weight, so it never contributes to the
contextual state. Only the k weighted evaluators are exposed.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from contextua.errors import DimensionError, DomainError
from contextua.exactlin import ONE, ZERO, Mat, Scalar, Vect
from contextua.lattice import Subspace, join, join_all, leq, meet, ortho, ray
from contextua.valuation import State


@dataclass(frozen=True)
class Observable:
    """Spectral data: distinct real eigenvalues with orthogonal eigenspaces spanning the space."""

    dim_ambient: int
    spectral: tuple[tuple[Scalar, Subspace], ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "spectral", tuple((ev, E) for ev, E in self.spectral))
        if not self.spectral:
            raise DomainError("observable needs at least one eigenspace")
        values = [ev for ev, _ in self.spectral]
        if any(not ev.is_real() for ev in values):
            raise DomainError("eigenvalues must be real")
        if len(set(values)) != len(values):
            raise DomainError("eigenvalues must be pairwise distinct")
        spaces = [E for _, E in self.spectral]
        for E in spaces:
            if E.dim_ambient != self.dim_ambient:
                raise DimensionError(f"eigenspace in dimension {E.dim_ambient}, observable in {self.dim_ambient}")
            if E.is_zero():
                raise DomainError("eigenspaces must be nonzero")
        for i, E in enumerate(spaces):
            for F in spaces[i + 1:]:
                if not leq(E, ortho(F)):
                    raise DomainError("eigenspaces must be pairwise orthogonal")
        if sum(E.rank for E in spaces) != self.dim_ambient:
            raise DomainError("eigenspace ranks must sum to the ambient dimension")

    @classmethod
    def identity(cls, dim: int) -> "Observable":
        return cls(dim, ((ONE, Subspace.full(dim)),))

    @classmethod
    def from_eigenspaces(cls, spaces: Sequence[Subspace], eigenvalues: Sequence[Scalar] | None = None) -> "Observable":
        """Label eigenspaces 1, 2, ... unless eigenvalues are given."""
        if not spaces:
            raise DomainError("observable needs at least one eigenspace")
        if eigenvalues is None:
            eigenvalues = [Scalar(i + 1) for i in range(len(spaces))]
        return cls(spaces[0].dim_ambient, tuple(zip(eigenvalues, spaces)))

    @property
    def eigenspaces(self) -> list[Subspace]:
        return [E for _, E in self.spectral]

    @property
    def eigenvalues(self) -> list[Scalar]:
        return [ev for ev, _ in self.spectral]

    def matrix(self) -> Mat:
        """``sum_i lambda_i P_i``."""
        total = Mat.zero(self.dim_ambient)
        for ev, E in self.spectral:
            total = total + E.projector().scale(ev)
        return total


@dataclass(frozen=True)
class Context:
    state: State
    observable: Observable

    def __post_init__(self) -> None:
        if self.state.dim != self.observable.dim_ambient:
            raise DimensionError(
                f"state in dimension {self.state.dim}, observable in dimension {self.observable.dim_ambient}")

    @property
    def dim(self) -> int:
        return self.state.dim


@dataclass(frozen=True)
class DeterminateSublattice:
    """The projected rays of a context, their Born weights, and which eigenspace each came from."""

    context: Context
    projected_rays: tuple[Subspace, ...]
    weights: tuple[Scalar, ...]
    eigen_indices: tuple[int, ...]

    def __post_init__(self) -> None:
        k = len(self.projected_rays)
        if not 1 <= k <= len(self.context.observable.spectral):
            raise DomainError(f"k = {k} out of range")
        if len(self.weights) != k or len(self.eigen_indices) != k:
            raise DomainError("one weight and eigenspace index per projected ray")
        for i, r in enumerate(self.projected_rays):
            if not r.is_ray():
                raise DomainError("projected rays must be one-dimensional")
            for s in self.projected_rays[i + 1:]:
                if not leq(r, ortho(s)):
                    raise DomainError("projected rays must be pairwise orthogonal")
        if any(w <= 0 for w in self.weights):
            raise DomainError("weights must be positive")
        if sum(self.weights, ZERO) != ONE:
            raise DomainError("weights must sum to 1")

    @property
    def k(self) -> int:
        return len(self.projected_rays)

    @property
    def dim(self) -> int:
        return self.context.dim

    def span(self) -> Subspace:
        """Join of all projected rays."""
        return join_all(self.projected_rays, self.dim)

    def remainder(self) -> Subspace:
        """Orthocomplement of the projected rays' join; every ray inside it is a member."""
        return ortho(self.span())


@dataclass(frozen=True)
class ContextualState:
    """Mixture ``sum_i p_i P_i`` of rank-one projectors onto the projected rays."""

    mixture: tuple[tuple[Scalar, Mat], ...]
    rays: tuple[Subspace, ...] = field(default=())
    eigen_indices: tuple[int, ...] = field(default=())

    def matrix(self) -> Mat:
        n = self.mixture[0][1].rows
        total = Mat.zero(n)
        for p, proj in self.mixture:
            total = total + proj.scale(p)
        return total


def _state_vector(s: State) -> Vect:
    return s.ray.basis[0]


def project_state(ctx: Context) -> DeterminateSublattice:
    """Projected rays ``(D | ~A_i) & A_i`` with weights ``trace(D P_{A_i})``; zero projections dropped."""
    D = ctx.state.ray
    Dproj = D.projector()
    rays, weights, idx = [], [], []
    for i, (_, A) in enumerate(ctx.observable.spectral):
        r = meet(join(D, ortho(A)), A)
        if r.is_zero():
            continue
        rays.append(r)
        weights.append((Dproj @ A.projector()).trace())
        idx.append(i)
    return DeterminateSublattice(ctx, tuple(rays), tuple(weights), tuple(idx))


def direct_projections(ctx: Context) -> list[Subspace]:
    """For each eigenspace, the span of ``P_{A_i} psi`` (the zero subspace when that vector vanishes).

    Independent of the lattice route in :func:`project_state`: it applies
    the projector matrix to a representative vector.
    """
    psi = _state_vector(ctx.state)
    out = []
    for _, A in ctx.observable.spectral:
        v = A.projector() @ psi
        out.append(Subspace.zero(ctx.dim) if v.is_zero() else ray(v))
    return out


def is_member(dl: DeterminateSublattice, P: Subspace) -> bool:
    if P.dim_ambient != dl.dim:
        raise DimensionError(f"proposition in dimension {P.dim_ambient}, sublattice in dimension {dl.dim}")
    Pperp = ortho(P)
    return all(leq(r, P) or leq(r, Pperp) for r in dl.projected_rays)


class Evaluator:
    """The i-th 2-valued homomorphism (0-based): ``P -> 1`` iff the i-th projected ray lies under ``P``."""

    def __init__(self, dl: DeterminateSublattice, i: int) -> None:
        if not 0 <= i < dl.k:
            raise DomainError(f"homomorphism index {i} out of range for k = {dl.k}")
        self.sublattice = dl
        self.index = i
        self.ray = dl.projected_rays[i]

    def __call__(self, P: Subspace) -> int:
        if not is_member(self.sublattice, P):
            raise DomainError(f"{P!r} is not in the determinate sublattice")
        return int(leq(self.ray, P))

    def __repr__(self) -> str:
        return f"Evaluator(index={self.index}, k={self.sublattice.k})"


def homomorphism(dl: DeterminateSublattice, i: int) -> Evaluator:
    return Evaluator(dl, i)


def evaluators(dl: DeterminateSublattice) -> list[Evaluator]:
    return [Evaluator(dl, i) for i in range(dl.k)]


def dvn_sublattice(s: State) -> DeterminateSublattice:
    """Dirac-von Neumann case: the identity observable, one eigenspace, k = 1."""
    return project_state(Context(s, Observable.identity(s.dim)))


def contextual_state(dl: DeterminateSublattice) -> ContextualState:
    mixture = tuple((p, r.projector()) for p, r in zip(dl.weights, dl.projected_rays))
    return ContextualState(mixture, dl.projected_rays, dl.eigen_indices)


def contextual_conditions(dl: DeterminateSublattice, cs: ContextualState) -> list[str]:
    """Failures of the three contextual-state conditions (empty when all hold).

    Each component lies in an eigenspace of the observable, components are
    pairwise orthogonal, and each is non-orthogonal to the state.
    """
    problems = []
    spaces = dl.context.observable.eigenspaces
    D = dl.context.state.ray
    for n, (r, i) in enumerate(zip(cs.rays, cs.eigen_indices)):
        if not leq(r, spaces[i]):
            problems.append(f"component {n} not inside eigenspace {i}")
        if leq(r, ortho(D)):
            problems.append(f"component {n} orthogonal to the state")
        for m in range(n + 1, len(cs.rays)):
            if not leq(r, ortho(cs.rays[m])):
                problems.append(f"components {n} and {m} not orthogonal")
    return problems


def bounded_closure(seed: Sequence[Subspace], cap: int) -> tuple[list[Subspace], bool]:
    """Close ``seed`` under meet, join and orthocomplement, stopping at ``cap`` members.

    Elements are processed in insertion order, each against itself and every
    earlier element, so the result is deterministic. Returns the family and
    whether a fixpoint was reached before the cap.
    """
    family = list(dict.fromkeys(seed))
    if cap < len(family):
        raise DomainError(f"cap {cap} is smaller than the seed ({len(family)} members)")
    seen = set(family)
    done = 0
    while done < len(family):
        P = family[done]
        fresh = [ortho(P)]
        for Q in family[:done + 1]:
            fresh.append(meet(P, Q))
            fresh.append(join(P, Q))
        for R in fresh:
            if R in seen:
                continue
            if len(family) >= cap:
                return family, False
            family.append(R)
            seen.add(R)
        done += 1
    return family, True
