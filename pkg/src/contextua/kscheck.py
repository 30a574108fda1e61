"""Kochen-Specker colouring search over finite ray sets.

A colouring assigns 0/1 to every ray so that

* (a) no two orthogonal rays are both 1, and
* (b) every basis (a clique of ``dim`` mutually orthogonal rays) has
  exactly one ray coloured 1.

The search is a plain depth-first backtracker over ray indices in ascending
order, trying 1 before 0, with unit propagation. The order is fixed so that
the reported colouring and node count are reproducible byte for byte.
"""

from __future__ import annotations

import itertools
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import networkx as nx

from contextua.errors import DimensionError, DomainError
from contextua.exactlin import ZERO, Mat, Scalar, Vect, inner
from contextua.lattice import ray


@dataclass(frozen=True)
class RaySet:
    dim: int
    rays: tuple[Vect, ...]
    labels: tuple[str, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "rays", tuple(self.rays))
        object.__setattr__(self, "labels", tuple(self.labels))
        if len(self.rays) != len(self.labels):
            raise DomainError("one label per ray")
        if len(set(self.labels)) != len(self.labels):
            raise DomainError("ray labels must be unique")
        seen = {}
        for v, name in zip(self.rays, self.labels):
            if v.dim != self.dim:
                raise DimensionError(f"ray {name} has dimension {v.dim}, expected {self.dim}")
            r = ray(v)  # rejects the zero vector
            if r in seen:
                raise DomainError(f"rays {seen[r]} and {name} are parallel")
            seen[r] = name

    @classmethod
    def from_vectors(cls, vectors: Sequence[Sequence], labels: Sequence[str] | None = None) -> "RaySet":
        vs = [Vect(v) for v in vectors]
        if not vs:
            raise DomainError("empty ray set")
        if labels is None:
            labels = [",".join(str(x) for x in v) for v in vs]
        return cls(vs[0].dim, tuple(vs), tuple(labels))

    def __len__(self) -> int:
        return len(self.rays)


@dataclass(frozen=True)
class ColoringProblem:
    rayset: RaySet
    edges: tuple[tuple[int, int], ...]
    bases: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        n = len(self.rayset)
        edge_set = set(self.edges)
        for i, j in self.edges:
            if not 0 <= i < j < n:
                raise DomainError(f"bad edge {(i, j)}")
        for b in self.bases:
            if len(b) != self.rayset.dim:
                raise DomainError(f"basis {b} does not have {self.rayset.dim} members")
            for i, j in itertools.combinations(sorted(b), 2):
                if (i, j) not in edge_set:
                    raise DomainError(f"basis {b} contains non-orthogonal pair {(i, j)}")

    @property
    def dim(self) -> int:
        return self.rayset.dim

    def neighbours(self) -> list[list[int]]:
        adj: list[list[int]] = [[] for _ in range(len(self.rayset))]
        for i, j in self.edges:
            adj[i].append(j)
            adj[j].append(i)
        return adj


@dataclass
class ColoringResult:
    verdict: str  # "sat" or "unsat"
    coloring: dict[int, int] | None
    nodes_explored: int
    elapsed: float
    certificate: dict | None = None
    order_stable: bool = True
    colorings: list[dict[int, int]] | None = field(default=None)

    @property
    def sat(self) -> bool:
        return self.verdict == "sat"


def build_problem(rs: RaySet) -> ColoringProblem:
    """Orthogonality edges by exact inner products; bases are the ``dim``-cliques."""
    n = len(rs)
    edges = tuple((i, j) for i, j in itertools.combinations(range(n), 2)
                  if inner(rs.rays[i], rs.rays[j]).is_zero())
    g = nx.Graph()
    g.add_nodes_from(range(n))
    g.add_edges_from(edges)
    # dim mutually orthogonal nonzero vectors cannot be extended, so dim-cliques are maximal
    bases = sorted(tuple(sorted(c)) for c in nx.find_cliques(g) if len(c) == rs.dim)
    return ColoringProblem(rs, edges, tuple(bases))


class _Search:
    def __init__(self, cp: ColoringProblem) -> None:
        self.n = len(cp.rayset)
        self.adj = cp.neighbours()
        self.bases = cp.bases
        self.bases_of: list[list[int]] = [[] for _ in range(self.n)]
        for b_idx, b in enumerate(cp.bases):
            for v in b:
                self.bases_of[v].append(b_idx)
        self.vals: list[int | None] = [None] * self.n
        self.nodes = 0

    def _assign(self, v: int, x: int, trail: list[int], queue: list[int]) -> bool:
        cur = self.vals[v]
        if cur is None:
            self.vals[v] = x
            trail.append(v)
            queue.append(v)
            return True
        return cur == x

    def propagate(self, trail: list[int], queue: list[int]) -> bool:
        vals = self.vals
        while queue:
            v = queue.pop()
            if vals[v] == 1:
                for u in self.adj[v]:
                    if not self._assign(u, 0, trail, queue):
                        return False
            for b_idx in self.bases_of[v]:
                open_, ones = [], 0
                for u in self.bases[b_idx]:
                    if vals[u] is None:
                        open_.append(u)
                    elif vals[u] == 1:
                        ones += 1
                if ones > 1:
                    return False
                if ones == 0:
                    if not open_:
                        return False
                    if len(open_) == 1 and not self._assign(open_[0], 1, trail, queue):
                        return False
        return True

    def undo(self, trail: list[int]) -> None:
        for v in trail:
            self.vals[v] = None

    def run(self, limit: int | None) -> list[dict[int, int]]:
        found: list[dict[int, int]] = []

        def dfs(start: int) -> bool:
            v = next((i for i in range(start, self.n) if self.vals[i] is None), None)
            if v is None:
                found.append({i: int(x) for i, x in enumerate(self.vals)})
                return limit is not None and len(found) >= limit
            for x in (1, 0):
                self.nodes += 1
                trail: list[int] = []
                queue: list[int] = []
                if self._assign(v, x, trail, queue) and self.propagate(trail, queue):
                    if dfs(v + 1):
                        return True
                self.undo(trail)
            return False

        dfs(0)
        return found


def verify_coloring(cp: ColoringProblem, coloring: dict[int, int]) -> list[str]:
    """Independent post-hoc check of rules (a) and (b); returns the list of failures."""
    problems = []
    n = len(cp.rayset)
    if sorted(coloring) != list(range(n)) or any(x not in (0, 1) for x in coloring.values()):
        return ["colouring is not a total 0/1 map"]
    for i, j in itertools.combinations(range(n), 2):
        if coloring[i] and coloring[j] and inner(cp.rayset.rays[i], cp.rayset.rays[j]).is_zero():
            problems.append(f"orthogonal rays {i} and {j} both coloured 1")
    for b in cp.bases:
        ones = sum(coloring[v] for v in b)
        if ones != 1:
            problems.append(f"basis {b} has {ones} rays coloured 1")
    return problems


def solve(cp: ColoringProblem) -> ColoringResult:
    """Deterministic search for the first colouring in (ascending index, 1-before-0) order."""
    t0 = time.perf_counter()
    search = _Search(cp)
    found = search.run(limit=1)
    elapsed = time.perf_counter() - t0
    if found:
        problems = verify_coloring(cp, found[0])
        if problems:
            raise AssertionError(f"search produced an invalid colouring: {problems}")
        return ColoringResult("sat", found[0], search.nodes, elapsed)
    return ColoringResult("unsat", None, search.nodes, elapsed)


def enumerate_colorings(cp: ColoringProblem, cap: int) -> list[dict[int, int]]:
    """All colourings (up to ``cap``) in the same deterministic order as :func:`solve`."""
    if cap < 1:
        raise DomainError("cap must be at least 1")
    found = _Search(cp).run(limit=cap)
    for c in found:
        if verify_coloring(cp, c):
            raise AssertionError("search produced an invalid colouring")
    return found


def check_parity_certificate(cp: ColoringProblem) -> dict | None:
    """Parity obstruction: an odd number of bases in which every ray occurs an even number of times.

    Summing rule (b) over the bases counts an odd number of 1s; counting the
    same 1s ray by ray gives an even number. Returns ``None`` when the
    structure is absent.
    """
    counts = [0] * len(cp.rayset)
    for b in cp.bases:
        for v in b:
            counts[v] += 1
    if not cp.bases or len(cp.bases) % 2 == 0 or any(c % 2 for c in counts):
        return None
    labels = cp.rayset.labels
    return {
        "num_bases": len(cp.bases),
        "bases": [[labels[v] for v in b] for b in cp.bases],
        "occurrences": {labels[v]: c for v, c in enumerate(counts) if c},
    }


def verify_parity_certificate(cp: ColoringProblem, cert: dict) -> bool:
    """Recount the certificate against the problem, without trusting its stored counts."""
    index = {name: i for i, name in enumerate(cp.rayset.labels)}
    try:
        bases = [tuple(sorted(index[name] for name in b)) for b in cert["bases"]]
    except KeyError:
        return False
    known = set(cp.bases)
    if len(set(bases)) != len(bases) or any(b not in known for b in bases):
        return False
    counts: dict[int, int] = {}
    for b in bases:
        for v in b:
            counts[v] = counts.get(v, 0) + 1
    return len(bases) % 2 == 1 and all(c % 2 == 0 for c in counts.values())


def result_json(cp: ColoringProblem, result: ColoringResult) -> dict:
    """JSON payload of a result; timing is left out so identical inputs give identical bytes."""
    out: dict = {
        "verdict": result.verdict,
        "bases": len(cp.bases),
        "edges": len(cp.edges),
        "nodes_explored": result.nodes_explored,
    }
    labels = cp.rayset.labels
    if result.coloring is not None:
        out["coloring"] = {labels[i]: x for i, x in result.coloring.items()}
    if result.certificate is not None:
        out["parity_certificate"] = result.certificate
    if result.colorings is not None:
        out["colorings"] = [{labels[i]: x for i, x in c.items()} for c in result.colorings]
        out["count"] = len(result.colorings)
    return out


# ---------------------------------------------------------------------------
# Yu-Oh inequality


def _expectation(X: Mat, psi: Vect) -> Scalar:
    num = inner(psi, X @ psi)
    return num / inner(psi, psi)


def yu_oh_gap(rs: RaySet, psi: Vect) -> tuple[Scalar, Scalar]:
    """Classical bound and quantum value of ``sum_i a_i - 1/4 sum_{(i,j)} a_i a_j``.

    The pair sum runs over ordered orthogonal pairs, so every edge of the
    orthogonality graph counts twice (weight 1/2 per edge). The classical
    bound is a brute-force maximum over all ``{-1,+1}`` assignments. The
    quantum value replaces ``a_i`` by ``A_i = I - 2 P_i`` and each product
    by the operator product ``A_i A_j``, averaged in ``psi``.
    """
    if len(rs) != 13:
        raise DomainError(f"the Yu-Oh check needs the 13-ray set, got {len(rs)} rays")
    cp = build_problem(rs)
    if len(cp.edges) != 24:
        raise DomainError(f"the Yu-Oh set has 24 orthogonal pairs, got {len(cp.edges)}")
    if psi.dim != rs.dim:
        raise DimensionError(f"state in dimension {psi.dim}, rays in dimension {rs.dim}")
    if psi.is_zero():
        raise DomainError("state vector must be nonzero")

    best = None
    for signs in itertools.product((1, -1), repeat=13):
        # scaled by 2 to stay in integers
        val = 2 * sum(signs) - sum(signs[i] * signs[j] for i, j in cp.edges)
        if best is None or val > best:
            best = val
    classical = Scalar(Fraction(best, 2))

    n = rs.dim
    ident = Mat.identity(n)
    obs = [ident - ray(v).projector().scale(2) for v in rs.rays]
    total = ZERO
    for A in obs:
        total = total + _expectation(A, psi)
    pair_total = ZERO
    for i, j in cp.edges:
        pair_total = pair_total + _expectation(obs[i] @ obs[j], psi)
    quantum = total - pair_total * Scalar(Fraction(1, 2))
    return classical, quantum
