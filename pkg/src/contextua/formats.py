"""JSON file forms shared by the CLI and the dataset registry.

Loaders raise :class:`ParseError` for malformed structure and let the type
constructors raise :class:`DomainError` for mathematically invalid content.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any

from contextua.bubclifton import Context, ContextualState, DeterminateSublattice, Observable
from contextua.classical import PhaseSpace
from contextua.errors import ParseError
from contextua.exactlin import Mat, Scalar, Vect
from contextua.kscheck import RaySet
from contextua.lattice import Subspace
from contextua.valuation import State


def read_json(path: str | Path) -> Any:
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: invalid JSON ({exc})") from None
    except OSError as exc:
        raise ParseError(f"{path}: {exc.strerror}") from None


def dumps(obj: Any) -> str:
    """Canonical JSON text: sorted keys, fixed separators, trailing newline."""
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def _require(obj: Any, key: str, kind: type | tuple[type, ...], where: str) -> Any:
    if not isinstance(obj, dict):
        raise ParseError(f"{where}: expected an object")
    if key not in obj:
        raise ParseError(f"{where}: missing key {key!r}")
    value = obj[key]
    if not isinstance(value, kind) or isinstance(value, bool):
        raise ParseError(f"{where}: {key!r} has the wrong type")
    return value


def _scalars(items: Any, where: str) -> list[Scalar]:
    if not isinstance(items, list):
        raise ParseError(f"{where}: expected a list of scalar strings")
    return [Scalar.parse(x) for x in items]


# -- scalars, vectors, matrices ---------------------------------------------

def vect_json(v: Vect) -> list[str]:
    return [str(x) for x in v]


def mat_json(M: Mat) -> list[list[str]]:
    return [[str(x) for x in M.row(i)] for i in range(M.rows)]


# -- subspaces ----------------------------------------------------------------

def subspace_json(P: Subspace) -> dict:
    return {"dim": P.dim_ambient, "basis": [[str(x) for x in r] for r in P.rows]}


def subspace_from_json(obj: Any, where: str = "subspace") -> Subspace:
    dim = _require(obj, "dim", int, where)
    basis = _require(obj, "basis", list, where)
    cols = []
    for col in basis:
        entries = _scalars(col, where)
        if len(entries) != dim:
            raise ParseError(f"{where}: basis column of length {len(entries)} in dimension {dim}")
        cols.append(entries)
    return Subspace(dim, cols)


# -- states, observables, contexts -------------------------------------------

def state_json(s: State) -> dict:
    return {"vector": [str(x) for x in s.ray.rows[0]]}


def state_from_json(obj: Any, where: str = "state") -> State:
    return State.from_vector(_scalars(_require(obj, "vector", list, where), where))


def observable_json(A: Observable) -> dict:
    return {
        "dim": A.dim_ambient,
        "spectral": [{"eigenvalue": str(ev), "eigenspace": subspace_json(E)} for ev, E in A.spectral],
    }


def observable_from_json(obj: Any, where: str = "observable") -> Observable:
    dim = _require(obj, "dim", int, where)
    spectral = []
    for n, item in enumerate(_require(obj, "spectral", list, where)):
        ev = Scalar.parse(_require(item, "eigenvalue", str, f"{where}.spectral[{n}]"))
        E = subspace_from_json(_require(item, "eigenspace", dict, f"{where}.spectral[{n}]"),
                               f"{where}.spectral[{n}].eigenspace")
        spectral.append((ev, E))
    return Observable(dim, tuple(spectral))


def context_json(ctx: Context) -> dict:
    return {"state": state_json(ctx.state), "observable": observable_json(ctx.observable)}


def context_from_json(obj: Any) -> Context:
    state = state_from_json(_require(obj, "state", dict, "context"), "context.state")
    observable = observable_from_json(_require(obj, "observable", dict, "context"), "context.observable")
    return Context(state, observable)


def sublattice_json(dl: DeterminateSublattice) -> dict:
    return {
        "k": dl.k,
        "projected_rays": [subspace_json(r) for r in dl.projected_rays],
        "weights": [str(w) for w in dl.weights],
        "eigenspace_indices": list(dl.eigen_indices),
    }


def contextual_state_json(cs: ContextualState) -> dict:
    return {
        "components": [{"weight": str(p), "projector": mat_json(M)} for p, M in cs.mixture],
        "matrix": mat_json(cs.matrix()),
        "trace": str(cs.matrix().trace()),
    }


# -- ray sets -------------------------------------------------------------------

def rayset_json(rs: RaySet) -> dict:
    return {"dim": rs.dim, "rays": [{"label": name, "v": vect_json(v)} for name, v in zip(rs.labels, rs.rays)]}


def rayset_from_json(obj: Any) -> RaySet:
    dim = _require(obj, "dim", int, "rayset")
    vectors, labels = [], []
    for n, item in enumerate(_require(obj, "rays", list, "rayset")):
        where = f"rayset.rays[{n}]"
        labels.append(_require(item, "label", str, where))
        v = _scalars(_require(item, "v", list, where), where)
        if len(v) != dim:
            raise ParseError(f"{where}: vector of length {len(v)} in dimension {dim}")
        vectors.append(v)
    if not vectors:
        raise ParseError("rayset: no rays")
    return RaySet.from_vectors(vectors, labels)


# -- phase spaces -----------------------------------------------------------------

def phase_space_from_json(obj: Any) -> tuple[PhaseSpace, dict[str, list[str]]]:
    points = _require(obj, "points", list, "phase space")
    if any(not isinstance(p, str) for p in points):
        raise ParseError("phase space: point labels must be strings")
    props = obj.get("properties", {})
    if not isinstance(props, dict):
        raise ParseError("phase space: 'properties' must be an object")
    for name, members in props.items():
        if not isinstance(members, list) or any(not isinstance(p, str) for p in members):
            raise ParseError(f"phase space: property {name!r} must be a list of point labels")
    return PhaseSpace(tuple(points)), props
