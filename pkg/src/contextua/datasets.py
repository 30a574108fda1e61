"""Registry of embedded ray sets and worked examples.

Coordinates are transcribed from the cited sources as canonical scalar
strings. Every lookup rebuilds the payload and re-checks its structural
fingerprint (ray, edge and basis counts, or k and weights for contexts), so
a transcription slip fails loudly instead of producing a wrong verdict.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Callable

from contextua.bubclifton import Context, Observable, project_state
from contextua.errors import DomainError, UnknownNameError
from contextua.exactlin import Mat, Scalar
from contextua.kscheck import RaySet, build_problem
from contextua.lattice import Subspace, ray
from contextua.valuation import State

CABELLO_18 = (
    # Cabello, Estebaranz & Garcia-Alcaine (1996), the 18-vector, 9-basis set in dimension 4
    ("0", "0", "0", "1"),
    ("0", "0", "1", "0"),
    ("1", "1", "0", "0"),
    ("1", "-1", "0", "0"),
    ("0", "1", "0", "0"),
    ("1", "0", "1", "0"),
    ("1", "0", "-1", "0"),
    ("1", "-1", "1", "-1"),
    ("1", "-1", "-1", "1"),
    ("0", "0", "1", "1"),
    ("1", "1", "1", "1"),
    ("0", "1", "0", "-1"),
    ("1", "0", "0", "1"),
    ("1", "0", "0", "-1"),
    ("0", "1", "-1", "0"),
    ("1", "1", "-1", "1"),
    ("1", "1", "1", "-1"),
    ("-1", "1", "1", "1"),
)

PERES_33 = (
    # Peres (1991): permutations of (0,0,1), (0,1,+-1), (0,+-1,r2), (+-1,+-1,r2)
    ("1", "0", "0"),
    ("0", "1", "0"),
    ("0", "0", "1"),
    ("0", "1", "1"),
    ("0", "1", "-1"),
    ("1", "0", "1"),
    ("1", "0", "-1"),
    ("1", "1", "0"),
    ("1", "-1", "0"),
    ("0", "r2", "1"),
    ("0", "r2", "-1"),
    ("0", "1", "r2"),
    ("0", "-1", "r2"),
    ("r2", "0", "1"),
    ("r2", "0", "-1"),
    ("1", "0", "r2"),
    ("-1", "0", "r2"),
    ("r2", "1", "0"),
    ("r2", "-1", "0"),
    ("1", "r2", "0"),
    ("-1", "r2", "0"),
    ("r2", "1", "1"),
    ("r2", "1", "-1"),
    ("r2", "-1", "1"),
    ("r2", "-1", "-1"),
    ("1", "r2", "1"),
    ("1", "r2", "-1"),
    ("-1", "r2", "1"),
    ("-1", "r2", "-1"),
    ("1", "1", "r2"),
    ("1", "-1", "r2"),
    ("-1", "1", "r2"),
    ("-1", "-1", "r2"),
)

YU_OH_13 = (
    # Yu & Oh (2012): z_k, y_k^-, y_k^+, then h_0..h_3
    ("1", "0", "0"),
    ("0", "1", "0"),
    ("0", "0", "1"),
    ("0", "1", "-1"),
    ("0", "1", "1"),
    ("1", "0", "-1"),
    ("1", "0", "1"),
    ("1", "-1", "0"),
    ("1", "1", "0"),
    ("1", "1", "1"),
    ("-1", "1", "1"),
    ("1", "-1", "1"),
    ("1", "1", "-1"),
)
YU_OH_LABELS = ("z1", "z2", "z3", "y1-", "y1+", "y2-", "y2+", "y3-", "y3+", "h0", "h1", "h2", "h3")


@dataclass(frozen=True)
class SpinExample:
    """Spin-1/2 with state z-up and the S_z and S_y eigenspaces (eigenvalues in units of hbar)."""

    state: State
    observables: dict[str, Observable]
    propositions: dict[str, Subspace]


@dataclass(frozen=True)
class DatasetEntry:
    name: str
    kind: str  # "rayset" | "context" | "spin-example"
    payload: Any
    provenance: str
    fingerprint: dict[str, Any] = field(default_factory=dict)


def _rayset(rows, labels=None) -> RaySet:
    return RaySet.from_vectors(rows, labels)


def _spin_half() -> SpinExample:
    half = Scalar.parse("1/2")
    up_z, down_z = ray(["1", "0"]), ray(["0", "1"])
    up_y, down_y = ray(["1", "i"]), ray(["1", "-i"])
    sz = Observable.from_eigenspaces([up_z, down_z], [half, -half])
    sy = Observable.from_eigenspaces([up_y, down_y], [half, -half])
    return SpinExample(
        state=State(up_z),
        observables={"Sz": sz, "Sy": sy},
        propositions={"Sz_up": up_z, "Sz_down": down_z, "Sy_up": up_y, "Sy_down": down_y},
    )


def _bc_axes() -> Context:
    axes = [ray(["1", "0", "0"]), ray(["0", "1", "0"]), ray(["0", "0", "1"])]
    return Context(State(ray(["1", "1", "1"])), Observable.from_eigenspaces(axes))


def _bc_degenerate() -> Context:
    plane = Subspace(3, [["1", "0", "0"], ["0", "1", "0"]])
    return Context(State(ray(["1", "0", "1"])), Observable.from_eigenspaces([plane, ray(["0", "0", "1"])]))


def _rayset_fp(rs: RaySet) -> dict[str, Any]:
    cp = build_problem(rs)
    return {"dim": rs.dim, "rays": len(rs), "edges": len(cp.edges), "bases": len(cp.bases)}


def _context_fp(ctx: Context) -> dict[str, Any]:
    dl = project_state(ctx)
    return {"dim": ctx.dim, "k": dl.k, "weights": [str(w) for w in dl.weights]}


def _spin_fp(ex: SpinExample) -> dict[str, Any]:
    # S_y must be (1/2) * Pauli-Y: [[0, -i], [i, 0]] / 2
    pauli_y_half = Mat.from_rows([["0", "-1/2i"], ["1/2i", "0"]])
    pauli_z_half = Mat.from_rows([["1/2", "0"], ["0", "-1/2"]])
    return {
        "dim": ex.state.dim,
        "Sy_matches_pauli": ex.observables["Sy"].matrix() == pauli_y_half,
        "Sz_matches_pauli": ex.observables["Sz"].matrix() == pauli_z_half,
    }


_Builder = tuple[str, Callable[[], Any], Callable[[Any], dict], str, dict]

_REGISTRY: dict[str, _Builder] = {
    "cabello18": (
        "rayset", lambda: _rayset(CABELLO_18), _rayset_fp,
        "Cabello, Estebaranz, Garcia-Alcaine, Phys. Lett. A 212 (1996) 183; "
        "cited via Cabello, Int. J. Quantum Inform. 4 (2006) 55",
        {"dim": 4, "rays": 18, "edges": 63, "bases": 9},
    ),
    "peres33": (
        "rayset", lambda: _rayset(PERES_33), _rayset_fp,
        "Peres, J. Phys. A 24 (1991) L175",
        {"dim": 3, "rays": 33, "edges": 72, "bases": 16},
    ),
    "yuoh13": (
        "rayset", lambda: _rayset(YU_OH_13, YU_OH_LABELS), _rayset_fp,
        "Yu & Oh, Phys. Rev. Lett. 108 (2012) 030402",
        {"dim": 3, "rays": 13, "edges": 24, "bases": 4},
    ),
    "spin-half": (
        "spin-example", _spin_half, _spin_fp,
        "standard Pauli eigenvectors: S_z up/down (1,0), (0,1); S_y up/down (1,i), (1,-i)",
        {"dim": 2, "Sy_matches_pauli": True, "Sz_matches_pauli": True},
    ),
    "bc-axes": (
        "context", _bc_axes, _context_fp,
        "worked example: state along (1,1,1), nondegenerate observable diagonal in the standard basis",
        {"dim": 3, "k": 3, "weights": ["1/3", "1/3", "1/3"]},
    ),
    "bc-degenerate": (
        "context", _bc_degenerate, _context_fp,
        "worked example: state along (1,0,1), eigenspaces span{e1,e2} and span{e3}",
        {"dim": 3, "k": 2, "weights": ["1/2", "1/2"]},
    ),
}


def names() -> list[str]:
    return sorted(_REGISTRY)


def get(name: str) -> DatasetEntry:
    """Build, validate and return a registered dataset."""
    if name not in _REGISTRY:
        raise UnknownNameError(f"unknown dataset {name!r}; known: {', '.join(names())}")
    kind, build, fingerprint, provenance, expected = _REGISTRY[name]
    payload = build()
    fp = fingerprint(payload)
    if fp != expected:
        raise DomainError(f"dataset {name!r} fingerprint {fp} does not match recorded {expected}")
    return DatasetEntry(name, kind, payload, provenance, fp)
