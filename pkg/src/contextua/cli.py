"""Command-line front end.

Exit codes: 0 success (whatever the verdict), 1 usage, 2 parse error,
3 domain or invariant violation. Output is canonical JSON.
"""

from __future__ import annotations

import argparse
import sys
from typing import Sequence

from contextua import datasets, formats
from contextua.bubclifton import (
    contextual_state,
    evaluators,
    is_member,
    project_state,
)
from contextua.classical import PhaseSpace, count_point_homomorphisms, point_homomorphism
from contextua.errors import DomainError, ParseError
from contextua.kscheck import (
    build_problem,
    check_parity_certificate,
    enumerate_colorings,
    result_json,
    solve,
)
from contextua.lattice import join, leq, meet, ortho
from contextua.valuation import born_probability, classify

EXIT_OK, EXIT_USAGE, EXIT_PARSE, EXIT_DOMAIN = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # argparse would exit with 2, which we reserve for parse errors
        raise UsageError(f"{self.prog}: error: {message}")


def cmd_truth(args) -> dict:
    if args.dataset:
        entry = datasets.get(args.dataset)
        if entry.kind != "spin-example":
            raise DomainError(f"dataset {args.dataset!r} has no state/proposition pair")
        if args.prop_name not in entry.payload.propositions:
            raise DomainError(f"unknown proposition {args.prop_name!r}")
        state, prop = entry.payload.state, entry.payload.propositions[args.prop_name]
    else:
        if not (args.state and args.prop):
            raise UsageError("truth: give --state and --prop, or --dataset and --prop-name")
        state = formats.state_from_json(formats.read_json(args.state))
        prop = formats.subspace_from_json(formats.read_json(args.prop), "prop")
    return {"value": classify(state, prop).value, "probability": str(born_probability(state, prop))}


def cmd_bc(args) -> dict:
    if args.dataset:
        entry = datasets.get(args.dataset)
        if entry.kind != "context":
            raise DomainError(f"dataset {args.dataset!r} is not a context")
        ctx = entry.payload
    elif args.context:
        ctx = formats.context_from_json(formats.read_json(args.context))
    else:
        raise UsageError("bc: give --context or --dataset")
    dl = project_state(ctx)
    out = formats.sublattice_json(dl)
    evs = evaluators(dl)
    if args.query:
        P = formats.subspace_from_json(formats.read_json(args.query), "query")
        member = is_member(dl, P)
        out["query"] = {
            "member": member,
            "values": [ev(P) for ev in evs] if member else "non-member",
        }
    if args.homs:
        out["homomorphisms"] = [
            {"index": ev.index, "values_on_projected_rays": [ev(r) for r in dl.projected_rays]}
            for ev in evs
        ]
    if args.contextual_state:
        out["contextual_state"] = formats.contextual_state_json(contextual_state(dl))
    return out


def cmd_ks(args) -> dict:
    if args.dataset:
        entry = datasets.get(args.dataset)
        if entry.kind != "rayset":
            raise DomainError(f"dataset {args.dataset!r} is not a ray set")
        rs = entry.payload
    elif args.rays:
        rs = formats.rayset_from_json(formats.read_json(args.rays))
    else:
        raise UsageError("ks: give --rays or --dataset")
    cp = build_problem(rs)
    result = solve(cp)
    if args.certificate:
        result.certificate = check_parity_certificate(cp)
    if args.enumerate is not None:
        if args.enumerate < 1:
            raise UsageError("ks: --enumerate needs a positive cap")
        result.colorings = enumerate_colorings(cp, args.enumerate)
    return result_json(cp, result)


def cmd_classical(args) -> dict:
    space, props = formats.phase_space_from_json(formats.read_json(args.space))
    names = sorted(props)
    family = [space.prop(props[name]) for name in names]
    h = point_homomorphism(space, args.point, family)
    return {"point": args.point, "table": {name: bool(h[P]) for name, P in zip(names, family)}}


def cmd_contrast(args) -> dict:
    space = PhaseSpace(("X1", "X2", "X3"))
    cp = build_problem(datasets.get("cabello18").payload)
    return {
        "classical_points": len(space),
        "classical_homomorphisms": count_point_homomorphisms(space),
        "cabello18": solve(cp).verdict,
        "cabello18_parity_certificate": check_parity_certificate(cp) is not None,
    }


def cmd_datasets(args) -> dict:
    if args.action == "list":
        return {"datasets": [{"name": n, "kind": datasets.get(n).kind} for n in datasets.names()]}
    entry = datasets.get(args.name)
    out = {"name": entry.name, "kind": entry.kind, "provenance": entry.provenance,
           "fingerprint": entry.fingerprint}
    if entry.kind == "rayset":
        out["rayset"] = formats.rayset_json(entry.payload)
    elif entry.kind == "context":
        out["context"] = formats.context_json(entry.payload)
    else:
        ex = entry.payload
        out["state"] = formats.state_json(ex.state)
        out["propositions"] = {k: formats.subspace_json(v) for k, v in ex.propositions.items()}
        out["observables"] = {k: formats.observable_json(v) for k, v in ex.observables.items()}
    return out


def cmd_lattice(args) -> dict:
    P = formats.subspace_from_json(formats.read_json(args.a), "a")
    if args.op == "ortho":
        if args.b:
            raise UsageError("lattice ortho takes one subspace")
        return formats.subspace_json(ortho(P))
    if not args.b:
        raise UsageError(f"lattice {args.op} takes two subspaces")
    Q = formats.subspace_from_json(formats.read_json(args.b), "b")
    if args.op == "meet":
        return formats.subspace_json(meet(P, Q))
    if args.op == "join":
        return formats.subspace_json(join(P, Q))
    return {"leq": leq(P, Q)}


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="contextua", description="Exact quantum-logic toolkit.")
    p.add_argument("-o", "--output", help="write JSON here instead of stdout")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    t = sub.add_parser("truth", help="three-valued truth and Born probability")
    t.add_argument("--state")
    t.add_argument("--prop")
    t.add_argument("--dataset")
    t.add_argument("--prop-name", default="Sz_up")
    t.set_defaults(func=cmd_truth)

    b = sub.add_parser("bc", help="determinate sublattice of a context")
    b.add_argument("--context")
    b.add_argument("--dataset")
    b.add_argument("--query")
    b.add_argument("--homs", action="store_true")
    b.add_argument("--contextual-state", action="store_true")
    b.set_defaults(func=cmd_bc)

    k = sub.add_parser("ks", help="Kochen-Specker colouring search")
    k.add_argument("--rays")
    k.add_argument("--dataset")
    k.add_argument("--enumerate", type=int, metavar="CAP")
    k.add_argument("--certificate", action="store_true")
    k.set_defaults(func=cmd_ks)

    c = sub.add_parser("classical", help="truth table of a classical phase-space point")
    c.add_argument("--space", required=True)
    c.add_argument("--point", required=True)
    c.set_defaults(func=cmd_classical)

    sub.add_parser("contrast", help="classical homomorphisms next to the Cabello-18 verdict").set_defaults(
        func=cmd_contrast)

    d = sub.add_parser("datasets", help="list or show embedded datasets")
    d.add_argument("action", choices=["list", "show"])
    d.add_argument("name", nargs="?")
    d.set_defaults(func=cmd_datasets)

    lat = sub.add_parser("lattice", help="meet, join, ortho or leq of subspace files")
    lat.add_argument("op", choices=["meet", "join", "ortho", "leq"])
    lat.add_argument("a")
    lat.add_argument("b", nargs="?")
    lat.set_defaults(func=cmd_lattice)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        if args.command == "datasets" and args.action == "show" and not args.name:
            raise UsageError("datasets show needs a name")
        text = formats.dumps(args.func(args))
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return EXIT_USAGE
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
