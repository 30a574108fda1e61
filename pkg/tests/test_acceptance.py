"""Acceptance suite: one test per criterion, each printing a pass/fail line.

Run under pytest (the summary section lists every criterion), or directly
as a script: ``python3 tests/test_acceptance.py``.
"""

import contextlib
import io
import itertools
import json
import random
import sys
import time
from functools import lru_cache

import pytest

from contextua import datasets
from contextua.bubclifton import (
    Context,
    Observable,
    bounded_closure,
    contextual_state,
    dvn_sublattice,
    evaluators,
    is_member,
    project_state,
)
from contextua.classical import PhaseSpace, check_boolean_homomorphism, point_homomorphism
from contextua.cli import main
from contextua.exactlin import ONE, ZERO, Mat, Vect, inner
from contextua.kscheck import build_problem, check_parity_certificate, verify_parity_certificate
from contextua.lattice import Subspace, join, join_all, leq, ortho, ray
from contextua.sampling import (
    random_context,
    random_member,
    random_non_member_ray,
    random_state,
    random_subspace,
    random_subspace_in,
)
from contextua.valuation import (
    HomomorphismChecker,
    TruthValue,
    born_probability,
    classify,
    enumerate_homomorphisms,
)

SEED = 20240601


def run_cli(argv):
    buf = io.StringIO()
    with contextlib.redirect_stdout(buf):
        code = main(argv)
    return code, buf.getvalue()


@lru_cache(maxsize=None)
def contexts():
    """The 100 randomized contexts shared by criteria 3, 4, 6 and 7."""
    rng = random.Random(SEED)
    return [random_context(rng, rng.randint(3, 5)) for _ in range(100)]


def state_vector(ctx):
    return Vect(ctx.state.ray.rows[0])


def test_criterion_1():
    """Criterion 1: cabello18 UNSAT < 1 s with verified parity certificate; peres33 UNSAT < 60 s"""
    t0 = time.perf_counter()
    code, out = run_cli(["ks", "--dataset", "cabello18", "--certificate"])
    elapsed = time.perf_counter() - t0
    assert code == 0
    data = json.loads(out)
    assert data["verdict"] == "unsat"
    assert elapsed < 1.0, f"cabello18 took {elapsed:.3f} s"

    cert = data["parity_certificate"]
    cp = build_problem(datasets.get("cabello18").payload)
    assert cert["num_bases"] == 9 and len(cert["bases"]) == 9
    assert len(cert["occurrences"]) == 18 and set(cert["occurrences"].values()) == {2}
    assert verify_parity_certificate(cp, cert)
    assert cert == check_parity_certificate(cp)

    t0 = time.perf_counter()
    code, out = run_cli(["ks", "--dataset", "peres33"])
    elapsed = time.perf_counter() - t0
    assert code == 0 and json.loads(out)["verdict"] == "unsat"
    assert elapsed < 60.0, f"peres33 took {elapsed:.3f} s"


def test_criterion_2():
    """Criterion 2: every point of every phase space with <= 5 points is a Boolean homomorphism; contrast"""
    for n in range(1, 6):
        space = PhaseSpace(tuple(f"x{i}" for i in range(n)))
        family = space.power_set()
        assert len(family) == 2 ** n
        for x in space.points:
            assert check_boolean_homomorphism(family, point_homomorphism(space, x, family)) == []
    code, out = run_cli(["contrast"])
    data = json.loads(out)
    assert code == 0
    assert data["classical_homomorphisms"] >= 1
    assert data["cabello18"] == "unsat"


def test_criterion_3():
    """Criterion 3: lattice formula equals direct projection on 100 random contexts in dims 3-5"""
    dims = set()
    for ctx in contexts():
        dims.add(ctx.dim)
        psi = state_vector(ctx)
        dl = project_state(ctx)
        expected_rays, expected_weights = [], []
        for A in ctx.observable.eigenspaces:
            # direct route: apply the eigenprojector matrix to the state vector
            v = A.projector() @ psi
            if not v.is_zero():
                expected_rays.append(ray(v))
                expected_weights.append(inner(v, v) / inner(psi, psi))
            lattice_form = join(ctx.state.ray, ortho(A)) & A
            assert lattice_form == (Subspace.zero(ctx.dim) if v.is_zero() else ray(v))
        assert list(dl.projected_rays) == expected_rays
        assert list(dl.weights) == expected_weights
        for a, b in itertools.combinations(dl.projected_rays, 2):
            assert leq(a, ortho(b))
        total = ZERO
        for w in dl.weights:
            total = total + w
        assert total == ONE
    assert dims == {3, 4, 5}


def sample_closed_member_family(rng, dl, cap=64, attempts=20):
    """A closure of projected rays plus random members that reaches a fixpoint within ``cap``."""
    for extra in itertools.cycle((3, 2, 1, 0)):
        seed = [*dl.projected_rays] + [random_member(rng, dl) for _ in range(extra)]
        fam, fixpoint = bounded_closure(seed, cap)
        if fixpoint:
            return fam
        attempts -= 1
        if attempts <= 0:
            break
    raise AssertionError("could not sample a closed member family")


def test_criterion_4():
    """Criterion 4: k distinct evaluators pass the homomorphism laws; exhaustive over the 2^k family"""
    rng = random.Random(SEED + 4)
    exhaustive = 0
    for ctx in contexts():
        dl = project_state(ctx)
        evs = evaluators(dl)
        assert len(evs) == dl.k
        profiles = [tuple(ev(r) for r in dl.projected_rays) for ev in evs]
        assert len(set(profiles)) == dl.k

        for _ in range(2):
            fam = sample_closed_member_family(rng, dl)
            assert len(fam) <= 64 and all(is_member(dl, P) for P in fam)
            checker = HomomorphismChecker(fam)
            for ev in evs:
                assert checker.check({P: ev(P) for P in fam}) == []

        # Boolean family generated by the projected rays; its top is their join W
        W = dl.span()
        family = list(dict.fromkeys(join_all(c, dl.dim) for r in range(dl.k + 1)
                                    for c in itertools.combinations(dl.projected_rays, r)))
        assert len(family) == 2 ** dl.k
        checker = HomomorphismChecker(family, unit=W)
        ev_values = {tuple(ev(P) for P in family) for ev in evs}
        if dl.k <= 4:
            exhaustive += 1
            passing = {bits for bits in itertools.product((0, 1), repeat=len(family)) if checker.passes(bits)}
            assert passing == ev_values
        found = {tuple(h[P] for P in family) for h in enumerate_homomorphisms(family, unit=W)}
        assert found == ev_values
    assert exhaustive > 0


def test_criterion_5():
    """Criterion 5: dvn_sublattice equals the identity-observable construction on 100 probes per state"""
    rng = random.Random(SEED + 5)
    for _ in range(10):
        n = rng.randint(2, 5)
        s = random_state(rng, n)
        dl = dvn_sublattice(s)
        via_identity = project_state(Context(s, Observable.identity(n)))
        assert dl.k == 1 and via_identity.k == 1
        assert dl.projected_rays == via_identity.projected_rays == (s.ray,)
        assert dl.weights == via_identity.weights == (ONE,)
        (ev,) = evaluators(dl)
        (ev_id,) = evaluators(via_identity)
        members = 0
        for j in range(100):
            # a third of the probes are forced through or orthogonal to the state
            if j % 3 == 0:
                P = join(s.ray, random_subspace(rng, n, rng.randint(0, n - 1)))
            elif j % 3 == 1:
                P = random_subspace_in(rng, ortho(s.ray), rng.randint(0, n - 1))
            else:
                P = random_subspace(rng, n)
            member = is_member(dl, P)
            assert member == is_member(via_identity, P)
            assert member == (leq(s.ray, P) or leq(s.ray, ortho(P)))
            if member:
                members += 1
                assert ev(P) == ev_id(P)
                assert (ev(P) == 1) == (classify(s, P) is TruthValue.TRUE)
        assert members >= 60


def test_criterion_6():
    """Criterion 6: sum of weights of evaluators sending P to 1 equals the Born probability, exactly"""
    rng = random.Random(SEED + 6)
    for ctx in contexts():
        dl = project_state(ctx)
        evs = evaluators(dl)
        samples = [random_member(rng, dl) for _ in range(10)] + [dl.span(), dl.remainder()]
        for P in samples:
            total = ZERO
            for w, ev in zip(dl.weights, evs):
                if ev(P) == 1:
                    total = total + w
            assert total == born_probability(ctx.state, P)


def test_criterion_7():
    """Criterion 7: contextual state has trace 1 and satisfies the three mixture conditions"""
    for ctx in contexts():
        dl = project_state(ctx)
        cs = contextual_state(dl)
        D_A = cs.matrix()
        assert D_A.trace() == ONE
        spaces = ctx.observable.eigenspaces
        for r, i in zip(cs.rays, cs.eigen_indices):
            assert leq(r, spaces[i])
            assert not leq(r, ortho(ctx.state.ray))
        for a, b in itertools.combinations(cs.rays, 2):
            assert leq(a, ortho(b))
        D = ctx.state.ray.projector()
        for A in spaces:
            PA = A.projector()
            assert (D_A @ PA).trace() == (D @ PA).trace()


def test_criterion_8():
    """Criterion 8: spin-1/2 truth values and probabilities"""
    ex = datasets.get("spin-half").payload
    props = ex.propositions
    cases = [("Sz_up", TruthValue.TRUE, "1"), ("Sz_down", TruthValue.FALSE, "0"),
             ("Sy_up", TruthValue.INDETERMINATE, "1/2")]
    for name, value, prob in cases:
        assert classify(ex.state, props[name]) is value
        assert str(born_probability(ex.state, props[name])) == prob
    assert ex.observables["Sy"].matrix() == Mat.from_rows([["0", "-1/2i"], ["1/2i", "0"]])
    for name, value, prob in cases:
        code, out = run_cli(["truth", "--dataset", "spin-half", "--prop-name", name])
        assert code == 0 and json.loads(out) == {"value": value.value, "probability": prob}


@pytest.mark.slow
def test_criterion_9():
    """Criterion 9: adding a non-member ray leaves no 2-valued homomorphism (20 dim-3 contexts, cap 200)"""
    rng = random.Random(SEED + 9)
    done = 0
    while done < 20:
        ctx = random_context(rng, 3, 3)
        dl = project_state(ctx)
        if dl.k != 3:
            continue
        r = random_non_member_ray(rng, dl, general_position=True)
        fam, _ = bounded_closure([*dl.projected_rays, r], 200)
        assert len(fam) <= 200
        assert enumerate_homomorphisms(fam, limit=1) == []
        done += 1


def _determinism_commands(tmp):
    space = tmp / "space.json"
    space.write_text(json.dumps({"points": ["a", "b", "c"], "properties": {"P": ["a"], "Q": ["b", "c"]}}))
    a, b = tmp / "a.json", tmp / "b.json"
    a.write_text(json.dumps({"dim": 3, "basis": [["1", "1", "0"]]}))
    b.write_text(json.dumps({"dim": 3, "basis": [["1", "0", "0"], ["0", "0", "1"]]}))
    cmds = [["datasets", "list"], ["contrast"], ["classical", "--space", str(space), "--point", "b"]]
    cmds += [["lattice", op, str(a), str(b)] for op in ("meet", "join", "leq")] + [["lattice", "ortho", str(a)]]
    for name in datasets.names():
        cmds.append(["datasets", "show", name])
        kind = datasets.get(name).kind
        if kind == "rayset":
            cmds += [["ks", "--dataset", name, "--certificate"], ["ks", "--dataset", name, "--enumerate", "50"]]
        elif kind == "context":
            cmds.append(["bc", "--dataset", name, "--homs", "--contextual-state", "--query", str(a)])
        else:
            cmds += [["truth", "--dataset", name, "--prop-name", p] for p in datasets.get(name).payload.propositions]
    return cmds


def test_criterion_10(tmp_path):
    """Criterion 10: repeated CLI runs on every embedded dataset give byte-identical output"""
    for argv in _determinism_commands(tmp_path):
        runs = [run_cli(argv) for _ in range(3)]
        assert runs[0][0] == 0, argv
        assert runs[0][1]
        assert all(r == runs[0] for r in runs), argv
        out = tmp_path / "out.json"
        assert main(["-o", str(out), *argv]) == 0
        assert out.read_bytes() == runs[0][1].encode()


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q", "-p", "no:cacheprovider"]))
