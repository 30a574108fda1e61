from __future__ import annotations

from fractions import Fraction

import pytest
import sympy
from hypothesis import settings, strategies as st

from contextua.exactlin import Scalar, Vect
from contextua.lattice import Subspace

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

small_fracs = st.builds(Fraction, st.integers(-6, 6), st.integers(1, 4))
scalars = st.builds(Scalar, small_fracs, small_fracs, small_fracs, small_fracs)
nonzero_scalars = scalars.filter(lambda x: not x.is_zero())
real_rational_scalars = st.builds(Scalar, small_fracs)
# entries that keep elimination cheap while still exercising r2 and i
entry_scalars = st.sampled_from(["0", "0", "1", "-1", "2", "1/2", "r2", "i", "1+i", "-r2"]).map(Scalar.parse)


def vectors(dim: int):
    return st.lists(entry_scalars, min_size=dim, max_size=dim).map(Vect)


@st.composite
def subspaces(draw, dim: int | None = None):
    n = dim if dim is not None else draw(st.integers(2, 4))
    k = draw(st.integers(0, n))
    vecs = draw(st.lists(vectors(n), min_size=k, max_size=k))
    return Subspace(n, vecs)


@st.composite
def subspace_pairs(draw):
    n = draw(st.integers(2, 4))
    return draw(subspaces(n)), draw(subspaces(n))


@st.composite
def subspace_triples(draw):
    n = draw(st.integers(2, 3))
    return draw(subspaces(n)), draw(subspaces(n)), draw(subspaces(n))


def to_sympy(x: Scalar):
    """Independent oracle representation of a scalar."""
    a, b, c, d = (sympy.Rational(q.numerator, q.denominator) for q in x.components())
    return a + b * sympy.sqrt(2) + sympy.I * (c + d * sympy.sqrt(2))


def sympy_matrix(M) -> sympy.Matrix:
    return sympy.Matrix(M.rows, M.cols, [to_sympy(x) for x in M.entries])


def sympy_equal(x, y) -> bool:
    diff = sympy.expand(x - y)
    return diff == 0 or sympy.expand(sympy.radsimp(diff)) == 0


# -- acceptance summary ------------------------------------------------------

ACCEPTANCE_RESULTS: dict[str, str] = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    """Record one pass/fail line per acceptance criterion (docstring starts with 'Criterion N:')."""
    outcome = yield
    rep = outcome.get_result()
    doc = getattr(getattr(item, "function", None), "__doc__", None) or ""
    if not doc.startswith("Criterion"):
        return
    name = doc.strip().splitlines()[0]
    if rep.when == "call" or (rep.when == "setup" and rep.failed):
        if ACCEPTANCE_RESULTS.get(name) != "FAIL":
            ACCEPTANCE_RESULTS[name] = "PASS" if rep.passed else "FAIL"


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(ACCEPTANCE_RESULTS, key=lambda s: int(s.split()[1].rstrip(":"))):
        terminalreporter.write_line(f"[{ACCEPTANCE_RESULTS[name]}] {name}")
