import itertools

import pytest
from hypothesis import given, strategies as st

from contextua.classical import (
    PhaseSpace,
    check_boolean_homomorphism,
    classical_truth,
    count_point_homomorphisms,
    point_homomorphism,
)
from contextua.errors import DomainError, UnknownNameError

space = PhaseSpace(("X1", "X2", "X3"))


def test_truth_by_membership():
    P = space.prop(["X1", "X2"])
    assert classical_truth(space, "X1", P)
    assert not classical_truth(space, "X3", P)


def test_operations():
    P, Q = space.prop(["X1", "X2"]), space.prop(["X2", "X3"])
    assert P & Q == space.prop(["X2"])
    assert P | Q == space.whole()
    assert ~P == space.prop(["X3"])
    assert ~space.whole() == space.empty()


def test_power_set_size():
    assert len(space.power_set()) == 8
    assert len(set(space.power_set())) == 8


def test_every_point_is_a_homomorphism():
    family = space.power_set()
    for x in space.points:
        assert check_boolean_homomorphism(family, point_homomorphism(space, x, family)) == []
    assert count_point_homomorphisms(space) == 3


def test_homomorphisms_are_exactly_the_points():
    family = space.power_set()
    good = []
    for bits in itertools.product((0, 1), repeat=len(family)):
        h = dict(zip(family, bits))
        if not check_boolean_homomorphism(family, h):
            good.append(h)
    assert sorted(map(lambda h: sorted(h.items(), key=lambda kv: sorted(kv[0].subset)), good)) == sorted(
        sorted(point_homomorphism(space, x, family).items(), key=lambda kv: sorted(kv[0].subset))
        for x in space.points)


def test_violations_detected():
    family = space.power_set()
    h = point_homomorphism(space, "X1", family)
    h[space.prop(["X2"])] = 1
    rules = {rule for rule, _ in check_boolean_homomorphism(family, h)}
    assert {"complement", "join"} <= rules
    with pytest.raises(DomainError):
        check_boolean_homomorphism(family, {})


def test_errors():
    with pytest.raises(UnknownNameError):
        space.prop(["X9"])
    with pytest.raises(DomainError):
        PhaseSpace(())
    with pytest.raises(DomainError):
        PhaseSpace(("a", "a"))


@given(st.integers(1, 5), st.data())
def test_points_of_small_spaces(n, data):
    sp = PhaseSpace(tuple(f"p{i}" for i in range(n)))
    family = sp.power_set()
    x = data.draw(st.sampled_from(sp.points))
    assert check_boolean_homomorphism(family, point_homomorphism(sp, x, family)) == []
