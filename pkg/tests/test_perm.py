import itertools
import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from transversal_kit.perm import (CapExceeded, Perm, PointStabilizer, compose, equal_groups, generate, inverse,
                                  stabilizer_of_point)


@st.composite
def perms(draw, n=6):
    return Perm(draw(st.permutations(range(n))))


def test_compose_identity_and_inverse():
    p = Perm([2, 0, 3, 1])
    e = Perm.identity(4)
    assert compose(e, p) == p
    assert compose(p, e) == p
    assert compose(p, inverse(p)) == e


def test_compose_is_left_to_right():
    p = Perm.from_cycles(3, [(0, 1)])
    q = Perm.from_cycles(3, [(1, 2)])
    r = compose(p, q)
    # pointwise oracle: r(x) = q(p(x))
    assert [r(x) for x in range(3)] == [q(p(x)) for x in range(3)] == [2, 0, 1]


def test_compose_degree_mismatch():
    with pytest.raises(ValueError):
        compose(Perm.identity(3), Perm.identity(4))


def test_perm_rejects_non_bijection():
    with pytest.raises(ValueError):
        Perm([0, 0, 1])


def test_inverse_of_involution():
    t = Perm.from_cycles(5, [(1, 3)])
    assert inverse(t) == t
    assert inverse(Perm.identity(5)) == Perm.identity(5)


@given(perms(8))
def test_inverse_random(p):
    assert compose(p, inverse(p)).is_identity()
    assert compose(inverse(p), p).is_identity()


@given(perms(), perms(), perms())
def test_compose_associative(p, q, r):
    assert compose(compose(p, q), r) == compose(p, compose(q, r))


def test_generate_small_cases():
    assert generate(3, []).order == 1
    s3 = generate(3, [Perm.from_cycles(3, [(0, 1)]), Perm.from_cycles(3, [(1, 2)])])
    # oracle: every permutation of 3 points
    assert s3.element_set() == {Perm(p) for p in itertools.permutations(range(3))}
    assert generate(4, [Perm.from_cycles(4, [(0, 1), (2, 3)])]).order == 2


def test_generate_canonical_order_and_closure():
    g = generate(4, [Perm([1, 2, 3, 0]), Perm([1, 0, 2, 3])])
    assert list(g.elements) == sorted(g.elements)
    assert g.elements[0].is_identity()
    assert all(compose(a, b) in g for a in g for b in g)
    assert math.factorial(4) % g.order == 0


def test_generate_idempotent():
    g = generate(5, [Perm([1, 2, 0, 3, 4]), Perm([0, 1, 2, 4, 3])])
    again = generate(5, g.elements)
    assert equal_groups(g, again)


def test_generate_cap():
    with pytest.raises(CapExceeded, match="too large"):
        generate(5, [Perm([1, 2, 3, 4, 0]), Perm([1, 0, 2, 3, 4])], cap=50)


def test_equal_groups_two_generating_sets():
    a = generate(3, [Perm([1, 0, 2]), Perm([0, 2, 1])])
    b = generate(3, [Perm([1, 2, 0]), Perm([2, 1, 0])])
    assert equal_groups(a, b)
    assert not equal_groups(generate(3, []), generate(3, [Perm([1, 0, 2])]))


@pytest.mark.parametrize("n, order", [(1, 1), (3, 2), (5, 24), (6, 120)])
def test_stabilizer_order(n, order):
    g = stabilizer_of_point(n, 0)
    assert g.order == order == math.factorial(n - 1)
    assert all(p[0] == 0 for p in g)


def test_stabilizer_matches_generated():
    stab = PointStabilizer(5, 2)
    assert equal_groups(generate(5, stab.generators), stabilizer_of_point(5, 2))


def test_stabilizer_cap():
    with pytest.raises(CapExceeded):
        stabilizer_of_point(9, 0)
    big = PointStabilizer(12, 0)
    assert Perm([0] + list(range(11, 0, -1))) in big
    assert big.order == math.factorial(11)


def test_cycles():
    p = Perm([1, 2, 0, 4, 3, 5])
    assert p.cycles() == [(0, 1, 2), (3, 4)]
    assert p.cycle_type() == (1, 2, 3)
    assert p.cycle_str(offset=1) == "(123)(45)"
