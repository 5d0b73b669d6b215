import math

import pytest
from hypothesis import given, strategies as st

from currentgraph.group import (
    GroupError,
    GroupSpec,
    add,
    element_order,
    is_even,
    negate,
    parse_group,
)

G = GroupSpec((3, 12))


def e(a, b, spec=G):
    return spec.element(a, b)


def test_add_examples():
    assert add(e(1, 5), e(2, 7)) == G.identity
    assert add(G.identity, e(2, 9)) == e(2, 9)
    assert add(e(0, 6), e(0, 6)) == G.identity


def test_negate_examples():
    assert negate(e(1, 5)) == e(2, 7)
    assert negate(e(0, 6)) == e(0, 6)
    assert negate(G.identity) == G.identity


def test_order_examples():
    assert element_order(e(0, 6)) == 2
    assert element_order(e(0, 4)) == 3
    assert element_order(G.identity) == 1


def repeated_order(a):
    # oracle: add until we return to the identity
    k, x = 1, a
    while not x.is_identity:
        x, k = x + a, k + 1
    return k


def test_order_three_count():
    assert sum(1 for a in G.elements() if element_order(a) == 3) == 8
    # Z3 x Z24 has the same eight
    assert sum(1 for a in GroupSpec((3, 24)).elements() if a.order == 3) == 8


def test_parity_examples():
    assert is_even(e(2, 6))
    assert not is_even(e(1, 3))
    assert is_even(G.identity)


def test_parity_undefined_for_odd_last_modulus():
    with pytest.raises(GroupError):
        is_even(GroupSpec((4, 3)).element(1, 1))


def test_mismatched_specs_rejected():
    with pytest.raises(GroupError):
        add(e(1, 1), GroupSpec((3, 24)).element(1, 1))


def test_reduction_and_text():
    assert e(4, -1) == e(1, 11)
    assert str(e(4, -1)) == "(1,11)"
    assert G.parse_element("(1,11)") == e(1, 11)
    with pytest.raises(GroupError):
        G.parse_element("(1,2,3)")


def test_parse_group_forms():
    assert parse_group("Z3xZ36") == GroupSpec((3, 36))
    assert parse_group("3 36") == GroupSpec((3, 36))
    assert str(GroupSpec((3, 36))) == "Z3xZ36"
    with pytest.raises(GroupError):
        parse_group("Z3+Z4")
    with pytest.raises(GroupError):
        GroupSpec((1, 4))


def test_index_roundtrip():
    for i in range(G.order):
        assert G.index(G.from_index(i)) == i


@pytest.mark.parametrize("moduli", [(3, 12), (3, 24), (3, 36), (2, 4, 6), (5,), (3, 3, 12)])
def test_order_divides_group_order(moduli):
    spec = GroupSpec(moduli)
    for a in spec.elements():
        k = element_order(a)
        assert spec.order % k == 0
        assert k == repeated_order(a)


spec_st = st.sampled_from([GroupSpec((3, 12)), GroupSpec((3, 24)), GroupSpec((3, 36)), GroupSpec((2, 6))])


@st.composite
def pairs(draw):
    spec = draw(spec_st)
    res = lambda: tuple(draw(st.integers(0, m - 1)) for m in spec.moduli)
    return spec.element(*res()), spec.element(*res())


@given(pairs())
def test_inverse_and_parity_homomorphism(ab):
    a, b = ab
    assert (a + negate(a)).is_identity
    assert is_even(a + b) == (is_even(a) == is_even(b))
    assert a + b == b + a


@pytest.mark.parametrize("s", [1, 2, 3])
def test_half_odd(s):
    spec = GroupSpec.z3_z12s(s)
    assert sum(1 for a in spec.elements() if not a.is_even) == spec.order // 2
    assert spec.order == math.prod(spec.moduli) == 36 * s
