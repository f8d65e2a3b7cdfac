"""Nets over s^2 points and their correspondence with MOLS."""

from __future__ import annotations

import pytest
from hypothesis import given, settings, strategies as st

from mubkit.latin import MolsSet, complete_mols_prime_power, cyclic_square
from mubkit.net import (
    IncidenceVector,
    Net,
    load_net,
    mols_from_net,
    net_from_dict,
    net_from_mols,
    net_to_dict,
    save_net,
    verify_net,
)
from mubkit.serial import ParseError

PRIME_POWERS = [2, 3, 4, 5, 7, 9]


def vec(bits: str) -> IncidenceVector:
    return IncidenceVector.from_bits01(bits)


# -- incidence vectors

def test_incidence_vector_basics():
    v = IncidenceVector.from_support(4, [0, 2])
    assert v.weight == 2
    assert v.support == (0, 2)
    assert v.to_bits01() == "1010"
    assert vec("1010") == v
    assert v.dot(vec("1100")) == 1
    assert v.dot(vec("0101")) == 0


def test_incidence_vector_validation():
    with pytest.raises(ValueError):
        IncidenceVector.from_support(4, [4])
    with pytest.raises(ValueError):
        IncidenceVector.from_bits01("10x0")
    with pytest.raises(ValueError):
        vec("10").dot(vec("100"))


@given(st.text(alphabet="01", min_size=0, max_size=40))
def test_bits01_round_trip(text):
    assert vec(text).to_bits01() == text


@given(st.text(alphabet="01", min_size=1, max_size=30),
       st.text(alphabet="01", min_size=1, max_size=30))
def test_dot_is_popcount_of_common_support(a, b):
    n = max(len(a), len(b))
    a, b = a.ljust(n, "0"), b.ljust(n, "0")
    expect = sum(1 for x, y in zip(a, b) if x == y == "1")
    assert vec(a).dot(vec(b)) == expect


# -- the reference (3,2)-net over 4 points

REFERENCE_32_BLOCKS = (
    ("1100", "0011"),  # rows of the 2x2 grid
    ("1010", "0101"),  # columns
    ("1001", "0110"),  # level sets of the order-2 square
)


def test_net_of_order_2_square_matches_reference_table():
    m = MolsSet(2, (cyclic_square(2),))
    net = net_from_mols(m)
    assert net.s == 2 and net.k == 3 and net.d == 4
    got = tuple(tuple(v.to_bits01() for v in block) for block in net.blocks)
    assert got == REFERENCE_32_BLOCKS


def test_reference_net_serializes_bit_for_bit():
    net = net_from_mols(MolsSet(2, (cyclic_square(2),)))
    assert net_to_dict(net) == {
        "s": 2,
        "k": 3,
        "blocks": [list(b) for b in REFERENCE_32_BLOCKS],
    }


# -- verification

@pytest.mark.parametrize("q", PRIME_POWERS)
def test_nets_from_complete_mols_verify(q):
    net = net_from_mols(complete_mols_prime_power(q))
    assert net.k == q + 1
    report = verify_net(net)
    assert report.ok and report.violations == ()


def test_weight_violation_is_reported():
    blocks = (
        (vec("1000"), vec("0011")),  # first vector has weight 1, not 2
        (vec("1010"), vec("0101")),
    )
    report = verify_net(Net(2, blocks))
    kinds = {v.kind for v in report.violations}
    assert not report.ok
    assert "weight" in kinds
    first = [v for v in report.violations if v.kind == "weight"][0]
    assert (first.block, first.index) == (0, 0)


def test_within_block_violation_is_reported():
    blocks = (
        (vec("1100"), vec("0110")),  # share point 1
        (vec("1010"), vec("0101")),
    )
    report = verify_net(Net(2, blocks))
    assert any(v.kind == "within-block" and v.block == 0 and v.block2 == 0
               for v in report.violations)


def test_cross_block_violation_is_reported():
    blocks = (
        (vec("1100"), vec("0011")),
        (vec("1100"), vec("0011")),  # meets block 0 in 2 points / 0 points
    )
    report = verify_net(Net(2, blocks))
    cross = [v for v in report.violations if v.kind == "cross-block"]
    assert cross and all(v.block == 0 and v.block2 == 1 for v in cross)


def test_violations_are_sorted():
    blocks = (
        (vec("1100"), vec("0110")),
        (vec("1100"), vec("0011")),
    )
    report = verify_net(Net(2, blocks))
    keys = [v.sort_key() for v in report.violations]
    assert keys == sorted(keys)


def test_net_shape_validation():
    with pytest.raises(ValueError, match="bound"):
        Net(1, ((vec("1"),), (vec("1"),), (vec("1"),)))  # k > s + 1
    with pytest.raises(ValueError):
        Net(2, ((vec("1100"),),))  # block of wrong size
    with pytest.raises(ValueError):
        Net(2, ((vec("110"), vec("001")),))  # wrong vector length


# -- MOLS <-> net round trips

@pytest.mark.parametrize("q", PRIME_POWERS)
def test_mols_round_trip_through_net(q):
    m = complete_mols_prime_power(q)
    assert mols_from_net(net_from_mols(m)) == m


def test_mols_from_net_needs_two_blocks():
    net = net_from_mols(MolsSet(2, (cyclic_square(2),)))
    with pytest.raises(ValueError, match="TooFewBlocks"):
        mols_from_net(Net(2, net.blocks[:1]))


def test_mols_from_net_rejects_unverified_input():
    blocks = (
        (vec("1100"), vec("0110")),
        (vec("1010"), vec("0101")),
    )
    with pytest.raises(ValueError, match="Inconsistent"):
        mols_from_net(Net(2, blocks))


def test_two_block_net_yields_empty_mols():
    net = net_from_mols(complete_mols_prime_power(3))
    m = mols_from_net(Net(3, net.blocks[:2]))
    assert (m.order, m.width) == (3, 0)


# -- serialization

def test_json_round_trip(tmp_path):
    net = net_from_mols(complete_mols_prime_power(4))
    assert net_from_dict(net_to_dict(net)) == net
    path = tmp_path / "net4.json"
    save_net(net, path)
    assert load_net(path) == net


def test_parse_rejects_malformed_documents():
    good = net_to_dict(net_from_mols(MolsSet(2, (cyclic_square(2),))))
    for bad in [
        {},
        {**good, "extra": 0},
        {**good, "k": 2},                     # k disagrees with blocks
        {**good, "s": True},
        {**good, "blocks": [["1100", "0011"]]},
        {"s": 2, "k": 1, "blocks": [["1100", "001"]]},   # ragged bits
        {"s": 2, "k": 1, "blocks": [["1100", "0a11"]]},  # bad character
        {"s": 1, "k": 3, "blocks": [["1"], ["1"], ["1"]]},  # k > s + 1
    ]:
        with pytest.raises(ParseError):
            net_from_dict(bad)


@settings(max_examples=20)
@given(st.sampled_from(PRIME_POWERS), st.data())
def test_dropping_blocks_keeps_a_net_valid(q, data):
    full = net_from_mols(complete_mols_prime_power(q))
    keep = data.draw(st.integers(min_value=1, max_value=full.k))
    report = verify_net(Net(q, full.blocks[:keep]))
    assert report.ok
