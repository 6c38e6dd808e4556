from fractions import Fraction

import pytest

from transfersys.groups import (
    GroupError,
    abelian_groups_of_order,
    annihilator_duality,
    make_group,
    subgroup_lattice,
)
from transfersys.poset import find_isomorphism, make_chain, make_divisor_poset, make_grid


def divisors(n):
    return [d for d in range(1, n + 1) if n % d == 0]


def pairing_oracle(g, x, y):
    """The character pairing as an exact fraction modulo 1."""
    return sum(Fraction(a * b, n) for a, b, n in zip(x, y, g.factors)) % 1


def test_cyclic_of_prime_power_is_chain():
    lat = subgroup_lattice(make_group([4]))
    assert lat.poset == make_chain(2)
    assert [s.order for s in lat.subgroups] == [1, 2, 4]
    assert lat.subgroups[1].members == ((0,), (2,))


def test_klein_four():
    lat = subgroup_lattice(make_group([2, 2]))
    assert lat.poset.size == 5
    assert [s.order for s in lat.subgroups] == [1, 2, 2, 2, 4]
    assert lat.poset.labels[1] == "[(0,0),(0,1)]"
    assert lat.find([(0, 0), (1, 1)]) == 3
    w = lat.poset.witness
    assert w.meet[1][2] == 0 and w.join[1][2] == 4


def test_trivial_group():
    lat = subgroup_lattice(make_group([]))
    assert lat.poset.size == 1
    assert annihilator_duality(lat).forward == (0,)


@pytest.mark.parametrize("n", [6, 12, 18, 20, 30, 36])
def test_cyclic_subgroups_match_divisors(n):
    lat = subgroup_lattice(make_group([n]))
    assert sorted(s.order for s in lat.subgroups) == divisors(n)
    iso = find_isomorphism(lat.poset, make_divisor_poset(n))
    assert iso is not None


def test_isomorphic_presentations():
    a = subgroup_lattice(make_group([12])).poset
    b = subgroup_lattice(make_group([4, 3])).poset
    assert find_isomorphism(a, b) is not None
    assert find_isomorphism(a, make_grid(2, 1)) is not None
    assert find_isomorphism(subgroup_lattice(make_group([6])).poset, make_grid(1, 1)) is not None


@pytest.mark.parametrize("p", [2, 3, 5])
def test_elementary_abelian_rank_two(p):
    # p + 1 lines plus the two trivial ends
    assert subgroup_lattice(make_group([p, p])).poset.size == p + 3


def test_order_bound():
    with pytest.raises(GroupError):
        subgroup_lattice(make_group([16, 32]))
    assert subgroup_lattice(make_group([2, 2, 2]), max_order=8).poset.size == 16
    with pytest.raises(GroupError):
        subgroup_lattice(make_group([2, 2, 2]), max_order=7)
    with pytest.raises(GroupError):
        make_group([1])


def test_pairing_matches_fraction_oracle():
    g = make_group([2, 4, 6])
    big = 12
    for x in g.elements():
        for y in g.elements():
            assert Fraction(g.pairing(x, y), big) == pairing_oracle(g, x, y)


def test_annihilator_examples():
    lat = subgroup_lattice(make_group([2, 2]))
    d = annihilator_duality(lat)
    assert d.forward == (4, 2, 1, 3, 0)
    lat4 = subgroup_lattice(make_group([4]))
    assert annihilator_duality(lat4).forward == (2, 1, 0)


@pytest.mark.parametrize("factors", [[6], [2, 2], [2, 4], [3, 3], [2, 2, 2], [2, 6], [4, 4]])
def test_annihilator_matches_set_oracle(factors):
    g = make_group(factors)
    lat = subgroup_lattice(g)
    d = annihilator_duality(lat)
    elems = g.elements()
    for i, h in enumerate(lat.subgroups):
        ann = {y for y in elems if all(pairing_oracle(g, x, y) == 0 for x in h.members)}
        assert set(lat.subgroups[d.forward[i]].members) == ann
        assert len(ann) * h.order == g.order
    assert all(d.forward[d.forward[i]] == i for i in range(lat.poset.size))


def test_abelian_groups_of_order():
    assert [g.factors for g in abelian_groups_of_order(8)] == [(8,), (4, 2), (2, 2, 2)]
    assert len(abelian_groups_of_order(1)) == 1
    # number of partitions multiplies across primes: 36 = 2^2 3^2 gives 2*2
    assert len(abelian_groups_of_order(36)) == 4
    assert len(abelian_groups_of_order(64)) == 11
    for n in range(1, 40):
        assert all(g.order == n for g in abelian_groups_of_order(n))
