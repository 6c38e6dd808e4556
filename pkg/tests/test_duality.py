import json
from pathlib import Path

import pytest

from transfersys.duality import (
    InternalConsistencyError,
    bbpr_phi,
    boolean_rank,
    facet_restrict,
    phi,
    phi_checked,
    phi_inverse,
    slat,
    slat_census,
    slat_profile,
)
from transfersys.groups import annihilator_duality, make_group, subgroup_lattice
from transfersys.poset import canonical_duality, make_boolean, make_chain, make_grid
from transfersys.transfer import (
    TransferSystemError,
    complete,
    enumerate_transfer_systems,
    generate,
    refines,
    trivial,
    validate,
)

DATA = Path(__file__).parent / "data"


def phi_oracle(p, forward, r):
    """Complement of the reversed image of the downward extension, from sets."""
    de = {(z, y) for x, y in r.pairs for z in range(p.size) if p.leq(z, x)}
    image = {(forward[y], forward[z]) for z, y in de}
    return {e for e in p.strict_pairs if e not in image}


def test_phi_on_chain_one():
    p = make_chain(1)
    d = canonical_duality(p)
    assert phi(p, d, trivial(p)) == complete(p)
    assert phi(p, d, complete(p)) == trivial(p)


def test_phi_example_on_chain_two():
    p = make_chain(2)
    d = canonical_duality(p)
    r = validate(p, [(1, 2)])
    # DE = {0->2, 1->2} reverses to {0->2, 0->1}, leaving only 1->2
    assert phi(p, d, r).pairs == [(1, 2)]
    assert phi(p, d, validate(p, [(0, 1)])).pairs == [(0, 1), (0, 2)]


@pytest.mark.parametrize(
    "p", [make_chain(3), make_boolean(2), make_boolean(3), make_grid(2, 1)], ids=lambda p: f"size{p.size}"
)
def test_phi_matches_set_oracle(p):
    d = canonical_duality(p)
    for r in enumerate_transfer_systems(p):
        assert set(phi(p, d, r).pairs) == phi_oracle(p, d.forward, r)


def test_both_routes_agree():
    p = make_grid(2, 1)
    d = canonical_duality(p)
    for r in enumerate_transfer_systems(p):
        assert phi(p, d, r, "de") == phi(p, d, r, "lifting") == phi_checked(p, d, r)
    with pytest.raises(ValueError):
        phi(p, d, trivial(p), "bogus")


@pytest.mark.parametrize("n", range(1, 5))
def test_phi_is_order_reversing_involution_on_grids(n):
    p = make_grid(n, 1)
    d = canonical_duality(p)
    systems = list(enumerate_transfer_systems(p))
    image = {r.edges: phi(p, d, r) for r in systems}
    assert len({s.edges for s in image.values()}) == len(systems)
    for r in systems:
        assert phi(p, d, image[r.edges]) == r
    if n <= 2:
        for r1 in systems:
            for r2 in systems:
                assert refines(r1, r2) == refines(image[r2.edges], image[r1.edges])


def test_phi_with_annihilator_duality():
    lat = subgroup_lattice(make_group([2, 2]))
    d = annihilator_duality(lat)
    p = lat.poset
    for r in enumerate_transfer_systems(p):
        out = phi(p, d, r)
        assert phi_inverse(p, d, out) == r
        assert set(out.pairs) == phi_oracle(p, d.forward, r)


def test_phi_rejects_foreign_system():
    p = make_chain(2)
    with pytest.raises(TransferSystemError):
        phi(p, canonical_duality(p), trivial(make_chain(3)))


def test_boolean_rank():
    assert boolean_rank(make_boolean(3)) == 3
    with pytest.raises(TransferSystemError):
        boolean_rank(make_chain(3))


def test_facet_restrict():
    p = make_boolean(2)
    r = validate(p, [(0, 1), (2, 3)])
    # axis 1 is bit 0: bottom facet {00, 10}, top facet {01, 11}
    assert facet_restrict(r, 1, 0) == trivial(make_boolean(1))
    assert facet_restrict(r, 1, 1) == trivial(make_boolean(1))
    assert facet_restrict(r, 2, 0) == complete(make_boolean(1))
    assert facet_restrict(r, 2, 1) == complete(make_boolean(1))
    with pytest.raises(ValueError):
        facet_restrict(r, 3, 0)


def test_bbpr_small_cases():
    b1 = make_boolean(1)
    assert bbpr_phi(1, trivial(b1)) == complete(b1)
    b2 = make_boolean(2)
    assert bbpr_phi(2, trivial(b2)) == complete(b2)
    assert bbpr_phi(2, complete(b2)) == trivial(b2)


def test_golden_pair_on_cube():
    doc = json.loads((DATA / "boolean3_golden.json").read_text())
    p = make_boolean(3)
    r = generate(p, [tuple(e) for e in doc["generators"]])
    assert [list(e) for e in r.pairs] == doc["input"]
    expected = validate(p, [tuple(e) for e in doc["output"]])
    assert bbpr_phi(3, r) == expected
    assert phi(p, canonical_duality(p), r) == expected
    # r has an edge into the top, so the long diagonal is left out
    assert (0, 7) not in bbpr_phi(3, r)
    top_face = facet_restrict(bbpr_phi(3, r), 3, 1)
    assert top_face == bbpr_phi(2, facet_restrict(r, 3, 0))


def test_golden_slat_pair_on_cube():
    p = make_boolean(3)
    r = validate(p, [(0, 1), (2, 3), (4, 5), (6, 7)])
    out = bbpr_phi(3, r)
    assert facet_restrict(out, 1, 0) == complete(make_boolean(2))
    assert facet_restrict(out, 1, 1) == complete(make_boolean(2))
    assert len(out) == 10 and (0, 7) not in out


def test_long_diagonal_rule():
    p = make_boolean(3)
    for r in enumerate_transfer_systems(p):
        into_top = any(b == 7 for _, b in r.pairs)
        assert ((0, 7) in bbpr_phi(3, r)) == (not into_top)


def test_slat_examples():
    assert slat(0) == (0, 1) and slat(2) == (4, 5)
    p = make_grid(3, 1)
    assert slat_profile(trivial(p)).top_slat == -1
    assert slat_profile(complete(p)).count == 4
    r = generate(p, [slat(2)])
    assert r.pairs == [slat(0), slat(1), slat(2)]
    assert slat_profile(r).top_slat == 2
    out = phi(p, canonical_duality(p), r)
    assert slat_profile(out).top_slat == 0


def test_slat_census_examples():
    assert slat_census(1) == {-1: 3, 0: 4, 1: 3}
    assert sum(slat_census(2).values()) == 68
    census = slat_census(3)
    assert sum(census.values()) == 544
    assert all(census[k] == census[3 - k - 1] for k in range(-1, 4))


def test_slat_profile_requires_grid():
    with pytest.raises(TransferSystemError):
        slat_profile(trivial(make_chain(3)))


def test_internal_error_type():
    assert issubclass(InternalConsistencyError, AssertionError)
