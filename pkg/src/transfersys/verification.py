"""Named verification suites, one per reproducible claim.

Each suite returns a ``Report`` listing how many checks ran and any
counterexamples found. ``max_n`` bounds the family size where a suite
has a natural size parameter.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from .duality import bbpr_phi, phi, phi_inverse, slat_census, slat_profile
from .groups import abelian_groups_of_order, annihilator_duality, make_group, subgroup_lattice
from .noncrossing import (
    catalan,
    chi,
    enumerate_nc,
    narayana,
    narayana_census,
    narayana_expected,
    parse_blocks,
    psi,
    rank_census,
)
from .poset import (
    Poset,
    canonical_duality,
    find_isomorphism,
    make_boolean,
    make_chain,
    make_grid,
)
from .transfer import TransferSystem, enumerate_transfer_systems, validate
from .wfs import complement, downward_extension, factorize, is_wfs, left_class, right_class


@dataclass
class Report:
    suite: str
    checks: int = 0
    failed: int = 0
    # first few counterexamples only
    failures: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.failed == 0

    def expect(self, ok: bool, **detail) -> None:
        self.checks += 1
        if not ok:
            self.failed += 1
            if len(self.failures) < 20:
                self.failures.append(detail)

    def to_json(self) -> dict:
        return {
            "suite": self.suite,
            "passed": self.passed,
            "checks": self.checks,
            "failed": self.failed,
            "failures": self.failures,
        }


def refinement_matrix(systems: list[TransferSystem]) -> np.ndarray:
    """``out[i, j]`` is True iff ``systems[i]`` refines ``systems[j]``."""
    if not systems:
        return np.zeros((0, 0), dtype=bool)
    npairs = len(systems[0].poset.strict_pairs)
    a = np.array([[r.edges >> k & 1 for k in range(npairs)] for r in systems], dtype=np.int32)
    a = a.reshape(len(systems), npairs)
    return (a @ (1 - a).T) == 0


def wfs_lattices() -> list[tuple[str, Poset]]:
    """The lattices the weak-factorization and self-duality checks run on."""
    out = [(f"chain:{n}", make_chain(n)) for n in range(1, 6)]
    out += [(f"grid:{n}x1", make_grid(n, 1)) for n in range(1, 4)]
    out.append(("boolean:3", make_boolean(3)))
    out.append(("abelian:2,2", subgroup_lattice(make_group([2, 2])).poset))
    return out


def dual_lattices():
    """Lattices paired with their canonical or annihilator duality."""
    out = []
    for name, p in wfs_lattices() + [("grid:4x1", make_grid(4, 1))]:
        if name.startswith("abelian"):
            d = annihilator_duality(subgroup_lattice(make_group([2, 2])))
        else:
            d = canonical_duality(p)
        out.append((name, p, d))
    return out


# -- suites ----------------------------------------------------------------


def verify_catalan(max_n: int = 7) -> Report:
    rep = Report("catalan")
    for n in range(1, max_n + 1):
        count = sum(1 for _ in enumerate_transfer_systems(make_chain(n)))
        rep.expect(count == catalan(n + 1), n=n, count=count, expected=catalan(n + 1))
    return rep


def verify_narayana(max_n: int = 6) -> Report:
    rep = Report("narayana")
    for n in range(1, max_n + 1):
        got, want = narayana_census(n), narayana_expected(n)
        rep.expect(got == want, n=n, census=got, expected=want)
        rep.expect(sum(got.values()) == catalan(n + 1), n=n, total=sum(got.values()))
    for m in range(1, max_n + 2):
        got = rank_census(m)
        want = {k: narayana(m, k + 1) for k in range(m)}
        rep.expect(got == want, m=m, rank_census=got, expected=want)
    return rep


def verify_bijection(max_n: int = 6) -> Report:
    rep = Report("bijection")
    for n in range(1, max_n + 1):
        for r in enumerate_transfer_systems(make_chain(n)):
            rep.expect(chi(psi(r)) == r, n=n, system=[list(e) for e in r.pairs])
        for pi in enumerate_nc(n + 1):
            rep.expect(psi(chi(pi)) == pi, n=n, partition=str(pi))
    pi = parse_blocks("0,1,2|3,5|4")
    fig = validate(make_chain(5), [(0, 1), (0, 2), (1, 2), (3, 4), (3, 5)])
    rep.expect(chi(pi) == fig and psi(fig) == pi, example="0,1,2|3,5|4")
    return rep


def verify_wfs(max_n: int = 5) -> Report:
    rep = Report("wfs")
    for name, p in wfs_lattices():
        if name.startswith("chain:") and int(name[6:]) > max_n:
            continue
        for r in enumerate_transfer_systems(p):
            left = left_class(p, r)
            edges = [list(e) for e in r.pairs]
            rep.expect(is_wfs(p, left, r), poset=name, system=edges, check="is_wfs")
            rep.expect(
                left.pairs_mask == complement(p, downward_extension(p, r)).pairs_mask,
                poset=name, system=edges, check="left = DE^c",
            )
            rep.expect(right_class(p, left).pairs_mask == r.edges, poset=name, system=edges,
                       check="right(left(R)) = R")
            for x, y in p.strict_pairs:
                f = factorize(p, r, (x, y))
                ok = f.left in left and f.right in r and f.left[0] == x and f.right[1] == y
                rep.expect(ok, poset=name, system=edges, morphism=[x, y], check="factorize")
    return rep


def _check_duality_family(rep: Report, name: str, p: Poset, d) -> None:
    systems = list(enumerate_transfer_systems(p))
    pos = {r.edges: i for i, r in enumerate(systems)}
    images = []
    for r in systems:
        a = phi(p, d, r, "de")
        b = phi(p, d, r, "lifting")
        rep.expect(a == b, poset=name, system=[list(e) for e in r.pairs], check="routes agree")
        rep.expect(phi_inverse(p, d, a) == r, poset=name, system=[list(e) for e in r.pairs],
                   check="inverse")
        if d.is_involution:
            rep.expect(phi(p, d, a) == r, poset=name, system=[list(e) for e in r.pairs],
                       check="involution")
        images.append(pos[a.edges])
    m = refinement_matrix(systems)
    perm = np.array(images)
    reversed_ok = np.array_equal(m, m[np.ix_(perm, perm)].T)
    rep.expect(reversed_ok, poset=name, check="order reversing")


def verify_duality(max_n: int = 5) -> Report:
    rep = Report("duality")
    for name, p, d in dual_lattices():
        if name.startswith("chain:") and int(name[6:]) > max_n:
            continue
        _check_duality_family(rep, name, p, d)
    return rep


def verify_bbpr(max_n: int = 3) -> Report:
    rep = Report("bbpr")
    for n in range(1, max_n + 1):
        p = make_boolean(n)
        d = canonical_duality(p)
        for r in enumerate_transfer_systems(p):
            rep.expect(phi(p, d, r) == bbpr_phi(n, r), n=n, system=[list(e) for e in r.pairs])
    return rep


def verify_slats(max_n: int = 5) -> Report:
    rep = Report("slats")
    for n in range(1, max_n + 1):
        census = slat_census(n, bound=10**6)
        for k in range(-1, n + 1):
            rep.expect(census[k] == census[n - k - 1], n=n, k=k, census=census)
        p = make_grid(n, 1)
        d = canonical_duality(p)
        for r in enumerate_transfer_systems(p, bound=10**6):
            k = slat_profile(r).top_slat
            image = slat_profile(phi(p, d, r)).top_slat
            rep.expect(image == n - k - 1, n=n, edges=r.edges, top=k, image_top=image)
    return rep


ABELIAN_GRID_CASES = ((2, 3, 2, 1), (2, 3, 1, 1), (2, 5, 2, 1))


def verify_abelian(max_n: int = 64) -> Report:
    rep = Report("abelian")
    for p_, q_, a, b in ABELIAN_GRID_CASES:
        lat = subgroup_lattice(make_group([p_**a * q_**b]))
        iso = find_isomorphism(lat.poset, make_grid(a, b))
        rep.expect(iso is not None, group=f"C{p_**a * q_**b}", grid=f"{a}x{b}")
    for order in range(1, max_n + 1):
        for g in abelian_groups_of_order(order):
            lat = subgroup_lattice(g)
            d = annihilator_duality(lat)  # checks order reversal exhaustively
            sizes = [h.order for h in lat.subgroups]
            ok = all(sizes[d.forward[i]] * sizes[i] == g.order for i in range(len(sizes)))
            rep.expect(ok, group=list(g.factors), check="|H^perp| |H| = |G|")
    return rep


SUITES: dict[str, Callable[..., Report]] = {
    "catalan": verify_catalan,
    "narayana": verify_narayana,
    "bijection": verify_bijection,
    "wfs": verify_wfs,
    "duality": verify_duality,
    "bbpr": verify_bbpr,
    "slats": verify_slats,
    "abelian": verify_abelian,
}


def run_suite(name: str, max_n: Optional[int] = None) -> Report:
    fn = SUITES[name]
    return fn() if max_n is None else fn(max_n)
