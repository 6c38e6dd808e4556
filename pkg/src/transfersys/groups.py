"""Subgroup lattices of finite Abelian groups ``Z/n1 x ... x Z/nk``.

Elements are tuples reduced mod each factor and are indexed in mixed
radix (last coordinate fastest). The self-duality sends a subgroup to its
annihilator under the pairing ``<x, y> = sum(x_i * y_i / n_i) mod 1`` of
the given presentation.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from math import lcm, prod
from typing import Sequence

import numpy as np

from .poset import Duality, Poset, bits, matrix_to_rows

DEFAULT_ORDER_BOUND = 256


class GroupError(ValueError):
    pass


@dataclass(frozen=True)
class AbelianGroup:
    factors: tuple[int, ...]

    @property
    def order(self) -> int:
        return prod(self.factors)

    def elements(self) -> list[tuple[int, ...]]:
        return list(product(*(range(n) for n in self.factors)))

    def index(self, x: Sequence[int]) -> int:
        k = 0
        for xi, n in zip(x, self.factors):
            k = k * n + xi % n
        return k

    def add(self, x, y) -> tuple[int, ...]:
        return tuple((a + b) % n for a, b, n in zip(x, y, self.factors))

    def pairing(self, x, y) -> int:
        """``<x, y>`` scaled by ``lcm(factors)``; zero iff the pairing is trivial."""
        big = lcm(*self.factors) if self.factors else 1
        return sum(a * b * (big // n) for a, b, n in zip(x, y, self.factors)) % big


def make_group(factors: Sequence[int]) -> AbelianGroup:
    factors = tuple(int(n) for n in factors)
    if any(n < 2 for n in factors):
        raise GroupError("every cyclic factor must have order at least 2")
    return AbelianGroup(factors)


@dataclass(frozen=True)
class Subgroup:
    members: tuple[tuple[int, ...], ...]

    @property
    def order(self) -> int:
        return len(self.members)

    def __contains__(self, x) -> bool:
        return tuple(x) in self.members


@dataclass(frozen=True)
class SubgroupLattice:
    group: AbelianGroup
    poset: Poset
    subgroups: tuple[Subgroup, ...]
    # member bitmask over element indices, per subgroup
    masks: tuple[int, ...]

    def find(self, members) -> int:
        mask = 0
        for x in members:
            mask |= 1 << self.group.index(x)
        return self.masks.index(mask)


def _enumerate_masks(g: AbelianGroup) -> list[int]:
    elems = g.elements()
    order = len(elems)
    add_index = [[g.index(g.add(x, y)) for y in elems] for x in elems]

    def extend(members: set[int], x: int) -> frozenset[int]:
        # <S, x> = union of cosets S + kx
        out = set(members)
        step = x
        while step not in members:
            out.update(add_index[step][s] for s in members)
            step = add_index[step][x]
        return frozenset(out)

    start = frozenset([0])
    seen = {start}
    frontier = [start]
    while frontier:
        nxt = []
        for s in frontier:
            for x in range(order):
                if x in s:
                    continue
                t = extend(s, x)
                if t not in seen:
                    seen.add(t)
                    nxt.append(t)
        frontier = nxt
    return [sum(1 << e for e in s) for s in seen]


def subgroup_lattice(g: AbelianGroup, max_order: int = DEFAULT_ORDER_BOUND) -> SubgroupLattice:
    """All subgroups of ``g`` ordered by inclusion.

    Subgroups are found by saturation from the trivial subgroup, adjoining
    one element at a time, and sorted by (order, member list).
    """
    if g.order > max_order:
        raise GroupError(f"group order {g.order} exceeds the bound {max_order}")
    elems = g.elements()
    masks = _enumerate_masks(g)
    keyed = sorted(
        masks, key=lambda m: (m.bit_count(), [elems[e] for e in bits(m)])
    )
    member = np.array(
        [[bool(m >> e & 1) for e in range(len(elems))] for m in keyed], dtype=np.int64
    ).reshape(len(keyed), len(elems))
    # H <= K iff H has no member outside K
    leq = (member @ (1 - member).T) == 0
    up = matrix_to_rows(leq)
    subgroups = tuple(Subgroup(tuple(elems[e] for e in bits(m))) for m in keyed)
    labels = tuple(_subgroup_label(s) for s in subgroups)
    poset = Poset(len(keyed), up, labels, ("subgroups", g))
    return SubgroupLattice(g, poset, subgroups, tuple(keyed))


def _subgroup_label(s: Subgroup) -> str:
    return "[" + ",".join("(" + ",".join(str(c) for c in x) + ")" for x in s.members) + "]"


def annihilator_masks(g: AbelianGroup) -> list[int]:
    """Per element ``x``, the bitmask of all ``y`` with trivial pairing ``<x, y>``."""
    elems = g.elements()
    out = []
    for x in elems:
        mask = 0
        for j, y in enumerate(elems):
            if g.pairing(x, y) == 0:
                mask |= 1 << j
        out.append(mask)
    return out


def annihilator_duality(lat: SubgroupLattice) -> Duality:
    """``H -> {y : <x, y> = 0 for all x in H}`` as a duality on ``Sub(G)``."""
    g = lat.group
    per_element = annihilator_masks(g)
    full = (1 << g.order) - 1
    where = {m: i for i, m in enumerate(lat.masks)}
    forward = []
    for m in lat.masks:
        ann = full
        for x in bits(m):
            ann &= per_element[x]
        if ann not in where:
            raise GroupError("annihilator is not among the enumerated subgroups")
        forward.append(where[ann])
    return Duality.from_forward(lat.poset, forward)


def abelian_groups_of_order(n: int) -> list[AbelianGroup]:
    """One representative per isomorphism class, as products of prime powers."""
    primes = []
    m, q = n, 2
    while q * q <= m:
        if m % q == 0:
            e = 0
            while m % q == 0:
                m //= q
                e += 1
            primes.append((q, e))
        q += 1
    if m > 1:
        primes.append((m, 1))

    def partitions(e, largest=None):
        if e == 0:
            yield ()
            return
        for first in range(min(e, largest or e), 0, -1):
            for rest in partitions(e - first, first):
                yield (first,) + rest

    choices = [[tuple(p**k for k in part) for part in partitions(e)] for p, e in primes]
    return [make_group([f for block in combo for f in block]) for combo in product(*choices)]
