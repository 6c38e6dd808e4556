"""Lifting properties and weak factorization systems on poset categories.

In a poset every square commutes and there is at most one candidate lift,
so ``(a,b)`` lifts against ``(x,y)`` exactly when ``a <= x`` and ``b <= y``
imply ``b <= x``. When no square exists the lifting condition holds
vacuously.

Retract closure is not computed anywhere: the only retract of a morphism
in a poset is itself.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Optional

from .poset import Poset, bits
from .transfer import TransferSystem, TransferSystemError, edge_mask


class WFSError(ValueError):
    pass


@dataclass(frozen=True)
class MorphismClass:
    """A set of strict comparable pairs; identities are implicit."""

    poset: Poset
    pairs_mask: int

    @classmethod
    def of(cls, p: Poset, pairs: Iterable) -> "MorphismClass":
        return cls(p, edge_mask(p, pairs))

    @classmethod
    def from_ts(cls, r: TransferSystem) -> "MorphismClass":
        return cls(r.poset, r.edges)

    @property
    def pairs(self) -> list[tuple[int, int]]:
        sp = self.poset.strict_pairs
        return [sp[k] for k in bits(self.pairs_mask)]

    def __contains__(self, pair) -> bool:
        a, b = pair
        if a == b:
            return True
        k = self.poset.pair_index.get((a, b))
        return k is not None and bool(self.pairs_mask >> k & 1)

    def __len__(self):
        return self.pairs_mask.bit_count()

    def __le__(self, other: "MorphismClass") -> bool:
        return self.pairs_mask & ~other.pairs_mask == 0


def _as_mask(m) -> int:
    if isinstance(m, MorphismClass):
        return m.pairs_mask
    if isinstance(m, TransferSystem):
        return m.edges
    return m


@dataclass(frozen=True)
class Factorization:
    mid: int
    left: tuple[int, int]
    right: tuple[int, int]


def has_lift(p: Poset, i: tuple[int, int], r: tuple[int, int]) -> bool:
    a, b = i
    x, y = r
    if not p.leq(a, b) or not p.leq(x, y):
        raise WFSError(f"{i} or {r} is not a morphism")
    if p.leq(a, x) and p.leq(b, y):
        return p.leq(b, x)
    return True


@lru_cache(maxsize=64)
def _lift_table(p: Poset) -> tuple[int, ...]:
    # row k: strict pairs j such that pair k lifts against pair j
    sp = p.strict_pairs
    rows = []
    for a, b in sp:
        row = 0
        for j, (x, y) in enumerate(sp):
            if not (p.leq(a, x) and p.leq(b, y)) or p.leq(b, x):
                row |= 1 << j
        rows.append(row)
    return tuple(rows)


def left_class(p: Poset, m) -> MorphismClass:
    """Morphisms with the left lifting property against every member of ``m``."""
    target = _as_mask(m)
    rows = _lift_table(p)
    mask = 0
    for k, row in enumerate(rows):
        if target & ~row == 0:
            mask |= 1 << k
    return MorphismClass(p, mask)


def right_class(p: Poset, m) -> MorphismClass:
    """Morphisms with the right lifting property against every member of ``m``."""
    source = _as_mask(m)
    rows = _lift_table(p)
    mask = 0
    for j in range(len(rows)):
        if all(rows[k] >> j & 1 for k in bits(source)):
            mask |= 1 << j
    return MorphismClass(p, mask)


def downward_extension(p: Poset, r) -> MorphismClass:
    """Pairs ``z->y`` with some ``x`` such that ``z <= x < y`` and ``x->y`` in ``r``."""
    sp, index = p.strict_pairs, p.pair_index
    mask = 0
    for k in bits(_as_mask(r)):
        x, y = sp[k]
        for z in bits(p.down[x]):
            mask |= 1 << index[(z, y)]
    return MorphismClass(p, mask)


def complement(p: Poset, m) -> MorphismClass:
    full = (1 << len(p.strict_pairs)) - 1
    return MorphismClass(p, full & ~_as_mask(m))


def factorize(p: Poset, r: TransferSystem, f: tuple[int, int]) -> Factorization:
    """Factor ``f = (x, y)`` as a left-class map followed by a map of ``r``.

    The middle object is the meet of every ``m`` in ``[x, y]`` with
    ``m -> y`` in ``r``; that set contains ``y`` and is closed under meets.
    """
    w = p.witness
    if w is None:
        raise WFSError("factorization needs a lattice")
    x, y = f
    if not p.leq(x, y):
        raise WFSError(f"{f} is not a morphism")
    mid = y
    for m in bits(p.up[x] & p.down[y]):
        if (m, y) in r:
            mid = w.meet[mid][m]
    return Factorization(mid, (x, mid), (mid, y))


def factorization_counterexample(p: Poset, left, right) -> Optional[tuple[int, int]]:
    """A morphism admitting no factorization ``left`` then ``right``, if any."""
    lm, rm = _as_mask(left), _as_mask(right)
    index = p.pair_index

    def member(mask, a, b):
        return a == b or bool(mask >> index[(a, b)] & 1)

    for x, y in p.strict_pairs:
        if not any(member(lm, x, m) and member(rm, m, y) for m in bits(p.up[x] & p.down[y])):
            return (x, y)
    return None


def wfs_failure(p: Poset, left, right) -> Optional[str]:
    """Reason ``(left, right)`` is not a weak factorization system, or ``None``."""
    lm, rm = _as_mask(left), _as_mask(right)
    bad = factorization_counterexample(p, lm, rm)
    if bad is not None:
        return f"no factorization of {bad[0]}->{bad[1]}"
    if left_class(p, rm).pairs_mask != lm:
        return "left class is not the left lifting class of the right class"
    if right_class(p, lm).pairs_mask != rm:
        return "right class is not the right lifting class of the left class"
    return None


def is_wfs(p: Poset, left, right) -> bool:
    return wfs_failure(p, left, right) is None


def wfs_of(r: TransferSystem) -> tuple[MorphismClass, MorphismClass]:
    """The unique weak factorization system with right class ``r``."""
    if r.poset.witness is None:
        raise TransferSystemError("transfer system / WFS correspondence needs a lattice")
    return left_class(r.poset, r), MorphismClass.from_ts(r)
