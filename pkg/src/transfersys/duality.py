"""The self-duality of the transfer-system lattice of a self-dual lattice.

Given a duality ``d`` of a lattice ``P``, ``phi`` sends a transfer system
``R`` to the image under ``d`` of the reversed left lifting class of ``R``.
Two routes are implemented: through the complement of the downward
extension (``method="de"``) and through the lifting class directly
(``method="lifting"``). The recursive facet construction on Boolean
lattices lives here too, as does the slat statistic on ``[n] x [1]``.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Optional

from .poset import Duality, DualityError, Poset, bits, make_boolean, make_grid
from .transfer import (
    TransferSystem,
    TransferSystemError,
    check_axioms,
    complete,
    enumerate_transfer_systems,
    trivial,
)
from .wfs import downward_extension, left_class


class InternalConsistencyError(AssertionError):
    """A result that theory guarantees failed its check; indicates a bug."""


METHODS = ("de", "lifting")


def _reverse_through(p: Poset, mask: int, mapping) -> int:
    # (a, b) -> (mapping[b], mapping[a])
    sp, index = p.strict_pairs, p.pair_index
    out = 0
    for k in bits(mask):
        a, b = sp[k]
        out |= 1 << index[(mapping[b], mapping[a])]
    return out


def _check_inputs(p: Poset, d: Duality, r: TransferSystem) -> None:
    if d.poset != p:
        raise DualityError("duality belongs to a different poset")
    d.check()
    if r.poset != p:
        raise TransferSystemError("transfer system belongs to a different poset")
    if p.witness is None:
        raise TransferSystemError("phi needs a lattice")


def _apply(p: Poset, mapping, r: TransferSystem, method: str) -> TransferSystem:
    full = (1 << len(p.strict_pairs)) - 1
    if method == "de":
        de = downward_extension(p, r).pairs_mask
        mask = full & ~_reverse_through(p, de, mapping)
    elif method == "lifting":
        mask = _reverse_through(p, left_class(p, r).pairs_mask, mapping)
    else:
        raise ValueError(f"unknown method {method!r}")
    try:
        check_axioms(p, mask)
    except TransferSystemError as exc:
        raise InternalConsistencyError(f"phi produced an invalid transfer system: {exc}") from exc
    return TransferSystem(p, mask)


def phi(p: Poset, d: Duality, r: TransferSystem, method: str = "de") -> TransferSystem:
    _check_inputs(p, d, r)
    return _apply(p, d.forward, r, method)


def phi_inverse(p: Poset, d: Duality, r: TransferSystem, method: str = "de") -> TransferSystem:
    _check_inputs(p, d, r)
    return _apply(p, d.inverse, r, method)


def phi_checked(p: Poset, d: Duality, r: TransferSystem) -> TransferSystem:
    """``phi`` by both routes; raises if they disagree."""
    a = phi(p, d, r, "de")
    b = phi(p, d, r, "lifting")
    if a != b:
        raise InternalConsistencyError(f"phi routes disagree on {r}: {a} vs {b}")
    return a


# -- Boolean lattices: facets and the recursive construction ------------


class FacetOverlapError(InternalConsistencyError):
    pass


def boolean_rank(p: Poset) -> int:
    """``n`` if ``p`` is (structurally) the Boolean lattice ``B_n``; else raise."""
    n = p.size.bit_length() - 1
    if p.size != 1 << n or p != make_boolean(n):
        raise TransferSystemError("poset is not a Boolean lattice built by make_boolean")
    return n


def _drop_bit(m: int, i: int) -> int:
    low = m & ((1 << i) - 1)
    return low | (m >> (i + 1)) << i


def _insert_bit(m: int, i: int, side: int) -> int:
    low = m & ((1 << i) - 1)
    return low | side << i | (m >> i) << (i + 1)


def facet_restrict(r: TransferSystem, axis: int, side: int) -> TransferSystem:
    """Restrict ``r`` on ``B_n`` to the facet where coordinate ``axis`` equals ``side``.

    ``axis`` counts from 1; ``side`` is 0 for the bottom facet ``B_axis``
    and 1 for the top facet ``T_axis``. The facet is identified with
    ``B_{n-1}`` by dropping that coordinate.
    """
    n = boolean_rank(r.poset)
    if not 1 <= axis <= n:
        raise ValueError(f"axis must lie in 1..{n}")
    if side not in (0, 1):
        raise ValueError("side must be 0 (bottom) or 1 (top)")
    i = axis - 1
    sub = make_boolean(n - 1)
    index = sub.pair_index
    mask = 0
    for a, b in r.pairs:
        if (a >> i & 1) == side and (b >> i & 1) == side:
            mask |= 1 << index[(_drop_bit(a, i), _drop_bit(b, i))]
    return TransferSystem(sub, mask)


def bbpr_phi(n: int, r: TransferSystem) -> TransferSystem:
    """The facet-recursive involution on ``Trans(B_n)``.

    Each facet of the output is the image (one dimension down) of the
    opposite facet of ``r``; the long diagonal is added iff ``r`` has no
    nontrivial edge into the top element. Facets overlap, and every
    overlapping assignment is cross-checked.
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    p = make_boolean(n)
    if r.poset != p:
        raise TransferSystemError(f"transfer system is not on B_{n}")
    if n == 1:
        return complete(p) if r.edges == 0 else trivial(p)

    index = p.pair_index
    verdict: dict[int, bool] = {}
    for axis in range(1, n + 1):
        i = axis - 1
        for side in (0, 1):
            image = bbpr_phi(n - 1, facet_restrict(r, axis, 1 - side))
            sub = image.poset
            for k, (a, b) in enumerate(sub.strict_pairs):
                full = index[(_insert_bit(a, i, side), _insert_bit(b, i, side))]
                value = bool(image.edges >> k & 1)
                seen = verdict.setdefault(full, value)
                if seen != value:
                    raise FacetOverlapError(
                        f"facets disagree on {p.strict_pairs[full]} (axis {axis}, side {side})"
                    )
    top = p.size - 1
    diagonal = index[(0, top)]
    if diagonal in verdict:
        raise FacetOverlapError("long diagonal should not lie in any facet")
    verdict[diagonal] = not any(b == top for _, b in r.pairs)
    if len(verdict) != len(p.strict_pairs):
        raise FacetOverlapError("facets and diagonal do not cover every pair")
    mask = 0
    for k, v in verdict.items():
        if v:
            mask |= 1 << k
    return TransferSystem(p, mask)


# -- slats on [n] x [1] ------------------------------------------------


@dataclass(frozen=True)
class SlatProfile:
    n: int
    top_slat: int

    @property
    def count(self) -> int:
        return self.top_slat + 1


def grid_length(p: Poset) -> int:
    """``n`` if ``p`` is the grid ``[n] x [1]``; else raise."""
    n = p.size // 2 - 1
    if n < 0 or p.size % 2 or p != make_grid(n, 1):
        raise TransferSystemError("poset is not a grid [n] x [1]")
    return n


def slat(k: int) -> tuple[int, int]:
    """The k-th slat ``(k,0) -> (k,1)`` as element indices of ``[n] x [1]``."""
    return (2 * k, 2 * k + 1)


def slat_profile(r: TransferSystem) -> SlatProfile:
    n = grid_length(r.poset)
    present = [slat(k) in r for k in range(n + 1)]
    top = max((k for k in range(n + 1) if present[k]), default=-1)
    if not all(present[: top + 1]):
        raise InternalConsistencyError("slats of a transfer system must be downward closed")
    return SlatProfile(n, top)


def slat_census(n: int, bound: Optional[int] = None) -> dict[int, int]:
    """Number of transfer systems on ``[n] x [1]`` with each top slat ``-1..n``."""
    p = make_grid(n, 1)
    tally = Counter(slat_profile(r).top_slat for r in enumerate_transfer_systems(p, bound))
    return {k: tally.get(k, 0) for k in range(-1, n + 1)}
