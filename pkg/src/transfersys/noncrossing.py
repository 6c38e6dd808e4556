"""Noncrossing partitions and their bijection with transfer systems on a chain.

A transfer system ``R`` on ``[n]`` goes to the partition of ``{0..n}``
generated by its maximal edges (``psi``); a noncrossing partition goes
back to the transfer system generated by joining every element of a
block to the block maximum (``chi``).
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from itertools import combinations
from math import comb
from typing import Iterator, Optional, Sequence

from .poset import make_chain
from .transfer import (
    TransferSystem,
    TransferSystemError,
    edge_mask,
    enumerate_transfer_systems,
    generate,
    maximal_edges,
    min_generating_number,
    restriction_closure,
    transitive_closure,
)

DEFAULT_NC_BOUND = 12


class PartitionError(ValueError):
    pass


class InternalConsistencyError(AssertionError):
    pass


@dataclass(frozen=True)
class NoncrossingPartition:
    """Set partition of ``{0..n_plus_1-1}``; blocks sorted, ordered by minimum."""

    n_plus_1: int
    blocks: tuple[tuple[int, ...], ...]

    @classmethod
    def from_blocks(cls, blocks: Sequence[Sequence[int]], n_plus_1: Optional[int] = None):
        canon = sorted((tuple(sorted(int(x) for x in b)) for b in blocks if len(b)), key=lambda b: b[0])
        flat = sorted(x for b in canon for x in b)
        size = len(flat) if n_plus_1 is None else n_plus_1
        if flat != list(range(size)):
            raise PartitionError(f"blocks do not partition {{0..{size - 1}}}")
        return cls(size, tuple(canon))

    @property
    def n(self) -> int:
        return self.n_plus_1 - 1

    def block_of(self) -> list[int]:
        where = [0] * self.n_plus_1
        for k, b in enumerate(self.blocks):
            for x in b:
                where[x] = k
        return where

    def __str__(self):
        return "|".join(",".join(str(x) for x in b) for b in self.blocks)


def parse_blocks(text: str) -> NoncrossingPartition:
    """Parse ``"0,1,2|3,5|4"``."""
    try:
        blocks = [[int(x) for x in part.split(",")] for part in text.split("|")]
    except ValueError as exc:
        raise PartitionError(f"cannot parse partition {text!r}") from exc
    return NoncrossingPartition.from_blocks(blocks)


def crossing(pi: NoncrossingPartition) -> Optional[tuple[int, int, int, int]]:
    """A quadruple ``a<b<c<d`` with ``a~c``, ``b~d`` in different blocks, if any."""
    where = pi.block_of()
    for a, b, c, d in combinations(range(pi.n_plus_1), 4):
        if where[a] == where[c] and where[b] == where[d] and where[a] != where[b]:
            return (a, b, c, d)
    return None


def is_noncrossing(pi: NoncrossingPartition) -> bool:
    return crossing(pi) is None


def _nc_blocks(elems: tuple[int, ...]) -> Iterator[list[tuple[int, ...]]]:
    # the block of the first element splits the rest into independent gaps
    if not elems:
        yield []
        return
    first, rest = elems[0], elems[1:]
    for size in range(len(rest) + 1):
        for chosen in combinations(range(len(rest)), size):
            block = (first,) + tuple(rest[i] for i in chosen)
            cuts = (-1,) + chosen + (len(rest),)
            gaps = [rest[cuts[i] + 1 : cuts[i + 1]] for i in range(len(cuts) - 1)]
            yield from _combine(block, gaps)


def _combine(block, gaps):
    if not gaps:
        yield [block]
        return
    for head in _nc_blocks(gaps[0]):
        for tail in _combine(block, gaps[1:]):
            yield head + tail


def enumerate_nc(m: int, bound: int = DEFAULT_NC_BOUND) -> Iterator[NoncrossingPartition]:
    """All noncrossing partitions of ``{0..m-1}``, in a fixed order."""
    if m > bound:
        raise PartitionError(f"ground set size {m} exceeds the bound {bound}")
    if m < 0:
        raise PartitionError("ground set size must be nonnegative")
    for blocks in _nc_blocks(tuple(range(m))):
        yield NoncrossingPartition.from_blocks(blocks, m)


def j_edges(pi: NoncrossingPartition) -> list[tuple[int, int]]:
    """Each non-maximal element of a block joined to the block maximum."""
    return sorted((i, b[-1]) for b in pi.blocks for i in b[:-1])


def chi(pi: NoncrossingPartition) -> TransferSystem:
    p = make_chain(pi.n)
    gens = j_edges(pi)
    r = generate(p, gens)
    once = restriction_closure(p, edge_mask(p, gens))
    if transitive_closure(p, once) != once or once != r.edges:
        raise InternalConsistencyError(f"restriction closure of J({pi}) is not transitive")
    return r


def _require_indexed_chain(r: TransferSystem) -> None:
    p = r.poset
    if p != make_chain(p.size - 1):
        raise TransferSystemError("psi needs a transfer system on the chain [n]")


def psi(r: TransferSystem) -> NoncrossingPartition:
    _require_indexed_chain(r)
    size = r.poset.size
    parent = list(range(size))

    def root(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for i, j in maximal_edges(r):
        a, b = root(i), root(j)
        if a != b:
            parent[max(a, b)] = min(a, b)
    groups: dict[int, list[int]] = {}
    for x in range(size):
        groups.setdefault(root(x), []).append(x)
    pi = NoncrossingPartition.from_blocks(list(groups.values()), size)
    bad = crossing(pi)
    if bad is not None:
        raise InternalConsistencyError(f"psi({r}) crosses at {bad}")
    return pi


def nc_rank(pi: NoncrossingPartition) -> int:
    return pi.n_plus_1 - len(pi.blocks)


def catalan(m: int) -> int:
    if m < 0:
        raise ValueError("m must be nonnegative")
    return comb(2 * m, m) // (m + 1)


def narayana(m: int, k: int) -> int:
    if m < 1 or not 1 <= k <= m:
        raise ValueError(f"narayana({m}, {k}) needs 1 <= k <= m")
    num = comb(m, k) * comb(m, k - 1)
    if num % m:
        raise ArithmeticError("Narayana numerator not divisible")
    return num // m


def rank_census(m: int, bound: int = DEFAULT_NC_BOUND) -> dict[int, int]:
    """Number of noncrossing partitions of an m-set with each rank ``0..m-1``."""
    tally = Counter(nc_rank(pi) for pi in enumerate_nc(m, bound))
    return {k: tally.get(k, 0) for k in range(m)}


def narayana_census(n: int, bound: Optional[int] = None) -> dict[int, int]:
    """Transfer systems on ``[n]`` counted by minimal generating number ``0..n``."""
    tally = Counter(min_generating_number(r) for r in enumerate_transfer_systems(make_chain(n), bound))
    return {k: tally.get(k, 0) for k in range(n + 1)}


def narayana_expected(n: int) -> dict[int, int]:
    """Bucket k of ``narayana_census(n)`` holds the partitions with ``n+1-k`` blocks."""
    return {k: narayana(n + 1, k + 1) for k in range(n + 1)}
