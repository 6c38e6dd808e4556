"""Transfer systems on finite posets.

A transfer system is stored as a bitset over ``poset.strict_pairs``: bit
``k`` set means the k-th strict pair is an edge. Identities are implicit,
so the empty bitset is the trivial transfer system.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Iterator, Optional

from .poset import Poset, bits

DEFAULT_ENUM_BOUND = 40
ENUM_BOUND_ENV = "TRANSFERSYS_ENUM_BOUND"


class TransferSystemError(ValueError):
    pass


class NotRefiningError(TransferSystemError):
    def __init__(self, pair):
        self.pair = tuple(pair)
        super().__init__(f"edge {self.pair[0]}->{self.pair[1]} does not refine the order")


class TransitivityError(TransferSystemError):
    def __init__(self, triple):
        self.triple = triple
        a, b, c = triple
        super().__init__(f"transitivity fails: {a}->{b} and {b}->{c} present but {a}->{c} missing")


class RestrictionError(TransferSystemError):
    def __init__(self, triple, missing):
        self.triple = triple
        self.missing = missing
        x, y, z = triple
        super().__init__(
            f"restriction fails: {x}->{y} present, {z} <= {y}, "
            f"but {missing[0]}->{missing[1]} missing"
        )


class MismatchedPosetError(TransferSystemError):
    pass


class EnumerationBoundError(TransferSystemError):
    pass


@dataclass(frozen=True)
class TransferSystem:
    poset: Poset
    edges: int

    @property
    def pairs(self) -> list[tuple[int, int]]:
        sp = self.poset.strict_pairs
        return [sp[k] for k in bits(self.edges)]

    def __contains__(self, pair) -> bool:
        a, b = pair
        if a == b:
            return True
        k = self.poset.pair_index.get((a, b))
        return k is not None and bool(self.edges >> k & 1)

    def __len__(self) -> int:
        return self.edges.bit_count()

    def __iter__(self):
        return iter(self.pairs)

    def __repr__(self):
        body = ", ".join(f"{a}->{b}" for a, b in self.pairs)
        return f"TransferSystem({{{body}}})"


def edge_mask(p: Poset, pairs: Iterable) -> int:
    """Bitset of strict pairs; identities are dropped, non-refining pairs rejected."""
    mask = 0
    index = p.pair_index
    for a, b in pairs:
        a, b = int(a), int(b)
        if a == b and 0 <= a < p.size:
            continue
        k = index.get((a, b))
        if k is None:
            raise NotRefiningError((a, b))
        mask |= 1 << k
    return mask


def trivial(p: Poset) -> TransferSystem:
    return TransferSystem(p, 0)


def complete(p: Poset) -> TransferSystem:
    return TransferSystem(p, (1 << len(p.strict_pairs)) - 1)


def _rows(p: Poset, mask: int) -> list[int]:
    out = [0] * p.size
    sp = p.strict_pairs
    for k in bits(mask):
        a, b = sp[k]
        out[a] |= 1 << b
    return out


def check_axioms(p: Poset, mask: int) -> None:
    """Raise the first axiom violation of ``mask``; exhaustive over pairs and triples."""
    sp = p.strict_pairs
    out = _rows(p, mask)
    for a in range(p.size):
        for b in bits(out[a]):
            missing = out[b] & ~out[a]
            if missing:
                c = next(bits(missing))
                raise TransitivityError((a, b, c))
    mt = p.meet_table
    for k in bits(mask):
        x, y = sp[k]
        for z in bits(p.down[y]):
            m = mt[x][z]
            if m is None or m == z:
                continue
            if not out[m] >> z & 1:
                raise RestrictionError((x, y, z), (m, z))


def validate(p: Poset, pairs) -> TransferSystem:
    mask = edge_mask(p, pairs)
    check_axioms(p, mask)
    return TransferSystem(p, mask)


def is_transfer_system(p: Poset, mask: int) -> bool:
    try:
        check_axioms(p, mask)
    except TransferSystemError:
        return False
    return True


def _require_lattice(p: Poset) -> None:
    if p.witness is None:
        raise TransferSystemError("operation requires a lattice")


def restriction_closure(p: Poset, mask: int) -> int:
    """Least superset of ``mask`` closed under restriction along meets."""
    sp, index, mt = p.strict_pairs, p.pair_index, p.meet_table
    todo = list(bits(mask))
    while todo:
        k = todo.pop()
        x, y = sp[k]
        for z in bits(p.down[y]):
            m = mt[x][z]
            if m is None or m == z:
                continue
            j = index[(m, z)]
            if not mask >> j & 1:
                mask |= 1 << j
                todo.append(j)
    return mask


def transitive_closure(p: Poset, mask: int) -> int:
    out = _rows(p, mask)
    n = p.size
    for k in range(n):
        kb = 1 << k
        ok = out[k]
        for i in range(n):
            if out[i] & kb:
                out[i] |= ok
    index = p.pair_index
    result = 0
    for a in range(n):
        for b in bits(out[a]):
            result |= 1 << index[(a, b)]
    return result


def generate(p: Poset, pairs) -> TransferSystem:
    """The least transfer system containing ``pairs``.

    Alternates restriction closure and transitive closure until neither
    adds an edge.
    """
    _require_lattice(p)
    mask = edge_mask(p, pairs)
    while True:
        new = transitive_closure(p, restriction_closure(p, mask))
        if new == mask:
            return TransferSystem(p, mask)
        mask = new


def refines(r1: TransferSystem, r2: TransferSystem) -> bool:
    _same_poset(r1, r2)
    return r1.edges & ~r2.edges == 0


def _same_poset(r1, r2) -> None:
    if r1.poset != r2.poset:
        raise MismatchedPosetError("transfer systems live on different posets")


def ts_meet(r1: TransferSystem, r2: TransferSystem) -> TransferSystem:
    _same_poset(r1, r2)
    mask = r1.edges & r2.edges
    check_axioms(r1.poset, mask)
    return TransferSystem(r1.poset, mask)


def ts_join(p: Poset, r1: TransferSystem, r2: TransferSystem) -> TransferSystem:
    _same_poset(r1, r2)
    if r1.poset != p:
        raise MismatchedPosetError("transfer systems do not live on the given poset")
    return generate(p, r1.pairs + r2.pairs)


# -- enumeration -------------------------------------------------------


def enum_bound(bound: Optional[int] = None) -> int:
    if bound is not None:
        return bound
    env = os.environ.get(ENUM_BOUND_ENV)
    return int(env) if env else DEFAULT_ENUM_BOUND


class _Closer:
    """Incremental closure on strict-pair bitsets, used by the backtracking search.

    Works on any finite poset: restriction only fires where the meet exists.
    """

    def __init__(self, p: Poset):
        self.p = p
        sp, index, mt = p.strict_pairs, p.pair_index, p.meet_table
        self.sp = sp
        self.index = [[index.get((a, b), -1) for b in range(p.size)] for a in range(p.size)]
        self.restrict = []
        for x, y in sp:
            m = 0
            for z in bits(p.down[y]):
                w = mt[x][z]
                if w is not None and w != z:
                    m |= 1 << index[(w, z)]
            self.restrict.append(m)

    def add(self, state, k: int, excluded: int):
        """Close ``state`` plus pair ``k``; ``None`` if an excluded pair is forced."""
        mask, out, inc = state
        out = list(out)
        inc = list(inc)
        sp, index, restrict = self.sp, self.index, self.restrict
        todo = [k]
        while todo:
            j = todo.pop()
            bit = 1 << j
            if mask & bit:
                continue
            if excluded & bit:
                return None
            mask |= bit
            a, b = sp[j]
            out[a] |= 1 << b
            inc[b] |= 1 << a
            r = restrict[j] & ~mask
            if r:
                todo.extend(bits(r))
            for c in bits(out[b]):
                q = index[a][c]
                if not mask >> q & 1:
                    todo.append(q)
            for d in bits(inc[a]):
                q = index[d][b]
                if not mask >> q & 1:
                    todo.append(q)
        return mask, tuple(out), tuple(inc)


def enumerate_transfer_systems(p: Poset, bound: Optional[int] = None) -> Iterator[TransferSystem]:
    """Every transfer system on ``p`` once, in increasing order of edge bitset.

    Backtracks over strict pairs from the highest index down, trying
    exclusion before inclusion; inclusion closes the current edge set and
    prunes if the closure needs a pair already excluded.
    """
    npairs = len(p.strict_pairs)
    limit = enum_bound(bound)
    if npairs > limit:
        raise EnumerationBoundError(f"{npairs} nontrivial pairs exceed the bound {limit}")
    closer = _Closer(p)
    empty = (0, (0,) * p.size, (0,) * p.size)

    def search(idx, state, excluded):
        if idx < 0:
            yield TransferSystem(p, state[0])
            return
        bit = 1 << idx
        if state[0] & bit:
            yield from search(idx - 1, state, excluded)
            return
        yield from search(idx - 1, state, excluded | bit)
        grown = closer.add(state, idx, excluded)
        if grown is not None:
            yield from search(idx - 1, grown, excluded)

    yield from search(npairs - 1, empty, 0)


def enumerate_by_filter(p: Poset) -> Iterator[TransferSystem]:
    """Brute-force oracle: test every subset of strict pairs against the axioms."""
    for mask in range(1 << len(p.strict_pairs)):
        if is_transfer_system(p, mask):
            yield TransferSystem(p, mask)


def count_transfer_systems(p: Poset, bound: Optional[int] = None) -> int:
    return sum(1 for _ in enumerate_transfer_systems(p, bound))


# -- chains: maximal edges and minimal generation -----------------------


def _require_chain(p: Poset) -> None:
    if not p.is_chain():
        raise TransferSystemError("operation is defined only on chains")


def maximal_edges(r: TransferSystem) -> list[tuple[int, int]]:
    """Edges ``i->j`` of ``r`` with no edge ``i->k`` for any ``k > j``."""
    p = r.poset
    _require_chain(p)
    out = _rows(p, r.edges)
    result = []
    for i in range(p.size):
        targets = out[i]
        for j in bits(targets):
            above = p.up[j] & ~(1 << j)
            if not targets & above:
                result.append((i, j))
    return result


def min_generating_number(r: TransferSystem) -> int:
    return len(maximal_edges(r))


def min_generating_number_by_search(r: TransferSystem) -> int:
    """Smallest k such that some k-subset of the edges generates ``r``."""
    p = r.poset
    edges = r.pairs
    for k in range(len(edges) + 1):
        for sub in combinations(edges, k):
            if generate(p, sub).edges == r.edges:
                return k
    raise AssertionError("a transfer system always generates itself")
