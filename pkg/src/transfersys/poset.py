"""Finite posets stored as bitsets over dense element indices.

Elements are ``0..size-1``. ``up[i]`` is the bitmask of all ``j`` with
``i <= j``; the full relation is kept (not just covers) because lifting
and closure checks query it constantly.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from typing import Optional, Sequence

import numpy as np


class PosetError(ValueError):
    pass


def bits(mask: int):
    """Yield the indices of the set bits of ``mask`` in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def rows_to_matrix(rows: Sequence[int], n: int) -> np.ndarray:
    nbytes = max(1, (n + 7) // 8)
    buf = b"".join(r.to_bytes(nbytes, "little") for r in rows)
    arr = np.frombuffer(buf, dtype=np.uint8).reshape(len(rows), nbytes)
    return np.unpackbits(arr, axis=1, bitorder="little")[:, :n].astype(bool)


def matrix_to_rows(mat: np.ndarray) -> tuple[int, ...]:
    packed = np.packbits(mat.astype(np.uint8), axis=1, bitorder="little")
    return tuple(int.from_bytes(row.tobytes(), "little") for row in packed)


@dataclass(frozen=True)
class LatticeWitness:
    meet: tuple[tuple[int, ...], ...]
    join: tuple[tuple[int, ...], ...]
    bottom: int
    top: int


@dataclass(frozen=True, eq=False)
class Poset:
    size: int
    up: tuple[int, ...]
    labels: Optional[tuple[str, ...]] = None
    # how the poset was built; consulted by canonical_duality only
    construction: Optional[tuple] = field(default=None, repr=False)

    def __eq__(self, other):
        if not isinstance(other, Poset):
            return NotImplemented
        return self.size == other.size and self.up == other.up

    def __hash__(self):
        return hash((self.size, self.up))

    @classmethod
    def from_relation(cls, size: int, pairs, labels=None) -> "Poset":
        """Build a poset from related pairs, closing transitively.

        Reflexive pairs are implicit. Raises ``PosetError`` if the closure
        is not antisymmetric.
        """
        if size < 0:
            raise PosetError("size must be nonnegative")
        up = [1 << i for i in range(size)]
        for a, b in pairs:
            if not (0 <= a < size and 0 <= b < size):
                raise PosetError(f"element out of range in pair {(a, b)}")
            up[a] |= 1 << b
        # Warshall on bit rows
        for k in range(size):
            kb = 1 << k
            uk = up[k]
            for i in range(size):
                if up[i] & kb:
                    up[i] |= uk
        for i in range(size):
            for j in bits(up[i]):
                if j != i and up[j] >> i & 1:
                    raise PosetError(f"antisymmetry violated by {i} and {j}")
        if labels is not None:
            labels = tuple(str(x) for x in labels)
            if len(labels) != size:
                raise PosetError("labels must have one entry per element")
        return cls(size, tuple(up), labels)

    # -- basic queries -------------------------------------------------

    def leq(self, i: int, j: int) -> bool:
        return bool(self.up[i] >> j & 1)

    def lt(self, i: int, j: int) -> bool:
        return i != j and bool(self.up[i] >> j & 1)

    def label(self, i: int) -> str:
        return self.labels[i] if self.labels is not None else str(i)

    @cached_property
    def matrix(self) -> np.ndarray:
        """Boolean ``size x size`` matrix with ``matrix[i, j] == (i <= j)``."""
        m = rows_to_matrix(self.up, self.size)
        m.setflags(write=False)
        return m

    @cached_property
    def down(self) -> tuple[int, ...]:
        if self.size == 0:
            return ()
        return matrix_to_rows(self.matrix.T)

    @cached_property
    def strict_pairs(self) -> tuple[tuple[int, int], ...]:
        """All ``(a, b)`` with ``a < b``, sorted lexicographically."""
        return tuple((a, b) for a in range(self.size) for b in bits(self.up[a]) if b != a)

    @cached_property
    def pair_index(self) -> dict[tuple[int, int], int]:
        return {p: k for k, p in enumerate(self.strict_pairs)}

    @cached_property
    def covers(self) -> tuple[tuple[int, int], ...]:
        out = []
        for a in range(self.size):
            above = self.up[a] & ~(1 << a)
            for b in bits(above):
                between = above & self.down[b] & ~(1 << b)
                if not between:
                    out.append((a, b))
        return tuple(out)

    @cached_property
    def ranks(self) -> tuple[int, ...]:
        """Length of the longest chain from a minimal element."""
        r = [0] * self.size
        order = sorted(range(self.size), key=lambda i: self.down[i].bit_count())
        for b in order:
            below = self.down[b] & ~(1 << b)
            r[b] = max((r[a] + 1 for a in bits(below)), default=0)
        return tuple(r)

    def is_chain(self) -> bool:
        return all((self.up[i] | self.down[i]).bit_count() == self.size for i in range(self.size))

    @cached_property
    def chain_order(self) -> tuple[int, ...]:
        """Elements sorted by the order; only meaningful for chains."""
        return tuple(sorted(range(self.size), key=lambda i: self.down[i].bit_count()))

    @cached_property
    def _down_lookup(self) -> dict[int, int]:
        return {d: i for i, d in enumerate(self.down)}

    @cached_property
    def _up_lookup(self) -> dict[int, int]:
        return {u: i for i, u in enumerate(self.up)}

    def _meet_direct(self, x: int, y: int) -> Optional[int]:
        return self._down_lookup.get(self.down[x] & self.down[y])

    def _join_direct(self, x: int, y: int) -> Optional[int]:
        return self._up_lookup.get(self.up[x] & self.up[y])

    @cached_property
    def meet_table(self) -> tuple[tuple[Optional[int], ...], ...]:
        """Meets of all pairs, ``None`` where no greatest lower bound exists."""
        n = self.size
        return tuple(tuple(self._meet_direct(x, y) for y in range(n)) for x in range(n))

    @cached_property
    def witness(self) -> Optional[LatticeWitness]:
        n = self.size
        if n == 0:
            return None
        meets = self.meet_table
        if any(m is None for row in meets for m in row):
            return None
        joins = tuple(tuple(self._join_direct(x, y) for y in range(n)) for x in range(n))
        if any(j is None for row in joins for j in row):
            return None
        full = (1 << n) - 1
        bottom = next(i for i in range(n) if self.up[i] == full)
        top = next(i for i in range(n) if self.down[i] == full)
        return LatticeWitness(meets, joins, bottom, top)


# -- constructors ------------------------------------------------------


@lru_cache(maxsize=None)
def make_chain(n: int) -> Poset:
    if n < 0:
        raise PosetError("chain length must be nonnegative")
    full = (1 << (n + 1)) - 1
    up = tuple(full & ~((1 << i) - 1) for i in range(n + 1))
    return Poset(n + 1, up, tuple(str(i) for i in range(n + 1)), ("chain", n))


def _tuple_label(s: str) -> tuple[str, ...]:
    if s.startswith("(") and s.endswith(")"):
        return tuple(s[1:-1].split(","))
    return (s,)


def make_product(p: Poset, q: Poset) -> Poset:
    """Cartesian product, elements ordered lexicographically by factor index."""
    m = q.size
    up = []
    for a in range(p.size):
        for b in range(q.size):
            mask = 0
            for c in bits(p.up[a]):
                mask |= q.up[b] << (c * m)
            up.append(mask)
    labels = tuple(
        "(" + ",".join(_tuple_label(p.label(a)) + _tuple_label(q.label(b))) + ")"
        for a in range(p.size)
        for b in range(q.size)
    )
    return Poset(p.size * m, tuple(up), labels, ("product", p, q))


def make_grid(*lengths: int) -> Poset:
    if not lengths:
        raise PosetError("grid needs at least one factor")
    result = make_chain(lengths[0])
    for n in lengths[1:]:
        result = make_product(result, make_chain(n))
    return result


def subset_label(mask: int) -> str:
    if not mask:
        return "{}"
    return "{" + ",".join(str(i + 1) for i in bits(mask)) + "}"


@lru_cache(maxsize=None)
def make_boolean(n: int) -> Poset:
    """Subsets of {1..n} as n-bit masks (element i is bit i-1), by inclusion."""
    if n < 0:
        raise PosetError("n must be nonnegative")
    size = 1 << n
    up = []
    for m in range(size):
        mask = 0
        for s in range(size):
            if s & m == m:
                mask |= 1 << s
        up.append(mask)
    return Poset(size, tuple(up), tuple(subset_label(m) for m in range(size)), ("boolean", n))


@lru_cache(maxsize=None)
def make_divisor_poset(n: int) -> Poset:
    if n < 1:
        raise PosetError("divisor poset needs n >= 1")
    divs = [d for d in range(1, n + 1) if n % d == 0]
    up = []
    for a in divs:
        mask = 0
        for j, b in enumerate(divs):
            if b % a == 0:
                mask |= 1 << j
        up.append(mask)
    return Poset(len(divs), tuple(up), tuple(str(d) for d in divs), ("divisors", n))


def antichain(n: int) -> Poset:
    return Poset(n, tuple(1 << i for i in range(n)), None, None)


def opposite(p: Poset) -> Poset:
    return Poset(p.size, p.down, p.labels, ("op", p))


def meet(p: Poset, x: int, y: int) -> Optional[int]:
    return p._meet_direct(x, y)


def join(p: Poset, x: int, y: int) -> Optional[int]:
    return p._join_direct(x, y)


def is_lattice(p: Poset) -> Optional[LatticeWitness]:
    return p.witness


# -- dualities ---------------------------------------------------------


class DualityError(ValueError):
    pass


@dataclass(frozen=True)
class Duality:
    """Order-reversing bijection of ``poset`` onto itself."""

    poset: Poset
    forward: tuple[int, ...]
    inverse: tuple[int, ...]
    is_involution: bool

    @classmethod
    def from_forward(cls, p: Poset, forward: Sequence[int]) -> "Duality":
        forward = tuple(int(x) for x in forward)
        if sorted(forward) != list(range(p.size)):
            raise DualityError("forward map is not a permutation of the elements")
        inverse = [0] * p.size
        for i, f in enumerate(forward):
            inverse[f] = i
        d = cls(p, forward, tuple(inverse), forward == tuple(inverse))
        d.check()
        return d

    def check(self) -> None:
        """Raise ``DualityError`` unless ``x <= y`` iff ``f(y) <= f(x)`` everywhere."""
        p, f = self.poset, self.forward
        n = p.size
        if len(f) != n or len(self.inverse) != n:
            raise DualityError("maps must have one entry per element")
        if any(self.inverse[f[i]] != i or f[self.inverse[i]] != i for i in range(n)):
            raise DualityError("forward and inverse do not compose to the identity")
        if self.is_involution != (f == self.inverse):
            raise DualityError("is_involution flag is wrong")
        if n == 0:
            return
        perm = np.asarray(f)
        m = p.matrix
        # m[f(i), f(j)] must equal m[j, i]
        if not np.array_equal(m[np.ix_(perm, perm)], m.T):
            bad = np.argwhere(m[np.ix_(perm, perm)] != m.T)[0]
            raise DualityError(f"order not reversed at pair {tuple(int(v) for v in bad)}")


def _duality_map(p: Poset) -> Optional[tuple[int, ...]]:
    c = p.construction
    if c is None:
        return None
    kind = c[0]
    if kind == "chain":
        n = c[1]
        return tuple(n - i for i in range(n + 1))
    if kind == "boolean":
        full = (1 << c[1]) - 1
        return tuple(full ^ m for m in range(full + 1))
    if kind == "divisors":
        n = c[1]
        divs = [int(s) for s in p.labels]
        where = {d: i for i, d in enumerate(divs)}
        return tuple(where[n // d] for d in divs)
    if kind == "product":
        fp, fq = _duality_map(c[1]), _duality_map(c[2])
        if fp is None or fq is None:
            return None
        m = c[2].size
        return tuple(fp[a] * m + fq[b] for a in range(c[1].size) for b in range(m))
    if kind == "op":
        return _duality_map(c[1])
    return None


def canonical_duality(p: Poset) -> Optional[Duality]:
    """Componentwise reversal for chains, grids, Boolean and divisor posets."""
    f = _duality_map(p)
    if f is None:
        return None
    return Duality.from_forward(p, f)


# -- isomorphism -------------------------------------------------------


def _invariants(p: Poset) -> list[tuple]:
    ups = [u.bit_count() for u in p.up]
    downs = [d.bit_count() for d in p.down]
    cov_out = [0] * p.size
    cov_in = [0] * p.size
    for a, b in p.covers:
        cov_out[a] += 1
        cov_in[b] += 1
    return [(ups[i], downs[i], cov_out[i], cov_in[i]) for i in range(p.size)]


def find_isomorphism(p: Poset, q: Poset) -> Optional[tuple[int, ...]]:
    """Lexicographically least order-isomorphism ``p -> q`` as an index map."""
    n = p.size
    if n != q.size:
        return None
    ip, iq = _invariants(p), _invariants(q)
    if sorted(ip) != sorted(iq):
        return None
    candidates = [[j for j in range(n) if iq[j] == ip[i]] for i in range(n)]
    image = [-1] * n
    used = [False] * n

    def consistent(i: int, j: int) -> bool:
        for k in range(i):
            fk = image[k]
            if p.leq(k, i) != q.leq(fk, j) or p.leq(i, k) != q.leq(j, fk):
                return False
        return True

    def extend(i: int) -> bool:
        if i == n:
            return True
        for j in candidates[i]:
            if not used[j] and consistent(i, j):
                image[i] = j
                used[j] = True
                if extend(i + 1):
                    return True
                used[j] = False
        image[i] = -1
        return False

    if extend(0):
        return tuple(image)
    return None
