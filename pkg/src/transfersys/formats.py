"""JSON and DOT serialization, and the textual poset specs used by the CLI.

Poset spec strings: ``chain:N``, ``grid:AxB[xC...]``, ``boolean:N``,
``divisors:N``, ``abelian:n1,n2,...`` and ``op:<spec>``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Optional

from .groups import DEFAULT_ORDER_BOUND, SubgroupLattice, make_group, subgroup_lattice
from .noncrossing import NoncrossingPartition
from .poset import (
    Duality,
    Poset,
    PosetError,
    make_boolean,
    make_chain,
    make_divisor_poset,
    make_grid,
    opposite,
)
from .transfer import TransferSystem, complete, trivial, validate


class SpecError(ValueError):
    pass


@dataclass(frozen=True)
class ResolvedSpec:
    text: str
    poset: Poset
    subgroups: Optional[SubgroupLattice] = None


def _int(text: str, what: str) -> int:
    try:
        return int(text)
    except ValueError:
        raise SpecError(f"{what} must be an integer, got {text!r}") from None


def resolve_spec(text: str, max_order: int = DEFAULT_ORDER_BOUND) -> ResolvedSpec:
    kind, sep, arg = text.partition(":")
    if not sep:
        raise SpecError(f"poset spec {text!r} has no ':'")
    try:
        if kind == "chain":
            return ResolvedSpec(text, make_chain(_int(arg, "chain length")))
        if kind == "grid":
            lengths = [_int(x, "grid side") for x in arg.split("x")]
            return ResolvedSpec(text, make_grid(*lengths))
        if kind == "boolean":
            return ResolvedSpec(text, make_boolean(_int(arg, "Boolean rank")))
        if kind == "divisors":
            return ResolvedSpec(text, make_divisor_poset(_int(arg, "divisor base")))
        if kind == "abelian":
            factors = [_int(x, "cyclic factor") for x in arg.split(",") if x]
            lat = subgroup_lattice(make_group(factors), max_order)
            return ResolvedSpec(text, lat.poset, lat)
        if kind == "op":
            inner = resolve_spec(arg, max_order)
            return ResolvedSpec(text, opposite(inner.poset))
    except (PosetError, ValueError) as exc:
        if isinstance(exc, SpecError):
            raise
        raise SpecError(str(exc)) from exc
    raise SpecError(f"unknown poset kind {kind!r}")


# -- JSON ------------------------------------------------------------------


def poset_to_json(p: Poset) -> dict:
    labels = list(p.labels) if p.labels is not None else [str(i) for i in range(p.size)]
    return {"size": p.size, "labels": labels, "leq": [list(e) for e in p.strict_pairs]}


def poset_from_json(obj: dict) -> Poset:
    try:
        return Poset.from_relation(int(obj["size"]), obj.get("leq", []), obj.get("labels"))
    except (KeyError, TypeError) as exc:
        raise SpecError(f"malformed poset JSON: {exc}") from exc


def ts_to_json(r: TransferSystem, poset: object = None) -> dict:
    """``{"poset": spec-or-poset, "edges": [[a, b], ...]}``."""
    return {
        "poset": poset if poset is not None else poset_to_json(r.poset),
        "edges": [list(e) for e in r.pairs],
    }


def ts_from_json(obj: dict, poset: Optional[Poset] = None) -> TransferSystem:
    if poset is None:
        ref = obj.get("poset")
        if isinstance(ref, str):
            poset = resolve_spec(ref).poset
        elif isinstance(ref, dict):
            poset = poset_from_json(ref)
        else:
            raise SpecError("transfer system JSON names no poset")
    return validate(poset, [tuple(e) for e in obj.get("edges", [])])


def load_ts(ref: str, poset: Poset) -> TransferSystem:
    """Read a transfer system from a file, or the built-ins ``trivial``/``complete``."""
    if ref == "trivial":
        return trivial(poset)
    if ref == "complete":
        return complete(poset)
    with open(ref) as fh:
        obj = json.load(fh)
    return ts_from_json(obj, poset)


def partition_to_json(pi: NoncrossingPartition) -> dict:
    return {"n": pi.n, "blocks": [list(b) for b in pi.blocks]}


def partition_from_json(obj: dict) -> NoncrossingPartition:
    return NoncrossingPartition.from_blocks(obj["blocks"], int(obj["n"]) + 1)


def duality_to_json(d: Duality) -> dict:
    return {"forward": list(d.forward), "inverse": list(d.inverse), "is_involution": d.is_involution}


def duality_from_json(obj: dict, poset: Poset) -> Duality:
    return Duality.from_forward(poset, obj["forward"])


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True)


# -- DOT -------------------------------------------------------------------


def _dot_header(name: str) -> list[str]:
    return [f"digraph {name} {{", "  rankdir=BT;", "  node [shape=circle];"]


def _dot_nodes(p: Poset) -> list[str]:
    lines = []
    for i in range(p.size):
        label = p.label(i).replace('"', '\\"')
        lines.append(f'  n{i} [label="{label}"];')
    by_rank: dict[int, list[int]] = {}
    for i, r in enumerate(p.ranks):
        by_rank.setdefault(r, []).append(i)
    for r in sorted(by_rank):
        members = "; ".join(f"n{i}" for i in by_rank[r])
        lines.append(f"  {{ rank=same; {members}; }}")
    return lines


def poset_to_dot(p: Poset, name: str = "poset") -> str:
    """Hasse diagram: cover edges only, smaller elements drawn lower."""
    lines = _dot_header(name) + _dot_nodes(p)
    lines += [f"  n{a} -> n{b};" for a, b in p.covers]
    lines.append("}")
    return "\n".join(lines) + "\n"


def ts_to_dot(r: TransferSystem, name: str = "transfer") -> str:
    """Every nontrivial edge of ``r``, including non-covering ones."""
    lines = _dot_header(name) + _dot_nodes(r.poset)
    lines += [f"  n{a} -> n{b};" for a, b in r.pairs]
    lines.append("}")
    return "\n".join(lines) + "\n"
