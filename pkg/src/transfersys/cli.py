"""Command-line front end.

Exit codes: 0 success, 1 verification failure, 2 malformed input.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Optional, Sequence

from . import formats
from .duality import METHODS, bbpr_phi, boolean_rank, grid_length, phi, slat_census
from .groups import DEFAULT_ORDER_BOUND, GroupError, annihilator_duality
from .noncrossing import (
    PartitionError,
    catalan,
    chi,
    enumerate_nc,
    narayana,
    nc_rank,
    parse_blocks,
    psi,
    rank_census,
)
from .poset import DualityError, PosetError, canonical_duality, make_chain
from .transfer import (
    TransferSystemError,
    enumerate_transfer_systems,
    min_generating_number,
)
from .verification import SUITES, run_suite
from .wfs import left_class, wfs_failure


class UsageError(Exception):
    pass


def _emit(obj) -> None:
    print(formats.dumps(obj))


def cmd_poset(args) -> int:
    spec = formats.resolve_spec(args.spec, args.max_order)
    p = spec.poset
    if args.dot:
        sys.stdout.write(formats.poset_to_dot(p))
    elif args.json:
        _emit(formats.poset_to_json(p))
    else:
        w = p.witness
        print(f"poset {args.spec}: {p.size} elements, {len(p.covers)} covers, "
              f"{len(p.strict_pairs)} strict pairs, lattice={'yes' if w else 'no'}")
        for a, b in p.covers:
            print(f"{p.label(a)} < {p.label(b)}")
    return 0


def cmd_enumerate(args) -> int:
    spec = formats.resolve_spec(args.spec, args.max_order)
    p = spec.poset
    if args.slats:
        n = grid_length(p)
        print("k,count")
        for k, c in slat_census(n, args.bound).items():
            print(f"{k},{c}")
        return 0
    systems = enumerate_transfer_systems(p, args.bound)
    if args.by_generators:
        if not p.is_chain():
            raise UsageError("--by-generators needs a chain")
        counts: dict[int, int] = {}
        for r in systems:
            k = min_generating_number(r)
            counts[k] = counts.get(k, 0) + 1
        print("k,count")
        for k in range(p.size):
            print(f"{k},{counts.get(k, 0)}")
        return 0
    if args.count:
        print(sum(1 for _ in systems))
        return 0
    docs = [formats.ts_to_json(r, args.spec) for r in systems]
    if args.out:
        with open(args.out, "w") as fh:
            json.dump(docs, fh, sort_keys=True)
            fh.write("\n")
        print(len(docs))
    else:
        for doc in docs:
            _emit(doc)
    return 0


def _duality_for(spec: formats.ResolvedSpec, choice: str):
    p = spec.poset
    if choice == "canonical":
        d = canonical_duality(p)
        if d is None:
            raise UsageError(f"no canonical duality registered for {spec.text}")
        return d
    if choice == "annihilator":
        if spec.subgroups is None:
            raise UsageError("annihilator duality needs an abelian:... poset")
        return annihilator_duality(spec.subgroups)
    with open(choice) as fh:
        return formats.duality_from_json(json.load(fh), p)


def cmd_dualize(args) -> int:
    spec = formats.resolve_spec(args.spec, args.max_order)
    p = spec.poset
    r = formats.load_ts(args.ts, p)
    if args.method == "bbpr":
        out = bbpr_phi(boolean_rank(p), r)
    else:
        choice = args.duality
        if choice is None:
            choice = "annihilator" if spec.subgroups is not None else "canonical"
        out = phi(p, _duality_for(spec, choice), r, args.method)
    if args.dot:
        sys.stdout.write(formats.ts_to_dot(out))
    else:
        _emit(formats.ts_to_json(out, args.spec))
    return 0


def cmd_wfs(args) -> int:
    spec = formats.resolve_spec(args.spec, args.max_order)
    p = spec.poset
    if p.witness is None:
        raise UsageError("wfs needs a lattice")
    r = formats.load_ts(args.ts, p)
    left = left_class(p, r)
    failure = wfs_failure(p, left, r)
    _emit({
        "poset": args.spec,
        "left": [list(e) for e in left.pairs],
        "right": [list(e) for e in r.pairs],
        "is_wfs": failure is None,
        "failure": failure,
    })
    return 0 if failure is None else 1


def cmd_nc(args) -> int:
    n = args.n
    if n < 0:
        raise UsageError("n must be nonnegative")
    if args.list:
        for pi in enumerate_nc(n + 1):
            _emit(formats.partition_to_json(pi))
        return 0
    if args.to_ts:
        pi = parse_blocks(args.to_ts)
        if pi.n != n:
            raise UsageError(f"partition is not of {{0..{n}}}")
        _emit(formats.ts_to_json(chi(pi), f"chain:{n}"))
        return 0
    if args.from_ts:
        r = formats.load_ts(args.from_ts, make_chain(n))
        pi = psi(r)
        _emit({**formats.partition_to_json(pi), "rank": nc_rank(pi)})
        return 0
    m = n + 1
    census = rank_census(m)
    print("rank,count,narayana")
    for k in range(m):
        print(f"{k},{census[k]},{narayana(m, k + 1)}")
    print(f"total,{sum(census.values())},{catalan(m)}")
    return 0


def cmd_slats(args) -> int:
    print("k,count")
    for k, c in slat_census(args.n, args.bound).items():
        print(f"{k},{c}")
    return 0


def cmd_verify(args) -> int:
    report = run_suite(args.suite, args.max)
    _emit(report.to_json())
    return 0 if report.passed else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="transfersys", description=__doc__)
    parser.add_argument("--max-order", type=int, default=DEFAULT_ORDER_BOUND,
                        help="largest group order for abelian:... specs")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("poset", help="describe a poset")
    p.add_argument("spec")
    fmt = p.add_mutually_exclusive_group()
    fmt.add_argument("--dot", action="store_true")
    fmt.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_poset)

    p = sub.add_parser("enumerate", help="list or count transfer systems")
    p.add_argument("spec")
    p.add_argument("--count", action="store_true")
    p.add_argument("--slats", action="store_true", help="census by top slat on grid:Nx1")
    p.add_argument("--by-generators", action="store_true",
                   help="census by minimal generating number (chains)")
    p.add_argument("--out")
    p.add_argument("--bound", type=int, help="max nontrivial pairs (env TRANSFERSYS_ENUM_BOUND)")
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("dualize", help="apply the self-duality to a transfer system")
    p.add_argument("spec")
    p.add_argument("--ts", required=True, help="JSON file, or 'trivial' / 'complete'")
    p.add_argument("--method", choices=METHODS + ("bbpr",), default="de")
    p.add_argument("--duality", help="canonical, annihilator, or a JSON file")
    p.add_argument("--dot", action="store_true")
    p.set_defaults(func=cmd_dualize)

    p = sub.add_parser("wfs", help="weak factorization system of a transfer system")
    p.add_argument("spec")
    p.add_argument("--ts", required=True)
    p.set_defaults(func=cmd_wfs)

    p = sub.add_parser("nc", help="noncrossing partitions of {0..N}")
    p.add_argument("n", type=int)
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--list", action="store_true")
    mode.add_argument("--to-ts", metavar="BLOCKS", help='e.g. "0,1,2|3,5|4"')
    mode.add_argument("--from-ts", metavar="FILE")
    p.set_defaults(func=cmd_nc)

    p = sub.add_parser("slats", help="CSV census of top slats on [N] x [1]")
    p.add_argument("n", type=int)
    p.add_argument("--bound", type=int)
    p.set_defaults(func=cmd_slats)

    p = sub.add_parser("verify", help="run a verification suite")
    p.add_argument("suite", choices=sorted(SUITES))
    p.add_argument("--max", type=int)
    p.set_defaults(func=cmd_verify)
    return parser


INPUT_ERRORS = (
    UsageError,
    formats.SpecError,
    PosetError,
    DualityError,
    GroupError,
    PartitionError,
    TransferSystemError,
    OSError,
    json.JSONDecodeError,
    KeyError,
)


def run(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 2
    try:
        return args.func(args)
    except INPUT_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run())
