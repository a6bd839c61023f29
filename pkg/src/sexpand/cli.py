"""Command line front end.

Every command prints a report (human-readable, or JSON with --json) unless
it produces an artifact and no --out was given, in which case the artifact
itself goes to stdout so commands can be piped.  Exit codes: 0 pass, 1 fail
(witnesses reported), 2 usage/parse error, 3 internal error.
"""

from __future__ import annotations

import argparse
import sys
import time
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Any

from . import formats
from ._kernels import BACKEND
from .errors import (
    ArityError,
    ClosureError,
    FormatError,
    InvalidSemigroup,
    NoZeroElement,
    NotReducible,
    NotResonant,
    OddOrderUnsupported,
    RankError,
)
from .expansion import s_expand, zero_reduce
from .multialgebra import (
    SubspaceSplit,
    check_gji,
    check_reduction_condition,
    check_submultialgebra,
    reduced_multialgebra,
)
from .realization import extract_constants, verify_identity
from .resonance import (
    ReductionPartition,
    check_resonance,
    closure_sets,
    reduce_resonant,
    resonant_subalgebra,
    search_resonant,
)
from .semigroup import gen_se

EXIT_PASS = 0
EXIT_FAIL = 1
EXIT_USAGE = 2
EXIT_INTERNAL = 3


@dataclass
class Report:
    command: str
    status: str  # pass | fail | error
    witnesses: list = field(default_factory=list)
    stats: dict = field(default_factory=dict)


def _plain(value: Any) -> Any:
    """Make witnesses JSON-serializable: Fractions to strings, tuples to lists."""
    if isinstance(value, Fraction):
        return formats.fraction_to_str(value)
    if isinstance(value, (tuple, list)):
        return [_plain(x) for x in value]
    if isinstance(value, (frozenset, set)):
        return sorted(_plain(x) for x in value)
    if isinstance(value, dict):
        return {str(k): _plain(v) for k, v in value.items()}
    return value


def _print_report(report: Report, as_json: bool) -> None:
    if as_json:
        payload = {
            "command": report.command,
            "status": report.status,
            "witnesses": _plain(report.witnesses),
            "stats": _plain(report.stats),
        }
        sys.stdout.write(formats.dumps_canonical(payload))
        return
    stats = " ".join(f"{k}={v}" for k, v in sorted(report.stats.items()))
    line = f"{report.command}: {report.status}"
    if stats:
        line += f" ({stats})"
    print(line)
    for witness in report.witnesses[:50]:
        print(f"  witness: {_plain(witness)}")
    if len(report.witnesses) > 50:
        print(f"  ... {len(report.witnesses) - 50} more")


def _emit(artifact: str | None, args: argparse.Namespace, report: Report) -> None:
    if artifact is not None:
        if args.out:
            Path(args.out).write_text(artifact, encoding="utf-8")
            report.stats["out"] = args.out
        else:
            sys.stdout.write(artifact)
            return
    _print_report(report, args.json)


def _parse_indices(text: str) -> frozenset[int]:
    try:
        return frozenset(int(x) for x in text.split(",") if x.strip() != "")
    except ValueError as exc:
        raise FormatError(f"bad index list {text!r}") from exc


def _load_algebra(path: str):
    return formats.algebra_from_dict(formats.load_json(path))


def _load_semigroup(path: str):
    return formats.semigroup_from_dict(formats.load_json(path))


def _gji_witnesses(report) -> list:
    return [
        {"lower": list(w.lower), "upper": w.upper, "residual": w.residual}
        for w in report.witnesses
    ]


def cmd_validate_semigroup(args) -> tuple[Report, str | None]:
    try:
        s = _load_semigroup(args.semigroup)
    except InvalidSemigroup as exc:
        witnesses = [
            {"kind": kind, "witness": list(witness)}
            for kind, witness in exc.violations
        ]
        return Report("validate-semigroup", "fail", witnesses), None
    return Report("validate-semigroup", "pass", stats={"order": s.order}), None


def cmd_gen_se(args) -> tuple[Report, str]:
    s = gen_se(args.n)
    artifact = formats.dumps_canonical(formats.semigroup_to_dict(s))
    return Report("gen-se", "pass", stats={"order": s.order}), artifact


def cmd_check_gji(args) -> tuple[Report, None]:
    a = _load_algebra(args.algebra)
    result = check_gji(a)
    status = "pass" if result.ok else "fail"
    return Report("check-gji", status, _gji_witnesses(result), dict(result.stats)), None


def _split_from_args(a, args) -> SubspaceSplit:
    return SubspaceSplit(_parse_indices(args.v0), a.dim)


def cmd_check_sub(args) -> tuple[Report, None]:
    a = _load_algebra(args.algebra)
    result = check_submultialgebra(a, _split_from_args(a, args))
    witnesses = [
        {"lower": list(lower), "upper": upper, "value": value}
        for lower, upper, value in result.witnesses
    ]
    return Report("check-sub", "pass" if result.ok else "fail", witnesses), None


def cmd_check_reduction(args) -> tuple[Report, None]:
    a = _load_algebra(args.algebra)
    result = check_reduction_condition(a, _split_from_args(a, args))
    witnesses = [
        {"lower": list(lower), "upper": upper, "value": value}
        for lower, upper, value in result.witnesses
    ]
    return Report("check-reduction", "pass" if result.ok else "fail", witnesses), None


def cmd_reduce(args) -> tuple[Report, str]:
    a = _load_algebra(args.algebra)
    reduced = reduced_multialgebra(a, _split_from_args(a, args))
    artifact = formats.dumps_canonical(formats.algebra_to_dict(reduced))
    return Report("reduce", "pass", stats={"dim": reduced.dim}), artifact


def cmd_expand(args) -> tuple[Report, str]:
    a = _load_algebra(args.algebra)
    s = _load_semigroup(args.semigroup)
    expanded = s_expand(a, s)
    artifact = formats.dumps_canonical(formats.expanded_to_dict(expanded))
    return Report("expand", "pass", stats={"dim": expanded.dim}), artifact


def cmd_zero_reduce(args) -> tuple[Report, str]:
    e = formats.expanded_from_dict(formats.load_json(args.expanded))
    s = _load_semigroup(args.semigroup)
    reduced = zero_reduce(e, s)
    artifact = formats.dumps_canonical(formats.expanded_to_dict(reduced))
    return Report("zero-reduce", "pass", stats={"dim": reduced.dim}), artifact


def cmd_extract(args) -> tuple[Report, str]:
    rep = formats.rep_from_dict(formats.load_json(args.rep))
    algebra = extract_constants(rep, args.n)
    artifact = formats.dumps_canonical(formats.algebra_to_dict(algebra))
    stats = {"dim": algebra.dim, "entries": algebra.tensor.nonzero_count}
    return Report("extract", "pass", stats=stats), artifact


def cmd_verify_identity(args) -> tuple[Report, None]:
    rep = formats.rep_from_dict(formats.load_json(args.rep))
    result = verify_identity(rep, args.n, trials=args.trials, seed=args.seed)
    witnesses = [{"args": list(t)} for t in result.witnesses]
    stats = {"checked": result.checked, "violations": len(result.witnesses)}
    status = "pass" if result.ok else "fail"
    return Report("verify-identity", status, witnesses, stats), None


def _load_resonance_inputs(args, need_subsets: bool, need_hat: bool = False):
    a = _load_algebra(args.algebra)
    s = _load_semigroup(args.semigroup)
    d, sd, hat = formats.decomposition_from_dict(formats.load_json(args.decomposition))
    if need_subsets and sd is None:
        raise FormatError("decomposition file lacks the 'subsets' field")
    if need_hat and hat is None:
        raise FormatError("decomposition file lacks the 'hat' field")
    return a, s, d, sd, hat


def _resonant_artifact(r) -> str:
    data = formats.algebra_to_dict(r.algebra)
    data["pairing"] = {
        "base_dim": r.pairing.base_dim,
        "semigroup_order": r.pairing.semigroup_order,
    }
    data["pairs"] = [list(pair) for pair in r.pairs]
    return formats.dumps_canonical(data)


def cmd_resonance_check(args) -> tuple[Report, None]:
    a, s, d, sd, _ = _load_resonance_inputs(args, need_subsets=True)
    result = check_resonance(s, sd, closure_sets(a, d))
    witnesses = [
        {"parts": list(key), "args": list(t), "product": prod, "missing_from": r}
        for key, t, prod, r in result.witnesses
    ]
    status = "pass" if result.ok else "fail"
    return Report("resonance-check", status, witnesses), None


def cmd_resonance_build(args) -> tuple[Report, str]:
    a, s, d, sd, _ = _load_resonance_inputs(args, need_subsets=True)
    r = resonant_subalgebra(a, s, d, sd)
    stats = {"dim": r.dim, "entries": r.algebra.tensor.nonzero_count}
    return Report("resonance-build", "pass", stats=stats), _resonant_artifact(r)


def cmd_resonance_reduce(args) -> tuple[Report, str]:
    a, s, d, sd, hat = _load_resonance_inputs(args, need_subsets=True, need_hat=True)
    r = resonant_subalgebra(a, s, d, sd)
    reduced = reduce_resonant(r, ReductionPartition.from_hat(sd, hat))
    stats = {"dim": reduced.dim, "entries": reduced.algebra.tensor.nonzero_count}
    return Report("resonance-reduce", "pass", stats=stats), _resonant_artifact(reduced)


def cmd_resonance_search(args) -> tuple[Report, str]:
    a, s, d, _, _ = _load_resonance_inputs(args, need_subsets=False)
    result = search_resonant(
        s,
        closure_sets(a, d),
        max_results=args.max_results,
        max_nodes=args.max_nodes,
    )
    payload = {
        "complete": result.complete,
        "decompositions": [
            {label: sorted(v) for label, v in sd.subsets.items()}
            for sd in result.decompositions
        ],
    }
    stats = {
        "found": len(result.decompositions),
        "nodes": result.nodes,
        "complete": result.complete,
    }
    return Report("resonance-search", "pass", stats=stats), formats.dumps_canonical(
        payload
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sexpand",
        description="Exact semigroup expansions of higher-order Lie algebras "
        f"(kernel backend: {BACKEND})",
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit a JSON report")
    common.add_argument("--out", metavar="PATH", help="write the artifact to PATH")
    common.add_argument(
        "--threads",
        type=int,
        default=1,
        metavar="K",
        help="accepted for interface stability; kernels run single-threaded",
    )
    common.add_argument(
        "--seed", type=int, default=0, metavar="U64", help="seed for sampling"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate-semigroup", parents=[common])
    p.add_argument("semigroup")
    p.set_defaults(handler=cmd_validate_semigroup)

    p = sub.add_parser("gen-se", parents=[common])
    p.add_argument("n", type=int)
    p.set_defaults(handler=cmd_gen_se)

    p = sub.add_parser("check-gji", parents=[common])
    p.add_argument("algebra")
    p.set_defaults(handler=cmd_check_gji)

    for name, handler in [
        ("check-sub", cmd_check_sub),
        ("check-reduction", cmd_check_reduction),
        ("reduce", cmd_reduce),
    ]:
        p = sub.add_parser(name, parents=[common])
        p.add_argument("algebra")
        p.add_argument("--v0", required=True, help="comma list of v0 indices")
        p.set_defaults(handler=handler)

    p = sub.add_parser("expand", parents=[common])
    p.add_argument("algebra")
    p.add_argument("semigroup")
    p.set_defaults(handler=cmd_expand)

    p = sub.add_parser("zero-reduce", parents=[common])
    p.add_argument("expanded")
    p.add_argument("semigroup")
    p.set_defaults(handler=cmd_zero_reduce)

    p = sub.add_parser("extract", parents=[common])
    p.add_argument("rep")
    p.add_argument("-n", type=int, required=True, help="bracket arity")
    p.set_defaults(handler=cmd_extract)

    p = sub.add_parser("verify-identity", parents=[common])
    p.add_argument("rep")
    p.add_argument("-n", type=int, required=True, help="bracket arity")
    p.add_argument("--trials", type=int, default=None)
    p.set_defaults(handler=cmd_verify_identity)

    res = sub.add_parser("resonance").add_subparsers(
        dest="subcommand", required=True
    )
    for name, handler, extra in [
        ("check", cmd_resonance_check, ()),
        ("build", cmd_resonance_build, ()),
        ("reduce", cmd_resonance_reduce, ()),
        ("search", cmd_resonance_search, ("budget",)),
    ]:
        p = res.add_parser(name, parents=[common])
        p.add_argument("algebra")
        p.add_argument("semigroup")
        p.add_argument("decomposition")
        if "budget" in extra:
            p.add_argument("--max-results", type=int, default=None)
            p.add_argument("--max-nodes", type=int, default=None)
        p.set_defaults(handler=handler)

    return parser


_FAIL_ERRORS = (
    NotReducible,
    NotResonant,
    NoZeroElement,
    ClosureError,
    RankError,
    InvalidSemigroup,
)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    started = time.perf_counter()
    try:
        report, artifact = args.handler(args)
    except FormatError as exc:
        _print_report(
            Report(args.command, "error", [{"error": str(exc)}]), args.json
        )
        return EXIT_USAGE
    except _FAIL_ERRORS as exc:
        witnesses = [{"error": exc.__class__.__name__, "detail": str(exc)}]
        detail = getattr(exc, "witnesses", None) or getattr(exc, "violations", None)
        if detail:
            witnesses.extend({"witness": _plain(w)} for w in detail)
        witness = getattr(exc, "witness", None)
        if witness:
            witnesses.append({"witness": _plain(witness)})
        _print_report(Report(args.command, "fail", witnesses), args.json)
        return EXIT_FAIL
    except (ValueError, IndexError, ArityError, OddOrderUnsupported) as exc:
        _print_report(
            Report(args.command, "error", [{"error": str(exc)}]), args.json
        )
        return EXIT_USAGE
    except Exception as exc:  # noqa: BLE001 - map anything unexpected to exit 3
        print(f"internal error: {exc!r}", file=sys.stderr)
        return EXIT_INTERNAL
    report.stats.setdefault("seconds", round(time.perf_counter() - started, 6))
    _emit(artifact, args, report)
    return EXIT_PASS if report.status == "pass" else EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
