"""Command-line interface.

Exit status: 0 on success or PASS, 1 on a failed verification, 2 on usage,
file, or size-guard errors.  All output is deterministic.
"""

from __future__ import annotations

import argparse
import itertools
import sys

from .harness import (
    build_ict_tensor,
    ict_witness_family,
    ramsey_homogenize,
    verify_ict,
    verify_pair_xor,
)
from .labelcalc import avoid_family, format_label, parse_label
from .labelcompiler import (
    compile_label,
    format_expr,
    from_interval_expr,
    parse_expr,
    to_interval_expr,
)
from .orderformula import format_formula, formula_arity, label_of_formula, parse_formula
from .setsystem import (
    Classification,
    SetSystem,
    SizeGuardError,
    classify,
    forbidden_label,
    mask_indices,
    mask_from_indices,
    phi_bound,
)


class UsageError(ValueError):
    pass


def _load_system(path: str) -> SetSystem:
    with open(path, "r", encoding="utf-8") as handle:
        return SetSystem.from_text(handle.read())


def _bool_text(value: bool) -> str:
    return "true" if value else "false"


def _indices_text(mask) -> str:
    return ",".join(str(j) for j in mask_indices(mask))


def _cmd_classify(args) -> int:
    system = _load_system(args.path)
    result: Classification = classify(system)
    print(f"ground {system.ground_size}")
    print(f"members {len(system.members)}")
    print(f"vc_dimension {result.vc_dimension}")
    print(f"is_maximum {_bool_text(result.is_maximum)}")
    print(f"is_maximal {_bool_text(result.is_maximal)}")
    profile = " ".join(f"{k}:{count}" for k, count in result.sauer_profile)
    print(f"sauer_profile {profile}")
    return 0


def _cmd_labels(args) -> int:
    system = _load_system(args.path)
    result = classify(system)
    d = result.vc_dimension
    m = system.ground_size
    print(f"dimension {d}")
    if d + 1 > m:
        print("constant vacuous")
        return 0
    seen = set()
    for combo in itertools.combinations(range(m), d + 1):
        region = mask_from_indices(m, combo)
        subset = ",".join(str(j) for j in combo)
        try:
            eta = forbidden_label(system, region)
        except ValueError:
            print(f"subset {subset} not-locally-maximum")
            seen.add(None)
            continue
        print(f"subset {subset} label {format_label(eta)}")
        seen.add(eta)
    if len(seen) == 1 and None not in seen:
        print(f"constant yes {format_label(next(iter(seen)))}")
    else:
        print("constant no")
    return 0


def _cmd_label(args) -> int:
    ast = parse_formula(args.formula)
    arity = formula_arity(ast) if args.arity is None else args.arity
    if arity < formula_arity(ast):
        raise UsageError(
            f"--arity {arity} is below the formula arity {formula_arity(ast)}"
        )
    eta = label_of_formula(ast, arity)
    print(f"label {format_label(eta)}")
    return 0


def _cmd_compile(args) -> int:
    eta = parse_label(args.label)
    print(f"formula {format_formula(compile_label(eta))}")
    print(f"expression {format_expr(to_interval_expr(eta))}")
    return 0


def _cmd_translate(args) -> int:
    if args.label is not None:
        eta = parse_label(args.label)
        print(f"expression {format_expr(to_interval_expr(eta))}")
    else:
        eta = from_interval_expr(parse_expr(args.expr))
        print(f"label {format_label(eta)}")
    return 0


def _cmd_homogenize(args) -> int:
    system = _load_system(args.path)
    subset, eta = ramsey_homogenize(system)
    print(f"subset {_indices_text(subset)}")
    print(f"label {format_label(eta)}")
    print(f"size {sum(subset)}")
    return 0


def _cmd_avoid(args) -> int:
    eta = parse_label(args.label)
    system = avoid_family(args.ground, eta)
    sys.stdout.write(system.to_text())
    return 0


def _write_report(path: str | None, record: dict) -> None:
    if path is None:
        return
    line = " ".join(f"{key}={value}" for key, value in record.items())
    with open(path, "w", encoding="utf-8") as handle:
        handle.write(line + "\n")


def _cmd_verify(args) -> int:
    if args.claim == "l2":
        if args.label is None:
            raise UsageError("verify l2 requires --label")
        eta = parse_label(args.label)
        report = verify_pair_xor(eta, args.pairs)
        verdict = "PASS" if report.passed else "FAIL"
        print(f"{verdict} family={report.family_size} expected={report.expected_size}")
        _write_report(
            args.report,
            {
                "claim": "l2",
                "label": args.label,
                "pairs": args.pairs,
                "family": report.family_size,
                "expected": report.expected_size,
                "pass": _bool_text(report.passed),
            },
        )
        return 0 if report.passed else 1
    if args.claim == "t2":
        tensor = build_ict_tensor(args.depth, args.cols)
        verified = verify_ict(tensor)
        expected = SetSystem.size_exactly(args.cols, args.depth)
        family = ict_witness_family(tensor) if verified else None
        passed = verified and family == expected
        verdict = "PASS" if passed else "FAIL"
        family_size = len(family.members) if family is not None else 0
        print(
            f"{verdict} witnesses={len(tensor.witnesses)} "
            f"family={family_size} expected={len(expected.members)}"
        )
        _write_report(
            args.report,
            {
                "claim": "t2",
                "depth": args.depth,
                "cols": args.cols,
                "witnesses": len(tensor.witnesses),
                "family": family_size,
                "expected": len(expected.members),
                "pass": _bool_text(passed),
            },
        )
        return 0 if passed else 1
    # sauer: avoidance family sizes meet the counting bound on every ground
    if args.label is None:
        raise UsageError("verify sauer requires --label")
    eta = parse_label(args.label)
    d = len(eta) - 1
    failures = [
        m
        for m in range(args.ground + 1)
        if len(avoid_family(m, eta).members) != phi_bound(d, m)
    ]
    passed = not failures
    verdict = "PASS" if passed else "FAIL"
    detail = f" first_failure={failures[0]}" if failures else ""
    print(f"{verdict} cases={args.ground + 1}{detail}")
    _write_report(
        args.report,
        {
            "claim": "sauer",
            "label": args.label,
            "ground": args.ground,
            "cases": args.ground + 1,
            "pass": _bool_text(passed),
        },
    )
    return 0 if passed else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="vclabels",
        description=(
            "Forbidden-label calculus for maximum families on ordered grounds: "
            "classification, label extraction, compilation, translation, and "
            "finite-scale verification."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", help="classify a set system from a file")
    p.add_argument("--in", dest="path", required=True, metavar="FILE")
    p.set_defaults(handler=_cmd_classify)

    p = sub.add_parser("labels", help="per-subset forbidden labels and constancy")
    p.add_argument("--in", dest="path", required=True, metavar="FILE")
    p.set_defaults(handler=_cmd_labels)

    p = sub.add_parser("label", help="extract the label of a formula")
    p.add_argument("--formula", required=True, metavar="TEXT")
    p.add_argument("--arity", type=int, default=None, metavar="N")
    p.set_defaults(handler=_cmd_label)

    p = sub.add_parser("compile", help="compile a label to formula and expression")
    p.add_argument("--label", required=True, metavar="BITS")
    p.set_defaults(handler=_cmd_compile)

    p = sub.add_parser("translate", help="label to expression or expression to label")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--label", metavar="BITS")
    group.add_argument("--expr", metavar="TEXT")
    p.set_defaults(handler=_cmd_translate)

    p = sub.add_parser("homogenize", help="largest label-homogeneous subset")
    p.add_argument("--in", dest="path", required=True, metavar="FILE")
    p.set_defaults(handler=_cmd_homogenize)

    p = sub.add_parser("verify", help="run a verification claim")
    p.add_argument("claim", choices=["sauer", "l2", "t2"])
    p.add_argument("--label", metavar="BITS")
    p.add_argument("--pairs", type=int, default=5, metavar="M")
    p.add_argument("--depth", type=int, default=2, metavar="D")
    p.add_argument("--cols", type=int, default=3, metavar="M")
    p.add_argument("--ground", type=int, default=10, metavar="M")
    p.add_argument("--report", metavar="PATH")
    p.set_defaults(handler=_cmd_verify)

    p = sub.add_parser("avoid", help="emit an avoidance family in file format")
    p.add_argument("--label", required=True, metavar="BITS")
    p.add_argument("--ground", type=int, required=True, metavar="M")
    p.set_defaults(handler=_cmd_avoid)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.handler(args)
    except UsageError as exc:
        print(f"error: usage: {exc}", file=sys.stderr)
        return 2
    except SizeGuardError as exc:
        print(f"error: size guard: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: file: {exc}", file=sys.stderr)
        return 2
    except (ValueError, RuntimeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
