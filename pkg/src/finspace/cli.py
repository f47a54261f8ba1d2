"""Command line interface.

Subcommands: build (orbit model of a presentation), zn (explicit cyclic
or abelian models), verify (full consistency report as JSON), pi1
(simplified edge-path presentation of the model), info (predicted size).
Exit codes: 0 success / verified-or-consistent, 1 refuted or violations,
2 usage errors, 3 budget or oracle exhaustion."""

from __future__ import annotations

import argparse
import json
import sys

from .cayley import AttachingMapViolation, build_cayley_complex
from .cyclic import abelian_space, build_zn_quotient
from .fundamental import verify_pi1
from .groups import (
    AbelianizationOracle,
    CosetTableOracle,
    NotEnumerated,
    abelian_invariants,
    todd_coxeter,
)
from .orbit_model import predicted_cardinality, quotient_model
from .posets import (
    QuotientNotT0,
    SearchBudgetExceeded,
    chain_space,
    check_properly_discontinuous,
    induced_action,
    isomorphic,
    quotient,
)
from .presentations import (
    OracleInconclusive,
    PresentationError,
    StepBudgetExceeded,
    TrivialPresentedGroup,
    parse_presentation,
    reduce_presentation,
)
from .render import render_poset
from . import cayley

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2
EXIT_BUDGET = 3


def _emit(text: str, output: str | None) -> None:
    if output:
        with open(output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _certified(pres, max_cosets):
    """Reduce a presentation with the best oracle available: the exact one
    when coset enumeration completes, otherwise the abelianization oracle.
    Returns (reduced, table or None)."""
    try:
        table = todd_coxeter(pres, max_cosets)
        oracle = CosetTableOracle(table)
    except NotEnumerated:
        table = None
        oracle = AbelianizationOracle(pres)
    rp = reduce_presentation(pres, oracle)
    if table is not None and rp.presentation != pres:
        table = todd_coxeter(rp.presentation, max_cosets)
    return rp, table


def _cmd_build(args) -> int:
    pres = parse_presentation(args.presentation)
    rp, _ = _certified(pres, args.max_cosets)
    model = quotient_model(rp)
    _emit(render_poset(model.poset, args.format), args.output)
    return EXIT_OK


def _cmd_zn(args) -> int:
    if args.orders is not None:
        orders = [int(v) for v in args.orders.split(",") if v.strip() != ""]
        space = abelian_space(orders)
    else:
        space = build_zn_quotient(args.n)
    _emit(render_poset(space, args.format), args.output)
    return EXIT_OK


def _cmd_info(args) -> int:
    pres = parse_presentation(args.presentation)
    size = predicted_cardinality(pres)
    _emit(f"{size}\n", args.output)
    return EXIT_OK


def _cmd_pi1(args) -> int:
    pres = parse_presentation(args.presentation)
    rp, _ = _certified(pres, args.max_cosets)
    model = quotient_model(rp)
    report = verify_pi1(
        model.poset, pres, max_cosets=args.max_cosets, tietze_budget=args.tietze_budget
    )
    if args.format == "json":
        _emit(json.dumps(report.to_json_dict(), indent=2) + "\n", args.output)
    else:
        simplified = (
            report.simplified.format() if report.simplified.generators else "< | >"
        )
        lines = [
            f"space: {model.poset.n} points (model of {rp.format()})",
            f"pi1 presentation: {simplified}",
            f"abelianization: {report.space_invariants}",
            f"status vs target: {report.status}",
        ]
        _emit("\n".join(lines) + "\n", args.output)
    if report.status == "refuted":
        return EXIT_FAIL
    if report.status == "inconclusive":
        return EXIT_BUDGET
    return EXIT_OK


def _cmd_verify(args) -> int:
    pres = parse_presentation(args.presentation)
    rp, table = _certified(pres, args.max_cosets)
    model = quotient_model(rp)
    result: dict = {
        "presentation": pres.format(),
        "reduced_presentation": rp.format(),
        "reduced_status": rp.certificate.status,
        "oracle": rp.certificate.oracle,
        "group_order": table.size if table else None,
        "abelian_invariants": str(abelian_invariants(pres)),
        "predicted_cardinality": predicted_cardinality(rp.presentation),
        "actual_cardinality": model.poset.n,
        "connected": model.poset.is_connected(),
        "beat_points": [model.poset.labels[x] for x in model.poset.beat_points()],
    }
    failures = []
    if result["predicted_cardinality"] != result["actual_cardinality"]:
        failures.append("cardinality formula mismatch")
    if not result["connected"]:
        failures.append("model space is not connected")

    if table is not None:
        complex = build_cayley_complex(rp, table)
        cs = chain_space(complex.cells(), complex.boundary_order(), cayley.cell_label)
        action = induced_action(
            complex.cell_action(), table.multiplication_table(), cs
        )
        pd = check_properly_discontinuous(cs.poset, action)
        explicit = quotient(cs.poset, action)
        mapping = isomorphic(model.poset, explicit)
        result["chain_space_points"] = cs.poset.n
        result["properly_discontinuous"] = pd.passed
        result["symbolic_matches_explicit"] = mapping is not None
        if not pd.passed:
            failures.append("action is not properly discontinuous")
        if mapping is None:
            failures.append("symbolic and explicit models are not isomorphic")
    else:
        result["chain_space_points"] = None
        result["properly_discontinuous"] = None
        result["symbolic_matches_explicit"] = None

    report = verify_pi1(
        model.poset, pres, max_cosets=args.max_cosets, tietze_budget=args.tietze_budget
    )
    result["pi1"] = report.to_json_dict()
    result["failures"] = failures
    _emit(json.dumps(result, indent=2) + "\n", args.output)
    if failures or report.status == "refuted":
        return EXIT_FAIL
    if report.status == "inconclusive":
        return EXIT_BUDGET
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="finspace",
        description="Finite topological spaces with a prescribed fundamental group.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(sp, presentation=True):
        if presentation:
            sp.add_argument("presentation", help='presentation text, e.g. "< a | a^2 >"')
        sp.add_argument("--format", choices=("dot", "json", "text"), default="json")
        sp.add_argument("--output", help="write to a file instead of stdout")
        sp.add_argument("--max-cosets", type=int, default=100_000)
        sp.add_argument("--tietze-budget", type=int, default=10_000)

    common(sub.add_parser("build", help="emit the orbit model of a presentation"))
    zn = sub.add_parser("zn", help="emit an explicit cyclic or abelian model")
    zn.add_argument("--n", type=int, help="cyclic group order (>= 2)")
    zn.add_argument("--orders", help='comma list of cyclic orders, e.g. "2,3,0"')
    zn.add_argument("--format", choices=("dot", "json", "text"), default="json")
    zn.add_argument("--output")
    common(sub.add_parser("verify", help="full JSON consistency report"))
    common(sub.add_parser("pi1", help="simplified fundamental group presentation"))
    common(sub.add_parser("info", help="predicted model size"))
    return parser


_HANDLERS = {
    "build": _cmd_build,
    "zn": _cmd_zn,
    "verify": _cmd_verify,
    "pi1": _cmd_pi1,
    "info": _cmd_info,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "zn" and (args.n is None) == (args.orders is None):
        parser.error("zn needs exactly one of --n or --orders")
    try:
        return _HANDLERS[args.command](args)
    except PresentationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        if isinstance(exc, (OracleInconclusive,)):
            return EXIT_BUDGET
        if isinstance(exc, TrivialPresentedGroup):
            print(
                "the presented group is trivial; a one-point space models it",
                file=sys.stderr,
            )
            return EXIT_FAIL
        return EXIT_USAGE
    except (NotEnumerated, StepBudgetExceeded, SearchBudgetExceeded) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (AttachingMapViolation, QuotientNotT0) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
