"""Command line front end.

Subcommands cover the deterministic side (check, distance, degree,
classify-relation, enumerate, axioms) and the stochastic side (bm,
rum-check, compare-stochastic). Text output marks chosen alternatives
with brackets ("x [y] z" reads: y chosen from {x,y,z}); JSON output
renders every computed quantity as an exact decimal or p/q string and
round-trips byte for byte through the canonical serializer.

Exit codes: 0 success, 2 invalid input or infeasible request, 3 ground
set over the enumeration cap (IRR_MAX_N raises it).
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import Any, Sequence

from .core import (
    BinaryRelation,
    GroundSet,
    QuasiChoice,
    RationalChoice,
    enumerate_rational_choices,
    enumerate_rational_quasi_choices,
    is_rationalizable,
    nonempty_menus,
    revealed_preference,
    satisfies_alpha,
    satisfies_gamma,
)
from .datasets import (
    canonical_dumps,
    format_fraction,
    load_quasi_choice,
    load_relation,
    load_stochastic,
    load_weights,
)
from .errors import DatasetError, GroundSetTooLarge, IrrError
from .irrationality import irr_degree, weighted_irr_degree
from .metrics import (
    AXIOM_NAMES,
    METRICS,
    check_klamler_axioms,
    delta_distance,
    rat_distance,
)
from .relations import TRACKED_FERRERS, desirability_class, relation_profile
from .stochastic import (
    Verdict,
    bm_table,
    compare_irrationality,
    is_monotonic,
    is_rum,
    kl_divergence,
    negativity_vector,
    total_variation,
)

AXIOM_GROUND_NAMES = ("x", "y", "z", "w", "v", "u")


def _emit(args: argparse.Namespace, text_lines: list[str], payload: dict[str, Any]) -> int:
    if args.output == "json":
        print(canonical_dumps(payload), end="")
    else:
        print("\n".join(text_lines))
    return 0


def bracket_render(choice: QuasiChoice) -> str:
    """One-line table: menus separated by ';', chosen alternatives bracketed."""
    ground = choice.ground
    parts = []
    for menu in nonempty_menus(ground):
        chosen = choice.table[menu]
        bits = []
        for i in range(ground.n):
            if menu >> i & 1:
                name = ground.names[i]
                bits.append(f"[{name}]" if chosen >> i & 1 else name)
        parts.append(" ".join(bits))
    return "; ".join(parts)


def render_relation(rel: BinaryRelation) -> str:
    if not rel.pairs:
        return "(empty)"
    return ", ".join(f"{a} ≻ {b}" for a, b in rel.named_pairs)


def choices_payload(choice: QuasiChoice) -> dict[str, list[str]]:
    ground = choice.ground
    return {
        ground.menu_key(menu): list(ground.names_of(choice.table[menu]))
        for menu in nonempty_menus(ground)
    }


def _vector_text(vec) -> str:
    return "(" + ", ".join(format_fraction(v) for v in vec.as_tuple()) + ")"


def cmd_check(args: argparse.Namespace) -> int:
    choice = load_quasi_choice(args.dataset, default_empty=args.default_empty)
    ground = choice.ground
    alpha_ok, alpha_witnesses = satisfies_alpha(choice)
    gamma_ok, gamma_witnesses = satisfies_gamma(choice)
    lines = []
    if alpha_ok:
        lines.append("alpha: OK")
    else:
        for name, sub, big in alpha_witnesses:
            lines.append(
                f"alpha: FAIL ({name}, {ground.format_menu(sub)} ⊆ "
                f"{ground.format_menu(big)})"
            )
    if gamma_ok:
        lines.append("gamma: OK")
    else:
        for name, a_menu, b_menu in gamma_witnesses:
            lines.append(
                f"gamma: FAIL ({name}, {ground.format_menu(a_menu)} ∪ "
                f"{ground.format_menu(b_menu)})"
            )
    rational, rationalizer = is_rationalizable(choice)
    payload: dict[str, Any] = {
        "alpha": {
            "holds": alpha_ok,
            "witnesses": [
                [name, ground.menu_key(sub), ground.menu_key(big)]
                for name, sub, big in alpha_witnesses
            ],
        },
        "gamma": {
            "holds": gamma_ok,
            "witnesses": [
                [name, ground.menu_key(a), ground.menu_key(b)]
                for name, a, b in gamma_witnesses
            ],
        },
        "rationalizable": rational,
        "revealed_preference": None,
        "rationalizer": None,
        "class": None,
    }
    if not rational:
        lines.append("rationalizable: NO")
    elif choice.is_decisive:
        preference = revealed_preference(choice)
        cls = desirability_class(preference)
        lines.append(f"rationalizable: YES; class {cls.class_index} ({cls.node_label})")
        lines.append(f"revealed preference: {render_relation(preference)}")
        payload["revealed_preference"] = [list(p) for p in preference.named_pairs]
        payload["class"] = {"index": cls.class_index, "label": cls.node_label}
    else:
        lines.append("rationalizable: YES")
        lines.append(f"rationalizer: {render_relation(rationalizer)}")
        payload["rationalizer"] = [list(p) for p in rationalizer.named_pairs]
    return _emit(args, lines, payload)


def cmd_distance(args: argparse.Namespace) -> int:
    left = load_quasi_choice(args.left, default_empty=args.default_empty)
    right = load_quasi_choice(args.right, default_empty=args.default_empty)
    report = (delta_distance if args.metric == "delta" else rat_distance)(left, right)
    ground = left.ground
    lines = [f"distance ({args.metric}): {report.value}"]
    for menu in sorted(report.breakdown):
        lines.append(f"  {ground.format_menu(menu)}: {report.breakdown[menu]}")
    payload = {
        "metric": args.metric,
        "value": str(report.value),
        "breakdown": {
            ground.menu_key(menu): str(v) for menu, v in report.breakdown.items()
        },
    }
    return _emit(args, lines, payload)


def cmd_degree(args: argparse.Namespace) -> int:
    choice = load_quasi_choice(args.dataset, default_empty=args.default_empty)
    if args.weights is not None:
        if args.metric != "rat" or args.benchmark != "decisive":
            raise DatasetError(
                "weights require --metric rat and --benchmark decisive"
            )
        weighting = load_weights(args.weights)
        report = weighted_irr_degree(choice, weighting)
        label = f"degree ({args.metric}, {args.benchmark} benchmark, weighted)"
    else:
        report = irr_degree(choice, METRICS[args.metric], args.benchmark)
        label = f"degree ({args.metric}, {args.benchmark} benchmark)"
    lines = [
        f"{label}: {format_fraction(report.degree)}",
        f"benchmark size: {report.benchmark_size}",
        f"minimizers: {len(report.minimizers)}",
    ]
    nearest = report.minimizers[0]
    payload: dict[str, Any] = {
        "metric": args.metric,
        "benchmark": args.benchmark,
        "weighted": args.weights is not None,
        "degree": format_fraction(report.degree),
        "benchmark_size": report.benchmark_size,
        "minimizer_count": len(report.minimizers),
    }
    if isinstance(nearest, RationalChoice):
        cls = desirability_class(nearest.relation)
        lines.append(f"nearest: {bracket_render(nearest.choice)}")
        lines.append(f"nearest relation: {render_relation(nearest.relation)}")
        lines.append(f"nearest class: {cls.class_index} ({cls.node_label})")
        payload["nearest"] = {
            "choices": choices_payload(nearest.choice),
            "relation": [list(p) for p in nearest.relation.named_pairs],
            "class": {"index": cls.class_index, "label": cls.node_label},
        }
    else:
        lines.append(f"nearest: {bracket_render(nearest)}")
        payload["nearest"] = {"choices": choices_payload(nearest)}
    return _emit(args, lines, payload)


def cmd_classify_relation(args: argparse.Namespace) -> int:
    rel = load_relation(args.dataset)
    profile = relation_profile(rel)
    lines = [
        f"asymmetric: {'yes' if profile.asymmetric else 'no'}",
        f"irreflexive: {'yes' if profile.irreflexive else 'no'}",
        f"acyclic: {'yes' if profile.acyclic else 'no'}",
        f"transitive: {'yes' if profile.transitive else 'no'}",
        f"negatively transitive: {'yes' if profile.negatively_transitive else 'no'}",
    ]
    payload: dict[str, Any] = {
        "asymmetric": profile.asymmetric,
        "irreflexive": profile.irreflexive,
        "acyclic": profile.acyclic,
        "transitive": profile.transitive,
        "negatively_transitive": profile.negatively_transitive,
        "ferrers": None,
        "class": None,
    }
    if profile.ferrers is None:
        lines.append("ferrers: n/a (not asymmetric-acyclic)")
        lines.append("class: n/a")
    else:
        for m, n in TRACKED_FERRERS:
            lines.append(
                f"ferrers ({m},{n}): {'yes' if profile.ferrers[(m, n)] else 'no'}"
            )
        cls = desirability_class(rel)
        lines.append(f"class: {cls.class_index} ({cls.node_label})")
        payload["ferrers"] = {
            f"{m},{n}": profile.ferrers[(m, n)] for m, n in TRACKED_FERRERS
        }
        payload["class"] = {"index": cls.class_index, "label": cls.node_label}
    return _emit(args, lines, payload)


def cmd_bm(args: argparse.Namespace) -> int:
    scf = load_stochastic(args.dataset)
    ground = scf.ground
    table = bm_table(scf)
    rows = []
    for menu in nonempty_menus(ground):
        p_cells = []
        q_cells = []
        for i, name in enumerate(ground.names):
            if menu >> i & 1:
                p_cells.append(format_fraction(scf.table[menu][i]))
                q = table.q[(name, menu)]
                q_cells.append(format_fraction(q) + ("*" if q < 0 else ""))
            else:
                p_cells.append(".")
                q_cells.append(".")
        rows.append((ground.format_menu(menu), p_cells, q_cells))
    header = (
        "menu",
        [f"p({name})" for name in ground.names],
        [f"q({name})" for name in ground.names],
    )
    widths_menu = max(len(header[0]), max(len(r[0]) for r in rows))
    widths_p = [
        max(len(header[1][i]), max(len(r[1][i]) for r in rows))
        for i in range(ground.n)
    ]
    widths_q = [
        max(len(header[2][i]), max(len(r[2][i]) for r in rows))
        for i in range(ground.n)
    ]

    def fmt_row(menu_cell: str, p_cells: list[str], q_cells: list[str]) -> str:
        cells = [menu_cell.ljust(widths_menu)]
        cells += [c.rjust(widths_p[i]) for i, c in enumerate(p_cells)]
        cells += [c.rjust(widths_q[i]) for i, c in enumerate(q_cells)]
        return "  ".join(cells)

    lines = [fmt_row(header[0], header[1], header[2])]
    lines += [fmt_row(*row) for row in rows]
    negatives = table.negatives()
    lines.append(
        f"negative polynomials: {len(negatives)}" if negatives else "negative polynomials: 0"
    )
    payload = {
        "alternatives": list(ground.names),
        "p": {
            ground.menu_key(menu): {
                name: format_fraction(scf.value(name, menu))
                for name in ground.names_of(menu)
            }
            for menu in nonempty_menus(ground)
        },
        "q": {
            ground.menu_key(menu): {
                name: format_fraction(table.q[(name, menu)])
                for name in ground.names_of(menu)
            }
            for menu in nonempty_menus(ground)
        },
        "negatives": [
            [name, ground.menu_key(menu), format_fraction(value)]
            for name, menu, value in negatives
        ],
    }
    return _emit(args, lines, payload)


def cmd_rum_check(args: argparse.Namespace) -> int:
    scf = load_stochastic(args.dataset)
    ground = scf.ground
    rum, negatives = is_rum(scf)
    vector = negativity_vector(scf)
    monotone, violations = is_monotonic(scf)
    lines = []
    if rum:
        lines.append("RUM: YES")
    else:
        noun = "polynomial" if len(negatives) == 1 else "polynomials"
        lines.append(f"RUM: NO ({len(negatives)} negative {noun})")
        for name, menu, value in negatives:
            lines.append(
                f"  q({name}, {ground.format_menu(menu)}) = {format_fraction(value)}"
            )
    lines.append(f"negativity vector: {_vector_text(vector)}")
    if monotone:
        lines.append("monotonic: YES")
    else:
        noun = "violation" if len(violations) == 1 else "violations"
        lines.append(f"monotonic: NO ({len(violations)} {noun})")
        for name, sub, big in violations:
            lines.append(
                f"  p({name}, {ground.format_menu(big)}) = "
                f"{format_fraction(scf.value(name, big))} > "
                f"p({name}, {ground.format_menu(sub)}) = "
                f"{format_fraction(scf.value(name, sub))}"
            )
    payload = {
        "rum": rum,
        "negatives": [
            [name, ground.menu_key(menu), format_fraction(value)]
            for name, menu, value in negatives
        ],
        "negativity_vector": {
            name: format_fraction(vector.v[name]) for name in ground.names
        },
        "monotonic": monotone,
        "monotonicity_violations": [
            [name, ground.menu_key(sub), ground.menu_key(big)]
            for name, sub, big in violations
        ],
    }
    return _emit(args, lines, payload)


def cmd_compare_stochastic(args: argparse.Namespace) -> int:
    left = load_stochastic(args.left)
    right = load_stochastic(args.right)
    left_name = Path(args.left).stem
    right_name = Path(args.right).stem
    if left_name == right_name:
        left_name, right_name = "left", "right"
    ground = left.ground
    result = compare_irrationality(left, right)
    lv = negativity_vector(left)
    rv = negativity_vector(right)
    verdict_text = {
        Verdict.EQUALLY_IRRATIONAL: f"{left_name} and {right_name} equally irrational",
        Verdict.LEFT_LESS: f"{left_name} strictly less irrational than {right_name}",
        Verdict.RIGHT_LESS: f"{right_name} strictly less irrational than {left_name}",
        Verdict.INCOMPARABLE: f"{left_name} and {right_name} incomparable",
    }[result.verdict]
    tv = total_variation(left, right)
    kl_lr = kl_divergence(left, right)
    kl_rl = kl_divergence(right, left)
    lines = [
        f"negativity vector ({left_name}): {_vector_text(lv)}",
        f"negativity vector ({right_name}): {_vector_text(rv)}",
        f"verdict: {verdict_text}",
    ]
    if result.left_to_right is not None:
        sigma = ", ".join(
            f"{a} -> {result.left_to_right[a]}" for a in ground.names
        )
        lines.append(f"witness ({left_name} -> {right_name}): {sigma}")
    if result.right_to_left is not None:
        sigma = ", ".join(
            f"{a} -> {result.right_to_left[a]}" for a in ground.names
        )
        lines.append(f"witness ({right_name} -> {left_name}): {sigma}")
    lines.append(f"total variation: {format_fraction(tv)}")
    lines.append(f"KL({left_name}||{right_name}): {kl_lr:.12g}")
    lines.append(f"KL({right_name}||{left_name}): {kl_rl:.12g}")
    payload = {
        "left": left_name,
        "right": right_name,
        "left_vector": {name: format_fraction(lv.v[name]) for name in ground.names},
        "right_vector": {name: format_fraction(rv.v[name]) for name in ground.names},
        "verdict": result.verdict.value,
        "verdict_text": verdict_text,
        "left_to_right": dict(result.left_to_right) if result.left_to_right else None,
        "right_to_left": dict(result.right_to_left) if result.right_to_left else None,
        "total_variation": format_fraction(tv),
        "kl_left_right": f"{kl_lr:.12g}",
        "kl_right_left": f"{kl_rl:.12g}",
    }
    return _emit(args, lines, payload)


def cmd_axioms(args: argparse.Namespace) -> int:
    if not 2 <= args.n <= len(AXIOM_GROUND_NAMES):
        raise DatasetError(f"-n must be between 2 and {len(AXIOM_GROUND_NAMES)}")
    ground = GroundSet(AXIOM_GROUND_NAMES[: args.n])
    results = check_klamler_axioms(
        METRICS[args.metric], ground, samples=args.samples, seed=args.seed
    )
    ordered = [results[name] for name in AXIOM_NAMES]
    lines = [f"metric: {args.metric}"]
    for result in ordered:
        if result.passed:
            lines.append(f"{result.axiom}: PASS ({result.checked} instances)")
        else:
            lines.append(f"{result.axiom}: FAIL ({result.counterexample})")
    payload = {
        "metric": args.metric,
        "n": args.n,
        "seed": args.seed,
        "samples": args.samples,
        "results": [
            {
                "axiom": r.axiom,
                "passed": r.passed,
                "checked": r.checked,
                "counterexample": r.counterexample,
            }
            for r in ordered
        ],
    }
    return _emit(args, lines, payload)


def cmd_enumerate(args: argparse.Namespace) -> int:
    if not 2 <= args.n <= len(AXIOM_GROUND_NAMES):
        raise DatasetError(f"-n must be between 2 and {len(AXIOM_GROUND_NAMES)}")
    ground = GroundSet(AXIOM_GROUND_NAMES[: args.n])
    lines = [f"benchmark: {args.benchmark}", f"n: {args.n}"]
    payload: dict[str, Any] = {"benchmark": args.benchmark, "n": args.n}
    if args.benchmark == "quasi":
        members = enumerate_rational_quasi_choices(ground)
        count = len(members)
        if args.list:
            lines += [bracket_render(member) for member in members]
            payload["members"] = [choices_payload(member) for member in members]
    else:
        members = enumerate_rational_choices(ground)
        count = len(members)
        if args.list:
            lines += [
                f"{bracket_render(member.choice)}  |  {render_relation(member.relation)}"
                for member in members
            ]
            payload["members"] = [
                {
                    "choices": choices_payload(member.choice),
                    "relation": [list(p) for p in member.relation.named_pairs],
                }
                for member in members
            ]
    lines.insert(2, f"count: {count}")
    payload["count"] = count
    return _emit(args, lines, payload)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="irr",
        description="Degrees of irrationality for deterministic and stochastic choice.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name: str, handler, help_text: str) -> argparse.ArgumentParser:
        p = sub.add_parser(name, help=help_text)
        p.set_defaults(handler=handler)
        p.add_argument(
            "--output", choices=("text", "json"), default="text",
            help="report format (default text)",
        )
        return p

    p = add("check", cmd_check, "test a choice dataset for alpha, gamma, rationalizability")
    p.add_argument("dataset", help="choice dataset (JSON)")
    p.add_argument(
        "--default-empty", action="store_true",
        help="treat menus missing from the dataset as empty choices",
    )

    p = add("distance", cmd_distance, "distance between two choice datasets")
    p.add_argument("left", help="choice dataset (JSON)")
    p.add_argument("right", help="choice dataset (JSON)")
    p.add_argument("--metric", choices=tuple(METRICS), required=True)
    p.add_argument("--default-empty", action="store_true")

    p = add("degree", cmd_degree, "degree of irrationality against a benchmark")
    p.add_argument("dataset", help="choice dataset (JSON)")
    p.add_argument("--metric", choices=tuple(METRICS), required=True)
    p.add_argument("--benchmark", choices=("quasi", "decisive"), required=True)
    p.add_argument("--weights", help="rank weighting map (JSON)")
    p.add_argument("--default-empty", action="store_true")

    p = add("classify-relation", cmd_classify_relation, "predicate profile and class")
    p.add_argument("dataset", help="relation dataset (JSON)")

    p = add("bm", cmd_bm, "table of alternating-sum polynomials")
    p.add_argument("dataset", help="stochastic dataset (JSON)")

    p = add("rum-check", cmd_rum_check, "random-utility test with negativity vector")
    p.add_argument("dataset", help="stochastic dataset (JSON)")

    p = add("compare-stochastic", cmd_compare_stochastic, "irrationality preorder verdict")
    p.add_argument("left", help="stochastic dataset (JSON)")
    p.add_argument("right", help="stochastic dataset (JSON)")

    p = add("axioms", cmd_axioms, "audit a metric against the axiom battery")
    p.add_argument("--metric", choices=tuple(METRICS), required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--samples", type=int, default=200)
    p.add_argument("-n", type=int, default=3, help="ground set size (default 3)")

    p = add("enumerate", cmd_enumerate, "count or list a rational benchmark")
    p.add_argument("--benchmark", choices=("quasi", "decisive"), required=True)
    p.add_argument("-n", type=int, required=True, help="ground set size")
    p.add_argument("--list", action="store_true", help="print every member")

    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.handler(args)
    except GroundSetTooLarge as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except IrrError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
