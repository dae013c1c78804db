"""Command-line front door: group ingestion, experiment suites, reports.

Every subcommand assembles a plain-dict report and emits it as JSON
(sorted keys, so identical runs are byte-identical apart from the
timestamp header) or markdown. Exit codes: 0 clean, 1 a sweep observed an
invariant violation, 2 parse error, 3 bound exceeded.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from dataclasses import dataclass
from multiprocessing import Pool
from typing import Any, Optional, Sequence

from . import _kernels
from .actions import (
    GroupAction,
    action_point_roundtrip,
    enumerate_actions,
    point_action_roundtrip,
    point_of,
    semidirect,
)
from .commutators import (
    binary_commutator,
    higher_commutator_oracle,
    huq_commutator,
    ternary_recipe,
)
from .conjugation import propercrit_sweep, property_p_sweep
from .errors import BoundExceeded, FinactError, ParseError, UnsupportedParameter
from .groups import (
    FiniteGroup,
    family_groups,
    make_group,
    named_group,
    subgroup,
)
from .pairs import nonexactness_demo, pair_sweep
from .talgebra import talgebra_report
from .words import format_word, free_product, in_cross_effect, in_multi_cross_effect, in_retraction_kernel, parse_word, product_image

ENV_PREFIX = "SEMIAB_"


@dataclass
class RunConfig:
    command: str
    max_order: int = 12
    max_syllables: int = 5
    format: str = "json"
    jobs: int = 1
    seed: int = 0
    out: Optional[str] = None


# ---------------------------------------------------------------------------
# input parsing


def parse_group_file(path: str) -> FiniteGroup:
    """Load a group from JSON: a Cayley table or a permutation presentation."""
    try:
        with open(path) as fh:
            data = json.load(fh)
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}")
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: {exc.msg} (line {exc.lineno} col {exc.colno})", exc.pos)
    return group_from_json(data, default_name=os.path.basename(path))


def group_from_json(data: Any, default_name: str = "G") -> FiniteGroup:
    if isinstance(data, str):
        try:
            return named_group(data)
        except UnsupportedParameter as exc:
            raise ParseError(str(exc))
    if not isinstance(data, dict):
        raise ParseError("group JSON must be an object or a name string")
    if "cayley" in data:
        cayley = data["cayley"]
        if not isinstance(cayley, list):
            raise ParseError("cayley must be a list of rows")
        if "order" in data and data["order"] != len(cayley):
            raise ParseError("declared order does not match the table size")
        try:
            return make_group(cayley, name=data.get("name", default_name))
        except FinactError as exc:
            raise ParseError(f"invalid Cayley table: {exc}")
    if "generators" in data:
        return group_from_permutations(
            int(data.get("degree", 0)),
            data["generators"],
            name=data.get("name", default_name),
        )
    raise ParseError("group JSON needs either a cayley table or generators")


def group_from_permutations(
    degree: int, generators: Sequence[Sequence[Sequence[int]]], name: str = "G"
) -> FiniteGroup:
    """Close cycle-notation generators into a full permutation group."""
    if degree < 1:
        raise ParseError("degree must be at least 1")
    gens = []
    for cycles in generators:
        perm = list(range(degree))
        for cycle in cycles:
            if len(set(cycle)) != len(cycle):
                raise ParseError(f"repeated point in cycle {cycle}")
            for i, point in enumerate(cycle):
                if not 0 <= point < degree:
                    raise ParseError(f"cycle point {point} out of range")
                perm[cycle[i]] = cycle[(i + 1) % len(cycle)]
        gens.append(tuple(perm))
    identity = tuple(range(degree))
    elements = {identity}
    frontier = [identity]
    while frontier:
        fresh = []
        for p in frontier:
            for q in gens:
                r = tuple(p[q[i]] for i in range(degree))
                if r not in elements:
                    elements.add(r)
                    fresh.append(r)
        frontier = fresh
    ordered = sorted(elements)
    index = {p: i for i, p in enumerate(ordered)}
    cay = tuple(
        tuple(index[tuple(p[q[i]] for i in range(degree))] for q in ordered)
        for p in ordered
    )
    inv = []
    for p in ordered:
        back = [0] * degree
        for i, v in enumerate(p):
            back[v] = i
        inv.append(index[tuple(back)])
    return FiniteGroup(len(ordered), cay, index[identity], tuple(inv), name=name)


def action_from_json(data: Any) -> GroupAction:
    if not isinstance(data, dict) or "table" not in data:
        raise ParseError("action JSON needs acting, acted and table")
    acting = group_from_json(data.get("acting", "Z1"), "acting")
    acted = group_from_json(data.get("acted", "Z1"), "acted")
    table = data["table"]
    try:
        return GroupAction(acting, acted, tuple(tuple(row) for row in table))
    except (ValueError, TypeError) as exc:
        raise ParseError(f"bad action table: {exc}")


# ---------------------------------------------------------------------------
# report plumbing


def _report_header(config: RunConfig, command: str) -> dict:
    return {
        "tool": "finact",
        "command": command,
        "kernel_backend": _kernels.BACKEND,
        "bounds": {
            "max_order": config.max_order,
            "max_syllables": config.max_syllables,
        },
        "jobs": config.jobs,
        "seed": config.seed,
        "generated_unix": int(time.time()),
    }


def _emit(report: dict, config: RunConfig) -> None:
    if config.format == "markdown":
        text = _to_markdown(report)
    else:
        text = json.dumps(report, indent=2, sort_keys=True) + "\n"
    if config.out:
        with open(config.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _to_markdown(node: Any, depth: int = 0) -> str:
    pad = "  " * depth
    if isinstance(node, dict):
        lines = []
        for key in sorted(node):
            value = node[key]
            if isinstance(value, (dict, list)):
                lines.append(f"{pad}- **{key}**:")
                lines.append(_to_markdown(value, depth + 1))
            else:
                lines.append(f"{pad}- **{key}**: {value}")
        return "\n".join(lines) + ("\n" if depth == 0 else "")
    if isinstance(node, list):
        if not node:
            return f"{pad}- (none)"
        return "\n".join(
            _to_markdown(item, depth) if isinstance(item, (dict, list))
            else f"{pad}- {item}"
            for item in node
        )
    return f"{pad}- {node}"


def _parse_members(text: str) -> list[int]:
    try:
        return [int(tok) for tok in text.replace(",", " ").split()]
    except ValueError:
        raise ParseError(f"bad member list {text!r}")


# ---------------------------------------------------------------------------
# subcommand handlers; each returns (report_body, violations?)


def _cmd_groups_ingest(args, config: RunConfig):
    g = parse_group_file(args.path)
    return {
        "name": g.name,
        "order": g.order,
        "abelian": g.is_abelian,
        "identity": g.identity,
        "element_orders": dict(
            (str(o), c) for o, c in g.order_profile
        ),
    }, False


def _cmd_words_eval(args, config: RunConfig):
    factors = [named_group(t) for t in args.factors.split(",")]
    tags = args.tags.split(",") if args.tags else None
    fp = free_product(*factors, tags=tags)
    w = parse_word(args.word, fp)
    body: dict[str, Any] = {
        "input": args.word,
        "normal_form": format_word(w),
        "syllables": w.length,
        "product_image": list(product_image(w)),
    }
    if len(factors) == 2:
        body["in_retraction_kernel"] = in_retraction_kernel(w)
        body["in_cross_effect"] = in_cross_effect(w)
    if len(factors) >= 2:
        body["in_multi_cross_effect"] = in_multi_cross_effect(w)
    return body, False


def _load_json(path: str) -> Any:
    try:
        with open(path) as fh:
            return json.load(fh)
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}")
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: {exc.msg} (line {exc.lineno} col {exc.colno})", exc.pos)


def _cmd_actions_enumerate(args, config: RunConfig):
    g = named_group(args.g)
    a = named_group(args.a)
    acts = enumerate_actions(g, a)
    return {
        "acting": g.name,
        "acted": a.name,
        "count": len(acts),
        "tables": [list(map(list, act.table)) for act in acts],
    }, False


def _cmd_actions_roundtrip(args, config: RunConfig):
    g = named_group(args.g)
    a = named_group(args.a)
    acts = enumerate_actions(g, a)
    failures = []
    for i, act in enumerate(acts):
        if not action_point_roundtrip(act).ok:
            failures.append({"action": i, "direction": "action->point->action"})
        if not point_action_roundtrip(point_of(semidirect(act))).ok:
            failures.append({"action": i, "direction": "point->action->point"})
    return {
        "acting": g.name,
        "acted": a.name,
        "actions": len(acts),
        "failures": failures,
    }, bool(failures)


def _cmd_semidirect_build(args, config: RunConfig):
    if args.action:
        act = action_from_json(_load_json(args.action))
    else:
        g = named_group(args.g)
        a = named_group(args.a)
        acts = enumerate_actions(g, a)
        if not 0 <= args.index < len(acts):
            raise ParseError(f"action index {args.index} out of range (have {len(acts)})")
        act = acts[args.index]
    sd = semidirect(act)
    return {
        "acting": act.acting.name,
        "acted": act.acted.name,
        "order": sd.group.order,
        "cayley": [list(row) for row in sd.group.cayley],
        "embed": list(sd.embed.mapping),
        "section": list(sd.section.mapping),
        "project": list(sd.project.mapping),
    }, False


def _cmd_commutator(args, config: RunConfig):
    if not args.group and not args.group_file:
        raise ParseError("need --group or --group-file")
    g = named_group(args.group) if args.group else parse_group_file(args.group_file)
    x = subgroup(g, _parse_members(args.x))
    y = subgroup(g, _parse_members(args.y))
    body: dict[str, Any] = {"group": g.name}
    if args.z:
        z = subgroup(g, _parse_members(args.z))
        res = ternary_recipe(x, y, z, oracle_max_syllables=config.max_syllables + 3)
        body["recipe_members"] = list(res.subgroup.members)
        body["oracle_flag"] = res.oracle_flag
        body["oracle_agreement"] = res.agreement
        violations = res.agreement == "mismatch"
    else:
        com = binary_commutator(x, y)
        body["members"] = list(com.members)
        body["huq_members"] = list(huq_commutator(x, y).members)
        oracle = higher_commutator_oracle((x, y), max_syllables=8)
        body["oracle_members"] = list(oracle.subgroup.members)
        body["oracle_flag"] = oracle.flag
        violations = oracle.stabilized and oracle.subgroup.members != com.members
    return body, violations


def _cmd_talgebra_check(args, config: RunConfig):
    if args.action:
        act = action_from_json(_load_json(args.action))
    else:
        g = named_group(args.g)
        a = named_group(args.a)
        acts = enumerate_actions(g, a)
        if not 0 <= args.index < len(acts):
            raise ParseError(f"action index {args.index} out of range (have {len(acts)})")
        act = acts[args.index]
    rep = talgebra_report(act, config.max_syllables)
    return {
        "acting": act.acting.name,
        "acted": act.acted.name,
        "unit_ok": rep.unit_ok,
        "endo_diagram_ok": rep.endo_diagram_ok,
        "assoc_diagram_ok": rep.assoc_diagram_ok,
        "third_diagram_ok": rep.third_diagram_ok,
        "is_algebra": rep.is_algebra,
    }, False


def _sweep_one(name: str) -> dict:
    rep = propercrit_sweep(named_group(name))
    return {
        "group": rep.group,
        "pairs": rep.checked,
        "violations": [dict(v) for v in rep.violations],
    }


def _property_p_one(name: str) -> dict:
    rep = property_p_sweep(named_group(name))
    return {
        "group": rep.group,
        "subgroups": rep.checked,
        "violations": [dict(v) for v in rep.violations],
    }


def _cmd_propercrit_sweep(args, config: RunConfig):
    names = [g.name for g in family_groups(config.max_order)]
    if config.jobs > 1:
        with Pool(config.jobs) as pool:
            results = pool.map(_sweep_one, names)
    else:
        results = [_sweep_one(n) for n in names]
    violations = sum(len(r["violations"]) for r in results)
    return {
        "groups": len(results),
        "pairs_checked": sum(r["pairs"] for r in results),
        "violation_count": violations,
        "per_group": results,
    }, violations > 0


def _cmd_property_p(args, config: RunConfig):
    if args.group:
        names = [args.group]
    else:
        names = [g.name for g in family_groups(config.max_order)]
    if config.jobs > 1:
        with Pool(config.jobs) as pool:
            results = pool.map(_property_p_one, names)
    else:
        results = [_property_p_one(n) for n in names]
    violations = sum(len(r["violations"]) for r in results)
    return {
        "groups": len(results),
        "subgroups_checked": sum(r["subgroups"] for r in results),
        "violation_count": violations,
        "per_group": results,
    }, violations > 0


def _cmd_pairs_demo(args, config: RunConfig):
    return nonexactness_demo(), False


def _cmd_pairs_sweep(args, config: RunConfig):
    groups = family_groups(config.max_order)
    rep = pair_sweep(groups)
    body = {
        "ambient_pairs": rep.ambients,
        "subobjects": rep.subobjects,
        "proper": rep.proper_count,
        "normal": rep.normal_count,
        "proper_not_normal": rep.proper_not_normal,
        "normal_not_proper": rep.normal_not_proper,
        "cokernel_small_formula_ok": rep.cokernel_small_formula_ok,
        "cokernel_c_independent": rep.cokernel_c_independent,
        "conjugation_on_normal_ok": rep.conjugation_on_normal_ok,
        "properness_matches_intersection_formula": rep.intersection_formula_matches,
        "properness_matches_union_formula": rep.union_formula_matches,
        "witness": rep.witness,
    }
    # a missing witness at tiny bounds is not a violation; broken laws are
    violations = (
        rep.proper_not_normal > 0
        or not rep.cokernel_small_formula_ok
        or not rep.cokernel_c_independent
        or not rep.conjugation_on_normal_ok
    )
    return body, violations


# ---------------------------------------------------------------------------
# argument wiring


def _env_default(name: str, fallback):
    raw = os.environ.get(ENV_PREFIX + name.upper())
    if raw is None:
        return fallback
    if isinstance(fallback, int):
        return int(raw)
    return raw


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--max-order", type=int, default=_env_default("max_order", 12))
    common.add_argument(
        "--max-syllables", type=int, default=_env_default("max_syllables", 5)
    )
    common.add_argument(
        "--format",
        choices=("json", "markdown"),
        default=_env_default("format", "json"),
    )
    common.add_argument("--jobs", type=int, default=_env_default("jobs", 1))
    common.add_argument("--seed", type=int, default=_env_default("seed", 0))
    common.add_argument("--out", default=_env_default("out", None))

    parser = argparse.ArgumentParser(
        prog="finact",
        description="finite-group actions, semidirect products and commutator sweeps",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("groups", help="group ingestion")
    gsub = p.add_subparsers(dest="subcommand", required=True)
    ing = gsub.add_parser("ingest", parents=[common], help="parse and validate a group file")
    ing.add_argument("path")
    ing.set_defaults(handler=_cmd_groups_ingest)

    p = sub.add_parser("words", help="free-product word tools")
    wsub = p.add_subparsers(dest="subcommand", required=True)
    ev = wsub.add_parser("eval", parents=[common], help="normalize a word and test memberships")
    ev.add_argument("--factors", required=True, help="comma-separated group names")
    ev.add_argument("--tags", default=None, help="comma-separated factor tags")
    ev.add_argument("--word", required=True)
    ev.set_defaults(handler=_cmd_words_eval)

    p = sub.add_parser("actions", help="action enumeration and round trips")
    asub = p.add_subparsers(dest="subcommand", required=True)
    en = asub.add_parser("enumerate", parents=[common])
    en.add_argument("--g", required=True)
    en.add_argument("--a", required=True)
    en.set_defaults(handler=_cmd_actions_enumerate)
    rt = asub.add_parser("roundtrip", parents=[common])
    rt.add_argument("--g", required=True)
    rt.add_argument("--a", required=True)
    rt.set_defaults(handler=_cmd_actions_roundtrip)

    p = sub.add_parser("semidirect", help="build semidirect products")
    ssub = p.add_subparsers(dest="subcommand", required=True)
    bd = ssub.add_parser("build", parents=[common])
    bd.add_argument("--g")
    bd.add_argument("--a")
    bd.add_argument("--index", type=int, default=0)
    bd.add_argument("--action", help="JSON file with acting/acted/table")
    bd.set_defaults(handler=_cmd_semidirect_build)

    p = sub.add_parser("commutator", parents=[common], help="commutator subgroups")
    p.add_argument("--group")
    p.add_argument("--group-file", dest="group_file")
    p.add_argument("--x", required=True, help="member indices of X")
    p.add_argument("--y", required=True, help="member indices of Y")
    p.add_argument("--z", help="member indices of Z for the ternary recipe")
    p.set_defaults(handler=_cmd_commutator)

    p = sub.add_parser("talgebra", help="algebra-condition word sweeps")
    tsub = p.add_subparsers(dest="subcommand", required=True)
    ck = tsub.add_parser("check", parents=[common])
    ck.add_argument("--g")
    ck.add_argument("--a")
    ck.add_argument("--index", type=int, default=0)
    ck.add_argument("--action", help="JSON file with acting/acted/table")
    ck.set_defaults(handler=_cmd_talgebra_check)

    p = sub.add_parser("propercrit", help="three-way normality criterion")
    psub = p.add_subparsers(dest="subcommand", required=True)
    sw = psub.add_parser("sweep", parents=[common])
    sw.set_defaults(handler=_cmd_propercrit_sweep)

    p = sub.add_parser("property-p", parents=[common], help="normal iff conjugation-stable")
    p.add_argument("--group", default=None)
    p.set_defaults(handler=_cmd_property_p)

    p = sub.add_parser("pairs", help="the pairs-category counterexample")
    qsub = p.add_subparsers(dest="subcommand", required=True)
    dm = qsub.add_parser("demo", parents=[common])
    dm.set_defaults(handler=_cmd_pairs_demo)
    sw = qsub.add_parser("sweep", parents=[common])
    sw.set_defaults(handler=_cmd_pairs_sweep)

    return parser


def run(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    config = RunConfig(
        command=args.command,
        max_order=args.max_order,
        max_syllables=args.max_syllables,
        format=args.format,
        jobs=args.jobs,
        seed=args.seed,
        out=args.out,
    )
    command = args.command + (
        f" {args.subcommand}" if getattr(args, "subcommand", None) else ""
    )
    try:
        body, violations = args.handler(args, config)
    except (ParseError, UnsupportedParameter) as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return 2
    except BoundExceeded as exc:
        print(f"bound exceeded: {exc}", file=sys.stderr)
        return 3
    report = {"meta": _report_header(config, command), "result": body}
    _emit(report, config)
    return 1 if violations else 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
