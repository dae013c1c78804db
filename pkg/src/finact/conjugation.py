"""Conjugation actions on normal subgroups, the normalizes relation, and
the three-way properness criterion with its lattice sweeps."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .actions import GroupAction
from .commutators import binary_commutator
from .errors import AmbientMismatch, NotNormal
from .groups import (
    FiniteGroup,
    Subgroup,
    all_subgroups,
    full_subgroup,
    intersection,
    is_isomorphic,
    is_normal,
    join,
    quotient,
)


def conjugation_on_normal(e: FiniteGroup, n: Subgroup) -> GroupAction:
    """The action of e on a normal subgroup n by conjugation."""
    if n.ambient != e:
        raise AmbientMismatch("subgroup does not live in the given group")
    if not is_normal(e, n):
        raise NotNormal("conjugation action needs a normal subgroup")
    n_grp, emb = n.as_group
    local = {m: i for i, m in enumerate(emb)}
    table = tuple(
        tuple(local[e.conj(g, m)] for m in emb) for g in e.elements()
    )
    return GroupAction(acting=e, acted=n_grp, table=table)


def normal_in(x: Subgroup, within: Subgroup) -> bool:
    """Whether x is normal as a subgroup of `within` (x <= within assumed)."""
    amb = x.ambient
    mem = x.member_set
    return all(amb.conj(w, a) in mem for w in within.members for a in x.members)


def normalizes(y: Subgroup, x: Subgroup) -> bool:
    """y normalizes x: every commutator [a,b] with a in x, b in y stays in x."""
    if x.ambient != y.ambient:
        raise AmbientMismatch("normalizes needs a common ambient group")
    return binary_commutator(x, y).member_set <= x.member_set


def stability_action(x: Subgroup, y: Subgroup) -> Optional[GroupAction]:
    """Conjugation of y on x, when y normalizes x; None otherwise."""
    if not normalizes(y, x):
        return None
    amb = x.ambient
    x_grp, x_emb = x.as_group
    y_grp, y_emb = y.as_group
    local = {m: i for i, m in enumerate(x_emb)}
    table = tuple(
        tuple(local[amb.conj(g, m)] for m in x_emb) for g in y_emb
    )
    return GroupAction(acting=y_grp, acted=x_grp, table=table)


@dataclass(frozen=True)
class ProperCritReport:
    cond1_normalizes: bool
    cond2_proper_in_join: bool
    cond3_exact_sequence: bool
    details: dict = field(default_factory=dict, compare=False)

    @property
    def all_equal(self) -> bool:
        return self.cond1_normalizes == self.cond2_proper_in_join == self.cond3_exact_sequence


def propercrit(x: Subgroup, y: Subgroup) -> ProperCritReport:
    """Evaluate the three equivalent normality conditions for a pair.

    cond1: y normalizes x. cond2: x is normal in the join of x and y.
    cond3: x∩y is normal in y, the order equation |x∨y| = |x||y|/|x∩y|
    holds, and (x∨y)/x is isomorphic to y/(x∩y); the quotient by x only
    exists when x is normal in the join, so a failure there makes cond3
    false rather than an error.
    """
    if x.ambient != y.ambient:
        raise AmbientMismatch("criterion needs a common ambient group")
    cond1 = normalizes(y, x)
    j = join(x, y)
    cond2 = normal_in(x, j)
    meet = intersection(x, y)
    details: dict = {
        "join_order": j.order,
        "meet_order": meet.order,
    }
    cond3 = False
    if normal_in(meet, y):
        order_eq = j.order * meet.order == x.order * y.order
        details["order_equation"] = order_eq
        if order_eq and cond2:
            j_grp, j_emb = j.as_group
            j_local = {m: i for i, m in enumerate(j_emb)}
            x_in_j = Subgroup(j_grp, tuple(sorted(j_local[m] for m in x.members)))
            q1, _ = quotient(j_grp, x_in_j)
            y_grp, y_emb = y.as_group
            y_local = {m: i for i, m in enumerate(y_emb)}
            meet_in_y = Subgroup(y_grp, tuple(sorted(y_local[m] for m in meet.members)))
            q2, _ = quotient(y_grp, meet_in_y)
            cond3 = is_isomorphic(q1, q2)
            details["quotient_orders"] = (q1.order, q2.order)
    return ProperCritReport(cond1, cond2, cond3, details)


@dataclass(frozen=True)
class SweepReport:
    group: str
    checked: int
    violations: tuple[dict, ...]

    @property
    def ok(self) -> bool:
        return not self.violations


def propercrit_sweep(g: FiniteGroup) -> SweepReport:
    """Check cond1 == cond2 == cond3 over every ordered subgroup pair of g."""
    subs = all_subgroups(g)
    violations = []
    checked = 0
    for x in subs:
        for y in subs:
            rep = propercrit(x, y)
            checked += 1
            if not rep.all_equal:
                violations.append(
                    {
                        "group": g.name,
                        "x": list(x.members),
                        "y": list(y.members),
                        "cond1": rep.cond1_normalizes,
                        "cond2": rep.cond2_proper_in_join,
                        "cond3": rep.cond3_exact_sequence,
                    }
                )
    return SweepReport(g.name, checked, tuple(violations))


def property_p_sweep(g: FiniteGroup) -> SweepReport:
    """Check is_normal(g, x) == normalizes(g, x) over every subgroup x."""
    whole = full_subgroup(g)
    violations = []
    checked = 0
    for x in all_subgroups(g):
        checked += 1
        lhs = is_normal(g, x)
        rhs = normalizes(whole, x)
        if lhs != rhs:
            violations.append(
                {"group": g.name, "x": list(x.members), "is_normal": lhs, "stable": rhs}
            )
    return SweepReport(g.name, checked, tuple(violations))
