"""The category of pairs (group, subgroup): kernels, cokernels, and the
separation of normal from proper subobjects.

Cokernels forget the small part of a subobject, so kernel-of-cokernel can
strictly grow it: that produces normal subobjects that are not kernels,
while conjugation still acts on every normal subobject. Properness is
always decided by computing the kernel of the cokernel, never by a closed
formula; the sweep reports which closed formula happens to match.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Optional

from .actions import GroupAction
from .conjugation import conjugation_on_normal
from .errors import AmbientMismatch, NotNormal, NotNormalSubobject
from .groups import (
    FiniteGroup,
    GroupHom,
    Subgroup,
    all_subgroups,
    image,
    intersection,
    is_normal,
    kernel,
    quotient,
    subgroup,
)


@dataclass(frozen=True)
class GroupPair:
    """An ambient group with a distinguished subgroup."""

    big: FiniteGroup
    small: Subgroup

    def __post_init__(self):
        if self.small.ambient != self.big:
            raise AmbientMismatch("small part must be a subgroup of the big part")

    def __repr__(self) -> str:
        return f"GroupPair({self.big.name}, {list(self.small.members)})"


@dataclass(frozen=True)
class PairMorphism:
    """A hom of big groups carrying the small part into the small part."""

    dom: GroupPair
    cod: GroupPair
    hom: GroupHom

    def __post_init__(self):
        if self.hom.domain != self.dom.big or self.hom.codomain != self.cod.big:
            raise AmbientMismatch("hom endpoints must match the pair objects")
        target = self.cod.small.member_set
        for b in self.dom.small.members:
            if self.hom.mapping[b] not in target:
                raise AmbientMismatch(f"small part is not preserved at {b}")


@dataclass(frozen=True)
class PairSubobject:
    """A pair (N, C) inside (G, B) with C <= N and C <= B.

    Both parts are stored as subgroups of the big group; C carries strictly
    more data than the cokernel remembers, which is the whole point.
    """

    ambient: GroupPair
    big_part: Subgroup
    small_part: Subgroup

    def __post_init__(self):
        if (
            self.big_part.ambient != self.ambient.big
            or self.small_part.ambient != self.ambient.big
        ):
            raise AmbientMismatch("parts must be subgroups of the big group")
        allowed = self.big_part.member_set & self.ambient.small.member_set
        if not self.small_part.member_set <= allowed:
            raise AmbientMismatch("small part must sit inside N and B")

    def same_members(self, other: "PairSubobject") -> bool:
        return (
            self.big_part.members == other.big_part.members
            and self.small_part.members == other.small_part.members
        )


def pair_kernel(m: PairMorphism) -> PairSubobject:
    """Kernel pair: (Ker f, Ker f restricted to the small part)."""
    n = kernel(m.hom)
    c = subgroup(
        m.dom.big, n.member_set & m.dom.small.member_set
    )
    return PairSubobject(m.dom, n, c)


def pair_cokernel(s: PairSubobject) -> tuple[GroupPair, PairMorphism]:
    """Cokernel of the inclusion of (N, C): the quotient by N with the
    image of the small part, independent of C."""
    g = s.ambient.big
    if not is_normal(g, s.big_part):
        raise NotNormal("cokernel needs the big part normal")
    q_grp, proj = quotient(g, s.big_part)
    small_image = subgroup(q_grp, {proj.mapping[b] for b in s.ambient.small.members})
    cod = GroupPair(q_grp, small_image)
    return cod, PairMorphism(s.ambient, cod, proj)


def kernel_of_cokernel(s: PairSubobject) -> PairSubobject:
    _, proj = pair_cokernel(s)
    return pair_kernel(proj)


def is_proper_pair_subobject(s: PairSubobject) -> bool:
    """Whether (N, C) is the kernel of its own cokernel, by computing it."""
    return kernel_of_cokernel(s).same_members(s)


def is_normal_pair_subobject(s: PairSubobject) -> bool:
    """N normal in G, C normal in B, and C <= N."""
    g = s.ambient.big
    if not is_normal(g, s.big_part):
        return False
    small = s.ambient.small
    cset = s.small_part.member_set
    if not all(g.conj(b, c) in cset for b in small.members for c in s.small_part.members):
        return False
    return cset <= s.big_part.member_set


@dataclass(frozen=True)
class PairActionReport:
    action: GroupAction
    big_stable: bool
    small_stable: bool

    @property
    def ok(self) -> bool:
        return self.big_stable and self.small_stable


def pair_conjugation_action(s: PairSubobject) -> PairActionReport:
    """Conjugation of (G,B) on a normal pair subobject (N,C).

    The base table is plain conjugation of G on N; the report confirms the
    two stability requirements G.N <= N and B.C <= C that make it a map of
    pairs.
    """
    if not is_normal_pair_subobject(s):
        raise NotNormalSubobject("conjugation acts on normal pair subobjects")
    g = s.ambient.big
    action = conjugation_on_normal(g, s.big_part)
    nset = s.big_part.member_set
    big_stable = all(
        g.conj(x, m) in nset for x in g.elements() for m in s.big_part.members
    )
    cset = s.small_part.member_set
    small_stable = all(
        g.conj(b, c) in cset
        for b in s.ambient.small.members
        for c in s.small_part.members
    )
    return PairActionReport(action, big_stable, small_stable)


# ---------------------------------------------------------------------------
# sweeps and the demonstration witness


def pair_subobjects(pair: GroupPair, normal_big_only: bool = True) -> Iterable[PairSubobject]:
    """All pair subobjects (N, C) of the pair, C ranging over subgroups of
    N intersected with the small part."""
    g = pair.big
    b_grp, _ = pair.small.as_group
    small_subs = [
        subgroup(g, {pair.small.members[i] for i in s.members})
        for s in all_subgroups(b_grp)
    ]
    for n in all_subgroups(g):
        if normal_big_only and not is_normal(g, n):
            continue
        nset = n.member_set
        for c in small_subs:
            if c.member_set <= nset:
                yield PairSubobject(pair, n, c)


@dataclass(frozen=True)
class PairSweepReport:
    ambients: int
    subobjects: int
    proper_count: int
    normal_count: int
    proper_not_normal: int
    normal_not_proper: int
    cokernel_small_formula_ok: bool
    cokernel_c_independent: bool
    conjugation_on_normal_ok: bool
    intersection_formula_matches: bool
    union_formula_matches: bool
    witness: Optional[dict] = field(default=None, compare=False)

    @property
    def ok(self) -> bool:
        return (
            self.proper_not_normal == 0
            and self.normal_not_proper > 0
            and self.cokernel_small_formula_ok
            and self.cokernel_c_independent
            and self.conjugation_on_normal_ok
        )


def nonexactness_demo() -> dict:
    """The stock witness: (A3, e) inside (S3, S3) is normal, carries the
    conjugation action, and is not the kernel of its cokernel."""
    from .groups import symmetric, subgroup_generated

    s3 = symmetric(3)
    three = next(x for x in s3.elements() if s3.element_order(x) == 3)
    a3 = subgroup_generated(s3, [three])
    pair = GroupPair(s3, subgroup(s3, range(s3.order)))
    sub = PairSubobject(pair, a3, subgroup(s3, [s3.identity]))
    koc = kernel_of_cokernel(sub)
    conj = pair_conjugation_action(sub)
    return {
        "ambient": {"big": "S3", "small": "S3"},
        "subobject": {
            "N": list(sub.big_part.members),
            "C": list(sub.small_part.members),
        },
        "is_normal": is_normal_pair_subobject(sub),
        "is_proper": is_proper_pair_subobject(sub),
        "kernel_of_cokernel": {
            "N": list(koc.big_part.members),
            "C": list(koc.small_part.members),
        },
        "conjugation_action_ok": conj.ok,
    }


def pair_sweep(groups: Iterable[FiniteGroup]) -> PairSweepReport:
    """Exhaustive pair-category audit over all pairs built from the groups.

    Confirms: proper implies normal; some normal subobject is not proper;
    the cokernel's small part is the image of B (with |image| = |B|/|B
    meet N|); the cokernel ignores C; conjugation succeeds on every normal
    subobject; and which closed-form properness condition (C = N meet B
    versus C = N union B) matches the computed one.
    """
    ambients = 0
    total = 0
    proper_count = 0
    normal_count = 0
    proper_not_normal = 0
    normal_not_proper = 0
    formula_ok = True
    c_independent = True
    conj_ok = True
    cap_matches = True
    cup_matches = True
    witness: Optional[dict] = None

    for g in groups:
        for b in all_subgroups(g):
            pair = GroupPair(g, b)
            ambients += 1
            by_n: dict[tuple[int, ...], list[PairSubobject]] = {}
            for sub in pair_subobjects(pair):
                total += 1
                by_n.setdefault(sub.big_part.members, []).append(sub)
                proper = is_proper_pair_subobject(sub)
                normal = is_normal_pair_subobject(sub)
                proper_count += proper
                normal_count += normal
                if proper and not normal:
                    proper_not_normal += 1
                if normal and not proper:
                    normal_not_proper += 1
                    if witness is None:
                        witness = {
                            "group": g.name,
                            "B": list(b.members),
                            "N": list(sub.big_part.members),
                            "C": list(sub.small_part.members),
                        }
                if normal:
                    conj_ok &= pair_conjugation_action(sub).ok

                meet = sub.big_part.member_set & b.member_set
                cap_eq = sub.small_part.member_set == meet
                cup_eq = sub.small_part.member_set == (
                    sub.big_part.member_set | b.member_set
                )
                cap_matches &= cap_eq == proper
                cup_matches &= cup_eq == proper

                cod, proj = pair_cokernel(sub)
                meet_sub = intersection(sub.big_part, b)
                formula_ok &= (
                    cod.small.order * meet_sub.order == b.order
                    and cod.small.members
                    == tuple(sorted({proj.hom.mapping[x] for x in b.members}))
                )
            for subs in by_n.values():
                cokernels = {
                    (pair_cokernel(s)[0].big.order, pair_cokernel(s)[0].small.members)
                    for s in subs
                }
                c_independent &= len(cokernels) == 1

    return PairSweepReport(
        ambients=ambients,
        subobjects=total,
        proper_count=proper_count,
        normal_count=normal_count,
        proper_not_normal=proper_not_normal,
        normal_not_proper=normal_not_proper,
        cokernel_small_formula_ok=formula_ok,
        cokernel_c_independent=c_independent,
        conjugation_on_normal_ok=conj_ok,
        intersection_formula_matches=cap_matches,
        union_formula_matches=cup_matches,
        witness=witness,
    )
