"""Commutator subgroups: the binary case exactly, higher arities through a
bounded word-enumeration oracle plus a candidate ternary generating set.

Oracle results carry an explicit `stabilized` / `bound-hit` flag; a
bounded run is evidence, never a proof, and callers that need certainty
must check the flag.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from . import _kernels
from .errors import AmbientMismatch, BoundExceeded, TooFewFactors
from .groups import Subgroup, normal_closure
from .words import enumerate_words, free_product, in_cross_effect, in_multi_cross_effect

ORACLE_SYLLABLE_BOUND = 8
ORACLE_WORD_BOUND = 1_000_000


def binary_commutator(x: Subgroup, y: Subgroup) -> Subgroup:
    """Subgroup generated by all commutators [a,b], a in x, b in y.

    This is the plain image subgroup, not its normal closure.
    """
    if x.ambient != y.ambient:
        raise AmbientMismatch("commutator needs a common ambient group")
    g = x.ambient
    gens = _kernels.pair_commutators(g._handle, x.members, y.members)
    return Subgroup(g, _kernels.closure(g._handle, gens, g.identity))


def huq_commutator(x: Subgroup, y: Subgroup) -> Subgroup:
    """Normal closure of the binary commutator in the ambient group."""
    return normal_closure(x.ambient, binary_commutator(x, y))


@dataclass(frozen=True)
class OracleResult:
    subgroup: Subgroup
    flag: str  # "stabilized" | "bound-hit"
    rounds: tuple[tuple[int, int], ...]  # (syllable bound, subgroup size) per round

    @property
    def stabilized(self) -> bool:
        return self.flag == "stabilized"


def higher_commutator_oracle(
    parts: Sequence[Subgroup],
    max_syllables: int = ORACLE_SYLLABLE_BOUND,
    max_words: int = ORACLE_WORD_BOUND,
) -> OracleResult:
    """Fold every bounded iterated-cross-effect word back into the ambient
    group and close up.

    Enumerates words over the part subgroups in rounds of growing syllable
    budget (4, 6, 8, ...); stops early when two consecutive rounds add
    nothing. A run that exhausts the syllable or word budget first returns
    the partial subgroup flagged `bound-hit`.
    """
    if len(parts) < 2:
        raise TooFewFactors("need at least two parts")
    amb = parts[0].ambient
    if any(p.ambient != amb for p in parts):
        raise AmbientMismatch("parts live in different ambient groups")

    part_groups = [p.as_group for p in parts]
    fp = free_product(
        *(grp for grp, _ in part_groups),
        tags=tuple(f"P{i}" for i in range(len(parts))),
    )
    embeddings = [emb for _, emb in part_groups]

    # the two-factor membership test is the cheap product-image check
    member_test = in_cross_effect if len(parts) == 2 else in_multi_cross_effect

    values: set[int] = {amb.identity}
    members = (amb.identity,)
    rounds: list[tuple[int, int]] = []
    silent = 0
    flag = "bound-hit"
    bounds = list(range(4, max_syllables + 1, 2))
    for level in bounds:
        fresh = False
        try:
            for w in enumerate_words(fp, level, max_words=max_words):
                if w.length <= level - 2 and rounds:
                    continue  # already folded in an earlier round
                if not member_test(w):
                    continue
                acc = amb.identity
                for f, x in w.syllables:
                    acc = amb.cayley[acc][embeddings[f][x]]
                if acc not in values:
                    values.add(acc)
                    fresh = True
        except BoundExceeded:
            rounds.append((level, len(members)))
            break
        members = _kernels.closure(amb._handle, sorted(values), amb.identity)
        grew = len(members) > (rounds[-1][1] if rounds else 1)
        values.update(members)
        rounds.append((level, len(members)))
        silent = 0 if (fresh or grew) else silent + 1
        if silent >= 2:
            flag = "stabilized"
            break
    return OracleResult(Subgroup(amb, members), flag, tuple(rounds))


@dataclass(frozen=True)
class RecipeResult:
    subgroup: Subgroup
    oracle_flag: str
    agreement: str  # "equal" | "consistent" | "mismatch"


def ternary_recipe(
    x: Subgroup,
    y: Subgroup,
    z: Subgroup,
    check_oracle: bool = True,
    oracle_max_syllables: int = ORACLE_SYLLABLE_BOUND,
    oracle_max_words: int = 200_000,
) -> RecipeResult:
    """Candidate fast path for the triple commutator.

    Generates from the doubly-iterated commutators [[x,y],z], [[y,z],x]
    and [[z,x],y] over all member triples. The generating set is a
    hypothesis, so each run records how it compares with the bounded
    oracle: `equal` (oracle stabilized on the same subgroup), `consistent`
    (oracle hit its budget but found nothing outside the recipe) or
    `mismatch`.
    """
    amb = x.ambient
    if y.ambient != amb or z.ambient != amb:
        raise AmbientMismatch("recipe needs a common ambient group")
    gens: set[int] = set()
    for first, second, third in ((x, y, z), (y, z, x), (z, x, y)):
        for a in first.members:
            for b in second.members:
                inner = amb.commutator(a, b)
                for c in third.members:
                    gens.add(amb.commutator(inner, c))
    sub = Subgroup(amb, _kernels.closure(amb._handle, sorted(gens), amb.identity))
    if not check_oracle:
        return RecipeResult(sub, "skipped", "unchecked")
    oracle = higher_commutator_oracle(
        (x, y, z), max_syllables=oracle_max_syllables, max_words=oracle_max_words
    )
    if oracle.stabilized:
        agreement = "equal" if oracle.subgroup.members == sub.members else "mismatch"
    elif set(oracle.subgroup.members) <= sub.member_set:
        agreement = "consistent"
    else:
        agreement = "mismatch"
    return RecipeResult(sub, oracle.flag, agreement)
