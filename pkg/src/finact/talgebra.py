"""Word-level characterization of action tables.

The twist of a table extends from cross-effect words to the whole
retraction kernel (`extended_eval`). Three bounded word sweeps then probe
the table: conjugating cross-effect words by acted elements reproduces the
endomorphism condition, conjugating retraction-kernel words by acting
elements reproduces the associativity condition, and a third sweep over
three-sorted words (cross-effect letters, acted letters, acting letters)
checks the higher-order compatibility square that is expected to be
automatic for groups. All sweeps report witnesses instead of raising.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator, Optional

from .actions import GroupAction, semidirect, twisted_eval, validate_action
from .errors import NotInRetractionKernel, SignatureMismatch
from .groups import FiniteGroup
from .words import (
    FreeWord,
    commutator_decomposition,
    commutator_word,
    enumerate_words,
    eval_word,
    free_product,
    in_cross_effect,
    in_retraction_kernel,
)

DEFAULT_DIAGRAM_SYLLABLES = 5


def extended_eval(action: GroupAction, w: FreeWord) -> int:
    """Evaluate the unit-compatible extension of the twist on a
    retraction-kernel word: twist the commutator part, then multiply the
    trailing acted-group residual."""
    a_grp, g_grp = action.acted, action.acting
    if w.product.factors != (a_grp, g_grp):
        raise SignatureMismatch("word does not live over (acted, acting)")
    if not in_retraction_kernel(w):
        raise NotInRetractionKernel("extension evaluates on retraction-kernel words")
    dec = commutator_decomposition(w)
    acc = a_grp.identity
    for g, a, z in dec.entries:
        v = action.twist(g, a)
        if z < 0:
            v = a_grp.inverse[v]
        acc = a_grp.cayley[acc][v]
    return a_grp.cayley[acc][dec.residual_a]


def _nonid(g: FiniteGroup) -> list[int]:
    return [x for x in g.elements() if x != g.identity]


def check_unit_diagram(
    action: GroupAction, max_syllables: int = DEFAULT_DIAGRAM_SYLLABLES
) -> tuple[bool, list, bool]:
    """Conjugation of cross-effect words by acted elements versus the twist.

    Checks twist(a * w * a^-1) == a * twist(w) * a^-1 on every generator
    [g,a'] and on every cross-effect word up to the syllable budget.
    Returns (ok, witnesses, agrees) where `agrees` records that the word
    sweep reached the same verdict as the table-level endomorphism check.
    """
    a_grp, g_grp = action.acted, action.acting
    fp = action.word_context
    ok = True
    witnesses: list = []

    words = [
        commutator_word(fp.letter(1, g), fp.letter(0, a2))
        for g in _nonid(g_grp)
        for a2 in _nonid(a_grp)
    ]
    words += [
        w for w in enumerate_words(fp, max_syllables) if in_cross_effect(w)
    ]
    for w in words:
        psi_w = twisted_eval(action, w)
        for a in a_grp.elements():
            conj_word = fp.letter(0, a) * w * fp.letter(0, a_grp.inverse[a])
            lhs = twisted_eval(action, conj_word)
            rhs = a_grp.conj(a, psi_w)
            if lhs != rhs:
                ok = False
                if len(witnesses) < 5:
                    witnesses.append((a, w))
    agrees = ok == validate_action(action).endomorphism_ok
    return ok, witnesses, agrees


def check_assoc_diagram(
    action: GroupAction, max_syllables: int = DEFAULT_DIAGRAM_SYLLABLES
) -> tuple[bool, list, bool]:
    """Conjugation of retraction-kernel words by acting elements versus
    twisting the evaluated word.

    Checks twist([g,w]) == phi(g, ext(w)) * ext(w)^-1 over bounded words w;
    meaningful under the unit and endomorphism conditions, where agreement
    with the table-level associativity condition is also reported.
    """
    a_grp, g_grp = action.acted, action.acting
    fp = action.word_context
    ok = True
    witnesses: list = []
    for w in enumerate_words(fp, max_syllables):
        if not in_retraction_kernel(w):
            continue
        xi_w = extended_eval(action, w)
        w_inv = w.inverse()
        for g in _nonid(g_grp):
            gw = fp.letter(1, g)
            conj = gw * w * gw.inverse() * w_inv
            lhs = twisted_eval(action, conj)
            rhs = action.twist(g, xi_w) if xi_w != a_grp.identity else a_grp.identity
            if lhs != rhs:
                ok = False
                if len(witnesses) < 5:
                    witnesses.append((g, w))
    agrees = ok == validate_action(action).associativity_ok
    return ok, witnesses, agrees


def check_mufact(
    a_grp: FiniteGroup, g_grp: FiniteGroup, max_syllables: int = DEFAULT_DIAGRAM_SYLLABLES
) -> tuple[bool, Optional[tuple]]:
    """Table-free structural fact: conjugating any retraction-kernel word
    by an acting letter lands in the cross-effect."""
    fp = free_product(a_grp, g_grp)
    for w in enumerate_words(fp, max_syllables):
        if not in_retraction_kernel(w):
            continue
        w_inv = w.inverse()
        for g in _nonid(g_grp):
            gw = fp.letter(1, g)
            if not in_cross_effect(gw * w * gw.inverse() * w_inv):
                return False, (g, w)
    return True, None


# ---------------------------------------------------------------------------
# the third diagram: three-sorted words


def _hybrid_letters(action: GroupAction):
    """Alphabets for the three-sorted words: cross-effect generators with
    exponent, acted letters, acting letters."""
    a_grp, g_grp = action.acted, action.acting
    fp = action.word_context
    k0 = []
    for g in _nonid(g_grp):
        for a in _nonid(a_grp):
            base = commutator_word(fp.letter(1, g), fp.letter(0, a))
            k0.append(base)
            k0.append(base.inverse())
    return k0, _nonid(a_grp), _nonid(g_grp)


def _reduce_hybrid(items, action: GroupAction):
    a_grp, g_grp = action.acted, action.acting
    stack: list = []
    for kind, v in items:
        if kind == 0:
            trivial = v.is_identity()
        elif kind == 1:
            trivial = v == a_grp.identity
        else:
            trivial = v == g_grp.identity
        if trivial:
            continue
        if stack and stack[-1][0] == kind:
            _, prev = stack.pop()
            if kind == 0:
                merged = prev * v
                if not merged.is_identity():
                    stack.append((0, merged))
            elif kind == 1:
                m = a_grp.cayley[prev][v]
                if m != a_grp.identity:
                    stack.append((1, m))
            else:
                m = g_grp.cayley[prev][v]
                if m != g_grp.identity:
                    stack.append((2, m))
        else:
            stack.append((kind, v))
    return stack


def _in_three_sorted_effect(items, action: GroupAction) -> bool:
    for kind in (0, 1, 2):
        if _reduce_hybrid([it for it in items if it[0] != kind], action):
            return False
    return True


def _single_sort_products_trivial(items, action: GroupAction) -> bool:
    """Cheap necessary condition: each sort folds to its identity."""
    a_grp, g_grp = action.acted, action.acting
    fp = action.word_context
    w0 = fp.identity_word()
    p1 = a_grp.identity
    p2 = g_grp.identity
    for kind, v in items:
        if kind == 0:
            w0 = w0 * v
        elif kind == 1:
            p1 = a_grp.cayley[p1][v]
        else:
            p2 = g_grp.cayley[p2][v]
    return w0.is_identity() and p1 == a_grp.identity and p2 == g_grp.identity


def _three_sorted_words(action: GroupAction, max_syllables: int) -> Iterator[list]:
    k0, k1, k2 = _hybrid_letters(action)
    alphabets = (k0, k1, k2)

    def extend(prefix: list, remaining: int) -> Iterator[list]:
        if remaining == 0:
            yield prefix
            return
        prev = prefix[-1][0] if prefix else -1
        for kind in range(3):
            if kind == prev:
                continue
            for v in alphabets[kind]:
                prefix.append((kind, v))
                yield from extend(prefix, remaining - 1)
                prefix.pop()

    for length in range(1, max_syllables + 1):
        yield from extend([], length)


def check_third_diagram(
    action: GroupAction, max_syllables: int = DEFAULT_DIAGRAM_SYLLABLES
) -> tuple[bool, list]:
    """Compare the two legs of the higher compatibility square on every
    three-sorted word in the triple cross-effect, up to the budget.

    Leg one folds cross-effect letters and acting letters back into a
    single two-factor word and twists it; leg two first replaces every
    cross-effect letter by its twisted value and then twists the result.
    """
    a_grp, g_grp = action.acted, action.acting
    fp = action.word_context
    ok = True
    witnesses: list = []
    for items in _three_sorted_words(action, max_syllables):
        if not _single_sort_products_trivial(items, action):
            continue
        if not _in_three_sorted_effect(items, action):
            continue
        syll_fold: list[tuple[int, int]] = []
        syll_subst: list[tuple[int, int]] = []
        for kind, v in items:
            if kind == 0:
                syll_fold.extend(v.syllables)
                syll_subst.append((0, twisted_eval(action, v)))
            elif kind == 1:
                syll_fold.append((0, v))
                syll_subst.append((0, v))
            else:
                syll_fold.append((1, v))
                syll_subst.append((1, v))
        folded = fp.word(syll_fold)
        substituted = fp.word(syll_subst)
        lhs = twisted_eval(action, folded)
        rhs = twisted_eval(action, substituted)
        if lhs != rhs:
            ok = False
            if len(witnesses) < 5:
                witnesses.append(list(items))
    return ok, witnesses


def kerxi_consistency(
    action: GroupAction, max_syllables: int = DEFAULT_DIAGRAM_SYLLABLES
) -> bool:
    """The extension and the semidirect fold kill exactly the same
    retraction-kernel words (bounded sweep)."""
    sd = semidirect(action)
    homs = (sd.embed, sd.section)
    fp = action.word_context
    ident = sd.group.identity
    a_ident = action.acted.identity
    for w in enumerate_words(fp, max_syllables):
        if not in_retraction_kernel(w):
            continue
        if (extended_eval(action, w) == a_ident) != (eval_word(w, homs) == ident):
            return False
    return True


# ---------------------------------------------------------------------------
# assembled report


@dataclass(frozen=True)
class AlgebraCheckReport:
    unit_ok: bool
    endo_diagram_ok: Optional[bool]
    assoc_diagram_ok: Optional[bool]
    third_diagram_ok: Optional[bool]
    witnesses: dict = field(default_factory=dict, compare=False)

    @property
    def is_algebra(self) -> bool:
        return bool(
            self.unit_ok
            and self.endo_diagram_ok
            and self.assoc_diagram_ok
            and (self.third_diagram_ok is not False)
        )


def talgebra_report(
    action: GroupAction, max_syllables: int = DEFAULT_DIAGRAM_SYLLABLES
) -> AlgebraCheckReport:
    """Run the three diagram sweeps in order, gating each on the previous.

    A table that fails the unit rows/columns gets no diagram verdicts; one
    that fails the endomorphism sweep gets no associativity or third
    verdict, since those sweeps presuppose the earlier conditions.
    """
    table_report = validate_action(action)
    unit_ok = table_report.unit_row_ok and table_report.unit_column_ok
    witnesses: dict = {}
    endo_ok: Optional[bool] = None
    assoc_ok: Optional[bool] = None
    third_ok: Optional[bool] = None
    if unit_ok:
        endo_ok, wit, _ = check_unit_diagram(action, max_syllables)
        if wit:
            witnesses["endo_diagram"] = wit
        if endo_ok:
            assoc_ok, wit, _ = check_assoc_diagram(action, max_syllables)
            if wit:
                witnesses["assoc_diagram"] = wit
            if assoc_ok:
                third_ok, wit = check_third_diagram(action, max_syllables)
                if wit:
                    witnesses["third_diagram"] = wit
    return AlgebraCheckReport(unit_ok, endo_ok, assoc_ok, third_ok, witnesses)
