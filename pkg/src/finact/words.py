"""Words in free products of finite groups, in canonical normal form.

A word is a sequence of (factor, element) syllables with no identity
syllables and no two adjacent syllables from the same factor; that form
is unique, so equality of words is equality of tuples. The module also
decides membership in the retraction kernel, in the binary cross-effect
(the kernel of the map onto the direct product) and in iterated
cross-effects, and rewrites two-factor words into commutator normal form.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, Sequence

from . import _kernels
from .errors import (
    BoundExceeded,
    FactorMismatch,
    ParseError,
    SignatureMismatch,
    TooFewFactors,
)
from .groups import FiniteGroup, GroupHom

_DEFAULT_TAGS = ("X", "Y", "Z", "W", "V")


@dataclass(frozen=True)
class FreeProduct:
    factors: tuple[FiniteGroup, ...]
    tags: tuple[str, ...]

    def __post_init__(self):
        if len(self.tags) != len(self.factors):
            raise ValueError("one tag per factor")
        if len(set(self.tags)) != len(self.tags):
            raise ValueError("tags must be distinct")

    @cached_property
    def _handles(self):
        return tuple(f._handle for f in self.factors)

    @cached_property
    def _identities(self) -> tuple[int, ...]:
        return tuple(f.identity for f in self.factors)

    def word(self, syllables: Iterable[tuple[int, int]]) -> "FreeWord":
        """Normalize an arbitrary syllable sequence into a FreeWord."""
        return FreeWord(
            self,
            _kernels.normalize_syllables(self._handles, self._identities, list(syllables)),
        )

    def identity_word(self) -> "FreeWord":
        return FreeWord(self, ())

    def letter(self, factor: int, element: int) -> "FreeWord":
        if element == self.factors[factor].identity:
            return FreeWord(self, ())
        return FreeWord(self, ((factor, element),))

    def letters(self) -> Iterator[tuple[int, int]]:
        """All (factor, non-identity element) pairs, in index order."""
        for k, f in enumerate(self.factors):
            for x in f.elements():
                if x != f.identity:
                    yield (k, x)

    def __repr__(self) -> str:
        inner = "*".join(f.name for f in self.factors)
        return f"FreeProduct({inner})"


def free_product(*factors: FiniteGroup, tags: Sequence[str] | None = None) -> FreeProduct:
    n = len(factors)
    if tags is None:
        if n == 2:
            tags = ("A", "G")
        elif n <= len(_DEFAULT_TAGS):
            tags = _DEFAULT_TAGS[:n]
        else:
            tags = tuple(f"X{i}" for i in range(n))
    return FreeProduct(tuple(factors), tuple(tags))


@dataclass(frozen=True)
class FreeWord:
    """A normal-form word; construct through FreeProduct.word unless the
    syllables are already known to be normal."""

    product: FreeProduct
    syllables: tuple[tuple[int, int], ...]

    @property
    def length(self) -> int:
        return len(self.syllables)

    def is_identity(self) -> bool:
        return not self.syllables

    def __mul__(self, other: "FreeWord") -> "FreeWord":
        if self.product != other.product:
            raise FactorMismatch("words live over different free products")
        fp = self.product
        return FreeWord(
            fp,
            _kernels.normalize_syllables(
                fp._handles, fp._identities, self.syllables + other.syllables
            ),
        )

    def inverse(self) -> "FreeWord":
        factors = self.product.factors
        return FreeWord(
            self.product,
            tuple((f, factors[f].inverse[x]) for f, x in reversed(self.syllables)),
        )

    def __pow__(self, z: int) -> "FreeWord":
        if z < 0:
            return self.inverse() ** (-z)
        acc = self.product.identity_word()
        for _ in range(z):
            acc = acc * self
        return acc

    def __repr__(self) -> str:
        return f"FreeWord({format_word(self)!r})"


def word_concat(u: FreeWord, v: FreeWord) -> FreeWord:
    return u * v


def commutator_word(x: FreeWord, y: FreeWord) -> FreeWord:
    """x * y * x^-1 * y^-1."""
    return x * y * x.inverse() * y.inverse()


# ---------------------------------------------------------------------------
# evaluation and membership


def eval_word(w: FreeWord, homs: Sequence[GroupHom]) -> int:
    """Fold the word through one hom per factor into a common codomain."""
    factors = w.product.factors
    if len(homs) != len(factors):
        raise SignatureMismatch("need exactly one hom per factor")
    for k, h in enumerate(homs):
        if h.domain != factors[k]:
            raise SignatureMismatch(f"hom {k} does not start at factor {k}")
    cod = homs[0].codomain
    if any(h.codomain != cod for h in homs):
        raise SignatureMismatch("homs end in different groups")
    acc = cod.identity
    for f, x in w.syllables:
        acc = cod.cayley[acc][homs[f].mapping[x]]
    return acc


def product_image(w: FreeWord) -> tuple[int, ...]:
    """Image under the canonical map onto the direct product of the factors.

    Component k multiplies the factor-k syllables in order; for two
    factors this is the pair the word projects to.
    """
    factors = w.product.factors
    comps = [f.identity for f in factors]
    for f, x in w.syllables:
        comps[f] = factors[f].cayley[comps[f]][x]
    return tuple(comps)


def in_retraction_kernel(w: FreeWord) -> bool:
    """Whether the second-factor retraction kills the (two-factor) word."""
    if len(w.product.factors) != 2:
        raise FactorMismatch("retraction-kernel membership is a two-factor test")
    return product_image(w)[1] == w.product.factors[1].identity


def in_cross_effect(w: FreeWord) -> bool:
    """Whether a two-factor word maps to the identity of the direct product."""
    if len(w.product.factors) != 2:
        raise FactorMismatch("binary cross-effect membership is a two-factor test")
    img = product_image(w)
    return img[0] == w.product.factors[0].identity and img[1] == w.product.factors[1].identity


def delete_factors(w: FreeWord, kill: frozenset[int] | set[int]) -> FreeWord:
    """Image of the word under the retraction sending each killed factor to 0."""
    return w.product.word(s for s in w.syllables if s[0] not in kill)


def in_multi_cross_effect(w: FreeWord) -> bool:
    """Membership in the iterated cross-effect of all n factors.

    Follows the recursive shape cr_n = cr_2 of cr_(n-1), merging the two
    leftmost blocks at each step; an element of a smaller cross-effect is
    trivial exactly when the corresponding deleted word is empty.
    """
    n = len(w.product.factors)
    if n < 2:
        raise TooFewFactors("need at least two factors")
    blocks = [frozenset([k]) for k in range(n)]

    def in_blocks(blocks: list[frozenset[int]]) -> bool:
        first, second, rest = blocks[0], blocks[1], blocks[2:]
        here = (
            delete_factors(w, first).is_identity()
            and delete_factors(w, second).is_identity()
        )
        if not rest:
            return here
        return here and in_blocks([first | second, *rest])

    return in_blocks(blocks)


def induced_map(
    w: FreeWord, target: FreeProduct, homs: Sequence[GroupHom]
) -> FreeWord:
    """Apply one hom per factor, landing in another free product."""
    if len(homs) != len(w.product.factors) or len(target.factors) != len(homs):
        raise SignatureMismatch("need one hom per factor on both sides")
    for k, h in enumerate(homs):
        if h.domain != w.product.factors[k] or h.codomain != target.factors[k]:
            raise SignatureMismatch(f"hom {k} has the wrong endpoints")
    return target.word((f, homs[f].mapping[x]) for f, x in w.syllables)


# ---------------------------------------------------------------------------
# commutator normal form for two-factor words


@dataclass(frozen=True)
class CommutatorDecomposition:
    """w = (prod over entries of [g,a]^z) * residual_a * residual_g.

    Entries are (g, a, z) with g from factor 1, a from factor 0 and
    z in {+1,-1}; [g,a] denotes the word g a g^-1 a^-1.
    """

    product: FreeProduct
    entries: tuple[tuple[int, int, int], ...]
    residual_a: int
    residual_g: int

    def reassemble(self) -> FreeWord:
        fp = self.product
        a_grp, g_grp = fp.factors
        syll: list[tuple[int, int]] = []
        for g, a, z in self.entries:
            if z == 1:
                syll += [(1, g), (0, a), (1, g_grp.inverse[g]), (0, a_grp.inverse[a])]
            else:
                syll += [(0, a), (1, g), (0, a_grp.inverse[a]), (1, g_grp.inverse[g])]
        syll.append((0, self.residual_a))
        syll.append((1, self.residual_g))
        return fp.word(syll)


def commutator_decomposition(w: FreeWord) -> CommutatorDecomposition:
    """Rewrite a two-factor word as commutators times a trailing a*g.

    Scans left to right, pushing syllables through with the identities
    g*a = [g,a]*a*g and a*[g,a']*a^-1 = [g,a]^-1*[g,a*a'].
    """
    fp = w.product
    if len(fp.factors) != 2:
        raise FactorMismatch("commutator decomposition is a two-factor rewrite")
    a_grp, g_grp = fp.factors
    entries: list[tuple[int, int, int]] = []
    a_res = a_grp.identity
    g_res = g_grp.identity
    for f, x in w.syllables:
        if f == 1:
            g_res = g_grp.cayley[g_res][x]
        elif g_res == g_grp.identity:
            a_res = a_grp.cayley[a_res][x]
        else:
            ax = a_grp.cayley[a_res][x]
            if a_res != a_grp.identity:
                entries.append((g_res, a_res, -1))
            if ax != a_grp.identity:
                entries.append((g_res, ax, 1))
            a_res = ax
    return CommutatorDecomposition(fp, tuple(entries), a_res, g_res)


# ---------------------------------------------------------------------------
# enumeration

WORD_COUNT_BOUND = 1_000_000


def enumerate_words(
    fp: FreeProduct, max_syllables: int, max_words: int = WORD_COUNT_BOUND
) -> Iterator[FreeWord]:
    """All normal-form words of at most max_syllables syllables.

    Yields each word exactly once, in length-lexicographic order; raises
    BoundExceeded past max_words.
    """
    nonid = [
        [x for x in f.elements() if x != f.identity] for f in fp.factors
    ]
    count = 0

    def bump():
        nonlocal count
        count += 1
        if count > max_words:
            raise BoundExceeded(f"enumeration exceeded {max_words} words")

    bump()
    yield fp.identity_word()

    def extend(prefix: list[tuple[int, int]], remaining: int) -> Iterator[FreeWord]:
        if remaining == 0:
            bump()
            yield FreeWord(fp, tuple(prefix))
            return
        prev = prefix[-1][0] if prefix else -1
        for k in range(len(fp.factors)):
            if k == prev:
                continue
            for x in nonid[k]:
                prefix.append((k, x))
                yield from extend(prefix, remaining - 1)
                prefix.pop()

    for length in range(1, max_syllables + 1):
        yield from extend([], length)


# ---------------------------------------------------------------------------
# text syntax: `A:3 G:1` with `[G:1,A:2]` commutator sugar


_SYLLABLE_RE = re.compile(r"([A-Za-z]\w*):(\d+)(?:\^(-?\d+))?$")
_BRACKET_RE = re.compile(
    r"\[([A-Za-z]\w*):(\d+),([A-Za-z]\w*):(\d+)\](?:\^(-?\d+))?$"
)


def parse_word(text: str, fp: FreeProduct) -> FreeWord:
    """Parse the textual word syntax; inverse of format_word."""
    tag_index = {tag: k for k, tag in enumerate(fp.tags)}

    def resolve(tag: str, element: str, pos: int) -> tuple[int, int]:
        if tag not in tag_index:
            raise ParseError(f"unknown factor tag {tag!r}", pos)
        k = tag_index[tag]
        x = int(element)
        if x >= fp.factors[k].order:
            raise ParseError(f"element {x} out of range for factor {tag}", pos)
        return k, x

    word = fp.identity_word()
    pos = 0
    for token in text.split():
        pos = text.index(token, pos)
        if token == "e":
            piece = fp.identity_word()
        elif token.startswith("["):
            m = _BRACKET_RE.match(token)
            if not m:
                raise ParseError(f"bad commutator token {token!r}", pos)
            k1, x1 = resolve(m.group(1), m.group(2), pos)
            k2, x2 = resolve(m.group(3), m.group(4), pos)
            piece = commutator_word(fp.letter(k1, x1), fp.letter(k2, x2))
            if m.group(5):
                piece = piece ** int(m.group(5))
        else:
            m = _SYLLABLE_RE.match(token)
            if not m:
                raise ParseError(f"bad syllable token {token!r}", pos)
            k, x = resolve(m.group(1), m.group(2), pos)
            piece = fp.letter(k, x)
            if m.group(3):
                piece = piece ** int(m.group(3))
        word = word * piece
        pos += len(token)
    return word


def format_word(w: FreeWord) -> str:
    """Canonical text form; `e` for the empty word."""
    if w.is_identity():
        return "e"
    return " ".join(f"{w.product.tags[f]}:{x}" for f, x in w.syllables)
