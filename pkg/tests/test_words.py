"""Free-product word engine: normal forms, membership, decomposition."""

import itertools

import pytest

from finact.errors import (
    BoundExceeded,
    FactorMismatch,
    ParseError,
    TooFewFactors,
)
from finact.groups import GroupHom, cyclic, identity_hom, symmetric, zero_hom
from finact.words import (
    commutator_decomposition,
    commutator_word,
    delete_factors,
    enumerate_words,
    eval_word,
    format_word,
    free_product,
    in_cross_effect,
    in_multi_cross_effect,
    in_retraction_kernel,
    induced_map,
    parse_word,
    product_image,
    word_concat,
)

Z2 = cyclic(2)
Z3 = cyclic(3)
S3 = symmetric(3)
AG = free_product(Z3, Z2)  # factor 0 = A = Z3, factor 1 = G = Z2
XYZ = free_product(Z3, Z2, cyclic(2))


def W(text, fp=AG):
    return parse_word(text, fp)


class TestNormalForm:
    def test_identity_concat(self):
        u = W("A:1 G:1")
        assert word_concat(u, AG.identity_word()) == u
        assert word_concat(AG.identity_word(), u) == u

    def test_cancellation(self):
        assert word_concat(W("A:1"), W("A:2")).is_identity()

    def test_two_step_cancellation_then_merge(self):
        # (a)(g)(g^-1)(a') -> single syllable a*a'
        u = AG.word([(0, 1), (1, 1)])
        v = AG.word([(1, 1), (0, 1)])
        assert word_concat(u, v) == W("A:2")

    def test_factor_mismatch(self):
        with pytest.raises(FactorMismatch):
            word_concat(W("A:1"), parse_word("X:1", XYZ))

    def test_value_semantics(self):
        # separately built products over the same factors are interchangeable
        again = free_product(Z3, Z2)
        assert word_concat(W("A:1"), parse_word("A:2", again)).is_identity()

    def test_constructor_normalizes(self):
        w = AG.word([(0, 1), (0, 2), (1, 0), (1, 1), (1, 1), (0, 1)])
        assert w == W("A:1")

    def test_inverse(self):
        u = W("A:1 G:1 A:2")
        assert (u * u.inverse()).is_identity()
        assert (u.inverse() * u).is_identity()

    def test_associativity_exhaustive_z2_z3(self):
        words = list(enumerate_words(AG, 6))
        assert len(words) == 50
        for u, v, w in itertools.product(words[:25], words[::3], words[::5]):
            assert (u * v) * w == u * (v * w)


class TestCommutatorWord:
    def test_four_syllables(self):
        w = commutator_word(AG.letter(1, 1), AG.letter(0, 1))
        assert w.syllables == ((1, 1), (0, 1), (1, 1), (0, 2))

    def test_self_commutator_trivial(self):
        x = W("A:1 G:1")
        assert commutator_word(x, x).is_identity()

    def test_commutator_with_identity(self):
        x = W("A:1 G:1")
        assert commutator_word(x, AG.identity_word()).is_identity()


class TestEvalWord:
    def test_empty(self):
        homs = [zero_hom(Z3, S3), zero_hom(Z2, S3)]
        assert eval_word(AG.identity_word(), homs) == S3.identity

    def test_hom_property_on_commutator(self):
        # evaluating [g,a] lands on the commutator of the images
        f_a = GroupHom(Z3, S3, (0, 3, 4))  # 3 is a 3-cycle
        f_g = GroupHom(Z2, S3, (0, 1))  # 1 is a transposition
        w = commutator_word(AG.letter(1, 1), AG.letter(0, 1))
        assert eval_word(w, [f_a, f_g]) == S3.commutator(1, 3)

    def test_retraction_kills_cross_effect(self):
        homs = [identity_hom(Z3), zero_hom(Z2, Z3)]
        w = commutator_word(AG.letter(1, 1), AG.letter(0, 1))
        assert eval_word(w, homs) == Z3.identity


class TestProductImage:
    def test_structured_word(self):
        w = commutator_word(AG.letter(1, 1), AG.letter(0, 2)) * W("A:1 G:1")
        assert product_image(w) == (1, 1)

    def test_empty(self):
        assert product_image(AG.identity_word()) == (0, 0)

    def test_single_syllable(self):
        assert product_image(W("A:2")) == (2, 0)

    def test_image_is_homomorphism(self):
        words = list(enumerate_words(AG, 4))
        for u in words:
            for v in words:
                pu, pv = product_image(u), product_image(v)
                puv = product_image(u * v)
                assert puv == (Z3.mul(pu[0], pv[0]), Z2.mul(pu[1], pv[1]))


class TestMembership:
    def test_commutator_in_cross_effect(self):
        w = commutator_word(AG.letter(1, 1), AG.letter(0, 1))
        assert in_cross_effect(w)
        assert in_retraction_kernel(w)

    def test_single_a(self):
        assert in_retraction_kernel(W("A:1"))
        assert not in_cross_effect(W("A:1"))

    def test_single_g(self):
        assert not in_retraction_kernel(W("G:1"))
        assert not in_cross_effect(W("G:1"))


class TestDecomposition:
    def test_g_then_a(self):
        dec = commutator_decomposition(W("G:1 A:1"))
        assert dec.entries == ((1, 1, 1),)
        assert (dec.residual_a, dec.residual_g) == (1, 1)

    def test_a_then_g(self):
        dec = commutator_decomposition(W("A:1 G:1"))
        assert dec.entries == ()
        assert (dec.residual_a, dec.residual_g) == (1, 1)

    def test_conjugated_generator(self):
        # a [g,a'] a^-1 = [g,a]^-1 [g, a*a']
        a, a2 = 1, 1
        w = AG.letter(0, a) * commutator_word(AG.letter(1, 1), AG.letter(0, a2)) * AG.letter(0, Z3.inv(a))
        dec = commutator_decomposition(w)
        assert dec.entries == ((1, a, -1), (1, Z3.mul(a, a2), 1))
        assert (dec.residual_a, dec.residual_g) == (0, 0)

    def test_conjugated_generator_degenerate(self):
        # when a*a' is the identity the second factor drops out
        w = AG.letter(0, 1) * commutator_word(AG.letter(1, 1), AG.letter(0, 2)) * AG.letter(0, 2)
        dec = commutator_decomposition(w)
        assert dec.entries == ((1, 1, -1),)
        assert dec.reassemble() == w

    def test_reassembly_exhaustive_s3_z2(self):
        fp = free_product(S3, Z2)
        count = 0
        for w in enumerate_words(fp, 6):
            dec = commutator_decomposition(w)
            assert dec.reassemble() == w
            assert all(z in (1, -1) for _, _, z in dec.entries)
            count += 1
        assert count == 497


class TestMultiCrossEffect:
    def test_too_few(self):
        single = free_product(Z3, tags=("A",))
        with pytest.raises(TooFewFactors):
            in_multi_cross_effect(single.letter(0, 1))

    def test_one_factor_words_fail(self):
        w = parse_word("X:1 Y:1 X:2 Y:1", XYZ)
        assert not in_multi_cross_effect(parse_word("X:1", XYZ))
        assert not in_multi_cross_effect(parse_word("Y:1", XYZ))
        assert in_multi_cross_effect(XYZ.identity_word())

    def test_nested_commutator_passes(self):
        inner = commutator_word(XYZ.letter(0, 1), XYZ.letter(1, 1))
        w = commutator_word(inner, XYZ.letter(2, 1))
        assert in_multi_cross_effect(w)

    def test_flat_commutator_fails_at_three(self):
        w = commutator_word(XYZ.letter(0, 1), XYZ.letter(1, 1))
        assert not in_multi_cross_effect(w)
        two = free_product(Z3, Z2)
        assert in_multi_cross_effect(commutator_word(two.letter(0, 1), two.letter(1, 1)))

    def test_matches_binary_on_two_factors(self):
        for w in enumerate_words(AG, 5):
            assert in_multi_cross_effect(w) == in_cross_effect(w)

    def test_deletion_characterization(self):
        # over three factors the recursive test equals all-deletions-trivial
        for w in enumerate_words(XYZ, 5):
            expected = all(
                delete_factors(w, {k}).is_identity() for k in range(3)
            )
            assert in_multi_cross_effect(w) == expected


class TestEnumeration:
    def test_zero_bound(self):
        assert [w for w in enumerate_words(AG, 0)] == [AG.identity_word()]

    def test_z2_z2_count(self):
        fp = free_product(Z2, cyclic(2), tags=("A", "B"))
        words = list(enumerate_words(fp, 2))
        assert len(words) == 5  # e, a, g, ag, ga

    def test_z2_z3_count(self):
        words = list(enumerate_words(free_product(Z2, Z3), 3))
        # alternating-syllable counting: 1 + 3 + (1*2 + 2*1) + (1*2*1 + 2*1*2)
        assert len(words) == 1 + 3 + 4 + 6

    def test_length_lex_order_and_uniqueness(self):
        words = list(enumerate_words(AG, 4))
        keys = [(w.length, w.syllables) for w in words]
        assert keys == sorted(keys)
        assert len(set(words)) == len(words)

    def test_word_budget(self):
        with pytest.raises(BoundExceeded):
            list(enumerate_words(free_product(S3, S3, tags=("A", "B")), 8, max_words=1000))


class TestCommutatorIdentities:
    def test_triple_commutator_expansion(self):
        # [x,[y,z]] = [xy,z] [z,x] [z,y] for all single-syllable choices
        letters = [XYZ.letter(k, x) for k, x in XYZ.letters()]
        for x, y, z in itertools.product(letters, repeat=3):
            lhs = commutator_word(x, commutator_word(y, z))
            rhs = (
                commutator_word(x * y, z)
                * commutator_word(z, x)
                * commutator_word(z, y)
            )
            assert lhs == rhs

    def test_push_through_identity(self):
        # x [y,z] = [x,y] [y,xz] x
        letters = [XYZ.letter(k, x) for k, x in XYZ.letters()]
        for x, y, z in itertools.product(letters, repeat=3):
            lhs = x * commutator_word(y, z)
            rhs = commutator_word(x, y) * commutator_word(y, x * z) * x
            assert lhs == rhs


class TestSurjectivityTransfer:
    def _check_lifting(self, a_grp, up_grp, down_grp, proj):
        up = free_product(a_grp, up_grp)
        down = free_product(a_grp, down_grp)
        lift = {
            y: next(x for x in up_grp.elements() if proj.mapping[x] == y)
            for y in down_grp.elements()
        }
        for y in down_grp.elements():
            if y == down_grp.identity:
                continue
            for a in a_grp.elements():
                if a == a_grp.identity:
                    continue
                target = commutator_word(down.letter(1, y), down.letter(0, a))
                source = commutator_word(up.letter(1, lift[y]), up.letter(0, a))
                assert induced_map(source, down, [identity_hom(a_grp), proj]) == target

    def test_generators_lift_along_mod_three(self):
        z6, z3 = cyclic(6), cyclic(3)
        self._check_lifting(Z3, z6, z3, GroupHom(z6, z3, tuple(x % 3 for x in range(6))))

    def test_generators_lift_along_sign(self):
        z2 = cyclic(2)
        sign = GroupHom(S3, z2, (0, 1, 1, 0, 0, 1))
        self._check_lifting(Z3, S3, z2, sign)


class TestTextSyntax:
    def test_round_trip(self):
        for text in ("e", "A:1", "A:1 G:1 A:2", "G:1 A:2 G:1 A:2"):
            w = W(text)
            assert format_word(w) == text
            assert parse_word(format_word(w), AG) == w

    def test_commutator_sugar(self):
        assert W("[G:1,A:2]") == commutator_word(AG.letter(1, 1), AG.letter(0, 2))

    def test_sugar_with_concat_normalizes(self):
        # trailing A:1 merges into the commutator's final syllable
        w = W("[G:1,A:2] A:1")
        assert format_word(w) == "G:1 A:2 G:1 A:2"

    def test_exponent(self):
        assert W("A:1^-1") == W("A:2")
        assert W("[G:1,A:1]^-1") == commutator_word(AG.letter(1, 1), AG.letter(0, 1)).inverse()

    def test_parse_errors(self):
        with pytest.raises(ParseError):
            W("B:1")
        with pytest.raises(ParseError):
            W("A:9")
        with pytest.raises(ParseError):
            W("A1")
