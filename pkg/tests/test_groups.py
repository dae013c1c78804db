"""Group core: construction, lattice operations, homs, isomorphism."""

import pytest

from finact.errors import (
    AmbientMismatch,
    BoundExceeded,
    NoIdentity,
    NotAssociative,
    NotNormal,
    UnsupportedParameter,
)
from finact.groups import (
    GroupHom,
    Subgroup,
    all_homs,
    all_subgroups,
    automorphisms,
    cyclic,
    dihedral,
    direct_product,
    family_groups,
    find_isomorphism,
    full_subgroup,
    identity_hom,
    image,
    intersection,
    is_isomorphic,
    is_normal,
    join,
    kernel,
    make_group,
    named_group,
    normal_closure,
    quaternion8,
    quotient,
    subgroup,
    subgroup_generated,
    symmetric,
    trivial_subgroup,
    zero_hom,
)

Z3_TABLE = [[0, 1, 2], [1, 2, 0], [2, 0, 1]]


def s3_elements():
    """Index lookup for S3 on lex-sorted permutation tuples."""
    s3 = symmetric(3)
    # orders: [1, 2, 2, 3, 3, 2] -> transpositions at 1,2,5; 3-cycles at 3,4
    return s3, 1, 3  # (group, a transposition, a 3-cycle)


class TestMakeGroup:
    def test_trivial(self):
        g = make_group([[0]])
        assert g.order == 1 and g.identity == 0

    def test_z3(self):
        g = make_group(Z3_TABLE)
        assert g.order == 3
        assert g.mul(1, 2) == 0
        assert g.inverse == (0, 2, 1)

    def test_mutated_entry_is_not_associative(self):
        bad = [list(r) for r in Z3_TABLE]
        bad[2][2] = 2  # was 1
        with pytest.raises(NotAssociative) as err:
            make_group(bad)
        x, y, z = err.value.witness
        t = bad
        assert t[t[x][y]][z] != t[x][t[y][z]]

    def test_identity_not_at_zero(self):
        g = make_group([[1, 0], [0, 1]])
        assert g.identity == 1

    def test_no_identity(self):
        with pytest.raises(NoIdentity):
            make_group([[0, 0], [0, 0]])


class TestNamedGroups:
    def test_cyclic_one_is_trivial(self):
        assert cyclic(1).order == 1

    def test_s3_order(self):
        assert symmetric(3).order == 6

    def test_direct_product_z2_z3_is_z6(self):
        p = direct_product(cyclic(2), cyclic(3))
        assert p.order == 6
        # independent oracle: an element of order 6 exists iff the product is cyclic
        assert any(p.element_order(x) == 6 for x in p.elements())
        assert is_isomorphic(p, cyclic(6))

    def test_quaternion(self):
        q = quaternion8()
        assert q.order == 8
        assert q.order_profile == ((1, 1), (2, 1), (4, 6))

    def test_dihedral_relations(self):
        d = dihedral(4)
        r, s = 1, 4
        assert d.element_order(r) == 4 and d.element_order(s) == 2
        # s r s^-1 = r^-1
        assert d.conj(s, r) == d.inverse[r]

    def test_named_parser(self):
        assert named_group("Z6").order == 6
        assert named_group("D4").order == 8
        assert named_group("Z2xZ4").order == 8
        assert named_group("Q8").order == 8
        with pytest.raises(UnsupportedParameter):
            named_group("S6")
        with pytest.raises(UnsupportedParameter):
            named_group("nonsense7x")

    def test_family_bound(self):
        fam = family_groups(24)
        assert all(g.order <= 24 for g in fam)
        names = {g.name for g in fam}
        assert {"S4", "A4", "Q8", "Z2xZ2xZ2", "Z3xZ3", "Z2xZ4"} <= names


class TestSubgroups:
    def test_generated_empty(self):
        s3, _, _ = s3_elements()
        assert subgroup_generated(s3, []).members == (0,)

    def test_generated_involution(self):
        s3, t, _ = s3_elements()
        assert subgroup_generated(s3, [t]).order == 2

    def test_generated_whole(self):
        s3, t, c = s3_elements()
        assert subgroup_generated(s3, [t, c]).order == 6

    def test_is_normal(self):
        s3, t, c = s3_elements()
        a3 = subgroup_generated(s3, [c])
        assert is_normal(s3, a3)
        assert not is_normal(s3, subgroup_generated(s3, [t]))
        assert is_normal(s3, full_subgroup(s3))

    def test_normal_closure(self):
        s3, t, c = s3_elements()
        a3 = subgroup_generated(s3, [c])
        assert normal_closure(s3, a3).members == a3.members
        assert normal_closure(s3, subgroup_generated(s3, [t])).order == 6
        d4 = dihedral(4)
        nc = normal_closure(d4, subgroup(d4, [0, 4]))
        assert nc.members == (0, 2, 4, 6)  # contains the half turn r^2

    def test_normal_closure_is_minimal(self):
        for g in (symmetric(3), dihedral(4), quaternion8()):
            normals = [s for s in all_subgroups(g) if is_normal(g, s)]
            for h in all_subgroups(g):
                nc = normal_closure(g, h)
                smaller = [
                    n
                    for n in normals
                    if h.member_set <= n.member_set and len(n.members) < nc.order
                ]
                assert not smaller

    def test_all_subgroups_counts(self):
        assert len(all_subgroups(cyclic(1))) == 1
        assert len(all_subgroups(cyclic(6))) == 4
        assert len(all_subgroups(symmetric(3))) == 6
        assert len(all_subgroups(dihedral(4))) == 10
        assert len(all_subgroups(symmetric(4))) == 30

    def test_all_subgroups_bound(self):
        with pytest.raises(BoundExceeded):
            all_subgroups(symmetric(5))


class TestQuotient:
    def test_trivial_quotient(self):
        s3, _, _ = s3_elements()
        q, proj = quotient(s3, trivial_subgroup(s3))
        assert q.order == 6
        assert proj.is_bijective()

    def test_s3_mod_a3(self):
        s3, _, c = s3_elements()
        a3 = subgroup_generated(s3, [c])
        q, proj = quotient(s3, a3)
        assert q.order == 2
        assert kernel(proj).members == a3.members
        assert proj.is_surjective()

    def test_not_normal(self):
        s3, t, _ = s3_elements()
        with pytest.raises(NotNormal):
            quotient(s3, subgroup_generated(s3, [t]))

    def test_projection_kernel_invariant(self):
        for g in (dihedral(4), quaternion8(), cyclic(12)):
            for n in all_subgroups(g):
                if not is_normal(g, n):
                    continue
                q, proj = quotient(g, n)
                assert kernel(proj).members == n.members
                assert proj.is_surjective()
                assert q.order * n.order == g.order


class TestHoms:
    def test_identity_hom(self):
        s3, _, _ = s3_elements()
        h = identity_hom(s3)
        assert kernel(h).is_trivial() and image(h).is_full()

    def test_sign_hom(self):
        s3, _, c = s3_elements()
        a3 = subgroup_generated(s3, [c])
        z2 = cyclic(2)
        sign = GroupHom(s3, z2, tuple(0 if x in a3.member_set else 1 for x in s3.elements()))
        assert kernel(sign).members == a3.members
        assert image(sign).is_full()

    def test_zero_hom(self):
        s3, _, _ = s3_elements()
        h = zero_hom(s3, cyclic(4))
        assert kernel(h).is_full() and image(h).is_trivial()

    def test_not_multiplicative_rejected(self):
        z4 = cyclic(4)
        with pytest.raises(ValueError):
            GroupHom(z4, z4, (0, 2, 1, 3))

    def test_image_of_normal_under_surjection_is_normal(self):
        d4 = dihedral(4)
        for q_sub in all_subgroups(d4):
            if not is_normal(d4, q_sub):
                continue
            q, proj = quotient(d4, q_sub)
            for n in all_subgroups(d4):
                if not is_normal(d4, n):
                    continue
                img = subgroup(q, {proj.mapping[x] for x in n.members})
                assert is_normal(q, img)


class TestLattice:
    def test_join_with_trivial(self):
        s3, t, _ = s3_elements()
        x = subgroup_generated(s3, [t])
        assert join(x, trivial_subgroup(s3)).members == x.members

    def test_two_transpositions_generate(self):
        s3 = symmetric(3)
        assert join(subgroup_generated(s3, [1]), subgroup_generated(s3, [2])).order == 6

    def test_intersection(self):
        s3, t, c = s3_elements()
        a3 = subgroup_generated(s3, [c])
        assert intersection(a3, subgroup_generated(s3, [t])).is_trivial()

    def test_ambient_mismatch(self):
        with pytest.raises(AmbientMismatch):
            join(trivial_subgroup(cyclic(2)), trivial_subgroup(cyclic(3)))

    def test_absorption_laws(self):
        for g in family_groups(16):
            if g.order > 16:
                continue
            subs = all_subgroups(g)
            for x in subs:
                for y in subs:
                    assert join(x, intersection(x, y)).members == x.members
                    assert intersection(x, join(x, y)).members == x.members


class TestIsomorphism:
    def test_self_iso(self):
        s3, _, _ = s3_elements()
        assert is_isomorphic(s3, s3)

    def test_z6_crt(self):
        iso = find_isomorphism(cyclic(6), direct_product(cyclic(2), cyclic(3)))
        assert iso is not None and iso.is_bijective()

    def test_z4_vs_klein(self):
        assert not is_isomorphic(cyclic(4), named_group("Z2xZ2"))

    def test_d3_is_s3(self):
        assert is_isomorphic(dihedral(3), symmetric(3))

    def test_bound(self):
        with pytest.raises(BoundExceeded):
            is_isomorphic(cyclic(100), cyclic(100))
        assert is_isomorphic(cyclic(100), cyclic(100), bound=128)

    def test_automorphism_counts(self):
        assert len(automorphisms(cyclic(5))) == 4
        assert len(automorphisms(named_group("Z2xZ2"))) == 6
        assert len(automorphisms(named_group("Z2xZ2xZ2"))) == 168
        assert len(automorphisms(symmetric(3))) == 6

    def test_all_homs_count(self):
        # homs Z2 -> Z2 x Z2: images of the generator are the 3 involutions + e
        assert len(all_homs(cyclic(2), named_group("Z2xZ2"))) == 4
        # homs Z6 -> S3: generator goes to any element of order dividing 6
        assert len(all_homs(cyclic(6), symmetric(3))) == 6


class TestSubgroupAsGroup:
    def test_kernel_copy_structure(self):
        s3, _, c = s3_elements()
        a3 = subgroup_generated(s3, [c])
        grp, emb = a3.as_group
        assert grp.order == 3
        assert is_isomorphic(grp, cyclic(3))
        for i in range(3):
            for j in range(3):
                assert emb[grp.cayley[i][j]] == s3.mul(emb[i], emb[j])
