"""Finite groups on dense element indices, with the lattice/hom toolkit.

Conventions: elements of a group of order n are 0..n-1; all tables are
row-major; constructors in this module place the identity at index 0,
while `make_group` accepts any valid table and records where the
identity sits.
"""

from __future__ import annotations

import itertools
import re
from collections import Counter
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Iterable, Optional, Sequence

import numpy as np

from . import _kernels
from .errors import (
    AmbientMismatch,
    BoundExceeded,
    NoIdentity,
    NoInverse,
    NotAssociative,
    NotLatinSquare,
    NotNormal,
    UnsupportedParameter,
)

DEFAULT_ORDER_BOUND = 64


@dataclass(frozen=True)
class FiniteGroup:
    order: int
    cayley: tuple[tuple[int, ...], ...]
    identity: int
    inverse: tuple[int, ...]
    name: str = "G"

    def mul(self, a: int, b: int) -> int:
        return self.cayley[a][b]

    def inv(self, a: int) -> int:
        return self.inverse[a]

    def conj(self, g: int, x: int) -> int:
        """g * x * g^-1."""
        row = self.cayley[g]
        return self.cayley[row[x]][self.inverse[g]]

    def commutator(self, x: int, y: int) -> int:
        """x * y * x^-1 * y^-1."""
        c = self.cayley
        return c[c[c[x][y]][self.inverse[x]]][self.inverse[y]]

    def power(self, a: int, k: int) -> int:
        if k < 0:
            return self.power(self.inverse[a], -k)
        acc = self.identity
        for _ in range(k):
            acc = self.cayley[acc][a]
        return acc

    def elements(self) -> range:
        return range(self.order)

    def element_order(self, a: int) -> int:
        x = a
        n = 1
        while x != self.identity:
            x = self.cayley[x][a]
            n += 1
        return n

    @cached_property
    def is_abelian(self) -> bool:
        c = self.cayley
        return all(c[a][b] == c[b][a] for a in range(self.order) for b in range(self.order))

    @cached_property
    def order_profile(self) -> tuple[tuple[int, int], ...]:
        """Sorted (element order, multiplicity) pairs; an isomorphism invariant."""
        return tuple(sorted(Counter(self.element_order(a) for a in self.elements()).items()))

    @cached_property
    def _handle(self):
        return _kernels.prepare(self.cayley, self.inverse)

    @cached_property
    def _np_cayley(self) -> np.ndarray:
        arr = np.asarray(self.cayley, dtype=np.int32)
        arr.setflags(write=False)
        return arr

    def __repr__(self) -> str:
        return f"FiniteGroup({self.name}, order={self.order})"


@dataclass(frozen=True)
class Subgroup:
    ambient: FiniteGroup
    members: tuple[int, ...]

    def __post_init__(self):
        g = self.ambient
        mset = set(self.members)
        if list(self.members) != sorted(mset):
            raise ValueError("members must be sorted and duplicate-free")
        if not mset:
            raise ValueError("a subgroup is nonempty")
        if any(m < 0 or m >= g.order for m in self.members):
            raise ValueError("member index out of range")
        if g.identity not in mset:
            raise ValueError("subgroup misses the identity")
        for a in self.members:
            if g.inverse[a] not in mset:
                raise ValueError(f"subgroup not closed under inverse at {a}")
            row = g.cayley[a]
            for b in self.members:
                if row[b] not in mset:
                    raise ValueError(f"subgroup not closed under product at ({a},{b})")

    @property
    def order(self) -> int:
        return len(self.members)

    @cached_property
    def member_set(self) -> frozenset[int]:
        return frozenset(self.members)

    def __contains__(self, x: int) -> bool:
        return x in self.member_set

    def is_trivial(self) -> bool:
        return len(self.members) == 1

    def is_full(self) -> bool:
        return len(self.members) == self.ambient.order

    @cached_property
    def as_group(self) -> tuple[FiniteGroup, tuple[int, ...]]:
        """The subgroup as its own FiniteGroup plus the embedding index map.

        Local element i corresponds to ambient element members[i].
        """
        g = self.ambient
        if self.members == tuple(range(g.order)):
            return g, self.members
        local = {m: i for i, m in enumerate(self.members)}
        cay = tuple(
            tuple(local[g.cayley[a][b]] for b in self.members) for a in self.members
        )
        inv = tuple(local[g.inverse[a]] for a in self.members)
        grp = FiniteGroup(
            order=len(self.members),
            cayley=cay,
            identity=local[g.identity],
            inverse=inv,
            name=f"{g.name}|{len(self.members)}",
        )
        return grp, self.members

    def __repr__(self) -> str:
        return f"Subgroup({self.ambient.name}, {list(self.members)})"


@dataclass(frozen=True)
class GroupHom:
    domain: FiniteGroup
    codomain: FiniteGroup
    mapping: tuple[int, ...]

    def __post_init__(self):
        if len(self.mapping) != self.domain.order:
            raise ValueError("mapping length must equal the domain order")
        m = np.asarray(self.mapping, dtype=np.int32)
        if m.size and (m.min() < 0 or m.max() >= self.codomain.order):
            raise ValueError("mapping value out of range")
        dom = self.domain._np_cayley
        cod = self.codomain._np_cayley
        if not np.array_equal(m[dom], cod[m[:, None], m[None, :]]):
            bad = np.argwhere(m[dom] != cod[m[:, None], m[None, :]])[0]
            raise ValueError(f"not multiplicative at ({bad[0]},{bad[1]})")
        if self.mapping[self.domain.identity] != self.codomain.identity:
            raise ValueError("identity is not preserved")

    def __call__(self, a: int) -> int:
        return self.mapping[a]

    def compose(self, other: "GroupHom") -> "GroupHom":
        """self after other."""
        if other.codomain != self.domain:
            raise ValueError("composition domains do not match")
        return GroupHom(
            other.domain, self.codomain, tuple(self.mapping[x] for x in other.mapping)
        )

    def is_injective(self) -> bool:
        return len(set(self.mapping)) == self.domain.order

    def is_surjective(self) -> bool:
        return len(set(self.mapping)) == self.codomain.order

    def is_bijective(self) -> bool:
        return self.is_injective() and self.is_surjective()

    def inverse_hom(self) -> "GroupHom":
        if not self.is_bijective():
            raise ValueError("only bijective homs invert")
        back = [0] * self.codomain.order
        for x, y in enumerate(self.mapping):
            back[y] = x
        return GroupHom(self.codomain, self.domain, tuple(back))


def identity_hom(g: FiniteGroup) -> GroupHom:
    return GroupHom(g, g, tuple(range(g.order)))


def zero_hom(domain: FiniteGroup, codomain: FiniteGroup) -> GroupHom:
    return GroupHom(domain, codomain, tuple([codomain.identity] * domain.order))


def inclusion_hom(s: Subgroup) -> GroupHom:
    grp, emb = s.as_group
    return GroupHom(grp, s.ambient, emb)


# ---------------------------------------------------------------------------
# construction and validation


def make_group(cayley: Sequence[Sequence[int]], name: str = "G") -> FiniteGroup:
    """Validate a Cayley table and wrap it as a FiniteGroup.

    Raises NotLatinSquare / NoIdentity / NoInverse / NotAssociative, each
    carrying a witness for the violated axiom.
    """
    n = len(cayley)
    if n == 0 or any(len(row) != n for row in cayley):
        raise NotLatinSquare("table", 0)
    table = tuple(tuple(int(x) for x in row) for row in cayley)
    if any(x < 0 or x >= n for row in table for x in row):
        raise NotLatinSquare("table", 0)

    identity = None
    for e in range(n):
        if all(table[e][x] == x and table[x][e] == x for x in range(n)):
            identity = e
            break
    if identity is None:
        raise NoIdentity("no two-sided identity element")

    inverse = [None] * n
    for x in range(n):
        for y in range(n):
            if table[x][y] == identity and table[y][x] == identity:
                inverse[x] = y
                break
        if inverse[x] is None:
            raise NoInverse(x)

    arr = np.asarray(table, dtype=np.int32)
    left = arr[arr]  # left[x,y,z] = (x*y)*z
    right = arr[:, arr]  # right[x,y,z] = x*(y*z)
    if not np.array_equal(left, right):
        x, y, z = (int(v) for v in np.argwhere(left != right)[0])
        raise NotAssociative(x, y, z)

    # a group table is automatically a latin square; kept as a final audit
    full = set(range(n))
    for i, row in enumerate(table):
        if set(row) != full:
            raise NotLatinSquare("row", i)
    for j in range(n):
        if {row[j] for row in table} != full:
            raise NotLatinSquare("column", j)

    return FiniteGroup(
        order=n, cayley=table, identity=identity, inverse=tuple(inverse), name=name
    )


def cyclic(n: int) -> FiniteGroup:
    """Z_n written additively; element k is the residue k."""
    if n < 1:
        raise UnsupportedParameter("cyclic order must be >= 1")
    cay = tuple(tuple((i + j) % n for j in range(n)) for i in range(n))
    inv = tuple((-i) % n for i in range(n))
    return FiniteGroup(n, cay, 0, inv, name=f"Z{n}")


def dihedral(n: int) -> FiniteGroup:
    """Dihedral group of order 2n; index i<n is r^i, index n+i is r^i*s."""
    if n < 1:
        raise UnsupportedParameter("dihedral parameter must be >= 1")
    order = 2 * n

    def mul(a: int, b: int) -> int:
        ra, fa = a % n, a // n
        rb, fb = b % n, b // n
        if fa == 0:
            r = (ra + rb) % n
        else:
            r = (ra - rb) % n
        return r + n * (fa ^ fb)

    cay = tuple(tuple(mul(a, b) for b in range(order)) for a in range(order))
    inv = tuple(cay[a].index(0) for a in range(order))
    return FiniteGroup(order, cay, 0, inv, name=f"D{n}")


def _perm_elements(n: int, even_only: bool = False) -> list[tuple[int, ...]]:
    perms = []
    for p in itertools.permutations(range(n)):
        if even_only:
            inversions = sum(
                1 for i in range(n) for j in range(i + 1, n) if p[i] > p[j]
            )
            if inversions % 2:
                continue
        perms.append(p)
    return sorted(perms)


def _group_from_perms(perms: list[tuple[int, ...]], name: str) -> FiniteGroup:
    index = {p: i for i, p in enumerate(perms)}
    n = len(perms)
    cay = tuple(
        tuple(index[tuple(p[q[i]] for i in range(len(q)))] for q in perms)
        for p in perms
    )
    inv = []
    for p in perms:
        back = [0] * len(p)
        for i, v in enumerate(p):
            back[v] = i
        inv.append(index[tuple(back)])
    ident = index[tuple(range(len(perms[0])))] if perms else 0
    return FiniteGroup(n, cay, ident, tuple(inv), name=name)


def symmetric(n: int) -> FiniteGroup:
    """S_n for n <= 5, on permutation tuples sorted lexicographically.

    Composition is (p*q)(i) = p(q(i)); the identity tuple sorts first.
    """
    if not 1 <= n <= 5:
        raise UnsupportedParameter("symmetric groups are built for 1 <= n <= 5")
    return _group_from_perms(_perm_elements(n), name=f"S{n}")


def alternating(n: int) -> FiniteGroup:
    if not 1 <= n <= 5:
        raise UnsupportedParameter("alternating groups are built for 1 <= n <= 5")
    return _group_from_perms(_perm_elements(n, even_only=True), name=f"A{n}")


def quaternion8() -> FiniteGroup:
    """Q8 on [1, i, j, k, -1, -i, -j, -k]."""
    units = [
        (1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1),
        (-1, 0, 0, 0), (0, -1, 0, 0), (0, 0, -1, 0), (0, 0, 0, -1),
    ]
    index = {u: i for i, u in enumerate(units)}

    def hamilton(p, q):
        a1, b1, c1, d1 = p
        a2, b2, c2, d2 = q
        return (
            a1 * a2 - b1 * b2 - c1 * c2 - d1 * d2,
            a1 * b2 + b1 * a2 + c1 * d2 - d1 * c2,
            a1 * c2 - b1 * d2 + c1 * a2 + d1 * b2,
            a1 * d2 + b1 * c2 - c1 * b2 + d1 * a2,
        )

    cay = tuple(tuple(index[hamilton(p, q)] for q in units) for p in units)
    inv = tuple(cay[a].index(0) for a in range(8))
    return FiniteGroup(8, cay, 0, inv, name="Q8")


def direct_product(g: FiniteGroup, h: FiniteGroup, name: str | None = None) -> FiniteGroup:
    """G x H with pair index a*|H| + b."""
    nh = h.order
    order = g.order * nh

    def mul(x: int, y: int) -> int:
        a1, b1 = divmod(x, nh)
        a2, b2 = divmod(y, nh)
        return g.cayley[a1][a2] * nh + h.cayley[b1][b2]

    cay = tuple(tuple(mul(x, y) for y in range(order)) for x in range(order))
    inv = tuple(g.inverse[x // nh] * nh + h.inverse[x % nh] for x in range(order))
    ident = g.identity * nh + h.identity
    return FiniteGroup(order, cay, ident, inv, name=name or f"{g.name}x{h.name}")


def product_maps(g: FiniteGroup, h: FiniteGroup):
    """G x H together with its two injections and two projections."""
    p = direct_product(g, h)
    nh = h.order
    inj1 = GroupHom(g, p, tuple(a * nh + h.identity for a in range(g.order)))
    inj2 = GroupHom(h, p, tuple(g.identity * nh + b for b in range(h.order)))
    proj1 = GroupHom(p, g, tuple(x // nh for x in range(p.order)))
    proj2 = GroupHom(p, h, tuple(x % nh for x in range(p.order)))
    return p, inj1, inj2, proj1, proj2


_NAME_RE = re.compile(r"^([A-Za-z]+)(\d*)$")


def named_group(name: str) -> FiniteGroup:
    """Build a group from a compact name: Z6, C6, D4, S3, A4, Q8, Z2xZ4, ..."""
    if "x" in name:
        parts = name.split("x")
        grp = named_group(parts[0])
        for part in parts[1:]:
            grp = direct_product(grp, named_group(part))
        return FiniteGroup(
            grp.order, grp.cayley, grp.identity, grp.inverse, name=name
        )
    m = _NAME_RE.match(name.strip())
    if not m:
        raise UnsupportedParameter(f"cannot parse group name {name!r}")
    family, num = m.group(1).upper(), m.group(2)
    if family == "Q" and num == "8":
        return quaternion8()
    if not num:
        raise UnsupportedParameter(f"missing parameter in group name {name!r}")
    k = int(num)
    if family in ("Z", "C"):
        grp = cyclic(k)
    elif family == "D":
        grp = dihedral(k)
    elif family == "S":
        grp = symmetric(k)
    elif family == "A":
        grp = alternating(k)
    else:
        raise UnsupportedParameter(f"unknown family {family!r}")
    return FiniteGroup(grp.order, grp.cayley, grp.identity, grp.inverse, name=name)


def family_groups(max_order: int) -> list[FiniteGroup]:
    """The built-in sweep family, every member of order <= max_order."""
    out: list[FiniteGroup] = []
    for n in range(1, max_order + 1):
        out.append(cyclic(n))
    for n in range(2, max_order // 2 + 1):
        out.append(dihedral(n))
    for extra in ("S3", "S4", "A4", "Q8", "Z2xZ2xZ2", "Z3xZ3", "Z2xZ4"):
        try:
            out.append(named_group(extra))
        except UnsupportedParameter:  # pragma: no cover
            continue
    seen = set()
    kept = []
    for g in out:
        if g.order <= max_order and g.name not in seen:
            seen.add(g.name)
            kept.append(g)
    return kept


# ---------------------------------------------------------------------------
# subgroup lattice


def subgroup(ambient: FiniteGroup, members: Iterable[int]) -> Subgroup:
    return Subgroup(ambient, tuple(sorted(set(members))))


def trivial_subgroup(g: FiniteGroup) -> Subgroup:
    return Subgroup(g, (g.identity,))


def full_subgroup(g: FiniteGroup) -> Subgroup:
    return Subgroup(g, tuple(range(g.order)))


def subgroup_generated(g: FiniteGroup, gens: Iterable[int]) -> Subgroup:
    return Subgroup(g, _kernels.closure(g._handle, list(gens), g.identity))


def is_normal(g: FiniteGroup, h: Subgroup) -> bool:
    if h.ambient != g:
        raise AmbientMismatch("subgroup does not live in the given group")
    mem = h.member_set
    return all(g.conj(x, a) in mem for x in g.elements() for a in h.members)


def normal_closure(g: FiniteGroup, h: Subgroup) -> Subgroup:
    if h.ambient != g:
        raise AmbientMismatch("subgroup does not live in the given group")
    return Subgroup(g, _kernels.normal_closure(g._handle, h.members, g.identity))


def quotient(g: FiniteGroup, n: Subgroup) -> tuple[FiniteGroup, GroupHom]:
    """G/N on cosets sorted by minimal member, plus the projection."""
    if not is_normal(g, n):
        raise NotNormal(f"{n} is not normal in {g.name}")
    coset_of = [-1] * g.order
    reps: list[int] = []
    for x in g.elements():
        if coset_of[x] >= 0:
            continue
        members = sorted(g.cayley[x][a] for a in n.members)
        idx = len(reps)
        reps.append(members[0])
        for m in members:
            coset_of[m] = idx
    order = len(reps)
    cay = tuple(
        tuple(coset_of[g.cayley[reps[i]][reps[j]]] for j in range(order))
        for i in range(order)
    )
    ident = coset_of[g.identity]
    inv = tuple(coset_of[g.inverse[reps[i]]] for i in range(order))
    q = FiniteGroup(order, cay, ident, inv, name=f"{g.name}/{n.order}")
    return q, GroupHom(g, q, tuple(coset_of))


def kernel(f: GroupHom) -> Subgroup:
    e = f.codomain.identity
    return Subgroup(f.domain, tuple(x for x in f.domain.elements() if f.mapping[x] == e))


def image(f: GroupHom) -> Subgroup:
    return Subgroup(f.codomain, tuple(sorted(set(f.mapping))))


def join(x: Subgroup, y: Subgroup) -> Subgroup:
    if x.ambient != y.ambient:
        raise AmbientMismatch("join needs a common ambient group")
    g = x.ambient
    return Subgroup(g, _kernels.closure(g._handle, x.members + y.members, g.identity))


def intersection(x: Subgroup, y: Subgroup) -> Subgroup:
    if x.ambient != y.ambient:
        raise AmbientMismatch("intersection needs a common ambient group")
    return Subgroup(x.ambient, tuple(sorted(x.member_set & y.member_set)))


@lru_cache(maxsize=None)
def all_subgroups(g: FiniteGroup, bound: int = DEFAULT_ORDER_BOUND) -> tuple[Subgroup, ...]:
    """Every subgroup, found by join-closure over the cyclic subgroups."""
    if g.order > bound:
        raise BoundExceeded(f"|{g.name}| = {g.order} exceeds the bound {bound}")
    cyclics = sorted(
        {_kernels.closure(g._handle, [x], g.identity) for x in g.elements()}
    )
    known: set[tuple[int, ...]] = {(g.identity,)}
    known.update(cyclics)
    frontier = list(known)
    while frontier:
        fresh = []
        for s in frontier:
            for c in cyclics:
                j = _kernels.closure(g._handle, s + c, g.identity)
                if j not in known:
                    known.add(j)
                    fresh.append(j)
        frontier = fresh
    ordered = sorted(known, key=lambda m: (len(m), m))
    return tuple(Subgroup(g, m) for m in ordered)


# ---------------------------------------------------------------------------
# isomorphisms and hom enumeration


def minimal_generating_sequence(g: FiniteGroup) -> tuple[int, ...]:
    """A short generating sequence, chosen greedily for determinism."""
    gens: list[int] = []
    current = (g.identity,)
    current_set = {g.identity}
    while len(current) < g.order:
        best = None
        best_size = len(current)
        for x in g.elements():
            if x in current_set:
                continue
            grown = _kernels.closure(g._handle, list(gens) + [x], g.identity)
            if len(grown) > best_size:
                best = x
                best_size = len(grown)
                if best_size == g.order:
                    break
        gens.append(best)
        current = _kernels.closure(g._handle, gens, g.identity)
        current_set = set(current)
    return tuple(gens)


def _spread_map(
    g: FiniteGroup, h: FiniteGroup, gens: Sequence[int], images: Sequence[int]
) -> Optional[list[int]]:
    """Extend gen->image assignments over <gens> by right multiplication.

    Returns the full mapping when gens generate g and no conflict arises,
    None on conflict. The result still needs a full multiplicativity check.
    """
    mapping = [-1] * g.order
    mapping[g.identity] = h.identity
    frontier = [g.identity]
    count = 1
    while frontier:
        fresh = []
        for x in frontier:
            mx = mapping[x]
            for gen, img in zip(gens, images):
                y = g.cayley[x][gen]
                my = h.cayley[mx][img]
                if mapping[y] < 0:
                    mapping[y] = my
                    fresh.append(y)
                    count += 1
                elif mapping[y] != my:
                    return None
        frontier = fresh
    if count != g.order:
        return None
    return mapping


def _is_hom_mapping(g: FiniteGroup, h: FiniteGroup, mapping: Sequence[int]) -> bool:
    m = np.asarray(mapping, dtype=np.int32)
    return bool(
        np.array_equal(m[g._np_cayley], h._np_cayley[m[:, None], m[None, :]])
    )


def _search_homs(
    g: FiniteGroup,
    h: FiniteGroup,
    *,
    bijective: bool,
    limit: Optional[int] = None,
) -> list[tuple[int, ...]]:
    gens = minimal_generating_sequence(g)
    if not gens:  # trivial group
        return [tuple([h.identity] * 1)] if g.order == 1 else []
    orders = [g.element_order(x) for x in gens]
    if bijective:
        candidates = [
            [y for y in h.elements() if h.element_order(y) == o] for o in orders
        ]
    else:
        candidates = [
            [y for y in h.elements() if o % h.element_order(y) == 0] for o in orders
        ]
    results: list[tuple[int, ...]] = []

    def recurse(i: int, chosen: list[int]):
        if limit is not None and len(results) >= limit:
            return
        if i == len(gens):
            mapping = _spread_map(g, h, gens, chosen)
            if mapping is None:
                return
            if bijective and len(set(mapping)) != g.order:
                return
            if _is_hom_mapping(g, h, mapping):
                results.append(tuple(mapping))
            return
        for y in candidates[i]:
            chosen.append(y)
            if _spread_partial_ok(g, h, gens[: i + 1], chosen):
                recurse(i + 1, chosen)
            chosen.pop()

    def _spread_partial_ok(g, h, gens_part, images_part) -> bool:
        # partial consistency over the subgroup generated so far
        mapping = [-1] * g.order
        mapping[g.identity] = h.identity
        frontier = [g.identity]
        while frontier:
            fresh = []
            for x in frontier:
                mx = mapping[x]
                for gen, img in zip(gens_part, images_part):
                    y = g.cayley[x][gen]
                    my = h.cayley[mx][img]
                    if mapping[y] < 0:
                        mapping[y] = my
                        fresh.append(y)
                    elif mapping[y] != my:
                        return False
            frontier = fresh
        return True

    recurse(0, [])
    return results


def find_isomorphism(
    g: FiniteGroup, h: FiniteGroup, bound: int = DEFAULT_ORDER_BOUND
) -> Optional[GroupHom]:
    """An explicit isomorphism g -> h, or None."""
    if max(g.order, h.order) > bound:
        raise BoundExceeded(f"isomorphism search bound {bound} exceeded")
    if g.order != h.order or g.order_profile != h.order_profile:
        return None
    if g.is_abelian != h.is_abelian:
        return None
    found = _search_homs(g, h, bijective=True, limit=1)
    if not found:
        return None
    return GroupHom(g, h, found[0])


def is_isomorphic(g: FiniteGroup, h: FiniteGroup, bound: int = DEFAULT_ORDER_BOUND) -> bool:
    return find_isomorphism(g, h, bound) is not None


@lru_cache(maxsize=None)
def automorphisms(g: FiniteGroup) -> tuple[tuple[int, ...], ...]:
    """All automorphism mappings of g, sorted."""
    return tuple(sorted(_search_homs(g, g, bijective=True)))


def all_homs(g: FiniteGroup, h: FiniteGroup) -> tuple[GroupHom, ...]:
    """Every homomorphism g -> h, sorted by mapping."""
    return tuple(
        GroupHom(g, h, m) for m in sorted(set(_search_homs(g, h, bijective=False)))
    )
