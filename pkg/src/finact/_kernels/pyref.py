"""Pure-Python reference implementation of the hot kernels.

A handle is (cayley, inverse) as nested tuples; element indices are dense
0..n-1. The compiled backend in _speedups.pyx mirrors every signature.
"""

from __future__ import annotations

from typing import Sequence


def prepare(cayley, inverse):
    return (tuple(tuple(row) for row in cayley), tuple(inverse))


def closure(handle, gens: Sequence[int], identity: int):
    """Subgroup generated by gens, as a sorted index tuple."""
    cay, _ = handle
    gens = sorted(set(gens))
    members = {identity}
    frontier = [identity]
    for g in gens:
        if g not in members:
            members.add(g)
            frontier.append(g)
    while frontier:
        fresh = []
        for x in frontier:
            row = cay[x]
            for g in gens:
                y = row[g]
                if y not in members:
                    members.add(y)
                    fresh.append(y)
        frontier = fresh
    return tuple(sorted(members))


def pair_commutators(handle, xs: Sequence[int], ys: Sequence[int]):
    """Distinct values x*y*x^-1*y^-1 over the two index sets, sorted."""
    cay, inv = handle
    out = set()
    for x in xs:
        xi = inv[x]
        for y in ys:
            out.add(cay[cay[cay[x][y]][xi]][inv[y]])
    return tuple(sorted(out))


def normal_closure(handle, members: Sequence[int], identity: int):
    """Smallest normal subgroup containing members.

    Conjugates of generators generate a conjugation-closed set, so one
    closure pass over all conjugates suffices.
    """
    cay, inv = handle
    n = len(inv)
    conjugates = set()
    for g in range(n):
        row = cay[g]
        gi = inv[g]
        for x in members:
            conjugates.add(cay[row[x]][gi])
    return closure(handle, conjugates, identity)


def normalize_syllables(handles, identities, syllables):
    """Normal form of a syllable sequence over a free product.

    Syllables are (factor, element) pairs; the result has no identity
    syllables and no adjacent syllables from the same factor.
    """
    stack = []
    for f, x in syllables:
        if x == identities[f]:
            continue
        if stack and stack[-1][0] == f:
            merged = handles[f][0][stack[-1][1]][x]
            stack.pop()
            if merged != identities[f]:
                stack.append((f, merged))
        else:
            stack.append((f, x))
    return tuple(stack)
