"""Permutations of {0..n-1} as tuples, acting on the right.

``compose(a, b)`` applies ``a`` first, so evaluating a word left to right is
a homomorphism.
"""

from __future__ import annotations

import itertools
from collections import defaultdict
from functools import lru_cache

Perm = tuple[int, ...]

# root tables hold every permutation of the degree; keep them small
TABLE_DEGREE_CAP = 8


def identity(n: int) -> Perm:
    return tuple(range(n))


def compose(a: Perm, b: Perm) -> Perm:
    return tuple(map(b.__getitem__, a))


def inverse(a: Perm) -> Perm:
    out = [0] * len(a)
    for i, j in enumerate(a):
        out[j] = i
    return tuple(out)


@lru_cache(maxsize=1 << 16)
def power(a: Perm, e: int) -> Perm:
    if e < 0:
        a, e = inverse(a), -e
    result = identity(len(a))
    base = a
    while e:
        if e & 1:
            result = compose(result, base)
        base = compose(base, base)
        e >>= 1
    return result


def cycle_type(a: Perm) -> tuple[int, ...]:
    seen = [False] * len(a)
    lengths = []
    for i in range(len(a)):
        if not seen[i]:
            n, j = 0, i
            while not seen[j]:
                seen[j] = True
                j = a[j]
                n += 1
            lengths.append(n)
    return tuple(sorted(lengths, reverse=True))


def to_cycles(a: Perm) -> str:
    """1-based cycle notation, ``()`` for the identity."""
    seen = [False] * len(a)
    parts = []
    for i in range(len(a)):
        if seen[i] or a[i] == i:
            seen[i] = True
            continue
        cyc, j = [], i
        while not seen[j]:
            seen[j] = True
            cyc.append(str(j + 1))
            j = a[j]
        parts.append("(" + " ".join(cyc) + ")")
    return "".join(parts) or "()"


def from_cycles(text: str, n: int) -> Perm:
    img = list(range(n))
    for chunk in text.replace(")", "").split("(")[1:]:
        pts = [int(t) - 1 for t in chunk.split()]
        for i, pt in enumerate(pts):
            img[pt] = pts[(i + 1) % len(pts)]
    return tuple(img)


@lru_cache(maxsize=None)
def all_perms(n: int) -> tuple[Perm, ...]:
    return tuple(itertools.permutations(range(n)))


@lru_cache(maxsize=None)
def class_representatives(n: int) -> tuple[Perm, ...]:
    """One permutation per cycle type, built from consecutive points."""
    reps = []
    for parts in _partitions(n):
        img = list(range(n))
        start = 0
        for ln in parts:
            for i in range(ln):
                img[start + i] = start + (i + 1) % ln
            start += ln
        reps.append(tuple(img))
    return tuple(reps)


@lru_cache(maxsize=None)
def class_members(n: int, ctype: tuple[int, ...]) -> tuple[Perm, ...]:
    return tuple(p for p in all_perms(n) if cycle_type(p) == ctype)


@lru_cache(maxsize=None)
def root_table(n: int, e: int) -> dict[Perm, tuple[Perm, ...]]:
    table: dict[Perm, list[Perm]] = defaultdict(list)
    for p in all_perms(n):
        table[power(p, e)].append(p)
    return {k: tuple(v) for k, v in table.items()}


def roots(target: Perm, e: int) -> tuple[Perm, ...]:
    """All x with x^e == target."""
    n = len(target)
    if e == 1:
        return (target,)
    if e == -1:
        return (inverse(target),)
    if n <= TABLE_DEGREE_CAP:
        return root_table(n, e).get(target, ())
    return tuple(p for p in all_perms(n) if power(p, e) == target)


def _partitions(n: int, largest: int | None = None):
    if largest is None:
        largest = n
    if n == 0:
        yield ()
        return
    for k in range(min(n, largest), 0, -1):
        for rest in _partitions(n - k, k):
            yield (k,) + rest


def orbit(gens: list[Perm], start: int = 0) -> set[int]:
    seen = {start}
    stack = [start]
    while stack:
        i = stack.pop()
        for g in gens:
            j = g[i]
            if j not in seen:
                seen.add(j)
                stack.append(j)
    return seen


def generated_subgroup(gens: list[Perm], n: int, limit: int = 100_000) -> set[Perm]:
    """Closure of ``gens`` under composition (finite, so inverses come free)."""
    group = {identity(n)}
    frontier = [identity(n)]
    while frontier:
        nxt = []
        for h in frontier:
            for g in gens:
                k = compose(h, g)
                if k not in group:
                    group.add(k)
                    nxt.append(k)
                    if len(group) > limit:
                        raise ValueError("subgroup exceeds enumeration limit")
        frontier = nxt
    return group
