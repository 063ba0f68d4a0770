"""Hilbert series numerators of monomial ideals by pivot splitting.

For a monomial ideal M and a variable x_i appearing in a non-pure-power
generator, the numerator satisfies

    N(M) = N(M + (x_i)) + t * N(M : x_i)

and the recursion bottoms out when every generator is a pure power of a
distinct variable, where N = prod (1 - t^e).  This route never touches a
free resolution, so it serves as an independent check on the Betti
numerator.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Iterable, Sequence

Exps = tuple[int, ...]


def poly_mul(a: Sequence[int], b: Sequence[int]) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def poly_add(a: Sequence[int], b: Sequence[int]) -> list[int]:
    n = max(len(a), len(b))
    return [(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)]


def trim(a: Sequence[int]) -> list[int]:
    a = list(a)
    while len(a) > 1 and a[-1] == 0:
        a.pop()
    return a


def divide_one_minus_t(a: Sequence[int]) -> tuple[list[int], bool]:
    """Divide by (1 - t); returns (quotient, exact)."""
    a = trim(a)
    if sum(a) != 0:
        return a, False
    q = []
    acc = 0
    for c in a[:-1]:
        acc += c
        q.append(acc)
    return trim(q) if q else [0], True


def minimalize(gens: Iterable[Exps]) -> tuple[Exps, ...]:
    gens = sorted(set(gens), key=sum)
    kept: list[Exps] = []
    for g in gens:
        if any(all(k[i] <= g[i] for i in range(len(g))) for k in kept):
            continue
        kept.append(g)
    return tuple(sorted(kept))


@lru_cache(maxsize=200_000)
def _numerator(gens: tuple[Exps, ...]) -> tuple[int, ...]:
    if not gens:
        return (1,)
    if any(sum(g) == 0 for g in gens):
        return (0,)
    n = len(gens[0])
    counts = [0] * n
    mixed = False
    for g in gens:
        support = [i for i in range(n) if g[i]]
        if len(support) > 1:
            mixed = True
            for i in support:
                counts[i] += 1
    if not mixed:
        # pure powers of pairwise distinct variables after minimalization
        out = [1]
        for g in gens:
            e = sum(g)
            factor = [1] + [0] * (e - 1) + [-1]
            out = poly_mul(out, factor)
        return tuple(trim(out))
    pivot = max(range(n), key=lambda i: counts[i])
    unit = tuple(1 if i == pivot else 0 for i in range(n))
    plus = minimalize(gens + (unit,))
    colon = minimalize(tuple(g[:pivot] + (max(g[pivot] - 1, 0),) + g[pivot + 1:] for g in gens))
    left = _numerator(plus)
    right = _numerator(colon)
    return tuple(trim(poly_add(left, [0] + list(right))))


def monomial_numerator(gens: Iterable[Exps]) -> list[int]:
    """Numerator N(t) of the Hilbert series N(t)/(1-t)^n of S/M."""
    return list(_numerator(minimalize(gens)))
