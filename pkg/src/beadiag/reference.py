"""Closed-form reference dimensions, independent of the diagram engine.

The degree-two group-ring quotient IF_m/(IF_m)^3 splits linearly as the
abelianisation plus its tensor square (dimension m + m^2); the involution
acts as minus the identity on the first block and as the place permutation
on the second.  Schur functor dimensions come from the hook content
formula.  These feed the independent pipelines that cross-check the
diagram computations.
"""

from __future__ import annotations

import math
from fractions import Fraction

from .jspaces import j_space
from .words import TRIVIAL_ALPHABET, inv_letters


def partitions(d: int):
    """All partitions of d as weakly decreasing tuples, lexicographic from
    the largest part: (2) before (1, 1)."""

    def gen(n, largest):
        if n == 0:
            yield ()
            return
        for first in range(min(n, largest), 0, -1):
            for rest in gen(n - first, first):
                yield (first,) + rest

    return list(gen(d, d))


def schur_dim(lam, m: int) -> int:
    """Dimension of the Schur functor S_lam on a space of dimension m
    (hook content formula); 0 when lam has more than m rows."""
    lam = tuple(lam)
    if len(lam) > m:
        return 0
    conj = [sum(1 for p in lam if p > j) for j in range(lam[0] if lam else 0)]
    dim = Fraction(1)
    for i, row in enumerate(lam):
        for j in range(row):
            hook = (row - j) + (conj[j] - i) - 1
            dim *= Fraction(m + j - i, hook)
    assert dim.denominator == 1
    return int(dim)


def passi_sigma(m: int):
    """The involution matrix on the (m + m^2)-dimensional degree-two space:
    minus the identity on the m block, the place permutation on the m^2 block."""
    n = m + m * m
    mat = [[Fraction(0)] * n for _ in range(n)]
    for i in range(m):
        mat[i][i] = Fraction(-1)
    for i in range(m):
        for j in range(m):
            row = m + i * m + j
            col = m + j * m + i
            mat[row][col] = Fraction(1)
    return mat


def _trace(mat) -> Fraction:
    return sum((mat[i][i] for i in range(len(mat))), Fraction(0))


def a11_reference_dim(alphabet, m: int) -> int:
    """dim of the order-two coinvariants of the dual degree-two space
    tensored with the span of the alphabet, the involution acting by
    ``passi_sigma`` dualised and by inversion on the alphabet."""
    n = m + m * m
    size = len(alphabet)
    fixed = sum(1 for w in alphabet.letter_elements() if inv_letters(w) == w)
    tr_sigma = _trace(passi_sigma(m))  # transpose-invariant
    total = Fraction(n * size + tr_sigma * fixed, 2)
    assert total.denominator == 1
    return int(total)


def _cycle_types(k: int):
    """(cycle type, class size, cycle count) over the symmetric group S_k."""

    def parts(n, largest):
        if n == 0:
            yield ()
            return
        for first in range(min(n, largest), 0, -1):
            for rest in parts(n - first, first):
                yield (first,) + rest

    for typ in parts(k, k) if k else [()]:
        denom = 1
        counts = {}
        for p in typ:
            denom *= p
            counts[p] = counts.get(p, 0) + 1
        for mult in counts.values():
            denom *= math.factorial(mult)
        yield typ, math.factorial(k) // denom, len(typ)


def _perm_from_type(typ):
    perm = []
    start = 1
    for p in typ:
        perm.extend(list(range(start + 1, start + p)) + [start])
        start += p
    return tuple(perm)


def b_di_dim(d: int, i: int, m: int) -> int:
    """Dimension of the i-th graded piece of the trivalent-count filtration
    of the beadless degree-d functor, at rank m: the S_{2d-i}-coinvariants
    of (K^m)^(2d-i) tensor the labelled-diagram quotient at arity 2d-i."""
    from .catlie import perm_action

    if not 0 <= i <= 2 * d:
        raise ValueError("need 0 <= i <= 2d")
    k = 2 * d - i
    space = j_space(d, k, TRIVIAL_ALPHABET)
    if space.dimension == 0:
        return 0
    total = Fraction(0)
    for typ, size, cycles in _cycle_types(k):
        perm = _perm_from_type(typ)
        sigma = {j + 1: perm[j] for j in range(k)}
        tr = Fraction(0)
        for key in space.free_keys:
            red = space.reduce(perm_action(sigma, {key: Fraction(1)}))
            tr += red.get(key, 0)
        total += size * Fraction(m) ** cycles * tr
    total /= math.factorial(k)
    assert total.denominator == 1 and total >= 0
    return int(total)


def b_d0_reference(d: int, m: int) -> int:
    """Top graded piece via the doubled-partition Schur decomposition."""
    return sum(schur_dim(tuple(2 * p for p in lam), m) for lam in partitions(d))
