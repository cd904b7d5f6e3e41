"""Exact sparse linear algebra over the rationals.

Vectors are plain dicts mapping basis keys to nonzero ``Fraction`` values.
Keys may be any mutually comparable hashable values; within one computation
all keys come from a single universe (canonical diagram keys, abstract
indices, ...).  Echelon bases are kept fully inter-reduced with pivot
coefficient 1, pivots chosen as the smallest key, so the row set is the
unique reduced echelon form of the row space.
"""

from __future__ import annotations

from fractions import Fraction


class RelationOutsideSpan(Exception):
    """A relation has support on a key absent from the spanning universe."""


def vec(items=()) -> dict:
    """Build a sparse vector, dropping zero coefficients."""
    out = {}
    for key, coeff in dict(items).items():
        coeff = Fraction(coeff)
        if coeff:
            out[key] = coeff
    return out


def vadd(u: dict, v: dict) -> dict:
    out = dict(u)
    for key, coeff in v.items():
        s = out.get(key, 0) + coeff
        if s:
            out[key] = s
        else:
            out.pop(key, None)
    return out


def vscale(u: dict, c) -> dict:
    c = Fraction(c)
    if not c:
        return {}
    return {key: coeff * c for key, coeff in u.items()}


def vaxpy(u: dict, c, v: dict) -> dict:
    """u + c*v, as a new dict."""
    c = Fraction(c)
    if not c:
        return dict(u)
    out = dict(u)
    for key, coeff in v.items():
        s = out.get(key, 0) + c * coeff
        if s:
            out[key] = s
        else:
            out.pop(key, None)
    return out


class EchelonBasis:
    """Inter-reduced echelon rows of sparse vectors, pivoted on smallest keys."""

    __slots__ = ("rows",)

    def __init__(self):
        self.rows = {}  # pivot key -> row vector (pivot coeff 1)

    def __getstate__(self):
        return self.rows

    def __setstate__(self, rows):
        self.rows = rows

    @property
    def rank(self) -> int:
        return len(self.rows)

    def pivots(self):
        return sorted(self.rows)

    def reduce(self, v: dict) -> dict:
        """v minus its projection onto the row space; no support on pivots."""
        out = dict(v)
        # rows carry no other pivots in their support, so one pass suffices
        for pivot in sorted(set(out) & set(self.rows)):
            coeff = out.get(pivot)
            if coeff:
                out = vaxpy(out, -coeff, self.rows[pivot])
        return out

    def insert(self, v: dict) -> bool:
        """Add v to the span; returns True iff the rank grew."""
        r = self.reduce(v)
        if not r:
            return False
        pivot = min(r)
        r = vscale(r, Fraction(1) / r[pivot])
        for key, row in list(self.rows.items()):
            c = row.get(pivot)
            if c:
                self.rows[key] = vaxpy(row, -c, r)
        self.rows[pivot] = r
        return True

    def copy(self) -> "EchelonBasis":
        dup = EchelonBasis()
        dup.rows = {k: dict(v) for k, v in self.rows.items()}
        return dup

    def contains(self, v: dict) -> bool:
        return not self.reduce(v)


def echelonize(vectors) -> EchelonBasis:
    """Echelonize a list of sparse vectors (row space preserved)."""
    basis = EchelonBasis()
    for v in vectors:
        basis.insert(v)
    return basis


def reduce_mod(v: dict, basis: EchelonBasis) -> dict:
    return basis.reduce(v)


def quotient_dim(span, relations) -> int:
    """dim span(span) minus dim (span(relations) within span(span)).

    Every relation must be supported on keys occurring in ``span``;
    otherwise the relation-generating closure was incomplete and
    :class:`RelationOutsideSpan` is raised.
    """
    universe = set()
    for v in span:
        universe.update(v)
    for r in relations:
        for key in r:
            if key not in universe:
                raise RelationOutsideSpan(key)
    basis = echelonize(relations)
    dim = 0
    for v in span:
        if basis.insert(v):
            dim += 1
    return dim
