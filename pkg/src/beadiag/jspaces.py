"""Spaces of beaded open Jacobi diagrams modulo AS and IHX.

Antisymmetry is folded into canonical signs (module ``diagrams``), so only
IHX is materialised as relation vectors.  A space is presented by a
spanning set of canonical keys closed under IHX neighbours, together with
the echelonised relation matrix; any IHX instance touching the closure has
all three terms inside it, so membership and dimension questions about the
untruncated quotient restrict exactly to the closure.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from . import cache
from . import diagrams as dg
from .linalg import EchelonBasis, echelonize, quotient_dim

MAX_CLOSURE_BEAD_LENGTH = 128


class ClosureDiverged(RuntimeError):
    """The relation closure keeps producing longer and longer beads.

    Happens for nontrivial bead alphabets once diagrams have internal edges
    (degree >= 2): rewiring recombines holonomies into unboundedly long
    products, so the closure of an alphabet-truncated seed set is infinite
    and the truncated quotient is not computable by closure.
    """


def canonical_vector(terms):
    """Sum of (coeff, Diagram) terms as a sparse vector over canonical keys."""
    out = {}
    for coeff, dia in terms:
        key, sign = dg.canonicalize(dia)
        if key is dg.ZERO:
            continue
        c = out.get(key, 0) + Fraction(coeff * sign)
        if c:
            out[key] = c
        else:
            out.pop(key, None)
    return out


def ihx_relations(key):
    """One IHX relation vector per internal edge of the canonical diagram."""
    dia = dg.rebuild(key)
    out = []
    for index in dg.internal_edges(dia):
        vec = canonical_vector(dg.ihx_at_edge(dia, index))
        if vec:
            out.append(vec)
    return out


def closure(seed_keys, max_bead_length=MAX_CLOSURE_BEAD_LENGTH):
    """Smallest superset of the seeds closed under IHX neighbours.

    Raises :class:`ClosureDiverged` when canonical beads outgrow
    ``max_bead_length`` (see the class docstring for when that happens).
    """
    seen = set(seed_keys)
    frontier = list(seen)
    while frontier:
        key = frontier.pop()
        for rel in ihx_relations(key):
            for nb in rel:
                if nb not in seen:
                    if any(len(w) > max_bead_length for w in dg.key_beads(nb)):
                        raise ClosureDiverged(
                            "IHX closure produced a bead longer than %d letters"
                            % max_bead_length
                        )
                    seen.add(nb)
                    frontier.append(nb)
    return tuple(sorted(seen))


@dataclass(frozen=True)
class JSpace:
    """A truncated space J_d(m) over a finite bead alphabet."""

    d: int
    m: int
    alphabet: object
    span: tuple  # closure of the enumerated canonical keys
    relations: EchelonBasis = field(compare=False)
    dimension: int

    @property
    def free_keys(self):
        """Keys forming a basis of the quotient (non-pivots of the relations)."""
        pivots = set(self.relations.rows)
        return tuple(k for k in self.span if k not in pivots)

    def reduce(self, vector):
        """Quotient coordinates of a vector (support on free keys only)."""
        return self.relations.reduce(vector)

    def is_zero(self, vector):
        return not self.relations.reduce(vector)


_jspace_cache = {}


def j_space(d: int, m: int, alphabet) -> JSpace:
    """The truncated quotient space spanned by degree-d, m-leg diagrams with
    canonical beads in the alphabet, modulo AS (signs) and IHX."""
    ck = (d, m, alphabet)
    if ck in _jspace_cache:
        return _jspace_cache[ck]
    disk_key = (d, m, alphabet.rank, alphabet.elements)
    space = cache.get("jspace", disk_key)
    if space is None:
        span = closure(dg.enumerate_diagrams(d, m, alphabet))
        rels = []
        for key in span:
            rels.extend(ihx_relations(key))
        basis = echelonize(rels)
        dim = quotient_dim([{k: Fraction(1)} for k in span], [dict(r) for r in rels])
        space = JSpace(
            d=d, m=m, alphabet=alphabet, span=span, relations=basis, dimension=dim
        )
        cache.put("jspace", disk_key, space)
    _jspace_cache[ck] = space
    return space


def vector_is_zero_in_full_space(vector) -> bool:
    """Whether a diagram vector vanishes in the untruncated AS/IHX quotient.

    Exact: any IHX instance meeting the closure of the support lies entirely
    inside it, so reduction modulo the closure's relations decides membership
    in the full relation span.
    """
    if not vector:
        return True
    keys = closure(vector.keys())
    rels = []
    for key in keys:
        rels.extend(ihx_relations(key))
    return not echelonize(rels).reduce(vector)
