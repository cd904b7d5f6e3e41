"""The Lie-PROP module structure on spaces of labelled open Jacobi diagrams.

Arity k carries the space J_d(k); permutations relabel legs and the gluing
generators mu_i send J_d(k+1) to J_d(k) by joining legs i and k+1 onto a
tripod whose free end becomes the new leg i.  The natural map at arity k is
the sum over i of the gluings; a module is *outer* when this map vanishes
at every arity.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from . import diagrams as dg
from .jspaces import closure, ihx_relations, j_space
from .linalg import EchelonBasis, echelonize


def perm_action(sigma, vector):
    """Relabel legs by a permutation; sigma[old_label] = new_label (1-based)."""
    out = {}
    for key, coeff in vector.items():
        dia = dg.relabel_legs(dg.rebuild(key), sigma)
        k2, sign = dg.canonicalize(dia)
        if k2 is dg.ZERO:
            continue
        c = out.get(k2, 0) + coeff * sign
        if c:
            out[k2] = c
        else:
            out.pop(k2, None)
    return out


def glue_pair_key(key, a, b):
    """Glue legs a and b of a canonical diagram; a one-term vector (or zero)."""
    dia = dg.glue_pair(dg.rebuild(key), a, b)
    k2, sign = dg.canonicalize(dia)
    if k2 is dg.ZERO:
        return {}
    return {k2: Fraction(sign)}


def mu_action(i: int, vector, arity: int):
    """The gluing generator mu_i from arity ``arity`` down to ``arity - 1``."""
    if not (1 <= i <= arity - 1):
        raise ValueError("mu_%d undefined at arity %d" % (i, arity))
    out = {}
    for key, coeff in vector.items():
        if dg.key_num_legs(key) != arity:
            raise ValueError("vector not supported in arity %d" % arity)
        for k2, c in glue_pair_key(key, i, arity).items():
            s = out.get(k2, 0) + coeff * c
            if s:
                out[k2] = s
            else:
                out.pop(k2, None)
    return out


def mu_sum(vector, arity: int):
    """Sum of mu_i over i = 1..arity-1 (the outer-property transformation)."""
    out = {}
    for i in range(1, arity):
        for key, coeff in mu_action(i, vector, arity).items():
            s = out.get(key, 0) + coeff
            if s:
                out[key] = s
            else:
                out.pop(key, None)
    return out


@dataclass
class MuTransform:
    """The map J_d(k+1) -> J_d(k) induced by the sum of gluings."""

    d: int
    k: int
    alphabet: object
    source_keys: tuple  # quotient basis of J_d(k+1)
    images: dict  # source key -> image vector reduced in the target universe
    target_relations: EchelonBasis

    @property
    def is_zero(self) -> bool:
        return all(not v for v in self.images.values())

    def rank(self) -> int:
        return echelonize(list(self.images.values())).rank


def mu_transform(d: int, k: int, alphabet) -> MuTransform:
    """Matrix data of the mu map at arity k (source arity k+1).

    The target universe is the closure of the target space's span together
    with all image supports, so reducing an image to zero is equivalent to
    it vanishing in the untruncated quotient.
    """
    source = j_space(d, k + 1, alphabet)
    raw_images = {}
    support = set()
    for key in source.free_keys:
        img = mu_sum({key: Fraction(1)}, k + 1)
        raw_images[key] = img
        support.update(img)
    target = j_space(d, k, alphabet)
    universe = closure(set(target.span) | support)
    rels = []
    for key in universe:
        rels.extend(ihx_relations(key))
    basis = echelonize(rels)
    images = {key: basis.reduce(img) for key, img in raw_images.items()}
    return MuTransform(
        d=d,
        k=k,
        alphabet=alphabet,
        source_keys=tuple(source.free_keys),
        images=images,
        target_relations=basis,
    )


def outer_check(d: int, alphabet):
    """True iff every mu transform vanishes for arities k <= 2d-1.

    Returns (verdict, witness); the witness is (k, source_key, image_vector)
    for the first nonvanishing image, or None.
    """
    for k in range(0, 2 * d):
        t = mu_transform(d, k, alphabet)
        for key in t.source_keys:
            img = t.images[key]
            if img:
                return False, (k, key, img)
    return True, None


def outer_quotient(d: int, k: int, alphabet) -> int:
    """Dimension of the cokernel of the mu transform at arity k."""
    target = j_space(d, k, alphabet)
    t = mu_transform(d, k, alphabet)
    return target.dimension - t.rank()


def truncate(d: int, l: int, alphabet) -> dict:
    """Dimensions of the truncation at level l: J_d(k) for k <= l, else 0."""
    return {
        k: (j_space(d, k, alphabet).dimension if k <= l else 0)
        for k in range(0, 2 * d + 1)
    }


# ---------------------------------------------------------------------------
# Morphism bases of the Lie PROP


@dataclass(frozen=True)
class CatLieMorphismBasis:
    """Basis of the PROP's morphism space: surjections with a left-normed
    Lie bracket basis on each fiber."""

    source: int
    target: int
    elements: tuple  # (surjection images, per-fiber orders)

    @property
    def dimension(self) -> int:
        return len(self.elements)


def _surjections(m, n):
    for images in itertools.product(range(1, n + 1), repeat=m):
        if len(set(images)) == n:
            yield images


def catlie_basis(m: int, n: int) -> CatLieMorphismBasis:
    """Basis of the (m, n) morphism space; dimension is the sum over
    surjections of the product of (fiber size - 1)! factors."""
    elements = []
    for images in _surjections(m, n):
        fibers = [tuple(i for i in range(1, m + 1) if images[i - 1] == t) for t in range(1, n + 1)]
        # left-normed brackets [[...[a1, w2], ...], wj] with a1 the least
        # fiber element: (j-1)! per fiber
        per_fiber = [
            [(f[0],) + rest for rest in itertools.permutations(f[1:])] for f in fibers
        ]
        for orders in itertools.product(*per_fiber):
            elements.append((images, tuple(orders)))
    return CatLieMorphismBasis(source=m, target=n, elements=tuple(elements))

