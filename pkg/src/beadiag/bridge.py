"""The bridge between labelled-diagram modules and arc-diagram functors.

Gluing a degree-d diagram's legs onto arcs along a fiber-ordered set map
realises the equivalence between the Lie-PROP module of labelled diagrams
and the class-0 arc functor.  The dimension of the arc space at l arcs can
be computed without diagrams on arcs, as the sum over arities i of the
S_i-coinvariants of (set maps i -> l) tensor J_d(i); both routes are
implemented and compared, together with the coequalizer identity (the STU
relation) and naturality over the five Hopf generators.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction

from . import arcs as ar
from . import catlie as cl
from . import diagrams as dg
from .jspaces import ihx_relations, j_space
from .linalg import echelonize
from .reference import _cycle_types, _perm_from_type
from .words import IDENTITY


@dataclass(frozen=True)
class FiberOrderedMap:
    """A set map {1..c} -> {1..l} with a total order on each fiber."""

    source: int
    target: int
    fibers: tuple  # per target 1..l, the ordered tuple of its preimages

    def __post_init__(self):
        flat = sorted(x for f in self.fibers for x in f)
        if flat != list(range(1, self.source + 1)) or len(self.fibers) != self.target:
            raise ValueError("fibers must partition 1..source over target slots")

    def image_of(self, i):
        for t, f in enumerate(self.fibers):
            if i in f:
                return t + 1
        raise KeyError(i)


def cat_ass_basis(c, l):
    """All fiber-ordered maps {1..c} -> {1..l}, deterministically ordered.

    Count equals the rising factorial l(l+1)...(l+c-1).
    """
    out = [
        FiberOrderedMap(source=c, target=l, fibers=placement)
        for placement in ar.leg_placements(c, l)
    ]
    out.sort(key=lambda f: f.fibers)
    return out


def glue(fom: FiberOrderedMap, jkey, arc_beads=None):
    """Glue a labelled diagram's legs onto arcs in fiber order; returns a
    one-term vector over canonical arc keys (possibly empty)."""
    if dg.key_num_legs(jkey) != fom.source:
        raise ar.ArityMismatch(
            "diagram has %d legs, map has source %d" % (dg.key_num_legs(jkey), fom.source)
        )
    dashed = dg.rebuild(jkey)
    if arc_beads is None:
        arc_beads = tuple([IDENTITY] * fom.target)
    arcs = ar._arcs_from_placement(fom.fibers, arc_beads)
    key, sign = ar.arc_canonicalize(arcs, dashed)
    if key is ar.ZERO:
        return {}
    return {key: Fraction(sign)}


def glue_vector(fom, jvector, arc_beads=None):
    out = {}
    for jkey, coeff in jvector.items():
        for k2, c in glue(fom, jkey, arc_beads).items():
            s = out.get(k2, 0) + coeff * c
            if s:
                out[k2] = s
            else:
                out.pop(k2, None)
    return out


# ---------------------------------------------------------------------------
# dimension of the glued functor, computed on the labelled-diagram side


def _perm_trace(space, perm):
    """Trace of a leg permutation acting on a J-space quotient."""
    sigma = {i + 1: perm[i] for i in range(len(perm))}
    free = space.free_keys
    tr = Fraction(0)
    for key in free:
        img = cl.perm_action(sigma, {key: Fraction(1)})
        red = space.reduce(img)
        tr += red.get(key, 0)
    return tr


def coinvariant_dim(space, i, l) -> int:
    """dim of the S_i-coinvariants of (maps i -> l) tensor the space, via the
    averaging idempotent: (1/i!) sum over sigma of l^cycles(sigma) tr(sigma)."""
    if space.dimension == 0:
        return 0
    total = Fraction(0)
    for typ, size, cycles in _cycle_types(i):
        tr = _perm_trace(space, _perm_from_type(typ))
        if tr:
            total += size * Fraction(l) ** cycles * tr
    total /= math.factorial(i)
    assert total.denominator == 1 and total >= 0, total
    return int(total)


def alpha_dim(d, alphabet, l, max_arity=None) -> int:
    """The glued functor's dimension at l arcs: sum over arities i of the
    coinvariant dimensions; ``max_arity`` truncates the module."""
    if max_arity is None:
        max_arity = 2 * d
    total = 0
    for i in range(0, min(2 * d, max_arity) + 1):
        space = j_space(d, i, alphabet)
        total += coinvariant_dim(space, i, l)
    return total


# ---------------------------------------------------------------------------
# the mirrored generator action on fiber-ordered maps


def catass_act(gen, pos, fom: FiberOrderedMap):
    """Action of a Hopf generator on a fiber-ordered map, mirroring the arc
    operations; returns [(coeff, fom')]."""
    fibers = fom.fibers
    l = fom.target
    if gen == "eta":
        new = fibers[: pos - 1] + ((),) + fibers[pos - 1 :]
        return [(1, FiberOrderedMap(fom.source, l + 1, new))]
    if gen == "eps":
        if fibers[pos - 1]:
            return []
        new = fibers[: pos - 1] + fibers[pos:]
        return [(1, FiberOrderedMap(fom.source, l - 1, new))]
    if gen == "mu":
        merged = fibers[pos - 1] + fibers[pos]
        new = fibers[: pos - 1] + (merged,) + fibers[pos + 1 :]
        return [(1, FiberOrderedMap(fom.source, l - 1, new))]
    if gen == "antipode":
        new = fibers[: pos - 1] + (tuple(reversed(fibers[pos - 1])),) + fibers[pos:]
        return [((-1) ** len(fibers[pos - 1]), FiberOrderedMap(fom.source, l, new))]
    if gen == "delta":
        f = fibers[pos - 1]
        out = []
        for mask in itertools.product((0, 1), repeat=len(f)):
            one = tuple(x for x, b in zip(f, mask) if b == 0)
            two = tuple(x for x, b in zip(f, mask) if b == 1)
            new = fibers[: pos - 1] + (one, two) + fibers[pos:]
            out.append((1, FiberOrderedMap(fom.source, l + 1, new)))
        return out
    raise ValueError("unknown generator %r" % gen)


def _mu_lifted_maps(fom: FiberOrderedMap, i):
    """The two fiber-ordered maps {1..c+1} -> {1..l} through which the i-th
    gluing factors: the new element c+1 lands just after, resp. just before,
    i inside its fiber."""
    c = fom.source
    target_slot = fom.image_of(i)
    out = []
    for after in (True, False):
        fibers = []
        for t, f in enumerate(fom.fibers):
            if t + 1 == target_slot:
                p = f.index(i)
                if after:
                    f = f[: p + 1] + (c + 1,) + f[p + 1 :]
                else:
                    f = f[:p] + (c + 1,) + f[p:]
            fibers.append(f)
        out.append(FiberOrderedMap(c + 1, fom.target, tuple(fibers)))
    return out  # [i < c+1 order, c+1 < i order]


# ---------------------------------------------------------------------------
# verification drivers


class _ArcZeroTester:
    """Decides whether class-0 arc vectors vanish in the full quotient.

    Fast path: reduce against the cached relations of the a_space at the
    vector's arc count (sound: hitting zero proves membership).  A nonzero
    residue falls back to the exact closure-of-support computation.
    """

    def __init__(self, d, alphabet):
        self.d = d
        self.alphabet = alphabet

    def is_zero(self, vector) -> bool:
        if not vector:
            return True
        m = ar.arc_key_m(next(iter(vector)))
        space = ar.a_space(self.alphabet.rank, m, self.d, self.alphabet, class0=True)
        if not space.reduce(vector):
            return True
        return not _reduce_in_extended_quotient(vector)


def verify_bridge(d, alphabet, l, seed=0, sample=None):
    """Check the glued-functor correspondence at l arcs.

    Checks: (a) gluing kills IHX relations in the arc quotient,
    (b) gluing surjects onto the arc space, (c) the two dimension
    computations agree, (d) gluing is natural for the five Hopf generators,
    (e) the coequalizer identity f(L(..)) = f(R(..)) (an STU instance).
    Exhaustive when ``sample`` is None; otherwise a seeded sample caps each
    check's tuple count.
    """
    import random

    rng = random.Random(seed)
    aspace = ar.a_space(alphabet.rank, l, d, alphabet, class0=True)
    tester = _ArcZeroTester(d, alphabet)
    checks = []

    def record(name, ok, counterexample=None):
        entry = {"name": name, "pass": bool(ok)}
        if counterexample is not None:
            entry["counterexample"] = repr(counterexample)
        checks.append(entry)

    spaces = {c: j_space(d, c, alphabet) for c in range(0, 2 * d + 1)}

    # (a) IHX relations die after gluing
    bad = None
    for c, space in spaces.items():
        rels = []
        for key in space.span:
            rels.extend(ihx_relations(key))
        if not rels:
            continue
        foms = cat_ass_basis(c, l)
        if sample is not None and len(rels) * len(foms) > sample:
            pairs = [(r, f) for r in rels for f in foms]
            pairs = rng.sample(pairs, sample)
        else:
            pairs = [(r, f) for r in rels for f in foms]
        for r, fom in pairs:
            image = glue_vector(fom, r)
            if not tester.is_zero(image):
                bad = (c, fom.fibers, dict(r))
                break
        if bad:
            break
    record("ihx_image_vanishes", bad is None, bad)

    # (b) surjectivity of gluing onto the arc space
    basis = echelonize([])
    for c, space in spaces.items():
        for fom in cat_ass_basis(c, l):
            for key in space.span:
                img = glue_vector(fom, {key: Fraction(1)})
                if img:
                    basis.insert(aspace.reduce(img))
    dim_arc = aspace.dim(0)
    record("glue_surjective", basis.rank == dim_arc, (basis.rank, dim_arc))

    # (c) dimension equality
    dim_alpha = alpha_dim(d, alphabet, l)
    record("dimension_equality", dim_alpha == dim_arc, (dim_alpha, dim_arc))

    # (d) naturality for the five generators
    bad = None
    gens = [("eta", range(1, l + 2)), ("eps", range(1, l + 1)),
            ("mu", range(1, l)), ("antipode", range(1, l + 1)),
            ("delta", range(1, l + 1))]
    tuples = []
    for c, space in spaces.items():
        for key in space.span:
            for fom in cat_ass_basis(c, l):
                tuples.append((c, key, fom))
    if sample is not None and len(tuples) > sample:
        tuples = rng.sample(tuples, sample)
    for c, key, fom in tuples:
        glued = glue_vector(fom, {key: Fraction(1)})
        for gen, positions in gens:
            for pos in positions:
                lhs = ar.gr_act(gen, pos, glued)
                rhs = {}
                for coeff, fom2 in catass_act(gen, pos, fom):
                    for k2, c2 in glue(fom2, key).items():
                        s = rhs.get(k2, 0) + coeff * c2
                        if s:
                            rhs[k2] = s
                        else:
                            rhs.pop(k2, None)
                diff = dict(lhs)
                for k2, c2 in rhs.items():
                    s = diff.get(k2, 0) - c2
                    if s:
                        diff[k2] = s
                    else:
                        diff.pop(k2, None)
                # naturality holds modulo the arc relations
                if not tester.is_zero(diff):
                    bad = (gen, pos, fom.fibers, key)
                    break
            if bad:
                break
        if bad:
            break
    record("naturality", bad is None, bad)

    # (e) coequalizer identity via the STU relation
    bad = None
    tuples = []
    for c in range(1, 2 * d + 1):
        source = spaces.get(c + 1)
        if source is None or not source.span:
            continue
        for key in source.span:
            for fom in cat_ass_basis(c, l):
                for i in range(1, c + 1):
                    tuples.append((c, key, fom, i))
    if sample is not None and len(tuples) > sample:
        tuples = rng.sample(tuples, sample)
    for c, key, fom, i in tuples:
        fom_after, fom_before = _mu_lifted_maps(fom, i)
        lhs = glue(fom_after, key)
        for k2, c2 in glue(fom_before, key).items():
            s = lhs.get(k2, 0) - c2
            if s:
                lhs[k2] = s
            else:
                lhs.pop(k2, None)
        rhs = glue_vector(fom, cl.mu_action(i, {key: Fraction(1)}, c + 1))
        diff = dict(lhs)
        for k2, c2 in rhs.items():
            s = diff.get(k2, 0) - c2
            if s:
                diff[k2] = s
            else:
                diff.pop(k2, None)
        if not tester.is_zero(diff):
            bad = (c, key, fom.fibers, i)
            break
    record("coequalizer", bad is None, bad)

    return {
        "d": d,
        "alphabet": alphabet.label,
        "l": l,
        "checks": checks,
        "pass": all(c["pass"] for c in checks),
    }


def _reduce_in_extended_quotient(vector):
    """Reduce a class-0 arc vector modulo the relations generated by the
    closure of its own support; empty iff the vector vanishes in the full
    arc space."""
    if not vector:
        return {}
    keys = ar.arc_closure(vector.keys())
    rels = []
    for key in keys:
        rels.extend(ar.stu_relations(key))
        rels.extend(ar.ihx_relations_arc(key))
    return echelonize(rels).reduce(vector)


def verify_filtration(d, alphabet, l, t) -> bool:
    """The truncation-to-filtration correspondence at one cell: the glued
    dimension restricted to arities <= 2d-t equals the dimension of the
    at-least-t-trivalent arc subspace."""
    lhs = alpha_dim(d, alphabet, l, max_arity=2 * d - t)
    rhs = ar.a_space(alphabet.rank, l, d, alphabet, class0=True).dim(t)
    return lhs == rhs
