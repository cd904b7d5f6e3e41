"""Jacobi diagrams on ordered oriented arcs, modulo STU, IHX and bead moves.

An arc diagram is a dashed open Jacobi part (module ``diagrams``) whose legs
attach at totally ordered points of m oriented arcs; arcs may carry beads.
Sliding an arc bead across an attachment point deposits the bead on the
dashed leg, so the canonical form holds one bead at the start of each arc
(the arc's holonomy) and none elsewhere; class-0 diagrams have none at all.

Canonical keys are ``(m, arc_beads, per_arc_leg_counts, dashed_key)`` where
the dashed part's legs are relabelled 1..U in (arc, position) order.

The one-sided functor structure over free groups acts through the five
Hopf generators: eta inserts a bare arc, eps deletes an arc (zero if legs
remain on it), mu concatenates adjacent arcs, the antipode reverses an arc
(legs reversed, bead inverted, sign (-1)^#legs), and delta doubles an arc
summing over all leg shuffles.  STU reads: (legs p then q adjacent on an
arc) minus (q then p) equals the diagram with p, q glued onto a tripod
rooted at that spot.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from . import cache
from . import diagrams as dg
from .linalg import EchelonBasis, echelonize
from .words import IDENTITY, Word, inv_letters, mul_letters

ZERO = dg.ZERO


class ArityMismatch(ValueError):
    """Operand arity does not match the arc diagram."""


# ---------------------------------------------------------------------------
# raw presentations and the canonical form

# raw arcs: list over arcs of item lists; item = ("bead", letters) | ("leg", label)


def arc_canonicalize(arcs, dashed):
    """Canonical form of a raw arc diagram: (key, sign) or (ZERO, 0).

    Pushes every arc bead to the start of its arc; a bead slid backwards
    across a leg deposits the suffix holonomy on that leg's dashed edge
    (gauge at the attachment point).  The dashed part is then relabelled in
    (arc, position) order and canonicalised.
    """
    m = len(arcs)
    arc_beads = []
    counts = []
    deposits = {}  # leg label -> letters
    order = []  # leg labels in (arc, position) order
    for items in arcs:
        legs_here = []
        suffix = IDENTITY  # product of bead letters after the current point
        for kind, value in reversed(items):
            if kind == "bead":
                suffix = mul_letters(tuple(value), suffix)
            elif kind == "leg":
                deposits[value] = suffix
                legs_here.append(value)
            else:
                raise ValueError("arc item kind must be 'bead' or 'leg'")
        legs_here.reverse()
        arc_beads.append(suffix)  # total holonomy of the arc
        counts.append(len(legs_here))
        order.extend(legs_here)
    if sorted(order) != list(range(1, dashed.num_legs + 1)):
        raise ArityMismatch(
            "arc legs must reference the dashed legs 1..%d exactly once" % dashed.num_legs
        )
    vert = dashed.vertex_of()
    new_edges = []
    for tail, head, w in dashed.edges:
        tv, hv = vert[tail], vert[head]
        if tv < dashed.num_legs:
            gamma = deposits[tv + 1]
            if gamma:
                w = mul_letters(inv_letters(gamma), w)
        if hv < dashed.num_legs:
            gamma = deposits[hv + 1]
            if gamma:
                w = mul_letters(w, gamma)
        new_edges.append((tail, head, (w,)))
    relabel = {old: new + 1 for new, old in enumerate(order)}
    dia = dg.relabel_legs(
        dg.Diagram(dashed.legs, dashed.tri, new_edges), relabel
    )
    dkey, sign = dg.canonicalize(dia)
    if dkey is ZERO:
        return (ZERO, 0)
    return ((m, tuple(arc_beads), tuple(counts), dkey), sign)


def rebuild_arc(key):
    """A raw presentation of a canonical arc key (labels already canonical)."""
    m, arc_beads, counts, dkey = key
    arcs = []
    label = 1
    for j in range(m):
        items = []
        if arc_beads[j]:
            items.append(("bead", arc_beads[j]))
        for _ in range(counts[j]):
            items.append(("leg", label))
            label += 1
        arcs.append(items)
    return arcs, dg.rebuild(dkey)


def arc_key_m(key):
    return key[0]


def arc_key_beads(key):
    return key[1]


def arc_key_counts(key):
    return key[2]


def arc_key_trivalents(key):
    return key[3][1]


def arc_key_degree(key):
    return (key[3][0] + key[3][1]) // 2


def arc_key_is_class0(key):
    return all(not b for b in key[1])


def homotopy_class(key):
    """The tuple of arc holonomies (one Word per arc)."""
    return tuple(Word(b) for b in key[1])


def homotopy_class_raw(arcs):
    """Arc holonomies of a raw presentation, move-invariantly."""
    out = []
    for items in arcs:
        prod = IDENTITY
        for kind, value in items:
            if kind == "bead":
                prod = mul_letters(prod, tuple(value))
        out.append(Word(prod))
    return tuple(out)


def canonical_arc_vector(terms):
    """Sum of (coeff, arcs, dashed) raw terms as a vector over canonical keys."""
    out = {}
    for coeff, arcs, dashed in terms:
        key, sign = arc_canonicalize(arcs, dashed)
        if key is ZERO:
            continue
        c = out.get(key, 0) + Fraction(coeff * sign)
        if c:
            out[key] = c
        else:
            out.pop(key, None)
    return out


# ---------------------------------------------------------------------------
# STU and IHX relations, closure


def _leg_positions(arcs):
    """(arc_index, item_index) of each leg item, per arc."""
    out = []
    for j, items in enumerate(arcs):
        here = [(j, i) for i, (kind, _v) in enumerate(items) if kind == "leg"]
        out.append(here)
    return out


def stu_relations(key):
    """One STU relation per adjacent leg pair on an arc: T - U - S = 0."""
    arcs, dashed = rebuild_arc(key)
    rels = []
    positions = _leg_positions(arcs)
    for j, here in enumerate(positions):
        for p in range(len(here) - 1):
            (_, i1), (_, i2) = here[p], here[p + 1]
            l1 = arcs[j][i1][1]
            l2 = arcs[j][i2][1]
            # U: swap the attachment order of the two legs
            arcs_u = [list(items) for items in arcs]
            arcs_u[j][i1], arcs_u[j][i2] = arcs_u[j][i2], arcs_u[j][i1]
            # S: glue the two legs onto a tripod; its free end attaches at p.
            # glue_pair relabels: new leg = l1, labels above l2 shift down.
            dashed_s = dg.glue_pair(dashed, l1, l2)
            arcs_s = []
            for jj, items in enumerate(arcs):
                new_items = []
                for i, (kind, value) in enumerate(items):
                    if kind == "leg":
                        if jj == j and i == i2:
                            continue
                        lab = value if value < l2 else value - 1
                        new_items.append(("leg", lab))
                    else:
                        new_items.append((kind, value))
                arcs_s.append(new_items)
            vec = canonical_arc_vector(
                [(1, arcs, dashed), (-1, arcs_u, dashed), (-1, arcs_s, dashed_s)]
            )
            if vec:
                rels.append(vec)
    return rels


def _unglue_neighbours(key):
    """Keys of the T and U terms of STU instances whose S term is this key.

    Needed so that the closure contains every STU instance touching it: for
    each leg whose dashed edge ends at a trivalent vertex, detach the vertex
    back onto the arc in both orders.
    """
    arcs, dashed = rebuild_arc(key)
    U = dashed.num_legs
    vert = dashed.vertex_of()
    out = []
    for label in range(1, U + 1):
        h = dashed.legs[label - 1]
        eidx = next(
            i for i, (t, hd, _w) in enumerate(dashed.edges) if h in (t, hd)
        )
        tail, head, w = dashed.edges[eidx]
        x = vert[tail] if head == h else vert[head]
        if x < U:
            continue  # strut between legs: nothing to unglue
        dia = dashed
        if w:
            # gauge the leg edge's bead to 1 at the trivalent end:
            # head at x needs g = w^-1, tail at x needs g = w
            g = inv_letters(w) if vert[head] == x else w
            dia = dg.gauge_at_vertex(dia, x, g)
        tail, head, _one = dia.edges[eidx]
        hx = tail if vert[tail] == x else head
        triple = dia.tri[x - U]
        pos = triple.index(hx)
        second, first = triple[(pos + 1) % 3], triple[(pos + 2) % 3]
        # rebuild the dashed part without vertex x and the leg edge; the two
        # strands attach directly: 'first' at the leg's spot, 'second' after
        new_tri = [t for i, t in enumerate(dia.tri) if i != x - U]
        new_edges = [e for i, e in enumerate(dia.edges) if i != eidx]
        for swap in (False, True):
            ha, hb = (first, second) if not swap else (second, first)
            new_legs = []
            for lab in range(1, U + 1):
                if lab < label:
                    new_legs.append(dia.legs[lab - 1])
                elif lab == label:
                    new_legs.append(ha)
                    new_legs.append(hb)
                else:
                    new_legs.append(dia.legs[lab - 1])
            new_dashed = dg.Diagram(new_legs, new_tri, new_edges)
            new_arcs = []
            for items in arcs:
                new_items = []
                for kind, value in items:
                    if kind == "leg":
                        if value < label:
                            new_items.append(("leg", value))
                        elif value == label:
                            new_items.append(("leg", label))
                            new_items.append(("leg", label + 1))
                        else:
                            new_items.append(("leg", value + 1))
                    else:
                        new_items.append((kind, value))
                new_arcs.append(new_items)
            k2, _s = arc_canonicalize(new_arcs, new_dashed)
            if k2 is not ZERO:
                out.append(k2)
    return out


def ihx_relations_arc(key):
    """IHX relations at internal dashed edges, arc structure unchanged."""
    arcs, dashed = rebuild_arc(key)
    rels = []
    for index in dg.internal_edges(dashed):
        terms = [(c, arcs, dia) for c, dia in dg.ihx_at_edge(dashed, index)]
        vec = canonical_arc_vector(terms)
        if vec:
            rels.append(vec)
    return rels


def arc_closure(seed_keys, max_bead_length=None):
    """Close a key set under STU (both directions) and IHX neighbours.

    Raises :class:`beadiag.jspaces.ClosureDiverged` on unbounded bead
    growth, as for the labelled-diagram closure.
    """
    from .jspaces import MAX_CLOSURE_BEAD_LENGTH, ClosureDiverged

    if max_bead_length is None:
        max_bead_length = MAX_CLOSURE_BEAD_LENGTH
    seen = set(seed_keys)
    frontier = list(seen)
    while frontier:
        key = frontier.pop()
        neighbours = set()
        for rel in stu_relations(key):
            neighbours.update(rel)
        for rel in ihx_relations_arc(key):
            neighbours.update(rel)
        neighbours.update(_unglue_neighbours(key))
        for nb in neighbours:
            if nb not in seen:
                beads = dg.key_beads(nb[3]) + list(nb[1])
                if any(len(w) > max_bead_length for w in beads):
                    raise ClosureDiverged(
                        "STU/IHX closure produced a bead longer than %d letters"
                        % max_bead_length
                    )
                seen.add(nb)
                frontier.append(nb)
    return tuple(sorted(seen))


# ---------------------------------------------------------------------------
# spanning sets and spaces


def leg_placements(c, m):
    """All ways to place legs 1..c on m arcs with a fiber order: yields
    per-arc leg sequences.  Count is the rising factorial m(m+1)...(m+c-1)."""
    if c == 0:
        yield tuple(() for _ in range(m))
        return
    if m == 0:
        return
    for images in itertools.product(range(m), repeat=c):
        fibers = [[i + 1 for i in range(c) if images[i] == j] for j in range(m)]
        for orders in itertools.product(
            *[itertools.permutations(f) for f in fibers]
        ):
            yield tuple(orders)


def _arcs_from_placement(placement, arc_beads=None):
    arcs = []
    for j, fiber in enumerate(placement):
        items = []
        if arc_beads is not None and arc_beads[j]:
            items.append(("bead", arc_beads[j]))
        items.extend(("leg", lab) for lab in fiber)
        arcs.append(items)
    return arcs


def enumerate_arc_diagrams(m, d, alphabet, class0=True):
    """All canonical arc keys of degree d on m arcs with canonical beads in
    the alphabet (arc beads forced trivial when class0)."""
    letters = alphabet.letter_elements()
    members = alphabet._members
    found = set()
    basic = set()  # (counts, dkey) with dashed beads in the alphabet
    for c in range(0, 2 * d + 1):
        T = 2 * d - c
        if c == 0:
            if d == 0:
                basic.add((tuple([0] * m), (0, 0, ())))
            continue
        for skeleton in dg._structures(c, T):
            E = len(skeleton.edges)
            for beads in itertools.product(letters, repeat=E):
                dashed = dg.Diagram(
                    skeleton.legs,
                    skeleton.tri,
                    [(t, h, (w,)) for (t, h, _), w in zip(skeleton.edges, beads)],
                )
                for placement in leg_placements(c, m):
                    arcs = _arcs_from_placement(placement)
                    key, _sign = arc_canonicalize(arcs, dashed)
                    if key is ZERO:
                        continue
                    if all(w in members for w in dg.key_beads(key[3])):
                        basic.add((key[2], key[3]))
    if class0:
        bead_choices = [tuple([IDENTITY] * m)]
    else:
        bead_choices = list(itertools.product(letters, repeat=m))
    for counts, dkey in basic:
        for arc_beads in bead_choices:
            found.add((m, arc_beads, counts, dkey))
    return sorted(found)


@dataclass
class ASpace:
    """A truncated space of degree-d arc diagrams modulo STU/IHX/AS."""

    n: int
    m: int
    d: int
    alphabet: object
    class0: bool
    span: tuple
    closure: tuple
    relations: EchelonBasis

    def reduce(self, vector):
        return self.relations.reduce(vector)

    def dim(self, min_trivalent=0) -> int:
        vecs = [
            self.relations.reduce({k: Fraction(1)})
            for k in self.span
            if arc_key_trivalents(k) >= min_trivalent
        ]
        return echelonize(vecs).rank

    @property
    def dimension(self) -> int:
        return self.dim(0)


_aspace_cache = {}


def a_space(n, m, d, alphabet, class0=True, min_trivalent=0) -> ASpace:
    """The space of degree-d diagrams on m arcs over the alphabet; query its
    dimension (optionally of the at-least-t-trivalent subspace) via .dim(t)."""
    if alphabet.rank > n:
        raise ValueError("alphabet uses generators beyond rank %d" % n)
    ck = (m, d, alphabet, class0)
    if ck in _aspace_cache:
        space = _aspace_cache[ck]
    else:
        disk_key = (m, d, alphabet.rank, alphabet.elements, class0)
        space = cache.get("aspace", disk_key)
        if space is None:
            span = tuple(enumerate_arc_diagrams(m, d, alphabet, class0))
            clo = arc_closure(span)
            rels = []
            for key in clo:
                rels.extend(stu_relations(key))
                rels.extend(ihx_relations_arc(key))
            space = ASpace(
                n=n,
                m=m,
                d=d,
                alphabet=alphabet,
                class0=class0,
                span=span,
                closure=clo,
                relations=echelonize(rels),
            )
            cache.put("aspace", disk_key, space)
        _aspace_cache[ck] = space
    del min_trivalent
    return space


# ---------------------------------------------------------------------------
# the five Hopf generator actions


def _act_arc_key(gen, pos, key):
    """Action of one generator at arc position pos on a canonical key."""
    arcs, dashed = rebuild_arc(key)
    m = len(arcs)
    if gen == "eta":
        if not 1 <= pos <= m + 1:
            raise ArityMismatch("eta position out of range")
        arcs2 = arcs[: pos - 1] + [[]] + arcs[pos - 1 :]
        return canonical_arc_vector([(1, arcs2, dashed)])
    if gen == "eps":
        if not 1 <= pos <= m:
            raise ArityMismatch("eps position out of range")
        if any(kind == "leg" for kind, _ in arcs[pos - 1]):
            return {}
        arcs2 = arcs[: pos - 1] + arcs[pos:]
        return canonical_arc_vector([(1, arcs2, dashed)])
    if gen == "mu":
        if not 1 <= pos <= m - 1:
            raise ArityMismatch("mu position out of range")
        merged = arcs[pos - 1] + arcs[pos]
        arcs2 = arcs[: pos - 1] + [merged] + arcs[pos + 1 :]
        return canonical_arc_vector([(1, arcs2, dashed)])
    if gen == "antipode":
        if not 1 <= pos <= m:
            raise ArityMismatch("antipode position out of range")
        items = []
        for kind, value in reversed(arcs[pos - 1]):
            items.append((kind, inv_letters(value)) if kind == "bead" else (kind, value))
        sign = (-1) ** sum(1 for kind, _ in items if kind == "leg")
        arcs2 = arcs[: pos - 1] + [items] + arcs[pos:]
        return canonical_arc_vector([(sign, arcs2, dashed)])
    if gen == "delta":
        if not 1 <= pos <= m:
            raise ArityMismatch("delta position out of range")
        items = arcs[pos - 1]
        leg_idx = [i for i, (kind, _) in enumerate(items) if kind == "leg"]
        terms = []
        for mask in itertools.product((0, 1), repeat=len(leg_idx)):
            side = dict(zip(leg_idx, mask))
            copy1, copy2 = [], []
            for i, (kind, value) in enumerate(items):
                if kind == "bead":
                    copy1.append((kind, value))
                    copy2.append((kind, value))
                elif side[i] == 0:
                    copy1.append((kind, value))
                else:
                    copy2.append((kind, value))
            arcs2 = arcs[: pos - 1] + [copy1, copy2] + arcs[pos:]
            terms.append((1, arcs2, dashed))
        return canonical_arc_vector(terms)
    raise ValueError("unknown generator %r" % gen)


def gr_act(gen, pos, vector):
    """Linear action of a Hopf generator at an arc position on a vector."""
    out = {}
    for key, coeff in vector.items():
        for k2, c in _act_arc_key(gen, pos, key).items():
            s = out.get(k2, 0) + coeff * c
            if s:
                out[k2] = s
            else:
                out.pop(k2, None)
    return out


def perm_arcs(sigma, vector):
    """Permute arcs; sigma[old_position] = new_position (1-based)."""
    out = {}
    for key, coeff in vector.items():
        arcs, dashed = rebuild_arc(key)
        m = len(arcs)
        arcs2 = [None] * m
        for old0, items in enumerate(arcs):
            arcs2[sigma[old0 + 1] - 1] = items
        for k2, c in canonical_arc_vector([(1, arcs2, dashed)]).items():
            s = out.get(k2, 0) + coeff * c
            if s:
                out[k2] = s
            else:
                out.pop(k2, None)
    return out


def epsilon_embed(vector, n):
    """Reinterpret beads of F_n inside F_{n+1}; injective on canonical keys."""
    for key in vector:
        for w in dg.key_beads(key[3]) + list(key[1]):
            for idx, _sign in w:
                if idx > n:
                    raise ValueError("bead uses generator x%d beyond rank %d" % (idx, n))
    return dict(vector)


# ---------------------------------------------------------------------------
# cross-effects and the polynomiality witness


@dataclass(frozen=True)
class FunctorSpec:
    """A computable functor family N = A_d(n,-) or its class-0 subfunctor."""

    n: int
    d: int
    alphabet: object
    class0: bool


def insert_bare_arc(key, pos):
    """The image of a canonical key under inserting a bare arc at pos."""
    m, arc_beads, counts, dkey = key
    if not 1 <= pos <= m + 1:
        raise ArityMismatch("insertion position out of range")
    beads2 = arc_beads[: pos - 1] + (IDENTITY,) + arc_beads[pos - 1 :]
    counts2 = counts[: pos - 1] + (0,) + counts[pos - 1 :]
    return (m + 1, beads2, counts2, dkey)


def cross_effect_dim(spec: FunctorSpec, k: int) -> int:
    """dim of the k-th cross-effect at (1,...,1): the cokernel of the k
    bare-arc insertions N(F_{k-1})^k -> N(F_k)."""
    target = a_space(spec.n, k, spec.d, spec.alphabet, spec.class0)
    source = a_space(spec.n, k - 1, spec.d, spec.alphabet, spec.class0)
    images = []
    for key in source.span:
        for pos in range(1, k + 1):
            images.append(target.reduce({insert_bare_arc(key, pos): Fraction(1)}))
    image_rank = echelonize(images).rank
    return target.dim(0) - image_rank


def nonpoly_witness(n, d, k, alphabet):
    """The chain-of-struts diagram with one beaded bare arc, plus a
    certificate that its cross-effect class is nonzero.

    Returns (key, reduced_vector); the reduced vector is nonzero iff the
    class survives in the cokernel.
    """
    nontrivial = [w for w in alphabet.letter_elements() if w]
    if not nontrivial:
        raise ValueError("alphabet has no nontrivial bead")
    if k < 2 * d + 1:
        raise ValueError("need k >= 2d+1 so the beaded arc is bare")
    w = nontrivial[0]
    legs = list(range(2 * d))
    edges = [(2 * i, 2 * i + 1, ()) for i in range(d)]
    dashed = dg.Diagram(legs, [], edges)
    arcs = []
    for j in range(1, k + 1):
        if j <= 2 * d:
            arcs.append([("leg", j)])
        elif j < k:
            arcs.append([])
        else:
            arcs.append([("bead", w)])
    key, sign = arc_canonicalize(arcs, dashed)
    assert key is not ZERO
    spec = FunctorSpec(n=n, d=d, alphabet=alphabet, class0=False)
    target = a_space(spec.n, k, spec.d, spec.alphabet, spec.class0)
    source = a_space(spec.n, k - 1, spec.d, spec.alphabet, spec.class0)
    basis = target.relations.copy()
    for skey in source.span:
        for pos in range(1, k + 1):
            basis.insert({insert_bare_arc(skey, pos): Fraction(1)})
    reduced = basis.reduce({key: Fraction(sign)})
    return key, reduced
