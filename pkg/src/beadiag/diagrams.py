"""Open Jacobi diagrams with beaded oriented edges, and their canonical forms.

A diagram presentation has univalent legs labelled 1..m, trivalent vertices
given as cyclically ordered triples of half-edges, and edges given as
oriented pairs of half-edges carrying one bead (a reduced word; adjacent
beads merge and identity beads vanish, so one bead per edge is general).

Local-move equivalence is generated by:

* merging beads along an edge and dropping identity beads (absorbed into
  the single-bead representation),
* reversing an edge while inverting its bead,
* pushing a bead through a trivalent vertex: a bead w entering the vertex
  equals the bead w leaving on both other edges.

The push move acts as a gauge transformation: regauging by g at an inner
vertex v sends each edge bead w to gamma(tail)^-1 * w * gamma(head) with
gamma(v) = g and gamma = 1 elsewhere.  Univalent vertices admit no gauge.

``canonicalize`` quotients by these moves together with renumbering of the
trivalent vertices, and absorbs antisymmetry of the cyclic orders into a
global sign: the canonical key fixes a reference cyclic order at each
vertex, and a diagram whose minimal certificate is reachable with both
signs is zero (e.g. the beadless tadpole).

Canonical gauge: per component, a spanning tree of the skeleton (lowest
labelled leg plus all trivalent vertices) is gauge-fixed to carry bead 1;
edges to the remaining legs and the chords keep the residual holonomies.
"""

from __future__ import annotations

import itertools

from .words import (
    IDENTITY,
    Word,
    format_letters,
    inv_letters,
    mul_letters,
    parse_letters,
    reduce_letters,
    word_key,
)

ZERO = None  # canonicalize() returns (ZERO, 0) for diagrams equal to their negative


class DiagramError(ValueError):
    """Invalid diagram structure."""


class Diagram:
    """An open Jacobi diagram presentation (immutable).

    legs  -- tuple of half-edge ids; legs[i] belongs to the leg labelled i+1
    tri   -- tuple of half-edge triples, each in its cyclic order
    edges -- tuple of (tail_halfedge, head_halfedge, bead_letters)
    """

    __slots__ = ("legs", "tri", "edges", "_vert")

    def __init__(self, legs, tri, edges):
        legs = tuple(legs)
        tri = tuple(tuple(t) for t in tri)
        norm_edges = []
        for e in edges:
            tail, head = e[0], e[1]
            beads = e[2] if len(e) > 2 else ()
            # accepts a list of beads (Words or letter tuples) or one bare
            # letters tuple; both merge to the same reduced word
            merged = IDENTITY
            for b in beads:
                if isinstance(b, Word):
                    letters = b.letters
                elif len(b) == 2 and all(isinstance(x, int) for x in b):
                    letters = (tuple(b),)
                else:
                    letters = tuple(tuple(l) for l in b)
                merged = mul_letters(merged, reduce_letters(letters))
            norm_edges.append((tail, head, merged))
        object.__setattr__(self, "legs", legs)
        object.__setattr__(self, "tri", tri)
        object.__setattr__(self, "edges", tuple(norm_edges))
        object.__setattr__(self, "_vert", None)
        self._validate()

    def __setattr__(self, name, value):
        raise AttributeError("Diagram is immutable")

    def __reduce__(self):
        return (Diagram, (self.legs, self.tri, self.edges))

    @property
    def num_legs(self):
        return len(self.legs)

    @property
    def num_tri(self):
        return len(self.tri)

    @property
    def degree(self):
        return (len(self.legs) + len(self.tri)) // 2

    def vertex_of(self):
        """Map half-edge -> vertex id (legs 0..U-1, trivalent U..U+T-1)."""
        if self._vert is None:
            vert = {}
            for i, h in enumerate(self.legs):
                vert[h] = i
            for j, triple in enumerate(self.tri):
                for h in triple:
                    vert[h] = len(self.legs) + j
            object.__setattr__(self, "_vert", vert)
        return self._vert

    def _validate(self):
        halfedges = list(self.legs) + [h for t in self.tri for h in t]
        if len(set(halfedges)) != len(halfedges):
            raise DiagramError("half-edge ids must be distinct")
        for t in self.tri:
            if len(t) != 3:
                raise DiagramError("trivalent vertex needs exactly 3 half-edges")
        endpoints = [e[0] for e in self.edges] + [e[1] for e in self.edges]
        if sorted(endpoints) != sorted(halfedges):
            raise DiagramError("edges must pair up exactly the half-edges of the vertices")
        if (len(self.legs) + len(self.tri)) % 2:
            raise DiagramError("total vertex count must be even")
        # every connected component must contain a univalent vertex
        vert = self.vertex_of()
        parent = list(range(len(self.legs) + len(self.tri)))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for tail, head, _ in self.edges:
            a, b = find(vert[tail]), find(vert[head])
            if a != b:
                parent[a] = b
        roots_with_leg = {find(i) for i in range(len(self.legs))}
        for j in range(len(self.tri)):
            if find(len(self.legs) + j) not in roots_with_leg:
                raise DiagramError("component without univalent vertex")


def normalize_beads(diagram: Diagram) -> Diagram:
    """One merged bead per edge, identity beads dropped.  Construction
    already enforces this; kept as the named operation."""
    return Diagram(diagram.legs, diagram.tri, diagram.edges)


def gauge_at_vertex(diagram: Diagram, v: int, g) -> Diagram:
    """Regauge by g at trivalent vertex v (push-through-vertex moves)."""
    if v < diagram.num_legs or v >= diagram.num_legs + diagram.num_tri:
        raise DiagramError("gauge moves apply only at trivalent vertices")
    g = g.letters if isinstance(g, Word) else reduce_letters(tuple(g))
    ginv = inv_letters(g)
    vert = diagram.vertex_of()
    new_edges = []
    for tail, head, w in diagram.edges:
        if vert[tail] == v:
            w = mul_letters(ginv, w)
        if vert[head] == v:
            w = mul_letters(w, g)
        new_edges.append((tail, head, (w,)))
    return Diagram(diagram.legs, diagram.tri, new_edges)


def reverse_edge(diagram: Diagram, index: int) -> Diagram:
    """Reverse the orientation of one edge, inverting its bead."""
    edges = list(diagram.edges)
    tail, head, w = edges[index]
    edges[index] = (head, tail, (inv_letters(w),))
    return Diagram(diagram.legs, diagram.tri, edges)


def relabel_legs(diagram: Diagram, new_label_of) -> Diagram:
    """Permute leg labels; ``new_label_of[old]`` is the new 1-based label."""
    legs = [None] * diagram.num_legs
    for old0, h in enumerate(diagram.legs):
        legs[new_label_of[old0 + 1] - 1] = h
    return Diagram(legs, diagram.tri, diagram.edges)


def _cyclic_parity(intrinsic, reference):
    """+1 if the reference triple lies in the cyclic class of the intrinsic one."""
    p = intrinsic.index(reference[0])
    rotated = (intrinsic[p], intrinsic[(p + 1) % 3], intrinsic[(p + 2) % 3])
    if rotated == tuple(reference):
        return 1
    return -1


def _components(num_vertices, edge_vertex_pairs):
    parent = list(range(num_vertices))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a, b in edge_vertex_pairs:
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[ra] = rb
    comps = {}
    for v in range(num_vertices):
        comps.setdefault(find(v), set()).add(v)
    return list(comps.values())


def _colour_classes(diagram: Diagram):
    """Trivalent vertices grouped by an isomorphism-invariant colour.

    Colours use only structure and leg labels (never beads or orientations),
    so gauge moves and edge reversals preserve them.  Classes come back in a
    deterministic order; canonical numbering assigns ids blockwise.
    """
    U, T = diagram.num_legs, diagram.num_tri
    if T == 0:
        return []
    vert = diagram.vertex_of()
    incident = {U + j: [] for j in range(T)}
    neighbours = {U + j: [] for j in range(T)}
    for tail, head, _ in diagram.edges:
        a, b = vert[tail], vert[head]
        for x, y in ((a, b), (b, a)):
            if x >= U:
                if y == x:
                    incident[x].append(("loop",))
                elif y < U:
                    incident[x].append(("leg", y))
                else:
                    incident[x].append(("tri", 0))
                    neighbours[x].append(y)
    colour = {v: tuple(sorted(incident[v])) for v in incident}
    while True:
        refined = {
            v: (colour[v], tuple(sorted(colour[x] for x in neighbours[v])))
            for v in colour
        }
        if len(set(refined.values())) == len(set(colour.values())):
            break
        colour = refined
    classes = {}
    for v, c in colour.items():
        classes.setdefault(repr(c), []).append(v)
    return [sorted(classes[c]) for c in sorted(classes)]


def _numberings(diagram: Diagram):
    """Candidate maps presentation trivalent id -> canonical id."""
    U = diagram.num_legs
    classes = _colour_classes(diagram)
    sizes = [len(c) for c in classes]
    offsets = []
    acc = U
    for s in sizes:
        offsets.append(acc)
        acc += s
    for perms in itertools.product(*[itertools.permutations(c) for c in classes]):
        cmap = {i: i for i in range(U)}
        for cls_idx, perm in enumerate(perms):
            for k, v in enumerate(perm):
                cmap[v] = offsets[cls_idx] + k
        yield cmap


def _gauge_branches(U, cmap, working, components):
    """All canonical-gauge assignments gamma (one per spanning-tree branch).

    ``working`` is a list of (tail_v, head_v, tail_h, head_h, bead).  Per
    component the tree grows Prim-style from the lowest leg, always towards
    the unvisited trivalent vertex of least canonical id; parallel edges to
    that vertex branch.  gamma(child) solves gamma(tail)^-1 w gamma(head)=1
    along each tree edge.
    """

    def grow(comp_idx, gamma):
        if comp_idx == len(components):
            yield gamma
            return
        comp = components[comp_idx]
        tri_left = {v for v in comp if v >= U}
        if not tri_left:
            yield from grow(comp_idx + 1, gamma)
            return
        root = min(v for v in comp if v < U)

        def step(visited, remaining, gamma):
            if not remaining:
                yield from grow(comp_idx + 1, gamma)
                return
            cands = []
            for ei, (tv, hv, _th, _hh, w) in enumerate(working):
                for a, b in ((tv, hv), (hv, tv)):
                    if a in visited and b in remaining:
                        cands.append((cmap[b], cmap[a], ei, a, b))
            best = min(cands)[:2]
            for cb, ca, ei, a, b in cands:
                if (cb, ca) != best:
                    continue
                tv, hv, _th, _hh, w = working[ei]
                if tv == a:
                    gb = mul_letters(inv_letters(w), gamma.get(a, IDENTITY))
                else:
                    gb = mul_letters(w, gamma.get(a, IDENTITY))
                gamma2 = dict(gamma)
                gamma2[b] = gb
                yield from step(visited | {b}, remaining - {b}, gamma2)

        yield from step({root}, tri_left, gamma)

    yield from grow(0, {})


def canonicalize(diagram: Diagram):
    """Canonical form of a diagram: (key, sign), or (ZERO, 0) if it is zero.

    The key is (num_legs, num_tri, sorted edge entries) with entries
    (u, v, bead_letters) in canonical orientation; equivalent inputs yield
    identical keys, an antisymmetry swap flips the sign, and a diagram with
    a sign-reversing symmetry returns (ZERO, 0).
    """
    U, T = diagram.num_legs, diagram.num_tri
    if not diagram.edges:
        return ((U, T, ()), 1)
    vert = diagram.vertex_of()
    base = [(vert[t], vert[h], t, h, w) for (t, h, w) in diagram.edges]
    loops = [i for i, e in enumerate(base) if e[0] == e[1]]
    comps = _components(U + T, [(e[0], e[1]) for e in base])
    comps.sort(key=lambda c: min(c))

    best_cert = None
    best_signs = set()
    for cmap in _numberings(diagram):
        for flip_mask in itertools.product((False, True), repeat=len(loops)):
            working = list(base)
            for li, flip in zip(loops, flip_mask):
                if flip:
                    tv, hv, th, hh, w = working[li]
                    working[li] = (tv, hv, hh, th, inv_letters(w))
            for gamma in _gauge_branches(U, cmap, working, comps):
                entries = []
                for tv, hv, th, hh, w in working:
                    w2 = mul_letters(
                        inv_letters(gamma.get(tv, IDENTITY)),
                        mul_letters(w, gamma.get(hv, IDENTITY)),
                    )
                    cu, cv = cmap[tv], cmap[hv]
                    if cu > cv:
                        cu, cv, th, hh, w2 = cv, cu, hh, th, inv_letters(w2)
                    entries.append((cu, cv, w2, th, hh))
                entries.sort(key=lambda e: (e[0], e[1], word_key(e[2])))
                cert = (U, T, tuple(e[:3] for e in entries))
                if best_cert is not None and cert > best_cert:
                    continue
                ref = {}
                for cu, cv, _w2, th, hh in entries:
                    if cu >= U:
                        ref.setdefault(cu, []).append(th)
                    if cv >= U:
                        ref.setdefault(cv, []).append(hh)
                sign = 1
                for j, triple in enumerate(diagram.tri):
                    sign *= _cyclic_parity(triple, ref[cmap[U + j]])
                if cert == best_cert:
                    best_signs.add(sign)
                else:
                    best_cert = cert
                    best_signs = {sign}
    if len(best_signs) == 2:
        return (ZERO, 0)
    return (best_cert, best_signs.pop())


def rebuild(key) -> Diagram:
    """A concrete presentation of a canonical key; canonicalizes to (key, +1)."""
    U, T, entries = key
    legs = [None] * U
    triples = {U + j: [] for j in range(T)}
    edges = []
    for i, (u, v, w) in enumerate(entries):
        th, hh = 2 * i, 2 * i + 1
        edges.append((th, hh, (w,)))
        for vertex, h in ((u, th), (v, hh)):
            if vertex < U:
                legs[vertex] = h
            else:
                triples[vertex].append(h)
    return Diagram(legs, [triples[U + j] for j in range(T)], edges)


def key_num_legs(key):
    return key[0]


def key_num_tri(key):
    return key[1]


def key_degree(key):
    return (key[0] + key[1]) // 2


def key_beads(key):
    return [w for (_u, _v, w) in key[2]]


def glue_pair(diagram: Diagram, a: int, b: int) -> Diagram:
    """Glue legs a and b onto a new trivalent vertex with a fresh leg.

    The fresh leg is labelled min(a, b) and the other legs are relabelled
    order-preservingly.  The new vertex's cyclic order is (fresh leg edge,
    branch to b, branch to a); the fresh edge carries bead 1.
    """
    U = diagram.num_legs
    if not (1 <= a <= U and 1 <= b <= U and a != b):
        raise DiagramError("glue_pair needs two distinct leg labels")
    ha, hb = diagram.legs[a - 1], diagram.legs[b - 1]
    top = max(list(diagram.legs) + [h for t in diagram.tri for h in t]) + 1
    h_stub, h_leg = top, top + 1
    new_tri = list(diagram.tri) + [(h_stub, hb, ha)]
    new_edges = list(diagram.edges) + [(h_stub, h_leg, ())]
    keep = sorted(set(range(1, U + 1)) - {a, b})
    provisional = {min(a, b): h_leg}
    for lab in keep:
        provisional[lab] = diagram.legs[lab - 1]
    new_legs = [provisional[lab] for lab in sorted(provisional)]
    return Diagram(new_legs, new_tri, new_edges)


def ihx_at_edge(diagram: Diagram, index: int):
    """The three IHX terms [(+1, I), (-1, H), (+1, X)] at an internal edge.

    The internal edge's bead is first gauged to 1.  With cyclic orders
    (e, a, b) and (e, c, d) at the two endpoints, the terms rewire the four
    outer half-edges as (a,b|c,d), (a,c|b,d), (b,c|a,d).
    """
    vert = diagram.vertex_of()
    tail, head, w = diagram.edges[index]
    u, v = vert[tail], vert[head]
    U = diagram.num_legs
    if u < U or v < U or u == v:
        raise DiagramError("IHX applies to internal edges joining two trivalent vertices")
    if w:
        diagram = gauge_at_vertex(diagram, v, inv_letters(w))
    triples = list(diagram.tri)
    tu = triples[u - U]
    tv = triples[v - U]
    p = tu.index(tail)
    a, b = tu[(p + 1) % 3], tu[(p + 2) % 3]
    q = tv.index(head)
    c, d = tv[(q + 1) % 3], tv[(q + 2) % 3]

    def rewired(u_pair, v_pair):
        t2 = list(triples)
        t2[u - U] = (tail, u_pair[0], u_pair[1])
        t2[v - U] = (head, v_pair[0], v_pair[1])
        return Diagram(diagram.legs, t2, diagram.edges)

    return [
        (1, diagram),
        (-1, rewired((a, c), (b, d))),
        (1, rewired((b, c), (a, d))),
    ]


def internal_edges(diagram: Diagram):
    """Indices of edges joining two distinct trivalent vertices."""
    vert = diagram.vertex_of()
    U = diagram.num_legs
    out = []
    for i, (tail, head, _w) in enumerate(diagram.edges):
        u, v = vert[tail], vert[head]
        if u >= U and v >= U and u != v:
            out.append(i)
    return out


def _structures(num_legs: int, num_tri: int):
    """Half-edge pairings of U legs and T trivalent vertices, pruned by symmetry.

    Slots of a trivalent vertex are used in order and vertices are activated
    in order, so each isomorphism class appears at least once and without the
    (3!)^T T! relabelling blow-up.  Pairings with a legless component are
    dropped.  Yields Diagram presentations with bead-free edges and the slot
    order as cyclic order.
    """
    U, T = num_legs, num_tri
    H = U + 3 * T
    matched = [False] * H
    pairs = []

    def vertex_of(h):
        return h if h < U else U + (h - U) // 3

    def rec():
        h = -1
        for i in range(H):
            if not matched[i]:
                h = i
                break
        if h < 0:
            comps = _components(U + T, [(vertex_of(a), vertex_of(b)) for a, b in pairs])
            for comp in comps:
                if all(v >= U for v in comp):
                    return
            yield list(pairs)
            return
        matched[h] = True
        for h2 in range(h + 1, H):
            if matched[h2]:
                continue
            if h2 >= U:
                t = (h2 - U) // 3
                s = (h2 - U) % 3
                base = U + 3 * t
                if any(not matched[base + s2] for s2 in range(s)):
                    continue  # use slots of a vertex in order
                if s == 0 and t > 0:
                    prev = U + 3 * (t - 1)
                    if not any(matched[prev + s2] for s2 in range(3)):
                        continue  # activate vertices in order
            matched[h2] = True
            pairs.append((h, h2))
            yield from rec()
            pairs.pop()
            matched[h2] = False
        matched[h] = False

    for pairing in rec():
        legs = list(range(U))
        tri = [(U + 3 * t, U + 3 * t + 1, U + 3 * t + 2) for t in range(T)]
        edges = [(a, b, ()) for a, b in pairing]
        yield Diagram(legs, tri, edges)


def enumerate_diagrams(d: int, m: int, alphabet):
    """All canonical keys of degree d with m legs and canonical beads in the
    alphabet; zero diagrams excluded; deterministic order."""
    if d < 0 or m < 0:
        raise ValueError("d and m must be >= 0")
    T = 2 * d - m
    if T < 0:
        return []
    if d == 0:
        return [(0, 0, ())] if m == 0 else []
    if m == 0:
        return []  # every component needs a leg, but there are none
    letters = alphabet.letter_elements()
    found = set()
    for skeleton in _structures(m, T):
        E = len(skeleton.edges)
        for beads in itertools.product(letters, repeat=E):
            dia = Diagram(
                skeleton.legs,
                skeleton.tri,
                [(t, h, (w,)) for (t, h, _), w in zip(skeleton.edges, beads)],
            )
            key, _sign = canonicalize(dia)
            if key is ZERO:
                continue
            if all(w in alphabet._members for w in key_beads(key)):
                found.add(key)
    return sorted(found)


# ---------------------------------------------------------------------------
# JSON diagram schema


def diagram_to_json(diagram: Diagram) -> dict:
    vertices = []
    for i, h in enumerate(diagram.legs):
        vertices.append({"id": i, "kind": "uni", "label": i + 1, "halfedge": h})
    for j, t in enumerate(diagram.tri):
        vertices.append({"id": diagram.num_legs + j, "kind": "tri", "cyclic": list(t)})
    edges = []
    for i, (tail, head, w) in enumerate(diagram.edges):
        beads = [] if not w else [format_letters(w)]
        edges.append({"id": i, "from": tail, "to": head, "beads": beads})
    return {"vertices": vertices, "edges": edges}


def diagram_from_json(obj) -> Diagram:
    """Parse the JSON diagram schema, rejecting invariant violations."""
    if not isinstance(obj, dict) or "vertices" not in obj or "edges" not in obj:
        raise DiagramError("diagram JSON needs 'vertices' and 'edges'")
    legs = {}
    tri = []
    for v in obj["vertices"]:
        kind = v.get("kind")
        if kind == "uni":
            if "label" not in v or "halfedge" not in v:
                raise DiagramError("uni vertex needs 'label' and 'halfedge'")
            label = v["label"]
            if not isinstance(label, int) or label < 1:
                raise DiagramError("leg label must be a positive integer, got %r" % (label,))
            if label in legs:
                raise DiagramError("duplicate leg label %d" % label)
            legs[label] = v["halfedge"]
        elif kind == "tri":
            cyc = v.get("cyclic")
            if not isinstance(cyc, list) or len(cyc) != 3:
                raise DiagramError("tri vertex needs 'cyclic' with 3 half-edges")
            tri.append(tuple(cyc))
        else:
            raise DiagramError("vertex kind must be 'uni' or 'tri', got %r" % (kind,))
    if legs and sorted(legs) != list(range(1, len(legs) + 1)):
        raise DiagramError("leg labels must be a bijection onto 1..m, got %s" % sorted(legs))
    edges = []
    for e in obj["edges"]:
        if "from" not in e or "to" not in e:
            raise DiagramError("edge needs 'from' and 'to' half-edges")
        beads = [parse_letters(b) for b in e.get("beads", [])]
        edges.append((e["from"], e["to"], tuple(beads)))
    ordered_legs = [legs[i] for i in range(1, len(legs) + 1)]
    return Diagram(ordered_legs, tri, edges)
