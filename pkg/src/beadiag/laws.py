"""Functor-law verification suites for the arc operations and the gluing
module structure.

These pin the sign conventions: the antipode's (-1)^#legs and the cyclic
order at glued vertices are certified here rather than assumed.
"""

from __future__ import annotations

from fractions import Fraction

from . import arcs as ar
from . import catlie as cl
from .jspaces import j_space, vector_is_zero_in_full_space


def _vsub(u, v):
    out = dict(u)
    for k, c in v.items():
        s = out.get(k, 0) - c
        if s:
            out[k] = s
        else:
            out.pop(k, None)
    return out


def check_gr_laws(d, alphabet, m):
    """All defining relations among the five generators and arc swaps, on
    the spanning set of the class-0 space at m arcs.  Returns a report."""
    from .bridge import _ArcZeroTester

    tester = _ArcZeroTester(d, alphabet)
    space = ar.a_space(alphabet.rank, m, d, alphabet, class0=True)
    failures = []
    for key in space.span:
        v = {key: Fraction(1)}
        for j in range(1, m + 1):
            doubled = ar.gr_act("delta", j, v)
            if _vsub(ar.gr_act("eps", j, doubled), v):
                failures.append(("counit_left", j, key))
            if _vsub(ar.gr_act("eps", j + 1, doubled), v):
                failures.append(("counit_right", j, key))
            swap = {i: i for i in range(1, m + 2)}
            swap[j], swap[j + 1] = j + 1, j
            if _vsub(ar.perm_arcs(swap, doubled), doubled):
                failures.append(("cocommutativity", j, key))
            if _vsub(ar.gr_act("delta", j, doubled), ar.gr_act("delta", j + 1, doubled)):
                failures.append(("coassociativity", j, key))
            if _vsub(ar.gr_act("mu", j, ar.gr_act("eta", j, v)), v):
                failures.append(("unit_left", j, key))
            if _vsub(ar.gr_act("mu", j, ar.gr_act("eta", j + 1, v)), v):
                failures.append(("unit_right", j, key))
            lhs = ar.gr_act("mu", j, ar.gr_act("antipode", j, doubled))
            rhs = ar.gr_act("eta", j, ar.gr_act("eps", j, v))
            if not tester.is_zero(_vsub(lhs, rhs)):
                failures.append(("antipode_axiom", j, key))
        for j in range(1, m + 1):
            # associativity of concatenation, on a twice-doubled arc
            tripled = ar.gr_act("delta", j, ar.gr_act("delta", j, v))
            lhs = ar.gr_act("mu", j, ar.gr_act("mu", j, tripled))
            rhs = ar.gr_act("mu", j, ar.gr_act("mu", j + 1, tripled))
            if _vsub(lhs, rhs):
                failures.append(("merge_associativity", j, key))
    return {
        "d": d,
        "alphabet": alphabet.label,
        "m": m,
        "span": len(space.span),
        "failures": failures,
        "pass": not failures,
    }


def check_hopf_antipode(d, alphabet, m):
    """Just the antipode axiom, on the spanning set at m arcs."""
    from .bridge import _ArcZeroTester

    tester = _ArcZeroTester(d, alphabet)
    space = ar.a_space(alphabet.rank, m, d, alphabet, class0=True)
    failures = []
    for key in space.span:
        v = {key: Fraction(1)}
        for j in range(1, m + 1):
            doubled = ar.gr_act("delta", j, v)
            lhs = ar.gr_act("mu", j, ar.gr_act("antipode", j, doubled))
            rhs = ar.gr_act("eta", j, ar.gr_act("eps", j, v))
            if not tester.is_zero(_vsub(lhs, rhs)):
                failures.append((j, key))
    return {
        "d": d,
        "alphabet": alphabet.label,
        "m": m,
        "span": len(space.span),
        "failures": failures,
        "pass": not failures,
    }


def check_jacobi(d, alphabet, arity):
    """The bracket identity for the gluing action: the three iterated
    gluings of legs (1,2,3) sum to zero in the quotient, for every basis
    diagram at the given arity (needs arity >= 3)."""
    if arity < 3:
        raise ValueError("need arity >= 3")
    space = j_space(d, arity, alphabet)
    failures = []
    def bracket(vec, a, b):
        out = {}
        for kk, coeff in vec.items():
            for k2, c in cl.glue_pair_key(kk, a, b).items():
                s = out.get(k2, 0) + coeff * c
                if s:
                    out[k2] = s
                else:
                    out.pop(k2, None)
        return out

    for key in space.free_keys:
        v = {key: Fraction(1)}
        # [[1,2],3] + [[2,3],1] + [[3,1],2]
        t1 = bracket(bracket(v, 1, 2), 1, 2)
        t2 = bracket(bracket(v, 2, 3), 2, 1)
        t3 = bracket(bracket(v, 3, 1), 1, 2)
        total = dict(t1)
        for t in (t2, t3):
            for k, c in t.items():
                s = total.get(k, 0) + c
                if s:
                    total[k] = s
                else:
                    total.pop(k, None)
        if not vector_is_zero_in_full_space(total):
            failures.append(key)
    return {
        "d": d,
        "alphabet": alphabet.label,
        "arity": arity,
        "basis": len(space.free_keys),
        "failures": failures,
        "pass": not failures,
    }


def check_mu_well_defined(d, alphabet, arity):
    """The gluing action kills IHX relation vectors (well-definedness on the
    quotient)."""
    from .jspaces import ihx_relations

    space = j_space(d, arity, alphabet)
    failures = []
    for key in space.span:
        for rel in ihx_relations(key):
            for i in range(1, arity):
                img = cl.mu_action(i, rel, arity)
                if not vector_is_zero_in_full_space(img):
                    failures.append((key, i))
    return {
        "d": d,
        "alphabet": alphabet.label,
        "arity": arity,
        "failures": failures,
        "pass": not failures,
    }
