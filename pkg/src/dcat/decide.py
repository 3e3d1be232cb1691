"""Equality decisions by comparing graphs, hom-set enumeration, and the
family of dicartesian pairs the decision procedure leaves open."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import lru_cache

from dcat.classify import is_i_normal, is_o_normal
from dcat.errors import TypeMismatch
from dcat.graphical import graph_of
from dcat.syntax import (I, O, Letter, Product, Sum, Theory, check_formula,
                         check_theory, comp, copair, gk1, gk2, gl1, gl2, ident,
                         k, k1, l, l1, pair, plus, print_formula, term_size,
                         times)

EQUAL = "equal"
NOT_EQUAL = "not-equal"
UNKNOWN = "unknown"

# justification tags for EQUAL verdicts
SESQUI_COHERENCE = "sesqui-coherence"
EMPTY_GRAPHS = "empty-graphs"
O_NORMAL_SOURCE = "o-normal-source"
I_NORMAL_TARGET = "i-normal-target"


@dataclass(frozen=True)
class Verdict:
    verdict: str
    justification: str
    graph_f: object
    graph_g: object

    @property
    def equal(self):
        return self.verdict == EQUAL

    def to_dict(self):
        return {"verdict": self.verdict, "justification": self.justification,
                "graph_f": self.graph_f.to_dict(), "graph_g": self.graph_g.to_dict()}

    def to_json(self):
        return json.dumps(self.to_dict())


def decide_equal(f, g, theory=Theory.SESQUI):
    """Decide ``f = g`` for typed terms of one type.

    Complete for the sesquicartesian theory.  For the dicartesian theory the
    answer is ``unknown`` when the graphs agree, are nonempty, the source is not
    O-normal and the target is not I-normal.
    """
    theory = Theory.parse(theory)
    check_theory(f, theory)
    check_theory(g, theory)
    if f.type != g.type:
        raise TypeMismatch(
            f"terms have different types: {print_formula(f.src)} -> {print_formula(f.tgt)}"
            f" and {print_formula(g.src)} -> {print_formula(g.tgt)}")
    gf, gg = graph_of(f), graph_of(g)
    if gf != gg:
        return Verdict(NOT_EQUAL, "graphs differ", gf, gg)
    if theory is Theory.SESQUI:
        return Verdict(EQUAL, SESQUI_COHERENCE, gf, gg)
    if gf.empty:
        return Verdict(EQUAL, EMPTY_GRAPHS, gf, gg)
    if is_o_normal(f.src):
        return Verdict(EQUAL, O_NORMAL_SOURCE, gf, gg)
    if is_i_normal(f.tgt):
        return Verdict(EQUAL, I_NORMAL_TARGET, gf, gg)
    return Verdict(UNKNOWN,
                   "graphs equal and nonempty; source not O-normal, target not I-normal",
                   gf, gg)


# ---------------------------------------------------------------------------
# Cut-free enumeration


def enumerate_cut_free(A, B, theory=Theory.SESQUI):
    """All cut-free Gentzen terms ``A -> B``, in a fixed order."""
    theory = Theory.parse(theory)
    check_formula(A, theory)
    check_formula(B, theory)
    return list(_cut_free(A, B, theory is Theory.DICART))


@lru_cache(maxsize=None)
def _cut_free(A, B, dicart):
    # each recursive call strictly shrinks size(A) + size(B)
    out = []
    if A == B:
        out.append(ident(A))
    if dicart and B == I:
        out.append(k(A))
    if A == O:
        out.append(l(B))
    if isinstance(A, Product):
        out.extend(gk1(A.right, f) for f in _cut_free(A.left, B, dicart))
        out.extend(gk2(A.left, f) for f in _cut_free(A.right, B, dicart))
    if isinstance(A, Sum):
        gs = _cut_free(A.right, B, dicart)
        out.extend(copair(f, g) for f in _cut_free(A.left, B, dicart) for g in gs)
    if isinstance(B, Product):
        gs = _cut_free(A, B.right, dicart)
        out.extend(pair(f, g) for f in _cut_free(A, B.left, dicart) for g in gs)
    if isinstance(B, Sum):
        out.extend(gl1(B.right, f) for f in _cut_free(A, B.left, dicart))
        out.extend(gl2(B.left, f) for f in _cut_free(A, B.right, dicart))
    return tuple(out)


@lru_cache(maxsize=None)
def inhabited(A, B, dicart=True):
    """Whether some arrow ``A -> B`` exists (decided on cut-free terms)."""
    if A == B or (dicart and B == I) or A == O:
        return True
    if isinstance(A, Product) and (inhabited(A.left, B, dicart) or inhabited(A.right, B, dicart)):
        return True
    if isinstance(A, Sum) and inhabited(A.left, B, dicart) and inhabited(A.right, B, dicart):
        return True
    if isinstance(B, Product) and inhabited(A, B.left, dicart) and inhabited(A, B.right, dicart):
        return True
    if isinstance(B, Sum) and (inhabited(A, B.left, dicart) or inhabited(A, B.right, dicart)):
        return True
    return False


@dataclass
class HomSet:
    source: object
    target: object
    theory: Theory
    classes: list = field(default_factory=list)   # [(Relation, representative)]
    members: dict = field(default_factory=dict)   # Relation -> [terms]
    raw_count: int = 0
    certified_exact: bool = True

    @property
    def count(self):
        return len(self.classes)

    def to_dict(self, listing=False):
        d = {"source": print_formula(self.source), "target": print_formula(self.target),
             "theory": self.theory.value, "count": self.count,
             "raw_count": self.raw_count, "certified_exact": self.certified_exact,
             "classes": [{"graph": r.to_dict(), "representative": str(t)}
                         for r, t in self.classes]}
        if listing:
            for entry, (r, _) in zip(d["classes"], self.classes):
                entry["members"] = [str(t) for t in self.members[r]]
        return d


def enumerate_homset(A, B, theory=Theory.SESQUI):
    """Cut-free terms ``A -> B`` grouped by graph, one representative per graph.

    Exact for sesqui.  For dicart the count is a lower bound, flagged exact
    when every class is covered by a decided verdict.
    """
    theory = Theory.parse(theory)
    terms = enumerate_cut_free(A, B, theory)
    members = {}
    for t in terms:
        members.setdefault(graph_of(t), []).append(t)
    classes = []
    for r, ts in members.items():
        rep = min(ts, key=term_size)  # first of minimal size
        classes.append((r, rep))
    classes.sort(key=lambda c: (c[0].pairs, term_size(c[1])))
    certified = True
    if theory is Theory.DICART:
        certified = is_o_normal(A) or is_i_normal(B) or all(r.empty for r, _ in classes)
    return HomSet(A, B, theory, classes, members, len(terms), certified)


# ---------------------------------------------------------------------------
# The open dicartesian family


def family_o(A, n):
    """A*O, then (X + I) * O repeated n times."""
    X = Product(A, O)
    for _ in range(n):
        X = Product(Sum(X, I), O)
    return X


def family_i(A, n):
    """A+I, then (X * O) + I repeated n times."""
    X = Sum(A, I)
    for _ in range(n):
        X = Sum(Product(X, O), I)
    return X


def lift_o(f, n):
    out = times(f, ident(O))
    for _ in range(n):
        out = times(plus(out, ident(I)), ident(O))
    return out


def lift_i(f, n):
    out = plus(f, ident(I))
    for _ in range(n):
        out = plus(times(out, ident(O)), ident(I))
    return out


def counterexample_family(A=None, n=0):
    """The pair ``(f^n, g^n)`` of type ``family_o(A, n+1) -> family_i(A, n+1)``.

    Both sides have the same graph; the source is not O-normal and the target
    not I-normal, so :func:`decide_equal` answers ``unknown``.
    """
    if A is None:
        A = Letter("p")
    f = comp(lift_i(times(l1(A, I), ident(O)), n),
             k1(family_i(Product(A, O), n), O))
    g = comp(l1(family_o(Sum(A, I), n), I),
             lift_o(plus(k1(A, O), ident(I)), n))
    return f, g
