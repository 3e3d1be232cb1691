"""Normalization: Gentzen translation, cut elimination, factorization, K-L form.

Cut elimination reduces one topmost cut ``g . f`` (both sides cut-free) at a
time, trying the reduction rules in this fixed order:

    cat1   f or g is an identity
    l      f is l{A}               -> l{target}
    k      g is k{B}               -> k{source}
    K1     f is K^i(f')            -> K^i(g . f')
    L1     g is L^i(g')            -> L^i(g' . f)
    L3     f is [f1, f2]           -> [g . f1, g . f2]
    K3     g is <g1, g2>           -> <g1 . f, g2 . f>
    K2     g is K^i(g'), f = <f1, f2>  -> g' . fi
    L2     g is [g1, g2], f = L^i(f')  -> gi . f'

Every rule replaces a cut of degree d by cuts of degree < d, which is what
:class:`CutStep` records.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from dcat.syntax import (GENTZEN, I, O, comp, copair, gk1, gk2, gl1,
                         gl2, ident, is_complex_identity, is_k_term, is_l_term,
                         k, k1, k2, l, l1, l2, m, mk, pair, plus, times, w)
from dcat.syntax import desugar


def to_gentzen(t):
    """Rewrite primitive projections, injections, w, m, * and + with Gentzen operations.

    Compositions are kept; the result has the type and graph of ``t``.
    """
    op = t.op
    if op in ("id", "k", "l"):
        return t
    A = t.forms[0] if t.forms else None
    if op == "k1":
        return gk1(t.forms[1], ident(A))
    if op == "k2":
        return gk2(A, ident(t.forms[1]))
    if op == "l1":
        return gl1(t.forms[1], ident(A))
    if op == "l2":
        return gl2(A, ident(t.forms[1]))
    if op == "w":
        return pair(ident(A), ident(A))
    if op == "m":
        return copair(ident(A), ident(A))
    args = [to_gentzen(a) for a in t.args]
    if op == "times":
        f, g = args
        return pair(gk1(g.src, f), gk2(f.src, g))
    if op == "plus":
        f, g = args
        return copair(gl1(g.tgt, f), gl2(f.tgt, g))
    return mk(op, t.forms, args)


def degree(t):
    """Number of Gentzen operation occurrences."""
    n = 1 if t.op in GENTZEN else 0
    return n + sum(degree(a) for a in t.args)


def is_cut_free(t):
    return all(s.op != "comp" for s in t.subterms())


@dataclass
class CutStep:
    rule: str
    degree: int
    new_cut_degrees: list = field(default_factory=list)

    @property
    def decreasing(self):
        return all(d < self.degree for d in self.new_cut_degrees)


def cut_eliminate(t, trace=None):
    """Composition-free Gentzen term equal to ``t``.

    Pass a list as ``trace`` to collect one :class:`CutStep` per reduction.
    A final pass replaces non-identity subterms of type X -> I by k{X} and of
    type O -> X by l{X}.
    """
    g = _eliminate(to_gentzen(t), trace)
    return _collapse_constants(g, trace)


def _eliminate(t, trace):
    if not t.args:
        return t
    args = [_eliminate(a, trace) for a in t.args]
    if t.op == "comp":
        return _cut(args[0], args[1], trace)
    return mk(t.op, t.forms, args)


def _cut(g, f, trace):
    d = degree(g) + degree(f)
    step = CutStep("", d)
    if trace is not None:
        trace.append(step)

    def sub(gg, ff):
        step.new_cut_degrees.append(degree(gg) + degree(ff))
        return _cut(gg, ff, trace)

    if f.op == "id":
        step.rule = "cat1"
        return g
    if g.op == "id":
        step.rule = "cat1"
        return f
    if f.op == "l":
        step.rule = "l"
        return l(g.tgt)
    if g.op == "k":
        step.rule = "k"
        return k(f.src)
    if f.op in ("K1", "K2"):
        step.rule = "K1"
        return mk(f.op, f.forms, (sub(g, f.args[0]),))
    if g.op in ("L1", "L2"):
        step.rule = "L1"
        return mk(g.op, g.forms, (sub(g.args[0], f),))
    if f.op == "copair":
        step.rule = "L3"
        f1, f2 = f.args
        return copair(sub(g, f1), sub(g, f2))
    if g.op == "pair":
        step.rule = "K3"
        g1, g2 = g.args
        return pair(sub(g1, f), sub(g2, f))
    if g.op in ("K1", "K2") and f.op == "pair":
        step.rule = "K2"
        return sub(g.args[0], f.args[0 if g.op == "K1" else 1])
    if g.op == "copair" and f.op in ("L1", "L2"):
        step.rule = "L2"
        return sub(g.args[0 if f.op == "L1" else 1], f.args[0])
    raise AssertionError(f"no cut rule for {g} . {f}")  # unreachable for typed input


def _collapse_constants(t, trace):
    if t.op != "id":
        if t.tgt == I and t.op != "k":
            if trace is not None:
                trace.append(CutStep("k", 0))
            return k(t.src)
        if t.src == O and t.op != "l":
            if trace is not None:
                trace.append(CutStep("l", 0))
            return l(t.tgt)
    if not t.args:
        return t
    return mk(t.op, t.forms, [_collapse_constants(a, trace) for a in t.args])


# ---------------------------------------------------------------------------
# Factorization and K-L normal form


def _times(f, g):
    if f.op == "id" and g.op == "id":
        return ident(f.src * g.src)
    return times(f, g)


def _plus(f, g):
    if f.op == "id" and g.op == "id":
        return ident(f.src + g.src)
    return plus(f, g)


def _flat_factors(t):
    """Composition-free factors of a primitive term, outermost first."""
    if t.op == "comp":
        g, f = t.args
        return _flat_factors(g) + _flat_factors(f)
    if t.op in ("times", "plus"):
        fs = _flat_factors(t.args[0])
        gs = _flat_factors(t.args[1])
        # pad on the outer end so the innermost factors line up
        if len(fs) < len(gs):
            fs = [ident(fs[0].tgt)] * (len(gs) - len(fs)) + fs
        elif len(gs) < len(fs):
            gs = [ident(gs[0].tgt)] * (len(fs) - len(gs)) + gs
        join = _times if t.op == "times" else _plus
        return [join(a, b) for a, b in zip(fs, gs)]
    return [t]


def split_factor(t):
    """Split a composition-free primitive term into ``(L, K)`` with ``t = L . K``."""
    op = t.op
    if op == "id":
        return t, t
    if op in ("k", "k1", "k2", "w"):
        return ident(t.tgt), t
    if op in ("l", "l1", "l2", "m"):
        return t, ident(t.src)
    if op in ("times", "plus"):
        lf, kf = split_factor(t.args[0])
        lg, kg = split_factor(t.args[1])
        join = _times if op == "times" else _plus
        return join(lf, lg), join(kf, kg)
    raise ValueError(f"split_factor: not composition-free primitive: {t}")


def factorize(t):
    """Factors ``[f_n, ..., f_1]`` of ``t`` (outermost first).

    Each factor is composition-free and is either a K-term or an L-term; mixed
    factors are split as ``L . K``.  Identity factors are dropped unless
    nothing else is left.
    """
    out = []
    for f in _flat_factors(desugar(t)):
        lf, kf = split_factor(f)
        out.extend(x for x in (lf, kf) if not is_complex_identity(x))
    return out or [ident(t.src)]


@dataclass(frozen=True)
class KLDecomposition:
    k_part: object
    l_part: object

    @property
    def term(self):
        return comp(self.l_part, self.k_part)


def commute(f, g):
    """Rewrite ``f . g`` (K-factor after L-factor) as ``(L', K')`` with ``f . g = L' . K'``."""
    A, C = g.src, f.tgt
    if is_complex_identity(f):
        return g, ident(A)
    if is_complex_identity(g):
        return ident(C), f
    if f.op == "k":
        return ident(I), k(A)
    if g.op == "l":
        return l(C), ident(O)
    if f.op == "w":
        return times(g, g), w(A)
    if g.op == "m":
        return m(C), plus(f, f)
    if f.op in ("k1", "k2") and g.op == "times":
        g1, g2 = g.args
        if f.op == "k1":
            return g1, k1(g1.src, g2.src)
        return g2, k2(g1.src, g2.src)
    if f.op == "times" and g.op == "times":
        l_1, k_1 = commute(f.args[0], g.args[0])
        l_2, k_2 = commute(f.args[1], g.args[1])
        return _times(l_1, l_2), _times(k_1, k_2)
    if f.op == "plus" and g.op in ("l1", "l2"):
        f1, f2 = f.args
        if g.op == "l1":
            return l1(f1.tgt, f2.tgt), f1
        return l2(f1.tgt, f2.tgt), f2
    if f.op == "plus" and g.op == "plus":
        l_1, k_1 = commute(f.args[0], g.args[0])
        l_2, k_2 = commute(f.args[1], g.args[1])
        return _plus(l_1, l_2), _plus(k_1, k_2)
    raise AssertionError(f"no commutation for {f} . {g}")  # unreachable for typed input


def kl_normalize(t):
    """K-L decomposition of ``t``: a K-term followed by an L-term."""
    fs = factorize(t)
    fs = [f for f in fs if not is_complex_identity(f)]
    while True:
        # innermost K-after-L inversion first
        for i in range(len(fs) - 2, -1, -1):
            f, g = fs[i], fs[i + 1]
            if not is_l_term(f) and not is_k_term(g):
                lp, kp = commute(f, g)
                fs[i:i + 2] = [x for x in (lp, kp) if not is_complex_identity(x)]
                break
        else:
            break
    ls = [f for f in fs if not is_k_term(f)]
    ks = [f for f in fs if is_k_term(f)]
    k_part = comp(*ks) if len(ks) > 1 else (ks[0] if ks else ident(t.src))
    l_part = comp(*ls) if len(ls) > 1 else (ls[0] if ls else ident(k_part.tgt))
    return KLDecomposition(k_part, l_part)

