"""Brute-force checks that do not go through the decision procedure.

The equations of the theories are applied as rewrite moves in both directions
by a breadth-first search (:func:`equational_closure`).  Terms are explored in
a canonical form taken modulo associativity and unit laws: compositions are
flattened into chains, identity factors are dropped, and ``id * id`` and
``id + id`` are merged into one identity.  All other equations are explicit
moves applied at any chain segment, at any depth.

Where the right-to-left direction of an equation would have to invent a
subterm, the invented part is an identity (``k1 . (f * g) <- f . k1`` uses
``g = id``).  The type-directed laws ``f = k{A}`` and ``f = l{A}`` collapse
any segment of the right type; backwards, ``k{I}`` and ``l{O}`` turn into
identities and other constants unfold one connective at a time
(``l{A * A} -> w{A} . l{A}``, ``l{A + B} -> l1{A, B} . l{A}``, and duals).
"""

from __future__ import annotations

import json
import os
import random
from collections import deque
from dataclasses import dataclass, field

from dcat.graphical import graph_of
from dcat.syntax import (I, O, Letter, Product, Sum, Term, Theory, comp, contains_i,
                         copair, desugar, gk1, gk2, gl1, gl2, ident, k, k1, k2,
                         l, l1, l2, m, pair, plus, print_formula, term_size,
                         times, w)

DEFAULT_EXTRA_SIZE = 6
DEFAULT_MAX_STEPS = 100_000


def default_max_steps():
    env = os.environ.get("DCAT_BUDGET_STEPS")
    return int(env) if env else DEFAULT_MAX_STEPS


# ---------------------------------------------------------------------------
# Canonical chains


def _node(fs, src):
    if not fs:
        return ident(src)
    if len(fs) == 1:
        return fs[0]
    return Term("chain", (), fs, fs[-1].src, fs[0].tgt)


def factors(c):
    """Factors of a canonical term, outermost first."""
    if c.op == "chain":
        return list(c.args)
    if c.op == "id":
        return []
    return [c]


def canon(t):
    """Canonical form of a primitive (desugared) term."""
    op = t.op
    if op in ("comp", "chain"):
        fs = []
        for a in t.args:
            c = canon(a)
            if c.op == "chain":
                fs.extend(c.args)
            elif c.op != "id":
                fs.append(c)
        return _node(fs, t.src)
    if op in ("times", "plus"):
        a, b = canon(t.args[0]), canon(t.args[1])
        if a.op == "id" and b.op == "id":
            return ident(t.src)
        if a is t.args[0] and b is t.args[1]:
            return t
        return Term(op, (), (a, b), t.src, t.tgt)
    return t


def canonical(t):
    return canon(desugar(t))


def to_term(c):
    """Ordinary term (right-nested compositions) from a canonical one."""
    if c.op == "chain":
        return comp(*[to_term(a) for a in c.args])
    if c.op in ("times", "plus"):
        return Term(c.op, (), [to_term(a) for a in c.args], c.src, c.tgt)
    return c


def csize(c):
    if c.op == "chain":
        return len(c.args) - 1 + sum(csize(a) for a in c.args)
    if c.args:
        return 1 + csize(c.args[0]) + csize(c.args[1])
    return 1


# ---------------------------------------------------------------------------
# Rewrite moves


@dataclass(frozen=True)
class Step:
    schema: str
    direction: str      # "lr" or "rl"
    path: tuple         # ((factor index, argument index), ...) down to the site
    detail: tuple       # position of the instance inside the site's chain

    def to_dict(self):
        return {"schema": self.schema, "direction": self.direction,
                "path": [list(p) for p in self.path], "detail": list(self.detail)}


def _seg(fs, a, b):
    return _node(fs[a:b], fs[b - 1].src)


def _splits(c):
    fs = factors(c)
    for s in range(len(fs) + 1):
        hi = _node(fs[:s], c.tgt)
        lo = _node(fs[s:], c.src)
        yield s, hi, lo


def _unfold_l(B):
    if isinstance(B, Product):
        X, Y = B.left, B.right
        if X == Y:
            yield [w(X), l(X)]
        yield [times(l(X), l(Y)), w(O)]
    elif isinstance(B, Sum):
        yield [l1(B.left, B.right), l(B.left)]
        yield [l2(B.left, B.right), l(B.right)]


def _unfold_k(A):
    if isinstance(A, Sum):
        X, Y = A.left, A.right
        if X == Y:
            yield [k(X), m(X)]
        yield [m(I), plus(k(X), k(Y))]
    elif isinstance(A, Product):
        yield [k(A.left), k1(A.left, A.right)]
        yield [k(A.right), k2(A.left, A.right)]


def _site_moves(fs, src, dicart):
    """Moves inside one chain; yields (schema, direction, detail, new factor list)."""
    n = len(fs)
    if n == 0:
        if src == O:
            yield "l", "lr", (), [l(O)]
        if dicart and src == I:
            yield "k", "lr", (), [k(I)]
        return

    for j in range(n):
        f = fs[j]
        op = f.op
        nxt = fs[j + 1] if j + 1 < n else None
        nxt2 = fs[j + 2] if j + 2 < n else None
        before, after = fs[:j], fs[j + 1:]

        if op == "k1" and f.forms == (O, O):
            yield "kO", "lr", (j,), before + [k2(O, O)] + after
        elif op == "k2" and f.forms == (O, O):
            yield "kO", "rl", (j,), before + [k1(O, O)] + after
        elif dicart and op == "l1" and f.forms == (I, I):
            yield "lI", "lr", (j,), before + [l2(I, I)] + after
        elif dicart and op == "l2" and f.forms == (I, I):
            yield "lI", "rl", (j,), before + [l1(I, I)] + after
        elif op == "l" and f.forms[0] == O:
            yield "l", "rl", (j,), before + after
        elif dicart and op == "k" and f.forms[0] == I:
            yield "k", "rl", (j,), before + after
        elif op == "l":
            # l{B} = g . l{A} for a structural g: A -> B
            for n_, new in enumerate(_unfold_l(f.forms[0])):
                yield "l", "rl", (j, n_), before + new + after
        elif dicart and op == "k":
            for n_, new in enumerate(_unfold_k(f.forms[0])):
                yield "k", "rl", (j, n_), before + new + after

        if op in ("times", "plus"):
            name = "x2" if op == "times" else "+2"
            join = times if op == "times" else plus
            a, b = f.args
            for sa, ahi, alo in _splits(a):
                for sb, bhi, blo in _splits(b):
                    if (ahi.op == "id" and bhi.op == "id") or (alo.op == "id" and blo.op == "id"):
                        continue
                    yield name, "lr", (j, sa, sb), before + [join(ahi, bhi), join(alo, blo)] + after
            if nxt is not None and nxt.op == op:
                c, d = nxt.args
                merged = join(_node(factors(a) + factors(c), c.src),
                              _node(factors(b) + factors(d), d.src))
                yield name, "rl", (j,), before + [merged] + fs[j + 2:]

        if op == "times" and nxt is not None and nxt.op == "w":
            a, b = f.args
            if a == b:
                yield "w", "rl", (j,), before + [w(a.tgt)] + factors(a) + fs[j + 2:]
            else:
                fa, fb = factors(a), factors(b)
                s = 0
                while s < min(len(fa), len(fb)) and fa[-1 - s] == fb[-1 - s]:
                    s += 1
                for t in range(1, s + 1):
                    S = fa[len(fa) - t:]
                    na = _node(fa[:len(fa) - t], S[0].tgt)
                    nb = _node(fb[:len(fb) - t], S[0].tgt)
                    yield "K3", "rl", (j, t), before + [times(na, nb), w(S[0].tgt)] + S + fs[j + 2:]
            if a.op in ("k1",) and b.op == "k2" and a.forms == b.forms:
                yield "kw2", "lr", (j,), before + fs[j + 2:]
            # K3 left to right: <g1, g2> . S
            for s in range(1, n - j - 1):
                S = _seg(fs, j + 2, j + 2 + s)
                yield "K3", "lr", (j, s), before + [
                    times(_node(factors(a) + factors(S), S.src),
                          _node(factors(b) + factors(S), S.src)),
                    w(S.src)] + fs[j + 2 + s:]

        if op == "m" and nxt is not None and nxt.op == "plus":
            a, b = nxt.args
            if a == b:
                yield "m", "rl", (j,), before + factors(a) + [m(a.src)] + fs[j + 2:]
            else:
                fa, fb = factors(a), factors(b)
                s = 0
                while s < min(len(fa), len(fb)) and fa[s] == fb[s]:
                    s += 1
                for t in range(1, s + 1):
                    S = fa[:t]
                    na = _node(fa[t:], a.src)
                    nb = _node(fb[t:], b.src)
                    yield "L3", "rl", (j, t), before + S + [m(S[-1].src), plus(na, nb)] + fs[j + 2:]
            if a.op == "l1" and b.op == "l2" and a.forms == b.forms:
                yield "lm2", "lr", (j,), before + fs[j + 2:]
            if nxt2 is not None and nxt2.op in ("l1", "l2"):
                g = a if nxt2.op == "l1" else b
                yield "L2", "lr", (j,), before + factors(g) + fs[j + 3:]
            # L3 left to right: S . [f1, f2]
            for s in range(1, j + 1):
                S = _seg(fs, j - s, j)
                yield "L3", "lr", (j, s), fs[:j - s] + [
                    m(S.tgt),
                    plus(_node(factors(S) + factors(a), a.src),
                         _node(factors(S) + factors(b), b.src))] + fs[j + 2:]

        if op in ("k1", "k2"):
            A1, A2 = f.forms
            i = 0 if op == "k1" else 1
            if nxt is not None and nxt.op == "times":
                fi = nxt.args[i]
                proj = k1 if op == "k1" else k2
                yield "k^i", "lr", (j,), before + factors(fi) + [
                    proj(nxt.args[0].src, nxt.args[1].src)] + fs[j + 2:]
                if nxt2 is not None and nxt2.op == "w":
                    yield "K2", "lr", (j,), before + factors(fi) + fs[j + 3:]
            if nxt is not None and nxt.op == "w" and A1 == A2:
                yield "kw1", "lr", (j,), before + fs[j + 2:]
            for s in range(1, j + 1):
                S = _seg(fs, j - s, j)
                if op == "k1":
                    new = [k1(S.tgt, A2), times(S, ident(A2))]
                else:
                    new = [k2(A1, S.tgt), times(ident(A1), S)]
                yield "k^i", "rl", (j, s), fs[:j - s] + new + after

        if op in ("l1", "l2"):
            B1, B2 = f.forms
            for s in range(1, n - j):
                S = _seg(fs, j + 1, j + 1 + s)
                if op == "l1":
                    new = [plus(S, ident(B2)), l1(S.src, B2)]
                else:
                    new = [plus(ident(B1), S), l2(B1, S.src)]
                yield "l^i", "rl", (j, s), before + new + fs[j + 1 + s:]

        if op == "plus" and nxt is not None and nxt.op in ("l1", "l2"):
            f1, f2 = f.args
            if nxt.op == "l1":
                yield "l^i", "lr", (j,), before + [l1(f1.tgt, f2.tgt)] + factors(f1) + fs[j + 2:]
            else:
                yield "l^i", "lr", (j,), before + [l2(f1.tgt, f2.tgt)] + factors(f2) + fs[j + 2:]

        if op == "w":
            for s in range(1, n - j):
                S = _seg(fs, j + 1, j + 1 + s)
                yield "w", "lr", (j, s), before + [times(S, S), w(S.src)] + fs[j + 1 + s:]

        if op == "m":
            if nxt is not None and nxt.op in ("l1", "l2") and nxt.forms[0] == nxt.forms[1]:
                yield "lm1", "lr", (j,), before + fs[j + 2:]
            for s in range(1, j + 1):
                S = _seg(fs, j - s, j)
                yield "m", "lr", (j, s), fs[:j - s] + [m(S.tgt), plus(S, S)] + after

    # type-directed laws on every segment
    for a in range(n):
        for b in range(a + 1, n + 1):
            s_src, s_tgt = fs[b - 1].src, fs[a].tgt
            single = b - a == 1
            if s_src == O and not (single and fs[a].op == "l"):
                yield "l", "lr", (a, b), fs[:a] + [l(s_tgt)] + fs[b:]
            if dicart and s_tgt == I and not (single and fs[a].op == "k"):
                yield "k", "lr", (a, b), fs[:a] + [k(s_src)] + fs[b:]


def _sites(c, path=()):
    fs = factors(c)
    yield path, fs, c.src
    for i, f in enumerate(fs):
        if f.op in ("times", "plus"):
            for j, a in enumerate(f.args):
                yield from _sites(a, path + ((i, j),))


def _replace(c, path, new):
    if not path:
        return new
    (i, j), rest = path[0], path[1:]
    fs = factors(c)
    f = fs[i]
    args = list(f.args)
    args[j] = _replace(args[j], rest, new)
    fs[i] = Term(f.op, (), args, f.src, f.tgt)
    return _node(fs, c.src)


def rewrites(c, theory=Theory.SESQUI):
    """All one-step rewrites of the canonical term ``c``: pairs (Step, result)."""
    dicart = Theory.parse(theory) is Theory.DICART
    for path, fs, src in _sites(c):
        for schema, direction, detail, new_fs in _site_moves(fs, src, dicart):
            new = canon(_replace(c, path, _node(new_fs, src)))
            if new != c:
                yield Step(schema, direction, path, detail), new


def apply_step(c, step, theory=Theory.SESQUI):
    for s, new in rewrites(c, theory):
        if s == step:
            return new
    raise ValueError(f"step {step} does not apply")


# ---------------------------------------------------------------------------
# Closure


@dataclass(frozen=True)
class TraceStep:
    step: Step          # None for the implicit canonicalization link
    source: Term        # term the step was applied to
    result: Term
    reversed: bool      # walked from result back to source

    def to_dict(self):
        d = {"schema": self.step.schema if self.step else "canonical-form",
             "from": str(to_term(self.source)), "to": str(to_term(self.result)),
             "reversed": self.reversed}
        if self.step:
            d.update(self.step.to_dict())
        return d


def replay(trace, theory=Theory.SESQUI):
    """Re-apply every recorded step; True when each reproduces its recorded result."""
    for ts in trace:
        if ts.step is None:
            if canon(ts.source) != canon(ts.result):
                return False
            continue
        try:
            if apply_step(ts.source, ts.step, theory) != ts.result:
                return False
        except ValueError:
            return False
    # consecutive steps must chain
    ends = [(ts.result, ts.source) if ts.reversed else (ts.source, ts.result) for ts in trace]
    return all(a[1] == b[0] for a, b in zip(ends, ends[1:]))


class _UnionFind:
    def __init__(self, n):
        self.parent = list(range(n))

    def find(self, x):
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        if rb < ra:
            ra, rb = rb, ra
        self.parent[rb] = ra
        return True


@dataclass
class ClosureResult:
    terms: list
    starts: list                  # canonical forms of terms
    classes: list                 # lists of indices into terms
    status: str                   # saturated | target-reached | merged | exhausted-budget
    expansions: int
    max_size: int
    max_steps: int
    theory: Theory
    _origin: dict = field(repr=False, default_factory=dict)
    _parent: dict = field(repr=False, default_factory=dict)
    _bridges: list = field(repr=False, default_factory=list)

    def class_of(self, i):
        for n, cl in enumerate(self.classes):
            if i in cl:
                return n
        raise IndexError(i)

    def pair_status(self, i, j):
        return "connected" if self.class_of(i) == self.class_of(j) else "exhausted-budget"

    def _path_to_start(self, t):
        """Steps from the start term of t's search tree down to t."""
        steps = []
        while t in self._parent:
            prev, step = self._parent[t]
            steps.append(TraceStep(step, prev, t, False))
            t = prev
        return steps[::-1]

    def trace(self, i, j):
        """Replayable list of TraceStep from term i to term j (None if unconnected)."""
        if self.class_of(i) != self.class_of(j):
            return None
        adj = {}
        for t, u, step, a, b in self._bridges:
            adj.setdefault(a, []).append((b, t, u, step, False))
            adj.setdefault(b, []).append((a, u, t, step, True))
        prev = {i: None}
        queue = deque([i])
        while queue:
            a = queue.popleft()
            if a == j:
                break
            for b, *edge in adj.get(a, ()):
                if b not in prev:
                    prev[b] = (a, edge)
                    queue.append(b)
        hops = []
        node = j
        while prev[node] is not None:
            a, edge = prev[node]
            hops.append(edge)
            node = a
        hops.reverse()
        out = []
        for near, far, step, backwards in hops:
            out.extend(self._path_to_start(near))
            if backwards:
                out.append(TraceStep(step, far, near, True))
            else:
                out.append(TraceStep(step, near, far, False))
            out.extend(TraceStep(s.step, s.source, s.result, True)
                       for s in reversed(self._path_to_start(far)))
        return out


def equational_closure(terms, theory=Theory.SESQUI, max_size=None, max_steps=None,
                       target_classes=None):
    """Partition ``terms`` (all of one type) by breadth-first equational search.

    ``max_size`` caps the size of explored terms (default: largest input plus
    6), ``max_steps`` the number of expanded terms (default 10^5, or the
    DCAT_BUDGET_STEPS environment variable).  The search stops early once all
    inputs are in one class or the number of classes drops to
    ``target_classes``.  Unconnected pairs are reported as exhausted-budget,
    never as unequal.
    """
    theory = Theory.parse(theory)
    terms = list(terms)
    if not terms:
        raise ValueError("equational_closure needs at least one term")
    types = {t.type for t in terms}
    if len(types) != 1:
        raise ValueError("all terms must share one type")
    starts = [canonical(t) for t in terms]
    if max_size is None:
        max_size = max(csize(s) for s in starts) + DEFAULT_EXTRA_SIZE
    if max_steps is None:
        max_steps = default_max_steps()

    n = len(terms)
    uf = _UnionFind(n)
    classes_left = n
    origin = {}
    parent = {}
    bridges = []
    queue = deque()
    for i, s in enumerate(starts):
        if s in origin:
            if uf.union(origin[s], i):
                classes_left -= 1
            continue
        origin[s] = i
        queue.append(s)

    def done():
        return classes_left == 1 or (target_classes is not None and classes_left <= target_classes)

    expansions = 0
    status = None
    while queue and not done():
        if expansions >= max_steps:
            status = "exhausted-budget"
            break
        t = queue.popleft()
        expansions += 1
        ot = origin[t]
        for step, u in rewrites(t, theory):
            if csize(u) > max_size:
                continue
            ou = origin.get(u)
            if ou is None:
                origin[u] = ot
                parent[u] = (t, step)
                queue.append(u)
            elif uf.union(ou, ot):
                classes_left -= 1
                bridges.append((t, u, step, ot, ou))
                if done():
                    break
    if status is None:
        if classes_left == 1:
            status = "merged"
        elif done():
            status = "target-reached"
        else:
            status = "saturated"

    groups = {}
    for i in range(n):
        groups.setdefault(uf.find(i), []).append(i)
    classes = sorted(groups.values())
    # starts identical up to canonical form: link them through the canonical term
    for i, s in enumerate(starts):
        if origin[s] != i:
            bridges.append((s, s, None, origin[s], i))
    return ClosureResult(terms, starts, classes, status, expansions, max_size,
                         max_steps, theory, origin, parent, bridges)


# ---------------------------------------------------------------------------
# Random formulas and terms


def random_formula(rng, size=3, theory=Theory.SESQUI, letters=("p", "q")):
    """Random formula with at most ``size`` connectives."""
    dicart = Theory.parse(theory) is Theory.DICART
    atoms = [Letter(x) for x in letters] + [O] + ([I] if dicart else [])
    if size <= 0 or rng.random() < 0.3:
        return rng.choice(atoms)
    left = rng.randint(0, size - 1)
    A = random_formula(rng, left, theory, letters)
    B = random_formula(rng, size - 1 - left, theory, letters)
    return Product(A, B) if rng.random() < 0.5 else Sum(A, B)


def random_gentzen(A, B, rng, theory=Theory.SESQUI, depth=6):
    """Random cut-free Gentzen term ``A -> B``, or None if there is none."""
    from dcat.decide import inhabited
    dicart = Theory.parse(theory) is Theory.DICART
    if not inhabited(A, B, dicart):
        return None
    options = []
    if A == B:
        options.append("id")
    if dicart and B == I:
        options.append("k")
    if A == O:
        options.append("l")
    if depth > 0:
        if isinstance(A, Product):
            if inhabited(A.left, B, dicart):
                options.append("K1")
            if inhabited(A.right, B, dicart):
                options.append("K2")
        if isinstance(A, Sum) and inhabited(A.left, B, dicart) and inhabited(A.right, B, dicart):
            options.append("copair")
        if isinstance(B, Product) and inhabited(A, B.left, dicart) and inhabited(A, B.right, dicart):
            options.append("pair")
        if isinstance(B, Sum):
            if inhabited(A, B.left, dicart):
                options.append("L1")
            if inhabited(A, B.right, dicart):
                options.append("L2")
    if not options:
        # out of depth: fall back to the full enumeration's first term
        from dcat.decide import enumerate_cut_free
        return enumerate_cut_free(A, B, theory)[0]
    choice = rng.choice(options)
    d = depth - 1
    if choice == "id":
        return ident(A)
    if choice == "k":
        return k(A)
    if choice == "l":
        return l(B)
    if choice == "K1":
        return gk1(A.right, random_gentzen(A.left, B, rng, theory, d))
    if choice == "K2":
        return gk2(A.left, random_gentzen(A.right, B, rng, theory, d))
    if choice == "copair":
        return copair(random_gentzen(A.left, B, rng, theory, d),
                      random_gentzen(A.right, B, rng, theory, d))
    if choice == "pair":
        return pair(random_gentzen(A, B.left, rng, theory, d),
                    random_gentzen(A, B.right, rng, theory, d))
    if choice == "L1":
        return gl1(B.right, random_gentzen(A, B.left, rng, theory, d))
    return gl2(B.left, random_gentzen(A, B.right, rng, theory, d))


def _rng(seed_or_rng):
    if isinstance(seed_or_rng, random.Random):
        return seed_or_rng
    return random.Random(seed_or_rng)


def random_term(A=None, size_budget=8, theory=Theory.SESQUI, seed=0):
    """Random well-typed term with source ``A`` (a random formula when None).

    At most ``size_budget`` constructor nodes are used; with a budget of 0 or 1
    the result is the identity.  Deterministic for a given seed.
    """
    theory = Theory.parse(theory)
    rng = _rng(seed)
    if A is None:
        A = random_formula(rng, 2, theory)
    return _gen(A, max(size_budget, 0), rng, theory)


def _gen(A, budget, rng, theory):
    dicart = theory is Theory.DICART
    if budget <= 1:
        return ident(A)

    def small_formula():
        return random_formula(rng, 1, theory)

    atoms = [lambda: ident(A), lambda: w(A), lambda: l1(A, small_formula()),
             lambda: l2(small_formula(), A)]
    if dicart:
        atoms.append(lambda: k(A))
    if A == O:
        atoms.append(lambda: l(small_formula()))
    if isinstance(A, Product):
        atoms += [lambda: k1(A.left, A.right), lambda: k2(A.left, A.right)]
    if isinstance(A, Sum) and A.left == A.right:
        atoms.append(lambda: m(A.left))

    def split(n):
        a = rng.randint(1, n - 2) if n > 2 else 1
        return a, max(n - 1 - a, 1)

    compound = ["comp", "comp", "L1", "L2", "pair"]
    if isinstance(A, Product):
        compound += ["times", "K1", "K2"]
    if isinstance(A, Sum):
        compound += ["plus", "copair"]
    if budget < 3:
        compound = [c for c in compound if c in ("L1", "L2")]
    if rng.random() < 0.35 or not compound:
        return rng.choice(atoms)()
    choice = rng.choice(compound)
    if choice == "comp":
        a, b = split(budget)
        f = _gen(A, a, rng, theory)
        return comp(_gen(f.tgt, b, rng, theory), f)
    if choice in ("L1", "L2"):
        f = _gen(A, budget - 1, rng, theory)
        B = small_formula()
        return gl1(B, f) if choice == "L1" else gl2(B, f)
    if choice == "pair":
        a, b = split(budget)
        return pair(_gen(A, a, rng, theory), _gen(A, b, rng, theory))
    if choice == "K1":
        return gk1(A.right, _gen(A.left, budget - 1, rng, theory))
    if choice == "K2":
        return gk2(A.left, _gen(A.right, budget - 1, rng, theory))
    a, b = split(budget)
    if choice in ("times", "plus"):
        f = _gen(A.left, a, rng, theory)
        g = _gen(A.right, b, rng, theory)
        return times(f, g) if choice == "times" else plus(f, g)
    # copair: the second component must reach the first one's target
    f = _gen(A.left, a, rng, theory)
    g = random_gentzen(A.right, f.tgt, rng, theory, depth=max(b, 1))
    if g is None or term_size(g) > b:
        return plus(f, _gen(A.right, b, rng, theory))
    return copair(f, g)


def arrow_into(B, rng, theory=Theory.SESQUI, size_budget=6, tries=20):
    """Random term with target ``B`` from a random source (identity as last resort)."""
    for _ in range(tries):
        f = random_arrow(random_formula(rng, 2, theory), B, rng, theory, size_budget)
        if f is not None:
            return f
    return ident(B)


def random_arrow(A, B, rng, theory=Theory.SESQUI, size_budget=6):
    """Random term ``A -> B``: a random term out of A, post-composed when needed."""
    f = _gen(A, size_budget, rng, Theory.parse(theory))
    if f.tgt == B:
        return f
    g = random_gentzen(f.tgt, B, rng, theory)
    if g is None:
        return random_gentzen(A, B, rng, theory)
    return comp(g, f)


# ---------------------------------------------------------------------------
# Equation schemas with random instantiation


@dataclass(frozen=True)
class EquationSchema:
    name: str
    left: str
    right: str
    condition: str
    instantiate: object         # (rng, theory, budget) -> (lhs, rhs)
    sesqui: bool = True         # part of the sesquicartesian theory
    derived: bool = False

    def to_dict(self):
        return {"name": self.name, "left": self.left, "right": self.right,
                "condition": self.condition, "derived": self.derived}


def _forms(rng, theory, n, size=2):
    return [random_formula(rng, size, theory) for _ in range(n)]


def _any(rng, theory, budget, A=None):
    if A is None:
        A = random_formula(rng, 2, theory)
    return _gen(A, rng.randint(1, max(budget, 1)), rng, theory)


def _inst_cat1(rng, th, b):
    f = _any(rng, th, b)
    if rng.random() < 0.5:
        return comp(ident(f.tgt), f), f
    return comp(f, ident(f.src)), f


def _inst_cat2(rng, th, b):
    f = _any(rng, th, b)
    g = _any(rng, th, b, f.tgt)
    h = _any(rng, th, b, g.tgt)
    return comp(h, comp(g, f)), comp(comp(h, g), f)


def _inst_unit(join):
    def inst(rng, th, b):
        A, B = _forms(rng, th, 2)
        lhs = join(ident(A), ident(B))
        return lhs, ident(lhs.src)
    return inst


def _inst_interchange(join):
    def inst(rng, th, b):
        g2 = _any(rng, th, b)
        g1 = _any(rng, th, b, g2.tgt)
        f2 = _any(rng, th, b)
        f1 = _any(rng, th, b, f2.tgt)
        return join(comp(g1, g2), comp(f1, f2)), comp(join(g1, f1), join(g2, f2))
    return inst


def _inst_ki(rng, th, b):
    f1, f2 = _any(rng, th, b), _any(rng, th, b)
    if rng.random() < 0.5:
        return (comp(k1(f1.tgt, f2.tgt), times(f1, f2)),
                comp(f1, k1(f1.src, f2.src)))
    return (comp(k2(f1.tgt, f2.tgt), times(f1, f2)),
            comp(f2, k2(f1.src, f2.src)))


def _inst_w(rng, th, b):
    f = _any(rng, th, b)
    return comp(w(f.tgt), f), comp(times(f, f), w(f.src))


def _inst_kw1(rng, th, b):
    (A,) = _forms(rng, th, 1)
    proj = k1 if rng.random() < 0.5 else k2
    return comp(proj(A, A), w(A)), ident(A)


def _inst_kw2(rng, th, b):
    A, B = _forms(rng, th, 2)
    return comp(times(k1(A, B), k2(A, B)), w(Product(A, B))), ident(Product(A, B))


def _inst_k(rng, th, b):
    f = arrow_into(I, rng, th, b)
    return f, k(f.src)


def _inst_kO(rng, th, b):
    return k1(O, O), k2(O, O)


def _inst_li(rng, th, b):
    f1, f2 = _any(rng, th, b), _any(rng, th, b)
    if rng.random() < 0.5:
        return (comp(plus(f1, f2), l1(f1.src, f2.src)),
                comp(l1(f1.tgt, f2.tgt), f1))
    return (comp(plus(f1, f2), l2(f1.src, f2.src)),
            comp(l2(f1.tgt, f2.tgt), f2))


def _inst_m(rng, th, b):
    f = _any(rng, th, b)
    return comp(f, m(f.src)), comp(m(f.tgt), plus(f, f))


def _inst_lm1(rng, th, b):
    (A,) = _forms(rng, th, 1)
    inj = l1 if rng.random() < 0.5 else l2
    return comp(m(A), inj(A, A)), ident(A)


def _inst_lm2(rng, th, b):
    A, B = _forms(rng, th, 2)
    return comp(m(Sum(A, B)), plus(l1(A, B), l2(A, B))), ident(Sum(A, B))


def _inst_l(rng, th, b):
    f = random_arrow(O, random_formula(rng, 2, th), rng, th, b)
    return f, l(f.tgt)


def _inst_lI(rng, th, b):
    return l1(I, I), l2(I, I)


def _inst_K1(rng, th, b):
    f = _any(rng, th, b)
    g = _any(rng, th, b, f.tgt)
    (B,) = _forms(rng, th, 1)
    if rng.random() < 0.5:
        return comp(g, gk1(B, f)), gk1(B, comp(g, f))
    return comp(g, gk2(B, f)), gk2(B, comp(g, f))


def _inst_L1(rng, th, b):
    f = _any(rng, th, b)
    g = _any(rng, th, b, f.tgt)
    (B,) = _forms(rng, th, 1)
    if rng.random() < 0.5:
        return comp(gl1(B, g), f), gl1(B, comp(g, f))
    return comp(gl2(B, g), f), gl2(B, comp(g, f))


def _inst_K2(rng, th, b):
    f1 = _any(rng, th, b)
    f2 = _any(rng, th, b, f1.src)
    if rng.random() < 0.5:
        g = _any(rng, th, b, f1.tgt)
        return comp(gk1(f2.tgt, g), pair(f1, f2)), comp(g, f1)
    g = _any(rng, th, b, f2.tgt)
    return comp(gk2(f1.tgt, g), pair(f1, f2)), comp(g, f2)


def _inst_L2(rng, th, b):
    g1 = _any(rng, th, b)
    for _ in range(20):
        A2 = random_formula(rng, 2, th)
        g2 = random_gentzen(A2, g1.tgt, rng, th)
        if g2 is not None:
            break
    else:
        g2 = g1
    if rng.random() < 0.5:
        f = arrow_into(g1.src, rng, th, b)
        return comp(copair(g1, g2), gl1(g2.src, f)), comp(g1, f)
    f = arrow_into(g2.src, rng, th, b)
    return comp(copair(g1, g2), gl2(g1.src, f)), comp(g2, f)


def _inst_K3(rng, th, b):
    f = _any(rng, th, b)
    g1 = _any(rng, th, b, f.tgt)
    g2 = _any(rng, th, b, f.tgt)
    return comp(pair(g1, g2), f), pair(comp(g1, f), comp(g2, f))


def _inst_L3(rng, th, b):
    f1 = _any(rng, th, b)
    for _ in range(20):
        A2 = random_formula(rng, 2, th)
        f2 = random_gentzen(A2, f1.tgt, rng, th)
        if f2 is not None:
            break
    else:
        f2 = f1
    g = _any(rng, th, b, f1.tgt)
    return comp(g, copair(f1, f2)), copair(comp(g, f1), comp(g, f2))


SCHEMAS = [
    EquationSchema("cat1", "id . f ; f . id", "f", "", _inst_cat1),
    EquationSchema("cat2", "h . (g . f)", "(h . g) . f", "", _inst_cat2),
    EquationSchema("x1", "id{A} * id{B}", "id{A * B}", "", _inst_unit(times)),
    EquationSchema("x2", "(g1 . g2) * (f1 . f2)", "(g1 * f1) . (g2 * f2)", "", _inst_interchange(times)),
    EquationSchema("k^i", "k^i{B1,B2} . (f1 * f2)", "fi . k^i{A1,A2}", "", _inst_ki),
    EquationSchema("w", "w{B} . f", "(f * f) . w{A}", "", _inst_w),
    EquationSchema("kw1", "k^i{A,A} . w{A}", "id{A}", "", _inst_kw1),
    EquationSchema("kw2", "(k1{A,B} * k2{A,B}) . w{A * B}", "id{A * B}", "", _inst_kw2),
    EquationSchema("k", "f", "k{A}", "f: A -> I", _inst_k, sesqui=False),
    EquationSchema("kO", "k1{O,O}", "k2{O,O}", "", _inst_kO),
    EquationSchema("+1", "id{A} + id{B}", "id{A + B}", "", _inst_unit(plus)),
    EquationSchema("+2", "(g1 . g2) + (f1 . f2)", "(g1 + f1) . (g2 + f2)", "", _inst_interchange(plus)),
    EquationSchema("l^i", "(f1 + f2) . l^i{A1,A2}", "l^i{B1,B2} . fi", "", _inst_li),
    EquationSchema("m", "f . m{A}", "m{B} . (f + f)", "", _inst_m),
    EquationSchema("lm1", "m{A} . l^i{A,A}", "id{A}", "", _inst_lm1),
    EquationSchema("lm2", "m{A + B} . (l1{A,B} + l2{A,B})", "id{A + B}", "", _inst_lm2),
    EquationSchema("l", "f", "l{A}", "f: O -> A", _inst_l),
    EquationSchema("lI", "l1{I,I}", "l2{I,I}", "", _inst_lI, sesqui=False),
    EquationSchema("K1", "g . K^i{A}(f)", "K^i{A}(g . f)", "", _inst_K1, derived=True),
    EquationSchema("K2", "K^i{A}(g) . <f1, f2>", "g . fi", "", _inst_K2, derived=True),
    EquationSchema("K3", "<g1, g2> . f", "<g1 . f, g2 . f>", "", _inst_K3, derived=True),
    EquationSchema("L1", "L^i{A}(g) . f", "L^i{A}(g . f)", "", _inst_L1, derived=True),
    EquationSchema("L2", "[g1, g2] . L^i{A}(f)", "gi . f", "", _inst_L2, derived=True),
    EquationSchema("L3", "g . [f1, f2]", "[g . f1, g . f2]", "", _inst_L3, derived=True),
]

SCHEMA_BY_NAME = {s.name: s for s in SCHEMAS}


def schemas_for(theory):
    theory = Theory.parse(theory)
    return [s for s in SCHEMAS if theory is Theory.DICART or s.sesqui]


def instantiate(schema, rng, theory=Theory.SESQUI, size_budget=4):
    theory = Theory.parse(theory)
    if theory is Theory.SESQUI and not schema.sesqui:
        raise ValueError(f"schema {schema.name} is not part of the sesquicartesian theory")
    lhs, rhs = schema.instantiate(rng, theory, size_budget)
    if lhs.type != rhs.type:
        raise AssertionError(f"schema {schema.name}: sides have different types")
    if theory is Theory.SESQUI and any(contains_i(A) for A in lhs.type):
        raise AssertionError(f"schema {schema.name}: produced I under sesqui")
    return lhs, rhs


# ---------------------------------------------------------------------------
# Reports


def verify_soundness(sample_size=100, size_budget=4, theory=Theory.SESQUI, seed=0,
                     schemas=None):
    """Check that both sides of random schema instances have equal graphs."""
    theory = Theory.parse(theory)
    rng = random.Random(seed)
    chosen = schemas_for(theory) if schemas is None else [
        SCHEMA_BY_NAME[s] if isinstance(s, str) else s for s in schemas]
    report = {"seed": seed, "theory": theory.value, "sample_size": sample_size,
              "size_budget": size_budget, "schemas": {}, "violations": []}
    for schema in chosen:
        count = 0
        for _ in range(sample_size):
            lhs, rhs = instantiate(schema, rng, theory, size_budget)
            gl, gr = graph_of(lhs), graph_of(rhs)
            count += 1
            if gl != gr:
                report["violations"].append({
                    "schema": schema.name, "lhs": str(lhs), "rhs": str(rhs),
                    "graph_lhs": gl.to_dict(), "graph_rhs": gr.to_dict()})
        report["schemas"][schema.name] = count
    report["ok"] = not report["violations"]
    return report


def verify_faithfulness_small(A, B, theory=Theory.SESQUI, max_size=None, max_steps=None):
    """Compare closure classes and graph classes on all cut-free terms ``A -> B``."""
    from dcat.decide import enumerate_cut_free
    theory = Theory.parse(theory)
    terms = enumerate_cut_free(A, B, theory)
    report = {"source": print_formula(A), "target": print_formula(B),
              "theory": theory.value, "terms": len(terms)}
    if not terms:
        report.update(graph_classes=0, closure_classes=0, soundness_violations=[],
                      unconnected=[], status="empty", ok=True)
        return report
    graphs = [graph_of(t) for t in terms]
    distinct = len(set(graphs))
    res = equational_closure(terms, theory, max_size=max_size, max_steps=max_steps,
                             target_classes=distinct)
    unsound = []
    for cl in res.classes:
        if len({graphs[i] for i in cl}) > 1:
            unsound.append([str(terms[i]) for i in cl])
    unconnected = []
    for i in range(len(terms)):
        for j in range(i + 1, len(terms)):
            if graphs[i] == graphs[j] and res.class_of(i) != res.class_of(j):
                unconnected.append({"f": str(terms[i]), "g": str(terms[j]),
                                    "status": "exhausted-budget"})
    report.update(graph_classes=distinct, closure_classes=len(res.classes),
                  soundness_violations=unsound, unconnected=unconnected,
                  status=res.status, expansions=res.expansions,
                  max_size=res.max_size, max_steps=res.max_steps,
                  ok=not unsound and not unconnected)
    return report


def closure_report(res, with_traces=True):
    """JSON-ready summary of a :class:`ClosureResult`."""
    out = {"theory": res.theory.value, "status": res.status,
           "expansions": res.expansions, "max_size": res.max_size,
           "max_steps": res.max_steps,
           "classes": [[str(res.terms[i]) for i in cl] for cl in res.classes]}
    if with_traces:
        traces = []
        for cl in res.classes:
            for j in cl[1:]:
                tr = res.trace(cl[0], j)
                traces.append({"from": str(res.terms[cl[0]]), "to": str(res.terms[j]),
                               "steps": [s.to_dict() for s in tr]})
        out["traces"] = traces
    return out


def dumps(report):
    return json.dumps(report, indent=2)
