"""Exhaustive typed term corpora for the normalization suites.

The size of a term counts its constructor nodes plus the nodes of every
formula parameter, so ``k1{p, O}`` has size 3 and ``w{p * p}`` size 4.
"""

from functools import lru_cache

from dcat.errors import TypeMismatch
from dcat.syntax import ATOMS, I, O, Letter, Product, Sum, mk

SESQUI_ATOMS = (Letter("p"), O)
DICART_ATOMS = (Letter("p"), O, I)


@lru_cache(maxsize=None)
def formulas(n, atoms):
    if n == 1:
        return atoms
    out = []
    for a in range(1, n - 1):
        for A in formulas(a, atoms):
            for B in formulas(n - 1 - a, atoms):
                out += [Product(A, B), Sum(A, B)]
    return tuple(out)


def _typed(op, forms=(), args=()):
    try:
        return mk(op, forms, args)
    except TypeMismatch:
        return None


@lru_cache(maxsize=None)
def terms(n, atoms, dicart):
    """All well-typed terms of size exactly ``n``."""
    out = []
    for op, arity in ATOMS.items():
        if op == "k" and not dicart:
            continue
        if arity == 1:
            out.extend(t for A in formulas(n - 1, atoms) if (t := _typed(op, (A,))))
        else:
            for a in range(1, n - 1):
                for A in formulas(a, atoms):
                    out.extend(t for B in formulas(n - 1 - a, atoms)
                               if (t := _typed(op, (A, B))))
    for a in range(1, n - 1):
        for f in terms(a, atoms, dicart):
            for g in terms(n - 1 - a, atoms, dicart):
                for op in ("comp", "times", "plus", "pair", "copair"):
                    t = _typed(op, (), (g, f) if op == "comp" else (f, g))
                    if t is not None:
                        out.append(t)
    for a in range(1, n - 1):
        for f in terms(a, atoms, dicart):
            for B in formulas(n - 1 - a, atoms):
                for op in ("K1", "K2", "L1", "L2"):
                    t = _typed(op, (B,), (f,))
                    if t is not None:
                        out.append(t)
    return tuple(out)


def corpus(max_size, dicart):
    atoms = DICART_ATOMS if dicart else SESQUI_ATOMS
    return [t for n in range(1, max_size + 1) for t in terms(n, atoms, dicart)]
