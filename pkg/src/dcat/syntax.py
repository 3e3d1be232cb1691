"""Formulas and arrow terms of the free sesquicartesian and dicartesian categories.

Formulas are immutable trees built from letters, the constants ``I`` and ``O``,
products and sums.  Arrow terms use one node class, :class:`Term`, tagged by an
operator name; a term is *raw* until :func:`typecheck` annotates every node with
its source and target.  Concrete syntax::

    F ::= ident | I | O | F * F | F + F | ( F )
    T ::= id{F} | k{F} | l{F} | k1{F,F} | k2{F,F} | l1{F,F} | l2{F,F}
        | w{F} | m{F} | T . T | T * T | T + T | <T, T> | [T, T]
        | K1{F}(T) | K2{F}(T) | L1{F}(T) | L2{F}(T) | ( T )

``*`` binds tighter than ``+`` (both left-associative); on terms ``.`` binds
tighter than both and associates to the right, ``g . f`` meaning g after f.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass, field

from dcat.errors import ParseError, TheoryViolation, TypeMismatch


class Theory(enum.Enum):
    SESQUI = "sesqui"
    DICART = "dicart"

    @classmethod
    def parse(cls, name):
        if isinstance(name, Theory):
            return name
        aliases = {"sesqui": cls.SESQUI, "sesquicartesian": cls.SESQUI,
                   "dicart": cls.DICART, "dicartesian": cls.DICART}
        try:
            return aliases[name.lower()]
        except KeyError:
            raise ValueError(f"unknown theory {name!r}") from None


# ---------------------------------------------------------------------------
# Formulas


class Formula:
    __slots__ = ()

    def __str__(self):
        return print_formula(self)

    def __mul__(self, other):
        return Product(self, other)

    def __add__(self, other):
        return Sum(self, other)


@dataclass(frozen=True, eq=True, repr=False)
class Letter(Formula):
    name: str

    def __post_init__(self):
        if not _IDENT.fullmatch(self.name) or self.name in ("I", "O"):
            raise ValueError(f"bad letter name {self.name!r}")

    def __repr__(self):
        return f"Letter({self.name!r})"


@dataclass(frozen=True, eq=True, repr=False)
class ConstI(Formula):
    def __repr__(self):
        return "I"


@dataclass(frozen=True, eq=True, repr=False)
class ConstO(Formula):
    def __repr__(self):
        return "O"


@dataclass(frozen=True, eq=True, repr=False)
class _Binary(Formula):
    left: Formula
    right: Formula
    _hash: int = field(default=0, compare=False, init=False)

    def __hash__(self):
        h = self._hash
        if not h:
            h = hash((type(self).__name__, self.left, self.right)) or 1
            object.__setattr__(self, "_hash", h)
        return h

    def __repr__(self):
        return f"{type(self).__name__}({self.left!r}, {self.right!r})"


class Product(_Binary):
    __hash__ = _Binary.__hash__


class Sum(_Binary):
    __hash__ = _Binary.__hash__


I = ConstI()
O = ConstO()

_IDENT = re.compile(r"[a-z][A-Za-z0-9]*")


def letter_count(A):
    """Number of letter occurrences in ``A``; letters are numbered left to right."""
    if isinstance(A, Letter):
        return 1
    if isinstance(A, _Binary):
        return letter_count(A.left) + letter_count(A.right)
    return 0


def formula_size(A):
    """Number of nodes (atoms and connectives) of ``A``."""
    if isinstance(A, _Binary):
        return 1 + formula_size(A.left) + formula_size(A.right)
    return 1


def substitute_letters(A, replacement):
    if isinstance(A, Letter):
        return replacement
    if isinstance(A, _Binary):
        return type(A)(substitute_letters(A.left, replacement),
                       substitute_letters(A.right, replacement))
    return A


def contains_i(A):
    if isinstance(A, ConstI):
        return True
    if isinstance(A, _Binary):
        return contains_i(A.left) or contains_i(A.right)
    return False


def letters(A):
    """Letter names of ``A`` in order of occurrence (with repetitions)."""
    if isinstance(A, Letter):
        return [A.name]
    if isinstance(A, _Binary):
        return letters(A.left) + letters(A.right)
    return []


def check_formula(A, theory):
    if theory is Theory.SESQUI and contains_i(A):
        raise TheoryViolation(f"I occurs in {print_formula(A)} under sesqui")


# ---------------------------------------------------------------------------
# Terms

# atomic constructors and the number of formula parameters they carry
ATOMS = {"id": 1, "k": 1, "l": 1, "k1": 2, "k2": 2, "l1": 2, "l2": 2,
         "w": 1, "m": 1}
BINARY = ("comp", "times", "plus")
# Gentzen operations
GENTZEN = ("K1", "K2", "L1", "L2", "pair", "copair")

K_ATOMS = frozenset({"k", "k1", "k2", "w"})
L_ATOMS = frozenset({"l", "l1", "l2", "m"})


class Term:
    """Arrow term node.

    ``forms`` holds formula parameters (two for k1/k2/l1/l2, one for the other
    atoms and for K1/K2/L1/L2), ``args`` the subterms.  ``src`` and ``tgt`` are
    None on raw terms.
    """

    __slots__ = ("op", "forms", "args", "src", "tgt", "_hash")

    def __init__(self, op, forms=(), args=(), src=None, tgt=None):
        self.op = op
        self.forms = tuple(forms)
        self.args = tuple(args)
        self.src = src
        self.tgt = tgt
        self._hash = 0

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, Term):
            return NotImplemented
        return (hash(self) == hash(other) and self.op == other.op
                and self.forms == other.forms and self.args == other.args
                and self.src == other.src and self.tgt == other.tgt)

    def __hash__(self):
        h = self._hash
        if not h:
            h = hash((self.op, self.forms, self.args, self.src, self.tgt)) or 1
            self._hash = h
        return h

    def __setattr__(self, name, value):
        if name != "_hash" and hasattr(self, "_hash"):
            raise AttributeError("Term is immutable")
        object.__setattr__(self, name, value)

    def __repr__(self):
        return f"Term({print_term(self)!r})"

    def __str__(self):
        return print_term(self)

    @property
    def typed(self):
        return self.src is not None

    @property
    def type(self):
        return self.src, self.tgt

    def subterms(self):
        yield self
        for a in self.args:
            yield from a.subterms()

    def strip(self):
        """Raw copy of this term (annotations dropped)."""
        return Term(self.op, self.forms, [a.strip() for a in self.args])


def _prod_parts(A, what):
    if not isinstance(A, Product):
        raise TypeMismatch(f"{what}: expected a product, got {print_formula(A)}")
    return A.left, A.right


def _sum_parts(A, what):
    if not isinstance(A, Sum):
        raise TypeMismatch(f"{what}: expected a sum, got {print_formula(A)}")
    return A.left, A.right


def atom_type(op, forms):
    """Source and target of an atomic term."""
    if op == "id":
        (A,) = forms
        return A, A
    if op == "k":
        (A,) = forms
        return A, I
    if op == "l":
        (A,) = forms
        return O, A
    if op == "w":
        (A,) = forms
        return A, Product(A, A)
    if op == "m":
        (A,) = forms
        return Sum(A, A), A
    A, B = forms
    if op == "k1":
        return Product(A, B), A
    if op == "k2":
        return Product(A, B), B
    if op == "l1":
        return A, Sum(A, B)
    if op == "l2":
        return B, Sum(A, B)
    raise ValueError(f"not an atom: {op}")


def node_type(op, forms, args):
    """Source and target of a node whose children are already typed."""
    if op in ATOMS:
        return atom_type(op, forms)
    if op == "comp":
        g, f = args
        if f.tgt != g.src:
            raise TypeMismatch(
                f"cannot compose {print_term(g)} after {print_term(f)}: "
                f"{print_formula(f.tgt)} != {print_formula(g.src)}")
        return f.src, g.tgt
    if op == "times":
        f, g = args
        return Product(f.src, g.src), Product(f.tgt, g.tgt)
    if op == "plus":
        f, g = args
        return Sum(f.src, g.src), Sum(f.tgt, g.tgt)
    if op == "K1":
        (B,), (f,) = forms, args
        return Product(f.src, B), f.tgt
    if op == "K2":
        (A,), (f,) = forms, args
        return Product(A, f.src), f.tgt
    if op == "L1":
        (B,), (f,) = forms, args
        return f.src, Sum(f.tgt, B)
    if op == "L2":
        (A,), (f,) = forms, args
        return f.src, Sum(A, f.tgt)
    if op == "pair":
        f, g = args
        if f.src != g.src:
            raise TypeMismatch(
                f"pair components have different sources: "
                f"{print_formula(f.src)} and {print_formula(g.src)}")
        return f.src, Product(f.tgt, g.tgt)
    if op == "copair":
        f, g = args
        if f.tgt != g.tgt:
            raise TypeMismatch(
                f"copair components have different targets: "
                f"{print_formula(f.tgt)} and {print_formula(g.tgt)}")
        return Sum(f.src, g.src), f.tgt
    raise ValueError(f"unknown operator {op!r}")


def mk(op, forms=(), args=()):
    """Build a typed node; raises TypeMismatch when the children do not fit."""
    src, tgt = node_type(op, forms, args)
    return Term(op, forms, args, src, tgt)


# typed constructors used throughout the library

def ident(A):
    return Term("id", (A,), (), A, A)


def k(A):
    return Term("k", (A,), (), A, I)


def l(A):
    return Term("l", (A,), (), O, A)


def k1(A, B):
    return Term("k1", (A, B), (), Product(A, B), A)


def k2(A, B):
    return Term("k2", (A, B), (), Product(A, B), B)


def l1(A, B):
    return Term("l1", (A, B), (), A, Sum(A, B))


def l2(A, B):
    return Term("l2", (A, B), (), B, Sum(A, B))


def w(A):
    return Term("w", (A,), (), A, Product(A, A))


def m(A):
    return Term("m", (A,), (), Sum(A, A), A)


def comp(g, f, *rest):
    """``comp(h, g, f)`` is h . g . f."""
    out = (f,) + rest
    result = out[-1]
    for t in reversed((g,) + out[:-1]):
        result = mk("comp", (), (t, result))
    return result


def times(f, g):
    return mk("times", (), (f, g))


def plus(f, g):
    return mk("plus", (), (f, g))


def gk1(B, f):
    return mk("K1", (B,), (f,))


def gk2(A, f):
    return mk("K2", (A,), (f,))


def gl1(B, f):
    return mk("L1", (B,), (f,))


def gl2(A, f):
    return mk("L2", (A,), (f,))


def pair(f, g):
    return mk("pair", (), (f, g))


def copair(f, g):
    return mk("copair", (), (f, g))


def typecheck(t, theory=Theory.DICART):
    """Annotate every node of ``t`` with its type, enforcing the theory's language."""
    theory = Theory.parse(theory)
    args = [typecheck(a, theory) for a in t.args]
    if theory is Theory.SESQUI:
        if t.op == "k":
            raise TheoryViolation("k{...} is not a term of the sesquicartesian theory")
        for A in t.forms:
            check_formula(A, theory)
    return mk(t.op, t.forms, args)


def desugar(t):
    """Replace Gentzen operations by their definitions over primitive constructors."""
    if not t.args:
        return t
    args = [desugar(a) for a in t.args]
    op = t.op
    if op == "K1":
        (f,) = args
        return comp(f, k1(f.src, t.forms[0]))
    if op == "K2":
        (f,) = args
        return comp(f, k2(t.forms[0], f.src))
    if op == "L1":
        (f,) = args
        return comp(l1(f.tgt, t.forms[0]), f)
    if op == "L2":
        (f,) = args
        return comp(l2(t.forms[0], f.tgt), f)
    if op == "pair":
        f, g = args
        return comp(times(f, g), w(f.src))
    if op == "copair":
        f, g = args
        return comp(m(f.tgt), plus(f, g))
    return mk(op, t.forms, args)


def term_size(t):
    """Number of term constructor nodes (formula parameters not counted)."""
    return 1 + sum(term_size(a) for a in t.args)


def is_complex_identity(t):
    """True when every atomic subterm is an identity and no Gentzen node occurs."""
    if t.op == "id":
        return True
    if t.op in BINARY:
        return all(is_complex_identity(a) for a in t.args)
    return False


def is_k_term(t):
    return not any(s.op in L_ATOMS or s.op in ("L1", "L2", "copair")
                   for s in t.subterms())


def is_l_term(t):
    return not any(s.op in K_ATOMS or s.op in ("K1", "K2", "pair")
                   for s in t.subterms())


def check_theory(t, theory):
    """Raise TheoryViolation if the typed term ``t`` leaves the theory's language."""
    theory = Theory.parse(theory)
    if theory is Theory.DICART:
        return
    for s in t.subterms():
        if s.op == "k":
            raise TheoryViolation("k{...} is not a term of the sesquicartesian theory")
        for A in s.forms:
            check_formula(A, theory)
        if s.src is not None:
            check_formula(s.src, theory)
            check_formula(s.tgt, theory)


# ---------------------------------------------------------------------------
# Printing

def print_formula(A, _prec=0):
    # precedence: + is 1, * is 2, atoms 3
    if isinstance(A, Letter):
        return A.name
    if isinstance(A, ConstI):
        return "I"
    if isinstance(A, ConstO):
        return "O"
    if isinstance(A, Product):
        s = f"{print_formula(A.left, 2)} * {print_formula(A.right, 3)}"
        return f"({s})" if _prec > 2 else s
    if isinstance(A, Sum):
        s = f"{print_formula(A.left, 1)} + {print_formula(A.right, 2)}"
        return f"({s})" if _prec > 1 else s
    raise TypeError(f"not a formula: {A!r}")


def print_term(t, _prec=0):
    # precedence: + is 1, * is 2, . is 3, primaries 4
    op = t.op
    if op in ATOMS:
        return f"{op}{{{', '.join(print_formula(A) for A in t.forms)}}}"
    if op in ("K1", "K2", "L1", "L2"):
        return f"{op}{{{print_formula(t.forms[0])}}}({print_term(t.args[0])})"
    if op == "pair":
        return f"<{print_term(t.args[0])}, {print_term(t.args[1])}>"
    if op == "copair":
        return f"[{print_term(t.args[0])}, {print_term(t.args[1])}]"
    g, f = t.args
    if op == "comp":
        s = f"{print_term(g, 4)} . {print_term(f, 3)}"
        return f"({s})" if _prec > 3 else s
    if op == "times":
        s = f"{print_term(g, 2)} * {print_term(f, 3)}"
        return f"({s})" if _prec > 2 else s
    if op == "plus":
        s = f"{print_term(g, 1)} + {print_term(f, 2)}"
        return f"({s})" if _prec > 1 else s
    raise ValueError(f"unknown operator {op!r}")


# ---------------------------------------------------------------------------
# Parsing

_TOKEN = re.compile(r"\s*(?:([A-Za-z][A-Za-z0-9]*)|(.))")


def _tokenize(text):
    toks = []
    pos = 0
    n = len(text)
    while pos < n:
        mt = _TOKEN.match(text, pos)
        if mt is None or mt.end() == pos:
            break
        if mt.group(1) is not None:
            toks.append(("name", mt.group(1), mt.start(1)))
        else:
            ch = mt.group(2)
            if ch not in "*+.(){}<>[],":
                raise ParseError(f"unexpected character {ch!r}", mt.start(2), text)
            toks.append((ch, ch, mt.start(2)))
        pos = mt.end()
    toks.append(("eof", "", len(text)))
    return toks


class _Parser:
    def __init__(self, text):
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self, ahead=0):
        return self.toks[min(self.i + ahead, len(self.toks) - 1)]

    def next(self):
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def expect(self, kind):
        tok = self.next()
        if tok[0] != kind:
            shown = tok[1] or "end of input"
            raise ParseError(f"expected {kind!r}, found {shown!r}", tok[2], self.text)
        return tok

    def error(self, msg, tok=None):
        tok = tok or self.peek()
        return ParseError(msg, tok[2], self.text)

    def finish(self):
        tok = self.peek()
        if tok[0] != "eof":
            raise self.error(f"unexpected {tok[1]!r}")

    # formulas
    def formula(self):
        A = self.formula_product()
        while self.peek()[0] == "+":
            self.next()
            A = Sum(A, self.formula_product())
        return A

    def formula_product(self):
        A = self.formula_atom()
        while self.peek()[0] == "*":
            self.next()
            A = Product(A, self.formula_atom())
        return A

    def formula_atom(self):
        tok = self.next()
        kind, val = tok[0], tok[1]
        if kind == "(":
            A = self.formula()
            self.expect(")")
            return A
        if kind == "name":
            if val == "I":
                return I
            if val == "O":
                return O
            if _IDENT.fullmatch(val):
                return Letter(val)
            raise ParseError(f"bad letter {val!r}", tok[2], self.text)
        raise ParseError(f"expected a formula, found {val or 'end of input'!r}",
                         tok[2], self.text)

    # terms
    def term(self):
        t = self.term_product()
        while self.peek()[0] == "+":
            self.next()
            t = Term("plus", (), (t, self.term_product()))
        return t

    def term_product(self):
        t = self.term_comp()
        while self.peek()[0] == "*":
            self.next()
            t = Term("times", (), (t, self.term_comp()))
        return t

    def term_comp(self):
        t = self.term_atom()
        if self.peek()[0] == ".":
            self.next()
            return Term("comp", (), (t, self.term_comp()))
        return t

    def term_atom(self):
        tok = self.next()
        kind, val = tok[0], tok[1]
        if kind == "(":
            t = self.term()
            self.expect(")")
            return t
        if kind == "<" or kind == "[":
            f = self.term()
            self.expect(",")
            g = self.term()
            self.expect(">" if kind == "<" else "]")
            return Term("pair" if kind == "<" else "copair", (), (f, g))
        if kind == "name":
            if val in ATOMS:
                self.expect("{")
                forms = [self.formula()]
                while self.peek()[0] == ",":
                    self.next()
                    forms.append(self.formula())
                self.expect("}")
                if len(forms) != ATOMS[val]:
                    raise ParseError(f"{val} takes {ATOMS[val]} formula(s)",
                                     tok[2], self.text)
                return Term(val, forms)
            if val in ("K1", "K2", "L1", "L2"):
                self.expect("{")
                A = self.formula()
                self.expect("}")
                self.expect("(")
                f = self.term()
                self.expect(")")
                return Term(val, (A,), (f,))
            raise ParseError(f"unknown constructor {val!r}", tok[2], self.text)
        raise ParseError(f"expected a term, found {val or 'end of input'!r}",
                         tok[2], self.text)


def parse_formula(text):
    p = _Parser(text)
    A = p.formula()
    p.finish()
    return A


def parse_term(text):
    """Parse ``text`` into a raw term; Gentzen operations are kept as written."""
    p = _Parser(text)
    t = p.term()
    p.finish()
    return t


def term(text, theory=Theory.DICART):
    """Parse and typecheck in one go."""
    return typecheck(parse_term(text), theory)
