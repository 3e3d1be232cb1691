"""Constant objects, contradictions, tautologies and the O-/I-normal predicates."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from dcat.errors import NotConstant, TheoryViolation
from dcat.syntax import (I, O, ConstI, ConstO, Letter, Product, Sum, Theory,
                         comp, contains_i, ident, is_complex_identity, k, l,
                         substitute_letters,
                         term, times, plus)

# Isomorphisms between a product or sum of two constants and O or I.
# Key: (connective, left kind, right kind); value: (kind, forward, backward).
ISOMORPHISMS = {
    ("*", "O", "O"): ("O", "k1{O,O}", "w{O}"),
    ("*", "O", "I"): ("O", "k1{O,I}", "(id{O} * k{O}) . w{O}"),
    ("*", "I", "O"): ("O", "k2{I,O}", "(k{O} * id{O}) . w{O}"),
    ("*", "I", "I"): ("I", "k1{I,I}", "(id{I} * k{I}) . w{I}"),
    ("+", "O", "O"): ("O", "m{O} . (id{O} + l{O})", "l1{O,O}"),
    ("+", "I", "O"): ("I", "m{I} . (id{I} + l{I})", "l1{I,O}"),
    ("+", "O", "I"): ("I", "m{I} . (l{I} + id{I})", "l2{O,I}"),
    ("+", "I", "I"): ("I", "m{I}", "l1{I,I}"),
}

_KIND = {"O": O, "I": I}


@dataclass(frozen=True)
class ConstClass:
    kind: str           # "O" or "I"
    forward: object     # A -> kind
    backward: object    # kind -> A

    @property
    def object(self):
        return _KIND[self.kind]


def is_constant(A):
    if isinstance(A, Letter):
        return False
    if isinstance(A, (Product, Sum)):
        return is_constant(A.left) and is_constant(A.right)
    return True


def constant_kind(A):
    """Evaluate a constant object to "O" or "I" (* acts as min, + as max, O < I)."""
    if isinstance(A, ConstO):
        return "O"
    if isinstance(A, ConstI):
        return "I"
    if isinstance(A, Product):
        a, b = constant_kind(A.left), constant_kind(A.right)
        return "I" if a == b == "I" else "O"
    if isinstance(A, Sum):
        a, b = constant_kind(A.left), constant_kind(A.right)
        return "O" if a == b == "O" else "I"
    raise NotConstant(f"{A} contains a letter")


@lru_cache(maxsize=None)
def _table_entry(key):
    kind, fwd, bwd = ISOMORPHISMS[key]
    return kind, term(fwd), term(bwd)


def classify_constant(A, theory=Theory.DICART):
    """Kind of the constant object ``A`` with an isomorphism pair witnessing it."""
    theory = Theory.parse(theory)
    if not is_constant(A):
        raise NotConstant(f"{A} contains a letter")
    if theory is Theory.SESQUI and contains_i(A):
        raise TheoryViolation(f"I occurs in {A} under sesqui")
    return _classify(A)


@lru_cache(maxsize=4096)
def _classify(A):
    if isinstance(A, (ConstO, ConstI)):
        return ConstClass(repr(A), ident(A), ident(A))
    cl, cr = _classify(A.left), _classify(A.right)
    key = ("*" if isinstance(A, Product) else "+", cl.kind, cr.kind)
    kind, fwd, bwd = _table_entry(key)
    if cl.forward.op == "id" and cr.forward.op == "id":
        return ConstClass(kind, fwd, bwd)
    join = times if isinstance(A, Product) else plus
    return ConstClass(kind,
                      comp(fwd, join(cl.forward, cr.forward)),
                      comp(join(cl.backward, cr.backward), bwd))


def _letter_map(A, on_letter):
    if isinstance(A, Letter):
        return on_letter(A)
    if isinstance(A, Product):
        return times(_letter_map(A.left, on_letter), _letter_map(A.right, on_letter))
    if isinstance(A, Sum):
        return plus(_letter_map(A.left, on_letter), _letter_map(A.right, on_letter))
    return ident(A)


def is_contradiction(C):
    return constant_kind(substitute_letters(C, I)) == "O"


def is_tautology(C):
    return constant_kind(substitute_letters(C, O)) == "I"


def contradiction_witness(C):
    """An arrow ``C -> O`` when ``C`` is a contradiction, else None."""
    if not is_contradiction(C):
        return None
    u = _letter_map(C, k)  # C -> C with letters replaced by I
    fwd = _classify(substitute_letters(C, I)).forward
    return fwd if is_complex_identity(u) else comp(fwd, u)


def tautology_witness(C):
    """An arrow ``I -> C`` when ``C`` is a tautology, else None."""
    if not is_tautology(C):
        return None
    v = _letter_map(C, l)  # C with letters replaced by O -> C
    bwd = _classify(substitute_letters(C, O)).backward
    return bwd if is_complex_identity(v) else comp(v, bwd)


def _has_sum(A):
    if isinstance(A, Sum):
        return True
    if isinstance(A, Product):
        return _has_sum(A.left) or _has_sum(A.right)
    return False


def _has_product(A):
    if isinstance(A, Product):
        return True
    if isinstance(A, Sum):
        return _has_product(A.left) or _has_product(A.right)
    return False


def is_o_normal(A):
    """No subformula D*C or C*D with C a contradiction and + inside D."""
    if isinstance(A, (Product, Sum)):
        if isinstance(A, Product):
            if is_contradiction(A.right) and _has_sum(A.left):
                return False
            if is_contradiction(A.left) and _has_sum(A.right):
                return False
        return is_o_normal(A.left) and is_o_normal(A.right)
    return True


def is_i_normal(B):
    """No subformula D+C or C+D with C a tautology and * inside D."""
    if isinstance(B, (Product, Sum)):
        if isinstance(B, Sum):
            if is_tautology(B.right) and _has_product(B.left):
                return False
            if is_tautology(B.left) and _has_product(B.right):
                return False
        return is_i_normal(B.left) and is_i_normal(B.right)
    return True
