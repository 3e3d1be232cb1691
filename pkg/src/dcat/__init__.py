"""Free sesquicartesian and dicartesian categories: terms, graphs, normal forms
and equality decisions."""

from dcat.classify import (classify_constant, is_contradiction, is_i_normal,
                           is_o_normal, is_tautology)
from dcat.decide import (Verdict, counterexample_family, decide_equal,
                         enumerate_cut_free, enumerate_homset)
from dcat.errors import (DcatError, DimensionMismatch, NotConstant, ParseError,
                         TheoryViolation, TypeMismatch)
from dcat.graphical import Relation, compose, graph_of
from dcat.rewrite import cut_eliminate, factorize, kl_normalize
from dcat.syntax import (I, O, Formula, Letter, Product, Sum, Term, Theory,
                         letter_count, parse_formula, parse_term, print_formula,
                         print_term, term, typecheck)

__version__ = "0.1.0"

__all__ = [
    "DcatError",
    "DimensionMismatch",
    "Formula",
    "I",
    "Letter",
    "NotConstant",
    "O",
    "ParseError",
    "Product",
    "Relation",
    "Sum",
    "Term",
    "Theory",
    "TheoryViolation",
    "TypeMismatch",
    "Verdict",
    "classify_constant",
    "compose",
    "counterexample_family",
    "cut_eliminate",
    "decide_equal",
    "enumerate_cut_free",
    "enumerate_homset",
    "factorize",
    "graph_of",
    "is_contradiction",
    "is_i_normal",
    "is_o_normal",
    "is_tautology",
    "kl_normalize",
    "letter_count",
    "parse_formula",
    "parse_term",
    "print_formula",
    "print_term",
    "term",
    "typecheck",
]
