"""Relations between finite ordinals and the functor from terms to them."""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import lru_cache

from dcat.errors import DimensionMismatch
from dcat.syntax import desugar, letter_count


@dataclass(frozen=True)
class Relation:
    """A relation ``dom -> cod``; ``pairs`` is kept sorted."""

    dom: int
    cod: int
    pairs: tuple = ()

    def __post_init__(self):
        pairs = tuple(sorted(set((int(x), int(y)) for x, y in self.pairs)))
        for x, y in pairs:
            if not (0 <= x < self.dom and 0 <= y < self.cod):
                raise ValueError(f"pair {(x, y)} outside {self.dom}->{self.cod}")
        object.__setattr__(self, "pairs", pairs)

    @property
    def empty(self):
        return not self.pairs

    def __str__(self):
        body = ", ".join(f"({x},{y})" for x, y in self.pairs)
        return f"{self.dom}->{self.cod} {{{body}}}"

    def to_dict(self):
        return {"dom": self.dom, "cod": self.cod,
                "pairs": [[x, y] for x, y in self.pairs]}

    def to_json(self):
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, d):
        return cls(d["dom"], d["cod"], tuple(tuple(p) for p in d["pairs"]))

    def to_dot(self, name="G"):
        lines = [f"graph {name} {{", "  rankdir=TB;"]
        lines.append("  { rank=same; " + " ".join(f"s{i};" for i in range(self.dom)) + " }")
        lines.append("  { rank=same; " + " ".join(f"t{j};" for j in range(self.cod)) + " }")
        for x, y in self.pairs:
            lines.append(f"  s{x} -- t{y};")
        lines.append("}")
        return "\n".join(lines) + "\n"


def identity(n):
    return Relation(n, n, tuple((x, x) for x in range(n)))


def compose(g, f):
    """Relational composite ``g . f`` (first ``f``, then ``g``)."""
    if f.cod != g.dom:
        raise DimensionMismatch(f"cannot compose {g.dom}->{g.cod} after {f.dom}->{f.cod}")
    succ = {}
    for y, z in g.pairs:
        succ.setdefault(y, []).append(z)
    return Relation(f.dom, g.cod,
                    tuple((x, z) for x, y in f.pairs for z in succ.get(y, ())))


def shift_union(f, g, dom_shift, cod_shift):
    if dom_shift != f.dom or cod_shift != f.cod:
        raise DimensionMismatch("shift must equal the dimensions of the first relation")
    return Relation(f.dom + g.dom, f.cod + g.cod,
                    f.pairs + tuple((x + dom_shift, y + cod_shift) for x, y in g.pairs))


def graph_of(t):
    """Image of a typed term under the functor into relations."""
    return _graph(desugar(t))


@lru_cache(maxsize=1 << 16)
def _graph(t):
    op = t.op
    if op == "comp":
        g, f = t.args
        return compose(_graph(g), _graph(f))
    if op in ("times", "plus"):
        f, g = t.args
        a, b = _graph(f), _graph(g)
        return shift_union(a, b, a.dom, a.cod)
    n, mm = letter_count(t.src), letter_count(t.tgt)
    if op == "id":
        return identity(n)
    if op in ("k", "l"):
        return Relation(n, mm)
    if op == "k1":
        return Relation(n, mm, tuple((x, x) for x in range(mm)))
    if op == "k2":
        a = n - mm
        return Relation(n, mm, tuple((x + a, x) for x in range(mm)))
    if op == "l1":
        return Relation(n, mm, tuple((x, x) for x in range(n)))
    if op == "l2":
        a = mm - n
        return Relation(n, mm, tuple((x, x + a) for x in range(n)))
    if op == "w":
        return Relation(n, mm, tuple((x, x) for x in range(n))
                        + tuple((x, x + n) for x in range(n)))
    if op == "m":
        return Relation(n, mm, tuple((x, x) for x in range(mm))
                        + tuple((x + mm, x) for x in range(mm)))
    raise ValueError(f"graph_of: unexpected operator {op!r}")
