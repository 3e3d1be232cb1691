import json
import random

import pytest
from hypothesis import given, strategies as st

from conftest import terms
from dcat.graphical import Relation, graph_of
from dcat.oracle import (SCHEMAS, canonical, closure_report, equational_closure,
                         instantiate, random_term, replay, rewrites, schemas_for,
                         to_term, verify_faithfulness_small, verify_soundness)
from dcat.syntax import Letter, contains_i, parse_formula, term

F = parse_formula
p = Letter("p")


def test_kw1_closure():
    res = equational_closure([term("k1{p,p} . w{p}"), term("id{p}")])
    assert res.classes == [[0, 1]]
    tr = res.trace(0, 1)
    assert tr and replay(tr)


def test_graph_distinct_never_merge():
    res = equational_closure([term("id{O*p}"), term("l{O*p} . k1{O,p}")], max_steps=2000)
    assert res.classes == [[0], [1]]
    assert res.pair_status(0, 1) == "exhausted-budget"
    assert res.trace(0, 1) is None


def test_singleton():
    res = equational_closure([term("id{p}")])
    assert res.classes == [[0]]


def test_mixed_types_rejected():
    with pytest.raises(ValueError):
        equational_closure([term("id{p}"), term("id{q}")])


def test_longer_trace_replays():
    f, g = term("(m{p}*m{p}) . w{p+p}"), term("m{p*p} . (w{p}+w{p})")
    h = term("w{p} . m{p}")
    res = equational_closure([f, g, h], "sesqui")
    assert len(res.classes) == 1
    for i in range(3):
        for j in range(3):
            tr = res.trace(i, j)
            assert replay(tr)
            if tr:
                first, last = tr[0], tr[-1]
                start = first.result if first.reversed else first.source
                end = last.source if last.reversed else last.result
                assert start == res.starts[i] and end == res.starts[j]


def test_report_is_json():
    res = equational_closure([term("k1{p,p} . w{p}"), term("id{p}")])
    rep = json.loads(json.dumps(closure_report(res)))
    assert rep["traces"][0]["steps"][0]["schema"] == "kw1"


def test_random_term_fallbacks():
    assert random_term(p, 1, "sesqui", 3) == term("id{p}")
    for seed in range(10):
        assert random_term(None, 0, "dicart", seed).op == "id"


@given(st.integers(0, 2**32 - 1))
def test_random_term_sesqui_filter(seed):
    t = random_term(None, 8, "sesqui", seed)
    assert all(s.op != "k" for s in t.subterms())
    assert not any(contains_i(A) for s in t.subterms() for A in (s.src, s.tgt))


@given(st.integers(0, 2**32 - 1), st.sampled_from(["sesqui", "dicart"]))
def test_random_term_deterministic(seed, theory):
    assert random_term(None, 8, theory, seed) == random_term(None, 8, theory, seed)


def test_schema_registry():
    names = [s.name for s in SCHEMAS]
    assert len(names) == 24 and len(set(names)) == 24
    assert len([s for s in SCHEMAS if not s.derived]) == 18
    sesqui = {s.name for s in schemas_for("sesqui")}
    assert "k" not in sesqui and "lI" not in sesqui and "kO" in sesqui


@pytest.mark.parametrize("name", ["x2", "kO", "lm2"])
def test_soundness_examples(name):
    rep = verify_soundness(30, 4, "sesqui", 11, schemas=[name])
    assert rep["ok"] and rep["schemas"][name] == 30


def test_ko_graphs_empty():
    lhs, rhs = instantiate(SCHEMAS[[s.name for s in SCHEMAS].index("kO")], random.Random(0))
    assert graph_of(lhs) == graph_of(rhs) == Relation(0, 0)


def test_soundness_deterministic():
    assert verify_soundness(10, 4, "dicart", 5) == verify_soundness(10, 4, "dicart", 5)


@pytest.mark.parametrize("A, B, classes", [("p*p", "p", 2), ("O", "O", 1), ("p", "p", 1)])
def test_faithfulness_examples(A, B, classes):
    rep = verify_faithfulness_small(F(A), F(B), "sesqui")
    assert rep["ok"]
    assert rep["graph_classes"] == rep["closure_classes"] == classes


@given(st.sampled_from([s for s in SCHEMAS]), st.integers(0, 2**32 - 1),
       st.sampled_from(["sesqui", "dicart"]))
def test_schema_instances_typecheck(schema, seed, theory):
    if theory == "sesqui" and not schema.sesqui:
        return
    lhs, rhs = instantiate(schema, random.Random(seed), theory)
    assert lhs.type == rhs.type
    text = (str(lhs), str(rhs))
    assert term(text[0], theory) == lhs and term(text[1], theory) == rhs


@given(terms("dicart", 8))
def test_each_move_is_sound(t):
    c = canonical(t)
    g = graph_of(t)
    for step, u in rewrites(c, "dicart"):
        v = to_term(u)
        assert v.type == t.type
        assert graph_of(v) == g


@given(terms("sesqui", 6))
def test_sesqui_moves_stay_in_theory(t):
    for step, u in rewrites(canonical(t), "sesqui"):
        v = to_term(u)
        assert all(s.op != "k" for s in v.subterms())
        assert not contains_i(v.src) and not contains_i(v.tgt)


@given(terms("sesqui", 6), st.integers(0, 2**32 - 1))
def test_closure_classes_sound(t, seed):
    # neighbours of a random term, found by a short walk, must share its graph
    rng = random.Random(seed)
    cur = canonical(t)
    walk = [t]
    for _ in range(4):
        moves = list(rewrites(cur, "sesqui"))
        if not moves:
            break
        _, cur = rng.choice(moves)
        walk.append(to_term(cur))
    res = equational_closure(walk, "sesqui", max_steps=200)
    for cl in res.classes:
        assert len({graph_of(walk[i]) for i in cl}) == 1
        for j in cl[1:]:
            assert replay(res.trace(cl[0], j), "sesqui")
