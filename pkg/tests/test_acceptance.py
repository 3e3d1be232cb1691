"""Acceptance criteria 1-10, one test each.

Run under pytest (a summary line per criterion is printed at the end) or
directly with ``python tests/test_acceptance.py``.
"""

import random
import sys
import time
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

from corpus import corpus, formulas as corpus_formulas, SESQUI_ATOMS  # noqa: E402
from dcat.classify import classify_constant, is_i_normal, is_o_normal  # noqa: E402
from dcat.decide import (EMPTY_GRAPHS, EQUAL, O_NORMAL_SOURCE, UNKNOWN,  # noqa: E402
                         counterexample_family, decide_equal, enumerate_cut_free,
                         enumerate_homset, family_i, family_o)
from dcat.graphical import Relation, compose, graph_of  # noqa: E402
from dcat.oracle import (SCHEMAS, instantiate, random_formula, random_term,  # noqa: E402
                         verify_faithfulness_small)
from dcat.rewrite import cut_eliminate, factorize, is_cut_free, kl_normalize  # noqa: E402
from dcat.syntax import (I, O, Letter, comp, ident, is_k_term, is_l_term,  # noqa: E402
                         letter_count, parse_formula, print_term, term, term_size)

GENTZEN_OUTPUT = {"id", "k", "l", "K1", "K2", "L1", "L2", "pair", "copair"}


def criterion_1():
    t0 = time.perf_counter()
    checks = [
        letter_count(parse_formula("(p*(q+p))+(I*p)")) == 4,
        graph_of(term("id{O*p}")) == Relation(1, 1, ((0, 0),)),
        graph_of(term("l{O*p} . k1{O,p}")) == Relation(1, 1),
        [print_term(f) for f in factorize(term("(k1{a,b} * l1{c,d}) + (w{e} + l{f})"))] == [
            "id{a} * l1{c, d} + (id{e * e} + l{f})",
            "k1{a, b} * id{c} + (w{e} + id{O})"],
    ]
    dt = time.perf_counter() - t0
    return all(checks) and dt < 1, f"{sum(checks)}/4 golden values, {dt * 1000:.1f} ms"


def criterion_2():
    t0 = time.perf_counter()
    failures = 0
    for i in range(1000):
        theory = "sesqui" if i % 2 == 0 else "dicart"
        f = random_term(None, 6, theory, 2 * i)
        g = random_term(f.tgt, 5, theory, 2 * i + 1)
        h = comp(g, f)
        assert term_size(h) <= 12
        if graph_of(h) != compose(graph_of(g), graph_of(f)):
            failures += 1
    dt = time.perf_counter() - t0
    return failures == 0 and dt < 10, f"1000 pairs, {failures} failures, {dt:.2f} s"


def criterion_3():
    t0 = time.perf_counter()
    failures = instances = 0
    rng = random.Random(2024)
    for schema in SCHEMAS:
        theories = ["dicart"] + (["sesqui"] if schema.sesqui else [])
        for theory in theories:
            for _ in range(100):
                lhs, rhs = instantiate(schema, rng, theory)
                instances += 1
                if graph_of(lhs) != graph_of(rhs):
                    failures += 1
    dt = time.perf_counter() - t0
    return (failures == 0 and dt < 30,
            f"{len(SCHEMAS)} schemas, {instances} instances, {failures} failures, {dt:.2f} s")


def criterion_4():
    t0 = time.perf_counter()
    failures = total = steps = 0
    for dicart in (False, True):
        for t in corpus(7, dicart):
            total += 1
            trace = []
            c = cut_eliminate(t, trace)
            steps += len(trace)
            ok = (is_cut_free(c) and {s.op for s in c.subterms()} <= GENTZEN_OUTPUT
                  and c.type == t.type and graph_of(c) == graph_of(t)
                  and all(s.decreasing for s in trace))
            if not dicart:
                ok = ok and all(s.op != "k" for s in c.subterms())
            failures += not ok
    dt = time.perf_counter() - t0
    return (failures == 0 and dt < 60,
            f"{total} terms, {steps} reduction steps, {failures} failures, {dt:.2f} s")


def criterion_5():
    t0 = time.perf_counter()
    failures = total = 0
    for dicart in (False, True):
        for t in corpus(7, dicart):
            total += 1
            d = kl_normalize(t)
            ok = (is_k_term(d.k_part) and is_l_term(d.l_part) and d.term.type == t.type
                  and graph_of(d.term) == graph_of(t))
            failures += not ok
    d = kl_normalize(term("w{p} . m{p}"))
    golden = d.k_part == term("w{p + p}") and d.l_part == term("m{p} * m{p}")
    dt = time.perf_counter() - t0
    return (failures == 0 and golden,
            f"{total} terms, {failures} failures, golden pair {'ok' if golden else 'WRONG'}, {dt:.2f} s")


def criterion_6():
    t0 = time.perf_counter()
    expected = {("p", "p"): 1, ("p*p", "p"): 2, ("p", "p+p"): 2, ("O*p", "O*p"): 2}
    got = {}
    for (a, b), n in expected.items():
        A, B = parse_formula(a), parse_formula(b)
        count = enumerate_homset(A, B, "sesqui").count
        closure = verify_faithfulness_small(A, B, "sesqui")["closure_classes"]
        got[(a, b)] = (count, closure)
    ok = all(got[key] == (n, n) for key, n in expected.items())
    dt = time.perf_counter() - t0
    body = ", ".join(f"Hom({a},{b})={c}/{cl}" for (a, b), (c, cl) in got.items())
    return ok and dt < 5, f"{body} (count/closure), {dt:.2f} s"


def criterion_7():
    t0 = time.perf_counter()
    forms = [A for n in (1, 3, 5) for A in corpus_formulas(n, SESQUI_ATOMS)]
    size = {A: n for n in (1, 3, 5) for A in corpus_formulas(n, SESQUI_ATOMS)}
    pairs = mismatched = exhausted = 0
    for A in forms:
        for B in forms:
            if size[A] + size[B] > 7:
                continue
            pairs += 1
            rep = verify_faithfulness_small(A, B, "sesqui")
            if rep["soundness_violations"] or rep["graph_classes"] != rep["closure_classes"]:
                mismatched += 1
            if rep["unconnected"] or rep["status"] == "exhausted-budget":
                exhausted += 1
    dt = time.perf_counter() - t0
    return (mismatched == 0 and exhausted == 0 and dt < 600,
            f"{pairs} formula pairs, {mismatched} mismatches, {exhausted} exhausted, {dt:.2f} s")


def criterion_8():
    t0 = time.perf_counter()
    p = Letter("p")
    ok = True
    for n in range(4):
        f, g = counterexample_family(p, n)
        ok &= (f.src == g.src == family_o(p, n + 1) and f.tgt == g.tgt == family_i(p, n + 1)
               and f != g and graph_of(f) == graph_of(g)
               and not is_o_normal(f.src) and not is_i_normal(f.tgt)
               and decide_equal(f, g, "dicart").verdict == UNKNOWN)
    dt = time.perf_counter() - t0
    return ok and dt < 1, f"n = 0..3, {dt * 1000:.1f} ms"


def criterion_9():
    v = decide_equal(term("(m{p}*m{p}) . w{p+p}"), term("m{p*p} . (w{p}+w{p})"), "dicart")
    pair_ok = (v.verdict, v.justification) == (EQUAL, O_NORMAL_SOURCE)
    rng = random.Random(9)
    failures = 0
    for _ in range(50):
        A = random_formula(rng, rng.randint(0, 4), "dicart", letters=())
        c = classify_constant(A, "dicart")
        for lhs, rhs in ((comp(c.backward, c.forward), ident(A)),
                         (comp(c.forward, c.backward), ident(c.object))):
            r = decide_equal(lhs, rhs, "dicart")
            failures += (r.verdict, r.justification) != (EQUAL, EMPTY_GRAPHS)
    return (pair_ok and failures == 0,
            f"K-L pair {v.verdict}/{v.justification}, 50 constants, {failures} failures")


def criterion_10():
    t0 = time.perf_counter()
    found = enumerate_cut_free(I, O, "dicart")
    dt = time.perf_counter() - t0
    return not found and dt < 1, f"{len(found)} cut-free terms I -> O, {dt * 1000:.1f} ms"


TITLES = {
    1: "golden values",
    2: "functoriality",
    3: "equation soundness",
    4: "cut elimination",
    5: "K-L normalization",
    6: "hom-set counts",
    7: "desk-scale coherence",
    8: "counterexample family",
    9: "restricted dicartesian verdicts",
    10: "derived-step audit",
}


def _line(n, ok, detail):
    return f"criterion {n:2d} {'PASS' if ok else 'FAIL'}  {TITLES[n]}: {detail}"


def _run(n):
    from conftest import ACCEPTANCE
    ok, detail = globals()[f"criterion_{n}"]()
    ACCEPTANCE[n] = _line(n, ok, detail)
    print(ACCEPTANCE[n])
    assert ok, detail


def test_criterion_1():
    _run(1)


def test_criterion_2():
    _run(2)


def test_criterion_3():
    _run(3)


def test_criterion_4():
    _run(4)


def test_criterion_5():
    _run(5)


def test_criterion_6():
    _run(6)


def test_criterion_7():
    _run(7)


def test_criterion_8():
    _run(8)


def test_criterion_9():
    _run(9)


def test_criterion_10():
    _run(10)


if __name__ == "__main__":
    results = [globals()[f"criterion_{n}"]() for n in TITLES]
    for n, (ok, detail) in zip(TITLES, results):
        print(_line(n, ok, detail))
    sys.exit(0 if all(ok for ok, _ in results) else 1)
