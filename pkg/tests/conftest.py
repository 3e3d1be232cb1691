import sys
from pathlib import Path

from hypothesis import settings, strategies as st

sys.path.insert(0, str(Path(__file__).parent))

from dcat.oracle import random_term  # noqa: E402
from dcat.syntax import I, O, Letter, Product, Sum  # noqa: E402

settings.register_profile("default", max_examples=150, deadline=None)
settings.load_profile("default")

ACCEPTANCE = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        terminalreporter.write_line(ACCEPTANCE[n])


def formulas(dicart=False, letters=("p", "q")):
    leaves = [st.sampled_from([Letter(x) for x in letters]), st.just(O)]
    if dicart:
        leaves.append(st.just(I))
    return st.recursive(
        st.one_of(*leaves),
        lambda sub: st.builds(Product, sub, sub) | st.builds(Sum, sub, sub),
        max_leaves=6)


@st.composite
def terms(draw, theory="sesqui", budget=8):
    seed = draw(st.integers(0, 2**32 - 1))
    return random_term(None, draw(st.integers(0, budget)), theory, seed)


@st.composite
def composable(draw, theory="sesqui", budget=6):
    seed = draw(st.integers(0, 2**32 - 1))
    f = random_term(None, budget, theory, seed)
    g = random_term(f.tgt, budget, theory, seed + 1)
    return f, g
