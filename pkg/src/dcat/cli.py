"""Command-line front end (``dcat`` or ``python -m dcat``).

Exit codes: 0 equal / success, 1 not equal, 2 unknown, 64 usage, parse, type
or theory errors, 70 internal errors.
"""

from __future__ import annotations

import argparse
import json
import sys

from dcat.classify import (classify_constant, contradiction_witness, is_constant,
                           is_contradiction, is_i_normal, is_o_normal,
                           is_tautology, tautology_witness)
from dcat.decide import (EQUAL, NOT_EQUAL, counterexample_family, decide_equal,
                         enumerate_homset)
from dcat.errors import DcatError
from dcat.graphical import graph_of
from dcat.oracle import (closure_report, equational_closure, verify_faithfulness_small,
                         verify_soundness)
from dcat.rewrite import cut_eliminate, kl_normalize
from dcat.syntax import (Theory, check_formula, parse_formula, parse_term,
                         print_formula, typecheck)

EXIT_EQUAL, EXIT_NOT_EQUAL, EXIT_UNKNOWN = 0, 1, 2
EXIT_USAGE = 64
EXIT_INTERNAL = 70


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(message)


def _text(arg):
    if arg.startswith("@"):
        with open(arg[1:], encoding="utf-8") as fh:
            return fh.read().strip()
    return arg


def _term(arg, theory):
    return typecheck(parse_term(_text(arg)), theory)


def _formula(arg, theory):
    A = parse_formula(_text(arg))
    check_formula(A, theory)
    return A


def _emit(obj, out):
    out.write(json.dumps(obj, indent=2) + "\n")


def cmd_check(args, out):
    th = Theory.parse(args.theory)
    v = decide_equal(_term(args.f, th), _term(args.g, th), th)
    _emit(v.to_dict(), out)
    return {EQUAL: EXIT_EQUAL, NOT_EQUAL: EXIT_NOT_EQUAL}.get(v.verdict, EXIT_UNKNOWN)


def cmd_graph(args, out):
    r = graph_of(_term(args.f, Theory.parse(args.theory)))
    if args.format == "dot":
        out.write(r.to_dot())
    elif args.format == "text":
        out.write(str(r) + "\n")
    else:
        _emit(r.to_dict(), out)
    return 0


def cmd_normalize(args, out):
    t = _term(args.f, Theory.parse(args.theory))
    if args.mode == "cut":
        res = {"mode": "cut", "term": str(cut_eliminate(t))}
    else:
        d = kl_normalize(t)
        res = {"mode": "kl", "k_part": str(d.k_part), "l_part": str(d.l_part),
               "term": str(d.term)}
    res["type"] = [print_formula(t.src), print_formula(t.tgt)]
    _emit(res, out)
    return 0


def cmd_homset(args, out):
    th = Theory.parse(args.theory)
    hs = enumerate_homset(_formula(args.A, th), _formula(args.B, th), th)
    _emit(hs.to_dict(listing=args.list), out)
    return 0


def cmd_classify(args, out):
    th = Theory.parse(args.theory)
    A = _formula(args.A, th)
    res = {"formula": print_formula(A), "constant": is_constant(A)}
    if is_constant(A):
        c = classify_constant(A, th)
        res["class"] = {"kind": c.kind, "forward": str(c.forward), "backward": str(c.backward)}
    res["contradiction"] = is_contradiction(A)
    res["tautology"] = is_tautology(A)
    if res["contradiction"]:
        res["contradiction_witness"] = str(contradiction_witness(A))
    if res["tautology"]:
        res["tautology_witness"] = str(tautology_witness(A))
    res["o_normal"] = is_o_normal(A)
    res["i_normal"] = is_i_normal(A)
    _emit(res, out)
    return 0


def cmd_counterexample(args, out):
    base = _formula(args.base, Theory.DICART) if args.base else None
    f, g = counterexample_family(base, args.n)
    _emit({"n": args.n, "source": print_formula(f.src), "target": print_formula(f.tgt),
           "f": str(f), "g": str(g), "graph": graph_of(f).to_dict()}, out)
    return 0


def cmd_oracle(args, out):
    th = Theory.parse(args.theory)
    if args.kind == "soundness":
        rep = verify_soundness(args.samples, args.size_budget, th, args.seed)
        ok = rep["ok"]
    elif args.kind == "faithfulness":
        if len(args.inputs) != 2:
            raise UsageError("oracle faithfulness needs two formulas A B")
        A, B = (_formula(x, th) for x in args.inputs)
        rep = verify_faithfulness_small(A, B, th, max_size=args.size_cap, max_steps=args.budget)
        rep["seed"] = args.seed
        ok = not rep["soundness_violations"]
    else:
        if not args.inputs:
            raise UsageError("oracle closure needs at least one term")
        terms = [_term(x, th) for x in args.inputs]
        res = equational_closure(terms, th, max_size=args.size_cap, max_steps=args.budget)
        rep = closure_report(res)
        rep["seed"] = args.seed
        ok = True
    _emit(rep, out)
    return 0 if ok else EXIT_INTERNAL


def build_parser():
    p = _Parser(prog="dcat", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def theory(sp):
        sp.add_argument("--theory", default="sesqui", choices=["sesqui", "dicart"])

    s = sub.add_parser("check", help="decide f = g")
    s.add_argument("f")
    s.add_argument("g")
    theory(s)
    s.set_defaults(run=cmd_check)

    s = sub.add_parser("graph", help="print the graph of a term")
    s.add_argument("f")
    s.add_argument("--format", default="json", choices=["json", "dot", "text"])
    theory(s)
    s.set_defaults(run=cmd_graph)

    s = sub.add_parser("normalize", help="cut elimination or K-L normal form")
    s.add_argument("f")
    s.add_argument("--mode", default="cut", choices=["cut", "kl"])
    theory(s)
    s.set_defaults(run=cmd_normalize)

    s = sub.add_parser("homset", help="arrows A -> B up to equality")
    s.add_argument("A")
    s.add_argument("B")
    s.add_argument("--list", action="store_true", help="list every cut-free member")
    theory(s)
    s.set_defaults(run=cmd_homset)

    s = sub.add_parser("classify", help="constant, contradiction, tautology, normality flags")
    s.add_argument("A")
    theory(s)
    s.set_defaults(run=cmd_classify)

    s = sub.add_parser("counterexample", help="the dicartesian pair left undecided")
    s.add_argument("--base", default=None)
    s.add_argument("--n", type=int, required=True)
    s.set_defaults(run=cmd_counterexample)

    s = sub.add_parser("oracle", help="brute-force soundness and faithfulness checks")
    s.add_argument("kind", choices=["soundness", "faithfulness", "closure"])
    s.add_argument("inputs", nargs="*", help="A B for faithfulness, terms for closure")
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--samples", type=int, default=100)
    s.add_argument("--size-budget", type=int, default=4, help="size of random instances")
    s.add_argument("--budget", type=int, default=None, help="closure step cap")
    s.add_argument("--size-cap", type=int, default=None, help="closure term size cap")
    theory(s)
    s.set_defaults(run=cmd_oracle)
    return p


def main(argv=None, out=None, err=None):
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        args = build_parser().parse_args(argv)
        if getattr(args, "n", 0) is not None and getattr(args, "n", 0) < 0:
            raise UsageError("--n must be nonnegative")
        return args.run(args, out)
    except (UsageError, DcatError, OSError) as e:
        err.write(f"dcat: error: {e}\n")
        return EXIT_USAGE
    except Exception as e:  # invariant violation
        err.write(f"dcat: internal error: {type(e).__name__}: {e}\n")
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
