"""The ``nnmdl`` command line tool.

Subcommands map one-to-one onto the library layers: ``check`` runs the
tableau, ``oracle`` the bounded model search, ``modelcheck`` evaluates a
formula in a model loaded from JSON, ``translate`` prints the relational
rewriting, ``pantheon`` inspects the logic lattice and ``abstract`` runs
the decision procedure for inputs without modal concepts.  Each command
reads one formula from the named file, written in the text grammar of the
syntax module.

Exit codes are the machine contract: 0 satisfiable / holds, 1
unsatisfiable / fails, 2 budget exhausted, 3 no model within the oracle's
bounds, 64 usage or parse errors, 65 a modal concept fed to ``abstract``.
Verdicts go to standard output; everything diagnostic goes to standard
error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .abstraction import (
    DEFAULT_BUDGET,
    FragmentBudgetExceeded,
    FragmentSat,
    ModalisedConceptPresent,
    sat_no_modal_concepts,
)
from .logics import canonicalize, enumerate_pantheon
from .oracle import Bounds, OracleSat, Signature, sat_by_enumeration
from .semantics import formula_holds, model_from_json, model_to_json
from .syntax import (
    CName,
    RESERVED_NAME,
    agent_indices,
    fragment,
    individuals,
    parse_formula,
    pretty_print,
    role_names,
    to_nnf,
)
from .tableau import BudgetExceeded, Sat, solve, trace
from .translate import dagger, ddagger

__all__ = ["main"]


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse would exit(2); the contract says 64
        raise _UsageError(message)


def _read_formula(path: str, n_agents: int):
    text = Path(path).read_text(encoding="utf-8")
    return parse_formula(text, n_agents=n_agents)


def _inferred_signature(f) -> Signature:
    names = {c.name for c in fragment(to_nnf(f)).concepts if isinstance(c, CName)}
    agents = agent_indices(f)
    return Signature(
        concepts=tuple(sorted(names - {RESERVED_NAME})),
        roles=tuple(sorted(role_names(f))),
        individuals=tuple(individuals(f)),
        agents=max(agents) if agents else 1,
    )


def _cmd_check(args) -> int:
    f = _read_formula(args.file, args.agents)
    res = solve(f, args.logic, budget=args.budget)
    print(f"{res.stats.applications} rule applications", file=sys.stderr)
    if isinstance(res, Sat):
        if args.model_out:
            data = model_to_json(res.model)
            Path(args.model_out).write_text(json.dumps(data, indent=2) + "\n", encoding="utf-8")
        if args.trace:
            print(trace(res.completion))
        print("sat")
        return 0
    if isinstance(res, BudgetExceeded):
        print("budget-exceeded")
        return 2
    print("unsat")
    return 1


def _cmd_oracle(args) -> int:
    f = _read_formula(args.file, args.agents)
    bounds = Bounds(max_worlds=args.max_worlds, max_domain=args.max_domain)
    res = sat_by_enumeration(f, args.logic, bounds, args.mode, sig=_inferred_signature(f))
    if isinstance(res, OracleSat):
        print(f"sat world={res.world} examined={res.examined}")
        return 0
    print(f"no model within bounds (examined {res.examined})", file=sys.stderr)
    print("no-model")
    return 3


def _cmd_modelcheck(args) -> int:
    data = json.loads(Path(args.model).read_text(encoding="utf-8"))
    model = model_from_json(data)
    by_key = {str(w): w for w in model.worlds}
    if args.world not in by_key:
        raise _UsageError(f"world {args.world!r} is not in the model")
    f = _read_formula(args.file, model.agents)
    if formula_holds(model, by_key[args.world], f):
        print("holds")
        return 0
    print("fails")
    return 1


def _cmd_translate(args) -> int:
    f = _read_formula(args.file, args.agents)
    out = dagger(f, args.agents) if args.mode == "dagger" else ddagger(f, args.agents)
    print(pretty_print(out))
    return 0


def _cmd_pantheon(args) -> int:
    if args.action == "list":
        for spec in enumerate_pantheon():
            print(spec.name)
        return 0
    if not args.spec:
        raise _UsageError("pantheon canon needs a SPEC argument")
    print(canonicalize(args.spec).name)
    return 0


def _cmd_abstract(args) -> int:
    f = _read_formula(args.file, args.agents)
    res = sat_no_modal_concepts(f, args.logic, budget=args.budget)
    if isinstance(res, FragmentSat):
        print("sat")
        for name, atom in res.abstraction.sigma:
            print(f"{name} = {pretty_print(atom)}")
        for sub, value in res.valuation.items():
            print(f"{value} {sub}")
        return 0
    if isinstance(res, FragmentBudgetExceeded):
        print("budget-exceeded")
        return 2
    print("unsat")
    return 1


def _add_common(p, budget: bool = True) -> None:
    p.add_argument("--logic", default="E", help="condition letters, e.g. E, EM, EMCN")
    p.add_argument("--agents", type=int, default=1, help="number of agents the parser accepts")
    if budget:
        p.add_argument("--budget", type=int, default=DEFAULT_BUDGET, help="rule application budget")


def _build_parser() -> _Parser:
    parser = _Parser(prog="nnmdl", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="tableau satisfiability")
    _add_common(p)
    p.add_argument("--model-out", metavar="PATH", help="write the model as JSON on sat")
    p.add_argument("--trace", action="store_true", help="print the rule trace on sat")
    p.add_argument("file")
    p.set_defaults(handler=_cmd_check)

    p = sub.add_parser("oracle", help="bounded brute-force search")
    _add_common(p, budget=False)
    p.add_argument("--max-worlds", type=int, default=3)
    p.add_argument("--max-domain", type=int, default=2)
    p.add_argument("--mode", choices=("varying", "constant"), default="varying")
    p.add_argument("file")
    p.set_defaults(handler=_cmd_oracle)

    p = sub.add_parser("modelcheck", help="evaluate a formula in a JSON model")
    p.add_argument("--model", required=True, metavar="PATH")
    p.add_argument("--world", required=True, metavar="ID")
    p.add_argument("file")
    p.set_defaults(handler=_cmd_modelcheck)

    p = sub.add_parser("translate", help="print the relational rewriting")
    p.add_argument("--mode", choices=("dagger", "ddagger"), required=True)
    p.add_argument("--agents", type=int, default=1)
    p.add_argument("file")
    p.set_defaults(handler=_cmd_translate)

    p = sub.add_parser("pantheon", help="inspect the lattice of logics")
    p.add_argument("action", choices=("list", "canon"))
    p.add_argument("spec", nargs="?", help="letter set for canon")
    p.set_defaults(handler=_cmd_pantheon)

    p = sub.add_parser("abstract", help="decide a formula without modal concepts")
    _add_common(p)
    p.add_argument("file")
    p.set_defaults(handler=_cmd_abstract)

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except _UsageError as e:
        print(f"nnmdl: error: {e}", file=sys.stderr)
        return 64
    except SystemExit as e:  # --help
        return 0 if not e.code else 64
    try:
        return args.handler(args)
    except _UsageError as e:
        print(f"nnmdl: error: {e}", file=sys.stderr)
        return 64
    except ModalisedConceptPresent as e:
        print(f"nnmdl: {e}", file=sys.stderr)
        return 65
    except (OSError, ValueError) as e:
        print(f"nnmdl: error: {e}", file=sys.stderr)
        return 64


if __name__ == "__main__":
    raise SystemExit(main())
