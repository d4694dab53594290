"""Command-line interface.

Subcommands: verify, value, reduce, forge, decide, pipeline.
Exit codes for `verify`: 0 = passes, 1 = fails.  For `decide`:
0 = yes, 1 = no, 2 = unknown.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

from . import formats
from .errors import GadgetError
from .gadget import (
    build_hardness_game,
    completeness_certificate,
    derive_params,
    extend_gdoubleprime,
    extend_gprime,
    rescale_game,
)
from .games import regret_report
from .pipeline import PipelineConfig, run_pipeline
from .provers import game_value
from .sat import (
    build_clause_variable_free_game,
    formula_degree,
    incidence_graph,
    parse_dimacs,
    partition_bipartite,
)
from .search import DecisionInstance, decide


def _report_dict(rep) -> dict:
    return {
        "row_regret": str(rep.row_regret),
        "col_regret": str(rep.col_regret),
        "row_pure_regret": str(rep.row_pure_regret),
        "col_pure_regret": str(rep.col_pure_regret),
        "row_payoff": str(rep.row_payoff),
        "col_payoff": str(rep.col_payoff),
        "welfare": str(rep.welfare),
    }


def _emit(data: dict, fmt: str) -> None:
    if fmt == "json":
        print(json.dumps(data, indent=2, sort_keys=True))
    else:
        for key in sorted(data):
            print(f"{key}: {data[key]}")


def cmd_verify(args: argparse.Namespace) -> int:
    game = formats.parse_bgm(Path(args.game).read_text())
    profile = formats.parse_prof(
        Path(args.profile).read_text(), normalize=args.normalize
    )
    eps = Fraction(args.eps)
    rep = regret_report(game, profile)
    if args.mode == "wsne":
        ok = rep.row_pure_regret <= eps and rep.col_pure_regret <= eps
    else:
        ok = rep.row_regret <= eps and rep.col_regret <= eps
    data = _report_dict(rep)
    data["mode"] = args.mode
    data["eps"] = str(eps)
    data["ok"] = ok
    _emit(data, args.format)
    return 0 if ok else 1


def cmd_value(args: argparse.Namespace) -> int:
    game = formats.parse_fgm(Path(args.game).read_text())
    value = game_value(game, budget=args.budget)
    print(str(value))
    return 0


def cmd_reduce(args: argparse.Namespace) -> int:
    formula = parse_dimacs(Path(args.input).read_text())
    partition = partition_bipartite(
        incidence_graph(formula), formula_degree(formula)
    )
    build = build_clause_variable_free_game(
        formula, partition, answer_cap=args.cap
    )
    Path(args.output).write_text(formats.write_fgm(build.game))
    return 0


def cmd_forge(args: argparse.Namespace) -> int:
    params = derive_params(Fraction(args.eps_star))
    if args.what == "build":
        free = formats.parse_fgm(Path(args.input).read_text())
        gg = build_hardness_game(free, params, half_cap=args.cap)
        game = rescale_game(gg) if args.scaled else gg.game
        Path(args.output).write_text(formats.write_bgm(game))
        return 0
    if args.what == "gprime":
        base = formats.parse_bgm(Path(args.input).read_text())
        Path(args.output).write_text(
            formats.write_bgm(extend_gprime(base, params.eps_star))
        )
        return 0
    if args.what == "gdoubleprime":
        base = formats.parse_bgm(Path(args.input).read_text())
        Path(args.output).write_text(formats.write_bgm(extend_gdoubleprime(base)))
        return 0
    if args.what == "cert":
        free = formats.parse_fgm(Path(args.input).read_text())
        s1, s2 = formats.parse_strat(Path(args.strategies).read_text())
        gg = build_hardness_game(free, params, half_cap=args.cap)
        cert = completeness_certificate(gg.free_game, s1, s2, gg)
        Path(args.output).write_text(formats.write_prof(cert))
        return 0
    raise GadgetError(f"unknown forge action {args.what!r}")


def cmd_decide(args: argparse.Namespace) -> int:
    pid = int(args.problem.lstrip("p"))
    game = formats.parse_bgm(Path(args.game).read_text())
    kwargs: dict = {}
    if args.u is not None:
        kwargs["u"] = Fraction(args.u)
    if args.d is not None:
        kwargs["d"] = Fraction(args.d)
    if args.p is not None:
        kwargs["p"] = Fraction(args.p)
    if args.v is not None:
        kwargs["v"] = Fraction(args.v)
    if args.k_param is not None:
        kwargs["k"] = args.k_param
    if args.index_set is not None:
        kwargs["index_set"] = tuple(
            int(t) for t in args.index_set.split(",") if t
        )
    inst = DecisionInstance(
        problem_id=pid, game=game, eps=Fraction(args.eps), **kwargs
    )
    hints = []
    for path in args.hint or ():
        hints.append(formats.parse_prof(Path(path).read_text()))
    outcome = decide(inst, k=args.k, budget=args.budget, hints=hints)
    print(outcome.answer)
    if outcome.witness is not None and args.witness_out:
        Path(args.witness_out).write_text(formats.write_prof(outcome.witness))
    return {"yes": 0, "no": 1, "unknown": 2}[outcome.answer]


def cmd_pipeline(args: argparse.Namespace) -> int:
    cfg = PipelineConfig(
        cnf_path=args.input,
        out_dir=args.out_dir,
        eps_star=Fraction(args.eps_star),
        seed=args.seed,
    )
    report = run_pipeline(cfg)
    if args.format == "json":
        print(json.dumps(report, indent=2, sort_keys=True))
    else:
        print(f"satisfiable: {report['satisfiable']}")
        print(f"omega: {report['omega']}")
        for pid, res in sorted(report["deciders"].items()):
            print(f"{pid}: {res['answer']}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="negadget",
        description="Bimatrix-game hardness gadgets and equilibrium search.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", help="check a profile against a game")
    p.add_argument("game")
    p.add_argument("profile")
    p.add_argument("--eps", required=True)
    p.add_argument("--mode", choices=["ne", "wsne"], default="ne")
    p.add_argument("--normalize", action="store_true")
    p.add_argument("--format", choices=["json", "text"], default="text")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("value", help="brute-force two-prover game value")
    p.add_argument("game")
    p.add_argument("--budget", type=int, default=2**24)
    p.set_defaults(func=cmd_value)

    p = sub.add_parser("reduce", help="3SAT to free game")
    p.add_argument("kind", choices=["sat2free"])
    p.add_argument("input")
    p.add_argument("-o", "--output", required=True)
    p.add_argument("--cap", type=int, default=2**16)
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("forge", help="build and extend gadget games")
    p.add_argument("what", choices=["build", "gprime", "gdoubleprime", "cert"])
    p.add_argument("input")
    p.add_argument("strategies", nargs="?")
    p.add_argument("-o", "--output", required=True)
    p.add_argument("--eps-star", default="31/250")
    p.add_argument("--cap", type=int, default=2**16)
    p.add_argument("--scaled", action="store_true")
    p.set_defaults(func=cmd_forge)

    p = sub.add_parser("decide", help="one of the ten decision problems")
    p.add_argument("problem", choices=[f"p{i}" for i in range(1, 11)])
    p.add_argument("game")
    p.add_argument("--eps", required=True)
    p.add_argument("--u")
    p.add_argument("--d")
    p.add_argument("--p")
    p.add_argument("--v")
    p.add_argument("--k-param", type=int, help="the problem's k parameter")
    p.add_argument("--set", dest="index_set", help="comma-separated row indices")
    p.add_argument("--k", type=int, help="k-uniform enumeration granularity")
    p.add_argument("--budget", type=int, default=2**22)
    p.add_argument("--hint", action="append", help="candidate .prof file")
    p.add_argument("--witness-out")
    p.set_defaults(func=cmd_decide)

    p = sub.add_parser("pipeline", help="run the full reduction on a CNF")
    p.add_argument("input")
    p.add_argument("-o", "--out-dir", required=True)
    p.add_argument("--eps-star", default="31/250")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--format", choices=["json", "text"], default="text")
    p.set_defaults(func=cmd_pipeline)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except GadgetError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
