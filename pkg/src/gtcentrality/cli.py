"""Command-line front end.

Exit codes: 0 success, 2 usage error or missing file, 3 malformed input,
4 exhaustive solver above its size limit.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Sequence, TextIO

from . import __version__
from .betweenness import SizeDistribution, group_betweenness_game, semivalue_betweenness, svb, wsb, wsvb
from .community import coalitional_semivalue_degree, owen_degree, preset_for, weighted_degree_game
from .connectivity import (
    GENERAL_LIMIT,
    ConnectivityGame,
    approximate_svcg,
    faster_svcg,
    general_sv_connectivity,
)
from .degree import DegreeGameSpec, degree_game, sv_degree_game
from .games import OrderedGame, SizeLimitError, banzhaf_beta
from .gmcnets import (
    RuleFormatError,
    comp_nr,
    comp_sb,
    generalized_betweenness,
    parse_rules,
    path_betweenness_game,
    ruleset_game,
)
from .graph import (
    CommunityStructure,
    Graph,
    GraphFormatError,
    classic_centrality,
    parse_communities,
    parse_edge_list,
    parse_node_weights,
)
from .oracles import exact_solution
from .result import CentralityResult
from .vulnerability import (
    FailureModel,
    ProtectionStrategy,
    csv_row,
    interval_pd,
    simulate_failures,
    write_rows,
)

EXIT_OK, EXIT_USAGE, EXIT_FORMAT, EXIT_LIMIT = 0, 2, 3, 4

MEASURES = (
    "degree", "closeness", "betweenness", "sv-g1", "sv-g2", "sv-g3", "sv-g4", "sv-g5",
    "svb", "semivalue-b", "owen-degree", "coalitional-semivalue",
)
ORACLE_GAMES = ("g1", "g2", "g3", "g4", "group-betweenness", "connectivity", "weighted-degree",
                "rules", "path-betweenness")


class UsageError(Exception):
    """Bad flag combination or value discovered after argument parsing."""


class MissingFile(Exception):
    pass


def _read(path: str) -> str:
    if not os.path.isfile(path):
        raise MissingFile(f"no such file: {path}")
    with open(path, encoding="utf-8") as handle:
        return handle.read()


def _load_graph(args) -> Graph:
    if not args.graph:
        raise UsageError("--graph is required")
    weights = parse_node_weights(_read(args.node_weights)) if args.node_weights else None
    return parse_edge_list(_read(args.graph), directed=args.directed, node_weights=weights)


def _load_communities(args, G: Graph) -> CommunityStructure:
    if not args.communities:
        raise UsageError("--communities is required for this measure")
    return parse_communities(_read(args.communities), G)


def _load_rules(source: str):
    if os.path.isfile(source):
        return parse_rules(_read(source))
    if "->" in source:
        return parse_rules(source.replace(";", "\n"))
    raise MissingFile(f"no such file: {source}")


def _pair(text: str, name: str) -> tuple[int, int]:
    try:
        a, b = (int(x) for x in text.split(","))
    except ValueError:
        raise UsageError(f"{name} expects 'a,b', got {text!r}") from None
    return a, b


def _size_distribution(spec: str | None, n: int) -> SizeDistribution:
    if spec is None or spec == "shapley":
        return SizeDistribution.uniform(n)
    if spec == "banzhaf":
        return SizeDistribution(banzhaf_beta(n))
    if spec.startswith("interval:"):
        a, b = _pair(spec[len("interval:"):], "--pd")
        try:
            return interval_pd(a, b, n)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
    raise UsageError(f"unknown --pd {spec!r} (use shapley, banzhaf or interval:a,b)")


def _distance_function(spec: str | None):
    """``inv`` is 1/(1+d), ``step:c`` is 1 up to distance c, ``exp:b`` is b^-d."""
    spec = spec or "inv"
    if spec == "inv":
        return lambda d: 1.0 / (1.0 + d)
    kind, _, raw = spec.partition(":")
    try:
        x = float(raw)
    except ValueError:
        raise UsageError(f"bad --f {spec!r}") from None
    if kind == "step":
        return lambda d: 1.0 if d <= x else 0.0
    if kind == "exp" and x > 1:
        return lambda d: x ** -d
    raise UsageError(f"unknown --f {spec!r} (use inv, step:c or exp:b with b > 1)")


def _preset(spec: str | None, CS: CommunityStructure):
    spec = spec or "owen"
    names = {"owen": "owen", "banzhaf": "owen_banzhaf", "sym-banzhaf": "sym_banzhaf"}
    if spec in names:
        return preset_for(names[spec], CS)
    if spec.startswith("p-binomial:"):
        try:
            p = float(spec.split(":", 1)[1])
        except ValueError:
            raise UsageError(f"bad --preset {spec!r}") from None
        return preset_for("p_binomial", CS, p)
    raise UsageError(f"unknown --preset {spec!r}")


def _uniform(value, n: int, name: str, cast=float):
    if value is None:
        raise UsageError(f"{name} is required for this measure")
    return tuple([cast(value)] * n)


def _degree_spec(args, G: Graph) -> DegreeGameSpec:
    game = args.measure.removeprefix("sv-") if args.measure.startswith("sv-") else args.game
    if game == "g2":
        return DegreeGameSpec("g2", k=_uniform(args.k, G.n, "--k", int))
    if game == "g3":
        return DegreeGameSpec("g3", cutoff=_uniform(args.cutoff, G.n, "--cutoff"))
    if game == "g4":
        return DegreeGameSpec("g4", f=_distance_function(args.f))
    if game == "g5":
        return DegreeGameSpec("g5", w_cutoff=_uniform(args.cutoff, G.n, "--cutoff"))
    return DegreeGameSpec(game)


def _centrality(args) -> CentralityResult:
    G = _load_graph(args)
    m = args.measure
    if m in ("degree", "closeness", "betweenness"):
        return classic_centrality(G, m)
    if m.startswith("sv-g"):
        spec = _degree_spec(args, G)
        spec.validate(G)
        return sv_degree_game(G, spec)
    if m == "svb":
        return wsvb(G, args.threads) if G.weighted else svb(G, args.threads)
    if m == "semivalue-b":
        pd = _size_distribution(args.pd, G.n)
        return wsb(G, pd, threads=args.threads) if G.weighted else semivalue_betweenness(G, pd, threads=args.threads)
    CS = _load_communities(args, G)
    if m == "owen-degree":
        return owen_degree(G, CS)
    return coalitional_semivalue_degree(G, CS, _preset(args.preset, CS))


def _connectivity_game(args, G: Graph) -> ConnectivityGame:
    return ConnectivityGame(G, args.f.replace("-", "_"))


def _connectivity(args) -> CentralityResult:
    G = _load_graph(args)
    game = _connectivity_game(args, G)
    if args.mode == "exact":
        return general_sv_connectivity(game, args.limit or GENERAL_LIMIT)
    if args.mode == "faster":
        return faster_svcg(game)
    return approximate_svcg(game, args.iters, args.seed)


def _gmcnets(args) -> CentralityResult:
    if args.target == "betweenness":
        return generalized_betweenness(_load_graph(args), args.value)
    if not args.rules:
        raise UsageError("--rules is required")
    RS = _load_rules(args.rules)
    return comp_nr(RS) if args.value == "nr" else comp_sb(RS)


def _oracle(args) -> CentralityResult:
    concept = args.concept
    ordered = concept in ("nr", "sb")
    if args.game == "rules":
        if not args.rules:
            raise UsageError("--rules is required for --game rules")
        RS = _load_rules(args.rules)
        game, labels, CS = ruleset_game(RS), RS.players, None
    else:
        G = _load_graph(args)
        labels = G.labels
        if args.game in ("g1", "g2", "g3", "g4"):
            spec = _degree_spec(args, G)
            spec.validate(G)
            game = degree_game(G, spec)
        elif args.game == "group-betweenness":
            game = group_betweenness_game(G)
        elif args.game == "connectivity":
            game = _connectivity_game(args, G).as_coalition_game()
        elif args.game == "weighted-degree":
            game = weighted_degree_game(G)
        else:
            game = path_betweenness_game(G)
        CS = _load_communities(args, G) if concept in ("owen", "csemi") else None
    if ordered and not isinstance(game, OrderedGame):
        game = OrderedGame.from_set_game(game)
    if not ordered and isinstance(game, OrderedGame):
        raise UsageError(f"--concept {concept} needs a set game, not --game {args.game}")
    kwargs = {"limit": args.limit}
    if concept == "semivalue":
        kwargs["beta"] = _size_distribution(args.pd, game.n).pd
    if concept in ("owen", "csemi"):
        kwargs["CS"] = CS
    if concept == "csemi":
        weights = _preset(args.preset, CS)
        kwargs["beta"], kwargs["alphas"] = weights.beta, weights.alphas
    scores = exact_solution(concept, game, **kwargs)
    return CentralityResult.build(f"oracle-{concept}", labels, scores, {"game": args.game})


def _simulate(args) -> list[dict[str, str]]:
    G = _load_graph(args)
    a, b = _pair(args.interval, "--interval") if args.interval else (1, G.n)
    strategy = _strategy(args.strategy)
    model = FailureModel(a, b, args.trials, args.seed)
    try:
        model.check(G.n)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    rows = []
    for measure in args.rank_by.split(","):
        if measure == "semivalue-b":
            ranking = semivalue_betweenness(G, interval_pd(a, b, G.n))
        elif measure in ("degree", "closeness", "betweenness"):
            ranking = classic_centrality(G, measure)
            if measure == "closeness":
                # Lower total distance means more central.
                ranking = CentralityResult.build("closeness", G.labels, [-x for x in ranking.scores])
        elif measure == "svb":
            ranking = svb(G)
        else:
            raise UsageError(f"unknown --rank-by measure {measure!r}")
        report = simulate_failures(G, ranking, strategy, model)
        rows.append(csv_row((a, b), strategy, measure, report, args.seed))
    return rows


def _strategy(spec: str) -> ProtectionStrategy:
    if spec == "rank-inv-sq":
        return ProtectionStrategy("rank_inverse_square")
    if spec == "full":
        return ProtectionStrategy("full")
    if spec.startswith("top:"):
        try:
            return ProtectionStrategy("top_fraction", float(spec[4:]))
        except ValueError as exc:
            raise UsageError(f"bad --strategy {spec!r}: {exc}") from None
    raise UsageError(f"unknown --strategy {spec!r} (use rank-inv-sq, top:frac or full)")


def format_score(x: float, scale: float) -> str:
    # Round-off residue around an exact zero would otherwise print as noise
    # and make equivalent solvers disagree textually.
    if abs(x) <= 1e-12 * max(1.0, scale):
        x = 0.0
    return f"{x:.12g}"


def write_result(result: CentralityResult, fmt: str, out: TextIO) -> None:
    scale = max((abs(x) for x in result.scores), default=0.0)
    # Sort on the printed value so round-off cannot reorder tied nodes.
    printed = [(label, format_score(score, scale)) for label, score in result]
    rows = sorted(printed, key=lambda row: (-float(row[1]), row[0]))
    if fmt == "csv":
        out.write("node,score\n")
        for label, text in rows:
            out.write(f"{label},{text}\n")
        return
    payload = {
        "metadata": {
            "measure": result.measure,
            "parameters": dict(result.params),
            "seed": result.seed,
            "version": __version__,
        },
        "scores": [{"node": label, "score": float(text)} for label, text in rows],
    }
    json.dump(payload, out, indent=2, default=str)
    out.write("\n")


def _common(p: argparse.ArgumentParser, graph_required: bool = True) -> None:
    p.add_argument("--graph", required=graph_required, help="edge-list file ('u v' or 'u v w' per line)")
    p.add_argument("--directed", action="store_true")
    p.add_argument("--node-weights", help="file of 'node value' lines")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--threads", type=int, default=1)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="gtcentrality", description="Game-theoretic network centrality")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("centrality", help="node scores for one measure")
    _common(p)
    p.add_argument("--measure", choices=MEASURES, required=True)
    p.add_argument("--k", type=int, help="g2 threshold (same for every node)")
    p.add_argument("--cutoff", type=float, help="g3 distance cutoff or g5 weight threshold")
    p.add_argument("--f", help="g4 distance function: inv, step:c or exp:b")
    p.add_argument("--pd", help="size law: shapley, banzhaf or interval:a,b")
    p.add_argument("--communities", help="file of 'node community' lines")
    p.add_argument("--preset", help="owen, banzhaf, sym-banzhaf or p-binomial:p")

    p = sub.add_parser("connectivity", help="Shapley value of a connectivity game")
    _common(p)
    p.add_argument("--f", choices=("unit", "edges-over-weight"), default="unit")
    p.add_argument("--mode", choices=("exact", "faster", "approx"), default="faster")
    p.add_argument("--iters", type=int, default=100000)
    p.add_argument("--limit", type=int, help="raise the exact-mode size limit")

    p = sub.add_parser("gmcnets", help="ordered values of a rule set, or generalized betweenness")
    _common(p, graph_required=False)
    p.add_argument("target", nargs="?", choices=("betweenness",),
                   help="'betweenness' builds the rule set from --graph")
    p.add_argument("--rules", help="rule file, or inline rules separated by ';'")
    p.add_argument("--value", choices=("nr", "sb"), default="nr")

    p = sub.add_parser("simulate", help="node-failure simulation under rank-based protection")
    _common(p)
    p.add_argument("--interval", help="failure-size range a,b meaning [a, b); default 1,n")
    p.add_argument("--strategy", default="rank-inv-sq", help="rank-inv-sq, top:frac or full")
    p.add_argument("--trials", type=int, default=1000)
    p.add_argument("--rank-by", default="semivalue-b,betweenness",
                   help="comma list of ranking measures: semivalue-b, svb, betweenness, degree, closeness")

    p = sub.add_parser("oracle", help="brute-force solution concepts for cross-checks")
    _common(p, graph_required=False)
    p.add_argument("--concept", choices=("sv", "semivalue", "owen", "csemi", "nr", "sb"), required=True)
    p.add_argument("--game", choices=ORACLE_GAMES, default="g1")
    p.add_argument("--rules", help="rule file or inline rules (for --game rules)")
    p.add_argument("--k", type=int)
    p.add_argument("--cutoff", type=float)
    p.add_argument("--f", help="g4 distance function, or connectivity preset")
    p.add_argument("--pd", help="semivalue size law: shapley, banzhaf or interval:a,b")
    p.add_argument("--communities")
    p.add_argument("--preset")
    p.add_argument("--limit", type=int, help="raise the player limit")
    return parser


def _run(args, out: TextIO) -> None:
    if args.command == "oracle":
        if args.game == "connectivity":
            args.f = args.f or "unit"
        args.measure = ""
    if args.command == "simulate":
        rows = _simulate(args)
        if args.format == "csv":
            write_rows(rows, out)
        else:
            json.dump({"metadata": {"seed": args.seed, "version": __version__}, "rows": rows}, out, indent=2)
            out.write("\n")
        return
    handler = {"centrality": _centrality, "connectivity": _connectivity,
               "gmcnets": _gmcnets, "oracle": _oracle}[args.command]
    write_result(handler(args), args.format, out)


def main(argv: Sequence[str] | None = None, out: TextIO | None = None, err: TextIO | None = None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        _run(args, out)
    except MissingFile as exc:
        print(f"error: {exc}", file=err)
        return EXIT_USAGE
    except (GraphFormatError, RuleFormatError) as exc:
        print(f"format error: {exc}", file=err)
        return EXIT_FORMAT
    except SizeLimitError as exc:
        print(f"size limit: {exc}", file=err)
        return EXIT_LIMIT
    except (UsageError, ValueError) as exc:
        print(f"usage error: {exc}", file=err)
        return EXIT_USAGE
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
