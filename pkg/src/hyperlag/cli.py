"""Command-line interface: ``hyperlag <command> ...``.

Exit codes: 0 success (free, verified), 1 contains or violated, 2 usage or
parameter error, 3 I/O or parse error.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from pathlib import Path

from .claims import VIOLATED, format_table, run_battery
from .errors import HypergraphError, ParseError
from .freeness import contains, extension
from .hypergraph import FAMILIES, FamilySpec, construct
from .io import format_hg, read_graph, to_jsonable, write_graph
from .lagrangian import MaximizeConfig, closed_form_lambda, is_dense, maximize
from .search import SearchBudget, search, write_report

EXIT_OK, EXIT_FOUND, EXIT_USAGE, EXIT_IO = 0, 1, 2, 3
DEFAULT_SEED = 0

# positional parameter names per family, in command-line order
FAMILY_PARAMS = {
    "complete": ("r", "t"),
    "complete-minus-edge": ("r", "t"),
    "star": ("t",),
    "s2n": ("n",),
    "linear-path": ("r", "length"),
    "matching": ("r", "size"),
    "single-edge": ("r",),
    "nonperfect": ("t",),
    "nonperfect-witness": ("t",),
}


@dataclass
class RunConfig:
    command: str
    input_paths: list[str] = field(default_factory=list)
    output_path: str | None = None
    seed: int = DEFAULT_SEED
    starts: int = 64
    tol: float = 1e-9
    json: bool = False

    @classmethod
    def from_args(cls, args: argparse.Namespace) -> RunConfig:
        paths = [p for p in [getattr(args, "graph", None)] if p] + list(getattr(args, "forbidden", []) or [])
        return cls(args.command, paths, getattr(args, "out", None), args.seed, args.starts, args.tol, args.json)

    def maximize_config(self) -> MaximizeConfig:
        return MaximizeConfig(starts=self.starts, seed=self.seed, tol=self.tol)


def _truncate(x: float, digits: int = 8) -> str:
    s = f"{x:.{digits + 4}f}"
    return s[: s.index(".") + digits + 1]


def _emit(cfg: RunConfig, data: dict, text: str) -> None:
    if cfg.json:
        print(json.dumps(to_jsonable(data), ensure_ascii=False))
    else:
        print(text)


def cmd_lambda(args, cfg: RunConfig) -> int:
    G = read_graph(args.graph)
    res = maximize(G, cfg.maximize_config())
    exact = closed_form_lambda(G)
    data = {"value": res.value, "exact": exact, **{k: v for k, v in res.to_dict().items() if k != "value"}}
    if exact is not None and exact == 0:
        head = "0"
    elif exact is not None:
        head = f"{exact.numerator}/{exact.denominator} ≈ {_truncate(float(exact))}" if exact.denominator != 1 else str(exact)
    else:
        head = f"{res.value:.12g}"
    vec = " ".join(f"{w:.8g}" for w in res.vector.weights)
    _emit(cfg, data, f"{head}\nvector: {vec}\nkkt residual: {res.kkt_residual:.3g}")
    return EXIT_OK


def _parse_family_params(family: str, raw: list[str]) -> dict:
    names = FAMILY_PARAMS.get(family, ())
    params: dict = {}
    positional = []
    for tok in raw:
        if "=" in tok:
            k, v = tok.split("=", 1)
            params[k] = int(v)
        else:
            positional.append(int(tok))
    if len(positional) > len(names):
        raise HypergraphError(f"family {family!r} takes parameters {names or '()'}")
    params.update(zip(names, positional))
    return params


def cmd_construct(args, cfg: RunConfig) -> int:
    try:
        params = _parse_family_params(args.family, args.params)
    except ValueError as exc:
        if isinstance(exc, HypergraphError):
            raise
        raise HypergraphError(f"bad parameter: {exc}") from None
    G = construct(FamilySpec(args.family, params))
    if cfg.output_path:
        write_graph(G, cfg.output_path)
    if cfg.json:
        _emit(cfg, G.to_dict(), "")
    elif not cfg.output_path:
        sys.stdout.write(format_hg(G))
    else:
        print(f"wrote {cfg.output_path}: {G.vertex_count} vertices, {len(G)} edges")
    return EXIT_OK


def cmd_free(args, cfg: RunConfig) -> int:
    G = read_graph(args.graph)
    family = [read_graph(p) for p in args.forbidden]
    for path, F in zip(args.forbidden, family):
        w = contains(G, F)
        if not w.free:
            _emit(cfg, {"free": False, "member": path, **w.to_dict()},
                  json.dumps({"free": False, "member": path, **w.to_dict()}))
            return EXIT_FOUND
    _emit(cfg, {"free": True}, "free")
    return EXIT_OK


def cmd_extend(args, cfg: RunConfig) -> int:
    E = extension(read_graph(args.graph))
    if cfg.output_path:
        write_graph(E, cfg.output_path)
    if cfg.json:
        _emit(cfg, E.to_dict(), "")
    elif not cfg.output_path:
        sys.stdout.write(format_hg(E))
    else:
        print(f"wrote {cfg.output_path}: {E.vertex_count} vertices, {len(E)} edges")
    return EXIT_OK


def cmd_search(args, cfg: RunConfig) -> int:
    family = [read_graph(p) for p in args.forbidden]
    budget = SearchBudget(iterations=args.budget, restarts=args.restarts, seed=cfg.seed, workers=args.workers)
    rep = search(family, args.n, budget)
    out = Path(cfg.output_path or ".")
    out.mkdir(parents=True, exist_ok=True)
    data = write_report(rep, out / f"search_n{args.n}.json", out / f"search_n{args.n}_best.hg")
    _emit(cfg, data, f"{rep.verdict}: best lambda {rep.best_lambda:.10g} vs target {rep.target} "
                     f"({float(rep.target):.10g}), {len(rep.best_graph)} edges on n={rep.n}")
    return EXIT_OK


def cmd_dense(args, cfg: RunConfig) -> int:
    tol = args.tol if args.tol_given else 1e-7
    verdict = is_dense(read_graph(args.graph), tol=tol, config=cfg.maximize_config())
    witness = verdict.witness_edge or verdict.witness_vertex
    text = verdict.status + (f" (witness {witness})" if witness else "")
    _emit(cfg, verdict.to_dict(), text)
    return EXIT_OK


def cmd_verify(args, cfg: RunConfig) -> int:
    results = run_battery(args.scope, workers=args.workers)
    _emit(cfg, [r.to_dict() for r in results], format_table(results))
    return EXIT_FOUND if any(r.status == VIOLATED for r in results) else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--seed", type=int, default=DEFAULT_SEED)
    common.add_argument("--starts", type=int, default=64, help="optimizer starts")
    common.add_argument("--tol", type=float, default=None, help="KKT / density tolerance")
    common.add_argument("--out", default=None, help="output file or directory")

    p = argparse.ArgumentParser(prog="hyperlag", description="Lagrangians of uniform hypergraphs")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("lambda", parents=[common], help="maximize the Lagrangian")
    s.add_argument("graph")
    s.set_defaults(func=cmd_lambda)

    s = sub.add_parser("construct", parents=[common], help="write a named construction")
    s.add_argument("family", choices=FAMILIES)
    s.add_argument("params", nargs="*", help="positional values or key=value")
    s.set_defaults(func=cmd_construct)

    s = sub.add_parser("free", parents=[common], help="test G for copies of each forbidden graph")
    s.add_argument("graph")
    s.add_argument("forbidden", nargs="*")
    s.set_defaults(func=cmd_free)

    s = sub.add_parser("extend", parents=[common], help="cover uncovered pairs with fresh edges")
    s.add_argument("graph")
    s.set_defaults(func=cmd_extend)

    s = sub.add_parser("search", parents=[common], help="hill-climb for F-free graphs with large Lagrangian")
    s.add_argument("forbidden", nargs="+")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--budget", type=int, default=SearchBudget.iterations, help="moves per restart")
    s.add_argument("--restarts", type=int, default=SearchBudget.restarts)
    s.add_argument("--workers", type=int, default=1)
    s.set_defaults(func=cmd_search)

    s = sub.add_parser("dense", parents=[common], help="edge-deletion density scan")
    s.add_argument("graph")
    s.set_defaults(func=cmd_dense)

    s = sub.add_parser("verify", parents=[common], help="run the claims battery")
    s.add_argument("--scope", default="all", help='claim ids, comma or space separated; "all" or ""')
    s.add_argument("--workers", type=int, default=1)
    s.set_defaults(func=cmd_verify)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    args.tol_given = args.tol is not None
    if args.tol is None:
        args.tol = 1e-9
    cfg = RunConfig.from_args(args)
    try:
        return args.func(args, cfg)
    except (ParseError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except (HypergraphError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
