"""Command-line front end: generate, solve, verify, bench.

Every solve/bench run prints a single structured record (key=value tokens,
or one JSON object with --json) so downstream tooling can grep or parse it.
Exit codes: 0 ok, 2 usage/parse error, 3 infeasible, 4 budget exceeded,
1 other failure.
"""

from __future__ import annotations

import argparse
import functools
import json
import os
import sys
import time
from fractions import Fraction

from . import gadgets
from .approx import (
    ApproxConfig,
    approximate_radius,
    decide_2center_53,
    decide_3center_74_weighted,
    decide_kcenter_2k,
    decide_kcenter_2l,
    decide_kcenter_32,
    gonzalez_2approx,
    search_upper_bound,
)
from .errors import (
    BudgetExceededError,
    DeciderFailedError,
    GraphFormatError,
    InfeasibleError,
)
from .exact import CenterSolution, cover_radius, exact_k_radius, verify_cover
from .graphs import UNREACHABLE, Graph, VertexSet, load_graph, save_graph

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2
EXIT_INFEASIBLE = 3
EXIT_BUDGET = 4

ALGOS = ("exact", "gonzalez", "c2-53", "k-32", "k-2k", "k-2l", "w3-74")


def _bound_params(algo: str, k: int, l: int | None, M: int) -> tuple[Fraction, Fraction]:
    """Declared (alpha, beta) guarantee of each algorithm."""
    if algo == "exact":
        return Fraction(1), Fraction(0)
    if algo == "gonzalez":
        return Fraction(2), Fraction(0)
    if algo == "c2-53":
        return Fraction(5, 3), Fraction(2, 3)
    if algo == "k-32":
        return Fraction(3, 2), Fraction(1, 2)
    if algo == "k-2k":
        return 2 - Fraction(1, 2 * k - 1), 1 - Fraction(1, 2 * k - 1)
    if algo == "k-2l":
        assert l is not None
        return 2 - Fraction(1, 2 * l), 1 - Fraction(1, 2 * l)
    if algo == "w3-74":
        return Fraction(7, 4), Fraction(M)
    raise ValueError(f"unknown algorithm {algo!r}")


def _solve_one(g: Graph, algo: str, k: int, l: int | None, cfg: ApproxConfig) -> CenterSolution:
    if algo == "exact":
        sol = exact_k_radius(g, k, budget=cfg.budget)
        if sol.radius >= UNREACHABLE:
            raise InfeasibleError(f"{k} centers cannot reach every vertex")
        return sol
    if algo == "gonzalez":
        return gonzalez_2approx(g, k)
    if algo == "c2-53":
        if k != 2:
            raise ValueError("c2-53 is a 2-center algorithm; pass --k 2")
        return approximate_radius(g, 2, decide_2center_53, cfg)
    if algo == "k-32":
        return approximate_radius(g, k, functools.partial(decide_kcenter_32, k=k), cfg)
    if algo == "k-2k":
        return approximate_radius(g, k, functools.partial(decide_kcenter_2k, k=k), cfg)
    if algo == "k-2l":
        if l is None:
            raise ValueError("k-2l needs --ell")
        return approximate_radius(
            g, k, functools.partial(decide_kcenter_2l, k=k, l=l), cfg
        )
    if algo == "w3-74":
        if k != 3:
            raise ValueError("w3-74 is a 3-center algorithm; pass --k 3")
        return approximate_radius(g, 3, decide_3center_74_weighted, cfg)
    raise ValueError(f"unknown algorithm {algo!r}")


def _format_record(fields: dict, as_json: bool) -> str:
    if as_json:
        return json.dumps(fields, separators=(",", ":"))
    return " ".join(f"{key}={val}" for key, val in fields.items())


def run_record(
    g: Graph,
    algo: str,
    k: int,
    l: int | None,
    cfg: ApproxConfig,
    with_exact: bool,
    stable: bool,
    graph_label: str = "-",
) -> dict:
    """One solve run as an ordered record dict."""
    t0 = time.perf_counter()
    sol = _solve_one(g, algo, k, l, cfg)
    elapsed = time.perf_counter() - t0
    record: dict = {
        "algo": algo,
        "graph": graph_label,
        "n": g.n,
        "m": g.m,
        "k": k,
    }
    if l is not None:
        record["ell"] = l
    record["seed"] = cfg.seed
    record["U"] = search_upper_bound(g, k)
    record["radius"] = sol.radius
    if with_exact:
        try:
            exact = exact_k_radius(g, k, budget=cfg.budget).radius
        except BudgetExceededError:
            exact = None
        if exact is not None:
            alpha, beta = _bound_params(algo, k, l, g.weight_bound)
            record["exact"] = exact
            record["bound_satisfied"] = bool(
                Fraction(sol.radius) <= alpha * exact + beta
            )
    if not stable:
        record["elapsed"] = f"{elapsed:.4f}"
    record["centers"] = ",".join(map(str, sol.centers))
    return record


def _make_cfg(args) -> ApproxConfig:
    budget = args.budget
    env = os.environ.get("KCENTER_BUDGET")
    if env is not None:
        budget = int(env)
    return ApproxConfig(
        seed=args.seed,
        omega=args.omega,
        budget=budget,
        trials=args.trials,
    )


def _add_solver_flags(sub) -> None:
    sub.add_argument("--k", type=int, default=2)
    sub.add_argument("--ell", type=int, default=None)
    sub.add_argument("--seed", type=int, default=0)
    sub.add_argument("--trials", type=int, default=1)
    sub.add_argument("--omega", type=float, default=2.372)
    sub.add_argument("--budget", type=int, default=2_000_000)
    sub.add_argument("--json", action="store_true")
    sub.add_argument(
        "--stable-output",
        action="store_true",
        help="omit wall-time so identical seeds reproduce byte-identical records",
    )


def cmd_gen(args) -> int:
    if args.kind == "random":
        params = dict(tok.split("=") for tok in args.params)
        g = gadgets.gen_random_graph(args.family, seed=args.seed, **params)
        save_graph(g, args.out)
        print(f"wrote {args.out} n={g.n} m={g.m}")
        return EXIT_OK

    if args.setcover:
        sc = gadgets.parse_setcover(_read(args.setcover))
    elif args.ov:
        sc = gadgets.ov_to_setcover(gadgets.parse_ov(_read(args.ov)))
    else:
        print("gen gadget needs --setcover or --ov", file=sys.stderr)
        return EXIT_USAGE
    if args.power > 1:
        sc = gadgets.power_setcover(sc, args.power)

    if args.kind == "gadget":
        gout = gadgets.gen_recursive_lb(sc, args.t, args.ell, args.k)
    else:  # simple-gadget
        gout = gadgets.gen_simple_lb(sc, args.k, args.ell)
    save_graph(gout.graph, args.out)
    _write(args.out + ".roles", gadgets.write_roles(gout))
    manifest = gadgets.write_manifest(
        gout, t=args.t if args.kind == "gadget" else "-", ell=args.ell, k=args.k
    )
    _write(args.out + ".manifest", manifest)
    print(manifest.strip())
    return EXIT_OK


def cmd_solve(args) -> int:
    g = load_graph(args.graph)
    cfg = _make_cfg(args)
    record = run_record(
        g,
        args.algo,
        args.k,
        args.ell,
        cfg,
        with_exact=args.with_exact,
        stable=args.stable_output,
        graph_label=args.graph,
    )
    print(_format_record(record, args.json))
    return EXIT_OK


def cmd_verify(args) -> int:
    g = load_graph(args.graph)
    if args.manifest:
        manifest = gadgets.parse_manifest(_read(args.manifest))
        roles = gadgets.parse_roles(_read(args.roles))
        sc = gadgets.parse_setcover(_read(args.setcover))
        gout = gadgets.GadgetOutput(
            g,
            roles,
            int(manifest["yes_radius"]),
            int(manifest["center_budget"]),
            manifest["construction"],
            sc,
        )
        cover = [int(tok) for tok in _read(args.cover).split()]
        centers = gadgets.yes_case_centers(gout, cover)
        radius = cover_radius(g, centers)
        ok = radius <= gout.predicted_yes_radius
        print(
            f"verify=gadget yes_radius={gout.predicted_yes_radius} "
            f"achieved={radius} result={'pass' if ok else 'fail'}"
        )
        return EXIT_OK if ok else EXIT_FAILURE
    centers = VertexSet.from_iterable(
        g.n, (int(tok) for tok in _read(args.centers).split())
    )
    ok = verify_cover(g, centers, args.radius)
    print(f"verify=cover radius={args.radius} result={'pass' if ok else 'fail'}")
    return EXIT_OK if ok else EXIT_FAILURE


def cmd_bench(args) -> int:
    plan_lines = [
        ln.strip()
        for ln in _read(args.plan).splitlines()
        if ln.strip() and not ln.strip().startswith("#")
    ]
    records: list[dict] = []
    for ln in plan_lines:
        spec = dict(tok.split("=", 1) for tok in ln.split())
        algo = spec["algo"]
        g = load_graph(spec["graph"])
        k = int(spec.get("k", 2))
        l = int(spec["ell"]) if "ell" in spec else None
        seeds = [int(s) for s in spec.get("seeds", "0").split(",")]
        with_exact = spec.get("exact", "1") == "1"
        for seed in seeds:
            cfg = ApproxConfig(
                seed=seed,
                budget=args.budget,
                trials=int(spec.get("trials", args.trials)),
                omega=args.omega,
            )
            record = run_record(
                g, algo, k, l, cfg,
                with_exact=with_exact,
                stable=args.stable_output,
                graph_label=spec["graph"],
            )
            records.append(record)
            print(_format_record(record, args.json))
    judged = [r for r in records if "bound_satisfied" in r]
    if judged:
        rate = sum(1 for r in judged if r["bound_satisfied"]) / len(judged)
        ratios = [
            Fraction(r["radius"], r["exact"]) for r in judged if r["exact"] > 0
        ]
        mean_ratio = sum(ratios) / len(ratios) if ratios else Fraction(1)
        print(
            f"aggregate runs={len(records)} judged={len(judged)} "
            f"success_rate={rate:.4f} mean_ratio={float(mean_ratio):.4f}"
        )
    else:
        print(f"aggregate runs={len(records)} judged=0")
    return EXIT_OK


def _read(path: str) -> str:
    with open(path, "r", encoding="utf-8") as fh:
        return fh.read()


def _write(path: str, text: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(text)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="kcenter")
    subs = parser.add_subparsers(dest="command", required=True)

    gen = subs.add_parser("gen", help="generate graphs and gadget instances")
    gen.add_argument("kind", choices=("random", "gadget", "simple-gadget"))
    gen.add_argument("--family", default="cycle", help="random kind: cycle/path/grid/star/erdos_renyi")
    gen.add_argument("--params", nargs="*", default=[], help="key=value generator parameters")
    gen.add_argument("--seed", type=int, default=0)
    gen.add_argument("--setcover", default=None)
    gen.add_argument("--ov", default=None)
    gen.add_argument("--power", type=int, default=1)
    gen.add_argument("--t", type=int, default=1)
    gen.add_argument("--ell", type=int, default=1)
    gen.add_argument("--k", type=int, default=1)
    gen.add_argument("--out", required=True)
    gen.set_defaults(func=cmd_gen)

    solve = subs.add_parser("solve", help="run one solver on one graph")
    solve.add_argument("--algo", choices=ALGOS, required=True)
    solve.add_argument("--graph", required=True)
    solve.add_argument("--with-exact", action="store_true")
    _add_solver_flags(solve)
    solve.set_defaults(func=cmd_solve)

    verify = subs.add_parser("verify", help="re-check a certificate")
    verify.add_argument("--graph", required=True)
    verify.add_argument("--centers", default=None)
    verify.add_argument("--radius", type=int, default=None)
    verify.add_argument("--manifest", default=None)
    verify.add_argument("--roles", default=None)
    verify.add_argument("--setcover", default=None)
    verify.add_argument("--cover", default=None)
    verify.set_defaults(func=cmd_verify)

    bench = subs.add_parser("bench", help="sweep a plan file of runs")
    bench.add_argument("--plan", required=True)
    _add_solver_flags(bench)
    bench.set_defaults(func=cmd_bench)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK
    try:
        return args.func(args)
    except InfeasibleError as exc:
        print(f"error=infeasible detail={exc}", file=sys.stderr)
        return EXIT_INFEASIBLE
    except BudgetExceededError as exc:
        print(f"error=budget_exceeded detail={exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (GraphFormatError, ValueError, KeyError, FileNotFoundError) as exc:
        print(f"error=parse detail={exc}", file=sys.stderr)
        return EXIT_USAGE
    except DeciderFailedError as exc:
        print(f"error=decider_failed detail={exc}", file=sys.stderr)
        return EXIT_FAILURE


if __name__ == "__main__":
    sys.exit(main())
