"""Command-line interface.

Subcommands: gen, spectrum, gamma, gamma-sup, embed, experiment <name>.
Exit codes: 0 success / all assertions passed, 1 experiment assertions
failed, 2 usage errors (argparse), 3 I/O errors, 4 invalid flag or config
values.
"""

from __future__ import annotations

import argparse
import sys

import numpy as np

from .. import graphs, metric, spectral
from ..embedding import bourgain_embed
from ..gamma import SearchStrategy, VertexMap, gamma_sup_estimate, gamma_value
from .config import EXPERIMENT_NAMES, ConfigError, build_config
from .experiments import emit_results, format_cell, run_experiment

EXIT_OK = 0
EXIT_ASSERTION = 1
EXIT_USAGE = 2
EXIT_IO = 3
EXIT_VALUE = 4


def _write_out(text, out_path):
    if out_path is None:
        sys.stdout.write(text)
    else:
        with open(out_path, "w", encoding="ascii", newline="\n") as fh:
            fh.write(text)


def _read(path):
    with open(path, encoding="ascii") as fh:
        return fh.read()


def _load_graph(path):
    return graphs.read_edge_list(_read(path))


def _add_common(p, trials=False, workers=False):
    p.add_argument("--seed", type=int, default=0, help="master seed")
    p.add_argument("--out", default=None, help="output file (default: stdout)")
    if trials:
        p.add_argument("--trials", type=int, default=None)
    if workers:
        p.add_argument("--workers", type=int, default=None)


def _cmd_gen(args):
    rng = np.random.default_rng(args.seed)
    g, attempts = graphs.sample_simple_regular(args.n, args.d, rng,
                                               max_attempts=args.max_attempts)
    _write_out(graphs.write_edge_list(g), args.out)
    print(f"sampled simple {args.d}-regular graph on {args.n} vertices "
          f"in {attempts} attempts", file=sys.stderr)
    return EXIT_OK


def _cmd_spectrum(args):
    g = _load_graph(args.graph)
    spec = spectral.eigenvalues(spectral.normalized_laplacian(g), tol=args.tol)
    lines = ["index,eigenvalue"]
    lines.extend(f"{i},{format_cell(float(v))}" for i, v in enumerate(spec.eigenvalues))
    _write_out("\n".join(lines) + "\n", args.out)
    print(f"lambda1={spec.lambda1:.12g} lambda_bar={spectral.lambda_bar(spec):.12g} "
          f"residual={spec.residual:.3g}", file=sys.stderr)
    return EXIT_OK


def _gamma_csv(rep, extra_header="", extra_row=""):
    header = "gamma,pair_sum,edge_sum,degenerate" + extra_header
    row = ",".join([format_cell(rep.gamma), format_cell(rep.pair_sum),
                    format_cell(rep.edge_sum), format_cell(rep.degenerate)]) + extra_row
    return header + "\n" + row + "\n"


def _cmd_gamma(args):
    g = _load_graph(args.graph)
    h = _load_graph(args.host)
    f = VertexMap.from_text(_read(args.map))
    rep = gamma_value(g, metric.all_pairs_distances(h), f)
    _write_out(_gamma_csv(rep), args.out)
    return EXIT_OK


def _cmd_gamma_sup(args):
    g = _load_graph(args.graph)
    h = _load_graph(args.host)
    strat = SearchStrategy(restarts=args.restarts, samples=args.samples,
                           move_budget=args.move_budget, delta=args.delta,
                           exhaustive=args.exhaustive)
    rng = np.random.default_rng(args.seed)
    res = gamma_sup_estimate(g, metric.all_pairs_distances(h), strat, rng)
    _write_out(_gamma_csv(res.report, ",samples,moves,nondegenerate",
                          f",{res.samples_evaluated},{res.moves_total},"
                          f"{format_cell(res.nondegenerate_found)}"), args.out)
    if args.map_out:
        with open(args.map_out, "w", encoding="ascii", newline="\n") as fh:
            fh.write(res.best_map.to_text())
    return EXIT_OK


def _cmd_embed(args):
    h = _load_graph(args.host)
    rng = np.random.default_rng(args.seed)
    emb = bourgain_embed(metric.all_pairs_distances(h), rng, q=args.q,
                         seed=args.seed)
    _write_out(emb.to_text(), args.out)
    print(f"embedded {emb.m} points into dimension {emb.dimension} "
          f"({emb.num_scales} scales x {emb.reps} reps)", file=sys.stderr)
    return EXIT_OK


def _cmd_experiment(args):
    file_text = _read(args.config) if args.config else None
    overrides = {
        "master_seed": args.seed,
        "trials": args.trials,
        "workers": args.workers,
        "out": args.out,
    }
    for key in ("n", "m", "d", "epsilon", "alpha", "beta", "delta_rule", "delta",
                "c", "eigen_c", "gamma_envelope", "restarts", "samples",
                "move_budget", "family", "family_param", "host_path", "map_path",
                "si", "sj", "switchings", "lambda_grid"):
        value = getattr(args, key, None)
        if value is not None:
            overrides[key] = value
    cfg = build_config(args.name, file_text, overrides)
    result = run_experiment(cfg)
    out_path = cfg.out or f"{result.name}_results.csv"
    emit_results(result.records, out_path, result.columns)
    for key, value in result.summary.items():
        print(f"{key}={format_cell(value)}")
    print(f"records={len(result.records)} out={out_path}")
    print("PASS" if result.passed else "FAIL")
    return EXIT_OK if result.passed else EXIT_ASSERTION


def build_parser():
    parser = argparse.ArgumentParser(
        prog="nlgap",
        description="Nonlinear spectral gap of graphs mapped into graph metrics")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="sample a simple d-regular graph")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--max-attempts", type=int, default=10_000)
    _add_common(p)
    p.set_defaults(func=_cmd_gen)

    p = sub.add_parser("spectrum", help="normalized-Laplacian eigenvalues")
    p.add_argument("--graph", required=True)
    p.add_argument("--tol", type=float, default=1e-9)
    _add_common(p)
    p.set_defaults(func=_cmd_spectrum)

    p = sub.add_parser("gamma", help="gamma(G, d_H, f) for a map file")
    p.add_argument("--graph", required=True)
    p.add_argument("--host", required=True)
    p.add_argument("--map", required=True)
    _add_common(p)
    p.set_defaults(func=_cmd_gamma)

    p = sub.add_parser("gamma-sup", help="search sup_f gamma(G, d_H, f)")
    p.add_argument("--graph", required=True)
    p.add_argument("--host", required=True)
    p.add_argument("--restarts", type=int, default=4)
    p.add_argument("--samples", type=int, default=64)
    p.add_argument("--move-budget", type=int, default=100_000)
    p.add_argument("--delta", type=float, default=None)
    p.add_argument("--exhaustive", action="store_true")
    p.add_argument("--map-out", default=None)
    _add_common(p)
    p.set_defaults(func=_cmd_gamma_sup)

    p = sub.add_parser("embed", help="randomized embedding of a host metric")
    p.add_argument("--host", required=True)
    p.add_argument("--q", type=int, default=None, help="repetitions per scale")
    _add_common(p)
    p.set_defaults(func=_cmd_embed)

    p = sub.add_parser("experiment", help="run a named experiment")
    p.add_argument("name", choices=EXPERIMENT_NAMES)
    p.add_argument("--config", default=None, help="flat key=value file")
    p.add_argument("--n", default=None, help="comma list")
    p.add_argument("--m", default=None, help="comma list")
    p.add_argument("--d", default=None, help="comma list")
    p.add_argument("--epsilon", type=float, default=None)
    p.add_argument("--alpha", type=float, default=None)
    p.add_argument("--beta", type=float, default=None)
    p.add_argument("--delta-rule", dest="delta_rule", default=None)
    p.add_argument("--delta", type=float, default=None)
    p.add_argument("--c", type=float, default=None)
    p.add_argument("--eigen-c", dest="eigen_c", type=float, default=None)
    p.add_argument("--gamma-envelope", dest="gamma_envelope", type=float, default=None)
    p.add_argument("--restarts", type=int, default=None)
    p.add_argument("--samples", type=int, default=None)
    p.add_argument("--move-budget", dest="move_budget", type=int, default=None)
    p.add_argument("--family", default=None)
    p.add_argument("--family-param", dest="family_param", type=float, default=None)
    p.add_argument("--host", dest="host_path", default=None)
    p.add_argument("--map", dest="map_path", default=None)
    p.add_argument("--si", type=int, default=None)
    p.add_argument("--sj", type=int, default=None)
    p.add_argument("--switchings", type=int, default=None)
    p.add_argument("--lambda-grid", dest="lambda_grid", type=int, default=None)
    _add_common(p, trials=True, workers=True)
    p.set_defaults(func=_cmd_experiment)

    return parser


def cli_main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK
    try:
        return args.func(args)
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except (ConfigError, graphs.EdgeListParseError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALUE
    except graphs.SamplingError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ASSERTION


def main():
    raise SystemExit(cli_main())


if __name__ == "__main__":
    main()
