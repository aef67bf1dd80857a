"""Batch command-line interface.

Four subcommands: ``eval`` (score a partition), ``solve`` (run a solver),
``emit`` (write the MILP as an .lp file plus a variable-map sidecar), and
``generate`` (write a benchmark instance with its reference partitions).

Exit codes: 0 on success, 2 for unusable input or configuration, 3 when
``eval --weak-L`` finds a violating community (the report is still printed).
JSON goes to stdout and embeds a manifest (command, resolved configuration,
input digests, version, seed) so identical runs are byte-identical.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
from pathlib import Path

from . import __version__
from .errors import InputError, MdnetError, SolverError
from .generators import FAMILIES, NamedInstance, gen_clique_star, gen_fig2, instance, zachary
from .graph import Graph, Partition, load_edge_list, load_partition
from .metrics import full_report, weak_condition
from .milp import build_model, emit_lp, variable_metadata
from .numformat import rational_str, sig_str
from .solver import SolverConfig, solve

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_VIOLATED = 3

BUILTIN_GRAPHS = ("fig1", "fig2", "zachary", "clique-star")


def _sha256(data: str) -> str:
    return hashlib.sha256(data.encode()).hexdigest()


def _max_workers() -> int:
    """Worker cap from MDNET_THREADS; execution is currently sequential."""
    raw = os.environ.get("MDNET_THREADS", "")
    try:
        return max(1, int(raw)) if raw else 1
    except ValueError:
        raise InputError(f"MDNET_THREADS must be an integer, got {raw!r}") from None


def _load_graph(spec: str) -> tuple[Graph, dict]:
    """Path to an edge list, or a builtin instance name."""
    if spec in BUILTIN_GRAPHS:
        inst = instance(spec)
        return inst.graph, {"builtin": spec}
    path = Path(spec)
    if not path.exists():
        raise InputError(f"graph file not found: {spec}")
    text = path.read_text()
    return load_edge_list(text), {"path": spec, "sha256": _sha256(text)}


def _load_partition(spec: str, g: Graph, graph_spec: str) -> tuple[Partition, dict]:
    """Path to a partition file, or a canonical partition of a builtin graph."""
    if graph_spec in BUILTIN_GRAPHS and not Path(spec).exists():
        inst = instance(graph_spec)
        try:
            return inst.partition(spec), {"builtin": f"{graph_spec}:{spec}"}
        except InputError:
            raise InputError(f"partition file not found: {spec}") from None
    path = Path(spec)
    if not path.exists():
        raise InputError(f"partition file not found: {spec}")
    text = path.read_text()
    return load_partition(text, g), {"path": spec, "sha256": _sha256(text)}


def _manifest(command: str, config: dict, inputs: dict, seed: int | None = None) -> dict:
    return {
        "schema": "mdnet/1",
        "version": __version__,
        "command": command,
        "config": config,
        "inputs": inputs,
        "seed": seed,
        "threads": _max_workers(),
    }


def _emit_json(payload: dict) -> None:
    payload = {"schema": "mdnet/1", **payload}
    print(json.dumps(payload, indent=2, sort_keys=False))


def cmd_eval(args: argparse.Namespace) -> int:
    g, graph_meta = _load_graph(args.graph)
    p, part_meta = _load_partition(args.partition, g, args.graph)
    report = full_report(g, p)
    payload = report.to_json_dict()
    violated = []
    if args.weak_L is not None:
        violated = [
            c.index for c in report.communities
            if not weak_condition(g, p, c.index, args.weak_L)
        ]
        payload["weak_L"] = args.weak_L
        payload["weak_violations"] = violated
    payload["manifest"] = _manifest(
        "eval",
        {"weak_L": args.weak_L},
        {"graph": graph_meta, "partition": part_meta},
    )
    _emit_json(payload)
    return EXIT_VIOLATED if violated else EXIT_OK


def _solver_config(args: argparse.Namespace) -> SolverConfig:
    if args.m is not None and (args.m_min is not None or args.m_max is not None):
        raise InputError("use either --m or --m-min/--m-max, not both")
    method = {"ls": "local-search"}.get(args.method, args.method)
    if method == "bnb" and args.m is None and args.m_min is None and args.m_max is None:
        raise InputError("bnb proves a fixed community count: give --m or --m-min/--m-max")
    m_min = args.m if args.m is not None else args.m_min
    m_max = args.m if args.m is not None else args.m_max
    return SolverConfig(
        method=method,
        m_min=m_min,
        m_max=m_max,
        weak_L=args.weak_L,
        seed=args.seed,
        restarts=args.restarts,
    )


def cmd_solve(args: argparse.Namespace) -> int:
    g, graph_meta = _load_graph(args.graph)
    cfg = _solver_config(args)
    cfg.validate()
    config_dict = {
        "method": cfg.method,
        "m_min": cfg.m_min,
        "m_max": cfg.m_max,
        "weak_L": cfg.weak_L,
        "seed": cfg.seed,
        "restarts": cfg.restarts,
    }
    # an explicit range sweeps every m and reports the argmax; bnb always
    # needs a fixed m per run
    explicit_range = args.m is None and (args.m_min is not None or args.m_max is not None)
    if cfg.method == "bnb" or explicit_range:
        lo, hi = cfg.resolved_range(g.n)
        results = []
        for m in range(lo, hi + 1):
            sub = SolverConfig(
                method=cfg.method, m_min=m, m_max=m, weak_L=cfg.weak_L,
                seed=cfg.seed, restarts=cfg.restarts,
            )
            results.append(solve(g, sub))
    else:
        results = [solve(g, cfg)]
    best = max(results, key=lambda r: r.D)  # ties: first (smallest m) wins
    payload = best.to_json_dict()
    if len(results) > 1:
        payload["sweep"] = [r.to_json_dict() for r in results]
    payload["manifest"] = _manifest(
        "solve", config_dict, {"graph": graph_meta}, seed=cfg.seed
    )
    _emit_json(payload)
    return EXIT_OK


def cmd_emit(args: argparse.Namespace) -> int:
    g, graph_meta = _load_graph(args.graph)
    model = build_model(g, args.m, weak_L=args.weak_L, symmetry_break=args.symmetry_break)
    text = emit_lp(model)
    out = Path(args.output)
    sidecar = out.with_suffix(".vars.json") if out.suffix == ".lp" else Path(str(out) + ".vars.json")
    try:
        out.write_text(text)
        sidecar.write_text(
            json.dumps(
                {
                    "schema": "mdnet/1",
                    "n": g.n,
                    "m": args.m,
                    "weak_L": args.weak_L,
                    "variables": variable_metadata(model),
                },
                indent=2,
            )
            + "\n"
        )
    except OSError as exc:
        raise InputError(f"cannot write output: {exc}") from None
    _emit_json(
        {
            "lp": str(out),
            "sidecar": str(sidecar),
            "variables": len(model.variables),
            "constraints": len(model.constraints),
            "manifest": _manifest(
                "emit",
                {"m": args.m, "weak_L": args.weak_L, "symmetry_break": args.symmetry_break},
                {"graph": graph_meta},
            ),
        }
    )
    return EXIT_OK


def _generate_instance(args: argparse.Namespace) -> NamedInstance:
    if args.family == "clique-star":
        return gen_clique_star(args.hub, args.satellites, args.satellite_size)
    if args.family == "fig2":
        return gen_fig2()
    return zachary()


def cmd_generate(args: argparse.Namespace) -> int:
    inst = _generate_instance(args)
    out_dir = Path(args.out_dir)
    try:
        out_dir.mkdir(parents=True, exist_ok=True)
        graph_path = out_dir / f"{inst.name}.edges"
        graph_path.write_text(inst.graph.to_edge_list_text())
        expected: dict[str, dict] = {}
        files = {"graph": str(graph_path)}
        for cp in inst.canonical_partitions:
            ppath = out_dir / f"{inst.name}.{cp.name}.partition"
            ppath.write_text(cp.partition.to_text())
            files[cp.name] = str(ppath)
            entry: dict = {"file": str(ppath), "m": cp.partition.m}
            if cp.expected_density is not None:
                entry["expected_D"] = sig_str(cp.expected_density)
                entry["expected_D_rational"] = rational_str(cp.expected_density)
            expected[cp.name] = entry
        values_path = out_dir / f"{inst.name}.expected.json"
        values_path.write_text(json.dumps({"instance": inst.name, "partitions": expected}, indent=2) + "\n")
    except OSError as exc:
        raise InputError(f"cannot write to {args.out_dir}: {exc}") from None
    _emit_json(
        {
            "instance": inst.name,
            "n": inst.graph.n,
            "edges": inst.graph.edge_count,
            "files": {**files, "expected": str(values_path)},
            "manifest": _manifest("generate", {"family": args.family}, {}),
        }
    )
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mdnet",
        description="Modularity-density community detection toolkit",
    )
    parser.add_argument("--version", action="version", version=f"mdnet {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p_eval = sub.add_parser("eval", help="score a partition of a graph")
    p_eval.add_argument("--graph", required=True, help="edge-list file or builtin name")
    p_eval.add_argument("--partition", required=True, help="partition file or builtin partition name")
    p_eval.add_argument("--weak-L", dest="weak_L", type=int, choices=(0, 1), default=None)
    p_eval.set_defaults(fn=cmd_eval)

    p_solve = sub.add_parser("solve", help="maximize density on a graph")
    p_solve.add_argument("--graph", required=True)
    p_solve.add_argument("--method", required=True, choices=("exhaustive", "bnb", "ls"))
    p_solve.add_argument("--m", type=int, default=None, help="fixed community count")
    p_solve.add_argument("--m-min", dest="m_min", type=int, default=None)
    p_solve.add_argument("--m-max", dest="m_max", type=int, default=None)
    p_solve.add_argument("--weak-L", dest="weak_L", type=int, choices=(0, 1), default=None)
    p_solve.add_argument("--seed", type=int, default=0)
    p_solve.add_argument("--restarts", type=int, default=32)
    p_solve.set_defaults(fn=cmd_solve)

    p_emit = sub.add_parser("emit", help="write the MILP as an LP file")
    p_emit.add_argument("--graph", required=True)
    p_emit.add_argument("--m", type=int, required=True)
    p_emit.add_argument("--weak-L", dest="weak_L", type=int, choices=(0, 1), default=None)
    p_emit.add_argument("--symmetry-break", action="store_true")
    p_emit.add_argument("-o", "--output", required=True, help="output .lp path")
    p_emit.set_defaults(fn=cmd_emit)

    p_gen = sub.add_parser("generate", help="write a benchmark instance to disk")
    p_gen.add_argument("--family", required=True, choices=FAMILIES)
    p_gen.add_argument("--hub", type=int, default=3, help="clique-star hub size")
    p_gen.add_argument("--satellites", type=int, default=7)
    p_gen.add_argument("--satellite-size", dest="satellite_size", type=int, default=4)
    p_gen.add_argument("--out-dir", dest="out_dir", required=True)
    p_gen.set_defaults(fn=cmd_generate)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.fn(args)
    except (InputError, SolverError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except MdnetError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
