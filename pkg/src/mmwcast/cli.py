"""Command-line entry points.

Verbs:
  run       one experiment from a config file
  sweep     a named figure preset (fig5..fig14)
  validate  run the trials and report only the feasibility audit
  oracle    small-instance comparisons against the exact solvers
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import replace
from pathlib import Path

import numpy as np

from . import analysis
from .config import SCHEMES, SimConfig, load_config
from .contention import ContentionGraph
from .harness import (
    PRESET_NAMES,
    experiment_from_config,
    preset,
    run_experiment,
    run_trial,
    seeds_for,
    write_csv,
)
from .config import dump_resolved
from .model import Link, MulticastDemand, build_topology, ue
from .scheduler import greedy_mis


def _load_base(args: argparse.Namespace) -> SimConfig:
    config = load_config(args.config) if args.config else SimConfig()
    overrides = {}
    if args.trials is not None:
        overrides["trials"] = args.trials
        overrides["seeds"] = None
    if args.master_seed is not None:
        overrides["master_seed"] = args.master_seed
    if args.schemes is not None:
        overrides["schemes"] = tuple(s.strip().upper() for s in args.schemes.split(","))
    return replace(config, **overrides) if overrides else config


def _emit(config: SimConfig, name: str, out_dir: Path) -> int:
    out_dir.mkdir(parents=True, exist_ok=True)
    exp = experiment_from_config(config)
    rows = run_experiment(exp, config)
    csv_path = out_dir / f"{name}.csv"
    write_csv(rows, csv_path)
    dump_resolved(config, out_dir / f"{name}.config.json")
    failures = [r for r in rows if r.status == "failed" or r.audit_pass is False]
    print(f"wrote {csv_path} ({len(rows)} rows)")
    if failures:
        print(f"{len(failures)} rows failed or did not pass the audit", file=sys.stderr)
        return 1
    return 0


def cmd_run(args: argparse.Namespace) -> int:
    config = _load_base(args)
    if config.sweep is None:
        # Degenerate single-point sweep over the configured demand.
        from .config import SweepSpec

        config = replace(config, sweep=SweepSpec("demand", (config.demand_bits,)))
    name = Path(args.config).stem if args.config else "run"
    return _emit(config, name, Path(args.out_dir))


def cmd_sweep(args: argparse.Namespace) -> int:
    base = _load_base(args)
    config = preset(args.preset, base)
    return _emit(config, args.preset, Path(args.out_dir))


def cmd_validate(args: argparse.Namespace) -> int:
    import csv as csv_mod

    config = _load_base(args)
    seeds = seeds_for(config)
    demand = MulticastDemand(bits=config.demand_bits)
    bad = 0
    bound_rows: list[list[str]] = []
    for trial, seed in enumerate(seeds):
        topo = build_topology(config.region_side, config.group_size, seed)
        for scheme in config.schemes:
            report = run_trial(topo, demand, config.channel, scheme, config.h_max)
            status = "pass" if report.audit.passed else "FAIL"
            if not report.audit.passed:
                bad += 1
            checks = " ".join(
                f"{k}={'ok' if v else 'FAIL'}" for k, v in report.audit.checks.items()
            )
            print(f"trial {trial} {scheme}: {status} ({checks})")
            for line in report.audit.detail:
                print(f"    {line}")
        if args.bound_csv:
            from .pathplan import plan_paths
            from .power import power_control
            from .scheduler import schedule_links
            from .baselines import serial_unicast

            paths = plan_paths(topo, topo.group, config.h_max)
            schedule = schedule_links(paths, config.channel, topo)
            _, t_serial = serial_unicast(topo, topo.group, demand, config.channel)
            powered = power_control(schedule, demand, config.channel, topo, t_serial)
            rows = analysis.per_user_energies(powered, demand, config.channel, topo).csv_rows()
            if not bound_rows:
                bound_rows.append(["trial"] + rows[0])
            bound_rows.extend([str(trial)] + r for r in rows[1:])
    if args.bound_csv:
        with open(args.bound_csv, "w", newline="") as fh:
            csv_mod.writer(fh).writerows(bound_rows)
        print(f"wrote {args.bound_csv}")
    return 1 if bad else 0


def cmd_oracle(args: argparse.Namespace) -> int:
    rng = np.random.default_rng(args.seed)
    failures = 0

    print("== relay scheduling vs exhaustive optimum ==")
    config = SimConfig()
    for i in range(args.instances):
        n_users = int(rng.integers(2, 5))
        seed = int(rng.integers(0, 2**63 - 1))
        topo = build_topology(config.region_side, n_users, seed)
        demand = MulticastDemand(bits=args.oracle_demand)
        report = run_trial(topo, demand, config.channel, "EMS", h_max=2)
        oracle = analysis.exhaustive_schedule(topo, topo.group, demand, config.channel, h_max=2)
        gap = report.ec_mj / oracle.energy_mj if oracle.energy_mj > 0 else float("inf")
        ok = report.ec_mj >= oracle.energy_mj * (1.0 - 1e-9)
        if not ok:
            failures += 1
        print(
            f"instance {i}: users={n_users} heuristic={report.ec_mj:.6g} mJ "
            f"optimum={oracle.energy_mj:.6g} mJ gap x{gap:.4f}"
            + ("" if ok else "  VIOLATION")
        )

    print("== greedy independent set vs exact ==")
    for i in range(args.mis_graphs):
        n = int(rng.integers(4, 13))
        p = float(rng.uniform(0.1, 0.7))
        links = [Link(ue(2 * j), ue(2 * j + 1)) for j in range(n)]
        edges = set()
        for a in range(n):
            for b in range(a + 1, n):
                if rng.random() < p:
                    edges.add(frozenset((links[a], links[b])))
        graph = ContentionGraph(vertices=tuple(links), edges=frozenset(edges))
        greedy = greedy_mis(graph)
        exact = analysis.exact_mis(graph)
        degree_bound = max(1, max(graph.degree(v) for v in graph.vertices))
        ratio_floor = 3.0 / (degree_bound + 2.0)
        ok = len(greedy) >= len(exact) * ratio_floor - 1e-12
        if not ok:
            failures += 1
            print(f"graph {i}: greedy={len(greedy)} exact={len(exact)} VIOLATION")
    print(f"{args.mis_graphs} graphs checked against the exact solver")
    return 1 if failures else 0


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(
        prog="mmwcast",
        description="Multicast scheduling simulator for a mmWave small cell",
    )
    sub = parser.add_subparsers(dest="verb", required=True)

    def common(p: argparse.ArgumentParser) -> None:
        p.add_argument("--config", help="YAML config path")
        p.add_argument("--out-dir", default="out", help="output directory")
        p.add_argument("--trials", type=int, default=None, help="override trial count")
        p.add_argument("--master-seed", type=int, default=None, help="override master seed")
        p.add_argument(
            "--schemes",
            default=None,
            help=f"comma-separated subset of {','.join(SCHEMES)}",
        )

    p_run = sub.add_parser("run", help="run one experiment from a config file")
    common(p_run)
    p_run.set_defaults(func=cmd_run)

    p_sweep = sub.add_parser("sweep", help="run a named figure preset")
    common(p_sweep)
    p_sweep.add_argument("--preset", required=True, choices=PRESET_NAMES)
    p_sweep.set_defaults(func=cmd_sweep)

    p_val = sub.add_parser("validate", help="feasibility audit only")
    common(p_val)
    p_val.add_argument(
        "--bound-csv",
        default=None,
        help="also write the per-user energy bound report to this CSV",
    )
    p_val.set_defaults(func=cmd_validate)

    p_oracle = sub.add_parser("oracle", help="compare against exact small-instance solvers")
    p_oracle.add_argument("--instances", type=int, default=10)
    p_oracle.add_argument("--mis-graphs", type=int, default=50)
    p_oracle.add_argument("--seed", type=int, default=7)
    p_oracle.add_argument(
        "--oracle-demand",
        type=float,
        default=2e8,
        help="payload bits for oracle instances (kept small for enumeration)",
    )
    p_oracle.set_defaults(func=cmd_oracle)

    args = parser.parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
