"""Command-line front end: one subcommand per workflow, results on stdout,
logs on stderr.

Exit codes: 0 success, 1 invalid input, 2 a cap or limit was exhausted,
3 an oracle check failed.
"""

from __future__ import annotations

import argparse
import json
import logging
import math
import typing as t

import pandas as pd
from pydantic import ValidationError
from rich.console import Console
from rich.table import Table
from rich.text import Text

import christoffel_flip.models as M
from christoffel_flip import analysis, core, dynamics
from christoffel_flip.oracle import checks, constructions, graph
from christoffel_flip.render import ascii_grid, svg_snapshots
from christoffel_flip.rule import ThreadRule
from christoffel_flip.utils import atomic_write, configure_logging

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_CAP = 2
EXIT_CHECK_FAILED = 3

START_CHOICES = ("max-nonneg", "min-nonpos", "random", "random-nonnegative")
STOP_CHOICES = ("stable", "christoffel", "strip", "target", "step_limit")
TARGET_CHOICES = ("target", "christoffel", "strip", "stable")

STATUS_STYLE_MAP = {"pass": "bold green", "fail": "bold red", "skipped": "yellow"}
"""Map of check statuses to Rich styles."""


class UsageError(Exception):
    """Raised instead of letting argparse exit the interpreter."""


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> t.NoReturn:
        raise UsageError(f"{self.prog}: {message}")


def _instance_flags() -> argparse.ArgumentParser:
    flags = argparse.ArgumentParser(add_help=False)
    flags.add_argument("--ta", type=int, help="horizontal steps of the pattern")
    flags.add_argument("--tb", type=int, help="vertical steps of the pattern")
    flags.add_argument("--n", type=int, help="number of pattern repetitions")
    flags.add_argument("--sight", type=int, help="letters seen on each side")
    flags.add_argument("--topology", choices=("chain", "cycle"))
    return flags


def _common_flags() -> argparse.ArgumentParser:
    flags = argparse.ArgumentParser(add_help=False)
    flags.add_argument("--seed", type=int, help="master seed of the scheduler")
    flags.add_argument("--out", help="where to write the result file")
    flags.add_argument("--format", choices=("json", "csv", "svg", "ascii"))
    flags.add_argument(
        "-v", "--verbose", dest="verbosity", action="count", default=0
    )
    return flags


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="christoffel-flip",
        description="Local flip rules that straighten a discrete thread.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    instance, common = _instance_flags(), _common_flags()

    simulate = sub.add_parser(
        "simulate", parents=[instance, common], help="run one seeded trajectory"
    )
    simulate.add_argument("--start", choices=START_CHOICES)
    simulate.add_argument("--start-word", dest="start_word")
    simulate.add_argument("--stop", choices=STOP_CHOICES)
    simulate.add_argument("--cap", type=int, help="maximum number of picks")
    simulate.add_argument("--snapshot-every", dest="snapshot_every", type=int)
    simulate.add_argument("--snapshots", type=int, nargs="+")
    simulate.add_argument(
        "--record",
        choices=("all", "flips", "none"),
        help="which steps the trace lists (default: all)",
    )
    simulate.add_argument("--svg", help="also draw the snapshots here")
    simulate.add_argument("--cell", type=int)

    verify = sub.add_parser(
        "verify", parents=[instance, common], help="exhaustive checks of one instance"
    )
    verify.add_argument("--cap", dest="enumeration_cap", type=int)

    oracle = sub.add_parser(
        "oracle", parents=[instance, common], help="exact hitting time"
    )
    oracle.add_argument("--start", choices=START_CHOICES)
    oracle.add_argument("--start-word", dest="start_word")
    oracle.add_argument("--target", choices=TARGET_CHOICES)
    oracle.add_argument("--cap", dest="enumeration_cap", type=int)
    oracle.add_argument("--edges", help="write the transition edge list here")

    stats = sub.add_parser(
        "stats", parents=[instance, common], help="Monte Carlo coalescence times"
    )
    stats.add_argument("--start", choices=START_CHOICES)
    stats.add_argument("--stop", choices=STOP_CHOICES)
    stats.add_argument("--cap", type=int)
    stats.add_argument("--trials", type=int)
    stats.add_argument("--workers", type=int)
    stats.add_argument("--sweep", type=int, nargs="+", help="several values of n")

    impossibility = sub.add_parser(
        "impossibility", parents=[common], help="probe the thick/thin family"
    )
    impossibility.add_argument("--sight", type=int)
    impossibility.add_argument("--k", type=int)

    render = sub.add_parser(
        "render", parents=[common], help="draw a recorded trajectory"
    )
    render.add_argument("--trace", help="JSON-lines trace file")
    render.add_argument("--snapshots", type=int, nargs="+")
    render.add_argument("--cell", type=int)
    return parser


def _targets(
    transitions: graph.TransitionGraph, target: str
) -> t.List[str]:
    params = transitions.params
    if target == "target":
        return [core.target_christoffel(params, transitions.topology).word]
    if target == "stable":
        return graph.absorbing_states(transitions)
    words = []
    for word in transitions.states:
        config = M.Configuration(
            word=word, params=params, topology=transitions.topology
        )
        if target == "christoffel" and core.is_christoffel(config):
            words.append(word)
        elif target == "strip" and core.in_strip(config):
            words.append(word)
    return words


class ChristoffelFlipApp:
    """Parses flags into a ``RunConfig`` and dispatches to a subcommand."""

    def __init__(self, console: t.Optional[Console] = None) -> None:
        self.console = console or Console()

    def run(self, argv: t.Optional[t.Sequence[str]] = None) -> int:
        parser = build_parser()
        try:
            ns = parser.parse_args(argv)
        except UsageError as exc:
            parser.print_usage()
            self.console.print(f"[red]{exc}[/red]")
            return EXIT_INVALID
        except SystemExit as exc:
            return int(exc.code or 0)
        configure_logging(ns.verbosity)
        try:
            config = M.RunConfig.from_namespace(ns)
        except (ValidationError, ValueError) as exc:
            parser.print_usage()
            self.console.print(f"[red]invalid input:[/red] {exc}")
            return EXIT_INVALID
        handler = getattr(self, f"cmd_{config.command}")
        try:
            return handler(config)
        except graph.EnumerationLimitError as exc:
            logger.error("%s", exc)
            return EXIT_CAP
        except (ValueError, KeyError, FileNotFoundError) as exc:
            logger.error("%s", exc)
            return EXIT_INVALID

    def _emit(self, config: M.RunConfig, text: str) -> None:
        if config.out is not None:
            atomic_write(config.out, text)
            logger.info("wrote %s", config.out)
        elif config.format in (None, "json"):
            self.console.print_json(text)
        else:
            self.console.print(text, markup=False, highlight=False)

    def _print_checks(self, report: M.CorpusReport) -> None:
        table = Table(title=f"{report.instance} s={report.s} {report.topology}")
        table.add_column("check")
        table.add_column("status")
        table.add_column("detail", overflow="fold")
        for check in report.checks:
            status = Text(check.status, style=STATUS_STYLE_MAP.get(check.status, ""))
            table.add_row(check.check, status, check.detail)
        self.console.print(table)

    def cmd_simulate(self, config: M.RunConfig) -> int:
        params = config.params
        start = config.initial_config() or dynamics.canonical_start(
            params, config.start or "max_nonneg", config.seed, config.topology
        )
        state = dynamics.new_process(start, M.RuleParams(s=config.sight), config.seed)
        snapshot_every = config.snapshot_every
        if snapshot_every is None and config.svg is not None:
            requested = [step for step in config.snapshots if step]
            snapshot_every = math.gcd(*requested) if requested else config.cap
        trace = dynamics.run(
            state,
            M.StopCondition(kind=config.stop, cap=config.cap),
            snapshot_every=snapshot_every,
            record=config.record,
        )
        drawing = None
        if config.svg is not None:
            spec = M.RenderSpec(cell=config.cell, steps=config.snapshots)
            drawing = svg_snapshots(trace, spec)
        if config.out is not None:
            dynamics.write_trace(trace, config.out)
        if config.svg is not None and drawing is not None:
            atomic_write(config.svg, drawing)
        table = Table(title=f"simulate {params} s={config.sight}")
        table.add_column("outcome")
        table.add_column("steps", justify="right")
        table.add_column("flips", justify="right")
        table.add_column("thickness", justify="right")
        table.add_column("terminal")
        table.add_row(
            trace.outcome,
            str(trace.steps),
            str(trace.flips),
            str(core.thickness(trace.terminal)),
            trace.terminal.word,
        )
        self.console.print(table)
        return EXIT_OK if trace.outcome == "satisfied" else EXIT_CAP

    def cmd_verify(self, config: M.RunConfig) -> int:
        rule_params = M.RuleParams(s=config.sight)
        cap = config.enumeration_cap
        corpus = checks.verify_corpus(config.params, rule_params, config.topology, cap)
        limits = checks.convergence_check(
            config.params, rule_params, config.topology, cap
        )
        report = corpus.model_copy(update={"checks": corpus.checks + limits.checks})
        self._print_checks(report)
        if config.out is not None:
            atomic_write(config.out, report.model_dump_json(indent=2))
        return EXIT_OK if report.passed else EXIT_CHECK_FAILED

    def cmd_oracle(self, config: M.RunConfig) -> int:
        params = config.params
        rule_params = M.RuleParams(s=config.sight)
        start = config.initial_config() or dynamics.canonical_start(
            params, config.start or "max_nonneg", config.seed, config.topology
        )
        transitions = graph.build_graph(
            params, rule_params, config.topology, config.enumeration_cap
        )
        hit = graph.exact_hitting_time(
            transitions, start, _targets(transitions, config.target)
        )
        report = M.HittingTimeReport(
            start=start.word,
            target=config.target,
            expected_steps=str(hit),
            approx=float(hit.expected),
            method=hit.method,
            reachable=len(graph.reachable_set(transitions, start)),
        )
        if config.edges is not None:
            atomic_write(config.edges, graph.export_edges(transitions))
        classes = graph.recurrent_classes(transitions)
        self._emit(
            config,
            json.dumps(
                {
                    "hitting_time": report.model_dump(mode="json"),
                    "recurrent_classes": [sorted(cls) for cls in classes],
                },
                indent=2,
            ),
        )
        return EXIT_OK

    def cmd_stats(self, config: M.RunConfig) -> int:
        rule_params = M.RuleParams(s=config.sight)
        start_kind = config.start or "max_nonneg"
        cap = config.cap if "cap" in config.model_fields_set else None
        if config.sweep:
            assert config.t_a is not None and config.t_b is not None
            sweep = analysis.size_sweep(
                config.t_a,
                config.t_b,
                config.sweep,
                rule_params,
                start_kind,
                config.trials,
                config.seed,
                stop=config.stop,
                cap=cap,
                workers=config.workers,
            )
            frame = analysis.sweep_frame(sweep)
            capped = sum(experiment.capped for experiment in sweep.experiments)
            if config.out is not None:
                summary = sweep.model_dump_json(indent=2, exclude={"experiments"})
                atomic_write(config.out, frame.to_csv(index=False))
                atomic_write(config.out.with_suffix(".json"), summary)
        else:
            report = analysis.coalescence_experiment(
                config.params,
                rule_params,
                start_kind,
                config.trials,
                config.seed,
                stop=config.stop,
                cap=cap,
                topology=config.topology,
                workers=config.workers,
            )
            frame = pd.DataFrame([report.summary()])
            capped = report.capped
            if config.out is not None:
                analysis.write_experiment(
                    report, config.out, config.out.with_suffix(".json")
                )
        self._print_frame(frame, title=f"stats s={config.sight} from {start_kind}")
        return EXIT_CAP if capped else EXIT_OK

    def _print_frame(self, frame: pd.DataFrame, title: str) -> None:
        table = Table(title=title)
        for column in frame.columns:
            table.add_column(str(column), justify="right")
        for row in frame.itertuples(index=False):
            table.add_row(*("" if pd.isna(v) else str(v) for v in row))
        self.console.print(table)

    def cmd_impossibility(self, config: M.RunConfig) -> int:
        assert config.k is not None
        s, k = config.sight, config.k
        rules = [
            ThreadRule(M.RuleParams(s=s)),
            constructions.stabilizing_rule(s, k),
        ]
        reports = [constructions.impossibility_report(s, k, rule) for rule in rules]
        holds = all(constructions.dichotomy_holds(rule, s, k) for rule in rules)
        table = Table(title=f"impossibility s={s} k={k}")
        for column in ("rule", "c stable", "c' stable", "c' thickness", "horn"):
            table.add_column(column)
        for report in reports:
            table.add_row(
                report.rule,
                str(report.c_stable),
                str(report.c_prime_stable),
                str(report.c_prime_thickness),
                report.horn,
            )
        self.console.print(table)
        if config.out is not None:
            payload = {
                "dichotomy": holds,
                "reports": [
                    {**report.model_dump(mode="json"), "horn": report.horn}
                    for report in reports
                ],
            }
            atomic_write(config.out, json.dumps(payload, indent=2))
        return EXIT_OK if holds else EXIT_CHECK_FAILED

    def cmd_render(self, config: M.RunConfig) -> int:
        assert config.trace is not None
        trace = dynamics.read_trace(config.trace)
        if config.format == "ascii":
            steps = config.snapshots or [snap.step for snap in trace.snapshots]
            panels = [
                f"step {step}\n{ascii_grid(trace.snapshot(step))}"
                for step in steps
            ] or [f"step {trace.steps}\n{ascii_grid(trace.terminal)}"]
            text = "\n\n".join(panels) + "\n"
        else:
            spec = M.RenderSpec(cell=config.cell, steps=config.snapshots)
            text = svg_snapshots(trace, spec)
        if config.out is not None:
            atomic_write(config.out, text)
        else:
            self.console.print(text, markup=False, highlight=False, end="")
        return EXIT_OK
