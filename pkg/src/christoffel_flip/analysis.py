"""Energy of a configuration relative to a fixed context, its exact expected
drift under the rule, the martingale time bound and coalescence experiments.
"""

from __future__ import annotations

import concurrent.futures
import json
import logging
import typing as t
from fractions import Fraction
from pathlib import Path

import numpy as np
import pandas as pd

import christoffel_flip.models as M
from christoffel_flip import core, dynamics
from christoffel_flip.rule import RuleLike, as_rule, site_is_active
from christoffel_flip.utils import atomic_write

logger = logging.getLogger(__name__)


def _border_plus(params: M.LineParams, i0: int) -> t.Tuple[int, ...]:
    return tuple(i for i in range(1, params.tot) if (i - i0) % params.per == 0)


def energy_context(c0: M.Configuration) -> M.EnergyContext:
    """H0 = h_max(c0) and Border⁺ = {i ∈ 1..tot−1 : i ≡ i_0 mod per}."""
    profile = core.height_profile(c0)
    h0 = max(profile)
    if h0 < c0.params.per:
        raise ValueError(
            f"energy needs h_max(c0) >= per = {c0.params.per}, got {h0} for {c0.word}"
        )
    return M.EnergyContext(
        h0=h0,
        border_plus=_border_plus(c0.params, profile.index(h0)),
        params=c0.params,
        topology=c0.topology,
    )


def energy_context_at(
    params: M.LineParams, h0: int, topology: M.Topology = "chain"
) -> M.EnergyContext:
    """The context of any configuration whose h_max is ``h0``.

    h(c_i) ≡ −t_b·i (mod per), so the residue of Border⁺ follows from h0.
    """
    if h0 < params.per:
        raise ValueError(f"energy needs H0 >= per = {params.per}, got {h0}")
    i0 = (-h0 * pow(params.t_b, -1, params.per)) % params.per
    return M.EnergyContext(
        h0=h0,
        border_plus=_border_plus(params, i0),
        params=params,
        topology=topology,
    )


def profile_top_down_up(
    profile: t.Sequence[int], ctx: M.EnergyContext
) -> t.Tuple[t.Set[int], t.Set[int], t.Set[int]]:
    tot, per = ctx.params.tot, ctx.params.per
    top = {i for i in range(1, tot) if profile[i] == ctx.h0}
    down = {i for i in top if i + per <= tot and i + per not in top}
    up = {i for i in top if i - per >= 0 and i - per not in top}
    return top, down, up


def top_down_up(
    c: M.Configuration, ctx: M.EnergyContext
) -> t.Tuple[t.Set[int], t.Set[int], t.Set[int]]:
    """(Top⁺, Down⁺, Up⁺): the sites at level H0 and the ends of their runs."""
    if c.params != ctx.params:
        raise ValueError(f"{c.word} is not on the context's instance {ctx.params}")
    return profile_top_down_up(core.height_profile(c), ctx)


def word_energy(word: str, ctx: M.EnergyContext) -> int:
    profile = core.word_heights(word, ctx.params.t_a, ctx.params.t_b)
    if max(profile) != ctx.h0:
        return 0
    top, down, up = profile_top_down_up(profile, ctx)
    value = 2 * len(top) + len(down) + len(up)
    if ctx.topology == "cycle" and top == set(ctx.border_plus):
        value += 2
    return value


def energy(c: M.Configuration, ctx: M.EnergyContext) -> int:
    """E(c) = 2|Top⁺| + |Down⁺| + |Up⁺|, zero once h_max has left H0.

    In a cycle two more units are added when Top⁺ fills all of Border⁺.
    """
    if c.params != ctx.params:
        raise ValueError(f"{c.word} is not on the context's instance {ctx.params}")
    return word_energy(c.word, ctx)


def energy_changes(
    c: M.Configuration, ctx: M.EnergyContext, rule: RuleLike
) -> t.Dict[int, int]:
    """E(δ_i(c)) − E(c) for every selectable index i."""
    local = as_rule(rule)
    base = word_energy(c.word, ctx)
    changes = {}
    for i in core.flip_bounds(c):
        if site_is_active(c.word, c.topology, i, local):
            changes[i] = word_energy(core.flip(c, i).word, ctx) - base
        else:
            changes[i] = 0
    return changes


def expected_drift(
    c: M.Configuration, ctx: M.EnergyContext, rule_params: RuleLike
) -> Fraction:
    """Exact E[ΔE | c] under one uniform scheduler pick."""
    if energy(c, ctx) == 0:
        raise ValueError(f"drift is only defined for positive energy, {c.word} has 0")
    changes = energy_changes(c, ctx, rule_params)
    return Fraction(sum(changes.values()), len(changes))


def martingale_bound(k: int, e0: int, eps: t.Union[Fraction, int, str]) -> Fraction:
    """k·E0/ε, the expected time for a bounded supermartingale to reach 0."""
    eps = Fraction(eps)
    if not k >= e0 >= 1:
        raise ValueError(f"the bound needs k >= E0 >= 1, got k={k}, E0={e0}")
    if not 0 < eps <= 1:
        raise ValueError(f"the bound needs 0 < eps <= 1, got {eps}")
    return Fraction(k * e0) / eps


def coalescence_bound(params: M.LineParams) -> int:
    """(2n − 1)³·(tot − 1)."""
    return (2 * params.n - 1) ** 3 * (params.tot - 1)


class _TrialSpec(t.NamedTuple):
    params: M.LineParams
    s: int
    start_kind: t.Optional[M.StartKind]
    start_word: t.Optional[str]
    topology: M.Topology
    stop: M.StopCondition
    master_seed: int
    trial: int


def _run_trial(spec: _TrialSpec) -> M.TrialResult:
    seed = dynamics.trial_seed(spec.master_seed, spec.trial)
    if spec.start_word is not None:
        start = M.Configuration(
            word=spec.start_word, params=spec.params, topology=spec.topology
        )
    else:
        assert spec.start_kind is not None
        start = dynamics.canonical_start(
            spec.params,
            spec.start_kind,
            seed=dynamics.trial_seed(seed, 0),
            topology=spec.topology,
        )
    state = dynamics.new_process(start, M.RuleParams(s=spec.s), seed)
    trace = dynamics.run(state, spec.stop, record="none")
    logger.debug(
        "trial %d on %s: %s after %d steps",
        spec.trial,
        spec.params,
        trace.outcome,
        trace.steps,
    )
    return M.TrialResult(
        trial=spec.trial,
        seed=seed,
        steps=trace.steps,
        terminal=trace.terminal.word,
        outcome=trace.outcome,
        level_dwell=dict(state.level_dwell),
    )


def coalescence_experiment(
    params: M.LineParams,
    rule_params: M.RuleParams,
    start_kind: t.Union[M.StartKind, M.Configuration],
    trials: int,
    seed: int,
    stop: M.StopKind = "target",
    cap: t.Optional[int] = None,
    topology: M.Topology = "chain",
    workers: int = 1,
) -> M.ExperimentReport:
    """Independent seeded trials from the same kind of start.

    The cap defaults to ten times the coalescence bound. Trials that hit it
    are counted in ``capped``, never dropped.
    """
    if trials < 1:
        raise ValueError(f"an experiment needs at least one trial, got {trials}")
    bound = coalescence_bound(params)
    condition = M.StopCondition(kind=stop, cap=cap or 10 * bound)
    if isinstance(start_kind, M.Configuration):
        kind, word, topology = None, start_kind.word, start_kind.topology
        label = word
    else:
        kind, word, label = start_kind, None, start_kind
    specs = [
        _TrialSpec(params, rule_params.s, kind, word, topology, condition, seed, trial)
        for trial in range(trials)
    ]
    if workers > 1:
        with concurrent.futures.ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_run_trial, specs, chunksize=8))
    else:
        results = [_run_trial(spec) for spec in specs]
    results.sort(key=lambda result: result.trial)

    times = pd.Series([result.steps for result in results], dtype="int64")
    capped = sum(result.outcome == "cap" for result in results)
    if capped:
        logger.warning("%d of %d trials on %s hit the cap", capped, trials, params)
    return M.ExperimentReport(
        params=params,
        s=rule_params.s,
        start_kind=label,
        stop=condition,
        seed=seed,
        trials=results,
        mean=float(times.mean()),
        median=float(times.median()),
        maximum=int(times.max()),
        capped=capped,
        bound=bound,
    )


def experiment_frame(report: M.ExperimentReport) -> pd.DataFrame:
    """One row per trial: trial, seed, steps, terminal."""
    return pd.DataFrame(
        [
            {
                "trial": result.trial,
                "seed": result.seed,
                "steps": result.steps,
                "terminal": result.terminal,
            }
            for result in report.trials
        ],
        columns=["trial", "seed", "steps", "terminal"],
    )


def mean_level_dwell(report: M.ExperimentReport) -> pd.Series:
    """Mean number of picks spent at each h_max level, highest level first."""
    frame = pd.DataFrame([result.level_dwell for result in report.trials]).fillna(0)
    return frame.mean().sort_index(ascending=False)


def write_experiment(
    report: M.ExperimentReport,
    csv_path: t.Union[str, Path],
    json_path: t.Union[str, Path],
) -> None:
    """Per-trial rows as CSV; the summary and mean level dwell times as JSON."""
    atomic_write(csv_path, experiment_frame(report).to_csv(index=False))
    dwell = mean_level_dwell(report)
    document = {
        **report.summary(),
        "level_dwell": {str(level): float(mean) for level, mean in dwell.items()},
    }
    atomic_write(json_path, json.dumps(document, indent=2))


def fit_exponent(tots: t.Sequence[int], means: t.Sequence[float]) -> float:
    """Slope of log(mean time) against log(tot), by least squares."""
    if len(tots) != len(means) or len(tots) < 2:
        raise ValueError("an exponent fit needs at least two (tot, mean) points")
    if min(means) <= 0:
        raise ValueError("mean times must be positive for a log-log fit")
    slope, _ = np.polyfit(np.log(tots), np.log(means), 1)
    return float(slope)


def size_sweep(
    t_a: int,
    t_b: int,
    ns: t.Sequence[int],
    rule_params: M.RuleParams,
    start_kind: M.StartKind,
    trials: int,
    seed: int,
    stop: M.StopKind = "target",
    cap: t.Optional[int] = None,
    workers: int = 1,
) -> M.SweepReport:
    """One experiment per n, plus the fitted scaling exponent of mean time in tot."""
    experiments = [
        coalescence_experiment(
            M.LineParams(t_a=t_a, t_b=t_b, n=n),
            rule_params,
            start_kind,
            trials,
            seed,
            stop=stop,
            cap=cap,
            workers=workers,
        )
        for n in ns
    ]
    exponent = fit_exponent(
        [experiment.params.tot for experiment in experiments],
        [experiment.mean for experiment in experiments],
    )
    logger.info("scaling exponent over n=%s: %.3f", list(ns), exponent)
    experiments = [
        experiment.model_copy(update={"exponent": exponent})
        for experiment in experiments
    ]
    return M.SweepReport(
        t_a=t_a,
        t_b=t_b,
        s=rule_params.s,
        start_kind=start_kind,
        experiments=experiments,
        exponent=exponent,
    )


def sweep_frame(sweep: M.SweepReport) -> pd.DataFrame:
    """One row per instance with its summary statistics and bound."""
    return pd.DataFrame([experiment.summary() for experiment in sweep.experiments])
