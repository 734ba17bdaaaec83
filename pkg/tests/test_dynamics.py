import collections
import math

import pytest

import christoffel_flip.models as M
from christoffel_flip import core, dynamics
from christoffel_flip.rule import FrozenRule, active_sites

S2 = M.RuleParams(s=2)


def _bbaa():
    return core.configuration("bbaa", M.LineParams(t_a=1, t_b=1, n=2))


def test_trial_seeds_are_stable_and_distinct():
    seeds = [dynamics.trial_seed(7, trial) for trial in range(20)]
    assert seeds == [dynamics.trial_seed(7, trial) for trial in range(20)]
    assert len(set(seeds)) == 20
    assert all(0 <= seed < 2**64 for seed in seeds)


def test_step_records_events():
    state = dynamics.new_process(_bbaa(), S2, seed=3)
    assert state.active == {2}
    events = [dynamics.step(state)[1] for _ in range(50)]
    assert [event.step for event in events] == list(range(1, 51))
    assert all(1 <= event.chosen_index <= 3 for event in events)
    first_flip = next(event for event in events if event.flipped)
    assert first_flip.chosen_index == 2
    assert (first_flip.new_h_min, first_flip.new_h_max) == (0, 1)
    assert state.word == "baba"
    assert state.flips == 1


def test_run_stops_at_target():
    state = dynamics.new_process(_bbaa(), S2, seed=11)
    trace = dynamics.run(state, M.StopCondition(kind="target", cap=1000))
    assert trace.outcome == "satisfied"
    assert trace.terminal.word == "baba"
    assert trace.flips == 1
    assert [event.flipped for event in trace.events] == [True]
    assert trace.events[0].step == trace.steps


def test_run_reports_the_cap():
    start = _bbaa()
    state = dynamics.new_process(start, FrozenRule(2), seed=0)
    trace = dynamics.run(state, M.StopCondition(kind="christoffel", cap=25))
    assert trace.outcome == "cap"
    assert trace.steps == 25
    assert trace.terminal == start


def test_step_limit_is_satisfied_at_the_cap():
    state = dynamics.new_process(_bbaa(), M.RuleParams(s=2), seed=0)
    trace = dynamics.run(
        state, M.StopCondition(kind="step_limit", cap=10), record="all"
    )
    assert trace.outcome == "satisfied"
    assert trace.steps == 10
    assert len(trace.events) == 10


def test_runs_are_deterministic():
    params = M.LineParams(t_a=3, t_b=2, n=3)
    start = dynamics.canonical_start(params, "max_nonneg")
    traces = [
        dynamics.run(
            dynamics.new_process(start, M.RuleParams(s=5), seed=42),
            M.StopCondition(kind="target", cap=10**6),
            snapshot_every=10,
        )
        for _ in range(2)
    ]
    assert traces[0] == traces[1]
    assert traces[0].terminal == core.target_christoffel(params)


def test_snapshots_include_start_and_end():
    params = M.LineParams(t_a=2, t_b=1, n=3)
    start = dynamics.canonical_start(params, "max_nonneg")
    trace = dynamics.run(
        dynamics.new_process(start, M.RuleParams(s=3), seed=5),
        M.StopCondition(kind="target", cap=10**6),
        snapshot_every=7,
    )
    steps = [snap.step for snap in trace.snapshots]
    assert steps[0] == 0
    assert steps[-1] == trace.steps
    assert all(step % 7 == 0 for step in steps[:-1])
    assert trace.snapshot(0) == start


@pytest.mark.parametrize(
    "kind, word",
    [("max_nonneg", "bbbaaa"), ("min_nonpos", "aaabbb")],
)
def test_extreme_starts(kind, word):
    params = M.LineParams(t_a=1, t_b=1, n=3)
    assert dynamics.canonical_start(params, kind).word == word


def test_random_nonnegative_start():
    params = M.LineParams(t_a=3, t_b=2, n=3)
    for seed in range(10):
        start = dynamics.canonical_start(params, "random_nonnegative", seed=seed)
        assert core.is_nonnegative(start)
    assert dynamics.canonical_start(
        params, "random", seed=1
    ) == dynamics.canonical_start(params, "random", seed=1)


def test_height_band_never_widens_on_a_chain():
    params = M.LineParams(t_a=3, t_b=2, n=4)
    start = dynamics.canonical_start(params, "random", seed=9)
    state = dynamics.new_process(start, M.RuleParams(s=5), seed=9)
    assert state.check_invariants
    h_min, h_max = state.h_min, state.h_max
    for _ in range(5000):
        state.advance()
        assert h_min <= state.h_min and state.h_max <= h_max
        h_min, h_max = state.h_min, state.h_max
        assert state.heights == core.height_profile(state.config)
        assert (h_min, h_max) == (min(state.heights), max(state.heights))


def test_cycle_thickness_never_grows():
    params = M.LineParams(t_a=1, t_b=1, n=3)
    start = core.configuration("bbbaaa", params, topology="cycle")
    state = dynamics.new_process(start, M.RuleParams(s=2), seed=4)
    thickness = state.thickness
    trace = dynamics.run(state, M.StopCondition(kind="christoffel", cap=10**5))
    assert trace.outcome == "satisfied"
    assert core.thickness(trace.terminal) == 1
    assert core.thickness(trace.terminal) <= thickness
    assert state.heights == core.height_profile(state.config)


def test_incremental_active_set_matches_a_full_scan():
    params = M.LineParams(t_a=2, t_b=1, n=4)
    start = dynamics.canonical_start(params, "random", seed=2)
    state = dynamics.new_process(start, M.RuleParams(s=3), seed=2)
    for _ in range(500):
        state.advance()
        assert state.active == active_sites(state.config, M.RuleParams(s=3))


def test_trace_round_trip(tmp_path):
    state = dynamics.new_process(_bbaa(), S2, seed=1)
    trace = dynamics.run(
        state, M.StopCondition(kind="target", cap=100), snapshot_every=1
    )
    path = dynamics.write_trace(trace, tmp_path / "run.jsonl")
    lines = path.read_text().splitlines()
    assert '"kind":"header"' in lines[0]
    assert '"kind":"terminal"' in lines[-1]
    assert dynamics.read_trace(path) == trace


def test_read_trace_rejects_incomplete_files(tmp_path):
    path = tmp_path / "broken.jsonl"
    path.write_text('{"step": 1, "word": "ab"}\n')
    with pytest.raises(ValueError, match="header"):
        dynamics.read_trace(path)


@pytest.mark.parametrize("topology, low", [("chain", 1), ("cycle", 0)])
def test_scheduler_picks_sites_uniformly(topology, low):
    params = M.LineParams(t_a=2, t_b=1, n=2)
    start = core.target_christoffel(params, topology)
    state = dynamics.new_process(start, FrozenRule(3), seed=17)
    picks = 10**5
    counts = collections.Counter(state.advance()[0] for _ in range(picks))
    sites = range(low, params.tot)
    assert set(counts) == set(sites)
    p = 1 / len(sites)
    sigma = math.sqrt(picks * p * (1 - p))
    for i in sites:
        assert abs(counts[i] - picks * p) <= 4 * sigma, (i, counts[i])


class _EqualLettersRule:
    sight = 2

    def __call__(self, left_word, right_word):
        return left_word[0] == right_word[0]


def test_a_rule_cannot_flip_equal_letters():
    start = core.configuration("aabb", M.LineParams(t_a=1, t_b=1, n=2))
    state = dynamics.new_process(start, _EqualLettersRule(), seed=0)
    assert state.active == set()
    for _ in range(20):
        assert not state.advance()[1]
    assert state.word == "aabb"
    assert state.heights == core.height_profile(start) == [0, -1, -2, -1, 0]
    assert (state.h_min, state.h_max) == (-2, 0)
