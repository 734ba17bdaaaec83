"""The random sequential process: pick a site uniformly, flip it if active.

One time unit is one scheduler pick, whether or not a flip happens. Runs are
reproducible: the stream is numpy's PCG64 seeded with a 64-bit integer, and
parallel trials use substreams derived from (master seed, trial index).
"""

from __future__ import annotations

import collections
import json
import logging
import typing as t
from pathlib import Path

import numpy as np

import christoffel_flip.models as M
from christoffel_flip import core
from christoffel_flip.rule import RuleLike, ThreadRule, as_rule, site_is_active
from christoffel_flip.utils import atomic_write

logger = logging.getLogger(__name__)

RNG_CHUNK = 4096
"""Site indices are drawn from the stream in blocks of this size."""

RecordMode = t.Literal["all", "flips", "none"]


def make_rng(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(seed))


def trial_seed(master_seed: int, trial: int) -> int:
    """The substream seed of one trial; independent of worker scheduling."""
    state = np.random.SeedSequence([master_seed, trial]).generate_state(1, np.uint64)
    return int(state[0])


class ProcessState:
    """A configuration under the process, with its step count and stream.

    Letters, heights and the active set are kept incrementally: a flip at
    site i can only change the activity of sites i − s .. i + s.
    """

    def __init__(
        self,
        config: M.Configuration,
        rule: RuleLike,
        seed: int,
        check_invariants: t.Optional[bool] = None,
    ) -> None:
        self.params = config.params
        self.topology = config.topology
        self.rule = as_rule(rule)
        self.seed = seed
        self.start = config.word
        self.rng = make_rng(seed)
        self.step_count = 0
        self.flips = 0
        self.letters = list(config.word)
        self.heights = core.height_profile(config)
        self.level_counts = collections.Counter(self.heights)
        self.h_min = min(self.heights)
        self.h_max = max(self.heights)
        self.level_dwell: t.Dict[int, int] = collections.defaultdict(int)
        if check_invariants is None:
            check_invariants = isinstance(
                self.rule, ThreadRule
            ) and self.params.visible_by(self.rule.sight)
        self.check_invariants = check_invariants
        self._low = 0 if self.topology == "cycle" else 1
        self._draws: t.Iterator[int] = iter(())
        word = self.word
        self.active = {
            i for i in range(self._low, self.tot) if self._site_active(word, i)
        }

    @property
    def tot(self) -> int:
        return self.params.tot

    @property
    def word(self) -> str:
        return "".join(self.letters)

    @property
    def config(self) -> M.Configuration:
        return M.Configuration(
            word=self.word, params=self.params, topology=self.topology
        )

    @property
    def thickness(self) -> int:
        return self.h_max - self.h_min

    def _site_active(self, word: str, i: int) -> bool:
        return site_is_active(word, self.topology, i, self.rule)

    def _next_index(self) -> int:
        index = next(self._draws, None)
        if index is None:
            block = self.rng.integers(self._low, self.tot, size=RNG_CHUNK)
            self._draws = iter(block.tolist())
            index = next(self._draws)
        return index

    def _move_height(self, i: int, new: int) -> None:
        old = self.heights[i]
        self.heights[i] = new
        self.level_counts[old] -= 1
        if not self.level_counts[old]:
            del self.level_counts[old]
        self.level_counts[new] += 1

    def _apply_flip(self, i: int) -> None:
        left, right = (i - 1) % self.tot, i % self.tot
        increasing = self.letters[left] == "a"
        letters = self.letters
        letters[left], letters[right] = letters[right], letters[left]
        if i == 0:
            # c_0 is pinned at height 0, so the rest of the cycle moves instead
            shift = -self.params.per if increasing else self.params.per
            for j in range(1, self.tot):
                self._move_height(j, self.heights[j] + shift)
        else:
            delta = self.params.per if increasing else -self.params.per
            self._move_height(i, self.heights[i] + delta)
        self.h_min = min(self.level_counts)
        self.h_max = max(self.level_counts)
        s = self.rule.sight
        if self.topology == "cycle":
            around = {(i + d) % self.tot for d in range(-s, s + 1)}
        else:
            around = set(range(max(1, i - s), min(self.tot - 1, i + s) + 1))
        word = self.word
        for j in around:
            if self._site_active(word, j):
                self.active.add(j)
            else:
                self.active.discard(j)

    def advance(self) -> t.Tuple[int, bool]:
        """One scheduler pick; returns the chosen index and whether it flipped."""
        self.level_dwell[self.h_max] += 1
        i = self._next_index()
        self.step_count += 1
        flipped = i in self.active
        if flipped:
            before = (self.h_min, self.h_max)
            self._apply_flip(i)
            self.flips += 1
            if self.check_invariants:
                self._assert_monotone(*before)
        return i, flipped

    def event(self, i: int, flipped: bool) -> M.StepEvent:
        return M.StepEvent(
            step=self.step_count,
            chosen_index=i,
            flipped=flipped,
            new_h_max=self.h_max,
            new_h_min=self.h_min,
        )

    def step(self) -> t.Tuple[ProcessState, M.StepEvent]:
        """One scheduler pick, as an event."""
        i, flipped = self.advance()
        return self, self.event(i, flipped)

    def _assert_monotone(self, h_min: int, h_max: int) -> None:
        if self.topology == "cycle":
            assert self.thickness <= h_max - h_min, (
                f"thickness grew at step {self.step_count}: {self.word}"
            )
            return
        assert self.h_min >= h_min and self.h_max <= h_max, (
            f"height band widened at step {self.step_count}: {self.word}"
        )

    def satisfies(self, kind: M.StopKind) -> bool:
        per = self.params.per
        if kind == "stable":
            return not self.active
        if kind == "christoffel":
            return self.thickness == per - 1
        if kind == "strip":
            return self.h_min >= -per + 1 and self.h_max <= per - 1
        if kind == "target":
            # the band [0, per − 1] admits a single word from height 0
            return self.h_min == 0 and self.h_max == per - 1
        return False


def new_process(
    config: M.Configuration,
    rule_params: RuleLike,
    seed: int,
    check_invariants: t.Optional[bool] = None,
) -> ProcessState:
    """A fresh process at step 0."""
    return ProcessState(config, rule_params, seed, check_invariants=check_invariants)


def step(state: ProcessState) -> t.Tuple[ProcessState, M.StepEvent]:
    return state.step()


def run(
    state: ProcessState,
    stop: M.StopCondition,
    snapshot_every: t.Optional[int] = None,
    record: RecordMode = "flips",
) -> M.Trace:
    """Step until the stop condition holds or ``stop.cap`` picks were made.

    ``record`` keeps every event, only the flips, or none of them.
    Snapshots are taken at step 0, every ``snapshot_every`` steps and at the
    final step.
    """
    events: t.List[M.StepEvent] = []
    snapshots: t.List[M.Snapshot] = []
    if snapshot_every:
        snapshots.append(M.Snapshot(step=state.step_count, word=state.word))
    satisfied = state.satisfies(stop.kind)
    steps_taken = 0
    while not satisfied and steps_taken < stop.cap:
        i, flipped = state.advance()
        steps_taken += 1
        if record == "all" or (record == "flips" and flipped):
            events.append(state.event(i, flipped))
        if snapshot_every and state.step_count % snapshot_every == 0:
            snapshots.append(M.Snapshot(step=state.step_count, word=state.word))
        if flipped:
            satisfied = state.satisfies(stop.kind)

    if stop.kind == "step_limit":
        outcome: M.Outcome = "satisfied"
    else:
        outcome = "satisfied" if satisfied else "cap"
    if outcome == "cap":
        logger.warning(
            "%s on %s: cap of %d steps exhausted at thickness %d",
            stop.kind,
            state.params,
            stop.cap,
            state.thickness,
        )
    if snapshot_every and (not snapshots or snapshots[-1].step != state.step_count):
        snapshots.append(M.Snapshot(step=state.step_count, word=state.word))
    header = M.TraceHeader(
        params=state.params,
        s=state.rule.sight,
        seed=state.seed,
        topology=state.topology,
        start=state.start,
        stop=stop,
    )
    return M.Trace(
        header=header,
        outcome=outcome,
        steps=state.step_count,
        flips=state.flips,
        events=events,
        snapshots=snapshots,
        terminal=state.config,
    )


def canonical_start(
    params: M.LineParams,
    kind: M.StartKind,
    seed: int = 0,
    topology: M.Topology = "chain",
) -> M.Configuration:
    """Standard initial configurations.

    ``max_nonneg`` is b^B a^A, ``min_nonpos`` is a^A b^B, ``random`` is
    uniform over all words with the instance's letter counts and
    ``random_nonnegative`` is uniform over the nonnegative ones (rejection).
    """
    if kind == "max_nonneg":
        word = "b" * params.B + "a" * params.A
    elif kind == "min_nonpos":
        word = "a" * params.A + "b" * params.B
    else:
        rng = make_rng(seed)
        letters = np.array(["a"] * params.A + ["b"] * params.B)
        while True:
            word = "".join(rng.permutation(letters).tolist())
            if kind == "random" or min(
                core.word_heights(word, params.t_a, params.t_b)
            ) >= 0:
                break
    return M.Configuration(word=word, params=params, topology=topology)


def _dump(model: t.Any) -> str:
    return model.model_dump_json(by_alias=True)


def trace_lines(trace: M.Trace) -> t.Iterator[str]:
    """The JSON-lines rendering of a trace, header first and terminal last."""
    yield _dump(trace.header)
    for event in trace.events:
        yield _dump(event)
    for snap in trace.snapshots:
        yield _dump(snap)
    yield _dump(
        M.TraceFooter(
            outcome=trace.outcome,
            steps=trace.steps,
            flips=trace.flips,
            word=trace.terminal.word,
        )
    )


def write_trace(trace: M.Trace, path: t.Union[str, Path]) -> Path:
    return atomic_write(path, "".join(line + "\n" for line in trace_lines(trace)))


def read_trace(path: t.Union[str, Path]) -> M.Trace:
    """Parse a JSON-lines trace written by ``write_trace``."""
    header: t.Optional[M.TraceHeader] = None
    footer: t.Optional[M.TraceFooter] = None
    events: t.List[M.StepEvent] = []
    snapshots: t.List[M.Snapshot] = []
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            if not line.strip():
                continue
            record = json.loads(line)
            kind = record.get("kind")
            if kind == "header":
                header = M.TraceHeader.model_validate(record)
            elif kind == "terminal":
                footer = M.TraceFooter.model_validate(record)
            elif "chosen_index" in record:
                events.append(M.StepEvent.model_validate(record))
            elif "word" in record:
                snapshots.append(M.Snapshot.model_validate(record))
            else:
                raise ValueError(f"{path}:{lineno}: unrecognized trace line")
    if header is None or footer is None:
        raise ValueError(f"{path}: trace needs a header and a terminal line")
    terminal = M.Configuration(
        word=footer.word, params=header.params, topology=header.topology
    )
    return M.Trace(
        header=header,
        outcome=footer.outcome,
        steps=footer.steps,
        flips=footer.flips,
        events=events,
        snapshots=snapshots,
        terminal=terminal,
    )
