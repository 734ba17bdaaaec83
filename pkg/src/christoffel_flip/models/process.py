"""Defines the pydantic models for runs of the random process and their traces."""

from __future__ import annotations

import typing as t

from pydantic import BaseModel, ConfigDict, Field, model_validator

from christoffel_flip.models.configuration import Configuration, LineParams, Topology

StartKind = t.Literal["max_nonneg", "min_nonpos", "random", "random_nonnegative"]
StopKind = t.Literal["stable", "christoffel", "strip", "target", "step_limit"]
Outcome = t.Literal["satisfied", "cap"]


class StopCondition(BaseModel):
    """When to stop a run. ``cap`` always bounds the run, whatever the kind."""

    model_config = ConfigDict(frozen=True)

    kind: StopKind = "step_limit"
    cap: t.Annotated[int, Field(gt=0)]

    def __str__(self) -> str:
        return f"{self.kind}(cap={self.cap})"


class StepEvent(BaseModel):
    """One scheduler pick."""

    model_config = ConfigDict(frozen=True)

    step: int
    chosen_index: int
    flipped: bool
    new_h_max: int
    new_h_min: int


class Snapshot(BaseModel):
    model_config = ConfigDict(frozen=True)

    step: int
    word: str


class TraceHeader(BaseModel):
    """First line of a trace file: everything needed to replay the run."""

    kind: t.Literal["header"] = "header"
    params: LineParams
    s: int
    seed: int
    topology: Topology
    start: str
    stop: StopCondition


class TraceFooter(BaseModel):
    kind: t.Literal["terminal"] = "terminal"
    outcome: Outcome
    steps: int
    flips: int
    word: str


class Trace(BaseModel):
    """Result of ``dynamics.run``."""

    header: TraceHeader
    outcome: Outcome
    steps: int
    flips: int
    events: t.List[StepEvent] = []
    snapshots: t.List[Snapshot] = []
    terminal: Configuration

    @model_validator(mode="after")
    def terminal_matches_header(self) -> Trace:
        if self.terminal.params != self.header.params:
            raise ValueError("terminal configuration belongs to another instance")
        return self

    def snapshot(self, step: int) -> Configuration:
        """The configuration recorded at ``step``."""
        for snap in self.snapshots:
            if snap.step == step:
                return self.terminal.with_word(snap.word)
        raise KeyError(f"no snapshot recorded at step {step}")
