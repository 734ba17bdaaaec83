"""Defines the validated run configuration built from command-line flags."""

from __future__ import annotations

import argparse
import typing as t
from pathlib import Path

from pydantic import BaseModel, ConfigDict, Field, model_validator

from christoffel_flip.models.configuration import Configuration, LineParams, Topology
from christoffel_flip.models.process import StartKind, StopKind

Command = t.Literal["simulate", "verify", "oracle", "stats", "impossibility", "render"]
OutputFormat = t.Literal["json", "csv", "svg", "ascii"]
TargetKind = t.Literal["target", "christoffel", "strip", "stable"]

_NEEDS_INSTANCE = ("simulate", "verify", "oracle")


class RunConfig(BaseModel):
    """Everything one subcommand needs, checked before any work begins."""

    command: Command
    t_a: t.Annotated[t.Optional[int], Field(alias="ta", gt=0)] = None
    t_b: t.Annotated[t.Optional[int], Field(alias="tb", gt=0)] = None
    n: t.Annotated[t.Optional[int], Field(gt=0)] = None
    sweep: t.List[t.Annotated[int, Field(gt=0)]] = []
    sight: t.Annotated[int, Field(ge=2)] = 2
    seed: t.Annotated[int, Field(ge=0, lt=2**64)] = 0
    topology: Topology = "chain"
    cap: t.Annotated[int, Field(gt=0)] = 1_000_000
    enumeration_cap: t.Annotated[int, Field(gt=0)] = 1_000_000
    start: t.Optional[StartKind] = None
    start_word: t.Optional[str] = None
    stop: StopKind = "target"
    target: TargetKind = "target"
    trials: t.Annotated[int, Field(ge=1)] = 1
    workers: t.Annotated[int, Field(ge=1)] = 1
    k: t.Annotated[t.Optional[int], Field(ge=2)] = None
    snapshot_every: t.Annotated[t.Optional[int], Field(gt=0)] = None
    snapshots: t.List[t.Annotated[int, Field(ge=0)]] = []
    record: t.Literal["all", "flips", "none"] = "all"
    cell: t.Annotated[int, Field(ge=1)] = 20
    trace: t.Optional[Path] = None
    out: t.Optional[Path] = None
    svg: t.Optional[Path] = None
    edges: t.Optional[Path] = None
    format: t.Optional[OutputFormat] = None
    verbosity: int = 0

    model_config = ConfigDict(populate_by_name=True)

    @model_validator(mode="after")
    def check_command_inputs(self) -> RunConfig:
        if self.command in _NEEDS_INSTANCE or (
            self.command == "stats" and not self.sweep
        ):
            if None in (self.t_a, self.t_b, self.n):
                raise ValueError(f"{self.command} needs --ta, --tb and --n")
        if self.command == "stats" and None in (self.t_a, self.t_b):
            raise ValueError("stats needs --ta and --tb")
        if self.t_a is not None and self.t_b is not None:
            LineParams(t_a=self.t_a, t_b=self.t_b, n=self.n or 1)
        if self.start_word is not None:
            if self.command not in _NEEDS_INSTANCE:
                raise ValueError(f"--start-word is not used by {self.command}")
            self.initial_config()
        if self.start is not None and self.start_word is not None:
            raise ValueError("--start and --start-word are mutually exclusive")
        if self.command == "impossibility" and self.k is None:
            raise ValueError("impossibility needs --k")
        if self.command == "render" and self.trace is None:
            raise ValueError("render needs --trace")
        if self.snapshot_every and any(
            step % self.snapshot_every for step in self.snapshots
        ):
            raise ValueError("--snapshots must be multiples of --snapshot-every")
        return self

    @property
    def params(self) -> LineParams:
        if self.t_a is None or self.t_b is None or self.n is None:
            raise ValueError("no complete instance was given")
        return LineParams(t_a=self.t_a, t_b=self.t_b, n=self.n)

    def initial_config(self) -> t.Optional[Configuration]:
        """The explicit start, validated against the instance."""
        if self.start_word is None:
            return None
        return Configuration(
            word=self.start_word, params=self.params, topology=self.topology
        )

    @classmethod
    def from_namespace(cls, ns: argparse.Namespace) -> RunConfig:
        """Create a run configuration from parsed command-line flags."""
        values = {k: v for k, v in vars(ns).items() if v is not None}
        if "start" in values:
            values["start"] = values["start"].replace("-", "_")
        return cls.model_validate(values)
