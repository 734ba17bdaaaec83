"""Defines the pydantic models for energy contexts, experiments and oracle reports."""

from __future__ import annotations

import typing as t

from pydantic import BaseModel, ConfigDict, Field

from christoffel_flip.models.configuration import LineParams, Topology
from christoffel_flip.models.process import StartKind, StopCondition

CheckStatus = t.Literal["pass", "fail", "skipped"]


class EnergyContext(BaseModel):
    """Reference level and Border⁺ set, fixed from an initial configuration."""

    model_config = ConfigDict(frozen=True, populate_by_name=True)

    h0: t.Annotated[int, Field(alias="H0")]
    border_plus: t.Tuple[int, ...]
    params: LineParams
    topology: Topology = "chain"


class TrialResult(BaseModel):
    trial: int
    seed: int
    steps: int
    terminal: str
    outcome: t.Literal["satisfied", "cap"]
    level_dwell: t.Dict[int, int] = {}


class ExperimentReport(BaseModel):
    """Coalescence times of independent seeded trials on one instance."""

    params: LineParams
    s: int
    start_kind: str
    stop: StopCondition
    seed: int
    trials: t.List[TrialResult]
    mean: float
    median: float
    maximum: int
    capped: int
    bound: int
    exponent: t.Optional[float] = None

    @property
    def times(self) -> t.List[int]:
        return [trial.steps for trial in self.trials]

    def summary(self) -> t.Dict[str, t.Any]:
        return {
            "instance": str(self.params),
            "tot": self.params.tot,
            "s": self.s,
            "trials": len(self.trials),
            "mean": self.mean,
            "median": self.median,
            "max": self.maximum,
            "capped": self.capped,
            "bound": self.bound,
            "exponent": self.exponent,
        }


class SweepReport(BaseModel):
    """Experiments over increasing n with the fitted log-log exponent."""

    t_a: int
    t_b: int
    s: int
    start_kind: StartKind
    experiments: t.List[ExperimentReport]
    exponent: float


class CheckResult(BaseModel):
    """Outcome of one exhaustive check. Failures are data, not errors."""

    check: str
    instance: str
    status: CheckStatus
    detail: str = ""
    counterexample: t.Optional[t.Dict[str, t.Any]] = None


class CorpusReport(BaseModel):
    instance: str
    s: int
    topology: Topology
    states: int
    checks: t.List[CheckResult]

    @property
    def passed(self) -> bool:
        return all(check.status != "fail" for check in self.checks)


class HittingTimeReport(BaseModel):
    start: str
    target: str
    expected_steps: str
    """Exact rational as ``p/q`` (or an integer), or ``+inf``."""
    approx: float
    method: t.Literal["exact", "sparse", "reachability"]
    reachable: int


class ImpossibilityReport(BaseModel):
    s: int
    k: int
    c: str
    c_prime: str
    c_is_christoffel: bool
    c_prime_thickness: int
    rule: str
    c_stable: bool
    c_prime_stable: bool

    @property
    def horn(self) -> t.Literal["christoffel-unstable", "thick-stable"]:
        return "thick-stable" if self.c_stable else "christoffel-unstable"
