from christoffel_flip.models.configuration import (
    Configuration,
    Letter,
    LineParams,
    Site,
    Topology,
    Word,
)
from christoffel_flip.models.process import (
    Outcome,
    Snapshot,
    StartKind,
    StepEvent,
    StopCondition,
    StopKind,
    Trace,
    TraceFooter,
    TraceHeader,
)
from christoffel_flip.models.report import (
    CheckResult,
    CheckStatus,
    CorpusReport,
    EnergyContext,
    ExperimentReport,
    HittingTimeReport,
    ImpossibilityReport,
    SweepReport,
    TrialResult,
)
from christoffel_flip.models.render import RenderSpec
from christoffel_flip.models.rule import RuleParams, SlopeEstimate
from christoffel_flip.models.run import RunConfig

__all__ = [
    "CheckResult",
    "CheckStatus",
    "Configuration",
    "CorpusReport",
    "EnergyContext",
    "ExperimentReport",
    "HittingTimeReport",
    "ImpossibilityReport",
    "Letter",
    "LineParams",
    "Outcome",
    "RenderSpec",
    "RuleParams",
    "RunConfig",
    "Site",
    "SlopeEstimate",
    "Snapshot",
    "StartKind",
    "StepEvent",
    "StopCondition",
    "StopKind",
    "SweepReport",
    "Topology",
    "Trace",
    "TraceFooter",
    "TraceHeader",
    "TrialResult",
    "Word",
]
