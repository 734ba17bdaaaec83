from christoffel_flip.oracle.checks import convergence_check, stuck_check, verify_corpus
from christoffel_flip.oracle.constructions import (
    dichotomy_holds,
    flippable_views,
    impossibility_family,
    impossibility_report,
    rule_stability_probe,
    stabilizing_rule,
    stuck_config,
)
from christoffel_flip.oracle.graph import (
    ENUMERATION_CAP,
    EnumerationLimitError,
    HittingTime,
    TransitionGraph,
    absorbing_states,
    build_graph,
    enumerate_configs,
    exact_hitting_time,
    export_edges,
    reachable_set,
    recurrent_classes,
)

__all__ = [
    "ENUMERATION_CAP",
    "EnumerationLimitError",
    "HittingTime",
    "TransitionGraph",
    "absorbing_states",
    "build_graph",
    "convergence_check",
    "dichotomy_holds",
    "enumerate_configs",
    "exact_hitting_time",
    "export_edges",
    "flippable_views",
    "impossibility_family",
    "impossibility_report",
    "reachable_set",
    "recurrent_classes",
    "rule_stability_probe",
    "stabilizing_rule",
    "stuck_check",
    "stuck_config",
    "verify_corpus",
]
