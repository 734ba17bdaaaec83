"""Exhaustive checks of the process's guarantees on small instances.

Every check returns a ``CheckResult``; a failure carries the first
counterexample found. Checks whose hypotheses do not hold for the instance
are reported as skipped with the reason. The usual reasons are a slope the
sight cannot see and a chain-only statement asked of a cycle. A chain no
longer than the sight is frozen, so its dynamics checks are skipped too.
"""

from __future__ import annotations

import logging
import typing as t

import networkx as nx

import christoffel_flip.models as M
from christoffel_flip import analysis, core
from christoffel_flip.oracle.constructions import STUCK_SIGHT, stuck_config
from christoffel_flip.oracle.graph import (
    ENUMERATION_CAP,
    TransitionGraph,
    build_graph,
    recurrent_classes,
)
from christoffel_flip.rule import RuleLike, as_rule

logger = logging.getLogger(__name__)

Counterexample = t.Optional[t.Dict[str, t.Any]]


class _Check:
    """Collects the outcome of one named check over a corpus."""

    def __init__(self, name: str, params: M.LineParams) -> None:
        self.name = name
        self.instance = str(params)
        self.counterexample: Counterexample = None
        self.detail = ""

    def fail(self, detail: str, **counterexample: t.Any) -> None:
        if self.counterexample is None:
            self.detail = detail
            self.counterexample = counterexample

    @property
    def failed(self) -> bool:
        return self.counterexample is not None

    def result(self, passed_detail: str = "") -> M.CheckResult:
        if self.failed:
            logger.warning("%s failed on %s: %s", self.name, self.instance, self.detail)
            return M.CheckResult(
                check=self.name,
                instance=self.instance,
                status="fail",
                detail=self.detail,
                counterexample=self.counterexample,
            )
        return M.CheckResult(
            check=self.name, instance=self.instance, status="pass", detail=passed_detail
        )


def _skipped(name: str, params: M.LineParams, reason: str) -> M.CheckResult:
    return M.CheckResult(
        check=name, instance=str(params), status="skipped", detail=reason
    )


def _not_visible(params: M.LineParams, sight: int) -> str:
    return f"hypothesis violated: per = {params.per} > sight = {sight}"


def _frozen(params: M.LineParams, sight: int, topology: M.Topology) -> bool:
    """No chain site has ``sight`` letters on either side, which δ needs to flip."""
    return topology == "chain" and params.tot <= sight


def _no_full_sight(params: M.LineParams, sight: int) -> str:
    return (
        "hypothesis violated: no site has full sight "
        f"(tot = {params.tot} <= sight = {sight})"
    )


class _State(t.NamedTuple):
    word: str
    profile: t.List[int]
    h_min: int
    h_max: int


def _states(graph: TransitionGraph) -> t.List[_State]:
    params = graph.params
    states = []
    for word in graph.states:
        profile = core.word_heights(word, params.t_a, params.t_b)
        states.append(_State(word, profile, min(profile), max(profile)))
    return states


def _monotonicity(
    graph: TransitionGraph, states: t.List[_State]
) -> t.List[M.CheckResult]:
    thickness = _Check("thickness-monotone", graph.params)
    heights = _Check("height-monotone", graph.params)
    for k, state in enumerate(states):
        for i, target in graph.moves(k):
            after = states[target]
            if after.h_max - after.h_min > state.h_max - state.h_min:
                thickness.fail(
                    "an active flip increased the thickness",
                    word=state.word,
                    site=i,
                    after=after.word,
                )
            if graph.topology == "chain" and (
                after.h_min < state.h_min or after.h_max > state.h_max
            ):
                heights.fail(
                    "an active flip widened the height band",
                    word=state.word,
                    site=i,
                    after=after.word,
                )
    results = [thickness.result()]
    if graph.topology == "chain":
        results.append(heights.result())
    else:
        results.append(
            _skipped(
                "height-monotone",
                graph.params,
                "a rooted cycle shifts every height when c_0 flips",
            )
        )
    return results


def _christoffel_stability(
    graph: TransitionGraph, states: t.List[_State]
) -> M.CheckResult:
    check = _Check("christoffel-stable", graph.params)
    per = graph.params.per
    count = 0
    for k, state in enumerate(states):
        if state.h_max - state.h_min != per - 1:
            continue
        count += 1
        moves = graph.moves(k)
        if moves:
            check.fail(
                "a Christoffel configuration has an active site",
                word=state.word,
                site=moves[0][0],
            )
    return check.result(f"{count} Christoffel configurations, none active")


def _no_isolated_extremum(
    graph: TransitionGraph, states: t.List[_State]
) -> M.CheckResult:
    check = _Check("no-isolated-maximum", graph.params)
    tot, per = graph.params.tot, graph.params.per

    def neighbours(profile: t.List[int], i: int) -> t.Tuple[t.Optional[int], ...]:
        return tuple(profile[j] if 0 <= j <= tot else None for j in (i - per, i + per))

    for k, state in enumerate(states):
        for i, target in graph.moves(k):
            after = states[target].profile
            if after[i] == state.h_max and state.profile[i] + per == state.h_max:
                if state.h_max not in neighbours(after, i):
                    check.fail(
                        "a flip to h_max left the new maximum isolated",
                        word=state.word,
                        site=i,
                    )
            if after[i] == state.h_min and state.profile[i] - per == state.h_min:
                if state.h_min not in neighbours(after, i):
                    check.fail(
                        "a flip to h_min left the new minimum isolated",
                        word=state.word,
                        site=i,
                    )
    return check.result()


def _active_at_extremum(
    graph: TransitionGraph, states: t.List[_State], sight: int
) -> M.CheckResult:
    """A site at h_min with a site at least per higher within per on its left,
    and full sight on its right, is active; mirrored at h_max."""
    check = _Check("active-at-extremum", graph.params)
    tot, per = graph.params.tot, graph.params.per
    for k, state in enumerate(states):
        active = {i for i, _ in graph.moves(k)}
        profile = state.profile
        for i in range(1, tot):
            if profile[i] == state.h_min and i <= tot - sight:
                lifted = any(
                    profile[i - j] - per >= state.h_min
                    for j in range(1, min(per, i) + 1)
                )
                if lifted and i not in active:
                    check.fail(
                        "a minimum with a raised left neighbourhood is inactive",
                        word=state.word,
                        site=i,
                    )
            if profile[i] == state.h_max and i >= sight:
                lowered = any(
                    profile[i + j] + per <= state.h_max
                    for j in range(1, min(per, tot - i) + 1)
                )
                if lowered and i not in active:
                    check.fail(
                        "a maximum with a lowered right neighbourhood is inactive",
                        word=state.word,
                        site=i,
                    )
    return check.result()


def _energy_drift(graph: TransitionGraph, states: t.List[_State]) -> M.CheckResult:
    """Nonpositive exact drift, an energy-changing index and E ≤ 3n, for every
    configuration with h_max ≥ per under the context at its own h_max."""
    check = _Check("energy-drift", graph.params)
    params = graph.params
    checked = 0
    worst = None
    for k, state in enumerate(states):
        if state.h_max < params.per:
            continue
        ctx = analysis.energy_context_at(params, state.h_max, graph.topology)
        top, _, _ = analysis.profile_top_down_up(state.profile, ctx)
        base = analysis.word_energy(state.word, ctx)
        checked += 1
        if not top <= set(ctx.border_plus):
            check.fail("Top+ is not inside Border+", word=state.word)
        if base > 3 * params.n:
            check.fail("energy above 3n", word=state.word, energy=base)
        changes = [
            analysis.word_energy(graph.word(target), ctx) - base
            for target in graph.successors[k]
        ]
        drift = sum(changes)
        worst = drift if worst is None else max(worst, drift)
        if drift > 0:
            check.fail(
                "positive expected energy drift",
                word=state.word,
                drift=f"{drift}/{len(changes)}",
            )
        if not any(changes):
            check.fail("no index changes the energy", word=state.word)
    if worst is None:
        return check.result("no configuration reaches h_max >= per")
    return check.result(
        f"{checked} configurations, largest drift numerator {worst}/{graph.out_degree}"
    )


def verify_corpus(
    params: M.LineParams,
    rule_params: RuleLike,
    topology: M.Topology = "chain",
    cap: int = ENUMERATION_CAP,
) -> M.CorpusReport:
    """Every guarantee of the rule, checked over all configurations.

    Thickness and height monotonicity, Christoffel stability, isolated
    extrema, activity at extrema and the energy drift. All but the last two
    need the slope visible by the sight; those two are chain statements.
    """
    rule = as_rule(rule_params)
    graph = build_graph(params, rule, topology, cap=cap)
    states = _states(graph)
    visible = params.visible_by(rule.sight)
    checks: t.List[M.CheckResult] = []
    if visible:
        checks.extend(_monotonicity(graph, states))
        checks.append(_christoffel_stability(graph, states))
    else:
        reason = _not_visible(params, rule.sight)
        for name in ("thickness-monotone", "height-monotone", "christoffel-stable"):
            checks.append(_skipped(name, params, reason))
    chain_checks = (
        ("no-isolated-maximum", lambda: _no_isolated_extremum(graph, states)),
        ("active-at-extremum", lambda: _active_at_extremum(graph, states, rule.sight)),
        ("energy-drift", lambda: _energy_drift(graph, states)),
    )
    for name, run_check in chain_checks:
        if not visible:
            checks.append(_skipped(name, params, _not_visible(params, rule.sight)))
        elif topology != "chain":
            checks.append(_skipped(name, params, "stated for the chain only"))
        elif name == "energy-drift" and _frozen(params, rule.sight, topology):
            checks.append(_skipped(name, params, _no_full_sight(params, rule.sight)))
        else:
            checks.append(run_check())
    return M.CorpusReport(
        instance=str(params),
        s=rule.sight,
        topology=topology,
        states=len(graph),
        checks=checks,
    )


def _closed_classes_from(
    graph: TransitionGraph, starts: t.Iterable[int]
) -> t.List[t.Set[str]]:
    reachable: t.Set[int] = set()
    for k in starts:
        if k not in reachable:
            reachable |= nx.descendants(graph.digraph, k) | {k}
    words = {graph.word(k) for k in reachable}
    return [cls for cls in recurrent_classes(graph) if cls <= words]


def convergence_check(
    params: M.LineParams,
    rule_params: RuleLike,
    topology: M.Topology = "chain",
    cap: int = ENUMERATION_CAP,
) -> M.CorpusReport:
    """Where the process can end up, from the exact chain.

    Chain: from nonnegative starts the only closed class is the target, and
    from any start every closed class lies in the strip
    −per + 1 ≤ h_min, h_max ≤ per − 1. Cycle: every closed class and every
    stable state is Christoffel.
    """
    rule = as_rule(rule_params)
    graph = build_graph(params, rule, topology, cap=cap)
    classes = recurrent_classes(graph)
    checks: t.List[M.CheckResult] = []
    if not params.visible_by(rule.sight):
        reason = _not_visible(params, rule.sight)
        names = (
            ("nonnegative-coalescence", "bounded-strip")
            if topology == "chain"
            else ("cyclic-christoffel", "stable-christoffel")
        )
        checks.extend(_skipped(name, params, reason) for name in names)
    elif _frozen(params, rule.sight, topology):
        reason = _no_full_sight(params, rule.sight)
        for name in ("nonnegative-coalescence", "bounded-strip"):
            checks.append(_skipped(name, params, reason))
    elif topology == "chain":
        target = core.target_christoffel(params).word
        nonnegative = [
            graph.rank(word)
            for word in graph.states
            if min(core.word_heights(word, params.t_a, params.t_b)) >= 0
        ]
        coalescence = _Check("nonnegative-coalescence", params)
        for cls in _closed_classes_from(graph, nonnegative):
            if cls != {target}:
                coalescence.fail(
                    "a closed class other than the target is reachable "
                    "from a nonnegative start",
                    recurrent_class=sorted(cls)[:10],
                )
        checks.append(
            coalescence.result(
                f"{len(nonnegative)} nonnegative starts, all absorbed by {target}"
            )
        )
        strip = _Check("bounded-strip", params)
        for cls in classes:
            for word in sorted(cls):
                if not core.in_strip(M.Configuration(word=word, params=params)):
                    strip.fail("a closed class leaves the strip", word=word)
                    break
        checks.append(strip.result(f"{len(classes)} closed classes inside the strip"))
    else:
        cyclic = _Check("cyclic-christoffel", params)
        for cls in classes:
            for word in sorted(cls):
                profile = core.word_heights(word, params.t_a, params.t_b)
                if max(profile) - min(profile) != params.per - 1:
                    cyclic.fail("a closed class is not Christoffel", word=word)
                    break
        checks.append(cyclic.result(f"{len(classes)} closed classes, all Christoffel"))
        stable = _Check("stable-christoffel", params)
        for k in range(len(graph)):
            if graph.is_absorbing(k):
                profile = core.word_heights(graph.word(k), params.t_a, params.t_b)
                if max(profile) - min(profile) != params.per - 1:
                    stable.fail("a stable state is not Christoffel", word=graph.word(k))
        checks.append(stable.result())
    return M.CorpusReport(
        instance=str(params),
        s=rule.sight,
        topology=topology,
        states=len(graph),
        checks=checks,
    )


def stuck_check(n: int, cap: int = ENUMERATION_CAP) -> M.CheckResult:
    """From the stuck configuration, c_1 stays at 3 and c_{tot−1} at −3 forever."""
    start = stuck_config(n)
    params = start.params
    graph = build_graph(params, M.RuleParams(s=STUCK_SIGHT), cap=cap)
    check = _Check("stuck-endpoints", params)
    k = graph.rank(start)
    reachable = sorted(nx.descendants(graph.digraph, k) | {k})
    for j in reachable:
        profile = core.word_heights(graph.word(j), params.t_a, params.t_b)
        if profile[1] != 3 or profile[params.tot - 1] != -3:
            check.fail("an endpoint neighbour moved", word=graph.word(j))
        if max(profile) - min(profile) == params.per - 1:
            check.fail("a Christoffel configuration was reached", word=graph.word(j))
    return check.result(f"{len(reachable)} reachable states, all stuck")
