"""The exact Markov chain of a small instance.

States are all words with the instance's letter counts, indexed by their
lexicographic rank. Every state has one edge per selectable site index,
each of probability 1/N: to the flipped word when the site is active, to
itself otherwise.
"""

from __future__ import annotations

import itertools
import logging
import math
import typing as t
from fractions import Fraction

import networkx as nx
import numpy as np
import scipy.sparse
import scipy.sparse.linalg
from sympy import QQ
from sympy.polys.matrices import DomainMatrix

import christoffel_flip.models as M
from christoffel_flip.rule import LocalRule, RuleLike, as_rule, site_is_active

logger = logging.getLogger(__name__)

ENUMERATION_CAP = 10**6
"""Largest number of states an enumeration may produce unless overridden."""

EXACT_TOT_LIMIT = 12
"""Hitting times are solved over the rationals up to this tot, in floats above."""

RESIDUAL_TOLERANCE = 1e-10

HittingMethod = t.Literal["exact", "sparse", "reachability"]


class EnumerationLimitError(ValueError):
    """Raised when an enumeration would exceed its state cap."""


class HittingTime(t.NamedTuple):
    """Expected steps to a target set: a Fraction, a float, or ``math.inf``."""

    expected: t.Union[Fraction, float]
    method: HittingMethod

    @property
    def is_infinite(self) -> bool:
        return self.expected == math.inf

    def __str__(self) -> str:
        if self.is_infinite:
            return "+inf"
        return str(self.expected)


def count_configs(params: M.LineParams) -> int:
    return math.comb(params.tot, params.A)


def _words(params: M.LineParams) -> t.Iterator[str]:
    # a-positions in lexicographic order give the words in lexicographic order
    for positions in itertools.combinations(range(params.tot), params.A):
        letters = ["b"] * params.tot
        for p in positions:
            letters[p] = "a"
        yield "".join(letters)


def _check_cap(params: M.LineParams, cap: int) -> int:
    count = count_configs(params)
    if count > cap:
        raise EnumerationLimitError(
            f"{params} has {count} configurations, above the cap of {cap}"
        )
    return count


def enumerate_words(
    params: M.LineParams, cap: int = ENUMERATION_CAP
) -> t.List[str]:
    """All words with counts (A, B), lexicographically."""
    _check_cap(params, cap)
    return list(_words(params))


def enumerate_configs(
    params: M.LineParams,
    topology: M.Topology = "chain",
    cap: int = ENUMERATION_CAP,
) -> t.List[M.Configuration]:
    """Every configuration of the instance exactly once, lexicographically."""
    return [
        M.Configuration(word=word, params=params, topology=topology)
        for word in enumerate_words(params, cap)
    ]


def word_rank(word: str) -> int:
    """Lexicographic rank among the words with the same letter counts."""
    rank = 0
    remaining_a = word.count("a")
    for position, letter in enumerate(word):
        remaining = len(word) - position - 1
        if letter == "b":
            if remaining_a:
                rank += math.comb(remaining, remaining_a - 1)
        else:
            remaining_a -= 1
    return rank


class TransitionGraph:
    """The exact chain of (instance, rule, topology).

    ``successors[k]`` lists, for every selectable index in order, the rank
    of the state reached from state k. ``digraph`` carries the aggregated
    transition probabilities as edge weights, self-loops included.
    """

    def __init__(
        self,
        params: M.LineParams,
        rule: LocalRule,
        topology: M.Topology,
        states: t.List[str],
        successors: t.List[t.List[int]],
    ) -> None:
        self.params = params
        self.rule = rule
        self.topology = topology
        self.states = states
        self.successors = successors
        low = 0 if topology == "cycle" else 1
        self.indices = range(low, params.tot)
        self.digraph = nx.DiGraph()
        self.digraph.add_nodes_from(range(len(states)))
        for k, row in enumerate(successors):
            for target in set(row):
                weight = Fraction(row.count(target), len(row))
                self.digraph.add_edge(k, target, weight=weight)

    def __len__(self) -> int:
        return len(self.states)

    @property
    def out_degree(self) -> int:
        return len(self.indices)

    def rank(self, state: t.Union[str, M.Configuration]) -> int:
        word = state.word if isinstance(state, M.Configuration) else state
        k = word_rank(word)
        if k >= len(self.states) or self.states[k] != word:
            raise ValueError(f"{word!r} is not a state of {self.params}")
        return k

    def word(self, k: int) -> str:
        return self.states[k]

    def configuration(self, k: int) -> M.Configuration:
        return M.Configuration(
            word=self.states[k], params=self.params, topology=self.topology
        )

    def moves(self, k: int) -> t.List[t.Tuple[int, int]]:
        """(site index, successor rank) for the active sites of state k."""
        return [
            (i, target)
            for i, target in zip(self.indices, self.successors[k])
            if target != k
        ]

    def is_absorbing(self, k: int) -> bool:
        return all(target == k for target in self.successors[k])


def _flip_word(word: str, i: int) -> str:
    tot = len(word)
    left, right = (i - 1) % tot, i % tot
    letters = list(word)
    letters[left], letters[right] = letters[right], letters[left]
    return "".join(letters)


def build_graph(
    params: M.LineParams,
    rule_params: RuleLike,
    topology: M.Topology = "chain",
    cap: int = ENUMERATION_CAP,
) -> TransitionGraph:
    """Enumerate the instance and wire every state to its successors."""
    count = _check_cap(params, cap)
    indices = range(0, params.tot) if topology == "cycle" else range(1, params.tot)
    logger.info(
        "building the chain of %s (%s): %d states x %d edges, about %.1f MB",
        params,
        topology,
        count,
        len(indices),
        count * (len(indices) * 8 + params.tot + 200) / 1e6,
    )
    rule = as_rule(rule_params)
    states = enumerate_words(params, cap)
    successors = []
    for k, word in enumerate(states):
        row = []
        for i in indices:
            if site_is_active(word, topology, i, rule):
                row.append(word_rank(_flip_word(word, i)))
            else:
                row.append(k)
        successors.append(row)
    return TransitionGraph(params, rule, topology, states, successors)


def _ranks(
    graph: TransitionGraph, states: t.Iterable[t.Union[str, M.Configuration]]
) -> t.Set[int]:
    return {graph.rank(state) for state in states}


def reachable_set(
    graph: TransitionGraph, start: t.Union[str, M.Configuration]
) -> t.Set[str]:
    """Every state reachable from ``start``, itself included."""
    k = graph.rank(start)
    return {graph.word(j) for j in nx.descendants(graph.digraph, k) | {k}}


def recurrent_classes(graph: TransitionGraph) -> t.List[t.Set[str]]:
    """The closed communicating classes, ordered by their smallest word."""
    classes = [
        {graph.word(k) for k in component}
        for component in nx.attracting_components(graph.digraph)
    ]
    return sorted(classes, key=min)


def absorbing_states(graph: TransitionGraph) -> t.List[str]:
    """The stable configurations, lexicographically."""
    return [graph.word(k) for k in range(len(graph)) if graph.is_absorbing(k)]


def export_edges(graph: TransitionGraph) -> str:
    """Edge list ``src dst probability``, one line per aggregated edge."""
    lines = []
    for k in range(len(graph)):
        for target in sorted(graph.digraph.successors(k)):
            weight = graph.digraph.edges[k, target]["weight"]
            lines.append(f"{graph.word(k)} {graph.word(target)} {weight}")
    return "\n".join(lines) + "\n"


def _solve_exact(
    graph: TransitionGraph, transient: t.List[int]
) -> t.Dict[int, Fraction]:
    position = {k: p for p, k in enumerate(transient)}
    n = len(transient)
    rows: t.Dict[int, t.Dict[int, t.Any]] = {}
    for p, k in enumerate(transient):
        row: t.Dict[int, t.Any] = {}
        for target in graph.digraph.successors(k):
            if target not in position:
                continue
            weight = graph.digraph.edges[k, target]["weight"]
            q = position[target]
            row[q] = row.get(q, QQ(0)) - QQ(weight.numerator, weight.denominator)
        row[p] = row.get(p, QQ(0)) + QQ(1)
        rows[p] = {q: v for q, v in row.items() if v}
    system = DomainMatrix(rows, (n, n), QQ)
    ones = DomainMatrix({p: {0: QQ(1)} for p in range(n)}, (n, 1), QQ)
    solution = system.lu_solve(ones).to_Matrix()
    return {
        k: Fraction(int(solution[p, 0].p), int(solution[p, 0].q))
        for p, k in enumerate(transient)
    }


def _solve_sparse(
    graph: TransitionGraph, transient: t.List[int]
) -> t.Dict[int, float]:
    position = {k: p for p, k in enumerate(transient)}
    n = len(transient)
    matrix = scipy.sparse.lil_matrix((n, n))
    for p, k in enumerate(transient):
        matrix[p, p] = 1.0
        for target in graph.digraph.successors(k):
            if target in position:
                matrix[p, position[target]] -= float(
                    graph.digraph.edges[k, target]["weight"]
                )
    system = matrix.tocsr()
    ones = np.ones(n)
    solution = np.atleast_1d(scipy.sparse.linalg.spsolve(system, ones))
    residual = float(np.max(np.abs(system @ solution - ones)))
    if residual >= RESIDUAL_TOLERANCE:
        raise ArithmeticError(
            f"hitting-time solve residual {residual:.3e} is above {RESIDUAL_TOLERANCE}"
        )
    return {k: float(solution[p]) for p, k in enumerate(transient)}


def exact_hitting_time(
    graph: TransitionGraph,
    start: t.Union[str, M.Configuration],
    target_set: t.Iterable[t.Union[str, M.Configuration]],
) -> HittingTime:
    """Expected number of scheduler picks from ``start`` until the target set.

    Infinite when some reachable state cannot reach the target, which is
    found by reachability before any solve.
    """
    targets = _ranks(graph, target_set)
    if not targets:
        raise ValueError("the target set is empty")
    k = graph.rank(start)
    if k in targets:
        return HittingTime(Fraction(0), "exact")
    reachable = nx.descendants(graph.digraph, k) | {k}
    reaches_target = set(targets)
    for target in targets:
        reaches_target |= nx.ancestors(graph.digraph, target)
    if not reachable <= reaches_target:
        return HittingTime(math.inf, "reachability")
    transient = sorted(reachable - targets)
    if graph.params.tot <= EXACT_TOT_LIMIT:
        logger.info("exact rational solve over %d transient states", len(transient))
        return HittingTime(_solve_exact(graph, transient)[k], "exact")
    logger.info("sparse float solve over %d transient states", len(transient))
    return HittingTime(_solve_sparse(graph, transient)[k], "sparse")
