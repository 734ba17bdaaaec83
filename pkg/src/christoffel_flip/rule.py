"""The totally symmetric local rule of sight s and the activity of sites.

Decisions depend on the pair (left word, right word) and the sight only.
Nothing here reads the instance (t_a, t_b, n), a site index or coordinates;
``is_active`` and ``active_sites`` merely cut the local words out of a
configuration's word and hand them to a rule.
"""

from __future__ import annotations

import functools
import math
import typing as t

import christoffel_flip.models as M
from christoffel_flip.core import swap_morphism

if t.TYPE_CHECKING:
    from christoffel_flip.models import Configuration


def prefix_counts(word: M.Word) -> t.List[t.Tuple[int, int]]:
    """Running (a_j, b_j) letter counts of the prefixes of length j = 1..len."""
    if not word:
        raise ValueError("prefix counts of an empty word")
    a = b = 0
    counts = []
    for letter in word:
        if letter == "a":
            a += 1
        else:
            b += 1
        counts.append((a, b))
    return counts


def slope_estimate(right_word: M.Word) -> M.SlopeEstimate:
    """The prefix counts (a'_i, b'_i) of the right word minimizing b'_i / a'_i.

    Ratios are compared by cross-multiplication, a'_i = 0 counts as +∞ and
    ties keep the lowest index. So ``b^s`` gives (0, 1).
    """
    best_a, best_b = prefix_counts(right_word)[0]
    for a, b in prefix_counts(right_word)[1:]:
        if a == 0:
            continue
        if best_a == 0 or b * best_a < best_b * a:
            best_a, best_b = a, b
    return M.SlopeEstimate(best_a, best_b)


def weak_thickness(left_word: M.Word, est: M.SlopeEstimate) -> bool:
    """∃ j with r_b·a_j − r_a·b_j ≥ r_a + r_b."""
    r_a, r_b = est
    return any(r_b * a - r_a * b >= r_a + r_b for a, b in prefix_counts(left_word))


def strong_thickness(left_word: M.Word, est: M.SlopeEstimate) -> bool:
    """Weak thickness, strictly, or with equality and gcd(a_j − 1, b_j + 1) = 1."""
    r_a, r_b = est
    for a, b in prefix_counts(left_word):
        excess = r_b * a - r_a * b - (r_a + r_b)
        if excess > 0 or (excess == 0 and math.gcd(a - 1, b + 1) == 1):
            return True
    return False


@functools.lru_cache(maxsize=1 << 16)
def _decide_right(left_word: str, right_word: str, s: int) -> bool:
    if left_word[0] == right_word[0]:
        return False
    if len(right_word) != s:
        return False
    if right_word[0] == "a":
        left_word, right_word = swap_morphism(left_word), swap_morphism(right_word)
    return strong_thickness(left_word, slope_estimate(right_word))


def delta_r(left_word: M.Word, right_word: M.Word, params: M.RuleParams) -> bool:
    """The one-sided rule: full right sight plus strong thickness on the left."""
    if not left_word or not right_word:
        raise ValueError("the rule needs two nonempty words")
    return _decide_right(left_word, right_word, params.s)


def delta(left_word: M.Word, right_word: M.Word, params: M.RuleParams) -> bool:
    """δ(l, r) = δ_r(l, r) or δ_r(r, l)."""
    return delta_r(left_word, right_word, params) or delta_r(
        right_word, left_word, params
    )


@t.runtime_checkable
class LocalRule(t.Protocol):
    """Any decision (left word, right word) → active, seeing ``sight`` letters."""

    sight: int

    def __call__(self, left_word: M.Word, right_word: M.Word) -> bool: ...


class ThreadRule:
    """The rule δ of sight s that drives the thread to a Christoffel word."""

    def __init__(self, params: M.RuleParams) -> None:
        self.params = params
        self.sight = params.s

    def __call__(self, left_word: M.Word, right_word: M.Word) -> bool:
        return delta(left_word, right_word, self.params)

    def __repr__(self) -> str:
        return f"ThreadRule(s={self.sight})"


class FrozenRule:
    """Never active."""

    def __init__(self, sight: int) -> None:
        self.sight = sight

    def __call__(self, left_word: M.Word, right_word: M.Word) -> bool:
        return False

    def __repr__(self) -> str:
        return f"FrozenRule(s={self.sight})"


class EagerRule:
    """Active whenever the two facing letters differ."""

    def __init__(self, sight: int) -> None:
        self.sight = sight

    def __call__(self, left_word: M.Word, right_word: M.Word) -> bool:
        return left_word[0] != right_word[0]

    def __repr__(self) -> str:
        return f"EagerRule(s={self.sight})"


class VetoRule:
    """Wraps a rule and forces it to 0 on a set of word pairs.

    The veto set is closed under exchanging the two words and under g, so a
    totally symmetric inner rule stays totally symmetric.
    """

    def __init__(
        self,
        inner: LocalRule,
        vetoed: t.Iterable[t.Tuple[M.Word, M.Word]],
        name: str = "veto",
    ) -> None:
        self.inner = inner
        self.sight = inner.sight
        self.name = name
        closed: t.Set[t.Tuple[str, str]] = set()
        for left, right in vetoed:
            for pair in ((left, right), (right, left)):
                closed.add(pair)
                closed.add((swap_morphism(pair[0]), swap_morphism(pair[1])))
        self.vetoed = frozenset(closed)

    def __call__(self, left_word: M.Word, right_word: M.Word) -> bool:
        if (left_word, right_word) in self.vetoed:
            return False
        return self.inner(left_word, right_word)

    def __repr__(self) -> str:
        return f"VetoRule({self.name}, {self.inner!r}, {len(self.vetoed)} pairs)"


RuleLike = t.Union[M.RuleParams, LocalRule]


def as_rule(rule: RuleLike) -> LocalRule:
    if isinstance(rule, M.RuleParams):
        return _thread_rule(rule.s)
    return rule


@functools.lru_cache(maxsize=None)
def _thread_rule(s: int) -> ThreadRule:
    return ThreadRule(M.RuleParams(s=s))


def _selectable(config: Configuration, i: int) -> None:
    low = 0 if config.topology == "cycle" else 1
    if not low <= i <= config.tot - 1:
        raise ValueError(
            f"site index {i} outside {low}..{config.tot - 1} ({config.topology})"
        )


def local_words(
    word: M.Word, topology: M.Topology, i: int, s: int
) -> t.Tuple[str, str]:
    """w^l = w_i w_{i−1}… and w^r = w_{i+1}…, each of at most s letters.

    In a cycle both words have exactly s letters (indices wrap mod tot).
    """
    tot = len(word)
    if topology == "cycle":
        left = "".join(word[(i - 1 - j) % tot] for j in range(s))
        right = "".join(word[(i + j) % tot] for j in range(s))
        return left, right
    left = word[max(0, i - s) : i][::-1]
    right = word[i : i + s]
    return left, right


def left_word(config: Configuration, i: int, sight: int) -> M.Word:
    _selectable(config, i)
    return local_words(config.word, config.topology, i, sight)[0]


def right_word(config: Configuration, i: int, sight: int) -> M.Word:
    _selectable(config, i)
    return local_words(config.word, config.topology, i, sight)[1]


def site_is_active(word: M.Word, topology: M.Topology, i: int, rule: LocalRule) -> bool:
    """Activity on a raw word, for the process loop's hot path.

    Equal facing letters admit no flip, so such a site is inactive whatever
    ``rule`` answers.
    """
    left, right = local_words(word, topology, i, rule.sight)
    if not left or not right or left[0] == right[0]:
        return False
    return rule(left, right)


def is_active(config: Configuration, i: int, params: RuleLike) -> bool:
    """Whether c_i would flip if selected."""
    _selectable(config, i)
    return site_is_active(config.word, config.topology, i, as_rule(params))


def active_sites(config: Configuration, params: RuleLike) -> t.Set[int]:
    """All active site indices; empty iff the configuration is stable."""
    rule = as_rule(params)
    low = 0 if config.topology == "cycle" else 1
    return {
        i
        for i in range(low, config.tot)
        if site_is_active(config.word, config.topology, i, rule)
    }


def is_stable(config: Configuration, params: RuleLike) -> bool:
    return not active_sites(config, params)
