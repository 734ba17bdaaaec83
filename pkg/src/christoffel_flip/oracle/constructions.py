"""Configurations the process cannot fix, and the slope no rule of sight s
can handle.
"""

from __future__ import annotations

import logging
import typing as t

import christoffel_flip.models as M
from christoffel_flip import core
from christoffel_flip.rule import (
    LocalRule,
    ThreadRule,
    VetoRule,
    active_sites,
    local_words,
)

logger = logging.getLogger(__name__)

STUCK_PARAMS = (3, 2)
STUCK_SIGHT = 5


def stuck_config(n: int) -> M.Configuration:
    """(ba²ba)^{n−1}·ba³b on (3, 2, n): c_1 stays at 3 = h_max and c_{tot−1} at −3.

    Flipping c_1 down would need a⁵ right after it, and the endpoint c_0 never
    moves, so the thickness never reaches per − 1.
    """
    if n < 2:
        raise ValueError(f"the stuck configuration needs n >= 2, got {n}")
    t_a, t_b = STUCK_PARAMS
    return M.Configuration(
        word="baaba" * (n - 1) + "baaab",
        params=M.LineParams(t_a=t_a, t_b=t_b, n=n),
    )


def _family_words(s: int, k: int) -> t.Tuple[str, str]:
    w = "a" * (s + 1) + "b"
    w_short = "a" * s + "b"
    w_long = "a" * (s + 2) + "b"
    return w * (2 * k), w + w_long * (k - 1) + w_short * (k - 1) + w


def impossibility_family(s: int, k: int) -> t.Tuple[M.Configuration, M.Configuration]:
    """c = w^{2k} and c' = w·(w'')^{k−1}·(w')^{k−1}·w on (s + 1, 1, 2k).

    w = a^{s+1}b, w' = a^s b and w'' = a^{s+2}b. Every flippable view of sight s
    in c' (facing letters differ) also occurs in c, while Δ_h(c') = s + k.
    """
    if s < 2:
        raise ValueError(f"the family needs a sight s >= 2, got {s}")
    if k < 2:
        raise ValueError(f"the family needs k >= 2, got {k}")
    params = M.LineParams(t_a=s + 1, t_b=1, n=2 * k)
    word, word_prime = _family_words(s, k)
    return (
        M.Configuration(word=word, params=params),
        M.Configuration(word=word_prime, params=params),
    )


def rule_stability_probe(rule: LocalRule, config: M.Configuration) -> bool:
    """True iff no site of ``config`` is active under ``rule``."""
    return not active_sites(config, rule)


def local_views(config: M.Configuration, sight: int) -> t.Set[t.Tuple[str, str]]:
    """Every (left word, right word) pair a site of ``config`` sees."""
    low = 0 if config.topology == "cycle" else 1
    return {
        local_words(config.word, config.topology, i, sight)
        for i in range(low, config.tot)
    }


def flippable_views(config: M.Configuration, sight: int) -> t.Set[t.Tuple[str, str]]:
    """The local views whose two facing letters differ.

    Only these can make a site active, so a rule that is 0 on every flippable
    view of one configuration is 0 on any configuration whose flippable views
    are among them.
    """
    return {
        (left, right)
        for left, right in local_views(config, sight)
        if left[0] != right[0]
    }


def stabilizing_rule(s: int, k: int) -> VetoRule:
    """The rule of sight s that behaves like δ except on the views of c = w^{2k}.

    It keeps c stable, and with it c', whose flippable views all occur in c.
    """
    c, _ = impossibility_family(s, k)
    return VetoRule(
        ThreadRule(M.RuleParams(s=s)),
        flippable_views(c, s),
        name=f"stabilize-w^{2 * k}",
    )


def dichotomy_holds(rule: LocalRule, s: int, k: int) -> bool:
    """A rule that keeps c stable keeps c' stable too."""
    c, c_prime = impossibility_family(s, k)
    return not rule_stability_probe(rule, c) or rule_stability_probe(rule, c_prime)


def impossibility_report(
    s: int, k: int, rule: t.Optional[LocalRule] = None
) -> M.ImpossibilityReport:
    """Stability of both family members under ``rule`` (δ of sight s by default)."""
    if rule is None:
        rule = ThreadRule(M.RuleParams(s=s))
    if rule.sight != s:
        raise ValueError(f"the probe needs a rule of sight {s}, got {rule.sight}")
    c, c_prime = impossibility_family(s, k)
    report = M.ImpossibilityReport(
        s=s,
        k=k,
        c=c.word,
        c_prime=c_prime.word,
        c_is_christoffel=core.is_christoffel(c),
        c_prime_thickness=core.thickness(c_prime),
        rule=repr(rule),
        c_stable=rule_stability_probe(rule, c),
        c_prime_stable=rule_stability_probe(rule, c_prime),
    )
    logger.info("%s on s=%d, k=%d: %s", report.rule, s, k, report.horn)
    return report
