import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

import christoffel_flip.models as M
from christoffel_flip import core, rule

S2 = M.RuleParams(s=2)
WORDS = st.text(alphabet="ab", min_size=1, max_size=5)


def test_prefix_counts():
    assert rule.prefix_counts("aab") == [(1, 0), (2, 0), (2, 1)]
    with pytest.raises(ValueError):
        rule.prefix_counts("")


@pytest.mark.parametrize(
    "right, expected",
    [
        ("bb", (0, 1)),
        ("ba", (1, 1)),
        ("bab", (1, 1)),
        ("baa", (2, 1)),
        ("bbaa", (2, 2)),
    ],
)
def test_slope_estimate(right, expected):
    assert tuple(rule.slope_estimate(right)) == expected


def test_strong_thickness_needs_coprime_on_equality():
    # (r_a, r_b) = (0, 1): the prefix (1, 0) is exactly on the boundary
    assert rule.strong_thickness("a", M.SlopeEstimate(0, 1))
    assert rule.strong_thickness("aaa", M.SlopeEstimate(1, 1))
    # prefix (3, 1) sits on the boundary but gcd(2, 2) = 2
    assert not rule.strong_thickness("abaa", M.SlopeEstimate(1, 1))
    assert rule.weak_thickness("abaa", M.SlopeEstimate(1, 1))
    assert not rule.weak_thickness("aba", M.SlopeEstimate(1, 1))


def test_delta_needs_facing_letters_to_differ():
    assert not rule.delta_r("ba", "ba", S2)
    assert not rule.delta("a", "aa", S2)


def test_delta_needs_full_right_sight():
    assert not rule.delta_r("bb", "a", S2)


def test_delta_on_bbaa_center():
    assert rule.delta_r("bb", "aa", S2)
    assert rule.delta("bb", "aa", S2)
    assert rule.delta("aa", "bb", S2)


def test_delta_rejects_empty_words():
    with pytest.raises(ValueError):
        rule.delta("", "ab", S2)


@given(WORDS, WORDS)
def test_delta_is_totally_symmetric(left, right):
    value = rule.delta(left, right, S2)
    assert rule.delta(right, left, S2) == value
    assert (
        rule.delta(core.swap_morphism(left), core.swap_morphism(right), S2) == value
    )


def test_local_words_chain_and_cycle():
    assert rule.local_words("aabba", "chain", 2, 3) == ("aa", "bba")
    assert rule.local_words("aabba", "chain", 4, 3) == ("bba", "a")
    assert rule.local_words("aabba", "cycle", 0, 2) == ("ab", "aa")


def test_active_sites_of_small_words():
    params = M.LineParams(t_a=1, t_b=1, n=2)
    assert rule.active_sites(core.configuration("bbaa", params), S2) == {2}
    assert rule.is_active(core.configuration("bbaa", params), 2, S2)
    assert rule.is_stable(core.configuration("abab", params), S2)
    assert rule.is_stable(core.configuration("baba", params), S2)


def test_is_active_checks_index_range():
    config = core.configuration("bbaa", M.LineParams(t_a=1, t_b=1, n=2))
    with pytest.raises(ValueError, match="outside"):
        rule.is_active(config, 0, S2)
    with pytest.raises(ValueError, match="outside"):
        rule.left_word(config, 4, 2)
    assert rule.right_word(config, 3, 2) == "a"


@pytest.mark.parametrize("t_a, t_b", [(1, 1), (2, 1), (3, 1), (3, 2), (4, 3)])
@pytest.mark.parametrize("n", [1, 2, 3])
def test_christoffel_targets_are_stable(t_a, t_b, n):
    params = M.LineParams(t_a=t_a, t_b=t_b, n=n)
    sight = M.RuleParams(s=params.per)
    for topology in ("chain", "cycle"):
        assert rule.is_stable(core.target_christoffel(params, topology), sight)
        assert rule.is_stable(core.mirrored_christoffel(params, topology), sight)


@given(st.sampled_from([(1, 1), (2, 1), (3, 2)]), st.data())
def test_reversal_mirrors_active_sites(instance, data):
    t_a, t_b = instance
    params = M.LineParams(t_a=t_a, t_b=t_b, n=2)
    letters = data.draw(st.permutations(["a"] * params.A + ["b"] * params.B))
    config = M.Configuration(word="".join(letters), params=params)
    sight = M.RuleParams(s=params.per)
    mirrored = {params.tot - i for i in rule.active_sites(config, sight)}
    assert rule.active_sites(core.reversal(config), sight) == mirrored


def test_rule_variants():
    assert not rule.FrozenRule(2)("a", "b")
    assert rule.EagerRule(2)("a", "b")
    assert not rule.EagerRule(2)("a", "a")
    assert isinstance(rule.ThreadRule(S2), rule.LocalRule)
    assert rule.as_rule(S2) is rule.as_rule(M.RuleParams(s=2))


def test_veto_rule_is_closed_under_symmetries():
    veto = rule.VetoRule(rule.ThreadRule(S2), [("bb", "aa")])
    assert not veto("bb", "aa")
    assert not veto("aa", "bb")
    assert veto.sight == 2
    assert len(veto.vetoed) == 2


@pytest.mark.parametrize("s", [2, 3, 4])
def test_delta_symmetries_exhaustively(s):
    sight = M.RuleParams(s=s)
    words = [
        "".join(letters)
        for length in range(1, s + 1)
        for letters in itertools.product("ab", repeat=length)
    ]
    for left in words:
        for right in words:
            value = rule.delta(left, right, sight)
            assert rule.delta(right, left, sight) == value
            swapped = core.swap_morphism(left), core.swap_morphism(right)
            assert rule.delta(*swapped, sight) == value


@given(st.data())
def test_activity_depends_only_on_the_local_words(data):
    s = data.draw(st.integers(min_value=2, max_value=4))
    view = st.text(alphabet="ab", min_size=s, max_size=s)
    left, right = data.draw(view), data.draw(view)
    sight = M.RuleParams(s=s)
    expected = rule.delta(left, right, sight)
    for _ in range(3):
        prefix = data.draw(st.text(alphabet="ab", max_size=6))
        suffix = data.draw(st.text(alphabet="ab", max_size=6))
        word = prefix + left[::-1] + right + suffix
        i = len(prefix) + s
        for topology in ("chain", "cycle"):
            assert rule.local_words(word, topology, i, s) == (left, right)
            active = rule.site_is_active(word, topology, i, rule.ThreadRule(sight))
            assert active == expected


class _EqualLettersRule:
    sight = 2

    def __call__(self, left_word, right_word):
        return left_word[0] == right_word[0]


def test_equal_facing_letters_are_never_active():
    config = core.configuration("aabb", M.LineParams(t_a=1, t_b=1, n=2))
    assert rule.active_sites(config, _EqualLettersRule()) == set()
    assert rule.active_sites(config, rule.EagerRule(2)) == {2}
