import pytest
from hypothesis import given
from hypothesis import strategies as st

import christoffel_flip.models as M
from christoffel_flip import core
from christoffel_flip.oracle import graph

INSTANCES = [(1, 1), (2, 1), (3, 1), (3, 2), (4, 3), (5, 2)]


@st.composite
def configurations(draw, max_n=3):
    t_a, t_b = draw(st.sampled_from(INSTANCES))
    n = draw(st.integers(min_value=1, max_value=max_n))
    params = M.LineParams(t_a=t_a, t_b=t_b, n=n)
    letters = draw(st.permutations(["a"] * params.A + ["b"] * params.B))
    return M.Configuration(word="".join(letters), params=params)


def test_parse_word():
    assert core.parse_word("abba") == "abba"
    with pytest.raises(ValueError, match="empty"):
        core.parse_word("")
    with pytest.raises(ValueError, match="invalid letters"):
        core.parse_word("abc")


def test_heights_of_bbaa():
    config = core.configuration("bbaa", M.LineParams(t_a=1, t_b=1, n=2))
    assert core.height_profile(config) == [0, 1, 2, 1, 0]
    assert core.thickness(config) == 2
    assert core.is_nonnegative(config)
    assert not core.is_christoffel(config)


def test_sites_round_trip():
    config = core.configuration("abbab", M.LineParams(t_a=2, t_b=3, n=1))
    sites = core.sites_of(config)
    assert sites[0] == M.Site(0, 0)
    assert sites[-1] == M.Site(2, 3)
    assert core.word_of_sites(sites) == "abbab"
    assert core.height(sites[2], config.params) == -3 * 1 + 2 * 1


@pytest.mark.parametrize("t_a, t_b", INSTANCES)
@pytest.mark.parametrize("n", [1, 2, 3])
def test_target_is_christoffel_and_nonnegative(t_a, t_b, n):
    params = M.LineParams(t_a=t_a, t_b=t_b, n=n)
    target = core.target_christoffel(params)
    profile = core.height_profile(target)
    assert min(profile) == 0
    assert max(profile) == params.per - 1
    assert target.word == core.christoffel_pattern(t_a, t_b) * n


def test_christoffel_patterns():
    assert core.christoffel_pattern(1, 1) == "ba"
    assert core.christoffel_pattern(3, 2) == "babaa"


@pytest.mark.parametrize("t_a, t_b", INSTANCES)
def test_mirrored_target_is_the_reversal(t_a, t_b):
    params = M.LineParams(t_a=t_a, t_b=t_b, n=2)
    mirrored = core.mirrored_christoffel(params)
    assert max(core.height_profile(mirrored)) == 0
    assert core.reversal(core.target_christoffel(params)) == mirrored


def test_flip_moves_one_site_by_per():
    config = core.configuration("bbaa", M.LineParams(t_a=1, t_b=1, n=2))
    flipped = core.flip(config, 2)
    assert flipped.word == "baba"
    assert core.height_profile(flipped) == [0, 1, 0, 1, 0]
    assert not core.is_increasing(config, 2)
    assert core.is_increasing(flipped, 2)


def test_flip_rejects_equal_letters_and_bad_indices():
    config = core.configuration("bbaa", M.LineParams(t_a=1, t_b=1, n=2))
    with pytest.raises(ValueError, match="undefined"):
        core.flip(config, 1)
    with pytest.raises(ValueError, match="cannot flip"):
        core.flip(config, 0)
    with pytest.raises(ValueError, match="cannot flip"):
        core.flip(config, 4)


def test_cycle_flip_at_zero_swaps_last_and_first_letters():
    params = M.LineParams(t_a=1, t_b=1, n=2)
    config = core.configuration("bbaa", params, topology="cycle")
    assert core.flip_bounds(config) == range(0, 4)
    assert core.flip(config, 0).word == "abab"


@given(configurations())
def test_thickness_is_at_least_per_minus_one(config):
    assert core.thickness(config) >= config.params.per - 1


@given(configurations())
def test_reversal_negates_heights(config):
    mirrored = core.reversal(config)
    profile = core.height_profile(config)
    tot = config.tot
    assert core.height_profile(mirrored) == [-profile[tot - i] for i in range(tot + 1)]
    assert core.reversal(mirrored) == config


@given(configurations())
def test_swap_morphism_is_an_involution(config):
    swapped = core.swap_morphism(config.word)
    assert swapped.count("a") == config.params.B
    assert core.swap_morphism(swapped) == config.word


@given(configurations(), st.data())
def test_flip_twice_is_the_identity(config, data):
    sites = [
        i
        for i in core.flip_bounds(config)
        if len({config.word[j] for j in core.flip_positions(config, i)}) == 2
    ]
    i = data.draw(st.sampled_from(sites))
    assert core.flip(core.flip(config, i), i) == config


@pytest.mark.parametrize("t_a, t_b", [(1, 1), (2, 1), (3, 2), (4, 3)])
def test_heights_modulo_per_depend_only_on_the_index(t_a, t_b):
    params = M.LineParams(t_a=t_a, t_b=t_b, n=2)
    residues = {}
    for word in graph.enumerate_words(params):
        for i, h in enumerate(core.word_heights(word, t_a, t_b)):
            residue = residues.setdefault(i % params.per, h % params.per)
            assert h % params.per == residue, (word, i)
    assert residues == {r: (-t_b * r) % params.per for r in range(params.per)}
