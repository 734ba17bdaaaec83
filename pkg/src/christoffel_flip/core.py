"""Configurations as lattice paths: heights, thickness, flips and Christoffel targets.

Letters are 1-based (w_1..w_tot) and sites 0-based (c_0..c_tot). A flip at
site i swaps w_i and w_{i+1}; only c_i moves, by ±(b − a), so its height
changes by ±per.
"""

from __future__ import annotations

import typing as t

import christoffel_flip.models as M

_SWAP = str.maketrans("ab", "ba")


def parse_word(text: str) -> M.Word:
    """Parse a plain ``a``/``b`` string into a word."""
    if not text:
        raise ValueError("a word cannot be empty")
    invalid = sorted(set(text) - {"a", "b"})
    if invalid:
        raise ValueError(f"invalid letters {invalid} in word {text!r}")
    return text


def configuration(
    word: str,
    params: M.LineParams,
    topology: M.Topology = "chain",
) -> M.Configuration:
    """Build a validated configuration from a word string."""
    return M.Configuration(word=parse_word(word), params=params, topology=topology)


def swap_morphism(word: M.Word) -> M.Word:
    """The morphism g exchanging a and b."""
    return word.translate(_SWAP)


def reversal(config: M.Configuration) -> M.Configuration:
    """Read the thread from its other end: site i maps to tot − i, heights negate.

    The result lives on the same instance, and since the rule is totally
    symmetric, site i is active in ``config`` iff site tot − i is active in
    the image. Bands map as [lo, hi] -> [−hi, −lo], so the target goes to the
    mirrored Christoffel configuration.
    """
    return config.model_copy(update={"word": config.word[::-1]})


def sites_of(config: M.Configuration) -> t.List[M.Site]:
    """c_0 = (0, 0), c_i = c_{i−1} + w_i."""
    x = y = 0
    sites = [M.Site(0, 0)]
    for letter in config.word:
        if letter == "a":
            x += 1
        else:
            y += 1
        sites.append(M.Site(x, y))
    return sites


def word_of_sites(sites: t.Sequence[M.Site]) -> M.Word:
    """Inverse of ``sites_of``: read the letters back from site differences."""
    letters = []
    for prev, cur in zip(sites, sites[1:]):
        step = (cur.x - prev.x, cur.y - prev.y)
        if step == (1, 0):
            letters.append("a")
        elif step == (0, 1):
            letters.append("b")
        else:
            raise ValueError(f"{prev} -> {cur} is not a unit a/b step")
    return "".join(letters)


def height(site: M.Site, params: M.LineParams) -> int:
    """h(x, y) = −t_b·x + t_a·y."""
    return -params.t_b * site.x + params.t_a * site.y


def word_heights(word: M.Word, t_a: int, t_b: int) -> t.List[int]:
    """Height profile of a word, without building sites."""
    h = 0
    profile = [0]
    for letter in word:
        h += -t_b if letter == "a" else t_a
        profile.append(h)
    return profile


def height_profile(config: M.Configuration) -> t.List[int]:
    """h(c_i) for i = 0..tot."""
    return word_heights(config.word, config.params.t_a, config.params.t_b)


def h_min(config: M.Configuration) -> int:
    return min(height_profile(config))


def h_max(config: M.Configuration) -> int:
    return max(height_profile(config))


def thickness(config: M.Configuration) -> int:
    """Δ_h = h_max − h_min; at least per − 1 for every configuration."""
    profile = height_profile(config)
    return max(profile) - min(profile)


def is_christoffel(config: M.Configuration) -> bool:
    return thickness(config) == config.params.per - 1


def is_nonnegative(config: M.Configuration) -> bool:
    return min(height_profile(config)) >= 0


def in_strip(config: M.Configuration) -> bool:
    """−per + 1 ≤ h_min and h_max ≤ per − 1."""
    profile = height_profile(config)
    bound = config.params.per - 1
    return min(profile) >= -bound and max(profile) <= bound


def _greedy_band(params: M.LineParams, low: int, high: int) -> M.Word:
    h = 0
    letters = []
    for _ in range(params.tot):
        fits_a = low <= h - params.t_b <= high
        fits_b = low <= h + params.t_a <= high
        assert fits_a != fits_b, f"band [{low}, {high}] admits no unique step at {h}"
        if fits_a:
            letters.append("a")
            h -= params.t_b
        else:
            letters.append("b")
            h += params.t_a
    assert h == 0
    return "".join(letters)


def target_christoffel(
    params: M.LineParams, topology: M.Topology = "chain"
) -> M.Configuration:
    """The unique configuration with h_min = 0 and h_max = per − 1.

    Built greedily: from height h exactly one of a (h − t_b) and b (h + t_a)
    stays inside [0, per − 1].
    """
    word = _greedy_band(params, 0, params.per - 1)
    return M.Configuration(word=word, params=params, topology=topology)


def mirrored_christoffel(
    params: M.LineParams, topology: M.Topology = "chain"
) -> M.Configuration:
    """The Christoffel configuration of band [−per + 1, 0]."""
    word = _greedy_band(params, -params.per + 1, 0)
    return M.Configuration(word=word, params=params, topology=topology)


def christoffel_pattern(t_a: int, t_b: int) -> M.Word:
    """The periodic pattern of length per that the target repeats n times."""
    return _greedy_band(M.LineParams(t_a=t_a, t_b=t_b, n=1), 0, t_a + t_b - 1)


def flip_bounds(config: M.Configuration) -> range:
    """Selectable site indices: 1..tot−1 (chain) or 0..tot−1 (cycle)."""
    if config.topology == "cycle":
        return range(0, config.tot)
    return range(1, config.tot)


def flip_positions(config: M.Configuration, i: int) -> t.Tuple[int, int]:
    """0-based string positions of w_i and w_{i+1} for a flip at site i."""
    if i not in flip_bounds(config):
        raise ValueError(
            f"site index {i} cannot flip in a {config.topology} of length {config.tot}"
        )
    tot = config.tot
    return (i - 1) % tot, i % tot


def is_increasing(config: M.Configuration, i: int) -> bool:
    """True when the flip at site i is ab → ba (raises c_i by per)."""
    left, right = flip_positions(config, i)
    return config.word[left] == "a" and config.word[right] == "b"


def flip(config: M.Configuration, i: int) -> M.Configuration:
    """Swap w_i and w_{i+1}; only site c_i moves."""
    left, right = flip_positions(config, i)
    letters = list(config.word)
    if letters[left] == letters[right]:
        raise ValueError(
            f"flip at site {i} is undefined: w_i = w_(i+1) = {letters[left]}"
        )
    letters[left], letters[right] = letters[right], letters[left]
    return config.model_copy(update={"word": "".join(letters)})
