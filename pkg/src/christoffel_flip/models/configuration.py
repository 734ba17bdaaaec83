"""Defines the pydantic models for line instances and thread configurations."""

from __future__ import annotations

import enum
import math
import typing as t

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

Topology = t.Literal["chain", "cycle"]
"""Chain: endpoints c_0 and c_tot are fixed. Cycle: c_0 is identified with c_tot."""

Word = str
"""A word over {a, b}. Letter w_i (1-based) lives at ``word[i - 1]``."""


class Letter(str, enum.Enum):
    """One step of the thread: ``a`` is (1, 0), ``b`` is (0, 1)."""

    A = "a"
    B = "b"

    @property
    def step(self) -> t.Tuple[int, int]:
        return (1, 0) if self is Letter.A else (0, 1)

    def swap(self) -> Letter:
        """The letter-swap morphism g on a single letter."""
        return Letter.B if self is Letter.A else Letter.A


class Site(t.NamedTuple):
    """A grid point of N²."""

    x: int
    y: int


class LineParams(BaseModel):
    """The global instance. Never visible to the local rule."""

    model_config = ConfigDict(frozen=True, populate_by_name=True)

    t_a: t.Annotated[int, Field(alias="ta", gt=0)]
    t_b: t.Annotated[int, Field(alias="tb", gt=0)]
    n: t.Annotated[int, Field(gt=0)]

    @model_validator(mode="after")
    def check_coprime(self) -> LineParams:
        if math.gcd(self.t_a, self.t_b) != 1:
            raise ValueError(
                f"t_a and t_b must be relatively prime, got ({self.t_a}, {self.t_b})"
            )
        return self

    @property
    def A(self) -> int:
        return self.n * self.t_a

    @property
    def B(self) -> int:
        return self.n * self.t_b

    @property
    def per(self) -> int:
        return self.t_a + self.t_b

    @property
    def tot(self) -> int:
        return self.n * self.per

    def visible_by(self, sight: int) -> bool:
        """True when (t_a, t_b) fits in a sight of ``sight`` letters."""
        return self.per <= sight

    def __str__(self) -> str:
        return f"({self.t_a},{self.t_b},n={self.n})"


class Configuration(BaseModel):
    """A thread: a word with A letters a and B letters b, plus its topology.

    Serializes to the flat record ``{"word", "ta", "tb", "n", "topology"}``
    and accepts that record back through ``model_validate``.
    """

    model_config = ConfigDict(frozen=True)

    word: Word
    params: LineParams
    topology: Topology = "chain"

    @model_validator(mode="before")
    @classmethod
    def unflatten_record(cls, data: t.Any) -> t.Any:
        if isinstance(data, dict) and "params" not in data and "ta" in data:
            data = dict(data)
            data["params"] = {
                "ta": data.pop("ta"),
                "tb": data.pop("tb"),
                "n": data.pop("n"),
            }
        return data

    @field_validator("word")
    @classmethod
    def letters_only(cls, word: str) -> str:
        if not word or set(word) - {"a", "b"}:
            raise ValueError(f"word must be a non-empty string over {{a, b}}: {word!r}")
        return word

    @model_validator(mode="after")
    def letter_counts(self) -> Configuration:
        count_a = self.word.count("a")
        count_b = len(self.word) - count_a
        if (count_a, count_b) != (self.params.A, self.params.B):
            raise ValueError(
                f"word has letter counts ({count_a}, {count_b}) but instance "
                f"{self.params} needs ({self.params.A}, {self.params.B})"
            )
        return self

    @property
    def tot(self) -> int:
        return self.params.tot

    def letter(self, i: int) -> Letter:
        """Letter w_i, 1-based; indices are taken mod tot in cycle topology."""
        if self.topology == "cycle":
            return Letter(self.word[(i - 1) % self.tot])
        if not 1 <= i <= self.tot:
            raise ValueError(f"letter index {i} outside 1..{self.tot}")
        return Letter(self.word[i - 1])

    def with_word(self, word: Word) -> Configuration:
        """Same instance and topology, another word (validated)."""
        return Configuration(word=word, params=self.params, topology=self.topology)

    def record(self) -> t.Dict[str, t.Any]:
        return {
            "word": self.word,
            "ta": self.params.t_a,
            "tb": self.params.t_b,
            "n": self.params.n,
            "topology": self.topology,
        }

    def __str__(self) -> str:
        return self.word
