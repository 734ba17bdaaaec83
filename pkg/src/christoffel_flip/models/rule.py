"""Defines the models shared by the local rule and its callers."""

from __future__ import annotations

import typing as t

from pydantic import BaseModel, ConfigDict, Field


class RuleParams(BaseModel):
    """Parameters of the local rule. Only the sight, nothing global."""

    model_config = ConfigDict(frozen=True)

    s: t.Annotated[int, Field(ge=2, description="sight, in letters per side")]


class SlopeEstimate(t.NamedTuple):
    """Prefix letter counts (r_a, r_b) of the right word with minimal b/a."""

    r_a: int
    r_b: int
