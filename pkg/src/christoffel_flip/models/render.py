"""Defines the pydantic model describing a figure."""

from __future__ import annotations

import typing as t

from pydantic import BaseModel, ConfigDict, Field


class RenderSpec(BaseModel):
    """Panels laid out left to right, one per snapshot step.

    An empty ``steps`` list renders every snapshot of the trace.
    """

    model_config = ConfigDict(frozen=True)

    cell: t.Annotated[int, Field(ge=1, description="pixels per grid unit")] = 20
    show_grid: bool = True
    show_ideal_line: bool = True
    steps: t.List[int] = []
