"""Standalone SVG figures of a trajectory: one panel per snapshot, each with
the dashed grid, the dotted ideal line and the thread.

Screen y grows downward, so heights are flipped when drawing.
"""

from __future__ import annotations

import typing as t
import xml.etree.ElementTree as ET

import christoffel_flip.models as M
from christoffel_flip import core

SVG_NS = "http://www.w3.org/2000/svg"
GRID_STYLE = {"fill": "none", "stroke": "gray", "stroke-dasharray": "2,2"}
IDEAL_STYLE = {"stroke": "red", "stroke-dasharray": "1,3"}
THREAD_STYLE = {"fill": "none", "stroke": "black", "stroke-width": "2"}


def _panel(
    parent: ET.Element,
    config: M.Configuration,
    label: str,
    offset: int,
    spec: M.RenderSpec,
) -> None:
    cell = spec.cell
    margin = cell
    a, b = config.params.A, config.params.B

    def px(x: int) -> int:
        return margin + x * cell

    def py(y: int) -> int:
        return margin + (b - y) * cell

    group = ET.SubElement(
        parent, "g", {"class": "panel", "transform": f"translate({offset},0)"}
    )
    text = ET.SubElement(
        group,
        "text",
        {
            "x": str(margin),
            "y": str(margin - 2),
            "font-family": "monospace",
            "font-size": str(max(8, cell // 2)),
        },
    )
    text.text = label
    if spec.show_grid:
        d = "".join(f"M{px(x)} {py(b)}V{py(0)}" for x in range(a + 1))
        d += "".join(f"M{px(0)} {py(y)}H{px(a)}" for y in range(b + 1))
        ET.SubElement(group, "path", {"class": "grid", "d": d, **GRID_STYLE})
    if spec.show_ideal_line:
        ET.SubElement(
            group,
            "line",
            {
                "class": "ideal",
                "x1": str(px(0)),
                "y1": str(py(0)),
                "x2": str(px(a)),
                "y2": str(py(b)),
                **IDEAL_STYLE,
            },
        )
    points = " ".join(f"{px(site.x)},{py(site.y)}" for site in core.sites_of(config))
    ET.SubElement(
        group, "polyline", {"class": "thread", "points": points, **THREAD_STYLE}
    )


def svg_panels(
    panels: t.Sequence[t.Tuple[str, M.Configuration]], spec: M.RenderSpec
) -> str:
    """An SVG document with the labelled configurations side by side."""
    if not panels:
        raise ValueError("nothing to render")
    params = panels[0][1].params
    width = (params.A + 2) * spec.cell
    height = (params.B + 2) * spec.cell
    total = width * len(panels)
    root = ET.Element(
        "svg",
        {
            "xmlns": SVG_NS,
            "version": "1.1",
            "width": str(total),
            "height": str(height),
            "viewBox": f"0 0 {total} {height}",
        },
    )
    for index, (label, config) in enumerate(panels):
        _panel(root, config, label, index * width, spec)
    body = ET.tostring(root, encoding="unicode")
    return f'<?xml version="1.0" encoding="UTF-8"?>\n{body}\n'


def svg_snapshots(trace: M.Trace, spec: M.RenderSpec) -> str:
    """One panel per requested snapshot step, in the order requested."""
    steps = spec.steps or [snap.step for snap in trace.snapshots]
    panels = []
    for step in steps:
        try:
            config = trace.snapshot(step)
        except KeyError:
            raise ValueError(f"the trace has no snapshot at step {step}") from None
        panels.append((f"step {step}", config))
    if not panels:
        panels.append((f"step {trace.steps}", trace.terminal))
    return svg_panels(panels, spec)


def svg_configuration(config: M.Configuration, spec: M.RenderSpec) -> str:
    return svg_panels([(str(config.params), config)], spec)
