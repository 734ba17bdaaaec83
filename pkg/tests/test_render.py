import xml.etree.ElementTree as ET
from pathlib import Path

import pytest

import christoffel_flip.models as M
from christoffel_flip import core, dynamics
from christoffel_flip.render import (
    ascii_grid,
    svg_configuration,
    svg_panels,
    svg_snapshots,
)

DATA = Path(__file__).parent / "data"
SVG = "{http://www.w3.org/2000/svg}"


def _ba_trace():
    start = core.configuration("ba", M.LineParams(t_a=1, t_b=1, n=1))
    state = dynamics.new_process(start, M.RuleParams(s=2), seed=0)
    return dynamics.run(
        state, M.StopCondition(kind="target", cap=10), snapshot_every=1
    )


def test_ascii_grid():
    config = core.configuration("bbaa", M.LineParams(t_a=1, t_b=1, n=2))
    assert ascii_grid(config) == "##E\n#..\nS.."


def test_ascii_grid_of_the_target():
    config = core.target_christoffel(M.LineParams(t_a=2, t_b=1, n=2))
    assert config.word == "baabaa"
    assert ascii_grid(config).splitlines() == [
        "..##E",
        "###..",
        "S....",
    ]


def test_ascii_grid_size_limit():
    params = M.LineParams(t_a=1, t_b=1, n=101)
    with pytest.raises(ValueError, match="tot <= 200"):
        ascii_grid(core.target_christoffel(params))


def test_svg_matches_golden_file():
    spec = M.RenderSpec(cell=10, steps=[0])
    assert svg_snapshots(_ba_trace(), spec) == (DATA / "ba_step0.svg").read_text()


def test_svg_has_one_panel_per_snapshot():
    params = M.LineParams(t_a=3, t_b=2, n=2)
    start = dynamics.canonical_start(params, "max_nonneg")
    trace = dynamics.run(
        dynamics.new_process(start, M.RuleParams(s=5), seed=1),
        M.StopCondition(kind="target", cap=10**5),
        snapshot_every=5,
    )
    root = ET.fromstring(svg_snapshots(trace, M.RenderSpec()).split("\n", 1)[1])
    panels = root.findall(f"{SVG}g")
    assert len(panels) == len(trace.snapshots)
    assert root.get("width") == str((params.A + 2) * 20 * len(panels))
    points = panels[-1].find(f"{SVG}polyline").get("points").split()
    assert len(points) == params.tot + 1


def test_svg_options_and_errors():
    config = core.configuration("bbaa", M.LineParams(t_a=1, t_b=1, n=2))
    bare = svg_panels(
        [("c", config)], M.RenderSpec(show_grid=False, show_ideal_line=False)
    )
    assert 'class="grid"' not in bare
    assert 'class="ideal"' not in bare
    assert "(1,1,n=2)" in svg_configuration(config, M.RenderSpec())
    with pytest.raises(ValueError, match="nothing to render"):
        svg_panels([], M.RenderSpec())
    with pytest.raises(ValueError, match="no snapshot at step 3"):
        svg_snapshots(_ba_trace(), M.RenderSpec(steps=[3]))
