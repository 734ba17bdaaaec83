from christoffel_flip.render.ascii_grid import ascii_grid
from christoffel_flip.render.svg import svg_configuration, svg_panels, svg_snapshots

__all__ = ["ascii_grid", "svg_configuration", "svg_panels", "svg_snapshots"]
