import christoffel_flip.models as M
from christoffel_flip import core

ASCII_TOT_LIMIT = 200

EMPTY, PATH, START, END = ".", "#", "S", "E"


def ascii_grid(config: M.Configuration) -> str:
    """The thread on its A × B grid, origin bottom-left, one line per row.

    Sites are ``#``, c_0 is ``S`` and c_tot is ``E``.
    """
    if config.tot > ASCII_TOT_LIMIT:
        raise ValueError(
            f"ascii grids are limited to tot <= {ASCII_TOT_LIMIT}, got {config.tot}"
        )
    params = config.params
    rows = [[EMPTY] * (params.A + 1) for _ in range(params.B + 1)]
    for site in core.sites_of(config):
        rows[site.y][site.x] = PATH
    rows[0][0] = START
    rows[params.B][params.A] = END
    return "\n".join("".join(row) for row in reversed(rows))
