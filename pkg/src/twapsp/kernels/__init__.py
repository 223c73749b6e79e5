"""Active kernel set, chosen by ``TWAPSP_BACKEND`` (see ``twapsp._backend``)."""

from .._backend import BACKEND

if BACKEND == "numba":
    from .loops import (
        chleq, dpc, floyd_warshall, johnson_dijkstra, johnson_potentials,
        min_paths, p3c_sweep, relax_separator, snowball, split_neighbours,
    )
else:
    from .vectorized import (
        chleq, dpc, floyd_warshall, johnson_dijkstra, johnson_potentials,
        min_paths, p3c_sweep, relax_separator, snowball, split_neighbours,
    )

__all__ = [
    "BACKEND", "chleq", "dpc", "floyd_warshall", "johnson_dijkstra", "johnson_potentials",
    "min_paths", "p3c_sweep", "relax_separator", "snowball", "split_neighbours",
]
