"""Enumeration ceilings.

``MODLATTICE_MAX_CELLS`` overrides the global ceiling on how many cells (ring
elements, free-module vectors) any single enumeration may touch.
"""

import os

DEFAULT_MAX_CELLS = 1 << 18

MAX_RING_FOR_IDEALS = 4096
MAX_IDEALS = 20000
MAX_MODULE = 4096
MAX_LATTICE_MODULE = 512
MAX_SUBMODULES = 50000


def max_cells():
    raw = os.environ.get("MODLATTICE_MAX_CELLS")
    if raw is None:
        return DEFAULT_MAX_CELLS
    try:
        return int(raw)
    except ValueError:
        return DEFAULT_MAX_CELLS
