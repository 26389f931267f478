"""Independent brute-force oracles used to cross-check the library.

These deliberately avoid the library's computation paths: dominance is an
explicit all-pairs check and hypervolume is a grid rasterization of the box
union, so agreement with the package is meaningful evidence.
"""

from __future__ import annotations

import numpy as np


def brute_force_front(coords: list[tuple[float, ...]]) -> list[tuple[float, ...]]:
    """All-pairs non-dominated filter with duplicate collapsing.

    A point is dropped when some other point is strictly greater in every
    coordinate. Output is sorted lexicographically.
    """
    unique = sorted(set(coords))
    survivors = []
    for p in unique:
        dominated = False
        for q in unique:
            if q != p and all(qi > pi for qi, pi in zip(q, p)):
                dominated = True
                break
        if not dominated:
            survivors.append(p)
    return survivors


def grid_hypervolume(coords, ref, resolution: int = 2000) -> float:
    """Cell-center rasterization of the union of boxes spanning [ref, p].

    The grid covers the bounding box from ref to the coordinatewise maximum
    of the points that strictly exceed ref; every box covers a prefix block
    of cells, so painting prefix slices reproduces the union exactly up to
    cells crossed by the union boundary.
    """
    pts = np.asarray(coords, dtype=np.float64)
    ref = np.asarray(ref, dtype=np.float64)
    eff = pts[(pts > ref).all(axis=1)]
    if eff.shape[0] == 0:
        return 0.0
    hi = eff.max(axis=0)
    extent = hi - ref
    centers = [
        ref[d] + (np.arange(resolution) + 0.5) / resolution * extent[d] for d in range(2)
    ]
    covered = np.zeros((resolution, resolution), dtype=bool)
    for px, py in eff:
        nx = int(np.searchsorted(centers[0], px, side="right"))
        ny = int(np.searchsorted(centers[1], py, side="right"))
        covered[:nx, :ny] = True
    cell_area = (extent[0] / resolution) * (extent[1] / resolution)
    return float(covered.sum()) * cell_area
