"""Granular neighbourhoods: the k nearest customers of every customer."""

import numpy as np

from src.models.routing import Instance

# Rows of the distance block computed at once
_CHUNK = 512


def nearest_neighbors(instance: Instance, k: int) -> list[list[int]]:
    """k nearest customers of each customer, closest first, ties by index.

    Args:
        instance: Instance whose customers are ranked.
        k: Neighbourhood size; capped at n_customers - 1.

    Returns:
        List indexed by node; entry 0 (the depot) is empty.
    """
    n = instance.n_customers
    k = min(k, n - 1)
    neighbors: list[list[int]] = [[]]
    if k <= 0:
        return neighbors + [[] for _ in range(n)]

    xs = np.asarray(instance.xs[1:], dtype=np.int64)
    ys = np.asarray(instance.ys[1:], dtype=np.int64)
    for start in range(0, n, _CHUNK):
        stop = min(start + _CHUNK, n)
        dx = xs[start:stop, None] - xs[None, :]
        dy = ys[start:stop, None] - ys[None, :]
        squared = dx * dx + dy * dy
        rows = np.arange(stop - start)
        squared[rows, rows + start] = np.iinfo(np.int64).max

        # k-th smallest distance per row; every customer at or below it competes
        cutoff = np.partition(squared, k - 1, axis=1)[:, k - 1]
        for row in range(stop - start):
            (picked,) = np.nonzero(squared[row] <= cutoff[row])
            order = np.lexsort((picked, squared[row, picked]))[:k]
            neighbors.append([int(index) + 1 for index in picked[order]])
    return neighbors
