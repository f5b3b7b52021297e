"""Seedable random sources shared by every stochastic operation.

All sampling runs on counter-based Philox streams so that per-trial
generators can be derived from (seed, trial index) without coordination,
which keeps Monte-Carlo runs reproducible under any work scheduling.
"""
from __future__ import annotations

import numpy as np

from .graphs import Graph, pair_list


def derive_rng(seed: int, index: int | None = None) -> np.random.Generator:
    """Generator for a run, or for one trial of a run when ``index`` is given."""
    if index is None:
        ss = np.random.SeedSequence(entropy=seed)
    else:
        ss = np.random.SeedSequence(entropy=seed, spawn_key=(index,))
    return np.random.Generator(np.random.Philox(ss))


def gnp_half(n: int, rng: np.random.Generator) -> Graph:
    """Uniform labelled graph on n vertices (each pair an edge with prob 1/2)."""
    pairs = pair_list(n)
    raw = rng.bytes((len(pairs) + 7) // 8)
    adj = [0] * n
    for idx, (u, v) in enumerate(pairs):
        if raw[idx >> 3] >> (idx & 7) & 1:
            adj[u] |= 1 << v
            adj[v] |= 1 << u
    return Graph(n, tuple(adj))


def random_pair_order(n: int, rng: np.random.Generator) -> tuple[tuple[int, int], ...]:
    """Uniformly random ordering of all vertex pairs."""
    pairs = pair_list(n)
    return tuple(pairs[i] for i in rng.permutation(len(pairs)))
