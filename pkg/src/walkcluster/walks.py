"""The walk phase: many short random walks over a link graph.

A walk starts at a sampled node and repeatedly jumps to a uniformly chosen
out-neighbor (each successor has probability 1/out-degree).  It ends either
by reaching a stopping state (a node with no out-links) or by hitting the
length cap.  The number of walks is ``ceil(k * N)`` and the cap is
``ceil(max_walk_factor * N)`` for a graph of N nodes.

Walk trajectories are pure functions of ``(seed, walk_index)`` through the
counter-based generator in :mod:`walkcluster.rng`, so results are identical
whatever the thread count or execution order.  The hot loop is compiled with
numba when available; a pure-python twin produces bit-identical output and
is used as a fallback (or when ``WALKCLUSTER_ENGINE=python`` is set).
"""

from __future__ import annotations

import enum
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .graph import LinkGraph
from .rng import STARTS_STREAM, counter_below, counter_unit, stream_key


class Terminated(str, enum.Enum):
    STOPPING_STATE = "stopping_state"
    LENGTH_CAP = "length_cap"


@dataclass(frozen=True)
class WalkConfig:
    """Parameters shared by the walk and merge phases.

    ``k`` scales the number of walks, ``max_walk_factor`` the length cap,
    and ``t_cm`` is the cut/merge threshold used downstream.
    """

    k: float
    max_walk_factor: float = 1.0
    t_cm: float = 0.25
    seed: int = 0

    def __post_init__(self) -> None:
        if not 0.0 < self.k <= 1.0:
            raise ValueError(f"k must be in (0, 1], got {self.k!r}")
        if not self.max_walk_factor > 0.0:
            raise ValueError("max_walk_factor must be positive")
        if not 0.0 < self.t_cm <= 1.0:
            raise ValueError(f"t_cm must be in (0, 1], got {self.t_cm!r}")
        if not isinstance(self.seed, (int, np.integer)) or not 0 <= self.seed < 1 << 64:
            raise ValueError("seed must be an unsigned 64-bit integer")


@dataclass
class Walk:
    """One finished walk: where it went and why it stopped.

    ``visits`` maps node to visit count, counting the start; the counts sum
    to ``length + 1`` because a walk of ``length`` steps touches that many
    node slots.
    """

    start: int
    visits: dict[int, int]
    length: int
    terminated: Terminated


def step(g: LinkGraph, v: int, rng) -> int | None:
    """One transition from ``v``: a uniform out-neighbor, or None at a
    stopping state.  ``rng`` needs only a ``random()`` method."""
    if not 0 <= v < g.node_count:
        raise ValueError(f"node {v} out of range")
    row = g.out_neighbors(v)
    d = row.size
    if d == 0:
        return None
    i = int(rng.random() * d)
    if i >= d:
        i = d - 1
    return int(row[i])


def random_walk(g: LinkGraph, start: int, max_length: int, rng) -> Walk:
    """Walk from ``start`` for at most ``max_length`` steps."""
    if not 0 <= start < g.node_count:
        raise ValueError(f"start node {start} out of range")
    if max_length < 1:
        raise ValueError("max_length must be >= 1")
    visits = {start: 1}
    v = start
    steps = 0
    terminated = Terminated.LENGTH_CAP
    while steps < max_length:
        nxt = step(g, v, rng)
        if nxt is None:
            terminated = Terminated.STOPPING_STATE
            break
        v = nxt
        steps += 1
        visits[v] = visits.get(v, 0) + 1
    return Walk(start=start, visits=visits, length=steps, terminated=terminated)


def _sample_starts(seed: int, n: int, k: int) -> np.ndarray:
    # Partial Fisher-Yates: k distinct nodes, uniform over k-subsets.
    key = stream_key(seed, STARTS_STREAM)
    arr = np.arange(n, dtype=np.int64)
    for i in range(k):
        j = i + counter_below(key, i, n - i)
        arr[i], arr[j] = arr[j], arr[i]
    return arr[:k].copy()


def _run_walks_py(indptr, adj, starts, seed, cap, lo, hi):
    """Reference kernel.  Must stay bit-identical to the numba kernel."""
    seed = int(seed)  # python-int arithmetic, not numpy scalar wraparound
    nw = hi - lo
    lengths = np.empty(nw, dtype=np.int64)
    terms = np.empty(nw, dtype=np.uint8)
    offs = np.empty(nw + 1, dtype=np.int64)
    offs[0] = 0
    nodes_out: list[int] = []
    counts_out: list[int] = []
    for wi in range(nw):
        w = lo + wi
        key = stream_key(seed, w)
        v = int(starts[w])
        visits = {v: 1}
        steps = 0
        term = 1
        ctr = 0
        while steps < cap:
            row_lo = int(indptr[v])
            d = int(indptr[v + 1]) - row_lo
            if d == 0:
                term = 0
                break
            u = counter_unit(key, ctr)
            ctr += 1
            i = int(u * d)
            if i >= d:
                i = d - 1
            v = int(adj[row_lo + i])
            steps += 1
            visits[v] = visits.get(v, 0) + 1
        lengths[wi] = steps
        terms[wi] = term
        nodes_out.extend(visits.keys())
        counts_out.extend(visits.values())
        offs[wi + 1] = len(nodes_out)
    return (
        lengths,
        terms,
        offs,
        np.array(nodes_out, dtype=np.int64),
        np.array(counts_out, dtype=np.int64),
    )


_AUTO_NUMBA_MIN = 5_000

_NUMBA_KERNEL = None
_NUMBA_FAILED = False


def _numba_kernel():
    global _NUMBA_KERNEL, _NUMBA_FAILED
    if _NUMBA_KERNEL is not None or _NUMBA_FAILED:
        return _NUMBA_KERNEL
    try:
        from numba import njit
    except ImportError:
        _NUMBA_FAILED = True
        return None

    @njit(cache=True, nogil=True)
    def kernel(indptr, adj, starts, seed, cap, lo, hi):  # pragma: no cover
        one = np.uint64(1)
        gold = np.uint64(0x9E3779B97F4A7C15)
        c1 = np.uint64(0xBF58476D1CE4E5B9)
        c2 = np.uint64(0x94D049BB133111EB)
        scale = 2.0**-53

        n = indptr.size - 1
        nw = hi - lo
        stamp = np.full(n, -1, dtype=np.int64)
        count = np.zeros(n, dtype=np.int64)
        touched = np.empty(n, dtype=np.int64)
        lengths = np.empty(nw, dtype=np.int64)
        terms = np.empty(nw, dtype=np.uint8)
        offs = np.empty(nw + 1, dtype=np.int64)
        offs[0] = 0
        capacity = 1024
        nodes = np.empty(capacity, dtype=np.int64)
        counts = np.empty(capacity, dtype=np.int64)
        pos = 0
        for wi in range(nw):
            w = lo + wi
            z = seed + (np.uint64(w) + one) * gold
            z = (z ^ (z >> np.uint64(30))) * c1
            z = (z ^ (z >> np.uint64(27))) * c2
            key = z ^ (z >> np.uint64(31))

            v = starts[w]
            stamp[v] = wi
            count[v] = 1
            touched[0] = v
            ntouch = 1
            steps = 0
            term = np.uint8(1)
            ctr = np.uint64(0)
            while steps < cap:
                row_lo = indptr[v]
                d = indptr[v + 1] - row_lo
                if d == 0:
                    term = np.uint8(0)
                    break
                zz = key + (ctr + one) * gold
                zz = (zz ^ (zz >> np.uint64(30))) * c1
                zz = (zz ^ (zz >> np.uint64(27))) * c2
                bits = zz ^ (zz >> np.uint64(31))
                ctr += one
                u = np.float64(bits >> np.uint64(11)) * scale
                i = np.int64(u * np.float64(d))
                if i >= d:
                    i = d - 1
                v = adj[row_lo + i]
                steps += 1
                if stamp[v] == wi:
                    count[v] += 1
                else:
                    stamp[v] = wi
                    count[v] = 1
                    touched[ntouch] = v
                    ntouch += 1
            lengths[wi] = steps
            terms[wi] = term
            while pos + ntouch > capacity:
                capacity *= 2
                grown_n = np.empty(capacity, dtype=np.int64)
                grown_n[:pos] = nodes[:pos]
                nodes = grown_n
                grown_c = np.empty(capacity, dtype=np.int64)
                grown_c[:pos] = counts[:pos]
                counts = grown_c
            for t in range(ntouch):
                nodes[pos + t] = touched[t]
                counts[pos + t] = count[touched[t]]
            pos += ntouch
            offs[wi + 1] = pos
        return lengths, terms, offs, nodes[:pos].copy(), counts[:pos].copy()

    _NUMBA_KERNEL = kernel
    return kernel


def _resolve_engine(engine: str, node_count: int = 0):
    if engine == "auto":
        engine = os.environ.get("WALKCLUSTER_ENGINE", "")
        if engine not in ("", "numba", "python"):
            raise ValueError(f"WALKCLUSTER_ENGINE must be numba or python, got {engine!r}")
        if not engine:
            # Loading the compiled kernel costs a few hundred ms; below this
            # size the interpreted walker finishes before numba even imports.
            engine = "numba" if node_count >= _AUTO_NUMBA_MIN else "python"
        if engine == "numba" and _numba_kernel() is None:
            engine = "python"
    if engine == "python":
        return _run_walks_py
    if engine == "numba":
        kernel = _numba_kernel()
        if kernel is None:
            raise RuntimeError("numba is not available")
        return lambda *args: kernel(*args)
    raise ValueError(f"engine must be auto, numba, or python, got {engine!r}")


def walk_phase(
    g: LinkGraph, config: WalkConfig, threads: int = 1, engine: str = "auto"
) -> list[Walk]:
    """Run ``ceil(k * N)`` seeded walks from distinct start nodes.

    Results depend only on the graph and ``config``; ``threads`` and
    ``engine`` change the execution plan, never the walks.
    """
    n = g.node_count
    if n == 0:
        raise ValueError("graph has no nodes")
    if threads < 1:
        raise ValueError("threads must be >= 1")
    k_walks = math.ceil(config.k * n)
    cap = math.ceil(config.max_walk_factor * n)
    starts = _sample_starts(config.seed, n, k_walks)
    seed = np.uint64(config.seed)
    run = _resolve_engine(engine, n)

    bounds = _chunk_bounds(k_walks, threads)
    if len(bounds) == 1:
        parts = [run(g.indptr, g.adjacency, starts, seed, cap, 0, k_walks)]
    else:
        # Warm the jit cache up front so workers do not race to compile.
        run(g.indptr, g.adjacency, starts, seed, cap, 0, 0)
        with ThreadPoolExecutor(max_workers=len(bounds)) as pool:
            parts = list(
                pool.map(
                    lambda b: run(g.indptr, g.adjacency, starts, seed, cap, b[0], b[1]),
                    bounds,
                )
            )

    walks: list[Walk] = []
    w = 0
    for lengths, terms, offs, nodes, counts in parts:
        for j in range(lengths.size):
            visits = {
                int(nodes[t]): int(counts[t]) for t in range(offs[j], offs[j + 1])
            }
            walks.append(
                Walk(
                    start=int(starts[w]),
                    visits=visits,
                    length=int(lengths[j]),
                    terminated=(
                        Terminated.STOPPING_STATE
                        if terms[j] == 0
                        else Terminated.LENGTH_CAP
                    ),
                )
            )
            w += 1
    return walks


def _chunk_bounds(total: int, threads: int) -> list[tuple[int, int]]:
    parts = max(1, min(threads, total))
    base, rem = divmod(total, parts)
    bounds = []
    start = 0
    for i in range(parts):
        end = start + base + (1 if i < rem else 0)
        bounds.append((start, end))
        start = end
    return bounds
