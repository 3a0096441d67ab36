"""Stateless counter-based randomness.

Every random quantity in the walk engine is a pure function of
``(seed, stream, counter)``, so results do not depend on scheduling: the same
walk produces the same trajectory whether it runs first, last, or on another
thread.  The mixer is the splitmix64 finaliser; streams are opened by folding
the stream id into the seed with the golden-ratio increment before mixing.

``stable_seed`` is the complement for coarse-grained derivation (one sub-seed
per sweep row, for example).  It hashes with sha256 because the builtin
``hash`` is salted per process and would not reproduce across runs.
"""

from __future__ import annotations

import hashlib

MASK64 = (1 << 64) - 1
GOLDEN = 0x9E3779B97F4A7C15

# Stream ids below 2**63 are reserved for per-walk streams; ids at or above
# it belong to the engine itself (start-node sampling and similar).
STARTS_STREAM = 1 << 63


def mix64(z: int) -> int:
    """splitmix64 finaliser: a 64-bit bijection with good avalanche."""
    z &= MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return z ^ (z >> 31)


def stream_key(seed: int, stream: int) -> int:
    """Open stream ``stream`` of the generator seeded with ``seed``."""
    return mix64((seed + (stream + 1) * GOLDEN) & MASK64)


def counter_bits(key: int, counter: int) -> int:
    """The ``counter``-th 64-bit word of the stream identified by ``key``."""
    return mix64((key + (counter + 1) * GOLDEN) & MASK64)


def counter_unit(key: int, counter: int) -> float:
    """The ``counter``-th draw of the stream, uniform on [0, 1)."""
    return (counter_bits(key, counter) >> 11) * 2.0**-53


def counter_below(key: int, counter: int, n: int) -> int:
    """The ``counter``-th draw, uniform on {0, ..., n-1}."""
    v = int(counter_unit(key, counter) * n)
    # Guard against float rounding pushing u*n up to n.
    return n - 1 if v >= n else v


def stable_seed(*parts: object) -> int:
    """Derive a reproducible 63-bit seed from the reprs of ``parts``."""
    text = "\x1f".join(repr(p) for p in parts)
    digest = hashlib.sha256(text.encode("utf-8")).digest()
    return int.from_bytes(digest[:8], "big") >> 1
