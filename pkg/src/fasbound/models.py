"""Seeded samplers for random oriented digraphs.

Three families are provided:

* ``gnm``        -- n vertices, exactly m undirected edges chosen uniformly
                    among all C(n,2) pairs, each then oriented by a fair coin.
* ``gnp``        -- every pair included independently with probability p,
                    then oriented by a fair coin (ER(n,p) style).
* ``tournament`` -- the gnm family with m = C(n,2): all pairs present.

Reproducibility contract: a sample is a pure function of (model
parameters, 64-bit seed).  The generator is a SplitMix64 output stream,
so results are identical across platforms, Python versions, and thread
schedules.  Per-trial seeds for experiment harnesses are derived from a
master seed with :func:`derive_seed`.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import BadProbabilityError, FasboundError, TooManyArcsError
from .graph import Arc, OrientedDigraph

_MASK64 = (1 << 64) - 1
_GOLDEN = 0x9E3779B97F4A7C15  # SplitMix64 increment


def splitmix64(x: int) -> int:
    """One round of the SplitMix64 finalizer (Steele/Lea/Flood mix)."""
    x &= _MASK64
    z = (x + _GOLDEN) & _MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    return z ^ (z >> 31)


def derive_seed(master: int, *indices: int) -> int:
    """Derive a substream seed by folding indices into the master seed.

    The mixer is ``s = splitmix64(s ^ splitmix64(index))`` applied left to
    right, starting from ``s = splitmix64(master)``.  Distinct index paths
    give statistically independent streams, and the derivation depends
    only on the arguments, never on call order.
    """
    s = splitmix64(master)
    for idx in indices:
        s = splitmix64(s ^ splitmix64(idx))
    return s


class RandomStream:
    """Deterministic SplitMix64 stream: output i is splitmix64(seed + i*GOLDEN)."""

    __slots__ = ("_state",)

    def __init__(self, seed: int):
        self._state = seed & _MASK64

    def next64(self) -> int:
        s = self._state = (self._state + _GOLDEN) & _MASK64
        z = ((s ^ (s >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
        return z ^ (z >> 31)

    def randbelow(self, bound: int) -> int:
        """Uniform integer in [0, bound) by top-bits rejection sampling."""
        if bound <= 0:
            raise ValueError(f"bound must be positive, got {bound}")
        k = (bound - 1).bit_length()
        if k == 0:
            return 0
        while True:
            r = self.next64() >> (64 - k)
            if r < bound:
                return r

    def coin(self) -> int:
        """Fair bit (the top output bit)."""
        return self.next64() >> 63

    def uniform_open(self) -> float:
        """Uniform float in (0, 1] with 53-bit resolution."""
        return ((self.next64() >> 11) + 1) * 2.0 ** -53


def _pair_from_index(idx: int) -> Arc:
    """Invert idx = v(v-1)/2 + u back to the pair (u, v) with u < v."""
    v = (1 + math.isqrt(1 + 8 * idx)) // 2
    u = idx - v * (v - 1) // 2
    return u, v


def _pair_index(u: int, v: int) -> int:
    if u > v:
        u, v = v, u
    return v * (v - 1) // 2 + u


def _orient(rng: RandomStream, u: int, v: int) -> Arc:
    # u < v; heads keeps the arc pointing at the higher-numbered vertex
    return (u, v) if rng.coin() == 0 else (v, u)


def sample_gnm_oriented(n: int, m: int, seed: int) -> OrientedDigraph:
    """Uniform m-edge oriented digraph on n vertices.

    Chooses m distinct pair indices without replacement (Floyd's
    algorithm), then orients each chosen pair with an independent fair
    coin, consuming coins in increasing pair-index order.
    """
    if n < 1:
        raise FasboundError(f"need at least one vertex, got n={n}")
    npairs = n * (n - 1) // 2
    if not 0 <= m <= npairs:
        raise TooManyArcsError(f"m={m} outside 0..C({n},2)={npairs}")
    rng = RandomStream(seed)
    chosen: set[int] = set()
    for j in range(npairs - m, npairs):
        t = rng.randbelow(j + 1)
        chosen.add(j if t in chosen else t)
    arcs = [_orient(rng, *_pair_from_index(idx)) for idx in sorted(chosen)]
    return OrientedDigraph(n, arcs)


def sample_gnp_oriented(n: int, p: float, seed: int) -> OrientedDigraph:
    """Oriented digraph with each pair included independently with probability p.

    Uses geometric gap-skipping over the C(n,2) pair indices, so the
    expected cost is O(p n^2) rather than O(n^2) for sparse p.
    """
    if n < 1:
        raise FasboundError(f"need at least one vertex, got n={n}")
    if not 0.0 <= p <= 1.0 or math.isnan(p):
        raise BadProbabilityError(f"p={p!r} outside [0, 1]")
    npairs = n * (n - 1) // 2
    rng = RandomStream(seed)
    arcs: list[Arc] = []
    if p >= 1.0:
        for idx in range(npairs):
            arcs.append(_orient(rng, *_pair_from_index(idx)))
    elif p > 0.0:
        log_q = math.log1p(-p)
        idx = -1
        while True:
            idx += 1 + int(math.log(rng.uniform_open()) / log_q)
            if idx >= npairs:
                break
            arcs.append(_orient(rng, *_pair_from_index(idx)))
    return OrientedDigraph(n, arcs)


def sample_tournament(n: int, seed: int) -> OrientedDigraph:
    """Random orientation of the complete graph: gnm with m = C(n,2)."""
    return sample_gnm_oriented(n, n * (n - 1) // 2, seed)


def expected_edges(n: int, p: float) -> float:
    """p * n(n-1)/2, the mean pair count of the gnp family (not rounded)."""
    if not 0.0 <= p <= 1.0 or math.isnan(p):
        raise BadProbabilityError(f"p={p!r} outside [0, 1]")
    return p * n * (n - 1) / 2.0


MODEL_KINDS = ("gnm", "gnp", "tournament")


@dataclass(frozen=True)
class ModelSpec:
    """Parameters for one random-graph family.

    kind "gnm" needs ``m``, "gnp" needs ``p``, "tournament" needs neither.
    """

    kind: str
    n: int
    m: int | None = None
    p: float | None = None

    def __post_init__(self):
        if self.kind not in MODEL_KINDS:
            raise FasboundError(f"unknown model kind {self.kind!r}")
        if self.n < 1:
            raise FasboundError(f"need at least one vertex, got n={self.n}")
        npairs = self.n * (self.n - 1) // 2
        if self.kind == "gnm":
            if self.m is None or not 0 <= self.m <= npairs:
                raise TooManyArcsError(f"gnm needs 0 <= m <= {npairs}, got {self.m!r}")
        elif self.kind == "gnp":
            if self.p is None or not 0.0 <= self.p <= 1.0 or math.isnan(self.p):
                raise BadProbabilityError(f"gnp needs p in [0, 1], got {self.p!r}")

    def expected_m(self) -> float:
        """Expected arc count (exact for gnm and tournaments)."""
        if self.kind == "gnm":
            return float(self.m)
        if self.kind == "tournament":
            return self.n * (self.n - 1) / 2.0
        return expected_edges(self.n, self.p)


def sample(spec: ModelSpec, seed: int) -> OrientedDigraph:
    """Draw one graph from the family described by ``spec``."""
    if spec.kind == "gnm":
        return sample_gnm_oriented(spec.n, spec.m, seed)
    if spec.kind == "gnp":
        return sample_gnp_oriented(spec.n, spec.p, seed)
    return sample_tournament(spec.n, seed)
