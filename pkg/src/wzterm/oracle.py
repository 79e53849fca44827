"""Monte Carlo volume fractions on the 3-sphere.

Independent geometric check of the invariant for the equatorial 2-sphere and
the Clifford torus: both divide S^3 into two halves, so the enclosed volume
fraction is 1/2 and 2*pi times it is pi.

Sampling is uniform on S^3 in C^2 via normalized 4-dimensional Gaussians
(numpy PCG64 generators).  Work is split into fixed-size shards whose
generators are seeded as (master_seed, shard_index), so results are
reproducible bit for bit for a given seed and sample count, independent of
how the shards are executed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Tuple

import numpy as np

from .angles import AngleClass

RNG_ALGORITHM = "numpy.random.PCG64 via default_rng([seed, shard])"
SHARD_SIZE = 1_000_000

SURFACES = ("equator", "clifford")


class OracleError(ValueError):
    pass


@dataclass(frozen=True)
class S3Sampler:
    seed: int
    n: int

    def __post_init__(self):
        if self.n < 10_000:
            raise OracleError("need at least 1e4 samples")


def _count_hits(surface: str, seed: int, shard: int, count: int) -> int:
    rng = np.random.default_rng([seed, shard])
    pts = rng.standard_normal((count, 4))
    pts /= np.linalg.norm(pts, axis=1, keepdims=True)
    if surface == "equator":
        # positive side of Re(z1) = 0
        return int(np.count_nonzero(pts[:, 0] > 0.0))
    if surface == "clifford":
        # solid torus |z1| > |z2|
        r1 = pts[:, 0] ** 2 + pts[:, 1] ** 2
        r2 = pts[:, 2] ** 2 + pts[:, 3] ** 2
        return int(np.count_nonzero(r1 > r2))
    raise OracleError(f"unknown surface {surface!r}; choose from {SURFACES}")


def volume_fraction(surface: str, sampler: S3Sampler) -> Tuple[float, float]:
    """Hit fraction for the chosen side classifier, with binomial standard error."""
    if surface not in SURFACES:
        raise OracleError(f"unknown surface {surface!r}; choose from {SURFACES}")
    hits = 0
    remaining = sampler.n
    shard = 0
    while remaining > 0:
        count = min(SHARD_SIZE, remaining)
        hits += _count_hits(surface, sampler.seed, shard, count)
        remaining -= count
        shard += 1
    frac = hits / sampler.n
    stderr = math.sqrt(max(frac * (1.0 - frac), 1e-300) / sampler.n)
    return frac, stderr


def gamma_from_fraction(fraction: float) -> AngleClass:
    """2*pi times the enclosed volume fraction."""
    if not 0.0 <= fraction <= 1.0:
        raise OracleError(f"fraction {fraction} outside [0, 1]")
    return AngleClass.from_raw(2.0 * math.pi * fraction)
