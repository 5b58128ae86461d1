"""Segre embedding of (P^1)^n and secant-variety dimensions via tangent ranks.

The ambient space is P^N with N = 2^n - 1; coordinates are indexed by
subsets of the n factors, encoded as ascending bitmasks with bit i
corresponding to factor i+1.  The tangent space at a point is spanned by
the Segre image plus, per factor, the image with that factor replaced by
an independent direction; the dimension of the s-th secant variety is the
rank of the stacked tangent rows at s sampled points, minus one.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import modp
from .modp import Echelon, rng_for


def expected_dim(n: int, s: int) -> int:
    """min(2^n - 1, s(n+1) - 1), the naive parameter count."""
    if n < 1 or s < 1:
        raise ValueError("n and s must be >= 1")
    if n > 62:
        raise OverflowError("n > 62 exceeds the machine-word envelope")
    return min((1 << n) - 1, s * (n + 1) - 1)


@dataclass(frozen=True)
class SecantProblem:
    n: int
    s: int

    def __post_init__(self):
        if self.n < 1 or self.s < 1:
            raise ValueError("n and s must be >= 1")

    @property
    def ambient_dim(self) -> int:
        return (1 << self.n) - 1

    @property
    def expected(self) -> int:
        return expected_dim(self.n, self.s)


def sample_factor_point(
    n: int, rng: np.random.Generator, p: int, chart: bool = False
) -> np.ndarray:
    """n homogeneous pairs (a_i : b_i); with chart=True, all a_i nonzero."""
    pairs = np.empty((n, 2), dtype=np.int64)
    for i in range(n):
        while True:
            pair = rng.integers(0, p, size=2, dtype=np.int64)
            if pair[0] == 0 and pair[1] == 0:
                continue
            if chart and pair[0] == 0:
                continue
            pairs[i] = pair
            break
    return pairs


def segre_coordinates(pt: np.ndarray, p: int) -> np.ndarray:
    """Length-2^n Segre vector of a factor point, bitmask basis order.

    Coordinate at mask S is prod_{i in S} b_{i+1} * prod_{i not in S} a_{i+1}.
    """
    v = np.ones(1, dtype=np.int64)
    for a, b in np.asarray(pt, dtype=np.int64) % p:
        v = np.concatenate([(v * a) % p, (v * b) % p])
    return v


def tangent_directions(pt: np.ndarray, p: int) -> np.ndarray:
    """Replacement direction per factor: (0,1), or (1,0) for points at (0:1)."""
    pt = np.asarray(pt, dtype=np.int64) % p
    dirs = np.zeros_like(pt)
    for i, (a, _b) in enumerate(pt):
        dirs[i] = (1, 0) if a == 0 else (0, 1)
    return dirs


def tangent_rows(pt: np.ndarray, p: int) -> np.ndarray:
    """(n+1) rows spanning the affine cone over the tangent space at pt."""
    pt = np.asarray(pt, dtype=np.int64) % p
    n = pt.shape[0]
    dirs = tangent_directions(pt, p)
    rows = np.empty((n + 1, 1 << n), dtype=np.int64)
    rows[0] = segre_coordinates(pt, p)
    for i in range(n):
        moved = pt.copy()
        moved[i] = dirs[i]
        rows[i + 1] = segre_coordinates(moved, p)
    return rows


def terracini_matrix(
    n: int, s: int, rng: np.random.Generator, p: int, chart: bool = False
) -> np.ndarray:
    """Stacked tangent rows at s sampled points: shape (s(n+1), 2^n).

    Points are drawn sequentially from rng, so the s-point matrix is a
    prefix of the (s+1)-point matrix for the same stream.
    """
    rows = np.empty((s * (n + 1), 1 << n), dtype=np.int64)
    for j in range(s):
        rows[j * (n + 1) : (j + 1) * (n + 1)] = tangent_rows(
            sample_factor_point(n, rng, p, chart=chart), p
        )
    return rows


@dataclass(frozen=True)
class DimensionReport:
    problem: SecantProblem
    expected: int
    observed: int
    defect: int
    primes: tuple[int, ...]
    trials: int
    seed: int
    degree_bound: int  # Schwartz-Zippel degree bound; per-cell failure <= bound/p
    cell_ranks: tuple[int, ...] = field(default=())

    @property
    def cells_agreeing(self) -> int:
        top = max(self.cell_ranks)
        return sum(1 for r in self.cell_ranks if r == top)

    def to_dict(self) -> dict:
        return {
            "n": self.problem.n,
            "s": self.problem.s,
            "expected": self.expected,
            "observed": self.observed,
            "defect": self.defect,
            "primes": list(self.primes),
            "trials": self.trials,
            "seed": self.seed,
            "degree_bound": self.degree_bound,
            "cells": len(self.cell_ranks),
            "cells_agreeing": self.cells_agreeing,
        }


def _degree_bound(n: int, s: int) -> int:
    # Every matrix entry is a monomial of degree <= n in the sampled factor
    # coordinates, so any r x r minor has total degree <= r*n.
    return min(s * (n + 1), 1 << n) * n


def secant_dim_sample(
    problem: SecantProblem, primes=modp.DEFAULT_PRIMES, trials: int = 3, seed: int = 0
) -> DimensionReport:
    """Sampled dim of the s-th secant variety: rank of tangent stack minus 1.

    Observed dimension is the max over (prime, trial) cells, a certified
    lower bound for the true dimension; a positive defect is only ever
    claimed when every cell agrees.
    """
    n, s = problem.n, problem.s
    cells = modp.rank_cells(
        lambda p, rng: terracini_matrix(n, s, rng, p), primes, trials, seed
    )
    ranks = tuple(c.rank for c in cells)
    observed = max(ranks) - 1
    exp = problem.expected
    return DimensionReport(
        problem=problem,
        expected=exp,
        observed=observed,
        defect=exp - observed,
        primes=tuple(primes),
        trials=trials,
        seed=seed,
        degree_bound=_degree_bound(n, s),
        cell_ranks=ranks,
    )


def multigraded_ideal_dim(
    problem: SecantProblem, primes=modp.DEFAULT_PRIMES, trials: int = 3, seed: int = 0
) -> int:
    """dim of the multidegree-(1,...,1) piece of the ideal of s double points
    on (P^1)^n: 2^n minus the rank of the same tangent stack."""
    n, s = problem.n, problem.s
    r = modp.multi_prime_rank(
        lambda p, rng: terracini_matrix(n, s, rng, p), primes, trials, seed
    )
    return (1 << n) - r


def floor_count(n: int) -> int:
    """e = floor(2^n / (n+1)): the largest s with no expected ideal collapse."""
    return (1 << n) // (n + 1)


def ceil_count(n: int) -> int:
    """e* = ceil(2^n / (n+1))."""
    return -((1 << n) // -(n + 1))


def table_observed(
    n: int,
    s_max: int,
    primes=modp.DEFAULT_PRIMES,
    trials: int = 3,
    seed: int = 0,
) -> dict[int, list[int]]:
    """Observed rank per s = 1..s_max for every (prime, trial) cell.

    One incremental echelon pass per cell: the s-point matrix is a prefix
    of the (s+1)-point matrix, so all s values share the elimination work.
    Returns {s: [rank per cell]} (ranks, not dimensions).
    """
    out: dict[int, list[int]] = {s: [] for s in range(1, s_max + 1)}
    for pi, p in enumerate(primes):
        for trial in range(trials):
            rng = rng_for(seed, pi, trial)
            ech = Echelon(1 << n, p)
            for s in range(1, s_max + 1):
                rows = tangent_rows(sample_factor_point(n, rng, p), p)
                out[s].append(int(ech.add_rows(rows)[-1]))
    return out
