"""Exact dense linear algebra over word-sized prime fields.

Everything downstream (Terracini ranks, fat-point conditions matrices)
reduces to computing ranks of dense matrices mod p.  The workhorse is an
incremental row-echelon accumulator (`Echelon`) that also reports the rank
of every row prefix, which is what the secant-dimension table needs: the
s-point tangent matrix is a prefix of the (s+1)-point one.

Entries live in [0, p) as int64 with p < 2**31.  Block reduction against
the stored echelon rows is done with float64 matmuls on 16-bit splits of
the operands; every partial sum stays below 2**53, so the arithmetic is
exact (see `_modmul_accum`).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np
from numba import njit

DEFAULT_PRIME = 2147483647  # 2**31 - 1
SECONDARY_PRIMES = (2147483629, 1073741789)
DEFAULT_PRIMES = (DEFAULT_PRIME,) + SECONDARY_PRIMES

#: Smallest admissible modulus; below this the per-trial failure bound
#: of random rank sampling stops being negligible.
MIN_PRIME = 1 << 20

_SPLIT = 1 << 16


class SmallPrimeError(ValueError):
    """Raised when a modulus below MIN_PRIME is supplied."""


def _check_prime(p: int) -> None:
    if p < MIN_PRIME:
        raise SmallPrimeError(f"modulus {p} below minimum {MIN_PRIME}")


def rng_for(seed: int, *path: int) -> np.random.Generator:
    """Deterministic splittable stream: same (seed, path) -> same stream."""
    return np.random.default_rng(np.random.SeedSequence(seed, spawn_key=tuple(path)))


@dataclass(frozen=True)
class PrimeMatrix:
    """Dense matrix over F_p, row-major, entries reduced mod p."""

    p: int
    entries: np.ndarray  # int64, shape (rows, cols)

    def __post_init__(self):
        _check_prime(self.p)
        a = np.asarray(self.entries, dtype=np.int64)
        if a.ndim != 2:
            raise ValueError("entries must be 2-dimensional")
        object.__setattr__(self, "entries", np.ascontiguousarray(a % self.p))

    @property
    def rows(self) -> int:
        return self.entries.shape[0]

    @property
    def cols(self) -> int:
        return self.entries.shape[1]


@njit(nogil=True, cache=True)
def _panel_rref(R, p):  # pragma: no cover - exercised via Echelon
    """In-place RREF of a panel already reduced against stored blocks.

    Pivot rows are compacted into R[:nnew], mutually reduced, with unit
    leading coefficients.  Returns (nnew, pivot_columns, is_pivot_flags).
    """
    m, nc = R.shape
    newpiv = np.empty(m, np.int64)
    isp = np.zeros(m, np.int64)
    nnew = 0
    for i in range(m):
        row = R[i].copy()
        for j in range(nnew):
            f = row[newpiv[j]]
            if f != 0:
                pr = R[j]
                for c in range(nc):
                    row[c] = (row[c] - f * pr[c]) % p
        pc = -1
        for c in range(nc):
            if row[c] != 0:
                pc = c
                break
        if pc >= 0:
            a = row[pc]
            e = p - 2
            b = a
            inv = 1
            while e:
                if e & 1:
                    inv = (inv * b) % p
                b = (b * b) % p
                e >>= 1
            for c in range(nc):
                row[c] = (row[c] * inv) % p
            for j in range(nnew):
                f = R[j][pc]
                if f != 0:
                    pr = R[j]
                    for c in range(nc):
                        pr[c] = (pr[c] - f * row[c]) % p
            R[nnew] = row
            newpiv[nnew] = pc
            nnew += 1
            isp[i] = 1
    return nnew, newpiv[:nnew], isp


def _modmul_accum(C: np.ndarray, Bh: np.ndarray, Bl: np.ndarray, p: int) -> np.ndarray:
    """Exact (C @ B) mod p where B was pre-split as B = Bh*2**16 + Bl.

    All partial dot products fit in float64: with p < 2**31 and inner
    dimension < 2**21, each accumulated sum is below 2**53.
    """
    Ch, Cl = np.divmod(C, _SPLIT)
    Ch = Ch.astype(np.float64)
    Cl = Cl.astype(np.float64)
    hh = (Ch @ Bh) % p
    mid = (Ch @ Bl + Cl @ Bh) % p
    ll = (Cl @ Bl) % p
    r16 = _SPLIT % p
    r32 = (r16 * r16) % p
    acc = hh.astype(np.int64) * r32 % p
    acc = (acc + mid.astype(np.int64) * r16) % p
    acc = (acc + ll.astype(np.int64)) % p
    return acc


class Echelon:
    """Incremental reduced row echelon form over F_p.

    Stored pivot rows are grouped in blocks; each block is RREF with
    respect to its own pivot columns and already reduced against all
    earlier blocks, so reducing an incoming panel is one exact matmul
    per block.
    """

    def __init__(self, ncols: int, p: int, panel: int = 128):
        _check_prime(p)
        self.p = p
        self.ncols = ncols
        self.panel = panel
        self.rank = 0
        self._blocks: list[tuple[np.ndarray, np.ndarray, np.ndarray]] = []

    def add_rows(self, rows: np.ndarray) -> np.ndarray:
        """Absorb rows in order; return the rank after each row."""
        p = self.p
        R = np.ascontiguousarray(np.asarray(rows, dtype=np.int64) % p)
        if R.ndim != 2 or R.shape[1] != self.ncols:
            raise ValueError("row block has wrong shape")
        out = np.empty(R.shape[0], np.int64)
        pos = 0
        for lo in range(0, R.shape[0], self.panel):
            blk = R[lo : lo + self.panel].copy()
            for piv, Bh, Bl in self._blocks:
                blk = (blk - _modmul_accum(blk[:, piv], Bh, Bl, p)) % p
            nnew, piv, isp = _panel_rref(blk, p)
            if nnew:
                B = blk[:nnew]
                Bh, Bl = np.divmod(B, _SPLIT)
                self._blocks.append(
                    (piv.copy(), Bh.astype(np.float64), Bl.astype(np.float64))
                )
            cum = np.cumsum(isp) + self.rank
            self.rank += nnew
            out[pos : pos + len(isp)] = cum
            pos += len(isp)
        return out


def rank(m: PrimeMatrix) -> int:
    """Rank of a PrimeMatrix over its prime field; the input is not mutated."""
    return rank_array(m.entries, m.p)


def rank_array(a: np.ndarray, p: int) -> int:
    a = np.asarray(a, dtype=np.int64)
    if a.size == 0:
        return 0
    e = Echelon(a.shape[1], p)
    e.add_rows(a)
    return e.rank


@dataclass(frozen=True)
class CellRank:
    prime: int
    trial: int
    rank: int


def rank_cells(
    build: Callable[[int, np.random.Generator], np.ndarray],
    primes: Sequence[int],
    trials: int,
    seed: int,
) -> list[CellRank]:
    """Rank of build(p, rng) for every (prime, trial) cell.

    Each cell gets an independent child stream derived from (seed,
    prime-index, trial); cells are order-independent and reproducible.
    """
    if not primes:
        raise ValueError("primes must be nonempty")
    if trials < 1:
        raise ValueError("trials must be >= 1")
    for p in primes:
        _check_prime(p)
    cells = []
    for pi, p in enumerate(primes):
        for trial in range(trials):
            a = build(p, rng_for(seed, pi, trial))
            cells.append(CellRank(p, trial, rank_array(a, p)))
    return cells


def multi_prime_rank(
    build: Callable[[int, np.random.Generator], np.ndarray],
    primes: Sequence[int],
    trials: int,
    seed: int,
) -> int:
    """Max rank over (prime, trial) cells: a certified lower bound for the
    generic rank in characteristic zero."""
    return max(c.rank for c in rank_cells(build, primes, trials, seed))


def random_projective_point(dim: int, rng: np.random.Generator, p: int) -> np.ndarray:
    """Uniform point of P^dim over F_p, first nonzero coordinate scaled to 1."""
    if dim < 0:
        raise ValueError("dim must be >= 0")
    while True:
        v = rng.integers(0, p, size=dim + 1, dtype=np.int64)
        if np.any(v != 0):
            return normalize_point(v, p)


def normalize_point(v: np.ndarray, p: int) -> np.ndarray:
    v = np.asarray(v, dtype=np.int64) % p
    nz = np.nonzero(v)[0]
    if len(nz) == 0:
        raise ValueError("zero vector is not a projective point")
    inv = pow(int(v[nz[0]]), -1, p)
    return (v * inv) % p
