"""Fat-point and linear-space subschemes of P^n and their Hilbert functions.

A scheme is a list of fat points plus linear-space components, possibly
symbolic ("generic point", "generic point on subspace H") until
instantiated over a concrete prime field.  The degree-t piece of its ideal
is computed as the corank of a conditions matrix over the degree-t
monomial basis:

  * a fat point (P, m) contributes one row per derivative multi-index of
    order m-1 (lower orders follow by homogeneity);
  * a linear component (L, l) contributes, for every normal-derivative
    multi-index of order < l, the coefficients of the restriction to L in
    an exact adapted coordinate frame built from the spanning points.

Fat points supported at coordinate points impose monomial conditions, so
the assembly pre-restricts the basis instead of emitting their rows; the
two routes agree exactly (see tests).
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field, replace
from math import comb
from typing import Iterable, Optional, Sequence

import numpy as np

from . import modp
from .modp import DEFAULT_PRIMES, normalize_point, rng_for

KIND_COORDINATE = "coordinate"
KIND_GENERIC = "generic"
KIND_ON_SUBSPACE = "on-subspace"
KIND_EXPLICIT = "explicit"

_KINDS = (KIND_COORDINATE, KIND_GENERIC, KIND_ON_SUBSPACE, KIND_EXPLICIT)

MAX_DEGREE = 32
MAX_BASIS = 10**7

OUTSIDE_SUPPORTED_CALCULUS = "residual of linear component not contained in the hyperplane: left unchanged (outside supported calculus)"


class SpanError(ValueError):
    """Degenerate spanning set for a linear component or frame."""


class ResourceGuardError(RuntimeError):
    """Degree/basis size exceeds the desk-scale envelope."""


class SchemeValidationError(ValueError):
    pass


@dataclass(frozen=True)
class PointSpec:
    """A fat point, possibly symbolic until instantiated."""

    mult: int
    kind: str
    index: Optional[int] = None  # coordinate index for kind "coordinate"
    subspace: Optional[str] = None  # host id for kind "on-subspace"
    coords: Optional[tuple[int, ...]] = None  # for kind "explicit"

    def __post_init__(self):
        if self.mult < 1:
            raise SchemeValidationError("multiplicity must be >= 1")
        if self.kind not in _KINDS:
            raise SchemeValidationError(f"unknown point kind {self.kind!r}")
        if self.kind == KIND_COORDINATE and self.index is None:
            raise SchemeValidationError("coordinate point needs an index")
        if self.kind == KIND_ON_SUBSPACE and self.subspace is None:
            raise SchemeValidationError("on-subspace point needs a subspace id")
        if self.kind == KIND_EXPLICIT and self.coords is None:
            raise SchemeValidationError("explicit point needs coordinates")


@dataclass(frozen=True)
class SubspaceSpec:
    """A linear subspace given by spanning points; optionally a component."""

    span: tuple[PointSpec, ...]
    include: bool = False
    mult: int = 1

    def __post_init__(self):
        if not self.span:
            raise SchemeValidationError("empty span")
        if self.mult < 1:
            raise SchemeValidationError("inclusion multiplicity must be >= 1")


@dataclass(frozen=True)
class SchemeSpec:
    ambient: int
    points: tuple[PointSpec, ...] = ()
    subspaces: tuple[tuple[str, SubspaceSpec], ...] = ()
    degree: Optional[int] = None
    notes: tuple[str, ...] = ()

    def __post_init__(self):
        if self.ambient < 1:
            raise SchemeValidationError("ambient dimension must be >= 1")
        ids = [sid for sid, _ in self.subspaces]
        if len(ids) != len(set(ids)):
            raise SchemeValidationError("duplicate subspace ids")
        reg = dict(self.subspaces)
        for pt in self.points:
            if pt.kind == KIND_ON_SUBSPACE and pt.subspace not in reg:
                raise SchemeValidationError(f"unresolved subspace {pt.subspace!r}")
            if pt.kind == KIND_COORDINATE and not 0 <= pt.index <= self.ambient:
                raise SchemeValidationError("coordinate index out of range")
            if pt.kind == KIND_EXPLICIT and len(pt.coords) != self.ambient + 1:
                raise SchemeValidationError("explicit point has wrong length")

    @property
    def is_explicit(self) -> bool:
        pts_ok = all(p.kind in (KIND_EXPLICIT, KIND_COORDINATE) for p in self.points)
        span_ok = all(
            s.kind in (KIND_EXPLICIT, KIND_COORDINATE)
            for _, sub in self.subspaces
            for s in sub.span
        )
        return pts_ok and span_ok

    def subspace(self, sid: str) -> SubspaceSpec:
        return dict(self.subspaces)[sid]


def coordinate_point(n: int, index: int) -> tuple[int, ...]:
    v = [0] * (n + 1)
    v[index] = 1
    return tuple(v)


def j_pair(host: str, order: int) -> tuple[PointSpec, PointSpec]:
    """Two generic points on a registered plane: order 1 = simple, 2 = double."""
    if order not in (1, 2):
        raise SchemeValidationError("J-pair order must be 1 or 2")
    p = PointSpec(mult=order, kind=KIND_ON_SUBSPACE, subspace=host)
    return (p, p)


# ---------------------------------------------------------------------------
# small exact linear algebra helpers (tiny matrices; plain python/numpy)
# ---------------------------------------------------------------------------


def _mdot(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    """Exact (a @ b) % p; python-int arithmetic so 31-bit entries cannot
    overflow int64 during accumulation."""
    prod = np.dot(np.asarray(a, dtype=object), np.asarray(b, dtype=object))
    return np.asarray(np.asarray(prod) % p, dtype=np.int64)


def _rref(a: np.ndarray, p: int) -> tuple[np.ndarray, list[int]]:
    a = np.array(a, dtype=np.int64) % p
    m, n = a.shape
    piv = []
    r = 0
    for c in range(n):
        k = next((i for i in range(r, m) if a[i, c] % p), None)
        if k is None:
            continue
        a[[r, k]] = a[[k, r]]
        a[r] = a[r] * pow(int(a[r, c]), -1, p) % p
        for i in range(m):
            if i != r and a[i, c]:
                a[i] = (a[i] - a[i, c] * a[r]) % p
        piv.append(c)
        r += 1
        if r == m:
            break
    return a, piv


def _solve_coeffs(basis: np.ndarray, x: np.ndarray, p: int) -> Optional[np.ndarray]:
    """c with c @ basis == x mod p, or None if x is outside the row span."""
    m = basis.shape[0]
    a = basis.T % p  # (n+1) x m
    b = np.asarray(x, dtype=np.int64) % p  # (n+1,)
    A = np.concatenate([a, b[:, None]], axis=1)
    R, piv = _rref(A, p)
    c = np.zeros(m, dtype=np.int64)
    for row, pc in enumerate(piv):
        if pc == m:
            return None  # inconsistent
        c[pc] = R[row, m]
    return c


def _row_rank(a: np.ndarray, p: int) -> int:
    _, piv = _rref(a, p)
    return len(piv)


def _nullspace(a: np.ndarray, p: int) -> np.ndarray:
    """Rows spanning {v : a @ v == 0 mod p}."""
    a = np.asarray(a, dtype=np.int64) % p
    m, n = a.shape
    R, piv = _rref(a, p)
    free = [c for c in range(n) if c not in piv]
    out = np.zeros((len(free), n), dtype=np.int64)
    for k, fc in enumerate(free):
        out[k, fc] = 1
        for row, pc in enumerate(piv):
            out[k, pc] = (-R[row, fc]) % p
    return out


def _proportional(x: np.ndarray, y: np.ndarray, p: int) -> bool:
    x = np.asarray(x, dtype=np.int64) % p
    y = np.asarray(y, dtype=np.int64) % p
    if not (np.any(x) and np.any(y)):
        return False
    return _row_rank(np.vstack([x, y]), p) == 1


# ---------------------------------------------------------------------------
# instantiation
# ---------------------------------------------------------------------------


def _resolve_span_point(pt: PointSpec, n: int, p: int, rng) -> np.ndarray:
    if pt.kind == KIND_COORDINATE:
        return np.array(coordinate_point(n, pt.index), dtype=np.int64)
    if pt.kind == KIND_EXPLICIT:
        return normalize_point(np.array(pt.coords, dtype=np.int64), p)
    if pt.kind == KIND_GENERIC:
        return modp.random_projective_point(n, rng, p)
    raise SchemeValidationError("subspace spans cannot reference other subspaces")


def instantiate(spec: SchemeSpec, p: int, rng: np.random.Generator) -> SchemeSpec:
    """Sample all symbolic points; the result is fully explicit.

    Coordinate points keep their symbolic tag so that downstream conditions
    assembly can use the monomial fast path.
    """
    n = spec.ambient
    spans: dict[str, np.ndarray] = {}
    new_subspaces = []
    for sid, sub in spec.subspaces:
        rows = np.array([_resolve_span_point(s, n, p, rng) for s in sub.span])
        if _row_rank(rows, p) != len(rows):
            if all(s.kind != KIND_GENERIC for s in sub.span):
                raise SpanError(f"degenerate span for subspace {sid!r}")
            # resample generic span points until independent
            for _ in range(64):
                rows = np.array([_resolve_span_point(s, n, p, rng) for s in sub.span])
                if _row_rank(rows, p) == len(rows):
                    break
            else:  # pragma: no cover
                raise SpanError(f"could not sample independent span for {sid!r}")
        spans[sid] = rows
        new_subspaces.append(
            (
                sid,
                SubspaceSpec(
                    span=tuple(
                        PointSpec(1, KIND_EXPLICIT, coords=tuple(int(v) for v in r))
                        for r in rows
                    ),
                    include=sub.include,
                    mult=sub.mult,
                ),
            )
        )
    new_points = []
    for pt in spec.points:
        if pt.kind in (KIND_COORDINATE, KIND_EXPLICIT):
            new_points.append(pt)
            continue
        if pt.kind == KIND_GENERIC:
            coords = modp.random_projective_point(n, rng, p)
        else:  # on-subspace: random combination of the spanning points
            rows = spans[pt.subspace]
            while True:
                c = rng.integers(0, p, size=rows.shape[0], dtype=np.int64)
                v = _mdot(c, rows, p)
                if np.any(v):
                    coords = normalize_point(v, p)
                    break
        new_points.append(
            PointSpec(pt.mult, KIND_EXPLICIT, coords=tuple(int(v) for v in coords))
        )
    return replace(spec, points=tuple(new_points), subspaces=tuple(new_subspaces))


def _point_coords(pt: PointSpec, n: int) -> np.ndarray:
    if pt.kind == KIND_COORDINATE:
        return np.array(coordinate_point(n, pt.index), dtype=np.int64)
    if pt.kind == KIND_EXPLICIT:
        return np.array(pt.coords, dtype=np.int64)
    raise SchemeValidationError("scheme must be instantiated first")


def _span_rows(sub: SubspaceSpec, n: int, p: int) -> np.ndarray:
    rows = np.array([_point_coords(s, n) for s in sub.span], dtype=np.int64) % p
    if _row_rank(rows, p) != len(rows):
        raise SpanError("degenerate spanning set")
    return rows


# ---------------------------------------------------------------------------
# monomial bases and conditions rows
# ---------------------------------------------------------------------------


def monomial_basis(n: int, t: int, caps: Optional[Sequence[int]] = None) -> np.ndarray:
    """Degree-t exponent vectors in n+1 variables, a_j <= caps[j], in
    ascending counter order (last variable fastest)."""
    if caps is None:
        caps = [t] * (n + 1)
    out: list[tuple[int, ...]] = []

    def rec(j: int, rem: int, acc: list[int]):
        if j == n:
            if rem <= caps[j]:
                out.append(tuple(acc + [rem]))
            return
        for a in range(min(rem, caps[j]) + 1):
            rec(j + 1, rem - a, acc + [a])

    rec(0, t, [])
    return np.array(out, dtype=np.int64).reshape(len(out), n + 1)


def _multi_indices(nvars: int, total: int) -> list[tuple[int, ...]]:
    out: list[tuple[int, ...]] = []

    def rec(j: int, rem: int, acc: list[int]):
        if j == nvars - 1:
            out.append(tuple(acc + [rem]))
            return
        for a in range(rem + 1):
            rec(j + 1, rem - a, acc + [a])

    if nvars == 0:
        return [()] if total == 0 else []
    rec(0, total, [])
    return out


def _check_degree_guard(n: int, t: int) -> None:
    if t < 1:
        raise SchemeValidationError("degree must be >= 1")
    if t > MAX_DEGREE or comb(t + n, n) > MAX_BASIS:
        raise ResourceGuardError(
            f"degree {t} in P^{n} exceeds the desk-scale envelope"
        )


def _fat_point_rows(
    coords: np.ndarray, m: int, basis: np.ndarray, t: int, p: int
) -> np.ndarray:
    """One row per derivative multi-index of order m-1, evaluated at coords."""
    n1 = basis.shape[1]
    coords = coords % p
    powers = np.empty((n1, t + 1), dtype=np.int64)
    for j in range(n1):
        powers[j, 0] = 1
        for k in range(1, t + 1):
            powers[j, k] = powers[j, k - 1] * coords[j] % p
    ff = np.zeros((m, t + 1), dtype=np.int64)  # ff[d, a] = a!/(a-d)! mod p
    ff[0] = 1
    for d in range(1, m):
        for a in range(d, t + 1):
            ff[d, a] = ff[d - 1, a] * ((a - d + 1) % p) % p
    alphas = _multi_indices(n1, m - 1)
    rows = np.empty((len(alphas), basis.shape[0]), dtype=np.int64)
    for r, alpha in enumerate(alphas):
        val = np.ones(basis.shape[0], dtype=np.int64)
        ok = np.ones(basis.shape[0], dtype=bool)
        for j, aj in enumerate(alpha):
            col = basis[:, j]
            ok &= col >= aj
            idx = np.maximum(col - aj, 0)
            val = val * ff[aj, col.clip(min=aj)] % p
            val = val * powers[j, idx] % p
        val[~ok] = 0
        rows[r] = val
    return rows


def _adapted_frame(span: np.ndarray, n: int, p: int) -> np.ndarray:
    """Invertible (n+1)x(n+1) matrix whose first rows are the span."""
    rows = [r % p for r in span]
    for j in range(n + 1):
        if len(rows) == n + 1:
            break
        cand = np.zeros(n + 1, dtype=np.int64)
        cand[j] = 1
        trial = np.vstack(rows + [cand])
        if _row_rank(trial, p) == len(rows) + 1:
            rows.append(cand)
    if len(rows) != n + 1:  # pragma: no cover
        raise SpanError("could not complete frame")
    return np.vstack(rows)


def _linear_component_rows(
    span: np.ndarray, mult: int, basis: np.ndarray, t: int, p: int
) -> np.ndarray:
    """Conditions that a form vanish on the span to order `mult`.

    Works in an adapted frame z = u @ M with the span as the leading
    coordinates of u; the form is expanded as a polynomial in u truncated
    to total degree < mult in the normal variables, and every surviving
    u-coefficient is one condition row.
    """
    n = basis.shape[1] - 1
    k = span.shape[0] - 1  # projective dimension of the component
    frame = _adapted_frame(span, n, p)
    ntang = k + 1
    nnorm = n - k
    # expansion of each z-monomial under z_j = sum_i u_i * frame[i, j]
    row_index: dict[tuple[tuple[int, ...], tuple[int, ...]], int] = {}
    cols: list[dict[int, int]] = []
    for a in basis:
        poly: dict[tuple[tuple[int, ...], tuple[int, ...]], int] = {
            (tuple([0] * ntang), tuple([0] * nnorm)): 1
        }
        for j in range(n + 1):
            coeffs = frame[:, j] % p
            for _ in range(int(a[j])):
                nxt: dict[tuple[tuple[int, ...], tuple[int, ...]], int] = {}
                for (tg, nr), c in poly.items():
                    for i in range(n + 1):
                        ci = int(coeffs[i])
                        if ci == 0:
                            continue
                        if i < ntang:
                            key = (
                                tuple(
                                    tg[q] + (1 if q == i else 0) for q in range(ntang)
                                ),
                                nr,
                            )
                        else:
                            d = sum(nr)
                            if d + 1 >= mult:
                                continue
                            ii = i - ntang
                            key = (
                                tg,
                                tuple(
                                    nr[q] + (1 if q == ii else 0) for q in range(nnorm)
                                ),
                            )
                        nxt[key] = (nxt.get(key, 0) + c * ci) % p
                poly = nxt
        col: dict[int, int] = {}
        for key, c in poly.items():
            if c == 0:
                continue
            if key not in row_index:
                row_index[key] = len(row_index)
            col[row_index[key]] = c
        cols.append(col)
    out = np.zeros((len(row_index), basis.shape[0]), dtype=np.int64)
    for cidx, col in enumerate(cols):
        for ridx, c in col.items():
            out[ridx, cidx] = c
    return out


def _assemble(
    spec: SchemeSpec, t: int, p: int, fast: bool = True
) -> tuple[np.ndarray, np.ndarray]:
    """(basis, stacked condition rows) for an explicit scheme.

    With fast=True, fat points at coordinate points are folded into the
    basis as exponent caps instead of explicit rows.
    """
    n = spec.ambient
    _check_degree_guard(n, t)
    caps = [t] * (n + 1)
    dense_points: list[tuple[np.ndarray, int]] = []
    for pt in spec.points:
        if pt.mult > t + 1:
            raise SchemeValidationError(
                f"multiplicity {pt.mult} exceeds degree+1 = {t + 1}"
            )
        if fast and pt.kind == KIND_COORDINATE:
            caps[pt.index] = min(caps[pt.index], t - pt.mult)
        else:
            dense_points.append((_point_coords(pt, n) % p, pt.mult))
    basis = monomial_basis(n, t, caps)
    blocks = []
    for coords, m in dense_points:
        blocks.append(_fat_point_rows(coords, m, basis, t, p))
    for _, sub in spec.subspaces:
        if not sub.include:
            continue
        span = _span_rows(sub, n, p)
        blocks.append(_linear_component_rows(span, sub.mult, basis, t, p))
    if blocks:
        rows = np.vstack(blocks)
    else:
        rows = np.zeros((0, basis.shape[0]), dtype=np.int64)
    return basis, rows % p


def conditions_matrix(
    spec: SchemeSpec, t: int, p: int = DEFAULT_PRIMES[0], seed: int = 0
) -> modp.PrimeMatrix:
    """Full conditions matrix over the complete degree-t monomial basis.

    Symbolic points are instantiated from `seed`; rows for every component,
    including coordinate fat points, are emitted explicitly.
    """
    if not spec.is_explicit:
        spec = instantiate(spec, p, rng_for(seed, 0xC0))
    _, rows = _assemble(spec, t, p, fast=False)
    return modp.PrimeMatrix(p, rows)


def _ideal_dim_explicit(spec: SchemeSpec, t: int, p: int) -> int:
    basis, rows = _assemble(spec, t, p, fast=True)
    return basis.shape[0] - modp.rank_array(rows, p)


def ideal_dim_sample(spec: SchemeSpec, t: int, p: int = DEFAULT_PRIMES[0]) -> int:
    """Single-sample value of dim (I_X)_t on an explicit scheme.

    Useful when several schemes must be compared on literally the same
    sampled points; `ideal_dim` is the aggregated front door.
    """
    if not spec.is_explicit:
        raise SchemeValidationError("sample evaluation needs an explicit scheme")
    return _ideal_dim_explicit(spec, t, p)


def ideal_dim(
    spec: SchemeSpec,
    t: int,
    primes: Sequence[int] = DEFAULT_PRIMES,
    trials: int = 3,
    seed: int = 0,
) -> int:
    """dim (I_X)_t, the minimum over (prime, trial) samples.

    Genericity makes the Hilbert function minimal, so sampled values can
    only overshoot; the minimum over samples is the reported value.
    """
    if spec.is_explicit:
        trials = 1
    vals = []
    for pi, p in enumerate(primes):
        for trial in range(trials):
            inst = spec
            if not spec.is_explicit:
                inst = instantiate(spec, p, rng_for(seed, pi, trial))
            vals.append(_ideal_dim_explicit(inst, t, p))
    return min(vals)


# ---------------------------------------------------------------------------
# transfer from the Segre side
# ---------------------------------------------------------------------------


def segre_to_fatpoints(n: int, s: int) -> SchemeSpec:
    """The P^n scheme whose degree-n ideal matches the multigraded problem:
    n coordinate points of multiplicity n-1 plus s generic double points."""
    if n < 2:
        raise SchemeValidationError("n must be >= 2")
    pts = [PointSpec(n - 1, KIND_COORDINATE, index=i) for i in range(1, n + 1)]
    pts += [PointSpec(2, KIND_GENERIC)] * s
    return SchemeSpec(ambient=n, points=tuple(pts), degree=n)


@dataclass(frozen=True)
class TransferReport:
    n: int
    s: int
    equal: bool
    pairs: tuple[tuple[int, int, int], ...]  # (prime, multigraded, fat-point)


def transfer_consistency(
    n: int, s: int, seed: int = 0, primes: Sequence[int] = DEFAULT_PRIMES
) -> TransferReport:
    """Check dim (I_Z)_(1,...,1) == dim (I_X)_n with transported points.

    The same sampled factor points are used on both sides, so the equality
    is exact per sample, not probabilistic.
    """
    from . import segre

    pairs = []
    ok = True
    for pi, p in enumerate(primes):
        rng = rng_for(seed, pi)
        fpts = [segre.sample_factor_point(n, rng, p, chart=True) for _ in range(s)]
        rows = (
            np.vstack([segre.tangent_rows(f, p) for f in fpts])
            if s
            else np.zeros((0, 1 << n), dtype=np.int64)
        )
        mg = (1 << n) - modp.rank_array(rows, p)
        pts = [PointSpec(n - 1, KIND_COORDINATE, index=i) for i in range(1, n + 1)]
        for f in fpts:
            coords = [1] + [int(b) * pow(int(a), -1, p) % p for a, b in f]
            pts.append(PointSpec(2, KIND_EXPLICIT, coords=tuple(coords)))
        fat = _ideal_dim_explicit(SchemeSpec(ambient=n, points=tuple(pts)), n, p)
        pairs.append((p, mg, fat))
        ok = ok and mg == fat
    return TransferReport(n=n, s=s, equal=ok, pairs=tuple(pairs))


# ---------------------------------------------------------------------------
# hyperplanes, residuals, traces, projections
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Hyperplane:
    """A hyperplane of P^n with both a linear form and an explicit frame."""

    p: int
    form: np.ndarray  # length n+1
    span: np.ndarray  # n x (n+1), spanning points, also the trace frame

    @classmethod
    def from_span(cls, span: np.ndarray, p: int) -> "Hyperplane":
        span = np.asarray(span, dtype=np.int64) % p
        n = span.shape[1] - 1
        if span.shape[0] != n or _row_rank(span, p) != n:
            raise SpanError("hyperplane span must be n independent points")
        forms = _nullspace(span, p)
        return cls(p=p, form=forms[0], span=span)

    @classmethod
    def through(
        cls, points: Iterable[np.ndarray], n: int, p: int, rng: np.random.Generator
    ) -> "Hyperplane":
        """Generic hyperplane through the given (< n) points."""
        rows = [np.asarray(q, dtype=np.int64) % p for q in points]
        while len(rows) < n:
            cand = modp.random_projective_point(n, rng, p)
            if _row_rank(np.vstack(rows + [cand]), p) == len(rows) + 1:
                rows.append(cand)
        return cls.from_span(np.vstack(rows), p)

    def contains(self, coords: np.ndarray) -> bool:
        return int(_mdot(coords, self.form, self.p)) == 0

    def contains_span(self, span: np.ndarray) -> bool:
        return all(self.contains(r) for r in span)

    def frame_coords(self, coords: np.ndarray) -> np.ndarray:
        c = _solve_coeffs(self.span, np.asarray(coords, dtype=np.int64), self.p)
        if c is None:
            raise SchemeValidationError("point does not lie on the hyperplane")
        return normalize_point(c, self.p)


def _explicit_point(coords: np.ndarray, mult: int, n: int) -> PointSpec:
    coords = np.asarray(coords, dtype=np.int64)
    idx = np.nonzero(coords)[0]
    if len(idx) == 1 and coords[idx[0]] == 1:
        return PointSpec(mult, KIND_COORDINATE, index=int(idx[0]))
    return PointSpec(mult, KIND_EXPLICIT, coords=tuple(int(v) for v in coords))


def residual(spec: SchemeSpec, hyp: Hyperplane) -> SchemeSpec:
    """Residual scheme with respect to a hyperplane: multiplicities of
    components supported on it drop by one; everything else is unchanged."""
    if not spec.is_explicit:
        raise SchemeValidationError("residual needs an instantiated scheme")
    n = spec.ambient
    p = hyp.p
    pts = []
    for pt in spec.points:
        c = _point_coords(pt, n)
        m = pt.mult - 1 if hyp.contains(c) else pt.mult
        if m >= 1:
            pts.append(_explicit_point(c % p, m, n))
    subs = []
    notes = list(spec.notes)
    for sid, sub in spec.subspaces:
        span = _span_rows(sub, n, p)
        if sub.include and hyp.contains_span(span):
            if sub.mult - 1 >= 1:
                subs.append((sid, replace(sub, mult=sub.mult - 1)))
            else:
                subs.append((sid, replace(sub, include=False)))
        else:
            if sub.include:
                notes.append(f"{OUTSIDE_SUPPORTED_CALCULUS} [{sid}]")
            subs.append((sid, sub))
    return SchemeSpec(
        ambient=n,
        points=tuple(pts),
        subspaces=tuple(subs),
        degree=spec.degree,
        notes=tuple(notes),
    )


def trace(spec: SchemeSpec, hyp: Hyperplane) -> SchemeSpec:
    """Schematic intersection with the hyperplane, rewritten in its frame
    as a scheme in P^(n-1)."""
    if not spec.is_explicit:
        raise SchemeValidationError("trace needs an instantiated scheme")
    n = spec.ambient
    p = hyp.p
    pts = []
    for pt in spec.points:
        c = _point_coords(pt, n) % p
        if hyp.contains(c):
            pts.append(_explicit_point(hyp.frame_coords(c), pt.mult, n - 1))
    subs = []
    for sid, sub in spec.subspaces:
        span = _span_rows(sub, n, p)
        if hyp.contains_span(span):
            new_span = np.array([hyp.frame_coords(r) for r in span])
        else:
            w = _mdot(span, hyp.form, p)  # combos u with (u @ span) on hyp
            combos = _nullspace(w[None, :], p)
            if combos.shape[0] == 0:
                continue  # meets the hyperplane in nothing of positive size
            inter = _mdot(combos, span, p)
            new_span = np.array([hyp.frame_coords(r) for r in inter])
        if len(new_span) == 1 and sub.include:
            pts.append(_explicit_point(new_span[0], sub.mult, n - 1))
            continue
        subs.append((sid, _subspace_from_rows(new_span, sub.include, sub.mult)))
    return SchemeSpec(
        ambient=n - 1, points=tuple(pts), subspaces=tuple(subs), notes=spec.notes
    )


def _subspace_from_rows(rows: np.ndarray, include: bool, mult: int) -> SubspaceSpec:
    return SubspaceSpec(
        span=tuple(
            PointSpec(1, KIND_EXPLICIT, coords=tuple(int(v) for v in r)) for r in rows
        ),
        include=include,
        mult=mult,
    )


class ProjectionError(ValueError):
    """A component passes through the projection apex."""


def project_from_point(
    spec: SchemeSpec, apex: np.ndarray, hyp: Hyperplane
) -> SchemeSpec:
    """Linear projection from an apex onto a hyperplane, in its frame.

    The apex itself is removed from the scheme; any other component through
    the apex has no well-defined image and raises ProjectionError.
    """
    if not spec.is_explicit:
        raise SchemeValidationError("projection needs an instantiated scheme")
    n = spec.ambient
    p = hyp.p
    apex = np.asarray(apex, dtype=np.int64) % p
    lq = int(_mdot(apex, hyp.form, p))
    if lq == 0:
        raise SchemeValidationError("apex lies on the target hyperplane")

    def image(x: np.ndarray) -> np.ndarray:
        x = x % p
        img = (x * lq - apex * int(_mdot(x, hyp.form, p))) % p
        if not np.any(img):
            raise ProjectionError("component passes through the apex")
        return img

    pts = []
    for pt in spec.points:
        c = _point_coords(pt, n) % p
        if _proportional(c, apex, p):
            continue  # the apex is removed
        pts.append(_explicit_point(hyp.frame_coords(image(c)), pt.mult, n - 1))
    subs = []
    for sid, sub in spec.subspaces:
        span = _span_rows(sub, n, p)
        if _solve_coeffs(span, apex, p) is not None:
            raise ProjectionError(f"component {sid!r} passes through the apex")
        new_span = np.array([hyp.frame_coords(image(r)) for r in span])
        if _row_rank(new_span, p) != len(new_span):  # pragma: no cover
            raise ProjectionError(f"projection degenerates component {sid!r}")
        subs.append((sid, _subspace_from_rows(new_span, sub.include, sub.mult)))
    return SchemeSpec(
        ambient=n - 1, points=tuple(pts), subspaces=tuple(subs), notes=spec.notes
    )


# ---------------------------------------------------------------------------
# file format
# ---------------------------------------------------------------------------


def _point_to_dict(pt: PointSpec) -> dict:
    d: dict = {"kind": pt.kind, "mult": pt.mult}
    if pt.index is not None:
        d["index"] = pt.index
    if pt.subspace is not None:
        d["subspace"] = pt.subspace
    if pt.coords is not None:
        d["coords"] = list(pt.coords)
    return d


def _point_from_dict(d: dict) -> PointSpec:
    return PointSpec(
        mult=d["mult"],
        kind=d["kind"],
        index=d.get("index"),
        subspace=d.get("subspace"),
        coords=tuple(d["coords"]) if "coords" in d else None,
    )


def to_json(spec: SchemeSpec) -> str:
    doc: dict = {
        "ambient": spec.ambient,
        "points": [_point_to_dict(pt) for pt in spec.points],
        "subspaces": [
            {
                "id": sid,
                "span": [_point_to_dict(s) for s in sub.span],
                "include": sub.include,
                "mult": sub.mult,
            }
            for sid, sub in spec.subspaces
        ],
    }
    if spec.degree is not None:
        doc["degree"] = spec.degree
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def from_json(text: str) -> SchemeSpec:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemeValidationError(f"invalid scheme file: {exc}") from exc
    if not isinstance(doc, dict) or "ambient" not in doc:
        raise SchemeValidationError("scheme file must be an object with 'ambient'")
    try:
        points = tuple(_point_from_dict(d) for d in doc.get("points", []))
        subspaces = tuple(
            (
                sub["id"],
                SubspaceSpec(
                    span=tuple(_point_from_dict(s) for s in sub["span"]),
                    include=bool(sub.get("include", False)),
                    mult=int(sub.get("mult", 1)),
                ),
            )
            for sub in doc.get("subspaces", [])
        )
    except (KeyError, TypeError) as exc:
        raise SchemeValidationError(f"invalid scheme file field: {exc}") from exc
    return SchemeSpec(
        ambient=int(doc["ambient"]),
        points=points,
        subspaces=subspaces,
        degree=doc.get("degree"),
    )
