"""End-to-end acceptance criteria, one pass/fail line each."""

import json

import numpy as np

from secantdim import cli, horace, modp, schemes, segre
from secantdim.horace import LemmaInstance

PRIMES = modp.DEFAULT_PRIMES
P = PRIMES[0]


def _verdict(num, name, ok):
    print(f"ACCEPTANCE {num} {name}: {'PASS' if ok else 'FAIL'}")
    assert ok, f"criterion {num} ({name}) failed"


def test_01_defect_table_reproduction():
    ok = True
    for n in range(3, 13):
        s_max = segre.ceil_count(n) + 1
        ranks = segre.table_observed(n, s_max, primes=PRIMES, trials=3, seed=0)
        for s in range(1, s_max + 1):
            want = 13 if (n, s) == (4, 3) else segre.expected_dim(n, s)
            if any(r - 1 != want for r in ranks[s]):
                ok = False
    _verdict(1, "defect table 3<=n<=12, every cell", ok)


def test_02_exception_pinpoint():
    rep = segre.secant_dim_sample(
        segre.SecantProblem(4, 3), primes=PRIMES, trials=100, seed=0
    )
    ok = (
        rep.observed == 13
        and rep.defect == 1
        and len(rep.cell_ranks) == 300
        and all(r == 14 for r in rep.cell_ranks)  # affine cone rank, never 15
    )
    _verdict(2, "(4,3) observed 13 across 100 trials x 3 primes", ok)


def test_03_transfer_consistency():
    ok = True
    for n in range(3, 9):
        for s in range(1, segre.ceil_count(n) + 2):
            for seed in range(3):
                if not schemes.transfer_consistency(n, s, seed=seed).equal:
                    ok = False
    _verdict(3, "multigraded = fat-point dimension, 3<=n<=8", ok)


def test_04_lemma_value_regression():
    ok = True
    try:
        for m in range(3, 9):  # residue (i)
            ok &= horace.residue_lemma_check(LemmaInstance(m, 0, 0)) == 2**m
        for m in range(3, 8):  # residue (ii)
            ok &= horace.residue_lemma_check(LemmaInstance(m, 1, 0)) == 2**m - 2 * m
        ok &= horace.residue_lemma_check(LemmaInstance(4, 1, 1)) == 3
        ok &= horace.residue_lemma_v2_check() == 1
        ok &= horace.residue_lemma_check(LemmaInstance(5, 1, 3)) == 4
        for m in range(5, 8):  # residue even-parameter grid
            cap = (2**m - 4 * m) // (m + 1)
            for x, y in ((0, 2), (2, 0), (2, 2), (2, cap - cap % 2)):
                want = 2**m - 2 * m * x - (m + 1) * y
                ok &= horace.residue_lemma_check(LemmaInstance(m, x, y)) == want
        for m in range(3, 8):  # trace (i)
            ok &= horace.trace_lemma_check(LemmaInstance(m, 1, 0)) == 2**m - 4
        ok &= horace.trace_lemma_check(LemmaInstance(4, 1, 2)) == 2
        ok &= horace.trace_lemma_check(LemmaInstance(5, 2, 4)) == 0
        for m in range(5, 8):  # trace even-parameter grid
            cap = (2**m - 8) // (m + 1)
            for x, y in ((2, 0), (2, 2), (2, cap - cap % 2)):
                want = 2**m - 4 * x - (m + 1) * y
                ok &= horace.trace_lemma_check(LemmaInstance(m, x, y)) == want
        # two simple points on a plane drop the dimension by exactly 2
        base = schemes.SchemeSpec(
            ambient=3,
            points=tuple(
                schemes.PointSpec(2, "coordinate", index=i) for i in range(1, 4)
            ),
            subspaces=(("H", schemes.SubspaceSpec(
                span=tuple(schemes.PointSpec(1, "generic") for _ in range(3)))),),
        )
        rep = horace.substitution_check(base, ["H"], 3)
        ok &= (rep.dim_base, rep.dim_pairs) == (8, 6) and rep.ok
        # fixed-component branches
        for i, m, n in ((2, 3, 2), (1, 2, 3), (3, 4, 3)):
            ok &= horace.fixed_component_check(i, m, n).ok
    except horace.LemmaCheckError:
        ok = False
    _verdict(4, "lemma value regression, exact integers", ok)


def _fuzz_scheme_on_hyperplane(n, seed):
    rng = modp.rng_for(seed, n, 0xF)
    hyp = schemes.Hyperplane.through([], n, P, rng)
    pts = []
    for _ in range(int(rng.integers(1, 5))):
        mult = int(rng.integers(1, 4))
        if rng.integers(0, 2):
            c = rng.integers(1, P, size=hyp.span.shape[0], dtype=np.int64)
            coords = modp.normalize_point((c @ hyp.span) % P, P)
        else:
            coords = modp.random_projective_point(n, rng, P)
        pts.append(schemes.PointSpec(mult, "explicit", coords=tuple(int(v) for v in coords)))
    subs = ()
    if rng.integers(0, 2):
        a = modp.random_projective_point(n, rng, P)
        b = modp.random_projective_point(n, rng, P)
        subs = (("L", schemes.SubspaceSpec(span=(
            schemes.PointSpec(1, "explicit", coords=tuple(int(v) for v in a)),
            schemes.PointSpec(1, "explicit", coords=tuple(int(v) for v in b)),
        ), include=True)),)
    return schemes.SchemeSpec(ambient=n, points=tuple(pts), subspaces=subs), hyp


def test_05_inequality_fuzzing():
    ok = True
    try:
        for n in range(3, 7):
            for seed in range(100):
                spec, hyp = _fuzz_scheme_on_hyperplane(n, seed)
                horace.castelnuovo_bound(spec, hyp, 3)  # raises on violation
            for seed in range(100):
                rng = modp.rng_for(seed, n, 0xA)
                extra = tuple(
                    schemes.PointSpec(int(rng.integers(1, 3)), "generic")
                    for _ in range(int(rng.integers(0, 4)))
                )
                spec = schemes.SchemeSpec(
                    ambient=n,
                    points=tuple(
                        schemes.PointSpec(n - 1, "coordinate", index=i)
                        for i in range(1, n + 1)
                    ) + extra,
                )
                horace.lemzero_bound(spec, seed=seed)  # raises on violation
    except horace.LemmaCheckError:
        ok = False
    _verdict(5, "castelnuovo + split bounds on 100 fuzzed schemes per n", ok)


def test_06_certification_vs_oracle():
    cases = []
    for n in range(5, 11):
        prof = horace.ParameterProfile.from_n(n)
        for s in (prof.e, prof.estar):
            if s % 2 == 1:
                cases.append((n, s))
    ok = bool(cases)
    for n, s in cases:
        cert = horace.main_theorem_certify(n, s)
        direct = schemes.ideal_dim(
            schemes.segre_to_fatpoints(n, s), n, primes=PRIMES[:2], trials=1, seed=1
        )
        ok &= cert.status == horace.STATUS_VERIFIED and cert.claimed == direct
        if (n, s) == (5, 5):
            ok &= cert.claimed == 2
    _verdict(6, "certified root claims match the direct oracle, 5<=n<=10", ok)


def test_07_appendix_sweep():
    rep = horace.appendix_check(5, 64)
    _verdict(7, "appendix arithmetic 5<=n<=64", rep.ok)


def test_08_determinism(tmp_path):
    ok = True
    commands = (
        ["secdim", "--n", "4", "--s", "3", "--trials", "2", "--format", "json", "--seed", "5"],
        ["table", "--n-min", "3", "--n-max", "4", "--trials", "1", "--format", "csv", "--seed", "5"],
        ["certify", "--n", "5", "--s", "5", "--seed", "5"],
    )
    for i, argv in enumerate(commands):
        a = tmp_path / f"a{i}"
        b = tmp_path / f"b{i}"
        ok &= cli.main(argv + ["--output", str(a)]) == 0
        ok &= cli.main(argv + ["--output", str(b)]) == 0
        ok &= a.read_bytes() == b.read_bytes()
    _verdict(8, "byte-identical outputs for identical seeds", ok)
