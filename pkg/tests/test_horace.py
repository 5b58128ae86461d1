import json

import numpy as np
import pytest

from secantdim import horace, modp, schemes
from secantdim.horace import GuardError, LemmaInstance, ParameterProfile
from secantdim.schemes import PointSpec, SchemeSpec, SubspaceSpec, KIND_COORDINATE, KIND_GENERIC

P = modp.DEFAULT_PRIME
FAST = dict(primes=(P,), trials=1)


def test_parameter_profile_identities():
    for n in range(5, 17):
        prof = ParameterProfile.from_n(n)
        assert n == 4 * prof.q + prof.r and 0 <= prof.r < 4
        assert prof.e == (1 << n) // (n + 1)
        assert prof.estar == -((1 << n) // -(n + 1))
        if prof.k:
            assert (1 << n) == (n + 1) * prof.h + prof.k and 1 <= prof.k <= n
        if prof.t is not None:
            assert prof.e == 2 * prof.t + 1
        if prof.tstar is not None:
            assert prof.estar == 2 * prof.tstar + 1


def test_lemma_instance_guards():
    with pytest.raises(GuardError):
        LemmaInstance(2, 0, 0)
    with pytest.raises(GuardError):
        LemmaInstance(4, -1, 0)
    with pytest.raises(GuardError):
        horace.residue_lemma_check(LemmaInstance(4, 2, 0), **FAST)  # x > 1


def test_residue_values_spot():
    assert horace.residue_lemma_check(LemmaInstance(4, 0, 0), **FAST) == 16
    assert horace.residue_lemma_check(LemmaInstance(4, 1, 0), **FAST) == 8
    assert horace.residue_lemma_check(LemmaInstance(4, 1, 1), **FAST) == 3
    assert horace.residue_lemma_check(LemmaInstance(5, 1, 3), **FAST) == 4


def test_residue_v2_is_one_across_seeds():
    for seed in range(5):
        assert horace.residue_lemma_v2_check(seed=seed, **FAST) == 1


def test_trace_values_spot():
    assert horace.trace_lemma_check(LemmaInstance(4, 1, 0), **FAST) == 12
    assert horace.trace_lemma_check(LemmaInstance(4, 1, 2), **FAST) == 2
    assert horace.trace_lemma_check(LemmaInstance(5, 2, 4), **FAST) == 0


def test_substitution_small():
    base = SchemeSpec(
        ambient=3,
        points=tuple(PointSpec(2, KIND_COORDINATE, index=i) for i in range(1, 4)),
        subspaces=(("H", SubspaceSpec(
            span=tuple(PointSpec(1, KIND_GENERIC) for _ in range(3)))),),
    )
    rep = horace.substitution_check(base, ["H"], 3)
    assert (rep.dim_base, rep.dim_doubles, rep.dim_pairs) == (8, 4, 6)
    assert rep.hypothesis_holds and rep.conclusion_holds and rep.ok


def test_substitution_x_zero_is_trivial():
    base = SchemeSpec(
        ambient=3,
        points=tuple(PointSpec(2, KIND_COORDINATE, index=i) for i in range(1, 4)),
    )
    rep = horace.substitution_check(base, [], 3)
    assert rep.dim_base == rep.dim_doubles == rep.dim_pairs
    assert rep.ok


def test_substitution_m4():
    base = SchemeSpec(
        ambient=4,
        points=tuple(PointSpec(3, KIND_COORDINATE, index=i) for i in range(1, 5)),
        subspaces=(("H", SubspaceSpec(
            span=tuple(PointSpec(1, KIND_GENERIC) for _ in range(3)))),),
    )
    rep = horace.substitution_check(base, ["H"], 4)
    assert rep.dim_base == 16
    assert rep.hypothesis_holds
    assert rep.dim_pairs == 14 and rep.conclusion_holds


def test_fixed_component_branches():
    assert horace.fixed_component_check(2, 3, 2).ok       # empty system branch
    assert horace.fixed_component_check(1, 2, 3).ok       # fixed line branch
    assert horace.fixed_component_check(3, 4, 3).ok       # empty system branch
    rep = horace.fixed_component_check(1, 2, 3)
    assert rep.dim_plain == rep.dim_with_component == 12
    with pytest.raises(GuardError):
        horace.fixed_component_check(3, 2, 3)  # needs m > i


def test_castelnuovo_trivial_empty_trace():
    rng = modp.rng_for(0, 7)
    hyp = schemes.Hyperplane.through([], 3, P, rng)
    spec = SchemeSpec(ambient=3, points=(
        PointSpec(2, KIND_GENERIC), PointSpec(2, KIND_GENERIC)))
    res_dim, tr_dim, bound = horace.castelnuovo_bound(spec, hyp, 3)
    assert tr_dim == 10  # no component on the hyperplane: full C(5,2)
    assert bound == res_dim + tr_dim


def test_lemzero_pure_coordinate_scheme():
    for n in (4, 5):
        spec = SchemeSpec(
            ambient=n,
            points=tuple(PointSpec(n - 1, KIND_COORDINATE, index=i)
                         for i in range(1, n + 1)),
        )
        w, t, bound = horace.lemzero_bound(spec)
        assert (w, t, bound) == (1 << (n - 1), 1 << (n - 1), 1 << n)


def test_lemzero_missing_anchor_rejected():
    spec = SchemeSpec(ambient=4, points=(PointSpec(2, KIND_GENERIC),))
    with pytest.raises(schemes.SchemeValidationError):
        horace.lemzero_bound(spec)


def test_lemzero_on_defective_case():
    w, t, bound = horace.lemzero_bound(schemes.segre_to_fatpoints(4, 3))
    direct = schemes.ideal_dim(schemes.segre_to_fatpoints(4, 3), 4, trials=2)
    assert direct <= bound
    assert direct == 2


def test_certify_5_5():
    cert = horace.main_theorem_certify(5, 5)
    assert cert.claimed == 2
    assert cert.status == horace.STATUS_VERIFIED
    rules = [c.rule for c in cert.children]
    assert rules == ["residue-lemma", "trace-lemma", "appendix-arithmetic"]
    assert all(c.status == horace.STATUS_VERIFIED for c in cert.children)


def test_certify_guards():
    with pytest.raises(GuardError):
        horace.main_theorem_certify(4, 3)  # the defective exception
    with pytest.raises(GuardError):
        horace.main_theorem_certify(6, 4)  # not a boundary count
    with pytest.raises(GuardError):
        horace.main_theorem_certify(5, 6)  # boundary but even
    with pytest.raises(GuardError):
        horace.main_theorem_certify(3, 2)


def test_certify_bound_only_with_tiny_cap():
    cert = horace.main_theorem_certify(9, 51, direct_cap=1)
    assert cert.status == horace.STATUS_BOUND_ONLY
    assert {c.status for c in cert.children} == {
        horace.STATUS_BOUND_ONLY, horace.STATUS_VERIFIED
    }


def test_certificate_serialization_stable():
    cert = horace.main_theorem_certify(5, 5)
    text = horace.certificate_to_json(cert)
    doc = json.loads(text)
    assert list(doc) == ["rule", "scheme", "degree", "claimed", "status", "detail", "children"]
    assert horace.certificate_to_json(horace.main_theorem_certify(5, 5)) == text


def test_appendix_sweep():
    rep = horace.appendix_check(5, 64)
    assert rep.ok
    assert rep.checked == 56
    with pytest.raises(GuardError):
        horace.appendix_check(4, 10)
    with pytest.raises(GuardError):
        horace.appendix_check(5, 5000)


def test_appendix_quoted_rows_recompute():
    # n=9 boundary-count branch: x=2, y'=22 within 24
    prof = ParameterProfile.from_n(9)
    assert (prof.q, prof.t) == (2, 25)
    y = prof.t + 1 - 2 * prof.q
    assert y == 22
    assert ((1 << 8) - 2 * 8 * 2) // 9 == 24
    # n=8 upper-count branch: residue y=11 lifts to 12 within 12
    prof8 = ParameterProfile.from_n(8)
    assert (prof8.q, prof8.tstar) == (2, 14)
    y8 = prof8.tstar + 1 - 2 * prof8.q
    assert y8 == 11
    assert ((1 << 7) - 2 * 7 * 2) // 8 == 12
