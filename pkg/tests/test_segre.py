import numpy as np
import pytest

from secantdim import modp, segre

P = modp.DEFAULT_PRIME


def test_expected_dim_values():
    assert segre.expected_dim(3, 1) == 3
    assert segre.expected_dim(3, 2) == 7
    assert segre.expected_dim(4, 3) == 14
    assert segre.expected_dim(4, 4) == 15  # fills the ambient space
    assert segre.expected_dim(5, 7) == 31


def test_expected_dim_overflow_guard():
    with pytest.raises(OverflowError):
        segre.expected_dim(63, 1)


def test_segre_coordinates_small_example():
    # two factors: coordinates ordered with bit i <-> factor i+1
    pt = ((2, 3), (5, 7))
    v = segre.segre_coordinates(pt, P)
    assert v.tolist() == [2 * 5, 3 * 5, 2 * 7, 3 * 7]


def test_segre_coordinates_are_kronecker_product():
    rng = modp.rng_for(11)
    for n in (2, 3, 5):
        pt = segre.sample_factor_point(n, rng, P)
        v = segre.segre_coordinates(pt, P)
        k = np.array([1], dtype=np.int64)
        for a, b in reversed(pt):
            k = np.kron(k, np.array([a, b], dtype=np.int64)) % P
        assert np.array_equal(v, k)


def test_tangent_rows_have_full_rank():
    rng = modp.rng_for(5)
    for n in (2, 4, 6):
        pt = segre.sample_factor_point(n, rng, P)
        rows = segre.tangent_rows(pt, P)
        assert rows.shape == (n + 1, 1 << n)
        assert modp.rank_array(rows, P) == n + 1


def test_secant_dim_3_2():
    rep = segre.secant_dim_sample(segre.SecantProblem(3, 2), trials=2, seed=1)
    assert rep.observed == 7
    assert rep.defect == 0


def test_secant_dim_4_3_defective():
    rep = segre.secant_dim_sample(segre.SecantProblem(4, 3), trials=5, seed=1)
    assert rep.observed == 13
    assert rep.defect == 1
    assert rep.cells_agreeing == len(rep.cell_ranks)


def test_secant_dim_fills():
    rep = segre.secant_dim_sample(segre.SecantProblem(3, 3), trials=2, seed=0)
    assert rep.observed == 7 == rep.expected


def test_observed_never_exceeds_expected():
    for n in (3, 4, 5):
        for s in range(1, segre.ceil_count(n) + 2):
            rep = segre.secant_dim_sample(
                segre.SecantProblem(n, s), primes=[P], trials=1, seed=2
            )
            assert rep.observed <= rep.expected


def test_duality_with_multigraded_ideal():
    # dim sigma_s + dim (I_Z)_(1,..,1) = 2^n - 1 on matching samples
    for n, s in ((3, 2), (4, 3), (5, 4)):
        rep = segre.secant_dim_sample(segre.SecantProblem(n, s), trials=2, seed=3)
        ideal = segre.multigraded_ideal_dim(segre.SecantProblem(n, s), trials=2, seed=3)
        assert rep.observed + ideal == (1 << n) - 1


def test_table_observed_prefix_semicontinuity():
    ranks = segre.table_observed(4, 5, primes=[P], trials=1, seed=0)
    vals = [max(ranks[s]) for s in range(1, 6)]
    assert vals == sorted(vals)  # adding points never drops the rank
    assert vals[0] == 5  # s=1: the Segre variety itself, dim n


def test_table_observed_matches_single_runs():
    ranks = segre.table_observed(3, 3, trials=2, seed=9)
    for s in (1, 2, 3):
        rep = segre.secant_dim_sample(segre.SecantProblem(3, s), trials=2, seed=9)
        assert max(ranks[s]) - 1 == rep.observed


def test_floor_and_ceil_counts():
    assert segre.floor_count(4) == 3
    assert segre.ceil_count(4) == 4
    assert segre.floor_count(5) == 5
    assert segre.ceil_count(7) == 16  # 2^7/8 is an integer: e* = e


def test_report_dict_is_json_friendly():
    rep = segre.secant_dim_sample(segre.SecantProblem(3, 1), trials=1, seed=0)
    d = rep.to_dict()
    assert d["n"] == 3 and d["s"] == 1 and d["observed"] == 3
    assert d["cells"] == len(modp.DEFAULT_PRIMES)
    assert d["degree_bound"] == min(1 * 4, 8) * 3
