import numpy as np
import pytest

from localzeta import _kernels, cosets
from localzeta.errors import Infeasible, Unsupported


LANES = ["numpy"] + (["numba"] if _kernels.HAS_NUMBA else [])


def test_order_formulas_derived():
    # prod_{i=0}^{3} (p^4 - p^i)
    for p in (2, 3):
        expected = 1
        for i in range(4):
            expected *= p**4 - p**i
        assert cosets.gl4_order(p) == expected
    assert cosets.gl4_order(2) == 20160
    assert cosets.gl4_order(3) == 24261120
    assert cosets.sp4_order(2) == 720
    assert cosets.gsp4_order(2) == 720  # mu is forced to 1 over F_2
    assert cosets.gsp4_order(3) == 2 * cosets.sp4_order(3) == 103680


@pytest.mark.parametrize("lane", LANES)
def test_enumeration_p2(lane):
    enum = cosets.enumerate_gl4(2, lane=lane)
    assert len(enum) == 20160
    eye = np.eye(4, dtype=np.int64)
    idx = enum.id_of(eye)
    assert np.array_equal(enum.mat_of(idx), eye)
    # identity is idempotent under the product action
    perm = _kernels.generator_permutation(enum.mats, enum.keys, eye, 2,
                                          left=True, lane=lane)
    assert np.array_equal(perm, np.arange(len(enum)))


def test_unsupported_p():
    with pytest.raises(Unsupported):
        cosets.enumerate_gl4(5)
    with pytest.raises(Unsupported):
        cosets.double_coset_partition(7)


def test_full_method_p3_infeasible():
    with pytest.raises(Infeasible):
        cosets.double_coset_partition(3, method="full")


@pytest.fixture(scope="module")
def enum2():
    return cosets.enumerate_gl4(2, lane="numpy")


def test_filter_gsp4(enum2):
    ids = cosets.filter_gsp4(enum2)
    assert len(ids) == 720
    j = np.asarray(cosets.J_MAT) % 2
    assert cosets.similitude_factor(j, 2) == 1
    # entrywise similitude relation for every member
    jm = j.astype(np.int64)
    for idx in ids:
        g = enum2.mat_of(int(idx)).astype(np.int64)
        mu = cosets.similitude_factor(g, 2)
        assert mu is not None
        assert np.array_equal((g.T @ jm @ g) % 2, (mu * jm) % 2)


def test_filter_p4(enum2):
    ids = cosets.filter_p4(enum2)
    assert len(ids) == cosets.p4_order(2) == 192
    # diagonal invertible matrices belong to P4
    assert cosets.is_in_p4(np.eye(4, dtype=np.int64), 2)
    # t2 is in P4, t1 is not
    assert cosets.is_in_p4(np.asarray(cosets.T2), 2)
    assert not cosets.is_in_p4(np.asarray(cosets.T1), 2)


def test_generator_sets_generate(enum2):
    assert cosets.generated_subgroup_order(cosets.p4_generators(2), 2) == 192
    assert cosets.generated_subgroup_order(cosets.gsp4_generators(2), 2) == 720


def test_generator_sets_generate_p3():
    assert cosets.generated_subgroup_order(cosets.p4_generators(3), 3) \
        == cosets.p4_order(3) == 46656
    assert cosets.generated_subgroup_order(cosets.gsp4_generators(3), 3) == 103680


@pytest.mark.parametrize("lane", LANES)
def test_partition_p2_full(lane):
    report = cosets.double_coset_partition(2, method="full", lane=lane)
    assert report.class_count == 2
    assert sum(report.sizes) == 20160
    assert report.t1_distinct
    assert report.identity_class != report.t1_class


def test_lanes_agree():
    if not _kernels.HAS_NUMBA:
        pytest.skip("numba unavailable")
    a = cosets.double_coset_partition(2, method="full", lane="numpy")
    b = cosets.double_coset_partition(2, method="full", lane="numba")
    assert a.sizes == b.sizes
    assert a.reps == b.reps
    assert (a.identity_class, a.t1_class) == (b.identity_class, b.t1_class)


def test_partition_against_direct_product_oracle(enum2):
    """Compute P4 g GSp4 for g in {1, t1} literally and compare."""
    report = cosets.double_coset_partition(2, method="full", lane="numpy")
    A = enum2.mats[cosets.filter_p4(enum2)].astype(np.int64)
    B = enum2.mats[cosets.filter_gsp4(enum2)].astype(np.int64)

    def coset_keys(g):
        ag = np.einsum("aij,jk->aik", A, g) % 2
        prods = np.einsum("aij,bjk->abik", ag, B) % 2
        return set(_kernels.pack_keys(prods.reshape(-1, 4, 4), 2).tolist())

    s_eye = coset_keys(np.eye(4, dtype=np.int64))
    s_t1 = coset_keys(np.asarray(cosets.T1, dtype=np.int64))
    assert len(s_eye) + len(s_t1) == 20160
    assert not (s_eye & s_t1)
    assert sorted((len(s_eye), len(s_t1))) == sorted(report.sizes)
    assert len(s_eye) == report.sizes[report.identity_class]
    assert len(s_t1) == report.sizes[report.t1_class]
    # the identity class contains all of P4 and all of GSp4
    p4_keys = set(enum2.keys[cosets.filter_p4(enum2)].tolist())
    gsp4_keys = set(enum2.keys[cosets.filter_gsp4(enum2)].tolist())
    assert p4_keys <= s_eye
    assert gsp4_keys <= s_eye


@pytest.mark.parametrize("p", [2, 3])
def test_partition_quotient(p):
    report = cosets.double_coset_partition(p, method="quotient")
    assert report.class_count == 2
    assert report.t1_distinct
    assert sum(report.flag_orbit_sizes) == {2: 105, 3: 520}[p]
    assert sum(report.sizes) == cosets.gl4_order(p)


def test_quotient_matches_full_at_p2():
    full = cosets.double_coset_partition(2, method="full", lane="numpy")
    quot = cosets.double_coset_partition(2, method="quotient")
    assert sorted(full.sizes) == sorted(quot.sizes)
    assert (full.sizes[full.identity_class]
            == quot.sizes[quot.identity_class])


def test_flag_invariant_is_coset_invariant():
    # multiplying by random P4 elements on the left fixes the flag
    rng = np.random.default_rng(7)
    enum = cosets.enumerate_gl4(2, lane="numpy")
    p4_ids = cosets.filter_p4(enum)
    g = enum.mat_of(12345).astype(np.int64)
    base = cosets.flag_of_coset(g, 2)
    for idx in rng.choice(p4_ids, size=20):
        a = enum.mat_of(int(idx)).astype(np.int64)
        assert cosets.flag_of_coset((a @ g) % 2, 2) == base


def test_report_json():
    report = cosets.double_coset_partition(2, method="quotient")
    obj = report.to_json()
    assert obj["classes"] == 2
    assert obj["t1_distinct"] is True
    assert obj["p"] == 2
    assert len(obj["reps"]) == 2
