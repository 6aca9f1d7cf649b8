from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from oracles import invariant_dim_average, orbit_count, partition_count
from stabilab.characters import character_table, weyl_trace
from stabilab.errors import ConsistencyError
from stabilab.multiplicities import (_integral, dimension_of_VL, g_coeff, g_via_plethysm,
                                     graded_trace, invariant_dim, isotypic_series, isotypic_total,
                                     m_mu_L, verify_corollary2, verify_g_oracle, verify_multigraded,
                                     verify_stability_suite, weyl_invariant_dim)
from stabilab.partitions import enumerate_partitions, exponent_vectors_upto


def test_invariant_dim_examples():
    for n in (2, 3, 6):
        assert invariant_dim(n, 2, 2) == 6
        assert invariant_dim(n, 3, 1) == 3
    for n in (3, 4, 7):
        assert invariant_dim(n, 2, 3) == 14


@pytest.mark.parametrize("n,k,d", [(2, 2, 3), (3, 2, 3), (3, 3, 2), (4, 1, 5), (4, 2, 2)])
def test_invariant_dim_against_brute_force(n, k, d):
    for method in ("enumeration", "molien", "both"):
        assert invariant_dim(n, k, d, method) == orbit_count(n, k, d)
    assert invariant_dim_average(n, k, d) == orbit_count(n, k, d)


def test_unknown_method():
    with pytest.raises(ValueError):
        invariant_dim(3, 1, 1, "guess")


@pytest.mark.parametrize("k", [1, 2, 3])
def test_duality_consistency(k):
    for n in range(1, 7):
        for r in range(n + 1):
            total = sum(weyl_trace(lam, (1,) * k, k) * weyl_invariant_dim(lam, n)
                        for lam in enumerate_partitions(r, max_length=k))
            assert invariant_dim(n, k, r) == total


def test_weyl_invariant_examples():
    for n in range(1, 8):
        assert weyl_invariant_dim((1,), n) == 1
    for n in range(2, 8):
        assert weyl_invariant_dim((1, 1), n) == 0
    for n in range(3, 8):
        assert weyl_invariant_dim((2, 1), n) == 1


def test_weyl_invariant_inequality_in_its_range():
    for size in range(1, 6):
        for lam in enumerate_partitions(size):
            for m in range(size, 8):
                for n in range(m, 8):
                    assert weyl_invariant_dim(lam, m) >= weyl_invariant_dim(lam, n)


def test_g_examples():
    for n in range(2, 8):
        assert g_coeff((1,), (n - 1, 1)) == 1
    assert g_coeff((2,), (2,)) == 2
    assert g_coeff((2, 1), (3,)) == 1 == weyl_invariant_dim((2, 1), 3)


def test_g_via_plethysm_examples():
    for n in range(1, 6):
        assert {lam: c for lam, c in g_via_plethysm((n,), 1, 1).items() if sum(lam) == 1} == {(1,): 1}
    three = {lam: c for lam, c in g_via_plethysm((3,), 2, 3).items() if sum(lam) == 3}
    assert three == {(3,): 3, (2, 1): 1}
    assert 4 * 3 + 2 * 1 == invariant_dim(3, 2, 3)
    from stabilab.symfunc import plethysm_series
    coeffs = plethysm_series((2,), 1, 6).specialize()
    extracted = g_via_plethysm((2,), 1, 6)
    for d in range(7):
        assert extracted.get((d,) if d else (), 0) == coeffs[d]


def test_m_mu_L_examples():
    for n in range(2, 7):
        assert m_mu_L((n - 1, 1), (1,)) == 1
        assert m_mu_L((n,), (1, 1)) == 2
    for n in range(1, 8):
        for d in range(n + 1):
            assert m_mu_L((n,), (d,), n) == partition_count(d)
    with pytest.raises(ValueError):
        m_mu_L((2, 1), (1,), 4)


@pytest.mark.parametrize("n", range(1, 6))
def test_isotypic_dimensions_add_up(n):
    table = character_table(n)
    ident = table.classes.index((1,) * n)
    for L in exponent_vectors_upto(2, 4):
        total = sum(m_mu_L(mu, L) * table.row(mu)[ident] for mu in table.partitions)
        assert total == dimension_of_VL(L, n)


@pytest.mark.parametrize("n", range(1, 8))
def test_class_sums_are_integral(n):
    # every class sum goes through the integrality guard; none may raise
    for mu in enumerate_partitions(n):
        for L in exponent_vectors_upto(2, 3):
            assert m_mu_L(mu, L) >= 0
        for size in range(0, 5):
            for lam in enumerate_partitions(size):
                assert g_coeff(lam, mu) >= 0
        assert all(x >= 0 for x in isotypic_total(mu, 2, 3))
    for size in range(1, 6):
        for lam in enumerate_partitions(size):
            assert weyl_invariant_dim(lam, n) >= 0
    for k in (1, 2, 3):
        for d in range(6):
            assert invariant_dim(n, k, d, "molien") >= 0


def test_integrality_guard():
    with pytest.raises(ConsistencyError):
        _integral(Fraction(1, 2), "x")
    with pytest.raises(ConsistencyError):
        _integral(Fraction(-1), "x")


def test_graded_trace_identity_is_dimension():
    from math import comb
    assert graded_trace((1, 1, 1), 2, 3) == tuple(comb(d + 5, 5) for d in range(4))


def test_isotypic_series_total_degree():
    s = isotypic_series((2, 1), 2, 3)
    assert s.coefficient((1, 0)) == 1


@given(st.integers(1, 6).flatmap(lambda n: st.sampled_from(enumerate_partitions(n))),
       st.integers(1, 3))
@settings(max_examples=25, deadline=None)
def test_g_oracle_random(mu, k):
    extracted = g_via_plethysm(mu, k, 4)
    for size in range(5):
        for lam in enumerate_partitions(size, max_length=k):
            assert extracted.get(lam, 0) == g_coeff(lam, mu)


def test_suite_passes_for_k2():
    reports = verify_stability_suite(2, 5, 3)
    assert [r.statement for r in reports] == ["corollary2", "invariant-methods", "weyl", "gstab",
                                              "multigraded"]
    assert all(r.passed for r in reports)
    assert all(r.instances for r in reports)


def test_suite_passes_for_k1():
    assert all(r.passed for r in verify_stability_suite(1, 8, 2))


def test_injected_perturbation_is_located():
    target = {"k": 2, "r": 2, "m": 3, "n": 4, "method": "molien"}

    def bump(statement, params, lhs):
        return lhs + 1 if statement == "corollary2" and params == target else lhs

    reports = verify_stability_suite(2, 5, 1, perturb=bump)
    failures = [(r.statement, i.params) for r in reports for i in r.failures()]
    assert failures == [("corollary2", target)]


def test_multigraded_records_each_multidegree():
    rep = verify_multigraded(2, 3, 1)
    assert rep.passed
    assert {"mu", "r", "L"} <= set(rep.instances[0].params)


def test_g_oracle_report_small():
    rep = verify_g_oracle(4, 2, 4)
    assert rep.passed and len(rep.instances) > 50


def test_corollary2_single_method():
    reports = verify_corollary2(1, 4, methods=("molien",))
    assert len(reports) == 1 and reports[0].passed
