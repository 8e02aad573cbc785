"""Tests for the stringy E-function routes and the zeta series."""
from fractions import Fraction
from math import comb

import pytest

from stringydet.exactalg import LaurentPoly, NotPolynomial, q_pow
from stringydet.groth import PartitionTail, class_gl, gauss_binomial
from stringydet.stringy import (
    HodgeTable,
    InvalidInput,
    NegativeExponent,
    ResolutionData,
    StringyInput,
    grassmannian_recursive,
    grassmannian_subset_sum,
    hodge_table,
    log_discrepancies,
    orbit_measure,
    orbit_tail_degree_bound,
    rank_one_resolution_check,
    rank_one_resolution_data,
    relative_canonical_coeffs,
    stringy_e_affine,
    stringy_e_affine_from_orbits,
    stringy_e_from_resolution,
    stringy_e_projective,
    stringy_e_projective_from_orbits,
    stringy_euler,
    truncated_orbit_sum,
    zeta_closed_expansion,
    zeta_coefficient_direct,
)

ONE = LaurentPoly.one()
Q = q_pow(1)


class TestDiscrepancies:
    def test_3_2(self):
        assert log_discrepancies(3, 2) == [(0, 6), (1, 2)]

    def test_k_equal_one(self):
        for r in range(2, 9):
            assert log_discrepancies(r, 1) == [(0, r)]

    def test_5_3(self):
        assert log_discrepancies(5, 3) == [(0, 15), (1, 8), (2, 3)]

    def test_all_canonical(self):
        for r in range(2, 9):
            for k in range(1, r):
                assert all(a >= 2 for _, a in log_discrepancies(r, k))

    def test_relative_canonical(self):
        assert relative_canonical_coeffs(3, 2) == [5, 1]
        assert relative_canonical_coeffs(4, 3) == [11, 5, 1]
        for r in range(2, 7):
            assert relative_canonical_coeffs(r, 1) == [r - 1]

    def test_invalid(self):
        with pytest.raises(InvalidInput):
            log_discrepancies(3, 3)


class TestAffine:
    def test_2_1_orbit_sum(self):
        assert stringy_e_affine_from_orbits(2, 1) == q_pow(2) + q_pow(3)

    def test_point_case(self):
        assert stringy_e_affine_from_orbits(3, 0) == ONE
        assert stringy_e_affine(3, 0) == ONE

    def test_3_2_routes_agree(self):
        assert stringy_e_affine_from_orbits(3, 2) == stringy_e_affine(3, 2) \
            == LaurentPoly({6: 1, 7: 1, 8: 1})

    def test_closed_forms(self):
        assert stringy_e_affine(2, 1) == q_pow(2) * (ONE + Q)
        assert stringy_e_affine(4, 2) == q_pow(8) * gauss_binomial(2, 4, "partition_sum")

    def test_dimension_and_leading_term(self):
        for r in range(2, 7):
            for k in range(1, r):
                p = stringy_e_affine(r, k)
                assert p.degree() == k * (2 * r - k)
                assert p.leading_coeff() == 1


class TestGrassmannianRoutes:
    def test_rank_one_closed_form(self):
        for r in range(2, 9):
            assert grassmannian_subset_sum(r, 1) == gauss_binomial(1, r)
            assert grassmannian_recursive(r, 1) == gauss_binomial(1, r)

    def test_corank_one(self):
        for k in range(1, 7):
            assert grassmannian_subset_sum(k + 1, k) == gauss_binomial(k, k + 1)

    def test_2_4(self):
        expected = LaurentPoly({0: 1, 1: 1, 2: 2, 3: 1, 4: 1})
        assert grassmannian_subset_sum(4, 2) == expected
        assert grassmannian_recursive(4, 2) == expected


class TestProjective:
    def test_product_of_lines(self):
        assert stringy_e_projective(2, 1) == LaurentPoly({0: 1, 1: 2, 2: 1})
        assert stringy_e_projective_from_orbits(2, 1) == LaurentPoly({0: 1, 1: 2, 2: 1})

    def test_3_1(self):
        plane = LaurentPoly({0: 1, 1: 1, 2: 1})
        assert stringy_e_projective(3, 1) == plane * plane

    def test_3_2_routes_agree(self):
        assert stringy_e_projective_from_orbits(3, 2) == stringy_e_projective(3, 2)

    def test_affine_projective_relation(self):
        for r in range(2, 7):
            for k in range(1, r):
                lhs = stringy_e_projective(r, k) * q_pow(k * r) * (Q - 1)
                rhs = (q_pow(k * r) - 1) * stringy_e_affine(r, k)
                assert lhs == rhs

    def test_dimension_and_leading_term(self):
        for r in range(2, 7):
            for k in range(1, r):
                p = stringy_e_projective(r, k)
                assert p.degree() == k * (2 * r - k) - 1
                assert p.leading_coeff() == 1


class TestHodgeAndEuler:
    def test_product_of_lines_table(self):
        table = hodge_table(stringy_e_projective(2, 1))
        assert table.diag == {0: 1, 1: 2, 2: 1}
        assert table.non_negative
        assert table.off_diagonal_zero

    def test_constant(self):
        assert hodge_table(ONE).diag == {0: 1}

    def test_nonnegativity_grid(self):
        for r in range(2, 11):
            for k in range(1, r):
                assert hodge_table(stringy_e_projective(r, k)).non_negative

    def test_negative_exponent_rejected(self):
        with pytest.raises(NegativeExponent):
            hodge_table(q_pow(-1))

    def test_euler_numbers(self):
        for r in range(2, 11):
            for k in range(1, r):
                assert stringy_euler(stringy_e_affine(r, k)) == comb(r, k)
                assert stringy_euler(stringy_e_projective(r, k)) == k * r * comb(r, k)
        assert stringy_euler(ONE) == 1


class TestResolutionRoute:
    def test_smooth_case_identity(self):
        p = q_pow(2) + 3 * Q
        data = ResolutionData(strata=((p, frozenset()),), discrepancies=(2,))
        assert stringy_e_from_resolution(data) == p

    def test_rank_one_r2_data(self):
        data = ResolutionData(
            strata=((LaurentPoly({3: 1, 2: 1, 1: -1, 0: -1}), frozenset()),
                    (LaurentPoly({2: 1, 1: 2, 0: 1}), frozenset({0}))),
            discrepancies=(2,))
        assert stringy_e_from_resolution(data) == q_pow(2) + q_pow(3)

    def test_rank_one_general(self):
        for r in range(2, 9):
            data = rank_one_resolution_data(r)
            assert stringy_e_from_resolution(data) \
                == q_pow(r) * gauss_binomial(1, r)
            assert rank_one_resolution_check(r)

    def test_nonpolynomial_surfaces(self):
        data = ResolutionData(strata=((ONE, frozenset({0})),), discrepancies=(3,))
        with pytest.raises(NotPolynomial):
            stringy_e_from_resolution(data)

    def test_positive_discrepancy_required(self):
        with pytest.raises(InvalidInput):
            ResolutionData(strata=((ONE, frozenset()),), discrepancies=(0,))


class TestOrbitSums:
    def test_measure_zero_tail_r2(self):
        m = orbit_measure(2, 1, PartitionTail((0,), 2, 1))
        assert m == (ONE + Q) ** 2 * (Q - 1)

    def test_measure_general_tail_r2(self):
        for lam in (1, 2, 5):
            m = orbit_measure(2, 1, PartitionTail((lam,), 2, 1))
            assert m == (ONE + Q) ** 2 * (Q - 1) * q_pow(-3 * lam)

    def test_measure_all_zero_tail(self):
        for r, k in ((3, 2), (4, 2), (5, 3)):
            m = orbit_measure(r, k, PartitionTail((0,) * k, r, k))
            assert m == gauss_binomial(k, r) ** 2 * class_gl(k)

    def test_cap_zero_truncation(self):
        for r, k in ((3, 2), (4, 2)):
            assert truncated_orbit_sum(r, k, 0, "affine") \
                == gauss_binomial(k, r) ** 2 * class_gl(k)

    def test_r2_partial_sums_are_geometric(self):
        for cap in range(4):
            expected = LaurentPoly.zero()
            base = (ONE + Q) ** 2 * (Q - 1)
            for m in range(cap + 1):
                expected = expected + base * q_pow(-2 * m)
            assert truncated_orbit_sum(2, 1, cap, "affine") == expected

    def test_stabilization_to_closed_form(self):
        for r, k in ((2, 1), (3, 1), (3, 2), (4, 2)):
            closed = stringy_e_affine(r, k)
            cap = 8
            bound = orbit_tail_degree_bound(r, k, cap)
            partial = truncated_orbit_sum(r, k, cap, "affine")
            assert {e: c for e, c in partial.terms.items() if e > bound} \
                == {e: c for e, c in closed.terms.items() if e > bound}

    def test_projective_stabilization(self):
        for r, k in ((2, 1), (3, 2)):
            target = stringy_e_projective(r, k) * (Q - 1)
            cap = 8
            bound = orbit_tail_degree_bound(r, k, cap)
            partial = truncated_orbit_sum(r, k, cap, "projective")
            assert {e: c for e, c in partial.terms.items() if e > bound} \
                == {e: c for e, c in target.terms.items() if e > bound}

    def test_bound_decreases_in_cap(self):
        bounds = [orbit_tail_degree_bound(3, 2, cap) for cap in range(6)]
        assert bounds == sorted(bounds, reverse=True)


class TestZeta:
    def test_rank_one_space(self):
        for n in range(6):
            assert zeta_coefficient_direct(1, n) == (Q - 1) * q_pow(-n)

    def test_zero_order_coefficient_is_gl(self):
        for r in range(1, 5):
            assert zeta_coefficient_direct(r, 0) == class_gl(r)
            assert zeta_closed_expansion(r, 0).coefficient(0) == class_gl(r)

    def test_r2_n1_single_partition(self):
        # lambda = (1, 0): flag quotient (1+q), Levi (q-1)^2, weight q^{-1}
        expected = (ONE + Q) ** 2 * (Q - 1) ** 2 * q_pow(-1)
        assert zeta_coefficient_direct(2, 1) == expected

    def test_routes_agree(self):
        for r in (1, 2, 3):
            series = zeta_closed_expansion(r, 6)
            for n in range(7):
                assert series.coefficient(n) == zeta_coefficient_direct(r, n)

    def test_out_of_range_coefficient(self):
        with pytest.raises(InvalidInput):
            zeta_closed_expansion(2, 3).coefficient(4)


class TestInputValidation:
    def test_bad_rank_bound(self):
        with pytest.raises(InvalidInput):
            StringyInput(2, 2)

    def test_projective_needs_positive_k(self):
        with pytest.raises(InvalidInput):
            StringyInput(2, 0, "projective")

    def test_ok(self):
        StringyInput(3, 2, "projective")
        StringyInput(1, 0, "affine")
