import json
import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from verlinde.fusion_ring import (
    CharacterPoly,
    FusionElement,
    IdempotentVector,
    NonIntegralCoefficient,
    from_idempotent,
    reduce_character,
    s_matrix,
    s_matrix_entry,
    to_idempotent,
)


def tau(k, m):
    return FusionElement.tau(k, m)


class TestReduceCharacter:
    def test_ideal_generator_vanishes(self):
        assert reduce_character(2, CharacterPoly.chi(3)).is_zero()

    def test_low_degrees_map_identically(self):
        assert reduce_character(5, CharacterPoly.chi(4)) == tau(5, 4)

    def test_first_reflection_is_negative(self):
        # chi_6 at k=4 folds to -tau_4; cross-checked against evaluation below
        assert reduce_character(4, CharacterPoly.chi(6)) == -tau(4, 4)

    def test_folding_period(self):
        # period 2(k+2) = 12 at k=4
        assert reduce_character(4, CharacterPoly.chi(14)) == tau(4, 2)

    @pytest.mark.parametrize("k", [0, 1, 2, 3, 4, 7, 12])
    def test_matches_special_point_evaluation(self, k):
        # the evaluation-based oracle: the image must take the same values
        # as the character at every special point
        for m in range(4 * (k + 2) + 1):
            chi_m = CharacterPoly.chi(m)
            image = reduce_character(k, chi_m)
            for l in range(k + 1):
                assert image.evaluate(l) == pytest.approx(
                    chi_m.special_point_value(k, l), abs=1e-9)


class TestMultiply:
    def test_star_square(self):
        assert tau(4, 2) * tau(4, 2) == FusionElement(4, (1, 0, 1, 0, 1))

    def test_unit(self):
        x = FusionElement(6, (3, 0, -2, 5, 0, 1, 4))
        assert FusionElement.one(6) * x == x
        assert x * FusionElement.one(6) == x

    def test_fold_in_product(self):
        # chi_2 chi_4 = chi_6 + chi_4 + chi_2 and chi_6 folds to -tau_4
        assert tau(4, 2) * tau(4, 4) == tau(4, 2)

    def test_star_cube(self):
        assert tau(4, 2) ** 3 == FusionElement(4, (1, 0, 3, 0, 1))

    def test_level_mismatch(self):
        with pytest.raises(ValueError, match="level mismatch"):
            tau(4, 2) * tau(6, 2)

    def test_big_coefficients_stay_exact(self):
        big = 10**30
        x = big * tau(2, 1)
        assert (x * x).coeffs == (big * big, 0, big * big)


class TestSMatrix:
    def test_column_of_unit_row(self):
        assert s_matrix_entry(4, 0, 2) == pytest.approx(3 ** -0.5)

    def test_star_star_entry(self):
        # S[k/2, k/2] = (k/2+1)^(-1/2) (-1)^(k/4) at k = 4
        assert s_matrix_entry(4, 2, 2) == pytest.approx(-(3 ** -0.5))

    def test_low_level_entry(self):
        assert s_matrix_entry(2, 0, 0) == pytest.approx(0.5)

    def test_out_of_range(self):
        with pytest.raises(IndexError):
            s_matrix_entry(4, 5, 0)

    @pytest.mark.parametrize("k", [0, 1, 5, 20, 64, 100])
    def test_symmetry_and_orthogonality(self, k):
        smat = s_matrix(k)
        assert np.abs(smat - smat.T).max() < 1e-12
        assert np.abs(smat @ smat.T - np.eye(k + 1)).max() < 1e-10


class TestEvaluation:
    def test_unit_evaluates_to_one(self):
        for l in range(8):
            assert tau(7, 0).evaluate(l) == pytest.approx(1.0)

    def test_fundamental_at_first_point(self):
        assert tau(2, 1).evaluate(0) == pytest.approx(math.sqrt(2))

    def test_star_at_star_point(self):
        assert tau(4, 2).evaluate(2) == pytest.approx(-1.0)

    def test_matches_s_matrix_quotient(self):
        k = 9
        smat = s_matrix(k)
        for m in range(k + 1):
            for l in range(k + 1):
                assert tau(k, m).evaluate(l) == pytest.approx(
                    smat[m][l] / smat[0][l], rel=1e-10, abs=1e-10)


class TestIdempotentBasis:
    def test_idempotent_vectors_are_deltas(self):
        # taut_l has tau-coefficients S[0,l] S[m,l]; evaluations are deltas
        k = 6
        smat = s_matrix(k)
        for l in range(k + 1):
            coeffs = smat[0][l] * smat[:, l]
            evals = coeffs @ (smat / smat[0])
            expected = np.eye(k + 1)[l]
            assert np.abs(evals - expected).max() < 1e-10

    def test_chi_vector_reconstruction(self):
        v = IdempotentVector(4, (0.0, 0.0, 3.0, 0.0, 0.0))
        assert from_idempotent(v) == FusionElement(4, (1, 0, -1, 0, 1))

    def test_non_integral_raises(self):
        v = IdempotentVector(4, (0.0, 0.0, 1.0, 0.0, 0.0))
        with pytest.raises(NonIntegralCoefficient):
            from_idempotent(v)

    @given(st.data())
    @settings(max_examples=80, deadline=None)
    def test_round_trip(self, data):
        k = data.draw(st.integers(min_value=0, max_value=16))
        coeffs = data.draw(st.lists(st.integers(-9, 9), min_size=k + 1, max_size=k + 1))
        x = FusionElement(k, tuple(coeffs))
        assert from_idempotent(to_idempotent(x)) == x


class TestTrace:
    def test_unit_trace(self):
        assert tau(5, 0).trace == 1

    def test_nonunit_trace(self):
        assert tau(5, 3).trace == 0

    def test_genus_two_count_level_one(self):
        # (sum_m tau_m^2)^2 at k=1; oracle: sum_l S[0,l]^(-2) = 4
        k = 1
        total = FusionElement.zero(k)
        for m in range(k + 1):
            total = total + tau(k, m) * tau(k, m)
        assert (total * total).trace == 4
        smat = s_matrix(k)
        assert math.fsum(float(x) ** -2 for x in smat[0]) == pytest.approx(4.0)


class TestJson:
    def test_round_trip_small(self):
        x = FusionElement(3, (1, -2, 0, 5))
        data = json.loads(json.dumps(x.to_json_dict()))
        assert FusionElement.from_json_dict(data) == x
        assert data["coeffs"] == [1, -2, 0, 5]

    def test_big_coefficients_become_strings(self):
        big = 2**60 + 1
        x = FusionElement(1, (big, -big))
        data = json.loads(json.dumps(x.to_json_dict()))
        assert data["coeffs"] == [str(big), str(-big)]
        assert FusionElement.from_json_dict(data) == x


@given(st.data())
@settings(max_examples=60, deadline=None)
def test_evaluation_is_multiplicative(data):
    k = data.draw(st.integers(min_value=0, max_value=14))
    coeffs = st.lists(st.integers(-5, 5), min_size=k + 1, max_size=k + 1)
    a = FusionElement(k, tuple(data.draw(coeffs)))
    b = FusionElement(k, tuple(data.draw(coeffs)))
    ab = a * b
    for l in range(k + 1):
        prod = a.evaluate(l) * b.evaluate(l)
        assert abs(ab.evaluate(l) - prod) < 1e-8 * (1 + abs(prod))


def test_character_poly_product_rule():
    # chi_2 chi_3 = chi_5 + chi_3 + chi_1
    assert CharacterPoly.chi(2) * CharacterPoly.chi(3) == CharacterPoly({5: 1, 3: 1, 1: 1})


def test_character_poly_canonical_form():
    p = CharacterPoly({0: 1, 2: 0, 5: -3})
    assert p.coeffs == {0: 1, 5: -3}
