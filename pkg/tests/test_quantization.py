import math

import pytest

from verlinde.fusion_ring import FusionElement, NonIntegralCoefficient
from verlinde.prequant import (
    NotAdmissible,
    PrequantChoice,
    SurfaceData,
    enumerate_choices,
)
from verlinde.quantization import (
    chi_element,
    fs_formula,
    fs_formula_with_phases,
    localization_evaluate,
    quantize_conjugacy_class,
    quantize_double_so3,
    quantize_double_su2,
    quantize_star_block,
    quantize_surface,
    reduced_quantization,
    tau_power,
    verlinde_baseline,
    _phase_vector,
)


def tau(k, m):
    return FusionElement.tau(k, m)


class TestChiElement:
    def test_level_four(self):
        assert chi_element(4).coeffs == (1, 0, -1, 0, 1)

    def test_value_at_star_point(self):
        for k in (2, 4, 8, 12):
            assert chi_element(k).evaluate(k // 2) == pytest.approx(k / 2 + 1)

    def test_vanishes_elsewhere(self):
        k = 8
        for l in range(k + 1):
            if l != k // 2:
                assert chi_element(k).evaluate(l) == pytest.approx(0.0, abs=1e-9)

    def test_odd_level_rejected(self):
        with pytest.raises(ValueError):
            chi_element(5)


class TestStarBlock:
    def test_r2_plus_level_four(self):
        assert quantize_star_block(4, 2, "+") == FusionElement(4, (1, 0, 0, 0, 1))

    def test_r2_minus_level_six(self):
        got = quantize_star_block(6, 2, "-")
        assert got == tau(6, 2) + tau(6, 6)

    def test_r3_trivial(self):
        # 1/4 (tau_2^3 + 3 chi) at k = 4
        expected = tau(4, 2) ** 3 + 3 * chi_element(4)
        expected = FusionElement(4, tuple(c // 4 for c in expected.coeffs))
        got = quantize_star_block(4, 3, (0, 0, 0))
        assert got == expected == tau(4, 0) + tau(4, 4)

    def test_r4_trivial(self):
        # 1/8 (tau_2^4 + (6(-1) + 3) chi) at k = 4
        assert quantize_star_block(4, 4, (0, 0, 0, 0)) == tau(4, 2)

    def test_r1_is_star_class(self):
        for k in (2, 4, 10):
            assert quantize_star_block(k, 1) == tau(k, k // 2)

    def test_r0_is_unit(self):
        assert quantize_star_block(7, 0) == tau(7, 0)

    def test_inadmissible(self):
        with pytest.raises(NotAdmissible):
            quantize_star_block(6, 3, (0, 0, 0))
        with pytest.raises(NotAdmissible):
            quantize_star_block(5, 1)

    def test_psi_canonicalization(self):
        # psi and its global flip define the same functional on Gamma'
        assert quantize_star_block(8, 4, (1, 0, 1, 0)) == quantize_star_block(8, 4, (0, 1, 0, 1))


class TestBuildingBlocks:
    def test_conjugacy_class(self):
        assert quantize_conjugacy_class(5, 0) == tau(5, 0)
        assert quantize_conjugacy_class(4, 2) == tau(4, 2)
        assert quantize_conjugacy_class(7, 7) == tau(7, 7)

    def test_double_su2_small_levels(self):
        assert quantize_double_su2(1) == FusionElement(1, (2, 0))
        assert quantize_double_su2(2) == FusionElement(2, (3, 0, 1))

    @pytest.mark.parametrize("k", range(0, 33))
    def test_double_su2_trace_counts_basis(self, k):
        assert quantize_double_su2(k).trace == k + 1

    def test_double_so3_trivial_phi(self):
        assert quantize_double_so3(2, (0, 0)) == tau(2, 2)

    def test_double_so3_nontrivial_phi(self):
        for phi in ((0, 1), (1, 0), (1, 1)):
            assert quantize_double_so3(2, phi) == tau(2, 0)

    def test_double_so3_level_four_integral(self):
        elem = quantize_double_so3(4, (0, 0))
        assert elem.trace >= 0
        assert elem == FusionElement(4, (2, 0, 0, 0, 1))

    def test_double_so3_odd_level(self):
        with pytest.raises(NotAdmissible):
            quantize_double_so3(3, (0, 0))


class TestQuantizeSurface:
    def test_two_stars(self):
        res = quantize_surface(SurfaceData(4, 0, (2, 2)), PrequantChoice((0, 0)))
        assert res.element == tau(4, 0) + tau(4, 4)
        assert res.reduced == 1
        assert res.path == "closed_form"

    def test_stars_and_plain_label(self):
        # (tau_0 + tau_4) tau_4 with tau_4^2 = tau_0 at k = 4
        res = quantize_surface(SurfaceData(4, 0, (2, 2, 4)))
        assert res.element == tau(4, 0) + tau(4, 4)

    def test_genus_one(self):
        res = quantize_surface(SurfaceData(2, 1, ()), PrequantChoice((0, 0)))
        assert res.element == tau(2, 2)
        assert res.reduced == 0

    def test_inadmissible(self):
        with pytest.raises(NotAdmissible, match=r"\(iii\)"):
            quantize_surface(SurfaceData(6, 0, (3, 3, 3)))


class TestFsFormula:
    def test_matches_closed_form_examples(self):
        cases = [
            (SurfaceData(4, 0, (2, 2, 2)), PrequantChoice((0, 0, 0))),
            (SurfaceData(4, 0, (2, 2, 2)), PrequantChoice((0, 1, 0))),
            (SurfaceData(8, 1, (4, 4, 1)), PrequantChoice((0, 1, 0, 1, 0))),
            (SurfaceData(2, 2, (1, 1)), PrequantChoice((0, 1, 1, 1, 0, 0))),
        ]
        for surf, choice in cases:
            assert fs_formula(surf, choice).element == quantize_surface(surf, choice).element

    def test_trivial_group_reproduces_class(self):
        res = fs_formula(SurfaceData(5, 0, (3,)))
        assert res.element == tau(5, 3)

    def test_three_stars(self):
        res = fs_formula(SurfaceData(4, 0, (2, 2, 2)), PrequantChoice((0, 0, 0)))
        assert res.element == tau(4, 0) + tau(4, 4)
        assert res.path == "fs_float"

    def test_flipped_phase_detected(self):
        surf = SurfaceData(4, 0, (2, 2, 2))
        phases = list(_phase_vector(surf, PrequantChoice((0, 0, 0))))
        phases[2] = -phases[2]
        with pytest.raises(NonIntegralCoefficient):
            fs_formula_with_phases(surf, phases)


class TestReducedQuantization:
    @pytest.mark.parametrize("labels,psi,expected", [
        ((2, 2), (0, 0), 1),
        ((2, 2), (0, 1), 0),
    ])
    def test_two_stars(self, labels, psi, expected):
        assert reduced_quantization(SurfaceData(4, 0, labels), PrequantChoice(psi)) == expected

    def test_genus_one(self):
        assert reduced_quantization(SurfaceData(2, 1, ()), PrequantChoice((0, 0))) == 0

    def test_equals_trace_over_choices(self):
        surf = SurfaceData(8, 1, (4, 4, 4))
        for choice in enumerate_choices(surf):
            assert reduced_quantization(surf, choice) == quantize_surface(surf, choice).reduced


class TestVerlindeBaseline:
    def test_genus_two_level_one(self):
        assert verlinde_baseline(SurfaceData(1, 2, ())).reduced == 4

    @pytest.mark.parametrize("k", [0, 1, 2, 5, 11, 24])
    def test_torus_counts_weights(self, k):
        assert verlinde_baseline(SurfaceData(k, 1, ())).reduced == k + 1

    def test_pair_of_pants_free(self):
        assert verlinde_baseline(SurfaceData(3, 0, (1, 1))).reduced == 1

    def test_odd_level_genus_allowed(self):
        # the baseline has no sign group, so no parity constraint applies
        assert verlinde_baseline(SurfaceData(3, 1, ())).reduced == 4


class TestLocalization:
    def test_r2_at_star_point(self):
        assert localization_evaluate(4, 2, "+", 2) == pytest.approx(2.0)

    def test_r2_away_from_star_point(self):
        assert localization_evaluate(4, 2, "+", 0) == pytest.approx(2.0)

    def test_r3_vanishing_point(self):
        assert localization_evaluate(4, 3, (0, 0, 0), 1) == pytest.approx(0.0, abs=1e-9)

    def test_matches_closed_form_evaluations(self):
        for k, r, psi in [(4, 2, "+"), (4, 2, "-"), (8, 3, (0, 1, 1)),
                          (12, 4, (0, 1, 0, 1)), (8, 5, (0, 0, 1, 1, 0)), (6, 1, ())]:
            elem = quantize_star_block(k, r, psi if r >= 2 else ())
            for l in range(k + 1):
                assert localization_evaluate(k, r, psi if r >= 2 else (), l) == pytest.approx(
                    elem.evaluate(l), abs=1e-8, rel=1e-8)


def test_choice_sum_collapses_to_power():
    # summing over all psi kills every gamma != identity by orthogonality
    from itertools import product as iproduct
    for k, r in [(4, 3), (8, 4), (2, 2)]:
        total = FusionElement.zero(k)
        for bits in iproduct((0, 1), repeat=r - 1):
            total = total + quantize_star_block(k, r, (0,) + bits)
        assert total == tau_power(k, r)


def test_r2_pair_identity():
    for k in range(0, 101, 2):
        plus = quantize_star_block(k, 2, "+")
        minus = quantize_star_block(k, 2, "-")
        assert plus + minus == tau_power(k, 2)
