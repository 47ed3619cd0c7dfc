import numpy as np
import pytest

from verlinde.fusion_ring import FusionElement
from verlinde.oracles import (
    check_negative_control,
    classical_verlinde_number,
    closed_form_tables,
    run_verification_suite,
    star_choice_class,
    structure_constants_from_multiply,
    structure_constants_verlinde,
    sweep_surfaces,
)
from verlinde.prequant import NotAdmissible
from verlinde.quantization import quantize_star_block, tau_power


def tau(k, m):
    return FusionElement.tau(k, m)


class TestStructureConstants:
    def test_unit_fusion(self):
        assert structure_constants_verlinde(4)[1, 1, 0] == 1

    def test_star_fusion(self):
        assert structure_constants_verlinde(4)[2, 4, 2] == 1

    def test_truncation(self):
        assert structure_constants_verlinde(2)[2, 2, 2] == 0

    @pytest.mark.parametrize("k", [0, 1, 2, 5, 9, 16, 24])
    def test_matches_exact_multiplication(self, k):
        verlinde = structure_constants_verlinde(k)
        exact = structure_constants_from_multiply(k)
        assert (verlinde == exact).all()
        assert np.isin(exact, (0, 1)).all()


class TestClosedFormTables:
    def test_r2_plus(self):
        assert closed_form_tables(8, 2, "+") == tau(8, 0) + tau(8, 4) + tau(8, 8)

    def test_r2_minus_case_split(self):
        assert closed_form_tables(6, 2, "-") == tau(6, 2) + tau(6, 6)
        assert closed_form_tables(8, 2, "-") == tau(8, 2) + tau(8, 6)

    def test_r4_base_power(self):
        assert closed_form_tables(4, 4, "base") == FusionElement(4, (3, 0, 5, 0, 3))

    def test_r3_trivial(self):
        assert closed_form_tables(4, 3, "trivial") == tau(4, 0) + tau(4, 4)

    def test_inadmissible_level(self):
        with pytest.raises(NotAdmissible):
            closed_form_tables(6, 3, "trivial")

    @pytest.mark.parametrize("k", range(0, 25, 2))
    def test_base_tables_match_fusion_powers(self, k):
        assert closed_form_tables(k, 2, "base") == tau_power(k, 2)
        if k % 4 == 0:
            assert closed_form_tables(k, 3, "base") == tau_power(k, 3)
            assert closed_form_tables(k, 4, "base") == tau_power(k, 4)

    @pytest.mark.parametrize("k", range(0, 25, 4))
    def test_match_star_blocks(self, k):
        from itertools import product
        assert closed_form_tables(k, 2, "+") == quantize_star_block(k, 2, "+")
        assert closed_form_tables(k, 2, "-") == quantize_star_block(k, 2, "-")
        for r in (3, 4):
            for bits in product((0, 1), repeat=r - 1):
                psi = (0,) + bits
                label = star_choice_class(r, psi)
                assert closed_form_tables(k, r, label) == quantize_star_block(k, r, psi)

    def test_r4_class_counts(self):
        from itertools import product
        counts = {"trivial": 0, "sum_zero": 0, "sum_minus_two": 0}
        for bits in product((0, 1), repeat=3):
            counts[star_choice_class(4, (0,) + bits)] += 1
        assert counts == {"trivial": 1, "sum_zero": 4, "sum_minus_two": 3}


class TestClassicalVerlinde:
    def test_level_one_genus_two(self):
        assert classical_verlinde_number(1, 2) == 4

    @pytest.mark.parametrize("k", range(0, 33))
    def test_torus(self, k):
        assert classical_verlinde_number(k, 1) == k + 1

    def test_sphere(self):
        assert classical_verlinde_number(2, 0) == 1

    def test_big_values_round_cleanly(self):
        # genus 4 at k = 32 stresses the scaled integrality window
        assert classical_verlinde_number(32, 4) > 10**9


class TestSweep:
    def test_labels_come_from_pool(self):
        for surf in sweep_surfaces(8, 3, 1):
            pool = {0, 1, surf.level // 2, surf.level}
            assert set(surf.labels) <= pool
            assert surf.gamma_size() <= 2**9

    def test_all_admissible(self):
        from verlinde.prequant import check_prequantization
        assert all(check_prequantization(s).admissible for s in sweep_surfaces(8, 3, 1))


def test_negative_control_check():
    result = check_negative_control()
    assert result.passed
    assert result.params["flips"] == 16


def test_suite_small_box_passes():
    report = run_verification_suite(6, 3, 1)
    assert report.passed
    names = {c.name for c in report.checks}
    assert "cross_path_equality" in names
    assert "negative_control_phase_flip" in names


def test_suite_trivial_box():
    report = run_verification_suite(0, 0, 0)
    assert report.passed


def test_report_json_shape():
    report = run_verification_suite(2, 1, 0)
    data = report.to_json_dict()
    assert data["pass"] is True
    assert all({"name", "params", "pass", "deviation"} <= set(c) for c in data["checks"])
