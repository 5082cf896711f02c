import math

import numpy as np
import pytest

import sheetbox as sb
from sheetbox.errors import DegenerateScale, DomainError, UnsupportedSheetReduction


def _rel_close(x, y, tol):
    return abs(x - y) <= tol * max(abs(x), abs(y), 1e-300)


class TestScaleDenominator:
    def test_values(self):
        assert sb.scale_denominator([3, 4], [0, 0], 1) == 25
        assert sb.scale_denominator([3, 4], [0, 0], 4) == 3125

    def test_degenerate(self):
        with pytest.raises(DegenerateScale):
            sb.scale_denominator([0.0], [0.0], 4)


class TestDirectPath:
    def test_constant_sheet_is_signed_volume(self):
        inst = sb.LocalProductInstance([1, 1], [2, 3], 4, sb.constant(1.0))
        assert sb.local_product_direct(inst) == pytest.approx(2.0, rel=1e-12)

    def test_identity_sheet_zero_width_box(self):
        inst = sb.LocalProductInstance([1, 1], [1, 1], 4, sb.IDENTITY)
        assert sb.local_product_direct(inst) == 0

    def test_log_sheet_filters_pairing_value_one(self):
        # <(2,0), (0.5,0)> = 1 exactly: excluded for the logarithmic sheets
        inst = sb.LocalProductInstance([2, 0], [0.5, 0], 4, sb.LOG)
        with pytest.raises(DomainError):
            sb.local_product_direct(inst)

    def test_log_sheet_requires_positive_pairing(self):
        inst = sb.LocalProductInstance([1, 0], [0, 1], 4, sb.LOG)  # <a,b> = 0
        with pytest.raises(DomainError):
            sb.local_product_direct(inst)


class TestClosedPath:
    def test_constant(self):
        inst = sb.LocalProductInstance([1, 1], [2, 3], 4, sb.constant(1.0))
        assert sb.local_product_closed(inst) == pytest.approx(2.0, rel=1e-15)

    def test_reciplog_k7_analytic(self):
        # (1/ln e) * (1 + e^8) * 1/(2*pi*i^8) * integral(1/x, 1..e)
        inst = sb.LocalProductInstance([1.0], [math.e], 7, sb.RECIPROCAL_LOG)
        expected = (1 + math.exp(8)) / (2 * math.pi)
        assert sb.local_product_closed(inst) == pytest.approx(expected, rel=1e-9)
        assert abs(sb.local_product_closed(inst) - 474.59) < 0.01

    def test_abs_closed_form_and_direct_agree(self):
        inst = sb.LocalProductInstance([1, -2], [2, 3], 4, sb.ABSOLUTE)
        closed = sb.local_product_closed(inst)
        p = sb.pairing_eval(sb.DOT, [1, -2], [2, 3])
        assert closed == pytest.approx(abs(p) * 1.0, rel=1e-12)  # |<a,b>| * |vol|
        direct = sb.local_product_direct(inst)
        assert direct == pytest.approx(closed, rel=1e-10)

    def test_abs_without_closed_form(self):
        inst = sb.LocalProductInstance([1, 1], [2, 3], 7, sb.ABSOLUTE)
        with pytest.raises(UnsupportedSheetReduction):
            sb.local_product_closed(inst)

    def test_log_cross_validates_against_direct(self):
        inst = sb.LocalProductInstance([1, 1], [2, 3], 4, sb.LOG)
        direct = sb.local_product_direct(inst)
        closed = sb.local_product_closed(inst)
        assert _rel_close(direct, closed, 1e-6)


class TestPathEquivalence:
    SHEET_POOL = [sb.constant(1.0), sb.LOG, sb.IDENTITY, sb.RECIPROCAL, sb.RECIPROCAL_LOG]

    def test_seeded_instances(self):
        from sheetbox.suites import path_equivalence_suite

        result = path_equivalence_suite(30, seed=2024)
        assert result.passed == result.total

    def test_permutation_equivariance(self):
        rng = np.random.default_rng(5)
        for sheet in (sb.LOG, sb.IDENTITY):
            a = rng.uniform(0.3, 2.0, 3)
            b = rng.uniform(0.3, 2.0, 3)
            perm = np.array([2, 0, 1])
            inst = sb.LocalProductInstance(a, b, 4, sheet)
            inst_p = sb.LocalProductInstance(a[perm], b[perm], 4, sheet)
            for fn in (sb.local_product_direct, sb.local_product_closed):
                assert _rel_close(fn(inst), fn(inst_p), 1e-9)

    def test_componentwise_sign_invariance(self):
        # flipping the sign of the same coordinate in a and b preserves the
        # pairing value and every absolute value, so G is unchanged
        a = np.array([0.8, 1.4])
        b = np.array([1.1, 0.6])
        a2 = np.array([-0.8, 1.4])
        b2 = np.array([-1.1, 0.6])
        assert sb.pairing_eval(sb.DOT, a, b) == sb.pairing_eval(sb.DOT, a2, b2)
        for sheet in (sb.LOG, sb.IDENTITY, sb.RECIPROCAL):
            one = sb.local_product_direct(sb.LocalProductInstance(a, b, 4, sheet))
            two = sb.local_product_direct(sb.LocalProductInstance(a2, b2, 4, sheet))
            assert _rel_close(one, two, 1e-9)

    def test_constant_sheet_identity_on_random_instances(self):
        rng = np.random.default_rng(11)
        for _ in range(20):
            n = int(rng.integers(1, 4))
            a = rng.uniform(-2, 2, n)
            b = rng.uniform(-2, 2, n)
            inst = sb.LocalProductInstance(a, b, int(rng.integers(1, 9)), sb.constant(1.0))
            sv = sb.signed_volume(sb.box_from_pair(a, b))
            assert sb.local_product_direct(inst) == pytest.approx(sv, rel=1e-10, abs=1e-12)
