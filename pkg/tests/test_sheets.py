import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

import sheetbox as sb
from sheetbox.errors import DomainError, Overflow, ValidationError

TWO_PI = 2 * math.pi


class TestSheetEval:
    def test_log_at_e(self):
        assert sb.sheet_eval(sb.LOG, math.e) == pytest.approx(1.0, rel=1e-15)

    def test_reciprocal(self):
        assert sb.sheet_eval(sb.RECIPROCAL, 2.0) == 0.5

    def test_reciplog_at_one_is_domain_error(self):
        with pytest.raises(DomainError):
            sb.sheet_eval(sb.RECIPROCAL_LOG, 1.0)

    def test_log_rejects_nonpositive_and_complex(self):
        with pytest.raises(DomainError):
            sb.sheet_eval(sb.LOG, -1.0)
        with pytest.raises(DomainError):
            sb.sheet_eval(sb.LOG, 1 + 1j)

    def test_reciprocal_of_zero(self):
        with pytest.raises(DomainError):
            sb.sheet_eval(sb.RECIPROCAL, 0.0)

    def test_constant_and_abs(self):
        assert sb.sheet_eval(sb.constant(2.5), 123.0) == 2.5
        assert sb.sheet_eval(sb.ABSOLUTE, -3 + 4j) == 5.0

    def test_unknown_sheet_name_rejected(self):
        with pytest.raises(ValidationError):
            sb.Sheet("cosine")


class TestPhasePowerI:
    @pytest.mark.parametrize("k, expected", [(4, 1), (7, -1j), (2, -1), (1, 1j), (3, -1j), (8, 1)])
    def test_table(self, k, expected):
        assert sb.phase_power_i(k) == expected

    def test_k_must_be_positive(self):
        with pytest.raises(ValidationError):
            sb.phase_power_i(0)


class TestSheetPhaseEval:
    def test_log_unwrapped(self):
        # log(e(i^4 * r)) = 2*pi*i*r, with no branch reduction
        assert sb.sheet_phase_eval(sb.LOG, 4, 0.3) == pytest.approx(
            TWO_PI * 0.3j, rel=1e-15
        )
        assert sb.sheet_phase_eval(sb.LOG, 4, 0.3) == pytest.approx(1.8849555921538759j)

    def test_reciplog_k7(self):
        # 1/(2*pi*i^8*0.25) = 2/pi
        val = sb.sheet_phase_eval(sb.RECIPROCAL_LOG, 7, 0.25)
        assert val == pytest.approx(2 / math.pi, rel=1e-15)
        assert val == pytest.approx(0.6366197723675814)

    @pytest.mark.parametrize("r", [0.0, 0.1, 3.7, 250.0])
    def test_abs_is_one_for_k_multiple_of_four(self, r):
        assert sb.sheet_phase_eval(sb.ABSOLUTE, 4, r) == 1.0

    @given(st.floats(min_value=0, max_value=1e6), st.integers(min_value=1, max_value=16))
    def test_identity_unit_modulus_when_k_mod4_is_zero(self, r, k):
        if k % 4 == 0:
            assert abs(abs(sb.sheet_phase_eval(sb.IDENTITY, k, r)) - 1.0) < 1e-12

    @given(st.floats(min_value=0, max_value=100), st.integers(min_value=1, max_value=12))
    def test_constant_ignores_k_and_r(self, r, k):
        assert sb.sheet_phase_eval(sb.constant(3.25), k, r) == 3.25

    @given(st.floats(min_value=1e-6, max_value=1e3), st.integers(min_value=1, max_value=12))
    def test_log_reciplog_product_is_one(self, r, k):
        prod = sb.sheet_phase_eval(sb.LOG, k, r) * sb.sheet_phase_eval(sb.RECIPROCAL_LOG, k, r)
        assert prod == pytest.approx(1.0, rel=1e-12)

    @given(st.floats(min_value=0, max_value=50), st.integers(min_value=1, max_value=12))
    def test_id_recip_product_is_one(self, r, k):
        prod = sb.sheet_phase_eval(sb.IDENTITY, k, r) * sb.sheet_phase_eval(sb.RECIPROCAL, k, r)
        assert prod == pytest.approx(1.0, rel=1e-12)

    def test_reciplog_at_zero_radius(self):
        with pytest.raises(DomainError):
            sb.sheet_phase_eval(sb.RECIPROCAL_LOG, 4, 0.0)

    def test_overflow_for_growing_phase(self):
        with pytest.raises(Overflow):
            sb.sheet_phase_eval(sb.IDENTITY, 7, 1e4)
        with pytest.raises(Overflow):
            sb.sheet_phase_eval(sb.ABSOLUTE, 7, 1e4)
