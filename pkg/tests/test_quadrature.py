import math

import numpy as np
import pytest

import sheetbox as sb
from sheetbox.errors import NonFiniteIntegrand, ValidationError

LP2_UNIT_SQUARE = (math.sqrt(2) + math.asinh(1.0)) / 3  # integral of sqrt(x^2+y^2)

GL = lambda **kw: sb.QuadratureConfig(method="gl", **kw)


class TestGaussLegendre:
    def test_unit_kernel_unit_square(self):
        res = sb.integrate_box(sb.unit_kernel(), sb.BoxDomain([0, 0], [1, 1]), GL(nodes=4))
        assert res.value == pytest.approx(1.0, abs=1e-12)

    def test_lp_kernel_is_linear_in_one_dimension(self):
        # in n=1 the l^k norm of (x) is x for any k, so the integral is x^2/2
        for k in (1, 2, 7):
            res = sb.integrate_box(sb.lp_kernel(k), sb.BoxDomain([1.0], [2.0]), GL())
            assert res.value == pytest.approx(1.5, rel=1e-12)

    def test_cubic_exact_with_two_nodes(self):
        res = sb.integrate_box(
            lambda p: p[:, 0] ** 3, sb.BoxDomain([0.0], [2.0]), GL(nodes=2, max_levels=1)
        )
        assert res.value == pytest.approx(4.0, abs=1e-12)

    @pytest.mark.parametrize("dx, dy", [(0, 0), (3, 2), (5, 1), (7, 7)])
    def test_monomial_exactness(self, dx, dy):
        # degree <= 2m-1 per dimension is integrated exactly by m nodes
        m = 4
        res = sb.integrate_box(
            lambda p: p[:, 0] ** dx * p[:, 1] ** dy,
            sb.BoxDomain([0, 0], [1, 1]),
            GL(nodes=m, max_levels=1),
        )
        exact = 1.0 / ((dx + 1) * (dy + 1))
        assert res.value == pytest.approx(exact, rel=1e-12)

    def test_lp2_unit_square_oracle(self):
        res = sb.integrate_box(
            sb.lp_kernel(2), sb.BoxDomain([0, 0], [1, 1]), GL(nodes=16, rel_tol=1e-10)
        )
        assert res.converged
        assert res.value == pytest.approx(LP2_UNIT_SQUARE, abs=1e-8)

    def test_reciprocal_lp_is_one_over_x_in_one_dimension(self):
        res = sb.refine_integrate(sb.reciprocal_lp_kernel(7), sb.BoxDomain([1.0], [2.0]), 1e-10, 6)
        assert res.value == pytest.approx(math.log(2), rel=1e-10)

    def test_budget_exceeded_flag(self):
        res = sb.integrate_box(
            sb.reciprocal_lp_kernel(7),
            sb.BoxDomain([1.0], [2.0]),
            GL(rel_tol=1e-30, max_levels=2),
        )
        assert not res.converged
        assert "budget-exceeded" in res.method_used
        assert res.value == pytest.approx(math.log(2), rel=1e-8)  # best value still returned

    def test_orientation_flip_negates_exactly(self):
        fwd = sb.integrate_box(sb.lp_kernel(4), sb.BoxDomain([0.5, 1.0], [1.5, 2.0]), GL())
        rev = sb.integrate_box(sb.lp_kernel(4), sb.BoxDomain([0.5, 2.0], [1.5, 1.0]), GL())
        assert fwd.value == -rev.value  # bitwise: same nodes, sign applied at the end

    def test_dimension_permutation_invariance(self):
        # the point-norm kernels are symmetric in the coordinates
        box = sb.BoxDomain([0.2, 0.7, 1.1], [1.0, 1.4, 2.0])
        perm = sb.BoxDomain([1.1, 0.2, 0.7], [2.0, 1.0, 1.4])
        a = sb.integrate_box(sb.lp_kernel(4), box, GL())
        b = sb.integrate_box(sb.lp_kernel(4), perm, GL())
        assert a.value == pytest.approx(b.value, rel=1e-10)

    def test_zero_width_short_circuit(self):
        res = sb.integrate_box(sb.lp_kernel(2), sb.BoxDomain([1.0, 0.0], [1.0, 5.0]), GL())
        assert res.value == 0
        assert res.evaluations == 1

    def test_gl_limited_to_eight_dimensions(self):
        box = sb.BoxDomain([0.0] * 9, [1.0] * 9)
        with pytest.raises(ValidationError):
            sb.integrate_box(sb.unit_kernel(), box, GL(nodes=2))

    def test_auto_method_switches_to_mc_in_high_dimension(self):
        box = sb.BoxDomain([0.0] * 7, [1.0] * 7)
        res = sb.integrate_box(sb.unit_kernel(), box, sb.QuadratureConfig(samples=200))
        assert res.method_used.startswith("mc")

    def test_deterministic_reruns(self):
        box = sb.BoxDomain([0.2, 0.3], [1.5, 2.1])
        cfg = GL()
        first = sb.integrate_box(sb.lp_kernel(4), box, cfg)
        second = sb.integrate_box(sb.lp_kernel(4), box, cfg)
        assert first.value == second.value
        assert first.evaluations == second.evaluations

    def test_non_finite_integrand(self):
        box = sb.BoxDomain([0.0], [1.0])
        with pytest.raises(NonFiniteIntegrand):
            sb.integrate_box(lambda p: 1.0 / (p[:, 0] - 0.5), box, GL(nodes=64))


class TestMonteCarlo:
    def test_unit_kernel_has_zero_variance(self):
        res = sb.mc_integrate(sb.unit_kernel(), sb.BoxDomain([0, 0, 0], [1, 1, 1]), 500, seed=1)
        assert res.value == 1.0
        assert res.error_estimate == 0.0

    def test_reversed_box_sign(self):
        res = sb.mc_integrate(sb.unit_kernel(), sb.BoxDomain([2.0], [1.0]), 500, seed=1)
        assert res.value == -1.0

    def test_lp2_within_four_standard_errors(self):
        res = sb.mc_integrate(sb.lp_kernel(2), sb.BoxDomain([0, 0], [1, 1]), 100_000, seed=0xC0FFEE)
        assert abs(res.value - LP2_UNIT_SQUARE) <= 4 * res.error_estimate

    def test_reproducible_for_fixed_seed(self):
        box = sb.BoxDomain([0, 0], [1, 1])
        a = sb.mc_integrate(sb.lp_kernel(2), box, 5000, seed=42)
        b = sb.mc_integrate(sb.lp_kernel(2), box, 5000, seed=42)
        assert a.value == b.value and a.error_estimate == b.error_estimate

    def test_consistency_with_gl_across_seeds(self):
        # |MC - GL| <= 4 * stderr should hold for ~95% of seeds; demand >= 95/100
        box = sb.BoxDomain([0, 0], [1, 1])
        gl = sb.integrate_box(sb.lp_kernel(2), box, GL(rel_tol=1e-10)).value
        hits = 0
        for seed in range(100):
            mc = sb.mc_integrate(sb.lp_kernel(2), box, 4000, seed=seed)
            if abs(mc.value - gl) <= 4 * mc.error_estimate:
                hits += 1
        assert hits >= 95

    def test_sample_floor(self):
        with pytest.raises(ValidationError):
            sb.mc_integrate(sb.unit_kernel(), sb.BoxDomain([0.0], [1.0]), 50, seed=0)
