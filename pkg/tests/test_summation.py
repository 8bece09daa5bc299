import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from riemannlab.summation import masked_neumaier_sum, neumaier_sum


class TestNeumaier:
    def test_empty(self):
        assert neumaier_sum([]) == (0.0, 0.0)

    def test_cancellation_case(self):
        # naive left-to-right summation loses the 1.0 here
        values = [1e16, 1.0, -1e16]
        total, residual = neumaier_sum(values)
        assert total == 1.0
        assert residual != 0.0

    def test_matches_fsum_on_random_data(self):
        rng = np.random.default_rng(0)
        for scale in (1.0, 1e8, 1e-8):
            values = rng.standard_normal(10_000) * scale
            total, _ = neumaier_sum(values)
            assert abs(total - math.fsum(values)) <= 4 * np.finfo(float).eps * np.sum(
                np.abs(values)
            )

    @given(st.lists(st.floats(-1e12, 1e12, allow_nan=False), max_size=200))
    @settings(max_examples=100, deadline=None)
    def test_close_to_exact(self, values):
        total, _ = neumaier_sum(values)
        exact = math.fsum(values)
        scale = math.fsum(abs(v) for v in values)
        assert abs(total - exact) <= 4 * np.finfo(float).eps * max(scale, 1.0)

    def test_order_is_part_of_the_contract(self):
        values = np.array([0.1, 0.2, 0.3, 0.4])
        a = neumaier_sum(values)
        b = neumaier_sum(values)
        assert a == b  # bitwise reproducible, residual included


class TestMasked:
    def test_mask_selects_survivors_in_order(self):
        values = np.array([1.0, 10.0, 100.0, 1000.0])
        keep = np.array([True, False, True, False])
        total, _ = masked_neumaier_sum(values, keep)
        assert total == 101.0

    def test_shape_mismatch(self):
        with pytest.raises(ValueError):
            masked_neumaier_sum([1.0, 2.0], [True])
