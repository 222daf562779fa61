"""Discretization, recurrence execution, scan equivalence, gated layer."""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fractalssm.spectral import SpectralInit, spectral_init
from fractalssm.ssm import (DiscreteDiagonalSSM, FilterBankConfig, LayerWeights,
                            SequenceBatch, build_filter_bank, layer_forward, recur_scan,
                            recur_sequential, scan_combine, silu, zoh_discretize)


def toy_init(lam: complex) -> SpectralInit:
    return SpectralInit(alpha=0.0, n=1, eigenvalues=np.array([lam]),
                        v=np.eye(1), v_inv=np.eye(1),
                        b_tilde=np.array([[1.0 + 0.0j]]), cond_v=1.0)


def random_system(rng, n: int, width: int = 1) -> DiscreteDiagonalSSM:
    radius = rng.uniform(0.05, 0.99, size=n)
    phase = rng.uniform(-np.pi, np.pi, size=n)
    b = rng.standard_normal((n, width)) + 1j * rng.standard_normal((n, width))
    return DiscreteDiagonalSSM(lambda_bar=radius * np.exp(1j * phase), b_bar=b, delta=1.0)


class TestZohDiscretize:
    def test_log_two_step(self):
        ssm = zoh_discretize(toy_init(-1.0 + 0.0j), math.log(2.0))
        assert ssm.lambda_bar[0] == pytest.approx(0.5)
        assert ssm.b_bar[0, 0] == pytest.approx(0.5)

    def test_small_step_limit(self):
        init = spectral_init(0.5, 8)
        delta = 1e-6
        ssm = zoh_discretize(init, delta)
        rel = np.max(np.abs(ssm.b_bar / delta - init.b_tilde) / np.abs(init.b_tilde))
        assert rel < 1e-4

    @pytest.mark.parametrize("delta", [1e-4, 1e-2, 1.0, 25.0])
    def test_strict_stability(self, delta):
        init = spectral_init(0.3, 12)
        ssm = zoh_discretize(init, delta)
        moduli = np.abs(ssm.lambda_bar)
        assert np.all(moduli < 1.0)
        assert moduli == pytest.approx(np.exp(-delta * np.arange(1, 13)), rel=1e-12)

    def test_invalid_step(self):
        with pytest.raises(ValueError):
            zoh_discretize(toy_init(-1.0), 0.0)


class TestSequentialRecurrence:
    def test_zero_input(self):
        ssm = random_system(np.random.default_rng(0), 5)
        states = recur_sequential(ssm, SequenceBatch(np.zeros((12, 1))))
        assert np.all(states == 0)

    def test_single_step(self):
        ssm = random_system(np.random.default_rng(1), 4)
        u = SequenceBatch(np.array([[2.5]]))
        states = recur_sequential(ssm, u)
        assert states[0] == pytest.approx(2.5 * ssm.b_bar[:, 0])

    def test_impulse_response_closed_form(self):
        ssm = random_system(np.random.default_rng(2), 6)
        length = 40
        u = np.zeros((length, 1))
        u[0, 0] = 1.0
        states = recur_sequential(ssm, SequenceBatch(u))
        powers = ssm.lambda_bar[None, :] ** np.arange(length)[:, None]
        expected = powers * ssm.b_bar[:, 0]
        assert np.max(np.abs(states - expected)) < 1e-12

    def test_width_mismatch(self):
        ssm = random_system(np.random.default_rng(3), 4, width=2)
        with pytest.raises(ValueError):
            recur_sequential(ssm, SequenceBatch(np.zeros((4, 1))))

    def test_stability_bound(self):
        rng = np.random.default_rng(4)
        for _ in range(5):
            ssm = random_system(rng, 8)
            u = SequenceBatch(rng.uniform(-1, 1, size=(500, 1)))
            states = recur_sequential(ssm, u)
            drive_max = np.max(np.abs(u.values @ ssm.b_bar.T), axis=0)
            bound = drive_max / (1.0 - np.abs(ssm.lambda_bar))
            assert np.all(np.max(np.abs(states), axis=0) <= bound * (1 + 1e-12))

    def test_linearity(self):
        rng = np.random.default_rng(5)
        ssm = random_system(rng, 6)
        u = rng.standard_normal((64, 1))
        v = rng.standard_normal((64, 1))
        a, b = 1.7, -0.4
        combo = recur_sequential(ssm, SequenceBatch(a * u + b * v))
        parts = (a * recur_sequential(ssm, SequenceBatch(u))
                 + b * recur_sequential(ssm, SequenceBatch(v)))
        scale = np.max(np.abs(parts))
        assert np.max(np.abs(combo - parts)) / scale < 1e-10


class TestScanCombine:
    def test_identity_element(self):
        e = (0.3 + 0.1j, -2.0 + 0.5j)
        assert scan_combine((1.0, 0.0), e) == pytest.approx(e)

    @settings(max_examples=100, deadline=None)
    @given(st.lists(st.tuples(
        st.complex_numbers(max_magnitude=2.0, allow_nan=False, allow_infinity=False),
        st.complex_numbers(max_magnitude=2.0, allow_nan=False, allow_infinity=False)),
        min_size=3, max_size=3))
    def test_associativity(self, elems):
        e1, e2, e3 = elems
        left = scan_combine(scan_combine(e1, e2), e3)
        right = scan_combine(e1, scan_combine(e2, e3))
        assert left[0] == pytest.approx(right[0], abs=1e-12)
        assert left[1] == pytest.approx(right[1], abs=1e-12)


class TestScanEquivalence:
    @pytest.mark.parametrize("length", [1, 2, 3, 17, 256, 1000, 1024])
    def test_matches_sequential(self, length):
        rng = np.random.default_rng(length)
        ssm = random_system(rng, 8)
        u = SequenceBatch(rng.standard_normal((length, 1)))
        seq = recur_sequential(ssm, u)
        scan = recur_scan(ssm, u)
        scale = max(np.max(np.abs(seq)), 1e-300)
        assert np.max(np.abs(scan - seq)) / scale < 1e-10

    def test_long_sequence(self):
        rng = np.random.default_rng(99)
        ssm = random_system(rng, 64)
        u = SequenceBatch(rng.standard_normal((65536, 1)))
        seq = recur_sequential(ssm, u)
        scan = recur_scan(ssm, u)
        scale = np.max(np.abs(seq))
        assert np.max(np.abs(scan - seq)) / scale < 1e-10

    @settings(max_examples=20, deadline=None)
    @given(n=st.integers(1, 12), length=st.integers(1, 200), seed=st.integers(0, 10))
    def test_random_shapes(self, n, length, seed):
        rng = np.random.default_rng(seed)
        ssm = random_system(rng, n, width=2)
        u = SequenceBatch(rng.standard_normal((length, 2)))
        seq = recur_sequential(ssm, u)
        scan = recur_scan(ssm, u)
        scale = max(np.max(np.abs(seq)), 1e-300)
        assert np.max(np.abs(scan - seq)) / scale < 1e-10


class TestFilterBank:
    def test_single_channel_is_uniform(self):
        config = FilterBankConfig(channels=1, block_state=4)
        assert config.alphas == (0.0,)

    def test_four_channel_spacing(self):
        config = FilterBankConfig(channels=4, block_state=4)
        assert config.alphas == pytest.approx((0.0, 0.3, 0.6, 0.9))

    def test_two_channel_endpoints(self):
        config = FilterBankConfig(channels=2, block_state=4)
        assert config.alphas == pytest.approx((0.0, 0.9))

    def test_build_bank(self):
        config = FilterBankConfig(channels=3, block_state=4, input_width=2)
        inits = build_filter_bank(config)
        assert len(inits) == 3
        for init, alpha in zip(inits, config.alphas):
            assert init.alpha == alpha
            assert init.b_tilde.shape == (4, 2)

    def test_validation(self):
        with pytest.raises(ValueError):
            FilterBankConfig(channels=0, block_state=4)
        with pytest.raises(ValueError):
            FilterBankConfig(channels=2, block_state=4, alphas=(0.0,))
        with pytest.raises(ValueError):
            FilterBankConfig(channels=1, block_state=4, alphas=(0.99,))
        with pytest.raises(ValueError):
            FilterBankConfig(channels=1, block_state=4, delta=-0.1)


class TestLayerForward:
    @staticmethod
    def small_layer(channels=2, block=3, width=1, out_width=1, seed=0):
        rng = np.random.default_rng(seed)
        config = FilterBankConfig(channels=channels, block_state=block,
                                  input_width=width, output_width=out_width,
                                  delta=0.05)
        inits = build_filter_bank(config)
        ssms = [zoh_discretize(init, d) for init, d in zip(inits, config.delta)]
        total = config.total_state
        weights = LayerWeights(
            c_tilde=(rng.standard_normal((out_width, total))
                     + 1j * rng.standard_normal((out_width, total))),
            w_out=rng.standard_normal((out_width, out_width)),
            w_gate=rng.standard_normal((out_width, width)),
        )
        return config, weights, ssms

    def test_zero_input_zero_output(self):
        config, weights, ssms = self.small_layer()
        out = layer_forward(config, weights, ssms, SequenceBatch(np.zeros((16, 1))))
        assert np.all(out.values == 0.0)

    def test_zero_output_map(self):
        config, weights, ssms = self.small_layer()
        weights = LayerWeights(c_tilde=np.zeros_like(weights.c_tilde),
                               w_out=weights.w_out, w_gate=weights.w_gate)
        rng = np.random.default_rng(1)
        out = layer_forward(config, weights, ssms,
                            SequenceBatch(rng.standard_normal((16, 1))))
        assert np.all(out.values == 0.0)

    def test_gate_value_at_unit_preactivation(self):
        # silu(1) = sigmoid(1); with W_gate = [[1]] and unit input the gate
        # multiplies the mixed output by exactly that scalar
        config, weights, ssms = self.small_layer()
        weights = LayerWeights(c_tilde=weights.c_tilde, w_out=np.eye(1),
                               w_gate=np.eye(1))
        z_in = SequenceBatch(np.ones((8, 1)))
        out = layer_forward(config, weights, ssms, z_in)
        states = np.concatenate([recur_scan(s, z_in) for s in ssms], axis=1)
        y = (states @ weights.c_tilde.T).real
        expected = y * (1.0 / (1.0 + math.exp(-1.0)))
        assert out.values == pytest.approx(expected, rel=1e-12)

    def test_scan_and_sequential_paths_agree(self):
        config, weights, ssms = self.small_layer(channels=3, width=2, out_width=2, seed=3)
        rng = np.random.default_rng(4)
        z_in = SequenceBatch(rng.standard_normal((64, 2)))
        out_scan = layer_forward(config, weights, ssms, z_in, scan=True)
        out_seq = layer_forward(config, weights, ssms, z_in, scan=False)
        assert out_scan.values == pytest.approx(out_seq.values, abs=1e-10)

    def test_shape_mismatch(self):
        config, weights, ssms = self.small_layer()
        with pytest.raises(ValueError):
            layer_forward(config, weights, ssms, SequenceBatch(np.zeros((4, 3))))
        with pytest.raises(ValueError):
            layer_forward(config, weights, ssms[:1], SequenceBatch(np.zeros((4, 1))))

    def test_feedthrough_matrix(self):
        config, weights, ssms = self.small_layer()
        weights = LayerWeights(c_tilde=np.zeros_like(weights.c_tilde),
                               w_out=np.eye(1), w_gate=np.eye(1),
                               d=np.array([[2.0]]))
        z_in = SequenceBatch(np.ones((4, 1)))
        out = layer_forward(config, weights, ssms, z_in)
        assert out.values == pytest.approx(2.0 / (1.0 + math.exp(-1.0)) * np.ones((4, 1)))


class TestSequenceBatch:
    def test_one_dimensional_promotes(self):
        batch = SequenceBatch(np.arange(4.0))
        assert batch.values.shape == (4, 1)
        assert batch.length == 4
        assert batch.width == 1

    def test_nonfinite_rejected(self):
        with pytest.raises(ValueError):
            SequenceBatch(np.array([[1.0], [np.nan]]))


def test_silu_values():
    assert silu(0.0) == pytest.approx(0.0)
    assert silu(1.0) == pytest.approx(1.0 / (1.0 + math.exp(-1.0)))
    assert silu(np.array([-50.0]))[0] == pytest.approx(0.0, abs=1e-20)
