import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from hypothesis.extra.numpy import arrays

from mfcc_tsm.exceptions import SignalError
from mfcc_tsm.signal import (FrameParams, ResampleSpec, Signal, Window,
                             alias_spectrum, anti_alias_taps, apply_window,
                             decimate, dft, frame_signal, interpolate_zeros,
                             resample, stft)
from oracles import direct_dft

finite = st.floats(-1e3, 1e3, allow_nan=False)


def sig(x, rate=16000.0):
    return Signal(np.asarray(x, dtype=float), rate)


class TestFraming:
    def test_exactly_one_frame(self):
        assert frame_signal(sig(np.zeros(512)), FrameParams(512, 256)).shape == (1, 512)

    def test_frame_count_and_starts(self):
        x = np.arange(1024.0)
        frames = frame_signal(sig(x), FrameParams(512, 256))
        assert frames.shape == (3, 512)
        assert [f[0] for f in frames] == [0, 256, 512]

    def test_tail_dropped(self):
        frames = frame_signal(sig(np.arange(1000.0)), FrameParams(512, 256))
        # (1000 - 512) // 256 + 1
        assert frames.shape[0] == 2

    def test_too_short(self):
        with pytest.raises(SignalError, match="signal too short"):
            frame_signal(sig(np.zeros(511)), FrameParams(512, 256))

    @pytest.mark.parametrize("frame_len,hop", [(512, 0), (512, 513), (511, 200)])
    def test_bad_params(self, frame_len, hop):
        with pytest.raises(SignalError):
            FrameParams(frame_len, hop)


class TestWindow:
    def test_paper_hamming_endpoints(self):
        w = apply_window(np.ones(512), Window.PAPER_HAMMING)
        assert w[0] == pytest.approx(0.08, abs=1e-15)
        assert w[256] == pytest.approx(0.54, abs=1e-15)

    def test_standard_hamming_symmetric(self):
        w = apply_window(np.ones(64), Window.STANDARD_HAMMING)
        np.testing.assert_allclose(w, w[::-1], atol=1e-15)
        assert w[0] == pytest.approx(0.08)

    def test_rectangular_identity(self, rng):
        x = rng.normal(size=32)
        np.testing.assert_array_equal(apply_window(x, Window.RECTANGULAR), x)


class TestDFT:
    def test_impulse(self):
        x = np.zeros(16)
        x[0] = 1
        np.testing.assert_allclose(dft(x), np.ones(16), atol=1e-15)

    def test_constant(self):
        c, n = 0.7, 64
        X = dft(np.full(n, c))
        assert abs(X[0] - n * c) < 1e-9 * n * c
        assert np.max(np.abs(X[1:])) < 1e-9 * n * c

    def test_matches_direct_sum(self, rng):
        x = rng.normal(size=16)
        expected = direct_dft(x)
        err = np.max(np.abs(dft(x) - expected)) / np.max(np.abs(expected))
        assert err < 1e-9

    @settings(max_examples=50, deadline=None)
    @given(arrays(float, st.sampled_from([8, 16, 32]), elements=finite))
    def test_parseval(self, x):
        X = dft(x)
        energy = np.sum(x ** 2)
        assert np.sum(np.abs(X) ** 2) / x.size == pytest.approx(
            energy, rel=1e-9, abs=1e-9)


class TestSTFT:
    def test_tone_peak(self):
        n, k0 = 64, 5
        x = np.cos(2 * np.pi * k0 * np.arange(n) / n)
        spec = stft(sig(x, 64.0), FrameParams(n, n // 2, Window.RECTANGULAR))
        mags = spec.magnitudes[:, 0]
        assert np.argmax(mags[: n // 2]) == k0
        # geometric series: N/2 at +-k0, zero elsewhere
        assert mags[k0] == pytest.approx(n / 2)
        others = np.delete(mags, [k0, n - k0])
        assert np.max(others) < 1e-12

    def test_zero_signal(self):
        spec = stft(sig(np.zeros(2048)), FrameParams(512, 256))
        assert spec.bins.shape == (512, 7)
        assert not spec.magnitudes.any()

    def test_conjugate_symmetry(self, rng):
        spec = stft(sig(rng.normal(size=1024)), FrameParams(256, 128))
        m = spec.magnitudes
        np.testing.assert_allclose(m[1:], m[:0:-1], rtol=1e-12)

    def test_magnitudes_are_moduli(self, rng):
        spec = stft(sig(rng.normal(size=1024)), FrameParams(256, 128))
        np.testing.assert_array_equal(spec.magnitudes, np.abs(spec.bins))

    def test_frame_counts_match_after_decimation(self, rng):
        x = sig(rng.normal(size=512 * 9))
        p = FrameParams(512, 256)
        assert (stft(x, p).n_frames
                == stft(decimate(x, 2), p.scaled(2)).n_frames)


class TestResampling:
    def test_decimate_footnote(self):
        n = 5
        x = np.arange(1, 2 ** n + 1, dtype=float)
        y = decimate(sig(x), 2)
        np.testing.assert_array_equal(y.samples, np.arange(1, 2 ** n, 2))
        assert y.sample_rate_hz == 8000

    def test_decimate_identity(self, rng):
        x = rng.normal(size=10)
        np.testing.assert_array_equal(decimate(sig(x), 1).samples, x)

    def test_decimate_by_three(self):
        y = decimate(sig(np.arange(7.0)), 3)
        np.testing.assert_array_equal(y.samples, [0, 3, 6])

    def test_interpolate(self):
        np.testing.assert_array_equal(
            interpolate_zeros(sig([1, 2, 3]), 3).samples,
            [1, 0, 0, 2, 0, 0, 3, 0, 0])
        np.testing.assert_array_equal(
            interpolate_zeros(sig([4.0, 5.0]), 2).samples, [4, 0, 5, 0])
        assert interpolate_zeros(sig([1.0]), 4).sample_rate_hz == 64000

    def test_interpolate_identity(self):
        np.testing.assert_array_equal(interpolate_zeros(sig([1, 2]), 1).samples,
                                      [1, 2])

    @given(arrays(float, st.integers(1, 40), elements=finite),
           st.integers(1, 5))
    def test_decimate_undoes_interpolate(self, x, p):
        out = decimate(interpolate_zeros(sig(x), p), p)
        np.testing.assert_array_equal(out.samples, x)
        assert out.sample_rate_hz == 16000

    def test_resample_down_only(self, rng):
        x = sig(rng.normal(size=33))
        np.testing.assert_array_equal(resample(x, ResampleSpec(1, 2)).samples,
                                      decimate(x, 2).samples)

    def test_resample_equal_factors(self, rng):
        x = rng.normal(size=33)
        out = resample(sig(x), ResampleSpec(2, 2))
        np.testing.assert_array_equal(out.samples, x)
        assert out.sample_rate_hz == 16000

    def test_resample_two_thirds(self):
        out = resample(sig(np.arange(1.0, 13.0)), ResampleSpec(2, 3))
        np.testing.assert_array_equal(out.samples, [1, 0, 4, 0, 7, 0, 10, 0])
        assert out.sample_rate_hz == pytest.approx(16000 * 2 / 3)

    def test_anti_alias_filter_design(self):
        taps = anti_alias_taps(2, 3)
        assert taps.size == 63
        assert taps.sum() == pytest.approx(1.0)
        np.testing.assert_allclose(taps, taps[::-1])

    def test_anti_alias_removes_high_tone(self):
        n = 4096
        t = np.arange(n) / 16000
        low = np.sin(2 * np.pi * 500 * t)
        high = np.sin(2 * np.pi * 7000 * t)
        out = resample(sig(low + high), ResampleSpec(1, 2, anti_alias=True))
        ref = decimate(sig(low), 2).samples
        core = slice(64, -64)
        assert np.max(np.abs(out.samples[core] - ref[core])) < 0.02

    def test_bad_factor(self):
        with pytest.raises(SignalError):
            ResampleSpec(0, 2)
        with pytest.raises(SignalError):
            decimate(sig([1.0]), 0)


class TestAliasSpectrum:
    def test_identity(self, rng):
        X = dft(rng.normal(size=16))
        np.testing.assert_array_equal(alias_spectrum(X, 1), X)

    def test_half_sum(self, rng):
        X = dft(rng.normal(size=512))
        Y = alias_spectrum(X, 2)
        k = np.arange(256)
        np.testing.assert_allclose(Y, 0.5 * (X[k] + X[k + 256]), rtol=1e-15)

    def test_matches_decimated_dft(self, rng):
        x = rng.normal(size=16)
        lhs = alias_spectrum(direct_dft(x), 2)
        rhs = direct_dft(x[::2])
        assert np.max(np.abs(lhs - rhs)) / np.max(np.abs(rhs)) < 1e-9

    @pytest.mark.parametrize("alpha", [2, 4])
    @settings(max_examples=25, deadline=None)
    @given(x=arrays(float, st.sampled_from([16, 32, 64]),
                    elements=st.floats(-1, 1)))
    def test_scaling_property(self, alpha, x):
        expected = dft(x[::alpha])
        got = alias_spectrum(dft(x), alpha)
        scale = max(np.max(np.abs(expected)), 1e-300)
        assert np.max(np.abs(got - expected)) <= 1e-9 * scale + 1e-12

    def test_alpha_must_divide(self):
        with pytest.raises(SignalError):
            alias_spectrum(np.zeros(10, complex), 3)


def test_signal_is_immutable():
    s = sig([1.0, 2.0])
    with pytest.raises(ValueError):
        s.samples[0] = 3
