import math
from pathlib import Path

import numpy as np
import pytest

import mrcarray as mrc

PRESETS = Path(__file__).resolve().parents[2] / "presets"


def fig4_coils(n, r=10.0):
    return [mrc.CoilCircuit(10e-6, 150e-12, r) for _ in range(n)]


def test_three_coil_modes():
    modes = mrc.solve_modes(mrc.build_linear_chain(fig4_coils(3), 0.14))
    f0 = 1.0 / (2 * math.pi * math.sqrt(10e-6 * 150e-12))
    expected = sorted(f0 / math.sqrt(1 + s * math.sqrt(2) * 0.14) for s in (-1, 0, 1))
    assert np.allclose(modes.frequencies_hz, expected, rtol=1e-12)
    assert np.allclose(modes.mode_shapes[:, 1], [1.0, 0.0, -1.0], atol=1e-12)


def test_sweep_and_peaks():
    array = mrc.build_linear_chain(fig4_coils(5), 0.14)
    result = mrc.sweep(array, 0, 3e6, 5.5e6, 500)
    z = np.asarray(result.input_impedance)
    assert z.shape == (500,)
    assert np.all(z.real >= -1e-12 * np.abs(z))
    assert result.element_voltages.shape == (5, 500)
    assert len(mrc.locate_peaks(array, 0, 3e6, 5.5e6)) == 5
    assert len(mrc.locate_peaks(array, 2, 3e6, 5.5e6)) == 3


def test_fit_round_trip():
    coils = fig4_coils(3)
    observed = mrc.solve_modes(mrc.build_linear_chain(coils, 0.2)).frequencies_hz
    fit = mrc.fit_coupling(observed, coils)
    assert fit.k == pytest.approx(0.2, abs=1e-6)
    assert fit.method == "least_squares"


def test_split_identity():
    pair = mrc.identical_coupled_frequencies(10e-6, 150e-12, 0.14)
    assert mrc.estimate_k_from_split(pair.omega_plus, pair.omega_minus) == pytest.approx(0.14, abs=1e-12)


def test_presets_load():
    cfg = mrc.load_config(PRESETS / "table1_experimental.json")
    assert cfg.name == "table1_experimental"
    freqs = mrc.solve_modes(cfg.build()).frequencies_hz
    assert all(0.5e6 <= f <= 1.5e6 for f in freqs)


def test_errors_raise():
    coils = fig4_coils(2)
    with pytest.raises(mrc.MrcError, match="NonSymmetricCoupling"):
        mrc.validate_array(coils, np.array([[1.0, 0.2], [0.3, 1.0]]))
    with pytest.raises(ValueError):
        mrc.build_linear_chain(coils, 1.5)
