import math

import numpy as np
import pytest

from gratingpaths import electron_grating as eg, photon_grating as pg, profile
from gratingpaths.profile import IntensityProfile


def test_refine_maximum_parabola():
    th = profile.refine_maximum(lambda x: -(x - 0.3) ** 2, 0.29, 0.05)
    assert abs(th - 0.3) < 1e-9


def test_refine_maximum_degenerate_interval():
    assert profile.refine_maximum(lambda x: x, 0.2, 0.1, low=0.5, high=0.5) == 0.2


def test_profile_shape_check():
    with pytest.raises(ValueError):
        IntensityProfile(np.zeros(3), np.zeros(4))


def test_photon_peaks_match_analytic_angles():
    cfg = pg.PhotonGratingConfig.reference()
    peaks = profile.photon_peaks(cfg, 0.0, math.radians(12.0))
    assert [p.order for p in peaks] == [0, 1, 2]
    analytic = pg.constructive_angles(cfg, 2)
    for pk, th in zip(peaks[1:], analytic):
        assert abs(pk.theta - th) < 1e-9
    assert abs(math.degrees(peaks[1].theta) - 5.0) < 0.01


def test_photon_peak_extinguished_by_full_strips():
    # with b = d the first order falls on a zero of the strip factor
    cfg = pg.PhotonGratingConfig.reference()
    peaks = profile.photon_peaks(cfg, 0.0, math.radians(6.0))
    assert peaks[1].intensity < 1e-6 * peaks[0].intensity


def test_photon_peak_bright_for_narrow_strips():
    cfg = pg.PhotonGratingConfig.reference(strip_width=3000.0)
    peaks = profile.photon_peaks(cfg, 0.0, math.radians(6.0))
    assert peaks[1].intensity > 0.1 * peaks[0].intensity


def test_photon_profile_infinite_lifetime():
    cfg = pg.PhotonGratingConfig.reference(lifetime=math.inf, strip_width=3000.0, n_strips=50)
    th = np.radians(np.linspace(0.0, 6.0, 101))
    prof = profile.photon_profile(cfg, th)
    assert np.all(np.isfinite(prof.intensity))
    assert np.allclose(prof.theta_deg, np.linspace(0.0, 6.0, 101))


def test_electron_peaks():
    cfg = eg.ElectronGratingConfig.reference()
    peaks = profile.electron_peaks(cfg, 0.0, 0.5 * math.pi)
    assert [p.order for p in peaks] == [0, 1]
    assert abs(peaks[1].theta - eg.first_maximum_angle(cfg)) < 1e-9
    assert math.isclose(peaks[1].intensity, cfg.n_rows ** 2, rel_tol=1e-9)


def test_electron_peaks_ev_orders():
    cfg = eg.ElectronGratingConfig.reference(hypothesis="EV")
    peaks = profile.electron_peaks(cfg, 0.0, math.radians(0.03))
    assert [p.order for p in peaks] == [0, 1, 2, 3]
    assert math.isclose(math.degrees(peaks[1].theta), 0.0094, rel_tol=5e-2)


def test_electron_peaks_without_physical_maximum():
    cfg = eg.ElectronGratingConfig.reference(row_spacing=0.1)
    peaks = profile.electron_peaks(cfg, -0.2, 1.5)
    assert [p.order for p in peaks] == [0]
    assert profile.electron_peaks(cfg, 0.1, 1.5) == []


def test_negative_angles_symmetric():
    cfg = eg.ElectronGratingConfig.reference()
    peaks = profile.electron_peaks(cfg, -0.5 * math.pi, 0.5 * math.pi)
    thetas = sorted(p.theta for p in peaks)
    assert len(thetas) == 3
    assert abs(thetas[0] + thetas[2]) < 1e-9


def test_electron_profile_values():
    cfg = eg.ElectronGratingConfig.reference()
    th = np.linspace(0.0, 1.5, 50)
    prof = profile.electron_profile(cfg, th)
    assert np.array_equal(prof.intensity, eg.dg_pattern(cfg, th))
