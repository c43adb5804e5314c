import math

import numpy as np
import pytest

from majoranon.errors import ContractViolationError, DegenerateInputError, InvalidParameterError
from majoranon.evolvers import make_evolver
from majoranon.fields import GridSpec, LatticeField, SpinorField, gaussian_spinor, normalize
from majoranon.observables import (
    ObservableSeries,
    centroid,
    first_minimum,
    intensity_map,
    oscillation_amplitude,
    pseudo_energy,
    pseudo_energy_series,
    rms_width,
    total_variation,
)


def uniform(n=12):
    return normalize(SpinorField(np.ones(n), np.zeros(n)))


def test_pseudo_energy_examples():
    assert pseudo_energy(gaussian_spinor(GridSpec(13), 7, 1.1)) == pytest.approx(1.0)
    r = 1 / math.sqrt(2)
    assert pseudo_energy(SpinorField([r], [r * 1j])) == pytest.approx(0.0, abs=1e-15)


def test_pseudo_energy_half_period():
    mu = 0.65
    ev = make_evolver("majorana_composed", mu, 12)
    assert pseudo_energy(ev(uniform(), math.pi / (2 * mu))) == pytest.approx(-1.0, abs=1e-12)


def test_pseudo_energy_requires_normalized():
    with pytest.raises(ContractViolationError):
        pseudo_energy(SpinorField([2.0], [0.0]))


def test_series_examples():
    zetas = np.round(np.arange(0, 5.0001, 0.05), 12)
    dirac = pseudo_energy_series(make_evolver("dirac_plus", 0.65, 12), uniform(), zetas)
    assert np.allclose(dirac.values["pseudo_energy"], 1.0, atol=1e-12)
    maj = pseudo_energy_series(make_evolver("majorana_composed", 0.65, 12), uniform(), zetas, kappa=0.064)
    assert np.allclose(maj.values["pseudo_energy"], np.cos(1.3 * zetas), atol=1e-12)
    assert maj.z_mm[-1] == pytest.approx(5 / 0.064)
    assert len(maj) == zetas.size


def test_lowmass_series_positive_at_measurements():
    psi = gaussian_spinor(GridSpec(13), 7, 1.1)
    maj = pseudo_energy_series(make_evolver("majorana_composed", 0.65, 13), psi, [0.55, 4.4])
    dirac = pseudo_energy_series(make_evolver("dirac_plus", 0.65, 13), psi, [0.55, 4.4])
    assert np.all(maj.values["pseudo_energy"] > 0)
    # the Dirac packet deviates from 1 only through kinetic mixing
    assert np.all(dirac.values["pseudo_energy"] > maj.values["pseudo_energy"])


def test_series_validation():
    with pytest.raises(InvalidParameterError):
        ObservableSeries(zeta=[0, 1, 1])
    with pytest.raises(InvalidParameterError):
        ObservableSeries(zeta=[0, 1], values={"x": [1.0]})
    with pytest.raises(ContractViolationError):
        ObservableSeries(zeta=[0], values={"pseudo_energy": [1.5]})
    with pytest.raises(InvalidParameterError):
        ObservableSeries(zeta=[0, 1], maps={"m": np.zeros((3, 2))})
    assert ObservableSeries(zeta=[0.0]).z_mm is None


def lat(k, sites):
    a = np.zeros(k, complex)
    for s in sites:
        a[s - 1] = 1
    return normalize(LatticeField(a))


def test_centroid_examples():
    assert centroid(lat(9, [5])) == pytest.approx(5.0)
    assert centroid(lat(9, [3, 7])) == pytest.approx(5.0)
    assert centroid(gaussian_spinor(GridSpec(13), 7, 1.1)) == pytest.approx(7.0)


def test_rms_width_examples():
    assert rms_width(lat(9, [5])) == 0.0
    assert rms_width(lat(9, [3, 7])) == pytest.approx(2.0)
    with pytest.raises(DegenerateInputError):
        rms_width(LatticeField(np.zeros(4)))


def test_lowmass_spreads():
    psi = gaussian_spinor(GridSpec(13), 7, 1.1)
    ev = make_evolver("majorana_composed", 0.65, 13)
    assert rms_width(ev(psi, 4.4)) > rms_width(ev(psi, 0.55))


def test_amplitude_and_minimum():
    z = np.arange(0, 5.0001, 0.01)
    v = np.cos(2.0 * z)
    assert oscillation_amplitude(v) == pytest.approx(2.0, abs=1e-3)
    assert first_minimum(z, v) == pytest.approx(math.pi / 2, abs=1e-4)
    assert first_minimum(z, z) is None
    with pytest.raises(InvalidParameterError):
        oscillation_amplitude([])


def test_intensity_map():
    psi = gaussian_spinor(GridSpec(13), 7, 1.1)
    zetas = np.round(np.arange(0, 5.0001, 0.25), 12)
    m = intensity_map(make_evolver("majorana_composed", 0.65, 13), psi, zetas)
    i1, i2 = psi.intensities()
    assert np.allclose(m.comp1[0], i1) and np.allclose(m.comp2[0], i2)
    assert np.allclose(m.row_sums(), 1.0, atol=1e-9)
    # population swings into component 2 and back
    pop2 = m.comp2.sum(axis=1)
    assert pop2.max() > 0.3 and pop2[0] == 0
    assert m.sites.shape == (zetas.size, 26)
    assert np.array_equal(m.sites[:, 0::2], m.comp1)


def test_total_variation():
    a = (np.array([1.0, 0.0]), np.array([0.0, 0.0]))
    assert total_variation(a, a) == 0.0
    assert total_variation(a, (np.array([0.0, 0.0]), np.array([0.0, 2.0]))) == pytest.approx(1.0)
    with pytest.raises(DegenerateInputError):
        total_variation(a, (np.zeros(2), np.zeros(2)))
    with pytest.raises(InvalidParameterError):
        total_variation(a, (np.zeros(3),))
