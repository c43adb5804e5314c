import math

import numpy as np
import pytest

from majoranon.errors import InvalidParameterError, ShapeError, UnsupportedBoundaryError
from majoranon.fields import Boundary, GridSpec, SpinorField, gaussian_spinor, normalize
from majoranon.integrate import rk4, step_count
from majoranon.observables import pseudo_energy
from majoranon.relativistic import (
    DimensionlessParams,
    MassSign,
    charge_conjugate,
    compose_majoranon,
    decompose_majoranon,
    dirac_evolve,
    dispersion,
    majorana_evolve_composed,
    majorana_evolve_reference,
    momentum_symbol,
)

N = 16
GRID = GridSpec(N)


def uniform(c1, c2, n=N):
    return normalize(SpinorField(np.full(n, c1, complex), np.full(n, c2, complex)))


def test_charge_conjugate_examples(make_spinor):
    assert charge_conjugate(SpinorField([1], [0])).allclose(SpinorField([0], [-1]))
    r = 1 / np.sqrt(2)
    fixed = SpinorField([r], [-r])
    assert charge_conjugate(fixed).allclose(fixed)
    psi = make_spinor(N)
    assert charge_conjugate(charge_conjugate(psi)).allclose(psi, atol=0)


def test_decompose_unit_spinor():
    plus, minus = decompose_majoranon(SpinorField([1], [0]))
    assert plus.allclose(SpinorField([0.5], [-0.5]), atol=1e-15)
    assert minus.allclose(SpinorField([-0.5j], [-0.5j]), atol=1e-15)


def test_decompose_parts_are_invariant(make_spinor):
    plus, minus = decompose_majoranon(make_spinor(N))
    assert charge_conjugate(plus).allclose(plus)
    assert charge_conjugate(minus).allclose(minus)


def test_decompose_invariant_input():
    psi = SpinorField([0.5, 0.5j], [-0.5, 0.5j])
    plus, minus = decompose_majoranon(psi)
    assert plus.allclose(psi) and np.all(np.abs(minus.as_array()) < 1e-15)


def test_compose_round_trip(make_spinor):
    psi = make_spinor(N)
    assert compose_majoranon(*decompose_majoranon(psi)).allclose(psi, atol=1e-14)
    assert compose_majoranon(SpinorField([0.5], [-0.5]), SpinorField([-0.5j], [-0.5j])).allclose(SpinorField([1], [0]))
    plus = SpinorField([0.3], [0.1])
    assert compose_majoranon(plus, SpinorField([0], [0])).allclose(plus)


def test_compose_shape_mismatch():
    with pytest.raises(ShapeError):
        compose_majoranon(SpinorField([1, 0], [0, 0]), SpinorField([1], [0]))


@pytest.mark.parametrize("mu, q, e", [(0, 1, 1), (3, 4, 5), (0.65, 0, 0.65)])
def test_dispersion(mu, q, e):
    assert dispersion(mu, q) == pytest.approx((e, -e))


def test_dirac_rest_eigenstate():
    mu, zeta = 0.65, 1.7
    out = dirac_evolve(uniform(1, 0), MassSign.PLUS, DimensionlessParams(mu, zeta), GRID)
    expected = uniform(1, 0).as_array() * np.exp(-1j * mu * zeta)
    assert np.allclose(out.as_array(), expected, atol=1e-13)
    assert pseudo_energy(out) == pytest.approx(1.0, abs=1e-13)


def test_dirac_identity_at_zero(make_spinor):
    psi = make_spinor(N)
    for s in MassSign:
        assert dirac_evolve(psi, s, DimensionlessParams(0.0, 0.0), GRID).allclose(psi, atol=1e-14)


def test_dirac_massless_helicity():
    j = 3
    q = 2 * np.pi * j / N
    n = np.arange(1, N + 1)
    wave = np.exp(1j * q * n)
    psi = normalize(SpinorField(wave, wave))
    zeta = 1.3
    out = dirac_evolve(psi, MassSign.PLUS, DimensionlessParams(0.0, zeta), GRID)
    assert np.allclose(out.as_array(), psi.as_array() * np.exp(-1j * q * zeta), atol=1e-13)


def test_nyquist_symbol_zeroed():
    assert momentum_symbol(8)[4] == 0
    assert np.all(momentum_symbol(7) != 0) or momentum_symbol(7)[0] == 0
    with pytest.raises(InvalidParameterError):
        momentum_symbol(8, "bogus")


def test_dirac_requires_periodic():
    psi = uniform(1, 0)
    with pytest.raises(UnsupportedBoundaryError):
        dirac_evolve(psi, 1, DimensionlessParams(1, 1), GridSpec(N, Boundary.OPEN))
    with pytest.raises(ShapeError):
        dirac_evolve(psi, 1, DimensionlessParams(1, 1), GridSpec(N + 1))


def test_reference_p0_analytic():
    mu, zeta = 0.65, 1.1
    out = majorana_evolve_reference(uniform(1, 0), DimensionlessParams(mu, zeta), GRID, 1e-3)
    expected = uniform(1, 0).as_array() * 1.0
    expected = np.stack([expected[0] * math.cos(mu * zeta), -1j * expected[0] * math.sin(mu * zeta)])
    assert np.allclose(out.as_array(), expected, atol=1e-12)


def test_reference_identity(make_spinor):
    psi = make_spinor(N)
    assert majorana_evolve_reference(psi, DimensionlessParams(0.8, 0.0), GRID, 1e-3).allclose(psi, atol=0)


def test_reference_matches_composed(make_spinor):
    psi = make_spinor(N)
    p = DimensionlessParams(0.65, 2.0)
    ref = majorana_evolve_reference(psi, p, GRID, 1e-3)
    assert ref.allclose(majorana_evolve_composed(psi, p, GRID), atol=1e-8)


def test_reference_bad_step():
    with pytest.raises(InvalidParameterError):
        majorana_evolve_reference(uniform(1, 0), DimensionlessParams(1, 1), GRID, 0.0)


def test_composed_collapses_for_invariant_input():
    plus, _ = decompose_majoranon(gaussian_spinor(GRID, 8, 2.0))
    psi = normalize(plus)
    p = DimensionlessParams(0.9, 1.4)
    assert majorana_evolve_composed(psi, p, GRID).allclose(dirac_evolve(psi, MassSign.PLUS, p, GRID), atol=1e-13)


def test_composed_half_period():
    mu = 0.65
    zeta = math.pi / (2 * mu)
    out = majorana_evolve_composed(uniform(1, 0), DimensionlessParams(mu, zeta), GRID)
    assert np.allclose(out.as_array(), uniform(0, -1j).as_array(), atol=1e-13)
    assert pseudo_energy(out) == pytest.approx(-1.0, abs=1e-13)


def test_params_validation_and_units():
    with pytest.raises(InvalidParameterError):
        DimensionlessParams(-1, 0)
    p = DimensionlessParams.from_physical(0.65 * 0.064, 0.064, 8.59375)
    assert p.mu == pytest.approx(0.65) and p.zeta == pytest.approx(0.55)
    assert p.z_mm(0.064) == pytest.approx(8.59375)


def test_rk4_exponential_and_checkpoints():
    out = rk4(lambda y: -y, np.array([1.0]), 1.0, 0.01)
    assert out[0] == pytest.approx(math.exp(-1), rel=1e-9)
    snaps = rk4(lambda y: -y, np.array([1.0]), 2.0, 0.01, [0.5, 2.0])
    assert [s[0] for s in snaps] == pytest.approx([math.exp(-0.5), math.exp(-2)], rel=1e-9)
    assert step_count(2.0, 1e-3) == 2000
