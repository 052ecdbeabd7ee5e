"""
Tests des potentiels de référence, du potentiel pénalisé et des sondes
"""
import dataclasses
import sys
from pathlib import Path

import numpy as np
import pytest
from pydantic import TypeAdapter

# Ajouter le répertoire parent au path
sys.path.insert(0, str(Path(__file__).parent.parent))

from app.core.errors import CapabilityError, InvalidArgumentError
from app.schemas.potential_schemas import TargetSpec
from app.services.potentials import SurrogatePotential, potential_checker, potential_service


def test_gaussian_value_and_gradient():
    potential = potential_service.make_gaussian_potential(1, [1.0])
    assert potential.value(np.array([2.0])) == pytest.approx(2.0)
    assert potential.grad(np.array([2.0])) == pytest.approx([2.0])

    isotropic = potential_service.make_gaussian_potential(3, [2.0, 2.0, 2.0])
    theta = np.ones(3)
    assert isotropic.value(theta) == pytest.approx(3.0)
    assert isotropic.grad(theta) == pytest.approx([2.0, 2.0, 2.0])
    assert isotropic.radial_profile is not None


def test_gaussian_extreme_eigenvalues():
    potential = potential_service.make_gaussian_potential(2, [1.0, 4.0])
    assert potential.M == 4.0
    assert potential.convexity.m == 1.0
    assert potential.is_quadratic
    assert potential.radial_profile is None


@pytest.mark.parametrize("precision", [[0.0], [-1.0], [float("nan")]])
def test_gaussian_rejects_nonpositive_precision(precision):
    with pytest.raises(InvalidArgumentError):
        potential_service.make_gaussian_potential(1, precision)


def test_capped_quadratic_branches():
    potential = potential_service.make_capped_quadratic_potential(2)
    direction = np.array([0.6, 0.8])
    assert potential.value(0.5 * direction) == pytest.approx(0.125)
    assert potential.value(2.0 * direction) == pytest.approx(2.0)
    assert potential.value(direction) == pytest.approx(0.5)
    # Saut de valeur sur la sphère unité, gradient continu
    assert potential.value((1.0 + 1e-12) * direction) == pytest.approx(1.0)

    inside = potential.grad((1.0 - 1e-12) * direction)
    outside = potential.grad((1.0 + 1e-12) * direction)
    assert np.linalg.norm(inside) == pytest.approx(1.0)
    assert np.linalg.norm(outside) == pytest.approx(1.0)
    assert inside == pytest.approx(outside, abs=1e-10)


def test_smoothed_huber_is_continuous_at_the_seam():
    potential = potential_service.make_smoothed_huber_potential(3, m=2.0, R=1.5)
    direction = np.array([1.0, 0.0, 0.0])
    below = potential.value((1.5 - 1e-9) * direction)
    above = potential.value((1.5 + 1e-9) * direction)
    assert below == pytest.approx(above, abs=1e-7)
    assert potential.grad(3.0 * direction) == pytest.approx([3.0, 0.0, 0.0])


@pytest.mark.parametrize("m,R", [(0.0, 1.0), (1.0, 0.0), (-1.0, 2.0)])
def test_smoothed_huber_rejects_nonpositive_parameters(m, R):
    with pytest.raises(InvalidArgumentError):
        potential_service.make_smoothed_huber_potential(2, m=m, R=R)


def test_surrogate_with_zero_penalty_is_the_base():
    base = potential_service.make_smoothed_huber_potential(4, m=1.0, R=1.0)
    surrogate = potential_service.surrogate(base, 0.0)
    rng = np.random.default_rng(3)
    for theta in rng.standard_normal((20, 4)):
        assert surrogate.value(theta) == base.value(theta)
        assert np.array_equal(surrogate.grad(theta), base.grad(theta))


def test_surrogate_adds_the_penalty():
    base = potential_service.make_gaussian_potential(1, [1.0])
    surrogate = SurrogatePotential(base, 1.0)
    for x in (-3.0, 0.5, 2.0):
        theta = np.array([x])
        assert surrogate.grad(theta) == pytest.approx([2.0 * x])
        assert surrogate.hess_vec(theta, np.array([1.0])) == pytest.approx([2.0])
    assert surrogate.M == 2.0
    assert surrogate.strong_convexity == 2.0


def test_surrogate_rejects_negative_penalty():
    base = potential_service.make_gaussian_potential(1, [1.0])
    with pytest.raises(InvalidArgumentError):
        potential_service.surrogate(base, -0.1)


def test_surrogate_strong_convexity_of_flat_target():
    base = potential_service.make_capped_quadratic_potential(3)
    assert SurrogatePotential(base, 0.3).strong_convexity == pytest.approx(0.3)


def test_missing_hessian_oracle_is_a_capability_error():
    base = dataclasses.replace(potential_service.make_capped_quadratic_potential(2), hess_vec=None)
    surrogate = SurrogatePotential(base, 0.1)
    assert not surrogate.has_hess_vec
    with pytest.raises(CapabilityError):
        surrogate.hess_vec(np.ones(2), np.ones(2))
    with pytest.raises(CapabilityError):
        potential_checker.probe_hessian_lipschitz(base, np.random.default_rng(0), 5)


@pytest.mark.parametrize("factory", [
    lambda: potential_service.make_gaussian_potential(3, [0.5, 1.0, 3.0]),
    lambda: potential_service.make_capped_quadratic_potential(3),
    lambda: potential_service.make_smoothed_huber_potential(3, m=1.5, R=0.8),
])
def test_gradient_oracles_match_finite_differences(factory):
    potential = factory()
    assert potential_checker.check_gradient(potential, np.random.default_rng(11), n_probes=30) < 1e-7


@pytest.mark.parametrize("factory", [
    lambda: potential_service.make_gaussian_potential(2, [0.5, 2.0]),
    lambda: potential_service.make_capped_quadratic_potential(2),
    lambda: potential_service.make_smoothed_huber_potential(2, m=1.5, R=0.8),
])
def test_lipschitz_and_convexity_probes(factory):
    potential = factory()
    rng = np.random.default_rng(5)
    assert potential_checker.probe_lipschitz(potential, rng, 200) <= potential.M * (1.0 + 1e-9)
    assert potential_checker.probe_monotone_gradient(potential, rng, 200) >= -1e-12


def test_hessian_lipschitz_probe_of_a_quadratic_is_zero():
    potential = potential_service.make_gaussian_potential(3, [1.0, 2.0, 3.0])
    assert potential_checker.probe_hessian_lipschitz(potential, np.random.default_rng(1), 50) == pytest.approx(0.0)


def test_build_potential_from_json_targets():
    adapter = TypeAdapter(TargetSpec)
    gaussian = potential_service.build_potential(adapter.validate_python({"kind": "gaussian", "p": 2, "precision": [1, 4]}))
    capped = potential_service.build_potential(adapter.validate_python({"kind": "capped_quadratic", "p": 3}))
    huber = potential_service.build_potential(adapter.validate_python({"kind": "smoothed_huber", "p": 2, "m": 1, "R": 2}))
    assert (gaussian.name, gaussian.M) == ("gaussian", 4.0)
    assert (capped.name, capped.p) == ("capped_quadratic", 3)
    assert huber.kink_radii == (2.0,)
