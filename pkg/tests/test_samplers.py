"""
Tests des itérations LMC / KLMC / KLMC2 et de l'exécution des chaînes
"""
import dataclasses
import math
import sys
from pathlib import Path

import numpy as np
import pytest
from pydantic import ValidationError

# Ajouter le répertoire parent au path
sys.path.insert(0, str(Path(__file__).parent.parent))

from app.core.errors import CapabilityError, DivergenceError, InvalidArgumentError
from app.schemas.sampler_schemas import SamplerAlgorithm, SamplerConfig
from app.services.kinetic import covariance_builder, kernel_calculator
from app.services.potentials import PotentialSpec, SurrogatePotential, potential_service
from app.services.samplers import langevin_steps, make_generator, sampler_runner
from app.schemas.potential_schemas import ConvexityClass, ConvexityKind


def flat_potential(p: int) -> PotentialSpec:
    return PotentialSpec(
        p=p,
        value=lambda theta: 0.0,
        grad=lambda theta: np.zeros_like(theta),
        hess_vec=lambda theta, v: np.zeros_like(v),
        M=0.0,
        convexity=ConvexityClass(kind=ConvexityKind.CONVEX),
        name="flat",
    )


def test_lmc_drift_only_step():
    surrogate = SurrogatePotential(potential_service.make_gaussian_potential(1, [1.0]), 0.0)
    new = langevin_steps.lmc_step(np.array([1.0]), surrogate, 0.1, np.zeros(1))
    assert new == pytest.approx([0.9])


def test_lmc_penalty_only_shrinkage():
    surrogate = SurrogatePotential(flat_potential(1), 0.5)
    new = langevin_steps.lmc_step(np.array([2.0]), surrogate, 0.1, np.zeros(1))
    assert new == pytest.approx([1.9])


def test_klmc_free_kinetic_flow():
    surrogate = SurrogatePotential(flat_potential(1), 0.0)
    kernels = kernel_calculator.eval_kernels(1.0, 1.0)
    cov = covariance_builder.noise_covariance(1.0, 1.0)
    v, theta = langevin_steps.klmc_step((np.array([1.0]), np.array([0.0])), surrogate, kernels, cov, np.zeros((1, 4)))
    assert v == pytest.approx([math.exp(-1.0)], rel=1e-14)
    assert theta == pytest.approx([1.0 - math.exp(-1.0)], rel=1e-14)


def test_klmc_step_is_first_order_in_h():
    surrogate = SurrogatePotential(potential_service.make_gaussian_potential(2, [1.0, 3.0]), 0.1)
    state = (np.array([0.5, -1.0]), np.array([1.0, 2.0]))
    moves = []
    for h in (1e-3, 5e-4):
        kernels = kernel_calculator.eval_kernels(2.0, h)
        cov = covariance_builder.noise_covariance(2.0, h)
        v, theta = langevin_steps.klmc_step(state, surrogate, kernels, cov, np.zeros((2, 4)))
        moves.append((np.linalg.norm(v - state[0]), np.linalg.norm(theta - state[1])))
    assert moves[0][0] / moves[1][0] == pytest.approx(2.0, rel=1e-2)
    assert moves[0][1] / moves[1][1] == pytest.approx(2.0, rel=1e-2)


def test_klmc2_fixed_point():
    surrogate = SurrogatePotential(flat_potential(3), 0.0)
    kernels = kernel_calculator.eval_kernels(1.0, 0.3)
    cov = covariance_builder.noise_covariance(1.0, 0.3)
    theta = np.array([1.0, -2.0, 0.5])
    v, new_theta = langevin_steps.klmc2_step((np.zeros(3), theta), surrogate, kernels, cov, np.zeros((3, 4)))
    assert np.array_equal(v, np.zeros(3))
    assert np.array_equal(new_theta, theta)


def test_step_divergence_reports_the_step():
    surrogate = SurrogatePotential(potential_service.make_gaussian_potential(1, [1.0]), 0.0)
    with pytest.raises(DivergenceError) as info:
        langevin_steps.lmc_step(np.array([1.0]), surrogate, 0.1, np.array([np.inf]), step=7)
    assert info.value.step == 7
    assert info.value.last_state == pytest.approx([1.0])


def test_zero_steps_keep_only_the_initial_state():
    potential = potential_service.make_gaussian_potential(2, [1.0, 1.0])
    config = SamplerConfig(algorithm="klmc", alpha=0.1, h=0.1, gamma=1.5, steps=0, seed=3, initial_theta=[1.0, 2.0])
    trajectory = sampler_runner.run(config, potential)
    assert trajectory.steps.tolist() == [0]
    assert trajectory.final_state == pytest.approx([1.0, 2.0])


@pytest.mark.parametrize("algorithm", ["lmc", "klmc", "klmc2"])
def test_trajectories_are_reproducible(algorithm):
    potential = potential_service.make_smoothed_huber_potential(3, m=1.0, R=1.0)
    config = SamplerConfig(algorithm=algorithm, alpha=0.05, h=0.05, gamma=1.2, steps=2500, seed=42, thin=100)
    first = sampler_runner.run(config, potential, chain_id=4)
    second = sampler_runner.run(config, potential, chain_id=4)
    other = sampler_runner.run(config, potential, chain_id=5)
    assert np.array_equal(first.states, second.states)
    assert first.rng_draw_count == second.rng_draw_count
    assert not np.array_equal(first.final_state, other.final_state)
    assert first.steps.tolist() == list(range(0, 2501, 100))


def test_thinning_always_keeps_the_final_state():
    potential = potential_service.make_gaussian_potential(1, [1.0])
    config = SamplerConfig(algorithm="lmc", h=0.1, steps=25, seed=1, thin=10)
    trajectory = sampler_runner.run(config, potential)
    assert trajectory.steps.tolist() == [0, 10, 20, 25]
    assert trajectory.rng_draw_count == 25


def test_kinetic_draw_count():
    potential = potential_service.make_gaussian_potential(2, [1.0, 2.0])
    config = SamplerConfig(algorithm="klmc", h=0.1, gamma=2.0, steps=1500, seed=1)
    assert sampler_runner.run(config, potential).rng_draw_count == 2 + 1500 * 2 * 4


def test_klmc2_with_zero_hessian_matches_klmc_bitwise():
    base = potential_service.make_capped_quadratic_potential(2)
    potential = dataclasses.replace(base, hess_vec=lambda theta, v: np.zeros_like(v))
    common = dict(alpha=0.0, h=0.1, gamma=1.5, steps=300, seed=9, initial_theta=[0.3, -1.2])
    klmc = sampler_runner.run(SamplerConfig(algorithm="klmc", **common), potential)
    klmc2 = sampler_runner.run(SamplerConfig(algorithm="klmc2", **common), potential)
    assert np.array_equal(klmc.states, klmc2.states)
    assert np.array_equal(klmc.velocities, klmc2.velocities)


def test_klmc2_needs_a_hessian_oracle():
    potential = dataclasses.replace(potential_service.make_capped_quadratic_potential(2), hess_vec=None)
    config = SamplerConfig(algorithm="klmc2", h=0.1, gamma=1.0, steps=5)
    with pytest.raises(CapabilityError):
        sampler_runner.run(config, potential)


def test_unstable_step_diverges():
    potential = potential_service.make_gaussian_potential(1, [1.0])
    config = SamplerConfig(algorithm="lmc", h=1000.0, steps=1000, seed=0, initial_theta=[1.0])
    with np.errstate(over="ignore", invalid="ignore"):
        with pytest.raises(DivergenceError) as info:
            sampler_runner.run(config, potential)
    assert 0 < info.value.step < 1000
    assert np.all(np.isfinite(info.value.last_state))


def test_config_validation():
    with pytest.raises(ValidationError):
        SamplerConfig(algorithm="klmc", h=0.1, steps=10)
    with pytest.raises(ValidationError):
        SamplerConfig(algorithm="lmc", h=0.0, steps=10)
    with pytest.raises(ValidationError):
        SamplerConfig(algorithm="lmc", h=0.1, steps=10, seed=2 ** 64)
    assert SamplerAlgorithm("klmc2").is_kinetic


def test_initial_theta_dimension_is_checked():
    potential = potential_service.make_gaussian_potential(2, [1.0, 1.0])
    config = SamplerConfig(algorithm="lmc", h=0.1, steps=1, initial_theta=[0.0, 0.0, 0.0])
    with pytest.raises(InvalidArgumentError):
        sampler_runner.run(config, potential)


def test_parallel_chains_are_ordered_and_thread_independent():
    potential = potential_service.make_gaussian_potential(2, [1.0, 2.0])
    config = SamplerConfig(algorithm="klmc", alpha=0.01, h=0.1, gamma=1.5, steps=200, seed=77)
    single = sampler_runner.run_chains(config, potential, 6, threads=1)
    pooled = sampler_runner.run_chains(config, potential, 6, threads=4)
    assert [t.chain_id for t in pooled] == list(range(6))
    assert np.array_equal(sampler_runner.final_states(single), sampler_runner.final_states(pooled))
    assert np.array_equal(pooled[2].final_state, sampler_runner.run(config, potential, chain_id=2).final_state)


def test_generator_streams():
    a = make_generator(5, 0).standard_normal(4)
    assert np.array_equal(a, make_generator(5, 0).standard_normal(4))
    assert not np.array_equal(a, make_generator(5, 1).standard_normal(4))
    assert not np.array_equal(a, make_generator(6, 0).standard_normal(4))
    with pytest.raises(InvalidArgumentError):
        make_generator(5, -1)
