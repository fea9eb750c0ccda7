"""Tests for lifting random-replacement urns to deterministic ones."""

import os

import pytest

from measures.errors import AlreadyDeterministic, CouplingBroken, InvalidParams
from measures.measure import FiniteMeasure, is_product_form, product_with_uniform, project
from measures.signed import SignedAtomicMeasure
from measures.spaces import ColourSet, Finite, Index, Pair, Product
from kernels.admissibility import LiftedAdmissibility
from kernels.kernel import RandomKernel, eval_deterministic, eval_random
from models.classical import eggenberger_polya
from models.randomized import friedman_random, lattice_walk, random_matrix_urn
from models.removal import random_without_replacement
from simulation.lift import coupled_run, coupled_runs, distributional_compare, lift_spec
from simulation.process import UrnSpec, run
from simulation.rng import RandomnessStream
from simulation.statistics import Final, Fraction, LastDrawCoordinate, Mass

F2 = Finite(2)
SHARE_OF_ZERO = Final(Fraction(ColourSet.of(Index(0))))
WORKERS = os.cpu_count() or 1


class Alternating:
    """Random kernel rule that ignores u and alternates its answer."""

    def __init__(self):
        self.calls = 0

    def __call__(self, colour, u):
        self.calls += 1
        return FiniteMeasure.atomic(F2, {Index(self.calls % 2): 1.0})


def mixing_urn():
    law = [[([1, 1], 0.5), ([0, 1], 0.5)], [([1, 0], 0.5), ([2, 0], 0.5)]]
    return random_without_replacement(2, law, [5, 5])


class TestLiftSpec:
    """Test the lifted urn."""

    def test_lifted_space_and_start(self):
        """Test S x [0,1] and X_0 x lambda."""
        spec = friedman_random(0.3)
        lifted = lift_spec(spec)
        assert lifted.space == Product(F2)
        assert lifted.x0 == product_with_uniform(spec.x0)
        assert lifted.x0.total == 2.0
        assert is_product_form(lifted.x0)

    def test_lifted_kernel_is_deterministic(self):
        """Test the lifted kernel and its carried balance."""
        lifted = lift_spec(friedman_random(0.3))
        assert not lifted.kernel.is_random
        assert lifted.kernel.declared_balance == 1.0
        assert lifted.kernel.name == "friedman×λ"

    def test_lifted_kernel_value(self):
        """Test (s, u) -> f(s, u) x lambda at a copy branch."""
        lifted = lift_spec(friedman_random(0.3))
        replacement = eval_deterministic(lifted.kernel, Pair(Index(0), 0.1))
        assert replacement == product_with_uniform(FiniteMeasure.atomic(F2, {Index(0): 1.0}))

    def test_projection_recovers_random_kernel(self):
        """Test project(f(s, u) x lambda) = f(s, u) on sampled colours."""
        spec = random_matrix_urn([[([1, 0], 0.25), ([0, 2], 0.75)], [([1, 1], 1.0)]], [1, 1])
        lifted = lift_spec(spec)
        stream = RandomnessStream(8)
        for i in range(50):
            s = Index(i % 2)
            u = stream.block(i).kernel_u
            assert project(eval_deterministic(lifted.kernel, Pair(s, u))) == eval_random(spec.kernel, s, u)

    def test_deterministic_urn_raises(self):
        """Test that deterministic urns are not lifted."""
        with pytest.raises(AlreadyDeterministic):
            lift_spec(eggenberger_polya())

    def test_removal_urn_lift(self):
        """Test the lift of a removal urn keeps signed replacements."""
        lifted = lift_spec(mixing_urn())
        assert isinstance(lifted.admissibility, LiftedAdmissibility)
        replacement = eval_deterministic(lifted.kernel, Pair(Index(0), 0.9))
        assert isinstance(replacement, SignedAtomicMeasure)
        assert replacement.lifts == 1
        assert replacement.space == Product(F2)

    def test_lifted_removal_urn_runs(self):
        """Test the lifted removal urn stays in its admissible set."""
        lifted = lift_spec(mixing_urn())
        traj = run(lifted, 40, seed=2, keep_states=True)
        assert all(lifted.admissibility(mu) for mu in traj.states)


class TestProductForm:
    """Test lifted urns stay of the form mu x lambda under generic runs."""

    @pytest.mark.parametrize("spec", [
        friedman_random(0.4),
        random_matrix_urn([[([1, 0], 0.5), ([1, 1], 0.5)], [([0, 1], 0.5), ([1, 1], 0.5)]], [1, 2]),
        lattice_walk(2, [([1, 0], 0.25), ([-1, 0], 0.25), ([0, 1], 0.25), ([0, -1], 0.25)]),
    ], ids=["friedman", "random_matrix", "lattice_walk"])
    def test_every_state_is_a_product(self, spec):
        """Test 20 seeds x 500 steps."""
        lifted = lift_spec(spec)
        for seed in range(20):
            traj = run(lifted, 500, seed=seed, keep_states=True)
            assert all(is_product_form(mu) for mu in traj.states)

    def test_projected_trajectory(self):
        """Test statistics of the projected run."""
        lifted = lift_spec(lattice_walk(1))
        traj = run(lifted, 10, seed=1)
        projected = traj.projected()
        assert all(isinstance(c, Pair) for c in traj.draws)
        assert projected.draws == [c.base for c in traj.draws]
        assert projected.final == project(traj.final)
        assert LastDrawCoordinate()(projected) == float(traj.draws[-1].base.coords[0])


class TestCoupledRun:
    """Test pathwise coupling of an urn and its lift."""

    def test_zero_steps(self):
        """Test project(X~_0) = X_0."""
        coupled = coupled_run(friedman_random(0.5), 0)
        assert project(coupled.lifted.final) == coupled.base.final
        assert coupled.max_projection_error == 0.0

    def test_draws_share_randomness(self):
        """Test the lifted chain draws (s, u) for the base draw s and kernel uniform u."""
        coupled = coupled_run(friedman_random(0.5), 30, seed=4)
        stream = RandomnessStream(4)
        expected = [Pair(s, stream.block(k).kernel_u) for k, s in enumerate(coupled.base.draws)]
        assert coupled.lifted.draws == expected

    def test_lifted_state_is_product_of_base(self):
        """Test X~_n = X_n x lambda pathwise."""
        coupled = coupled_run(friedman_random(0.3), 100, seed=9)
        assert coupled.lifted.final == product_with_uniform(coupled.base.final)

    def test_masses_agree(self):
        """Test mass(X~_n) = mass(X_n) at every step."""
        coupled = coupled_run(friedman_random(0.5), 50, seed=1, record=(Mass(),))
        assert coupled.lifted.masses() == coupled.base.masses()

    def test_degenerate_kernel(self):
        """Test a random kernel that does not use u."""
        spec = random_matrix_urn([[([1, 0], 1.0)], [([0, 1], 1.0)]], [1, 1])
        coupled = coupled_run(spec, 60, seed=2)
        assert coupled.lifted.final == product_with_uniform(coupled.base.final)
        assert coupled.base.final == run(eggenberger_polya(1.0, (1, 1)), 60, seed=2).final

    def test_many_seeds(self):
        """Test 100 seeds x 200 steps without a broken coupling."""
        report = coupled_runs(friedman_random(0.5), 200, seeds=100)
        assert report["pass"]
        assert report["seeds"] == 100
        assert report["steps"] == 200
        assert report["max_projection_error"] <= 1e-9

    @pytest.mark.parametrize("p", [0.0, 1.0])
    def test_degenerate_probabilities(self, p):
        """Test p = 0 and p = 1 couple exactly."""
        report = coupled_runs(friedman_random(p), 50, seeds=5)
        assert report["pass"]
        assert report["max_projection_error"] == 0.0

    def test_parallel_seeds(self):
        """Test seeds spread over processes."""
        assert coupled_runs(friedman_random(0.5), 40, seeds=6, parallelism=3)["pass"]

    def test_deterministic_urn_raises(self):
        """Test coupling needs a random kernel."""
        with pytest.raises(AlreadyDeterministic):
            coupled_runs(eggenberger_polya(), 10, seeds=2)

    def test_removal_urn_raises(self):
        """Test removal urns are compared in law only."""
        with pytest.raises(InvalidParams, match="compare it in law"):
            coupled_run(mixing_urn(), 10)

    def test_inconsistent_kernel_breaks_coupling(self):
        """Test a kernel that answers differently on each call."""
        spec = UrnSpec(F2, RandomKernel(F2, Alternating(), 1.0, "alternating"),
                       FiniteMeasure.atomic(F2, {Index(0): 1.0, Index(1): 1.0}))
        with pytest.raises(CouplingBroken, match="step 1") as info:
            coupled_run(spec, 5)
        assert info.value.step == 1


class TestDistributionalCompare:
    """Test equality in law of an urn and its lift."""

    def test_lift_matches_base(self):
        """Test the share of colour 0 after 50 steps, 5000 runs per side."""
        result = distributional_compare(friedman_random(0.3), 50, 5000, SHARE_OF_ZERO, alpha=0.01, seed=11,
                                        parallelism=WORKERS)
        assert result.passed
        assert result.statistic < result.threshold

    def test_self_comparison(self):
        """Test an urn against itself on disjoint streams."""
        spec = friedman_random(0.3)
        result = distributional_compare(spec, 50, 1000, SHARE_OF_ZERO, alpha=0.01, seed=12, against=spec)
        assert result.passed

    def test_mismatched_parameter_fails(self):
        """Test p = 0.3 against the lift of p = 0.7."""
        result = distributional_compare(friedman_random(0.3), 50, 1000, SHARE_OF_ZERO, alpha=0.01, seed=11,
                                        against=lift_spec(friedman_random(0.7)))
        assert not result.passed

    def test_removal_urn_matches_its_lift(self):
        """Test the lift of a random removal urn in law."""
        result = distributional_compare(mixing_urn(), 30, 500, SHARE_OF_ZERO, alpha=0.01, seed=13)
        assert result.passed

    def test_parallel_matches_inline(self):
        """Test the comparison does not depend on the worker count."""
        spec = friedman_random(0.3)
        inline = distributional_compare(spec, 20, 100, SHARE_OF_ZERO, seed=3)
        parallel = distributional_compare(spec, 20, 100, SHARE_OF_ZERO, seed=3, parallelism=4)
        assert inline == parallel
