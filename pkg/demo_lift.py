#!/usr/bin/env python3
"""Quick demonstration of derandomizing a random-replacement urn."""

from measures.measure import project
from measures.spaces import ColourSet, Index
from models.classical import eggenberger_polya
from models.randomized import friedman_random
from simulation.lift import coupled_run, distributional_compare, lift_spec
from simulation.process import check_balanced, run
from simulation.statistics import Final, Fraction

print("=" * 70)
print("  POLYA URNS AND THE DERANDOMIZING LIFT")
print("=" * 70)

print("\n1. CLASSICAL POLYA URN")
print("   a = 1, start with one ball of each colour, 10 steps")
urn = eggenberger_polya(1.0, (1, 1))
traj = run(urn, 10, seed=7)
print(f"   Final state: {traj.final}")
print(f"   Masses: {traj.masses()}")
print(f"   Balanced as n + 2: {check_balanced(traj, 1.0, 2.0)}")

print("\n2. RANDOM REPLACEMENTS")
print("   Friedman urn: copy the drawn colour with probability 0.3")
friedman = friedman_random(0.3)
lifted = lift_spec(friedman)
print(f"   Base space:   {friedman.space}")
print(f"   Lifted space: {lifted.space}")
print(f"   Lifted start: {lifted.x0}")

print("\n3. COUPLED RUN (one stream drives both chains)")
coupled = coupled_run(friedman, 20, seed=3)
print(f"   Base X_20:            {coupled.base.final}")
print(f"   Projected lifted X_20: {project(coupled.lifted.final)}")
print(f"   Max projection error: {coupled.max_projection_error}")

print("\n4. EQUALITY IN LAW")
print("   Share of colour 0 after 50 steps, 500 independent runs per side")
share = Final(Fraction(ColourSet.of(Index(0))))
result = distributional_compare(friedman, 50, 500, share, alpha=0.01, seed=1)
print(f"   KS D = {result.statistic:.4f}, critical = {result.threshold:.4f}, pass = {result.passed}")

mismatch = distributional_compare(friedman, 50, 500, share, alpha=0.01, seed=1,
                                  against=lift_spec(friedman_random(0.7)))
print(f"   Against the lift of p = 0.7: D = {mismatch.statistic:.4f}, pass = {mismatch.passed}")

print("\n" + "=" * 70)
