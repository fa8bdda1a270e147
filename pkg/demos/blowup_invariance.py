"""Blow up a model at random admissible centers and watch nothing change."""
import random

from psikit.corpus import load_fixture
from psikit.invariance import check_invariance
from psikit.ncmodel import Alpha, blow_up, naive_lift, psi, random_center

model = load_fixture("base_locus_cusp")
rng = random.Random(5)
print("start:", psi(model), "eps3:", psi(model, Alpha.indicator(3)), "lift:", naive_lift(model, at="p"))
for step in range(4):
    center = random_center(model, rng)
    model = blow_up(model, center, f"Z{step}")
    new = model.component(f"Z{step}")
    print(f"blow up along {sorted(center.contains)} (codim {center.codim}) -> {new.id} with multiplicity {new.mult};",
          "psi", psi(model), "eps3", psi(model, Alpha.indicator(3)), "lift", naive_lift(model, at="p"))

report = check_invariance(load_fixture("cone_3"), seed=1, rounds=100)
print(f"cone_3: {report.rounds} random sequences, {report.blowups} blow-ups, {report.checks} comparisons, ok={report.ok}")
