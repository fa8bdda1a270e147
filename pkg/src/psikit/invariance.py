"""Seeded random blow-up sequences and the quantities they must preserve.

Every round starts from the input model, applies a short random sequence of
admissible blow-ups and compares, over each marked point, the alpha-weighted
psi values, the motivic fiber classes mod T and the naive lift, plus the
totals when the model carries them.  Models with discrepancies also have
their Behrend-type mu and unit reconstruction compared.  The exceptional
multiplicity rule is checked at every step.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field

from .ncmodel import (
    IDENTITY,
    Alpha,
    NCModel,
    behrend_mu,
    blow_up,
    motivic_psi,
    naive_lift,
    psi,
    random_center,
    unit_reconstruction,
    validate,
)

__all__ = ["default_alphas", "snapshot", "check_invariance", "InvarianceReport"]


def default_alphas(model: NCModel, seed: int, tables: int = 5) -> list[Alpha]:
    """Identity, constant 1, every indicator eps_m up to the total multiplicity, and random tables."""
    top = sum(c.mult for c in model.components)
    out = [IDENTITY, Alpha.constant(1)]
    out += [Alpha.indicator(m) for m in range(1, top + 1)]
    rng = random.Random(seed)
    for n in range(tables):
        table = {m: rng.randint(-3, 3) for m in range(1, top + 1) if rng.random() < 0.6}
        out.append(Alpha(table, default=rng.randint(-3, 3), identity=False, name=f"table{n}"))
    return out


def snapshot(model: NCModel, alphas: list[Alpha]) -> dict:
    """All quantities that a blow-up must leave unchanged."""
    snap: dict = {}
    for a in alphas:
        snap[("psi", repr(a))] = psi(model, a)
        for p in model.points:
            snap[("motivic", repr(a), p)] = motivic_psi(model, a, at=p)
        if model.strata_total is not None:
            snap[("motivic", repr(a), "total")] = motivic_psi(model, a)
    for p in model.points:
        snap[("naive_lift", p)] = naive_lift(model, at=p)
    if model.strata_total is not None:
        snap[("naive_lift", "total")] = naive_lift(model)
    if all(c.discrepancy is not None for c in model.components):
        snap[("behrend_mu",)] = behrend_mu(model)
        snap[("unit_reconstruction",)] = unit_reconstruction(model)
    return snap


@dataclass
class InvarianceReport:
    seed: int
    rounds: int
    blowups: int = 0
    checks: int = 0
    failures: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def to_dict(self) -> dict:
        return {
            "seed": self.seed,
            "rounds": self.rounds,
            "blowups": self.blowups,
            "checks": self.checks,
            "ok": self.ok,
            "failures": self.failures,
        }


def _fresh_id(model: NCModel, n: int) -> str:
    ids = set(model.ids)
    while f"Z{n}" in ids:
        n += 1
    return f"Z{n}"


def check_invariance(model: NCModel, seed: int = 0, rounds: int = 100, max_steps: int = 3,
                     alphas: list[Alpha] | None = None) -> InvarianceReport:
    alphas = alphas if alphas is not None else default_alphas(model, seed)
    reference = snapshot(model, alphas)
    report = InvarianceReport(seed, rounds)
    for r in range(rounds):
        rng = random.Random(seed * 1_000_003 + r)
        current = model
        for step in range(rng.randint(1, max_steps)):
            center = random_center(current, rng)
            if center is None:
                break
            new_id = _fresh_id(current, step + 1)
            nxt = blow_up(current, center, new_id)
            report.blowups += 1
            expected_mult = sum(current.component(c).mult for c in center.contains)
            if nxt.component(new_id).mult != expected_mult:
                report.failures.append(f"round {r} step {step}: exceptional multiplicity "
                                       f"{nxt.component(new_id).mult} != {expected_mult}")
            problems = validate(nxt)
            if problems:
                report.failures.append(f"round {r} step {step}: invalid model: {'; '.join(problems)}")
            current = nxt
        after = snapshot(current, alphas)
        for key, value in reference.items():
            report.checks += 1
            if after[key] != value:
                report.failures.append(f"round {r}: {' '.join(map(str, key))} changed from {value} to {after[key]}")
    return report
