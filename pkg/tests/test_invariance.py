import pytest

from psikit import ncmodel
from psikit.corpus import fixture_names, load_fixture
from psikit.ering import L, T
from psikit.invariance import check_invariance, default_alphas


def test_default_alphas_cover_required_kinds():
    names = [repr(a) for a in default_alphas(load_fixture("cusp"), seed=1)]
    assert "Alpha<identity>" in names and "Alpha<const:1>" in names
    assert {"Alpha<eps:2>", "Alpha<eps:3>", "Alpha<eps:6>"} <= set(names)
    assert sum(n.startswith("Alpha<table") for n in names) == 5


def test_seeded_runs_are_deterministic():
    m = load_fixture("cone_3")
    a, b = check_invariance(m, seed=3, rounds=10), check_invariance(m, seed=3, rounds=10)
    assert a.to_dict() == b.to_dict()


@pytest.mark.parametrize("name", fixture_names())
def test_short_run_per_fixture(name):
    assert check_invariance(load_fixture(name), seed=11, rounds=20).ok


def test_detects_broken_arrangement_classes(monkeypatch):
    original = ncmodel.arrangement_stratum_class

    def wrong(r, e, k):
        cls = original(r, e, k)
        return cls + T if k == 0 and cls else cls

    monkeypatch.setattr(ncmodel, "arrangement_stratum_class", wrong)
    report = check_invariance(load_fixture("cusp"), seed=7, rounds=20)
    assert not report.ok


def test_detects_broken_multiplicity_rule(monkeypatch):
    original = ncmodel.Component

    def bump(cid, mult, discrepancy=None):
        return original(cid, mult + (1 if cid.startswith("Z") else 0), discrepancy)

    monkeypatch.setattr(ncmodel, "Component", bump)
    report = check_invariance(load_fixture("node"), seed=7, rounds=5)
    assert any("exceptional multiplicity" in f for f in report.failures)
