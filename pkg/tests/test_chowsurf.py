from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from psikit.chowsurf import (
    ChowClass,
    SurfaceModel,
    csm_complement,
    csm_psi_class,
    csm_strata_class,
    gysin_restrict,
    intersection_number,
    pushforward_to_plane,
    resolution_divisors,
    csm_identity_check,
    wma_standin,
)
from psikit.corpus import EMBEDDED_POINT_DIVISORS, GLOBAL_CORPUS
from psikit.curveres import milnor_oracle, resolve_curve
from psikit.ncmodel import Alpha

P2 = SurfaceModel(0)
S1 = SurfaceModel(1)


def test_surface_data():
    s = SurfaceModel(3)
    assert s.labels == ("H", "e1", "e2", "e3")
    assert s.euler == s.c2 == 6
    assert s.c1 == (3, -1, -1, -1) and s.canonical == (-3, 1, 1, 1)
    with pytest.raises(ValueError):
        SurfaceModel(-1)


def test_intersection_numbers():
    assert intersection_number(S1, (1, 0), (1, 0)) == 1
    assert intersection_number(S1, (0, 1), (0, 1)) == -1
    assert intersection_number(S1, (3, -2), (0, 1)) == 2
    with pytest.raises(ValueError):
        intersection_number(S1, (1,), (1, 0))


def test_complement_of_a_line():
    assert csm_complement(P2, [(1,)]) == ChowClass(1, (2,), 1)


def test_complement_of_nothing():
    assert csm_complement(P2, []) == ChowClass(1, (3,), 3)


def test_complement_of_a_smooth_cubic():
    # (1 + 3H + 3pt)(1 - 3H + 9pt): degree-two part 3 - 9 + 9 = 3 = chi(P^2) - chi(cubic)
    assert csm_complement(P2, [(3,)]) == ChowClass(1, (0,), 3)


@pytest.mark.parametrize("d", range(0, 7))
def test_complement_degree_is_euler_of_complement(d):
    chi_curve = 2 - (d - 1) * (d - 2) if d else 0
    assert csm_complement(P2, [(d,)] if d else []).pts == 3 - chi_curve


def test_embedded_point_strata_class():
    c = csm_strata_class(S1, EMBEDDED_POINT_DIVISORS, (1, 2))
    assert pushforward_to_plane(S1, c) == ChowClass(0, (1,), 3)


def test_smooth_conic_strata_class():
    assert csm_strata_class(P2, [(2,)], [1]) == ChowClass(0, (2,), 2)


def test_zero_weights():
    assert csm_strata_class(S1, EMBEDDED_POINT_DIVISORS, (0, 0)).is_zero()


def test_misaligned_weights():
    with pytest.raises(ValueError):
        csm_strata_class(S1, EMBEDDED_POINT_DIVISORS, (1,))


def test_gysin_examples():
    assert gysin_restrict(P2, ChowClass(1, (2,), 1), (1,)) == ChowClass(0, (1,), 2)
    assert gysin_restrict(P2, ChowClass(1, (0,), 0), (3,)) == ChowClass(0, (3,), 0)
    assert gysin_restrict(S1, ChowClass(0, (0, 0), 0), (2, -1)).is_zero()


@given(st.integers(0, 12))
def test_gysin_of_complement_regression(d):
    c = gysin_restrict(P2, csm_complement(P2, [(d,)]), (d,))
    assert c.pts == d * (3 - d) and c.div == (d,)


def test_pushforward_examples():
    assert pushforward_to_plane(S1, ChowClass(0, (3, -2), 0)) == ChowClass(0, (3,), 0)
    assert pushforward_to_plane(S1, ChowClass(0, (0, 0), 5)) == ChowClass(0, (0,), 5)


@pytest.mark.parametrize("name", ["cuspidal_cubic", "nodal_cubic"])
def test_csm_identity_cubics(name):
    rep = csm_identity_check(GLOBAL_CORPUS[name])
    assert rep.equal and rep.degree_lhs == rep.degree_rhs == 0
    assert rep.ok


def test_csm_identity_conic():
    rep = csm_identity_check("x^2+y^2-z^2")
    assert rep.equal and rep.degree_lhs == 2 and rep.chi_X == 2


def test_report_json_fields():
    data = csm_identity_check("y^2*z-x^3").to_dict()
    for key in ("lhs", "rhs", "equal", "degree_lhs", "degree_rhs", "chi_X", "chi_general_fiber", "points"):
        assert key in data
    assert data["points"] == [{"point": "(0:0:1)", "psi": -1, "mu": 2}]


@pytest.mark.parametrize("F,mu", [("y^2*z-x^3", 2), ("y^2*z-x^2*(x+z)", 1), ("x^3+y^3+z^3", 0)])
def test_wma_standin(F, mu):
    rep = wma_standin(F)
    assert rep.cls == ChowClass(0, (0,), mu)


@pytest.mark.parametrize("name", sorted(GLOBAL_CORPUS))
def test_wma_is_sum_of_milnor_numbers(name):
    gres = resolve_curve(GLOBAL_CORPUS[name])
    rep = wma_standin(gres)
    assert rep.cls.pts == sum(milnor_oracle(sp.equation) for sp in gres.singular_points)
    assert [p["contribution"] for p in rep.points] == [1 - sp.psi for sp in gres.singular_points]


@pytest.mark.parametrize("name", sorted(GLOBAL_CORPUS))
def test_indicator_decomposition_of_classes(name):
    gres = resolve_curve(GLOBAL_CORPUS[name])
    _, _, _, mults = resolution_divisors(gres)
    total = csm_psi_class(gres, Alpha.indicator(mults[0])).scale(0)
    for m in set(mults):
        total = total + csm_psi_class(gres, Alpha.indicator(m)).scale(m)
    assert total == csm_psi_class(gres)


def test_format():
    assert ChowClass(1, (2,), 1).format(P2, "[P2]") == "[P2] + 2H + [pt]"
    assert ChowClass(0, (1, -1), Fraction(-3)).format(S1) == "H - e1 - 3*[pt]"
    assert ChowClass(0, (0,), 0).format(P2) == "0"


def test_named_entry_point_alias():
    from psikit import chowsurf
    assert chowsurf.theorem_one_check is chowsurf.csm_identity_check
