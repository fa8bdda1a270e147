from collections import Counter

import pytest

from psikit.chowsurf import intersection_number, resolution_divisors
from psikit.corpus import GLOBAL_CORPUS, LOCAL_CORPUS, load_fixture, ordinary_point
from psikit.curveres import (
    IrrationalInfinitelyNearPoint,
    IrrationalSingularPoint,
    MaxIterations,
    NonIsolated,
    NotSquarefree,
    curve_topology,
    find_singular_points,
    milnor_from_psi,
    milnor_oracle,
    psi_at,
    resolve_curve,
    resolve_local,
    to_ncmodel,
)
from psikit.ncmodel import behrend_mu, dumps_model, psi, unit_reconstruction, validate
from psikit.poly import PolynomialSyntaxError, format_poly, parse_polynomial, translate

# Milnor numbers known in closed form
KNOWN_MU = {
    "smooth": 0, "node": 1, "cusp": 2, "tacnode": 3,
    **{f"A{n}": n for n in range(1, 7)},
    **{f"ordinary{m}": (m - 1) ** 2 for m in range(2, 6)},
    "E6": 6, "E8": 8,
}


def test_cusp_resolution():
    res = resolve_local("y^2-x^3")
    assert res.graph() == [(2, 1, 1), (3, 2, 1), (6, 4, 3)]
    assert res.branch_count == 1 and res.blowup_count == 3
    assert psi_at(res) == -1 and milnor_from_psi(res) == 2


@pytest.mark.parametrize("m", range(2, 6))
def test_ordinary_point(m):
    res = resolve_local(ordinary_point(m))
    assert res.graph() == [(m, 1, m)]
    assert res.branch_count == m and res.blowup_count == 1
    assert psi_at(res) == m * (2 - m)


def test_smooth_point():
    res = resolve_local("y-x^2")
    assert len(res.nodes) == 0
    assert res.branch_count == 1 and res.blowup_count == 0
    assert psi_at(res) == 1 and milnor_from_psi(res) == 0


def test_tacnode():
    res = resolve_local("y^2-x^4")
    assert psi_at(res) == -2
    assert milnor_oracle("y^2-x^4") == 3 == milnor_from_psi(res)


def test_node():
    assert milnor_from_psi(resolve_local("y^2-x^2")) == 1


@pytest.mark.parametrize("f,mu", [("y^2-x^3", 2), ("x^2+y^2", 1), ("x^3-y^3", 4), ("y-x^2", 0)])
def test_milnor_oracle(f, mu):
    assert milnor_oracle(f) == mu


def test_milnor_oracle_non_isolated():
    with pytest.raises(NonIsolated):
        milnor_oracle("y^2*x^2")


@pytest.mark.parametrize("name", sorted(LOCAL_CORPUS))
def test_corpus_agreement(name):
    f = LOCAL_CORPUS[name]
    res = resolve_local(f)
    model = to_ncmodel(res)
    assert validate(model) == []
    assert milnor_oracle(f) == KNOWN_MU[name] == milnor_from_psi(res)
    assert behrend_mu(model) == {"p": KNOWN_MU[name]}
    assert unit_reconstruction(model) == {"p": 1}
    assert psi(model) == {"p": psi_at(res)}
    assert all(n.contacts >= 1 for n in res.nodes)


def _swap(f: str) -> str:
    return f.replace("x", "#").replace("y", "x").replace("#", "y")


@pytest.mark.parametrize("name", sorted(LOCAL_CORPUS))
def test_chart_consistency(name):
    f = LOCAL_CORPUS[name]
    a, b = resolve_local(f), resolve_local(_swap(f))
    assert Counter(a.graph()) == Counter(b.graph())
    assert psi_at(a) == psi_at(b) and a.branch_count == b.branch_count


@pytest.mark.parametrize("name,f", [("cusp", "y^2-x^3"), ("node", "y^2-x^2"), ("smooth_point", "y-x^2")])
def test_exported_fixtures_are_byte_identical(name, f):
    from psikit.corpus import fixture_path
    assert dumps_model(to_ncmodel(resolve_local(f))) == fixture_path(name).read_text(encoding="utf-8")
    assert load_fixture(name) == to_ncmodel(resolve_local(f))


def test_resolution_errors():
    with pytest.raises(IrrationalInfinitelyNearPoint):
        resolve_local("y^2-2*x^2")
    with pytest.raises(NotSquarefree):
        resolve_local("(y-x)^2")
    with pytest.raises(MaxIterations):
        resolve_local("y^2-x^41", max_blowups=5)
    with pytest.raises(ValueError):
        resolve_local("y-1")


def test_singular_points():
    pts = find_singular_points("x*y*z")
    assert sorted(pts) == sorted([(1, 0, 0), (0, 1, 0), (0, 0, 1)])
    assert find_singular_points("y^2*z-x^2*(x+z)") == [(0, 0, 1)]
    assert find_singular_points("x^2+y^2-z^2") == []


def test_irrational_singular_points():
    # a line and a conic meeting at x = ±sqrt(2)
    with pytest.raises(IrrationalSingularPoint):
        find_singular_points("y*(y*z-x^2+2*z^2)")


def test_not_squarefree_projective():
    with pytest.raises(NotSquarefree):
        find_singular_points("(x-y)^2*z")


@pytest.mark.parametrize("F,g,chi", [
    ("y^2*z-x^2*(x+z)", 0, 1),
    ("y^2*z-x^3", 0, 2),
    ("x^3+y^3+z^3", 1, 0),
    ("x^4+y^4+z^4", 3, -4),
])
def test_curve_topology(F, g, chi):
    topo = curve_topology(resolve_curve(F))
    assert (topo.genus, topo.chi) == (g, chi)


@pytest.mark.parametrize("name", sorted(GLOBAL_CORPUS))
def test_total_transform_is_d_times_hyperplane(name):
    gres = resolve_curve(GLOBAL_CORPUS[name])
    s, _, D, mults = resolution_divisors(gres)
    total = [sum(m * v[i] for m, v in zip(mults, D)) for i in range(s.k + 1)]
    assert total == [gres.degree] + [0] * s.k
    # exceptional curves of a point blow-up have self-intersection -1 or less
    for v in D[1:]:
        assert intersection_number(s, v, v) <= -1


def test_global_cusp_matches_local():
    gres = resolve_curve("y^2*z-x^3")
    (sp,) = gres.singular_points
    assert sp.point == (0, 0, 1)
    assert sp.resolution.graph() == resolve_local("y^2-x^3").graph()
    assert sp.psi == -1


# ---------------------------------------------------------------- parser

def test_parser_accepts():
    p = parse_polynomial("3/4*x^2 - (y+1)^2 + 2")
    assert format_poly(p, "xy") == "3/4*x^2 - y^2 - 2*y + 1"


@pytest.mark.parametrize("bad", ["x**2", "x^y", "x^-1", "1.5*x", "x/y", "sin(x)", "z+x", "", "x;y", "x^(1/2)", "1/0"])
def test_parser_rejects(bad):
    with pytest.raises(PolynomialSyntaxError):
        parse_polynomial(bad)


def test_translate():
    p = parse_polynomial("x^2*y")
    assert translate(p, (1, -2)) == parse_polynomial("(x+1)^2*(y-2)")
