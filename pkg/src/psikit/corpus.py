"""Shipped test corpus: model fixtures, curve lists and the fixture check table.

The fixture directory defaults to the ``fixtures`` folder inside the package
and can be redirected with the ``PSIKIT_FIXTURES`` environment variable.
"""
from __future__ import annotations

import os
from dataclasses import dataclass
from pathlib import Path

from .ering import MTClass, mod_torus, std_class
from .ncmodel import Alpha, NCModel, behrend_mu, load_model, motivic_psi, psi

__all__ = [
    "FIXTURE_ENV",
    "LOCAL_CORPUS",
    "GLOBAL_CORPUS",
    "ordinary_point",
    "fixture_dir",
    "fixture_path",
    "fixture_names",
    "load_fixture",
    "FixtureRow",
    "fixtures_run",
    "EMBEDDED_POINT_DIVISORS",
]

FIXTURE_ENV = "PSIKIT_FIXTURES"


def ordinary_point(m: int) -> str:
    """m distinct rational lines through the origin: prod_k (y - k x)."""
    if m < 1:
        raise ValueError("need at least one line")
    factors = ["y"] + [f"(y-{k}*x)" for k in range(1, m)]
    return "*".join(factors)


# name -> affine equation with an isolated singularity (or smooth point) at the origin
LOCAL_CORPUS: dict[str, str] = {
    "smooth": "y-x^2",
    "node": "y^2-x^2",
    "cusp": "y^2-x^3",
    "tacnode": "y^2-x^4",
    **{f"A{n}": f"y^2-x^{n + 1}" for n in range(1, 7)},
    **{f"ordinary{m}": ordinary_point(m) for m in range(2, 6)},
    "E6": "y^3-x^4",
    "E8": "y^3-x^5",
}

# name -> homogeneous equation of a reduced plane curve with rational singular points
GLOBAL_CORPUS: dict[str, str] = {
    "nodal_cubic": "y^2*z-x^2*(x+z)",
    "cuspidal_cubic": "y^2*z-x^3",
    "tacnodal_quartic": "y^2*z^2-x^4-y^4",
    "triple_point_quartic": "x*y*(x-y)*z+x^4+y^4",
    "smooth_conic": "x^2+y^2-z^2",
    "smooth_cubic": "x^3+y^3+z^3",
    "four_general_lines": "x*y*z*(x+y+z)",
    "four_lines_triple_point": "x*y*z*(x-y)",
}

# Strict transform of a line and the exceptional curve of a point on it,
# on P^2 blown up once; the divisor has multiplicities (1, 2).
EMBEDDED_POINT_DIVISORS = ((1, -1), (0, 1))
EMBEDDED_POINT_WEIGHTS = (1, 2)


def fixture_dir() -> Path:
    override = os.environ.get(FIXTURE_ENV)
    if override:
        return Path(override)
    return Path(__file__).resolve().parent / "fixtures"


def fixture_names() -> list[str]:
    return sorted(p.stem for p in fixture_dir().glob("*.json"))


def fixture_path(name: str) -> Path:
    path = fixture_dir() / (name if name.endswith(".json") else name + ".json")
    if not path.is_file():
        raise FileNotFoundError(f"fixture {path.name} not found in {path.parent}")
    return path


def load_fixture(name: str) -> NCModel:
    return load_model(fixture_path(name))


@dataclass(frozen=True)
class FixtureRow:
    fixture: str
    quantity: str
    expected: str
    computed: str
    passed: bool

    def to_dict(self) -> dict:
        return {
            "fixture": self.fixture,
            "quantity": self.quantity,
            "expected": self.expected,
            "computed": self.computed,
            "pass": self.passed,
        }


def _row(fixture, quantity, expected, computed, show=str) -> FixtureRow:
    return FixtureRow(fixture, quantity, show(expected), show(computed), expected == computed)


def _cone_expected(m: int) -> MTClass:
    c = std_class("curve", (m - 1) * (m - 2) // 2)
    return mod_torus(c + m * (3 - c))


def fixtures_run() -> list[FixtureRow]:
    """Check every shipped fixture against its known values."""
    from .chowsurf import ChowClass, SurfaceModel, csm_complement, csm_strata_class, gysin_restrict, pushforward_to_plane

    rows: list[FixtureRow] = []
    eps3 = Alpha.indicator(3)

    m = load_fixture("cusp")
    rows += [
        _row("cusp", "psi(p)", -1, psi(m)["p"]),
        _row("cusp", "psi_eps3(p)", 1, psi(m, eps3)["p"]),
        _row("cusp", "mu(p)", 2, behrend_mu(m)["p"]),
    ]
    m = load_fixture("node")
    rows += [_row("node", "psi(p)", 0, psi(m)["p"]), _row("node", "mu(p)", 1, behrend_mu(m)["p"])]
    m = load_fixture("smooth_point")
    rows += [
        _row("smooth_point", "psi(p)", 1, psi(m)["p"]),
        _row("smooth_point", "mu(p)", 0, behrend_mu(m)["p"]),
    ]
    for n in range(1, 7):
        m = load_fixture(f"a_chain_{n}")
        rows.append(_row(f"a_chain_{n}", "psi(p)", 1, psi(m)["p"]))
    m = load_fixture("base_locus_cusp")
    rows += [
        _row("base_locus_cusp", "psi(p)", -1, psi(m)["p"]),
        _row("base_locus_cusp", "psi_eps3(p)", -1, psi(m, eps3)["p"]),
    ]

    m = load_fixture("embedded_point")
    rows += [
        _row("embedded_point", "psi(p)", 2, psi(m)["p"]),
        _row("embedded_point", "psi(generic)", 1, psi(m)["g"]),
    ]
    s1, s0 = SurfaceModel(1), SurfaceModel(0)
    pushed = pushforward_to_plane(s1, csm_strata_class(s1, EMBEDDED_POINT_DIVISORS, EMBEDDED_POINT_WEIGHTS))
    show = lambda c: c.format(s0)  # noqa: E731
    rows.append(_row("embedded_point", "csm pushforward", ChowClass(0, (1,), 3), pushed, show))
    restricted = gysin_restrict(s0, csm_complement(s0, [s0.hyperplane()]), s0.hyperplane())
    rows.append(_row("embedded_point", "Gysin restriction to L", ChowClass(0, (1,), 2), restricted, show))

    for name, at_p in (("three_lines", 0), ("three_lines_coplanar", -2)):
        m = load_fixture(name)
        rows += [_row(name, "psi(p)", at_p, psi(m)["p"]), _row(name, "psi(generic)", 2, psi(m)["g"])]

    for k in (2, 3, 4):
        m = load_fixture(f"cone_{k}")
        total = motivic_psi(m)
        rows += [
            _row(f"cone_{k}", "psi(vertex)", (k - 1) ** 3 + 1, psi(m)["p"]),
            _row(f"cone_{k}", "Psi total mod T", _cone_expected(k), total),
        ]
        if k >= 3:
            rows.append(_row(f"cone_{k}", "Psi total constant", False, total.is_constant()))
    return rows
