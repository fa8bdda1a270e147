"""Chow groups of the plane blown up at k points, and CSM classes there.

Classes are written in the basis [W], H, e_1, ..., e_k, [pt] where e_i is the
total transform of the i-th exceptional curve, so the intersection form on
divisors is diag(1, -1, ..., -1).  Only the truncated expansions needed for a
surface appear: a class is a multiple of [W], a divisor class and a multiple
of the point class.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .curveres import GlobalResolution, as_projective, curve_topology, resolve_curve
from .ncmodel import _alpha

__all__ = [
    "SurfaceModel",
    "ChowClass",
    "intersection_number",
    "csm_complement",
    "csm_strata_class",
    "gysin_restrict",
    "pushforward_to_plane",
    "resolution_divisors",
    "csm_psi_class",
    "csm_identity_check",
    "theorem_one_check",
    "wma_standin",
    "CSMIdentityReport",
    "WMAReport",
]


@dataclass(frozen=True)
class SurfaceModel:
    """P^2 blown up at k (possibly infinitely near) points."""

    k: int = 0

    def __post_init__(self):
        if self.k < 0:
            raise ValueError("number of blow-ups must be nonnegative")

    @property
    def labels(self) -> tuple[str, ...]:
        return ("H",) + tuple(f"e{i}" for i in range(1, self.k + 1))

    @property
    def euler(self) -> int:
        return 3 + self.k

    @property
    def c1(self) -> tuple[int, ...]:
        return (3,) + (-1,) * self.k

    @property
    def c2(self) -> int:
        return self.euler

    @property
    def canonical(self) -> tuple[int, ...]:
        return tuple(-c for c in self.c1)

    def hyperplane(self, d: int = 1) -> tuple[int, ...]:
        return (d,) + (0,) * self.k

    def exceptional(self, i: int) -> tuple[int, ...]:
        v = [0] * (self.k + 1)
        v[i] = 1
        return tuple(v)

    def zero_divisor(self) -> tuple[int, ...]:
        return (0,) * (self.k + 1)

    def format_divisor(self, v: Sequence) -> str:
        parts = []
        for label, c in zip(self.labels, v):
            if c:
                parts.append(_term(c, label))
        return _join(parts) if parts else "0"


def _check(s: SurfaceModel, v: Sequence) -> tuple:
    if len(v) != s.k + 1:
        raise ValueError(f"divisor vector has length {len(v)}, expected {s.k + 1}")
    return tuple(v)


def _vadd(a, b):
    return tuple(x + y for x, y in zip(a, b))


def _vscale(a, c):
    return tuple(x * c for x in a)


def intersection_number(s: SurfaceModel, a: Sequence, b: Sequence):
    """a . b under diag(1, -1, ..., -1)."""
    a, b = _check(s, a), _check(s, b)
    return a[0] * b[0] - sum(x * y for x, y in zip(a[1:], b[1:]))


@dataclass(frozen=True)
class ChowClass:
    top: int
    div: tuple
    pts: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "div", tuple(_num(c) for c in self.div))
        object.__setattr__(self, "pts", Fraction(self.pts))

    def __add__(self, other: "ChowClass") -> "ChowClass":
        if len(self.div) != len(other.div):
            raise ValueError("classes live on different surfaces")
        return ChowClass(self.top + other.top, _vadd(self.div, other.div), self.pts + other.pts)

    def __sub__(self, other: "ChowClass") -> "ChowClass":
        return self + other.scale(-1)

    def scale(self, c) -> "ChowClass":
        return ChowClass(self.top * c, _vscale(self.div, c), self.pts * c)

    @property
    def degree(self) -> Fraction:
        """Degree of the zero-dimensional part."""
        return self.pts

    def is_zero(self) -> bool:
        return self.top == 0 and not any(self.div) and self.pts == 0

    def to_dict(self) -> dict:
        return {"top": _jsonable(self.top), "div": [_jsonable(c) for c in self.div], "pts": _jsonable(self.pts)}

    def format(self, s: SurfaceModel | None = None, top_label: str = "[W]") -> str:
        s = s or SurfaceModel(len(self.div) - 1)
        parts = []
        if self.top:
            parts.append(_term(self.top, top_label))
        if any(self.div):
            parts.append(s.format_divisor(self.div))
        if self.pts:
            parts.append(_term(self.pts, "[pt]"))
        return _join(parts) if parts else "0"


def _num(c):
    c = Fraction(c)
    return int(c) if c.denominator == 1 else c


def _jsonable(c):
    c = Fraction(c)
    return int(c) if c.denominator == 1 else str(c)


def _term(c, label: str) -> str:
    if c == 1:
        return label
    if c == -1:
        return "-" + label
    return f"{c}{label}" if label.startswith(("e", "H")) else f"{c}*{label}"


def _join(parts: list[str]) -> str:
    out = parts[0]
    for p in parts[1:]:
        out += " - " + p[1:] if p.startswith("-") else " + " + p
    return out


def _sum(s: SurfaceModel, D: Sequence[Sequence]) -> tuple:
    total = s.zero_divisor()
    for d in D:
        total = _vadd(total, _check(s, d))
    return total


def csm_complement(s: SurfaceModel, D: Sequence[Sequence]) -> ChowClass:
    """c(TW) / prod(1 + D_k) capped with [W], truncated at the point class."""
    D = [_check(s, d) for d in D]
    total = _sum(s, D)
    # 1/prod(1+D_k) = 1 - sum D_k + (sum_k D_k^2 + sum_{k<l} D_k D_l) in degree 2
    quad = sum(intersection_number(s, d, d) for d in D)
    quad += sum(intersection_number(s, D[i], D[j]) for i in range(len(D)) for j in range(i + 1, len(D)))
    div = _vadd(s.c1, _vscale(total, -1))
    pts = s.c2 - intersection_number(s, s.c1, total) + quad
    return ChowClass(1, div, pts)


def csm_strata_class(s: SurfaceModel, D: Sequence[Sequence], weights: Sequence) -> ChowClass:
    """sum_l w_l * c(TW)/prod(1 + D_k) capped with [D_l].

    For a normal crossings divisor with smooth components this is the CSM
    class of sum_l w_l * 1 on the open part of D_l.
    """
    D = [_check(s, d) for d in D]
    if len(weights) != len(D):
        raise ValueError(f"{len(weights)} weights for {len(D)} divisors")
    reduced = _vadd(s.c1, _vscale(_sum(s, D), -1))
    div = s.zero_divisor()
    pts = Fraction(0)
    for d, w in zip(D, weights):
        w = Fraction(w)
        div = _vadd(div, _vscale(d, w))
        pts += w * intersection_number(s, reduced, d)
    return ChowClass(0, div, pts)


def gysin_restrict(s: SurfaceModel, c: ChowClass, X: Sequence) -> ChowClass:
    """Intersect with the Cartier divisor X; the point part has nowhere to go and is dropped."""
    X = _check(s, X)
    _check(s, c.div)
    return ChowClass(0, _vscale(X, c.top), intersection_number(s, c.div, X))


def pushforward_to_plane(s: SurfaceModel, c: ChowClass) -> ChowClass:
    """Push down to P^2: exceptional curves contract to points."""
    _check(s, c.div)
    return ChowClass(c.top, (c.div[0],), c.pts)


def resolution_divisors(gres: GlobalResolution) -> tuple[SurfaceModel, list[str], list[tuple], list[int]]:
    """Surface, component ids, divisor classes and multiplicities of a resolved curve."""
    s = SurfaceModel(gres.blowup_count)
    ids, D, mults = [], [], []
    for cid, m, vec in gres.components():
        ids.append(cid)
        D.append(vec)
        mults.append(m)
    return s, ids, D, mults


def csm_psi_class(gres: GlobalResolution, alpha=None) -> ChowClass:
    """CSM class on the resolution of the alpha-weighted multiplicity function."""
    a = _alpha(alpha)
    s, _, D, mults = resolution_divisors(gres)
    return csm_strata_class(s, D, [a(m) for m in mults])


def _resolve(curve, max_blowups: int) -> GlobalResolution:
    if isinstance(curve, GlobalResolution):
        return curve
    return resolve_curve(as_projective(curve), max_blowups=max_blowups)


def _point_label(pt) -> str:
    return "(" + ":".join(str(c) for c in pt) + ")"


@dataclass
class CSMIdentityReport:
    degree: int
    lhs: ChowClass
    rhs: ChowClass
    chi_X: int
    chi_general_fiber: int
    points: list[dict] = field(default_factory=list)

    @property
    def equal(self) -> bool:
        return self.lhs == self.rhs

    @property
    def degree_lhs(self) -> Fraction:
        return self.lhs.degree

    @property
    def degree_rhs(self) -> Fraction:
        return self.rhs.degree

    @property
    def specialization_ok(self) -> bool:
        """deg lhs equals chi of the smooth fiber and chi(X) - sum_p (1 - psi(p))."""
        defect = sum(1 - p["psi"] for p in self.points)
        return self.degree_lhs == self.chi_general_fiber == self.chi_X - defect

    @property
    def ok(self) -> bool:
        return self.equal and self.degree_lhs == self.degree_rhs and self.specialization_ok

    def to_dict(self) -> dict:
        return {
            "degree": self.degree,
            "lhs": self.lhs.to_dict(),
            "rhs": self.rhs.to_dict(),
            "equal": self.equal,
            "degree_lhs": _jsonable(self.degree_lhs),
            "degree_rhs": _jsonable(self.degree_rhs),
            "chi_X": self.chi_X,
            "chi_general_fiber": self.chi_general_fiber,
            "points": self.points,
        }


def csm_identity_check(curve, max_blowups: int = 64) -> CSMIdentityReport:
    """Compare the pushed-forward CSM class of psi with the Gysin restriction of the complement class.

    ``curve`` is a homogeneous polynomial in x, y, z (string or dict) or an
    already computed ``GlobalResolution``.
    """
    gres = _resolve(curve, max_blowups)
    d = gres.degree
    s, _, D, mults = resolution_divisors(gres)
    lhs = pushforward_to_plane(s, csm_strata_class(s, D, mults))
    plane = SurfaceModel(0)
    rhs = gysin_restrict(plane, csm_complement(plane, [plane.hyperplane(d)]), plane.hyperplane(d))
    topo = curve_topology(gres)
    points = []
    for sp in gres.singular_points:
        key = _point_label(sp.point)
        points.append({"point": key, "psi": sp.psi, "mu": topo.milnor[sp.point]})
    return CSMIdentityReport(d, lhs, rhs, topo.chi, 3 * d - d * d, points)


theorem_one_check = csm_identity_check


@dataclass
class WMAReport:
    cls: ChowClass
    points: list[dict]

    def to_dict(self) -> dict:
        return {"class": self.cls.to_dict(), "points": self.points}


def wma_standin(curve, max_blowups: int = 64) -> WMAReport:
    """(-1)^2 (c_SM(1_X) - c_SM(psi)) pushed to P^2; a point class of total degree sum mu_p.

    c_SM(1_X) is assembled from the strict transform: its Euler characteristic
    comes from adjunction on the blown-up plane and each singular point with b
    branches glues b points of the normalization into one.
    """
    gres = _resolve(curve, max_blowups)
    s, ids, D, mults = resolution_divisors(gres)
    strict = D[0]
    chi_norm = -intersection_number(s, strict, _vadd(s.canonical, strict))
    glued = sum(sp.resolution.branch_count - 1 for sp in gres.singular_points)
    one_x = ChowClass(0, (gres.degree,), chi_norm - glued)
    psi_cls = pushforward_to_plane(s, csm_strata_class(s, D, mults))
    cls = one_x - psi_cls
    points = [
        {"point": _point_label(sp.point), "psi": sp.psi, "contribution": 1 - sp.psi}
        for sp in gres.singular_points
    ]
    return WMAReport(cls, points)
