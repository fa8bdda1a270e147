"""Embedded resolution of plane curve singularities over Q.

``resolve_local`` blows up the origin of the affine plane, and then every
infinitely near point where the total transform fails to be a normal
crossings divisor, until it is one.  At each point the exceptional curves
through it are kept as coordinate axes, so a blow-up is the usual pair of
charts ``(x, xy)`` and ``(xy, y)``.  Centers must be rational points.

Global curves in P^2 go through ``resolve_curve``: singular points are found
by exact elimination, each one is moved to the origin of an affine chart and
resolved, and the result carries divisor classes on the blown-up plane.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import sympy

from . import poly as P
from .ering import EPoly, L, ONE
from .ncmodel import Component, NCModel

__all__ = [
    "ResolutionError",
    "IrrationalSingularPoint",
    "IrrationalInfinitelyNearPoint",
    "MaxIterations",
    "NonIsolated",
    "NonIntegralDelta",
    "NotSquarefree",
    "Node",
    "LocalResolution",
    "SingularPoint",
    "GlobalResolution",
    "CurveTopology",
    "as_affine",
    "as_projective",
    "find_singular_points",
    "local_equation",
    "resolve_local",
    "psi_at",
    "milnor_from_psi",
    "milnor_oracle",
    "to_ncmodel",
    "resolve_curve",
    "curve_topology",
]

STRICT = "X"


class ResolutionError(ValueError):
    """Base class for failures while resolving a curve."""


class IrrationalSingularPoint(ResolutionError):
    pass


class IrrationalInfinitelyNearPoint(ResolutionError):
    pass


class MaxIterations(ResolutionError):
    pass


class NonIsolated(ResolutionError):
    pass


class NonIntegralDelta(ResolutionError):
    pass


class NotSquarefree(ResolutionError):
    pass


def as_affine(f) -> dict:
    if isinstance(f, str):
        f = P.parse_polynomial(f, ("x", "y"))
    if not f:
        raise ValueError("the zero polynomial does not define a curve")
    return f


def as_projective(F) -> dict:
    if isinstance(F, str):
        F = P.parse_polynomial(F, ("x", "y", "z"))
    if not F:
        raise ValueError("the zero polynomial does not define a curve")
    if not P.is_homogeneous(F):
        raise ValueError("projective curve equation must be homogeneous")
    if P.total_degree(F) < 1:
        raise ValueError("projective curve must have positive degree")
    return F


# ---------------------------------------------------------------- univariate roots

_t = sympy.Symbol("t")


def _rational_roots(coeffs: dict[int, Fraction]) -> tuple[list[Fraction], bool]:
    """Distinct rational roots of sum c_i t^i and whether irrational roots exist too."""
    if not coeffs:
        raise ValueError("zero polynomial has no finite root set")
    deg = max(coeffs)
    dense = [coeffs.get(i, Fraction(0)) for i in range(deg, -1, -1)]
    poly = sympy.Poly([sympy.Rational(c.numerator, c.denominator) for c in dense], _t, domain="QQ")
    roots, irrational = [], False
    for factor, _ in poly.factor_list()[1]:
        if factor.degree() == 1:
            a, b = factor.all_coeffs()
            roots.append(Fraction(int((-b / a).p), int((-b / a).q)))
        elif factor.degree() > 1:
            irrational = True
    return sorted(roots), irrational


# ---------------------------------------------------------------- local resolution

@dataclass
class Node:
    """One exceptional curve: multiplicity in the total transform, discrepancy, contacts."""

    id: str
    mult: int
    discrepancy: int
    contacts: int = 0
    through: tuple[str, ...] = ()
    strict_mult: int = 0


@dataclass
class LocalResolution:
    nodes: list[Node]
    branch_count: int
    mult_sequence: list[int]
    # components through each final intersection point over the origin
    crossings: list[frozenset] = field(default_factory=list)

    @property
    def blowup_count(self) -> int:
        return len(self.nodes)

    def graph(self) -> list[tuple[int, int, int]]:
        return [(n.mult, n.discrepancy, n.contacts) for n in self.nodes]

    def to_dict(self) -> dict:
        return {
            "nodes": [
                {"id": n.id, "mult": n.mult, "discrepancy": n.discrepancy, "contacts": n.contacts,
                 "through": list(n.through), "strict_mult": n.strict_mult}
                for n in self.nodes
            ],
            "branch_count": self.branch_count,
            "mult_sequence": list(self.mult_sequence),
            "blowup_count": self.blowup_count,
        }


@dataclass
class _Site:
    f: dict
    x_axis: str | None  # exceptional curve {x = 0} through the site
    y_axis: str | None  # exceptional curve {y = 0}


def _is_nc(site: _Site) -> bool:
    f = site.f
    axes = [a for a in (site.x_axis, site.y_axis) if a]
    if (0, 0) in f:
        return True
    if P.order(f) != 1 or len(axes) > 1:
        return False
    if site.x_axis:
        return (0, 1) in f  # transverse to x = 0
    if site.y_axis:
        return (1, 0) in f
    return True


def _chart_x(f: dict, m: int) -> dict:
    """f(x, x*y) / x^m."""
    return {(i + j - m, j): c for (i, j), c in f.items()}


def _chart_y(f: dict, m: int) -> dict:
    """f(x*y, y) / y^m."""
    return {(i, i + j - m): c for (i, j), c in f.items()}


def _check_reduced_at_origin(f: dict) -> None:
    x, y = sympy.symbols("x y")
    _, factors = sympy.factor_list(_sym(f, (x, y)), x, y)
    for g, e in factors:
        if e > 1 and g.subs({x: 0, y: 0}) == 0:
            raise NotSquarefree(f"repeated factor {g} through the origin")


def resolve_local(f, max_blowups: int = 64, first_index: int = 1) -> LocalResolution:
    """Resolve the germ of ``f = 0`` at the origin to normal crossings.

    Exceptional curves are named ``E<first_index>``, ``E<first_index+1>``, ...
    in creation order.
    """
    f = as_affine(f)
    if (0, 0) in f:
        raise ValueError("curve does not pass through the origin")
    _check_reduced_at_origin(f)
    nodes: dict[str, Node] = {}
    order_ids: list[str] = []
    crossings: list[frozenset] = []
    mult_sequence: list[int] = []
    branches = 0
    stack = [_Site(f, None, None)]
    while stack:
        site = stack.pop()
        if _is_nc(site):
            comps = {a for a in (site.x_axis, site.y_axis) if a}
            on_strict = (0, 0) not in site.f
            if on_strict:
                comps.add(STRICT)
                branches += 1
            if len(comps) >= 2:
                crossings.append(frozenset(comps))
            continue
        if len(nodes) >= max_blowups:
            raise MaxIterations(f"no normal crossings after {max_blowups} blow-ups")
        m = P.order(site.f)
        through = tuple(a for a in (site.x_axis, site.y_axis) if a)
        nid = f"E{first_index + len(nodes)}"
        nodes[nid] = Node(
            nid,
            mult=m + sum(nodes[a].mult for a in through),
            discrepancy=1 + sum(nodes[a].discrepancy for a in through),
            through=through,
            strict_mult=m,
        )
        order_ids.append(nid)
        mult_sequence.append(m)

        children = []
        f1 = _chart_x(site.f, m)
        on_exc = {j: c for (i, j), c in f1.items() if i == 0}
        roots, irrational = _rational_roots(on_exc) if on_exc else ([], False)
        if irrational:
            raise IrrationalInfinitelyNearPoint(
                f"tangent cone {P.format_poly(P.homogeneous_part(site.f, m), 'xy')} has irrational directions")
        centers = set(roots)
        if site.y_axis:
            centers.add(Fraction(0))
        for c in sorted(centers):
            g = P.translate(f1, (0, c)) if c else f1
            children.append(_Site(g, nid, site.y_axis if c == 0 else None))
        tangent_along_y = (0, m) not in site.f
        if tangent_along_y or site.x_axis:
            children.append(_Site(_chart_y(site.f, m), site.x_axis, nid))
        stack.extend(reversed(children))

    for comps in crossings:
        for cid in comps:
            if cid != STRICT:
                nodes[cid].contacts += 1
    if not nodes:
        branches = 1
    return LocalResolution([nodes[i] for i in order_ids], branches, mult_sequence, crossings)


def psi_at(res: LocalResolution) -> int:
    """sum_i m_i (2 - r_i) over the exceptional curves; 1 at a smooth point."""
    if not res.nodes:
        return 1
    return sum(n.mult * (2 - n.contacts) for n in res.nodes)


def milnor_from_psi(res: LocalResolution) -> int:
    return 1 - psi_at(res)


def to_ncmodel(res: LocalResolution, point: str = "p") -> NCModel:
    comps = tuple(Component(n.id, n.mult, n.discrepancy) for n in res.nodes) + (Component(STRICT, 1, 0),)
    fiber: dict = {}
    for n in res.nodes:
        cls = ONE + L - n.contacts
        if cls:
            fiber[(frozenset([n.id]), point)] = cls
    if not res.nodes:
        fiber[(frozenset([STRICT]), point)] = EPoly.const(res.branch_count)
    for comps_at in res.crossings:
        key = (comps_at, point)
        fiber[key] = fiber.get(key, EPoly()) + 1
    return NCModel(2, comps, (point,), fiber)


# ---------------------------------------------------------------- Milnor oracle

def _rank(rows: list[dict]) -> int:
    """Rank over Q of sparse rows {column: Fraction}."""
    pivots: dict = {}
    rank = 0
    for row in rows:
        row = dict(row)
        while row:
            col = min(row)
            if col not in pivots:
                lead = row[col]
                pivots[col] = {k: v / lead for k, v in row.items()}
                rank += 1
                break
            piv = pivots[col]
            factor = row[col]
            for k, v in piv.items():
                nv = row.get(k, 0) - factor * v
                if nv:
                    row[k] = nv
                else:
                    row.pop(k, None)
    return rank


def _truncated_dim(fx: dict, fy: dict, K: int) -> int:
    rows = []
    for g in (fx, fy):
        for a in range(K):
            for b in range(K):
                row = {}
                for (i, j), c in g.items():
                    if i + a < K and j + b < K:
                        row[(i + a, j + b)] = c
                if row:
                    rows.append(row)
    return K * K - _rank(rows)


def milnor_oracle(f, guard: int = 64) -> int:
    """dim_Q Q[x,y]/(f_x, f_y, x^K, y^K), with K doubling from 4 until two values agree."""
    f = as_affine(f)
    fx, fy = P.pderiv(f, 0), P.pderiv(f, 1)
    K = 4
    prev = _truncated_dim(fx, fy, K)
    while K < guard:
        K *= 2
        cur = _truncated_dim(fx, fy, K)
        if cur == prev:
            return cur
        prev = cur
    raise NonIsolated(f"local algebra dimension still growing at K={K}; critical point not isolated")


# ---------------------------------------------------------------- global curves

def _sym(F: dict, gens) -> sympy.Expr:
    expr = 0
    for k, c in F.items():
        term = sympy.Rational(c.numerator, c.denominator)
        for g, e in zip(gens, k):
            term *= g ** e
        expr += term
    return expr


def _frac(r) -> Fraction:
    r = sympy.Rational(r)
    return Fraction(int(r.p), int(r.q))


def _solve_rational(exprs, a, b) -> list[tuple[Fraction, Fraction]]:
    """Common zeros of ``exprs`` in (a, b); all must be rational."""
    exprs = [e for e in (sympy.expand(e) for e in exprs) if e != 0]
    if not exprs:
        raise NotSquarefree("singular locus is not finite")
    G = sympy.groebner(exprs, b, a, order="lex", domain="QQ")
    if list(G.exprs) == [1]:
        return []
    elim = [g for g in G.exprs if not g.has(b)]
    if not elim:
        raise NotSquarefree("singular locus is not finite")
    sols = []
    for factor, _ in sympy.factor_list(elim[0], a, domain="QQ")[1]:
        fp = sympy.Poly(factor, a)
        if fp.degree() > 1:
            raise IrrationalSingularPoint(f"singular point with coordinate a root of {factor}")
        if fp.degree() < 1:
            continue
        a0 = sympy.solve(factor, a)[0]
        rest = [sympy.expand(g.subs(a, a0)) for g in G.exprs]
        rest = [r for r in rest if r != 0]
        if not rest:
            raise NotSquarefree("singular locus is not finite")
        h = rest[0]
        for r in rest[1:]:
            h = sympy.gcd(h, r)
        if not h.has(b):
            continue
        for bf, _ in sympy.factor_list(h, b, domain="QQ")[1]:
            bp = sympy.Poly(bf, b)
            if bp.degree() > 1:
                raise IrrationalSingularPoint(f"singular point with coordinate a root of {bf}")
            if bp.degree() == 1:
                sols.append((_frac(a0), _frac(sympy.solve(bf, b)[0])))
    return sols


def _normalize(pt) -> tuple[Fraction, ...]:
    for c in reversed(pt):
        if c != 0:
            return tuple(Fraction(x) / c for x in pt)
    raise ValueError("zero vector is not a projective point")


def find_singular_points(F) -> list[tuple[Fraction, Fraction, Fraction]]:
    """Singular points of a squarefree projective plane curve, scaled so the last nonzero coordinate is 1."""
    F = as_projective(F)
    x, y, z = sympy.symbols("x y z")
    expr = _sym(F, (x, y, z))
    _, factors = sympy.factor_list(expr, x, y, z)
    if any(e > 1 for _, e in factors):
        raise NotSquarefree("curve equation is not squarefree")
    grads = [sympy.diff(expr, v) for v in (x, y, z)]
    pts = set()
    for a0, b0 in _solve_rational([g.subs(z, 1) for g in grads], x, y):
        pts.add(_normalize((a0, b0, Fraction(1))))
    line = [sympy.expand(g.subs({z: 0, y: 1})) for g in grads]
    line = [g for g in line if g != 0]
    if not line:
        raise NotSquarefree("line at infinity is a multiple component")
    h = line[0]
    for g in line[1:]:
        h = sympy.gcd(h, g)
    if h.has(x):
        for fac, _ in sympy.factor_list(h, x, domain="QQ")[1]:
            fp = sympy.Poly(fac, x)
            if fp.degree() > 1:
                raise IrrationalSingularPoint(f"singular point at infinity with x a root of {fac}")
            if fp.degree() == 1:
                pts.add(_normalize((_frac(sympy.solve(fac, x)[0]), Fraction(1), Fraction(0))))
    elif h == 0:
        raise NotSquarefree("singular locus is not finite")
    if all(sympy.expand(g.subs({x: 1, y: 0, z: 0})) == 0 for g in grads):
        pts.add((Fraction(1), Fraction(0), Fraction(0)))
    return sorted(pts, key=lambda p: (p[2], p[1], p[0]))


def local_equation(F, point) -> dict:
    """Affine equation of F with ``point`` moved to the origin."""
    F = as_projective(F)
    a, b, c = (Fraction(v) for v in point)
    if c != 0:
        g = {(i, j): v for (i, j, k), v in F.items()}  # z = 1
        return P.translate(g, (a / c, b / c))
    if b != 0:
        g = {(i, k): v for (i, j, k), v in F.items()}  # y = 1, coordinates (x, z)
        return P.translate(g, (a / b, 0))
    g = {(j, k): v for (i, j, k), v in F.items()}  # x = 1, coordinates (y, z)
    return g


@dataclass
class SingularPoint:
    point: tuple[Fraction, Fraction, Fraction]
    equation: dict
    resolution: LocalResolution

    @property
    def psi(self) -> int:
        return psi_at(self.resolution)


@dataclass
class GlobalResolution:
    """Resolution of a projective plane curve by point blow-ups of P^2.

    Divisor classes are integer vectors in the basis H, e_1, ..., e_k where
    e_i is the total transform of the i-th exceptional curve.
    """

    degree: int
    singular_points: list[SingularPoint]
    blowup_count: int
    strict_class: tuple[int, ...]
    exceptional_classes: dict[str, tuple[int, ...]]

    def components(self) -> list[tuple[str, int, tuple[int, ...]]]:
        """(id, multiplicity, class) for the strict transform and every exceptional curve."""
        out = [(STRICT, 1, self.strict_class)]
        for sp in self.singular_points:
            for n in sp.resolution.nodes:
                out.append((n.id, n.mult, self.exceptional_classes[n.id]))
        return out


def resolve_curve(F, max_blowups: int = 64) -> GlobalResolution:
    F = as_projective(F)
    d = P.total_degree(F)
    points = []
    next_index = 1
    for pt in find_singular_points(F):
        eq = local_equation(F, pt)
        res = resolve_local(eq, max_blowups=max_blowups, first_index=next_index)
        next_index += res.blowup_count
        points.append(SingularPoint(pt, eq, res))
    k = next_index - 1
    strict = [0] * (k + 1)
    strict[0] = d
    exc: dict[str, list[int]] = {}
    position = {}
    for sp in points:
        for n in sp.resolution.nodes:
            i = int(n.id[1:])
            position[n.id] = i
            strict[i] = -n.strict_mult
            vec = [0] * (k + 1)
            vec[i] = 1
            exc[n.id] = vec
            for older in n.through:
                exc[older][i] -= 1
    return GlobalResolution(d, points, k, tuple(strict), {cid: tuple(v) for cid, v in exc.items()})


@dataclass
class CurveTopology:
    genus: int
    chi: int
    branches: dict
    deltas: dict
    milnor: dict


def curve_topology(gres: GlobalResolution) -> CurveTopology:
    """Genus and Euler characteristic from delta invariants (Milnor numbers via the oracle).

    For a reducible curve ``genus`` is the arithmetic genus of the normalization,
    1 - (#components) + sum of component genera.
    """
    d = gres.degree
    branches, deltas, milnor = {}, {}, {}
    for sp in gres.singular_points:
        mu = milnor_oracle(sp.equation)
        b = sp.resolution.branch_count
        twice = mu + b - 1
        if twice % 2:
            raise NonIntegralDelta(f"delta at {sp.point} is {twice}/2")
        branches[sp.point], deltas[sp.point], milnor[sp.point] = b, twice // 2, mu
    genus = (d - 1) * (d - 2) // 2 - sum(deltas.values())
    chi = 2 - 2 * genus - sum(b - 1 for b in branches.values())
    return CurveTopology(genus, chi, branches, deltas, milnor)
