"""Normal-crossings divisor models and the specialization function.

A model records, for a resolution ``w: W -> V`` with ``D = w^{-1}(X)`` a
normal-crossings divisor, the components ``D_l`` with multiplicities and
discrepancies, a finite set of marked base points ``p`` of ``X``, and the
E-polynomial classes of the open strata ``D_I°`` restricted to the fibers
``w^{-1}(p)`` (and optionally their absolute classes).

Everything downstream is computed from those classes: ``psi`` is the Euler
characteristic push-forward of the multiplicity-on-open-strata function,
``motivic_psi`` the same sum taken in E-polynomials mod T, and ``blow_up``
rewrites a model along a normal-crossings center.
"""
from __future__ import annotations

import itertools
import json
import random
from dataclasses import dataclass, replace
from fractions import Fraction
from math import prod
from pathlib import Path
from typing import Mapping

from .ering import EPoly, MTClass, ONE, L, T, ZERO, euler, mod_torus, std_class

__all__ = [
    "Component",
    "NCModel",
    "CenterSpec",
    "Alpha",
    "IDENTITY",
    "AWAY",
    "ModelError",
    "AlphaError",
    "validate",
    "psi_strata",
    "pushforward",
    "psi",
    "motivic_psi",
    "naive_lift",
    "arrangement_stratum_class",
    "blow_up",
    "behrend_mu",
    "unit_reconstruction",
    "random_center",
    "validate_center",
    "model_to_dict",
    "model_from_dict",
    "center_to_dict",
    "center_from_dict",
    "dumps_model",
    "dumps_center",
    "dumps_canonical",
    "load_model",
    "save_model",
    "load_center",
]

AWAY = "away"

class ModelError(ValueError):
    """Malformed model or center, or a missing ingredient for an operation."""


class AlphaError(ValueError):
    """An alpha table is undefined on a multiplicity that occurs."""


@dataclass(frozen=True)
class Component:
    id: str
    mult: int
    discrepancy: int | None = None


@dataclass(frozen=True)
class NCModel:
    ambient_dim: int
    components: tuple[Component, ...]
    points: tuple[str, ...]
    strata_fiber: Mapping[tuple[frozenset, str], EPoly]
    strata_total: Mapping[frozenset, EPoly] | None = None

    def component(self, cid: str) -> Component:
        for c in self.components:
            if c.id == cid:
                return c
        raise KeyError(cid)

    @property
    def ids(self) -> list[str]:
        return [c.id for c in self.components]

    def mults(self) -> dict[str, int]:
        return {c.id: c.mult for c in self.components}

    def strata_keys(self) -> set[frozenset]:
        keys = {I for I, _ in self.strata_fiber}
        if self.strata_total:
            keys |= set(self.strata_total)
        return keys

    def fiber(self, p: str) -> dict[frozenset, EPoly]:
        return {I: c for (I, q), c in self.strata_fiber.items() if q == p}


@dataclass(frozen=True)
class CenterSpec:
    """A blow-up center Z meeting D with normal crossings.

    ``contains`` is the set of components containing Z; each piece
    ``(J, at)`` is the class of ``Z ∩ D°_{contains ∪ J}`` over the marked
    point ``at`` (or over no marked point, ``at == "away"``).
    """

    codim: int
    contains: frozenset
    pieces: Mapping[tuple[frozenset, str], EPoly]


class Alpha:
    """A function Z -> Z given as a finite table plus an optional default.

    ``Alpha()`` is the identity.  With ``identity=False`` and no default the
    function is undefined off the table and evaluating it there raises.
    """

    def __init__(self, table: Mapping[int, int] | None = None, default: int | None = None,
                 identity: bool | None = None, name: str | None = None):
        self.table = dict(table or {})
        self.default = default
        self.identity = (table is None and default is None) if identity is None else identity
        self.name = name

    @classmethod
    def constant(cls, c: int) -> "Alpha":
        return cls({}, default=c, identity=False, name=f"const:{c}")

    @classmethod
    def indicator(cls, m: int) -> "Alpha":
        return cls({m: 1}, default=0, identity=False, name=f"eps:{m}")

    def __call__(self, m: int) -> int:
        if m in self.table:
            return self.table[m]
        if self.identity:
            return m
        if self.default is None:
            raise AlphaError(f"alpha undefined at multiplicity {m}")
        return self.default

    def __repr__(self):
        if self.name:
            return f"Alpha<{self.name}>"
        if self.identity and not self.table:
            return "Alpha<identity>"
        return f"Alpha(table={self.table}, default={self.default}, identity={self.identity})"


IDENTITY = Alpha(name="identity")


def _alpha(alpha) -> Alpha:
    if alpha is None:
        return IDENTITY
    if isinstance(alpha, Alpha):
        return alpha
    if isinstance(alpha, Mapping):
        return Alpha(alpha, identity=False)
    raise TypeError(f"cannot interpret {alpha!r} as an alpha function")


# ---------------------------------------------------------------- validation

def validate(model: NCModel) -> list[str]:
    """All invariant violations of ``model``; empty when it is well formed."""
    out: list[str] = []
    if not isinstance(model.ambient_dim, int) or model.ambient_dim < 1:
        out.append(f"ambient dimension must be a positive integer, got {model.ambient_dim!r}")
    ids = [c.id for c in model.components]
    for cid in sorted({i for i in ids if ids.count(i) > 1}):
        out.append(f"duplicate component id {cid!r}")
    for c in model.components:
        if not isinstance(c.id, str) or not c.id:
            out.append(f"component id must be a nonempty string, got {c.id!r}")
        if not isinstance(c.mult, int) or c.mult < 1:
            out.append(f"multiplicity must be ≥ 1 (component {c.id!r} has {c.mult!r})")
        if c.discrepancy is not None and (not isinstance(c.discrepancy, int) or c.discrepancy < 0):
            out.append(f"discrepancy must be ≥ 0 (component {c.id!r} has {c.discrepancy!r})")
    for p in sorted({p for p in model.points if model.points.count(p) > 1}):
        out.append(f"duplicate point id {p!r}")
    known = set(ids)
    pts = set(model.points)

    def check_key(I, where):
        if not I:
            out.append(f"empty stratum key {where}")
        for cid in sorted(set(I) - known):
            out.append(f"unknown component {cid!r} in stratum {where}")
        if len(I) > model.ambient_dim:
            out.append(f"stratum {where} is deeper than the ambient dimension")

    for (I, p), cls in sorted(model.strata_fiber.items(), key=lambda kv: (_key_sort(kv[0][0]), kv[0][1])):
        where = f"{_fmt(I)} at {p!r}"
        check_key(I, where)
        if p not in pts:
            out.append(f"unknown point {p!r} in stratum {where}")
        if not cls:
            out.append(f"zero class stored for stratum {where}")
    for I, cls in sorted((model.strata_total or {}).items(), key=lambda kv: _key_sort(kv[0])):
        where = f"{_fmt(I)} (total)"
        check_key(I, where)
        if not cls:
            out.append(f"zero class stored for stratum {where}")
    return out


def validate_center(model: NCModel, center: CenterSpec) -> list[str]:
    out: list[str] = []
    known = set(model.ids)
    if not isinstance(center.codim, int) or center.codim < 2:
        out.append(f"center codimension must be ≥ 2, got {center.codim!r}")
    elif center.codim > model.ambient_dim:
        out.append("center codimension exceeds the ambient dimension")
    C = center.contains
    if not C:
        out.append("center must lie on at least one component")
    if isinstance(center.codim, int) and len(C) > center.codim:
        out.append("center lies on more components than its codimension allows")
    for cid in sorted(set(C) - known):
        out.append(f"unknown component {cid!r} in center")
    if not center.pieces:
        out.append("center has no pieces")
    for (J, at), cls in center.pieces.items():
        where = f"piece {_fmt(J)} at {at!r}"
        if J & C:
            out.append(f"{where} overlaps the containing components")
        for cid in sorted(set(J) - known):
            out.append(f"unknown component {cid!r} in {where}")
        if not cls:
            out.append(f"{where} has zero class")
        key = C | J
        if at == AWAY:
            if model.strata_total is None or key not in model.strata_total:
                out.append(f"{where} refers to a stratum missing from strata_total")
        else:
            if at not in model.points:
                out.append(f"unknown point {at!r} in {where}")
            elif (key, at) not in model.strata_fiber:
                out.append(f"{where} refers to a stratum missing from strata_fiber")
            if model.strata_total is not None and key not in model.strata_total:
                out.append(f"{where} refers to a stratum missing from strata_total")
    return out


def _fmt(I) -> str:
    return "{" + ",".join(sorted(I)) + "}"


def _key_sort(I):
    return (len(I), sorted(I))


# ---------------------------------------------------------------- psi

def psi_strata(model: NCModel, alpha=None) -> dict[frozenset, int]:
    """alpha(m_l) on each open stratum D_l°, 0 on every deeper stratum."""
    a = _alpha(alpha)
    f = {frozenset([c.id]): a(c.mult) for c in model.components}
    for I in model.strata_keys():
        if len(I) >= 2:
            f[I] = 0
    return f


def pushforward(model: NCModel, f: Mapping[frozenset, int | Fraction]) -> dict[str, Fraction]:
    """Value at p: sum over strata of f(I) times the Euler characteristic of the fiber piece."""
    out = {p: Fraction(0) for p in model.points}
    for (I, p), cls in model.strata_fiber.items():
        w = f.get(I, 0)
        if w:
            out[p] += w * euler(cls)
    return out


def psi(model: NCModel, alpha=None) -> dict[str, int]:
    values = pushforward(model, psi_strata(model, alpha))
    return {p: _as_int(v) for p, v in values.items()}


def _as_int(v: Fraction) -> int:
    if v.denominator != 1:
        raise ArithmeticError(f"expected an integer value, got {v}")
    return v.numerator


def _classes(model: NCModel, at: str | None) -> dict[frozenset, EPoly]:
    if at is None:
        if model.strata_total is None:
            raise ModelError("model has no strata_total; total classes unavailable")
        return dict(model.strata_total)
    if at not in model.points:
        raise ModelError(f"unknown point {at!r}")
    return model.fiber(at)


def motivic_psi(model: NCModel, alpha=None, at: str | None = None) -> MTClass:
    """Sum of alpha(m_l)[D_l°] mod T, over the fiber at ``at`` or in total."""
    a = _alpha(alpha)
    mults = model.mults()
    classes = _classes(model, at)
    acc = ZERO
    for I, cls in classes.items():
        if len(I) == 1:
            (cid,) = I
            acc = acc + a(mults[cid]) * cls
    return mod_torus(acc)


def naive_lift(model: NCModel, at: str | None = None) -> EPoly:
    """sum over strata of (-T)^(|I|-1) [D_I°], without reduction mod T."""
    acc = ZERO
    for I, cls in _classes(model, at).items():
        acc = acc + (-T) ** (len(I) - 1) * cls
    return acc


# ---------------------------------------------------------------- blow-ups

def arrangement_stratum_class(r: int, e: int, k: int) -> EPoly:
    """Class of the locus in P^r on exactly a given k of e normal-crossings hyperplanes."""
    if r < 0 or not (0 <= k <= e <= r + 1):
        raise ValueError(f"need 0 ≤ k ≤ e ≤ r+1, got r={r}, e={e}, k={k}")
    if k < e:
        return L ** (r + 1 - e) * T ** (e - 1 - k)
    if e <= r:
        return std_class("proj", r - e)
    return ZERO


def _bump(store: dict, key, delta: EPoly) -> None:
    new = store.get(key, ZERO) + delta
    if new:
        store[key] = new
    else:
        store.pop(key, None)


def blow_up(model: NCModel, center: CenterSpec, new_id: str) -> NCModel:
    """The model of the blow-up of W along ``center``.

    Proper transforms keep their multiplicity and discrepancy; the exceptional
    divisor gets multiplicity sum(m_l) and discrepancy (codim - 1) + sum(mu_l)
    over the components containing the center.  Each piece of the center is
    removed from its stratum and replaced by its P^r-bundle, split along the
    hyperplanes cut by the containing components.
    """
    problems = validate(model)
    if problems:
        raise ModelError("invalid model: " + "; ".join(problems))
    problems = validate_center(model, center)
    if problems:
        raise ModelError("invalid center: " + "; ".join(problems))
    if new_id in model.ids:
        raise ModelError(f"component id {new_id!r} already in use")

    C = frozenset(center.contains)
    r = center.codim - 1
    e = len(C)
    inside = [model.component(cid) for cid in sorted(C)]
    discs = [c.discrepancy for c in inside]
    disc = None if any(d is None for d in discs) else r + sum(discs)
    exc = Component(new_id, sum(c.mult for c in inside), disc)

    fiber = dict(model.strata_fiber)
    total = None if model.strata_total is None else dict(model.strata_total)
    subsets = [frozenset(K) for n in range(e + 1) for K in itertools.combinations(sorted(C), n)]
    for (J, at), zeta in center.pieces.items():
        J = frozenset(J)
        updates = [(C | J, -zeta)]
        for K in subsets:
            cls = arrangement_stratum_class(r, e, len(K))
            if cls:
                updates.append((frozenset([new_id]) | K | J, zeta * cls))
        for key, delta in updates:
            if at != AWAY:
                _bump(fiber, (key, at), delta)
            if total is not None:
                _bump(total, key, delta)
    return replace(model, components=model.components + (exc,), strata_fiber=fiber, strata_total=total)


def random_center(model: NCModel, rng: random.Random) -> CenterSpec | None:
    """A random combinatorially admissible center, or None if none was found.

    Candidates: a point of a positive-dimensional (or point) stratum over a
    marked point or away from them; a whole closed stratum D_C with |C| ≥ 2;
    in dimension ≥ 3 a curve inside an open stratum, with closure points on
    deeper strata.
    """
    n = model.ambient_dim
    options = []
    fiber_keys = sorted(model.strata_fiber, key=lambda kv: (_key_sort(kv[0]), kv[1]))
    for I, p in fiber_keys:
        cls = model.strata_fiber[(I, p)]
        if _has_points(cls) and (model.strata_total is None or I in model.strata_total):
            options.append(("point", I, p))
            if n >= 3 and len(I) <= n - 1 and cls.dimension() >= 1:
                options.append(("curve", I, p))
    if model.strata_total is not None:
        for I in sorted(model.strata_total, key=_key_sort):
            if _has_points(model.strata_total[I]):
                options.append(("point", I, AWAY))
    deep = {I for I in model.strata_keys() if len(I) >= 2}
    for C in sorted(deep, key=_key_sort):
        options.append(("closed", C, None))
    rng.shuffle(options)
    for kind, I, p in options:
        center = _make_center(model, kind, I, p, rng)
        if center is not None and not validate_center(model, center):
            return center
    return None


def _has_points(cls: EPoly) -> bool:
    return cls.dimension() >= 1 or euler(cls) >= 1


def _make_center(model, kind, I, p, rng) -> CenterSpec | None:
    n = model.ambient_dim
    if kind == "point":
        return CenterSpec(n, frozenset(I), {(frozenset(), p): ONE})
    if kind == "curve":
        pieces = {(frozenset(), p): rng.choice([T, L, T - 1 + L])}
        for key, q in model.strata_fiber:
            if q == p and key > I and len(key) == len(I) + 1 and rng.random() < 0.5:
                pieces[(key - I, p)] = ONE
        return CenterSpec(n - 1, frozenset(I), pieces)
    C = I
    if len(C) > n:
        return None
    pieces = {}
    for (key, q), cls in model.strata_fiber.items():
        if key >= C:
            pieces[(key - C, q)] = cls
    if model.strata_total is not None:
        for key, cls in model.strata_total.items():
            if key >= C:
                rest = cls
                for q in model.points:
                    rest = rest - model.strata_fiber.get((key, q), ZERO)
                if rest:
                    pieces[(key - C, AWAY)] = rest
    if not pieces:
        return None
    return CenterSpec(len(C), frozenset(C), pieces)


# ---------------------------------------------------------------- Behrend / mu

def _discrepancies(model: NCModel) -> dict[str, int]:
    out = {}
    for c in model.components:
        if c.discrepancy is None:
            raise ModelError(f"component {c.id!r} carries no discrepancy")
        out[c.id] = c.discrepancy
    return out


def _unit_weights(model: NCModel) -> dict[frozenset, Fraction]:
    disc = _discrepancies(model)
    return {I: Fraction(1, prod(1 + disc[k] for k in I)) for I in model.strata_keys()}


def unit_reconstruction(model: NCModel) -> dict[str, Fraction]:
    """Push-forward of sum over strata of 1/prod(1 + mu_k) times 1_{D_K°}; equals 1 on X."""
    return pushforward(model, _unit_weights(model))


def behrend_mu(model: NCModel, dim_x: int | None = None) -> dict[str, Fraction]:
    """Milnor-type function from a resolution with discrepancies.

    (-1)^dim X d_*( sum_l (m_l - 1/(1+mu_l)) 1_{D_l°} - sum_{|K|≥2} 1/prod(1+mu_k) 1_{D_K°} )
    """
    if dim_x is None:
        dim_x = model.ambient_dim - 1
    weights = _unit_weights(model)
    mults = model.mults()
    f = {}
    for I, w in weights.items():
        if len(I) == 1:
            (cid,) = I
            f[I] = mults[cid] - w
        else:
            f[I] = -w
    sign = -1 if dim_x % 2 else 1
    return {p: sign * v for p, v in pushforward(model, f).items()}


# ---------------------------------------------------------------- JSON

def _ids_sorted(I) -> list[str]:
    return sorted(I)


def model_to_dict(model: NCModel) -> dict:
    comps = []
    for c in sorted(model.components, key=lambda c: c.id):
        d = {"id": c.id, "mult": c.mult}
        if c.discrepancy is not None:
            d["discrepancy"] = c.discrepancy
        comps.append(d)
    fiber = [
        {"on": _ids_sorted(I), "at": p, "class": cls.to_list()}
        for (I, p), cls in sorted(model.strata_fiber.items(), key=lambda kv: (kv[0][1], _key_sort(kv[0][0])))
    ]
    out = {
        "ambient_dim": model.ambient_dim,
        "components": comps,
        "points": sorted(model.points),
        "strata_fiber": fiber,
    }
    if model.strata_total is not None:
        out["strata_total"] = [
            {"on": _ids_sorted(I), "class": cls.to_list()}
            for I, cls in sorted(model.strata_total.items(), key=lambda kv: _key_sort(kv[0]))
        ]
    return out


def model_from_dict(data: Mapping) -> NCModel:
    try:
        comps = tuple(
            Component(str(c["id"]), c["mult"], c.get("discrepancy")) for c in data["components"]
        )
        fiber: dict = {}
        for entry in data.get("strata_fiber", []):
            key = (frozenset(entry["on"]), entry["at"])
            if key in fiber:
                raise ModelError(f"duplicate stratum {_fmt(key[0])} at {key[1]!r}")
            fiber[key] = EPoly.from_list(entry["class"])
        total = None
        if "strata_total" in data and data["strata_total"] is not None:
            total = {}
            for entry in data["strata_total"]:
                key = frozenset(entry["on"])
                if key in total:
                    raise ModelError(f"duplicate total stratum {_fmt(key)}")
                total[key] = EPoly.from_list(entry["class"])
        return NCModel(data["ambient_dim"], comps, tuple(data["points"]), fiber, total)
    except (KeyError, TypeError) as exc:
        raise ModelError(f"malformed model: {exc!r}") from None


def center_to_dict(center: CenterSpec) -> dict:
    return {
        "codim": center.codim,
        "contains": sorted(center.contains),
        "pieces": [
            {"extra": sorted(J), "at": at, "class": cls.to_list()}
            for (J, at), cls in sorted(center.pieces.items(), key=lambda kv: (kv[0][1], _key_sort(kv[0][0])))
        ],
    }


def center_from_dict(data: Mapping) -> CenterSpec:
    try:
        pieces = {}
        for entry in data["pieces"]:
            key = (frozenset(entry.get("extra", [])), entry["at"])
            if key in pieces:
                raise ModelError(f"duplicate center piece {_fmt(key[0])} at {key[1]!r}")
            pieces[key] = EPoly.from_list(entry["class"])
        return CenterSpec(data["codim"], frozenset(data["contains"]), pieces)
    except (KeyError, TypeError) as exc:
        raise ModelError(f"malformed center: {exc!r}") from None


def dumps_canonical(data: Mapping) -> str:
    """JSON with one list entry per line; stable for diffs."""
    lines = ["{"]
    items = list(data.items())
    for n, (key, value) in enumerate(items):
        tail = "," if n < len(items) - 1 else ""
        if isinstance(value, list) and value and isinstance(value[0], dict):
            lines.append(f"  {json.dumps(key)}: [")
            for m, entry in enumerate(value):
                sep = "," if m < len(value) - 1 else ""
                lines.append(f"    {json.dumps(entry, ensure_ascii=False)}{sep}")
            lines.append(f"  ]{tail}")
        else:
            lines.append(f"  {json.dumps(key)}: {json.dumps(value, ensure_ascii=False)}{tail}")
    lines.append("}")
    return "\n".join(lines) + "\n"


def dumps_model(model: NCModel) -> str:
    return dumps_canonical(model_to_dict(model))


def dumps_center(center: CenterSpec) -> str:
    return dumps_canonical(center_to_dict(center))


def load_model(path) -> NCModel:
    try:
        data = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise ModelError(f"{path}: invalid JSON ({exc})") from None
    return model_from_dict(data)


def save_model(model: NCModel, path) -> None:
    Path(path).write_text(dumps_model(model))


def load_center(path) -> CenterSpec:
    try:
        data = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise ModelError(f"{path}: invalid JSON ({exc})") from None
    return center_from_dict(data)
