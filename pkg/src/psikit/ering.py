"""E-polynomial images of Grothendieck-ring classes.

A class [S] is represented by its Hodge-Deligne polynomial E(u, v), an
integer polynomial in two variables.  Classes with equal E-polynomials are
indistinguishable here.  ``MTClass`` is the image after setting v = 1/u,
which kills the torus class T = uv - 1 and so factors through K(Var)/(T).

Rationals are ``fractions.Fraction`` throughout the package.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping

__all__ = [
    "Rat",
    "EPoly",
    "MTClass",
    "std_class",
    "euler",
    "mod_torus",
    "epoly_arith",
    "L",
    "T",
    "ONE",
    "ZERO",
]

Rat = Fraction


def _clean(terms: Mapping) -> dict:
    return {k: int(c) for k, c in terms.items() if c != 0}


class EPoly:
    """Integer polynomial in u, v with nonnegative exponents.

    ``terms`` maps ``(i, j)`` (exponents of u and v) to a nonzero integer.
    Instances are immutable and hashable; ints coerce on arithmetic.
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[tuple[int, int], int] | None = None):
        terms = _clean(terms or {})
        for (i, j) in terms:
            if i < 0 or j < 0:
                raise ValueError(f"negative exponent in EPoly term {(i, j)}")
        self._terms = terms
        self._hash = None

    @classmethod
    def const(cls, c: int) -> "EPoly":
        return cls({(0, 0): c})

    @property
    def terms(self) -> dict[tuple[int, int], int]:
        return dict(self._terms)

    def _coerce(self, other) -> "EPoly":
        if isinstance(other, EPoly):
            return other
        if isinstance(other, int):
            return EPoly.const(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self._terms)
        for k, c in other._terms.items():
            out[k] = out.get(k, 0) + c
        return EPoly(out)

    __radd__ = __add__

    def __neg__(self):
        return EPoly({k: -c for k, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out: dict[tuple[int, int], int] = {}
        for (i1, j1), c1 in self._terms.items():
            for (i2, j2), c2 in other._terms.items():
                k = (i1 + i2, j1 + j2)
                out[k] = out.get(k, 0) + c1 * c2
        return EPoly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise ValueError("EPoly power must be a nonnegative integer")
        result, base = ONE, self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return False
        return self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __bool__(self):
        return bool(self._terms)

    def is_symmetric(self) -> bool:
        return all(self._terms.get((j, i), 0) == c for (i, j), c in self._terms.items())

    def dimension(self) -> int:
        """Half the top total degree; -1 for the zero class."""
        if not self._terms:
            return -1
        return max(i + j for i, j in self._terms) // 2

    def to_list(self) -> list[list[int]]:
        return [[i, j, c] for (i, j), c in sorted(self._terms.items())]

    @classmethod
    def from_list(cls, triples: Iterable) -> "EPoly":
        out: dict[tuple[int, int], int] = {}
        for t in triples:
            if len(t) != 3 or not all(isinstance(x, int) and not isinstance(x, bool) for x in t):
                raise ValueError(f"EPoly term must be three integers, got {t!r}")
            i, j, c = t
            if (i, j) in out:
                raise ValueError(f"duplicate EPoly term {(i, j)}")
            out[(i, j)] = c
        return cls(out)

    def __repr__(self):
        if not self._terms:
            return "EPoly(0)"
        return f"EPoly({self})"

    def __str__(self):
        if not self._terms:
            return "0"
        parts = []
        for (i, j), c in sorted(self._terms.items(), key=lambda kv: (-(kv[0][0] + kv[0][1]), kv[0])):
            mono = "".join(
                s for s in (_power("u", i), _power("v", j)) if s
            )
            parts.append(_signed(c, mono))
        return _join(parts)


class MTClass:
    """Laurent polynomial in u: the image of an E-polynomial under v = 1/u."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[int, int] | None = None):
        self._terms = _clean(terms or {})

    @property
    def terms(self) -> dict[int, int]:
        return dict(self._terms)

    def _coerce(self, other):
        if isinstance(other, MTClass):
            return other
        if isinstance(other, int):
            return MTClass({0: other})
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self._terms)
        for k, c in other._terms.items():
            out[k] = out.get(k, 0) + c
        return MTClass(out)

    __radd__ = __add__

    def __neg__(self):
        return MTClass({k: -c for k, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out: dict[int, int] = {}
        for k1, c1 in self._terms.items():
            for k2, c2 in other._terms.items():
                out[k1 + k2] = out.get(k1 + k2, 0) + c1 * c2
        return MTClass(out)

    __rmul__ = __mul__

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return False
        return self._terms == other._terms

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    def __bool__(self):
        return bool(self._terms)

    def at_one(self) -> int:
        return sum(self._terms.values())

    def is_constant(self) -> bool:
        return all(k == 0 for k in self._terms)

    def is_symmetric(self) -> bool:
        return all(self._terms.get(-k, 0) == c for k, c in self._terms.items())

    def to_list(self) -> list[list[int]]:
        return [[k, c] for k, c in sorted(self._terms.items())]

    @classmethod
    def from_list(cls, pairs: Iterable) -> "MTClass":
        return cls({int(k): int(c) for k, c in pairs})

    def __repr__(self):
        return f"MTClass({self})"

    def __str__(self):
        if not self._terms:
            return "0"
        parts = [_signed(c, _power("u", k)) for k, c in sorted(self._terms.items())]
        return _join(parts)


def _power(var: str, e: int) -> str:
    if e == 0:
        return ""
    if e == 1:
        return var
    return f"{var}^{e}"


def _signed(c: int, mono: str) -> str:
    if not mono:
        return str(c)
    if c == 1:
        return mono
    if c == -1:
        return "-" + mono
    return f"{c}*{mono}"


def _join(parts: list[str]) -> str:
    out = parts[0]
    for p in parts[1:]:
        out += " - " + p[1:] if p.startswith("-") else " + " + p
    return out


ZERO = EPoly()
ONE = EPoly.const(1)
L = EPoly({(1, 1): 1})
T = L - 1


def epoly_arith(a: EPoly, b: EPoly, op: str) -> EPoly:
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown EPoly operation {op!r}")


def std_class(kind: str, n: int = 0) -> EPoly:
    """Standard classes: ``affine``, ``torus``, ``proj``, ``curve`` (genus n), ``point``.

    >>> str(std_class("proj", 2))
    'u^2v^2 + uv + 1'
    """
    if n < 0:
        raise ValueError(f"negative parameter {n} for class {kind!r}")
    if kind == "affine":
        return L ** n
    if kind == "torus":
        return T ** n
    if kind == "proj":
        return sum((L ** i for i in range(n + 1)), ZERO)
    if kind == "curve":
        return EPoly({(0, 0): 1, (1, 0): -n, (0, 1): -n, (1, 1): 1})
    if kind == "point":
        return ONE
    raise ValueError(f"unknown standard class {kind!r}")


def euler(a: EPoly) -> int:
    """Topological Euler characteristic: E(1, 1)."""
    return sum(a._terms.values())


def mod_torus(a: EPoly) -> MTClass:
    out: dict[int, int] = {}
    for (i, j), c in a._terms.items():
        out[i - j] = out.get(i - j, 0) + c
    return MTClass(out)
