"""Sparse polynomials over Q as ``{exponent tuple: Fraction}`` dicts, plus a parser.

The parser accepts integer or rational literals, the given variable names,
``+ - * ^`` and parentheses.  Rational literals are written ``3/4``; ``/``
is only allowed between integer literals.
"""
from __future__ import annotations

import ast
import re
from fractions import Fraction
from math import comb
from typing import Mapping, Sequence

Poly = dict  # {tuple[int, ...]: Fraction}

__all__ = [
    "PolynomialSyntaxError",
    "parse_polynomial",
    "padd",
    "psub",
    "pmul",
    "ppow",
    "pscale",
    "pderiv",
    "pconst",
    "pvar",
    "order",
    "homogeneous_part",
    "is_homogeneous",
    "total_degree",
    "evaluate",
    "format_poly",
]


class PolynomialSyntaxError(ValueError):
    pass


def _norm(p: Mapping) -> Poly:
    return {k: Fraction(c) for k, c in p.items() if c != 0}


def pconst(c, nvars: int) -> Poly:
    return _norm({(0,) * nvars: c})


def pvar(i: int, nvars: int) -> Poly:
    e = [0] * nvars
    e[i] = 1
    return {tuple(e): Fraction(1)}


def padd(a: Poly, b: Poly) -> Poly:
    out = dict(a)
    for k, c in b.items():
        out[k] = out.get(k, 0) + c
    return _norm(out)


def pscale(a: Poly, c) -> Poly:
    return _norm({k: v * c for k, v in a.items()})


def psub(a: Poly, b: Poly) -> Poly:
    return padd(a, pscale(b, -1))


def pmul(a: Poly, b: Poly) -> Poly:
    out: dict = {}
    for k1, c1 in a.items():
        for k2, c2 in b.items():
            k = tuple(x + y for x, y in zip(k1, k2))
            out[k] = out.get(k, 0) + c1 * c2
    return _norm(out)


def ppow(a: Poly, n: int, nvars: int) -> Poly:
    result = pconst(1, nvars)
    base = a
    while n:
        if n & 1:
            result = pmul(result, base)
        base = pmul(base, base)
        n >>= 1
    return result


def pderiv(a: Poly, i: int) -> Poly:
    out = {}
    for k, c in a.items():
        if k[i]:
            e = list(k)
            e[i] -= 1
            out[tuple(e)] = c * k[i]
    return _norm(out)


def total_degree(a: Poly) -> int:
    return max((sum(k) for k in a), default=-1)


def order(a: Poly) -> int:
    """Lowest total degree of a term (the multiplicity at the origin); -1 for 0."""
    return min((sum(k) for k in a), default=-1)


def homogeneous_part(a: Poly, d: int) -> Poly:
    return {k: c for k, c in a.items() if sum(k) == d}


def is_homogeneous(a: Poly) -> bool:
    return len({sum(k) for k in a}) <= 1


def evaluate(a: Poly, point: Sequence) -> Fraction:
    total = Fraction(0)
    for k, c in a.items():
        term = c
        for x, e in zip(point, k):
            term *= Fraction(x) ** e
        total += term
    return total


def translate(a: Poly, shift: Sequence) -> Poly:
    """a(x_1 + s_1, ..., x_n + s_n)."""
    out: dict = {}
    for k, c in a.items():
        partial = {(): Fraction(c)}
        for e, s in zip(k, shift):
            nxt: dict = {}
            for prefix, v in partial.items():
                for t in range(e + 1):
                    coeff = v * comb(e, t) * Fraction(s) ** (e - t)
                    if coeff:
                        nxt[prefix + (t,)] = nxt.get(prefix + (t,), 0) + coeff
            partial = nxt
        for kk, v in partial.items():
            out[kk] = out.get(kk, 0) + v
    return _norm(out)


def format_poly(a: Poly, names: Sequence[str]) -> str:
    if not a:
        return "0"
    parts = []
    for k, c in sorted(a.items(), key=lambda kv: (-sum(kv[0]), [-e for e in kv[0]])):
        mono = "*".join(n if e == 1 else f"{n}^{e}" for n, e in zip(names, k) if e)
        if not mono:
            parts.append(str(c))
        elif c == 1:
            parts.append(mono)
        elif c == -1:
            parts.append("-" + mono)
        else:
            parts.append(f"{c}*{mono}")
    out = parts[0]
    for p in parts[1:]:
        out += " - " + p[1:] if p.startswith("-") else " + " + p
    return out


_ALLOWED = re.compile(r"^[0-9a-zA-Z_+\-*/^()\s]*$")


def parse_polynomial(text: str, variables: Sequence[str] = ("x", "y")) -> Poly:
    """Parse ``text`` into a polynomial in ``variables``.

    >>> format_poly(parse_polynomial("y^2 - x^3"), "xy")
    '-x^3 + y^2'
    """
    if not isinstance(text, str) or not text.strip():
        raise PolynomialSyntaxError("empty polynomial")
    if not _ALLOWED.match(text) or "**" in text:
        raise PolynomialSyntaxError(f"unsupported characters in {text!r}")
    try:
        tree = ast.parse(text.replace("^", "**"), mode="eval")
    except SyntaxError as exc:
        raise PolynomialSyntaxError(f"cannot parse {text!r}: {exc.msg}") from None
    n = len(variables)
    index = {v: i for i, v in enumerate(variables)}

    def literal(node):
        if isinstance(node, ast.Constant) and type(node.value) is int:
            return node.value
        return None

    def walk(node) -> Poly:
        if isinstance(node, ast.Expression):
            return walk(node.body)
        if isinstance(node, ast.Constant):
            if type(node.value) is not int:
                raise PolynomialSyntaxError(f"only integer literals allowed, got {node.value!r}")
            return pconst(node.value, n)
        if isinstance(node, ast.Name):
            if node.id not in index:
                raise PolynomialSyntaxError(f"unknown variable {node.id!r}; expected {', '.join(variables)}")
            return pvar(index[node.id], n)
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
            inner = walk(node.operand)
            return pscale(inner, -1) if isinstance(node.op, ast.USub) else inner
        if isinstance(node, ast.BinOp):
            if isinstance(node.op, ast.Add):
                return padd(walk(node.left), walk(node.right))
            if isinstance(node.op, ast.Sub):
                return psub(walk(node.left), walk(node.right))
            if isinstance(node.op, ast.Mult):
                return pmul(walk(node.left), walk(node.right))
            if isinstance(node.op, ast.Pow):
                e = literal(node.right)
                if e is None or e < 0:
                    raise PolynomialSyntaxError("exponents must be nonnegative integer literals")
                return ppow(walk(node.left), e, n)
            if isinstance(node.op, ast.Div):
                a, b = literal(node.left), literal(node.right)
                if a is None or b is None:
                    raise PolynomialSyntaxError("'/' is only allowed between integer literals")
                if b == 0:
                    raise PolynomialSyntaxError("division by zero in literal")
                return pconst(Fraction(a, b), n)
        raise PolynomialSyntaxError(f"unsupported syntax in {text!r}")

    return walk(tree)
