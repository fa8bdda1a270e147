"""Command-line front end.

Every verb builds a plain report dict; ``--format json`` prints it as JSON
and ``--format text`` renders the same dict as aligned lines and tables, so
both formats carry the same numbers.  Exit status is 0 on success, 1 when a
check fails and 2 on usage, parse or input errors.
"""
from __future__ import annotations

import argparse
import json
import random
import sys
from fractions import Fraction
from pathlib import Path

from . import __version__
from .chowsurf import csm_identity_check, wma_standin
from .corpus import GLOBAL_CORPUS, fixture_dir, fixtures_run
from .curveres import (
    ResolutionError,
    milnor_from_psi,
    milnor_oracle,
    psi_at,
    resolve_curve,
    resolve_local,
    to_ncmodel,
)
from .ering import EPoly, MTClass
from .invariance import check_invariance
from .ncmodel import (
    IDENTITY,
    Alpha,
    AlphaError,
    ModelError,
    behrend_mu,
    blow_up,
    center_to_dict,
    dumps_model,
    load_center,
    load_model,
    model_to_dict,
    motivic_psi,
    naive_lift,
    psi,
    random_center,
    unit_reconstruction,
    validate,
)
from .poly import PolynomialSyntaxError

EXIT_OK, EXIT_CHECK, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(message)


def parse_alpha(text: str | None) -> Alpha:
    """``identity``, ``const:N``, ``eps:M`` or ``table:M=V,...[,default=V]``."""
    if text is None or text == "identity":
        return IDENTITY
    kind, _, rest = text.partition(":")
    try:
        if kind == "const":
            return Alpha.constant(int(rest))
        if kind == "eps":
            return Alpha.indicator(int(rest))
        if kind == "table":
            table, default = {}, None
            for item in filter(None, rest.split(",")):
                k, _, v = item.partition("=")
                if k.strip() == "default":
                    default = int(v)
                else:
                    table[int(k)] = int(v)
            return Alpha(table, default=default, identity=False, name=text)
    except ValueError:
        pass
    raise UsageError(f"cannot parse alpha {text!r}; use identity, const:N, eps:M or table:M=V,...[,default=V]")


def _resolve_in(path: str) -> Path:
    p = Path(path)
    if p.is_file():
        return p
    fallback = fixture_dir() / p.name
    if fallback.is_file():
        return fallback
    raise FileNotFoundError(f"no such model file: {path}")


def _num(x):
    if isinstance(x, Fraction):
        return int(x) if x.denominator == 1 else str(x)
    if isinstance(x, (EPoly, MTClass)):
        return str(x)
    return x


def _graph_rows(res) -> list[dict]:
    return [
        {"id": n.id, "m": n.mult, "a": n.discrepancy, "r": n.contacts}
        for n in res.nodes
    ]


# ---------------------------------------------------------------- verbs

def cmd_psi_curve(args) -> tuple[dict, int]:
    res = resolve_local(_need_poly(args), max_blowups=args.max_blowups)
    value = psi_at(res)
    return {
        "poly": args.poly,
        "psi": value,
        "mu": milnor_from_psi(res),
        "milnor_oracle": milnor_oracle(args.poly),
        "blowups": res.blowup_count,
        "branches": res.branch_count,
        "multiplicities": [n.mult for n in res.nodes],
        "graph": _graph_rows(res),
    }, EXIT_OK


def cmd_milnor(args) -> tuple[dict, int]:
    res = resolve_local(_need_poly(args), max_blowups=args.max_blowups)
    oracle = milnor_oracle(args.poly)
    from_psi = milnor_from_psi(res)
    behrend = behrend_mu(to_ncmodel(res))["p"]
    agree = oracle == from_psi == behrend
    return {
        "poly": args.poly,
        "mu_oracle": oracle,
        "mu_from_psi": from_psi,
        "mu_behrend": _num(behrend),
        "agree": agree,
    }, EXIT_OK if agree else EXIT_CHECK


def _need_poly(args) -> str:
    if not args.poly:
        raise UsageError("--poly is required")
    return args.poly


def _need_model(args):
    if not args.inp:
        raise UsageError("--in is required")
    return load_model(_resolve_in(args.inp))


def cmd_model_psi(args) -> tuple[dict, int]:
    model = _need_model(args)
    alpha = parse_alpha(args.alpha)
    values = psi(model, alpha)
    return {
        "model": args.inp,
        "alpha": repr(alpha),
        "psi": [{"point": p, "value": values[p]} for p in sorted(values)],
    }, EXIT_OK


def cmd_model_motivic(args) -> tuple[dict, int]:
    model = _need_model(args)
    alpha = parse_alpha(args.alpha)
    points = [args.at] if args.at else sorted(model.points)
    rows = []
    for p in points:
        if p not in model.points:
            raise ModelError(f"unknown point {p!r}")
        rows.append({
            "point": p,
            "psi_mod_T": str(motivic_psi(model, alpha, at=p)),
            "naive_lift": str(naive_lift(model, at=p)),
        })
    report = {"model": args.inp, "alpha": repr(alpha), "fibers": rows}
    if model.strata_total is not None and not args.at:
        report["total_psi_mod_T"] = str(motivic_psi(model, alpha))
        report["total_naive_lift"] = str(naive_lift(model))
    return report, EXIT_OK


def cmd_model_behrend(args) -> tuple[dict, int]:
    model = _need_model(args)
    mu = behrend_mu(model)
    unit = unit_reconstruction(model)
    return {
        "model": args.inp,
        "points": [{"point": p, "mu": _num(mu[p]), "unit": _num(unit[p])} for p in sorted(mu)],
    }, EXIT_OK


def cmd_model_blowup(args) -> tuple[dict, int]:
    model = _need_model(args)
    if args.center:
        center = load_center(args.center)
    else:
        center = random_center(model, random.Random(args.seed))
        if center is None:
            raise ModelError("no admissible center found")
    new_id = args.new_id or _fresh(model)
    out = blow_up(model, center, new_id)
    problems = validate(out)
    text = dumps_model(out)
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    return {
        "model": args.inp,
        "center": center_to_dict(center),
        "new_component": {"id": new_id, "mult": out.component(new_id).mult,
                          "discrepancy": out.component(new_id).discrepancy},
        "valid": not problems,
        "out": args.out,
        "result": model_to_dict(out),
    }, EXIT_OK if not problems else EXIT_CHECK


def _fresh(model) -> str:
    n = 1
    while f"E{n}" in model.ids:
        n += 1
    return f"E{n}"


def cmd_check_invariance(args) -> tuple[dict, int]:
    model = _need_model(args)
    report = check_invariance(model, seed=args.seed, rounds=args.rounds)
    out = {"model": args.inp, **report.to_dict()}
    return out, EXIT_OK if report.ok else EXIT_CHECK


def cmd_csm_check(args) -> tuple[dict, int]:
    curves = {"input": args.poly} if args.poly else dict(GLOBAL_CORPUS)
    rows, points, ok = [], [], True
    for name, F in curves.items():
        gres = resolve_curve(F, max_blowups=args.max_blowups)
        rep = csm_identity_check(gres)
        wma = wma_standin(gres)
        ok = ok and rep.ok
        points += [{"curve": name, **pt} for pt in rep.points]
        rows.append({
            "curve": name,
            "poly": F,
            "degree": rep.degree,
            "lhs": rep.lhs.format(top_label="[P2]"),
            "rhs": rep.rhs.format(top_label="[P2]"),
            "equal": rep.equal,
            "degree_lhs": _num(rep.degree_lhs),
            "degree_rhs": _num(rep.degree_rhs),
            "chi_X": rep.chi_X,
            "chi_general_fiber": rep.chi_general_fiber,
            "sum_mu": _num(wma.cls.pts),
            "ok": rep.ok,
        })
    return {"curves": rows, "points": points, "ok": ok}, EXIT_OK if ok else EXIT_CHECK


def cmd_fixtures_run(args) -> tuple[dict, int]:
    rows = fixtures_run()
    ok = all(r.passed for r in rows)
    return {"fixtures": str(fixture_dir()), "rows": [r.to_dict() for r in rows], "ok": ok}, \
        EXIT_OK if ok else EXIT_CHECK


VERBS = {
    "psi-curve": (cmd_psi_curve, "resolve a plane curve germ at the origin and report psi and mu"),
    "milnor": (cmd_milnor, "Milnor number three ways: local algebra, psi, Behrend formula"),
    "model-psi": (cmd_model_psi, "psi (alpha-weighted) of a normal crossings model"),
    "model-motivic": (cmd_model_motivic, "motivic psi mod T and the naive lift"),
    "model-behrend": (cmd_model_behrend, "Behrend-type mu and unit reconstruction"),
    "model-blowup": (cmd_model_blowup, "blow up a model along a center"),
    "check-invariance": (cmd_check_invariance, "random blow-up sequences must preserve every invariant"),
    "csm-check": (cmd_csm_check, "CSM class identity and degree checks for projective plane curves"),
    "fixtures-run": (cmd_fixtures_run, "check all shipped fixtures against known values"),
}


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--rounds", type=int, default=100)
    common.add_argument("--max-blowups", type=int, default=64)
    parser = _Parser(prog="psikit", description="Specialization functions from resolutions.")
    parser.add_argument("--version", action="version", version=f"psikit {__version__}")
    sub = parser.add_subparsers(dest="verb", required=True, parser_class=_Parser)
    for verb, (_, helptext) in VERBS.items():
        p = sub.add_parser(verb, parents=[common], help=helptext, description=helptext)
        if verb in ("psi-curve", "milnor", "csm-check"):
            p.add_argument("--poly", help="polynomial in x, y (or homogeneous in x, y, z for csm-check)")
        if verb.startswith("model-") or verb == "check-invariance":
            p.add_argument("--in", dest="inp", help="model JSON file (falls back to the fixture directory)")
        if verb in ("model-psi", "model-motivic"):
            p.add_argument("--alpha", help="identity | const:N | eps:M | table:M=V,...[,default=V]")
        if verb == "model-motivic":
            p.add_argument("--at", help="restrict to one marked point")
        if verb == "model-blowup":
            p.add_argument("--center", help="center JSON file; a seeded random center if omitted")
            p.add_argument("--new-id", help="id of the exceptional divisor")
            p.add_argument("--out", help="write the blown-up model here")
    return parser


# ---------------------------------------------------------------- rendering

def _render_text(report: dict) -> str:
    lines = []
    for key, value in report.items():
        if isinstance(value, list) and value and isinstance(value[0], dict):
            lines.append(f"{key}:")
            lines += ["  " + row for row in _table(value)]
        elif isinstance(value, dict):
            lines.append(f"{key}: {json.dumps(value, ensure_ascii=False)}")
        elif isinstance(value, list):
            lines.append(f"{key}: {', '.join(map(str, value))}")
        else:
            lines.append(f"{key}: {value}")
    return "\n".join(lines)


def _cell(v) -> str:
    if isinstance(v, bool):
        return "pass" if v else "FAIL"
    if isinstance(v, (list, dict)):
        return json.dumps(v, ensure_ascii=False)
    return str(v)


def _table(rows: list[dict]) -> list[str]:
    cols = list(rows[0])
    cells = [[_cell(r.get(c)) for c in cols] for r in rows]
    widths = [max(len(c), *(len(row[i]) for row in cells)) for i, c in enumerate(cols)]
    out = ["  ".join(c.ljust(w) for c, w in zip(cols, widths)).rstrip()]
    out += ["  ".join(v.ljust(w) for v, w in zip(row, widths)).rstrip() for row in cells]
    return out


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        print(f"psikit: usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    handler, _ = VERBS[args.verb]
    try:
        report, status = handler(args)
    except UsageError as exc:
        print(f"psikit: usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (PolynomialSyntaxError, ResolutionError, ModelError, AlphaError,
            FileNotFoundError, json.JSONDecodeError, ArithmeticError, ValueError, KeyError) as exc:
        print(f"psikit: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    report = {"verb": args.verb, "seed": args.seed, **report}
    if args.format == "json":
        print(json.dumps(report, indent=2, ensure_ascii=False, default=_num))
    else:
        print(_render_text(report))
    return status


if __name__ == "__main__":
    sys.exit(main())
