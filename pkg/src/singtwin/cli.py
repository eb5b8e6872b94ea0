"""Command line interface: JSON in, JSON out.

Exit codes: 0 success or true, 1 a check came out false (relation failure,
no proof found, deciders disagree, unmatched grid point), 2 bad input.
Diagnostics go to stderr, at the level named by ``LOG_LEVEL``.
"""
from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from pathlib import Path

from . import __version__
from .classify import FamilyMatch, Invalid, UNKNOWNS, classify_point_n2, grid_classify
from .formats import (
    FormatError,
    basis_to_json,
    matrix_to_json,
    rep_from_json,
    rep_to_json,
    verdict_to_json,
)
from .irred import (
    InconclusiveOverField,
    NotInvariant,
    PoleOfP,
    algebra_oracle,
    closed_form,
    composition_factor,
)
from .linalg import SubspaceBasis
from .reps import construct_family, verify_relations
from .scalar import ScalarError, parse_scalar
from .schreier import BudgetExhausted, all_schreier_generators, reduce_to_basis, schreier_report
from .words import DEFAULT_BUDGET, GroupKind, WordError, parse_word, prove_equal

log = logging.getLogger("singtwin")

OK, FALSE, USAGE = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _load_json(path: str):
    try:
        return json.loads(Path(path).read_text())
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from exc
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path} is not valid JSON: {exc}") from exc


def _load_rep(path: str):
    return rep_from_json(_load_json(path))


def _kv(text: str) -> dict:
    out = {}
    for item in filter(None, (p.strip() for p in text.split(","))):
        if "=" not in item:
            raise UsageError(f"expected key=value, got {item!r}")
        k, v = item.split("=", 1)
        out[k.strip()] = v.strip()
    return out


# commands ---------------------------------------------------------------------

def cmd_construct(args):
    rep = construct_family(args.family, args.n, args.root_square, monoid=args.monoid,
                           **_kv(args.params or ""))
    return OK, rep_to_json(rep)


def cmd_verify(args):
    rep = _load_rep(args.rep)
    report = verify_relations(rep, eps=args.eps)
    out = {
        "ok": report.ok,
        "checked": len(report.checks),
        "failures": [c.name for c in report.failures],
    }
    return (OK if report.ok else FALSE), out


def cmd_eval(args):
    rep = _load_rep(args.rep)
    w = parse_word(rep.group, args.word)
    return OK, matrix_to_json(rep.evaluate(w))


def cmd_word_eq(args):
    group = GroupKind(args.group, args.n)
    res = prove_equal(parse_word(group, args.lhs), parse_word(group, args.rhs), args.budget)
    out = {
        "proved": res.proved,
        "expansions": res.expansions,
        "steps": res.steps,
        "reason": res.reason,
        "path": res.path,
    }
    return (OK if res.proved else FALSE), out


def _schreier_group(text: str, n: int | None) -> GroupKind:
    if text.startswith("st") and text[2:].isdigit():
        return GroupKind("stn", int(text[2:]))
    if n is None:
        raise UsageError("--n is required unless the group is written like st3")
    return GroupKind(text, n)


def cmd_schreier(args):
    group = _schreier_group(args.group, args.n)
    gens = all_schreier_generators(group)
    try:
        targets = reduce_to_basis(gens, args.budget)
    except BudgetExhausted as exc:
        out = schreier_report(gens, [])
        out["unresolved"] = [str(g.word) for g in exc.unresolved]
        return FALSE, out
    return OK, schreier_report(gens, targets)


def _point(text: str) -> dict:
    if "=" in text:
        return _kv(text)
    parts = [p.strip() for p in text.split(",")]
    if len(parts) != len(UNKNOWNS):
        raise UsageError(f"--point needs {len(UNKNOWNS)} comma-separated scalars or k=v pairs")
    return dict(zip(UNKNOWNS, parts))


def cmd_classify2(args):
    res = classify_point_n2(_point(args.point), args.root_square)
    if isinstance(res, FamilyMatch):
        return OK, {
            "status": "matched",
            "family": res.family,
            "params": {k: str(v) for k, v in sorted(res.params.items())},
            "equivalence": res.equivalence,
            "alternatives": res.alternatives,
        }
    status = "invalid" if isinstance(res, Invalid) else "unmatched"
    return FALSE, {"status": status, "reason": res.reason}


def cmd_grid_classify(args):
    cfg = _load_json(args.config)
    try:
        values, n, kind = cfg["values"], int(cfg["n"]), cfg.get("kind", "general")
    except (KeyError, TypeError, ValueError) as exc:
        raise UsageError(f"grid config needs values, n and kind: {exc}") from exc
    report = grid_classify(kind, n, values, cfg.get("budget"), cfg.get("root_square", 0))
    return (OK if not report.unmatched else FALSE), report.as_dict()


def cmd_irreducible(args):
    rep = _load_rep(args.rep)
    out = {}
    closed = oracle = None
    if args.method in ("closed", "both"):
        try:
            closed = closed_form(rep)
        except PoleOfP as exc:
            out["closed_form"] = {"error": "PoleOfP", "detail": str(exc)}
        else:
            if closed is None:
                if args.method == "closed":
                    raise UsageError("no closed-form criterion applies to this representation")
                out["closed_form"] = {"error": "NoClosedForm"}
            else:
                out["closed_form"] = verdict_to_json(closed)
    if args.method in ("oracle", "both"):
        try:
            oracle = algebra_oracle(rep)
        except InconclusiveOverField as exc:
            out["oracle"] = {"error": "InconclusiveOverField", "detail": str(exc)}
        else:
            out["oracle"] = verdict_to_json(oracle)
    primary = oracle or closed
    if primary is not None:
        out.update({k: v for k, v in verdict_to_json(primary).items() if k in ("verdict", "witness", "span_dim")})
        if args.method == "both" and closed is not None and oracle is not None:
            out["method"] = "Both"
        else:
            out["method"] = primary.method
    else:
        out["verdict"] = None
    if args.method == "both":
        agree = None if closed is None or oracle is None else closed.verdict == oracle.verdict
        out["agreement"] = agree
        if agree is False:
            return FALSE, out
    return (OK if primary is not None else FALSE), out


def _parse_line(text: str, rep) -> SubspaceBasis:
    D = rep.root_square or 0
    vec = tuple(parse_scalar(x.strip(), D) for x in text.split(","))
    if len(vec) != rep.dim:
        raise UsageError(f"--line needs {rep.dim} coordinates")
    return SubspaceBasis(rep.dim, (vec,), True)


def cmd_comp_factor(args):
    rep = _load_rep(args.rep)
    line = _parse_line(args.line, rep) if args.line else None
    try:
        factor = composition_factor(rep, line)
    except NotInvariant as exc:
        return FALSE, {"error": "NotInvariant", "detail": str(exc)}
    return OK, rep_to_json(factor)


# entry point ------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="singtwin", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    c = sub.add_parser("construct", help="build a named family")
    c.add_argument("--family", required=True)
    c.add_argument("--n", type=int, required=True)
    c.add_argument("--params", default="", help="k=v,... with scalars like 1/2+i")
    c.add_argument("--root-square", type=int, default=0)
    c.add_argument("--monoid", action="store_true", help="build over STM_n (tau may be singular)")
    c.set_defaults(func=cmd_construct)

    c = sub.add_parser("verify", help="check every defining relation")
    c.add_argument("--rep", required=True)
    c.add_argument("--eps", type=float, default=1e-9)
    c.set_defaults(func=cmd_verify)

    c = sub.add_parser("eval", help="image of a word")
    c.add_argument("--rep", required=True)
    c.add_argument("--word", required=True)
    c.set_defaults(func=cmd_eval)

    c = sub.add_parser("word-eq", help="bounded proof of a word equality")
    c.add_argument("--group", required=True, help="braid, twin, sbm, sbn, stm or stn")
    c.add_argument("--n", type=int, required=True)
    c.add_argument("--lhs", required=True)
    c.add_argument("--rhs", required=True)
    c.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    c.set_defaults(func=cmd_word_eq)

    c = sub.add_parser("schreier", help="Schreier generators of the pure subgroup")
    c.add_argument("--group", required=True, help="st3, or a kind together with --n")
    c.add_argument("--n", type=int)
    c.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    c.set_defaults(func=cmd_schreier)

    c = sub.add_parser("classify2", help="classify one n = 2 block pair")
    c.add_argument("--point", required=True, help="a,b,c,d,w,x,y,z or a=..,b=..")
    c.add_argument("--root-square", type=int, default=0)
    c.set_defaults(func=cmd_classify2)

    c = sub.add_parser("grid-classify", help="exhaustive check over a finite grid")
    c.add_argument("--config", required=True)
    c.set_defaults(func=cmd_grid_classify)

    c = sub.add_parser("irreducible", help="decide irreducibility")
    c.add_argument("--rep", required=True)
    c.add_argument("--method", choices=("closed", "oracle", "both"), default="both")
    c.set_defaults(func=cmd_irreducible)

    c = sub.add_parser("comp-factor", help="quotient by an invariant line")
    c.add_argument("--rep", required=True)
    c.add_argument("--line", help="comma-separated coordinates; default: the fixed line")
    c.set_defaults(func=cmd_comp_factor)
    return p


def run(argv=None, stdout=None) -> int:
    stdout = stdout or sys.stdout
    level = os.environ.get("LOG_LEVEL", "error").upper()
    logging.basicConfig(stream=sys.stderr, level=getattr(logging, level, logging.ERROR),
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        args = build_parser().parse_args(argv)
        code, payload = args.func(args)
    except UsageError as exc:
        code, payload = USAGE, {"error": str(exc)}
    except (FormatError, ScalarError, WordError, ValueError, ZeroDivisionError) as exc:
        code, payload = USAGE, {"error": f"{type(exc).__name__}: {exc}"}
    stdout.write(json.dumps(payload, indent=2, sort_keys=True) + "\n")
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
