"""Homogeneous 2-local representations: equations, point classification, grid sweeps.

A homogeneous 2-local representation is fixed by two 2x2 blocks: ``S`` for
every ``s_i`` and ``T`` for every ``tau_i``.  For n = 2 the relations reduce
to ``S^2 = I`` and ``S T = T S``; for n >= 3 the far commutation and slide
relations between neighbouring positions constrain the blocks further.
"""
from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass, field

import sympy as sp

from .linalg import Matrix
from .reps import (
    ConstraintViolation,
    FamilyParams,
    family_blocks,
    local_representation,
    verify_relations,
)
from .scalar import Scalar, parse_scalar
from .words import GroupKind, Kind

__all__ = [
    "UNKNOWNS",
    "EquationSystem",
    "FamilyMatch",
    "Invalid",
    "Unmatched",
    "GridReport",
    "generate_equations_n2",
    "normalize_sign",
    "classify_point_n2",
    "classify_blocks",
    "grid_classify",
]

log = logging.getLogger(__name__)

UNKNOWNS = ("a", "b", "c", "d", "w", "x", "y", "z")


@dataclass
class EquationSystem:
    unknowns: tuple[sp.Symbol, ...]
    equations: list[sp.Expr]
    inequations: list[sp.Expr]


def normalize_sign(expr: sp.Expr, gens) -> sp.Expr:
    """Expanded polynomial with a positive leading coefficient (lex order in ``gens``)."""
    poly = sp.Poly(sp.expand(expr), *gens)
    return sp.expand(-expr) if poly.LC() < 0 else sp.expand(expr)


def generate_equations_n2() -> EquationSystem:
    """Entries of ``S^2 - I`` and ``S T - T S`` for symbolic blocks, deduplicated up to sign."""
    syms = sp.symbols(" ".join(UNKNOWNS))
    a, b, c, d, w, x, y, z = syms
    S = sp.Matrix([[a, b], [c, d]])
    T = sp.Matrix([[w, x], [y, z]])
    raw = list(S * S - sp.eye(2)) + list(S * T - T * S)
    eqs: list[sp.Expr] = []
    for e in raw:
        e = sp.expand(e)
        if e == 0:
            continue
        e = normalize_sign(e, syms)
        if e not in eqs:
            eqs.append(e)
    return EquationSystem(syms, eqs, [S.det(), T.det()])


# matching ---------------------------------------------------------------------

@dataclass
class FamilyMatch:
    family: str
    params: dict
    residual: bool = True
    equivalence: str = "identity"
    alternatives: list[str] = field(default_factory=list)


@dataclass
class Invalid:
    reason: str


@dataclass
class Unmatched:
    reason: str


def _blocks(vals: dict, D: int) -> tuple[Matrix, Matrix]:
    v = {k: (parse_scalar(x, D) if isinstance(x, str) else Scalar.coerce(x, D)) for k, x in vals.items()}
    missing = [k for k in UNKNOWNS if k not in v]
    if missing:
        raise ConstraintViolation(f"missing entries {missing}")
    return Matrix([[v["a"], v["b"]], [v["c"], v["d"]]], D), Matrix([[v["w"], v["x"]], [v["y"], v["z"]]], D)


def _try(family: str, n: int, params: dict, S: Matrix, T: Matrix, D: int):
    try:
        s, t = family_blocks(FamilyParams(family, n, params, D))
    except ConstraintViolation:
        return None
    if s == S and t == T:
        return FamilyMatch(family, params)
    return None


_SWAP = Matrix([[0, 1], [1, 0]])


def _gamma_candidates(S: Matrix, T: Matrix):
    """Parameter guesses read off the blocks, one list per family."""
    a, b, c, d = S[0, 0], S[0, 1], S[1, 0], S[1, 1]
    w, x, y, z = T[0, 0], T[0, 1], T[1, 0], T[1, 1]
    return [
        ("gamma1", {"a": -a, "b": b, "w": w, "x": x}),
        ("gamma2", {"a": a, "b": b, "w": w, "x": x}),
        ("gamma3", {"c": c, "w": w, "y": y}),
        ("gamma4", {"c": c, "w": w, "y": y}),
        ("gamma5", {"w": w, "z": z}),
        ("gamma6", {"w": w, "x": x, "y": y, "z": z}),
    ]


def _match_n2(S: Matrix, T: Matrix, D: int):
    hits = [m for fam, p in _gamma_candidates(S, T) if (m := _try(fam, 2, p, S, T, D))]
    if not hits:
        # conjugating by the swap turns diag(1, -1) into diag(-1, 1)
        S2, T2 = _SWAP @ S @ _SWAP, _SWAP @ T @ _SWAP
        hits = [m for fam, p in _gamma_candidates(S2, T2) if (m := _try(fam, 2, p, S2, T2, D))]
        for m in hits:
            m.equivalence = "swap"
    if not hits:
        return None
    first = hits[0]
    first.alternatives = [m.family for m in hits[1:]]
    return first


def classify_point_n2(vals: dict, root_square: int = 0) -> FamilyMatch | Invalid | Unmatched:
    """Classify ``S = [[a, b], [c, d]]``, ``T = [[w, x], [y, z]]`` against Gamma1..Gamma6.

    Gamma1(a) and Gamma2(-a) coincide, so a Gamma1 match lists Gamma2 as an
    alternative.  ``S = -I`` satisfies every equation but fits no template
    and comes back as :class:`Unmatched`.
    """
    S, T = _blocks(vals, root_square)
    ident = Matrix.identity(2, like=S)
    if S @ S != ident:
        return Invalid("S^2 != I")
    if S @ T != T @ S:
        return Invalid("S T != T S")
    if not S.det():
        return Invalid("ad - bc = 0")
    if not T.det():
        return Invalid("wz - xy = 0")
    return _match_n2(S, T, root_square) or Unmatched("no Gamma template fits")


def _theta_candidates(S: Matrix, T: Matrix):
    a, b, c = S[0, 0], S[0, 1], S[1, 0]
    out = [
        ("theta1", {"b": b, "w": T[0, 0], "x": T[0, 1]}),
        ("theta2", {"a": -a, "b": b, "c": c}),
        ("theta3", {"a": a, "b": b, "c": c}),
        ("theta4", {}),
        ("theta5", {}),
    ]
    return out


def classify_blocks(S: Matrix, T: Matrix, n: int, root_square: int = 0) -> FamilyMatch | None:
    """Match blocks valid at ``n >= 3`` against Theta1..Theta5.

    Tries the templates directly, then after conjugating by
    ``diag(b^(1-n), ..., b, 1)``.  On each 2x2 block that conjugation acts
    as ``diag(b, 1)`` up to a scalar, so only the block version is applied.
    """
    hits = [m for fam, p in _theta_candidates(S, T) if (m := _try(fam, n, p, S, T, root_square))]
    if not hits and S[0, 1]:
        lam = S[0, 1]
        P = Matrix([[lam, 0], [0, 1]], root_square)
        Pinv = P.inverse()
        S2, T2 = Pinv @ S @ P, Pinv @ T @ P
        hits = [m for fam, p in _theta_candidates(S2, T2) if (m := _try(fam, n, p, S2, T2, root_square))]
        for m in hits:
            m.equivalence = "diagonal"
    if not hits:
        return None
    hits[0].alternatives = [m.family for m in hits[1:]]
    return hits[0]


# grid sweeps ------------------------------------------------------------------

@dataclass
class GridReport:
    kind: str
    n: int
    grid: list[str]
    checked: int = 0
    valid: int = 0
    matched: int = 0
    unmatched: list[dict] = field(default_factory=list)
    families: dict = field(default_factory=dict)
    truncated: bool = False

    def as_dict(self) -> dict:
        return {
            "kind": self.kind,
            "n": self.n,
            "grid": self.grid,
            "checked": self.checked,
            "valid": self.valid,
            "matched": self.matched,
            "unmatched": self.unmatched,
            "families": dict(sorted(self.families.items())),
            "truncated": self.truncated,
        }


def _all_blocks(values: list[Scalar], D: int):
    for a, b, c, d in itertools.product(values, repeat=4):
        yield Matrix([[a, b], [c, d]], D)


def _block_json(m: Matrix) -> list[list[str]]:
    return [[str(x) for x in row] for row in m.tolist()]


def grid_classify(kind: str, n: int, grid, budget: int | None = None,
                  root_square: int = 0) -> GridReport:
    """Enumerate block pairs with entries in ``grid`` and classify the valid ones.

    ``kind = "n2"`` classifies against Gamma1..Gamma6 (n must be 2);
    ``kind = "general"`` runs the full relation check at ``n >= 3`` and
    matches against Theta1..Theta5.  ``checked`` counts every (S, T) pair
    considered, including those rejected early because ``S^2 != I``.
    ``budget`` caps the number of pairs.
    """
    D = root_square
    values = [parse_scalar(v, D) if isinstance(v, str) else Scalar.coerce(v, D) for v in grid]
    values = list(dict.fromkeys(values))
    if kind == "n2" and n != 2:
        raise ConstraintViolation("kind n2 needs n = 2")
    if kind == "general" and n < 3:
        raise ConstraintViolation("kind general needs n >= 3")
    if kind not in ("n2", "general"):
        raise ConstraintViolation(f"unknown kind {kind!r}")
    report = GridReport(kind, n, [str(v) for v in values])
    blocks = list(_all_blocks(values, D))
    ident = Matrix.identity(2, like=blocks[0])
    group = GroupKind(Kind.SINGULAR_TWIN_GROUP, n)
    total = len(blocks) ** 2
    for S in blocks:
        if budget is not None and report.checked >= budget:
            report.truncated = True
            break
        if S @ S != ident or not S.det():
            step = len(blocks) if budget is None else min(len(blocks), budget - report.checked)
            report.checked += step
            report.truncated = step < len(blocks)
            continue
        for T in blocks:
            if budget is not None and report.checked >= budget:
                report.truncated = True
                break
            report.checked += 1
            if not T.det() or S @ T != T @ S:
                continue
            if kind == "general":
                rep = local_representation(group, S, T)
                if not verify_relations(rep, stop_early=True).ok:
                    continue
                match = classify_blocks(S, T, n, D)
            else:
                match = _match_n2(S, T, D)
            report.valid += 1
            if match is None:
                report.unmatched.append({"s": _block_json(S), "tau": _block_json(T)})
            else:
                report.matched += 1
                report.families[match.family] = report.families.get(match.family, 0) + 1
    log.info("grid %s n=%d: %d/%d pairs checked, %d valid", kind, n, report.checked, total, report.valid)
    return report
