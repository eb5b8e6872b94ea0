"""Matrix representations of the braid, twin and singular twin groups.

All families here are homogeneous local: generator ``i`` acts by one fixed
``k x k`` block on coordinates ``i .. i+k-1`` and by the identity elsewhere,
so the ambient dimension is ``n + k - 2``.

The square root ``sqrt(1 - b c)`` in the two-sign families is never taken:
those families are parameterised by ``a`` itself, with ``c = (1 - a^2)/b``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping

import numpy as np

from .linalg import Matrix, Singular, invert, mat_mul
from .scalar import FLOAT_EPS, Scalar, parse_scalar
from .words import GroupKind, IllegalLetter, IndexOutOfRange, Kind, Letter, Word, relation_catalog

__all__ = [
    "Representation",
    "ConstraintViolation",
    "FAMILIES",
    "FamilyParams",
    "LocalBlock",
    "construct_family",
    "embed_local",
    "evaluate_word",
    "verify_relations",
    "RelationCheck",
    "VerificationReport",
    "local_representation",
]


class ConstraintViolation(ValueError):
    pass


@dataclass(frozen=True)
class LocalBlock:
    block: Matrix
    position: int

    @property
    def k(self) -> int:
        return self.block.rows


def embed_local(block: LocalBlock | Matrix, n: int, position: int | None = None) -> Matrix:
    """``diag(I_{i-1}, M, I_{n-i-1})`` generalised to ``k x k`` blocks.

    The result has size ``n + k - 2``; ``position`` runs over ``1 .. n-1``.
    """
    if isinstance(block, LocalBlock):
        m, i = block.block, block.position
    else:
        m, i = block, position
    k = m.rows
    if m.shape != (k, k):
        raise ConstraintViolation("local block must be square")
    if i is None or not 1 <= i <= n - 1:
        raise IndexOutOfRange(f"position {i} outside 1..{n - 1}")
    size = n + k - 2
    ident = Matrix.identity(size, like=m)
    rows = ident.tolist()
    for r in range(k):
        for c in range(k):
            rows[i - 1 + r][i - 1 + c] = m[r, c]
    if not m.exact:
        return Matrix(np.array(rows, dtype=complex))
    return Matrix(rows, m.D)


@dataclass
class Representation:
    group: GroupKind
    dim: int
    s: tuple[Matrix, ...]
    tau: tuple[Matrix, ...] | None = None
    family: str | None = None
    # family parameters as Scalars, kept for the closed-form deciders
    params: dict = field(default_factory=dict)
    _inverses: dict = field(default_factory=dict, repr=False, compare=False)

    def __post_init__(self):
        self.s = tuple(self.s)
        if self.tau is not None:
            self.tau = tuple(self.tau)
        n = self.group.n
        if len(self.s) != n - 1:
            raise ConstraintViolation(f"expected {n - 1} base images, got {len(self.s)}")
        if self.group.kind.has_tau:
            if self.tau is None or len(self.tau) != n - 1:
                raise ConstraintViolation(f"expected {n - 1} tau images")
        elif self.tau is not None:
            raise ConstraintViolation(f"{self.group.kind.value} has no tau generators")
        for m in self.images():
            if m.shape != (self.dim, self.dim):
                raise ConstraintViolation(f"image of shape {m.shape}, expected dim {self.dim}")

    @property
    def exact(self) -> bool:
        return self.s[0].exact

    @property
    def root_square(self) -> int | None:
        return self.s[0].D

    def images(self) -> list[Matrix]:
        return list(self.s) + list(self.tau or ())

    def image(self, letter: Letter) -> Matrix:
        self.group.check(letter)
        base = self.tau if letter.family == "t" else self.s
        m = base[letter.index - 1]
        if letter.exponent == 1 or letter.family == "s":
            return m
        key = (letter.family, letter.index)
        if key not in self._inverses:
            self._inverses[key] = invert(m)
        return self._inverses[key]

    def evaluate(self, w: Word | tuple) -> Matrix:
        return evaluate_word(self, w)

    def to_float(self, root_value: complex | None = None) -> "Representation":
        return Representation(self.group, self.dim, tuple(m.to_float(root_value) for m in self.s),
                              None if self.tau is None else tuple(m.to_float(root_value) for m in self.tau),
                              self.family, dict(self.params))

    def conjugate(self, p: Matrix) -> "Representation":
        """The equivalent representation ``g -> p^-1 rho(g) p``."""
        pinv = invert(p)
        conj = lambda m: mat_mul(mat_mul(pinv, m), p)  # noqa: E731
        return Representation(self.group, self.dim, tuple(conj(m) for m in self.s),
                              None if self.tau is None else tuple(conj(m) for m in self.tau),
                              self.family, dict(self.params))

    def check_invertible(self) -> None:
        for m in self.images():
            det = m.det()
            if (m.exact and not det) or (not m.exact and abs(det) <= FLOAT_EPS):
                raise ConstraintViolation("a generator image is singular")


def evaluate_word(rep: Representation, w: Word | tuple) -> Matrix:
    """Ordered product of letter images, leftmost letter as leftmost factor."""
    letters = w.letters if isinstance(w, Word) else tuple(w)
    result = Matrix.identity(rep.dim, like=rep.s[0])
    for x in letters:
        if not isinstance(x, Letter):
            x = Letter(*x)
        try:
            m = rep.image(x)
        except IllegalLetter:
            raise
        except (ValueError, IndexError) as exc:
            raise IllegalLetter(str(exc)) from exc
        result = mat_mul(result, m)
    return result


def local_representation(group: GroupKind, s_block: Matrix, tau_block: Matrix | None = None,
                         family: str | None = None, params: Mapping | None = None) -> Representation:
    """Homogeneous local representation: one block instance at every position."""
    n = group.n
    k = s_block.rows
    s = tuple(embed_local(s_block, n, i) for i in range(1, n))
    tau = None
    if group.kind.has_tau:
        if tau_block is None:
            raise ConstraintViolation("tau block required")
        tau = tuple(embed_local(tau_block, n, i) for i in range(1, n))
    return Representation(group, n + k - 2, s, tau, family, dict(params or {}))


# relation verification --------------------------------------------------------

@dataclass
class RelationCheck:
    name: str
    relation: str
    passed: bool
    difference: Matrix | None = None


@dataclass
class VerificationReport:
    group: GroupKind
    checks: list[RelationCheck]

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def failures(self) -> list[RelationCheck]:
        return [c for c in self.checks if not c.passed]

    def __bool__(self):
        return self.ok


def verify_relations(rep: Representation, eps: float = FLOAT_EPS, stop_early: bool = False) -> VerificationReport:
    """Evaluate both sides of every catalog relation; exact equality for exact reps."""
    checks = []
    for rel in relation_catalog(rep.group):
        lhs, rhs = evaluate_word(rep, rel.lhs), evaluate_word(rep, rel.rhs)
        passed = lhs == rhs if rep.exact else lhs.isclose(rhs, eps)
        checks.append(RelationCheck(rel.name, str(rel), passed, None if passed else lhs - rhs))
        if stop_early and not passed:
            break
    return VerificationReport(rep.group, checks)


# families --------------------------------------------------------------------

@dataclass(frozen=True)
class FamilySpec:
    kind: Kind
    required: tuple[str, ...]
    optional: tuple[str, ...] = ()
    fixed_n: int | None = None
    min_n: int = 2


FAMILIES: dict[str, FamilySpec] = {
    "gamma1": FamilySpec(Kind.SINGULAR_TWIN_GROUP, ("a", "b", "w", "x"), fixed_n=2),
    "gamma2": FamilySpec(Kind.SINGULAR_TWIN_GROUP, ("a", "b", "w", "x"), fixed_n=2),
    "gamma3": FamilySpec(Kind.SINGULAR_TWIN_GROUP, ("c", "w", "y"), fixed_n=2),
    "gamma4": FamilySpec(Kind.SINGULAR_TWIN_GROUP, ("c", "w", "y"), fixed_n=2),
    "gamma5": FamilySpec(Kind.SINGULAR_TWIN_GROUP, ("w", "z"), fixed_n=2),
    "gamma6": FamilySpec(Kind.SINGULAR_TWIN_GROUP, ("w", "x", "y", "z"), fixed_n=2),
    "theta1": FamilySpec(Kind.SINGULAR_TWIN_GROUP, ("b", "w", "x"), min_n=3),
    "theta2": FamilySpec(Kind.SINGULAR_TWIN_GROUP, ("a", "b"), ("c",), min_n=3),
    "theta3": FamilySpec(Kind.SINGULAR_TWIN_GROUP, ("a", "b"), ("c",), min_n=3),
    "theta4": FamilySpec(Kind.SINGULAR_TWIN_GROUP, (), min_n=3),
    "theta5": FamilySpec(Kind.SINGULAR_TWIN_GROUP, (), min_n=3),
    "burau": FamilySpec(Kind.BRAID, ("t",)),
    "f": FamilySpec(Kind.BRAID, ("t",)),
    "n1": FamilySpec(Kind.TWIN, ("t",)),
    "n2": FamilySpec(Kind.TWIN, ("f",)),
}

_ALIASES = {
    **{f"Γ{j}": f"gamma{j}" for j in range(1, 7)},
    **{f"Θ{j}": f"theta{j}" for j in range(1, 6)},
    "F": "f", "N1": "n1", "N2": "n2", "Burau": "burau",
}


def canonical_family(name: str) -> str:
    key = _ALIASES.get(name, name).lower()
    if key not in FAMILIES:
        raise ConstraintViolation(f"unknown family {name!r}; known: {', '.join(FAMILIES)}")
    return key


@dataclass
class FamilyParams:
    family: str
    n: int
    values: dict = field(default_factory=dict)
    root_square: int = 0
    # build over the singular twin monoid: tau blocks may be singular
    monoid: bool = False

    def __post_init__(self):
        self.family = canonical_family(self.family)
        spec = FAMILIES[self.family]
        if spec.fixed_n is not None and self.n != spec.fixed_n:
            raise ConstraintViolation(f"{self.family} is defined for n = {spec.fixed_n} only")
        if self.n < spec.min_n:
            raise ConstraintViolation(f"{self.family} needs n >= {spec.min_n}")
        values = {}
        for key, v in self.values.items():
            if key not in spec.required + spec.optional:
                raise ConstraintViolation(f"{self.family} takes no parameter {key!r}")
            values[key] = parse_scalar(v, self.root_square) if isinstance(v, str) \
                else Scalar.coerce(v, self.root_square)
        missing = [k for k in spec.required if k not in values]
        if missing:
            raise ConstraintViolation(f"{self.family} missing parameters {missing}")
        self.values = values

    def __getitem__(self, key):
        return self.values[key]


def _require(cond: bool, message: str):
    if not cond:
        raise ConstraintViolation(message)


def _m(rows, D) -> Matrix:
    return Matrix(rows, D)


def _theta_two_sign(p: FamilyParams, sign: int):
    # sign = +1: block [[-a, b], [c, a]]; sign = -1 is the other square root
    a, b, D = p["a"], p["b"], p.root_square
    if b:
        c = (1 - a * a) / b
        if "c" in p.values:
            _require(p["c"] == c, f"a^2 + b c = 1 fails: a={a}, b={b}, c={p['c']}")
    else:
        _require("c" in p.values, "b = 0 needs an explicit c")
        _require(a * a == 1, f"b = 0 forces a = +-1, got a = {a}")
        c = p["c"]
    return _m([[-sign * a, b], [c, sign * a]], D), c


def family_blocks(p: FamilyParams) -> tuple[Matrix, Matrix | None]:
    """The local ``(s, tau)`` blocks of a family, with constraints enforced."""
    f, D = p.family, p.root_square
    one, zero = Scalar(1, root_square=D), Scalar(root_square=D)
    ident = _m([[1, 0], [0, 1]], D)
    if f in ("gamma1", "gamma2"):
        sign = 1 if f == "gamma1" else -1
        a, b, w, x = p["a"], p["b"], p["w"], p["x"]
        _require(bool(b), "b != 0 required")
        c = (1 - a * a) / b
        s = _m([[-sign * a, b], [c, sign * a]], D)
        tau = _m([[w, x], [c * x / b, (b * w + sign * 2 * x * a) / b]], D)
    elif f in ("gamma3", "gamma4"):
        sign = 1 if f == "gamma3" else -1
        c, w, y = p["c"], p["w"], p["y"]
        _require(bool(c), "c != 0 required")
        s = _m([[-sign, 0], [c, sign]], D)
        tau = _m([[w, 0], [y, (c * w + sign * 2 * y) / c]], D)
    elif f == "gamma5":
        s = _m([[-1, 0], [0, 1]], D)
        tau = _m([[p["w"], 0], [0, p["z"]]], D)
    elif f == "gamma6":
        s = ident
        tau = _m([[p["w"], p["x"]], [p["y"], p["z"]]], D)
    elif f == "theta1":
        b, w, x = p["b"], p["w"], p["x"]
        _require(bool(b), "b != 0 required")
        s = _m([[zero, b], [one / b, zero]], D)
        tau = _m([[w, x], [x / (b * b), w]], D)
    elif f in ("theta2", "theta3"):
        s, _ = _theta_two_sign(p, 1 if f == "theta2" else -1)
        tau = ident
    elif f == "theta4":
        s, tau = _m([[-1, 0], [0, -1]], D), ident
    elif f == "theta5":
        s, tau = ident, ident
    elif f == "burau":
        t = p["t"]
        _require(bool(t), "t != 0 required")
        s, tau = _m([[1 - t, t], [1, 0]], D), None
    elif f == "f":
        t = p["t"]
        _require(bool(t), "t != 0 required")
        s, tau = _m([[1, 1, 0], [0, -t, 0], [0, t, 1]], D), None
    elif f == "n1":
        t = p["t"]
        s, tau = _m([[1 - t, t], [2 - t, t - 1]], D), None
    elif f == "n2":
        fv = p["f"]
        _require(bool(fv), "f != 0 required")
        s, tau = _m([[zero, fv], [one / fv, zero]], D), None
    else:  # pragma: no cover - guarded by canonical_family
        raise ConstraintViolation(f)
    if tau is not None and not p.monoid:
        det = tau.det()
        _require(bool(det), f"{f}: tau block is singular (det = {det})")
    return s, tau


def construct_family(p: FamilyParams | str, n: int | None = None, root_square: int = 0,
                     monoid: bool = False, **values) -> Representation:
    """Build a named family, e.g. ``construct_family("theta1", 3, b=1, w=0, x=1)``.

    ``theta3(a, b)`` equals ``theta2(-a, b)`` and ``gamma2(a, ...)`` equals
    ``gamma1(-a, ...)``; both spellings are kept.  ``theta2``/``theta3``
    accept ``b = 0`` only together with an explicit ``c`` and ``a = +-1``.
    ``monoid=True`` builds a singular-twin family over STM_n instead of ST_n.
    """
    if not isinstance(p, FamilyParams):
        p = FamilyParams(p, n, values, root_square, monoid)
    spec = FAMILIES[p.family]
    s_block, tau_block = family_blocks(p)
    kind = spec.kind
    if p.monoid:
        if kind is not Kind.SINGULAR_TWIN_GROUP:
            raise ConstraintViolation(f"{p.family} has no monoid variant")
        kind = Kind.SINGULAR_TWIN_MONOID
    group = GroupKind(kind, p.n)
    return local_representation(group, s_block, tau_block, p.family, dict(p.values))
