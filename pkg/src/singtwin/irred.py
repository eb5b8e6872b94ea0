"""Irreducibility deciders.

Two independent routes:

* :func:`algebra_oracle` spans the matrix algebra generated by the images.
  Over C a representation of degree d is irreducible iff that algebra has
  dimension d^2.  When it is smaller, an invariant subspace is extracted and
  checked.
* closed-form criteria for the named families (:func:`closed_form_theta1`,
  :func:`closed_form_theta23`, :func:`closed_form_n2`,
  :func:`closed_form_n1_factor`), which only evaluate scalar conditions.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field

import numpy as np

from .linalg import (
    Matrix,
    SubspaceBasis,
    column_space,
    common_invariant_line,
    eigenvalues,
    is_invariant,
    nullspace,
    span_closure,
    subspace,
)
from .reps import ConstraintViolation, Representation
from .scalar import FLOAT_EPS, Scalar

__all__ = [
    "IrredVerdict",
    "InconclusiveOverField",
    "NotInvariant",
    "PoleOfP",
    "DegenerateParameters",
    "algebra_oracle",
    "find_invariant_subspace",
    "closed_form_theta1",
    "closed_form_theta23",
    "closed_form_n2",
    "closed_form_n1_factor",
    "closed_form",
    "criterion_p",
    "fixed_vector_theta23",
    "composition_factor",
    "fixed_line",
    "IRREDUCIBLE",
    "REDUCIBLE",
]

log = logging.getLogger(__name__)

IRREDUCIBLE = "Irreducible"
REDUCIBLE = "Reducible"


class InconclusiveOverField(RuntimeError):
    pass


class NotInvariant(ValueError):
    pass


class PoleOfP(ValueError):
    pass


class DegenerateParameters(ValueError):
    pass


@dataclass
class IrredVerdict:
    verdict: str
    method: str
    witness: SubspaceBasis | None = None
    span_dim: int | None = None
    exact: bool = True
    notes: list[str] = field(default_factory=list)

    @property
    def irreducible(self) -> bool:
        return self.verdict == IRREDUCIBLE


# invariant subspace search --------------------------------------------------

def _algebra_elements(algebra: SubspaceBasis, like: Matrix) -> list[Matrix]:
    n = like.rows
    return [Matrix.unvec(v, n, like) for v in algebra.vectors]


def _radical(elements: list[Matrix]) -> list[Matrix]:
    """Elements ``x`` with ``tr(x y) = 0`` for every ``y``: the radical in char 0."""
    gram = Matrix([[(x @ y).trace() for y in elements] for x in elements])
    out = []
    for coeffs in nullspace(gram):
        acc = elements[0].scale(coeffs[0])
        for c, e in zip(coeffs[1:], elements[1:]):
            acc = acc + e.scale(c)
        out.append(acc)
    return out


def _commutant(gens: list[Matrix]) -> list[Matrix]:
    """Basis of ``{Y : g Y = Y g for all g}``."""
    like = gens[0]
    d = like.rows
    rows = []
    zero = 0 if like.exact else 0j
    for g in gens:
        for i in range(d):
            for j in range(d):
                row = [zero] * (d * d)
                for k in range(d):
                    # (g Y)_ij = sum_k g_ik Y_kj ; (Y g)_ij = sum_k Y_ik g_kj
                    row[k * d + j] = row[k * d + j] + g[i, k]
                    row[i * d + k] = row[i * d + k] - g[k, j]
                rows.append(row)
    system = Matrix(rows, like.D) if like.exact else Matrix(np.array(rows, dtype=complex))
    return [Matrix.unvec(v, d, like) for v in nullspace(system)]


def _restrict(space: SubspaceBasis, gens: list[Matrix]) -> list[Matrix] | None:
    """Matrices of the generators acting on an invariant subspace."""
    basis = space.matrix(gens[0].D or 0) if space.exact else space.matrix()
    k = space.dim
    if space.exact:
        rows = [basis.row(i) for i in range(basis.rows)]
        # pick k independent rows of the basis matrix
        picked = []
        for i in range(basis.rows):
            trial = Matrix([rows[j] for j in picked + [i]], basis.D)
            if trial.rank() == len(picked) + 1:
                picked.append(i)
            if len(picked) == k:
                break
        square = Matrix([rows[j] for j in picked], basis.D)
        sq_inv = square.inverse()
        out = []
        for g in gens:
            image = g @ basis
            out.append(sq_inv @ Matrix([image.row(j) for j in picked], basis.D))
        return out
    b = basis.to_numpy()
    pinv = np.linalg.pinv(b)
    return [Matrix(pinv @ g.to_numpy() @ b) for g in gens]


def _lift(space: SubspaceBasis, inner: SubspaceBasis) -> SubspaceBasis:
    basis = space.matrix()
    vecs = [basis.apply(v) for v in inner.vectors]
    return subspace(vecs, space.ambient_dim, space.exact)


def _search(gens: list[Matrix], algebra: SubspaceBasis) -> SubspaceBasis | None:
    like = gens[0]
    d = like.rows
    exact = like.exact
    line = common_invariant_line(gens)
    if line is not None:
        return line
    elements = _algebra_elements(algebra, like)
    radical = [x for x in _radical(elements) if not x.is_zero()]
    if radical:
        cols = []
        for x in radical:
            cols.extend(column_space(x))
        space = subspace(cols, d, exact)
        if 0 < space.dim < d:
            return space
    for y in _commutant(gens):
        if y.is_scalar_multiple_of_identity():
            continue
        for lam in eigenvalues(y):
            shifted = y - Matrix.identity(d, like=like).scale(lam)
            space = subspace(nullspace(shifted), d, exact)
            if 0 < space.dim < d:
                return space
    return None


def find_invariant_subspace(gens: list[Matrix], algebra: SubspaceBasis | None = None,
                            refine: bool = True) -> SubspaceBasis | None:
    """A proper non-zero subspace invariant under ``gens``, preferring small ones.

    Tries a common eigenvector first, then the image of the radical of the
    generated algebra, then eigenspaces of non-scalar commuting matrices.
    The last two cover every proper algebra (non-semisimple, resp.
    semisimple with a commutant larger than the scalars), provided the
    needed eigenvalues exist in the scalar context.  Returns ``None`` if the
    algebra is the full matrix algebra or nothing certifiable was found.
    """
    like = gens[0]
    d = like.rows
    ident = Matrix.identity(d, like=like)
    if algebra is None:
        algebra = span_closure([ident] + list(gens))
    if algebra.dim == d * d:
        return None
    space = _search(list(gens), algebra)
    if space is None:
        return None
    if refine and space.dim > 1:
        inner_gens = _restrict(space, list(gens))
        inner_alg = span_closure([Matrix.identity(space.dim, like=like)] + inner_gens)
        if inner_alg.dim < space.dim ** 2:
            inner = find_invariant_subspace(inner_gens, inner_alg, refine=True)
            if inner is not None:
                space = _lift(space, inner)
    return space


def algebra_oracle(rep: Representation, allow_float: bool = True) -> IrredVerdict:
    """Burnside test: irreducible iff the images span all d x d matrices.

    Reducible verdicts carry an invariant subspace that has been checked
    against every generator.  If the exact context cannot produce one (the
    invariant line needs an eigenvalue outside the field), the search is
    repeated on a float copy and the verdict is flagged ``exact=False``.
    """
    gens = rep.images()
    d = rep.dim
    ident = Matrix.identity(d, like=gens[0])
    algebra = span_closure([ident] + gens)
    if algebra.dim == d * d:
        return IrredVerdict(IRREDUCIBLE, "AlgebraOracle", None, algebra.dim, rep.exact)
    witness = find_invariant_subspace(gens, algebra)
    exact = rep.exact
    notes = []
    if witness is None and rep.exact and allow_float:
        log.info("no exact witness for %s; falling back to floats", rep.family)
        fgens = [m.to_float() for m in gens]
        witness = find_invariant_subspace(fgens)
        exact = False
        notes.append("witness computed in floating point")
        gens = fgens
    if witness is None:
        raise InconclusiveOverField(
            f"algebra has dimension {algebra.dim} < {d * d} but no invariant subspace was certified")
    if not is_invariant(witness, gens):
        raise InconclusiveOverField("extracted subspace failed the invariance check")
    return IrredVerdict(REDUCIBLE, "AlgebraOracle", witness, algebra.dim, exact, notes)


# closed forms ---------------------------------------------------------------

def _as_scalar(x, D=0):
    if isinstance(x, (Scalar, complex, float)):
        return x
    return Scalar.coerce(x, D)


def _is_zero(x) -> bool:
    return abs(x) <= FLOAT_EPS if isinstance(x, (complex, float)) else not x


def closed_form_theta1(b, w, x, monoid: bool = False) -> IrredVerdict:
    """Irreducible iff ``w + x/b != 1``.

    Over the monoid the tau block may be singular; over the group it may not.
    """
    b, w, x = _as_scalar(b), _as_scalar(w), _as_scalar(x)
    if _is_zero(b):
        raise ConstraintViolation("b != 0 required")
    if not monoid and _is_zero(w * w - x * x / (b * b)):
        raise ConstraintViolation("tau block singular: w^2 = x^2/b^2")
    value = w + x / b - 1
    verdict = REDUCIBLE if _is_zero(value) else IRREDUCIBLE
    return IrredVerdict(verdict, "ClosedForm", exact=not isinstance(value, complex))


def criterion_p(t, n: int):
    """``4(1+t^2) + (1-t)^4/(2t) * (1 - ((1-t)/(1+t))^(n-4))`` for ``n >= 4``.

    At ``n = 4`` the bracket vanishes identically and the value is
    ``4(1+t^2)``.  For ``n >= 5`` the expression is undefined at ``t = 0``
    and ``t = -1``; :class:`PoleOfP` is raised there.
    """
    if n < 4:
        raise ValueError("the polynomial criterion applies for n >= 4")
    t = _as_scalar(t)
    base = 4 * (1 + t * t)
    if n == 4:
        return base
    if _is_zero(t) or _is_zero(t + 1):
        raise PoleOfP(f"P(t) is undefined at t = {t} for n = {n}")
    ratio = (1 - t) / (1 + t)
    return base + (1 - t) ** 4 / (2 * t) * (1 - ratio ** (n - 4))


def closed_form_theta23(a, n: int) -> IrredVerdict:
    """Verdict for the degree n-1 composition factor of theta2/theta3.

    ``n = 3``: irreducible iff ``a`` is not in ``{1, -1, i*sqrt3, -i*sqrt3}``.
    ``n >= 4``: irreducible iff ``a != +-1`` and ``a`` is not a root of
    :func:`criterion_p`.
    """
    if n < 3:
        raise ConstraintViolation("n >= 3 required")
    a = _as_scalar(a)
    floaty = isinstance(a, complex)
    if _is_zero(a - 1) or _is_zero(a + 1):
        return IrredVerdict(REDUCIBLE, "ClosedForm", exact=not floaty, notes=["a = +-1"])
    if n == 3:
        hit = _is_zero(a * a + 3)
        return IrredVerdict(REDUCIBLE if hit else IRREDUCIBLE, "ClosedForm", exact=not floaty,
                            notes=["a^2 = -3"] if hit else [])
    p = criterion_p(a, n)
    hit = abs(p) <= 1e-7 if isinstance(p, complex) else not p
    return IrredVerdict(REDUCIBLE if hit else IRREDUCIBLE, "ClosedForm", exact=not floaty,
                        notes=[f"P(a) = {p}"])


def closed_form_n1_factor(t, n: int) -> IrredVerdict:
    """Degree n-1 factor of the N1 twin representation: irreducible iff
    ``t != (2n-2)/(n-2)`` and ``t != 2``."""
    if n < 3:
        raise ConstraintViolation("n >= 3 required")
    t = _as_scalar(t)
    bad = _is_zero(t - 2) or _is_zero(t * (n - 2) - (2 * n - 2))
    return IrredVerdict(REDUCIBLE if bad else IRREDUCIBLE, "ClosedForm",
                        exact=not isinstance(t, complex))


def _line(vec, exact=True) -> SubspaceBasis:
    return SubspaceBasis(len(vec), (tuple(vec),), exact)


def closed_form_n2(rep: Representation) -> IrredVerdict:
    """Every homogeneous 2-local representation of ST_2 is reducible.

    The witness line depends on the family: ``e1`` when ``c = 0`` for the
    two-sign families, otherwise the ``-1`` eigenvector of the s-image;
    ``e2`` for gamma3..gamma5; an eigenvector of the tau-image for gamma6.
    """
    fam, p = rep.family, rep.params
    if fam is None or not fam.startswith("gamma"):
        raise ConstraintViolation("closed_form_n2 needs a gamma family representation")
    D = rep.root_square or 0
    one, zero = Scalar(1, root_square=D), Scalar(root_square=D)
    if fam in ("gamma1", "gamma2"):
        a, b = p["a"], p["b"]
        c = (1 - a * a) / b
        if not c:
            vec = (one, zero)
        elif fam == "gamma1":
            vec = (-(a + 1) / c, one)
        else:
            # s = [[a, b], [c, -a]]: the -1 eigenvector is ((a - 1)/c, 1)
            vec = ((a - 1) / c, one)
        return IrredVerdict(REDUCIBLE, "ClosedForm", _line(vec), exact=True)
    if fam in ("gamma3", "gamma4", "gamma5"):
        return IrredVerdict(REDUCIBLE, "ClosedForm", _line((zero, one)), exact=True)
    tau = rep.tau[0]
    line = common_invariant_line([tau])
    if line is not None:
        return IrredVerdict(REDUCIBLE, "ClosedForm", line, exact=True)
    line = common_invariant_line([tau.to_float()])
    return IrredVerdict(REDUCIBLE, "ClosedForm", line, exact=False,
                        notes=["tau eigenvalues lie outside the scalar context"])


def fixed_vector_theta23(a, b, n: int, family: str = "theta2") -> SubspaceBasis:
    """Common fixed vector ``v_i = r^(i-1)`` of the s-images.

    ``r = (1+a)/b`` for theta2 (block ``[[-a, b], [c, a]]``) and
    ``r = (1-a)/b`` for theta3.  ``a = -1`` (theta2) gives ``e1``.
    """
    a, b = _as_scalar(a), _as_scalar(b)
    if _is_zero(b):
        raise DegenerateParameters("b = 0: ratio undefined; use fixed_line on the representation")
    if family == "theta2":
        ratio = (1 + a) / b
    elif family == "theta3":
        ratio = (1 - a) / b
    else:
        raise ConstraintViolation(f"unknown family {family!r}")
    one = ratio * 0 + 1
    vec = [one]
    for _ in range(n - 1):
        vec.append(vec[-1] * ratio)
    return _line(vec, exact=not isinstance(ratio, complex))


def fixed_line(rep: Representation) -> SubspaceBasis | None:
    """First basis vector of the common fixed space of all images, if any."""
    gens = rep.images()
    d = rep.dim
    ident = Matrix.identity(d, like=gens[0])
    stacked = []
    for g in gens:
        stacked.extend((g - ident).tolist())
    system = Matrix(stacked, gens[0].D) if gens[0].exact else Matrix(np.array(stacked, dtype=complex))
    basis = nullspace(system)
    if not basis:
        return None
    return SubspaceBasis(d, (basis[0],), rep.exact).normalized()


def composition_factor(rep: Representation, line: SubspaceBasis | None = None) -> Representation:
    """Induced representation on the quotient by an invariant line.

    With ``k`` the last non-zero coordinate of the line's vector ``v``, the
    quotient basis is the image of ``e_j`` (``j != k``) and ``e_k`` is
    eliminated via ``e_k = -(1/v_k) sum_{l != k} v_l e_l``.
    """
    if line is None:
        line = fixed_line(rep) or common_invariant_line(rep.images())
        if line is None:
            raise NotInvariant("no invariant line found")
    if line.dim != 1:
        raise NotInvariant("composition_factor needs a one-dimensional subspace")
    if not is_invariant(line, rep.images()):
        raise NotInvariant("line is not invariant under every image")
    v = line.vectors[0]
    k = max(i for i, x in enumerate(v) if not _is_zero(x))
    keep = [i for i in range(rep.dim) if i != k]

    def induced(m: Matrix) -> Matrix:
        vk = v[k]
        rows = [[m[l, j] - m[k, j] * v[l] / vk for j in keep] for l in keep]
        if m.exact:
            return Matrix(rows, m.D)
        return Matrix(np.array(rows, dtype=complex))

    s = tuple(induced(m) for m in rep.s)
    tau = None if rep.tau is None else tuple(induced(m) for m in rep.tau)
    fam = f"{rep.family}'" if rep.family else None
    return Representation(rep.group, rep.dim - 1, s, tau, fam, dict(rep.params))


def closed_form(rep: Representation, factor: bool = False) -> IrredVerdict | None:
    """Closed-form verdict for a named family, or ``None`` when none applies.

    ``factor=True`` asks about the degree n-1 composition factor (theta2,
    theta3, n1); otherwise about the representation itself.
    """
    fam, p, n = rep.family, rep.params, rep.group.n
    if fam is None:
        return None
    if fam.endswith("'"):
        fam, factor = fam[:-1], True
    if fam.startswith("gamma") and not factor:
        return closed_form_n2(rep)
    if fam == "theta1" and not factor:
        return closed_form_theta1(p["b"], p["w"], p["x"], rep.group.kind.is_monoid)
    if fam in ("theta2", "theta3"):
        if factor:
            return closed_form_theta23(p["a"], n)
        if p["b"]:
            line = fixed_vector_theta23(p["a"], p["b"], n, fam)
        else:
            line = fixed_line(rep)
        return IrredVerdict(REDUCIBLE, "ClosedForm", line, exact=rep.exact)
    if fam in ("theta4", "theta5") and not factor:
        e1 = Matrix.identity(rep.dim, like=rep.s[0]).column(0)
        return IrredVerdict(REDUCIBLE, "ClosedForm", _line(e1, rep.exact), exact=rep.exact)
    if fam == "n1":
        if factor:
            return closed_form_n1_factor(p["t"], n)
        one = Matrix.identity(rep.dim, like=rep.s[0]).column(0)[0]
        return IrredVerdict(REDUCIBLE, "ClosedForm", _line([one] * rep.dim, rep.exact), exact=rep.exact)
    return None
