"""JSON encodings for scalars, matrices, subspaces, representations and verdicts.

Exact scalars are written with ``str(Scalar)`` and read back with
:func:`parse_scalar` under the file's ``root_square``.  Float data (only
produced by the float fallback of the irreducibility oracle) is marked
``"exact": false`` and stored as ``"re+imi"`` strings.
"""
from __future__ import annotations

from .irred import IrredVerdict
from .linalg import Matrix, SubspaceBasis
from .reps import Representation
from .scalar import Scalar, parse_scalar
from .words import GroupKind

__all__ = [
    "FormatError",
    "complex_to_str",
    "str_to_complex",
    "matrix_to_json",
    "matrix_from_json",
    "basis_to_json",
    "rep_to_json",
    "rep_from_json",
    "verdict_to_json",
]


class FormatError(ValueError):
    pass


def complex_to_str(z: complex) -> str:
    z = complex(z)
    re = 0.0 if z.real == 0 else z.real
    im = 0.0 if z.imag == 0 else z.imag
    return f"{re!r}{'+' if im >= 0 else '-'}{abs(im)!r}i"


def str_to_complex(text: str) -> complex:
    try:
        return complex(text.replace(" ", "").replace("i", "j"))
    except ValueError as exc:
        raise FormatError(f"bad float scalar {text!r}") from exc


def _entry_out(x, exact: bool) -> str:
    return str(x) if exact else complex_to_str(x)


def _entry_in(x, exact: bool, D: int):
    if not isinstance(x, str):
        raise FormatError(f"scalars must be strings, got {x!r}")
    return parse_scalar(x, D) if exact else str_to_complex(x)


def matrix_to_json(m: Matrix) -> dict:
    out = {
        "rows": m.rows,
        "cols": m.cols,
        "root_square": m.D if m.exact else None,
        "entries": [[_entry_out(x, m.exact) for x in row] for row in m.tolist()],
    }
    if not m.exact:
        out["exact"] = False
    return out


def matrix_from_json(obj: dict, root_square: int | None = None) -> Matrix:
    try:
        exact = obj.get("exact", True)
        D = obj.get("root_square")
        D = root_square if D is None else D
        D = D or 0
        entries = obj["entries"]
        if len(entries) != obj["rows"] or any(len(r) != obj["cols"] for r in entries):
            raise FormatError("entries do not match rows/cols")
        data = [[_entry_in(x, exact, D) for x in row] for row in entries]
    except (KeyError, TypeError) as exc:
        raise FormatError(f"malformed matrix JSON: {exc}") from exc
    return Matrix(data, D) if exact else Matrix([[complex(x) for x in r] for r in data])


def basis_to_json(b: SubspaceBasis | None) -> dict | None:
    if b is None:
        return None
    D = None
    if b.exact:
        Ds = {x.D for v in b.vectors for x in v if isinstance(x, Scalar)}
        D = max(Ds, key=abs) if Ds else 0
    return {
        "ambient_dim": b.ambient_dim,
        "dim": b.dim,
        "exact": b.exact,
        "root_square": D,
        "vectors": [[_entry_out(x, b.exact) for x in v] for v in b.vectors],
    }


def rep_to_json(rep: Representation) -> dict:
    """``{"group", "n", "dim", "root_square", "s", "tau"}`` plus the family tag.

    ``family`` and ``params`` are kept so that closed-form deciders can run on
    a file; readers that do not know them can ignore both.
    """
    out = {
        "group": rep.group.kind.value,
        "n": rep.group.n,
        "dim": rep.dim,
        "root_square": rep.root_square if rep.exact else None,
        "s": [matrix_to_json(m) for m in rep.s],
    }
    if rep.tau is not None:
        out["tau"] = [matrix_to_json(m) for m in rep.tau]
    if rep.family is not None:
        out["family"] = rep.family
        out["params"] = {k: str(v) for k, v in sorted(rep.params.items())}
    return out


def rep_from_json(obj: dict) -> Representation:
    try:
        group = GroupKind(obj["group"], int(obj["n"]))
        D = obj.get("root_square") or 0
        s = [matrix_from_json(m, D) for m in obj["s"]]
        tau = [matrix_from_json(m, D) for m in obj["tau"]] if "tau" in obj else None
        params = {k: parse_scalar(v, D) for k, v in obj.get("params", {}).items()}
        dim = int(obj.get("dim", s[0].rows if s else 0))
    except (KeyError, TypeError) as exc:
        raise FormatError(f"malformed representation JSON: {exc}") from exc
    return Representation(group, dim, s, tau, obj.get("family"), params)


def verdict_to_json(v: IrredVerdict) -> dict:
    return {
        "verdict": v.verdict,
        "method": v.method,
        "witness": basis_to_json(v.witness),
        "span_dim": v.span_dim,
        "exact": v.exact,
        "notes": list(v.notes),
    }
