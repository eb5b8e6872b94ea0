"""Exact scalars in Q(i), optionally extended by one square root.

A :class:`Scalar` stores ``(a + b*i + (c + d*i)*r) / den`` with integer
numerators and a positive common denominator, where ``r*r == root_square``.
``root_square == 0`` means no extension; the ``r`` part is then always zero.

Floating counterparts are plain Python ``complex`` numbers; comparisons on
them go through :func:`close` with an absolute tolerance.
"""
from __future__ import annotations

import cmath
import math
from fractions import Fraction
from numbers import Rational

__all__ = [
    "Scalar",
    "ScalarError",
    "DivisionByZero",
    "InconsistentRoot",
    "ContextMismatch",
    "FLOAT_EPS",
    "check_root_square",
    "close",
    "parse_scalar",
    "to_float",
]

FLOAT_EPS = 1e-9


class ScalarError(ValueError):
    pass


class DivisionByZero(ScalarError, ZeroDivisionError):
    pass


class InconsistentRoot(ScalarError):
    pass


class ContextMismatch(ScalarError):
    pass


def _is_square(k: int) -> bool:
    return k >= 0 and math.isqrt(k) ** 2 == k


def check_root_square(D: int) -> int:
    """Validate an adjoined root ``r*r == D``.

    ``D`` must not already be a square in Q(i), otherwise Q(i)(r) is not a
    field and division breaks.  An integer is a square in Q(i) iff it is
    ``k**2`` or ``-k**2``.
    """
    D = int(D)
    if D != 0 and (_is_square(D) or _is_square(-D)):
        raise ScalarError(f"root_square {D} is already a square in Q(i)")
    return D


class Scalar:
    __slots__ = ("_a", "_b", "_c", "_d", "_den", "D")

    def __init__(self, a=0, b=0, c=0, d=0, root_square: int = 0):
        D = check_root_square(root_square)
        fa, fb, fc, fd = (Fraction(v) for v in (a, b, c, d))
        if D == 0 and (fc or fd):
            raise ContextMismatch("root part given but root_square is 0")
        den = math.lcm(fa.denominator, fb.denominator, fc.denominator, fd.denominator)
        self._set(
            fa.numerator * (den // fa.denominator),
            fb.numerator * (den // fb.denominator),
            fc.numerator * (den // fc.denominator),
            fd.numerator * (den // fd.denominator),
            den,
            D,
        )

    def _set(self, a, b, c, d, den, D):
        g = math.gcd(a, b, c, d, den)
        if g > 1:
            a //= g
            b //= g
            c //= g
            d //= g
            den //= g
        self._a, self._b, self._c, self._d, self._den, self.D = a, b, c, d, den, D

    @classmethod
    def _raw(cls, a, b, c, d, den, D) -> "Scalar":
        obj = cls.__new__(cls)
        if den < 0:
            a, b, c, d, den = -a, -b, -c, -d, -den
        obj._set(a, b, c, d, den, D)
        return obj

    # constructors -------------------------------------------------------

    @classmethod
    def coerce(cls, x, root_square: int = 0) -> "Scalar":
        if isinstance(x, Scalar):
            return x
        if isinstance(x, (int, Rational)):
            f = Fraction(x)
            return cls._raw(f.numerator, 0, 0, 0, f.denominator, root_square)
        if isinstance(x, str):
            return parse_scalar(x, root_square)
        if isinstance(x, complex):
            raise TypeError("refusing to coerce a float complex into an exact Scalar")
        raise TypeError(f"cannot coerce {type(x).__name__} to Scalar")

    @classmethod
    def i(cls, root_square: int = 0) -> "Scalar":
        return cls._raw(0, 1, 0, 0, 1, root_square)

    @classmethod
    def root(cls, root_square: int) -> "Scalar":
        if root_square == 0:
            raise ContextMismatch("no adjoined root in this context")
        return cls._raw(0, 0, 1, 0, 1, check_root_square(root_square))

    # accessors ----------------------------------------------------------

    @property
    def parts(self) -> tuple[Fraction, Fraction, Fraction, Fraction]:
        den = self._den
        return (Fraction(self._a, den), Fraction(self._b, den),
                Fraction(self._c, den), Fraction(self._d, den))

    @property
    def is_gaussian(self) -> bool:
        """True when the value lies in Q(i), i.e. has no ``r`` part."""
        return self._c == 0 and self._d == 0

    @property
    def is_rational(self) -> bool:
        return self._b == 0 and self._c == 0 and self._d == 0

    def _key(self):
        return (self._a, self._b, self._c, self._d, self._den)

    # arithmetic ---------------------------------------------------------

    def _unify(self, other):
        if not isinstance(other, Scalar):
            if isinstance(other, (int, Rational)):
                f = Fraction(other)
                return Scalar._raw(f.numerator, 0, 0, 0, f.denominator, self.D), self.D
            return None, None
        if other.D == self.D:
            return other, self.D
        if other.is_gaussian and self.is_gaussian:
            D = self.D or other.D
        elif other.is_gaussian:
            D = self.D
        elif self.is_gaussian:
            D = other.D
        else:
            raise ContextMismatch(f"root_square {self.D} vs {other.D}")
        return other, D

    def __add__(self, other):
        o, D = self._unify(other)
        if o is None:
            return NotImplemented
        d1, d2 = self._den, o._den
        return Scalar._raw(self._a * d2 + o._a * d1, self._b * d2 + o._b * d1,
                           self._c * d2 + o._c * d1, self._d * d2 + o._d * d1,
                           d1 * d2, D)

    __radd__ = __add__

    def __neg__(self):
        return Scalar._raw(-self._a, -self._b, -self._c, -self._d, self._den, self.D)

    def __pos__(self):
        return self

    def __sub__(self, other):
        o, D = self._unify(other)
        if o is None:
            return NotImplemented
        d1, d2 = self._den, o._den
        return Scalar._raw(self._a * d2 - o._a * d1, self._b * d2 - o._b * d1,
                           self._c * d2 - o._c * d1, self._d * d2 - o._d * d1,
                           d1 * d2, D)

    def __rsub__(self, other):
        return (-self).__add__(other)

    def __mul__(self, other):
        o, D = self._unify(other)
        if o is None:
            return NotImplemented
        if not self._a and not self._b and not self._c and not self._d:
            return Scalar._raw(0, 0, 0, 0, 1, D)
        a1, b1, c1, d1 = self._a, self._b, self._c, self._d
        a2, b2, c2, d2 = o._a, o._b, o._c, o._d
        # (u1 + v1 r)(u2 + v2 r) = u1 u2 + D v1 v2 + (u1 v2 + v1 u2) r, u, v Gaussian
        re = a1 * a2 - b1 * b2
        im = a1 * b2 + b1 * a2
        if c1 or d1 or c2 or d2:
            re += D * (c1 * c2 - d1 * d2)
            im += D * (c1 * d2 + d1 * c2)
            rre = a1 * c2 - b1 * d2 + c1 * a2 - d1 * b2
            rim = a1 * d2 + b1 * c2 + c1 * b2 + d1 * a2
        else:
            rre = rim = 0
        return Scalar._raw(re, im, rre, rim, self._den * o._den, D)

    __rmul__ = __mul__

    def inverse(self) -> "Scalar":
        if not self:
            raise DivisionByZero("division by zero Scalar")
        a, b, c, d, den, D = self._a, self._b, self._c, self._d, self._den, self.D
        # N = u^2 - D v^2 (Gaussian integer); 1/(u + v r) = (u - v r) conj(N) / |N|^2
        nre = a * a - b * b - D * (c * c - d * d)
        nim = 2 * a * b - D * 2 * c * d
        norm = nre * nre + nim * nim
        # (u - v r) * conj(N) * den
        ure = (a * nre + b * nim) * den
        uim = (b * nre - a * nim) * den
        vre = -(c * nre + d * nim) * den
        vim = -(d * nre - c * nim) * den
        return Scalar._raw(ure, uim, vre, vim, norm, D)

    def __truediv__(self, other):
        o, D = self._unify(other)
        if o is None:
            return NotImplemented
        if o.D != D:
            o = Scalar._raw(o._a, o._b, o._c, o._d, o._den, D)
        return self * o.inverse()

    def __rtruediv__(self, other):
        o, D = self._unify(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        result = Scalar._raw(1, 0, 0, 0, 1, self.D)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def conjugate(self) -> "Scalar":
        """Complex conjugate, assuming ``r`` is real (``D > 0``) or purely
        imaginary (``D < 0``)."""
        sign = -1 if self.D < 0 else 1
        return Scalar._raw(self._a, -self._b, sign * self._c, -sign * self._d,
                           self._den, self.D)

    def root_conjugate(self) -> "Scalar":
        """The field automorphism fixing Q(i) and sending ``r`` to ``-r``."""
        return Scalar._raw(self._a, self._b, -self._c, -self._d, self._den, self.D)

    # comparisons --------------------------------------------------------

    def __bool__(self):
        return bool(self._a or self._b or self._c or self._d)

    def __eq__(self, other):
        if isinstance(other, Scalar):
            if self.D != other.D and not (self.is_gaussian and other.is_gaussian):
                return False
            return self._key() == other._key()
        if isinstance(other, (int, Rational)):
            f = Fraction(other)
            return self.is_rational and self._a * f.denominator == f.numerator * self._den
        return NotImplemented

    def __hash__(self):
        if self.is_rational:
            return hash(Fraction(self._a, self._den))
        return hash(self._key())

    # conversion ---------------------------------------------------------

    def to_complex(self, root_value: complex | None = None, eps: float = FLOAT_EPS) -> complex:
        return to_float(self, root_value, eps)

    def __complex__(self):
        return self.to_complex()

    def __str__(self):
        a, b, c, d = self.parts
        s = _fmt_gauss(a, b)
        if self.D:
            s += f"+({_fmt_gauss(c, d)})r"
        return s

    def __repr__(self):
        if self.D:
            return f"Scalar('{self}', root_square={self.D})"
        return f"Scalar('{self}')"


def _fmt_gauss(a: Fraction, b: Fraction) -> str:
    sign = "-" if b < 0 else "+"
    return f"{a}{sign}{abs(b)}i"


def to_float(s: Scalar, root_value: complex | None = None, eps: float = FLOAT_EPS) -> complex:
    """Embed ``s`` into the complex numbers.

    ``root_value`` chooses the image of ``r``; it defaults to the principal
    square root of ``root_square`` and must square to it within ``eps``.
    """
    a, b, c, d = s.parts
    value = complex(float(a), float(b))
    if s.D == 0:
        return value
    if root_value is None:
        root_value = cmath.sqrt(s.D)
    elif abs(root_value * root_value - s.D) > max(eps, 1e-7 * abs(s.D)):
        raise InconsistentRoot(f"{root_value}^2 = {root_value * root_value} != {s.D}")
    return value + complex(float(c), float(d)) * root_value


def close(x: complex, y: complex, eps: float = FLOAT_EPS) -> bool:
    return abs(x - y) <= eps


# parsing ------------------------------------------------------------------

class _Parser:
    def __init__(self, text: str, D: int):
        self.s = text.replace(" ", "").replace("*", "")
        self.pos = 0
        self.D = D

    def peek(self):
        return self.s[self.pos] if self.pos < len(self.s) else ""

    def error(self, msg):
        raise ScalarError(f"bad scalar {self.s!r} at {self.pos}: {msg}")

    def parse(self) -> Scalar:
        if not self.s:
            self.error("empty")
        value = self.expr()
        if self.pos != len(self.s):
            self.error("trailing input")
        return value

    def expr(self) -> Scalar:
        sign = 1
        if self.peek() in "+-":
            sign = -1 if self.peek() == "-" else 1
            self.pos += 1
        total = self.term() * sign
        while self.peek() in ("+", "-"):
            sign = -1 if self.peek() == "-" else 1
            self.pos += 1
            # tolerate "+-" as produced by some writers
            if self.peek() == "-":
                sign = -sign
                self.pos += 1
            total = total + self.term() * sign
        return total

    def number(self) -> Fraction | None:
        start = self.pos
        while self.peek().isdigit():
            self.pos += 1
        if start == self.pos:
            return None
        num = int(self.s[start:self.pos])
        if self.peek() == "/":
            self.pos += 1
            dstart = self.pos
            while self.peek().isdigit():
                self.pos += 1
            if dstart == self.pos:
                self.error("missing denominator")
            den = int(self.s[dstart:self.pos])
            if den == 0:
                self.error("zero denominator")
            return Fraction(num, den)
        return Fraction(num)

    def term(self) -> Scalar:
        if self.peek() == "(":
            self.pos += 1
            value = self.expr()
            if self.peek() != ")":
                self.error("expected ')'")
            self.pos += 1
        else:
            coeff = self.number()
            value = Scalar._raw(coeff.numerator if coeff is not None else 1, 0, 0, 0,
                                coeff.denominator if coeff is not None else 1, self.D)
            seen = coeff is not None
            if self.peek() == "i":
                self.pos += 1
                value = value * Scalar.i(self.D)
                seen = True
            if not seen and self.peek() != "r":
                self.error("expected a number, 'i' or 'r'")
        if self.peek() == "r":
            self.pos += 1
            if self.D == 0:
                self.error("'r' used but root_square is 0")
            value = value * Scalar.root(self.D)
        return value


def parse_scalar(text: str, root_square: int = 0) -> Scalar:
    """Parse ``"1/2-3i"``, ``"i"``, ``"2r"`` or ``"1+0i+(0+1i)r"``."""
    return _Parser(str(text), check_root_square(root_square)).parse()
