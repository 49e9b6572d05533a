"""Scalar fields: exact rationals, exact elements of Q(sqrt d), and mpmath floats.

Every array in the package is a numpy object array whose entries are one of
``int``, ``gmpy2.mpq``, :class:`QuadraticNumber` (exact modes) or
``mpmath.mpf`` (float mode).  The mode is a property of the whole computation,
never of a single entry.
"""
import re
from math import isqrt

import mpmath
import numpy as np
from gmpy2 import mpq

EXACT = "exact"
FLOAT = "float"

# 40 significant digits for the float path; verdicts use FLOAT_TOL.
mpmath.mp.dps = 40
FLOAT_TOL = mpmath.mpf("1e-9")
# threshold for "numerically zero" inside eliminations
ELIM_TOL = mpmath.mpf("1e-25")


def squarefree_decompose(q):
    """Write a positive rational q as s**2 * d with s rational and d a squarefree integer."""
    q = mpq(q)
    if q <= 0:
        raise ValueError("expected a positive rational")
    n = int(q.numerator) * int(q.denominator)
    s = mpq(1, int(q.denominator))
    d = 1
    p = 2
    while p * p <= n and p < 20000:
        while n % (p * p) == 0:
            n //= p * p
            s *= p
        if n % p == 0:
            n //= p
            d *= p
        p += 1 if p == 2 else 2
    r = isqrt(n)
    if r * r == n:
        s *= r
    else:
        d *= n
    return s, d


class QuadraticNumber:
    """Exact element a + b*sqrt(d) of the real quadratic field Q(sqrt d)."""

    __slots__ = ("a", "b", "d")

    def __init__(self, a, b=0, d=2):
        self.a = mpq(a)
        self.b = mpq(b)
        self.d = int(d)

    @classmethod
    def sqrt_of(cls, q):
        """sqrt(q) for a positive rational, as a rational if possible."""
        s, d = squarefree_decompose(q)
        if d == 1:
            return s
        return cls(0, s, d)

    def _coerce(self, other):
        if isinstance(other, QuadraticNumber):
            if other.d != self.d:
                raise ValueError(f"mixed quadratic fields Q(s{self.d}) and Q(s{other.d})")
            return other.a, other.b
        if isinstance(other, (int, type(mpq(0)), np.integer)):
            return mpq(other), mpq(0)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return QuadraticNumber(self.a + o[0], self.b + o[1], self.d)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return QuadraticNumber(self.a - o[0], self.b - o[1], self.d)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return QuadraticNumber(o[0] - self.a, o[1] - self.b, self.d)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        a, b = o
        return QuadraticNumber(self.a * a + self.d * self.b * b, self.a * b + self.b * a, self.d)

    __rmul__ = __mul__

    def norm(self):
        return self.a * self.a - self.d * self.b * self.b

    def conjugate(self):
        return QuadraticNumber(self.a, -self.b, self.d)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if o[1] == 0:
            return QuadraticNumber(self.a / o[0], self.b / o[0], self.d)
        den = QuadraticNumber(o[0], o[1], self.d)
        n = den.norm()
        return self * den.conjugate() / n

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return QuadraticNumber(o[0], o[1], self.d) / self

    def __neg__(self):
        return QuadraticNumber(-self.a, -self.b, self.d)

    def __pos__(self):
        return self

    def sign(self):
        sa = (self.a > 0) - (self.a < 0)
        sb = (self.b > 0) - (self.b < 0)
        if sa == sb or sb == 0:
            return sa
        if sa == 0:
            return sb
        # opposite signs: compare a^2 with d b^2
        t = self.a * self.a - self.d * self.b * self.b
        return sa if t > 0 else (sb if t < 0 else 0)

    def __abs__(self):
        return -self if self.sign() < 0 else self

    def __bool__(self):
        return bool(self.a) or bool(self.b)

    def __eq__(self, other):
        o = self._coerce(other) if not isinstance(other, float) else NotImplemented
        if o is NotImplemented:
            return False
        return self.a == o[0] and self.b == o[1]

    def __hash__(self):
        if self.b == 0:
            return hash(self.a)
        return hash((self.a, self.b, self.d))

    def __lt__(self, other):
        return (self - other).sign() < 0

    def __le__(self, other):
        return (self - other).sign() <= 0

    def __gt__(self, other):
        return (self - other).sign() > 0

    def __ge__(self, other):
        return (self - other).sign() >= 0

    def __float__(self):
        return float(self.to_mpf())

    def to_mpf(self):
        return _q2f(self.a) + _q2f(self.b) * mpmath.sqrt(self.d)

    def __repr__(self):
        return f"QuadraticNumber({self.a}, {self.b}, {self.d})"

    def __str__(self):
        return format_scalar(self)


def _q2f(q):
    q = mpq(q)
    return mpmath.mpf(int(q.numerator)) / int(q.denominator)


def to_float(x):
    """Convert any scalar to an mpf."""
    if isinstance(x, mpmath.mpf):
        return x
    if isinstance(x, QuadraticNumber):
        return x.to_mpf()
    if isinstance(x, (int, np.integer)):
        return mpmath.mpf(int(x))
    if isinstance(x, float):
        return mpmath.mpf(x)
    return _q2f(x)


def is_rational(x):
    return isinstance(x, (int, np.integer)) or type(x) is type(mpq(0))


def to_mode(x, mode):
    if mode == FLOAT:
        return to_float(x)
    if isinstance(x, QuadraticNumber):
        return x if x.b != 0 else x.a
    if isinstance(x, (mpmath.mpf, float)):
        raise TypeError("cannot convert a float to an exact scalar")
    return mpq(x)


def array_to_mode(arr, mode):
    arr = np.asarray(arr, dtype=object)
    out = np.empty(arr.shape, dtype=object)
    flat_in = arr.reshape(-1)
    flat_out = out.reshape(-1)
    for i, x in enumerate(flat_in):
        flat_out[i] = to_mode(x, mode)
    return out


def zeros(shape):
    out = np.empty(shape, dtype=object)
    out.fill(mpq(0))
    return out


def identity(n):
    out = zeros((n, n))
    for i in range(n):
        out[i, i] = mpq(1)
    return out


def field_of(arr):
    """Return (mode, d): d > 1 flags Q(sqrt d), d == 1 plain Q, mode FLOAT for mpf."""
    d = 1
    for x in np.asarray(arr, dtype=object).reshape(-1):
        if isinstance(x, mpmath.mpf):
            return FLOAT, 0
        if isinstance(x, QuadraticNumber) and x.b != 0:
            d = x.d
    return EXACT, d


def is_zero(x, mode=EXACT, tol=None):
    if mode == FLOAT:
        return abs(to_float(x)) <= (ELIM_TOL if tol is None else tol)
    return not x


def sqrt_scalar(x, mode):
    if mode == FLOAT:
        return mpmath.sqrt(to_float(x))
    return QuadraticNumber.sqrt_of(x)


def format_scalar(x, digits=20):
    """Compact text form: '3/4', '1/2+3/4*s2' or a decimal for floats."""
    if isinstance(x, QuadraticNumber):
        if x.b == 0:
            return format_scalar(x.a)
        rad = f"s{x.d}"
        b = x.b
        if b == 1:
            irr = rad
        elif b == -1:
            irr = "-" + rad
        else:
            irr = f"{format_scalar(b)}*{rad}"
        if x.a == 0:
            return irr
        return f"{format_scalar(x.a)}{'' if irr.startswith('-') else '+'}{irr}"
    if isinstance(x, (mpmath.mpf, float)):
        return mpmath.nstr(mpmath.mpf(x), digits)
    q = mpq(x)
    if q.denominator == 1:
        return str(int(q.numerator))
    return f"{int(q.numerator)}/{int(q.denominator)}"


_COEFF_RE = re.compile(
    r"^\s*(?P<num>\d+(?:\.\d*)?|\.\d+)?\s*\*?\s*(?:s(?P<rad>\d+))?\s*(?:/\s*(?P<den>\d+(?:\.\d*)?))?\s*$"
)


def parse_coefficient(text):
    """Parse '1/2', 's2/2', '3s5/7' or a decimal into (square, exact_ok).

    Returns the exact rational square of the coefficient when the string is
    an exact form, plus a flag saying whether the original text was a
    decimal (decimals are still returned as exact rationals; the caller
    decides whether to honour them exactly).
    """
    m = _COEFF_RE.match(text)
    if not m or (m.group("num") is None and m.group("rad") is None):
        raise ValueError(f"cannot parse coefficient {text!r}")
    num = mpq(m.group("num")) if m.group("num") is not None else mpq(1)
    rad = int(m.group("rad")) if m.group("rad") is not None else 1
    den = mpq(m.group("den")) if m.group("den") is not None else mpq(1)
    if den == 0:
        raise ValueError(f"zero denominator in {text!r}")
    square = num * num * rad / (den * den)
    decimal = "." in text
    return square, decimal


def coefficient_value(text):
    """Float value of a coefficient string (used only for display)."""
    square, _ = parse_coefficient(text)
    return mpmath.sqrt(_q2f(square))
