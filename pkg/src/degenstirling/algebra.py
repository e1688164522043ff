"""Exact arithmetic tower used by everything else.

From the bottom up: arbitrary-precision rationals, polynomials in the
deformation parameter (printed ``l``), polynomials in ``x`` whose
coefficients are such polynomials, and formal power series in ``t``
truncated at a fixed order whose coefficients live one level down.
Every object is immutable and every operation is exact; no floating
point enters this module or anything built on it.
"""

from __future__ import annotations

from fractions import Fraction
from math import factorial

__all__ = [
    "Rational",
    "LambdaPoly",
    "XPoly",
    "TruncatedSeries",
    "LAMBDA",
    "X",
    "as_rational",
    "rational_str",
    "falling_scalar",
    "rising_scalar",
    "gen_falling",
    "divmod_linear",
    "series_exp",
    "degenerate_exp_series",
]

# Exact rational scalar: gcd-reduced, positive denominator, arbitrary
# precision.  The stdlib type already maintains exactly those invariants.
Rational = Fraction


def as_rational(value) -> Fraction:
    """Coerce int/str/Fraction to Fraction.  Floats are refused: a float
    has already lost exactness before it reaches us."""
    if isinstance(value, float):
        raise TypeError(f"refusing float {value!r}; pass a Fraction, int or string")
    return Fraction(value)


def rational_str(q: Fraction) -> str:
    """Canonical wire form "p/q", denominator always present ("3" -> "3/1")."""
    return f"{q.numerator}/{q.denominator}"


def _pretty_rational(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def falling_scalar(a, k: int):
    """Classical falling factorial a(a-1)...(a-k+1); empty product is 1."""
    out = 1
    for i in range(k):
        out = out * (a - i)
    return out


def rising_scalar(a, k: int):
    """Classical rising factorial a(a+1)...(a+k-1); empty product is 1."""
    out = 1
    for i in range(k):
        out = out * (a + i)
    return out


class LambdaPoly:
    """Polynomial in the deformation parameter with rational coefficients.

    Canonical form: coefficients ascending by degree, no trailing zeros,
    so equality and hashing are structural.
    """

    __slots__ = ("_coeffs",)

    def __init__(self, coeffs=()):
        cs = [as_rational(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self._coeffs = tuple(cs)

    @classmethod
    def zero(cls) -> "LambdaPoly":
        return cls()

    @classmethod
    def one(cls) -> "LambdaPoly":
        return cls((1,))

    @classmethod
    def constant(cls, value) -> "LambdaPoly":
        return cls((as_rational(value),))

    @staticmethod
    def _coerce(value):
        if isinstance(value, LambdaPoly):
            return value
        if isinstance(value, (int, Fraction)):
            return LambdaPoly((value,))
        return None

    @property
    def coeffs(self) -> tuple:
        return self._coeffs

    @property
    def degree(self) -> int:
        return len(self._coeffs) - 1

    def is_zero(self) -> bool:
        return not self._coeffs

    def coefficient(self, i: int) -> Fraction:
        return self._coeffs[i] if 0 <= i < len(self._coeffs) else Fraction(0)

    def __call__(self, lam_value) -> Fraction:
        lam_value = as_rational(lam_value)
        acc = Fraction(0)
        for c in reversed(self._coeffs):
            acc = acc * lam_value + c
        return acc

    def __add__(self, other):
        if isinstance(other, XPoly):
            return NotImplemented
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        n = max(len(self._coeffs), len(o._coeffs))
        return LambdaPoly(
            [self.coefficient(i) + o.coefficient(i) for i in range(n)]
        )

    __radd__ = __add__

    def __neg__(self):
        return LambdaPoly([-c for c in self._coeffs])

    def __sub__(self, other):
        if isinstance(other, XPoly):
            return NotImplemented
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        if isinstance(other, XPoly):
            return NotImplemented
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if not self._coeffs or not o._coeffs:
            return LambdaPoly()
        out = [Fraction(0)] * (len(self._coeffs) + len(o._coeffs) - 1)
        for i, a in enumerate(self._coeffs):
            for j, b in enumerate(o._coeffs):
                out[i + j] += a * b
        return LambdaPoly(out)

    __rmul__ = __mul__

    def __truediv__(self, other):
        q = as_rational(other)
        return self * (Fraction(1) / q)

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise ValueError("exponent must be a nonnegative integer")
        acc = LambdaPoly.one()
        for _ in range(n):
            acc = acc * self
        return acc

    def __eq__(self, other):
        if isinstance(other, XPoly):
            return NotImplemented
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self._coeffs == o._coeffs

    def __hash__(self):
        # degree-0 polynomials hash like their scalar so that x == y
        # implies hash(x) == hash(y) across the coercion boundary
        if not self._coeffs:
            return hash(Fraction(0))
        if len(self._coeffs) == 1:
            return hash(self._coeffs[0])
        return hash(self._coeffs)

    def __bool__(self):
        return bool(self._coeffs)

    def __repr__(self):
        return f"LambdaPoly({list(self._coeffs)!r})"

    def __str__(self):
        if not self._coeffs:
            return "0"
        parts = []
        for d, c in enumerate(self._coeffs):
            if c == 0:
                continue
            mag = _pretty_rational(abs(c))
            if d == 0:
                body = mag
            elif d == 1:
                body = f"{mag}*l"
            else:
                body = f"{mag}*l^{d}"
            if not parts:
                parts.append(("-" if c < 0 else "") + body)
            else:
                parts.append(("- " if c < 0 else "+ ") + body)
        return " ".join(parts)


LAMBDA = LambdaPoly((0, 1))


class XPoly:
    """Polynomial in x whose coefficients are LambdaPoly, canonical form."""

    __slots__ = ("_coeffs",)

    def __init__(self, coeffs=()):
        cs = []
        for c in coeffs:
            lp = LambdaPoly._coerce(c)
            if lp is None:
                raise TypeError(f"cannot use {c!r} as an x-coefficient")
            cs.append(lp)
        while cs and cs[-1].is_zero():
            cs.pop()
        self._coeffs = tuple(cs)

    @classmethod
    def zero(cls) -> "XPoly":
        return cls()

    @classmethod
    def one(cls) -> "XPoly":
        return cls((LambdaPoly.one(),))

    @classmethod
    def constant(cls, value) -> "XPoly":
        lp = LambdaPoly._coerce(value)
        if lp is None:
            raise TypeError(f"cannot use {value!r} as a constant")
        return cls((lp,))

    @staticmethod
    def _coerce(value):
        if isinstance(value, XPoly):
            return value
        lp = LambdaPoly._coerce(value)
        if lp is None:
            return None
        return XPoly((lp,))

    @property
    def coeffs(self) -> tuple:
        return self._coeffs

    @property
    def degree(self) -> int:
        return len(self._coeffs) - 1

    def is_zero(self) -> bool:
        return not self._coeffs

    def coefficient(self, k: int) -> LambdaPoly:
        return self._coeffs[k] if 0 <= k < len(self._coeffs) else LambdaPoly.zero()

    def __call__(self, x_value) -> LambdaPoly:
        """Substitute the outer indeterminate; the result still carries l."""
        xv = LambdaPoly._coerce(x_value)
        if xv is None:
            raise TypeError(f"cannot evaluate at {x_value!r}")
        acc = LambdaPoly.zero()
        for c in reversed(self._coeffs):
            acc = acc * xv + c
        return acc

    def at_lambda(self, lam_value) -> "XPoly":
        """Substitute a rational for l in every coefficient."""
        return XPoly([LambdaPoly.constant(c(lam_value)) for c in self._coeffs])

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        n = max(len(self._coeffs), len(o._coeffs))
        return XPoly([self.coefficient(i) + o.coefficient(i) for i in range(n)])

    __radd__ = __add__

    def __neg__(self):
        return XPoly([-c for c in self._coeffs])

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        if isinstance(other, TruncatedSeries):
            return NotImplemented
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if not self._coeffs or not o._coeffs:
            return XPoly()
        out = [LambdaPoly.zero()] * (len(self._coeffs) + len(o._coeffs) - 1)
        for i, a in enumerate(self._coeffs):
            for j, b in enumerate(o._coeffs):
                out[i + j] = out[i + j] + a * b
        return XPoly(out)

    __rmul__ = __mul__

    def __truediv__(self, other):
        q = as_rational(other)
        return self * (Fraction(1) / q)

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise ValueError("exponent must be a nonnegative integer")
        acc = XPoly.one()
        for _ in range(n):
            acc = acc * self
        return acc

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self._coeffs == o._coeffs

    def __hash__(self):
        if not self._coeffs:
            return hash(Fraction(0))
        if len(self._coeffs) == 1:
            return hash(self._coeffs[0])
        return hash(self._coeffs)

    def __bool__(self):
        return bool(self._coeffs)

    def __repr__(self):
        return f"XPoly({[str(c) for c in self._coeffs]!r})"

    def __str__(self):
        if not self._coeffs:
            return "0"
        parts = []
        for d in range(len(self._coeffs) - 1, -1, -1):
            c = self._coeffs[d]
            if c.is_zero():
                continue
            cs = str(c)
            if " " in cs or cs.startswith("-"):
                cs = f"({cs})"
            if d == 0:
                parts.append(cs)
            elif d == 1:
                parts.append(f"{cs}*x")
            else:
                parts.append(f"{cs}*x^{d}")
        return " + ".join(parts)


X = XPoly((LambdaPoly.zero(), LambdaPoly.one()))


def divmod_linear(p: XPoly, root) -> tuple[XPoly, LambdaPoly]:
    """Synthetic division of p by the monic linear factor (x - root).

    Returns (quotient, remainder); exact, so the remainder is the value
    p(root).
    """
    root = as_rational(root)
    cs = p.coeffs
    if not cs:
        return XPoly.zero(), LambdaPoly.zero()
    n = len(cs) - 1
    quot = [LambdaPoly.zero()] * n
    acc = cs[n]
    for i in range(n - 1, -1, -1):
        quot[i] = acc
        acc = cs[i] + acc * root
    return XPoly(quot), acc


def gen_falling(base, n: int):
    """Falling factorial with step l: base(base - l)...(base - (n-1)l).

    Accepts an XPoly, a LambdaPoly, or a rational scalar; the result lives
    in the smallest ring containing base and l.
    """
    if not isinstance(n, int) or n < 0:
        raise ValueError("order must be a nonnegative integer")
    if isinstance(base, XPoly):
        step = XPoly.constant(LAMBDA)
        acc = XPoly.one()
    else:
        lp = LambdaPoly._coerce(base)
        if lp is None:
            raise TypeError(f"cannot take a step-l falling factorial of {base!r}")
        base = lp
        step = LAMBDA
        acc = LambdaPoly.one()
    for j in range(n):
        acc = acc * (base - j * step)
    return acc


class TruncatedSeries:
    """Power series in t with XPoly coefficients, truncated at a fixed order.

    The order is part of the value: arithmetic between series of different
    orders is an error rather than a silent re-truncation.
    """

    __slots__ = ("_coeffs",)

    def __init__(self, order: int, coeffs=()):
        if not isinstance(order, int) or order < 0:
            raise ValueError("order must be a nonnegative integer")
        cs = []
        for c in coeffs:
            xp = XPoly._coerce(c)
            if xp is None:
                raise TypeError(f"cannot use {c!r} as a series coefficient")
            cs.append(xp)
        if len(cs) > order + 1:
            raise ValueError(f"{len(cs)} coefficients exceed order {order}")
        cs.extend(XPoly.zero() for _ in range(order + 1 - len(cs)))
        self._coeffs = tuple(cs)

    @classmethod
    def zero(cls, order: int) -> "TruncatedSeries":
        return cls(order)

    @classmethod
    def one(cls, order: int) -> "TruncatedSeries":
        return cls(order, (XPoly.one(),))

    @property
    def order(self) -> int:
        return len(self._coeffs) - 1

    @property
    def coeffs(self) -> tuple:
        return self._coeffs

    def coefficient(self, n: int) -> XPoly:
        if not 0 <= n <= self.order:
            raise IndexError(f"coefficient {n} outside order {self.order}")
        return self._coeffs[n]

    def _same_order(self, other: "TruncatedSeries"):
        if self.order != other.order:
            raise ValueError(
                f"series order mismatch: {self.order} vs {other.order}"
            )

    def __add__(self, other):
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        self._same_order(other)
        return TruncatedSeries(
            self.order, [a + b for a, b in zip(self._coeffs, other._coeffs)]
        )

    def __sub__(self, other):
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        self._same_order(other)
        return TruncatedSeries(
            self.order, [a - b for a, b in zip(self._coeffs, other._coeffs)]
        )

    def __neg__(self):
        return TruncatedSeries(self.order, [-c for c in self._coeffs])

    def __mul__(self, other):
        if isinstance(other, TruncatedSeries):
            self._same_order(other)
            n = self.order
            out = [XPoly.zero()] * (n + 1)
            for i, a in enumerate(self._coeffs):
                if a.is_zero():
                    continue
                for j in range(n - i + 1):
                    b = other._coeffs[j]
                    if not b.is_zero():
                        out[i + j] = out[i + j] + a * b
            return TruncatedSeries(n, out)
        o = XPoly._coerce(other)
        if o is None:
            return NotImplemented
        return TruncatedSeries(self.order, [c * o for c in self._coeffs])

    def __rmul__(self, other):
        o = XPoly._coerce(other)
        if o is None:
            return NotImplemented
        return self * o

    def __eq__(self, other):
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return self._coeffs == other._coeffs

    def __hash__(self):
        return hash(self._coeffs)

    def __repr__(self):
        return f"TruncatedSeries(order={self.order}, {[str(c) for c in self._coeffs]!r})"


def series_exp(u: TruncatedSeries) -> TruncatedSeries:
    """exp of a series with zero constant term: sum_m u^m / m!, exact.

    Powers beyond the truncation order vanish because u has valuation >= 1,
    so the loop below is the whole exponential, not an approximation.
    """
    if not u.coefficient(0).is_zero():
        raise ValueError("series_exp needs a zero constant term")
    n = u.order
    result = TruncatedSeries.one(n)
    term = TruncatedSeries.one(n)
    for m in range(1, n + 1):
        term = term * u * Fraction(1, m)
        result = result + term
    return result


def degenerate_exp_series(xcoef, order: int) -> TruncatedSeries:
    """Degenerate exponential: coefficient of t^k is (xcoef)_{k,l} / k!.

    xcoef may be any XPoly (or scalar); the falling steps are multiples
    of l, so e.g. xcoef=1 gives the series whose t-coefficients are
    (1)_{k,l}/k! = (1)(1-l)...(1-(k-1)l)/k!.
    """
    base = XPoly._coerce(xcoef)
    if base is None:
        raise TypeError(f"cannot use {xcoef!r} as the exponent coefficient")
    if not isinstance(order, int) or order < 0:
        raise ValueError("order must be a nonnegative integer")
    lam = XPoly.constant(LAMBDA)
    coeffs = []
    prod = XPoly.one()
    for k in range(order + 1):
        if k:
            prod = prod * (base - (k - 1) * lam)
        coeffs.append(prod / factorial(k))
    return TruncatedSeries(order, coeffs)
