"""Normal ordering in the boson Weyl algebra with [a, a+] = 1.

A NormalForm is a finite sum  sum_{ij} c_ij (a+)^i a^j  with every creation
operator to the left of every annihilation operator; the coefficients are
LambdaPoly.  Products are renormalised with the closed-form reordering

    a^j (a+)^i = sum_m m! C(j, m) C(i, m) (a+)^(i-m) a^(j-m),

which is what repeated single swaps a a+ -> a+ a + 1 collapse to.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import comb, factorial

from .algebra import LAMBDA, LambdaPoly, falling_scalar

__all__ = [
    "NormalForm",
    "MonomialImage",
    "nf_multiply",
    "degenerate_product",
    "extract_stirling",
    "apply_to_monomial",
    "difference_extract",
]


def _require(cond: bool, msg: str):
    if not cond:
        raise ValueError(msg)


class NormalForm:
    """Normally ordered operator polynomial, keyed by (creation, annihilation)
    powers; zero coefficients are never stored."""

    __slots__ = ("_terms",)

    def __init__(self, terms=()):
        cleaned = {}
        items = terms.items() if hasattr(terms, "items") else terms
        for key, coeff in items:
            i, j = key
            _require(
                isinstance(i, int) and isinstance(j, int) and i >= 0 and j >= 0,
                f"operator powers must be nonnegative integers, got {key!r}",
            )
            lp = LambdaPoly._coerce(coeff)
            if lp is None:
                raise TypeError(f"cannot use {coeff!r} as a coefficient")
            if not lp.is_zero():
                acc = cleaned.get((i, j))
                lp = lp if acc is None else acc + lp
                if lp.is_zero():
                    cleaned.pop((i, j), None)
                else:
                    cleaned[(i, j)] = lp
        self._terms = cleaned

    @classmethod
    def identity(cls) -> "NormalForm":
        return cls({(0, 0): 1})

    @classmethod
    def ladder(cls, creation: int, annihilation: int, coeff=1) -> "NormalForm":
        """c * (a+)^creation a^annihilation."""
        return cls({(creation, annihilation): coeff})

    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def coefficient(self, i: int, j: int) -> LambdaPoly:
        return self._terms.get((i, j), LambdaPoly.zero())

    def is_zero(self) -> bool:
        return not self._terms

    def at_lambda(self, lam_value) -> "NormalForm":
        return NormalForm(
            {key: LambdaPoly.constant(c(lam_value)) for key, c in self._terms.items()}
        )

    def __add__(self, other):
        if not isinstance(other, NormalForm):
            return NotImplemented
        out = dict(self._terms)
        for key, c in other._terms.items():
            acc = out.get(key)
            s = c if acc is None else acc + c
            if s.is_zero():
                out.pop(key, None)
            else:
                out[key] = s
        nf = NormalForm()
        nf._terms = out
        return nf

    def __sub__(self, other):
        if not isinstance(other, NormalForm):
            return NotImplemented
        return self + (-1) * other

    def __mul__(self, other):
        if isinstance(other, NormalForm):
            out = {}
            for (i, j), c in self._terms.items():
                for (i2, j2), d in other._terms.items():
                    cd = c * d
                    for m in range(min(j, i2) + 1):
                        w = factorial(m) * comb(j, m) * comb(i2, m)
                        key = (i + i2 - m, j + j2 - m)
                        acc = out.get(key, LambdaPoly.zero()) + w * cd
                        if acc.is_zero():
                            out.pop(key, None)
                        else:
                            out[key] = acc
            nf = NormalForm()
            nf._terms = out
            return nf
        lp = LambdaPoly._coerce(other)
        if lp is None:
            return NotImplemented
        return NormalForm({key: c * lp for key, c in self._terms.items()})

    def __rmul__(self, other):
        lp = LambdaPoly._coerce(other)
        if lp is None:
            return NotImplemented
        return self * lp

    def __eq__(self, other):
        if not isinstance(other, NormalForm):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    def __repr__(self):
        body = ", ".join(
            f"({i},{j}): {c}" for (i, j), c in sorted(self._terms.items(), reverse=True)
        )
        return f"NormalForm({{{body}}})"


def nf_multiply(left: NormalForm, right: NormalForm) -> NormalForm:
    """Product of two normal forms, renormalised term by term."""
    return left * right


class MonomialImage:
    """Image of a single monomial x^p under an operator in the differential
    realisation a = d/dx, a+ = (multiply by x): exponent -> coefficient."""

    __slots__ = ("_terms",)

    def __init__(self, terms=()):
        cleaned = {}
        items = terms.items() if hasattr(terms, "items") else terms
        for e, coeff in items:
            _require(isinstance(e, int) and e >= 0, f"bad exponent {e!r}")
            lp = LambdaPoly._coerce(coeff)
            if lp is None:
                raise TypeError(f"cannot use {coeff!r} as a coefficient")
            if not lp.is_zero():
                cleaned[e] = lp
        self._terms = cleaned

    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def coefficient(self, exponent: int) -> LambdaPoly:
        return self._terms.get(exponent, LambdaPoly.zero())

    def evaluate_at_one(self) -> LambdaPoly:
        """Value of the image polynomial at x = 1 (sum of coefficients)."""
        acc = LambdaPoly.zero()
        for c in self._terms.values():
            acc = acc + c
        return acc

    def __eq__(self, other):
        if not isinstance(other, MonomialImage):
            return NotImplemented
        return self._terms == other._terms

    def __repr__(self):
        body = ", ".join(f"{e}: {c}" for e, c in sorted(self._terms.items()))
        return f"MonomialImage({{{body}}})"


@lru_cache(maxsize=None)
def degenerate_product(n: int, r: int, s: int) -> NormalForm:
    """Normal form of the product over k = 0..n-1 of
    ((a+)^r a^s - k l (a+)^(r-s)), with the k = 0 factor leftmost."""
    _require(isinstance(n, int) and n >= 1, f"n must be a positive integer, got {n!r}")
    _require(
        isinstance(r, int) and isinstance(s, int) and r >= s >= 1,
        f"need integers r >= s >= 1, got r={r!r}, s={s!r}",
    )
    acc = NormalForm.identity()
    for k in range(n):
        factor = NormalForm({(r, s): 1, (r - s, 0): -k * LAMBDA})
        acc = acc * factor
    return acc


def extract_stirling(nf: NormalForm, n: int, r: int, s: int) -> list:
    """Read the coefficient row S(n, k), k = 0..n*s, off a normal form that
    is supported on the diagonal (n(r-s) + k, k).  Any term off that
    diagonal means the engine produced something structurally wrong, so it
    raises rather than returning a best effort."""
    _require(isinstance(n, int) and n >= 1, f"n must be a positive integer, got {n!r}")
    _require(
        isinstance(r, int) and isinstance(s, int) and r >= s >= 1,
        f"need integers r >= s >= 1, got r={r!r}, s={s!r}",
    )
    shift = n * (r - s)
    top = n * s
    for (i, j) in nf.terms:
        if i - j != shift or j > top:
            raise ValueError(
                f"normal form has off-diagonal term (a+)^{i} a^{j}; "
                f"expected keys ({shift}+k, k) with k <= {top}"
            )
    return [nf.coefficient(shift + k, k) for k in range(top + 1)]


def apply_to_monomial(nf: NormalForm, p: int) -> MonomialImage:
    """Apply sum c_ij x^i (d/dx)^j to x^p:  x^p -> sum c_ij (p)_j x^(p+i-j)."""
    _require(isinstance(p, int) and p >= 0, f"exponent must be >= 0, got {p!r}")
    out = {}
    for (i, j), c in nf.terms.items():
        if j > p:
            continue
        fall = falling_scalar(p, j)
        e = p + i - j
        acc = out.get(e, LambdaPoly.zero()) + fall * c
        out[e] = acc
    return MonomialImage(out)


def difference_extract(n: int, r: int, s: int, k: int) -> LambdaPoly:
    """S(n, k) recovered by applying the degenerate operator product to the
    binomial expansion of (1-x)^k and evaluating at x = 1, scaled by
    (-1)^k / k!.  Shares no formula with the closed-form route, so the two
    can check each other."""
    _require(isinstance(k, int) and k >= 0, f"k must be >= 0, got {k!r}")
    nf = degenerate_product(n, r, s)
    total = LambdaPoly.zero()
    for p in range(k + 1):
        img = apply_to_monomial(nf, p)
        sign = -1 if p % 2 else 1
        total = total + (sign * comb(k, p)) * img.evaluate_at_one()
    return total * Fraction((-1) ** k, factorial(k))
