"""Degenerate Bell polynomials and exact-rational Dobinski-style series.

The polynomial side is plain bookkeeping over the Stirling rows.  The
series side sums infinite expansions such as

    phi(x) = exp(-x) * sum_k  P(k) x^k / k!

in exact rational arithmetic with a certified truncation error: every
result carries a tail_bound that rigorously dominates the difference to
the infinite sum.  The bound comes from a per-term ratio majorant that is
provably decreasing, so once it drops below 1/2 the tail is geometric.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial

from .algebra import (
    LAMBDA,
    LambdaPoly,
    X,
    XPoly,
    as_rational,
    falling_scalar,
    gen_falling,
    rising_scalar,
)
from .stirling import r_stirling_degenerate, stirling_rs_degenerate

__all__ = [
    "DobinskiResult",
    "bell_rs_poly",
    "r_bell_poly",
    "r_bell_recurrence",
    "bell_rr_from_double_sum",
    "dobinski_eval",
    "dobinski_rr",
    "gamma_formula_classical",
]

_HALF = Fraction(1, 2)


def _require(cond: bool, msg: str):
    if not cond:
        raise ValueError(msg)


@lru_cache(maxsize=None)
def bell_rs_poly(n: int, r: int, s: int) -> XPoly:
    """Degenerate (r, s)-Bell polynomial: sum_k S(n, k) x^k over the row
    k = 0..n*s.  The n = 0 polynomial is the empty product, 1."""
    _require(isinstance(n, int) and n >= 0, f"n must be >= 0, got {n!r}")
    _require(
        isinstance(r, int) and isinstance(s, int) and r >= s >= 1,
        f"need integers r >= s >= 1, got r={r!r}, s={s!r}",
    )
    if n == 0:
        return XPoly.one()
    return XPoly([stirling_rs_degenerate(n, k, r, s) for k in range(n * s + 1)])


@lru_cache(maxsize=None)
def r_bell_poly(n: int, r: int) -> XPoly:
    """Degenerate shifted Bell polynomial: sum_k c_k x^k where c_k is the
    coefficient of (x)_k in (x+r)_{n,l}."""
    _require(isinstance(n, int) and n >= 0, f"n must be >= 0, got {n!r}")
    _require(isinstance(r, int) and r >= 0, f"r must be >= 0, got {r!r}")
    return XPoly([r_stirling_degenerate(n, k, r) for k in range(n + 1)])


def r_bell_recurrence(n: int, r: int) -> tuple[XPoly, XPoly]:
    """Two independent convolution forms for the next shifted Bell
    polynomial; both must equal r_bell_poly(n+1, r).

    form_a = sum_k C(n,k) (-l)^(n-k) (n-k)! (x phi_k^(r+1) + r phi_k^(r))
    form_b = sum_k C(n,k) (r (-l)_{k,l} + x (1-l)_{k,l}) phi_{n-k}^(r)
    """
    _require(isinstance(n, int) and n >= 0, f"n must be >= 0, got {n!r}")
    _require(isinstance(r, int) and r >= 0, f"r must be >= 0, got {r!r}")
    form_a = XPoly.zero()
    form_b = XPoly.zero()
    for k in range(n + 1):
        c = comb(n, k)
        wa = (c * factorial(n - k)) * ((-LAMBDA) ** (n - k))
        form_a = form_a + wa * (X * r_bell_poly(k, r + 1) + r * r_bell_poly(k, r))
        wb = r * gen_falling(-LAMBDA, k) + X * gen_falling(LambdaPoly.one() - LAMBDA, k)
        form_b = form_b + c * (wb * r_bell_poly(n - k, r))
    return form_a, form_b


def bell_rr_from_double_sum(n: int, r: int) -> XPoly:
    """The balanced Bell polynomial assembled from the double alternating
    sum over ((p)_r)_{n,l}; an independent route to bell_rs_poly(n, r, r)."""
    _require(isinstance(n, int) and n >= 1, f"n must be >= 1, got {n!r}")
    _require(isinstance(r, int) and r >= 1, f"r must be >= 1, got {r!r}")
    top = n * r
    cols = []
    for k in range(top + 1):
        acc = LambdaPoly.zero()
        for p in range(k + 1):
            sign = -1 if (k - p) % 2 else 1
            acc = acc + (sign * comb(k, p)) * gen_falling(falling_scalar(p, r), n)
        cols.append(acc / factorial(k))
    return XPoly(cols)


@dataclass(frozen=True)
class DobinskiResult:
    """Truncated series value with a certified error bound.

    tail_bound rigorously dominates |value - infinite sum| and is at most
    the requested tolerance; terms_used counts main-series terms summed.
    """

    value: Fraction
    terms_used: int
    tail_bound: Fraction


def _exp_neg_partial(x: Fraction, budget: Fraction) -> tuple[Fraction, Fraction]:
    """Partial sum W of exp(-x) for x > 0 with |exp(-x) - W| <= returned
    bound <= min(budget, 1/2)."""
    budget = min(budget, _HALF)
    m0 = 0
    while x > Fraction(m0 + 1, 2):  # after m0 the term ratio x/(m+1) is <= 1/2
        m0 += 1
    s = Fraction(0)
    term = Fraction(1)
    m = 0
    while True:
        s += term
        if m >= m0 and abs(term) <= budget:
            return s, abs(term)
        term = term * (-x) / (m + 1)
        m += 1


def _sum_series(term_fn, k_first: int, k_min_ratio: int, rho, budget: Fraction):
    """Sum term_fn(k) from k_first upward.

    rho(k) must be a decreasing upper bound for |t_{k+1}/t_k|, valid for
    k >= k_min_ratio.  Once k passes the point where rho <= 1/2 and the
    current term is within budget, the remaining tail is dominated by the
    geometric series and hence by |t_k| <= budget.
    Returns (partial_sum, tail_bound, terms_used).
    """
    k0 = max(k_min_ratio, k_first)
    while rho(k0) > _HALF:
        k0 += 1
    s = Fraction(0)
    k = k_first
    used = 0
    while True:
        t = term_fn(k)
        s += t
        used += 1
        if k >= k0 and abs(t) <= budget:
            return s, abs(t), used
        k += 1


def _factored_ratio_bound(x: Fraction, factor_count: int, depth: int, drift: Fraction):
    """Ratio majorant for terms  x^k/k! * prod of factor_count factors,
    each of the shape (k + c)_depth - d*l with c >= 0 and |d*l| <= drift.

    For k >= the returned start index every factor is positive and

      |t_{k+1}/t_k| <= x/(k+1) * [ (k+1)/(k+1-depth)
                                   * ((k)_depth + drift)/((k)_depth - drift) ]^factor_count,

    which is decreasing in k.  start is chosen so that (k)_depth >= 2*drift.
    """
    ax = abs(x)
    k1 = depth
    while falling_scalar(k1, depth) < 2 * drift:
        k1 += 1

    def rho(k: int) -> Fraction:
        g = Fraction(falling_scalar(k, depth))
        core = Fraction(k + 1, k + 1 - depth) * ((g + drift) / (g - drift))
        return ax / (k + 1) * core ** factor_count

    return k1, rho


def _combine_with_exp(series_sum: Fraction, tail_s: Fraction, used: int,
                      x: Fraction, tol: Fraction) -> DobinskiResult:
    """Multiply a certified partial sum by a certified exp(-x) partial sum
    and propagate both tails into one rigorous bound."""
    e_budget = min(tol / 6, (tol / 4) / (abs(series_sum) + tail_s + 1))
    w, tail_e = _exp_neg_partial(x, e_budget)
    err = abs(w) * tail_s + tail_e * (abs(series_sum) + tail_s)
    if err > tol:
        raise ArithmeticError("internal tail budgeting failed")
    return DobinskiResult(w * series_sum, used, err)


def dobinski_eval(n: int, r: int, s: int, x, lam, tol) -> DobinskiResult:
    """Evaluate the degenerate (r, s)-Bell polynomial at x > 0 and a rational
    l by its Dobinski-style series

        exp(-x) sum_{k>=0} (x^k / k!) prod_{j=1..n} [(k+(j-1)(r-s))_s - (n-j) l]

    in exact rationals, truncated with a certified tail bound <= tol."""
    _require(isinstance(n, int) and n >= 1, f"n must be >= 1, got {n!r}")
    _require(
        isinstance(r, int) and isinstance(s, int) and r >= s >= 1,
        f"need integers r >= s >= 1, got r={r!r}, s={s!r}",
    )
    x = as_rational(x)
    lam = as_rational(lam)
    tol = as_rational(tol)
    _require(x > 0, f"x must be positive, got {x}")
    _require(tol > 0, f"tol must be positive, got {tol}")

    def term(k: int) -> Fraction:
        prod = Fraction(1)
        for j in range(1, n + 1):
            prod *= falling_scalar(k + (j - 1) * (r - s), s) - (n - j) * lam
        return prod * x ** k / factorial(k)

    k1, rho = _factored_ratio_bound(x, n, s, n * abs(lam))
    series_sum, tail_s, used = _sum_series(term, 0, k1, rho, tol / 6)
    return _combine_with_exp(series_sum, tail_s, used, x, tol)


def dobinski_rr(k: int, r: int, x, lam, tol) -> DobinskiResult:
    """Evaluate the balanced Bell polynomial phi_k^(r,r)(x) by the series

        exp(-x) sum_{n>=1} (x^n / n!) ((n)_r)_{k,l}

    in exact rationals with a certified tail bound <= tol."""
    _require(isinstance(k, int) and k >= 1, f"k must be >= 1, got {k!r}")
    _require(isinstance(r, int) and r >= 1, f"r must be >= 1, got {r!r}")
    x = as_rational(x)
    lam = as_rational(lam)
    tol = as_rational(tol)
    _require(x > 0, f"x must be positive, got {x}")
    _require(tol > 0, f"tol must be positive, got {tol}")

    def term(m: int) -> Fraction:
        fm = falling_scalar(m, r)
        prod = Fraction(1)
        for i in range(k):
            prod *= fm - i * lam
        return prod * x ** m / factorial(m)

    k1, rho = _factored_ratio_bound(x, k, r, k * abs(lam))
    series_sum, tail_s, used = _sum_series(term, 1, k1, rho, tol / 6)
    return _combine_with_exp(series_sum, tail_s, used, x, tol)


def gamma_formula_classical(n: int, r: int, s: int, tol) -> DobinskiResult:
    """Classical (l = 0, x = 1) Bell number via the Gamma-ratio series

        ((r-s)^(s n) / e) sum_{k>=0} (1/k!) prod_{l=1..s} G(n + q_kl)/G(q_kl),

    q_kl = (k-l+1)/(r-s), valid for r > s; each Gamma ratio is computed
    exactly as the rising factorial q(q+1)...(q+n-1) in rationals."""
    _require(isinstance(n, int) and n >= 1, f"n must be >= 1, got {n!r}")
    _require(
        isinstance(r, int) and isinstance(s, int) and r > s >= 1,
        f"need integers r > s >= 1, got r={r!r}, s={s!r}",
    )
    tol = as_rational(tol)
    _require(tol > 0, f"tol must be positive, got {tol}")
    pre = Fraction((r - s) ** (s * n))

    def term(k: int) -> Fraction:
        prod = pre
        for l in range(1, s + 1):
            prod *= rising_scalar(Fraction(k - l + 1, r - s), n)
        return prod / factorial(k)

    def rho(k: int) -> Fraction:
        # for k >= s all q_kl are positive and each rising-factorial ratio is
        # at most (1 + 1/(k-s+1))^n, giving a decreasing majorant
        return Fraction(1, k + 1) * (1 + Fraction(1, k - s + 1)) ** (s * n)

    series_sum, tail_s, used = _sum_series(term, 0, s, rho, tol / 6)
    return _combine_with_exp(series_sum, tail_s, used, Fraction(1), tol)
