"""Rational constants appearing in iterated integrals of t^v log^r t.

The two-parameter family M(l, s, v) gives the coefficient structure of the
functions obtained from t^v log^r t by |l| integrations (l > 0, constants of
integration zero) or derivations (l < 0): the result is t^(v+l) times a log
polynomial whose coefficients are falling factorials times M values.

The family is undefined when v is a negative integer, l > 0 and v + l >= 0
(the antiderivative then picks up an extra log); requesting that regime is
always a caller bug and raises ExcludedCase.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import combinations

from .errors import DegreeTooLarge, ExcludedCase


def pochhammer(v, l: int) -> Fraction:
    """Rising factorial v(v+1)...(v+l-1); empty product is 1."""
    v = Fraction(v)
    result = Fraction(1)
    for t in range(l):
        result *= v + t
    return result


def falling_factorial(r: int, s: int) -> int:
    result = 1
    for t in range(s):
        result *= r - t
    return result


def elementary_symmetric(tau: int, values) -> Fraction:
    """Degree-tau elementary symmetric polynomial of the given rationals."""
    values = [Fraction(x) for x in values]
    if tau > len(values):
        raise DegreeTooLarge(f"degree {tau} in {len(values)} variables")
    e = [Fraction(0)] * (tau + 1)
    e[0] = Fraction(1)
    for x in values:
        for t in range(min(tau, len(values)), 0, -1):
            e[t] += x * e[t - 1]
    return e[tau]


def _complete_homogeneous(s: int, values) -> Fraction:
    h = [Fraction(0)] * (s + 1)
    h[0] = Fraction(1)
    for x in values:
        for t in range(1, s + 1):
            h[t] += x * h[t - 1]
    return h[s]


def _is_excluded(l: int, v: Fraction) -> bool:
    return v.denominator == 1 and v < 0 and l > 0 and v + l >= 0


@lru_cache(maxsize=None)
def _coefficient_m(l: int, s: int, v: Fraction) -> Fraction:
    if l == 0:
        return Fraction(1) if s == 0 else Fraction(0)
    if l > 0:
        lead = Fraction(1) / pochhammer(v + 1, l)
        if s == 0:
            return lead
        reciprocals = [Fraction(1) / (v + t) for t in range(1, l + 1)]
        if s == 1:
            return -lead * sum(reciprocals)
        return (-1) ** s * lead * _complete_homogeneous(s, reciprocals)
    # l < 0: elementary symmetric functions of v, v-1, ..., v+l+1
    if s > -l:
        return Fraction(0)
    values = [v - t for t in range(-l)]
    if s == 0:
        product = Fraction(1)
        for x in values:
            product *= x
        return product
    if s == 1 and not (v.denominator == 1 and 0 <= v <= -l - 1):
        product = _coefficient_m(l, 0, v)
        return product * sum(Fraction(1) / x for x in values)
    return elementary_symmetric(-l - s, values)


def coefficient_M(l: int, s: int, v) -> Fraction:
    """M(l, s, v), using the closed forms for s <= 1 as fast paths.

    Raises ExcludedCase in the regime where no closed form exists.
    """
    v = Fraction(v)
    if s < 0:
        raise ValueError("s must be nonnegative")
    if _is_excluded(l, v):
        raise ExcludedCase(l, s, v)
    return _coefficient_m(l, s, v)


def coefficient_M_reference(l: int, s: int, v) -> Fraction:
    """Literal multi-index / subset-sum evaluation of M(l, s, v).

    Exponentially slower than coefficient_M; exists so tests can check the
    fast paths against the defining sums.
    """
    v = Fraction(v)
    if _is_excluded(l, v):
        raise ExcludedCase(l, s, v)
    if l == 0:
        return Fraction(1) if s == 0 else Fraction(0)
    if l > 0:
        total = Fraction(0)
        for composition in _compositions(s, l):
            term = Fraction(1)
            for t, power in enumerate(composition, start=1):
                term /= (v + t) ** power
            total += term
        return (-1) ** s / pochhammer(v + 1, l) * total
    if s > -l:
        return Fraction(0)
    values = [v - t for t in range(-l)]
    total = Fraction(0)
    for subset in combinations(values, -l - s):
        term = Fraction(1)
        for x in subset:
            term *= x
        total += term
    return total


def _compositions(total: int, parts: int):
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def f_coefficients(v, r: int, l: int) -> dict[int, Fraction]:
    """Log-basis coefficients of the l-th iterate of t^v log^r t.

    Entry s holds the coefficient of log^(r-s) t over the monomial t^(v+l),
    namely M(l, s, v) * r(r-1)...(r-s+1).
    """
    v = Fraction(v)
    return {
        s: coefficient_M(l, s, v) * falling_factorial(r, s) for s in range(r + 1)
    }
