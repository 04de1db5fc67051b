"""Exact rational series arithmetic.

Everything in this module is computed with arbitrary-precision rationals
(`fractions.Fraction`); no floating point enters.  It houses

* Bernoulli numbers (convention ``B_1 = -1/2``),
* the Stirling-type log series ``mu(z) = sum B_{2n+2}/((2n+2)(2n+1)) z^(-2n-1)``,
* the inductive coefficient sequence ``a_1 = 1``,
  ``a_k = (a_{k-1} - sum_{l=2}^{k-1} l a_l a_{k+1-l})/(k+1)``,
* the normalized-Gamma asymptotic series
  ``lambda(z) = sum (2n+1)!! a_{2n+1} z^(-n)``,
* the Puiseux expansions ``q_{+-}(xi) = 1 + sum (+-1)^k a_k (2 xi)^(k/2)``
  of the two inverse branches of ``q - ln q - 1``.

Truncation order is explicit state: these are divergent (or at best
locally convergent) series and there is no "full" object.  Binary
operations truncate to the smaller order of the two operands.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import cmath

from .errors import DomainError

__all__ = [
    "Rational",
    "RationalSeries",
    "PuiseuxSeries",
    "bernoulli",
    "bernoulli_pascal",
    "stirling_series",
    "a_coefficients",
    "series_exp",
    "lambda_tilde",
    "puiseux_q",
    "puiseux_compose_defect",
    "double_factorial_odd",
]

# Exact rationals: fractions.Fraction is always reduced with positive
# denominator, which is exactly the invariant the series code relies on.
Rational = Fraction


def bernoulli(n: int) -> Fraction:
    """Bernoulli number B_n as an exact Fraction, convention B_1 = -1/2.

    Computed with the Akiyama-Tanigawa triangle (which natively produces
    the B_1 = +1/2 convention; only the n = 1 value differs between the
    two conventions).
    """
    if n < 0:
        raise DomainError("bernoulli: n must be >= 0")
    if n == 1:
        return Fraction(-1, 2)
    row = [Fraction(0)] * (n + 1)
    b = Fraction(1)
    for m in range(n + 1):
        row[m] = Fraction(1, m + 1)
        for j in range(m, 0, -1):
            row[j - 1] = j * (row[j - 1] - row[j])
        b = row[0]
    return b


def bernoulli_pascal(n: int) -> Fraction:
    """Independent oracle for B_n via the binomial recurrence
    sum_{k=0}^{m} C(m+1,k) B_k = 0, kept deliberately separate from
    :func:`bernoulli` so the two can be tested against each other."""
    if n < 0:
        raise DomainError("bernoulli_pascal: n must be >= 0")
    vals = [Fraction(1)]
    binom = [1, 1]  # row C(1, .)
    for m in range(1, n + 1):
        # advance to row C(m+1, .)
        binom = [1] + [binom[i] + binom[i + 1] for i in range(len(binom) - 1)] + [1]
        s = sum(Fraction(binom[k]) * vals[k] for k in range(m))
        vals.append(-s / Fraction(m + 1))
    return vals[n]


def double_factorial_odd(n: int) -> int:
    """(2n+1)!! = 1*3*5*...*(2n+1)."""
    out = 1
    for j in range(1, 2 * n + 2, 2):
        out *= j
    return out


@dataclass(frozen=True)
class RationalSeries:
    """Truncated power series sum_n coeffs[n] * z^-(n+shift).

    ``coeffs[n]`` is the coefficient of ``z**-(n + shift)``; coefficients
    beyond ``truncation_order`` are unknown, never assumed zero.
    """

    coeffs: tuple
    truncation_order: int
    shift: Fraction = Fraction(0)

    def __post_init__(self):
        if len(self.coeffs) > self.truncation_order + 1:
            raise ValueError("more coefficients than the truncation order allows")
        object.__setattr__(self, "coeffs", tuple(Fraction(c) for c in self.coeffs))
        object.__setattr__(self, "shift", Fraction(self.shift))

    def coefficient(self, n: int) -> Fraction:
        """Coefficient of z^-(n+shift); n must not exceed the truncation order."""
        if n < 0 or n > self.truncation_order:
            raise DomainError(f"coefficient z^-{n} beyond truncation order")
        return self.coeffs[n] if n < len(self.coeffs) else Fraction(0)

    def _padded(self, order: int) -> list:
        out = list(self.coeffs) + [Fraction(0)] * (order + 1 - len(self.coeffs))
        return out[: order + 1]

    def __add__(self, other: "RationalSeries") -> "RationalSeries":
        if self.shift != other.shift:
            raise DomainError("cannot add series with different shifts")
        order = min(self.truncation_order, other.truncation_order)
        a, b = self._padded(order), other._padded(order)
        return RationalSeries(tuple(x + y for x, y in zip(a, b)), order, self.shift)

    def __mul__(self, other):
        if isinstance(other, RationalSeries):
            if self.shift != 0 or other.shift != 0:
                raise DomainError("series product implemented for shift 0 only")
            order = min(self.truncation_order, other.truncation_order)
            a, b = self._padded(order), other._padded(order)
            out = [Fraction(0)] * (order + 1)
            for i, ai in enumerate(a):
                if ai == 0:
                    continue
                for j in range(order + 1 - i):
                    out[i + j] += ai * b[j]
            return RationalSeries(tuple(out), order, Fraction(0))
        q = Fraction(other)
        return RationalSeries(tuple(q * c for c in self.coeffs),
                              self.truncation_order, self.shift)

    __rmul__ = __mul__

    def evaluate(self, z: complex) -> complex:
        """Float partial-sum value at z (no remainder control; the series
        is generally divergent and this is the plain truncated sum)."""
        zi = 1.0 / complex(z)
        acc = 0j
        for c in reversed(self._padded(self.truncation_order)):
            acc = acc * zi + complex(c)
        if self.shift:
            acc *= complex(z) ** complex(-self.shift)
        return acc

    def to_json(self) -> str:
        return json.dumps({
            "shift": str(self.shift),
            "coeffs": [[str(c.numerator), str(c.denominator)]
                       for c in self.coeffs],
        })

    @classmethod
    def from_json(cls, text: str) -> "RationalSeries":
        data = json.loads(text)
        coeffs = tuple(Fraction(int(num), int(den)) for num, den in data["coeffs"])
        return cls(coeffs, len(coeffs) - 1, Fraction(data["shift"]))


@dataclass(frozen=True)
class PuiseuxSeries:
    """Truncated series prefactor * sum_k coeffs[k] * (2 xi)^(k/2).

    Exact rational coefficients; the prefactor is a unit complex scalar.
    Evaluation needs an explicit square-root branch, supplied either as a
    surface point (r, theta) -- the branch being sqrt(2r) e^{i theta/2} --
    or directly as the value of (2 xi)^(1/2).
    """

    coeffs: tuple
    truncation_order: int
    prefactor: complex = 1.0

    def __post_init__(self):
        if len(self.coeffs) > self.truncation_order + 1:
            raise ValueError("more coefficients than the truncation order allows")
        object.__setattr__(self, "coeffs", tuple(Fraction(c) for c in self.coeffs))

    def evaluate_at_sqrt(self, t: complex) -> complex:
        """Value with t = chosen branch of (2 xi)^(1/2)."""
        acc = 0j
        for c in reversed(self.coeffs):
            acc = acc * t + complex(c)
        return self.prefactor * acc

    def evaluate(self, r: float, theta: float) -> complex:
        """Value at the surface point xi = r e^{i theta}, branch
        (2 xi)^(1/2) = sqrt(2r) e^{i theta/2}."""
        if r < 0:
            raise DomainError("modulus must be >= 0")
        t = (2.0 * r) ** 0.5 * cmath.exp(0.5j * theta)
        return self.evaluate_at_sqrt(t)

    def last_term_magnitude(self, r: float) -> float:
        """|c_K| (2r)^(K/2) for the last kept term: the usual empirical
        scale of the truncation error inside the convergence disk."""
        k = len(self.coeffs) - 1
        return abs(float(self.coeffs[k])) * (2.0 * r) ** (k / 2.0)

    def to_json(self) -> str:
        if self.prefactor != 1:
            raise DomainError("JSON schema carries rational data only; "
                              "serialize series with unit prefactor 1")
        return json.dumps({
            "shift": "0",
            "coeffs": [[str(c.numerator), str(c.denominator)]
                       for c in self.coeffs],
        })

    @classmethod
    def from_json(cls, text: str) -> "PuiseuxSeries":
        data = json.loads(text)
        coeffs = tuple(Fraction(int(num), int(den)) for num, den in data["coeffs"])
        return cls(coeffs, len(coeffs) - 1)


def stirling_series(order: int) -> RationalSeries:
    """log-normalization series sum_{n>=0} B_{2n+2}/((2n+2)(2n+1)) z^(-2n-1),
    truncated at z^-order.  Even powers of 1/z carry coefficient 0."""
    if order < 1:
        raise DomainError("stirling_series: order must be >= 1")
    coeffs = [Fraction(0)] * (order + 1)
    n = 0
    while 2 * n + 1 <= order:
        m = 2 * n + 2
        coeffs[2 * n + 1] = bernoulli(m) / (m * (m - 1))
        n += 1
    return RationalSeries(tuple(coeffs), order)


def a_coefficients(kmax: int) -> list:
    """a_1..a_kmax of the inductive sequence a_1 = 1,
    a_k = (a_{k-1} - sum_{l=2}^{k-1} l a_l a_{k+1-l}) / (k+1)."""
    if kmax < 1:
        raise DomainError("a_coefficients: kmax must be >= 1")
    a = {1: Fraction(1)}
    for k in range(2, kmax + 1):
        s = sum(l * a[l] * a[k + 1 - l] for l in range(2, k))
        a[k] = (a[k - 1] - s) / (k + 1)
    return [a[k] for k in range(1, kmax + 1)]


def series_exp(s: RationalSeries) -> RationalSeries:
    """Truncated formal exponential of a series with zero constant term."""
    if s.shift != 0:
        raise DomainError("series_exp: defined for shift-0 series")
    if s.coefficient(0) != 0:
        raise DomainError("series_exp: series must have zero constant term")
    order = s.truncation_order
    one = RationalSeries((Fraction(1),), order)
    acc = one
    term = one
    for k in range(1, order + 1):
        term = term * s * Fraction(1, k)
        acc = acc + term
    return acc


def lambda_tilde(order: int) -> RationalSeries:
    """Asymptotic series sum_{n>=0} (2n+1)!! a_{2n+1} z^(-n) of the
    normalized Gamma function; the constant term is 1."""
    if order < 0:
        raise DomainError("lambda_tilde: order must be >= 0")
    a = a_coefficients(2 * order + 1)
    coeffs = tuple(Fraction(double_factorial_odd(n)) * a[2 * n] for n in range(order + 1))
    return RationalSeries(coeffs, order)


def puiseux_q(sign: str, kmax: int) -> PuiseuxSeries:
    """q_+ (sign '+') or q_- (sign '-') as a Puiseux series in (2 xi)^(1/2):
    q_+ = 1 + sum a_k (2 xi)^(k/2), q_- = 1 + sum (-1)^k a_k (2 xi)^(k/2)."""
    if sign not in ("+", "-"):
        raise DomainError("puiseux_q: sign must be '+' or '-'")
    if kmax < 0:
        raise DomainError("puiseux_q: kmax must be >= 0")
    coeffs = [Fraction(1)]
    if kmax >= 1:
        a = a_coefficients(max(kmax, 1))
        for k in range(1, kmax + 1):
            c = a[k - 1]
            coeffs.append(c if sign == "+" else (-1) ** k * c)
    return PuiseuxSeries(tuple(coeffs), kmax)


def _poly_mul_trunc(a: Sequence[Fraction], b: Sequence[Fraction], order: int) -> list:
    out = [Fraction(0)] * (order + 1)
    for i, ai in enumerate(a[: order + 1]):
        if ai == 0:
            continue
        for j in range(min(len(b), order + 1 - i)):
            out[i + j] += ai * b[j]
    return out


def puiseux_compose_defect(q: PuiseuxSeries) -> list:
    """Coefficients (in t = (2 xi)^(1/2)) of (q - ln q - 1) - xi.

    With u = q - 1, q - ln q - 1 = u - ln(1+u) = sum_{m>=2} (-1)^m u^m / m.
    The root equation q - ln q - 1 = xi says this must equal t^2/2 exactly,
    so the returned list is all zeros through the truncation order when q
    is one of the two inverse branches.
    """
    order = q.truncation_order
    u = [Fraction(0)] + list(q.coeffs[1:])
    if q.coeffs[0] != 1:
        raise DomainError("composition check expects a series with q(0) = 1")
    acc = [Fraction(0)] * (order + 1)
    power = u[:]
    sign = 1
    for m in range(2, order + 1):
        power = _poly_mul_trunc(power, u, order)
        acc = [x + sign * p / m for x, p in zip(acc, power)]
        sign = -sign
    if order >= 2:
        acc[2] -= Fraction(1, 2)  # xi = t^2 / 2
    return acc
