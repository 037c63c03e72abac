"""Dense integer polynomials (ascending coefficient lists) and truncated
power series with exact rational coefficients."""

from __future__ import annotations

from fractions import Fraction
from math import comb
from typing import Sequence

Poly = list  # list[int], index = degree


def trim(p: Sequence[int]) -> list[int]:
    p = list(p)
    while len(p) > 1 and p[-1] == 0:
        p.pop()
    return p or [0]


def degree(p: Sequence[int]) -> int:
    p = trim(p)
    return -1 if p == [0] else len(p) - 1


def coeff(p: Sequence[int], d: int) -> int:
    return p[d] if 0 <= d < len(p) else 0


def poly_add(p: Sequence[int], q: Sequence[int]) -> list[int]:
    n = max(len(p), len(q))
    return trim([coeff(p, i) + coeff(q, i) for i in range(n)])


def poly_sub(p: Sequence[int], q: Sequence[int]) -> list[int]:
    n = max(len(p), len(q))
    return trim([coeff(p, i) - coeff(q, i) for i in range(n)])


def poly_mul(p: Sequence[int], q: Sequence[int]) -> list[int]:
    out = [0] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a:
            for j, b in enumerate(q):
                out[i + j] += a * b
    return trim(out)


def poly_pow(p: Sequence[int], k: int) -> list[int]:
    out = [1]
    for _ in range(k):
        out = poly_mul(out, p)
    return out


def poly_divmod(p: Sequence[int], q: Sequence[int]) -> tuple[list[int], list[int]]:
    """Division by a polynomial whose leading coefficient divides exactly.

    Raises ArithmeticError when a quotient coefficient is not an integer.
    """
    p, q = trim(p), trim(q)
    if q == [0]:
        raise ZeroDivisionError("polynomial division by zero")
    rem = list(p)
    dq = len(q) - 1
    lead = q[-1]
    if len(rem) - 1 < dq:
        return [0], rem
    quot = [0] * (len(rem) - dq)
    for i in range(len(rem) - 1, dq - 1, -1):
        c, r = divmod(rem[i], lead)
        if r:
            raise ArithmeticError("inexact polynomial division")
        quot[i - dq] = c
        if c:
            for j in range(dq + 1):
                rem[i - dq + j] -= c * q[j]
    return trim(quot), trim(rem[:dq] or [0])


def poly_eval(p: Sequence, x):
    acc = 0
    for c in reversed(p):
        acc = acc * x + c
    return acc


def poly_derivative(p: Sequence[int]) -> list[int]:
    return trim([i * p[i] for i in range(1, len(p))] or [0])


def multiplicity_of_root(p: Sequence[int], r: int) -> tuple[int, list[int]]:
    """Multiplicity of the integer root ``r`` and the cofactor."""
    p = trim(p)
    k = 0
    if p == [0]:
        raise ValueError("zero polynomial")
    while True:
        q, rem = poly_divmod(p, [-r, 1])
        if rem != [0]:
            return k, p
        p = q
        k += 1


def reverse(p: Sequence[int], n: int) -> list[int]:
    """Coefficients of x^n p(1/x)."""
    return [coeff(p, n - k) for k in range(n + 1)]


def binomial_poly(k: int, sign: int = -1) -> list[int]:
    """(x^2 + sign)^k expanded."""
    out = [0] * (2 * k + 1)
    for j in range(k + 1):
        out[2 * j] = comb(k, j) * sign ** (k - j)
    return out


def power_sums(p: Sequence[int], R: int) -> list[int]:
    """Power sums p_1..p_R of the roots of a monic polynomial (Newton's identities)."""
    p = trim(p)
    n = len(p) - 1
    if p[-1] != 1:
        raise ValueError("Newton identities implemented for monic polynomials")
    # e_k = (-1)^k [x^(n-k)] p
    e = [(-1) ** k * coeff(p, n - k) for k in range(n + 1)]
    s = [0] * (R + 1)
    for k in range(1, R + 1):
        acc = (-1) ** (k - 1) * k * (e[k] if k <= n else 0)
        for i in range(1, min(k - 1, n) + 1):
            acc += (-1) ** (i - 1) * e[i] * s[k - i]
        s[k] = acc
    return s[1:]


def to_json(p: Sequence[int]) -> list[str]:
    return [str(int(c)) for c in p]


def from_json(items: Sequence) -> list[int]:
    return trim([int(c) for c in items])


class RationalSeries:
    """Power series truncated after ``u**order``, exact Fraction coefficients."""

    __slots__ = ("coeffs", "order")

    def __init__(self, coeffs: Sequence, order: int):
        if order < 0:
            raise ValueError("order must be non-negative")
        c = [Fraction(x) for x in list(coeffs)[: order + 1]]
        c += [Fraction(0)] * (order + 1 - len(c))
        self.coeffs = c
        self.order = order

    def __getitem__(self, k: int) -> Fraction:
        return self.coeffs[k] if 0 <= k <= self.order else Fraction(0)

    def __len__(self):
        return self.order + 1

    def __eq__(self, other):
        if not isinstance(other, RationalSeries):
            return NotImplemented
        n = min(self.order, other.order)
        return self.coeffs[: n + 1] == other.coeffs[: n + 1]

    def __repr__(self):
        return f"RationalSeries({[str(c) for c in self.coeffs]}, order={self.order})"

    def _coerce(self, other) -> "RationalSeries":
        if isinstance(other, RationalSeries):
            return other
        return RationalSeries([other], self.order)

    def __add__(self, other):
        other = self._coerce(other)
        n = min(self.order, other.order)
        return RationalSeries([self[k] + other[k] for k in range(n + 1)], n)

    __radd__ = __add__

    def __neg__(self):
        return RationalSeries([-c for c in self.coeffs], self.order)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        n = min(self.order, other.order)
        out = [Fraction(0)] * (n + 1)
        for i in range(n + 1):
            a = self[i]
            if a:
                for j in range(n + 1 - i):
                    out[i + j] += a * other[j]
        return RationalSeries(out, n)

    __rmul__ = __mul__

    def inverse(self) -> "RationalSeries":
        if self[0] == 0:
            raise ZeroDivisionError("series with zero constant term is not invertible")
        n = self.order
        out = [Fraction(0)] * (n + 1)
        out[0] = 1 / self[0]
        for k in range(1, n + 1):
            acc = sum(self[j] * out[k - j] for j in range(1, k + 1))
            out[k] = -acc * out[0]
        return RationalSeries(out, n)

    def __truediv__(self, other):
        return self * self._coerce(other).inverse()

    def derivative(self) -> "RationalSeries":
        n = self.order
        return RationalSeries([k * self[k] for k in range(1, n + 1)], max(n - 1, 0))

    def integral(self) -> "RationalSeries":
        return RationalSeries([Fraction(0)] + [self[k] / (k + 1) for k in range(self.order + 1)], self.order + 1)

    def log(self) -> "RationalSeries":
        if self[0] != 1:
            raise ValueError("log needs constant term 1")
        return (self.derivative() * self.inverse()).integral() if self.order else RationalSeries([0], 0)

    def sqrt(self) -> "RationalSeries":
        """Square root with the non-negative root of the constant term."""
        c0 = self[0]
        num, den = c0.numerator, c0.denominator
        rn, rd = _isqrt_exact(num), _isqrt_exact(den)
        if rn is None or rd is None:
            raise ValueError("constant term is not a rational square")
        n = self.order
        out = [Fraction(0)] * (n + 1)
        out[0] = Fraction(rn, rd)
        if out[0] == 0:
            raise ValueError("sqrt needs a non-zero constant term")
        for k in range(1, n + 1):
            acc = self[k] - sum(out[j] * out[k - j] for j in range(1, k))
            out[k] = acc / (2 * out[0])
        return RationalSeries(out, n)

    def shift(self, k: int) -> "RationalSeries":
        """Multiply by u**k."""
        return RationalSeries([0] * k + self.coeffs, self.order)

    def as_ints(self) -> list[int]:
        if any(c.denominator != 1 for c in self.coeffs):
            raise ValueError("series has non-integer coefficients")
        return [int(c) for c in self.coeffs]


def _isqrt_exact(x: int):
    from math import isqrt

    if x < 0:
        return None
    r = isqrt(x)
    return r if r * r == x else None
