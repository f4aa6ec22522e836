"""Exact arithmetic in the real cyclotomic ring Z[2cos(pi/M)].

All entries ``2cos(pi/m)`` of the geometric representation of a Coxeter
system live in ``Z[theta]`` with ``theta = 2cos(pi/M)`` and ``M`` the lcm of
the finite labels.  Elements are stored as integer coefficient tuples in the
power basis ``1, theta, ..., theta^(d-1)``, which makes equality a tuple
comparison.  Signs are decided by a certified float estimate, falling back
to interval arithmetic with doubling precision.
"""

from __future__ import annotations

import math
from functools import reduce

import mpmath
from sympy import Poly, cyclotomic_poly, symbols

__all__ = ["RealCyclotomicRing", "ExactScalar", "ring_for_labels"]

_X = symbols("x")
_REL_EPS = 1e-13


def _two_cos_multiple(theta_poly_mul, theta, k, one, zero):
    """Return 2cos(k*phi) as a polynomial in 2cos(phi) (Chebyshev recursion)."""
    prev, cur = 2 * one, theta
    if k == 0:
        return prev
    for _ in range(k - 1):
        prev, cur = cur, theta_poly_mul(theta, cur) - prev
    return cur


def _minimal_polynomial(M):
    """Monic integer minimal polynomial of 2cos(pi/M), constant term first."""
    if M == 1:
        return [2, 1]  # theta = -2
    n = 2 * M
    coeffs = Poly(cyclotomic_poly(n, _X), _X).all_coeffs()[::-1]
    coeffs = [int(c) for c in coeffs]
    d = (len(coeffs) - 1) // 2
    # Phi_n(x) / x^d = a_d + sum_k a_{d+k} (x^k + x^-k), and x^k + x^-k = C_k(y).
    cheb = [[2], [0, 1]]
    for _ in range(2, d + 1):
        a, b = cheb[-1], cheb[-2]
        nxt = [0] + a
        for i, c in enumerate(b):
            nxt[i] -= c
        cheb.append(nxt)
    result = [0] * (d + 1)
    result[0] = coeffs[d]
    for k in range(1, d + 1):
        for i, c in enumerate(cheb[k]):
            result[i] += coeffs[d + k] * c
    assert result[-1] == 1
    return result


class RealCyclotomicRing:
    """The ring Z[2cos(pi/M)], presented as Z[y]/(minimal polynomial)."""

    def __init__(self, conductor: int):
        if conductor < 1:
            raise ValueError("conductor must be positive")
        self.conductor = conductor
        self.minpoly = _minimal_polynomial(conductor)
        self.degree = len(self.minpoly) - 1
        d = self.degree
        # theta^k reduced, for k < 2d - 1
        powers = []
        for k in range(max(2 * d - 1, 1)):
            if k < d:
                vec = [0] * d
                vec[k] = 1
            else:
                prev = powers[-1]
                top = prev[-1]
                vec = [0] + prev[:-1]
                for i in range(d):
                    vec[i] -= top * self.minpoly[i]
            powers.append(vec)
        self._powers = powers
        self.theta_float = 2.0 * math.cos(math.pi / conductor)
        self._theta_pows = [self.theta_float**k for k in range(d)]
        self._abs_theta_pows = [abs(t) for t in self._theta_pows]

    def __repr__(self):
        return f"RealCyclotomicRing(M={self.conductor}, degree={self.degree})"

    def __eq__(self, other):
        return isinstance(other, RealCyclotomicRing) and other.conductor == self.conductor

    def __hash__(self):
        return hash(("RealCyclotomicRing", self.conductor))

    # raw coefficient-tuple arithmetic -----------------------------------

    def reduce(self, poly):
        d = self.degree
        out = [0] * d
        for k, c in enumerate(poly):
            if c:
                if k < d:
                    out[k] += c
                else:
                    for i, p in enumerate(self._powers[k]):
                        out[i] += c * p
        return tuple(out)

    def mul_raw(self, a, b):
        prod = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    prod[i + j] += x * y
        return self.reduce(prod)

    def mult_matrix(self, c):
        """Integer matrix (rows) of multiplication by ``c`` in the power basis."""
        d = self.degree
        cols = []
        for j in range(d):
            e = [0] * d
            e[j] = 1
            cols.append(self.mul_raw(c, tuple(e)))
        return tuple(tuple(cols[j][i] for j in range(d)) for i in range(d))

    def sign_raw(self, coeffs) -> int:
        """Exact sign of sum coeffs[i] * theta^i."""
        if not any(coeffs):
            return 0
        try:
            value = 0.0
            bound = 0.0
            for c, t, at in zip(coeffs, self._theta_pows, self._abs_theta_pows):
                if c:
                    fc = float(c)
                    value += fc * t
                    bound += abs(fc) * at
            if abs(value) > bound * _REL_EPS * (self.degree + 2) and math.isfinite(value):
                return 1 if value > 0 else -1
        except OverflowError:
            pass
        return self._sign_interval(coeffs)

    def _sign_interval(self, coeffs) -> int:
        iv = mpmath.iv
        old = iv.prec
        prec = 128
        try:
            while prec <= 1 << 16:
                iv.prec = prec
                theta = 2 * iv.cos(iv.pi / self.conductor)
                acc = iv.mpf(0)
                power = iv.mpf(1)
                for c in coeffs:
                    if c:
                        acc += c * power
                    power *= theta
                if acc.a > 0:
                    return 1
                if acc.b < 0:
                    return -1
                prec *= 2
        finally:
            iv.prec = old
        raise ArithmeticError("sign undecided; nonzero element too close to zero")

    def to_float(self, coeffs) -> float:
        return float(sum(c * t for c, t in zip(coeffs, self._theta_pows)))

    # public element constructors ------------------------------------------

    def __call__(self, value) -> "ExactScalar":
        if isinstance(value, ExactScalar):
            if value.ring != self:
                raise ValueError("scalar from a different ring")
            return value
        if isinstance(value, int):
            return ExactScalar(self, (value,) + (0,) * (self.degree - 1))
        raise TypeError(f"cannot coerce {value!r} into {self!r}")

    @property
    def zero(self):
        return self(0)

    @property
    def one(self):
        return self(1)

    @property
    def theta(self) -> "ExactScalar":
        """The generator 2cos(pi/M)."""
        if self.degree == 1:
            return self(-self.minpoly[0])
        return ExactScalar(self, (0, 1) + (0,) * (self.degree - 2))

    def two_cos_pi_over(self, m: int) -> "ExactScalar":
        """2cos(pi/m) for a finite label m dividing the conductor; m == 0 means infinity (value 2)."""
        if m == 0:
            return self(2)
        if m == 1:
            return self(-2)
        if m == 2:
            return self(0)
        if self.conductor % m:
            raise ValueError(f"label {m} does not divide conductor {self.conductor}")
        k = self.conductor // m
        return _two_cos_multiple(lambda a, b: a * b, self.theta, k, self.one, self.zero)


def ring_for_labels(labels) -> RealCyclotomicRing:
    """Smallest ring containing 2cos(pi/m) for every finite label m >= 3 in ``labels``."""
    finite = [m for m in labels if m >= 3]
    conductor = reduce(math.lcm, finite, 1)
    return RealCyclotomicRing(conductor)


class ExactScalar:
    """An element of a RealCyclotomicRing; immutable and hashable."""

    __slots__ = ("ring", "coeffs")

    def __init__(self, ring: RealCyclotomicRing, coeffs):
        self.ring = ring
        self.coeffs = tuple(coeffs)

    def _coerce(self, other):
        if isinstance(other, ExactScalar):
            if other.ring != self.ring:
                raise ValueError("scalars from different rings")
            return other.coeffs
        if isinstance(other, int):
            return (other,) + (0,) * (self.ring.degree - 1)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return ExactScalar(self.ring, tuple(a + b for a, b in zip(self.coeffs, o)))

    __radd__ = __add__

    def __neg__(self):
        return ExactScalar(self.ring, tuple(-a for a in self.coeffs))

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return ExactScalar(self.ring, tuple(a - b for a, b in zip(self.coeffs, o)))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return ExactScalar(self.ring, tuple(other * a for a in self.coeffs))
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return ExactScalar(self.ring, self.ring.mul_raw(self.coeffs, o))

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative powers are not ring elements")
        result = self.ring.one
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.coeffs == o

    def __hash__(self):
        if not any(self.coeffs[1:]):
            return hash(self.coeffs[0])
        return hash(self.coeffs)

    def sign(self) -> int:
        return self.ring.sign_raw(self.coeffs)

    def __lt__(self, other):
        return (self - other).sign() < 0

    def __le__(self, other):
        return (self - other).sign() <= 0

    def __gt__(self, other):
        return (self - other).sign() > 0

    def __ge__(self, other):
        return (self - other).sign() >= 0

    def __bool__(self):
        return any(self.coeffs)

    def __float__(self):
        return self.ring.to_float(self.coeffs)

    def is_integer(self) -> bool:
        return not any(self.coeffs[1:])

    def __repr__(self):
        return f"ExactScalar({self})"

    def __str__(self):
        if self.is_integer():
            return str(self.coeffs[0])
        terms = []
        for k, c in enumerate(self.coeffs):
            if c:
                terms.append(f"{c}" if k == 0 else f"{c}*t^{k}" if k > 1 else f"{c}*t")
        return " + ".join(terms) + f"  [t=2cos(pi/{self.ring.conductor})]"
