"""Coefficient rings for Hecke algebras and the deformation-parameter specs.

A coefficient ring is any object exposing ``zero``, ``one``, ``coerce`` and
``render``; its elements support ``+ - *`` and ``==``.  Three are shipped:

* :class:`GenericRing`  -- integer polynomials in free variables ``a_c, b_c``
  (one pair per generator conjugacy class ``c``), sparse, backed by sympy;
* :class:`LaurentRing`  -- ``Z[v, v^-1]``;
* :class:`RationalRing` -- ``fractions.Fraction``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping

from sympy.polys.domains import ZZ
from sympy.polys.rings import PolyRing

from .errors import ParseError, PreconditionError

__all__ = [
    "RationalRing",
    "LaurentRing",
    "LaurentPolynomial",
    "GenericRing",
    "DeformationParameters",
    "Generic",
    "Laurent",
    "Rational",
    "parse_parameter_spec",
]


class RationalRing:
    name = "rational"
    zero = Fraction(0)
    one = Fraction(1)

    def coerce(self, x):
        return Fraction(x)

    def render(self, x) -> str:
        x = Fraction(x)
        return f"{x.numerator}/{x.denominator}"

    def parse(self, text) -> Fraction:
        return Fraction(text)

    def __eq__(self, other):
        return isinstance(other, RationalRing)

    def __hash__(self):
        return hash("RationalRing")

    def __repr__(self):
        return "RationalRing()"


class LaurentPolynomial:
    """Integer Laurent polynomial in one variable, stored as {exponent: coefficient}."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[int, int] | None = None):
        self.terms = {e: c for e, c in (terms or {}).items() if c}

    @classmethod
    def monomial(cls, exponent: int, coeff: int = 1):
        return cls({exponent: coeff})

    def _lift(self, other):
        if isinstance(other, LaurentPolynomial):
            return other
        if isinstance(other, int) or (isinstance(other, Fraction) and other.denominator == 1):
            return LaurentPolynomial({0: int(other)})
        return None

    def __add__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        out = dict(self.terms)
        for e, c in o.terms.items():
            out[e] = out.get(e, 0) + c
        return LaurentPolynomial(out)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPolynomial({e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in o.terms.items():
                out[e1 + e2] = out.get(e1 + e2, 0) + c1 * c2
        return LaurentPolynomial(out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            if len(self.terms) != 1:
                raise ValueError("only monomials are invertible in Z[v, v^-1]")
            ((e, c),) = self.terms.items()
            if c not in (1, -1):
                raise ValueError("only unit monomials are invertible in Z[v, v^-1]")
            return LaurentPolynomial({e * n: c ** abs(n)})
        result = LaurentPolynomial({0: 1})
        for _ in range(n):
            result = result * self
        return result

    def __eq__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self.terms == o.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self):
        return bool(self.terms)

    def __repr__(self):
        if not self.terms:
            return "0"
        return " + ".join(f"{c}*v^{e}" for e, c in sorted(self.terms.items()))


class LaurentRing:
    name = "laurent"
    zero = LaurentPolynomial()
    one = LaurentPolynomial({0: 1})
    v = LaurentPolynomial({1: 1})

    def coerce(self, x):
        if isinstance(x, LaurentPolynomial):
            return x
        return LaurentPolynomial({0: int(x)})

    def render(self, x) -> list:
        return [[e, c] for e, c in sorted(x.terms.items())]

    def parse(self, data) -> LaurentPolynomial:
        return LaurentPolynomial({int(e): int(c) for e, c in data})

    def __eq__(self, other):
        return isinstance(other, LaurentRing)

    def __hash__(self):
        return hash("LaurentRing")

    def __repr__(self):
        return "LaurentRing()"


class GenericRing:
    """Z[a_0, b_0, a_1, b_1, ..., extra...] as sparse polynomials."""

    name = "generic"

    def __init__(self, num_classes: int, extra: tuple = ()):
        self.num_classes = num_classes
        self.extra = tuple(extra)
        names = [f"{p}{c}" for c in range(num_classes) for p in ("a", "b")] + list(self.extra)
        self.names = tuple(names)
        self.poly_ring = PolyRing(names, ZZ) if names else PolyRing(["_"], ZZ)
        self.zero = self.poly_ring.zero
        self.one = self.poly_ring.one
        gens = self.poly_ring.gens
        self._gen = dict(zip(names, gens))

    def a(self, c: int):
        return self._gen[f"a{c}"]

    def b(self, c: int):
        return self._gen[f"b{c}"]

    def var(self, name: str):
        return self._gen[name]

    def coerce(self, x):
        return self.poly_ring(x)

    def render(self, x) -> list:
        out = []
        for monom, coeff in sorted(x.terms()):
            out.append([int(coeff), {n: e for n, e in zip(self.names, monom) if e}])
        return out

    def parse(self, data):
        total = self.zero
        for coeff, monom in data:
            term = self.poly_ring(int(coeff))
            for name, e in monom.items():
                if name not in self._gen:
                    raise ParseError(f"unknown variable {name!r}")
                term = term * self._gen[name] ** int(e)
            total = total + term
        return total

    def evaluate(self, x, values: Mapping[str, object], target_one):
        """Ring homomorphism image of x sending each variable name to ``values[name]``."""
        total = target_one * 0
        for monom, coeff in x.terms():
            term = target_one * int(coeff)
            for name, e in zip(self.names, monom):
                if e:
                    if name not in values:
                        raise PreconditionError(f"no value for variable {name}")
                    term = term * values[name] ** e
            total = total + term
        return total

    def __eq__(self, other):
        return isinstance(other, GenericRing) and other.names == self.names

    def __hash__(self):
        return hash(("GenericRing", self.names))

    def __repr__(self):
        return f"GenericRing({', '.join(self.names)})"


@dataclass(frozen=True)
class DeformationParameters:
    """(a_c, b_c) for each generator conjugacy class c, all in ``ring``."""

    ring: object
    pairs: tuple  # indexed by class
    spec: object = None

    def a(self, system, s: int):
        return self.pairs[system.class_of(s)][0]

    def b(self, system, s: int):
        return self.pairs[system.class_of(s)][1]

    def to_json(self) -> dict:
        return {
            "ring": self.ring.name,
            "classes": [
                {"a": self.ring.render(a), "b": self.ring.render(b)} for a, b in self.pairs
            ],
        }


# --- parameter specs ------------------------------------------------------


@dataclass(frozen=True)
class Generic:
    extra: tuple = ()

    def parameters(self, system) -> DeformationParameters:
        ring = GenericRing(len(system.generator_classes), self.extra)
        pairs = tuple((ring.a(c), ring.b(c)) for c in range(ring.num_classes))
        return DeformationParameters(ring, pairs, self)

    def describe(self) -> str:
        return "generic"


def _per_class(values, system, what):
    n = len(system.generator_classes)
    if not isinstance(values, Mapping):
        return [values] * n
    missing = [c for c in range(n) if c not in values]
    if missing:
        raise PreconditionError(f"{what}: no value for generator class(es) {missing}")
    return [values[c] for c in range(n)]


@dataclass(frozen=True)
class Laurent:
    """Parameters (v^L(c), 1); ``exponents`` is an int or a {class: int} map."""

    exponents: object = 1

    def parameters(self, system) -> DeformationParameters:
        ring = LaurentRing()
        exps = _per_class(self.exponents, system, "laurent")
        pairs = tuple((LaurentPolynomial.monomial(int(e)), ring.one) for e in exps)
        return DeformationParameters(ring, pairs, self)

    def describe(self) -> str:
        return f"laurent:{self.exponents}"


@dataclass(frozen=True)
class Rational:
    """Explicit rational pairs; ``values`` is a pair or a {class: pair} map."""

    values: object = (Fraction(3), Fraction(2))

    def parameters(self, system) -> DeformationParameters:
        ring = RationalRing()
        vals = _per_class(self.values, system, "rational")
        pairs = tuple((Fraction(a), Fraction(b)) for a, b in vals)
        return DeformationParameters(ring, pairs, self)

    def describe(self) -> str:
        return f"rational:{self.values}"


_KV = re.compile(r"^\s*([ab]|L)(\d*)\s*=\s*(\S+)\s*$")


def parse_parameter_spec(text: str):
    """Parse ``generic``, ``laurent:L=1`` / ``laurent:L0=1,L1=2``,
    ``rational:a=3,b=2`` / ``rational:a0=3,b0=2,a1=1/2,b1=1``."""
    kind, _, rest = text.partition(":")
    kind = kind.strip().lower()
    if kind == "generic":
        if rest.strip():
            raise ParseError("generic parameters take no values", text)
        return Generic()
    pairs = {}
    for item in filter(None, (p.strip() for p in rest.split(","))):
        m = _KV.match(item)
        if not m:
            raise ParseError(f"bad parameter assignment {item!r}", text)
        key, cls, value = m.groups()
        pairs[(key, int(cls) if cls else None)] = value
    if kind == "laurent":
        if set(k for k, _ in pairs) - {"L"}:
            raise ParseError("laurent parameters accept only L", text)
        if (("L", None)) in pairs:
            return Laurent(int(pairs[("L", None)]))
        if not pairs:
            return Laurent(1)
        return Laurent({c: int(v) for (_, c), v in pairs.items()})
    if kind == "rational":
        if set(k for k, _ in pairs) - {"a", "b"}:
            raise ParseError("rational parameters accept only a and b", text)
        try:
            if ("a", None) in pairs or ("b", None) in pairs:
                return Rational((Fraction(pairs[("a", None)]), Fraction(pairs[("b", None)])))
            classes = sorted({c for _, c in pairs})
            return Rational(
                {c: (Fraction(pairs[("a", c)]), Fraction(pairs[("b", c)])) for c in classes}
            )
        except KeyError as exc:
            raise ParseError(f"missing rational parameter {exc.args[0]}", text) from None
        except ValueError as exc:
            raise ParseError(str(exc), text) from None
    raise ParseError(f"unknown parameter kind {kind!r}", text)
