"""Generic Hecke algebra over a pluggable coefficient ring.

The algebra is the free module on ``T_w`` with

    T_s T_w = T_sw                      if len(sw) > len(w)
    T_s T_w = a_s T_w + b_s T_sw        otherwise

and the mirror rules on the right.  Products fold the normal-form word of
the left factor onto the right factor one letter at a time, so only these
relations are ever used.

Finitely supported functionals ``phi = sum phi_w delta_w`` are stored in the
same shape as elements (a dict from group elements to coefficients).  The
dual actions are the transposes ``(lambda_s phi)(x) = phi(T_s x)`` and
``(rho_s phi)(x) = phi(x T_s)``.
"""

from __future__ import annotations

from typing import Mapping

from .elements import Element, from_word, identity, left_multiply, right_multiply
from .errors import PreconditionError, SystemMismatchError
from .rings import DeformationParameters, Generic, GenericRing

__all__ = ["HeckeAlgebra", "HeckeElement"]


class HeckeElement:
    """Immutable finitely supported expansion ``sum x_w T_w`` (zeros are never stored)."""

    __slots__ = ("algebra", "_coeffs")

    def __init__(self, algebra: "HeckeAlgebra", coeffs: Mapping[Element, object] = ()):
        self.algebra = algebra
        zero = algebra.ring.zero
        self._coeffs = {w: c for w, c in dict(coeffs).items() if c != zero}

    @property
    def coeffs(self) -> dict:
        return dict(self._coeffs)

    def coefficient(self, w: Element):
        """delta_w(x)."""
        return self._coeffs.get(w, self.algebra.ring.zero)

    def support(self) -> list:
        return sorted(self._coeffs)

    def is_zero(self) -> bool:
        return not self._coeffs

    def items(self):
        return self._coeffs.items()

    def _check(self, other):
        if not isinstance(other, HeckeElement):
            return False
        if other.algebra != self.algebra:
            raise SystemMismatchError("Hecke elements belong to different algebras")
        return True

    def __add__(self, other):
        if not self._check(other):
            return NotImplemented
        out = dict(self._coeffs)
        for w, c in other._coeffs.items():
            out[w] = out[w] + c if w in out else c
        return HeckeElement(self.algebra, out)

    def __neg__(self):
        return HeckeElement(self.algebra, {w: -c for w, c in self._coeffs.items()})

    def __sub__(self, other):
        if not self._check(other):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, HeckeElement):
            return self.algebra.multiply(self, other)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def scale(self, c):
        c = self.algebra.ring.coerce(c)
        return HeckeElement(self.algebra, {w: c * x for w, x in self._coeffs.items()})

    def __eq__(self, other):
        if not isinstance(other, HeckeElement):
            return NotImplemented
        return self.algebra == other.algebra and self._coeffs == other._coeffs

    def __hash__(self):
        return hash(frozenset(self._coeffs))

    def __repr__(self):
        if not self._coeffs:
            return "0"
        return " + ".join(f"({c})*T[{w}]" for w, c in sorted(self._coeffs.items()))

    def to_json(self) -> list:
        render = self.algebra.ring.render
        return [{"word": w.labels(), "coefficient": render(c)} for w, c in sorted(self._coeffs.items())]


class HeckeAlgebra:
    """Hecke algebra of ``system`` with the given deformation parameters."""

    def __init__(self, system, params=None):
        if params is None:
            params = Generic()
        if not isinstance(params, DeformationParameters):
            params = params.parameters(system)
        if len(params.pairs) != len(system.generator_classes):
            raise PreconditionError("parameters must cover every generator conjugacy class")
        self.system = system
        self.params = params
        self.ring = params.ring
        self._a = [params.a(system, s) for s in range(system.rank)]
        self._b = [params.b(system, s) for s in range(system.rank)]

    def __eq__(self, other):
        if self is other:
            return True
        return (
            isinstance(other, HeckeAlgebra)
            and self.ring == other.ring
            and self.system == other.system
            and self.params.pairs == other.params.pairs
        )

    def __hash__(self):
        return hash((self.system, self.params.pairs))

    def a(self, s: int):
        return self._a[s]

    def b(self, s: int):
        return self._b[s]

    # constructors -------------------------------------------------------

    def zero(self) -> HeckeElement:
        return HeckeElement(self, {})

    def one(self) -> HeckeElement:
        return self.t_basis(identity(self.system))

    def t_basis(self, w) -> HeckeElement:
        if not isinstance(w, Element):
            w = from_word(self.system, w)
        if w.system != self.system:
            raise SystemMismatchError("element belongs to a different Coxeter system")
        return HeckeElement(self, {w: self.ring.one})

    def element(self, coeffs: Mapping) -> HeckeElement:
        return HeckeElement(self, {w: self.ring.coerce(c) for w, c in coeffs.items()})

    # generator actions --------------------------------------------------

    @staticmethod
    def _accumulate(out, w, c):
        out[w] = out[w] + c if w in out else c

    def left_mul_generator(self, s: int, x: HeckeElement) -> HeckeElement:
        """T_s * x."""
        a, b = self._a[s], self._b[s]
        out = {}
        for w, c in x.items():
            sw = left_multiply(s, w)
            if sw.length > w.length:
                self._accumulate(out, sw, c)
            else:
                self._accumulate(out, w, a * c)
                self._accumulate(out, sw, b * c)
        return HeckeElement(self, out)

    def right_mul_generator(self, s: int, x: HeckeElement) -> HeckeElement:
        """x * T_s."""
        a, b = self._a[s], self._b[s]
        out = {}
        for w, c in x.items():
            ws = right_multiply(w, s)
            if ws.length > w.length:
                self._accumulate(out, ws, c)
            else:
                self._accumulate(out, w, a * c)
                self._accumulate(out, ws, b * c)
        return HeckeElement(self, out)

    def multiply(self, x: HeckeElement, y: HeckeElement) -> HeckeElement:
        """x * y, folding each T_u of x as T_{u_1} ... T_{u_k} onto y."""
        if x.algebra != self or y.algebra != self:
            raise SystemMismatchError("factors belong to a different algebra")
        total = {}
        for u, c in x.items():
            acc = y
            for s in reversed(u.word):
                acc = self.left_mul_generator(s, acc)
            for w, d in acc.items():
                self._accumulate(total, w, c * d)
        return HeckeElement(self, total)

    def commutator_with_generator(self, s: int, x: HeckeElement) -> HeckeElement:
        """T_s x - x T_s."""
        return self.left_mul_generator(s, x) - self.right_mul_generator(s, x)

    # dual actions on functionals ---------------------------------------

    def dual_left(self, s: int, phi: Mapping) -> dict:
        """Functional x -> phi(T_s x)."""
        a, b = self._a[s], self._b[s]
        out = {}
        for w, c in phi.items():
            sw = left_multiply(s, w)
            if sw.length > w.length:
                self._accumulate(out, sw, b * c)
            else:
                self._accumulate(out, w, a * c)
                self._accumulate(out, sw, c)
        zero = self.ring.zero
        return {w: c for w, c in out.items() if c != zero}

    def dual_right(self, s: int, phi: Mapping) -> dict:
        """Functional x -> phi(x T_s)."""
        a, b = self._a[s], self._b[s]
        out = {}
        for w, c in phi.items():
            ws = right_multiply(w, s)
            if ws.length > w.length:
                self._accumulate(out, ws, b * c)
            else:
                self._accumulate(out, w, a * c)
                self._accumulate(out, ws, c)
        zero = self.ring.zero
        return {w: c for w, c in out.items() if c != zero}

    def evaluate(self, phi: Mapping, x: HeckeElement):
        """phi(x) = sum phi_w x_w."""
        total = self.ring.zero
        for w, c in phi.items():
            total = total + c * x.coefficient(w)
        return total

    # specialisation -----------------------------------------------------

    def specialize(self, x: HeckeElement, target, extra_values: Mapping | None = None) -> HeckeElement:
        """Apply a_c, b_c -> target values coefficientwise (x must be over the generic ring)."""
        if not isinstance(self.ring, GenericRing):
            raise PreconditionError("specialisation starts from generic coefficients")
        target_alg = target if isinstance(target, HeckeAlgebra) else HeckeAlgebra(self.system, target)
        values = dict(extra_values or {})
        for c, (a, b) in enumerate(target_alg.params.pairs):
            values[f"a{c}"] = a
            values[f"b{c}"] = b
        one = target_alg.ring.one
        out = {w: self.ring.evaluate(c, values, one) for w, c in x.items()}
        return HeckeElement(target_alg, out)

    def from_json(self, records: list) -> HeckeElement:
        """Inverse of :meth:`HeckeElement.to_json` (repeated words are summed)."""
        parse = self.ring.parse
        out = {}
        for r in records:
            self._accumulate(out, from_word(self.system, r["word"]), parse(r["coefficient"]))
        return HeckeElement(self, out)
