"""Word problem for Coxeter groups via the geometric representation.

An element is stored as its ShortLex normal form: the lexicographically
smallest reduced word.  Normal forms are computed greedily, peeling off the
smallest left descent, where ``s`` is a left descent of ``w`` iff the root
``w^-1(alpha_s)`` is negative.

Roots have coordinates in Z[2cos(pi/M)]; internally a root is a flat list of
``rank * degree`` integers (one power-basis block per simple root) so that
reflections are integer linear maps.  Signs of blocks are decided exactly by
:meth:`RealCyclotomicRing.sign_raw`.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator, Sequence

from .errors import BudgetExceededError, ParseError, PreconditionError, SystemMismatchError
from .scalars import ExactScalar, ring_for_labels
from .system import INFINITY, CoxeterSystem

__all__ = [
    "Element",
    "RootVector",
    "EngineLimits",
    "from_word",
    "identity",
    "generator",
    "multiply",
    "inverse",
    "left_descents",
    "right_descents",
    "apply_to_simple_root",
    "conjugate_by_generator",
    "support",
    "ball_enumerate",
    "ball",
    "is_left_descent",
    "is_right_descent",
    "left_multiply",
    "right_multiply",
    "parse_word",
    "format_word",
    "engine",
]


@dataclass
class EngineLimits:
    """Hard resource caps; exceeding one raises BudgetExceededError."""

    max_ball_size: int = 2_000_000
    max_word_length: int = 100_000


class _Engine:
    """Geometric representation of one Coxeter system plus a normal-form cache."""

    def __init__(self, system: CoxeterSystem, limits: EngineLimits | None = None):
        self.system = system
        self.rank = r = system.rank
        self.limits = limits or EngineLimits()
        labels = [system.m(s, t) for s in range(r) for t in range(r) if s != t]
        self.ring = ring = ring_for_labels([m for m in labels if m != INFINITY])
        self.degree = d = ring.degree
        # c[s][t] = 2cos(pi/m_st): -2 on the diagonal, 2 for m = infinity; Gram matrix = -c
        self.coefficients = [
            [ring.two_cos_pi_over(0 if system.m(s, t) == INFINITY else system.m(s, t)) for t in range(r)]
            for s in range(r)
        ]
        self.neighbours = []
        for s in range(r):
            row = []
            for t in range(r):
                c = self.coefficients[s][t]
                if t != s and c:
                    row.append((t, c.coeffs[0] if d == 1 else ring.mult_matrix(c.coeffs)))
            self.neighbours.append(tuple(row))
        self.normal_form = lru_cache(maxsize=1 << 19)(self._normal_form)

    # flat-vector kernels --------------------------------------------------

    def unit(self, s):
        v = [0] * (self.rank * self.degree)
        v[s * self.degree] = 1
        return v

    def reflect(self, v, s):
        """Apply the simple reflection s to the flat root vector v in place."""
        d = self.degree
        if d == 1:
            acc = -v[s]
            for t, c in self.neighbours[s]:
                acc += c * v[t]
            v[s] = acc
            return
        base = s * d
        acc = [-x for x in v[base : base + d]]
        for t, mat in self.neighbours[s]:
            block = v[t * d : t * d + d]
            for i in range(d):
                row = mat[i]
                acc[i] += sum(row[j] * block[j] for j in range(d))
        v[base : base + d] = acc

    def add_scaled(self, target, c, source):
        """target += c * source, where c is a neighbour coefficient."""
        d = self.degree
        if d == 1:
            for i, x in enumerate(source):
                if x:
                    target[i] += c * x
            return
        for b in range(0, len(source), d):
            block = source[b : b + d]
            if any(block):
                for i in range(d):
                    row = c[i]
                    target[b + i] += sum(row[j] * block[j] for j in range(d))

    def root_sign(self, v) -> int:
        d = self.degree
        if d == 1:
            for x in v:
                if x:
                    return 1 if x > 0 else -1
            return 0
        for b in range(0, len(v), d):
            block = v[b : b + d]
            if any(block):
                return self.ring.sign_raw(block)
        return 0

    def inverse_columns(self, letters):
        """Columns w^-1(alpha_t) of the matrix of w^-1 for w = product of letters."""
        cols = [self.unit(t) for t in range(self.rank)]
        for a in letters:
            for col in cols:
                self.reflect(col, a)
        return cols

    def columns(self, letters):
        """Columns w(alpha_t) of the matrix of w."""
        return self.inverse_columns(reversed(letters))

    def _normal_form(self, letters: tuple) -> tuple:
        if len(letters) > self.limits.max_word_length:
            raise BudgetExceededError(
                f"word of length {len(letters)} exceeds cap {self.limits.max_word_length}",
                self.limits.max_word_length,
            )
        if len(letters) <= 1:
            return letters
        cols = self.inverse_columns(letters)
        out = []
        r = self.rank
        for _ in range(len(letters) + 1):
            for s in range(r):
                if self.root_sign(cols[s]) < 0:
                    break
            else:
                return tuple(out)
            out.append(s)
            cs = cols[s]
            for t, c in self.neighbours[s]:
                self.add_scaled(cols[t], c, cs)
            cols[s] = [-x for x in cs]
        raise AssertionError("normal form extraction did not terminate; root dichotomy violated")

    def to_scalars(self, v) -> tuple:
        d = self.degree
        return tuple(ExactScalar(self.ring, v[b : b + d]) for b in range(0, len(v), d))


def engine(system: CoxeterSystem) -> _Engine:
    eng = getattr(system, "_engine", None)
    if eng is None:
        eng = system._engine = _Engine(system)
    return eng


class Element:
    """A Coxeter group element in ShortLex normal form."""

    __slots__ = ("system", "word", "length")

    def __init__(self, system: CoxeterSystem, word: tuple):
        # trusted constructor: word must already be the normal form
        self.system = system
        self.word = word
        self.length = len(word)

    def __eq__(self, other):
        if not isinstance(other, Element):
            return NotImplemented
        return self.word == other.word and (self.system is other.system or self.system == other.system)

    def __hash__(self):
        return hash(self.word)

    def __lt__(self, other):
        return (self.length, self.word) < (other.length, other.word)

    def __mul__(self, other):
        return multiply(self, other)

    def __repr__(self):
        return f"Element({format_word(self.system, self.word)!r})"

    def __str__(self):
        return format_word(self.system, self.word)

    @property
    def is_identity(self) -> bool:
        return not self.word

    def labels(self) -> list:
        return [self.system.labels[i] for i in self.word]

    def inverse(self) -> "Element":
        return inverse(self)


@dataclass(frozen=True)
class RootVector:
    """Coordinates of a root in the basis of simple roots."""

    coords: tuple

    def sign(self) -> int:
        for c in self.coords:
            sg = c.sign()
            if sg:
                return sg
        return 0

    def is_positive(self) -> bool:
        return self.sign() > 0

    def is_negative(self) -> bool:
        return self.sign() < 0

    def __str__(self):
        return "(" + ", ".join(str(c) for c in self.coords) + ")"


def _letters(system: CoxeterSystem, letters: Iterable) -> tuple:
    out = []
    for x in letters:
        if isinstance(x, str):
            out.append(system.index(x))
        elif isinstance(x, int) and not isinstance(x, bool) and 0 <= x < system.rank:
            out.append(x)
        else:
            raise PreconditionError(f"invalid generator index {x!r}")
    return tuple(out)


def from_word(system: CoxeterSystem, letters: Iterable = ()) -> Element:
    """Canonical element equal to the product of ``letters`` (indices or labels)."""
    word = _letters(system, letters)
    return Element(system, engine(system).normal_form(word))


def identity(system: CoxeterSystem) -> Element:
    return Element(system, ())


def generator(system: CoxeterSystem, s) -> Element:
    return from_word(system, [s])


def _same_system(a: Element, b: Element):
    if a.system is not b.system and a.system != b.system:
        raise SystemMismatchError("elements belong to different Coxeter systems")


def multiply(a: Element, b: Element) -> Element:
    _same_system(a, b)
    return Element(a.system, engine(a.system).normal_form(a.word + b.word))


def inverse(w: Element) -> Element:
    return Element(w.system, engine(w.system).normal_form(w.word[::-1]))


def left_descents(w: Element) -> frozenset:
    eng = engine(w.system)
    cols = eng.inverse_columns(w.word)
    return frozenset(s for s in range(eng.rank) if eng.root_sign(cols[s]) < 0)


def right_descents(w: Element) -> frozenset:
    eng = engine(w.system)
    cols = eng.columns(w.word)
    return frozenset(s for s in range(eng.rank) if eng.root_sign(cols[s]) < 0)


def is_left_descent(w: Element, s: int) -> bool:
    eng = engine(w.system)
    v = eng.unit(s)
    for a in w.word:
        eng.reflect(v, a)
    return eng.root_sign(v) < 0


def is_right_descent(w: Element, s: int) -> bool:
    eng = engine(w.system)
    v = eng.unit(s)
    for a in reversed(w.word):
        eng.reflect(v, a)
    return eng.root_sign(v) < 0


def apply_to_simple_root(w: Element, s) -> RootVector:
    """Exact coordinates of w(alpha_s)."""
    eng = engine(w.system)
    (s,) = _letters(w.system, [s])
    v = eng.unit(s)
    for a in reversed(w.word):
        eng.reflect(v, a)
    return RootVector(eng.to_scalars(v))


def conjugate_by_generator(w: Element, s) -> Element:
    """Normal form of s w s."""
    (s,) = _letters(w.system, [s])
    return Element(w.system, engine(w.system).normal_form((s,) + w.word + (s,)))


def left_multiply(s: int, w: Element) -> Element:
    return Element(w.system, engine(w.system).normal_form((s,) + w.word))


def right_multiply(w: Element, s: int) -> Element:
    return Element(w.system, engine(w.system).normal_form(w.word + (s,)))


def support(w: Element) -> frozenset:
    """Letters appearing in (any) reduced word of w."""
    return frozenset(w.word)


def ball_enumerate(system: CoxeterSystem, N: int, max_size: int | None = None) -> Iterator[Element]:
    """All elements of length <= N, each once, in ShortLex order.

    Raises BudgetExceededError before yielding past ``max_size`` elements
    (default: the engine's ``max_ball_size``).
    """
    if N < 0:
        raise PreconditionError("radius must be non-negative")
    eng = engine(system)
    cap = eng.limits.max_ball_size if max_size is None else max_size
    level = [()]
    total = 0
    for k in range(N + 1):
        total += len(level)
        if total > cap:
            raise BudgetExceededError(f"ball of radius {N} exceeds {cap} elements", cap)
        for word in level:
            yield Element(system, word)
        if k == N:
            return
        nxt = set()
        for word in level:
            for s in range(system.rank):
                nf = eng.normal_form(word + (s,))
                if len(nf) == k + 1:
                    nxt.add(nf)
        level = sorted(nxt)
        if not level:
            return


def ball(system: CoxeterSystem, N: int, max_size: int | None = None) -> list:
    return list(ball_enumerate(system, N, max_size))


# --- word I/O ---------------------------------------------------------------


def parse_word(system: CoxeterSystem, text: str) -> Element:
    """Parse a word: concatenated single-character labels, or comma-separated labels.

    The empty string, ``1`` and ``e`` denote the identity unless they are labels.
    """
    text = text.strip()
    if text in ("", "1", "e") and text not in system.labels:
        return identity(system)
    if "," in text or any(len(lab) > 1 for lab in system.labels):
        parts = [p.strip() for p in text.split(",") if p.strip()]
    else:
        parts = list(text)
    try:
        return from_word(system, parts)
    except ParseError as exc:
        raise ParseError(f"bad word {text!r}: {exc}") from None


def format_word(system: CoxeterSystem, word: Sequence[int]) -> str:
    if not word:
        return "1"
    sep = "" if all(len(lab) == 1 for lab in system.labels) else ","
    return sep.join(system.labels[i] for i in word)
