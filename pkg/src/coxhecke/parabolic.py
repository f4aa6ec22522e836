"""Cosets and double cosets of standard parabolic subgroups, residues.

Conventions: ``W^I`` is the set of elements with no right descent in ``I``
(minimal in their left coset ``wW_I``) and ``^I W`` the set with no left
descent in ``I``.  Chambers are identified with elements, so the chamber
distance between ``v`` and ``w`` is ``len(v^-1 w)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

from .elements import (
    Element,
    ball_enumerate,
    conjugate_by_generator,
    from_word,
    identity,
    inverse,
    left_descents,
    left_multiply,
    multiply,
    right_descents,
    right_multiply,
    support,
)
from .errors import BudgetExceededError, PreconditionError

__all__ = [
    "CosetFactorisation",
    "DoubleCosetDecomposition",
    "SphericalProbe",
    "factor_right",
    "factor_left",
    "min_double_coset_rep",
    "decompose_double_coset",
    "project_to_residue",
    "residue_elements",
    "residue_reflections",
    "residues_parallel",
    "normalizer_membership",
    "normalizes_parabolic",
    "spherical_criterion_probe",
    "parabolic_ball",
    "in_parabolic",
    "chamber_distance",
]


@dataclass(frozen=True)
class CosetFactorisation:
    """``side == "right"``: input = outer * inner; ``"left"``: input = inner * outer."""

    outer: Element
    inner: Element
    side: str = "right"

    def recompose(self) -> Element:
        if self.side == "right":
            return multiply(self.outer, self.inner)
        return multiply(self.inner, self.outer)


@dataclass(frozen=True)
class DoubleCosetDecomposition:
    I: frozenset
    J: frozenset
    wbar: Element
    H: frozenset
    u: Element
    v: Element

    def recompose(self) -> Element:
        return multiply(multiply(self.u, self.wbar), self.v)


def chamber_distance(v: Element, w: Element) -> int:
    return multiply(inverse(v), w).length


def in_parabolic(w: Element, I) -> bool:
    return support(w) <= w.system.subset(I)


def factor_right(w: Element, I) -> CosetFactorisation:
    """w = outer * inner with outer in W^I and inner in W_I."""
    I = w.system.subset(I)
    outer, stripped = w, []
    while True:
        desc = right_descents(outer) & I
        if not desc:
            break
        s = min(desc)
        outer = right_multiply(outer, s)
        stripped.append(s)
    inner = from_word(w.system, reversed(stripped))
    return CosetFactorisation(outer, inner, "right")


def factor_left(w: Element, I) -> CosetFactorisation:
    """w = inner * outer with outer in ^I W and inner in W_I."""
    I = w.system.subset(I)
    outer, stripped = w, []
    while True:
        desc = left_descents(outer) & I
        if not desc:
            break
        s = min(desc)
        outer = left_multiply(s, outer)
        stripped.append(s)
    inner = from_word(w.system, stripped)
    return CosetFactorisation(outer, inner, "left")


def min_double_coset_rep(w: Element, I, J) -> Element:
    """The unique element of ^I W^J in W_I w W_J (alternate descent stripping)."""
    I, J = w.system.subset(I), w.system.subset(J)
    cur = w
    while True:
        left = left_descents(cur) & I
        if left:
            cur = left_multiply(min(left), cur)
            continue
        right = right_descents(cur) & J
        if right:
            cur = right_multiply(cur, min(right))
            continue
        return cur


def _conjugate_generator(g: Element, t: int):
    """g t g^-1 as an element."""
    return multiply(multiply(g, from_word(g.system, [t])), inverse(g))


def decompose_double_coset(w: Element, I, J) -> DoubleCosetDecomposition:
    """w = u * wbar * v with wbar minimal, u in W_I^H, v in W_J, H = I cap wbar J wbar^-1."""
    system = w.system
    I, J = system.subset(I), system.subset(J)
    wbar = min_double_coset_rep(w, I, J)
    H = set()
    for t in J:
        c = _conjugate_generator(wbar, t)
        if c.length == 1 and c.word[0] in I:
            H.add(c.word[0])
    right = factor_right(w, J)
    u = multiply(right.outer, inverse(wbar))
    return DoubleCosetDecomposition(I, J, wbar, frozenset(H), u, right.inner)


def residue_elements(base: Element, J, limit: int = 100_000) -> list:
    """Chambers of the residue base * W_J (J spherical)."""
    J = base.system.subset(J)
    if not base.system.is_spherical(J):
        raise PreconditionError("residue type must be spherical")
    return [multiply(base, x) for x in parabolic_ball(base.system, J, None, limit)]


def project_to_residue(v: Element, base: Element, J) -> Element:
    """Chamber of base * W_J nearest to v (gate property)."""
    J = v.system.subset(J)
    h = multiply(inverse(base), v)
    return multiply(base, factor_left(h, J).inner)


def residue_reflections(base: Element, J) -> frozenset:
    """Reflections in the stabiliser base W_J base^-1 of a spherical residue."""
    system = base.system
    J = system.subset(J)
    if not system.is_spherical(J):
        raise PreconditionError("residue type must be spherical")
    refl = set()
    for u in parabolic_ball(system, J):
        g = multiply(base, u)
        for s in J:
            refl.add(_conjugate_generator(g, s))
    return frozenset(refl)


def residues_parallel(base1: Element, J1, base2: Element, J2) -> bool:
    """Same stabiliser, decided by comparing the (finite) reflection sets."""
    return residue_reflections(base1, J1) == residue_reflections(base2, J2)


def _check_normalizer_preconditions(system, I):
    comps = system.irreducible_components(I)
    if len(comps) != 1:
        raise PreconditionError("I must be irreducible")
    if system.is_spherical(I):
        raise PreconditionError("I must be non-spherical")
    if not all(system.is_spherical(I - {s}) for s in I):
        raise PreconditionError("every proper subset of I must be spherical")


def normalizer_membership(w: Element, I) -> bool:
    """w in N_W(W_I) = W_{I u I^perp}, valid for irreducible non-spherical I with spherical proper subsets."""
    system = w.system
    I = system.subset(I)
    _check_normalizer_preconditions(system, I)
    return support(w) <= I | system.perp(I)


def normalizes_parabolic(w: Element, I) -> bool:
    """Definitional test: wbar I wbar^-1 = I for the minimal representative of W_I w W_I."""
    I = w.system.subset(I)
    wbar = min_double_coset_rep(w, I, I)
    image = set()
    for s in I:
        c = _conjugate_generator(wbar, s)
        if c.length != 1:
            return False
        image.add(c.word[0])
    return image == I


@dataclass(frozen=True)
class SphericalProbe:
    J: frozenset
    witnesses: frozenset


def spherical_criterion_probe(x: Element, H) -> SphericalProbe:
    """Witnesses s with len(sx) = len(x) + 1 and sx in W^H; nonempty whenever S is non-spherical."""
    system = x.system
    H = system.subset(H)
    if not system.is_spherical(H):
        raise PreconditionError("H must be spherical")
    if right_descents(x) & H:
        raise PreconditionError("x must lie in W^H")
    J = system.generators - left_descents(x)
    witnesses = frozenset(s for s in J if not right_descents(left_multiply(s, x)) & H)
    return SphericalProbe(frozenset(J), witnesses)


def parabolic_ball(system, I, N: int | None = None, limit: int = 1_000_000) -> list:
    """Elements of W_I of length <= N (all of W_I when N is None), ShortLex ordered."""
    I = system.subset(I)
    current = [identity(system)]
    seen = {current[0]}
    out = list(current)
    k = 0
    while current and (N is None or k < N):
        nxt = set()
        for w in current:
            for s in sorted(I):
                ws = right_multiply(w, s)
                if ws.length == w.length + 1 and ws not in seen:
                    nxt.add(ws)
        current = sorted(nxt)
        seen.update(current)
        out.extend(current)
        if len(out) > limit:
            raise BudgetExceededError(f"W_I enumeration exceeds {limit} elements", limit)
        k += 1
    return out
