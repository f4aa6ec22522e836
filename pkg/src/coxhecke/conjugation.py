"""The conjugation order ``w <-s- sws`` (length non-decreasing) and what hangs off it.

Search results are values rather than exceptions: a BFS either produces a
certificate, proves the reachable set finite (``Exhausted``), or reports that
its budget ran out (``BudgetExceeded``), which says nothing either way.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass

from .elements import Element, apply_to_simple_root, conjugate_by_generator, engine, from_word, inverse, multiply
from .errors import PreconditionError
from .system import AFFINE

__all__ = [
    "ConjugationStep",
    "GrowthCertificate",
    "Exhausted",
    "BudgetExceeded",
    "NotBad",
    "Bad",
    "Inconclusive",
    "FiniteClass",
    "ExceedsBound",
    "uplus_neighbors",
    "uplus_bfs",
    "flat_closure",
    "w_bad_decide",
    "conjugacy_class_bounded",
    "is_translation",
    "replay_growth_certificate",
]

DEFAULT_DEPTH = 20
DEFAULT_SIZE = 200_000


@dataclass(frozen=True)
class ConjugationStep:
    generator: int
    source: Element
    target: Element

    @property
    def delta(self) -> int:
        return self.target.length - self.source.length


@dataclass(frozen=True)
class GrowthCertificate:
    """A chain of non-decreasing conjugation steps starting at ``start``."""

    start: Element
    steps: tuple = ()

    @property
    def end(self) -> Element:
        return self.steps[-1].target if self.steps else self.start

    @property
    def gain(self) -> int:
        return self.end.length - self.start.length

    @property
    def generators(self) -> tuple:
        return tuple(st.generator for st in self.steps)

    def elements(self) -> list:
        return [self.start] + [st.target for st in self.steps]


@dataclass(frozen=True)
class Exhausted:
    """The whole non-decreasing reachable set was enumerated without reaching the gain."""

    reachable: frozenset


@dataclass(frozen=True)
class BudgetExceeded:
    reason: str
    explored: int = 0


@dataclass(frozen=True)
class NotBad:
    certificate: GrowthCertificate


@dataclass(frozen=True)
class Bad:
    closure: frozenset


@dataclass(frozen=True)
class Inconclusive:
    reason: str


@dataclass(frozen=True)
class FiniteClass:
    members: frozenset


@dataclass(frozen=True)
class ExceedsBound:
    bound: int


def uplus_neighbors(w: Element, I=None) -> list:
    """Steps w -> sws (s in I, ascending) with len(sws) >= len(w)."""
    system = w.system
    I = system.generators if I is None else system.subset(I)
    steps = []
    for s in sorted(I):
        c = conjugate_by_generator(w, s)
        if c.length >= w.length:
            steps.append(ConjugationStep(s, w, c))
    return steps


def _path(parents, node, start):
    steps = []
    while node != start:
        prev, s = parents[node]
        steps.append(ConjugationStep(s, prev, node))
        node = prev
    return tuple(reversed(steps))


def uplus_bfs(
    w: Element,
    I=None,
    target_gain: int = 4,
    depth_limit: int = DEFAULT_DEPTH,
    size_limit: int = DEFAULT_SIZE,
):
    """Shortest certificate reaching length >= len(w) + target_gain inside U+_I(w).

    Returns GrowthCertificate, Exhausted (exact disproof) or BudgetExceeded.
    Among shortest certificates the generator sequence is lexicographically least.
    """
    if target_gain <= 0:
        return GrowthCertificate(w)
    system = w.system
    gens = sorted(system.generators if I is None else system.subset(I))
    goal = w.length + target_gain
    parents = {w: None}
    queue = deque([(w, 0)])
    truncated = False
    while queue:
        node, depth = queue.popleft()
        for s in gens:
            c = conjugate_by_generator(node, s)
            if c.length < node.length or c in parents:
                continue
            if depth == depth_limit:
                truncated = True
                continue
            parents[c] = (node, s)
            if c.length >= goal:
                return GrowthCertificate(w, _path(parents, c, w))
            if len(parents) > size_limit:
                return BudgetExceeded(f"visited more than {size_limit} elements", len(parents))
            queue.append((c, depth + 1))
    if truncated:
        return BudgetExceeded(f"depth limit {depth_limit} reached", len(parents))
    return Exhausted(frozenset(parents))


def _flat_search(w: Element, budget: int, want_strict: bool):
    """BFS over delta = 0 steps; optionally stop at the first strictly increasing exit."""
    gens = range(w.system.rank)
    parents = {w: None}
    queue = deque([w])
    while queue:
        node = queue.popleft()
        for s in gens:
            c = conjugate_by_generator(node, s)
            if c.length > node.length:
                if want_strict:
                    steps = _path(parents, node, w) + (ConjugationStep(s, node, c),)
                    return NotBad(GrowthCertificate(w, steps))
                continue
            if c.length == node.length and c not in parents:
                if len(parents) >= budget:
                    return None
                parents[c] = (node, s)
                queue.append(c)
    return frozenset(parents)


def flat_closure(w: Element, budget: int = DEFAULT_SIZE):
    """Closure of {w} under length-preserving generator conjugations."""
    result = _flat_search(w, budget, want_strict=False)
    if result is None:
        return BudgetExceeded(f"flat closure exceeds {budget} elements", budget)
    return result


def w_bad_decide(w: Element, v: Element, budget: int = DEFAULT_SIZE):
    """Is the chamber v C0 bad for w?  Works on the conjugate v^-1 w v."""
    pi = multiply(multiply(inverse(v), w), v)
    result = _flat_search(pi, budget, want_strict=True)
    if result is None:
        return Inconclusive(f"flat closure exceeds {budget} elements")
    if isinstance(result, NotBad):
        return result
    return Bad(result)


def _conjugate_columns(eng, cols, s):
    """Columns of S_s M S_s given the columns of M."""
    cs = cols[s]
    out = []
    for t in range(eng.rank):
        if t == s:
            col = [-x for x in cs]
        else:
            col = list(cols[t])
        out.append(col)
    for t, c in eng.neighbours[s]:
        eng.add_scaled(out[t], c, cs)
    for col in out:
        eng.reflect(col, s)
    return out


def conjugacy_class_bounded(w: Element, bound: int = 10_000):
    """Full conjugacy class of w if it has at most ``bound`` elements.

    The closure is keyed on the exact matrix of each conjugate (the geometric
    representation is faithful), which avoids normal forms of long words;
    members are converted to normal form only when the class is finite.
    """
    eng = engine(w.system)
    start = eng.columns(w.word)
    key = tuple(itertools.chain.from_iterable(start))
    conj = {key: ()}  # key -> conjugating word g, meaning g^-1 w g with g read left to right
    queue = deque([(start, ())])
    while queue:
        cols, g = queue.popleft()
        for s in range(eng.rank):
            new = _conjugate_columns(eng, cols, s)
            k = tuple(itertools.chain.from_iterable(new))
            if k not in conj:
                if len(conj) >= bound:
                    return ExceedsBound(bound)
                conj[k] = g + (s,)
                queue.append((new, g + (s,)))
    members = frozenset(from_word(w.system, g[::-1] + w.word + g) for g in conj.values())
    return FiniteClass(members)


def _gram(eng):
    return [[-c for c in row] for row in eng.coefficients]


def is_translation(w: Element) -> bool:
    """True iff w acts trivially modulo the radical of the bilinear form (affine systems only)."""
    system = w.system
    if system.classification.kind != AFFINE:
        raise PreconditionError("translations are defined for affine systems only")
    eng = engine(system)
    gram = _gram(eng)
    r = system.rank
    for s in range(r):
        image = apply_to_simple_root(w, s).coords
        diff = [image[t] - (1 if t == s else 0) for t in range(r)]
        # w(alpha_s) - alpha_s must lie in the radical, i.e. in the kernel of the Gram matrix
        for row in gram:
            if sum((row[t] * diff[t] for t in range(r)), eng.ring.zero):
                return False
    return True


def replay_growth_certificate(cert: GrowthCertificate, require_nonneg: bool = True) -> list:
    """Re-derive every step through the element engine; return a list of problems (empty = valid)."""
    problems = []
    cur = cert.start
    for i, st in enumerate(cert.steps):
        if st.source != cur:
            problems.append(f"step {i}: source {st.source} does not continue the chain at {cur}")
        expected = conjugate_by_generator(st.source, st.generator)
        if expected != st.target:
            label = st.source.system.labels[st.generator]
            problems.append(f"step {i}: conjugating {st.source} by {label} gives {expected}, not {st.target}")
        if require_nonneg and st.delta < 0:
            problems.append(f"step {i}: length decreases")
        cur = st.target
    return problems
