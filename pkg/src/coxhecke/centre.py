"""Truncated commutants and zero-propagation certificates.

Two independent ways of probing the centre of a Hecke algebra:

* linear algebra: an element ``x`` supported in the ball ``B_N`` is central
  iff ``T_s x - x T_s = 0`` for every generator; that difference lives in
  ``B_{N+1}``, so the equations indexed by ``(s, v in B_{N+1})`` are exact.
* combinatorics: for ``w`` of maximal length in the support of a central
  ``x``, a chain of length-preserving conjugations ending in a strict
  increase forces ``x_w = 0`` through one coefficient comparison per step.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction

from .conjugation import GrowthCertificate, NotBad, _flat_search, is_translation
from .elements import Element, ball, identity, left_multiply, right_multiply
from .errors import BudgetExceededError, PreconditionError
from .hecke import HeckeAlgebra, HeckeElement
from .linalg import bareiss_rank, kernel_basis, rank_rational
from .rings import DeformationParameters, Generic, GenericRing, Rational, RationalRing
from .system import AFFINE, FINITE, INDEFINITE

__all__ = [
    "CommutantProblem",
    "CommutantSystem",
    "ZeroPropagationCertificate",
    "build_commutant_system",
    "centre_dimension_at",
    "centre_kernel",
    "propagate_vanishing",
    "replay_zero_propagation",
    "assert_centre_trivial_up_to",
    "GENERIC_RADIUS_CAP",
]

GENERIC_RADIUS_CAP = 2
DEFAULT_FLAT_BUDGET = 200_000


@dataclass(frozen=True)
class CommutantProblem:
    system: object
    radius: int
    params: object = field(default_factory=lambda: Rational((Fraction(3), Fraction(2))))

    def algebra(self) -> HeckeAlgebra:
        return HeckeAlgebra(self.system, self.params)


@dataclass
class CommutantSystem:
    """Sparse rows ``{unknown index: coefficient}``, one per (generator, element of B_{N+1})."""

    algebra: HeckeAlgebra
    unknowns: list
    equations: list  # (s, v) labels
    rows: list

    @property
    def shape(self) -> tuple:
        return len(self.rows), len(self.unknowns)


def build_commutant_system(problem: CommutantProblem, max_ball: int | None = None) -> CommutantSystem:
    H = problem.algebra()
    system = problem.system
    N = problem.radius
    if N < 0:
        raise PreconditionError("radius must be non-negative")
    unknowns = ball(system, N, max_ball)
    outer = ball(system, N + 1, max_ball)
    index = {w: i for i, w in enumerate(unknowns)}
    one, zero = H.ring.one, H.ring.zero
    equations, rows = [], []
    for s in range(system.rank):
        for v in outer:
            # delta_v(T_s x - x T_s) = (lambda_s delta_v - rho_s delta_v)(x)
            phi = dict(H.dual_left(s, {v: one}))
            for u, c in H.dual_right(s, {v: one}).items():
                phi[u] = phi[u] - c if u in phi else -c
            row = {index[u]: c for u, c in phi.items() if u in index and c != zero}
            equations.append((s, v))
            rows.append(row)
    return CommutantSystem(H, unknowns, equations, rows)


def _rank(cs: CommutantSystem, allow_generic_radius: bool = False) -> int:
    ring = cs.algebra.ring
    n = len(cs.unknowns)
    if isinstance(ring, RationalRing):
        return rank_rational(cs.rows, n)
    if isinstance(ring, GenericRing):
        radius = max((w.length for w in cs.unknowns), default=0)
        if radius > GENERIC_RADIUS_CAP and not allow_generic_radius:
            raise BudgetExceededError(
                f"symbolic elimination is limited to radius {GENERIC_RADIUS_CAP}", GENERIC_RADIUS_CAP
            )
        dense = []
        for row in cs.rows:
            if row:
                d = [ring.zero] * n
                for j, c in row.items():
                    d[j] = c
                dense.append(d)
        return bareiss_rank(dense, n)
    raise PreconditionError("kernel dimensions need rational or generic parameters")


def centre_dimension_at(problem: CommutantProblem, max_ball: int | None = None, allow_generic_radius: bool = False) -> int:
    """Dimension of the space of central elements supported in B_N."""
    cs = build_commutant_system(problem, max_ball)
    return len(cs.unknowns) - _rank(cs, allow_generic_radius)


def centre_kernel(problem: CommutantProblem, max_ball: int | None = None) -> list:
    """Basis of the truncated commutant as Hecke elements (rational parameters only)."""
    cs = build_commutant_system(problem, max_ball)
    if not isinstance(cs.algebra.ring, RationalRing):
        raise PreconditionError("kernel bases are computed over rational parameters")
    H = cs.algebra
    out = []
    for vec in kernel_basis(cs.rows, len(cs.unknowns)):
        out.append(HeckeElement(H, {w: c for w, c in zip(cs.unknowns, vec) if c}))
    return out


# --- zero propagation ------------------------------------------------------


@dataclass(frozen=True)
class ZeroPropagationCertificate:
    """``steps``: flat conjugations then one +2 step; ``sides[i]`` says which coefficient is compared."""

    target: Element
    steps: GrowthCertificate
    sides: tuple

    def chain(self) -> list:
        return self.steps.elements()


def _check_vanishing_preconditions(w: Element):
    system = w.system
    tc = system.classification
    if not tc.irreducible:
        raise PreconditionError("zero propagation needs an irreducible system")
    if tc.kind == FINITE:
        raise PreconditionError("zero propagation needs an infinite system")
    if w.is_identity:
        raise PreconditionError("the identity coefficient never propagates")
    if tc.kind == AFFINE and is_translation(w):
        raise PreconditionError(f"{w} is a translation of an affine system")


def _side(prev: Element, s: int) -> str:
    if right_multiply(prev, s).length > prev.length:
        return "right"
    if left_multiply(s, prev).length > prev.length:
        return "left"
    raise AssertionError("flat step with s a descent on both sides")


def propagate_vanishing(w: Element, params=None, budget: int = DEFAULT_FLAT_BUDGET) -> ZeroPropagationCertificate:
    """Shortest flat-then-strict conjugation chain from w, annotated for the coefficient argument.

    ``params`` is accepted for interface symmetry; the certificate does not
    depend on the deformation parameters.
    """
    _check_vanishing_preconditions(w)
    result = _flat_search(w, budget, want_strict=True)
    if result is None:
        raise BudgetExceededError(f"flat closure of {w} exceeds {budget} elements", budget)
    if not isinstance(result, NotBad):
        raise PreconditionError(f"no strictly increasing exit from the flat closure of {w}")
    cert = result.certificate
    sides = tuple(_side(st.source, st.generator) for st in cert.steps[:-1]) + ("strict",)
    return ZeroPropagationCertificate(w, cert, sides)


def _symbolic_central_candidate(w: Element):
    """H over Z[a, b, X_v] and x = sum X_v T_v with v ranging over B_len(w)."""
    system = w.system
    support = ball(system, w.length)
    names = tuple(f"x{i}" for i in range(len(support)))
    H = HeckeAlgebra(system, Generic(names).parameters(system))
    variables = {v: H.ring.var(n) for v, n in zip(support, names)}
    x = HeckeElement(H, {v: variables[v] for v in support})
    return H, x, variables


def replay_zero_propagation(cert: ZeroPropagationCertificate) -> list:
    """Independent check via full Hecke products; returns problems (empty = valid)."""
    problems = []
    w = cert.target
    steps = cert.steps.steps
    if cert.steps.start != w:
        problems.append("certificate does not start at its target")
    if not steps:
        return problems + ["empty certificate"]
    if len(cert.sides) != len(steps):
        problems.append("one side annotation per step is required")
        return problems
    H, x, X = _symbolic_central_candidate(w)
    cur = w
    for i, (st, side) in enumerate(zip(steps, cert.sides)):
        s, src, dst = st.generator, st.source, st.target
        if src != cur:
            problems.append(f"step {i}: chain broken at {cur}")
        conj = left_multiply(s, right_multiply(src, s))
        if conj != dst:
            lab = w.system.labels[s]
            problems.append(f"step {i}: {lab}*{src}*{lab} is {conj}, not {dst}")
        Ts = H.t_basis([s])
        left, right = H.multiply(Ts, x), H.multiply(x, Ts)
        last = i == len(steps) - 1
        if last:
            if dst.length != src.length + 2 or side != "strict":
                problems.append(f"step {i}: final step must raise the length by 2")
                continue
            u = right_multiply(src, s)
            got_l, got_r = left.coefficient(u), right.coefficient(u)
            if got_l != H.ring.zero or got_r != X[src]:
                problems.append(f"step {i}: expected x_{src} = 0 from the {u}-coefficient")
        else:
            if dst.length != src.length or dst == src:
                problems.append(f"step {i}: flat steps must keep the length and move")
                continue
            if side == "right":
                u = right_multiply(src, s)
                want_l, want_r = X[dst], X[src]
            elif side == "left":
                u = left_multiply(s, src)
                want_l, want_r = X[src], X[dst]
            else:
                problems.append(f"step {i}: unknown side {side!r}")
                continue
            if u.length != src.length + 1:
                problems.append(f"step {i}: side {side} is not length-increasing")
            if left.coefficient(u) != want_l or right.coefficient(u) != want_r:
                problems.append(f"step {i}: {u}-coefficients do not identify x_{dst} with x_{src}")
        cur = dst
    return problems


# --- the combined report ------------------------------------------------------


def _random_rational_params(rng: random.Random) -> Rational:
    def pick():
        while True:
            q = Fraction(rng.randint(-40, 40), rng.randint(1, 17))
            if q not in (0, 1, -1):
                return q

    return Rational((pick(), pick()))


def assert_centre_trivial_up_to(system, N: int, params=None, seed: int = 0, max_ball: int | None = None) -> dict:
    """Run both routes up to radius N and report; ``passed`` is False on any discrepancy."""
    tc = system.classification
    if tc.kind != INDEFINITE or not tc.irreducible:
        raise PreconditionError("the centre assertion needs an irreducible system of indefinite type")
    params = params or Rational((Fraction(3), Fraction(2)))
    second = _random_rational_params(random.Random(seed))
    discrepancies = []

    problem = CommutantProblem(system, N, params)
    basis = centre_kernel(problem, max_ball) if not isinstance(params, Generic) else []
    dim = centre_dimension_at(problem, max_ball)
    dim2 = centre_dimension_at(CommutantProblem(system, N, second), max_ball)
    if dim != 1:
        discrepancies.append(f"kernel dimension {dim} at the given parameters")
    if dim2 != 1:
        discrepancies.append(f"kernel dimension {dim2} at the second parameter point")
    H = problem.algebra()
    one = identity(system)
    for vec in basis:
        if any(w != one for w in vec.coeffs):
            discrepancies.append("kernel vector supported outside the identity")
        for s in range(system.rank):
            if not H.commutator_with_generator(s, vec).is_zero():
                discrepancies.append("kernel vector fails to commute")

    certificates = []
    for w in ball(system, N, max_ball)[1:]:
        try:
            cert = propagate_vanishing(w)
        except (PreconditionError, BudgetExceededError) as exc:
            discrepancies.append(f"no certificate for {w}: {exc}")
            continue
        problems = replay_zero_propagation(cert)
        if problems:
            discrepancies.append(f"certificate for {w} fails replay: {problems[0]}")
        certificates.append(cert)

    return {
        "system": system,
        "N": N,
        "params": problem.algebra().params,
        "second_params": HeckeAlgebra(system, second).params,
        "kernel_dimension": dim,
        "kernel_dimension_second": dim2,
        "basis": basis,
        "certificates": certificates,
        "discrepancies": discrepancies,
        "passed": not discrepancies,
    }
