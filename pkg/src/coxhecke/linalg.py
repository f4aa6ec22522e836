"""Exact elimination for the sparse commutant systems.

Rank is computed with fraction-free (Bareiss) elimination over an integral
domain with exact division: Python ints, or sympy sparse polynomials.  The
intermediate entries stay minors of the input, so nothing blows up the way
naive cross-multiplication would.  Kernels are computed over the rationals
by reduced row echelon form.
"""

from __future__ import annotations

from fractions import Fraction
from math import lcm
from typing import Callable, Sequence

__all__ = ["bareiss_rank", "integer_rows", "rank_rational", "kernel_basis", "rref"]


def _int_exquo(a: int, b: int) -> int:
    q, r = divmod(a, b)
    if r:
        raise ArithmeticError("inexact division in fraction-free elimination")
    return q


def _poly_exquo(a, b):
    return a.exquo(b)


def bareiss_rank(rows: Sequence[Sequence], ncols: int, exquo: Callable | None = None) -> int:
    """Rank of a dense matrix over an integral domain by fraction-free elimination."""
    m = [list(r) for r in rows if any(r)]
    if not m:
        return 0
    if exquo is None:
        exquo = _int_exquo if isinstance(m[0][0], int) else _poly_exquo
    prev = next(x for x in m[0] if x) ** 0
    rank = 0
    nrows = len(m)
    for col in range(ncols):
        pivot = next((i for i in range(rank, nrows) if m[i][col]), None)
        if pivot is None:
            continue
        m[rank], m[pivot] = m[pivot], m[rank]
        p = m[rank][col]
        prow = m[rank]
        for i in range(rank + 1, nrows):
            row = m[i]
            f = row[col]
            if f:
                for j in range(col + 1, ncols):
                    row[j] = exquo(p * row[j] - f * prow[j], prev)
            else:
                for j in range(col + 1, ncols):
                    if row[j]:
                        row[j] = exquo(p * row[j], prev)
            row[col] = 0 * p
        prev = p
        rank += 1
        if rank == nrows:
            break
    return rank


def integer_rows(rows: Sequence[dict], ncols: int) -> list:
    """Dense integer rows, each sparse Fraction row scaled by its denominators' lcm."""
    out = []
    for row in rows:
        if not row:
            continue
        den = lcm(*(Fraction(c).denominator for c in row.values()))
        dense = [0] * ncols
        for j, c in row.items():
            c = Fraction(c) * den
            dense[j] = c.numerator
        out.append(dense)
    return out


def rank_rational(rows: Sequence[dict], ncols: int) -> int:
    return bareiss_rank(integer_rows(rows, ncols), ncols, _int_exquo)


def rref(rows: Sequence[dict], ncols: int):
    """Reduced row echelon form over Q; returns (rows, pivot columns)."""
    m = [{j: Fraction(c) for j, c in r.items() if c} for r in rows]
    m = [r for r in m if r]
    pivots = []
    done = []
    for col in range(ncols):
        idx = next((i for i, r in enumerate(m) if col in r), None)
        if idx is None:
            continue
        prow = m.pop(idx)
        inv = 1 / prow[col]
        prow = {j: c * inv for j, c in prow.items()}
        for group in (m, done):
            for k, r in enumerate(group):
                f = r.get(col)
                if f:
                    new = dict(r)
                    for j, c in prow.items():
                        v = new.get(j, 0) - f * c
                        if v:
                            new[j] = v
                        else:
                            new.pop(j, None)
                    group[k] = new
        m = [r for r in m if r]
        done.append(prow)
        pivots.append(col)
    return done, pivots


def kernel_basis(rows: Sequence[dict], ncols: int) -> list:
    """Basis of {x : row . x = 0 for all rows}, one vector per free column (value 1 there)."""
    reduced, pivots = rref(rows, ncols)
    pivot_set = set(pivots)
    basis = []
    for free in range(ncols):
        if free in pivot_set:
            continue
        vec = [Fraction(0)] * ncols
        vec[free] = Fraction(1)
        for row, p in zip(reduced, pivots):
            c = row.get(free)
            if c:
                vec[p] = -c
        basis.append(vec)
    return basis
