"""The sample systems used throughout the tests and documentation."""

from __future__ import annotations

from .system import CoxeterMatrix, CoxeterSystem

# 0 encodes an infinite label, as in system files
SAMPLE_ROWS = {
    "d_inf": [[1, 0], [0, 1]],
    "a2": [[1, 3], [3, 1]],
    "b2": [[1, 4], [4, 1]],
    "a2tilde": [[1, 3, 3], [3, 1, 3], [3, 3, 1]],
    "q444": [[1, 4, 4], [4, 1, 4], [4, 4, 1]],
    "r3_inf32": [[1, 0, 2], [0, 1, 3], [2, 3, 1]],
}


def sample(name: str) -> CoxeterSystem:
    return CoxeterSystem(CoxeterMatrix.from_rows(SAMPLE_ROWS[name]))


def d_inf():
    return sample("d_inf")


def a2():
    return sample("a2")


def b2():
    return sample("b2")


def a2tilde():
    """Affine triangle group (3,3,3)."""
    return sample("a2tilde")


def q444():
    """Compact hyperbolic triangle group (4,4,4)."""
    return sample("q444")


def r3_inf32():
    """Rank 3 with m_st = inf, m_tu = 3, m_su = 2 (indefinite, not compact)."""
    return sample("r3_inf32")
