"""Exact Coxeter groups and generic Hecke algebras."""

from .centre import (
    CommutantProblem,
    ZeroPropagationCertificate,
    assert_centre_trivial_up_to,
    build_commutant_system,
    centre_dimension_at,
    centre_kernel,
    propagate_vanishing,
    replay_zero_propagation,
)
from .conjugation import (
    conjugacy_class_bounded,
    flat_closure,
    is_translation,
    replay_growth_certificate,
    uplus_bfs,
    uplus_neighbors,
    w_bad_decide,
)
from .elements import (
    Element,
    ball,
    ball_enumerate,
    from_word,
    identity,
    inverse,
    left_descents,
    multiply,
    parse_word,
    right_descents,
)
from .errors import BudgetExceededError, CoxeterError, ParseError, PreconditionError, SystemMismatchError
from .hecke import HeckeAlgebra, HeckeElement
from .rings import Generic, Laurent, Rational, parse_parameter_spec
from .system import CoxeterMatrix, CoxeterSystem, load_system, parse_system

__version__ = "0.1.0"
