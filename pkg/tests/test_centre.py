from fractions import Fraction

import pytest

from coxhecke import samples
from coxhecke.centre import (
    CommutantProblem,
    ZeroPropagationCertificate,
    assert_centre_trivial_up_to,
    build_commutant_system,
    centre_dimension_at,
    centre_kernel,
    propagate_vanishing,
    replay_zero_propagation,
)
from coxhecke.conjugation import ConjugationStep, GrowthCertificate, is_translation
from coxhecke.elements import ball, identity, parse_word
from coxhecke.errors import BudgetExceededError, PreconditionError
from coxhecke.hecke import HeckeAlgebra, HeckeElement
from coxhecke.rings import Generic, Rational

from oracles import dense_rank

A32 = Rational((3, 2))


def w(system, text):
    return parse_word(system, text)


def dim_by_products(system, N, params):
    """Centre dimension on span(B_N) from commutators computed with full products."""
    H = HeckeAlgebra(system, params)
    support = ball(system, N)
    rows = {}
    for j, u in enumerate(support):
        Tu = H.t_basis(u)
        for s in range(system.rank):
            Ts = H.t_basis([s])
            c = H.multiply(Ts, Tu) - H.multiply(Tu, Ts)
            for v, coeff in c.items():
                rows.setdefault((s, v), [0] * len(support))[j] = coeff
    return len(support) - dense_rank(list(rows.values()), len(support))


def test_radius_zero(systems):
    for system in systems.values():
        assert centre_dimension_at(CommutantProblem(system, 0, A32)) == 1


def test_system_shape(d_inf):
    cs = build_commutant_system(CommutantProblem(d_inf, 2, A32))
    assert cs.shape == (14, 5)
    assert len(cs.equations) == 14
    with pytest.raises(PreconditionError):
        build_commutant_system(CommutantProblem(d_inf, -1, A32))


def test_dimension_examples(a2, q444):
    assert centre_dimension_at(CommutantProblem(a2, 3, A32)) == 3
    assert centre_dimension_at(CommutantProblem(q444, 5, A32)) == 1


@pytest.mark.parametrize(
    "name,N",
    [("d_inf", 4), ("a2", 3), ("b2", 4), ("a2tilde", 2), ("q444", 3), ("r3_inf32", 3)],
)
def test_dimension_matches_product_oracle(name, N):
    system = samples.sample(name)
    params = Rational((Fraction(5, 3), Fraction(-2, 7)))
    assert centre_dimension_at(CommutantProblem(system, N, params)) == dim_by_products(system, N, params)


@pytest.mark.parametrize("name", ["d_inf", "b2", "q444", "r3_inf32"])
def test_kernel_vectors_commute_and_embed(name):
    system = samples.sample(name)
    prev = None
    for N in range(4):
        problem = CommutantProblem(system, N, A32)
        H = problem.algebra()
        kernel = centre_kernel(problem)
        assert len(kernel) == centre_dimension_at(problem)
        for vec in kernel:
            for s in range(system.rank):
                assert H.commutator_with_generator(s, vec).is_zero()
        if prev is not None:
            # every earlier central element is still in the span of the new kernel
            unknowns = ball(system, N)
            basis = [[vec.coefficient(u) for u in unknowns] for vec in kernel]
            for old in prev:
                row = [old.coefficient(u) for u in unknowns]
                assert dense_rank(basis + [row], len(unknowns)) == len(basis)
        prev = kernel


def test_dimension_trends(d_inf, b2, q444, r3):
    dims = [centre_dimension_at(CommutantProblem(d_inf, N, A32)) for N in range(7)]
    assert dims == sorted(dims) and dims[-1] > 1
    assert [centre_dimension_at(CommutantProblem(q444, N, A32)) for N in range(5)] == [1] * 5
    assert [centre_dimension_at(CommutantProblem(r3, N, A32)) for N in range(5)] == [1] * 5
    assert [centre_dimension_at(CommutantProblem(b2, N, A32)) for N in range(4, 7)] == [5] * 3


def test_indefinite_kernel_is_scalars(q444):
    (vec,) = centre_kernel(CommutantProblem(q444, 4, A32))
    assert vec.support() == [identity(q444)]


def test_generic_agrees_with_rational(d_inf, a2, q444):
    for system in (d_inf, a2, q444):
        for N in range(3):
            g = centre_dimension_at(CommutantProblem(system, N, Generic()))
            assert g == centre_dimension_at(CommutantProblem(system, N, A32))
    with pytest.raises(BudgetExceededError):
        centre_dimension_at(CommutantProblem(q444, 3, Generic()))
    with pytest.raises(PreconditionError):
        centre_kernel(CommutantProblem(q444, 1, Generic()))


def test_propagation_examples(q444, d_inf, a2):
    cert = propagate_vanishing(w(q444, "s"))
    assert [str(e) for e in cert.chain()] == ["s", "tst"]
    assert cert.sides == ("strict",)
    assert replay_zero_propagation(cert) == []
    cert = propagate_vanishing(w(d_inf, "s"))
    assert [str(e) for e in cert.chain()] == ["s", "tst"]
    with pytest.raises(PreconditionError, match="translation"):
        propagate_vanishing(w(d_inf, "st"))
    with pytest.raises(PreconditionError):
        propagate_vanishing(w(a2, "s"))
    with pytest.raises(PreconditionError):
        propagate_vanishing(identity(q444))


@pytest.mark.parametrize("name", ["q444", "r3_inf32", "a2tilde", "d_inf"])
def test_every_certificate_replays(name):
    system = samples.sample(name)
    affine = system.classification.kind == "Affine"
    for x in ball(system, 4)[1:]:
        if affine and is_translation(x):
            continue
        cert = propagate_vanishing(x)
        assert replay_zero_propagation(cert) == []
        lengths = [e.length for e in cert.chain()]
        assert lengths[:-1] == [x.length] * (len(lengths) - 1) and lengths[-1] == x.length + 2
        chain = cert.chain()
        assert all(a != b for a, b in zip(chain, chain[1:]))


def test_flat_prefix_certificate(r3, q444):
    # sut and tsu only grow after a length-preserving conjugation, one on each side
    cert = propagate_vanishing(w(r3, "sut"))
    assert cert.sides == ("right", "strict")
    assert propagate_vanishing(w(r3, "tsu")).sides == ("left", "strict")
    assert replay_zero_propagation(cert) == []
    assert len(propagate_vanishing(w(q444, "ststu")).sides) == 2


def test_tampered_side_fails_replay(r3, q444):
    cert = propagate_vanishing(w(r3, "sut"))
    flipped = ZeroPropagationCertificate(cert.target, cert.steps, ("left", "strict"))
    assert replay_zero_propagation(flipped)
    short = ZeroPropagationCertificate(cert.target, cert.steps, cert.sides[:-1])
    assert replay_zero_propagation(short)
    wrong_target = ZeroPropagationCertificate(w(r3, "tsu"), cert.steps, cert.sides)
    assert replay_zero_propagation(wrong_target)
    s = w(q444, "s")
    fake = ConjugationStep(0, s, s)
    lazy = ZeroPropagationCertificate(s, GrowthCertificate(s, (fake,)), ("strict",))
    assert replay_zero_propagation(lazy)


def test_assert_report(q444):
    report = assert_centre_trivial_up_to(q444, 3)
    assert report["passed"] and not report["discrepancies"]
    assert report["kernel_dimension"] == report["kernel_dimension_second"] == 1
    assert len(report["certificates"]) == len(ball(q444, 3)) - 1
    assert report["second_params"] != report["params"]
    assert all(isinstance(v, HeckeElement) for v in report["basis"])


def test_assert_rejects_non_indefinite(a2, d_inf):
    with pytest.raises(PreconditionError):
        assert_centre_trivial_up_to(a2, 2)
    with pytest.raises(PreconditionError):
        assert_centre_trivial_up_to(d_inf, 2)
