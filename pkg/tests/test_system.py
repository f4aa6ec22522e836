import itertools
import json
import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from coxhecke.errors import ParseError
from coxhecke.system import (
    AFFINE,
    FINITE,
    INDEFINITE,
    CoxeterMatrix,
    CoxeterSystem,
    classify,
    load_system,
    parse_system,
)

from conftest import SYSTEMS_DIR


def system(rows):
    return CoxeterSystem(CoxeterMatrix.from_rows(rows))


def test_parse_examples():
    a2 = parse_system('{"generators": ["s", "t"], "matrix": [[1, 3], [3, 1]]}')
    assert a2.rank == 2 and a2.classification.kind == FINITE
    assert a2.classification.component_types == ("A2",)
    assert load_system(SYSTEMS_DIR / "a2tilde.json").classification.kind == AFFINE
    q = load_system(SYSTEMS_DIR / "q444.json").classification
    assert q.kind == INDEFINITE and q.compact_hyperbolic


@pytest.mark.parametrize(
    "text,where",
    [
        ('{"generators": ["s", "t"], "matrix": [[1, 3], [4, 1]]}', "matrix[0][1]"),
        ('{"generators": ["s", "t"], "matrix": [[2, 3], [3, 1]]}', "matrix[0][0]"),
        ('{"generators": ["s", "t"], "matrix": [[1, 1], [1, 1]]}', "matrix[0][1]"),
        ('{"generators": ["s", "t"], "matrix": [[1, 3]]}', "matrix"),
        ('{"generators": ["s", "s"], "matrix": [[1, 3], [3, 1]]}', "generators"),
        ('{"generators": ["s", "t"], "matrix": [[1, -3], [-3, 1]]}', "matrix[0][1]"),
        ('{"generators": ["s", "t"], "matrix": [[1, 3.0], [3.0, 1]]}', "matrix[0][1]"),
        ('{"generators": ["s", "t"], "matrix": [[1, 3], [3, 1]], "extra": 1}', None),
        ('{"matrix": [[1]]}', None),
        ("[1, 2]", None),
        ("not json", None),
    ],
)
def test_parse_rejects(text, where):
    with pytest.raises(ParseError) as exc:
        parse_system(text)
    if where:
        assert where in str(exc.value)


def test_infinity_round_trip():
    d = system([[1, 0], [0, 1]])
    assert d.m(0, 1) == math.inf
    assert d.matrix.to_rows() == [[1, 0], [0, 1]]
    assert parse_system(json.dumps(d.to_json())) == d


def test_irreducible_components(a2tilde, r3):
    assert a2tilde.irreducible_components({0, 1, 2}) == [frozenset({0, 1, 2})]
    assert r3.irreducible_components({0, 2}) == [frozenset({0}), frozenset({2})]
    assert r3.irreducible_components(set()) == []


def test_is_spherical(d_inf, q444):
    assert not d_inf.is_spherical({0, 1})
    assert not q444.is_spherical({0, 1, 2})
    assert all(q444.is_spherical(I) for I in itertools.combinations(range(3), 2))
    assert q444.is_spherical(set())


@pytest.mark.parametrize(
    "rows,kind,types",
    [
        ([[1, 0], [0, 1]], AFFINE, ("~A1",)),
        ([[1, 3, 3], [3, 1, 3], [3, 3, 1]], AFFINE, ("~A2",)),
        ([[1, 4, 2], [4, 1, 4], [2, 4, 1]], AFFINE, ("~C2",)),
        ([[1, 3, 2], [3, 1, 6], [2, 6, 1]], AFFINE, ("~G2",)),
        ([[1, 3, 2], [3, 1, 5], [2, 5, 1]], FINITE, ("H3",)),
        ([[1, 3, 2], [3, 1, 4], [2, 4, 1]], FINITE, ("B3",)),
        ([[1, 2], [2, 1]], FINITE, ("A1", "A1")),
        ([[1, 0, 2], [0, 1, 3], [2, 3, 1]], INDEFINITE, (None,)),
        ([[1, 7], [7, 1]], FINITE, ("I2(7)",)),
    ],
)
def test_classify_table(rows, kind, types):
    tc = system(rows).classification
    assert tc.kind == kind
    assert tc.component_types == types


def test_larger_tables():
    e8 = [[1 if i == j else 2 for j in range(8)] for i in range(8)]
    for i, j in [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (2, 7)]:
        e8[i][j] = e8[j][i] = 3
    assert system(e8).classification.component_types == ("E8",)
    # affine E8 extends the long arm
    e9 = [r + [2] for r in e8] + [[2] * 9]
    e9[8][8] = 1
    e9[6][8] = e9[8][6] = 3
    tc = system(e9).classification
    assert tc.kind == AFFINE and tc.component_types == ("~E8",)
    d4 = [[1, 3, 3, 3], [3, 1, 2, 2], [3, 2, 1, 2], [3, 2, 2, 1]]
    assert system(d4).classification.component_types == ("D4",)


def test_compact_hyperbolic_flag(r3, q444, a2tilde):
    assert not r3.classification.compact_hyperbolic
    assert q444.classification.compact_hyperbolic
    assert not a2tilde.classification.compact_hyperbolic


def test_generator_classes(a2tilde, q444, d_inf, r3, b2):
    assert a2tilde.generator_classes == ((0, 1, 2),)
    assert len(q444.generator_classes) == 3
    assert len(d_inf.generator_classes) == 2
    assert r3.generator_classes == ((0,), (1, 2))
    assert len(b2.generator_classes) == 2


def test_perp(a2tilde, r3):
    assert a2tilde.perp({0}) == frozenset()
    assert r3.perp({0}) == frozenset({2})
    assert r3.perp(set()) == frozenset({0, 1, 2})


def test_affine_vertex_removal_spherical(a2tilde):
    for rows in ([[1, 3, 3], [3, 1, 3], [3, 3, 1]], [[1, 4, 2], [4, 1, 4], [2, 4, 1]], [[1, 3, 2], [3, 1, 6], [2, 6, 1]]):
        s = system(rows)
        assert all(s.is_spherical(set(range(3)) - {i}) for i in range(3))


labels = st.sampled_from([2, 2, 3, 3, 4, 5, 6, 0])


@st.composite
def matrices(draw, max_rank=4):
    n = draw(st.integers(1, max_rank))
    rows = [[1] * n for _ in range(n)]
    for i, j in itertools.combinations(range(n), 2):
        rows[i][j] = rows[j][i] = draw(labels)
    return rows


@settings(max_examples=60, deadline=None)
@given(matrices(), st.randoms())
def test_classification_invariant_under_relabeling(rows, rnd):
    n = len(rows)
    perm = list(range(n))
    rnd.shuffle(perm)
    permuted = [[rows[perm[i]][perm[j]] for j in range(n)] for i in range(n)]
    a, b = system(rows).classification, system(permuted).classification
    assert (a.kind, a.irreducible, a.compact_hyperbolic) == (b.kind, b.irreducible, b.compact_hyperbolic)
    assert sorted(map(str, a.component_types)) == sorted(map(str, b.component_types))


@settings(max_examples=60, deadline=None)
@given(matrices())
def test_classes_stay_inside_components(rows):
    s = system(rows)
    comps = s.irreducible_components(range(s.rank))
    for cls in s.generator_classes:
        assert any(set(cls) <= c for c in comps)
    tc = s.classification
    if tc.compact_hyperbolic:
        assert tc.kind == INDEFINITE
        assert all(s.is_spherical(set(c)) for k in range(s.rank) for c in itertools.combinations(range(s.rank), k))
    assert classify(s) == tc


def _gram_eigenvalues(rows):
    np = pytest.importorskip("numpy")
    n = len(rows)
    g = np.array([[1.0 if i == j else (-1.0 if rows[i][j] == 0 else -math.cos(math.pi / rows[i][j])) for j in range(n)] for i in range(n)])
    return np.linalg.eigvalsh(g)


@settings(max_examples=150, deadline=None)
@given(matrices(max_rank=5))
def test_classification_matches_gram_signature(rows):
    s = system(rows)
    tc = s.classification
    eig = _gram_eigenvalues(rows)
    if tc.kind == FINITE:
        assert eig.min() > 1e-9
    elif tc.kind == AFFINE:
        assert abs(eig.min()) < 1e-9 and (eig > 1e-9).sum() == len(rows) - 1
    elif tc.irreducible:
        assert eig.min() < -1e-9 or (abs(eig) < 1e-9).sum() > 1
