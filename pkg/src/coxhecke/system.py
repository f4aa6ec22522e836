"""Coxeter matrices and systems: parsing, validation and diagram classification.

The system file is a JSON object with exactly two keys::

    {"generators": ["s", "t", "u"],
     "matrix": [[1, 4, 4], [4, 1, 4], [4, 4, 1]]}

``generators`` is a list of distinct non-empty strings, ``matrix`` a square
list of lists of non-negative integers of the same size, with ones on the
diagonal, symmetric, off-diagonal entries >= 2 or 0 (meaning infinity).
Anything else is rejected.

Classification is a table lookup: each irreducible component of the Coxeter
diagram is matched up to isomorphism against the finite and affine lists.
"""

from __future__ import annotations

import itertools
import json
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

import networkx as nx

from .errors import ParseError, PreconditionError

__all__ = [
    "INFINITY",
    "CoxeterMatrix",
    "CoxeterSystem",
    "TypeClass",
    "parse_system",
    "load_system",
    "irreducible_components",
    "is_spherical",
    "classify",
    "generator_conjugacy_classes",
    "perp",
]

INFINITY = math.inf
FINITE, AFFINE, INDEFINITE = "Finite", "Affine", "Indefinite"


def _is_int(x):
    return isinstance(x, int) and not isinstance(x, bool)


@dataclass(frozen=True)
class CoxeterMatrix:
    """Symmetric Coxeter matrix; infinite entries are ``INFINITY``."""

    entries: tuple

    def __post_init__(self):
        rows = self.entries
        n = len(rows)
        if n == 0:
            raise ParseError("Coxeter matrix must have positive rank", "matrix")
        for i, row in enumerate(rows):
            if len(row) != n:
                raise ParseError(f"row has length {len(row)}, expected {n}", f"matrix[{i}]")
        for i in range(n):
            if rows[i][i] != 1:
                raise ParseError(f"diagonal entry is {rows[i][i]}, expected 1", f"matrix[{i}][{i}]")
            for j in range(n):
                m = rows[i][j]
                if not (_is_int(m) or m == INFINITY):
                    raise ParseError(f"entry {m!r} is not an integer label", f"matrix[{i}][{j}]")
                if i != j and m < 2:
                    raise ParseError(f"off-diagonal entry {m} is below 2", f"matrix[{i}][{j}]")
                if rows[j][i] != m:
                    raise ParseError(
                        f"matrix is not symmetric: {m} != {rows[j][i]}", f"matrix[{i}][{j}]"
                    )

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence]) -> "CoxeterMatrix":
        """Build from nested sequences; 0 (file convention) or ``INFINITY`` means infinity."""
        return cls(tuple(tuple(INFINITY if m == 0 else m for m in row) for row in rows))

    @property
    def rank(self) -> int:
        return len(self.entries)

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def to_rows(self) -> list:
        """External encoding with 0 for infinity."""
        return [[0 if m == INFINITY else m for m in row] for row in self.entries]


@dataclass(frozen=True)
class TypeClass:
    kind: str
    irreducible: bool
    components: tuple
    compact_hyperbolic: bool
    component_types: tuple = ()

    def to_json(self, labels=None) -> dict:
        name = (lambda i: labels[i]) if labels else (lambda i: i)
        return {
            "kind": self.kind,
            "irreducible": self.irreducible,
            "compact_hyperbolic": self.compact_hyperbolic,
            "components": [[name(i) for i in comp] for comp in self.components],
            "component_types": list(self.component_types),
        }


def _default_labels(rank):
    if rank <= 3:
        return tuple("stu"[:rank])
    return tuple(f"s{i + 1}" for i in range(rank))


class CoxeterSystem:
    """A validated Coxeter system with its classification metadata.

    Instances are treated as immutable; derived data (geometric
    representation, normal-form caches) is attached lazily by other modules.
    """

    def __init__(self, matrix, labels: Sequence[str] | None = None):
        if not isinstance(matrix, CoxeterMatrix):
            matrix = CoxeterMatrix.from_rows(matrix)
        self.matrix = matrix
        self.rank = matrix.rank
        labels = tuple(labels) if labels is not None else _default_labels(self.rank)
        if len(labels) != self.rank:
            raise ParseError(f"{len(labels)} generator labels for rank {self.rank}", "generators")
        if len(set(labels)) != len(labels):
            raise ParseError("generator labels are not distinct", "generators")
        self.labels = labels
        self.generators = frozenset(range(self.rank))
        self._label_index = {lab: i for i, lab in enumerate(labels)}
        self._spherical_cache = {}
        self.classification = classify(self)
        self.generator_classes = generator_conjugacy_classes(self)
        self._class_of = {s: k for k, cls in enumerate(self.generator_classes) for s in cls}

    def __repr__(self):
        return f"CoxeterSystem({self.matrix.to_rows()}, labels={list(self.labels)})"

    def __eq__(self, other):
        return (
            isinstance(other, CoxeterSystem)
            and self.matrix == other.matrix
            and self.labels == other.labels
        )

    def __hash__(self):
        return hash((self.matrix, self.labels))

    def m(self, s: int, t: int):
        return self.matrix.entries[s][t]

    def index(self, label: str) -> int:
        try:
            return self._label_index[label]
        except KeyError:
            raise ParseError(f"unknown generator label {label!r}") from None

    def class_of(self, s: int) -> int:
        """Index of the generator conjugacy class containing ``s``."""
        return self._class_of[s]

    def subset(self, I: Iterable) -> frozenset:
        """Normalise a generator subset given by indices or labels."""
        out = set()
        for x in I:
            if isinstance(x, str):
                out.add(self.index(x))
            elif _is_int(x) and 0 <= x < self.rank:
                out.add(x)
            else:
                raise PreconditionError(f"invalid generator {x!r}")
        return frozenset(out)

    def to_json(self) -> dict:
        return {"generators": list(self.labels), "matrix": self.matrix.to_rows()}

    # convenience delegates
    def irreducible_components(self, I=None):
        return irreducible_components(self, self.generators if I is None else I)

    def is_spherical(self, I=None):
        return is_spherical(self, self.generators if I is None else I)

    def perp(self, I):
        return perp(self, I)

    @property
    def is_infinite(self) -> bool:
        return not self.is_spherical()


# --- parsing --------------------------------------------------------------


def parse_system(text: str) -> CoxeterSystem:
    """Parse system-file content (see module docstring for the grammar)."""
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc.msg}", f"line {exc.lineno}, column {exc.colno}") from None
    if not isinstance(data, dict):
        raise ParseError("top level must be an object", "$")
    extra = set(data) - {"generators", "matrix"}
    if extra:
        raise ParseError(f"unexpected fields {sorted(extra)}", "$")
    for key in ("generators", "matrix"):
        if key not in data:
            raise ParseError(f"missing field {key!r}", "$")
    gens = data["generators"]
    if not isinstance(gens, list) or not gens:
        raise ParseError("generators must be a non-empty array", "generators")
    for i, g in enumerate(gens):
        if not isinstance(g, str) or not g:
            raise ParseError("generator labels must be non-empty strings", f"generators[{i}]")
    rows = data["matrix"]
    if not isinstance(rows, list):
        raise ParseError("matrix must be an array of arrays", "matrix")
    if len(rows) != len(gens):
        raise ParseError(f"matrix has {len(rows)} rows for {len(gens)} generators", "matrix")
    for i, row in enumerate(rows):
        if not isinstance(row, list):
            raise ParseError("matrix rows must be arrays", f"matrix[{i}]")
        for j, m in enumerate(row):
            if not _is_int(m) or m < 0:
                raise ParseError(f"entry {m!r} is not a non-negative integer", f"matrix[{i}][{j}]")
    return CoxeterSystem(CoxeterMatrix.from_rows(rows), gens)


def load_system(path) -> CoxeterSystem:
    with open(path, encoding="utf-8") as fh:
        return parse_system(fh.read())


# --- diagram structure ----------------------------------------------------


def irreducible_components(system: CoxeterSystem, I) -> list:
    """Connected components of the diagram restricted to ``I`` (edges where m >= 3)."""
    I = system.subset(I)
    seen = set()
    comps = []
    for start in sorted(I):
        if start in seen:
            continue
        comp = {start}
        stack = [start]
        while stack:
            s = stack.pop()
            for t in I:
                if t not in comp and system.m(s, t) >= 3:
                    comp.add(t)
                    stack.append(t)
        seen |= comp
        comps.append(frozenset(comp))
    return comps


def _diagram(system, comp) -> nx.Graph:
    g = nx.Graph()
    g.add_nodes_from(comp)
    for s, t in itertools.combinations(sorted(comp), 2):
        m = system.m(s, t)
        if m >= 3:
            g.add_edge(s, t, m=m)
    return g


def _graph(n, edges):
    g = nx.Graph()
    g.add_nodes_from(range(n))
    for a, b, m in edges:
        g.add_edge(a, b, m=m)
    return g


def _path(labels):
    return _graph(len(labels) + 1, [(i, i + 1, m) for i, m in enumerate(labels)])


def _star(arms):
    """Tree with a centre node 0 and arms of the given lengths, all labels 3."""
    edges = []
    nxt = 1
    for length in arms:
        prev = 0
        for _ in range(length):
            edges.append((prev, nxt, 3))
            prev = nxt
            nxt += 1
    return _graph(nxt, edges)


def _fork_path(n, tail_label=3, fork_both=False):
    """Nodes 0..n-1: 0-2 and 1-2 fork into a path from 2; optionally a fork at the far end too."""
    edges = [(0, 2, 3), (1, 2, 3)]
    if fork_both:
        edges += [(i, i + 1, 3) for i in range(2, n - 3)]
        edges += [(n - 3, n - 2, 3), (n - 3, n - 1, 3)]
    else:
        edges += [(i, i + 1, 3) for i in range(2, n - 1)]
        a, b, _ = edges[-1]
        edges[-1] = (a, b, tail_label)
    return _graph(n, edges)


@lru_cache(maxsize=None)
def _finite_table(n):
    """(name, diagram) pairs of connected finite-type diagrams of rank n."""
    table = []
    if n == 1:
        return (("A1", _graph(1, [])),)
    table.append((f"A{n}", _path([3] * (n - 1))))
    if n >= 3:
        table.append((f"B{n}", _path([3] * (n - 2) + [4])))
    if n >= 4:
        table.append((f"D{n}", _fork_path(n)))
    if n == 3:
        table.append(("H3", _path([5, 3])))
    if n == 4:
        table.append(("F4", _path([3, 4, 3])))
        table.append(("H4", _path([5, 3, 3])))
    arms = {6: (1, 2, 2), 7: (1, 2, 3), 8: (1, 2, 4)}
    if n in arms:
        table.append((f"E{n}", _star(arms[n])))
    return tuple(table)


@lru_cache(maxsize=None)
def _affine_table(n):
    """(name, diagram) pairs of connected affine diagrams with n nodes (n >= 3)."""
    table = [(f"~A{n - 1}", _graph(n, [(i, (i + 1) % n, 3) for i in range(n)]))]
    if n == 3:
        table.append(("~G2", _path([6, 3])))
        table.append(("~C2", _path([4, 4])))
    if n >= 4:
        table.append((f"~B{n - 1}", _fork_path(n, tail_label=4)))
        table.append((f"~C{n - 1}", _path([4] + [3] * (n - 3) + [4])))
    if n == 5:
        table.append(("~D4", _star((1, 1, 1, 1))))
        table.append(("~F4", _path([3, 3, 4, 3])))
    if n >= 6:
        table.append((f"~D{n - 1}", _fork_path(n, fork_both=True)))
    arms = {7: (2, 2, 2), 8: (1, 3, 3), 9: (1, 2, 5)}
    if n in arms:
        table.append((f"~E{n - 1}", _star(arms[n])))
    return tuple(table)


def _same_label(a, b):
    return a["m"] == b["m"]


def _match(diagram, table):
    for name, ref in table:
        if nx.is_isomorphic(diagram, ref, edge_match=_same_label):
            return name
    return None


def _component_type(system, comp):
    """Return (kind, name) for a connected component."""
    n = len(comp)
    if n == 2:
        s, t = sorted(comp)
        m = system.m(s, t)
        if m == INFINITY:
            return AFFINE, "~A1"
        return FINITE, {3: "A2", 4: "B2", 6: "G2"}.get(m, f"I2({m})")
    diagram = _diagram(system, comp)
    name = _match(diagram, _finite_table(n))
    if name is not None:
        return FINITE, name
    if n >= 3:
        name = _match(diagram, _affine_table(n))
        if name is not None:
            return AFFINE, name
    return INDEFINITE, None


def is_spherical(system: CoxeterSystem, I) -> bool:
    """True iff W_I is finite, i.e. every component of I is of finite type."""
    I = system.subset(I)
    cache = system._spherical_cache
    if I not in cache:
        cache[I] = all(
            _component_type(system, comp)[0] == FINITE for comp in irreducible_components(system, I)
        )
    return cache[I]


def classify(system: CoxeterSystem) -> TypeClass:
    comps = irreducible_components(system, system.generators)
    types = [_component_type(system, c) for c in comps]
    irreducible = len(comps) == 1
    if all(kind == FINITE for kind, _ in types):
        kind = FINITE
    elif irreducible and types[0][0] == AFFINE:
        kind = AFFINE
    else:
        kind = INDEFINITE
    # sphericity is hereditary, so checking the maximal proper subsets covers all of them
    compact = (
        kind == INDEFINITE
        and irreducible
        and all(is_spherical(system, system.generators - {s}) for s in system.generators)
    )
    return TypeClass(
        kind=kind,
        irreducible=irreducible,
        components=tuple(tuple(sorted(c)) for c in comps),
        compact_hyperbolic=compact,
        component_types=tuple(name for _, name in types),
    )


def generator_conjugacy_classes(system: CoxeterSystem) -> tuple:
    """Partition of S: s ~ t iff joined by a path of edges with odd finite labels."""
    parent = list(range(system.rank))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for s, t in itertools.combinations(range(system.rank), 2):
        m = system.m(s, t)
        if m != INFINITY and m % 2 == 1:
            parent[find(s)] = find(t)
    groups = {}
    for s in range(system.rank):
        groups.setdefault(find(s), []).append(s)
    return tuple(sorted(tuple(g) for g in groups.values()))


def perp(system: CoxeterSystem, I) -> frozenset:
    """Generators outside I commuting with every generator of I."""
    I = system.subset(I)
    return frozenset(s for s in system.generators - I if all(system.m(s, t) == 2 for t in I))
