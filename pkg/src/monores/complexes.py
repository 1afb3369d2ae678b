"""Labeled simplicial complexes attached to a monomial ideal.

Faces are strictly increasing tuples of generator indices; every complex
stores the empty face.  Labels are lcms of the vertex generators, so label
monotonicity along inclusions holds by construction.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import chain, combinations

import networkx as nx

from .errors import CapExceededError
from .monomials import (
    Multidegree,
    MonomialIdeal,
    _as_multidegree,
    divides,
    lcm_of,
    monomial_to_text,
    properly_divides,
)

Face = tuple[int, ...]

FACE_CAP = 1 << 20
GENERATOR_CAP = 22
CLIQUE_CAP = 1 << 18


class SimplicialComplex:
    """Downward-closed family of sorted vertex tuples."""

    __slots__ = ("_by_dim", "_face_set")

    def __init__(self, faces, *, validate: bool = True):
        seen = set()
        for f in faces:
            t = tuple(f)
            if validate:
                if any(not isinstance(v, int) or v < 0 for v in t):
                    raise ValueError(f"face {t!r} has invalid vertices")
                if any(t[i] >= t[i + 1] for i in range(len(t) - 1)):
                    raise ValueError(f"face {t} is not strictly sorted")
            seen.add(t)
        seen.add(())
        if validate:
            for f in seen:
                for i in range(len(f)):
                    if f[:i] + f[i + 1:] not in seen:
                        raise ValueError(f"not downward closed: {f} lacks a facet")
        by_dim: dict[int, list[Face]] = {}
        for f in seen:
            by_dim.setdefault(len(f) - 1, []).append(f)
        self._by_dim = {k: tuple(sorted(v)) for k, v in by_dim.items()}
        self._face_set = frozenset(seen)

    @property
    def dim(self) -> int:
        return max(self._by_dim)

    def faces(self, k: int) -> tuple[Face, ...]:
        """Faces of dimension k in canonical (lexicographic) order."""
        return self._by_dim.get(k, ())

    def all_faces(self):
        for k in sorted(self._by_dim):
            yield from self._by_dim[k]

    def face_set(self) -> frozenset[Face]:
        return self._face_set

    def has_face(self, f) -> bool:
        return tuple(f) in self._face_set

    def __len__(self) -> int:
        return len(self._face_set)

    def __eq__(self, other) -> bool:
        if not isinstance(other, SimplicialComplex):
            return NotImplemented
        return self._face_set == other._face_set

    __hash__ = None

    def __repr__(self):
        return f"<{type(self).__name__} dim={self.dim} faces={len(self)}>"


class LabeledComplex(SimplicialComplex):
    """Simplicial complex on the generators of an ideal, faces labeled by lcm."""

    __slots__ = ("ideal", "_labels")

    def __init__(self, ideal: MonomialIdeal, faces, *, validate: bool = True):
        super().__init__(faces, validate=validate)
        self.ideal = ideal
        gens = ideal.generators
        if self.dim >= 0 and self.faces(0)[-1][0] >= len(gens):
            raise ValueError("vertex index out of range for the ideal")
        labels: dict[Face, Multidegree] = {(): (0,) * ideal.nvars}
        for k in range(0, self.dim + 1):
            for f in self.faces(k):
                labels[f] = tuple(map(max, labels[f[:-1]], gens[f[-1]]))
        self._labels = labels

    def label(self, f) -> Multidegree:
        return self._labels[tuple(f)]


@dataclass(frozen=True)
class SimpleGraph:
    """Loop-free undirected graph on vertices 0..vertex_count-1."""

    vertex_count: int
    edges: frozenset[tuple[int, int]]

    def __post_init__(self):
        for e in self.edges:
            i, j = e
            if not 0 <= i < j < self.vertex_count:
                raise ValueError(f"bad edge {e}")

    def has_edge(self, i: int, j: int) -> bool:
        return (min(i, j), max(i, j)) in self.edges

    def adjacency_masks(self) -> list[int]:
        masks = [0] * self.vertex_count
        for i, j in self.edges:
            masks[i] |= 1 << j
            masks[j] |= 1 << i
        return masks


def buchberger_graph(ideal: MonomialIdeal) -> SimpleGraph:
    """Edge {i, j} whenever no generator properly divides lcm(g_i, g_j)."""
    gens = ideal.generators
    edges = set()
    for i in range(len(gens)):
        for j in range(i + 1, len(gens)):
            l = lcm_of([gens[i], gens[j]])
            if not any(properly_divides(g, l) for g in gens):
                edges.add((i, j))
    return SimpleGraph(len(gens), frozenset(edges))


def buchberger_complex(
    ideal: MonomialIdeal,
    *,
    max_faces: int = FACE_CAP,
    max_generators: int = GENERATOR_CAP,
) -> LabeledComplex:
    """All generator subsets whose lcm no generator properly divides.

    Grown one dimension at a time by extending faces with larger vertices;
    the admissibility test is inherited by subsets, so the sweep is complete.
    """
    gens = ideal.generators
    if len(gens) > max_generators:
        raise CapExceededError(
            f"{len(gens)} generators exceed the enumeration cap {max_generators}"
        )
    zero = (0,) * ideal.nvars
    out: list[Face] = []
    frontier: list[tuple[Face, Multidegree]] = [((), zero)]
    count = 0
    while frontier:
        out.extend(f for f, _ in frontier)
        count += len(frontier)
        if count > max_faces:
            raise CapExceededError(f"face count exceeds cap {max_faces}")
        grown = []
        for face, label in frontier:
            for w in range(face[-1] + 1 if face else 0, len(gens)):
                lab = tuple(map(max, label, gens[w]))
                if any(properly_divides(g, lab) for g in gens):
                    continue
                grown.append((face + (w,), lab))
        frontier = grown
    return LabeledComplex(ideal, out)


def _scarf_faces(bu: LabeledComplex) -> list[Face]:
    """Filter Buchberger faces by the one-vertex add/remove label test.

    A face has a repeated lcm somewhere in the power set exactly when adding
    some outside vertex or dropping some member leaves the label unchanged,
    because equal labels propagate along one-step inclusions.
    """
    ideal = bu.ideal
    gens = ideal.generators
    keep = []
    for k in range(-1, bu.dim + 1):
        for face in bu.faces(k):
            label = bu.label(face)
            members = set(face)
            if any(
                v not in members and divides(gens[v], label) for v in range(len(gens))
            ):
                continue
            if any(
                lcm_of([gens[w] for w in face if w != v], ideal.nvars) == label
                for v in face
            ):
                continue
            keep.append(face)
    return keep


def scarf_complex(
    ideal: MonomialIdeal,
    *,
    max_faces: int = FACE_CAP,
    max_generators: int = GENERATOR_CAP,
) -> LabeledComplex:
    """Generator subsets whose lcm no other subset attains."""
    bu = buchberger_complex(ideal, max_faces=max_faces, max_generators=max_generators)
    return LabeledComplex(ideal, _scarf_faces(bu))


def taylor_complex(ideal: MonomialIdeal, *, max_faces: int = FACE_CAP) -> LabeledComplex:
    """The full simplex on the generators with lcm labels."""
    r = len(ideal.generators)
    if 1 << r > max_faces:
        raise CapExceededError(f"2^{r} faces exceed cap {max_faces}")
    faces = chain.from_iterable(combinations(range(r), k) for k in range(r + 1))
    return LabeledComplex(ideal, faces)


def clique_complex(
    graph: SimpleGraph, ideal: MonomialIdeal, *, max_faces: int = CLIQUE_CAP
) -> LabeledComplex:
    """Vertex subsets inducing complete subgraphs, labeled by lcm."""
    n = graph.vertex_count
    if n != len(ideal.generators):
        raise ValueError("graph vertices must match the ideal's generators")
    adj = graph.adjacency_masks()
    out: list[Face] = []
    frontier: list[tuple[Face, int]] = [((), 0)]
    count = 0
    while frontier:
        out.extend(f for f, _ in frontier)
        count += len(frontier)
        if count > max_faces:
            raise CapExceededError(f"clique count exceeds cap {max_faces}")
        grown = []
        for face, mask in frontier:
            for w in range(face[-1] + 1 if face else 0, n):
                if adj[w] & mask == mask:
                    grown.append((face + (w,), mask | 1 << w))
        frontier = grown
    return LabeledComplex(ideal, out)


def skeleton(complex_: SimplicialComplex, k: int) -> SimplicialComplex:
    """Faces of dimension at most k."""
    if k < -1:
        raise ValueError("skeleton dimension must be >= -1")
    faces = [f for d in range(-1, min(k, complex_.dim) + 1) for f in complex_.faces(d)]
    if isinstance(complex_, LabeledComplex):
        return LabeledComplex(complex_.ideal, faces, validate=False)
    return SimplicialComplex(faces, validate=False)


def subcomplex_dividing(complex_: LabeledComplex, m) -> LabeledComplex:
    """Faces whose label divides m (downward closed by label monotonicity)."""
    m = _as_multidegree(m, complex_.ideal.nvars)
    faces = [f for f in complex_.all_faces() if divides(complex_.label(f), m)]
    return LabeledComplex(complex_.ideal, faces, validate=False)


def f_vector(complex_: SimplicialComplex) -> tuple[int, ...]:
    """Face counts per dimension, empty face excluded."""
    return tuple(len(complex_.faces(k)) for k in range(0, complex_.dim + 1))


def is_connected(graph: SimpleGraph) -> bool:
    if graph.vertex_count <= 1:
        return True
    adj = graph.adjacency_masks()
    seen = 1
    stack = [0]
    while stack:
        v = stack.pop()
        rest = adj[v] & ~seen
        while rest:
            w = (rest & -rest).bit_length() - 1
            seen |= 1 << w
            stack.append(w)
            rest &= rest - 1
    return seen == (1 << graph.vertex_count) - 1


def is_planar(graph: SimpleGraph) -> bool:
    """Planarity, pre-filtered by the edge-count bound e <= 3v - 6."""
    v, e = graph.vertex_count, len(graph.edges)
    if v < 5:
        return True
    if e > 3 * v - 6:
        return False
    g = nx.Graph()
    g.add_nodes_from(range(v))
    g.add_edges_from(graph.edges)
    return nx.check_planarity(g, counterexample=False)[0]


def graph_to_dot(graph: SimpleGraph, labels=None) -> str:
    """DOT rendering with monomial vertex labels."""
    lines = ["graph monores {"]
    for v in range(graph.vertex_count):
        text = labels[v] if labels else str(v)
        lines.append(f'  {v} [label="{text}"];')
    for i, j in sorted(graph.edges):
        lines.append(f"  {i} -- {j};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def complex_to_json_dict(complex_: LabeledComplex) -> dict:
    """JSON shape: vertices as monomial text, faces per dimension, labels per face."""
    faces = {
        str(k): [list(f) for f in complex_.faces(k)]
        for k in range(0, complex_.dim + 1)
    }
    labels = {
        ",".join(map(str, f)): list(complex_.label(f))
        for k in range(0, complex_.dim + 1)
        for f in complex_.faces(k)
    }
    return {
        "vertices": [monomial_to_text(g) for g in complex_.ideal.generators],
        "faces": faces,
        "labels": labels,
    }
