"""Finite posets, the lcm-lattice, degree posets, order and crosscut complexes."""

from __future__ import annotations

from .complexes import SimplicialComplex
from .errors import CapExceededError
from .monomials import Multidegree, MonomialIdeal, divides, properly_divides

MATRIX_LIMIT = 4096
TRANSITIVITY_CHECK_LIMIT = 600
LATTICE_CAP = 1 << 16
CHAIN_CAP = 1 << 20


class FinitePoset:
    """Finite poset on distinct hashable payloads with a comparator-defined order.

    Up- and down-sets are kept as integer bitmasks, materialized eagerly for
    small posets and memoized per element beyond MATRIX_LIMIT.  The order
    axioms are verified on construction (transitivity only up to a size
    threshold, since that check is cubic).
    """

    __slots__ = ("elements", "_cmp", "_pos", "_up", "_down")

    def __init__(self, elements, leq, *, validate: bool = True):
        self.elements = tuple(elements)
        self._cmp = leq
        self._pos = {e: i for i, e in enumerate(self.elements)}
        if len(self._pos) != len(self.elements):
            raise ValueError("poset elements must be distinct")
        n = len(self.elements)
        eager = n <= MATRIX_LIMIT
        self._up: list[int | None] = [None] * n
        self._down: list[int | None] = [None] * n
        if eager:
            for i in range(n):
                self.up_mask(i)
            for j in range(n):
                self.down_mask(j)
        if validate and eager:
            self._check_axioms(n)

    def _check_axioms(self, n: int) -> None:
        for i in range(n):
            if not self._up[i] >> i & 1:
                raise ValueError("order relation is not reflexive")
            both = self._up[i] & self._down[i] & ~(1 << i)
            if both:
                j = both.bit_length() - 1
                raise ValueError(
                    f"order relation is not antisymmetric on elements {i}, {j}"
                )
        if n <= TRANSITIVITY_CHECK_LIMIT:
            for i in range(n):
                rest = self._up[i] & ~(1 << i)
                while rest:
                    j = (rest & -rest).bit_length() - 1
                    if self._up[j] & ~self._up[i]:
                        raise ValueError("order relation is not transitive")
                    rest &= rest - 1

    def __len__(self) -> int:
        return len(self.elements)

    def index(self, payload) -> int:
        return self._pos[payload]

    def up_mask(self, i: int) -> int:
        """Bitmask of {j : element_i <= element_j}."""
        m = self._up[i]
        if m is None:
            a = self.elements[i]
            m = 0
            for j, b in enumerate(self.elements):
                if self._cmp(a, b):
                    m |= 1 << j
            self._up[i] = m
        return m

    def down_mask(self, j: int) -> int:
        m = self._down[j]
        if m is None:
            b = self.elements[j]
            m = 0
            for i, a in enumerate(self.elements):
                if self._cmp(a, b):
                    m |= 1 << i
            self._down[j] = m
        return m

    def leq(self, i: int, j: int) -> bool:
        return bool(self.up_mask(i) >> j & 1)

    def is_antichain(self, indices) -> bool:
        indices = list(indices)
        for a in range(len(indices)):
            for b in range(a + 1, len(indices)):
                i, j = indices[a], indices[b]
                if self.leq(i, j) or self.leq(j, i):
                    return False
        return True

    def covers(self) -> list[tuple[int, int]]:
        """Cover pairs (i, j) of the Hasse diagram, via transitive reduction."""
        out = []
        for i in range(len(self.elements)):
            strict_up = self.up_mask(i) & ~(1 << i)
            rest = strict_up
            while rest:
                j = (rest & -rest).bit_length() - 1
                between = strict_up & self.down_mask(j) & ~(1 << j)
                if not between:
                    out.append((i, j))
                rest &= rest - 1
        return sorted(out)


def _payload_json(e):
    if isinstance(e, tuple):
        return list(e)
    if isinstance(e, frozenset):
        return sorted(e)
    return e


def poset_to_json_dict(poset: FinitePoset) -> dict:
    return {
        "elements": [_payload_json(e) for e in poset.elements],
        "cover_relations": [list(c) for c in poset.covers()],
    }


class LcmLattice:
    """All lcms of generator subsets, divisibility-ordered, bottom element 1."""

    __slots__ = ("nvars", "elements", "_pos", "_poset")

    def __init__(self, nvars: int, elements):
        self.nvars = nvars
        self.elements = tuple(sorted(elements))
        self._pos = {e: i for i, e in enumerate(self.elements)}
        self._poset = None

    def __contains__(self, m) -> bool:
        return tuple(m) in self._pos

    def __len__(self) -> int:
        return len(self.elements)

    def index(self, m) -> int:
        return self._pos[tuple(m)]

    @property
    def bottom(self) -> Multidegree:
        return (0,) * self.nvars

    @property
    def top(self) -> Multidegree:
        return tuple(max(col) for col in zip(*self.elements))

    def join(self, a, b) -> Multidegree:
        return tuple(map(max, a, b))

    def poset(self) -> FinitePoset:
        if self._poset is None:
            self._poset = FinitePoset(self.elements, divides)
        return self._poset


def lcm_lattice(ideal: MonomialIdeal, *, max_elements: int = LATTICE_CAP) -> LcmLattice:
    """Join-closure of the generators over the bottom element."""
    elements = {(0,) * ideal.nvars}
    for g in ideal.generators:
        elements |= {tuple(map(max, e, g)) for e in elements}
        if len(elements) > max_elements:
            raise CapExceededError(f"lcm-lattice exceeds cap {max_elements}")
    return LcmLattice(ideal.nvars, elements)


def open_interval(lattice: LcmLattice, m) -> FinitePoset:
    """Lattice elements strictly between 1 and m under divisibility."""
    m = tuple(m)
    if m not in lattice:
        raise ValueError(f"{m} is not an lcm-lattice element")
    elems = [e for e in lattice.elements if any(e) and e != m and divides(e, m)]
    return FinitePoset(elems, divides)


def is_buchberger_degree(ideal: MonomialIdeal, m, *, lattice: LcmLattice | None = None) -> bool:
    """True when no generator properly divides the lattice element m."""
    lattice = lattice or lcm_lattice(ideal)
    m = tuple(m)
    if m not in lattice:
        raise ValueError(f"{m} is not an lcm-lattice element")
    return not any(properly_divides(g, m) for g in ideal.generators)


def buchberger_degree_poset(
    ideal: MonomialIdeal,
    *,
    lattice: LcmLattice | None = None,
    max_elements: int = LATTICE_CAP,
) -> FinitePoset:
    """Nontrivial lattice elements without a properly dividing generator."""
    lattice = lattice or lcm_lattice(ideal, max_elements=max_elements)
    gens = ideal.generators
    degrees = [
        e
        for e in lattice.elements
        if any(e) and not any(properly_divides(g, e) for g in gens)
    ]
    poset = FinitePoset(degrees, divides)
    # sanity: proper divisibility passes down, so this is a lower order ideal
    degree_set = set(degrees)
    for e in degrees:
        for e2 in lattice.elements:
            if any(e2) and divides(e2, e) and e2 not in degree_set:
                raise AssertionError("degree poset failed to be a lower order ideal")
    return poset


def agreement_poset(
    ideal: MonomialIdeal, m, *, lattice: LcmLattice | None = None
) -> FinitePoset:
    """Distinct variable-agreement sets of interval elements, ordered by inclusion.

    Each element strictly between 1 and m contributes the set of variable
    indices where its exponent equals the one of m.
    """
    lattice = lattice or lcm_lattice(ideal)
    interval = open_interval(lattice, m)
    m = tuple(m)
    sets = {
        frozenset(i for i, (a, b) in enumerate(zip(e, m)) if a == b)
        for e in interval.elements
    }
    elems = sorted(sets, key=lambda s: (len(s), sorted(s)))
    return FinitePoset(elems, frozenset.issubset)


def order_complex(poset: FinitePoset, *, max_chains: int = CHAIN_CAP) -> SimplicialComplex:
    """All chains of the poset as faces, on the poset's element indices."""
    n = len(poset)
    extension = sorted(range(n), key=lambda i: (bin(poset.down_mask(i)).count("1"), i))
    position = {v: p for p, v in enumerate(extension)}
    faces: list[tuple[int, ...]] = [()]
    frontier = [((v,), position[v]) for v in extension]
    count = 1
    while frontier:
        faces.extend(tuple(sorted(c)) for c, _ in frontier)
        count += len(frontier)
        if count > max_chains:
            raise CapExceededError(f"chain count exceeds cap {max_chains}")
        grown = []
        for chain_, last_pos in frontier:
            last = chain_[-1]
            for p in range(last_pos + 1, n):
                v = extension[p]
                if v != last and poset.leq(last, v):
                    grown.append((chain_ + (v,), p))
        frontier = grown
    return SimplicialComplex(faces, validate=False)


def crosscut_complex(
    poset: FinitePoset, antichain, *, max_faces: int = CHAIN_CAP
) -> SimplicialComplex:
    """Subsets of the antichain that are bounded inside the poset.

    Bounded means a common upper bound or a common lower bound exists; for an
    antichain of atoms only the upper bounds matter, since no two distinct
    atoms have a common lower bound.
    """
    members = tuple(antichain)
    if len(set(members)) != len(members):
        raise ValueError("antichain entries must be distinct")
    if not poset.is_antichain(members):
        raise ValueError("the given elements do not form an antichain")
    ups = [poset.up_mask(a) for a in members]
    downs = [poset.down_mask(a) for a in members]
    faces: list[tuple[int, ...]] = [()]
    frontier = [((k,), ups[k], downs[k]) for k in range(len(members))]
    count = 1
    while frontier:
        faces.extend(f for f, _, _ in frontier)
        count += len(frontier)
        if count > max_faces:
            raise CapExceededError(f"crosscut face count exceeds cap {max_faces}")
        grown = []
        for face, up, down in frontier:
            for k in range(face[-1] + 1, len(members)):
                u = up & ups[k]
                d = down & downs[k]
                if u or d:
                    grown.append((face + (k,), u, d))
        frontier = grown
    return SimplicialComplex(faces, validate=False)
