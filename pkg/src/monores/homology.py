"""Exact reduced simplicial homology over the rationals, prime fields, and the integers.

Ranks are computed with exact integer arithmetic only; characteristic zero
uses division-free cross-multiplication with per-row gcd reduction, prime
characteristics use modular elimination.  Complexes are first shrunk by
elementary collapses, which preserve the homotopy type and hence every rank
and torsion invariant reported here.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from math import gcd

from .errors import CapExceededError

DENSE_COLUMN_LIMIT = 500
INTEGRAL_CELL_CAP = 4096
DEFAULT_CHARACTERISTICS = (0, 2, 3, 32003)


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


@dataclass(frozen=True)
class FieldSpec:
    """Coefficient field: characteristic 0 (exact rationals) or a prime p."""

    characteristic: int = 0

    def __post_init__(self):
        c = self.characteristic
        if c != 0 and not _is_prime(c):
            raise ValueError(f"characteristic must be 0 or prime, got {c}")


DEFAULT_FIELDS = tuple(FieldSpec(c) for c in DEFAULT_CHARACTERISTICS)


@dataclass(frozen=True)
class BoundaryMatrix:
    """Signed incidence matrix from k-faces (columns) to (k-1)-faces (rows).

    The entry for (G, F) with G = F minus its vertex at position p carries
    sign (-1)^p; rows and columns follow the canonical face order.
    """

    rows: int
    cols: int
    entries: tuple[tuple[int, int, int], ...]

    def to_dense(self) -> list[list[int]]:
        m = [[0] * self.cols for _ in range(self.rows)]
        for r, c, v in self.entries:
            m[r][c] = v
        return m

    def triplet_text(self) -> str:
        lines = [f"{self.rows} {self.cols}"]
        lines.extend(f"{r} {c} {v}" for r, c, v in self.entries)
        return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class HomologyRanks:
    """Reduced Betti numbers indexed from dimension -1 upward."""

    ranks: tuple[int, ...]

    def betti(self, k: int) -> int:
        i = k + 1
        return self.ranks[i] if 0 <= i < len(self.ranks) else 0

    @property
    def trivial(self) -> bool:
        return not any(self.ranks)


@dataclass(frozen=True)
class IntegralHomology:
    """Free ranks and nontrivial invariant factors, indexed from dimension -1."""

    ranks: tuple[int, ...]
    torsion: tuple[tuple[int, ...], ...]

    @property
    def torsion_free(self) -> bool:
        return not any(self.torsion)

    @property
    def trivial(self) -> bool:
        return not any(self.ranks) and self.torsion_free


def boundary_matrices(complex_) -> list[BoundaryMatrix]:
    """The maps from k-faces down to (k-1)-faces for k = 0..dim.

    Index 0 is the augmentation onto the empty face, so the composite of any
    two consecutive matrices is zero over the integers.
    """
    mats = []
    for k in range(0, complex_.dim + 1):
        rows = {f: i for i, f in enumerate(complex_.faces(k - 1))}
        cols = complex_.faces(k)
        entries = []
        for c, f in enumerate(cols):
            for p in range(len(f)):
                facet = f[:p] + f[p + 1:]
                entries.append((rows[facet], c, -1 if p % 2 else 1))
        mats.append(BoundaryMatrix(len(rows), len(cols), tuple(sorted(entries))))
    return mats


# ---------------------------------------------------------------------------
# elementary collapses

def collapsed_core(faces) -> set[tuple[int, ...]]:
    """Greedily remove free face / unique-coface pairs.

    A nonempty face with exactly one face directly above it is removable
    together with that coface; the result is homotopy equivalent to the
    input.  Incidence counts are maintained incrementally and candidates are
    processed in a fixed order, so the core is deterministic.
    """
    present = {tuple(f) for f in faces}
    present.add(())
    cofaces: dict[tuple[int, ...], set[int]] = {f: set() for f in present}
    for f in present:
        for p in range(len(f)):
            cofaces[f[:p] + f[p + 1:]].add(f[p])
    queue = deque(
        sorted(
            (f for f in present if f and len(cofaces[f]) == 1),
            key=lambda f: (-len(f), f),
        )
    )
    while queue:
        f = queue.popleft()
        if f not in present or len(cofaces[f]) != 1:
            continue
        (v,) = cofaces[f]
        g = tuple(sorted(f + (v,)))
        present.discard(f)
        present.discard(g)
        for removed in (g, f):
            for p in range(len(removed)):
                facet = removed[:p] + removed[p + 1:]
                if facet in present:
                    s = cofaces[facet]
                    s.discard(removed[p])
                    if len(s) == 1 and facet:
                        queue.append(facet)
    return present


# ---------------------------------------------------------------------------
# exact rank computation

def _rank_dense(rows: list[dict[int, int]], ncols: int, p: int) -> int:
    m = [[0] * ncols for _ in rows]
    for i, row in enumerate(rows):
        for c, v in row.items():
            m[i][c] = v % p if p else v
    rank = 0
    nrows = len(m)
    for col in range(ncols):
        piv = next((r for r in range(rank, nrows) if m[r][col]), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        pivot_row, pv = m[rank], m[rank][col]
        for r in range(rank + 1, nrows):
            a = m[r][col]
            if not a:
                continue
            row = m[r]
            if p:
                for c in range(col, ncols):
                    row[c] = (row[c] * pv - a * pivot_row[c]) % p
            else:
                g = 0
                for c in range(col, ncols):
                    row[c] = row[c] * pv - a * pivot_row[c]
                    g = gcd(g, row[c])
                if g > 1:
                    for c in range(col, ncols):
                        row[c] //= g
        rank += 1
        if rank == nrows:
            break
    return rank


def _rank_sparse(rows: list[dict[int, int]], ncols: int, p: int) -> int:
    """Markowitz-flavored elimination on dictionary rows."""
    active = []
    for row in rows:
        r = {c: (v % p if p else v) for c, v in row.items() if (v % p if p else v)}
        if r:
            active.append(r)
    col_count: dict[int, int] = {}
    for row in active:
        for c in row:
            col_count[c] = col_count.get(c, 0) + 1
    rank = 0
    while active:
        best_key, best = None, None
        for ri, row in enumerate(active):
            rw = len(row) - 1
            for c, v in row.items():
                key = (rw * (col_count[c] - 1), abs(v) != 1, c, ri)
                if best_key is None or key < best_key:
                    best_key, best = key, (ri, c)
        ri, pc = best
        pivot_row = active[ri]
        active[ri] = active[-1]
        active.pop()
        for c in pivot_row:
            col_count[c] -= 1
        pv = pivot_row[pc]
        rank += 1
        remaining = []
        for row in active:
            a = row.get(pc)
            if a is None:
                remaining.append(row)
                continue
            for c in row:
                col_count[c] -= 1
            if p:
                factor = a * pow(pv, -1, p) % p
                new = {}
                for c in set(row) | set(pivot_row):
                    v = (row.get(c, 0) - factor * pivot_row.get(c, 0)) % p
                    if v:
                        new[c] = v
            else:
                new = {}
                g = 0
                for c in set(row) | set(pivot_row):
                    v = row.get(c, 0) * pv - a * pivot_row.get(c, 0)
                    if v:
                        new[c] = v
                        g = gcd(g, v)
                if g > 1:
                    new = {c: v // g for c, v in new.items()}
            if new:
                for c in new:
                    col_count[c] = col_count.get(c, 0) + 1
                remaining.append(new)
        active = remaining
    return rank


def _matrix_rank(rows: list[dict[int, int]], ncols: int, characteristic: int) -> int:
    if not rows or not ncols:
        return 0
    if ncols < DENSE_COLUMN_LIMIT:
        return _rank_dense(rows, ncols, characteristic)
    return _rank_sparse(rows, ncols, characteristic)


def _faces_by_dim(faces) -> dict[int, list[tuple[int, ...]]]:
    by_dim: dict[int, list[tuple[int, ...]]] = {}
    for f in faces:
        by_dim.setdefault(len(f) - 1, []).append(f)
    for k in by_dim:
        by_dim[k].sort()
    return by_dim


def _boundary_rows(lower: list, upper: list) -> list[dict[int, int]]:
    """Rows indexed by the lower faces, columns by the upper ones."""
    index = {f: i for i, f in enumerate(lower)}
    rows: list[dict[int, int]] = [{} for _ in lower]
    for c, f in enumerate(upper):
        for p in range(len(f)):
            rows[index[f[:p] + f[p + 1:]]][c] = -1 if p % 2 else 1
    return rows


def _reduced_ranks_of_faces(faces, characteristic: int) -> dict[int, int]:
    """Reduced Betti numbers of an explicit face family (assumed a complex)."""
    by_dim = _faces_by_dim(faces)
    top = max(by_dim)
    counts = {k: len(v) for k, v in by_dim.items()}
    boundary_rank = {k: 0 for k in range(0, top + 2)}
    if counts.get(0):
        boundary_rank[0] = 1
    for k in range(1, top + 1):
        rows = _boundary_rows(by_dim[k - 1], by_dim[k])
        boundary_rank[k] = _matrix_rank(rows, counts[k], characteristic)
    return {
        k: counts.get(k, 0) - boundary_rank.get(k, 0) - boundary_rank.get(k + 1, 0)
        for k in range(-1, top + 1)
    }


def reduced_homology(complex_, field: FieldSpec = FieldSpec(0), *, collapse: bool = True) -> HomologyRanks:
    """Reduced Betti numbers of the complex over the given field."""
    faces = collapsed_core(complex_.face_set()) if collapse else complex_.face_set()
    ranks = _reduced_ranks_of_faces(faces, field.characteristic)
    return HomologyRanks(tuple(ranks.get(k, 0) for k in range(-1, complex_.dim + 1)))


def is_acyclic(complex_, field: FieldSpec = FieldSpec(0)) -> bool:
    """True for complexes without vertices and whenever all reduced ranks vanish."""
    if complex_.dim <= -1:
        return True
    return reduced_homology(complex_, field).trivial


# ---------------------------------------------------------------------------
# integral homology

def _diagonalize(m: list[list[int]]) -> list[int]:
    """Diagonalize an integer matrix by unimodular row/column operations.

    Returns the absolute values of the nonzero diagonal; divisibility is not
    normalized here.
    """
    nrows, ncols = len(m), len(m[0]) if m else 0
    t = 0
    while True:
        best = None
        for i in range(t, nrows):
            row = m[i]
            for j in range(t, ncols):
                v = abs(row[j])
                if v and (best is None or v < best[0]):
                    best = (v, i, j)
                    if v == 1:
                        break
            if best and best[0] == 1:
                break
        if best is None:
            break
        _, bi, bj = best
        m[t], m[bi] = m[bi], m[t]
        for row in m:
            row[t], row[bj] = row[bj], row[t]
        while True:
            for i in range(t + 1, nrows):
                while m[i][t]:
                    q = m[i][t] // m[t][t]
                    if q:
                        m[i] = [a - q * b for a, b in zip(m[i], m[t])]
                    if m[i][t]:
                        m[t], m[i] = m[i], m[t]
            for j in range(t + 1, ncols):
                while m[t][j]:
                    q = m[t][j] // m[t][t]
                    if q:
                        for row in m:
                            row[j] -= q * row[t]
                    if m[t][j]:
                        # the swap can re-dirty the column below; the outer
                        # loop re-clears it
                        for row in m:
                            row[t], row[j] = row[j], row[t]
            if not any(m[i][t] for i in range(t + 1, nrows)):
                break
        t += 1
        if t == min(nrows, ncols):
            break
    return [abs(m[i][i]) for i in range(t) if m[i][i]]


def _invariant_factors(diagonal: list[int]) -> list[int]:
    """Normalize a diagonal multiset into the divisibility chain."""
    d = sorted(diagonal)
    changed = True
    while changed:
        changed = False
        for i in range(len(d)):
            for j in range(i + 1, len(d)):
                if d[j] % d[i]:
                    g = gcd(d[i], d[j])
                    d[i], d[j] = g, d[i] // g * d[j]
                    changed = True
        if changed:
            d.sort()
    return d


def integral_homology(complex_, *, max_cells: int = INTEGRAL_CELL_CAP) -> IntegralHomology:
    """Free ranks and invariant factors of the reduced integral homology."""
    faces = collapsed_core(complex_.face_set())
    if len(faces) - 1 > max_cells:
        raise CapExceededError(
            f"{len(faces) - 1} cells after collapsing exceed cap {max_cells}"
        )
    by_dim = _faces_by_dim(faces)
    top = max(by_dim)
    counts = {k: len(v) for k, v in by_dim.items()}
    diag: dict[int, list[int]] = {k: [] for k in range(0, top + 2)}
    if counts.get(0):
        diag[0] = [1]
    for k in range(1, top + 1):
        index = {f: i for i, f in enumerate(by_dim[k - 1])}
        dense = [[0] * counts[k] for _ in range(counts[k - 1])]
        for c, f in enumerate(by_dim[k]):
            for p in range(len(f)):
                dense[index[f[:p] + f[p + 1:]]][c] = -1 if p % 2 else 1
        diag[k] = _diagonalize(dense)
    ranks = []
    torsion = []
    for k in range(-1, complex_.dim + 1):
        rank_k = len(diag.get(k, []))
        rank_k1 = len(diag.get(k + 1, []))
        ranks.append(counts.get(k, 0) - rank_k - rank_k1)
        torsion.append(tuple(v for v in _invariant_factors(diag.get(k + 1, [])) if v > 1))
    return IntegralHomology(tuple(ranks), tuple(torsion))
