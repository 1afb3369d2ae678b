"""Independent oracles and generators shared by the test modules.

Everything here is deliberately brute force: exhaustive subset scans and
Fraction-based elimination, kept separate from the library's own algorithms
so the two routes stay independent.
"""

from fractions import Fraction
from itertools import combinations
import random

from monores import IdealRandomSpec, random_ideal
from monores.cli import derive_trial_seed
from monores.monomials import divides, lcm_of, properly_divides


def minimalize_oracle(vectors):
    """Quadratic dominance filter."""
    vs = sorted(set(map(tuple, vectors)))
    out = []
    for v in vs:
        if not any(u != v and divides(u, v) for u in vs):
            out.append(v)
    return out


def buchberger_oracle(ideal):
    """All 2^r subsets whose lcm has no properly dividing generator."""
    gens = ideal.generators
    faces = []
    for k in range(len(gens) + 1):
        for subset in combinations(range(len(gens)), k):
            lab = lcm_of([gens[v] for v in subset], ideal.nvars)
            if not any(properly_divides(g, lab) for g in gens):
                faces.append(subset)
    return set(faces)


def scarf_oracle(ideal):
    """All subsets whose lcm is attained by no other subset."""
    gens = ideal.generators
    by_label = {}
    for k in range(len(gens) + 1):
        for subset in combinations(range(len(gens)), k):
            lab = lcm_of([gens[v] for v in subset], ideal.nvars)
            by_label.setdefault(lab, []).append(subset)
    return {subsets[0] for subsets in by_label.values() if len(subsets) == 1}


def rank_oracle(dense, characteristic=0):
    """Plain Gaussian elimination over Fraction or a prime field."""
    p = characteristic
    m = [
        [(v % p) if p else Fraction(v) for v in row]
        for row in dense
    ]
    if not m or not m[0]:
        return 0
    ncols = len(m[0])
    rank = 0
    for col in range(ncols):
        piv = next((r for r in range(rank, len(m)) if m[r][col]), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        inv = pow(m[rank][col], -1, p) if p else 1 / m[rank][col]
        for r in range(len(m)):
            if r != rank and m[r][col]:
                factor = m[r][col] * inv
                if p:
                    m[r] = [(a - factor * b) % p for a, b in zip(m[r], m[rank])]
                else:
                    m[r] = [a - factor * b for a, b in zip(m[r], m[rank])]
        rank += 1
        if rank == len(m):
            break
    return rank


def boundary_dense(lower, upper):
    index = {f: i for i, f in enumerate(lower)}
    m = [[0] * len(upper) for _ in lower]
    for c, f in enumerate(upper):
        for pos in range(len(f)):
            m[index[f[:pos] + f[pos + 1:]]][c] = -1 if pos % 2 else 1
    return m


def homology_oracle(faces, characteristic=0):
    """Reduced Betti numbers straight from the definitions, no collapsing."""
    by_dim = {}
    for f in faces:
        by_dim.setdefault(len(f) - 1, []).append(tuple(f))
    for k in by_dim:
        by_dim[k].sort()
    top = max(by_dim)
    ranks = {}
    boundary_rank = {}
    boundary_rank[0] = 1 if by_dim.get(0) else 0
    for k in range(1, top + 1):
        boundary_rank[k] = rank_oracle(
            boundary_dense(by_dim[k - 1], by_dim[k]), characteristic
        )
    for k in range(-1, top + 1):
        ranks[k] = (
            len(by_dim.get(k, ()))
            - boundary_rank.get(k, 0)
            - boundary_rank.get(k + 1, 0)
        )
    return ranks


def downward_closure(faces):
    closed = {()}
    for f in faces:
        f = tuple(sorted(set(f)))
        for k in range(len(f) + 1):
            closed.update(combinations(f, k))
    return closed


def random_face_family(seed, nverts=6, nfacets=5, max_dim=3):
    """A random downward-closed family for homology stress tests."""
    rng = random.Random(seed)
    facets = []
    for _ in range(nfacets):
        size = rng.randint(1, max_dim + 1)
        facets.append(tuple(sorted(rng.sample(range(nverts), min(size, nverts)))))
    return downward_closure(facets)


def ideal_from_seed(seed, nvars, ngens, max_degree):
    return random_ideal(IdealRandomSpec(nvars, ngens, max_degree, "arbitrary", seed))


def spec_stream(master, count, scheme):
    """Deterministic IdealRandomSpec stream; scheme(i) -> (n, r, d, mode)."""
    for i in range(count):
        n, r, d, mode = scheme(i)
        yield IdealRandomSpec(n, r, d, mode, derive_trial_seed(master, i))


# the 6-vertex closed-surface triangulation with Euler characteristic 1
PROJECTIVE_PLANE_FACETS = [
    (0, 1, 2), (0, 2, 3), (0, 1, 5), (0, 4, 5), (0, 3, 4),
    (1, 2, 4), (1, 3, 4), (1, 3, 5), (2, 3, 5), (2, 4, 5),
]
