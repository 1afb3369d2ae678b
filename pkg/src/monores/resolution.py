"""Homogenized cellular chain complexes and the verification batteries.

This is where the pieces meet: the support criterion (every subcomplex of
faces dividing a degree must be acyclic), minimality checks, Betti tables
computed three independent ways, and the evidence harness for the clique
complex of the Buchberger graph.
"""

from __future__ import annotations

from dataclasses import dataclass

from .complexes import (
    Face,
    LabeledComplex,
    buchberger_complex,
    buchberger_graph,
    clique_complex,
    subcomplex_dividing,
    _scarf_faces,
    CLIQUE_CAP,
    FACE_CAP,
    GENERATOR_CAP,
)
from .errors import CapExceededError, NotMinimalError
from .homology import (
    DEFAULT_FIELDS,
    FieldSpec,
    INTEGRAL_CELL_CAP,
    integral_homology,
    is_acyclic,
    reduced_homology,
)
from .monomials import (
    Multidegree,
    MonomialIdeal,
    divides,
    ibar_extend,
    ideal_to_json_dict,
    is_generic,
    lcm_of,
    properly_divides,
)
from .posets import (
    CHAIN_CAP,
    LATTICE_CAP,
    LcmLattice,
    agreement_poset,
    buchberger_degree_poset,
    crosscut_complex,
    is_buchberger_degree,
    lcm_lattice,
    open_interval,
    order_complex,
)

EXHAUSTIVE_SUBSET_LIMIT = 12


@dataclass(frozen=True)
class CheckResult:
    name: str
    status: str  # "pass" | "fail" | "skipped"
    witness: dict | None = None
    reason: str | None = None


@dataclass(frozen=True)
class VerificationReport:
    checks: tuple[CheckResult, ...]

    @property
    def all_passed(self) -> bool:
        return all(c.status != "fail" for c in self.checks)

    def statuses(self) -> dict[str, str]:
        return {c.name: c.status for c in self.checks}

    def to_json_dict(self) -> dict:
        out = []
        for c in self.checks:
            entry: dict = {"name": c.name, "status": c.status}
            if c.reason is not None:
                entry["reason"] = c.reason
            if c.witness is not None:
                entry["witness"] = c.witness
            out.append(entry)
        return {"checks": out, "all_passed": self.all_passed}


def _check(name, ok, witness=None) -> CheckResult:
    return CheckResult(name, "pass" if ok else "fail", None if ok else witness)


# ---------------------------------------------------------------------------
# homogenized chain complex

@dataclass(frozen=True)
class FreeResolutionDescription:
    """Bases and monomial-weighted differentials read off a labeled complex.

    Homological index i is spanned by the faces of dimension i.  A matrix
    entry is a pair (sign, exponent vector): the sign follows the simplicial
    boundary, the exponent vector is label(F) - label(G) for G directly under
    F.  The index-0 map sends each vertex to its generator.
    """

    basis: tuple[tuple[tuple[Face, Multidegree], ...], ...]
    differentials: tuple[tuple[tuple[int, int, int, Multidegree], ...], ...]
    augmentation: tuple[Multidegree, ...]

    def ranks(self) -> tuple[int, ...]:
        return tuple(len(b) for b in self.basis)

    def differential(self, i: int) -> tuple[tuple[int, int, int, Multidegree], ...]:
        """Entries (row, col, sign, exponents) of the map from index i to i-1."""
        if not 1 <= i < len(self.basis):
            raise IndexError(f"no differential at homological index {i}")
        return self.differentials[i - 1]

    def differential_text(self, i: int) -> str:
        entries = {(r, c): (s, e) for r, c, s, e in self.differential(i)}
        nrows, ncols = len(self.basis[i - 1]), len(self.basis[i])
        lines = []
        for r in range(nrows):
            cells = []
            for c in range(ncols):
                if (r, c) in entries:
                    s, e = entries[(r, c)]
                    cells.append(("+" if s > 0 else "-") + "x^(" + ",".join(map(str, e)) + ")")
                else:
                    cells.append(".")
            lines.append("  ".join(cells))
        return "\n".join(lines) + "\n"

    def compose_zero(self) -> bool:
        """Symbolic check that consecutive differentials compose to zero."""
        for i in range(2, len(self.basis)):
            upper = self.differential(i)
            lower = {}
            for r, c, s, e in self.differential(i - 1):
                lower.setdefault(c, []).append((r, s, e))
            sums: dict[tuple, int] = {}
            for mid, col, s1, e1 in upper:
                for row, s2, e2 in lower.get(mid, ()):
                    key = (row, col, tuple(a + b for a, b in zip(e1, e2)))
                    sums[key] = sums.get(key, 0) + s1 * s2
            if any(sums.values()):
                return False
        return True


def homogenized_resolution(complex_: LabeledComplex) -> FreeResolutionDescription:
    """The chain complex of the labeled complex with monomial-weighted maps."""
    basis = tuple(
        tuple((f, complex_.label(f)) for f in complex_.faces(k))
        for k in range(0, complex_.dim + 1)
    )
    differentials = []
    for i in range(1, len(basis)):
        rows = {f: r for r, (f, _) in enumerate(basis[i - 1])}
        entries = []
        for c, (f, label) in enumerate(basis[i]):
            for p in range(len(f)):
                facet = f[:p] + f[p + 1:]
                below = complex_.label(facet)
                exps = tuple(a - b for a, b in zip(label, below))
                entries.append((rows[facet], c, -1 if p % 2 else 1, exps))
        differentials.append(tuple(entries))
    augmentation = tuple(label for _, label in basis[0]) if basis else ()
    return FreeResolutionDescription(basis, tuple(differentials), augmentation)


# ---------------------------------------------------------------------------
# support and minimality

def supports_resolution(
    complex_: LabeledComplex,
    ideal: MonomialIdeal,
    field: FieldSpec = FieldSpec(0),
    *,
    lattice: LcmLattice | None = None,
    max_lattice: int = LATTICE_CAP,
) -> VerificationReport:
    """Check acyclicity of every degree-restricted subcomplex.

    Only lcm-lattice degrees need checking: the subcomplex of faces dividing
    m depends only on the set of generators dividing m, and the lcm of that
    set is a lattice element giving the same subcomplex.
    """
    lattice = lattice or lcm_lattice(ideal, max_elements=max_lattice)
    gens = ideal.generators
    seen: set[frozenset[int]] = set()
    failures = []
    checked = 0
    for m in lattice.elements:
        if not any(m):
            continue
        checked += 1
        key = frozenset(i for i, g in enumerate(gens) if divides(g, m))
        if key in seen:
            continue
        seen.add(key)
        sub = subcomplex_dividing(complex_, m)
        if not is_acyclic(sub, field):
            ranks = reduced_homology(sub, field)
            failures.append({"degree": list(m), "reduced_ranks": list(ranks.ranks)})
    witness = None
    if failures:
        witness = {"characteristic": field.characteristic, "failures": failures[:5]}
    return VerificationReport(
        (
            CheckResult(
                "subcomplexes-acyclic",
                "fail" if failures else "pass",
                witness,
                reason=None if failures else f"{checked} lattice degrees",
            ),
        )
    )


def is_minimal_complex(complex_: LabeledComplex) -> bool:
    """No covering pair of faces shares a label.

    Covering pairs suffice: labels divide along inclusions, so a repeated
    label on any comparable pair forces one on some covering pair.
    """
    for k in range(1, complex_.dim + 1):
        for f in complex_.faces(k):
            lab = complex_.label(f)
            for p in range(len(f)):
                if complex_.label(f[:p] + f[p + 1:]) == lab:
                    return False
    return True


def buchberger_minimality(
    ideal: MonomialIdeal,
    *,
    max_faces: int = FACE_CAP,
    max_generators: int = GENERATOR_CAP,
) -> bool:
    """True when the Scarf and Buchberger complexes coincide."""
    bu = buchberger_complex(ideal, max_faces=max_faces, max_generators=max_generators)
    return set(_scarf_faces(bu)) == bu.face_set()


# ---------------------------------------------------------------------------
# Betti tables

class BettiTable:
    """Finitely supported multigraded Betti numbers."""

    __slots__ = ("_entries",)

    def __init__(self, entries):
        self._entries = {
            (int(i), tuple(m)): int(r) for (i, m), r in dict(entries).items() if r
        }

    def rank(self, i: int, m) -> int:
        return self._entries.get((i, tuple(m)), 0)

    def entries(self):
        return sorted(self._entries.items())

    def max_index(self) -> int:
        return max((i for i, _ in self._entries), default=-1)

    def totals(self) -> tuple[int, ...]:
        out = [0] * (self.max_index() + 1)
        for (i, _), r in self._entries.items():
            out[i] += r
        return tuple(out)

    def __eq__(self, other):
        if not isinstance(other, BettiTable):
            return NotImplemented
        return self._entries == other._entries

    __hash__ = None

    def __repr__(self):
        return f"<BettiTable totals={self.totals()}>"

    def to_json_dict(self) -> dict:
        return {
            "entries": [
                {"i": i, "degree": list(m), "rank": r} for (i, m), r in self.entries()
            ],
            "totals": list(self.totals()),
        }


def betti_from_complex(complex_: LabeledComplex) -> BettiTable:
    """Count faces per (dimension, label); valid only for minimal complexes."""
    if not is_minimal_complex(complex_):
        raise NotMinimalError("complex has a covering pair with equal labels")
    counts: dict[tuple[int, Multidegree], int] = {}
    for k in range(0, complex_.dim + 1):
        for f in complex_.faces(k):
            key = (k, complex_.label(f))
            counts[key] = counts.get(key, 0) + 1
    return BettiTable(counts)


def betti_from_intervals(
    ideal: MonomialIdeal,
    field: FieldSpec = FieldSpec(0),
    *,
    lattice: LcmLattice | None = None,
    max_lattice: int = LATTICE_CAP,
    max_chains: int = CHAIN_CAP,
) -> BettiTable:
    """Betti numbers from open-interval homology in the lcm-lattice."""
    lattice = lattice or lcm_lattice(ideal, max_elements=max_lattice)
    entries: dict[tuple[int, Multidegree], int] = {}
    for m in lattice.elements:
        if not any(m):
            continue
        interval = open_interval(lattice, m)
        ranks = reduced_homology(order_complex(interval, max_chains=max_chains), field)
        for i, r in enumerate(ranks.ranks):
            if r:
                entries[(i, m)] = r
    return BettiTable(entries)


def betti_from_agreement(
    ideal: MonomialIdeal,
    field: FieldSpec = FieldSpec(0),
    *,
    lattice: LcmLattice | None = None,
    max_lattice: int = LATTICE_CAP,
    max_chains: int = CHAIN_CAP,
) -> BettiTable:
    """Betti numbers from agreement-poset homology; zero off Buchberger degrees."""
    lattice = lattice or lcm_lattice(ideal, max_elements=max_lattice)
    entries: dict[tuple[int, Multidegree], int] = {}
    for m in lattice.elements:
        if not any(m):
            continue
        if not is_buchberger_degree(ideal, m, lattice=lattice):
            continue
        poset = agreement_poset(ideal, m, lattice=lattice)
        ranks = reduced_homology(order_complex(poset, max_chains=max_chains), field)
        for i, r in enumerate(ranks.ranks):
            if r:
                entries[(i, m)] = r
    return BettiTable(entries)


# ---------------------------------------------------------------------------
# theorem and proposition batteries

def _truncation(m: Multidegree) -> Multidegree:
    return tuple(e - 1 if e else 0 for e in m)


def verify_scarf_equivalence(
    ideal: MonomialIdeal,
    field: FieldSpec = FieldSpec(0),
    *,
    exhaustive_limit: int = EXHAUSTIVE_SUBSET_LIMIT,
    max_faces: int = FACE_CAP,
) -> VerificationReport:
    """Cross-check the minimality biconditionals.

    Minimality of the Buchberger resolution must agree with the label-based
    criterion (every repeated subset lcm has a properly dividing generator)
    and with the ideal-membership form (every non-Scarf subset's lcm has a
    proper divisor inside the ideal, which reduces to a generator dividing
    the truncated degree).  Above the subset cap both scans downgrade to the
    faces of the Buchberger complex.
    """
    gens = ideal.generators
    bu = buchberger_complex(ideal, max_faces=max_faces)
    sc_faces = set(_scarf_faces(bu))
    minimal = sc_faces == bu.face_set()

    if len(gens) <= exhaustive_limit:
        from itertools import combinations

        label_count: dict[Multidegree, int] = {}
        for k in range(1, len(gens) + 1):
            for subset in combinations(range(len(gens)), k):
                lab = lcm_of([gens[v] for v in subset], ideal.nvars)
                label_count[lab] = label_count.get(lab, 0) + 1
        repeated = [lab for lab, c in label_count.items() if c >= 2]
        criterion = all(
            any(properly_divides(g, lab) for g in gens) for lab in repeated
        )
        membership = all(
            any(divides(g, _truncation(lab)) for g in gens) for lab in repeated
        )
    else:
        non_scarf = [f for f in bu.all_faces() if f not in sc_faces]
        criterion = all(
            any(properly_divides(g, bu.label(f)) for g in gens) for f in non_scarf
        )
        membership = all(
            any(divides(g, _truncation(bu.label(f))) for g in gens) for f in non_scarf
        )

    checks = [
        _check(
            "minimality-biconditional",
            criterion == minimal,
            {"criterion": criterion, "scarf_equals_buchberger": minimal},
        ),
        _check(
            "scarf-membership-lemma",
            membership == minimal,
            {"membership": membership, "scarf_equals_buchberger": minimal},
        ),
    ]
    if minimal:
        sc = LabeledComplex(ideal, sc_faces)
        ok = (
            supports_resolution(sc, ideal, field).all_passed
            and is_minimal_complex(sc)
        )
        checks.append(_check("scarf-minimal-when-buchberger-minimal", ok,
                             {"ideal": ideal_to_json_dict(ideal)}))
    else:
        checks.append(
            CheckResult(
                "scarf-minimal-when-buchberger-minimal",
                "pass",
                reason="vacuous: Buchberger resolution not minimal",
            )
        )
    return VerificationReport(tuple(checks))


def verify_ibar(
    ideal: MonomialIdeal,
    bound,
    cofactor,
    field: FieldSpec = FieldSpec(0),
) -> VerificationReport:
    """For a generic input, the extended ideal must have a minimal Buchberger
    resolution that coincides with its Scarf complex."""
    if not is_generic(ideal):
        return VerificationReport(
            (CheckResult("ibar-extension", "skipped", reason="input ideal is not generic"),)
        )
    extended = ibar_extend(ideal, bound, cofactor)
    bu = buchberger_complex(extended)
    sc_faces = set(_scarf_faces(bu))
    witness = {"extended": ideal_to_json_dict(extended)}
    return VerificationReport(
        (
            _check("ibar-minimal-labels", is_minimal_complex(bu), witness),
            _check("ibar-scarf-equals-buchberger", sc_faces == bu.face_set(), witness),
            _check(
                "ibar-supports-resolution",
                supports_resolution(bu, extended, field).all_passed,
                witness,
            ),
        )
    )


def conjecture_evidence(
    ideal: MonomialIdeal,
    fields=DEFAULT_FIELDS,
    *,
    max_faces: int = CLIQUE_CAP,
    integral_cells: int = INTEGRAL_CELL_CAP,
) -> VerificationReport:
    """Homology evidence for contractibility of the Buchberger-graph clique complex.

    Vanishing homology over every requested field plus torsion-free integral
    homology yields a "consistent" verdict; anything else is a candidate
    counterexample with a full witness.  Contractibility itself is never
    claimed.
    """
    if not list(fields):
        raise ValueError("need at least one field")
    try:
        graph = buchberger_graph(ideal)
        cl = clique_complex(graph, ideal, max_faces=max_faces)
    except CapExceededError as exc:
        return VerificationReport(
            (
                CheckResult(
                    "clique-complex",
                    "skipped",
                    witness={"ideal": ideal_to_json_dict(ideal)},
                    reason=str(exc),
                ),
            )
        )
    witness_base = {"ideal": ideal_to_json_dict(ideal)}
    checks = []
    for f in fields:
        ranks = reduced_homology(cl, f)
        checks.append(
            _check(
                f"clique-homology-char-{f.characteristic}",
                ranks.trivial,
                dict(witness_base, reduced_ranks=list(ranks.ranks)),
            )
        )
    try:
        integral = integral_homology(cl, max_cells=integral_cells)
        checks.append(
            _check(
                "clique-integral-homology",
                integral.trivial,
                dict(
                    witness_base,
                    free_ranks=list(integral.ranks),
                    torsion=[list(t) for t in integral.torsion],
                ),
            )
        )
    except CapExceededError as exc:
        checks.append(CheckResult("clique-integral-homology", "skipped", reason=str(exc)))
    return VerificationReport(tuple(checks))


def conjecture_verdict(report: VerificationReport) -> str:
    if any(c.status == "fail" for c in report.checks):
        return "CANDIDATE COUNTEREXAMPLE"
    if all(c.status == "skipped" for c in report.checks):
        return "skipped"
    return "consistent"


def lemma_battery(
    ideal: MonomialIdeal,
    field: FieldSpec = FieldSpec(0),
    *,
    max_lattice: int = LATTICE_CAP,
    max_chains: int = CHAIN_CAP,
    max_faces: int = FACE_CAP,
) -> VerificationReport:
    """Homology-level checks behind the support theorem.

    Intervals below degrees with a properly dividing generator are acyclic,
    the degree poset's order complex is acyclic, the crosscut complex of the
    generators inside it equals the Buchberger complex, and the Buchberger
    complex itself is acyclic.
    """
    gens = ideal.generators
    lattice = lcm_lattice(ideal, max_elements=max_lattice)
    interval_failures = []
    for m in lattice.elements:
        if not any(m) or not any(properly_divides(g, m) for g in gens):
            continue
        oc = order_complex(open_interval(lattice, m), max_chains=max_chains)
        if not is_acyclic(oc, field):
            interval_failures.append(list(m))
    degree_poset = buchberger_degree_poset(ideal, lattice=lattice)
    poset_acyclic = is_acyclic(order_complex(degree_poset, max_chains=max_chains), field)
    bu = buchberger_complex(ideal, max_faces=max_faces)
    atoms = [degree_poset.index(g) for g in gens]
    crosscut = crosscut_complex(degree_poset, atoms, max_faces=max_faces)
    return VerificationReport(
        (
            _check(
                "covered-intervals-acyclic",
                not interval_failures,
                {"degrees": interval_failures[:5]},
            ),
            _check("degree-poset-acyclic", poset_acyclic,
                   {"ideal": ideal_to_json_dict(ideal)}),
            _check(
                "crosscut-matches-complex",
                crosscut.face_set() == bu.face_set(),
                {"ideal": ideal_to_json_dict(ideal)},
            ),
            _check("complex-acyclic", is_acyclic(bu, field),
                   {"ideal": ideal_to_json_dict(ideal)}),
        )
    )
