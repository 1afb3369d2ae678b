import pytest
from hypothesis import given, strategies as st

import helpers
from monores import (
    CapExceededError,
    FinitePoset,
    agreement_poset,
    buchberger_complex,
    buchberger_degree_poset,
    crosscut_complex,
    is_buchberger_degree,
    lcm_lattice,
    minimalize,
    open_interval,
    order_complex,
    reduced_homology,
)
from monores.posets import poset_to_json_dict

seeds = st.integers(0, 10_000)


def example_ideal():
    return minimalize(4, [(2, 0, 0, 0), (0, 2, 0, 0), (0, 0, 2, 0), (1, 0, 1, 0), (0, 1, 0, 1)])


def xy_ideal():
    # (x^2, xy, y^2)
    return minimalize(2, [(2, 0), (1, 1), (0, 2)])


class TestFinitePoset:
    def test_axiom_validation(self):
        with pytest.raises(ValueError, match="reflexive"):
            FinitePoset([1, 2], lambda a, b: a < b)
        with pytest.raises(ValueError, match="antisymmetric"):
            FinitePoset([1, 2], lambda a, b: True)
        # a non-transitive comparator: 1 -> 2 -> 3 but not 1 -> 3
        rel = {(1, 1), (2, 2), (3, 3), (1, 2), (2, 3)}
        with pytest.raises(ValueError, match="transitive"):
            FinitePoset([1, 2, 3], lambda a, b: (a, b) in rel)

    def test_duplicate_elements_rejected(self):
        with pytest.raises(ValueError):
            FinitePoset([1, 1], lambda a, b: a <= b)

    def test_covers(self):
        poset = FinitePoset([1, 2, 3, 6], lambda a, b: b % a == 0)
        assert poset.covers() == [(0, 1), (0, 2), (1, 3), (2, 3)]

    def test_json_shape(self):
        poset = FinitePoset([(0, 1), (1, 1)], lambda a, b: all(x <= y for x, y in zip(a, b)))
        data = poset_to_json_dict(poset)
        assert data["elements"] == [[0, 1], [1, 1]]
        assert data["cover_relations"] == [[0, 1]]


class TestLcmLattice:
    def test_principal_ideal(self):
        lattice = lcm_lattice(minimalize(1, [(1,)]))
        assert lattice.elements == ((0,), (1,))

    def test_example_contents(self):
        ideal = example_ideal()
        lattice = lcm_lattice(ideal)
        assert (0, 0, 0, 0) in lattice
        for g in ideal.generators:
            assert g in lattice
        assert (2, 0, 2, 0) in lattice

    @given(seeds)
    def test_size_bound_and_join_closure(self, seed):
        ideal = helpers.ideal_from_seed(seed, 4, 5, 4)
        lattice = lcm_lattice(ideal)
        assert len(lattice) <= 2 ** len(ideal.generators)
        elems = lattice.elements
        import random

        rng = random.Random(seed)
        for _ in range(10):
            a, b = rng.choice(elems), rng.choice(elems)
            assert lattice.join(a, b) in lattice

    def test_cap(self):
        ideal = helpers.ideal_from_seed(11, 5, 7, 6)
        with pytest.raises(CapExceededError):
            lcm_lattice(ideal, max_elements=2)


class TestIntervals:
    def test_atom_interval_empty(self):
        ideal = xy_ideal()
        lattice = lcm_lattice(ideal)
        assert len(open_interval(lattice, (2, 0))) == 0

    def test_xy_example(self):
        lattice = lcm_lattice(xy_ideal())
        interval = open_interval(lattice, (2, 2))
        assert set(interval.elements) == {(2, 0), (0, 2), (1, 1), (2, 1), (1, 2)}

    def test_top_interval_size(self):
        ideal = example_ideal()
        lattice = lcm_lattice(ideal)
        assert len(open_interval(lattice, lattice.top)) == len(lattice) - 2

    def test_membership_error(self):
        lattice = lcm_lattice(xy_ideal())
        with pytest.raises(ValueError):
            open_interval(lattice, (9, 9))


class TestBuchbergerDegrees:
    def test_example_excludes_shared_square(self):
        ideal = example_ideal()
        poset = buchberger_degree_poset(ideal)
        assert (2, 0, 2, 0) not in set(poset.elements)
        assert not is_buchberger_degree(ideal, (2, 0, 2, 0))

    def test_generators_are_degrees(self):
        ideal = example_ideal()
        lattice = lcm_lattice(ideal)
        for g in ideal.generators:
            assert is_buchberger_degree(ideal, g, lattice=lattice)

    def test_squarefree_keeps_everything(self):
        ideal = minimalize(6, [(1, 0, 0, 1, 0, 0), (0, 1, 0, 0, 1, 0),
                               (0, 0, 1, 0, 0, 1), (1, 1, 1, 0, 0, 0)])
        lattice = lcm_lattice(ideal)
        poset = buchberger_degree_poset(ideal, lattice=lattice)
        assert len(poset) == len(lattice) - 1

    @given(seeds)
    def test_matches_membership_predicate(self, seed):
        ideal = helpers.ideal_from_seed(seed, 3, 5, 4)
        lattice = lcm_lattice(ideal)
        poset_elements = set(buchberger_degree_poset(ideal, lattice=lattice).elements)
        for m in lattice.elements:
            if any(m):
                assert (m in poset_elements) == is_buchberger_degree(ideal, m, lattice=lattice)


class TestAgreementPoset:
    def test_atom_gives_empty_poset(self):
        ideal = xy_ideal()
        assert len(agreement_poset(ideal, (2, 0))) == 0

    def test_xy_example(self):
        poset = agreement_poset(xy_ideal(), (2, 2))
        assert set(poset.elements) == {frozenset(), frozenset({0}), frozenset({1})}

    @given(seeds)
    def test_homology_matches_interval(self, seed):
        ideal = helpers.ideal_from_seed(seed, 3, 4, 3)
        lattice = lcm_lattice(ideal)
        for m in lattice.elements:
            if not any(m) or not is_buchberger_degree(ideal, m, lattice=lattice):
                continue
            a = reduced_homology(order_complex(open_interval(lattice, m)))
            b = reduced_homology(order_complex(agreement_poset(ideal, m, lattice=lattice)))
            assert _padded_equal(a.ranks, b.ranks)


def _padded_equal(x, y):
    n = max(len(x), len(y))
    return tuple(x) + (0,) * (n - len(x)) == tuple(y) + (0,) * (n - len(y))


class TestOrderComplex:
    def test_antichain(self):
        poset = FinitePoset([(1, 0), (0, 1)], lambda a, b: all(x <= y for x, y in zip(a, b)))
        oc = order_complex(poset)
        assert oc.dim == 0
        assert len(oc.faces(0)) == 2

    def test_total_order_full_simplex(self):
        poset = FinitePoset([1, 2, 4, 8], lambda a, b: b % a == 0)
        oc = order_complex(poset)
        assert len(oc) == 16

    def test_unique_maximum_is_acyclic(self):
        poset = FinitePoset([(1, 0), (0, 1), (1, 1)], lambda a, b: all(x <= y for x, y in zip(a, b)))
        assert reduced_homology(order_complex(poset)).trivial

    def test_chain_cap(self):
        poset = FinitePoset(list(range(1, 9)), lambda a, b: a == b or a < b)
        with pytest.raises(CapExceededError):
            order_complex(poset, max_chains=10)


class TestCrosscut:
    def test_matches_buchberger_complex(self):
        for seed in (0, 5, 17, 99):
            ideal = helpers.ideal_from_seed(seed, 4, 5, 4)
            poset = buchberger_degree_poset(ideal)
            atoms = [poset.index(g) for g in ideal.generators]
            gamma = crosscut_complex(poset, atoms)
            assert gamma.face_set() == buchberger_complex(ideal).face_set()

    def test_singleton(self):
        poset = FinitePoset([1], lambda a, b: True if a == b else False)
        gamma = crosscut_complex(poset, [0])
        assert gamma.face_set() == {(), (0,)}

    def test_global_maximum_gives_full_simplex(self):
        poset = FinitePoset(
            [(1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 1)],
            lambda a, b: all(x <= y for x, y in zip(a, b)),
        )
        gamma = crosscut_complex(poset, [0, 1, 2])
        assert len(gamma) == 8

    def test_rejects_non_antichain(self):
        poset = FinitePoset([1, 2], lambda a, b: b % a == 0)
        with pytest.raises(ValueError):
            crosscut_complex(poset, [0, 1])

    @given(seeds)
    def test_crosscut_homotopy_rank_equality(self, seed):
        # the crosscut complex of the generators has the same reduced ranks
        # as the order complex of the degree poset it sits in
        ideal = helpers.ideal_from_seed(seed, 4, 5, 4)
        poset = buchberger_degree_poset(ideal)
        atoms = [poset.index(g) for g in ideal.generators]
        gamma_ranks = reduced_homology(crosscut_complex(poset, atoms)).ranks
        order_ranks = reduced_homology(order_complex(poset)).ranks
        n = max(len(gamma_ranks), len(order_ranks))
        pad = lambda t: tuple(t) + (0,) * (n - len(t))
        assert pad(gamma_ranks) == pad(order_ranks)
