import pytest
from hypothesis import settings

from monores import (
    IdealRandomSpec,
    buchberger_complex,
    is_generic,
    lcm_lattice,
    random_ideal,
)
from monores.cli import derive_trial_seed

settings.register_profile("repo", derandomize=True, deadline=None, max_examples=60)
settings.load_profile("repo")

CORPUS_500_MASTER = 0x5EED0001
CORPUS_200_MASTER = 0x5EED0002
CORPUS_SG_MASTER = 0x5EED0003
CORPUS_GENERIC_MASTER = 0x5EED0004
CORPUS_CONJECTURE_MASTER = 0x5EED0005


def corpus_500_spec(i):
    return IdealRandomSpec(
        3 + i % 3, 5 + i % 4, 3 + i % 4, "arbitrary",
        derive_trial_seed(CORPUS_500_MASTER, i),
    )


def corpus_200_spec(i):
    return IdealRandomSpec(
        2 + i % 3, 2 + i % 5, 2 + i % 4, "arbitrary",
        derive_trial_seed(CORPUS_200_MASTER, i),
    )


def corpus_sg_spec(i):
    r = 3 + i % 4
    return IdealRandomSpec(
        3, r, r + 3, "strongly-generic", derive_trial_seed(CORPUS_SG_MASTER, i)
    )


def corpus_conjecture_spec(i):
    return IdealRandomSpec(
        2 + i % 4, 2 + i % 8, 2 + i % 6, "arbitrary",
        derive_trial_seed(CORPUS_CONJECTURE_MASTER, i),
    )


@pytest.fixture(scope="session")
def corpus_500():
    """(ideal, Buchberger complex, lcm-lattice) for the 500-instance batteries."""
    out = []
    for i in range(500):
        ideal = random_ideal(corpus_500_spec(i))
        out.append((ideal, buchberger_complex(ideal), lcm_lattice(ideal)))
    return out


@pytest.fixture(scope="session")
def corpus_200():
    out = []
    for i in range(200):
        ideal = random_ideal(corpus_200_spec(i))
        out.append((ideal, lcm_lattice(ideal)))
    return out


@pytest.fixture(scope="session")
def corpus_strongly_generic():
    return [random_ideal(corpus_sg_spec(i)) for i in range(200)]


@pytest.fixture(scope="session")
def corpus_generic_100():
    """First 100 generic ideals from a deterministic seed scan (n=3, r<=5)."""
    out = []
    index = 0
    while len(out) < 100:
        spec = IdealRandomSpec(
            3, 2 + index % 4, 3 + index % 3, "arbitrary",
            derive_trial_seed(CORPUS_GENERIC_MASTER, index),
        )
        index += 1
        ideal = random_ideal(spec)
        if is_generic(ideal):
            out.append(ideal)
    return out
