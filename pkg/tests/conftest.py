import itertools
from fractions import Fraction

import pytest
from hypothesis import strategies as st

from ksadist.algebra import Cyclo, StateVector, W, is_orthogonal, same_projector
from ksadist.datasets import load_dataset


def V(*entries, id="v"):
    """Shorthand vector; ints, Fractions, Cyclo and 'w'-strings all accepted."""
    return StateVector(id, entries)


def named(ds, *ids):
    return ds.pool.by_ids(ids)


rationals = st.fractions(min_value=-5, max_value=5, max_denominator=6)
cyclos = st.builds(Cyclo, rationals, rationals)
nonzero_cyclos = cyclos.filter(lambda s: not s.is_zero())
small_entries = st.sampled_from([Cyclo(0), Cyclo(1), Cyclo(-1), W, W * W, Cyclo(2), Cyclo(1, 1)])


def vectors(dim):
    return st.lists(small_entries, min_size=dim, max_size=dim).filter(
        lambda es: any(not e.is_zero() for e in es)
    ).map(lambda es: StateVector("h", es))


@pytest.fixture(scope="session")
def cabello():
    return load_dataset("cabello18")


@pytest.fixture(scope="session")
def lisonek():
    return load_dataset("lisonek21")


@pytest.fixture(scope="session")
def yuoh():
    return load_dataset("yuoh13")


@pytest.fixture(scope="session")
def pbr():
    return load_dataset("pbr")


@pytest.fixture(scope="session")
def all_datasets(cabello, lisonek, yuoh, pbr):
    return [cabello, lisonek, yuoh, pbr]


HALF, QUARTER = Fraction(1, 2), Fraction(1, 4)


LISONEK_TRIPLE = ("100000", "1ba00a", "1b0aa0")


def first_non_orthogonal_extension(states, alphabet=(Cyclo(0), Cyclo(1), W, W * W)):
    """First canonical vector over ``alphabet`` that is new and non-orthogonal to every state."""
    d = states[0].dim
    for entries in itertools.product(alphabet, repeat=d):
        lead = next((e for e in entries if not e.is_zero()), None)
        if lead != 1:
            continue
        v = StateVector("x", entries)
        if not any(is_orthogonal(v, s) or same_projector(v, s) for s in states):
            return v
    return None


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance")
    if mod is not None and mod.RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in mod.RESULTS:
            terminalreporter.write_line(line)
