import random

import pytest

from ptcalc.ring import Element, Generator, Side, Space, SpaceSpec, make_generator, multiply


def w(spec, i, j, primed=False):
    return make_generator(spec, i, j, Side.PRIMED if primed else Side.UNPRIMED)


def admissible_generators(spec):
    """Every (i, j, primed) with i < j accepted by the ring, primed only where it differs."""
    gens = []
    for j in range(2, spec.size + 1):
        if spec.space is Space.BASE_B and j > spec.m:
            continue
        if spec.space is Space.FIBRE_X and j <= spec.m:
            continue
        for i in range(1, j):
            gens.append(Generator(i, j, False))
            if j > spec.m and spec.space is Space.FIBREPRODUCT_EBE:
                gens.append(Generator(i, j, True))
    return gens


def random_generator_list(rng, spec, max_len=6):
    """Random raw generators, including reversed indices and base-range primes."""
    out = []
    for _ in range(rng.randint(1, max_len)):
        i, j = rng.sample(range(1, spec.size + 1), 2)
        primed = rng.random() < 0.5 and spec.space is Space.FIBREPRODUCT_EBE
        out.append(Generator(i, j, primed))
    return out


def random_element(rng, spec, terms=3, max_grade=2):
    gens = admissible_generators(spec)
    total = Element.zero(spec)
    for _ in range(rng.randint(1, terms)):
        term = Element.scalar(spec, rng.choice([-3, -2, -1, 1, 2, 3]))
        for _ in range(rng.randint(0, max_grade)):
            g = rng.choice(gens)
            term = multiply(term, w(spec, g.i, g.j, g.primed))
        total = total + term
    return total


@pytest.fixture
def ebe12():
    return SpaceSpec(1, 2)


@pytest.fixture
def rng():
    return random.Random(20210209)


# one (number, description, passed) row per acceptance criterion, printed after the run
ACCEPTANCE_LOG = []


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LOG:
        return
    terminalreporter.section("acceptance criteria")
    for number, text, ok in sorted(ACCEPTANCE_LOG):
        terminalreporter.write_line(f"[{'PASS' if ok else 'FAIL'}] criterion {number}: {text}")
