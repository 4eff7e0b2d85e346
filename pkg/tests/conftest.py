"""Shared deterministic generators for randomized suites."""

from __future__ import annotations

import random
from fractions import Fraction

import pytest

import ordmeasure as om
from ordmeasure.spaces import SpaceKind


def rational(rng: random.Random, lo=-4, hi=4, max_den=5) -> Fraction:
    return Fraction(rng.randint(lo, hi), rng.randint(1, max_den))


def nonneg_rational(rng: random.Random, hi=4, max_den=5) -> Fraction:
    return Fraction(rng.randint(0, hi), rng.randint(1, max_den))


def random_element(rng: random.Random, space) -> om.Element:
    """Arbitrary element; symmetric for the Loewner backend."""
    if space.kind is SpaceKind.LOEWNER_SYM:
        d = space.dim
        rows = [[Fraction(0)] * d for _ in range(d)]
        for i in range(d):
            for j in range(i, d):
                v = rational(rng)
                rows[i][j] = rows[j][i] = v
        return om.sym_matrix(rows)
    return om.Element(space, tuple(rational(rng) for _ in range(space.ncoords)))


def random_positive_element(rng: random.Random, space) -> om.Element:
    """Element of the positive cone (exact PSD via B^T B on Loewner)."""
    if space.kind is SpaceKind.LOEWNER_SYM:
        d = space.dim
        b = [[rational(rng, -2, 2, 3) for _ in range(d)] for _ in range(d)]
        rows = [
            [sum(b[k][i] * b[k][j] for k in range(d)) for j in range(d)]
            for i in range(d)
        ]
        return om.sym_matrix(rows)
    return om.Element(space, tuple(nonneg_rational(rng) for _ in range(space.ncoords)))


def random_ext_element(rng: random.Random, space, inf_prob=0.15,
                       positive=False) -> om.ExtElement:
    if rng.random() < inf_prob:
        return om.infinity(space)
    el = random_positive_element(rng, space) if positive else random_element(rng, space)
    return om.finite(el)


def random_algebra(rng: random.Random, ground: int) -> om.MeasurableSpace:
    if rng.random() < 0.3:
        return om.power_set_space(ground)
    gens = []
    for _ in range(rng.randint(0, 3)):
        mask = rng.randint(0, (1 << ground) - 1)
        gens.append(mask)
    return om.generate_sigma_algebra(gens, ground)


def random_measure(rng: random.Random, space: om.MeasurableSpace, backend,
                   inf_prob=0.2) -> om.Measure:
    values = {
        atom: random_ext_element(rng, backend, inf_prob=inf_prob, positive=True)
        for atom in space.atoms
    }
    return om.Measure(space, backend, values)


@pytest.fixture
def rng():
    return random.Random(20240811)
