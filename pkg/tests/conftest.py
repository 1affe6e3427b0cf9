"""Shared builders for the test suite."""

import random
from fractions import Fraction

import pytest

from cyclevol.chains import Chain, boundary


def cube_cycle() -> Chain:
    """Unit-cube boundary triangulated as an outward-oriented 2-cycle;
    corner id = 4x + 2y + z."""

    def cid(x, y, z):
        return 4 * x + 2 * y + z

    faces = [
        [(0, 0, 0), (0, 1, 0), (1, 1, 0), (1, 0, 0)],  # z=0
        [(0, 0, 1), (1, 0, 1), (1, 1, 1), (0, 1, 1)],  # z=1
        [(0, 0, 0), (1, 0, 0), (1, 0, 1), (0, 0, 1)],  # y=0
        [(0, 1, 0), (0, 1, 1), (1, 1, 1), (1, 1, 0)],  # y=1
        [(0, 0, 0), (0, 0, 1), (0, 1, 1), (0, 1, 0)],  # x=0
        [(1, 0, 0), (1, 1, 0), (1, 1, 1), (1, 0, 1)],  # x=1
    ]
    tris = []
    for quad in faces:
        a, b, c, d = [cid(*p) for p in quad]
        tris.append(((a, b, c), 1))
        tris.append(((a, c, d), 1))
    return Chain.from_terms(2, tris)


def cube_coords():
    return {
        4 * x + 2 * y + z: (Fraction(x), Fraction(y), Fraction(z))
        for x in (0, 1)
        for y in (0, 1)
        for z in (0, 1)
    }


def random_chain(rng: random.Random, dim: int, pool: int = 8, terms: int = 5) -> Chain:
    items = []
    for _ in range(terms):
        verts = rng.sample(range(pool), dim + 1)
        coeff = rng.randint(-5, 5)
        if coeff:
            items.append((verts, coeff))
    return Chain.from_terms(dim, items)


def random_boundary_cycle(rng: random.Random, dim: int = 3, pool: int = 8, pieces: int = 4) -> Chain:
    """Random integer combination of simplex boundaries (always a cycle)."""
    Z = Chain.zero(dim)
    for _ in range(pieces):
        verts = rng.sample(range(pool), dim + 2)
        coeff = rng.randint(-3, 3)
        if coeff:
            Z = Z + coeff * boundary(Chain.from_terms(dim + 1, [(tuple(verts), 1)]))
    return Z


def random_rational_embedding(rng: random.Random, vertices, n: int, span: int = 8):
    coords = {
        v: tuple(Fraction(rng.randint(-span, span), rng.randint(1, 4)) for _ in range(n))
        for v in vertices
    }
    from cyclevol.geometry import Embedding

    return Embedding.exact(n, coords)


@pytest.fixture
def rng():
    return random.Random(20260810)
