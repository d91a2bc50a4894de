"""Shared generators for the test suite.

All randomness is seeded through Philox keys so every test is reproducible;
generators return plain numpy arrays or package types.
"""

from __future__ import annotations

import numpy as np

from bipick.poly import BiPoly, Blaschke, torus_grid


def philox(seed: int, stream: int = 0) -> np.random.Generator:
    return np.random.Generator(
        np.random.Philox(key=np.array([np.uint64(seed), np.uint64(stream)]))
    )


def random_hermitian(rng: np.random.Generator, n: int) -> np.ndarray:
    a = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    return (a + a.conj().T) / 2


def random_psd(rng: np.random.Generator, n: int, rank: int | None = None) -> np.ndarray:
    k = rank if rank is not None else n
    b = rng.normal(size=(n, k)) + 1j * rng.normal(size=(n, k))
    return b @ b.conj().T


def disk_point(rng: np.random.Generator, radius: float) -> complex:
    return complex(radius * np.sqrt(rng.uniform()) * np.exp(2j * np.pi * rng.uniform()))


def distinct_disk_points(
    rng: np.random.Generator, count: int, radius: float = 0.7, separation: float = 0.05
) -> list[complex]:
    points: list[complex] = []
    while len(points) < count:
        z = disk_point(rng, radius)
        if all(abs(z - u) > separation for u in points):
            points.append(z)
    return points


def random_blaschke(
    rng: np.random.Generator, degree: int, radius: float = 0.8
) -> Blaschke:
    zeros = tuple(distinct_disk_points(rng, degree, radius, 0.05))
    u = complex(np.exp(2j * np.pi * rng.uniform()))
    return Blaschke(u, zeros)


def random_bidisk_nodes(
    rng: np.random.Generator, count: int, radius: float = 0.85
) -> tuple[tuple[complex, complex], ...]:
    nodes: list[tuple[complex, complex]] = []
    while len(nodes) < count:
        pt = (disk_point(rng, radius), disk_point(rng, radius))
        if all(
            abs(pt[0] - a) ** 2 + abs(pt[1] - b) ** 2 > 1e-4 for a, b in nodes
        ):
            nodes.append(pt)
    return tuple(nodes)


def _stable_univariate(rng: np.random.Generator, degree: int, var: int) -> BiPoly:
    p = BiPoly.constant(1.0)
    for _ in range(degree):
        root = complex((1.3 + 1.2 * rng.uniform()) * np.exp(2j * np.pi * rng.uniform()))
        factor = BiPoly.monomial(1, 0) if var == 1 else BiPoly.monomial(0, 1)
        p = p * (factor - BiPoly.constant(root))
    return p


def random_stable_poly(rng: np.random.Generator, bidegree: tuple[int, int]) -> BiPoly:
    """Polynomial with no zeros on the closed bidisk and the given bidegree.

    A product of stable univariate factors is perturbed by a random bivariate
    polynomial kept below a quarter of the product's torus minimum, which
    preserves stability with a wide margin.
    """
    n1, n2 = bidegree
    base = _stable_univariate(rng, n1, 1) * _stable_univariate(rng, n2, 2)
    t1, t2 = torus_grid(64)
    base_min = float(np.min(np.abs(base(t1, t2))))
    items = []
    for i in range(n1 + 1):
        for j in range(n2 + 1):
            items.append(((i, j), complex(rng.normal(), rng.normal())))
    pert = BiPoly(items)
    pmax = float(np.max(np.abs(pert(t1, t2))))
    if pmax > 0.0:
        pert = pert * (0.25 * base_min / pmax)
    return base + pert


def random_bipoly(
    rng: np.random.Generator, total_degree: int, scale: float = 1.0
) -> BiPoly:
    items = []
    for i in range(total_degree + 1):
        for j in range(total_degree + 1 - i):
            items.append(((i, j), scale * complex(rng.normal(), rng.normal())))
    return BiPoly(items)
