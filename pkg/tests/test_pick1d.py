import numpy as np
import pytest

from bipick.errors import InputError, PreconditionError, UnsolvableError
from bipick.numcore import PsdStatus, numeric_rank, psd_status
from bipick.pick1d import (
    PickProblem1D,
    interpolate_blaschke,
    pick_matrix,
    solvable,
    solve_schur,
    solve_singular,
    unique,
)

from conftest import distinct_disk_points, philox, random_blaschke

SCHWARZ = PickProblem1D((0.0, 0.5), (0.0, 0.5))


class TestProblemValidation:
    def test_requires_matching_lengths(self):
        with pytest.raises(InputError):
            PickProblem1D((0.0,), (0.0, 0.5))

    def test_requires_open_disk_nodes(self):
        with pytest.raises(InputError):
            PickProblem1D((1.0,), (0.0,))

    def test_requires_distinct_nodes(self):
        with pytest.raises(InputError):
            PickProblem1D((0.1, 0.1 + 1e-10), (0.0, 0.0))


class TestPickMatrix:
    def test_single_node(self):
        pm = pick_matrix(PickProblem1D((0.0,), (0.0,)))
        assert np.allclose(pm.mat, [[1.0]])

    def test_schwarz_all_ones(self):
        pm = pick_matrix(SCHWARZ)
        assert np.allclose(pm.mat, np.ones((2, 2)))

    def test_zero_target(self):
        pm = pick_matrix(PickProblem1D((0.0, 0.5), (0.0, 0.0)))
        assert pm.mat[1, 1] == pytest.approx(4.0 / 3.0)


class TestSolvableUnique:
    def test_schwarz_solvable_unique(self):
        assert solvable(SCHWARZ)
        assert unique(SCHWARZ)

    def test_strict_contraction_not_unique(self):
        prob = PickProblem1D((0.0, 0.5), (0.0, 0.0))
        assert solvable(prob)
        assert not unique(prob)

    def test_schwarz_violation(self):
        prob = PickProblem1D((0.0, 0.5), (0.0, 0.9))
        assert not solvable(prob)
        with pytest.raises(UnsolvableError):
            unique(prob)

    def test_single_node_solvable(self):
        assert solvable(PickProblem1D((0.0,), (0.0,)))
        assert not unique(PickProblem1D((0.0,), (0.5,)))


class TestSolveSingular:
    def test_schwarz_recovers_identity(self):
        m = solve_singular(SCHWARZ)
        assert m.degree == 1
        rng = philox(40)
        for _ in range(50):
            z = complex(0.9 * np.sqrt(rng.uniform()) * np.exp(2j * np.pi * rng.uniform()))
            assert abs(m(z) - z) <= 1e-8

    def test_rejects_positive_definite(self):
        with pytest.raises(PreconditionError):
            solve_singular(PickProblem1D((0.0,), (0.0,)))

    def test_three_node_identity(self):
        prob = PickProblem1D((0.0, 0.5, -0.5), (0.0, 0.5, -0.5))
        m = solve_singular(prob)
        assert m.degree == 1
        assert abs(m(0.25) - 0.25) <= 1e-9


class TestSolveSchur:
    def test_single_zero_target(self):
        m = solve_schur(PickProblem1D((0.0,), (0.0,)))
        assert m.degree == 1
        assert abs(m(0.0)) <= 1e-12

    def test_single_half_target(self):
        m = solve_schur(PickProblem1D((0.0,), (0.5,)))
        assert m.degree == 1
        assert abs(m(0.0) - 0.5) <= 1e-10

    def test_two_nodes(self):
        prob = PickProblem1D((0.0, 0.5), (0.0, 0.25))
        m = solve_schur(prob)
        assert m.degree == 2
        assert abs(m(0.0)) <= 1e-9
        assert abs(m(0.5) - 0.25) <= 1e-9

    def test_unimodular_on_circle(self):
        rng = philox(41)
        nodes = distinct_disk_points(rng, 4, 0.6)
        targets = [0.5 * z for z in nodes]
        m = solve_schur(PickProblem1D(tuple(nodes), tuple(targets)))
        for theta in np.linspace(0, 2 * np.pi, 64, endpoint=False):
            assert abs(abs(m(np.exp(1j * theta))) - 1.0) <= 1e-8


class TestInterpolateBlaschke:
    def test_positive_definite_case(self):
        m = interpolate_blaschke((0.0, 0.5), (0.0, 0.25))
        assert m.degree == 2
        assert abs(m(0.5) - 0.25) <= 1e-9

    def test_singular_case_identity(self):
        m = interpolate_blaschke((0.0, 0.5), (0.0, 0.5))
        assert m.degree == 1

    def test_single_node(self):
        m = interpolate_blaschke((0.0,), (0.0,))
        assert m.degree == 1

    def test_unsolvable(self):
        with pytest.raises(UnsolvableError):
            interpolate_blaschke((0.0, 0.5), (0.0, 0.9))


class TestRoundTrip:
    def test_restriction_recovers_blaschke(self):
        # nodes beyond the degree force a singular Pick matrix of rank equal
        # to the degree, and the singular solver recovers the function
        rng = philox(42)
        for _ in range(25):
            d = int(rng.integers(1, 5))
            m = random_blaschke(rng, d)
            nodes = distinct_disk_points(rng, d + 1, 0.7)
            targets = tuple(complex(m(z)) for z in nodes)
            prob = PickProblem1D(tuple(nodes), targets)
            pm = pick_matrix(prob)
            assert psd_status(pm).status is PsdStatus.PSD_SINGULAR
            assert numeric_rank(pm) == d
            rec = solve_singular(prob)
            assert rec.degree == d
            for _ in range(50):
                z = complex(0.9 * np.sqrt(rng.uniform()) * np.exp(2j * np.pi * rng.uniform()))
                assert abs(rec(z) - m(z)) <= 1e-7

    def test_few_nodes_stay_positive_definite(self):
        rng = philox(43)
        for _ in range(10):
            d = int(rng.integers(2, 5))
            m = random_blaschke(rng, d)
            n = int(rng.integers(1, d + 1))
            nodes = distinct_disk_points(rng, n, 0.7)
            targets = tuple(complex(m(z)) for z in nodes)
            pm = pick_matrix(PickProblem1D(tuple(nodes), targets))
            assert psd_status(pm).status is PsdStatus.PD
