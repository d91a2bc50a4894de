import numpy as np
import pytest

from bipick.agler import (
    AglerPair,
    Extremality,
    Minimality,
    PickProblem2D,
    PsdStatus,
    SolvabilityStatus,
    SzegoVerdict,
    admissible_check,
    data_matrices,
    dykstra_decompose,
    extremality_test,
    kernel_library,
    minimality_test,
    nonuniqueness_certificate,
    nonuniqueness_flag,
    pair_residual,
    solvability_status,
    szego_kernel,
    szego_uniqueness_test,
    unsolvability_certificate,
    verify_agler_pair,
)
from bipick.errors import InputError, PreconditionError, UnsolvableError
from bipick.numcore import HermitianMatrix, Tolerances, numeric_rank, psd_status
from bipick.poly import Blaschke, make_rational_inner, BiPoly

from conftest import philox, random_bidisk_nodes, random_stable_poly

EX21 = PickProblem2D(((0.0, 0.0), (0.5, 0.5)), (0.0, 0.5))
IDENTITY_HINT = Blaschke(1.0, (0.0,))
J2 = np.ones((2, 2))


class TestProblemValidation:
    def test_rejects_boundary_nodes(self):
        with pytest.raises(InputError):
            PickProblem2D(((1.0, 0.0),), (0.0,))

    def test_allows_unimodular_targets(self):
        PickProblem2D(((0.0, 0.0),), (1.0,))

    def test_rejects_duplicate_nodes(self):
        with pytest.raises(InputError):
            PickProblem2D(((0.1, 0.2), (0.1, 0.2)), (0.0, 0.0))


class TestDataMatrices:
    def test_canonical_example(self):
        dm = data_matrices(EX21)
        expected = np.array([[1.0, 1.0], [1.0, 0.75]])
        assert np.allclose(dm.w.mat, expected)
        assert np.allclose(dm.l1.mat, expected)
        assert np.allclose(dm.l2.mat, expected)

    def test_single_node(self):
        dm = data_matrices(PickProblem2D(((0.0, 0.0),), (0.0,)))
        for m in (dm.w, dm.l1, dm.l2):
            assert np.allclose(m.mat, [[1.0]])

    def test_second_coordinate(self):
        dm = data_matrices(PickProblem2D(((0.0, 0.0), (0.5, 0.25)), (0.0, 0.5)))
        assert dm.l2.mat[1, 1] == pytest.approx(15.0 / 16.0)


class TestSzegoKernel:
    def test_diagonal_pair(self):
        k = szego_kernel(EX21.nodes)
        assert k.mat[1, 1] == pytest.approx(16.0 / 9.0)

    def test_single_node(self):
        assert np.allclose(szego_kernel(((0.0, 0.0),)).mat, [[1.0]])

    def test_one_active_coordinate(self):
        k = szego_kernel(((0.0, 0.0), (0.5, 0.0)))
        assert k.mat[1, 1] == pytest.approx(4.0 / 3.0)


class TestSzegoUniquenessTest:
    def test_canonical_example_inconclusive(self):
        res = szego_uniqueness_test(EX21)
        assert res.verdict is SzegoVerdict.INCONCLUSIVE
        assert np.allclose(res.wk.mat, [[1.0, 1.0], [1.0, 4.0 / 3.0]])
        assert not res.flags_unsolvable

    def test_single_node_inconclusive(self):
        res = szego_uniqueness_test(PickProblem2D(((0.0, 0.0),), (0.0,)))
        assert res.verdict is SzegoVerdict.INCONCLUSIVE

    def test_constant_level_problem_unique(self):
        # nodes on a constant second coordinate with identity first-coordinate
        # targets: W.K has rank 1 < node count
        w = 0.3
        l = np.sqrt(w)
        prob = PickProblem2D(((l, w), (-l, w)), (l, -l))
        res = szego_uniqueness_test(prob)
        assert res.verdict is SzegoVerdict.UNIQUE
        assert numeric_rank(res.wk) == 1


class TestAdmissibility:
    def test_szego_kernel_admissible(self):
        rng = philox(50)
        for _ in range(20):
            n = int(rng.integers(1, 7))
            nodes = random_bidisk_nodes(rng, n)
            targets = tuple(0.0 for _ in range(n))
            data = data_matrices(PickProblem2D(nodes, targets))
            assert admissible_check(szego_kernel(nodes), data)

    def test_all_ones_rejected(self):
        data = data_matrices(EX21)
        assert not admissible_check(HermitianMatrix(J2), data)

    def test_identity_admissible(self):
        data = data_matrices(EX21)
        assert admissible_check(HermitianMatrix(np.eye(2)), data)


class TestKernelLibrary:
    def test_includes_graph_kernel_for_matching_hint(self):
        lib = kernel_library(EX21, (IDENTITY_HINT,))
        assert [c.provenance for c in lib] == ["szego", "graph"]
        assert np.allclose(lib[1].kernel.mat, [[1.0, 1.0], [1.0, 4.0 / 3.0]])

    def test_szego_only_without_hints(self):
        lib = kernel_library(EX21)
        assert [c.provenance for c in lib] == ["szego"]

    def test_mismatched_hint_skipped(self):
        bad = Blaschke(1.0, (0.3,))
        lib = kernel_library(EX21, (bad,))
        assert [c.provenance for c in lib] == ["szego"]


class TestUnsolvabilityCertificate:
    def test_scaled_diagonal_violation(self):
        prob = PickProblem2D(((0.0, 0.0), (0.5, 0.5)), (0.0, 0.505))
        lib = kernel_library(prob, (IDENTITY_HINT,))
        cert = unsolvability_certificate(prob, lib)
        assert cert is not None
        assert cert.lambda_min_wk < 0

    def test_canonical_example_has_none(self):
        lib = kernel_library(EX21, (IDENTITY_HINT,))
        assert unsolvability_certificate(EX21, lib) is None

    def test_single_node_none(self):
        prob = PickProblem2D(((0.2, 0.1),), (0.5,))
        assert unsolvability_certificate(prob) is None


class TestDykstra:
    def test_coordinate_function_data(self):
        # targets from f = z1; an exact pair (ones, 0) exists
        prob = PickProblem2D(((0.0, 0.0), (0.5, 0.0)), (0.0, 0.5))
        res = dykstra_decompose(prob)
        assert res.feasible
        assert res.pair.residual <= 1e-8

    def test_canonical_example_feasible(self):
        res = dykstra_decompose(EX21)
        assert res.feasible
        data = data_matrices(EX21)
        verify_agler_pair(res.pair, data, Tolerances())

    def test_unsolvable_returns_undecided(self):
        prob = PickProblem2D(((0.0, 0.0), (0.5, 0.5)), (0.0, 0.99))
        res = dykstra_decompose(prob, budget=3000)
        assert not res.feasible
        assert res.pair is None


class TestSolvabilityStatus:
    def test_canonical_example_solvable(self):
        rep = solvability_status(EX21, hints=(IDENTITY_HINT,))
        assert rep.status is SolvabilityStatus.SOLVABLE
        assert rep.pair is not None

    def test_diagonal_violation_unsolvable(self):
        prob = PickProblem2D(((0.0, 0.0), (0.5, 0.5)), (0.0, 0.9))
        rep = solvability_status(prob, hints=(IDENTITY_HINT,))
        assert rep.status is SolvabilityStatus.UNSOLVABLE
        assert rep.certificate is not None

    def test_single_node_solvable(self):
        rep = solvability_status(PickProblem2D(((0.1, 0.2),), (0.7,)))
        assert rep.status is SolvabilityStatus.SOLVABLE

    def test_unique_instances_never_unsolvable(self):
        w = 0.3
        l = np.sqrt(w)
        prob = PickProblem2D(((l, w), (-l, w)), (l, -l))
        assert szego_uniqueness_test(prob).verdict is SzegoVerdict.UNIQUE
        assert solvability_status(prob).status is not SolvabilityStatus.UNSOLVABLE


class TestExtremality:
    def test_canonical_example_extremal_with_hint(self):
        rep = extremality_test(EX21, hints=(IDENTITY_HINT,))
        assert rep.status is Extremality.EXTREMAL
        assert rep.certificate is not None

    def test_small_targets_not_extremal(self):
        prob = PickProblem2D(((0.0, 0.0), (0.5, 0.5)), (0.0, 0.25))
        rep = extremality_test(prob, hints=(IDENTITY_HINT,))
        assert rep.status is Extremality.NOT_EXTREMAL
        assert rep.scaled_pair is not None

    def test_without_hint_undecided(self):
        rep = extremality_test(EX21, budget=5000)
        assert rep.status is Extremality.UNDECIDED

    def test_unsolvable_rejected(self):
        prob = PickProblem2D(((0.0, 0.0), (0.5, 0.5)), (0.0, 0.9))
        with pytest.raises(UnsolvableError):
            extremality_test(prob, hints=(IDENTITY_HINT,))


class TestMinimality:
    def test_canonical_example_minimal(self):
        rep = minimality_test(EX21, hints=(IDENTITY_HINT,))
        assert rep.status is Minimality.MINIMAL
        assert all(s.status is Extremality.NOT_EXTREMAL for s in rep.subreports)

    def test_three_diagonal_nodes_not_minimal(self):
        prob = PickProblem2D(
            ((0.0, 0.0), (0.5, 0.5), (-0.4, -0.4)), (0.0, 0.5, -0.4)
        )
        rep = minimality_test(prob, hints=(IDENTITY_HINT,))
        assert rep.status is Minimality.NOT_MINIMAL

    def test_requires_extremal(self):
        prob = PickProblem2D(((0.0, 0.0), (0.5, 0.5)), (0.0, 0.25))
        with pytest.raises(PreconditionError):
            minimality_test(prob, hints=(IDENTITY_HINT,))


class TestNonUniquenessCertificate:
    def test_canonical_example_by_hand(self):
        cert = nonuniqueness_certificate(J2, J2)
        # u spans the kernel of the all-ones matrix, v its orthocomplement line
        assert abs(abs(np.vdot(cert.u, [1, -1] / np.sqrt(2))) - 1.0) <= 1e-9
        assert abs(abs(np.vdot(cert.v, [1, 1] / np.sqrt(2))) - 1.0) <= 1e-9
        assert len(cert.xr) == 1
        assert cert.epsilon == pytest.approx(2.0, rel=1e-5)
        assert np.allclose(cert.pair.delta.mat, J2, atol=1e-5)
        assert np.linalg.norm(cert.pair.gamma.mat) <= 1e-5

    def test_full_rank_a_rejected(self):
        with pytest.raises(PreconditionError):
            nonuniqueness_certificate(J2, np.eye(2))

    def test_positive_definite_gamma0_rejected(self):
        with pytest.raises(PreconditionError):
            nonuniqueness_certificate(np.eye(2), J2)

    def test_reconstructs_w_for_problem_data(self):
        # data from a one-variable function on graph nodes: the pair must
        # reconstruct W through the entrywise identity A . L1 = L2
        rng = philox(51)
        for _ in range(5):
            lam = np.array([0.0, 0.45 * np.exp(2j * np.pi * rng.uniform())])
            m = Blaschke(1.0, (0.0,))
            nodes = tuple((complex(z), complex(m(z))) for z in lam)
            targets = tuple(complex(z) for z in lam)  # f = z1, degree 1 = n1
            prob = PickProblem2D(nodes, targets)
            data = data_matrices(prob)
            gamma0 = HermitianMatrix(data.w.mat / data.l1.mat)
            a = HermitianMatrix(data.l2.mat / data.l1.mat)
            cert = nonuniqueness_certificate(gamma0, a, data)
            assert cert.pair.residual <= 1e-8
            assert cert.pair.delta.frobenius() > 1e-8


class TestNonUniquenessFlag:
    def test_one_sided_pairs(self):
        z = np.zeros((2, 2))
        assert not nonuniqueness_flag(
            AglerPair(HermitianMatrix(J2), HermitianMatrix(z), 0.0)
        )
        assert not nonuniqueness_flag(
            AglerPair(HermitianMatrix(z), HermitianMatrix(J2), 0.0)
        )

    def test_balanced_pair(self):
        pair = AglerPair(HermitianMatrix(0.5 * J2), HermitianMatrix(0.5 * J2), 0.0)
        assert nonuniqueness_flag(pair)
        data = data_matrices(EX21)
        assert pair_residual(pair.gamma, pair.delta, data) <= 1e-12


class TestDecompositionSoundness:
    def test_restricted_inner_targets_feasible_or_undecided(self):
        rng = philox(52)
        for trial in range(10):
            p = random_stable_poly(rng, (1, 1))
            f = make_rational_inner(p)
            n = int(rng.integers(2, 5))
            nodes = random_bidisk_nodes(rng, n)
            targets = tuple(complex(f(a, b)) for a, b in nodes)
            prob = PickProblem2D(nodes, targets)
            rep = solvability_status(prob, budget=30_000)
            assert rep.status is not SolvabilityStatus.UNSOLVABLE
            if rep.status is SolvabilityStatus.SOLVABLE:
                verify_agler_pair(rep.pair, data_matrices(prob), Tolerances())
