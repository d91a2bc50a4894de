import json

import numpy as np
import pytest

from bipick import serialize as ser
from bipick.agler import (
    data_matrices,
    dykstra_decompose,
    extremality_test,
    minimality_test,
    nonuniqueness_certificate,
    solvability_status,
    PickProblem2D,
)
from bipick.classify import one_variable_classifier
from bipick.errors import InputError
from bipick.numcore import HermitianMatrix
from bipick.pick1d import PickProblem1D
from bipick.poly import BiPoly, Blaschke, RationalInner

from conftest import philox, random_hermitian

EX21 = PickProblem2D(((0.0, 0.0), (0.5, 0.5)), (0.0, 0.5))
IDENTITY_HINT = Blaschke(1.0, (0.0,))


def _canon(obj) -> str:
    return json.dumps(obj, sort_keys=True)


class TestScalarCodecs:
    def test_complex_round_trip(self):
        z = 0.125 - 3.5j
        assert ser.decode_complex(ser.encode_complex(z)) == z

    def test_complex_rejects_garbage(self):
        with pytest.raises(InputError):
            ser.decode_complex([1.0, 2.0])

    def test_matrix_round_trip(self):
        h = HermitianMatrix(random_hermitian(philox(90), 4))
        back = ser.decode_matrix(ser.encode_matrix(h))
        assert np.array_equal(back.mat, h.mat)


class TestPolynomialCodecs:
    def test_bipoly_round_trip(self):
        p = BiPoly({(0, 0): 1.5, (2, 1): -0.5 + 2j})
        d = ser.encode_bipoly(p)
        assert ser.decode_bipoly(d) == p
        assert _canon(ser.encode_bipoly(ser.decode_bipoly(d))) == _canon(d)

    def test_unipoly_round_trip(self):
        from bipick.poly import UniPoly

        u = UniPoly([1.0, 0.0, -2.0j])
        assert ser.decode_unipoly(ser.encode_unipoly(u)) == u

    def test_blaschke_round_trip(self):
        m = Blaschke(np.exp(0.7j), (0.2, -0.3 + 0.1j))
        back = ser.decode_blaschke(ser.encode_blaschke(m))
        assert back.unimodular == m.unimodular
        assert back.zeros == m.zeros

    def test_rational_inner_round_trip(self):
        f = RationalInner(BiPoly.monomial(1, 1), BiPoly.constant(1.0))
        d = ser.encode_rational_inner(f)
        back = ser.decode_rational_inner(d)
        assert back.numerator == f.numerator
        assert back.denominator == f.denominator


class TestProblemCodecs:
    def test_problem1d_round_trip(self):
        p = PickProblem1D((0.0, 0.5j), (0.1, -0.2))
        back = ser.decode_problem1d(ser.encode_problem1d(p))
        assert back == p

    def test_problem2d_round_trip(self):
        back = ser.decode_problem2d(ser.encode_problem2d(EX21))
        assert back == EX21

    def test_problem2d_validates(self):
        bad = {"nodes": [[{"re": 2.0}, {"re": 0.0}]], "targets": [{"re": 0.0}]}
        with pytest.raises(InputError):
            ser.decode_problem2d(bad)


class TestReportCodecs:
    def test_solvability_round_trip(self):
        rep = solvability_status(EX21, hints=(IDENTITY_HINT,))
        d = ser.encode_solvability(rep)
        assert _canon(ser.encode_solvability(ser.decode_solvability(d))) == _canon(d)

    def test_unsolvable_report_round_trip(self):
        prob = PickProblem2D(((0.0, 0.0), (0.5, 0.5)), (0.0, 0.9))
        rep = solvability_status(prob, hints=(IDENTITY_HINT,))
        d = ser.encode_solvability(rep)
        assert _canon(ser.encode_solvability(ser.decode_solvability(d))) == _canon(d)

    def test_extremality_and_minimality_round_trip(self):
        ext = extremality_test(EX21, hints=(IDENTITY_HINT,))
        d = ser.encode_extremality(ext)
        assert _canon(ser.encode_extremality(ser.decode_extremality(d))) == _canon(d)
        mini = minimality_test(EX21, hints=(IDENTITY_HINT,), base=ext)
        dm = ser.encode_minimality(mini)
        assert _canon(ser.encode_minimality(ser.decode_minimality(dm))) == _canon(dm)

    def test_classification_round_trip_both_verdicts(self):
        f = RationalInner(BiPoly.monomial(1, 0), BiPoly.constant(1.0))
        for nodes in (((0.0, 0.0), (0.5, 0.5)), ((0.0, 0.0), (0.5, 0.25))):
            rep = one_variable_classifier(f, nodes)
            d = ser.encode_classification(rep)
            back = ser.decode_classification(d)
            assert _canon(ser.encode_classification(back)) == _canon(d)

    def test_nonuniqueness_certificate_round_trip(self):
        cert = nonuniqueness_certificate(np.ones((2, 2)), np.ones((2, 2)))
        d = ser.encode_nonuniqueness_certificate(cert)
        back = ser.decode_nonuniqueness_certificate(d)
        assert _canon(ser.encode_nonuniqueness_certificate(back)) == _canon(d)
