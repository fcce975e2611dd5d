from fractions import Fraction

import pytest

from cspoly.coeffs import KAPPA
from cspoly.errors import CutoffExceeded
from cspoly.fbasis import f_deformed, f_vector
from cspoly.model import ModelSpec, preset
from cspoly.oracles import (
    bessel_explicit,
    bessel_generalised,
    classical_1var,
    gegenbauer,
    hermite,
    jacobi,
    jack_monic,
    laguerre,
    monic,
    schur,
    series_extract_f,
)
from cspoly.symcore import SymmetricPoly

II = preset("II").ab


def test_hermite_low_orders():
    assert hermite(0) == [1]
    assert hermite(2) == [-2, 0, 4]
    assert hermite(3) == [0, -12, 0, 8]


def test_laguerre_gegenbauer_jacobi_low_orders():
    A = Fraction(1, 3)
    assert laguerre(1, A) == [1 + A, -1]
    assert gegenbauer(2, Fraction(1)) == [-1, 0, 4]
    # P_1^(0,0) is Legendre P_1 = x
    assert jacobi(1, 0, 0) == [0, 1]
    assert jacobi(2, 0, 0) == [Fraction(-1, 2), 0, Fraction(3, 2)]


@pytest.mark.parametrize("a,b", [(Fraction(2, 3), Fraction(3, 5)), (Fraction(5), Fraction(-2)), (Fraction(1, 3), 2)])
def test_bessel_recurrence_matches_explicit_sum(a, b):
    for n in range(8):
        assert bessel_generalised(n, a, b) == bessel_explicit(n, a, b)


def test_bessel_degree_deficit_at_a_zero():
    # a = 1 - 2c vanishes for c = 1/2; y_1 then loses its linear term
    assert bessel_explicit(1, 0, 2) == [1, 0]
    with pytest.raises(ZeroDivisionError):
        bessel_generalised(2, 0, 2)


def test_classical_case_II_is_a_power():
    assert classical_1var("II", 3) == [0, 0, 0, 1]
    with pytest.raises(ValueError):
        classical_1var("IX", 1)


def test_monic():
    assert monic([2, 0, 4]) == [Fraction(1, 2), 0, 1]
    assert monic([0, 0]) == []


def test_jack_two_row():
    assert jack_monic((2,), 2, KAPPA) == SymmetricPoly(2, {(2,): 1, (1, 1): 2 * KAPPA / (KAPPA + 1)})
    assert jack_monic((1, 1), 2, KAPPA) == SymmetricPoly(2, {(1, 1): 1})


def test_jack_at_kappa_one_is_schur():
    for lam in ((2, 1), (3,), (1, 1, 1), (2, 2)):
        J = jack_monic(lam, 3, Fraction(1))
        assert J == schur(lam, 3).leading_normalized(lam)


def test_schur_example():
    assert schur((2, 1), 3) == SymmetricPoly(3, {(2, 1): 1, (1, 1, 1): 2})
    assert schur((1, 1, 1, 1), 3) == SymmetricPoly(3)


def test_series_examples():
    spec = ModelSpec(II, KAPPA, 1)
    assert series_extract_f((2,), spec) == SymmetricPoly(1, {(2,): (KAPPA ** 2 + KAPPA) / 2})
    spec2 = ModelSpec(II, KAPPA, 2)
    assert series_extract_f((0, 1), spec2) == f_vector((0, 1), spec2)
    assert not series_extract_f((0, -1), spec2)


def test_series_deformed():
    spec = ModelSpec(II, Fraction(2, 3), 1, 1)
    for n in ((1, 0), (0, 1), (2, -1), (1, 1)):
        assert series_extract_f(n, spec, 1, 1) == f_deformed(n, spec, 1, 1)


def test_series_cutoff_too_small():
    spec = ModelSpec(II, KAPPA, 2)
    with pytest.raises(CutoffExceeded):
        series_extract_f((-1, 2), spec, cutoff=0)
