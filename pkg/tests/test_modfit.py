import random
from fractions import Fraction

import pytest

from soclecalc.modfit import (
    FitInconsistency,
    QuasimodularPoly,
    basis,
    evaluate,
    fit,
    graded_part,
    monomial_weight,
)
from soclecalc.qseries import QSeries, eisenstein, q_d_q


def _partition_count_246(v):
    # partitions of v into parts {2, 4, 6}, by direct enumeration
    count = 0
    for a in range(v // 2 + 1):
        for b in range(v // 4 + 1):
            for c in range(v // 6 + 1):
                if 2 * a + 4 * b + 6 * c == v:
                    count += 1
    return count


def test_basis_small_weights():
    assert basis(0) == [(0, 0, 0)]
    assert basis(2) == [(0, 0, 0), (1, 0, 0)]
    assert basis(4) == [(0, 0, 0), (1, 0, 0), (2, 0, 0), (0, 1, 0)]
    b6 = basis(6)
    assert b6[:4] == basis(4)
    assert b6[4:] == [(3, 0, 0), (1, 1, 0), (0, 0, 1)]


def test_basis_dimension_matches_partition_counts():
    for w in range(0, 31, 2):
        expected = sum(_partition_count_246(v) for v in range(0, w + 1, 2))
        assert len(basis(w)) == expected


def test_basis_is_graded():
    weights = [monomial_weight(m) for m in basis(12)]
    assert weights == sorted(weights)


def test_evaluate_monomials():
    assert evaluate(QuasimodularPoly({(1, 0, 0): 1}), 2) == eisenstein(2, 2)
    assert evaluate(QuasimodularPoly(), 3) == QSeries.zero(3)
    assert evaluate(QuasimodularPoly({(0, 1, 0): 1}), 1) == eisenstein(4, 1)


def test_evaluate_commutes_with_ring_ops():
    p = QuasimodularPoly({(1, 0, 0): Fraction(1, 2), (0, 1, 0): -3})
    q = QuasimodularPoly({(2, 0, 0): 1, (0, 0, 1): Fraction(2, 7)})
    order = 12
    assert evaluate(p + q, order) == evaluate(p, order) + evaluate(q, order)
    assert evaluate(p * q, order) == evaluate(p, order) * evaluate(q, order)


def test_fit_recovers_derivative_of_g2():
    # q d/dq G2 = -2 G2^2 + (5/6) G4; coefficients hand-checked at
    # q^1 (-2*(-1/12) + 5/6 = 1) and q^2 (-3/2 + 15/2 = 6)
    p = fit(q_d_q(eisenstein(2, 12)), 4)
    assert p == QuasimodularPoly({(2, 0, 0): -2, (0, 1, 0): Fraction(5, 6)})


def test_fit_recognizes_generator():
    p = fit(eisenstein(6, 12), 6)
    assert p == QuasimodularPoly({(0, 0, 1): 1})


def test_fit_reports_inconsistency():
    s = QSeries((1, 1) + (0,) * 11)  # 1 + q is not quasimodular
    rep = fit(s, 4)
    assert isinstance(rep, FitInconsistency)
    # four basis monomials fix the first rows; the first row that cannot
    # be matched was computed beforehand by the same elimination by hand
    assert rep.first_inconsistent_power == 4
    assert "q^4" in str(rep)


def test_fit_round_trip_random_polys():
    rng = random.Random(3)
    monos = basis(8)
    for _ in range(10):
        terms = {
            m: Fraction(rng.randint(-6, 6), rng.randint(1, 4))
            for m in rng.sample(monos, k=rng.randint(1, 5))
        }
        p = QuasimodularPoly(terms)
        assert fit(evaluate(p, 25), 8) == p


def test_fit_stable_under_higher_order():
    target = q_d_q(eisenstein(2, 30))
    assert fit(target, 4) == fit(target.truncate(14), 4)


def test_fit_underdetermined_is_an_error():
    with pytest.raises(ValueError):
        fit(eisenstein(2, 8), 8)  # 11 monomials, 9 rows: no surplus
    with pytest.raises(ValueError):
        fit(eisenstein(2, 12), 4, margin=0)


def test_fit_free_constant_mode():
    # drop the constant: fitting the tail of 3*G4 with a free constant
    # recovers the G4 coefficient and no pure-constant term
    s = eisenstein(4, 12).scale(3)
    tail = QSeries(s.coeffs, constant_known=False)
    p = fit(tail, 4, free_constant=True)
    assert p == QuasimodularPoly({(0, 1, 0): 3})
    # the implied regularized constant is the evaluated q^0 value
    assert evaluate(p, 0).coeffs[0] == Fraction(3, 240)
    with pytest.raises(ValueError):
        fit(tail, 4)  # unknown constant demands free_constant


def test_graded_part():
    p = QuasimodularPoly({(2, 0, 0): -2, (0, 1, 0): Fraction(5, 6)})
    assert graded_part(p, 4) == p
    assert graded_part(p, 0).is_zero()
    one_plus_g2 = QuasimodularPoly({(0, 0, 0): 1, (1, 0, 0): 1})
    assert graded_part(one_plus_g2, 0) == QuasimodularPoly({(0, 0, 0): 1})
    assert graded_part(QuasimodularPoly({(1, 0, 0): 1}), 4).is_zero()


def test_graded_decomposition_sums_back():
    rng = random.Random(11)
    monos = basis(10)
    for _ in range(6):
        p = QuasimodularPoly(
            {m: Fraction(rng.randint(-5, 5)) for m in rng.sample(monos, k=6)}
        )
        total = QuasimodularPoly()
        for w in range(0, 11, 2):
            total = total + graded_part(p, w)
        assert total == p


def test_poly_serialization_round_trip():
    p = QuasimodularPoly({(2, 0, 0): -2, (0, 1, 0): Fraction(5, 6)})
    obj = p.to_obj()
    assert obj == [
        {"exp": [2, 0, 0], "coeff": "-2/1"},
        {"exp": [0, 1, 0], "coeff": "5/6"},
    ]
    assert QuasimodularPoly.from_obj(obj) == p
