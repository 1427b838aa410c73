from fractions import Fraction

import pytest

from diotrans.errors import BudgetExceeded
from diotrans.exactlinalg import identity_matrix, mat_mul, transpose
from diotrans.geometry import (
    Box,
    System,
    best_approx_table,
    box_contains,
    build_T,
    enumerate_nonzero,
    minkowski_guaranteed,
)
from diotrans.presets import get_preset


def _fib(k):
    a, b = 0, 1
    for _ in range(k):
        a, b = b, a + b
    return a


def test_T_matrices_are_mutually_inverse():
    system = System(2, 2, ((Fraction(1, 3), Fraction(2, 7)), (Fraction(5, 11), Fraction(1, 2))))
    T, Tp = build_T(system)
    prod = mat_mul(T, transpose(Tp))
    assert prod == [[Fraction(v) for v in row] for row in identity_matrix(4)]


def test_zero_theta_box_has_eight_points():
    system = System(1, 1, ((Fraction(0),),))
    box = Box(system, 1, 1, "primal")
    pts = enumerate_nonzero(box)
    assert len(pts) == 8  # all nonzero (x, y) with |x|, |y| <= 1


def test_box_membership_three_valued_only_for_enclosures():
    system = System(1, 1, ((Fraction(1, 2),),))
    box = Box(system, Fraction(1, 4), 2, "primal")
    assert box_contains(box, (2, -1)) is True  # |2*(1/2) - 1| = 0
    assert box_contains(box, (1, 0)) is False  # residual 1/2 > 1/4


def test_golden_records_are_fibonacci_denominators():
    system = get_preset("golden").build()
    table = best_approx_table(system, "primal", 150)
    ts = [rec.t for rec in table.records]
    fibs = {_fib(k) for k in range(2, 13)}
    assert set(ts[1:]) <= fibs  # every improvement happens at a Fibonacci t
    assert 144 in ts
    # psi is non-increasing along the table and positive
    psis = [rec.psi for rec in table.records]
    assert all(a > b for a, b in zip(psis, psis[1:]))


def test_golden_convergent_quality():
    # |F_11 * theta - F_10| at t = 89 is about theta^11 / ... < 1/144
    system = get_preset("golden").build()
    table = best_approx_table(system, "primal", 10**4)
    psi89 = table.psi_at(89)
    assert psi89 < Fraction(1, 144)


def test_witnesses_achieve_recorded_psi():
    system = get_preset("plastic").build()
    table = best_approx_table(system, "primal", 500)
    for rec in table.records:
        xinf, resid = system.primal_values(rec.witness)
        assert xinf <= rec.t
        assert resid == rec.psi


def test_dual_table_matches_transposed_primal():
    system = get_preset("plastic").build()
    t1 = best_approx_table(system, "dual", 300)
    t2 = best_approx_table(system.transposed(), "primal", 300)
    assert [(r.t, r.psi) for r in t1.records] == [(r.t, r.psi) for r in t2.records]


def test_minkowski_guarantee_threshold():
    system = System(1, 1, ((Fraction(1, 3),),))
    assert minkowski_guaranteed(system, 1, 1)
    assert not minkowski_guaranteed(system, Fraction(1, 2), 1)


def test_budget_exceeded_raised():
    system = get_preset("golden").build()
    with pytest.raises(BudgetExceeded):
        best_approx_table(system, "dual", 10**4, budget=10)


def test_table_serialization_roundtrip():
    system = get_preset("sqrt2").build()
    table = best_approx_table(system, "primal", 100)
    rows = table.to_rows()
    assert rows[0].keys() == {"t", "psi_num", "psi_den", "witness"}
    csv_text = table.to_csv()
    assert csv_text.splitlines()[0] == "t,psi_num,psi_den,witness"
    assert '"records"' in table.to_json()


def test_transposed_involution():
    system = System(1, 2, ((Fraction(1, 3), Fraction(2, 5)),))
    assert system.transposed().transposed() == system
