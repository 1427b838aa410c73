import random
from fractions import Fraction

import pytest

from diotrans.geometry import System
from diotrans.harness import (
    CORE_FAMILIES,
    MAX_EXP,
    check_all_inequalities,
    check_inequality,
    campaign_dominions,
    campaign_inequalities,
    campaign_uniform_bounds,
    dominions,
    dominions_brute,
    estimate_exponents,
    loranoyadenie_rhs,
    reports_to_csv,
    uniform_bound_comparison,
)
from diotrans.errors import DomainError
from diotrans.functions import FunctionSpec
from diotrans.presets import get_preset


# ---------------------------------------------------------------------------
# exponent estimation
# ---------------------------------------------------------------------------


def test_golden_exponents_near_one():
    system = get_preset("golden").build()
    for side in ("primal", "dual"):
        est = estimate_exponents(system, side, 10**5)
        assert abs(est.alpha_fit - 1.0) < 0.05
        assert abs(est.beta_fit - 1.0) < 0.05
        assert not est.capped


def test_sqrt2_exponents_near_one():
    system = get_preset("sqrt2").build()
    est = estimate_exponents(system, "primal", 10**5)
    assert abs(est.alpha_fit - 1.0) < 0.05 and abs(est.beta_fit - 1.0) < 0.05


def test_plastic_pair_exponents():
    # algebraic 1x2 vector: individual exponents 2 and 1/2 up to scan noise
    system = get_preset("plastic").build()
    ep = estimate_exponents(system, "primal", 3000)
    ed = estimate_exponents(system, "dual", 10**5)
    assert 1.8 < ep.beta_fit < 2.1
    assert 0.45 < ed.beta_fit < 0.56


def test_exactly_rational_direction_caps():
    system = System(1, 1, ((Fraction(1, 7),),))
    est = estimate_exponents(system, "primal", 100)
    assert est.capped
    assert est.beta_fit == float(MAX_EXP)


def test_estimate_invariants():
    rng = random.Random(3)
    from diotrans.presets import random_system

    for _ in range(5):
        system = random_system(rng, 1, 2)
        est = estimate_exponents(system, "primal", 800)
        assert est.beta_fit >= est.alpha_fit >= 0
        assert est.beta_lower >= est.alpha_lower >= 0
        # certified statements are sound, so they cannot wildly exceed the fit
        assert float(est.alpha_lower) <= est.alpha_fit + 0.5


# ---------------------------------------------------------------------------
# single inequality checks on hand-picked exponents
# ---------------------------------------------------------------------------


def test_dyson_equality_point_passes():
    exps = {"alpha": 1.0, "alpha_t": 1.0, "beta": 1.0, "beta_t": 1.0}
    rep = check_inequality("dyson", 1, 1, exps)
    assert rep.passed and -0.01 <= rep.slack <= 0.11  # equality point


def test_khintchine_violated_point_fails():
    # beta_t must be at least beta/(beta+1)... a gross violation must fail
    exps = {"alpha": 1.0, "alpha_t": 1.0, "beta": 3.0, "beta_t": 0.2}
    rep = check_inequality("khintchine", 1, 2, exps)
    assert not rep.passed


def test_jarnik_equality_exact_point():
    exps = {"alpha": 2.0, "alpha_t": 0.5, "beta": 2.0, "beta_t": 0.5}
    rep = check_inequality("jarnik_equality", 1, 2, exps)
    assert rep.passed and abs(rep.slack) <= 0.1


def test_loranoyadenie_rhs_exact_values():
    # k = 1 at n = 1, m = 2, beta = 2: (1*2 + 0) / (1*2 + 2) = 1/2
    assert loranoyadenie_rhs(1, 1, 2, Fraction(2), Fraction(2)) == Fraction(1, 2)
    # k = 2 at alpha = 1 collapses to k = 1 shape
    assert loranoyadenie_rhs(2, 1, 2, Fraction(1), Fraction(2)) == Fraction(0)
    with pytest.raises(DomainError):
        loranoyadenie_rhs(4, 1, 2, Fraction(1), Fraction(1))


def test_dominions_matches_brute_on_grid():
    for n in (1, 2, 3):
        for m in (1, 2, 3):
            if n == m == 1:
                continue
            lo = Fraction(m, n)
            hi = Fraction(1) if m == 1 else lo + 3
            for i in range(7):
                alpha = lo + (hi - lo) * Fraction(i, 7)
                for j in range(7):
                    beta = alpha + Fraction(j, 3)
                    _, winner = dominions(n, m, alpha, beta)
                    assert winner in dominions_brute(n, m, alpha, beta)


def test_dominions_case_labels():
    assert dominions(2, 1, Fraction(1, 2), Fraction(1)) == ("i", 2)
    case, _ = dominions(1, 2, Fraction(5, 2), Fraction(5, 2))
    assert case in ("iii", "iv")
    with pytest.raises(DomainError):
        dominions(1, 2, Fraction(3), Fraction(1))  # beta < alpha


def test_campaign_dominions_smoke():
    result = campaign_dominions(trials=200, seed=5)
    assert result.all_passed


# ---------------------------------------------------------------------------
# end-to-end inequality campaigns (small smokes; full runs in acceptance)
# ---------------------------------------------------------------------------


def test_presets_pass_core_inequalities():
    for name in ("golden", "sqrt2", "plastic", "plastic_dual"):
        system = get_preset(name).build()
        reports = check_all_inequalities(system, tier="fast", families=CORE_FAMILIES)
        assert reports, name
        bad = [r for r in reports if not r.passed]
        assert not bad, (name, [r.as_dict() for r in bad])


def test_campaign_inequalities_smoke():
    result = campaign_inequalities(1, 1, trials=5, seed=2, tier="fast")
    assert result.all_passed, result.failures[:3]


def test_reports_to_csv_shape():
    system = get_preset("golden").build()
    reports = check_all_inequalities(system, tier="fast")
    text = reports_to_csv(reports)
    lines = text.strip().splitlines()
    assert lines[0] == "family,n,m,lhs,rhs,slack,passed"
    assert len(lines) == len(reports) + 1


# ---------------------------------------------------------------------------
# sharpened vs classical uniform bounds
# ---------------------------------------------------------------------------


def test_uniform_bound_decreasing_branch_factor():
    psi = FunctionSpec("power", Fraction(1), Fraction(-2))
    branch, classical, sharpened = uniform_bound_comparison(psi, 10**3)
    assert branch == "i"
    # psi^-(s) = s^(-1/2): classical ~ 12.024/t * sqrt(t), sharpened
    # 3/(4t) * sqrt(3t/2) -- ratio well above 4
    assert float(sharpened) * 4 <= float(classical)


def test_uniform_bound_increasing_branch():
    psi = FunctionSpec("power", Fraction(1), Fraction(-1, 2))
    branch, classical, sharpened = uniform_bound_comparison(psi, 10**2)
    assert branch == "ii"
    assert float(sharpened) <= float(classical)


def test_campaign_uniform_bounds_deterministic():
    r1 = campaign_uniform_bounds()
    r2 = campaign_uniform_bounds()
    assert r1.all_passed
    assert r1.to_json() == r2.to_json()
