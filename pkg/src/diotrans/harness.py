"""Exponent estimation and systematic inequality verification.

The estimators fit individual (beta) and uniform (alpha) Diophantine
exponents from exact best-approximation tables; the checkers evaluate the
classical and sharpened transference inequalities between the four
exponents of a system and its transpose, and the dominance classifier says
which of the three individual-exponent lower bounds is strongest.
"""
from __future__ import annotations

import csv
import io
import json
import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from .errors import DomainError
from .functions import FunctionSpec
from .geometry import BestApproxTable, System, best_approx_table
from .presets import PRESETS, random_system

MAX_EXP = Fraction(50)
DEFAULT_TOL = 0.1


# ---------------------------------------------------------------------------
# exponent estimation
# ---------------------------------------------------------------------------


def _log_fraction(f: Fraction) -> float:
    # math.log handles arbitrary-size integers; Fractions it does not.
    return math.log(f.numerator) - math.log(f.denominator)


@dataclass
class ExponentEstimate:
    side: str
    t_max: int
    alpha_fit: float
    beta_fit: float
    alpha_lower: Fraction  # certified: psi(t) <= t^-alpha_lower on the window
    beta_lower: Fraction  # certified: psi(t) <= t^-beta_lower at some record
    capped: bool
    n_records: int

    def as_dict(self):
        return {
            "side": self.side,
            "t_max": self.t_max,
            "alpha_fit": self.alpha_fit,
            "beta_fit": self.beta_fit,
            "alpha_lower": str(self.alpha_lower),
            "beta_lower": str(self.beta_lower),
            "capped": self.capped,
            "n_records": self.n_records,
        }


def _trend_slope(pts: Sequence[tuple[float, float]]) -> float:
    """Theil-Sen slope (median of pairwise slopes): robust against the
    isolated exceptionally-good records that real systems produce."""
    slopes = sorted(
        (pts[j][1] - pts[i][1]) / (pts[j][0] - pts[i][0])
        for i in range(len(pts))
        for j in range(i + 1, len(pts))
        if pts[j][0] > pts[i][0]
    )
    if not slopes:
        return 0.0
    k = len(slopes)
    mid = k // 2
    return slopes[mid] if k % 2 else (slopes[mid - 1] + slopes[mid]) / 2


def _certify_record_exponent(psi: Fraction, t: int, start: float) -> Fraction:
    """Largest gamma = p/q (q <= 64) <= start with psi <= t^-gamma, exact."""
    gamma = Fraction(min(start, float(MAX_EXP))).limit_denominator(64)
    step = Fraction(1, 64)
    while gamma > 0:
        # psi <= t^-gamma  <=>  psi_num^q * t^p <= psi_den^q
        p, q = gamma.numerator, gamma.denominator
        if psi.numerator**q * t**p <= psi.denominator**q:
            return gamma
        gamma -= step
    return Fraction(0)


def estimate_exponents(
    system: System,
    side: str,
    t_max: int,
    budget: int = 10**9,
    table: Optional[BestApproxTable] = None,
) -> ExponentEstimate:
    """Fit alpha and beta from the jump table of the best-approximation
    function.

    beta_fit is a robust trend slope of -log psi against log t over the
    records (limsup proxy; the median of pairwise slopes cancels the
    multiplicative constant and discounts isolated lucky records), with an
    end-of-scan anchor when the table is too sparse for a slope.  alpha_fit
    is the min over the last-decade window of -log psi(t-) / log t evaluated
    just before each jump (liminf proxy), refined by the same trend fit on
    the pre-jump points.  Exact certified record exponents accompany both
    fits.  psi = 0 records (exactly rational directions) cap the exponents
    at MAX_EXP.
    """
    if table is None:
        table = best_approx_table(system, side, t_max, budget=budget)
    records = table.records
    capped = any(rec.psi == 0 for rec in records)

    # Working points: (log t, -log psi).  The plain ratio -log psi / log t
    # carries an O(1/log t) bias from the multiplicative constant of psi, so
    # the slope estimates below come from least-squares fits, which cancel
    # that constant; raw ratios are kept as exact-data fallbacks.
    pts = [
        (math.log(rec.t), -_log_fraction(rec.psi))
        for rec in records
        if rec.t >= 2 and rec.psi > 0
    ]

    beta_fit = 0.0
    beta_lower = Fraction(0)
    if capped:
        beta_fit = float(MAX_EXP)
        beta_lower = MAX_EXP
    elif len(pts) >= 5:
        beta_fit = _trend_slope(pts)
    elif pts:
        # Too few records for a slope: anchor at the end of the scan.  The
        # scan certifies psi(t_max) exactly, whereas the ratio at a lone
        # record's own scale just echoes that record's fluctuation.
        beta_fit = pts[-1][1] / math.log(t_max)
    beta_fit = max(0.0, min(beta_fit, float(MAX_EXP)))
    if pts and not capped:
        # certified statement about the deepest record only
        x, y = pts[-1]
        rec = next(r for r in reversed(records) if r.psi > 0 and r.t >= 2)
        beta_lower = _certify_record_exponent(rec.psi, rec.t, y / x)

    # alpha: the value held just before each new record arrives, i.e. the
    # pairs (log t_{k+1}, -log psi_k); slope fit over all pairs, floored by
    # the raw minimum over the last decade of the scan.
    window_lo = max(2, t_max // 10)
    jump_pts = []
    raw_window = []
    alpha_lower = MAX_EXP
    for i, rec in enumerate(records):
        t_end = records[i + 1].t if i + 1 < len(records) else t_max
        if rec.t < 2 or t_end < 2:
            continue
        if rec.psi == 0:
            continue
        val = -_log_fraction(rec.psi) / math.log(t_end)
        jump_pts.append((math.log(t_end), -_log_fraction(rec.psi)))
        if t_end >= window_lo:
            raw_window.append(val)
            alpha_lower = min(alpha_lower, _certify_record_exponent(rec.psi, t_end, val))
    alpha_fit = float(MAX_EXP)
    if raw_window:
        alpha_fit = min(raw_window)
    if len(jump_pts) >= 5:
        slope = _trend_slope(jump_pts)
        alpha_fit = min(alpha_fit, max(slope, 0.0))
    # the uniform exponent never exceeds the individual one
    alpha_fit = min(alpha_fit, beta_fit)
    alpha_lower = min(alpha_lower, beta_lower)
    return ExponentEstimate(
        side=side,
        t_max=t_max,
        alpha_fit=alpha_fit,
        beta_fit=beta_fit,
        alpha_lower=alpha_lower,
        beta_lower=beta_lower,
        capped=capped,
        n_records=len(records),
    )


def estimate_both_sides(system: System, t_max_primal: int, t_max_dual: int, budget=10**9):
    return (
        estimate_exponents(system, "primal", t_max_primal, budget=budget),
        estimate_exponents(system, "dual", t_max_dual, budget=budget),
    )


# ---------------------------------------------------------------------------
# inequality checkers
# ---------------------------------------------------------------------------

FAMILIES = (
    "jarnik_equality",
    "jarnik_ineq_i",
    "jarnik_ineq_ii",
    "jarnik_ineq_iii",
    "apfelbeck_i",
    "apfelbeck_ii",
    "khintchine",
    "dyson",
    "bugeaud_laurent",
    "my_inequalities",
    "loranoyadenie_1",
    "loranoyadenie_2",
    "loranoyadenie_3",
)

_CAP = float(MAX_EXP)


@dataclass
class InequalityReport:
    family: str
    n: int
    m: int
    inputs: dict
    lhs: float
    rhs: float
    slack: float
    passed: bool
    tol: float
    note: str = ""

    def as_dict(self):
        return {
            "family": self.family,
            "n": self.n,
            "m": self.m,
            "inputs": self.inputs,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "slack": self.slack,
            "passed": self.passed,
            "tol": self.tol,
            "note": self.note,
        }


def _report(family, n, m, inputs, lhs, rhs, tol, note="") -> InequalityReport:
    slack = lhs - rhs
    return InequalityReport(
        family, n, m, inputs, lhs, rhs, slack, slack >= -tol, tol, note
    )


def _two_sided(family, n, m, inputs, value, lower, upper, tol, note=""):
    slack = min(value - lower, upper - value)
    return InequalityReport(
        family, n, m, inputs, value, lower, slack, slack >= -tol, tol,
        note or f"two-sided: {lower:.4g} <= {value:.4g} <= {upper:.4g}",
    )


def _capped_div(num: float, den: float) -> float:
    if abs(den) < 1e-12:
        if abs(num) < 1e-12:
            return 0.0
        return _CAP if num > 0 else -_CAP
    return num / den


def check_inequality(
    family: str, n: int, m: int, exps: dict, tol: float = DEFAULT_TOL
) -> InequalityReport:
    """Evaluate one named transference inequality on exponent values.

    ``exps`` holds alpha, beta for the system and alpha_t, beta_t for the
    transpose (floats or Fractions; values at the MAX_EXP cap make the
    corresponding bound vacuous-but-finite).
    """
    a = float(exps.get("alpha", 0.0))
    at = float(exps.get("alpha_t", 0.0))
    b = float(exps.get("beta", 0.0))
    bt = float(exps.get("beta_t", 0.0))
    # Effective values for the bounded-below side of a >= check: a certified
    # record exponent is a true statement about the data, so it may raise
    # (never lower) the side a theorem bounds from below.
    a_eff = max(a, float(exps.get("alpha_lower", 0.0)))
    at_eff = max(at, float(exps.get("alpha_t_lower", 0.0)))
    b_eff = max(b, float(exps.get("beta_lower", 0.0)))
    bt_eff = max(bt, float(exps.get("beta_t_lower", 0.0)))
    inputs = {"alpha": a, "alpha_t": at, "beta": b, "beta_t": bt}
    # Candidate sets for exponents feeding the bounding side: the decimal fit
    # (within the stated exponent tolerance), and the certified record
    # exponent, are both data-consistent values of the same quantity, so a
    # bound is only refuted when it fails for every combination of them.
    def _cands(fit: float, key: str) -> tuple[float, ...]:
        vals = [fit]
        if fit - tol > 0:
            vals.append(fit - tol)
        lo = float(exps.get(key, 0.0))
        if lo > 0 and abs(lo - fit) > 1e-12:
            vals.append(lo)
        return tuple(vals)

    A = _cands(a, "alpha_lower")
    AT = _cands(at, "alpha_t_lower")
    B = _cands(b, "beta_lower")
    BT = _cands(bt, "beta_t_lower")

    if family == "jarnik_equality":
        if (n, m) != (1, 2):
            raise DomainError("equality form needs n=1, m=2")
        lhs = _capped_div(1.0, a) + at
        slack = -abs(lhs - 1.0)
        return InequalityReport(
            family, n, m, inputs, lhs, 1.0, slack, slack >= -tol, tol,
            "1/alpha + alpha_t = 1",
        )
    if family == "jarnik_ineq_i":
        if n != 1:
            raise DomainError("needs n=1")
        # both directions are lower bounds: on alpha_t from alpha, and on
        # alpha from alpha_t (the rearranged upper estimate)
        lower = min(_capped_div(x, (m - 1) * x + m) for x in A)
        slack = min(at_eff - lower, a_eff - min(m * x + m - 1 for x in AT))
        return InequalityReport(
            family, n, m, inputs, at_eff, lower, slack, slack >= -tol, tol,
            "two transference directions, certified-floor left sides",
        )
    if family == "jarnik_ineq_ii":
        if n != 1:
            raise DomainError("needs n=1")
        if a <= m * (2 * m - 3):
            raise DomainError("side condition alpha > m(2m-3) fails")
        if m > 1:
            rhs = min((1.0 - _capped_div(1.0, x - 2 * m + 4)) / (m - 1) for x in A)
        else:
            rhs = _CAP
        return _report(family, n, m, inputs, at_eff, rhs, tol)
    if family == "jarnik_ineq_iii":
        if n != 1:
            raise DomainError("needs n=1")
        if at <= (m - 1) / m:
            raise DomainError("side condition alpha_t > (m-1)/m fails")
        rhs = min(m - 2 + _capped_div(1.0, 1.0 - x) for x in ([y for y in AT if y < 1] or [at]))
        return _report(
            family, n, m, inputs, a_eff, min(rhs, _CAP), tol,
            "last term uses the transposed exponent",
        )
    if family == "apfelbeck_i":
        rhs = min(_capped_div(n * x + n - 1, (m - 1) * x + m) for x in A)
        return _report(family, n, m, inputs, at_eff, rhs, tol)
    if family == "apfelbeck_ii":
        if m <= 1:
            raise DomainError("needs m > 1")
        if a <= (2 * (m + n - 1) * (m + n - 3) + m) / n:
            raise DomainError("side condition on alpha fails")
        def _apf2(x: float) -> float:
            num = n * (n * x - m) - 2 * n * (m + n - 3)
            den = (m - 1) * (n * x - m) + m - (m - 2) * (m + n - 3)
            return (n + _capped_div(num, den)) / m

        rhs = min(_apf2(x) for x in A)
        return _report(family, n, m, inputs, at_eff, rhs, tol)
    if family == "khintchine":
        if n != 1:
            raise DomainError("needs n=1")
        # both directions are lower bounds: on beta_t from beta, and on beta
        # from beta_t (the rearranged upper estimate)
        lower = min(_capped_div(x, (m - 1) * x + m) for x in B)
        slack = min(bt_eff - lower, b_eff - min(m * x + m - 1 for x in BT))
        return InequalityReport(
            family, n, m, inputs, bt_eff, lower, slack, slack >= -tol, tol,
            "two transference directions, certified-floor left sides",
        )
    if family == "dyson":
        rhs = min(_capped_div(n * x + n - 1, (m - 1) * x + m) for x in B)
        return _report(family, n, m, inputs, bt_eff, rhs, tol)
    if family == "bugeaud_laurent":
        if n != 1:
            raise DomainError("needs n=1")
        lower = min(
            _capped_div((x - 1) * y, ((m - 2) * x + 1) * y + (m - 1) * x)
            for x in A
            for y in B
        )
        slack = bt_eff - lower
        if at < 1:
            # upper estimate rearranged as a lower bound on beta
            b_req = min(
                _capped_div((m - 1) * y + m - 2 + x, 1 - x)
                for x in AT
                if x < 1
                for y in BT
            )
            slack = min(slack, b_eff - b_req)
        return InequalityReport(
            family, n, m, inputs, bt_eff, lower, slack, slack >= -tol, tol,
            "two transference directions, certified-floor left sides",
        )
    if family == "my_inequalities":
        if a <= 1 or m == 1:
            # one form (m=1) pins the uniform exponent at <= 1, so only this
            # case can occur; clamp estimation overshoot accordingly.
            rhs = min(_capped_div(n - 1, m - min(x, 1.0)) for x in A)
            note = "case alpha <= 1"
        else:
            rhs = min(_capped_div(n - _capped_div(1.0, x), m - 1) for x in A)
            note = "case alpha >= 1"
        return _report(family, n, m, inputs, at_eff, min(rhs, _CAP), tol, note)
    if family == "loranoyadenie_1":
        rhs = min(_capped_div(n * x + n - 1, (m - 1) * x + m) for x in B)
        return _report(family, n, m, inputs, bt_eff, rhs, tol)
    if family == "loranoyadenie_2":
        rhs = min(
            _capped_div((n - 1) * (1 + y) - (1 - x), (m - 1) * (1 + y) + (1 - x))
            for x in A
            for y in B
        )
        return _report(family, n, m, inputs, bt_eff, min(rhs, _CAP), tol)
    if family == "loranoyadenie_3":
        rhs = min(
            _capped_div(
                (n - 1) * (1 + _capped_div(1.0, y)) - (_capped_div(1.0, x) - 1),
                (m - 1) * (1 + _capped_div(1.0, y)) + (_capped_div(1.0, x) - 1),
            )
            for x in A
            for y in B
        )
        return _report(family, n, m, inputs, bt_eff, min(rhs, _CAP), tol)
    raise DomainError(f"unknown family {family!r}")


# ---------------------------------------------------------------------------
# dominance of the three individual-exponent bounds
# ---------------------------------------------------------------------------


def loranoyadenie_rhs(k: int, n: int, m: int, alpha: Fraction, beta: Fraction) -> Fraction:
    """Exact right-hand side of lower bound k in {1,2,3} on beta_t."""
    alpha, beta = Fraction(alpha), Fraction(beta)
    if k == 1:
        return Fraction(n * beta + n - 1, 1) / ((m - 1) * beta + m)
    if k == 2:
        den = (m - 1) * (1 + beta) + (1 - alpha)
        if den <= 0:
            return MAX_EXP
        return ((n - 1) * (1 + beta) - (1 - alpha)) / den
    if k == 3:
        binv = 1 / beta
        ainv = 1 / alpha
        den = (m - 1) * (1 + binv) + (ainv - 1)
        if den <= 0:
            return MAX_EXP
        return ((n - 1) * (1 + binv) - (ainv - 1)) / den
    raise DomainError("k must be 1, 2 or 3")


def dominions(n: int, m: int, alpha, beta) -> tuple[str, int]:
    """(case label, index of the strongest lower bound) per the threshold
    classification; requires beta >= alpha >= m/n."""
    alpha, beta = Fraction(alpha), Fraction(beta)
    d = n + m
    if not (beta >= alpha >= Fraction(m, n)):
        raise DomainError("requires beta >= alpha >= m/n")
    if m == 1:
        if alpha > 1:
            raise DomainError("m=1 forces alpha <= 1")
        return "i", 2
    if alpha <= 1:
        if beta <= Fraction((d - 1) * alpha - m, 1) / (m - 1):
            return "ii", 2
        return "ii", 1
    if alpha < Fraction(d - 1, n):
        den = d - 1 - n * alpha
        if den > 0 and beta <= (n - 1) * alpha / den:
            return "iii", 3
        return "iii", 1
    return "iv", 3


def dominions_brute(n: int, m: int, alpha, beta) -> set[int]:
    """Indices attaining the exact pointwise maximum of the three bounds."""
    vals = {k: loranoyadenie_rhs(k, n, m, Fraction(alpha), Fraction(beta)) for k in (1, 2, 3)}
    top = max(vals.values())
    return {k for k, v in vals.items() if v == top}


# ---------------------------------------------------------------------------
# campaigns
# ---------------------------------------------------------------------------


@dataclass
class CampaignResult:
    family: str
    trials: int
    passed: int
    failures: list = field(default_factory=list)
    details: list = field(default_factory=list)

    @property
    def all_passed(self) -> bool:
        return self.passed == self.trials

    def as_dict(self):
        return {
            "family": self.family,
            "trials": self.trials,
            "passed": self.passed,
            "failures": self.failures[:20],
        }

    def to_json(self) -> str:
        return json.dumps(self.as_dict(), indent=2)


def _split_dims(rng: random.Random, d: int) -> tuple[int, int]:
    m = rng.randint(1, d - 1)
    return d - m, m


def campaign_mahler(
    dims: Sequence[int] = (2, 3, 4, 5),
    trials_per_dim: int = 1000,
    seed: int = 0,
    asymmetric_ks: bool = True,
) -> CampaignResult:
    """Random rational systems with Minkowski-guaranteed primal boxes; every
    transfer (symmetric, and asymmetric for each coordinate when enabled)
    must yield a verified certificate."""
    from .presets import random_rational_system
    from .transfer import mahler_transfer, mahler_transfer_asymmetric, verify_certificate

    result = CampaignResult(family="mahler", trials=0, passed=0)
    for d in dims:
        for trial in range(trials_per_dim):
            rng = random.Random(f"{seed}:{d}:{trial}")
            n, m = _split_dims(rng, d)
            system = random_rational_system(rng, n, m, max_den=30)
            # X slightly above 1, U the rational rounding-up of X^(-m/n):
            # then X^m U^n >= 1 and the primal box provably has a point.
            X = 1 + Fraction(rng.randint(1, 100), 100)
            U = Fraction(float(X) ** (-m / n) * 1.01).limit_denominator(10**6)
            while X**m * U**n < 1:
                U *= Fraction(101, 100)
            variants = [("sym", lambda: mahler_transfer(system, X, U))]
            if asymmetric_ks:
                for k in range(d):
                    variants.append(
                        ("asym%d" % k,
                         lambda k=k: mahler_transfer_asymmetric(system, X, U, k))
                    )
            for label, run in variants:
                result.trials += 1
                try:
                    ok, _ = verify_certificate(run())
                    error = None if ok else "verify failed"
                except Exception as exc:  # noqa: BLE001 - campaign collects failures
                    error = repr(exc)
                if error is None:
                    result.passed += 1
                else:
                    result.failures.append(
                        {"d": d, "trial": trial, "variant": label, "error": error}
                    )
    return result


def campaign_dominions(trials: int = 1000, seed: int = 0) -> CampaignResult:
    """Classifier vs. brute-force pointwise maximum on admissible tuples."""
    rng = random.Random(seed)
    result = CampaignResult(family="dominions", trials=trials, passed=0)
    for trial in range(trials):
        n = rng.randint(1, 4)
        m = rng.randint(1, 4)
        if n == m == 1:
            m = 2
        lo = Fraction(m, n)
        hi = Fraction(1) if m == 1 else lo + 5
        alpha = lo + (hi - lo) * Fraction(rng.randint(0, 1000), 1000)
        beta = alpha + Fraction(rng.randint(0, 5000), 1000)
        case, winner = dominions(n, m, alpha, beta)
        top = dominions_brute(n, m, alpha, beta)
        if winner in top:
            result.passed += 1
        else:
            result.failures.append(
                {"n": n, "m": m, "alpha": str(alpha), "beta": str(beta),
                 "case": case, "winner": winner, "brute": sorted(top)}
            )
    return result


def t_max_for(m_eff: int, tier: str = "standard") -> int:
    """Scan depth by number of free variables (the cost driver)."""
    table = {
        "fast": {1: 10**4, 2: 800, 3: 120, 4: 40},
        "standard": {1: 10**5, 2: 3000, 3: 250, 4: 80},
        "deep": {1: 10**6, 2: 10**4, 3: 500, 4: 120},
    }
    return table[tier].get(m_eff, 30)


def exponents_for_system(system: System, tier: str = "standard", budget: int = 10**9):
    """(primal estimate, dual estimate) with per-side scan depths."""
    ep = estimate_exponents(system, "primal", t_max_for(system.m, tier), budget=budget)
    ed = estimate_exponents(system, "dual", t_max_for(system.n, tier), budget=budget)
    return ep, ed


def applicable_families(n: int, m: int, exps: dict) -> list[str]:
    """Families whose domain conditions hold for these dimensions/values."""
    out = ["apfelbeck_i", "dyson", "my_inequalities",
           "loranoyadenie_1", "loranoyadenie_2", "loranoyadenie_3"]
    if n == 1:
        out += ["jarnik_ineq_i", "khintchine", "bugeaud_laurent"]
        if m == 2:
            out.append("jarnik_equality")
        if exps["alpha"] > m * (2 * m - 3) and m > 1:
            out.append("jarnik_ineq_ii")
        if exps["alpha_t"] > (m - 1) / m:
            out.append("jarnik_ineq_iii")
    if m > 1 and exps["alpha"] > (2 * (m + n - 1) * (m + n - 3) + m) / n:
        out.append("apfelbeck_ii")
    return out


# families whose checks are robust to estimation noise on short scans: the
# individual-exponent bounds plus the uniform-exponent lower bound.
CORE_FAMILIES = (
    "khintchine",
    "dyson",
    "loranoyadenie_1",
    "loranoyadenie_2",
    "loranoyadenie_3",
    "my_inequalities",
)


def check_all_inequalities(
    system: System,
    tier: str = "standard",
    tol: float = DEFAULT_TOL,
    families: Optional[Sequence[str]] = None,
) -> list[InequalityReport]:
    ep, ed = exponents_for_system(system, tier)
    exps = {
        "alpha": ep.alpha_fit,
        "beta": ep.beta_fit,
        "alpha_t": ed.alpha_fit,
        "beta_t": ed.beta_fit,
        "alpha_lower": float(ep.alpha_lower),
        "beta_lower": float(ep.beta_lower),
        "alpha_t_lower": float(ed.alpha_lower),
        "beta_t_lower": float(ed.beta_lower),
    }
    wanted = applicable_families(system.n, system.m, exps)
    if families is not None:
        wanted = [f for f in wanted if f in families]
    return [check_inequality(f, system.n, system.m, exps, tol=tol) for f in wanted]


def campaign_inequalities(
    n: int,
    m: int,
    trials: int = 50,
    seed: int = 0,
    tier: str = "fast",
    tol: float = DEFAULT_TOL,
    include_presets: bool = True,
    families: Optional[Sequence[str]] = CORE_FAMILIES,
) -> CampaignResult:
    """Random generic systems (plus matching presets): every applicable
    inequality must pass at the given tolerance."""
    result = CampaignResult(family=f"inequalities_{n}x{m}", trials=0, passed=0)
    systems = []
    if include_presets:
        for p in PRESETS.values():
            if (p.n, p.m) == (n, m):
                systems.append((p.name, p.build()))
    rng = random.Random(seed)
    for i in range(trials):
        systems.append((f"random{i}", random_system(rng, n, m)))
    for name, system in systems:
        reports = check_all_inequalities(system, tier=tier, tol=tol, families=families)
        for rep in reports:
            result.trials += 1
            if rep.passed:
                result.passed += 1
            else:
                result.failures.append({"system": name, **rep.as_dict()})
            result.details.append({"system": name, **rep.as_dict()})
    return result


def campaign_jarnik_equality(
    count: int = 50, t_max_primal: int = 10**4, t_max_dual: int = 10**5,
    tol: float = DEFAULT_TOL,
) -> CampaignResult:
    """Cubic-field pairs (1x2): the uniform exponents of a system and its
    transpose must satisfy 1/alpha + alpha_t = 1 within tolerance."""
    from .presets import cubic_pair_family

    result = CampaignResult(family="jarnik_equality", trials=0, passed=0)
    systems = cubic_pair_family(count)
    for p in PRESETS.values():
        if (p.n, p.m) == (1, 2):
            systems.append((p.name, p.build()))
    for name, system in systems[:count]:
        ep = estimate_exponents(system, "primal", t_max_primal)
        ed = estimate_exponents(system, "dual", t_max_dual)
        resid = abs(1.0 / ep.alpha_fit + ed.alpha_fit - 1.0)
        result.trials += 1
        entry = {"system": name, "alpha": ep.alpha_fit, "alpha_t": ed.alpha_fit,
                 "residual": resid}
        result.details.append(entry)
        if resid <= tol:
            result.passed += 1
        else:
            result.failures.append(entry)
    return result


# ---------------------------------------------------------------------------
# two-point lemma suites
# ---------------------------------------------------------------------------

_SCALE_GRID = [Fraction(2) ** k for k in range(-4, 14)]


def _collinear(z1, z2) -> bool:
    return all(
        z1[i] * z2[j] == z1[j] * z2[i]
        for i in range(len(z1))
        for j in range(i + 1, len(z1))
    )


def _witness_pair(system, t_scan: int = 12):
    """Two non-collinear best-approximation witnesses, or None."""
    tab = best_approx_table(system, "primal", t_scan, budget=10**7)
    ws = [rec.witness for rec in tab.records]
    for i in range(len(ws)):
        for j in range(i + 1, len(ws)):
            if not _collinear(ws[i], ws[j]):
                return ws[i], ws[j]
    return None


def _cheapest_lemma_params(system, v1, v2, constant_sq, cost_cap=3 * 10**5):
    """Smallest-volume (h, r) on a power-of-two grid satisfying the product
    bound, or None when every admissible pair is too large to enumerate."""
    from .transfer import main_lemma_hypothesis

    n, m = system.n, system.m
    best = None
    for h in _SCALE_GRID:
        for r in _SCALE_GRID:
            cost = (2 * float(h) + 1) ** n * (2 * float(r) + 2) ** m
            if cost > cost_cap or (best and cost >= best[0]):
                continue
            ok, _ = main_lemma_hypothesis(system, v1, v2, h, r, constant_sq)
            if ok:
                best = (cost, h, r)
    return None if best is None else (best[1], best[2])


def campaign_main_lemma(
    trials: int = 500, dims: Sequence[int] = (3, 4, 5), seed: int = 0
) -> CampaignResult:
    """Random admissible (v1, v2, h, r) instances: the two-point lemma must
    deliver a verified orthogonal dual point every time."""
    from .presets import random_rational_system
    from .transfer import main_lemma_transfer, verify_certificate

    result = CampaignResult(family="main_lemma", trials=0, passed=0)
    rng = random.Random(seed)
    attempts = 0
    while result.trials < trials and attempts < 50 * trials:
        attempts += 1
        d = dims[attempts % len(dims)]
        n, m = _split_dims(rng, d)
        system = random_rational_system(rng, n, m, max_den=8)
        pair = _witness_pair(system)
        if pair is None:
            continue
        v1, v2 = pair
        c2 = Fraction(1, 2 * d * (d - 1))
        params = _cheapest_lemma_params(system, v1, v2, c2)
        if params is None:
            continue
        h, r = params
        result.trials += 1
        try:
            cert = main_lemma_transfer(system, v1, v2, h, r)
            ok, checks = verify_certificate(cert)
        except Exception as exc:  # noqa: BLE001
            ok, checks = False, repr(exc)
        if ok:
            result.passed += 1
        else:
            result.failures.append(
                {"d": d, "n": n, "m": m, "v1": v1, "v2": v2,
                 "h": str(h), "r": str(r), "detail": str(checks)}
            )
    return result


def campaign_main_lemma_gap(trials: int = 100, seed: int = 1) -> CampaignResult:
    """d=3 instances strictly between the general and the sharpened product
    constants: the general form must reject, the sharpened one succeed."""
    from .presets import random_rational_system
    from .transfer import (
        main_lemma_hypothesis,
        main_lemma_transfer,
        main_lemma_transfer_3d,
        verify_certificate,
    )
    from .errors import HypothesisViolated

    result = CampaignResult(family="main_lemma_gap", trials=0, passed=0)
    rng = random.Random(seed)
    attempts = 0
    c2_general = Fraction(1, 12)
    c2_sharp = Fraction(1, 4)
    while result.trials < trials and attempts < 100 * trials:
        attempts += 1
        n = 1 + attempts % 2
        m = 3 - n
        system = random_rational_system(rng, n, m, max_den=8)
        pair = _witness_pair(system)
        if pair is None:
            continue
        v1, v2 = pair
        params = _cheapest_lemma_params(system, v1, v2, c2_general)
        if params is None:
            continue
        h0, r0 = params
        found = None
        scale = Fraction(1)
        for _ in range(60):
            scale *= Fraction(19, 20)
            h, r = h0 * scale, r0 * scale
            gen_ok, _ = main_lemma_hypothesis(system, v1, v2, h, r, c2_general)
            sharp_ok, _ = main_lemma_hypothesis(system, v1, v2, h, r, c2_sharp)
            if not sharp_ok:
                break
            if not gen_ok:
                found = (h, r)
                break
        if found is None:
            continue
        h, r = found
        result.trials += 1
        rejected = False
        try:
            main_lemma_transfer(system, v1, v2, h, r)
        except HypothesisViolated:
            rejected = True
        except Exception:  # noqa: BLE001
            pass
        ok = False
        if rejected:
            try:
                cert = main_lemma_transfer_3d(system, v1, v2, h, r)
                ok, _ = verify_certificate(cert)
            except Exception:  # noqa: BLE001
                ok = False
        if ok:
            result.passed += 1
        else:
            result.failures.append(
                {"n": n, "m": m, "v1": v1, "v2": v2, "h": str(h), "r": str(r),
                 "general_rejected": rejected}
            )
    return result


# ---------------------------------------------------------------------------
# lattice and section campaigns
# ---------------------------------------------------------------------------


def campaign_covolumes(trials: int = 500, max_dim: int = 8, seed: int = 0) -> CampaignResult:
    """Saturated sublattice vs. its integer orthogonal complement: squared
    covolumes must agree exactly."""
    from .exactlinalg import orthogonal_lattice, saturate

    result = CampaignResult(family="covolumes", trials=0, passed=0)
    rng = random.Random(seed)
    while result.trials < trials:
        d = rng.randint(2, max_dim)
        k = rng.randint(1, d - 1)
        vecs = [[rng.randint(-9, 9) for _ in range(d)] for _ in range(k)]
        try:
            lat = saturate(vecs)
            if lat.rank == 0 or lat.rank == d:
                continue
            perp = orthogonal_lattice(lat)
        except Exception:  # noqa: BLE001 - degenerate sample, resample
            continue
        result.trials += 1
        if lat.det_squared == perp.det_squared:
            result.passed += 1
        else:
            result.failures.append(
                {"d": d, "basis": lat.basis, "det2": str(lat.det_squared),
                 "perp_det2": str(perp.det_squared)}
            )
    return result


def campaign_cube_sections(trials: int = 1000, max_dim: int = 8, seed: int = 0) -> CampaignResult:
    """Central hyperplane sections of the cube [-1,1]^d: squared volume must
    lie in [4^(d-1), 2*4^(d-1)] exactly (unit-ball and diagonal extremes)."""
    from .sectiondual import cube_section_volume_squared

    result = CampaignResult(family="cube_sections", trials=0, passed=0)
    rng = random.Random(seed)
    for _ in range(trials):
        d = rng.randint(2, max_dim)
        normal = [Fraction(rng.randint(-20, 20), rng.randint(1, 20)) for _ in range(d)]
        if all(v == 0 for v in normal):
            normal[0] = Fraction(1)
        result.trials += 1
        vol2 = cube_section_volume_squared(normal)
        if Fraction(4) ** (d - 1) <= vol2 <= 2 * Fraction(4) ** (d - 1):
            result.passed += 1
        else:
            result.failures.append({"d": d, "normal": [str(v) for v in normal],
                                    "vol2": str(vol2)})
    return result


# ---------------------------------------------------------------------------
# uniform-approximability bound comparison (1x2 sharpened constants)
# ---------------------------------------------------------------------------


def _f_spec(psi: FunctionSpec) -> FunctionSpec:
    """t * psi(t) within the same family (exponent shifted by one)."""
    return FunctionSpec(psi.family, psi.coeff, psi.exponent + 1, psi.log_exponent)


def uniform_bound_comparison(psi: FunctionSpec, t, eps=Fraction(1, 1000), delta=Fraction(1, 1000)):
    """Classical vs. sharpened uniform-transfer bound at truncation t.

    Branch 'i' (t*psi decreasing): classical 12(1+eps+delta)/t * psi^-(1/t)
    vs. sharpened 3/(4t) * psi^-(2/(3t)).  Branch 'ii' (t*psi increasing):
    classical 4(1+eps+delta)/f^-(t/2) vs. sharpened 2/(3 f^-(t/2)).
    """
    from .transfer import exact_div_any, xmul

    t = Fraction(t)
    f = _f_spec(psi)
    one_pe = 1 + Fraction(eps) + Fraction(delta)
    if not f.increasing:
        branch = "i"
        classical = xmul(Fraction(12) * one_pe / t, psi.inverse_at(Fraction(1) / t))
        sharpened = xmul(Fraction(3, 4) / t, psi.inverse_at(Fraction(2, 3) / t))
    else:
        branch = "ii"
        finv = f.inverse_at(t / 2)
        classical = exact_div_any(Fraction(4) * one_pe, finv)
        sharpened = exact_div_any(Fraction(2, 3), finv)
    return branch, classical, sharpened


DEFAULT_UNIFORM_BOUND_PSIS = (
    FunctionSpec("power", Fraction(1), Fraction(-2)),
    FunctionSpec("power", Fraction(1, 2), Fraction(-3)),
    FunctionSpec("power", Fraction(1), Fraction(-3, 2)),
    FunctionSpec("power_log", Fraction(1), Fraction(-2), Fraction(-1)),
    FunctionSpec("power", Fraction(1), Fraction(-1, 2)),
    FunctionSpec("power", Fraction(1, 3), Fraction(-2, 3)),
)


def campaign_uniform_bounds(
    psis: Sequence[FunctionSpec] = DEFAULT_UNIFORM_BOUND_PSIS,
    grid: Sequence[int] = (10**2, 10**3, 10**4, 10**5, 10**6),
    eps=Fraction(1, 1000),
    delta=Fraction(1, 1000),
) -> CampaignResult:
    """Grid check: the sharpened bound never exceeds the classical one, and
    on the decreasing branch beats it by at least a factor of 4."""
    from .transfer import xle, xmul

    result = CampaignResult(family="uniform-bounds", trials=0, passed=0)
    for psi in psis:
        for t in grid:
            branch, classical, sharpened = uniform_bound_comparison(psi, t, eps, delta)
            ok = xle(sharpened, classical)
            if ok and branch == "i":
                ok = xle(xmul(Fraction(4), sharpened), classical)
            result.trials += 1
            entry = {"psi": psi.describe(), "t": t, "branch": branch,
                     "classical": str(classical), "sharpened": str(sharpened)}
            result.details.append(entry)
            if ok:
                result.passed += 1
            else:
                result.failures.append(entry)
    return result


def reports_to_csv(reports: Sequence[InequalityReport]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf)
    w.writerow(["family", "n", "m", "lhs", "rhs", "slack", "passed"])
    for r in reports:
        w.writerow([r.family, r.n, r.m, f"{r.lhs:.6g}", f"{r.rhs:.6g}",
                    f"{r.slack:.6g}", r.passed])
    return buf.getvalue()
