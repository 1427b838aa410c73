"""Constructive transference operations with machine-checkable certificates.

Each operation takes exact inputs, checks its hypothesis pessimistically,
derives the guaranteed target parallelepiped, finds a nonzero integer point
in it by exhaustive enumeration, and returns a ``Certificate`` recording
inputs, parameters, the witness, and every verification performed.  A
certificate can be serialized to JSON and re-verified independently with
plain rational arithmetic.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from .errors import (
    BudgetExceeded,
    HypothesisViolated,
    NonCollinearRequired,
    NoWitnesses,
    Only3D,
    OnlyDimAtLeast3,
    PrecisionExhausted,
)
from .exactlinalg import wedge_norm_squared
from .functions import FunctionSpec
from .geometry import (
    Box,
    System,
    box_contains,
    enumerate_nonzero,
    enumerate_nonzero_general,
    minkowski_guaranteed,
)
from .intervals import DEFAULT_PREC, Enclosure
from .radicals import Radical, exact_div, exact_le, exact_max, exact_mul, exact_pow
from .sectiondual import delta_d, improved_mahler_factor

DEFAULT_BUDGET = 10**7


# ---------------------------------------------------------------------------
# exact-value plumbing
# ---------------------------------------------------------------------------


def _is_zero(v) -> bool:
    return not isinstance(v, (Radical, Enclosure)) and Fraction(v) == 0


def xmul(a, b):
    """exact_mul with rational zeros allowed."""
    if _is_zero(a) or _is_zero(b):
        return Fraction(0)
    if isinstance(a, Enclosure) or isinstance(b, Enclosure):
        return Enclosure.of(a) * Enclosure.of(b)
    return exact_mul(a, b)


def xle(a, b) -> bool:
    """a <= b, pessimistic (False) when an enclosure cannot decide."""
    if isinstance(a, Enclosure) or isinstance(b, Enclosure):
        return Enclosure.of(a).surely_le(Enclosure.of(b))
    return exact_le(a, b)


def _rat_lower(value, floor_at=None, prec: int = DEFAULT_PREC) -> Fraction:
    """A rational lower bound of an exact/enclosed positive value.

    If ``floor_at`` (a rational known to be < value) is given, precision is
    raised until the bound is >= floor_at, so conservative target boxes
    never exclude an already-found witness.
    """
    if isinstance(value, Enclosure):
        lo = value.lo
    elif isinstance(value, Radical):
        lo = Enclosure.of(value, prec).lo
    else:
        return Fraction(value)
    if floor_at is not None:
        while lo < floor_at and prec < 20000:
            prec *= 2
            if isinstance(value, (Radical,)):
                lo = Enclosure.of(value, prec).lo
            else:
                raise PrecisionExhausted("enclosure too wide for found witness")
        if lo < floor_at:
            raise PrecisionExhausted("could not certify witness under radical bound")
    return lo


def _fmt(value) -> str:
    if isinstance(value, Enclosure):
        return f"[{value.lo}, {value.hi}]"
    if isinstance(value, Radical):
        if value.index == 1:
            return str(value.radicand)
        return f"({value.radicand})^(1/{value.index})"
    return str(Fraction(value))


# ---------------------------------------------------------------------------
# certificates
# ---------------------------------------------------------------------------


@dataclass
class Certificate:
    """A re-checkable record of one constructive transference step."""

    kind: str
    n: int
    m: int
    theta: tuple
    params: dict
    inputs: dict
    output_point: tuple
    target: dict  # side + rational bound strings (scalar or per-coordinate)
    checks: list = field(default_factory=list)

    def check(self, name: str, ok: bool):
        self.checks.append((name, bool(ok)))
        return ok

    def all_ok(self) -> bool:
        return all(ok for _, ok in self.checks)

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "n": self.n,
            "m": self.m,
            "theta": [[str(v) for v in row] for row in self.theta],
            "params": self.params,
            "inputs": {k: list(v) for k, v in self.inputs.items()},
            "output_point": list(self.output_point),
            "target": self.target,
            "checks": [[name, ok] for name, ok in self.checks],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)

    @staticmethod
    def from_dict(data: dict) -> "Certificate":
        return Certificate(
            kind=data["kind"],
            n=int(data["n"]),
            m=int(data["m"]),
            theta=tuple(tuple(Fraction(v) for v in row) for row in data["theta"]),
            params=dict(data["params"]),
            inputs={k: tuple(v) for k, v in data["inputs"].items()},
            output_point=tuple(int(v) for v in data["output_point"]),
            target=dict(data["target"]),
            checks=[(name, bool(ok)) for name, ok in data["checks"]],
        )

    @staticmethod
    def from_json(text: str) -> "Certificate":
        return Certificate.from_dict(json.loads(text))


def _system_of(cert: Certificate) -> System:
    return System(cert.n, cert.m, cert.theta)


def verify_certificate(cert: Certificate) -> tuple[bool, list]:
    """Re-verify a certificate from scratch with rational arithmetic only."""
    results = []
    system = _system_of(cert)
    z = cert.output_point
    results.append(("output_nonzero", any(v != 0 for v in z)))
    results.append(("output_dimension", len(z) == system.d))
    side = cert.target["side"]
    if "h" in cert.target:
        box = Box(system, Fraction(cert.target["h"]), Fraction(cert.target["r"]), side)
        results.append(("output_in_target_box", box_contains(box, z) is True))
    else:
        hbounds = [Fraction(v) for v in cert.target["hbounds"]]
        rbounds = [Fraction(v) for v in cert.target["rbounds"]]
        results.append(
            ("output_in_target_box", _in_coordinate_box(system, side, z, hbounds, rbounds))
        )
    for key in ("v1", "v2"):
        if key in cert.inputs:
            v = cert.inputs[key]
            dot = sum(int(a) * int(b) for a, b in zip(v, z))
            results.append((f"orthogonal_to_{key}", dot == 0))
    if "v1" in cert.inputs and "v2" in cert.inputs:
        ws = wedge_norm_squared((cert.inputs["v1"], cert.inputs["v2"]))
        results.append(("inputs_non_collinear", ws != 0))
    recorded = dict(cert.checks)
    results.append(("recorded_checks_all_true", all(recorded.values())))
    return all(ok for _, ok in results), results


def _in_coordinate_box(system, side, z, hbounds, rbounds) -> bool:
    x, y = system.split(z)
    if side == "dual":
        hvals = [abs(Fraction(v)) for v in y]
        rvals = [
            abs(sum(system.theta[i][j] * y[i] for i in range(system.n)) - x[j])
            for j in range(system.m)
        ]
    else:
        rvals = [abs(Fraction(v)) for v in x]
        hvals = [
            abs(sum(system.theta[i][j] * x[j] for j in range(system.m)) + y[i])
            for i in range(system.n)
        ]
    return all(a <= b for a, b in zip(hvals, hbounds)) and all(
        a <= b for a, b in zip(rvals, rbounds)
    )


# ---------------------------------------------------------------------------
# cube-section bound (the wedge-product estimate)
# ---------------------------------------------------------------------------


def cube_section_bound_squared(system: System, z1: Sequence, z2: Sequence) -> Fraction:
    """Squared upper bound 2d(d-1) max(...)^2 for |z1 ^ z2|.

    The max runs over |x1||x2|, |y1||y2| and max(|x1|,|x2|) max(|y1|,|y2|)
    with x the first m and y the last n coordinates.  Also asserts that the
    actual squared wedge norm does not exceed the bound.
    """
    d = system.d
    x1, y1 = system.split(z1)
    x2, y2 = system.split(z2)
    ax1 = max(abs(Fraction(v)) for v in x1)
    ax2 = max(abs(Fraction(v)) for v in x2)
    ay1 = max(abs(Fraction(v)) for v in y1)
    ay2 = max(abs(Fraction(v)) for v in y2)
    mx = max(ax1 * ax2, ay1 * ay2, max(ax1, ax2) * max(ay1, ay2))
    bound_sq = 2 * d * (d - 1) * mx**2
    actual = wedge_norm_squared((tuple(z1), tuple(z2)))
    assert actual <= bound_sq, "wedge bound violated - arithmetic bug"
    return bound_sq


# ---------------------------------------------------------------------------
# improved Mahler transference
# ---------------------------------------------------------------------------


def transference_parameters(system: System, X, U):
    """(Y, V) for the sharpened dual box, exact radicals for rational X, U."""
    d = system.d
    n, m = system.n, system.m
    factor = improved_mahler_factor(d)
    if isinstance(X, Enclosure) or isinstance(U, Enclosure):
        ex, eu = Enclosure.of(X), Enclosure.of(U)
        f = Enclosure.of(factor)
        y = f * (ex.pow(Fraction(m, d - 1)) * eu.pow(Fraction(1 - m, d - 1)))
        v = f * (ex.pow(Fraction(1 - n, d - 1)) * eu.pow(Fraction(n, d - 1)))
        return y, v
    y = factor * Radical.of(X) ** Fraction(m, d - 1) * Radical.of(U) ** Fraction(1 - m, d - 1)
    v = factor * Radical.of(X) ** Fraction(1 - n, d - 1) * Radical.of(U) ** Fraction(n, d - 1)
    y = y.as_fraction() if y.is_rational() else y
    v = v.as_fraction() if v.is_rational() else v
    return y, v


def _find_primal_witness(system, X, U, budget):
    box = Box(system, U, X, "primal")
    pts = enumerate_nonzero(box, budget=budget)
    if not pts:
        raise NoWitnesses("primal box contains no nonzero integer point")
    return pts[0]


def mahler_transfer(
    system: System,
    X,
    U,
    witness: Optional[Sequence[int]] = None,
    budget: int = DEFAULT_BUDGET,
) -> Certificate:
    """From a point in M_{U,X} to a point in the sharpened dual box.

    The dual parameters shrink the classical factor d-1 down to
    Delta_d**(-1/(d-1)).
    """
    n, m, d = system.n, system.m, system.d
    if witness is None:
        witness = _find_primal_witness(system, X, U, budget)
    witness = tuple(int(v) for v in witness)
    primal = Box(system, U, X, "primal")
    Y, V = transference_parameters(system, X, U)
    delta = delta_d(d)

    cert = Certificate(
        kind="mahler",
        n=n,
        m=m,
        theta=system.theta,
        params={"X": _fmt(X), "U": _fmt(U), "Y": _fmt(Y), "V": _fmt(V)},
        inputs={"witness": witness},
        output_point=(),
        target={},
    )
    cert.check("witness_nonzero", any(witness))
    cert.check("witness_in_primal_box", box_contains(primal, witness) is True)
    cert.check("identity_Y^n_V^m-1_delta_eq_X", _identity_eq(Y, n, V, m - 1, delta, X))
    cert.check("identity_Y^n-1_V^m_delta_eq_U", _identity_eq(Y, n - 1, V, m, delta, U))
    if not cert.all_ok():
        raise HypothesisViolated("mahler_transfer inputs failed verification")

    target_box = Box(system, Y, V, "dual")
    pts = enumerate_nonzero(target_box, budget=budget)
    if not pts:
        raise PrecisionExhausted("guaranteed dual box came back empty")
    out = pts[0]
    yv, rv = system.dual_values(out)
    h_lo = _rat_lower(Y, floor_at=Fraction(yv))
    r_lo = _rat_lower(V, floor_at=rv)
    cert.output_point = out
    cert.target = {"side": "dual", "h": str(h_lo), "r": str(r_lo)}
    cert.check("output_in_dual_box", yv <= h_lo and rv <= r_lo)
    return cert


def _identity_eq(Y, a, V, b, delta, rhs) -> bool:
    lhs = xmul(xmul(exact_pow_any(Y, a), exact_pow_any(V, b)), delta)
    return _radical_eq(lhs, rhs)


def exact_pow_any(base, e):
    if isinstance(base, Enclosure):
        return base.pow(Fraction(e))
    return exact_pow(base, Fraction(e))


def mahler_transfer_asymmetric(
    system: System,
    X,
    U,
    k: int,
    witness: Optional[Sequence[int]] = None,
    budget: int = DEFAULT_BUDGET,
) -> Certificate:
    """Classical bilinear-form variant: the dual box carries the factor d-1
    on exactly one coordinate k (0-based over the d dual constraints) and 1
    on the others, with no Delta_d gain.
    """
    n, m, d = system.n, system.m, system.d
    if not 0 <= k < d:
        raise ValueError(f"k must be in [0, {d})")
    if witness is None:
        witness = _find_primal_witness(system, X, U, budget)
    witness = tuple(int(v) for v in witness)
    primal = Box(system, U, X, "primal")

    X, U = Fraction(X), Fraction(U)
    # The two base radii as exact radicals (no Delta_d gain here).
    ybase = exact_mul(exact_pow(X, Fraction(m, d - 1)), exact_pow(U, Fraction(1 - m, d - 1)))
    vbase = exact_mul(exact_pow(X, Fraction(1 - n, d - 1)), exact_pow(U, Fraction(n, d - 1)))
    lam = [Fraction(1)] * d
    lam[k] = Fraction(d - 1)
    # Constraint order: j = 0..m-1 are the r-side forms, then i = 0..n-1 the
    # h-side coordinates.
    rbounds = [xmul(lam[j], vbase) for j in range(m)]
    hbounds = [xmul(lam[m + i], ybase) for i in range(n)]

    cert = Certificate(
        kind="mahler_asymmetric",
        n=n,
        m=m,
        theta=system.theta,
        params={
            "X": _fmt(X),
            "U": _fmt(U),
            "k": str(k),
            "Y_base": _fmt(ybase),
            "V_base": _fmt(vbase),
        },
        inputs={"witness": witness},
        output_point=(),
        target={},
    )
    cert.check("witness_nonzero", any(witness))
    cert.check("witness_in_primal_box", box_contains(primal, witness) is True)
    if not cert.all_ok():
        raise HypothesisViolated("asymmetric transfer inputs failed verification")

    pts = enumerate_nonzero_general(system, "dual", hbounds, rbounds, budget=budget)
    if not pts:
        raise PrecisionExhausted("guaranteed asymmetric dual box came back empty")
    out = pts[0]
    x, y = system.split(out)
    yvals = [abs(v) for v in y]
    rvals = [
        abs(sum(system.theta[i][j] * y[i] for i in range(n)) - x[j]) for j in range(m)
    ]
    h_lo = [_rat_lower(b, floor_at=Fraction(v)) for b, v in zip(hbounds, yvals)]
    r_lo = [_rat_lower(b, floor_at=v) for b, v in zip(rbounds, rvals)]
    cert.output_point = out
    cert.target = {
        "side": "dual",
        "hbounds": [str(v) for v in h_lo],
        "rbounds": [str(v) for v in r_lo],
    }
    cert.check(
        "output_in_asymmetric_box",
        all(a <= b for a, b in zip(yvals, h_lo)) and all(a <= b for a, b in zip(rvals, r_lo)),
    )
    return cert


# ---------------------------------------------------------------------------
# the main lemma
# ---------------------------------------------------------------------------


def main_lemma_hypothesis(system: System, v1, v2, h, r, constant_sq: Fraction):
    """(holds, details) for max(r^2 r1 r2, h^2 h1 h2, h r max max) <= h^n r^m * const.

    ``constant_sq`` is the square of the constant multiplying h^n r^m
    (1/(2d(d-1)) in general, 1/4 in the sharpened 3D form); the comparison
    is done on squares so everything stays rational/radical-exact.
    """
    n, m = system.n, system.m
    r1, h1 = system.primal_values(v1)
    r2, h2 = system.primal_values(v2)
    lhs = exact_max(
        xmul(xmul(exact_pow_any(r, 2), r1), r2),
        exact_max(
            xmul(xmul(exact_pow_any(h, 2), h1), h2),
            xmul(xmul(xmul(h, r), max(r1, r2)), max(h1, h2)),
        ),
    )
    rhs_sq = xmul(
        xmul(exact_pow_any(h, 2 * n), exact_pow_any(r, 2 * m)), constant_sq
    )
    lhs_sq = xmul(lhs, lhs)
    return xle(lhs_sq, rhs_sq), {"h1": h1, "r1": r1, "h2": h2, "r2": r2}


def main_lemma_transfer(
    system: System,
    v1: Sequence[int],
    v2: Sequence[int],
    h,
    r,
    budget: int = DEFAULT_BUDGET,
    _kind: str = "main_lemma",
    _constant_sq: Optional[Fraction] = None,
    _extra_params: Optional[dict] = None,
) -> Certificate:
    """Two-point section lemma: from non-collinear v1, v2 with small products
    to a nonzero integer point of the dual box orthogonal to both.
    """
    d = system.d
    v1 = tuple(int(v) for v in v1)
    v2 = tuple(int(v) for v in v2)
    if wedge_norm_squared((v1, v2)) == 0:
        raise NonCollinearRequired("v1 and v2 are collinear")
    constant_sq = _constant_sq if _constant_sq is not None else Fraction(1, 2 * d * (d - 1))
    ok, vals = main_lemma_hypothesis(system, v1, v2, h, r, constant_sq)
    if not ok:
        raise HypothesisViolated("product bound fails for (v1, v2, h, r)")

    cert = Certificate(
        kind=_kind,
        n=system.n,
        m=system.m,
        theta=system.theta,
        params={
            "h": _fmt(h),
            "r": _fmt(r),
            "constant_sq": str(constant_sq),
            **{key: _fmt(val) for key, val in vals.items()},
            **(_extra_params or {}),
        },
        inputs={"v1": v1, "v2": v2},
        output_point=(),
        target={},
    )
    cert.check("non_collinear", True)
    cert.check("product_bound", True)

    target_box = Box(system, h, r, "dual")
    pts = enumerate_nonzero(target_box, budget=budget)
    out = None
    for z in pts:
        if sum(a * b for a, b in zip(z, v1)) == 0 and sum(
            a * b for a, b in zip(z, v2)
        ) == 0:
            out = z
            break
    if out is None:
        raise PrecisionExhausted("guaranteed orthogonal point not found in dual box")
    yv, rv = system.dual_values(out)
    h_lo = _rat_lower(h, floor_at=Fraction(yv))
    r_lo = _rat_lower(r, floor_at=rv)
    cert.output_point = out
    cert.target = {"side": "dual", "h": str(h_lo), "r": str(r_lo)}
    cert.check("output_orthogonal", True)
    cert.check("output_in_dual_box", yv <= h_lo and rv <= r_lo)
    return cert


def main_lemma_transfer_3d(
    system: System,
    v1: Sequence[int],
    v2: Sequence[int],
    h,
    r,
    budget: int = DEFAULT_BUDGET,
) -> Certificate:
    """d=3 sharpening: the product bound constant improves from 1/(2*sqrt(3))
    to 1/2, admitting strictly more inputs."""
    if system.d != 3:
        raise Only3D("the sharpened constant is specific to d = 3")
    return main_lemma_transfer(
        system,
        v1,
        v2,
        h,
        r,
        budget=budget,
        _kind="lemma3d",
        _constant_sq=Fraction(1, 4),
    )


def products_inequality(h1, r1, h2, r2) -> bool:
    """r1 r2 h1 h2 <= (max(r1,r2) max(h1,h2))^2 — the elementary fact behind
    the sufficiency shortcut for the product bound."""
    cross = xmul(exact_max(r1, r2), exact_max(h1, h2))
    return xle(xmul(xmul(r1, r2), xmul(h1, h2)), xmul(cross, cross))


# ---------------------------------------------------------------------------
# semicore operations
# ---------------------------------------------------------------------------


def semicore_parameters(system: System, t, Phi, Psi, direction: int):
    """(h, r) radicals for the two-witness step; c = sqrt(2d(d-1))."""
    n, m, d = system.n, system.m, system.d
    if d < 3:
        raise OnlyDimAtLeast3("the 1/(d-2) exponent needs d >= 3")
    c = Radical(2 * d * (d - 1), 2)
    t, Phi, Psi = Radical.of(t), Radical.of(Phi), Radical.of(Psi)
    e = Fraction(1, d - 2)
    if direction == 1:
        h = (c * t ** Fraction(m) * Phi * Psi ** Fraction(1 - m)) ** e
        r = (c * t ** Fraction(2 - n) * Phi * Psi ** Fraction(n - 1)) ** e
    elif direction == -1:
        h = (c * t ** Fraction(2 - m) * Phi * Psi ** Fraction(m - 1)) ** e
        r = (c * t ** Fraction(n) * Phi * Psi ** Fraction(1 - n)) ** e
    else:
        raise ValueError("direction must be 1 or -1")
    h = h.as_fraction() if h.is_rational() else h
    r = r.as_fraction() if r.is_rational() else r
    return h, r


def _semicore_witnesses(system, t, Phi, Psi, direction, budget):
    if direction == 1:
        wide = Box(system, Phi, t, "primal")
        narrow = Box(system, Psi, t, "primal")
    else:
        wide = Box(system, t, Phi, "primal")
        narrow = Box(system, t, Psi, "primal")
    narrow_pts = enumerate_nonzero(narrow, budget=budget)
    if not narrow_pts:
        raise NoWitnesses("no nonzero point in the narrow box")
    wide_pts = enumerate_nonzero(wide, budget=budget)
    for v2 in narrow_pts:
        for v1 in wide_pts:
            if wedge_norm_squared((v1, v2)) != 0:
                return v1, v2
    raise NoWitnesses("all points of the wide box are collinear with the narrow one")


def semicore(
    system: System,
    t,
    Phi,
    Psi,
    direction: int,
    v1: Optional[Sequence[int]] = None,
    v2: Optional[Sequence[int]] = None,
    budget: int = DEFAULT_BUDGET,
) -> Certificate:
    """Two-witness transference: v1 in the Phi-box and v2 in the Psi-box of
    common sidelength t yield a point of the dual (h, r)-box, with h, r
    carrying the 1/(d-2) exponents.
    """
    if not exact_le(Psi, Phi):
        raise HypothesisViolated("requires Phi >= Psi")
    if not exact_le(Fraction(0), Psi) or _is_zero(Psi):
        raise HypothesisViolated("requires Psi > 0")
    h, r = semicore_parameters(system, t, Phi, Psi, direction)
    if v1 is None or v2 is None:
        v1, v2 = _semicore_witnesses(system, t, Phi, Psi, direction, budget)
    n, m, d = system.n, system.m, system.d
    c = Radical(2 * d * (d - 1), 2)
    if direction == 1:
        id_a = _radical_eq(xmul(exact_pow_any(h, n - 2), exact_pow_any(r, m)),
                           xmul(xmul(c, Phi), Psi))
        box1, box2 = Box(system, Phi, t, "primal"), Box(system, Psi, t, "primal")
    else:
        id_a = _radical_eq(xmul(exact_pow_any(h, n), exact_pow_any(r, m - 2)),
                           xmul(xmul(c, Phi), Psi))
        box1, box2 = Box(system, t, Phi, "primal"), Box(system, t, Psi, "primal")
    id_b = _radical_eq(
        xmul(exact_pow_any(h, n - 1), exact_pow_any(r, m - 1)), xmul(xmul(c, t), Phi)
    )
    kind = "semicore1" if direction == 1 else "semicore2"
    extra = {
        "t": _fmt(t),
        "Phi": _fmt(Phi),
        "Psi": _fmt(Psi),
        "direction": str(direction),
    }
    cert = main_lemma_transfer(
        system, v1, v2, h, r, budget=budget, _kind=kind, _extra_params=extra
    )
    cert.check("identity_cPhiPsi", id_a)
    cert.check("identity_ctPhi", id_b)
    cert.check("v1_in_wide_box", box_contains(box1, v1) is True)
    cert.check("v2_in_narrow_box", box_contains(box2, v2) is True)
    if not cert.all_ok():
        raise HypothesisViolated("semicore verification failed")
    return cert


def _radical_eq(a, b) -> bool:
    if isinstance(a, Enclosure) or isinstance(b, Enclosure):
        ea, eb = Enclosure.of(a), Enclosure.of(b)
        return ea.lo <= eb.hi and eb.lo <= ea.hi
    return Radical.of(a) == Radical.of(b)


# ---------------------------------------------------------------------------
# the uniform-exponent core
# ---------------------------------------------------------------------------


def core_parameters(system: System, phi: FunctionSpec, h):
    """r = phi(h), h* = Delta_d r^m h^{n-1}, r* = Delta_d r^{m-1} h^n."""
    n, m, d = system.n, system.m, system.d
    delta = delta_d(d)
    r = phi.value(h)
    h_star = xmul(xmul(exact_pow_any(r, m), exact_pow_any(h, n - 1)), delta)
    r_star = xmul(xmul(exact_pow_any(r, m - 1), exact_pow_any(h, n)), delta)
    return r, h_star, r_star


def core_hypothesis_ok(system: System, phi: FunctionSpec, psi: FunctionSpec, t) -> Optional[int]:
    """Which growth condition holds at t: 1, 2, or None.

    Condition 1: t*psi(t) non-increasing and
    psi(Delta t^n phi(t)^{m-1}) <= 1/(c Delta t).
    Condition 2: t*psi(t) non-decreasing and
    psi^-(Delta t^{n-1} phi(t)^m) <= 1/(c Delta phi(t)).
    Monotonicity of t*psi(t) is decided from the family shape.
    """
    n, m, d = system.n, system.m, system.d
    delta = delta_d(d)
    c = Radical(2 * d * (d - 1), 2)
    phit = phi.value(t)
    noninc, nondec = _t_times_monotonicity(psi)
    if noninc:
        arg = xmul(xmul(exact_pow_any(t, n), exact_pow_any(phit, m - 1)), delta)
        lhs = psi.value(arg)
        rhs = exact_div_any(1, xmul(xmul(c, delta), t))
        if xle(lhs, rhs):
            return 1
    if nondec:
        arg = xmul(xmul(exact_pow_any(t, n - 1), exact_pow_any(phit, m)), delta)
        lhs = psi.inverse_at(arg)
        rhs = exact_div_any(1, xmul(xmul(c, delta), phit))
        if xle(lhs, rhs):
            return 2
    return None


def _t_times_monotonicity(psi: FunctionSpec) -> tuple[bool, bool]:
    """(non-increasing, non-decreasing) of t * psi(t), eventually in t."""
    if psi.family == "power":
        return psi.exponent <= -1, psi.exponent >= -1
    if psi.family == "exp":
        return psi.exponent < 0, psi.exponent > 0
    # power_log: t^{1+g} (ln t)^b; the power factor dominates unless g == -1.
    if psi.exponent != -1:
        return psi.exponent < -1, psi.exponent > -1
    return psi.log_exponent <= 0, psi.log_exponent >= 0


def exact_div_any(a, b):
    if isinstance(a, Enclosure) or isinstance(b, Enclosure):
        return Enclosure.of(a) / Enclosure.of(b)
    return exact_div(a, b)


def _dilation_ratio(system, z, h_star, r_star):
    rv, hv = system.primal_values(z)
    return exact_max(exact_div_any(hv, h_star) if hv else Fraction(0),
                     exact_div_any(rv, r_star) if rv else Fraction(0))


def _minimal_dilation(system, h_star, r_star, budget, start=2):
    """Minimal mu > 0 with M_{mu h*, mu r*} containing a nonzero point, plus
    the attaining point (lexicographic tie-break) and the full candidate list
    with its inflation factor.

    mu is attained at a coordinate ratio of an integer point; the candidate
    set inside M_{M h*, M r*} is finite and complete once non-empty, since
    any outside point has ratio > M.
    """
    mult = start
    while True:
        box = Box(system, xmul(h_star, Fraction(mult)), xmul(r_star, Fraction(mult)), "primal")
        pts = enumerate_nonzero(box, budget=budget)
        if pts:
            break
        mult *= 2
        if mult > 2**20:
            raise BudgetExceeded("dilation search exceeded 2^20")
    best_mu, best_pt = None, None
    for z in pts:
        mu = _dilation_ratio(system, z, h_star, r_star)
        if best_mu is None or exact_lt_strict(mu, best_mu):
            best_mu, best_pt = mu, z
    return best_mu, best_pt, pts, mult


def exact_lt_strict(a, b) -> bool:
    if isinstance(a, Enclosure) or isinstance(b, Enclosure):
        ea, eb = Enclosure.of(a), Enclosure.of(b)
        if ea.surely_lt(eb):
            return True
        if eb.surely_le(ea):
            return False
        raise PrecisionExhausted("cannot order dilation ratios")
    from .radicals import exact_lt

    return exact_lt(a, b)


def alphas_core(
    system: System,
    phi: FunctionSpec,
    psi: FunctionSpec,
    h,
    budget: int = DEFAULT_BUDGET,
) -> Certificate:
    """The uniform-exponent core procedure.

    Route 1 (box already populated): M_{h*,r*} has a nonzero point, so the
    improved Mahler step with X = r*, U = h* lands exactly on the dual
    (h, r)-box.  Route 2 (dilation): find the minimal dilation mu of
    (h*, r*) containing a point, classify it, find the companion point at
    the secondary minimal dilation, check lambda_1 lambda_2 <=
    r^{m-1} h^{n-1} / c, and finish through the section lemma.
    """
    n, m, d = system.n, system.m, system.d
    c = Radical(2 * d * (d - 1), 2)
    r, h_star, r_star = core_parameters(system, phi, h)

    # Hypothesis: one of the growth conditions must hold on the interval
    # [r*, max(r*, psi^-(h*))]; for power data the ratio of the two sides is
    # monotone in t, so endpoint checks decide the whole interval.
    psi_inv = psi.inverse_at(h_star)
    t_hi = psi_inv if xle(r_star, psi_inv) else r_star
    cond_lo = core_hypothesis_ok(system, phi, psi, r_star)
    cond_hi = core_hypothesis_ok(system, phi, psi, t_hi)
    if cond_lo is None or cond_hi is None or cond_lo != cond_hi:
        raise HypothesisViolated("no growth condition holds across the interval")

    params = {
        "h": _fmt(h),
        "r": _fmt(r),
        "h_star": _fmt(h_star),
        "r_star": _fmt(r_star),
        "phi": phi.describe(),
        "psi": psi.describe(),
        "condition": str(cond_lo),
    }

    star_box = Box(system, h_star, r_star, "primal")
    star_pts = enumerate_nonzero(star_box, budget=budget)
    if star_pts:
        inner = mahler_transfer(system, r_star, h_star, witness=star_pts[0], budget=budget)
        cert = inner
        cert.kind = "alphas_core"
        cert.params.update(params)
        cert.params["route"] = "mahler"
        # The Mahler parameters land exactly on (h, r).
        Y, V = transference_parameters(system, r_star, h_star)
        cert.check("mahler_route_Y_eq_h", _radical_eq(Y, h))
        cert.check("mahler_route_V_eq_r", _radical_eq(V, r))
        return cert

    mu, v, candidates, cand_mult = _minimal_dilation(system, h_star, r_star, budget)
    rv, hv = system.primal_values(v)
    # v is a "v1" when its r-side is small relative to its h-side.
    is_v1 = xle(rv, xmul(exact_div_any(h, r), hv))
    if is_v1:
        v1 = v
        v2, mu2 = _companion(
            system, candidates, cand_mult, h_star, r_star, mu, budget, find="v2"
        )
    else:
        v2 = v
        v1, mu2 = _companion(
            system, candidates, cand_mult, h_star, r_star, mu, budget, find="v1"
        )
    _, lam1 = system.primal_values(v1)
    lam2, _ = system.primal_values(v2)
    lam_bound = exact_div_any(
        xmul(exact_pow_any(r, m - 1), exact_pow_any(h, n - 1)), c
    )
    if not xle(xmul(lam1, lam2), lam_bound):
        raise HypothesisViolated("lambda_1 lambda_2 exceeds r^{m-1} h^{n-1} / c")

    params.update({"route": "dilation", "mu": _fmt(mu), "mu_prime": _fmt(mu2),
                   "lambda1": _fmt(lam1), "lambda2": _fmt(lam2)})
    cert = main_lemma_transfer(
        system, v1, v2, h, r, budget=budget, _kind="alphas_core", _extra_params=params
    )
    return cert


def _companion(system, candidates, mult, h_star, r_star, mu, budget, find: str):
    """Secondary minimal dilation: for find='v2', the smallest mu' over
    points with h-value strictly below mu*h*; symmetric for find='v1'.

    ``mult`` is the inflation factor of the box the candidates came from; a
    minimum <= mult is global, since points outside exceed mult on the
    relevant side.
    """
    while True:
        best, best_pt = None, None
        for z in candidates:
            rv, hv = system.primal_values(z)
            if find == "v2":
                if not exact_lt_strict(hv, xmul(mu, h_star)):
                    continue
                ratio = exact_div_any(rv, r_star) if rv else Fraction(0)
            else:
                if not exact_lt_strict(rv, xmul(mu, r_star)):
                    continue
                ratio = exact_div_any(hv, h_star) if hv else Fraction(0)
            if best is None or exact_lt_strict(ratio, best):
                best, best_pt = ratio, z
        if best_pt is not None and xle(best, Fraction(mult)):
            return best_pt, best
        mult *= 2
        if mult > 2**20:
            raise BudgetExceeded("companion dilation search exceeded 2^20")
        if find == "v2":
            box = Box(
                system, xmul(h_star, mu), xmul(r_star, Fraction(mult)), "primal"
            )
        else:
            box = Box(
                system, xmul(h_star, Fraction(mult)), xmul(r_star, mu), "primal"
            )
        candidates = enumerate_nonzero(box, budget=budget)
