"""Explicit irreducibility threshold engine.

Evaluates, for a rank-r module with naive height h and graded height
h_G over a degree-d extension of F_q(T), the two reducibility
inequalities (their right-hand sides do not depend on deg l), the
combined constant Omega, and the Lambert-W threshold C above which the
exponential side provably dominates.  Degrees l beyond max(C, Omega)
certify irreducibility of the mod-l representation.

Conventions: every *_log quantity is a base-q logarithm; the Lambert
solver works in natural logs and conversions are explicit.  Arguments
of log_q are clamped below at 1, which only enlarges right-hand sides
and thus preserves soundness; log c_2 is a user parameter (the
underlying effective constant is not available in closed form) and is
echoed into every report, as is the exponent-base choice and the
reading used for inequality (2).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import MathPreconditionError

INEQ2_READING = "log(d*h)"  # the derivation's reading; "log(d)*h" also reported


def n_d(d: int) -> int:
    """The exponent constant 10 (d+1)^7."""
    if d < 1:
        raise ValueError("d must be >= 1")
    return 10 * (d + 1) ** 7


@dataclass(frozen=True)
class BoundParams:
    """Inputs of the threshold engine; heights are exact rationals."""

    q: int
    d: int
    r: int
    h: Fraction
    h_g: Fraction
    log_c2: float = 0.0
    exp_base: str = "d"  # which N to use: 10(d+1)^7 or 10(r+1)^7

    def __post_init__(self):
        if self.q < 2:
            raise ValueError("q must be a prime power >= 2")
        if self.d < 1:
            raise ValueError("d must be >= 1")
        if self.r < 2:
            raise ValueError(
                "r must be >= 2 (rank-1 representations are 1-dimensional,"
                " hence always irreducible)"
            )
        if self.h < 0 or self.h_g < 0:
            raise ValueError("heights must be nonnegative")
        if self.exp_base not in ("d", "r"):
            raise ValueError("exp_base must be 'd' or 'r'")

    @property
    def big_n(self) -> int:
        return n_d(self.d if self.exp_base == "d" else self.r)


def _log_q(value: float | Fraction, q: int) -> float:
    """Base-q log with the soundness clamp at 1."""
    v = float(value)
    if v <= 1.0:
        return 0.0
    return math.log(v) / math.log(q)


def dd_log_degree_bound(params: BoundParams, h: Fraction | None = None) -> float:
    """log_q of the isogeny degree bound c_2 (d h)^N."""
    hh = params.h if h is None else h
    return params.log_c2 + params.big_n * _log_q(Fraction(params.d) * hh, params.q)


@dataclass(frozen=True)
class CaseResult:
    holds: bool
    lhs: float
    rhs: float


def ineq1_rhs(params: BoundParams) -> float:
    """RHS of case (1): log c2 + N (log d + r + log[h_G + 1 + q/(q-1) - q^r/(q^r-1)])."""
    q, r = params.q, params.r
    bracket = (
        params.h_g
        + 1
        + Fraction(q, q - 1)
        - Fraction(q**r, q**r - 1)
    )
    return params.log_c2 + params.big_n * (
        _log_q(params.d, q) + r + _log_q(bracket, q)
    )


def ineq1_holds(deg_ell: int, params: BoundParams) -> CaseResult:
    """Case (1) is not excluded iff deg l - N log deg l <= RHS."""
    if deg_ell < 1:
        raise ValueError("deg l must be >= 1")
    lhs = deg_ell - params.big_n * _log_q(deg_ell, params.q)
    rhs = ineq1_rhs(params)
    return CaseResult(lhs <= rhs, lhs, rhs)


def ineq2_rhs(params: BoundParams, reading: str = INEQ2_READING) -> float:
    """RHS of case (2) under the chosen reading of the bracket."""
    if reading == "log(d*h)":
        return params.log_c2 + params.big_n * _log_q(
            Fraction(params.d) * params.h, params.q
        )
    if reading == "log(d)*h":
        return params.log_c2 + params.big_n * _log_q(params.d, params.q) * float(
            params.h
        )
    raise ValueError(f"unknown ineq2 reading {reading!r}")


def ineq2_holds(deg_ell: int, params: BoundParams) -> CaseResult:
    """Case (2) is not excluded iff deg l <= RHS."""
    if deg_ell < 1:
        raise ValueError("deg l must be >= 1")
    rhs = ineq2_rhs(params)
    return CaseResult(deg_ell <= rhs, float(deg_ell), rhs)


def omega_phi(params: BoundParams) -> float:
    """The deg-l-independent constant: max of the two right-hand sides."""
    return max(ineq1_rhs(params), ineq2_rhs(params))


# -- Lambert W, negative real branch ------------------------------------------


def lambert_w_m1(z: float) -> float:
    """W_{-1}(z) for z in [-1/e, 0): the y <= -1 solution of y e^y = z.

    Bracketed Newton iteration on F(y) = y + ln(-y) - ln(-z), which is
    monotone on (-inf, -1); bisection safeguards every step.
    """
    branch_point = -math.exp(-1.0)
    if z >= 0:
        raise MathPreconditionError("W_{-1} needs z < 0")
    if z < branch_point:
        if z > branch_point * (1 + 1e-12):
            return -1.0  # rounding right at the branch point
        raise MathPreconditionError(f"z = {z} below the branch point -1/e")
    if z == branch_point:
        return -1.0
    target = math.log(-z)
    # F is increasing on (-inf, -1) with F(-1) >= 0; walk lo down to F(lo) <= 0
    hi = -1.0
    lo = -2.0
    while lo + math.log(-lo) > target:
        lo *= 2.0
    y = 0.5 * (lo + hi)
    for _ in range(200):
        f = y + math.log(-y) - target
        if f > 0.0:
            hi = y
        else:
            lo = y
        dfdy = 1.0 + 1.0 / y
        step_ok = dfdy > 0.0
        if step_ok:
            y_new = y - f / dfdy
            if not (lo < y_new < hi):
                y_new = 0.5 * (lo + hi)
        else:
            y_new = 0.5 * (lo + hi)
        if y_new == y:
            break
        y = y_new
    return y


def lemma_threshold(a: float, b: float, c: float) -> float:
    """The explicit x* with a^x / x^b > c for every x > x*.

    Requires a > 1, b > 0, c > 0 and the hypothesis
    c^(1/b) * b / ln a >= e; violation is reported as a precondition
    failure, not a numeric fault.  Computed as
    x* = -b W_{-1}(-ln a / (c^(1/b) b)) / ln a, which always satisfies
    x* >= b / ln a.
    """
    if not (a > 1 and b > 0 and c > 0):
        raise MathPreconditionError("need a > 1, b > 0, c > 0")
    return _lemma_threshold_log(a, b, math.log(c))


def _lemma_threshold_log(a: float, b: float, ln_c: float) -> float:
    """lemma_threshold with c given through its natural log (c may be huge)."""
    ln_a = math.log(a)
    # hypothesis c^(1/b) b / ln a >= e, checked in log space
    hyp_log = ln_c / b + math.log(b) - math.log(ln_a)
    if hyp_log < 1.0 - 1e-12:
        raise MathPreconditionError(
            "lemma hypothesis fails: c^(1/b) * b / ln(a) < e"
        )
    z = -ln_a / (math.exp(ln_c / b) * b)
    w = lambert_w_m1(z)
    return -b * w / ln_a


@dataclass(frozen=True)
class BoundReport:
    """Everything the threshold engine derives, plus the assumptions used."""

    params: BoundParams
    n_d: int
    omega: float
    c_threshold: float
    threshold: float
    ineq1_rhs: float
    ineq2_rhs: float
    ineq2_rhs_alt: float
    case_results: tuple = ()  # (deg_ell, CaseResult, CaseResult) per queried degree

    def to_dict(self) -> dict:
        out = {
            "n_d": self.n_d,
            "omega": self.omega,
            "c_threshold": self.c_threshold,
            "threshold": self.threshold,
            "ineq1_rhs": self.ineq1_rhs,
            "ineq2_rhs": self.ineq2_rhs,
            "ineq2_rhs_alt_reading": self.ineq2_rhs_alt,
            "assumptions": {
                "log_c2": self.params.log_c2,
                "exp_base": self.params.exp_base,
                "ineq2_reading": INEQ2_READING,
                "log_clamp_at_1": True,
                "log_base": "q",
            },
            "inputs": {
                "q": self.params.q,
                "d": self.params.d,
                "r": self.params.r,
                "h": str(self.params.h),
                "h_G": str(self.params.h_g),
            },
        }
        if self.case_results:
            out["cases"] = [
                {
                    "deg_ell": deg,
                    "case1_holds": c1.holds,
                    "case1_lhs": c1.lhs,
                    "case1_rhs": c1.rhs,
                    "case2_holds": c2.holds,
                    "case2_rhs": c2.rhs,
                    "excluded": not (c1.holds or c2.holds),
                }
                for deg, c1, c2 in self.case_results
            ]
        return out


def irreducibility_threshold(
    params: BoundParams, deg_ells: list[int] | None = None
) -> BoundReport:
    """Full report: N, Omega, the Lambert threshold C, max(C, Omega), and
    per-degree case verdicts for any requested degrees."""
    omega = omega_phi(params)
    big_n = params.big_n
    ln_q = math.log(params.q)
    c_thr = _lemma_threshold_log(params.q, big_n, omega * ln_q)
    threshold = max(c_thr, omega)
    cases = tuple(
        (deg, ineq1_holds(deg, params), ineq2_holds(deg, params))
        for deg in (deg_ells or [])
    )
    return BoundReport(
        params=params,
        n_d=big_n,
        omega=omega,
        c_threshold=c_thr,
        threshold=threshold,
        ineq1_rhs=ineq1_rhs(params),
        ineq2_rhs=ineq2_rhs(params),
        ineq2_rhs_alt=ineq2_rhs(params, "log(d)*h"),
        case_results=cases,
    )
