"""Verification lab for every inequality behind the runtime corridor.

The corridor argument rests on a ladder of intermediate inequalities about
the drift, the transition kernel and the potential eta. Each one is checked
here numerically over its stated range and reported as a record carrying the
analytic bound, the observed extremal value and the verdict, so the slack is
auditable instead of a bare boolean.

The potential is

    eta(k) = sum_{l=0..k-1} p(k, l) (q(k) - q(l)),

the expected one-step drop of the inverse-drift sum q from state k. It is
at least 1 everywhere; over k <= n/2 it stays within 1 + O(1/n) of 1, which
is what pins g(k) to q(k) up to Theta(log n).

Margins are evaluated in the backend's own arithmetic, so the rational
backend decides rational-bound checks exactly. Float comparisons at a true
equality point (the normalized-drift sandwich is tight at k = 1 and
k = n + 1, and eta(1) = 1 exactly) can land a few ulp on the wrong side; a
float verdict within 1e-9 of the bound is re-checked in exact arithmetic
when the instance fits the rational cap and the bound is itself rational,
and otherwise gets a relative 1e-12 roundoff allowance. Genuine violations
report as failures, not raises.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .backends import (
    DEFAULT_RATIONAL_CAP,
    FLOAT,
    RATIONAL,
    Scalar,
    check_backend,
    check_n,
    check_rational_cap,
    pow_base,
)
from .drift import (
    DriftTable,
    TransitionKernel,
    _kernel_row_rational,
    build_drift_table,
    build_kernel,
    drift,
    normalized_drift,
)
from .hitting import CORRIDOR_C1, CORRIDOR_C2, _profile_from_parts, harmonic

__all__ = [
    "CheckRecord",
    "BoundReport",
    "eta",
    "eta_star",
    "verify_inequalities",
]

_NEAR_BOUNDARY = 1e-9
_ROUNDOFF_REL = 1e-12


@dataclass(frozen=True)
class CheckRecord:
    """One verified inequality: identifier, range, bound, observed extremum.

    ``direction`` is "le" when the observed value must stay at or below the
    bound and "ge" when it must stay at or above it. Checks whose range is
    empty at the given n carry ``applicable=False`` and ``passed=None``.
    """

    check_id: str
    k_lo: int
    k_hi: int
    direction: str
    bound: float
    observed: float | None
    passed: bool | None
    applicable: bool


@dataclass(frozen=True)
class BoundReport:
    """Everything verify_inequalities measured for one problem size."""

    n: int
    backend: str
    eta: tuple
    eta_star_max: Scalar
    eta_star_max_range: tuple[int, int]
    eta_star_min: Scalar
    eta_star_min_range: tuple[int, int]
    checks: tuple[CheckRecord, ...]

    def check(self, check_id: str) -> CheckRecord:
        for rec in self.checks:
            if rec.check_id == check_id:
                return rec
        raise KeyError(f"no check named {check_id!r}")


def _q_values(drift_table: DriftTable, up_to: int) -> list:
    zero = Fraction(0) if drift_table.backend == RATIONAL else 0.0
    q = [zero]
    for k in range(1, up_to + 1):
        q.append(q[-1] + 1 / drift_table.delta[k])
    return q


def eta(kernel: TransitionKernel, drift_table: DriftTable, k: int) -> Scalar:
    """Expected one-step drop of the inverse-drift sum from state k."""
    if kernel.n != drift_table.n:
        raise ValueError(
            f"kernel has n = {kernel.n} but drift table has n = {drift_table.n}"
        )
    if k < 1 or k > kernel.max_state:
        raise ValueError(f"state k = {k} outside [1, {kernel.max_state}]")
    q = _q_values(drift_table, k)
    row = kernel.rows[k]
    if kernel.backend == RATIONAL:
        return sum((row[l] * (q[k] - q[l]) for l in range(k)), Fraction(0))
    return math.fsum(row[l] * (q[k] - q[l]) for l in range(k))


def eta_star(
    kernel: TransitionKernel,
    drift_table: DriftTable,
    k_lo: int,
    k_hi: int,
    mode: str = "max",
) -> Scalar:
    """Extremum of eta over the state range k_lo..k_hi (inclusive)."""
    if mode not in ("max", "min"):
        raise ValueError(f"mode must be 'max' or 'min', got {mode!r}")
    if k_lo < 1 or k_hi > kernel.max_state or k_lo > k_hi:
        raise ValueError(
            f"state range [{k_lo}, {k_hi}] invalid for max_state {kernel.max_state}"
        )
    values = [eta(kernel, drift_table, k) for k in range(k_lo, k_hi + 1)]
    return max(values) if mode == "max" else min(values)


@dataclass
class _Check:
    """Raw material of one record: values still in backend arithmetic."""

    check_id: str
    k_lo: int
    k_hi: int
    direction: str
    bound: object
    values: list | None
    exact: object = None


def _decide(check: _Check, n: int, backend: str, rational_cap: int) -> CheckRecord:
    if not check.values:
        return CheckRecord(
            check_id=check.check_id,
            k_lo=check.k_lo,
            k_hi=check.k_hi,
            direction=check.direction,
            bound=float(check.bound),
            observed=None,
            passed=None,
            applicable=False,
        )
    obs = max(check.values) if check.direction == "le" else min(check.values)
    if check.direction == "le":
        diff = check.bound - obs
    else:
        diff = obs - check.bound
    if diff >= 0:
        passed = True
    elif float(diff) > -_NEAR_BOUNDARY:
        if backend == FLOAT and check.exact is not None and n <= rational_cap:
            passed = bool(check.exact())
        else:
            passed = float(diff) >= -_ROUNDOFF_REL * max(1.0, abs(float(check.bound)))
    else:
        passed = False
    return CheckRecord(
        check_id=check.check_id,
        k_lo=check.k_lo,
        k_hi=check.k_hi,
        direction=check.direction,
        bound=float(check.bound),
        observed=float(obs),
        passed=passed,
        applicable=True,
    )


def _exact_delta_sandwich_upper(n: int) -> bool:
    return all(drift(n, k, RATIONAL) <= Fraction(k, n) for k in range(1, n + 1))


def _exact_dstar_sandwich(n: int, upper: bool) -> bool:
    grow = Fraction(n + 1, n)
    for k in range(1, n + 2):
        ds = normalized_drift(n, k, RATIONAL)
        if upper and ds > grow**n * Fraction(k, n):
            return False
        if not upper and ds < grow ** (k - 1) * Fraction(k, n):
            return False
    return True


def _exact_eta_unit(n: int) -> bool:
    table = build_drift_table(n, RATIONAL)
    q = _q_values(table, n)
    for k in range(1, n + 1):
        row = _kernel_row_rational(n, k)
        val = sum((row[l] * (q[k] - q[l]) for l in range(k)), Fraction(0))
        if val < 1:
            return False
    return True


def verify_inequalities(
    n: int,
    backend: str = FLOAT,
    rational_cap: int = DEFAULT_RATIONAL_CAP,
) -> BoundReport:
    """Check the full inequality suite at one problem size.

    Returns a report whose records are data: a failed check is a result, not
    an exception. Checks needing n >= 4 (the eta lower bound, the refined
    inverse-drift difference and the corridor itself) are marked not
    applicable below that.
    """
    check_n(n)
    check_backend(backend)
    check_rational_cap(n, backend, rational_cap)

    rational = backend == RATIONAL
    kernel = build_kernel(n, backend, rational_cap=rational_cap)
    table = build_drift_table(n, backend, rational_cap=rational_cap)
    q = _q_values(table, n)
    profile = _profile_from_parts(n, backend, kernel.rows, table.delta)
    g = profile.g
    half = n // 2
    e = math.e
    one = Fraction(1) if rational else 1.0

    eta_vals: list = [Fraction(0) if rational else 0.0]
    for k in range(1, n + 1):
        row = kernel.rows[k]
        if rational:
            eta_vals.append(sum((row[l] * (q[k] - q[l]) for l in range(k)), Fraction(0)))
        else:
            qk = q[k]
            eta_vals.append(math.fsum(row[l] * (qk - q[l]) for l in range(k)))

    delta = table.delta
    dstar = table.delta_star
    invd = [None] + [1 / delta[k] for k in range(1, n + 1)]

    checks: list[_Check] = []

    diffs = [delta[k] - delta[k - 1] for k in range(1, n + 1)]
    checks.append(_Check("delta-diff-lower", 1, n, "ge", 1.0 / (e * n), diffs))
    checks.append(_Check("delta-diff-upper", 1, n, "le", 2.0 / (n - 1), diffs))

    sdiffs = [dstar[k] - dstar[k - 1] for k in range(1, n + 2)]
    lo_bound = Fraction(1, n) if rational else 1.0 / n
    checks.append(_Check("delta-star-diff-lower", 1, n + 1, "ge", lo_bound, sdiffs))
    checks.append(_Check("delta-star-diff-upper", 1, n + 1, "le", 2.0 * e / n, sdiffs))

    ratios = [delta[k] * n / k for k in range(1, n + 1)]
    checks.append(_Check("delta-sandwich-lower", 1, n, "ge", 1.0 / e, ratios))
    checks.append(
        _Check(
            "delta-sandwich-upper", 1, n, "le", one, ratios,
            exact=lambda: _exact_delta_sandwich_upper(n),
        )
    )

    if rational:
        grow = Fraction(n + 1, n)
        lo_env = [grow ** (k - 1) * Fraction(k, n) for k in range(1, n + 2)]
        hi_env = [grow**n * Fraction(k, n) for k in range(1, n + 2)]
    else:
        lo_env = [pow_base(1.0 + 1.0 / n, k - 1) * k / n for k in range(1, n + 2)]
        hi_env = [pow_base(1.0 + 1.0 / n, n) * k / n for k in range(1, n + 2)]
    zero = Fraction(0) if rational else 0.0
    checks.append(
        _Check(
            "delta-star-sandwich-lower", 1, n + 1, "ge", zero,
            [dstar[k] - lo_env[k - 1] for k in range(1, n + 2)],
            exact=lambda: _exact_dstar_sandwich(n, upper=False),
        )
    )
    checks.append(
        _Check(
            "delta-star-sandwich-upper", 1, n + 1, "le", zero,
            [dstar[k] - hi_env[k - 1] for k in range(1, n + 2)],
            exact=lambda: _exact_dstar_sandwich(n, upper=True),
        )
    )

    tail_ratios: list = []
    for k in range(1, n + 1):
        row = kernel.rows[k]
        if rational:
            factor = Fraction(1)
            step = Fraction(n, k)
            cum = sum(row)
            for l in range(1, k + 1):
                cum -= row[k - l + 1]
                factor *= l * step
                tail_ratios.append(cum * factor)
        else:
            cums = np.cumsum(row)
            logkn = math.log(k / n)
            for l in range(1, k + 1):
                t = float(cums[k - l])
                if t <= 0.0:
                    continue
                logbound = l * logkn - math.lgamma(l + 1)
                tail_ratios.append(math.exp(math.log(t) - logbound))
    checks.append(_Check("tail-factorial", 1, n, "le", one, tail_ratios))

    diff_upper_ratios: list[float] = []
    coef = 2.0 * e * e * n * n / (n - 1)
    for k in range(2, n + 1):
        fk = float(invd[k])
        for l in range(1, k):
            lhs = float(invd[k - l]) - fk
            rhs = coef * l / (k * (k - l))
            diff_upper_ratios.append(lhs / rhs)
    checks.append(_Check("inv-drift-diff-upper", 2, n, "le", 1.0, diff_upper_ratios))

    diff_lower_ratios: list[float] = []
    for k in range(2, half + 1):
        lhs = float(invd[k - 1]) - float(invd[k])
        rhs = n / (e * k * k)
        diff_lower_ratios.append(lhs / rhs)
    checks.append(
        _Check(
            "inv-drift-diff-lower", 2, half, "ge", 1.0,
            diff_lower_ratios if half >= 2 else None,
        )
    )

    checks.append(
        _Check(
            "eta-unit-lower", 1, n, "ge", one, eta_vals[1:],
            exact=lambda: _exact_eta_unit(n),
        )
    )
    checks.append(
        _Check(
            "eta-upper", 1, half, "le", 1.0 + 2.0 * math.exp(2.5) / (n - 1),
            eta_vals[1 : half + 1],
        )
    )
    checks.append(
        _Check(
            "eta-lower", 2, half, "ge", 1.0 + math.exp(-2.0) / (4.0 * n),
            eta_vals[2 : half + 1] if half >= 2 else None,
        )
    )

    eta_star_max = max(eta_vals[1 : half + 1])
    eta_star_min = min(eta_vals[2 : n + 1])
    if rational:
        lower_sum = sum(
            (1 / (eta_star_max * delta[k]) for k in range(1, half + 1)), Fraction(0)
        )
        upper_sum = invd[1] + sum(
            (1 / (eta_star_min * delta[k]) for k in range(2, half + 1)), Fraction(0)
        )
        theorem_vals = {"lower": [g[half] / lower_sum], "upper": [g[half] / upper_sum]}
    else:
        lower_sum = math.fsum(
            1.0 / (eta_star_max * delta[k]) for k in range(1, half + 1)
        )
        upper_sum = invd[1] + math.fsum(
            1.0 / (eta_star_min * delta[k]) for k in range(2, half + 1)
        )
        theorem_vals = {"lower": [g[half] / lower_sum], "upper": [g[half] / upper_sum]}
    checks.append(_Check("theorem-lower", 1, half, "ge", one, theorem_vals["lower"]))
    checks.append(_Check("theorem-upper", 1, half, "le", one, theorem_vals["upper"]))

    if n >= 4:
        q_half = float(q[half])
        g_half = float(g[half])
        logn = math.log(n)
        checks.append(
            _Check("corridor-lower", half, half, "ge", q_half - CORRIDOR_C1 * logn, [g_half])
        )
        checks.append(
            _Check("corridor-upper", half, half, "le", q_half - CORRIDOR_C2 * logn, [g_half])
        )
    else:
        checks.append(_Check("corridor-lower", half, half, "ge", 0.0, None))
        checks.append(_Check("corridor-upper", half, half, "le", 0.0, None))

    checks.append(
        _Check(
            "q-harmonic-envelope", 1, n, "le", 1.0,
            [float(q[k]) / (e * n * harmonic(k)) for k in range(1, n + 1)],
        )
    )

    records = tuple(_decide(c, n, backend, rational_cap) for c in checks)
    return BoundReport(
        n=n,
        backend=backend,
        eta=tuple(eta_vals),
        eta_star_max=eta_star_max,
        eta_star_max_range=(1, half),
        eta_star_min=eta_star_min,
        eta_star_min_range=(2, n),
        checks=records,
    )
