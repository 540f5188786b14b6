"""Expected hitting times of the all-ones string, exactly.

With g(k) the expected number of mutation steps to reach the optimum from k
zero bits, conditioning on the first accepted jump gives the triangular
recurrence

    g(0) = 0,
    g(k) = (1 + sum_{j=1..k-1} p(k, j) g(j)) / sum_{j=0..k-1} p(k, j),

because the chain never moves up. The companion quantity

    q(k) = sum_{j=1..k} 1 / delta(j)

is the inverse-drift sum: the estimate variable drift arguments produce, and
the reference point of the corridor below. For starts k <= 3 the recurrence
collapses to closed forms, implemented in :func:`closed_form_g` as an
independent cross-check.

The corridor: for n >= 4 and the half start k = floor(n/2),

    q(k) - C1 log n <= g(k) <= q(k) - C2 log n

with C1 = 4 e^(7/2) and C2 = e^-2 / (12 (1 + e^-2 / 4)). The inverse-drift
sum therefore overestimates the true expectation by Theta(log n), never more.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .backends import (
    DEFAULT_RATIONAL_CAP,
    FLOAT,
    RATIONAL,
    Scalar,
    check_backend,
    check_n,
    check_rational_cap,
)
from .drift import DriftTable, TransitionKernel, _kernel_row_float, drift

__all__ = [
    "CORRIDOR_C1",
    "CORRIDOR_C2",
    "HittingProfile",
    "hitting_profile",
    "runtime_profile",
    "inverse_drift_sum",
    "closed_form_g",
    "harmonic",
]

CORRIDOR_C1 = 4.0 * math.exp(3.5)
CORRIDOR_C2 = math.exp(-2.0) / (12.0 * (1.0 + math.exp(-2.0) / 4.0))


@dataclass(frozen=True)
class HittingProfile:
    """Hitting times g(k) and inverse-drift sums q(k) for k = 0..max_state."""

    n: int
    backend: str
    g: tuple
    q: tuple


def harmonic(m: int) -> float:
    """The m-th harmonic number, by direct compensated summation.

    Beyond 10**6 terms the asymptotic expansion takes over; its omitted term
    is below 1/(252 m^6), far under double precision there.
    """
    if m < 0:
        raise ValueError(f"harmonic number needs m >= 0, got {m}")
    if m <= 10**6:
        return math.fsum(1.0 / i for i in range(1, m + 1))
    from .asymptotics import EULER_GAMMA

    return (
        math.log(m)
        + EULER_GAMMA
        + 1.0 / (2.0 * m)
        - 1.0 / (12.0 * m**2)
        + 1.0 / (120.0 * m**4)
    )


def _profile_from_parts(n: int, backend: str, rows, delta) -> HittingProfile:
    up_to = len(rows) - 1
    if backend == RATIONAL:
        g: list = [Fraction(0)]
        q: list = [Fraction(0)]
        for k in range(1, up_to + 1):
            row = rows[k]
            denom = sum(row[:k])
            hit = sum(row[j] * g[j] for j in range(1, k))
            g.append((1 + hit) / denom)
            q.append(q[-1] + 1 / delta[k])
    else:
        g = [0.0]
        q = [0.0]
        for k in range(1, up_to + 1):
            row = rows[k]
            denom = math.fsum(row[:k])
            hit = math.fsum(row[j] * g[j] for j in range(1, k))
            g.append((1.0 + hit) / denom)
            q.append(q[-1] + 1.0 / delta[k])
    return HittingProfile(n=n, backend=backend, g=tuple(g), q=tuple(q))


def hitting_profile(kernel: TransitionKernel, drift_table: DriftTable) -> HittingProfile:
    """Solve the hitting-time recurrence over the kernel's rows.

    The profile covers k = 0..kernel.max_state; the drift table supplies the
    denominators of the inverse-drift sums.
    """
    if kernel.n != drift_table.n:
        raise ValueError(
            f"kernel has n = {kernel.n} but drift table has n = {drift_table.n}"
        )
    if kernel.backend != drift_table.backend:
        raise ValueError(
            f"kernel backend {kernel.backend!r} does not match "
            f"drift table backend {drift_table.backend!r}"
        )
    return _profile_from_parts(
        kernel.n, kernel.backend, kernel.rows, drift_table.delta
    )


def runtime_profile(
    n: int,
    backend: str = FLOAT,
    up_to: int | None = None,
    rational_cap: int = DEFAULT_RATIONAL_CAP,
) -> HittingProfile:
    """Hitting profile for one n, building only the rows it needs.

    Equivalent to composing :func:`~onemax_runtime.drift.build_kernel` and
    :func:`~onemax_runtime.drift.build_drift_table` with
    :func:`hitting_profile`, but stops at ``up_to`` (default n), which keeps
    sweeps over many problem sizes quadratic per size.
    """
    check_n(n)
    check_backend(backend)
    check_rational_cap(n, backend, rational_cap)
    if up_to is None:
        up_to = n
    if up_to < 0 or up_to > n:
        raise ValueError(f"up_to = {up_to} outside [0, {n}]")
    if backend == RATIONAL:
        from .drift import _kernel_row_rational

        rows = [tuple(_kernel_row_rational(n, k)) for k in range(up_to + 1)]
    else:
        rows = [_kernel_row_float(n, k) for k in range(up_to + 1)]
    delta = [drift(n, k, backend) for k in range(up_to + 1)]
    return _profile_from_parts(n, backend, rows, delta)


def inverse_drift_sum(drift_table: DriftTable, k0: int) -> Scalar:
    """q(k0) = sum_{j=1..k0} 1/delta(j) from a prebuilt drift table."""
    if k0 < 0 or k0 > drift_table.n:
        raise ValueError(f"start k0 = {k0} outside [0, {drift_table.n}]")
    if drift_table.backend == RATIONAL:
        return sum((1 / drift_table.delta[j] for j in range(1, k0 + 1)), Fraction(0))
    return math.fsum(1.0 / drift_table.delta[j] for j in range(1, k0 + 1))


def closed_form_g(n: int, k: int) -> Fraction:
    """Exact hitting time from starts k <= 3, in closed form.

    All three nontrivial cases share the prefactor (1 - 1/n)^-n; the rest is
    a ratio of polynomials in n. Cross-checked against the recurrence in the
    test suite (and the k = 3 case needs n >= 3 so the start is a valid
    state).
    """
    check_n(n)
    if k not in (0, 1, 2, 3):
        raise ValueError(f"closed forms exist for starts 0..3, got k = {k}")
    if k == 3 and n < 3:
        raise ValueError(f"start k = 3 needs n >= 3, got n = {n}")
    if k == 0:
        return Fraction(0)
    pf = Fraction(n, n - 1) ** n
    if k == 1:
        return n * Fraction(n, n - 1) ** (n - 1)
    if k == 2:
        num = 3 * n**3 - 8 * n**2 + 6 * n - 1
        den = 2 * n**2 - 2 * n - 1
        return Fraction(num, den) * pf
    num = 22 * n**7 - 114 * n**6 + 203 * n**5 - 117 * n**4 - 38 * n**3 + 49 * n**2 - 7 * n + 2
    den = 12 * n**6 - 36 * n**5 + 4 * n**4 + 60 * n**3 - 23 * n**2 - 21 * n - 2
    return Fraction(num, den) * pf
