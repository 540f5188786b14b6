"""Exact drift and transition structure of the (1+1) EA on OneMax.

The chain state is k, the number of zero bits in the current search point on
n bits. One step flips every bit independently with probability 1/n and keeps
the offspring iff its one-count did not drop, so the accepted state never
increases. With a ~ Bin(k, 1/n) zero-bits flipped and b ~ Bin(n-k, 1/n)
one-bits flipped, the step is accepted iff b <= a and then moves to k - a + b.

Everything here is an explicit finite sum over mutation outcomes:

* ``drift``: the exact one-step progress E[(a - b)^+],
* ``normalized_drift``: the same quantity with the mutation null factor
  (1 - 1/n)^n divided out and re-indexed, which is the form the asymptotic
  expansion targets; ``drift(n, k) == normalized_drift(n-1, k) * (1-1/n)**n``,
* ``normalized_drift_gf``: an independent generating-function route to the
  normalized drift, used to cross-check the double sum,
* ``transition_prob`` / ``build_kernel``: the accepted-step law p(k, j),
* ``build_drift_table``: dense drift tables consumed by the hitting-time
  recurrence and the bound checks.

All operations take a ``backend`` flag: ``"float"`` for IEEE doubles with
numpy vectorization, ``"rational"`` for exact ``fractions.Fraction``
arithmetic. Builders cap the rational backend (default n <= 64) because exact
kernels grow quadratically many Fractions with denominators of order n^n.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Union

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

__all__ = [
    "DriftTable",
    "TransitionKernel",
    "drift",
    "normalized_drift",
    "normalized_drift_gf",
    "transition_prob",
    "transition_tail",
    "build_drift_table",
    "build_kernel",
]


def _check_state(n: int, k: int, hi: int) -> int:
    if not isinstance(k, int) or isinstance(k, bool):
        raise ValueError(f"state must be an integer, got {k!r}")
    if k < 0 or k > hi:
        raise ValueError(f"state k = {k} outside [0, {hi}] for n = {n}")
    return k


def _binom_pmf_float(m: int, n: int) -> np.ndarray:
    """Pmf of Bin(m, 1/n) as a float vector of length m + 1.

    Built by the ratio recurrence pmf[i] = pmf[i-1] * (m-i+1) / (i (n-1)),
    which is stable because every factor is positive and the mass decays.
    """
    out = np.empty(m + 1)
    out[0] = pow_base(1.0 - 1.0 / n, m)
    if m:
        i = np.arange(1.0, m + 1)
        out[1:] = out[0] * np.cumprod((m - i + 1.0) / (i * (n - 1.0)))
    return out


def _binom_pmf_rational(m: int, n: int) -> list[Fraction]:
    """Pmf of Bin(m, 1/n) as exact Fractions."""
    p = Fraction(1, n)
    q = 1 - p
    base = q**m
    out = [base]
    for i in range(1, m + 1):
        base = base * (m - i + 1) / i * p / q
        out.append(base)
    return out


def drift(n: int, k: int, backend: str = FLOAT) -> Scalar:
    """Exact one-step drift E[k - next | state k] of the (1+1) EA on OneMax.

    Equals sum over flip counts (l zero-bits, j one-bits, j < l) of
    (l - j) C(k, l) C(n-k, j) (1/n)^(l+j) (1 - 1/n)^(n-l-j). Zero at k = 0.
    """
    check_n(n)
    check_backend(backend)
    _check_state(n, k, n)
    if k == 0:
        return Fraction(0) if backend == RATIONAL else 0.0
    if backend == RATIONAL:
        pa = _binom_pmf_rational(k, n)
        pb = _binom_pmf_rational(n - k, n)
        total = Fraction(0)
        for l in range(1, k + 1):
            jhi = min(l - 1, n - k)
            total += pa[l] * sum((l - j) * pb[j] for j in range(jhi + 1))
        return total
    pa = _binom_pmf_float(k, n)
    pb = _binom_pmf_float(n - k, n)
    cs0 = np.cumsum(pb)
    cs1 = np.cumsum(pb * np.arange(len(pb)))
    l = np.arange(1, k + 1)
    idx = np.minimum(l - 1, n - k)
    return float(np.dot(pa[1:], l * cs0[idx] - cs1[idx]))


def normalized_drift(n: int, k: int, backend: str = FLOAT) -> Scalar:
    """Normalized drift: the mutation null factor divided out, index shifted.

    Defined for 0 <= k <= n + 1 as

        sum_{l=1..k} C(k, l) sum_{j=0..l-1} (l - j) C(n+1-k, j) n^-(j+l),

    with value 0 at k = 0, and related to the plain drift by
    ``drift(n, k) == normalized_drift(n - 1, k) * (1 - 1/n)**n``.
    """
    check_n(n)
    check_backend(backend)
    _check_state(n, k, n + 1)
    if k == 0:
        return Fraction(0) if backend == RATIONAL else 0.0
    m = n + 1 - k
    if backend == RATIONAL:
        inv = Fraction(1, n)
        total = Fraction(0)
        u = Fraction(1)
        for l in range(1, k + 1):
            u = u * (k - l + 1) / l * inv
            jhi = min(l - 1, m)
            v = Fraction(1)
            inner = Fraction(l)
            for j in range(1, jhi + 1):
                v = v * (m - j + 1) / j * inv
                inner += (l - j) * v
            total += u * inner
        return total
    u = np.empty(k + 1)
    u[0] = 1.0
    if k:
        i = np.arange(1.0, k + 1)
        u[1:] = np.cumprod((k - i + 1.0) / (i * n))
    v = np.empty(m + 1)
    v[0] = 1.0
    if m:
        j = np.arange(1.0, m + 1)
        v[1:] = np.cumprod((m - j + 1.0) / (j * n))
    cv0 = np.cumsum(v)
    cv1 = np.cumsum(v * np.arange(len(v)))
    l = np.arange(1, k + 1)
    idx = np.minimum(l - 1, m)
    return float(np.dot(u[1:], l * cv0[idx] - cv1[idx]))


def _poly_mul(a: list[Fraction], b: list[Fraction], cap: int) -> list[Fraction]:
    """Product of two coefficient lists, truncated to degree cap."""
    out = [Fraction(0)] * (cap + 1)
    for i, ai in enumerate(a[: cap + 1]):
        if not ai:
            continue
        for j, bj in enumerate(b[: cap + 1 - i]):
            if bj:
                out[i + j] += ai * bj
    return out


def normalized_drift_gf(n: int, k: int) -> Fraction:
    """Normalized drift by generating-function coefficient extraction.

    Independent route: the normalized drift equals the coefficient of
    z^(k-1) in (z + 1/n)^k (1 - z)^-2 (1 + z/n)^(n+1-k), all expanded as
    exact truncated power series. Rational-only; exists to cross-check
    ``normalized_drift``.
    """
    check_n(n)
    _check_state(n, k, n + 1)
    if k == 0:
        return Fraction(0)
    deg = k - 1
    inv = Fraction(1, n)
    a = [comb(k, i) * inv ** (k - i) for i in range(min(k, deg) + 1)]
    b = [Fraction(j + 1) for j in range(deg + 1)]
    m = n + 1 - k
    c = [comb(m, j) * inv**j for j in range(min(m, deg) + 1)]
    prod = _poly_mul(_poly_mul(a, b, deg), c, deg)
    return prod[deg]


def _kernel_row_float(n: int, k: int) -> np.ndarray:
    """Accepted-step law from state k, float: row[j] = p(k, j), j = 0..k.

    The off-diagonal entries are the cross-correlation of the two flip-count
    pmfs, p(k, k-d) = sum_l pa[d+l] pb[l]; the diagonal is the complement, so
    each row sums to one exactly.
    """
    pa = _binom_pmf_float(k, n)
    pb = _binom_pmf_float(n - k, n)
    row = np.zeros(k + 1)
    if k:
        c = np.correlate(pa, pb, mode="full")
        lag0 = len(pb) - 1
        d = np.arange(1, k + 1)
        row[k - d] = c[lag0 + d]
    row[k] = 1.0 - row[:k].sum()
    return row


def _kernel_row_rational(n: int, k: int) -> list[Fraction]:
    pa = _binom_pmf_rational(k, n)
    pb = _binom_pmf_rational(n - k, n)
    row = [Fraction(0)] * (k + 1)
    for d in range(1, k + 1):
        lhi = min(k - d, n - k)
        row[k - d] = sum(pa[d + l] * pb[l] for l in range(lhi + 1))
    row[k] = 1 - sum(row[:k])
    return row


def transition_prob(n: int, k: int, j: int, backend: str = FLOAT) -> Scalar:
    """p(k, j): probability the accepted step moves from k zeros to j zeros.

    Zero for j > k (worse offspring are rejected). For j < k this is
    sum_{l=0..min(j, n-k)} C(k, k-j+l) C(n-k, l) (1/n)^(k-j+2l)
    (1 - 1/n)^(n-(k-j)-2l); p(k, k) is defined by complement and therefore
    also carries the rejection mass.
    """
    check_n(n)
    check_backend(backend)
    _check_state(n, k, n)
    _check_state(n, j, n)
    if j > k:
        return Fraction(0) if backend == RATIONAL else 0.0
    if backend == RATIONAL:
        return _kernel_row_rational(n, k)[j]
    return float(_kernel_row_float(n, k)[j])


def transition_tail(n: int, k: int, j: int, backend: str = FLOAT) -> Scalar:
    """P[accepted step from k lands at or below j]: partial row sum."""
    check_n(n)
    check_backend(backend)
    _check_state(n, k, n)
    _check_state(n, j, n)
    if j >= k:
        return Fraction(1) if backend == RATIONAL else 1.0
    if backend == RATIONAL:
        return sum(_kernel_row_rational(n, k)[: j + 1], Fraction(0))
    return float(_kernel_row_float(n, k)[: j + 1].sum())


@dataclass(frozen=True)
class DriftTable:
    """Dense drift values for one problem size.

    ``delta[k]`` is the plain drift for k = 0..n; ``delta_star[k]`` is the
    normalized drift for k = 0..n+1 (one more entry, since the normalized
    form is defined through n + 1).
    """

    n: int
    backend: str
    delta: tuple
    delta_star: tuple


@dataclass(frozen=True)
class TransitionKernel:
    """Accepted-step law rows p(k, .) for k = 0..max_state.

    ``rows[k]`` has length k + 1 and sums to one. Float rows are read-only
    numpy vectors; rational rows are tuples of Fractions.
    """

    n: int
    backend: str
    max_state: int
    rows: tuple


def build_drift_table(
    n: int,
    backend: str = FLOAT,
    rational_cap: int = DEFAULT_RATIONAL_CAP,
) -> DriftTable:
    """Compute both drift columns for all states of one problem size."""
    check_n(n)
    check_backend(backend)
    check_rational_cap(n, backend, rational_cap)
    delta = tuple(drift(n, k, backend) for k in range(n + 1))
    delta_star = tuple(normalized_drift(n, k, backend) for k in range(n + 2))
    return DriftTable(n=n, backend=backend, delta=delta, delta_star=delta_star)


def build_kernel(
    n: int,
    backend: str = FLOAT,
    max_state: int | None = None,
    rational_cap: int = DEFAULT_RATIONAL_CAP,
) -> TransitionKernel:
    """Compute kernel rows p(k, .) for k = 0..max_state (default n).

    The chain is non-increasing, so hitting times from a start state k0 only
    need rows up to k0; passing ``max_state`` keeps large sweeps quadratic
    instead of cubic.
    """
    check_n(n)
    check_backend(backend)
    check_rational_cap(n, backend, rational_cap)
    if max_state is None:
        max_state = n
    _check_state(n, max_state, n)
    if backend == RATIONAL:
        rows = tuple(tuple(_kernel_row_rational(n, k)) for k in range(max_state + 1))
    else:
        frows = []
        for k in range(max_state + 1):
            r = _kernel_row_float(n, k)
            r.setflags(write=False)
            frows.append(r)
        rows = tuple(frows)
    return TransitionKernel(n=n, backend=backend, max_state=max_state, rows=rows)
