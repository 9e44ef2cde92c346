"""Closed-form bounds on f_3(n) and the rational-angle equation enumeration."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd

import mpmath
import numpy as np

# The induction step closes once A >= (5 + 2^(-4/3)) / (1 - 2^(-5/3)) ~ 7.88.
# DEFAULT_A = 6 sits below that and is only an empirical default for desk-scale checks.
INDUCTION_A_MIN = (5 + 2 ** (-4 / 3)) / (1 - 2 ** (-5 / 3))
DEFAULT_A = 6.0


def ceil_quarter_n2_plus_5n_half(n: int) -> int:
    """``ceil(n^2/4 + 5n/2)`` in exact integer arithmetic."""
    return -(-(n * n + 10 * n) // 4)


@dataclass(frozen=True)
class BoundReport:
    n: int
    lower: int
    suspension_cap: int
    upper: int
    kst_values: dict = field(default_factory=dict)
    induction_value: float | None = None


def f3_bounds(n: int) -> BoundReport:
    if n < 1:
        raise ValueError("n must be positive")
    base = ceil_quarter_n2_plus_5n_half(n)
    return BoundReport(n, base + 1, base + 2, base + 12)


def kst_bipartite(m: int, n: int, r: int, s: int) -> float:
    """Kovari-Sos-Turan bound for K_{r,s}-free bipartite graphs with parts m, n."""
    if m < 1 or n < 1 or not 1 <= r <= m or not 1 <= s <= n:
        raise ValueError(f"need m, n >= 1, 1 <= r <= m, 1 <= s <= n; got {(m, n, r, s)}")
    return (s - 1) ** (1 / r) * (m - r + 1) * n ** (1 - 1 / r) + (r - 1) * n


def kst_digraph(n: int, r: int, s: int) -> float:
    """Kovari-Sos-Turan bound for digraphs without a directed K_{r,s}."""
    if n < 1 or r < 1 or s < 1:
        raise ValueError(f"need n, r, s >= 1; got {(n, r, s)}")
    return (s - 1) ** (1 / r) * n ** (2 - 1 / r) + (r - 1) * n


def decomposition_rhs(n: float, t: float, A: float) -> float:
    if not 0 <= t <= n or A <= 0:
        raise ValueError(f"need 0 <= t <= n and A > 0; got n={n}, t={t}, A={A}")
    quad = n * n - 2 * n * t + 2 * t * t + 14 * n + 6 * t + 25 + 4 * A * t ** (5 / 3)
    return quad / 4 + 2 ** (1 / 3) * t * (n - t) ** (2 / 3)


def induction_rhs(n: float, A: float = DEFAULT_A) -> float:
    if n < 0 or A <= 0:
        raise ValueError("need n >= 0 and A > 0")
    return n * n / 4 + A * n ** (5 / 3)


def _reduced_fractions(max_den: int) -> list[Fraction]:
    return [Fraction(a, b) for b in range(2, max_den + 1) for a in range(1, b) if gcd(a, b) == 1]


def newman_enumerate(max_denominator: int = 64, tol: float = 1e-12, dps: int = 40,
                     fold_reflection: bool = True) -> list[tuple[Fraction, Fraction]]:
    """Rational solutions of ``sin(theta) * sin(phi / 2) = 1/2``.

    Returns pairs ``(theta/pi, phi/pi)`` of reduced fractions in (0, 1) with
    denominators up to ``max_denominator``.  Double-precision candidates are
    re-evaluated with ``dps`` decimal digits before being accepted.  With
    ``fold_reflection`` the axis reflection ``theta -> pi - theta`` is
    factored out, keeping ``theta/pi <= 1/2``.
    """
    if max_denominator < 2:
        raise ValueError("max_denominator must be at least 2")
    if dps < 30:
        raise ValueError("recheck precision must be at least 30 digits")
    fracs = _reduced_fractions(max_denominator)
    thetas = [f for f in fracs if f <= Fraction(1, 2)] if fold_reflection else fracs
    th = np.array([float(f) for f in thetas])
    ph = np.array([float(f) for f in fracs])
    vals = np.sin(np.pi * th)[:, None] * np.sin(np.pi * ph / 2)[None, :]
    # slack covers double rounding; the exact test happens below
    hits = np.argwhere(np.abs(vals - 0.5) <= tol + 1e-14)
    out = []
    with mpmath.workdps(dps):
        half = mpmath.mpf(1) / 2
        for i, j in hits:
            a, b = thetas[i], fracs[j]
            val = mpmath.sin(mpmath.pi * a.numerator / a.denominator) * mpmath.sin(
                mpmath.pi * b.numerator / (2 * b.denominator)
            )
            if abs(val - half) <= tol:
                out.append((a, b))
    return sorted(out)
