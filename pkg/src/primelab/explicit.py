"""Truncated explicit formula, triangle-smoothed sums, and the
epsilon-sandwich for unweighted short-interval sums.

Zero sums pair each positive ordinate with its conjugate, so every value
here is real by construction.  Terms are accumulated with exactly
rounded summation (math.fsum), which subsumes the compensated
descending-order accumulation one would otherwise need: the terms decay
like 1/gamma and naive left-to-right addition loses digits by T ~ 10^3.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass

import numpy as np

from .counters import StepCounter
from .errors import ZeroTableError
from .zeros import ZeroTable

log = logging.getLogger(__name__)

EVENT_NUDGE = 1e-6


@dataclass(frozen=True)
class TruncationSpec:
    """Zero-sum truncation height plus the field data entering the
    normalization."""

    height: float
    zeros: ZeroTable
    degree: int = 1          # n_K
    disc: int = 1            # d_K

    def __post_init__(self):
        if self.height < 2:
            raise ValueError(f"height must be >= 2, got {self.height}")
        if self.height > self.zeros.completeness_height:
            raise ZeroTableError(
                f"truncation height {self.height} beyond table height "
                f"{self.zeros.completeness_height}")

    def ordinates(self) -> np.ndarray:
        g = self.zeros.ordinates
        return g[: np.searchsorted(g, self.height, side="right")]


def _zero_sum_psi(x: float, gammas: np.ndarray) -> float:
    # sum over conjugate pairs of x^rho / rho at rho = 1/2 + i gamma:
    # 2 Re(x^rho/rho) = 2 sqrt(x) (cos(g L)/2 + g sin(g L)) / (1/4 + g^2)
    if len(gammas) == 0:
        return 0.0
    L = math.log(x)
    terms = 2.0 * math.sqrt(x) * (0.5 * np.cos(gammas * L)
                                  + gammas * np.sin(gammas * L)) \
        / (0.25 + gammas * gammas)
    return math.fsum(terms)


def truncated_psi(x: float, spec: TruncationSpec) -> float:
    """x - sum_{|gamma| <= T} x^rho / rho, plus the classical constant
    and trivial-zero corrections when n_K = 1.

    For n_K >= 2 those lower-order terms are left inside the reported
    residual, whose error envelope absorbs them.
    """
    if x < 2:
        raise ValueError(f"x must be >= 2, got {x}")
    value = x - _zero_sum_psi(x, spec.ordinates())
    if spec.degree == 1:
        value += -math.log(2 * math.pi) - 0.5 * math.log(1.0 - x**-2)
    return value


@dataclass(frozen=True)
class ResidualScan:
    xs: np.ndarray
    residuals: np.ndarray
    normalized: np.ndarray

    @property
    def max_abs(self) -> float:
        return float(np.max(np.abs(self.residuals))) if len(self.xs) else 0.0

    @property
    def max_normalized(self) -> float:
        return float(np.max(np.abs(self.normalized))) if len(self.xs) else 0.0


def residual_scan(counter: StepCounter, spec: TruncationSpec,
                  xs) -> ResidualScan:
    """Pointwise residual counter(x) - truncated_psi(x) with the
    normalization T / (x (n_K log x + log d_K) log x).

    Probe points within EVENT_NUDGE of a jump are moved just past it so
    the comparison sits on a consistent side of the discontinuity.
    """
    xs = np.asarray(list(xs), dtype=np.float64)
    out_x = []
    residuals = []
    normalized = []
    log_dk = math.log(spec.disc)
    for x in xs:
        idx = np.searchsorted(counter.positions, x - EVENT_NUDGE)
        if (idx < len(counter.positions)
                and abs(counter.positions[idx] - x) <= EVENT_NUDGE):
            log.warning("probe x=%s collides with an event; nudging by %g",
                        x, EVENT_NUDGE)
            x = float(counter.positions[idx]) + EVENT_NUDGE
        r = counter.value(x) - truncated_psi(x, spec)
        scale = spec.height / (x * (spec.degree * math.log(x) + log_dk)
                               * math.log(x))
        out_x.append(x)
        residuals.append(r)
        normalized.append(r * scale)
    return ResidualScan(np.array(out_x), np.array(residuals),
                        np.array(normalized))


def triangle_weight(n: float, x: float, h: float) -> float:
    """max(1 - |x - n|/h, 0): unit peak at n = x, support (x-h, x+h)."""
    if h <= 0:
        raise ValueError(f"h must be positive, got {h}")
    return max(1.0 - abs(x - n) / h, 0.0)


def smoothed_sum(x: float, h: float, counter: StepCounter) -> float:
    """W(x, h) = sum of Lambda-type weights times the triangle weight
    over the open window (x-h, x+h); exact event sum."""
    if h <= 0:
        raise ValueError(f"h must be positive, got {h}")
    pos = counter.positions
    i = np.searchsorted(pos, x - h, side="right")
    j = np.searchsorted(pos, x + h, side="left")
    window = pos[i:j]
    tri = 1.0 - np.abs(x - window) / h
    return math.fsum(counter.weights[i:j] * tri)


def smoothed_prediction(x: float, h: float, spec: TruncationSpec) -> float:
    """Zero expansion of W(x, h):
    h - (1/h) sum_rho [(x+h)^{rho+1} - 2 x^{rho+1} + (x-h)^{rho+1}]
                      / (rho (rho+1)),
    truncated at the spec height, conjugate pairs combined."""
    if x - h < 2:
        raise ValueError(f"need x - h >= 2, got x={x}, h={h}")
    gammas = spec.ordinates()
    if len(gammas) == 0:
        return float(h)
    rho = 0.5 + 1j * gammas

    def upper(t):
        return np.exp((rho + 1) * math.log(t))

    num = upper(x + h) - 2 * upper(x) + upper(x - h)
    terms = 2.0 * np.real(num / (rho * (rho + 1)))
    return h - math.fsum(terms) / h


def unweighted_sandwich(x: float, h: float, eps: float,
                        counter: StepCounter) -> tuple:
    """(lower, upper) bounds for psi(x+h) - psi(x-h) derived from three
    triangle-smoothed sums; valid for any nonnegative event weights."""
    if not 0 < eps < 1:
        raise ValueError(f"eps must be in (0, 1), got {eps}")
    w_mid = smoothed_sum(x, h, counter)
    w_lo = smoothed_sum(x, (1 - eps) * h, counter)
    w_hi = smoothed_sum(x, (1 + eps) * h, counter)
    lower = -((1 - eps) * w_lo - w_mid) / eps
    upper = ((1 + eps) * w_hi - w_mid) / eps
    return lower, upper
