"""Quantitative iteration asymptotics: the two-term expansion of P^k F, the
epsilon/threshold bookkeeping, partition-level Euler-Bernoulli reconstruction,
the decomposition error budget, and log-linear decay-exponent fitting.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .bernoulli import bernoulli_coeffs
from .field import BetaParams
from .piecewise import PiecewisePoly
from .partition import refine_to_level
from .spectral import make_u_tilde
from .transfer import apply_transfer, pointwise_transfer_power

NOISE_FLOOR_RATIO = 1e-12
FIT_SKIP = 5  # entries with k <= FIT_SKIP are excluded from slope fits


@dataclass
class ResidualSeries:
    """Residual magnitudes per iteration count with a fitted decay slope of
    ln(residual_upper) against k."""

    ks: list[int]
    residual_lower: list[float]
    residual_upper: list[float]
    fitted_slope: float


def fit_slope(ks, values) -> float:
    """OLS slope of ln(values) vs k, skipping k <= FIT_SKIP and entries that
    fell below the floating-noise floor relative to the initial residual."""
    ks = np.asarray(ks, dtype=float)
    values = np.asarray(values, dtype=float)
    initial = values[0]
    mask = (ks > FIT_SKIP) & (values > NOISE_FLOOR_RATIO * initial) & (values > 0)
    if mask.sum() < 2:
        raise ValueError("not enough usable points for a slope fit")
    return float(np.polyfit(ks[mask], np.log(values[mask]), 1)[0])


@dataclass
class TheoremParams:
    N: int
    epsilon: float
    N_min_bound: float


def epsilon_of(params: BetaParams, N: int) -> TheoremParams:
    """The contraction exponent epsilon for a given smoothness order N,
    together with the threshold that N must exceed."""
    b = params.beta_float()
    a1 = params.a1
    threshold = 3 * math.log(b * b / a1) / math.log(b / a1)
    if N <= threshold:
        raise ValueError("N=%d is at or below the threshold %.6f" % (N, threshold))
    eps = min(3.0 / N,
              (-(3.0 / N) * math.log(b * b / a1) + math.log(b / a1)) / math.log(b))
    if eps <= 0:
        raise ValueError("epsilon is non-positive; raise N")
    return TheoremParams(N=N, epsilon=eps, N_min_bound=threshold)


def two_term_residual_exact(F: PiecewisePoly, k_max: int, terms: int = 2,
                            samples_per_piece: int = 32,
                            piece_budget: int = 10 ** 6) -> ResidualSeries:
    """Certified sup-norm brackets of P^k F minus its expansion, exact engine.

    terms=2 subtracts u1*integral(F) and beta^-k * u3 * (F(1)-F(0))/4;
    terms=1 subtracts only the invariant part."""
    if terms not in (1, 2):
        raise ValueError("terms must be 1 or 2")
    params = F.params
    u1, _, u3 = make_u_tilde(params)
    total = F.integrate()
    f0, f1 = F.boundary_values()
    jump = (f1 - f0) * Fraction(1, 4)
    binv = params.beta().inverse()
    base = u1.scaled(total)
    ks, lows, ups = [], [], []
    cur = F
    for k in range(1, k_max + 1):
        cur = apply_transfer(cur)
        if len(cur.pieces) > piece_budget:
            raise RuntimeError("piece budget exceeded at k=%d" % k)
        resid = cur - base
        if terms == 2:
            resid = resid - u3.scaled(jump * binv ** k)
        lo, up = resid.sup_norm_bracket(samples_per_piece)
        ks.append(k)
        lows.append(lo)
        ups.append(up)
    try:
        slope = fit_slope(ks, ups)
    except ValueError:
        slope = float("nan")  # residual identically zero (or below noise)
    return ResidualSeries(ks=ks, residual_lower=lows, residual_upper=ups,
                          fitted_slope=slope)


def two_term_residual_numeric(F, params: BetaParams, ks, grid: int = 101,
                              terms: int = 2) -> ResidualSeries:
    """Grid sup of the residual using the pointwise preimage engine; the
    eigenfunctions are evaluated exactly at the grid points."""
    if grid < 101:
        raise ValueError("grid must be >= 101")
    if terms not in (1, 2):
        raise ValueError("terms must be 1 or 2")
    u1, _, u3 = make_u_tilde(params)
    xs = np.array([(2 * i + 1) / (2 * grid) for i in range(grid)])
    u1_vals = u1.eval_float(xs)
    u3_vals = u3.eval_float(xs)
    total = F.integral(0.0, 1.0)
    jump = (F(1.0) - F(0.0)) / 4.0
    b = params.beta_float()
    ks = list(ks)
    lows, ups = [], []
    for k in ks:
        pk = pointwise_transfer_power(F, params, k, xs)
        resid = pk - u1_vals * total
        if terms == 2:
            resid = resid - b ** (-k) * u3_vals * jump
        sup = float(np.abs(resid).max())
        lows.append(sup)
        ups.append(sup)
    return ResidualSeries(ks=ks, residual_lower=lows, residual_upper=ups,
                          fitted_slope=fit_slope(ks, ups))


def _poly_eval_shifted(s: int, scale: float, t: float, y: float) -> float:
    """B_s(scale*(y-t)) with float Horner."""
    u = scale * (y - t)
    acc = 0.0
    for c in reversed(bernoulli_coeffs(s)):
        acc = acc * u + c.numerator / c.denominator
    return acc


def hor13_reconstruction(F, params: BetaParams, M: int, N: int,
                         grid: int = 1001) -> tuple[float, float]:
    """Partition-level Euler-Bernoulli expansion of F at level M, order N.

    Returns (sup_error, C) where sup_error is the grid sup of
    |F - expansion| and C = sup_error / (beta^-MN * sup|F^(N)|)."""
    if M > 8:
        raise ValueError("M must be <= 8")
    partition = refine_to_level(params, M)
    b = params.beta_float()
    lefts = [float(g.value) for g in partition.gaps]
    rights = [float(g.right_endpoint()) for g in partition.gaps]
    depths = [g.depth for g in partition.gaps]
    means = [F.integral(a_, b_) for a_, b_ in zip(lefts, rights)]
    jumps = [[F.deriv_eval(s - 1, b_) - F.deriv_eval(s - 1, a_)
              for s in range(1, N + 1)] for a_, b_ in zip(lefts, rights)]
    xs = [(2 * i + 1) / (2 * grid) for i in range(grid)]
    idx = np.searchsorted(lefts, xs, side="right") - 1
    worst = 0.0
    for x, i in zip(xs, idx):
        L = depths[i]
        scale = b ** L
        val = scale * means[i]
        for s in range(1, N + 1):
            val += (b ** (-L * s) * jumps[i][s - 1] / math.factorial(s)
                    * scale * _poly_eval_shifted(s, scale, lefts[i], x))
        worst = max(worst, abs(F(x) - val))
    dN = F.nth_derivative(N)
    sup_dn = max(abs(dN(x)) for x in xs)
    denom = b ** (-M * N) * sup_dn
    c = worst / denom if denom > 0 else float("inf")
    return worst, c


@dataclass
class DecompositionReport:
    k: int
    M: int
    N: int
    residual_upper: float
    scales: tuple[float, float, float]  # (a1/b^2)^(k-M), b^-(k+M), b^(k-M*N)
    constant: float

    @property
    def passed(self) -> bool:
        return self.constant < 100.0


def lemmaPk_decomposition_check(F: PiecewisePoly, M: int, k: int,
                                N: int = 7) -> DecompositionReport:
    """Exact P^k F, its two-term residual, and the three error scales of the
    decomposition; the residual must be bounded by a moderate multiple of
    their maximum."""
    if k <= M + 1:
        raise ValueError("need k > M + 1")
    params = F.params
    series = two_term_residual_exact(F, k)
    resid_up = series.residual_upper[-1]
    b = params.beta_float()
    scales = ((params.a1 / b ** 2) ** (k - M), b ** (-(k + M)), b ** (k - M * N))
    c = resid_up / max(scales)
    return DecompositionReport(k=k, M=M, N=N, residual_upper=resid_up,
                               scales=scales, constant=c)


def chosen_level(k: int, N: int) -> int:
    """The level choice M = floor(3k/N) used to balance the error budget."""
    return (3 * k) // N
