"""The three radius equations solved as certified bracketed root problems.

Each radius is the unique positive root of a strictly sign-changing scalar
equation on (0, 1):

* Cesaro:          ``(3+gamma)(1-x) ln(1/(1-x)) = 2x``
* Bernardi:        ``1/beta = (2/(1+gamma)) sum_{n>=1} r^n/(n+beta)``
* Bernardi (unit disk, m-fold zero):
                   ``x^m/(m+beta) = 2 sum_{n>=m+1} x^n/(n+beta)``

The solver bisects to the requested bracket width and then polishes with a
few finite-difference Newton steps, so every result carries a sign-certified
bracket and a reported residual.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import BracketingError, DomainError, NumericalError
from .operators import lerch_tail_sum
from .series import DomainGamma

DEFAULT_TOL = 1e-12
NEWTON_POLISH_STEPS = 8
MAX_BISECTIONS = 200


@dataclass(frozen=True)
class RadiusResult:
    """A computed radius with its certifying bracket and convergence data."""

    value: float
    bracket_lo: float
    bracket_hi: float
    residual: float
    iterations: int
    converged: bool

    def as_dict(self) -> dict:
        return {
            "value": self.value,
            "bracket_lo": self.bracket_lo,
            "bracket_hi": self.bracket_hi,
            "residual": self.residual,
            "iterations": self.iterations,
            "converged": self.converged,
        }


def solve_bracketed(g, lo: float, hi: float, tol: float = DEFAULT_TOL) -> RadiusResult:
    """Root of g on [lo, hi] by bisection plus finite-difference Newton polish.

    g(lo) and g(hi) must have opposite signs.  Bisection narrows the bracket
    to width tol; up to NEWTON_POLISH_STEPS Newton steps (centered-difference
    derivative) then refine the residual, falling back to the bracket
    midpoint whenever a step would leave the bracket.
    """
    if not (lo < hi):
        raise DomainError(f"need lo < hi, got [{lo}, {hi}]")
    if tol <= 0.0:
        raise DomainError(f"tolerance must be positive, got {tol}")
    g_lo, g_hi = g(lo), g(hi)
    for name, val in (("g(lo)", g_lo), ("g(hi)", g_hi)):
        if not math.isfinite(val):
            raise NumericalError(f"{name} is not finite: {val}")
    if g_lo == 0.0:
        return RadiusResult(lo, lo, lo, 0.0, 0, True)
    if g_hi == 0.0:
        return RadiusResult(hi, hi, hi, 0.0, 0, True)
    if math.copysign(1.0, g_lo) == math.copysign(1.0, g_hi):
        raise BracketingError(
            f"no sign change on [{lo}, {hi}]: g(lo)={g_lo:.3e}, g(hi)={g_hi:.3e}")

    iterations = 0
    while hi - lo > tol and iterations < MAX_BISECTIONS:
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break  # bracket width at rounding floor
        g_mid = g(mid)
        iterations += 1
        if not math.isfinite(g_mid):
            raise NumericalError(f"g({mid}) is not finite")
        if g_mid == 0.0:
            lo = hi = mid
            g_lo = g_hi = 0.0
            break
        if math.copysign(1.0, g_mid) == math.copysign(1.0, g_lo):
            lo, g_lo = mid, g_mid
        else:
            hi, g_hi = mid, g_mid
    converged = hi - lo <= tol

    x = 0.5 * (lo + hi)
    best_x, best_res = x, abs(g(x))
    step = 1e-7 * (abs(x) + 1e-3)
    for _ in range(NEWTON_POLISH_STEPS):
        d = (g(x + step) - g(x - step)) / (2.0 * step)
        if d == 0.0 or not math.isfinite(d):
            break
        x_next = x - g(x) / d
        if not lo <= x_next <= hi:
            x = 0.5 * (lo + hi)
            break
        x = x_next
        res = abs(g(x))
        if res < best_res:
            best_x, best_res = x, res
        if res == 0.0:
            break
    return RadiusResult(best_x, lo, hi, best_res, iterations, converged)


def cesaro_radius(gamma: DomainGamma, tol: float = DEFAULT_TOL) -> RadiusResult:
    """Positive root of ``(3+gamma)(1-x) ln(1/(1-x)) - 2x`` on (0, 1).

    x = 0 also solves the equation; the bracket starts at 1e-6, where the
    function is positive because its slope at 0 is 1+gamma > 0.
    """
    g = gamma.gamma

    def equation(x: float) -> float:
        return (3.0 + g) * (1.0 - x) * (-math.log1p(-x)) - 2.0 * x

    return solve_bracketed(equation, 1e-6, 1.0 - 1e-9, tol)


def _tail_balance_equation(beta_eff: float, prefactor: float, sum_target: float):
    """Function ``r -> 1/beta_eff - prefactor * sum_{n>=1} r^n/(n+beta_eff)``."""

    def equation(r: float) -> float:
        value, _ = lerch_tail_sum(r, beta_eff, 1, target=sum_target)
        return 1.0 / beta_eff - prefactor * value

    return equation


def _solve_tail_balance(beta_eff: float, prefactor: float, tol: float) -> RadiusResult:
    """Solve the decreasing tail-balance equation with an expanding upper bracket.

    The equation is 1/beta_eff at r = 0 and diverges to -inf as r -> 1
    (harmonic tail), so a sign change always exists; the upper end is walked
    toward 1 until the value is certifiably negative.
    """
    sum_target = min(tol / 10.0, 1e-13)
    equation = _tail_balance_equation(beta_eff, prefactor, sum_target)
    hi = 0.5
    for _ in range(16):
        value, err = lerch_tail_sum(hi, beta_eff, 1, target=sum_target)
        if 1.0 / beta_eff - prefactor * (value - err) < 0.0:
            break
        hi = 1.0 - 0.25 * (1.0 - hi)
    else:
        raise BracketingError(
            f"could not certify a negative upper bracket for beta={beta_eff}")
    return solve_bracketed(equation, 0.0, hi, tol)


def bernardi_radius(gamma: DomainGamma, beta: float,
                    tol: float = DEFAULT_TOL) -> RadiusResult:
    """Root of ``1/beta = (2/(1+gamma)) sum_{n>=1} r^n/(n+beta)`` on (0, 1)."""
    if not (isinstance(beta, (int, float)) and math.isfinite(beta)) or beta <= 0.0:
        raise DomainError(f"beta must be a positive real, got {beta}")
    return _solve_tail_balance(float(beta), 2.0 / (1.0 + gamma.gamma), tol)


def bernardi_radius_classic(beta: float, m: int, tol: float = DEFAULT_TOL) -> RadiusResult:
    """Positive root of ``x^m/(m+beta) - 2 sum_{n>=m+1} x^n/(n+beta)`` on (0, 1).

    Dividing out x^m removes the trivial root at 0 and leaves the same
    tail-balance shape with effective exponent m + beta:
    ``1/(m+beta) - 2 sum_{j>=1} x^j/(j+m+beta)``.
    """
    if not (isinstance(m, int) and not isinstance(m, bool) and m >= 0):
        raise DomainError(f"m must be a nonnegative integer, got {m}")
    if not (isinstance(beta, (int, float)) and math.isfinite(beta)) or beta <= -m:
        raise DomainError(f"beta must exceed -m, got beta={beta}, m={m}")
    return _solve_tail_balance(float(m + beta), 2.0, tol)


def bohr_radius_omega(gamma: DomainGamma) -> float:
    """Reference Bohr radius ``(1+gamma)/(3+gamma)`` of the identity operator.

    Reduces to the classical 1/3 at gamma = 0; used by the verification
    suites as the safe radius for plain majorants on Omega_gamma.
    """
    g = gamma.gamma
    return (1.0 + g) / (3.0 + g)
