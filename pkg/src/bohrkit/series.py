"""Truncated power series with certified tail bounds, and Schur-class test functions.

A series is stored as its first N+1 Taylor coefficients together with a
uniform bound on every omitted coefficient.  That single number is enough to
certify majorant evaluations: the modulus of everything beyond the truncation
is at most ``tail_bound * r**(N+1) / (1 - r)`` at radius r.

Test functions for the function class bounded by 1 on the disk Omega_gamma
(the disk ``|z + gamma/(1-gamma)| < 1/(1-gamma)``, which contains the unit
disk) are produced by composing finite Blaschke products with the affine map
``G(z) = (1 - gamma) * z + gamma`` that carries Omega_gamma onto the unit
disk.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy.signal import fftconvolve

from .errors import DomainError, NumericalError

# Truncation policy: orders are chosen so the certified tail error meets the
# target below, and never exceed ORDER_CAP (evaluation radii too close to 1
# fail explicitly rather than silently losing certification).
ORDER_CAP = 20000
DEFAULT_TAIL_TARGET = 1e-12

MAX_BLASCHKE_DEGREE = 16
ZERO_SAMPLING_RADIUS = 0.95


def truncation_order(r: float, tail_bound: float = 1.0,
                     target: float = DEFAULT_TAIL_TARGET) -> int:
    """Smallest N with ``tail_bound * r**(N+1) / (1-r) <= target``.

    Raises NumericalError when no N up to ORDER_CAP suffices.
    """
    if not 0.0 <= r < 1.0:
        raise DomainError(f"radius must lie in [0, 1), got {r}")
    if target <= 0.0:
        raise DomainError("target must be positive")
    if tail_bound == 0.0 or tail_bound * r / (1.0 - r) <= target:
        return 0
    # Closed-form first guess, then nudge to be safe against rounding.
    n = max(0, math.ceil(math.log(target * (1.0 - r) / tail_bound) / math.log(r)) - 1)
    while n <= ORDER_CAP and tail_bound * r ** (n + 1) / (1.0 - r) > target:
        n += 1
    if n > ORDER_CAP:
        raise NumericalError(
            f"truncation order cap {ORDER_CAP} cannot certify target {target} "
            f"at r={r}; the radius is too close to 1")
    return n


@dataclass(frozen=True)
class TruncatedPowerSeries:
    """Coefficients c_0..c_N plus a uniform bound on all omitted coefficients.

    ``tail_bound`` is a real B >= 0 with ``|c_n| <= B`` for every n > order.
    ``schur`` marks series whose underlying function maps the unit disk into
    its closure; for those tail_bound <= 1 is enforced (bounded functions
    have coefficients of modulus at most their sup norm), which lets the
    operator transforms keep sharp certified bounds.
    """

    coeffs: tuple[complex, ...]
    tail_bound: float
    schur: bool = False

    def __post_init__(self):
        if len(self.coeffs) == 0:
            raise DomainError("a series needs at least the constant coefficient")
        object.__setattr__(self, "coeffs", tuple(complex(c) for c in self.coeffs))
        if not all(math.isfinite(c.real) and math.isfinite(c.imag) for c in self.coeffs):
            raise DomainError("all coefficients must be finite")
        if not (math.isfinite(self.tail_bound) and self.tail_bound >= 0.0):
            raise DomainError("tail_bound must be a finite nonnegative real")
        if self.schur and self.tail_bound > 1.0 + 1e-12:
            raise DomainError("Schur-class series must carry tail_bound <= 1")

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def coeff_array(self) -> np.ndarray:
        return np.asarray(self.coeffs, dtype=complex)

    def padded(self, order: int) -> "TruncatedPowerSeries":
        """Extend a polynomial (tail_bound 0) with explicit zero coefficients."""
        if self.tail_bound != 0.0:
            raise DomainError(
                "only polynomials (tail_bound 0) can be zero-padded; "
                f"got tail_bound {self.tail_bound}")
        if order <= self.order:
            return self
        pad = (0.0 + 0.0j,) * (order - self.order)
        return TruncatedPowerSeries(self.coeffs + pad, 0.0, self.schur)

    def eval(self, z: complex) -> complex:
        """Evaluate the truncated part at z (no tail, Horner form)."""
        acc = 0.0 + 0.0j
        for c in reversed(self.coeffs):
            acc = acc * z + c
        return acc


def polynomial(coeffs, schur: bool = False) -> TruncatedPowerSeries:
    """Series with exactly the given coefficients and no tail."""
    return TruncatedPowerSeries(tuple(coeffs), 0.0, schur)


@dataclass(frozen=True)
class DomainGamma:
    """The parameter gamma in [0, 1) selecting the disk Omega_gamma."""

    gamma: float

    def __post_init__(self):
        if not (isinstance(self.gamma, (int, float)) and math.isfinite(self.gamma)):
            raise DomainError("gamma must be a finite real")
        if not 0.0 <= self.gamma < 1.0:
            raise DomainError(f"gamma must lie in [0, 1), got {self.gamma}")
        object.__setattr__(self, "gamma", float(self.gamma))


@dataclass(frozen=True)
class SchurSampleSpec:
    """Deterministic recipe for one random Schur-class sample on Omega_gamma."""

    degree: int
    seed: int
    gamma: DomainGamma

    def __post_init__(self):
        if not (isinstance(self.degree, (int, np.integer)) and 0 <= self.degree <= MAX_BLASCHKE_DEGREE):
            raise DomainError(
                f"degree must be an integer in [0, {MAX_BLASCHKE_DEGREE}], got {self.degree}")
        object.__setattr__(self, "degree", int(self.degree))
        object.__setattr__(self, "seed", int(self.seed))
        if not isinstance(self.gamma, DomainGamma):
            object.__setattr__(self, "gamma", DomainGamma(self.gamma))


def majorant_eval(s: TruncatedPowerSeries, r: float) -> tuple[float, float]:
    """Value and certified error of ``sum |c_n| r^n`` over the stored range.

    The error term ``tail_bound * r**(N+1) / (1-r)`` bounds the omitted tail.
    """
    if not 0.0 <= r < 1.0:
        raise DomainError(f"majorant radius must lie in [0, 1), got {r}")
    mags = np.abs(s.coeff_array())
    value = math.fsum(mags * np.power(r, np.arange(mags.size)))
    error = s.tail_bound * r ** (s.order + 1) / (1.0 - r)
    return value, error


@lru_cache(maxsize=64)
def _compose_matrix(gamma: float, in_order: int, out_order: int) -> np.ndarray:
    """Recombination matrix M[n, k] = C(k, n) gamma^(k-n) (1-gamma)^n.

    Rows are built with running products so no factorial is ever formed;
    every entry is bounded by 1/(1-gamma).
    """
    one_m = 1.0 - gamma
    m = np.zeros((out_order + 1, in_order + 1))
    for n in range(min(out_order, in_order) + 1):
        lead = one_m ** n
        if lead == 0.0:
            raise NumericalError(
                f"(1-gamma)^n underflows at n={n} for gamma={gamma}; "
                "requested order is too large for this gamma")
        if gamma == 0.0:
            m[n, n] = lead
            continue
        ks = np.arange(n + 1, in_order + 1, dtype=float)
        row = np.empty(in_order + 1 - n)
        row[0] = lead
        if ks.size:
            row[1:] = lead * np.cumprod(gamma * ks / (ks - n))
        m[n, n:] = row
    return m


def affine_compose(h: TruncatedPowerSeries, gamma: DomainGamma,
                   n_out: int) -> TruncatedPowerSeries:
    """Taylor coefficients of ``z -> h((1-gamma) z + gamma)`` up to order n_out.

    Coefficients are recombined as
    ``a_n = sum_k b_k C(k, n) gamma^(k-n) (1-gamma)^n`` over the stored b_k;
    contributions from coefficients of h beyond ``h.order`` are dropped, so
    callers should truncate h generously (see ``compose_input_order``).

    Tail policy: a Schur-class input stays Schur-class under composition with
    the affine map into the unit disk, so its output keeps tail_bound 1;
    otherwise the conservative bound ``max(|b_k|, tail) / (1-gamma)`` is used.
    """
    if n_out < 0:
        raise DomainError(f"output order must be >= 0, got {n_out}")
    g = gamma.gamma
    b = h.coeff_array()
    m = _compose_matrix(g, h.order, n_out)
    a = m @ b
    if h.schur:
        tail, schur = 1.0, True
    else:
        b_all = max(float(np.max(np.abs(b))), h.tail_bound)
        tail, schur = b_all / (1.0 - g), False
        if h.tail_bound == 0.0 and g == 0.0:
            tail = 0.0  # identity map on a polynomial stays a polynomial
    return TruncatedPowerSeries(tuple(a), tail, schur)


@lru_cache(maxsize=256)
def compose_input_order(gamma: float, n_out: int, target: float = 1e-13) -> int:
    """Input truncation order K making the dropped-coefficient error certifiable.

    For a series with ``|b_k| <= 1`` the error in any composed coefficient is
    at most ``1/(1-gamma) - sum_{k<=K} C(k,n) gamma^(k-n) (1-gamma)^n``; K is
    grown until that deficit is below target for every n <= n_out.
    """
    if gamma == 0.0:
        return n_out
    k = n_out + 32
    while True:
        m = _compose_matrix(gamma, k, n_out)
        deficit = 1.0 / (1.0 - gamma) - m.sum(axis=1)
        if float(deficit.max()) <= target:
            return k
        if k >= ORDER_CAP:
            raise NumericalError(
                f"cannot certify affine composition to {target} for gamma={gamma} "
                f"and order {n_out} within the cap {ORDER_CAP}")
        k = min(2 * k + 32, ORDER_CAP)


def _mobius_factor(zero: complex, n: int) -> np.ndarray:
    """Taylor coefficients to order n of ``(zero - z) / (1 - conj(zero) z)``."""
    c = np.zeros(n + 1, dtype=complex)
    c[0] = zero
    if n >= 1:
        zc = np.conj(zero)
        c[1:] = -(1.0 - abs(zero) ** 2) * zc ** np.arange(n)
    return c


def blaschke_coeffs(zeros, phase: complex, n_out: int) -> TruncatedPowerSeries:
    """Taylor coefficients of ``phase * prod (a_j - z)/(1 - conj(a_j) z)``.

    A finite Blaschke product maps the unit disk onto itself, so the result
    is Schur-class with tail_bound 1.  Truncated products of the factor
    series are exact through order n_out (the convolution is lower
    triangular).
    """
    if n_out < 0:
        raise DomainError(f"output order must be >= 0, got {n_out}")
    phase = complex(phase)
    if abs(abs(phase) - 1.0) > 1e-12:
        raise DomainError(f"phase must be unimodular, got |phase| = {abs(phase)}")
    zeros = [complex(z) for z in zeros]
    for z in zeros:
        if abs(z) >= 1.0:
            raise DomainError(f"Blaschke zeros must lie strictly inside the unit disk, got {z}")
    c = np.zeros(n_out + 1, dtype=complex)
    c[0] = phase
    convolve = fftconvolve if n_out > 256 else np.convolve
    for z in zeros:
        c = convolve(c, _mobius_factor(z, n_out))[: n_out + 1]
    return TruncatedPowerSeries(tuple(c), 1.0, schur=True)


def sample_schur_omega(spec: SchurSampleSpec, n_out: int) -> TruncatedPowerSeries:
    """Seeded random member of the class bounded by 1 on Omega_gamma.

    Draws ``spec.degree`` Blaschke zeros uniformly in the disk of radius
    0.95 plus a uniform phase, then composes with the affine map onto the
    unit disk.  Identical specs give identical output.
    """
    rng = np.random.default_rng(spec.seed)
    zeros = []
    for _ in range(spec.degree):
        radius = ZERO_SAMPLING_RADIUS * math.sqrt(rng.random())
        angle = 2.0 * math.pi * rng.random()
        zeros.append(radius * complex(math.cos(angle), math.sin(angle)))
    theta = 2.0 * math.pi * rng.random()
    phase = complex(math.cos(theta), math.sin(theta))
    g = spec.gamma.gamma
    k_in = compose_input_order(g, n_out)
    b = blaschke_coeffs(zeros, phase, k_in)
    if g == 0.0:
        return TruncatedPowerSeries(b.coeffs[: n_out + 1], 1.0, schur=True)
    return affine_compose(b, spec.gamma, n_out)
