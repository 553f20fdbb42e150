"""Radial ladder operators, the partner Hamiltonians and shape invariance.

    b^{+-}(g, k) = -+ f d/dp + g p - k/p,      f = 1 + beta0 p^2
    h0 = b^+ b^- = -(f d/dp)^2 + g(g - beta0) p^2 + k(k-1)/p^2 - 2gk - g - beta0 k

Operators act on :class:`RadialFunction` objects, which carry the value and
the first two derivatives. Analytic derivatives are used when supplied;
otherwise fourth-order central differences with a step proportional to p.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from .errors import DomainError, NoBoundState
from .model import Regime

FD_REL_STEP = 1e-4


def _fd1(fn, p, h):
    return (fn(p - 2 * h) - 8 * fn(p - h) + 8 * fn(p + h) - fn(p + 2 * h)) / (12 * h)


def _fd2(fn, p, h):
    return (-fn(p - 2 * h) + 16 * fn(p - h) - 30 * fn(p) + 16 * fn(p + h)
            - fn(p + 2 * h)) / (12 * h * h)


@dataclass(frozen=True)
class RadialFunction:
    value: Callable
    d1: Optional[Callable] = None
    d2: Optional[Callable] = None

    def __call__(self, p):
        return self.value(p)

    def deriv(self, p):
        if self.d1 is not None:
            return self.d1(p)
        p = np.asarray(p, dtype=float)
        return _fd1(self.value, p, FD_REL_STEP * p)

    def deriv2(self, p):
        if self.d2 is not None:
            return self.d2(p)
        p = np.asarray(p, dtype=float)
        # the second difference needs a larger step to stay above rounding
        return _fd2(self.value, p, 1e-3 * p)

    def numeric(self) -> "RadialFunction":
        """Same function with derivatives taken by finite differences."""
        return RadialFunction(self.value)

    def scaled(self, c) -> "RadialFunction":
        def opt(fn):
            return None if fn is None else (lambda p: c * fn(p))
        return RadialFunction(lambda p: c * self.value(p), opt(self.d1), opt(self.d2))

    def __add__(self, other: "RadialFunction") -> "RadialFunction":
        both = self.d1 is not None and other.d1 is not None
        both2 = self.d2 is not None and other.d2 is not None
        return RadialFunction(
            lambda p: self.value(p) + other.value(p),
            (lambda p: self.d1(p) + other.d1(p)) if both else None,
            (lambda p: self.d2(p) + other.d2(p)) if both2 else None,
        )


@dataclass(frozen=True)
class FirstOrderOp:
    """c_d * f d/dp + c_p * p + c_inv / p."""
    c_d: float
    c_p: float
    c_inv: float

    def __neg__(self):
        return FirstOrderOp(-self.c_d, -self.c_p, -self.c_inv)


@dataclass(frozen=True)
class LadderCoeffs:
    g: float
    k: float
    beta0: float

    def f(self, p):
        return 1.0 + self.beta0 * np.asarray(p, dtype=float) ** 2

    def superpotential(self, p):
        p = np.asarray(p, dtype=float)
        return self.g * p - self.k / p

    def op(self, direction: str) -> FirstOrderOp:
        sign = _direction_sign(direction)
        return FirstOrderOp(-sign, self.g, -self.k)


def _direction_sign(direction: str) -> int:
    if direction in ("plus", "+"):
        return 1
    if direction in ("minus", "-"):
        return -1
    raise DomainError(f"direction must be 'plus' or 'minus', got {direction!r}")


def apply_ladder(direction: str, coeffs: LadderCoeffs, fn: RadialFunction, p):
    """(b^{+-} fn)(p) = -+ f fn'(p) + (g p - k/p) fn(p)."""
    sign = _direction_sign(direction)
    p = np.asarray(p, dtype=float)
    return -sign * coeffs.f(p) * fn.deriv(p) + coeffs.superpotential(p) * fn(p)


def ladder_function(direction: str, coeffs: LadderCoeffs, fn: RadialFunction) -> RadialFunction:
    """b^{+-} fn as a new RadialFunction (first derivative analytic if fn has d2)."""
    sign = _direction_sign(direction)
    g, k, b0 = coeffs.g, coeffs.k, coeffs.beta0

    def d1(p):
        p = np.asarray(p, dtype=float)
        f = 1 + b0 * p * p
        return (-sign * (2 * b0 * p * fn.deriv(p) + f * fn.deriv2(p))
                + (g + k / p**2) * fn(p) + (g * p - k / p) * fn.deriv(p))

    has_d2 = fn.d2 is not None
    return RadialFunction(lambda p: apply_ladder(direction, coeffs, fn, p),
                          d1 if has_d2 else None)


@dataclass(frozen=True)
class H0Coeffs:
    """-(f d/dp)^2 + p2 * p^2 + inv_p2 / p^2 + const."""
    beta0: float
    p2: float
    inv_p2: float
    const: float

    def potential(self, p):
        p = np.asarray(p, dtype=float)
        return self.p2 * p**2 + self.inv_p2 / p**2 + self.const


def h0_coeffs(g, k, beta0) -> H0Coeffs:
    """Coefficients of b^+(g,k) b^-(g,k)."""
    return H0Coeffs(beta0, g * (g - beta0), k * (k - 1), -2 * g * k - g - beta0 * k)


def partner_coeffs(g, k, beta0) -> H0Coeffs:
    """Coefficients of b^-(g,k) b^+(g,k)."""
    return H0Coeffs(beta0, g * (g + beta0), k * (k + 1), -2 * g * k + g + beta0 * k)


def h0_matrix_free(coeffs: H0Coeffs, fn: RadialFunction, p):
    """-f (f fn')' + V fn evaluated at p."""
    p = np.asarray(p, dtype=float)
    f = 1 + coeffs.beta0 * p * p
    kinetic = -f * (2 * coeffs.beta0 * p * fn.deriv(p) + f * fn.deriv2(p))
    return kinetic + coeffs.potential(p) * fn(p)


def si_step(g, k, beta0):
    """One shape-invariance step: (g, k) -> (g + beta0, k + 1) and the energy shift."""
    if not k > 0 or not g / beta0 > 0.5:
        raise DomainError(f"shape invariance needs k > 0 and g/beta0 > 1/2 (g={g}, k={k})")
    g1, k1 = g + beta0, k + 1
    eps = g1 * (2 * k1 + 1) - g * (2 * k - 1) + beta0 * (k1 + k)
    return g1, k1, eps


def si_hierarchy(g, k, beta0, n_max):
    """Partial sums e_0..e_{n_max} of the shape-invariance shifts (e_0 = 0)."""
    sums = [0.0]
    for _ in range(n_max):
        g, k, eps = si_step(g, k, beta0)
        sums.append(sums[-1] + eps)
    return sums


def _const(g, k, beta0):
    return -2 * g * k - g - beta0 * k


def ground_parameters(g, k, beta0):
    """(g_eff, k_eff, e0) such that b^+b^-(g,k) = b^+b^-(g_eff,k_eff) + e0.

    k_eff > 0 keeps the zero mode regular at p = 0 and g_eff/beta0 > 1/2 keeps
    its momentum uncertainty finite. Both h0 coefficients g(g - beta0) and
    k(k - 1) are invariant under g -> beta0 - g and k -> 1 - k, so only the
    constant term changes.
    """
    k_eff = k if k > 0 else 1 - k
    if g / beta0 > 0.5:
        g_eff = g
    elif g / beta0 < -0.5:
        g_eff = beta0 - g
    else:
        raise NoBoundState(f"-1/2 <= g/beta0 = {g / beta0} <= 1/2 admits no acceptable ground state")
    return g_eff, k_eff, _const(g, k, beta0) - _const(g_eff, k_eff, beta0)


def refactorize(regime: Regime, g, k, beta0):
    """Broken-SUSY re-factorization of h0: returns (g_eff, k_eff, e0) with e0 > 0."""
    if regime is Regime.VERY_LARGE_J:
        g_eff = -g + beta0
        return g_eff, k, (2 * k + 1) * (-2 * g + beta0)
    if regime is Regime.S_MINUS:
        j_plus_1 = 0.5 - k
        return g, 1 - k, 2 * (2 * g + beta0) * j_plus_1
    raise DomainError(f"no re-factorization for regime {regime}")


def factorized_spectrum(g, k, beta0, n_max):
    """e_0..e_{n_max} of b^+(g,k) b^-(g,k) from the factorization alone."""
    g_eff, k_eff, e0 = ground_parameters(g, k, beta0)
    return [e0 + 4 * n * (g_eff + beta0 * (k_eff + n)) for n in range(n_max + 1)]


def channel_gk(omega, beta, two_s, two_j):
    """(g, k) of a channel; omega may be negative (used for the omega -> -omega map)."""
    k = two_s * (two_j + 1) / 2
    return 1.0 / omega - beta * k, k
