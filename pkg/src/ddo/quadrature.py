"""Weighted integrals over (0, oo) with measure dp / f(p).

Under z = (beta0 p^2 - 1)/(1 + beta0 p^2) the measure becomes

    dp / f = dz / (2 sqrt(beta0) sqrt(1 - z^2)),

so the natural rule is Gauss-Chebyshev in z (equivalently the midpoint rule
in theta, z = -cos theta, p = tan(theta/2)/sqrt(beta0)). Gauss-Legendre in z
is available for comparison. Accuracy is certified by order doubling.
"""
from __future__ import annotations

import math
import os
from dataclasses import dataclass
from functools import lru_cache
from typing import NamedTuple, Union

import numpy as np

from .errors import ConfigurationError, DivergenceSuspected, DomainError

DEFAULT_ORDER = 256
SCHEMES = ("gauss-chebyshev-in-z", "gauss-legendre-in-z")
DIVERGENCE_RTOL = 1e-4


def default_order() -> int:
    raw = os.environ.get("DDO_QUAD_ORDER")
    if raw is None:
        return DEFAULT_ORDER
    try:
        return int(raw)
    except ValueError:
        raise ConfigurationError(f"DDO_QUAD_ORDER must be an integer, got {raw!r}") from None


@dataclass(frozen=True)
class QuadratureSpec:
    beta0: float
    order: int = None
    scheme: str = "gauss-chebyshev-in-z"

    def __post_init__(self):
        if self.order is None:
            object.__setattr__(self, "order", default_order())
        if self.order < 8:
            raise ConfigurationError(f"quadrature order too small: {self.order}")
        if self.scheme not in SCHEMES:
            raise ConfigurationError(f"unknown scheme {self.scheme!r}; choose from {SCHEMES}")
        if not self.beta0 > 0:
            raise ConfigurationError("beta0 must be positive")

    def doubled(self) -> "QuadratureSpec":
        return QuadratureSpec(self.beta0, 2 * self.order, self.scheme)


@lru_cache(maxsize=64)
def _nodes(order: int, scheme: str, beta0: float):
    if scheme == "gauss-chebyshev-in-z":
        theta = (2 * np.arange(1, order + 1) - 1) * math.pi / (2 * order)
        p = np.tan(theta / 2) / math.sqrt(beta0)
        w = np.full(order, math.pi / order / (2 * math.sqrt(beta0)))
    else:
        x, wx = np.polynomial.legendre.leggauss(order)
        p = np.sqrt((1 + x) / (beta0 * (1 - x)))
        w = wx / (2 * math.sqrt(beta0) * np.sqrt((1 - x) * (1 + x)))
    p.setflags(write=False)
    w.setflags(write=False)
    return p, w


def measure_nodes(spec: QuadratureSpec):
    """Nodes p_i and weights w_i with  int_0^oo dp/f F(p) ~ sum_i w_i F(p_i)."""
    return _nodes(spec.order, spec.scheme, spec.beta0)


class Integral(NamedTuple):
    value: float
    error: float


def integrate(fn, spec: QuadratureSpec) -> Integral:
    """int_0^oo dp/f fn(p), with the order-doubling difference as error estimate."""
    coarse, _ = _apply(fn, spec)
    fine, scale = _apply(fn, spec.doubled())
    err = abs(fine - coarse)
    # integrals that cancel to ~0 are judged against the size of the integrand
    if err > DIVERGENCE_RTOL * abs(fine) and err > 1e-12 * scale:
        raise DivergenceSuspected(
            f"order doubling changed the integral from {coarse!r} to {fine!r}")
    return Integral(fine, err)


def _apply(fn, spec):
    p, w = measure_nodes(spec)
    terms = w * fn(p)
    return float(np.sum(terms)), float(np.sum(np.abs(terms)))


def inner_product(u, v, spec: QuadratureSpec) -> Integral:
    """<u|v> = int_0^oo dp/f u(p) v(p) for real radial functions."""
    return integrate(lambda p: u(p) * v(p), spec)


@dataclass(frozen=True)
class Divergent:
    component: str
    exponent: float

    def __bool__(self):
        return False


def p2_finite(tail_exponent: float) -> bool:
    """Does int^oo dp/f p^2 |R|^2 converge for R ~ p^tail_exponent?"""
    # integrand ~ p^(2 t), needs 2 t < -1
    return 2 * tail_exponent < -1


def normalizable(origin_exponent: float, tail_exponent: float) -> bool:
    """Is R ~ p^origin at 0 and ~ p^tail at oo square integrable with R(0) = 0?"""
    return origin_exponent > 0 and 2 * tail_exponent - 2 < -1


def p2_expectation(state, spec: QuadratureSpec = None) -> Union[float, Divergent]:
    """<p^2> summed over both components, or Divergent naming the first bad one.

    Convergence is decided from the analytic tail exponents before any
    integration is attempted.
    """
    if spec is None:
        spec = QuadratureSpec(state.channel.params.beta0)
    comps = {"R1": state.large_profile(), "R2tilde": state.small_profile()}
    for name, prof in comps.items():
        if not prof.vanishes and not p2_finite(prof.tail_exponent):
            return Divergent(name, prof.tail_exponent)
    total = 0.0
    for prof in comps.values():
        if not prof.vanishes:
            total += integrate(lambda p, prof=prof: p * p * prof(p) ** 2, spec).value
    return total


def norm(state, spec: QuadratureSpec = None) -> Integral:
    """int dp/f (R1^2 + R2tilde^2)."""
    if spec is None:
        spec = QuadratureSpec(state.channel.params.beta0)
    r1, r2 = state.large_profile(), state.small_profile()
    return integrate(lambda p: r1(p) ** 2 + r2(p) ** 2, spec)


def overlap(s1, s2, spec: QuadratureSpec = None) -> Integral:
    """<psi_1|psi_2> radial part, large plus small components."""
    if spec is None:
        spec = QuadratureSpec(s1.channel.params.beta0)
    a1, b1 = s1.large_profile(), s1.small_profile()
    a2, b2 = s2.large_profile(), s2.small_profile()
    return integrate(lambda p: a1(p) * a2(p) + b1(p) * b2(p), spec)


def tail_exponent(fn, beta0: float, *, log_values: bool = False, samples: int = 64) -> float:
    """Least-squares slope of log|fn| against log p over [10, 1e4] / sqrt(beta0).

    With ``log_values`` the callable already returns log|fn|.
    """
    p = np.logspace(1, 4, samples) / math.sqrt(beta0)
    if log_values:
        y = np.asarray(fn(p), dtype=float)
    else:
        vals = np.asarray(fn(p), dtype=float)
        if np.any(np.sign(vals) != np.sign(vals[0])) or np.any(vals == 0):
            raise DomainError("function changes sign or vanishes on the tail sample")
        y = np.log(np.abs(vals))
    if not np.all(np.isfinite(y)):
        raise DomainError("non-finite values on the tail sample")
    slope, _ = np.polyfit(np.log(p), y, 1)
    return float(slope)
