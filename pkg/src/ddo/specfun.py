"""Jacobi polynomials with real parameters, and log-gamma.

Polynomials are evaluated by the forward three-term recurrence in the
degree. Derivatives use the lowering identity

    d/dz P_n^{(a,b)}(z) = (n + a + b + 1)/2 * P_{n-1}^{(a+1,b+1)}(z)

so they carry no differencing error.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy import special

from .errors import DomainError


@dataclass(frozen=True)
class JacobiParams:
    n: int
    a: float
    b: float

    def __post_init__(self):
        if int(self.n) != self.n or self.n < 0:
            raise DomainError(f"Jacobi degree must be a nonnegative integer, got {self.n}")

    @property
    def orthogonal(self) -> bool:
        """True when the weight (1-z)^a (1+z)^b is integrable on [-1, 1]."""
        return self.a > -1 and self.b > -1

    def __call__(self, z):
        return jacobi_eval(self.n, self.a, self.b, z)

    def derivative(self, z):
        return jacobi_derivative(self.n, self.a, self.b, z)


def _check_z(z):
    z = np.asarray(z, dtype=float)
    if np.any(np.abs(z) > 1.0):
        raise DomainError("Jacobi argument must lie in [-1, 1]")
    return z


def _explicit_sum(n, a, b, z):
    # P_n = sum_s C(n+a, n-s) C(n+b, s) ((z-1)/2)^s ((z+1)/2)^(n-s)
    zm = (z - 1.0) / 2.0
    zp = (z + 1.0) / 2.0
    out = np.zeros_like(z)
    for s in range(n + 1):
        out = out + special.binom(n + a, n - s) * special.binom(n + b, s) * zm**s * zp ** (n - s)
    return out


def _out(x):
    return float(x) if np.ndim(x) == 0 else x


def jacobi_eval(n, a, b, z):
    """P_n^{(a,b)}(z) for integer n >= 0 and real a, b.

    ``n = -1`` is accepted and returns zeros, the convention used for the
    vanishing small component of the unbroken-SUSY ground state.
    """
    z = _check_z(z)
    if n == -1:
        return _out(np.zeros_like(z))
    if int(n) != n or n < 0:
        raise DomainError(f"Jacobi degree must be a nonnegative integer, got {n}")
    return _out(_recurrence(int(n), float(a), float(b), z))


def _recurrence(n, a, b, z):
    p_prev = np.ones_like(z)
    if n == 0:
        return p_prev
    p_cur = (a + 1.0) + (a + b + 2.0) * (z - 1.0) / 2.0
    ab = a + b
    ab2 = a * a - b * b
    for m in range(2, n + 1):
        c = 2 * m + ab
        den = 2.0 * m * (m + ab) * (c - 2.0)
        if den == 0.0:
            return _explicit_sum(n, a, b, z)
        p_next = ((c - 1.0) * (c * (c - 2.0) * z + ab2) * p_cur
                  - 2.0 * (m + a - 1.0) * (m + b - 1.0) * c * p_prev) / den
        p_prev, p_cur = p_cur, p_next
    return p_cur


def jacobi_derivative(n, a, b, z):
    """dP_n^{(a,b)}/dz from the degree-lowering identity."""
    z = _check_z(z)
    if n <= 0:
        return _out(np.zeros_like(z))
    return 0.5 * (n + a + b + 1.0) * jacobi_eval(n - 1, a + 1.0, b + 1.0, z)


def jacobi_second_derivative(n, a, b, z):
    z = _check_z(z)
    if n <= 1:
        return _out(np.zeros_like(z))
    return 0.25 * (n + a + b + 1.0) * (n + a + b + 2.0) * jacobi_eval(n - 2, a + 2.0, b + 2.0, z)


def log_gamma(x):
    """ln Gamma(x) for x > 0."""
    x = np.asarray(x, dtype=float)
    if np.any(x <= 0):
        raise DomainError(f"log_gamma needs a positive argument, got {x}")
    out = special.gammaln(x)
    return float(out) if out.ndim == 0 else out
