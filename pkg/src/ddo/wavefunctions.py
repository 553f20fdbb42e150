"""Closed-form radial momentum wavefunctions.

Every radial function here is a multiple of the orthonormal profile

    phi_n^{(a,b)}(p) = A_n(a,b) p^{b+1/2} f^{-(a+b+1)/2} P_n^{(a,b)}(z),
    z = (beta0 p^2 - 1) / (1 + beta0 p^2),  f = 1 + beta0 p^2 = 2 / (1 - z),

normalized under the radial scalar product int_0^oo dp/f. Power factors are
assembled in log space so that large j (b ~ 100) neither under- nor
overflows.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import specfun
from .errors import DomainError, NoBoundState
from .model import Channel, Regime, energy_squared
from .operators import RadialFunction


@dataclass(frozen=True)
class GridMap:
    beta0: float

    def p_to_z(self, p):
        return p_to_z(p, self.beta0)

    def z_to_p(self, z):
        return z_to_p(z, self.beta0)

    def f_of_z(self, z):
        return 2.0 / (1.0 - np.asarray(z, dtype=float))

    def f_of_p(self, p):
        return 1.0 + self.beta0 * np.asarray(p, dtype=float) ** 2


def p_to_z(p, beta0):
    p = np.asarray(p, dtype=float)
    if np.any(p < 0):
        raise DomainError("momentum must be nonnegative")
    x = beta0 * p * p
    z = (x - 1.0) / (x + 1.0)
    return float(z) if z.ndim == 0 else z


def z_to_p(z, beta0):
    z = np.asarray(z, dtype=float)
    if np.any(np.abs(z) >= 1.0):
        raise DomainError("z must lie in the open interval (-1, 1)")
    p = np.sqrt((1.0 + z) / (beta0 * (1.0 - z)))
    return float(p) if p.ndim == 0 else p


def log_normalization_coeff(n, a, b, beta0) -> float:
    if n < 0:
        raise DomainError("normalization requested for a negative degree")
    if not 2 * n + a + b + 1 > 0:
        raise DomainError(f"a + b + 2n + 1 must be positive (n={n}, a={a}, b={b})")
    lg = specfun.log_gamma
    log_a2 = (math.log(2.0) + (b + 1) * math.log(beta0) + math.log(a + b + 2 * n + 1)
              + lg(n + 1) + lg(a + b + n + 1) - lg(a + n + 1) - lg(b + n + 1))
    return 0.5 * log_a2


def normalization_coeff(n, a, b, beta0) -> float:
    """A^{(n)}(a, b), the constant that makes phi_n^{(a,b)} unit-normalized."""
    return math.exp(log_normalization_coeff(n, a, b, beta0))


@dataclass(frozen=True)
class JacobiProfile:
    """c * p^{b+1/2} f^{-(a+b+1)/2} P_n^{(a,b)}(z); c defaults to A_n(a,b)."""
    n: int
    a: float
    b: float
    beta0: float
    log_scale: float = field(default=None)
    sign: float = 1.0

    def __post_init__(self):
        if self.log_scale is None and self.n >= 0:
            object.__setattr__(self, "log_scale",
                               log_normalization_coeff(self.n, self.a, self.b, self.beta0))

    @property
    def vanishes(self) -> bool:
        return self.n < 0 or self.sign == 0

    def _parts(self, p):
        p = np.asarray(p, dtype=float)
        x = self.beta0 * p * p
        z = (x - 1.0) / (x + 1.0)
        log_q = ((self.b + 0.5) * np.log(p) - 0.5 * (self.a + self.b + 1) * np.log1p(x)
                 + self.log_scale)
        return p, 1.0 + x, z, self.sign * np.exp(log_q)

    def __call__(self, p):
        if self.vanishes:
            return np.zeros_like(np.asarray(p, dtype=float))
        _, _, z, q = self._parts(p)
        return q * specfun.jacobi_eval(self.n, self.a, self.b, z)

    def log_abs(self, p):
        """log|value|, finite wherever the polynomial factor is nonzero."""
        p = np.asarray(p, dtype=float)
        x = self.beta0 * p * p
        z = (x - 1.0) / (x + 1.0)
        poly = specfun.jacobi_eval(self.n, self.a, self.b, z)
        return ((self.b + 0.5) * np.log(p) - 0.5 * (self.a + self.b + 1) * np.log1p(x)
                + self.log_scale + np.log(np.abs(self.sign * poly)))

    def _log_derivs(self, p, f):
        c = 0.5 * (self.a + self.b + 1)
        b0 = self.beta0
        L = (self.b + 0.5) / p - 2 * c * b0 * p / f
        dL = -(self.b + 0.5) / p**2 - 2 * c * b0 * (1 - b0 * p * p) / f**2
        dz = 4 * b0 * p / f**2
        d2z = 4 * b0 * (1 - 3 * b0 * p * p) / f**3
        return L, dL, dz, d2z

    def deriv(self, p):
        if self.vanishes:
            return np.zeros_like(np.asarray(p, dtype=float))
        p, f, z, q = self._parts(p)
        L, _, dz, _ = self._log_derivs(p, f)
        P = specfun.jacobi_eval(self.n, self.a, self.b, z)
        dP = specfun.jacobi_derivative(self.n, self.a, self.b, z)
        return q * (L * P + dz * dP)

    def deriv2(self, p):
        if self.vanishes:
            return np.zeros_like(np.asarray(p, dtype=float))
        p, f, z, q = self._parts(p)
        L, dL, dz, d2z = self._log_derivs(p, f)
        P = specfun.jacobi_eval(self.n, self.a, self.b, z)
        dP = specfun.jacobi_derivative(self.n, self.a, self.b, z)
        d2P = specfun.jacobi_second_derivative(self.n, self.a, self.b, z)
        return q * ((dL + L * L) * P + (2 * L * dz + d2z) * dP + dz * dz * d2P)

    def value_z(self, z):
        """Evaluate directly from z, with log p and log f built from z."""
        if self.vanishes:
            return np.zeros_like(np.asarray(z, dtype=float))
        z = np.asarray(z, dtype=float)
        if np.any(np.abs(z) >= 1):
            raise DomainError("z must lie in (-1, 1)")
        log_f = math.log(2.0) - np.log1p(-z)
        log_p = 0.5 * (np.log1p(z) - math.log(self.beta0) - np.log1p(-z))
        q = self.sign * np.exp((self.b + 0.5) * log_p - 0.5 * (self.a + self.b + 1) * log_f
                               + self.log_scale)
        return q * specfun.jacobi_eval(self.n, self.a, self.b, z)

    @property
    def tail_exponent(self) -> float:
        """Power of p in the p -> oo behaviour."""
        return -self.a - 0.5

    @property
    def origin_exponent(self) -> float:
        """Power of p in the p -> 0 behaviour."""
        return self.b + 0.5

    def radial_function(self) -> RadialFunction:
        return RadialFunction(self, self.deriv, self.deriv2)

    def scaled(self, c: float) -> "JacobiProfile":
        if c == 0:
            return JacobiProfile(self.n, self.a, self.b, self.beta0, self.log_scale, 0.0)
        return JacobiProfile(self.n, self.a, self.b, self.beta0,
                             self.log_scale + math.log(abs(c)), self.sign * math.copysign(1.0, c))


def jacobi_data(channel: Channel, hypothetical: bool = False):
    """(a, b, a_tilde, b_tilde, dn, epsilon) for a channel; n_tilde = n + dn.

    ``hypothetical`` lets an intermediate-j channel use the broken-SUSY
    construction, which yields functions with divergent <p^2>.
    """
    g, k, b0 = channel.g, channel.k, channel.params.beta0
    regime = channel.regime
    if regime is Regime.INTERMEDIATE_J:
        if not hypothetical:
            raise NoBoundState(channel.no_bound_state_message())
        regime = Regime.VERY_LARGE_J
    if regime is Regime.SMALL_J:
        a = (g - 0.5 * b0) / b0
        return a, channel.j, a + 1, channel.j + 1, -1, 1
    if regime is Regime.VERY_LARGE_J:
        a = -(g - 0.5 * b0) / b0
        return a, channel.j, a - 1, channel.j + 1, 0, -1
    a = (g - 0.5 * b0) / b0
    b = channel.j + 1
    return a, b, a + 1, b - 1, 0, 1


@dataclass(frozen=True)
class RadialState:
    channel: Channel
    n: int
    sigma: int
    hypothetical: bool = False

    def __post_init__(self):
        if self.sigma not in (1, -1):
            raise DomainError(f"sigma must be +1 or -1, got {self.sigma}")
        if int(self.n) != self.n or self.n < 0:
            raise DomainError(f"n must be a nonnegative integer, got {self.n}")
        regime = self.channel.regime
        if regime is Regime.SMALL_J and self.sigma == -1 and self.n == 0:
            raise DomainError("E = -1 is not a solution of the coupled radial equations")
        if regime is Regime.INTERMEDIATE_J and not self.hypothetical:
            raise NoBoundState(self.channel.no_bound_state_message())

    @property
    def _data(self):
        return jacobi_data(self.channel, self.hypothetical)

    @property
    def a(self) -> float:
        return self._data[0]

    @property
    def b(self) -> float:
        return self._data[1]

    @property
    def a_tilde(self) -> float:
        return self._data[2]

    @property
    def b_tilde(self) -> float:
        return self._data[3]

    @property
    def n_tilde(self) -> int:
        return self.n + self._data[4]

    @property
    def epsilon(self) -> int:
        return self._data[5]

    @property
    def e(self) -> float:
        if self.hypothetical:
            b0 = self.channel.params.beta0
            return 4 * b0 * (self.a + self.n) * (self.b + self.n + 1)
        return energy_squared(self.n, self.channel)[0]

    @property
    def E(self) -> float:
        w = self.channel.params.omega
        return self.sigma * math.sqrt(1.0 + w * w * self.e)

    @property
    def A_n(self) -> float:
        return normalization_coeff(self.n, self.a, self.b, self.channel.params.beta0)

    @property
    def A_tilde(self) -> float:
        if self.n_tilde < 0:
            return 0.0
        return normalization_coeff(self.n_tilde, self.a_tilde, self.b_tilde,
                                   self.channel.params.beta0)

    @property
    def large_coeff(self) -> float:
        """sqrt((E+1)/(2E))."""
        E = self.E
        return math.sqrt((E + 1) / (2 * E))

    @property
    def small_coeff(self) -> float:
        """epsilon sigma sqrt((E-1)/(2E)), the coefficient of R2tilde."""
        E = self.E
        return self.epsilon * self.sigma * math.sqrt((E - 1) / (2 * E))

    @property
    def N1(self) -> float:
        return self.large_coeff * self.A_n

    @property
    def N2_coeff(self) -> float:
        """Coefficient of the small component R2 = -R2tilde (includes A_tilde)."""
        return -self.small_coeff * self.A_tilde

    def large_profile(self) -> JacobiProfile:
        b0 = self.channel.params.beta0
        return JacobiProfile(self.n, self.a, self.b, b0).scaled(self.large_coeff)

    def small_profile(self) -> JacobiProfile:
        b0 = self.channel.params.beta0
        if self.n_tilde < 0:
            return JacobiProfile(-1, self.a_tilde, self.b_tilde, b0, 0.0, 0.0)
        return JacobiProfile(self.n_tilde, self.a_tilde, self.b_tilde, b0).scaled(self.small_coeff)

    def R1(self, p):
        return self.large_profile()(p)

    def R2tilde(self, p):
        return self.small_profile()(p)

    def R2(self, p):
        return -self.R2tilde(p)

    def large(self) -> RadialFunction:
        return self.large_profile().radial_function()

    def small_tilde(self) -> RadialFunction:
        return self.small_profile().radial_function()

    def key(self):
        return (self.channel.two_j, self.channel.two_s, self.n, self.sigma)

    def describe(self) -> dict:
        return {
            "two_j": self.channel.two_j, "two_s": self.channel.two_s, "n": self.n,
            "sigma": self.sigma, "regime": str(self.channel.regime),
            "a": self.a, "b": self.b, "a_tilde": self.a_tilde, "b_tilde": self.b_tilde,
            "n_tilde": self.n_tilde, "A_n": self.A_n, "A_tilde": self.A_tilde,
            "N1": self.N1, "N2_coeff": self.N2_coeff, "E": self.E, "e": self.e,
        }


def states(channel: Channel, n_max: int):
    """All physical states of a channel with n <= n_max, both energy signs."""
    out = []
    for sigma in (1, -1):
        for n in range(channel.min_n[sigma], n_max + 1):
            out.append(RadialState(channel, n, sigma))
    return out


def zero_mode(g, k, beta0) -> JacobiProfile:
    """Unnormalized solution of b^-(g,k) R = 0: p^k f^{-(g + beta0 k)/(2 beta0)}.

    Exponents at 0 and oo are k and -g/beta0.
    """
    b = k - 0.5
    a = g / beta0 - 0.5
    return JacobiProfile(0, a, b, beta0, log_scale=0.0)


def partner_zero_mode(g, k, beta0) -> JacobiProfile:
    """Unnormalized solution of b^+(g,k) R = 0: p^{-k} f^{(g + beta0 k)/(2 beta0)}.

    Exponents at 0 and oo are -k and g/beta0.
    """
    b = -k - 0.5
    a = -g / beta0 - 0.5
    return JacobiProfile(0, a, b, beta0, log_scale=0.0)


def sample(state: RadialState, p) -> dict:
    """Tabulate (p, z, R1, R2tilde, R2, 1/f) at the given momenta."""
    p = np.asarray(p, dtype=float)
    b0 = state.channel.params.beta0
    r2t = state.R2tilde(p)
    return {
        "p": p,
        "z": p_to_z(p, b0),
        "R1": state.R1(p),
        "R2tilde": r2t,
        "R2": -r2t,
        "weight": 1.0 / (1.0 + b0 * p * p),
    }
