"""Physical parameters, (s, j) channels, regime classification and spectra.

Units are hbar = c = m = 1. Half-integers are carried as twice their value
(``two_j``, ``two_s``) so that channel data stays exact.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

from .errors import BoundaryUnphysical, ConsistencyError, DomainError, NoBoundState

# relative width inside which a regime inequality counts as an equality
BOUNDARY_RTOL = 1e-12


class Regime(str, enum.Enum):
    SMALL_J = "SmallJ"
    INTERMEDIATE_J = "IntermediateJ"
    VERY_LARGE_J = "VeryLargeJ"
    S_MINUS = "SMinus"

    def __str__(self):
        return self.value


@dataclass(frozen=True)
class DeformationParams:
    omega: float
    beta: float
    beta_prime: float
    # only enters the momentum-space weight; the radial problem is independent of it
    gamma: float = 0.0

    def __post_init__(self):
        if not self.omega > 0:
            raise DomainError(f"omega must be positive, got {self.omega}")
        if self.beta < 0 or self.beta_prime < 0:
            raise DomainError("deformation parameters must be nonnegative")
        if not self.beta0 > 0:
            raise DomainError("beta + beta_prime must be strictly positive")

    @property
    def beta0(self) -> float:
        return self.beta + self.beta_prime

    @property
    def alpha(self) -> float:
        return (self.gamma - self.beta_prime) / self.beta0

    @property
    def beta_omega(self) -> float:
        return self.beta * self.omega

    @property
    def beta_prime_omega(self) -> float:
        return self.beta_prime * self.omega

    @property
    def small_deformation(self) -> bool:
        """Advisory flag for the beta*omega << 1, beta'*omega << 1 regime."""
        return self.beta_omega < 0.1 and self.beta_prime_omega < 0.1


def parse_s(s) -> int:
    """Return 2s (= +1 or -1) from +-1/2, +-1 or the strings '+', '-'."""
    if isinstance(s, str):
        table = {"+": 1, "-": -1, "+1/2": 1, "-1/2": -1, "1/2": 1}
        if s.strip() not in table:
            raise DomainError(f"cannot parse spin label {s!r}")
        return table[s.strip()]
    if s in (0.5, 1):
        return 1
    if s in (-0.5, -1):
        return -1
    raise DomainError(f"s must be +1/2 or -1/2, got {s}")


def _check_two_j(two_j):
    if int(two_j) != two_j or two_j < 1 or two_j % 2 != 1:
        raise DomainError(f"two_j must be an odd positive integer, got {two_j}")


def regime_inequalities(two_s: int, two_j: int, params: DeformationParams) -> dict:
    """Left-hand sides of the three s = +1/2 regime inequalities.

    small:      2 beta w (j+1) + beta' w  < 2
    very large: 2 beta w j - beta' w      > 2
    intermediate otherwise, i.e. 2 - 2 beta w - beta' w < 2 beta w j < 2 + beta' w
    """
    bw, bpw = params.beta_omega, params.beta_prime_omega
    return {
        "small_lhs": bw * (two_j + 2) + bpw,
        "very_large_lhs": bw * two_j - bpw,
        "intermediate_lower": 2.0 - 2.0 * bw - bpw,
        "intermediate_mid": bw * two_j,
        "intermediate_upper": 2.0 + bpw,
        "threshold": 2.0,
    }


def classify(s, two_j: int, params: DeformationParams) -> Regime:
    two_s = parse_s(s)
    _check_two_j(two_j)
    if two_s < 0:
        return Regime.S_MINUS
    q = regime_inequalities(two_s, two_j, params)
    for key in ("small_lhs", "very_large_lhs"):
        if math.isclose(q[key], 2.0, rel_tol=BOUNDARY_RTOL, abs_tol=0.0):
            raise BoundaryUnphysical(
                f"j = {two_j}/2 lies on a regime boundary ({key} = {q[key]!r} = 2)")
    if q["small_lhs"] < 2.0:
        return Regime.SMALL_J
    if q["very_large_lhs"] > 2.0:
        return Regime.VERY_LARGE_J
    return Regime.INTERMEDIATE_J


@dataclass(frozen=True)
class Channel:
    two_s: int
    two_j: int
    params: DeformationParams
    regime: Regime = field(init=False)

    def __post_init__(self):
        if self.two_s not in (1, -1):
            raise DomainError(f"two_s must be +1 or -1, got {self.two_s}")
        object.__setattr__(self, "regime", classify(self.two_s, self.two_j, self.params))

    @property
    def s(self) -> float:
        return self.two_s / 2

    @property
    def j(self) -> float:
        return self.two_j / 2

    @property
    def l(self) -> int:
        return (self.two_j - self.two_s) // 2

    @property
    def k(self) -> float:
        return self.two_s * (self.two_j + 1) / 2

    @property
    def g(self) -> float:
        return 1.0 / self.params.omega - self.params.beta * self.k

    @property
    def epsilon(self) -> int:
        if self.regime is Regime.INTERMEDIATE_J:
            raise NoBoundState(self.no_bound_state_message())
        return -1 if self.regime is Regime.VERY_LARGE_J else 1

    @property
    def min_n(self) -> dict:
        """Lowest allowed radial quantum number per energy sign."""
        if self.regime is Regime.SMALL_J:
            return {1: 0, -1: 1}
        return {1: 0, -1: 0}

    def no_bound_state_message(self) -> str:
        q = regime_inequalities(self.two_s, self.two_j, self.params)
        return (f"no bound state for s=+1/2, j={self.two_j}/2: "
                f"{q['intermediate_lower']!r} < 2*beta*omega*j = {q['intermediate_mid']!r} "
                f"< {q['intermediate_upper']!r}")

    def key(self):
        return (self.two_j, self.two_s)


def derive_channel(s, two_j: int, params: DeformationParams) -> Channel:
    _check_two_j(two_j)
    return Channel(parse_s(s), int(two_j), params)


def energy_squared(n: int, channel: Channel) -> tuple[float, float]:
    """Return (e, E^2 - 1) for radial quantum number n, with e = (E^2 - 1)/omega^2."""
    if int(n) != n or n < 0:
        raise DomainError(f"n must be a nonnegative integer, got {n}")
    p = channel.params
    w, bw, bpw = p.omega, p.beta_omega, p.beta_prime_omega
    j = channel.j
    regime = channel.regime
    if regime is Regime.INTERMEDIATE_J:
        raise NoBoundState(channel.no_bound_state_message())
    if regime is Regime.SMALL_J:
        e2m1 = 4 * w * n * (1 + bw * n + bpw * (n + j + 0.5))
    elif regime is Regime.VERY_LARGE_J:
        e2m1 = 4 * w * (n + j + 1) * (-1 + bw * (n + j + 1) + bpw * (n + 0.5))
    else:
        e2m1 = 4 * w * (n + j + 1) * (1 + bw * (n + j + 1) + bpw * (n + 0.5))
    if e2m1 < 0:
        raise ConsistencyError(f"negative E^2 - 1 = {e2m1} in regime {regime}")
    return e2m1 / w**2, e2m1


def energy_squared_compact(n: int, channel: Channel) -> float:
    """E^2 - 1 from the single formula parameterized by (s, epsilon)."""
    p = channel.params
    s, j, eps = channel.s, channel.j, channel.epsilon
    m = n + (1 - s - eps / 2) * (j + 1)
    return 4 * p.omega * m * (eps + p.beta_omega * m
                              + p.beta_prime_omega * (n + 0.5 + (s + eps / 2) * j))


def principal_number(n: int, channel: Channel) -> int:
    """N = 2n + l."""
    return 2 * n + channel.l


def energy_squared_principal(N: int, channel: Channel) -> float:
    """E^2 - 1 written in terms of the principal quantum number N."""
    p = channel.params
    s, j, eps = channel.s, channel.j, channel.epsilon
    c = 1 - 2 * s - eps
    m = N + 2 - s - eps + c * j
    return 2 * p.omega * m * (eps + 0.5 * p.beta_omega * m
                              + 0.5 * p.beta_prime_omega * (N + 1 + s - c * j))


def nondeformed_reference(N: int, s, two_j: int, omega: float) -> float:
    """E^2 - 1 of the conventional Dirac oscillator, 2 omega [N + 1 - s(2j+1)]."""
    two_s = parse_s(s)
    _check_two_j(two_j)
    if 2 * N < two_j - two_s:
        raise DomainError(f"N = {N} is below j - s")
    return 2 * omega * (N + 1 - two_s * (two_j + 1) / 2)


@dataclass(frozen=True)
class SpectrumEntry:
    n: int
    N: int
    two_s: int
    two_j: int
    sigma: int
    regime: Regime
    e: float
    e2m1: float
    E: float

    @property
    def s(self) -> float:
        return self.two_s / 2

    @property
    def j(self) -> float:
        return self.two_j / 2

    def sort_key(self):
        return (abs(self.E), self.two_j, self.two_s, self.n, self.sigma)


def spectrum_entry(n: int, sigma: int, channel: Channel) -> SpectrumEntry:
    if sigma not in (1, -1):
        raise DomainError(f"sigma must be +1 or -1, got {sigma}")
    if n < channel.min_n[sigma]:
        raise DomainError(
            f"n = {n} not allowed for sigma = {sigma} in regime {channel.regime}")
    e, e2m1 = energy_squared(n, channel)
    E = sigma * math.sqrt(1.0 + e2m1)
    return SpectrumEntry(n, principal_number(n, channel), channel.two_s, channel.two_j,
                         sigma, channel.regime, e, e2m1, E)


@dataclass
class SpectrumTable:
    entries: list
    no_bound_state: list      # (two_s, two_j) channels in the intermediate range
    boundary: list            # (two_s, two_j) channels exactly on a regime boundary


def spectrum_table(params: DeformationParams, two_j_max: int, n_max: int) -> SpectrumTable:
    if two_j_max < 1 or n_max < 0:
        raise DomainError("need two_j_max >= 1 and n_max >= 0")
    entries, dead, edge = [], [], []
    for two_j in range(1, two_j_max + 1, 2):
        for two_s in (1, -1):
            try:
                ch = Channel(two_s, two_j, params)
            except BoundaryUnphysical:
                edge.append((two_s, two_j))
                continue
            if ch.regime is Regime.INTERMEDIATE_J:
                dead.append((two_s, two_j))
                continue
            for sigma in (1, -1):
                for n in range(ch.min_n[sigma], n_max + 1):
                    entries.append(spectrum_entry(n, sigma, ch))
    entries.sort(key=SpectrumEntry.sort_key)
    return SpectrumTable(entries, dead, edge)
