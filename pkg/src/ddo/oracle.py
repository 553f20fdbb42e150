"""Brute-force check of the closed-form spectra by grid diagonalization.

The partner Hamiltonians -(f d/dp)^2 + V(p) are discretized in the angle
theta with z = -cos(theta), i.e. on a Chebyshev-type grid in z. Under this
map p = tan(theta/2)/sqrt(beta0), f d/dp = 2 sqrt(beta0) d/dtheta and the
weight dp/f is dtheta / (2 sqrt(beta0)), so

    h = -4 beta0 d^2/dtheta^2 + V(p(theta))

is self-adjoint for the flat measure and its finite-difference matrix is
symmetric by construction. Dirichlet conditions sit at the ends of the
(possibly truncated) z interval.

Nothing here touches Jacobi polynomials or closed-form energies; only the
operator coefficients enter.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import linalg

from .errors import ConfigurationError, EigenSolverError, NoBoundState
from .model import Channel, Regime, energy_squared
from .operators import H0Coeffs, h0_coeffs, partner_coeffs
from .report import VerificationReport

MIN_GRID = 64


@dataclass(frozen=True)
class GridSpec:
    size: int = 1000
    z_min: float = -1.0
    z_max: float = 1.0
    fd_order: int = 2
    richardson: bool = True

    def __post_init__(self):
        if self.size < MIN_GRID:
            raise ConfigurationError(f"grid needs at least {MIN_GRID} nodes, got {self.size}")
        if self.fd_order not in (2, 4):
            raise ConfigurationError("fd_order must be 2 or 4")
        if not -1.0 <= self.z_min < self.z_max <= 1.0:
            raise ConfigurationError("need -1 <= z_min < z_max <= 1")

    @classmethod
    def truncated(cls, delta: float, **kw) -> "GridSpec":
        return cls(z_min=-1.0 + delta, z_max=1.0 - delta, **kw)

    def refined(self) -> "GridSpec":
        """Same interval with the spacing halved."""
        return GridSpec(2 * self.size + 1, self.z_min, self.z_max, self.fd_order, self.richardson)

    def nodes(self):
        """Interior theta nodes and the spacing."""
        t0, t1 = math.acos(-self.z_min), math.acos(-self.z_max)
        h = (t1 - t0) / (self.size + 1)
        return t0 + h * np.arange(1, self.size + 1), h


@dataclass(frozen=True)
class BandedSymmetric:
    """Symmetric banded matrix in LAPACK lower form: bands[d, i] = M[i + d, i]."""
    bands: np.ndarray

    @property
    def size(self) -> int:
        return self.bands.shape[1]

    @property
    def bandwidth(self) -> int:
        return self.bands.shape[0] - 1

    def to_dense(self) -> np.ndarray:
        n = self.size
        m = np.zeros((n, n))
        for d in range(self.bandwidth + 1):
            idx = np.arange(n - d)
            m[idx + d, idx] = self.bands[d, : n - d]
            m[idx, idx + d] = self.bands[d, : n - d]
        return m


def discretize(coeffs: H0Coeffs, grid: GridSpec) -> BandedSymmetric:
    theta, h = grid.nodes()
    p2 = np.tan(theta / 2) ** 2 / coeffs.beta0
    v = coeffs.p2 * p2 + coeffs.inv_p2 / p2 + coeffs.const
    c = 4 * coeffs.beta0 / h**2
    n = grid.size
    if grid.fd_order == 2:
        bands = np.zeros((2, n))
        bands[0] = 2 * c + v
        bands[1, : n - 1] = -c
    else:
        bands = np.zeros((3, n))
        bands[0] = 30 * c / 12 + v
        bands[1, : n - 1] = -16 * c / 12
        bands[2, : n - 2] = c / 12
        # odd reflection through the Dirichlet walls for the outermost ghosts
        bands[0, 0] -= c / 12
        bands[0, -1] -= c / 12
    return BandedSymmetric(bands)


def discretize_h0(channel: Channel, grid: GridSpec = None, partner: bool = False) -> BandedSymmetric:
    """Matrix of b^+b^- (or b^-b^+ with ``partner``) for the channel's (g, k)."""
    if channel.regime is Regime.INTERMEDIATE_J:
        raise NoBoundState(channel.no_bound_state_message())
    grid = grid or GridSpec()
    make = partner_coeffs if partner else h0_coeffs
    return discretize(make(channel.g, channel.k, channel.params.beta0), grid)


def lowest_eigenvalues(matrix, count: int) -> np.ndarray:
    """The ``count`` smallest eigenvalues in ascending order."""
    try:
        if isinstance(matrix, BandedSymmetric):
            count = min(count, matrix.size)
            if matrix.bandwidth == 1:
                return linalg.eigh_tridiagonal(
                    matrix.bands[0], matrix.bands[1, :-1], eigvals_only=True,
                    select="i", select_range=(0, count - 1))
            return linalg.eig_banded(matrix.bands, lower=True, eigvals_only=True,
                                     select="i", select_range=(0, count - 1))
        m = np.asarray(matrix, dtype=float)
        if m.ndim != 2 or m.shape[0] != m.shape[1] or not np.array_equal(m, m.T):
            raise ConfigurationError("lowest_eigenvalues needs a symmetric matrix")
        count = min(count, m.shape[0])
        return linalg.eigh(m, eigvals_only=True, subset_by_index=(0, count - 1))
    except linalg.LinAlgError as exc:
        size = matrix.size if isinstance(matrix, BandedSymmetric) else np.shape(matrix)
        raise EigenSolverError(f"eigensolver failed for matrix of size {size}: {exc}") from exc


def grid_eigenvalues(coeffs: H0Coeffs, count: int, grid: GridSpec = None) -> np.ndarray:
    """Lowest eigenvalues, Richardson-extrapolated over h and h/2 when enabled."""
    grid = grid or GridSpec()
    coarse = lowest_eigenvalues(discretize(coeffs, grid), count)
    if not grid.richardson:
        return coarse
    fine = lowest_eigenvalues(discretize(coeffs, grid.refined()), count)
    w = 2.0**grid.fd_order
    return (w * fine - coarse) / (w - 1)


def channel_eigenvalues(channel: Channel, count: int, grid: GridSpec = None,
                        partner: bool = False) -> np.ndarray:
    if channel.regime is Regime.INTERMEDIATE_J:
        raise NoBoundState(channel.no_bound_state_message())
    make = partner_coeffs if partner else h0_coeffs
    return grid_eigenvalues(make(channel.g, channel.k, channel.params.beta0), count, grid)


def _rel(x, ref):
    return abs(x - ref) / max(abs(ref), 1.0)


def verify_spectrum(channel: Channel, n_max: int = 5, tol: float = 1e-4,
                    grid: GridSpec = None, zero_tol: float = 1e-6) -> VerificationReport:
    """Compare grid eigenvalues of h0 and of its partner with the closed forms."""
    grid = grid or GridSpec()
    report = VerificationReport(
        f"spectrum two_s={channel.two_s:+d} two_j={channel.two_j}",
        meta={"regime": str(channel.regime), "grid_size": grid.size,
              "fd_order": grid.fd_order, "richardson": grid.richardson})
    formula = [energy_squared(n, channel)[0] for n in range(n_max + 1)]
    h0 = channel_eigenvalues(channel, n_max + 1, grid)
    for n, (x, ref) in enumerate(zip(h0, formula)):
        report.add(f"e[{n}]", _rel(x, ref), tol, grid=float(x), formula=ref)

    if channel.regime is Regime.SMALL_J:
        report.add("unbroken SUSY: e0 = 0", abs(h0[0]), zero_tol, grid=float(h0[0]))
        partner = channel_eigenvalues(channel, n_max, grid, partner=True)
        shifted = h0[1:]
    else:
        report.add("broken SUSY: e0 > 0", float(h0[0]), 10 * tol,
                   passed=bool(h0[0] > 10 * tol), grid=float(h0[0]))
        partner = channel_eigenvalues(channel, n_max + 1, grid, partner=True)
        shifted = h0
    worst = max(_rel(x, y) for x, y in zip(partner, shifted))
    report.add("partner spectrum", worst, tol)
    return report
