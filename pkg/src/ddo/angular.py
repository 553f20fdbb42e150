"""Spin spherical harmonics and pointwise checks of the angular identities.

    Y_{s,j,m} = sum_{mu,sigma} <l mu, 1/2 sigma | j m> Y_{l mu} chi_sigma,   l = j - s

Spinors are stored as (upper, lower) = (sigma = +1/2, sigma = -1/2). Scalar
harmonics come from scipy (Condon-Shortley phase included). sigma.L is
applied two independent ways: by the closed ladder action on the (l, mu,
sigma) expansion, and as a differential operator in (theta, phi) using
analytic derivatives of the harmonics.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import special

from .errors import DomainError
from .report import VerificationReport

PAULI = (
    np.array([[0, 1], [1, 0]], dtype=complex),
    np.array([[0, -1j], [1j, 0]], dtype=complex),
    np.array([[1, 0], [0, -1]], dtype=complex),
)


def cg_coefficient(l: int, mu: int, two_sigma: int, two_j: int, two_m: int) -> float:
    """<l mu, 1/2 sigma | j m> for l (x) 1/2 coupling (Condon-Shortley)."""
    if two_sigma not in (1, -1) or l < 0:
        return 0.0
    if 2 * mu + two_sigma != two_m or abs(mu) > l or abs(two_m) > two_j:
        return 0.0
    m = two_m / 2
    den = 2 * l + 1
    if two_j == 2 * l + 1:
        if two_sigma == 1:
            return math.sqrt((l + m + 0.5) / den)
        return math.sqrt((l - m + 0.5) / den)
    if two_j == 2 * l - 1 and l > 0:
        if two_sigma == 1:
            return -math.sqrt((l - m + 0.5) / den)
        return math.sqrt((l + m + 0.5) / den)
    return 0.0


def ylm(l, mu, theta, phi, derivs=False):
    """Y_{l mu}; with ``derivs`` also (dY/dtheta, dY/dphi)."""
    if abs(mu) > l:
        z = np.zeros(np.broadcast(theta, phi).shape, dtype=complex)
        return (z, z, z) if derivs else z
    phi = np.mod(phi, 2 * np.pi)
    if not derivs:
        return special.sph_harm_y(l, mu, theta, phi)
    val, grad = special.sph_harm_y(l, mu, theta, phi, diff_n=1)
    return val, grad[0], grad[1]


def sigma_p_matrix(theta, phi):
    """sigma . p_hat for the unit vector at polar angle theta, azimuth phi."""
    ct, st = math.cos(theta), math.sin(theta)
    e = complex(math.cos(phi), math.sin(phi))
    return np.array([[ct, st * e.conjugate()], [st * e, -ct]], dtype=complex)


def _sigma_p_derivs(theta, phi):
    ct, st = math.cos(theta), math.sin(theta)
    e = complex(math.cos(phi), math.sin(phi))
    d_theta = np.array([[-st, ct * e.conjugate()], [ct * e, st]], dtype=complex)
    d_phi = np.array([[0, -1j * st * e.conjugate()], [1j * st * e, 0]], dtype=complex)
    return d_theta, d_phi


# Expansions are dicts {(l, mu, two_sigma): coefficient}.

def _spinor_index(two_sigma):
    return 0 if two_sigma == 1 else 1


def evaluate(expansion: dict, theta, phi) -> np.ndarray:
    out = np.zeros(2, dtype=complex)
    for (l, mu, two_sigma), c in expansion.items():
        out[_spinor_index(two_sigma)] += c * ylm(l, mu, theta, phi)
    return out


def evaluate_with_derivs(expansion: dict, theta, phi):
    """Spinor value and its theta and phi derivatives (each a 2-vector)."""
    val = np.zeros(2, dtype=complex)
    d_t = np.zeros(2, dtype=complex)
    d_p = np.zeros(2, dtype=complex)
    for (l, mu, two_sigma), c in expansion.items():
        y, yt, yp = ylm(l, mu, theta, phi, derivs=True)
        i = _spinor_index(two_sigma)
        val[i] += c * y
        d_t[i] += c * yt
        d_p[i] += c * yp
    return val, d_t, d_p


def sigma_dot_L_closed(expansion: dict) -> dict:
    """sigma.L = sigma_z L_z + (sigma_+ L_- + sigma_- L_+)/2 by ladder action."""
    out: dict = {}

    def put(key, c):
        out[key] = out.get(key, 0.0) + c

    for (l, mu, two_sigma), c in expansion.items():
        put((l, mu, two_sigma), c * mu * two_sigma)
        if two_sigma == -1 and mu > -l:
            put((l, mu - 1, 1), c * math.sqrt(l * (l + 1) - mu * (mu - 1)))
        if two_sigma == 1 and mu < l:
            put((l, mu + 1, -1), c * math.sqrt(l * (l + 1) - mu * (mu + 1)))
    return out


def sigma_dot_L_differential(value, d_theta, d_phi, theta, phi):
    """sigma.L on a spinor field from its value and angular derivatives.

    L_x = i(sin phi d_theta + cot theta cos phi d_phi)
    L_y = i(-cos phi d_theta + cot theta sin phi d_phi)
    L_z = -i d_phi
    """
    del value  # L involves derivatives only
    cot = math.cos(theta) / math.sin(theta)
    sp, cp = math.sin(phi), math.cos(phi)
    lx = 1j * (sp * d_theta + cot * cp * d_phi)
    ly = 1j * (-cp * d_theta + cot * sp * d_phi)
    lz = -1j * d_phi
    return PAULI[0] @ lx + PAULI[1] @ ly + PAULI[2] @ lz


@dataclass(frozen=True)
class SpinSphericalHarmonic:
    two_s: int
    two_j: int
    two_m: int

    def __post_init__(self):
        if self.two_s not in (1, -1):
            raise DomainError("two_s must be +1 or -1")
        if self.two_j < 1 or self.two_j % 2 != 1:
            raise DomainError("two_j must be an odd positive integer")
        if self.two_m % 2 != 1 or abs(self.two_m) > self.two_j:
            raise DomainError("two_m must be odd with |m| <= j")

    @property
    def l(self) -> int:
        return (self.two_j - self.two_s) // 2

    @property
    def eigenvalue(self) -> float:
        """Eigenvalue of sigma.L + 1, s(2j+1)."""
        return self.two_s * (self.two_j + 1) / 2

    def expansion(self) -> dict:
        out = {}
        for two_sigma in (1, -1):
            two_mu = self.two_m - two_sigma
            mu = two_mu // 2
            c = cg_coefficient(self.l, mu, two_sigma, self.two_j, self.two_m)
            if c != 0.0:
                out[(self.l, mu, two_sigma)] = c
        return out

    def __call__(self, theta, phi) -> np.ndarray:
        return evaluate(self.expansion(), theta, phi)

    def flipped(self) -> "SpinSphericalHarmonic":
        """Y_{-s,j,m}."""
        return SpinSphericalHarmonic(-self.two_s, self.two_j, self.two_m)


def sphere_quadrature(degree: int):
    """Product rule exact for polynomials of the given degree on the sphere."""
    nt = degree // 2 + 2
    x, wx = np.polynomial.legendre.leggauss(nt)
    nphi = degree + 2
    phi = 2 * np.pi * np.arange(nphi) / nphi
    theta = np.arccos(x)
    tt, pp = np.meshgrid(theta, phi, indexing="ij")
    ww = np.outer(wx, np.full(nphi, 2 * np.pi / nphi))
    return tt.ravel(), pp.ravel(), ww.ravel()


def gram_matrix(harmonics, degree: int = None) -> np.ndarray:
    """<Y_a|Y_b> over the sphere for a list of spin spherical harmonics."""
    lmax = max(h.l for h in harmonics)
    theta, phi, w = sphere_quadrature(degree or 2 * lmax + 4)
    vals = np.array([[h(t, p) for t, p in zip(theta, phi)] for h in harmonics])
    return np.einsum("aik,bik,i->ab", vals.conj(), vals, w)


def random_directions(count: int, rng: np.random.Generator, margin: float = 0.05):
    """Directions uniform on the sphere, kept away from the coordinate poles."""
    lo, hi = math.cos(math.pi - margin), math.cos(margin)
    theta = np.arccos(rng.uniform(lo, hi, count))
    phi = rng.uniform(0.0, 2 * np.pi, count)
    return theta, phi


def verify_angular_identities(two_s: int, two_j: int, two_m: int, sample_count: int = 100,
                              tol: float = 1e-8, seed: int = 0) -> VerificationReport:
    """Pointwise residuals of the identities behind the radial reduction."""
    harm = SpinSphericalHarmonic(two_s, two_j, two_m)
    partner = harm.flipped()
    lam = harm.eigenvalue
    exp_y = harm.expansion()
    closed = sigma_dot_L_closed(exp_y)
    rng = np.random.default_rng(seed)
    thetas, phis = random_directions(sample_count, rng)

    worst = dict.fromkeys(
        ["sigma_p^2 = I", "(sigma.L+1)Y closed", "(sigma.L+1)Y differential",
         "sigma_p Y_s = -Y_-s", "{sigma_p, sigma.L+1} Y = 0"], 0.0)
    eye = np.eye(2)
    for theta, phi in zip(thetas, phis):
        sp = sigma_p_matrix(theta, phi)
        y, y_t, y_p = evaluate_with_derivs(exp_y, theta, phi)
        worst["sigma_p^2 = I"] = max(worst["sigma_p^2 = I"], np.max(np.abs(sp @ sp - eye)))

        r = evaluate(closed, theta, phi) + y - lam * y
        worst["(sigma.L+1)Y closed"] = max(worst["(sigma.L+1)Y closed"], np.max(np.abs(r)))

        sly = sigma_dot_L_differential(y, y_t, y_p, theta, phi) + y
        worst["(sigma.L+1)Y differential"] = max(worst["(sigma.L+1)Y differential"],
                                                 np.max(np.abs(sly - lam * y)))

        r = sp @ y + partner(theta, phi)
        worst["sigma_p Y_s = -Y_-s"] = max(worst["sigma_p Y_s = -Y_-s"], np.max(np.abs(r)))

        # (sigma.L + 1)(sigma_p Y) by the product rule, with no use of the flip identity
        sp_t, sp_p = _sigma_p_derivs(theta, phi)
        w = sp @ y
        w_t = sp_t @ y + sp @ y_t
        w_p = sp_p @ y + sp @ y_p
        slw = sigma_dot_L_differential(w, w_t, w_p, theta, phi) + w
        anti = sp @ sly + slw
        worst["{sigma_p, sigma.L+1} Y = 0"] = max(worst["{sigma_p, sigma.L+1} Y = 0"],
                                                  np.max(np.abs(anti)))

    report = VerificationReport(f"angular two_s={two_s:+d} two_j={two_j} two_m={two_m}",
                                meta={"samples": sample_count, "eigenvalue": lam})
    for name, val in worst.items():
        report.add(name, float(val), tol)
    return report


def verify_all_angular(two_j_max: int = 7, sample_count: int = 100, tol: float = 1e-8,
                       seed: int = 0) -> VerificationReport:
    report = VerificationReport("angular identities")
    for two_j in range(1, two_j_max + 1, 2):
        for two_s in (1, -1):
            for two_m in range(-two_j, two_j + 1, 2):
                sub = verify_angular_identities(two_s, two_j, two_m, sample_count, tol,
                                                seed + 1000 * two_j + 10 * two_m + two_s)
                report.extend(sub, prefix=f"[2s={two_s:+d} 2j={two_j} 2m={two_m:+d}] ")
    return report
