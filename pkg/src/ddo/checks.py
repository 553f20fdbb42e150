"""Radial and ladder-structure verification sweeps shared by the CLI and tests."""
from __future__ import annotations

import numpy as np

from .errors import DivergenceSuspected, NoBoundState
from .model import Channel, DeformationParams, Regime, energy_squared
from .operators import LadderCoeffs, h0_matrix_free, h0_coeffs, refactorize, si_hierarchy
from .oracle import GridSpec, verify_spectrum
from .quadrature import QuadratureSpec, norm, overlap, p2_expectation
from .report import VerificationReport
from .wavefunctions import RadialState, states

# (omega, beta, beta_prime, two_s, two_j): one channel per bound-state regime
DEFAULT_SWEEP = (
    (1.0, 0.01, 0.01, 1, 1),
    (1.0, 0.01, 0.01, -1, 1),
    (1.0, 0.01, 0.0, 1, 201),
)


def sweep_channels(sweep=DEFAULT_SWEEP):
    return [Channel(two_s, two_j, DeformationParams(w, b, bp)) for w, b, bp, two_s, two_j in sweep]


def residual_points(beta0: float, count: int = 200) -> np.ndarray:
    """Momenta spread over five decades around the deformation scale."""
    return np.logspace(-2, 3, count) / np.sqrt(beta0)


def coupled_residuals(state: RadialState, p) -> tuple[float, float]:
    """Relative residuals of  w b^- R1 = (E+1) R2tilde  and  w b^+ R2tilde = (E-1) R1.

    Each residual is scaled by the largest sum of absolute values of the
    individual terms, so a vanishing side (the zero mode) does not blow it up.
    """
    ch = state.channel
    w, E = ch.params.omega, state.E
    f = 1 + ch.params.beta0 * p * p
    sup = LadderCoeffs(ch.g, ch.k, ch.params.beta0).superpotential(p)
    r1, r2 = state.large(), state.small_tilde()
    v1, d1, v2, d2 = r1(p), r1.deriv(p), r2(p), r2.deriv(p)

    lhs1 = w * (f * d1 + sup * v1)
    rhs1 = (E + 1) * v2
    scale1 = np.max(w * (np.abs(f * d1) + np.abs(sup * v1)) + np.abs(rhs1))
    lhs2 = w * (-f * d2 + sup * v2)
    rhs2 = (E - 1) * v1
    scale2 = np.max(w * (np.abs(f * d2) + np.abs(sup * v2)) + np.abs(rhs2))
    return _scaled(lhs1 - rhs1, scale1), _scaled(lhs2 - rhs2, scale2)


def _scaled(diff, scale):
    worst = float(np.max(np.abs(diff)))
    # both sides identically zero (the zero mode's small component)
    return worst / scale if scale > 0 else worst


def verify_radial(channel: Channel, n_max: int = 3, tol: float = 1e-8,
                  residual_tol: float = 1e-9, points: int = 200,
                  spec: QuadratureSpec = None) -> VerificationReport:
    """Coupled equations, normalization, orthogonality and finite <p^2>."""
    spec = spec or QuadratureSpec(channel.params.beta0)
    report = VerificationReport(
        f"radial two_s={channel.two_s:+d} two_j={channel.two_j}",
        meta={"regime": str(channel.regime), "quad_order": spec.order, "scheme": spec.scheme})
    if channel.regime is Regime.INTERMEDIATE_J:
        raise NoBoundState(channel.no_bound_state_message())
    p = residual_points(channel.params.beta0, points)
    sts = states(channel, n_max)
    for st in sts:
        tag = f"n={st.n} sigma={st.sigma:+d}"
        r1, r2 = coupled_residuals(st, p)
        report.add(f"{tag} b- equation", r1, residual_tol)
        report.add(f"{tag} b+ equation", r2, residual_tol)
        try:
            nrm = norm(st, spec)
            report.add(f"{tag} norm", abs(nrm.value - 1.0), tol, quad_error=nrm.error)
        except DivergenceSuspected as exc:
            report.add(f"{tag} norm", float("inf"), tol, passed=False, error=str(exc))
        ex = p2_expectation(st, spec)
        detail = {"p2": float(ex)} if ex else {"divergent": ex.component}
        report.add(f"{tag} <p^2> finite", 0.0 if ex else 1.0, 0.0, **detail)
    for i, s1 in enumerate(sts):
        for s2 in sts[i + 1:]:
            if s1.sigma != s2.sigma or s1.n == s2.n:
                continue
            ov = overlap(s1, s2, spec)
            report.add(f"overlap n={s1.n},{s2.n} sigma={s1.sigma:+d}", abs(ov.value), tol)
    return report


def verify_susy(channel: Channel, n_max: int = 5, tol: float = 1e-4,
                grid: GridSpec = None) -> VerificationReport:
    """Grid spectrum of h0 and its partner, plus the algebraic ladder checks."""
    report = VerificationReport(
        f"susy two_s={channel.two_s:+d} two_j={channel.two_j}",
        meta={"regime": str(channel.regime)})
    report.extend(verify_spectrum(channel, n_max, tol, grid))
    g, k, b0 = channel.g, channel.k, channel.params.beta0
    formula = [energy_squared(n, channel)[0] for n in range(n_max + 1)]
    if channel.regime is Regime.SMALL_J:
        g_eff, k_eff, e0 = g, k, 0.0
    else:
        g_eff, k_eff, e0 = refactorize(channel.regime, g, k, b0)
    sums = si_hierarchy(g_eff, k_eff, b0, n_max)
    worst = max(abs(e0 + s - e) / max(abs(e), 1.0) for s, e in zip(sums, formula))
    report.add("shape-invariance ladder", worst, 1e-12)
    # h0 acting on the exact large components
    p = residual_points(b0, 50)
    coeffs = h0_coeffs(g, k, b0)
    for n in range(min(n_max, 3) + 1):
        st = RadialState(channel, n, 1)
        fn = st.large()
        lhs = h0_matrix_free(coeffs, fn, p)
        rhs = st.e * fn(p)
        scale = max(np.max(np.abs(lhs)), np.max(np.abs(rhs)), 1e-300)
        if n == 0 and channel.regime is Regime.SMALL_J:
            scale = np.max(np.abs(fn.deriv2(p)) * (1 + b0 * p * p) ** 2)
        report.add(f"h0 R1[{n}] = e R1[{n}]", float(np.max(np.abs(lhs - rhs)) / scale), 1e-9)
    return report
