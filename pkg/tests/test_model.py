import math

import pytest
from hypothesis import assume, given, settings, strategies as st

from ddo.errors import BoundaryUnphysical, DomainError, NoBoundState
from ddo.model import (Channel, DeformationParams, Regime, classify, derive_channel,
                       energy_squared, energy_squared_compact, energy_squared_principal,
                       nondeformed_reference, parse_s, principal_number, regime_inequalities,
                       spectrum_entry, spectrum_table)
from ddo.operators import channel_gk, factorized_spectrum

P = DeformationParams(1.0, 0.01, 0.01)
P_NO_PRIME = DeformationParams(1.0, 0.01, 0.0)

deformations = st.tuples(st.floats(0.2, 5.0), st.floats(1e-4, 0.05), st.floats(0.0, 0.05))


def test_params_validation():
    with pytest.raises(DomainError):
        DeformationParams(0.0, 0.01, 0.01)
    with pytest.raises(DomainError):
        DeformationParams(1.0, -0.01, 0.01)
    with pytest.raises(DomainError):
        DeformationParams(1.0, 0.0, 0.0)
    p = DeformationParams(2.0, 0.01, 0.03, gamma=0.05)
    assert p.beta0 == pytest.approx(0.04)
    assert p.alpha == pytest.approx(0.5)
    assert p.small_deformation


def test_parse_s():
    assert parse_s("+") == 1 and parse_s("-") == -1
    assert parse_s(0.5) == 1 and parse_s(-0.5) == -1
    with pytest.raises(DomainError):
        parse_s(0.25)


def test_derive_channel_examples():
    ch = derive_channel(0.5, 1, P)
    assert ch.g == pytest.approx(0.99) and ch.k == 1
    ch = derive_channel(-0.5, 1, P)
    assert ch.g == pytest.approx(1.01) and ch.k == -1
    ch = derive_channel(0.5, 1, DeformationParams(1.0, 1e-12, 1e-12))
    assert ch.g == pytest.approx(1.0) and ch.k == 1


@pytest.mark.parametrize("two_j", [0, 2, -1])
def test_derive_channel_rejects_bad_two_j(two_j):
    with pytest.raises(DomainError):
        derive_channel(0.5, two_j, P)


def test_classify_examples():
    assert classify(0.5, 1, P_NO_PRIME) is Regime.SMALL_J
    assert classify(0.5, 199, P_NO_PRIME) is Regime.INTERMEDIATE_J
    assert classify(0.5, 201, P_NO_PRIME) is Regime.VERY_LARGE_J
    for two_j in (1, 51, 201, 999):
        assert classify(-0.5, two_j, P_NO_PRIME) is Regime.S_MINUS


def test_classify_boundary_is_error():
    # small_lhs = beta w (two_j + 2) hits 2 at two_j = 99
    p = DeformationParams(1.0, 2.0 / 101.0, 0.0)
    with pytest.raises(BoundaryUnphysical):
        classify(0.5, 99, p)


def test_epsilon_and_min_n():
    assert Channel(1, 1, P).epsilon == 1
    assert Channel(-1, 1, P).epsilon == 1
    assert Channel(1, 201, P_NO_PRIME).epsilon == -1
    with pytest.raises(NoBoundState):
        Channel(1, 199, P_NO_PRIME).epsilon
    assert Channel(1, 1, P).min_n == {1: 0, -1: 1}
    assert Channel(-1, 1, P).min_n == {1: 0, -1: 0}


@settings(max_examples=300, deadline=None)
@given(d=deformations, two_j=st.integers(0, 400).map(lambda x: 2 * x + 1))
def test_regime_trichotomy(d, two_j):
    p = DeformationParams(*d)
    q = regime_inequalities(1, two_j, p)
    small = q["small_lhs"] < 2
    large = q["very_large_lhs"] > 2
    mid = q["intermediate_lower"] < q["intermediate_mid"] < q["intermediate_upper"]
    assume(not any(math.isclose(v, 2.0, rel_tol=1e-9) for v in (q["small_lhs"], q["very_large_lhs"])))
    assert small + large + mid == 1
    regime = classify(0.5, two_j, p)
    assert (regime is Regime.SMALL_J) == small
    assert (regime is Regime.VERY_LARGE_J) == large
    assert (regime is Regime.INTERMEDIATE_J) == mid


def test_energy_examples():
    ch = Channel(1, 1, P)
    assert energy_squared(0, ch) == (0.0, 0.0)
    assert energy_squared(1, ch)[1] == pytest.approx(4.12, rel=1e-14)
    assert energy_squared(0, Channel(-1, 1, P))[1] == pytest.approx(6.12, rel=1e-14)
    assert energy_squared(0, Channel(1, 201, P_NO_PRIME))[1] == pytest.approx(6.09, rel=1e-12)


def test_energy_intermediate_raises():
    with pytest.raises(NoBoundState):
        energy_squared(0, Channel(1, 199, P_NO_PRIME))


def test_dimensionless_scaling():
    p = DeformationParams(2.5, 0.01, 0.005)
    ch = Channel(-1, 3, p)
    e, e2m1 = energy_squared(2, ch)
    assert e == pytest.approx(e2m1 / 2.5**2)


def _valid_channels(p, two_j_max=41):
    for two_j in range(1, two_j_max + 1, 2):
        for two_s in (1, -1):
            try:
                ch = Channel(two_s, two_j, p)
            except BoundaryUnphysical:
                continue
            if ch.regime is not Regime.INTERMEDIATE_J:
                yield ch


@settings(max_examples=60, deadline=None)
@given(d=deformations)
def test_compact_and_principal_forms_agree(d):
    p = DeformationParams(*d)
    for ch in _valid_channels(p):
        for n in range(6):
            ref = energy_squared(n, ch)[1]
            assert energy_squared_compact(n, ch) == pytest.approx(ref, rel=1e-12, abs=1e-12)
            N = principal_number(n, ch)
            assert energy_squared_principal(N, ch) == pytest.approx(ref, rel=1e-12, abs=1e-12)


@settings(max_examples=60, deadline=None)
@given(d=deformations)
def test_monotone_in_n(d):
    p = DeformationParams(*d)
    for ch in _valid_channels(p):
        es = [energy_squared(n, ch)[0] for n in range(8)]
        assert all(b > a for a, b in zip(es, es[1:]))
        assert all(e >= 0 for e in es)


@settings(max_examples=60, deadline=None)
@given(w=st.floats(0.3, 3.0), beta=st.floats(1e-4, 0.05), beta_p=st.floats(0.0, 0.05),
       two_j=st.integers(0, 20).map(lambda x: 2 * x + 1))
def test_omega_reflection(w, beta, beta_p, two_j):
    # b^{+-}(-w, s) = -b^{-+}(w, -s), so h0 at -w is the partner Hamiltonian at (w, -s)
    p = DeformationParams(w, beta, beta_p)
    b0 = p.beta0
    for two_s in (1, -1):
        try:
            partner_channel = Channel(-two_s, two_j, p)
        except BoundaryUnphysical:
            continue
        assume(partner_channel.regime is not Regime.INTERMEDIATE_J)
        g, k = channel_gk(-w, beta, two_s, two_j)
        reflected = factorized_spectrum(g, k, b0, 4)
        direct = [energy_squared(n, partner_channel)[0] for n in range(6)]
        # unbroken partner loses its zero mode; broken partners are isospectral
        shift = 1 if partner_channel.regime is Regime.SMALL_J else 0
        for n in range(5):
            assert reflected[n] == pytest.approx(direct[n + shift], rel=1e-10, abs=1e-10)


def test_nondeformed_reference_examples():
    assert nondeformed_reference(0, 0.5, 1, 1.0) == 0.0
    assert nondeformed_reference(2, -0.5, 1, 1.0) == 8.0
    assert nondeformed_reference(4, 0.5, 1, 1.0) == 8.0
    with pytest.raises(DomainError):
        nondeformed_reference(0, -0.5, 1, 1.0)


def test_spectrum_entry_rejects_negative_zero_mode():
    with pytest.raises(DomainError):
        spectrum_entry(0, -1, Channel(1, 1, P))


def test_spectrum_table_rules():
    table = spectrum_table(P_NO_PRIME, 203, 2)
    assert (1, 199) in table.no_bound_state
    keys = {(e.regime, e.sigma, e.n) for e in table.entries}
    assert (Regime.SMALL_J, -1, 0) not in keys
    assert [e.sort_key() for e in table.entries] == sorted(e.sort_key() for e in table.entries)
    for e in table.entries:
        assert e.N == 2 * e.n + (e.two_j - e.two_s) // 2
        assert e.E == pytest.approx(e.sigma * math.sqrt(1 + e.e2m1))
        assert e.e >= 0
        assert (e.e == 0) == (e.regime is Regime.SMALL_J and e.n == 0 and e.sigma == 1)
    lowest_negative = min(e.N for e in table.entries
                          if e.regime is Regime.SMALL_J and e.sigma == -1 and e.two_j == 1)
    assert lowest_negative == 2   # j + 3/2


def test_spectrum_table_deterministic():
    a = spectrum_table(P, 9, 3)
    b = spectrum_table(P, 9, 3)
    assert a.entries == b.entries


def test_spectrum_table_validation():
    with pytest.raises(DomainError):
        spectrum_table(P, 0, 2)


def test_deformation_splits_degenerate_levels_except_zero_modes():
    # every small-j zero mode sits at E^2 = 1 whatever j, so only those stay degenerate
    levels = {(e.N, e.two_s, e.two_j): e.e2m1 for e in spectrum_table(P, 9, 5).entries}
    groups = {}
    for key, val in levels.items():
        groups.setdefault(nondeformed_reference(key[0], key[1] / 2, key[2], P.omega), []).append(val)
    for ref, vals in groups.items():
        nonzero = [v for v in vals if v != 0.0]
        assert len(set(nonzero)) == len(nonzero)
        if ref == 0.0:
            assert len(vals) - len(nonzero) == 5


def test_no_splitting_in_j_without_beta_prime():
    # with beta' = 0 the small-j levels depend on n only
    e1 = [energy_squared(n, Channel(1, 1, P_NO_PRIME))[1] for n in range(4)]
    e3 = [energy_squared(n, Channel(1, 3, P_NO_PRIME))[1] for n in range(4)]
    assert e1 == pytest.approx(e3, rel=1e-14)
