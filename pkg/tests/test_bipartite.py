import numpy as np
import pytest
from hypothesis import given, strategies as st

from chanquant.bipartite import (
    BELL_STATE,
    MAXIMALLY_MIXED,
    TwoQubitState,
    choi_state,
    geometric_discord_b,
    local_apply_bob,
    local_unitary_conjugate,
    observation_check,
    ppt_min_eigenvalue,
)
from chanquant.channels import (
    AffineChannel,
    affine_to_choi,
    amplitude_damping,
    dephasing,
    identity_channel,
    kraus_to_affine,
    random_channel_population,
    random_cptp,
    random_semiclassical,
)
from chanquant.coherence import IncoherentBasis
from chanquant.numerics import IDENTITY2
from chanquant.quantumness import basis_grid, quantumness
from chanquant.teleport import random_resource_state, werner_state


def ad_discord(g):
    return (2 * g * g - 3 * g + 2) / 2 if g <= 0.5 else 1 - g


def _measurement_projectors(resolution):
    out = []
    for n in basis_grid(resolution):
        plus, minus = IncoherentBasis.from_vector(n).kets
        out.append([np.kron(IDENTITY2, np.outer(k, k.conj())) for k in (plus, minus)])
    return np.array(out)


PROJECTORS = _measurement_projectors(40)


def brute_force_discord(st: TwoQubitState) -> float:
    """2 * min over B-side projective measurements of ||rho - Pi(rho)||_HS^2."""
    rho = st.density()
    measured = np.einsum("gkab,bc,gkcd->gad", PROJECTORS, rho, PROJECTORS)
    diff = rho[None] - measured
    return float(2 * np.min(np.sum(np.abs(diff) ** 2, axis=(1, 2))))


def test_density_round_trip():
    rng = np.random.default_rng(0)
    for _ in range(50):
        st = random_resource_state(rng)
        back = TwoQubitState.from_density(st.density())
        np.testing.assert_allclose(back.t_corr, st.t_corr, atol=1e-12)
        np.testing.assert_allclose(back.x, st.x, atol=1e-12)
        np.testing.assert_allclose(back.y, st.y, atol=1e-12)
        assert np.trace(st.density()).real == pytest.approx(1)


def test_local_apply_identity():
    st = random_resource_state(np.random.default_rng(1))
    out = local_apply_bob(st, identity_channel())
    np.testing.assert_allclose(out.t_corr, st.t_corr)
    np.testing.assert_allclose(out.y, st.y)


def test_local_apply_bell_amplitude_damping():
    g = 0.4
    out = local_apply_bob(BELL_STATE, amplitude_damping(g))
    np.testing.assert_allclose(out.y, [0, 0, g])
    s = np.sqrt(1 - g)
    np.testing.assert_allclose(out.t_corr, np.diag([s, -s, 1 - g]), atol=1e-15)


def test_local_apply_product_state():
    g = 0.7
    st = TwoQubitState([0, 0, 1], np.zeros(3), np.zeros((3, 3)))
    out = local_apply_bob(st, AffineChannel(np.zeros((3, 3)), [0, 0, g]))
    expected = np.zeros((3, 3))
    expected[2, 2] = g
    np.testing.assert_allclose(out.t_corr, expected)


def test_local_action_matches_dense_conjugation():
    rng = np.random.default_rng(2)
    for i in range(1000):
        st = random_resource_state(rng)
        k = random_cptp(rng, 1 + i % 4)
        dense = sum(np.kron(IDENTITY2, op) @ st.density() @ np.kron(IDENTITY2, op).conj().T for op in k.ops)
        out = local_apply_bob(st, kraus_to_affine(k)).validate()
        assert np.abs(out.density() - dense).max() <= 1e-10


def test_choi_state_examples():
    st = choi_state(identity_channel())
    np.testing.assert_allclose(st.t_corr, np.diag([1, -1, 1]))
    np.testing.assert_allclose(st.x, 0)
    np.testing.assert_allclose(st.y, 0)
    st = choi_state(AffineChannel(np.zeros((3, 3))))
    np.testing.assert_allclose(st.t_corr, 0)
    st = choi_state(amplitude_damping(0.36))
    np.testing.assert_allclose(st.y, [0, 0, 0.36])
    np.testing.assert_allclose(st.t_corr, np.diag([0.8, -0.8, 0.64]), atol=1e-15)


def test_choi_state_consistency():
    for ch in random_channel_population(3, 200):
        a = choi_state(ch)
        b = local_apply_bob(BELL_STATE, ch)
        np.testing.assert_allclose(a.t_corr, b.t_corr, atol=1e-12)
        np.testing.assert_allclose(a.y, b.y, atol=1e-12)
        np.testing.assert_allclose(a.density(), affine_to_choi(ch), atol=1e-10)


def test_discord_examples():
    assert geometric_discord_b(choi_state(identity_channel())).d_g == pytest.approx(1)
    assert geometric_discord_b(choi_state(dephasing())).d_g == pytest.approx(0, abs=1e-15)
    assert geometric_discord_b(choi_state(amplitude_damping(0.5))).d_g == pytest.approx(0.5, abs=1e-12)


def test_discord_report_invariant():
    for ch in random_channel_population(4, 100):
        rep = geometric_discord_b(choi_state(ch))
        assert rep.d_g == pytest.approx(rep.n_eigenvalues[1] + rep.n_eigenvalues[2], abs=1e-12)
        n_mat = 0.5 * (ch.lam @ ch.lam.T + np.outer(ch.t, ch.t))
        e = np.sort(np.linalg.eigvalsh(n_mat))
        assert rep.d_g == pytest.approx(e[0] + e[1], abs=1e-12)


def test_discord_against_brute_force():
    rng = np.random.default_rng(7)
    states = [choi_state(ch) for ch in random_channel_population(8, 12)]
    states += [random_resource_state(rng) for _ in range(12)]
    for state in states:
        d = geometric_discord_b(state).d_g
        oracle = brute_force_discord(state)
        assert d - 1e-12 <= oracle <= d + 1e-2


def test_amplitude_damping_discord_piecewise():
    for g in np.round(np.arange(0, 1001) * 1e-3, 12):
        assert geometric_discord_b(choi_state(amplitude_damping(g))).d_g == pytest.approx(ad_discord(g), abs=1e-12)


def test_ppt_examples():
    assert ppt_min_eigenvalue(BELL_STATE) == pytest.approx(-0.5)
    assert ppt_min_eigenvalue(werner_state(1 / 3)) == pytest.approx(0, abs=1e-12)
    product = TwoQubitState([0, 0, 0.5], [0.3, 0, 0], np.outer([0, 0, 0.5], [0.3, 0, 0]))
    assert ppt_min_eigenvalue(product) >= -1e-12
    assert ppt_min_eigenvalue(MAXIMALLY_MIXED) == pytest.approx(0.25)


def test_observation_examples():
    rec = observation_check(amplitude_damping(0.3))
    assert rec.q == pytest.approx(0.7, abs=1e-12)
    assert rec.d_g == pytest.approx(0.64, abs=1e-12)
    assert rec.gap == pytest.approx(0.06, abs=1e-12)
    assert rec.inequality_holds and not rec.equality_expected
    rng = np.random.default_rng(0)
    for _ in range(50):
        ch = kraus_to_affine(random_cptp(rng, 1))
        rec = observation_check(ch)
        assert rec.equality and rec.equality_expected


def test_observation_equality_iff_condition():
    for ch in random_channel_population(6, 500):
        rec = observation_check(ch)
        assert rec.inequality_holds
        if rec.equality_expected:
            assert abs(rec.gap) < 1e-10
    # t along the top eigenvector of N: full damping
    rec = observation_check(amplitude_damping(0.8))
    assert rec.equality_expected and rec.equality


@given(st.integers(0, 2**32 - 1))
def test_observation_property(seed):
    rng = np.random.default_rng(seed)
    ch = kraus_to_affine(random_cptp(rng, int(rng.integers(1, 5))))
    rec = observation_check(ch)
    assert rec.d_g <= rec.q + 1e-10 <= 1 + 2e-10


def test_zero_iff_zero():
    rng = np.random.default_rng(8)
    for _ in range(200):
        ch = kraus_to_affine(random_semiclassical(rng))
        rec = observation_check(ch)
        assert rec.q < 1e-9 and rec.d_g < 1e-9
    for ch in random_channel_population(9, 300):
        rec = observation_check(ch)
        assert (rec.q < 1e-9) == (rec.d_g < 1e-9)


def test_maximum_iff_unitary():
    rng = np.random.default_rng(10)
    for _ in range(100):
        rec = observation_check(kraus_to_affine(random_cptp(rng, 1)))
        assert rec.q == pytest.approx(1, abs=1e-10) and rec.d_g == pytest.approx(1, abs=1e-10)
    for _ in range(100):
        rec = observation_check(kraus_to_affine(random_cptp(rng, int(rng.integers(2, 5)))))
        assert rec.q < 1 - 1e-6


def _rotation(rng):
    q, r = np.linalg.qr(rng.standard_normal((3, 3)))
    q = q * np.sign(np.diag(r))
    return q if np.linalg.det(q) > 0 else -q


def test_local_unitary_invariance():
    rng = np.random.default_rng(11)
    for ch in random_channel_population(12, 100):
        st = choi_state(ch)
        d = geometric_discord_b(st).d_g
        ra, rb = _rotation(rng), _rotation(rng)
        assert geometric_discord_b(local_unitary_conjugate(st, ra, rb)).d_g == pytest.approx(d, abs=1e-10)


def test_local_unitary_conjugate_matches_dense():
    rng = np.random.default_rng(13)
    st = random_resource_state(rng)
    ua_k, ub_k = random_cptp(rng, 1), random_cptp(rng, 1)
    u = np.kron(ua_k.ops[0], ub_k.ops[0])
    dense = u @ st.density() @ u.conj().T
    out = local_unitary_conjugate(st, kraus_to_affine(ua_k).lam, kraus_to_affine(ub_k).lam)
    np.testing.assert_allclose(out.density(), dense, atol=1e-12)


def test_q_dominates_discord_for_nonunital():
    q = quantumness(amplitude_damping(0.1)).q
    d = geometric_discord_b(choi_state(amplitude_damping(0.1))).d_g
    assert q > d
