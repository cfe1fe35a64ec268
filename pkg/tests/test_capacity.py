import numpy as np
import pytest

from pdchannel import capacity as cap
from pdchannel import channel as ch
from pdchannel import zoo
from pdchannel.errors import DimMismatch, SizeLimit


def _h2(p):
    if p in (0.0, 1.0):
        return 0.0
    return float(-p * np.log2(p) - (1 - p) * np.log2(1 - p))


def test_coherent_information_identity_and_erasure():
    rho = np.eye(2, dtype=complex) / 2
    assert cap.coherent_information(ch.identity_channel(2), rho) == pytest.approx(1.0)
    # erasure at the maximally mixed input: (1 - 2p) * 1
    for p in (0.0, 0.25, 0.5, 0.75):
        got = cap.coherent_information(zoo.erasure(p), rho)
        assert got == pytest.approx(1.0 - 2.0 * p, abs=1e-10)
    with pytest.raises(DimMismatch):
        cap.coherent_information(zoo.erasure(0.5), np.eye(3) / 3)


def test_coherent_information_dephasing():
    rho = np.eye(2, dtype=complex) / 2
    p = 0.2
    got = cap.coherent_information(zoo.dephasing(p), rho)
    assert got == pytest.approx(1.0 - _h2(p), abs=1e-10)


def test_pd_isometries_validation():
    n_ab, _ = zoo.symmetric_pd_channel()
    u = ch.stinespring(n_ab)
    ident8 = ch.stinespring(ch.identity_channel(8))
    cap.PdIsometries(u=u, v=ident8, w=ident8)
    with pytest.raises(DimMismatch):
        cap.PdIsometries(u=u, v=ch.stinespring(ch.identity_channel(3)), w=ident8)
    bad = ch.StinespringIsometry(
        v=np.ones((8, 8), dtype=complex), dim_in=8, dim_out=8, dim_env=1
    )
    with pytest.raises(DimMismatch):
        cap.PdIsometries(u=u, v=bad, w=ident8)


def test_isometry_chain_identity_degradings_match_standard():
    n_ab, _ = zoo.symmetric_pd_channel()
    ident8 = ch.stinespring(ch.identity_channel(8))
    iso = cap.PdIsometries(u=ch.stinespring(n_ab), v=ident8, w=ident8)
    for rho in (np.eye(4, dtype=complex) / 4, np.diag([0.4, 0.3, 0.2, 0.1]).astype(complex)):
        out = cap.coherent_information_pd(iso, rho)
        want = cap.coherent_information(n_ab, rho)
        assert out["h_b_minus_h_eprime"] == pytest.approx(want, abs=1e-9)
        assert out["h_f_given_eprime"] == pytest.approx(out["h_h_given_g"], abs=1e-9)
        assert out["h_rf_given_eprime"] == pytest.approx(0.0, abs=1e-9)


def test_isometry_chain_degradable_channel_value():
    # degenerate PD structure on a degradable channel: the E->E' degrading
    # is the identity and the B->E' leg is the solved degrading map, so the
    # degraded environment carries the full environment entropy
    from pdchannel import degradability as deg

    c = zoo.amplitude_damping(0.2)
    sol = deg.is_degradable(c)
    assert sol.success
    iso = cap.PdIsometries(
        u=ch.stinespring(c),
        v=ch.stinespring(ch.identity_channel(2)),
        w=ch.stinespring(sol.map),
    )
    rho = np.eye(2, dtype=complex) / 2
    out = cap.coherent_information_pd(iso, rho)
    assert out["h_b_minus_h_eprime"] == pytest.approx(
        cap.coherent_information(c, rho), abs=1e-8
    )
    assert out["h_f_given_eprime"] == pytest.approx(
        out["h_b_minus_h_eprime"], abs=1e-12
    )


def test_params_state_roundtrip():
    rng = np.random.default_rng(7)
    a = rng.standard_normal((3, 3)) + 1j * rng.standard_normal((3, 3))
    rho = a @ a.conj().T
    rho /= np.trace(rho).real
    x = cap._state_to_params(rho)
    back = cap._params_to_state(x, 3)
    assert np.max(np.abs(back - rho)) <= 1e-9
    # degenerate parameters fall back to the maximally mixed state
    assert np.allclose(cap._params_to_state(np.zeros(9), 3), np.eye(3) / 3)


def test_maximizer_dephasing():
    res = cap.maximize_coherent_information(zoo.dephasing(0.1), restarts=8, seed=1)
    assert res.value == pytest.approx(1.0 - _h2(0.1), abs=1e-4)
    assert res.restarts_used == 8
    assert len(res.per_restart_values) == 8
    assert res.argmax_state.shape == (2, 2)
    d = res.as_dict()
    assert d["value"] == res.value


def test_maximizer_rejects_large_inputs():
    with pytest.raises(SizeLimit):
        cap.maximize_coherent_information(ch.identity_channel(17))
    with pytest.raises(SizeLimit):
        cap.additivity_probe(zoo.erasure(0.5, d=5))
    with pytest.raises(SizeLimit):
        cap.additivity_probe(zoo.dephasing(0.1), n=3)


def test_ssa_known_states():
    # product of maximally mixed qubits saturates SSA: slack = 2+2-3-1 = 0
    rho = np.eye(8, dtype=complex) / 8
    assert cap.ssa_check(rho, (2, 2, 2)) == pytest.approx(0.0, abs=1e-10)
    # GHZ state: H(AB) = H(BC) = 1, H(ABC) = 0, H(B) = 1, slack = 1
    psi = np.zeros(8, dtype=complex)
    psi[0] = psi[7] = 1 / np.sqrt(2)
    ghz = np.outer(psi, psi.conj())
    assert cap.ssa_check(ghz, (2, 2, 2)) == pytest.approx(1.0, abs=1e-10)
    with pytest.raises(DimMismatch):
        cap.ssa_check(np.eye(4) / 4, (2, 2))
