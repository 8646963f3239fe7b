import math

import numpy as np
import pytest

from bb84_resonance import qstate
from bb84_resonance.errors import InvalidParams
from bb84_resonance.probes import (
    KET_X,
    KET_Y,
    OneQubitProbeParams,
    TwoQubitProbeParams,
    bell_basis,
    build_one_qubit_probe,
    build_two_qubit_probe,
    conjugate_signals,
)
from bb84_resonance.qstate import inner, tensor

R2 = math.sqrt(2)
K00, K01, K10, K11 = (qstate.basis(4, i) for i in range(4))


def close(k1, k2, tol=1e-12):
    return np.max(np.abs(k1.amplitudes - k2.amplitudes)) <= tol


def test_one_qubit_substitution():
    pp = build_one_qubit_probe(OneQubitProbeParams(1, 0, 0))
    assert close(pp.X, K00)
    assert close(pp.Y, K01)


def test_one_qubit_bell_states():
    h = 1 / R2
    pp = build_one_qubit_probe(OneQubitProbeParams(h, h, 0))
    phi_p, _, psi_p, _ = bell_basis()
    assert close(pp.X, phi_p)
    assert close(pp.Y, psi_p)


def test_one_qubit_orthonormal_example():
    pp = build_one_qubit_probe(OneQubitProbeParams(0.5, 0.6, 0.05))
    assert abs(inner(pp.X, pp.Y)) < 1e-12
    assert pp.X.norm() == pytest.approx(1, abs=1e-12)
    assert pp.Y.norm() == pytest.approx(1, abs=1e-12)


def test_one_qubit_invariants_random(rng):
    for a, c, d in rng.random((1000, 3)):
        pp = build_one_qubit_probe(OneQubitProbeParams(a, c, d))
        assert abs(inner(pp.X, pp.Y)) < 1e-12
        assert abs(pp.X.norm() - 1) < 1e-12 and abs(pp.Y.norm() - 1) < 1e-12


def test_one_qubit_delta_zero_has_no_diagonal_y_amplitudes(rng):
    for a, c in rng.random((100, 2)):
        y = build_one_qubit_probe(OneQubitProbeParams(a, c, 0)).Y.amplitudes
        assert y[0] == 0 and y[3] == 0


@pytest.mark.parametrize("bad", [(-0.1, 0.5, 0.1), (0.5, 1.2, 0.1), (0.5, 0.5, 1.5), (float("nan"), 0, 0)])
def test_one_qubit_rejects_out_of_range(bad):
    with pytest.raises(InvalidParams):
        OneQubitProbeParams(*bad)


def test_two_qubit_orthogonality_random(rng):
    for al, be, s, d in rng.random((1000, 4)):
        pp = build_two_qubit_probe(TwoQubitProbeParams(al, be, s, d))
        assert pp.X.dim == 8 and pp.eve_dim == 4
        assert abs(inner(pp.X, pp.Y)) < 1e-12
        assert abs(pp.X.norm() - 1) < 1e-12 and abs(pp.Y.norm() - 1) < 1e-12


def test_two_qubit_substitution():
    phi_p = bell_basis()[0]
    pp = build_two_qubit_probe(TwoQubitProbeParams(1, 1, 1, 0))
    assert close(pp.X, tensor(KET_X, phi_p))
    assert close(pp.Y, tensor(KET_Y, phi_p))


def test_two_qubit_resonance_point_norms():
    pp = build_two_qubit_probe(TwoQubitProbeParams(0.9, 0.9, 0.5, 0.05))
    assert abs(pp.X.norm() - 1) < 1e-12 and abs(pp.Y.norm() - 1) < 1e-12


def test_two_qubit_rejects_out_of_range():
    with pytest.raises(InvalidParams):
        TwoQubitProbeParams(0.9, 1.1, 0.5, 0.05)


def test_bell_basis():
    phi_p, phi_m, psi_p, psi_m = bell_basis()
    np.testing.assert_allclose(phi_p.amplitudes, np.array([1, 0, 0, 1]) / R2, atol=1e-15)
    gram = np.array([[inner(a, b) for b in bell_basis()] for a in bell_basis()])
    np.testing.assert_allclose(gram, np.eye(4), atol=1e-15)
    reduced = qstate.partial_trace(qstate.outer(psi_m), (2, 2), 1)
    np.testing.assert_allclose(reduced.entries, np.eye(2) / 2, atol=1e-15)


def test_conjugate_signals_factorize():
    sig = conjugate_signals(build_one_qubit_probe(OneQubitProbeParams(1, 0, 0)))
    plus = (KET_X + KET_Y) / R2
    assert close(sig.U, tensor(KET_X, plus))
    assert close(sig.u, plus)
    assert close(sig.v, (KET_X - KET_Y) / R2)


def test_conjugate_signals_orthonormal(rng):
    for a, c, d in rng.random((200, 3)):
        sig = conjugate_signals(build_one_qubit_probe(OneQubitProbeParams(a, c, d)))
        assert abs(inner(sig.U, sig.U) - 1) < 1e-12
        assert abs(inner(sig.V, sig.V) - 1) < 1e-12
        assert abs(inner(sig.U, sig.V)) < 1e-12
    for al, be, s, d in rng.random((200, 4)):
        sig = conjugate_signals(build_two_qubit_probe(TwoQubitProbeParams(al, be, s, d)))
        assert abs(inner(sig.U, sig.U) - 1) < 1e-12
        assert abs(inner(sig.U, sig.V)) < 1e-12


def test_two_qubit_as_printed_overlap_matches_hand_expansion(rng):
    # only the y-branch admixture fails to cancel against zeta_x
    for al, be, s, d in rng.random((200, 4)):
        pp = build_two_qubit_probe(TwoQubitProbeParams(al, be, s, d), form="as-printed")
        expected = -2 * d * math.sqrt(s * (1 - s) * be * (1 - be))
        assert inner(pp.X, pp.Y) == pytest.approx(expected, abs=1e-12)
        assert abs(pp.Y.norm() - 1) < 1e-12


def test_two_qubit_forms_agree_at_delta_zero(rng):
    for al, be, s in rng.random((50, 3)):
        p = TwoQubitProbeParams(al, be, s, 0.0)
        assert close(build_two_qubit_probe(p).Y, build_two_qubit_probe(p, form="as-printed").Y)


def test_two_qubit_unknown_form():
    with pytest.raises(InvalidParams):
        build_two_qubit_probe(TwoQubitProbeParams(0.9, 0.9, 0.5, 0.05), form="other")
