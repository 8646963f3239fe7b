"""Brute-force reference: full joint Born statistics of (Alice, Bob, Eve).

Only the linear-algebra layer is used here.  Signals, conjugate states and
all information functionals are rebuilt from the joint table, so the
numbers can be compared against the closed forms and the generic pipeline
without sharing their code.
"""

import math
from dataclasses import dataclass

import numpy as np

from . import qstate
from .qstate import Ket

_R2 = math.sqrt(2.0)


@dataclass(frozen=True, eq=False)
class JointTable:
    """``P[s, b, k]``: Alice sends signal ``s``, Bob reads ``b``, Eve gets outcome ``k``.

    Index 0 is ``x`` (or ``u``), index 1 is ``y`` (or ``v``), for both Alice
    and Bob.
    """

    basis: str
    P: np.ndarray


def _bob_basis(basis):
    zero, one = qstate.basis(2, 0), qstate.basis(2, 1)
    if basis == "xy":
        return zero, one
    if basis == "uv":
        return (zero + one) / _R2, (zero - one) / _R2
    raise ValueError(f"bob basis must be 'xy' or 'uv', got {basis!r}")


def joint_statistics(pp, m, bob_basis="xy"):
    """Joint distribution with equiprobable signals in the chosen basis."""
    X, Y = pp.X, pp.Y
    if bob_basis == "xy":
        signals = (X, Y)
    else:
        signals = (Ket((X.amplitudes + Y.amplitudes) / _R2), Ket((X.amplitudes - Y.amplitudes) / _R2))
    bob = _bob_basis(bob_basis)
    P = np.zeros((2, 2, len(m.elements)))
    for s, state in enumerate(signals):
        for b, bob_ket in enumerate(bob):
            for k, e in enumerate(m.elements):
                op = qstate.tensor_op(qstate.outer(bob_ket), e)
                P[s, b, k] = 0.5 * qstate.expectation(op, state).real
    return JointTable(bob_basis, P)


def outcome_probabilities(table):
    return table.P.sum(axis=(0, 1))


def gains(table):
    """Per-outcome gain ``|P(x|k) - P(y|k)|``; zero for unobserved outcomes."""
    alice_eve = table.P.sum(axis=1)
    q = alice_eve.sum(axis=0)
    out = np.zeros_like(q)
    seen = q > 1e-14
    out[seen] = np.abs(alice_eve[0, seen] - alice_eve[1, seen]) / q[seen]
    return out


def mutual_information(table):
    """Shannon information between Alice's signal and Eve's outcome, in bits."""
    joint = table.P.sum(axis=1)
    ps = joint.sum(axis=1, keepdims=True)
    pk = joint.sum(axis=0, keepdims=True)
    total = 0.0
    for s in range(joint.shape[0]):
        for k in range(joint.shape[1]):
            if joint[s, k] > 1e-300:
                total += joint[s, k] * math.log2(joint[s, k] / (ps[s, 0] * pk[0, k]))
    return total


def conditional_error_rates(table):
    """``(d_first, d_second)``: P(Bob wrong | signal, Eve outcome) for each signal."""
    rates = []
    for s in range(2):
        given = table.P[s].sum(axis=0)
        wrong = table.P[s, 1 - s]
        with np.errstate(divide="ignore", invalid="ignore"):
            rates.append(np.where(given > 0, wrong / given, np.nan))
    return tuple(rates)


def disturbance(pp, m, pu=0.5, pv=0.5):
    """``(Du, Dv, D)`` weighting the conditional errors by Eve's x/y-basis outcome probabilities."""
    q = outcome_probabilities(joint_statistics(pp, m, "xy"))
    d_u, d_v = conditional_error_rates(joint_statistics(pp, m, "uv"))
    seen = q > 1e-14
    du = float(np.sum(q[seen] * d_u[seen]))
    dv = float(np.sum(q[seen] * d_v[seen]))
    return du, dv, pu * du + pv * dv
