"""Eve's information gain, Alice-Eve mutual information and Bob's disturbance.

Outcome probabilities ``q`` are the Born probabilities of Eve's outcomes
averaged over Alice's two x/y-basis signals.  The same ``q`` weight the
conditional errors when averaging into the per-signal disturbances.
"""

import math
from dataclasses import dataclass

import numpy as np

from . import qstate
from .errors import DegenerateAngle, DegenerateConditioning, InvalidParams
from .measurement import ANGLE_TOL, canonical_povm, closed_form_povm, distinguishability, meas_angle, probe_povm
from .probes import build_one_qubit_probe, conjugate_signals, eve_conditional_states

PROB_TOL = 1e-14
COND_TOL = 1e-13
_LN2 = math.log(2.0)
_IDENTITY2 = qstate.identity(2)


@dataclass(frozen=True)
class GainReport:
    q: tuple
    Glambda: tuple
    G: float
    IAE: float
    guesses: tuple = (0, 1)
    degenerate: bool = False
    measurement: str = "closed-form"

    @property
    def guess_probabilities(self):
        """Probability that Eve's outcome points to ``|x>`` and to ``|y>``."""
        qx = sum(q for q, g in zip(self.q, self.guesses) if g == 0)
        qy = sum(q for q, g in zip(self.q, self.guesses) if g != 0)
        return qx, qy


@dataclass(frozen=True)
class DisturbanceReport:
    dU: tuple
    dV: tuple
    Du: float
    Dv: float
    pu: float
    pv: float
    D: float


def phi(z):
    """``(1+z) log2(1+z) + (1-z) log2(1-z)``, with ``0 log 0 = 0``."""
    z = float(z)
    if not (-1e-12 <= z <= 1 + 1e-12):
        raise InvalidParams(f"phi is defined on [0, 1], got {z!r}")
    z = min(max(z, 0.0), 1.0)
    up = (1.0 + z) * math.log1p(z)
    down = (1.0 - z) * math.log1p(-z) if z < 1.0 else 0.0
    return (up + down) / _LN2


def binary_entropy(p):
    if p <= 0.0 or p >= 1.0:
        return 0.0
    return -(p * math.log2(p) + (1.0 - p) * math.log2(1.0 - p))


def optimal_bound(D):
    """Largest Alice-Eve mutual information compatible with disturbance ``D``."""
    D = float(D)
    if not (0.0 <= D <= 0.5):
        raise InvalidParams(f"disturbance must lie in [0, 1/2], got {D!r}")
    return 0.5 * phi(min(1.0, 2.0 * math.sqrt(D * (1.0 - D))))


def closed_form_terms(a, b, c, d, delta, cos_phi, sin_phi):
    """Outcome probabilities and per-outcome gains of the qubit measurement.

    Works elementwise on numpy arrays as well as on floats.  Returns
    ``(q0, q1, G0, G1)``; a gain is set to zero where its outcome has zero
    probability.
    """
    spread = np.sqrt(1.0 - delta * delta)
    cross = np.abs(a * c - b * d)
    shift = 0.25 * (1.0 - delta * delta) * (a * a - b * b + c * c - d * d) * cos_phi
    tilt = 0.5 * delta * spread * cross * sin_phi
    q0 = 0.5 + shift - tilt
    q1 = 0.5 - shift + tilt
    numer = np.abs(
        ((a * a - b * b - c * c + d * d) + delta * delta * (a * a - b * b + c * c - d * d)) * cos_phi
        + 2.0 * delta * spread * cross * sin_phi
    )
    with np.errstate(divide="ignore", invalid="ignore"):
        g0 = np.where(q0 > PROB_TOL, numer / (4.0 * q0), 0.0)
        g1 = np.where(q1 > PROB_TOL, numer / (4.0 * q1), 0.0)
    return q0, q1, g0, g1


def _clip_unit(x):
    # guard phi's domain against last-bit overshoot
    return min(max(float(x), 0.0), 1.0)


def gain_closed_form(p):
    """Closed-form gain report for the single-qubit probe.

    When the measurement angle is undefined Eve's conditional states
    coincide; the report then describes the computational-basis measurement,
    carries zero gain and is flagged degenerate.
    """
    try:
        ang = meas_angle(p)
        cos_phi, sin_phi, degenerate = ang.cos_phi, ang.sin_phi, False
    except DegenerateAngle:
        cos_phi, sin_phi, degenerate = 1.0, 0.0, True
    q0, q1, g0, g1 = closed_form_terms(p.a, p.b, p.c, p.d, p.delta, cos_phi, sin_phi)
    q0, q1, g0, g1 = float(q0), float(q1), float(g0), float(g1)
    if degenerate:
        return GainReport((q0, q1), (0.0, 0.0), 0.0, 0.0, (0, 1), True, "canonical")
    G = q0 * g0 + q1 * g1
    iae = 0.5 * (q0 * phi(_clip_unit(g0)) + q1 * phi(_clip_unit(g1)))
    return GainReport((q0, q1), (g0, g1), G, iae)


def gain_generic(pp, m):
    """Gain report from Born probabilities of Eve's outcomes on her reduced states."""
    rho_x, rho_y = eve_conditional_states(pp)
    if m.dim != rho_x.dim:
        raise InvalidParams(f"POVM acts on dimension {m.dim}, probe has {rho_x.dim}")
    qs, gs = [], []
    for e in m.elements:
        px = 0.5 * (rho_x @ e).trace().real
        py = 0.5 * (rho_y @ e).trace().real
        q = px + py
        qs.append(q)
        gs.append(abs(px - py) / q if q > PROB_TOL else 0.0)
    G = sum(q * g for q, g in zip(qs, gs))
    iae = 0.5 * sum(q * phi(_clip_unit(g)) for q, g in zip(qs, gs) if q > PROB_TOL)
    return GainReport(tuple(qs), tuple(gs), G, iae, m.guesses, False, m.kind)


def _conditional_error(big, small, e, outcome, label):
    denom = qstate.expectation_product(_IDENTITY2, e, big).real
    if denom < COND_TOL:
        raise DegenerateConditioning(outcome, label, denom)
    numer = qstate.expectation_product(qstate.outer(small), e, big).real
    return 1.0 - numer / denom


def conditional_errors(pp, m):
    """Bob's error probability given Alice sent ``|u>`` (or ``|v>``) and Eve saw each outcome."""
    sig = conjugate_signals(pp)
    d_u = tuple(_conditional_error(sig.U, sig.u, e, k, "u") for k, e in enumerate(m.elements))
    d_v = tuple(_conditional_error(sig.V, sig.v, e, k, "v") for k, e in enumerate(m.elements))
    return d_u, d_v


def disturbance(pp, m, gr, pu=0.5, pv=0.5):
    """Average Bob's conditional errors with Eve's outcome probabilities.

    Outcomes that Eve never observes (``q < 1e-14``) carry zero weight; a
    vanishing conditioning probability on them is tolerated and reported as
    a zero conditional error.  Anywhere else it propagates.
    """
    if pu < 0 or pv < 0 or abs(pu + pv - 1.0) > 1e-12:
        raise InvalidParams("signal priors must be nonnegative and sum to one")
    if len(gr.q) != len(m.elements):
        raise InvalidParams("gain report and POVM disagree on the number of outcomes")
    sig = conjugate_signals(pp)
    d_u, d_v = [], []
    for k, (e, q) in enumerate(zip(m.elements, gr.q)):
        for big, small, label, out in ((sig.U, sig.u, "u", d_u), (sig.V, sig.v, "v", d_v)):
            try:
                out.append(_conditional_error(big, small, e, k, label))
            except DegenerateConditioning:
                if q > PROB_TOL:
                    raise
                out.append(0.0)
    Du = sum(q * d for q, d in zip(gr.q, d_u))
    Dv = sum(q * d for q, d in zip(gr.q, d_v))
    return DisturbanceReport(tuple(d_u), tuple(d_v), Du, Dv, pu, pv, pu * Du + pv * Dv)


def disturbance_delta0(p):
    if p.delta != 0:
        raise InvalidParams("the closed-form disturbance only holds for delta = 0")
    return 0.5 * (1.0 - p.a * p.c - p.b * p.d)


def evaluate_one_qubit(p, pu=0.5, pv=0.5):
    """Gain and disturbance for a single-qubit probe with Eve's closed-form measurement.

    At a degenerate angle Eve's states coincide; the canonical basis
    measurement is used and the gain report is flagged degenerate.
    """
    pp = build_one_qubit_probe(p)
    gr = gain_closed_form(p)
    m = canonical_povm(2) if gr.degenerate else closed_form_povm(p)
    return gr, disturbance(pp, m, gr, pu, pv)


def evaluate_probe(pp, kind="eigenbasis", pu=0.5, pv=0.5):
    """Gain and disturbance for an arbitrary probe, measured by ``probe_povm(pp, kind)``.

    Returns ``(gain_report, disturbance_report, povm)``.
    """
    m = probe_povm(pp, kind)
    gr = gain_generic(pp, m)
    if distinguishability(pp) <= ANGLE_TOL:
        gr = GainReport(gr.q, tuple(0.0 for _ in gr.q), 0.0, 0.0, gr.guesses, True, gr.measurement)
    return gr, disturbance(pp, m, gr, pu, pv), m
