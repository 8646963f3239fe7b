"""Eve's probe families: the channel maps |x> -> |X>, |y> -> |Y>.

Kets are ordered (Bob's qubit, Eve's probe).  ``|x> = |0>`` and ``|y> = |1>``.
"""

import math
from dataclasses import dataclass
from functools import lru_cache

from . import qstate
from .errors import InvalidParams
from .qstate import Ket, inner, tensor

KET_X = qstate.basis(2, 0)
KET_Y = qstate.basis(2, 1)
KET_U = (KET_X + KET_Y) / math.sqrt(2)
KET_V = (KET_X - KET_Y) / math.sqrt(2)

_RANGE_SLACK = 1e-12

PROBE_FORMS = ("isometric", "as-printed")


def _unit_interval(name, value):
    value = float(value)
    if not math.isfinite(value) or value < -_RANGE_SLACK or value > 1 + _RANGE_SLACK:
        raise InvalidParams(f"{name}={value!r} is outside [0, 1]")
    return min(max(value, 0.0), 1.0)


@dataclass(frozen=True)
class OneQubitProbeParams:
    """Single-qubit probe strategy.

    ``b`` and ``d`` are the nonnegative completions ``sqrt(1 - a**2)`` and
    ``sqrt(1 - c**2)``.
    """

    a: float
    c: float
    delta: float

    def __post_init__(self):
        for name in ("a", "c", "delta"):
            object.__setattr__(self, name, _unit_interval(name, getattr(self, name)))

    @property
    def b(self):
        return math.sqrt(1.0 - self.a * self.a)

    @property
    def d(self):
        return math.sqrt(1.0 - self.c * self.c)


@dataclass(frozen=True)
class TwoQubitProbeParams:
    """Two-qubit probe strategy.

    ``alpha2`` and ``beta2`` weight the Bell components of Eve's probe and
    ``s`` is the probability that the probe leaves Bob's qubit unflipped.
    """

    alpha2: float
    beta2: float
    s: float
    delta: float

    def __post_init__(self):
        for name in ("alpha2", "beta2", "s", "delta"):
            object.__setattr__(self, name, _unit_interval(name, getattr(self, name)))


@dataclass(frozen=True, eq=False)
class ProbePair:
    X: Ket
    Y: Ket
    bob_dim: int = 2

    def __post_init__(self):
        if self.X.dim != self.Y.dim or self.X.dim % self.bob_dim:
            raise InvalidParams("X and Y must live on the same Bob x Eve space")

    @property
    def eve_dim(self):
        return self.X.dim // self.bob_dim


@dataclass(frozen=True, eq=False)
class ConjugateSignals:
    u: Ket
    v: Ket
    U: Ket
    V: Ket


@lru_cache(maxsize=None)
def bell_basis():
    """Return ``(Phi+, Phi-, Psi+, Psi-)`` on two qubits."""
    xx, xy = tensor(KET_X, KET_X), tensor(KET_X, KET_Y)
    yx, yy = tensor(KET_Y, KET_X), tensor(KET_Y, KET_Y)
    r = math.sqrt(2)
    return (xx + yy) / r, (xx - yy) / r, (xy + yx) / r, (xy - yx) / r


def build_one_qubit_probe(p):
    a, b, c, d, delta = p.a, p.b, p.c, p.d, p.delta
    spread = math.sqrt(1.0 - delta * delta)
    k00 = tensor(KET_X, KET_X)
    k01 = tensor(KET_X, KET_Y)
    k10 = tensor(KET_Y, KET_X)
    k11 = tensor(KET_Y, KET_Y)
    X = a * k00 + b * k11
    Y = delta * (-b * k00 + a * k11) + spread * (c * k10 + d * k01)
    return ProbePair(X, Y)


def build_two_qubit_probe(p, form="isometric"):
    """Eight-dimensional channel outputs for the two-qubit probe.

    In the ``y``-branch the delta-admixture must be orthogonal to
    ``zeta_x`` for the map to be an isometry.  ``form="isometric"`` uses
    ``-sqrt(1-beta2)|Psi+> - sqrt(beta2)|Psi->``; ``form="as-printed"`` keeps
    ``+sqrt(beta2)|Psi->``, for which
    ``<X|Y> = -2 delta sqrt(s (1-s) beta2 (1-beta2))``.
    """
    if form not in PROBE_FORMS:
        raise InvalidParams(f"unknown probe form {form!r}; expected one of {PROBE_FORMS}")
    al, be, s, delta = p.alpha2, p.beta2, p.s, p.delta
    phi_p, phi_m, psi_p, psi_m = bell_basis()
    sa, sa_c = math.sqrt(al), math.sqrt(1.0 - al)
    sb, sb_c = math.sqrt(be), math.sqrt(1.0 - be)
    spread = math.sqrt(1.0 - delta * delta)

    xi_x = sa * phi_p + sa_c * phi_m
    xi_y = sa * phi_p - sa_c * phi_m
    zeta_x = sb * psi_p - sb_c * psi_m
    zeta_y = sb * psi_p + sb_c * psi_m

    X = math.sqrt(s) * tensor(KET_X, xi_x) + math.sqrt(1 - s) * tensor(KET_Y, zeta_x)
    psi_m_sign = -1.0 if form == "isometric" else 1.0
    eve_after_y = spread * xi_y + delta * (-sb_c * psi_p + psi_m_sign * sb * psi_m)
    eve_after_x = spread * zeta_y + delta * (-sa_c * phi_p + sa * phi_m)
    Y = math.sqrt(s) * tensor(KET_Y, eve_after_y) + math.sqrt(1 - s) * tensor(KET_X, eve_after_x)
    return ProbePair(X, Y)


def conjugate_signals(pp):
    """Conjugate-basis signals and the channel outputs they map to.

    ``U`` and ``V`` have unit norm whenever ``<X|Y> = 0``.
    """
    r = math.sqrt(2)
    return ConjugateSignals(u=KET_U, v=KET_V, U=(pp.X + pp.Y) / r, V=(pp.X - pp.Y) / r)


def eve_conditional_states(pp):
    """Eve's reduced states ``(rho_x, rho_y)`` given Alice sent |x> or |y>."""
    dims = (pp.bob_dim, pp.eve_dim)
    rho_x = qstate.partial_trace(qstate.outer(pp.X), dims, keep=2)
    rho_y = qstate.partial_trace(qstate.outer(pp.Y), dims, keep=2)
    return rho_x, rho_y


def overlap(pp):
    return inner(pp.X, pp.Y)
