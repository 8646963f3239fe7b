"""Eve's measurement on her probe after the basis announcement.

Three constructions are provided:

``closed_form_povm``
    The analytic two-outcome measurement for the single-qubit probe.
``helstrom_povm``
    Binary minimum-error measurement: project onto the positive part of
    ``M = q0 * rho0 - q1 * rho1``.
``eigenbasis_povm``
    Projective measurement of the observable ``M`` itself, one outcome per
    distinct eigenvalue.  On a qubit probe it coincides with the closed form;
    on larger probes it keeps the rank-1 structure instead of merging
    eigenvectors of equal sign.

Every outcome carries the guess it supports (0 for Alice's ``|x>``, 1 for
``|y>``) so reports can be coarse-grained consistently.
"""

import math
from dataclasses import dataclass

import numpy as np

from . import qstate
from .errors import DegenerateAngle, InvalidState
from .probes import eve_conditional_states
from .qstate import EXACT_TOL, Operator

ANGLE_TOL = 1e-14
# eigenvalues of M at or below this count as zero and go to the "y" side
SIGN_TOL = 1e-13
# eigenvalues closer than this are merged into one spectral projector
MERGE_TOL = 1e-10

MEASUREMENT_KINDS = ("eigenbasis", "helstrom")


@dataclass(frozen=True)
class MeasAngle:
    alpha_meas: float
    beta_meas: float
    cos_phi: float
    sin_phi: float
    sgn: int


@dataclass(frozen=True, eq=False)
class Povm:
    elements: tuple
    guesses: tuple
    kind: str = "custom"

    def __post_init__(self):
        elements = tuple(self.elements)
        guesses = tuple(int(g) for g in self.guesses)
        if not elements or len(elements) != len(guesses):
            raise InvalidState("a POVM needs one guess label per element")
        dim = elements[0].dim
        total = np.zeros((dim, dim), dtype=complex)
        for e in elements:
            if e.dim != dim or not e.is_hermitian(EXACT_TOL):
                raise InvalidState("POVM elements must be Hermitian operators of equal dimension")
            if np.linalg.eigvalsh(e.entries)[0] < -EXACT_TOL:
                raise InvalidState("POVM elements must be positive semidefinite")
            total += e.entries
        if np.max(np.abs(total - np.eye(dim))) > EXACT_TOL:
            raise InvalidState("POVM elements must sum to the identity")
        object.__setattr__(self, "elements", elements)
        object.__setattr__(self, "guesses", guesses)

    @property
    def dim(self):
        return self.elements[0].dim

    def __len__(self):
        return len(self.elements)


def sign(x):
    return 1 if x >= 0 else -1


def meas_angle(p):
    a, b, c, d, delta = p.a, p.b, p.c, p.d, p.delta
    cross = a * c - b * d
    alpha_meas = (a * a - c * c) - delta * delta * (b * b - c * c)
    beta_meas = delta * math.sqrt(1.0 - delta * delta) * cross
    radius = math.hypot(alpha_meas, beta_meas)
    if radius <= ANGLE_TOL:
        raise DegenerateAngle(f"measurement angle undefined at a={a}, c={c}, delta={delta}")
    cos_phi = alpha_meas / radius
    sin_phi = math.sqrt(max(0.0, 1.0 - cos_phi * cos_phi))
    return MeasAngle(alpha_meas, beta_meas, cos_phi, sin_phi, sign(cross))


def closed_form_povm(p):
    """Eve's optimal qubit measurement ``{|E0><E0|, |E1><E1|}``."""
    ang = meas_angle(p)
    plus = math.sqrt((1.0 + ang.cos_phi) / 2.0)
    minus = math.sqrt((1.0 - ang.cos_phi) / 2.0)
    e0 = qstate.Ket([-ang.sgn * plus, minus])
    e1 = qstate.Ket([minus, ang.sgn * plus])
    return Povm((qstate.outer(e0), qstate.outer(e1)), (0, 1), kind="closed-form")


def _check_density(rho, name):
    if not rho.is_hermitian(EXACT_TOL):
        raise InvalidState(f"{name} is not Hermitian")
    if abs(rho.trace() - 1.0) > 1e-10:
        raise InvalidState(f"{name} does not have unit trace")
    if np.linalg.eigvalsh(rho.entries)[0] < -1e-10:
        raise InvalidState(f"{name} is not positive semidefinite")


def _helstrom_operator(rho0, rho1, q0prior, q1prior):
    _check_density(rho0, "rho0")
    _check_density(rho1, "rho1")
    if rho0.dim != rho1.dim:
        raise InvalidState("rho0 and rho1 act on different spaces")
    if q0prior < 0 or q1prior < 0 or abs(q0prior + q1prior - 1.0) > EXACT_TOL:
        raise InvalidState("priors must be nonnegative and sum to one")
    return q0prior * rho0 - q1prior * rho1


def helstrom_povm(rho0, rho1, q0prior=0.5, q1prior=0.5):
    m = _helstrom_operator(rho0, rho1, q0prior, q1prior)
    dim = m.dim
    positive = qstate.zeros(dim)
    for value, vec in qstate.eigh(m):
        if value > SIGN_TOL:
            positive = positive + qstate.outer(vec)
    rest = qstate.identity(dim) - positive
    return Povm((positive, rest), (0, 1), kind="helstrom")


def eigenbasis_povm(rho0, rho1, q0prior=0.5, q1prior=0.5):
    """Spectral measurement of ``M = q0 rho0 - q1 rho1``.

    Outcomes are ordered by descending eigenvalue; eigenvalues that agree to
    within ``MERGE_TOL`` share one projector, so the result does not depend on
    the basis chosen inside a degenerate eigenspace.
    """
    m = _helstrom_operator(rho0, rho1, q0prior, q1prior)
    groups = []
    for value, vec in qstate.eigh(m):
        if groups and groups[-1][0] - value <= MERGE_TOL:
            groups[-1][1].append(vec)
        else:
            groups.append([value, [vec]])
    elements, guesses = [], []
    for value, vecs in groups:
        proj = qstate.zeros(m.dim)
        for vec in vecs:
            proj = proj + qstate.outer(vec)
        elements.append(proj)
        guesses.append(0 if value > SIGN_TOL else 1)
    return Povm(tuple(elements), tuple(guesses), kind="eigenbasis")


def canonical_povm(dim):
    """Computational-basis measurement, used where no informative angle exists."""
    elements = tuple(qstate.outer(qstate.basis(dim, i)) for i in range(dim))
    guesses = tuple(0 if i < dim // 2 else 1 for i in range(dim))
    return Povm(elements, guesses, kind="canonical")


def probe_povm(pp, kind="eigenbasis"):
    """Build Eve's measurement from the probe's conditional states (equal priors)."""
    rho_x, rho_y = eve_conditional_states(pp)
    if kind == "eigenbasis":
        return eigenbasis_povm(rho_x, rho_y)
    if kind == "helstrom":
        return helstrom_povm(rho_x, rho_y)
    raise ValueError(f"unknown measurement kind {kind!r}; expected one of {MEASUREMENT_KINDS}")


def distinguishability(pp):
    """Largest |eigenvalue| of ``(rho_x - rho_y) / 2``; zero when Eve learns nothing."""
    rho_x, rho_y = eve_conditional_states(pp)
    diff = 0.5 * (rho_x.entries - rho_y.entries)
    return float(np.max(np.abs(np.linalg.eigvalsh(0.5 * (diff + diff.conj().T)))))
