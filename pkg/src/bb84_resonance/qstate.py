"""Dense kets and operators over small Hilbert spaces (dimension 2, 4 or 8).

Basis order is the usual Kronecker order: the first tensor factor is the
slowest-varying index.  Throughout the package the first factor is Bob's
qubit and the remaining factors are Eve's probe.
"""

from dataclasses import dataclass

import numpy as np

from .errors import InvalidDimension, NotHermitian

ALLOWED_DIMS = (2, 4, 8)
EXACT_TOL = 1e-12
ITER_TOL = 1e-10


def _frozen(array):
    array = np.array(array, dtype=complex)
    array.setflags(write=False)
    return array


@dataclass(frozen=True, eq=False)
class Ket:
    """State vector in the computational basis."""

    amplitudes: np.ndarray

    def __post_init__(self):
        amps = _frozen(self.amplitudes)
        if amps.ndim != 1 or amps.shape[0] not in ALLOWED_DIMS:
            raise InvalidDimension(f"ket dimension must be one of {ALLOWED_DIMS}, got shape {amps.shape}")
        if not np.isfinite(amps).all():
            raise ValueError("ket amplitudes must be finite")
        object.__setattr__(self, "amplitudes", amps)

    @property
    def dim(self):
        return self.amplitudes.shape[0]

    def norm(self):
        return float(np.linalg.norm(self.amplitudes))

    def __add__(self, other):
        _check_same_dim(self.dim, other.dim)
        return Ket(self.amplitudes + other.amplitudes)

    def __sub__(self, other):
        _check_same_dim(self.dim, other.dim)
        return Ket(self.amplitudes - other.amplitudes)

    def __mul__(self, scalar):
        return Ket(scalar * self.amplitudes)

    __rmul__ = __mul__

    def __truediv__(self, scalar):
        return Ket(self.amplitudes / scalar)

    def __neg__(self):
        return Ket(-self.amplitudes)

    def __repr__(self):
        return f"Ket({np.array2string(self.amplitudes, precision=6)})"


@dataclass(frozen=True, eq=False)
class Operator:
    """Square matrix acting on a ket space."""

    entries: np.ndarray

    def __post_init__(self):
        m = _frozen(self.entries)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise InvalidDimension(f"operator must be square, got shape {m.shape}")
        if not np.isfinite(m).all():
            raise ValueError("operator entries must be finite")
        object.__setattr__(self, "entries", m)

    @property
    def dim(self):
        return self.entries.shape[0]

    def is_hermitian(self, tol=EXACT_TOL):
        return bool(np.max(np.abs(self.entries - self.entries.conj().T), initial=0.0) <= tol)

    def trace(self):
        return complex(np.trace(self.entries))

    def apply(self, ket):
        _check_same_dim(self.dim, ket.dim)
        return Ket(self.entries @ ket.amplitudes)

    def __add__(self, other):
        _check_same_dim(self.dim, other.dim)
        return Operator(self.entries + other.entries)

    def __sub__(self, other):
        _check_same_dim(self.dim, other.dim)
        return Operator(self.entries - other.entries)

    def __mul__(self, scalar):
        return Operator(scalar * self.entries)

    __rmul__ = __mul__

    def __matmul__(self, other):
        _check_same_dim(self.dim, other.dim)
        return Operator(self.entries @ other.entries)

    def __repr__(self):
        return f"Operator({np.array2string(self.entries, precision=6)})"


def _check_same_dim(d1, d2):
    if d1 != d2:
        raise InvalidDimension(f"dimension mismatch: {d1} vs {d2}")


def basis(dim, index):
    amps = np.zeros(dim, dtype=complex)
    amps[index] = 1.0
    return Ket(amps)


def identity(dim):
    return Operator(np.eye(dim, dtype=complex))


def zeros(dim):
    return Operator(np.zeros((dim, dim), dtype=complex))


def tensor(a, b):
    """Kronecker product ``a ⊗ b`` of two kets."""
    if a.dim * b.dim > max(ALLOWED_DIMS):
        raise InvalidDimension(f"product dimension {a.dim * b.dim} exceeds {max(ALLOWED_DIMS)}")
    return Ket(np.outer(a.amplitudes, b.amplitudes).ravel())


def tensor_op(a, b):
    if a.dim * b.dim > max(ALLOWED_DIMS):
        raise InvalidDimension(f"product dimension {a.dim * b.dim} exceeds {max(ALLOWED_DIMS)}")
    da, db = a.dim, b.dim
    block = a.entries[:, None, :, None] * b.entries[None, :, None, :]
    return Operator(block.reshape(da * db, da * db))


def inner(a, b):
    """``<a|b>``, conjugate-linear in ``a``."""
    _check_same_dim(a.dim, b.dim)
    return complex(np.vdot(a.amplitudes, b.amplitudes))


def outer(a, b=None):
    """``|a><b|``; with one argument, the projector ``|a><a|``."""
    b = a if b is None else b
    _check_same_dim(a.dim, b.dim)
    return Operator(np.outer(a.amplitudes, b.amplitudes.conj()))


def expectation(op, ket):
    """``<ket|op|ket>``."""
    _check_same_dim(op.dim, ket.dim)
    return complex(np.vdot(ket.amplitudes, op.entries @ ket.amplitudes))


def expectation_product(a, b, ket):
    """``<ket|(a ⊗ b)|ket>`` without forming the product operator."""
    if a.dim * b.dim != ket.dim:
        raise InvalidDimension(f"operator dims {a.dim}x{b.dim} do not match ket dimension {ket.dim}")
    psi = ket.amplitudes.reshape(a.dim, b.dim)
    return complex(np.sum(psi.conj() * (a.entries @ psi @ b.entries.T)))


def partial_trace(rho, dims, keep):
    """Reduce a bipartite operator to one subsystem.

    Parameters
    ----------
    rho : Operator
        Operator on a ``d1 * d2`` dimensional space.
    dims : tuple of int
        Subsystem dimensions ``(d1, d2)``.
    keep : int
        1 to keep the first subsystem, 2 to keep the second.
    """
    d1, d2 = dims
    if d1 * d2 != rho.dim or d1 < 1 or d2 < 1:
        raise InvalidDimension(f"subsystem dims {dims} incompatible with operator dimension {rho.dim}")
    if keep not in (1, 2):
        raise InvalidDimension(f"keep must be 1 or 2, got {keep}")
    r = rho.entries.reshape(d1, d2, d1, d2)
    if keep == 1:
        return Operator(np.einsum("ijkj->ik", r))
    return Operator(np.einsum("ijik->jk", r))


def eigh(h, tol=EXACT_TOL):
    """Eigen-decomposition of a Hermitian operator.

    Returns a list of ``(eigenvalue, eigenvector)`` pairs with eigenvalues in
    descending order.  Within a degenerate eigenspace any orthonormal basis
    may be returned.
    """
    if not h.is_hermitian(tol):
        raise NotHermitian("eigh requires a Hermitian operator")
    # symmetrize so roundoff in the input cannot leak into the spectrum
    m = 0.5 * (h.entries + h.entries.conj().T)
    values, vectors = np.linalg.eigh(m)
    order = np.argsort(values)[::-1]
    return [(float(values[i]), Ket(vectors[:, i])) for i in order]
