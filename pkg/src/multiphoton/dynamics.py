"""Single-excitation propagators of the full network and of the few-mode effective models."""

from dataclasses import dataclass
import math

import numpy as np

from .errors import DegenerateTap, EigFailure, ValidationError

__all__ = [
    "Propagator",
    "Evolution",
    "EffectiveAmplitudes",
    "propagator",
    "effective_boundary_amplitudes",
    "effective_hamiltonian_uncoupled",
    "effective_hamiltonian_coupled",
    "effective_propagator_uncoupled",
    "effective_propagator_coupled",
]


@dataclass(frozen=True)
class Propagator:
    """M = exp(-iAt).  Row 0 holds the amplitudes of the left boundary photon on every mode."""

    time: float
    matrix: np.ndarray

    @property
    def dim(self):
        return self.matrix.shape[0]

    @property
    def N(self):
        return self.dim - 3

    def __array__(self, dtype=None, copy=None):
        return self.matrix if dtype is None else self.matrix.astype(dtype)


class Evolution:
    """Cached eigendecomposition of a real symmetric generator.

    ``Evolution(A).at(t)`` evaluates exp(-iAt) for any number of times at the
    cost of one ``eigh``.
    """

    def __init__(self, A):
        a = np.asarray(A, dtype=float)
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise ValidationError(f"expected a square matrix, got shape {a.shape}")
        try:
            w, v = np.linalg.eigh(a)
        except np.linalg.LinAlgError as exc:
            raise EigFailure(str(exc)) from exc
        if not (np.all(np.isfinite(w)) and np.all(np.isfinite(v))):
            raise EigFailure("non-finite eigendecomposition")
        w.setflags(write=False)
        v.setflags(write=False)
        self.eigenvalues = w
        self.eigenvectors = v

    def at(self, t):
        t = float(t)
        v = self.eigenvectors
        m = (v * np.exp(-1j * self.eigenvalues * t)) @ v.T
        if t == 0.0:
            # v v^T is the identity only to rounding
            m = np.eye(v.shape[0], dtype=complex)
        m.setflags(write=False)
        return Propagator(time=t, matrix=m)


def propagator(A, t):
    """Exact propagator exp(-iAt) of the coupling matrix ``A`` at time ``t``."""
    return Evolution(A).at(t)


@dataclass(frozen=True)
class EffectiveAmplitudes:
    """Heisenberg amplitudes of c_0^dag(t) in the three-mode swap model."""

    a0: complex
    aN1: complex
    az: complex


def effective_boundary_amplitudes(g_z, z, t):
    """Closed-form Heisenberg amplitudes of the left boundary creation operator.

    The coefficients are on the left boundary, the right boundary and the
    zero mode respectively.
    """
    if g_z <= 0:
        raise ValidationError("g_z must be positive")
    theta = math.sqrt(2.0) * g_z * t
    half = (math.cos(theta) - 1.0) / 2.0
    sign = -1.0 if (z - 1) % 2 else 1.0
    return EffectiveAmplitudes(
        a0=complex(1.0 + half),
        aN1=complex(sign * half),
        az=1j * math.sin(theta) / math.sqrt(2.0),
    )


def effective_hamiltonian_uncoupled(g_z, z):
    """3x3 swap-channel Hamiltonian on (left boundary, zero mode, right boundary)."""
    sign = -1.0 if (z - 1) % 2 else 1.0
    return np.array(
        [
            [0.0, g_z, 0.0],
            [g_z, 0.0, sign * g_z],
            [0.0, sign * g_z, 0.0],
        ]
    )


def effective_hamiltonian_coupled(g_z, J_z, z):
    """4x4 Hamiltonian on (left boundary, zero mode, right boundary, auxiliary)."""
    h = np.zeros((4, 4))
    h[:3, :3] = effective_hamiltonian_uncoupled(g_z, z)
    h[1, 3] = h[3, 1] = J_z
    return h


def effective_propagator_uncoupled(g_z, z, t):
    if g_z <= 0:
        raise ValidationError("g_z must be positive")
    return Evolution(effective_hamiltonian_uncoupled(g_z, z)).at(t).matrix


def effective_propagator_coupled(g_z, J_z, z, t):
    if g_z <= 0:
        raise ValidationError("g_z must be positive")
    if J_z == 0:
        raise DegenerateTap("J_z = 0 leaves the four-mode model degenerate")
    return Evolution(effective_hamiltonian_coupled(g_z, J_z, z)).at(t).matrix
