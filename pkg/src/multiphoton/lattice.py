"""Resonator network: chain, two boundary resonators and an auxiliary control resonator.

Single-excitation indices run 0..N+2: 0 is the left boundary, 1..N the chain,
N+1 the right boundary and N+2 the auxiliary resonator.  Energies are in the
same units as ``kappa`` (hbar = 1), in a frame rotating at the common
resonator frequency.
"""

from dataclasses import dataclass
import math

import numpy as np

from .errors import DegenerateTap, EvenChainLength, ValidationError, ZeroCoupling

__all__ = [
    "NetworkConfig",
    "CouplingMatrix",
    "ChainSpectrum",
    "ModeCouplings",
    "build_coupling_matrix",
    "chain_spectrum",
    "mode_couplings",
    "zero_mode_index",
    "swap_time",
]


@dataclass(frozen=True)
class NetworkConfig:
    """Physical parameters of the network.

    Args:
        N: number of chain resonators.
        m: chain site (1-based) the auxiliary resonator is attached to.
        kappa: intrachain hopping.
        g0: coupling of the boundary resonators to the chain ends.
        j0: coupling of the auxiliary resonator to site ``m``.
    """

    N: int
    m: int = 1
    kappa: float = 1.0
    g0: float = 0.0
    j0: float = 0.0

    def __post_init__(self):
        if isinstance(self.N, bool) or int(self.N) != self.N or self.N < 1:
            raise ValidationError(f"N must be a positive integer, got {self.N!r}")
        if isinstance(self.m, bool) or int(self.m) != self.m or not 1 <= self.m <= self.N:
            raise ValidationError(f"m must be an integer in [1, {self.N}], got {self.m!r}")
        object.__setattr__(self, "N", int(self.N))
        object.__setattr__(self, "m", int(self.m))
        for name in ("kappa", "g0", "j0"):
            value = float(getattr(self, name))
            if not math.isfinite(value):
                raise ValidationError(f"{name} must be finite, got {value!r}")
            object.__setattr__(self, name, value)
        if self.kappa <= 0:
            raise ValidationError(f"kappa must be positive, got {self.kappa}")
        if self.g0 < 0 or self.j0 < 0:
            raise ValidationError("g0 and j0 must be non-negative")

    @property
    def dim(self):
        return self.N + 3

    def replace(self, **changes):
        fields = dict(N=self.N, m=self.m, kappa=self.kappa, g0=self.g0, j0=self.j0)
        fields.update(changes)
        return NetworkConfig(**fields)


@dataclass(frozen=True)
class CouplingMatrix:
    """Real symmetric single-excitation Hamiltonian of the full network."""

    config: NetworkConfig
    entries: np.ndarray

    @property
    def dim(self):
        return self.entries.shape[0]

    def __array__(self, dtype=None, copy=None):
        return self.entries if dtype is None else self.entries.astype(dtype)


@dataclass(frozen=True)
class ChainSpectrum:
    energies: np.ndarray
    transform: np.ndarray  # transform[i-1, k-1] = sqrt(2/(N+1)) sin(i k pi/(N+1))


@dataclass(frozen=True)
class ModeCouplings:
    g: np.ndarray  # g[k-1] = g_k
    j: np.ndarray  # j[k-1] = J_k
    z: int  # 1-based zero-mode index

    @property
    def g_z(self):
        return float(self.g[self.z - 1])

    @property
    def j_z(self):
        return float(self.j[self.z - 1])


def _frozen(a):
    a.setflags(write=False)
    return a


def build_coupling_matrix(config):
    """Assemble the ``(N+3) x (N+3)`` coupling matrix of ``config``."""
    N = config.N
    a = np.zeros((N + 3, N + 3))
    idx = np.arange(1, N)
    a[idx, idx + 1] = config.kappa
    a[0, 1] = config.g0
    a[N, N + 1] = config.g0
    a[config.m, N + 2] = config.j0
    # mirror the upper triangle so symmetry is exact
    a = a + a.T
    return CouplingMatrix(config=config, entries=_frozen(a))


def _sine_modes(N, site):
    k = np.arange(1, N + 1)
    return np.sqrt(2.0 / (N + 1)) * np.sin(site * k * np.pi / (N + 1))


def chain_spectrum(N, kappa=1.0):
    """Exact eigenvalues and sine-mode eigenvectors of the open tight-binding chain."""
    if N < 1:
        raise ValidationError(f"N must be positive, got {N}")
    if kappa <= 0:
        raise ValidationError(f"kappa must be positive, got {kappa}")
    k = np.arange(1, N + 1)
    energies = 2.0 * kappa * np.cos(k * np.pi / (N + 1))
    if N % 2 == 1:
        # cos(pi/2) is 6e-17 in floating point
        energies[(N + 1) // 2 - 1] = 0.0
    i = np.arange(1, N + 1)[:, None]
    transform = np.sqrt(2.0 / (N + 1)) * np.sin(i * k[None, :] * np.pi / (N + 1))
    return ChainSpectrum(energies=_frozen(energies), transform=_frozen(transform))


def zero_mode_index(N):
    if N % 2 == 0:
        raise EvenChainLength(f"no zero-energy chain mode for even N={N}")
    return (N + 1) // 2


def mode_couplings(config):
    """Couplings g_k, J_k of the boundary and auxiliary resonators to chain mode k."""
    z = zero_mode_index(config.N)
    g = config.g0 * _sine_modes(config.N, 1)
    j = config.j0 * _sine_modes(config.N, config.m)
    if config.m % 2 == 0:
        # sin(m z pi/(N+1)) = sin(m pi/2) vanishes for even m
        j[z - 1] = 0.0
    return ModeCouplings(g=_frozen(g), j=_frozen(j), z=z)


def swap_time(config):
    """Time pi/(sqrt(2) g_z) at which the zero mode swaps the two boundary resonators."""
    couplings = mode_couplings(config)
    if config.g0 == 0:
        raise ZeroCoupling("swap time is infinite for g0 = 0")
    return math.pi / (math.sqrt(2.0) * couplings.g_z)


def require_tap(couplings):
    """Return J_z, raising DegenerateTap when the auxiliary mode is decoupled from the zero mode."""
    j_z = couplings.j_z
    if j_z == 0.0:
        raise DegenerateTap("J_z = 0: the auxiliary resonator does not split the zero mode (need odd m and j0 > 0)")
    return j_z
