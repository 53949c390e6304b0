"""Transmission and reflection fidelities of photonic states injected into the left resonator.

For a left-boundary Fock state |n>, evolution leaves resonator ``mu`` entangled
with a collective mode of all other resonators,

    |Phi(t)> = sum_r f_mu(r, n) |r>_collective |n - r>_mu,

with f_mu(r, n) = sqrt(C(n, r)) M[0, mu]**(n - r) * delta_mu**(r / 2) and
delta_mu = 1 - |M[0, mu]|**2.  All fidelities follow from this table.
"""

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
import math
from typing import NamedTuple

import numpy as np

from .dynamics import Propagator
from .errors import ConsistencyError, EvenChainLength, ValidationError

__all__ = [
    "MAX_PHOTONS",
    "SuperpositionState",
    "FCoefficients",
    "TransportReport",
    "HaarEstimate",
    "f_coefficients",
    "fock_fidelities",
    "reduced_density_matrix",
    "superposition_fidelities",
    "average_fidelities",
    "haar_states",
    "haar_average_oracle",
]

MAX_PHOTONS = 62
IMAG_TOL = 1e-10
CHUNK = 8192


@dataclass(frozen=True)
class SuperpositionState:
    """Pure state sum_n amplitudes[n] |n> of one resonator, truncated at d = len(amplitudes)."""

    amplitudes: np.ndarray

    def __post_init__(self):
        a = np.array(self.amplitudes, dtype=complex).reshape(-1)
        if a.size < 1:
            raise ValidationError("a superposition needs at least one amplitude")
        if a.size - 1 > MAX_PHOTONS:
            raise ValidationError(f"photon numbers above {MAX_PHOTONS} are not supported")
        norm = float(np.vdot(a, a).real)
        if abs(norm - 1.0) > 1e-12:
            raise ValidationError(f"amplitudes must be normalized, got norm^2 = {norm!r}")
        a.setflags(write=False)
        object.__setattr__(self, "amplitudes", a)

    @classmethod
    def normalized(cls, amplitudes):
        a = np.asarray(amplitudes, dtype=complex)
        return cls(a / np.linalg.norm(a))

    @classmethod
    def fock(cls, n, d=None):
        d = n + 1 if d is None else d
        a = np.zeros(d, dtype=complex)
        a[n] = 1.0
        return cls(a)

    @property
    def d(self):
        return self.amplitudes.size


@dataclass(frozen=True)
class FCoefficients:
    mu: int
    values: np.ndarray  # values[r, n] = f_mu(r, n); zero for r > n
    delta_mu: float

    @property
    def n_max(self):
        return self.values.shape[1] - 1


@dataclass(frozen=True)
class TransportReport:
    F_t: float
    F_r: float
    input: str
    time: float

    @property
    def sigma_t(self):
        return 1.0 - self.F_t

    @property
    def sigma_r(self):
        return 1.0 - self.F_r


class HaarEstimate(NamedTuple):
    mean_F_t: float
    mean_F_r: float
    stderr_F_t: float
    stderr_F_r: float


def _matrix(M):
    return M.matrix if isinstance(M, Propagator) else np.asarray(M)


def _time(M):
    return M.time if isinstance(M, Propagator) else float("nan")


def _zero_mode(M, z):
    if z is not None:
        return int(z)
    N = _matrix(M).shape[0] - 3
    if N % 2 == 0:
        raise EvenChainLength(f"phase correction needs the zero mode, absent for even N={N}")
    return (N + 1) // 2


def _clamp(x):
    return float(min(1.0, max(0.0, x)))


def _binomial_roots(n_max):
    # exact integer binomials, converted once
    roots = np.zeros((n_max + 1, n_max + 1))
    for n in range(n_max + 1):
        for r in range(n + 1):
            roots[r, n] = math.sqrt(math.comb(n, r))
    return roots


def f_coefficients(M, mu, n_max):
    """Table of f_mu(r, n) for 0 <= r <= n <= n_max."""
    m = _matrix(M)
    if not 0 <= mu < m.shape[0]:
        raise ValidationError(f"mode index {mu} outside 0..{m.shape[0] - 1}")
    if not 0 <= n_max <= MAX_PHOTONS:
        raise ValidationError(f"n_max must lie in [0, {MAX_PHOTONS}], got {n_max}")
    amp = complex(m[0, mu])
    # roundoff can push 1 - |amp|^2 slightly below zero
    delta = _clamp(1.0 - abs(amp) ** 2)
    values = np.zeros((n_max + 1, n_max + 1), dtype=complex)
    roots = _binomial_roots(n_max)
    for n in range(n_max + 1):
        for r in range(n + 1):
            values[r, n] = roots[r, n] * amp ** (n - r) * delta ** (r / 2)
    values.setflags(write=False)
    return FCoefficients(mu=mu, values=values, delta_mu=delta)


def fock_fidelities(M, n):
    """Fidelities for a Fock state |n> in the left resonator.

    F_t = |M[0, N+1]|**(2n) and F_r = |M[0, 0]|**(2n).
    """
    if n < 0:
        raise ValidationError("photon number must be non-negative")
    m = _matrix(M)
    N = m.shape[0] - 3
    p_t = abs(m[0, N + 1]) ** 2
    p_r = abs(m[0, 0]) ** 2
    return TransportReport(
        F_t=_clamp(p_t**n), F_r=_clamp(p_r**n), input=f"fock n={n}", time=_time(M)
    )


def reduced_density_matrix(M, state, mu):
    """Reduced state of resonator ``mu`` after injecting ``state`` into the left resonator.

    ``state`` is a photon number or a :class:`SuperpositionState`.  The result
    lives on Fock levels 0..n (Fock input) or 0..d-1 (superposition).
    """
    if isinstance(state, SuperpositionState):
        alpha = state.amplitudes
    else:
        n = int(state)
        if n < 0:
            raise ValidationError("photon number must be non-negative")
        alpha = np.zeros(n + 1, dtype=complex)
        alpha[n] = 1.0
    d = alpha.size
    f = f_coefficients(M, mu, d - 1).values
    rho = np.zeros((d, d), dtype=complex)
    for n in range(d):
        for n2 in range(d):
            c = alpha[n] * np.conj(alpha[n2])
            if c == 0:
                continue
            for r in range(min(n, n2) + 1):
                rho[n - r, n2 - r] += c * f[r, n] * np.conj(f[r, n2])
    return rho


def _fidelity_sum(alpha, f, phases):
    """Quadruple-product fidelity sum for a batch of states.

    alpha has shape (samples, d); phases[n] multiplies the n-th amplitude of
    the target state.  Returns complex values so the caller can check that the
    imaginary residue vanishes.
    """
    d = alpha.shape[1]
    conj = np.conj(alpha)
    total = np.zeros(alpha.shape[0], dtype=complex)
    for n in range(d):
        for n2 in range(d):
            ph = phases[n] * phases[n2]
            for r in range(min(n, n2) + 1):
                coef = ph * f[r, n] * np.conj(f[r, n2])
                if coef == 0:
                    continue
                total += coef * alpha[:, n] * alpha[:, n2 - r] * conj[:, n2] * conj[:, n - r]
    return total


def _real_fidelity(values):
    worst = float(np.max(np.abs(values.imag))) if values.size else 0.0
    if worst > IMAG_TOL:
        raise ConsistencyError(f"fidelity has imaginary residue {worst:.3e}")
    return np.clip(values.real, 0.0, 1.0)


def _batch_fidelities(M, alpha, z):
    m = _matrix(M)
    N = m.shape[0] - 3
    d = alpha.shape[1]
    phases = (-1.0) ** (z * np.arange(d))
    f_t = f_coefficients(m, N + 1, d - 1).values
    f_r = f_coefficients(m, 0, d - 1).values
    F_t = _real_fidelity(_fidelity_sum(alpha, f_t, phases))
    F_r = _real_fidelity(_fidelity_sum(alpha, f_r, np.ones(d)))
    return F_t, F_r


def superposition_fidelities(M, psi, z=None):
    """Fidelities for an arbitrary superposition of Fock states.

    The transmitted state is compared with P|psi>, where the phase corrector
    P = exp(i z pi n) undoes the (-1)**(n z) acquired by an n-photon swap.
    ``z`` defaults to the zero-mode index of the chain implied by ``M``.
    """
    if not isinstance(psi, SuperpositionState):
        psi = SuperpositionState(psi)
    z = _zero_mode(M, z)
    F_t, F_r = _batch_fidelities(M, psi.amplitudes[None, :], z)
    return TransportReport(
        F_t=float(F_t[0]), F_r=float(F_r[0]), input=f"superposition d={psi.d}", time=_time(M)
    )


def average_fidelities(M, d, z=None):
    """Exact Haar averages of the superposition fidelities over d-dimensional pure states."""
    if d < 1:
        raise ValidationError("d must be at least 1")
    if d - 1 > MAX_PHOTONS:
        raise ValidationError(f"photon numbers above {MAX_PHOTONS} are not supported")
    z = _zero_mode(M, z)
    m = _matrix(M)
    N = m.shape[0] - 3
    norm = d * (d + 1)
    phases = (-1.0) ** (z * np.arange(d))

    def average(f, ph):
        populations = float(np.sum(np.abs(f) ** 2))
        coherent = abs(np.sum(ph * f[0, :])) ** 2
        return _clamp((populations + coherent) / norm)

    f_t = f_coefficients(m, N + 1, d - 1).values
    f_r = f_coefficients(m, 0, d - 1).values
    return TransportReport(
        F_t=average(f_t, phases),
        F_r=average(f_r, np.ones(d)),
        input=f"haar-average d={d}",
        time=_time(M),
    )


def haar_states(rng, samples, d):
    """Haar-random pure states as rows: normalized complex Gaussian vectors."""
    x = rng.standard_normal((samples, d)) + 1j * rng.standard_normal((samples, d))
    return x / np.linalg.norm(x, axis=1, keepdims=True)


def haar_average_oracle(M, d, z=None, samples=100_000, seed=0, workers=1):
    """Monte Carlo estimate of the Haar-averaged fidelities.

    Samples are drawn in fixed-size chunks, chunk ``i`` from the generator
    seeded with ``(seed, i)``, so the estimate does not depend on ``workers``.
    """
    if samples < 1:
        raise ValidationError("samples must be at least 1")
    if d < 1:
        raise ValidationError("d must be at least 1")
    z = _zero_mode(M, z)
    m = _matrix(M)
    sizes = [CHUNK] * (samples // CHUNK)
    if samples % CHUNK:
        sizes.append(samples % CHUNK)

    def run(i):
        rng = np.random.default_rng([seed, i])
        return _batch_fidelities(m, haar_states(rng, sizes[i], d), z)

    if workers > 1 and len(sizes) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(run, range(len(sizes))))
    else:
        parts = [run(i) for i in range(len(sizes))]
    F_t = np.concatenate([p[0] for p in parts])
    F_r = np.concatenate([p[1] for p in parts])

    def stderr(x):
        return float(np.std(x, ddof=1) / math.sqrt(x.size)) if x.size > 1 else 0.0

    return HaarEstimate(float(F_t.mean()), float(F_r.mean()), stderr(F_t), stderr(F_r))
