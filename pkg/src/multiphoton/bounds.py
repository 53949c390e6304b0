"""Perturbative leakage estimates and infidelity upper bounds.

Transmit regime (j0 = 0, g0 << kappa): off-resonant chain modes k != z leak
amplitude from the swap channel, giving

    Delta_t(t) = sum_{k<z} (g_k/eps_k)**2 [1 - (-1)**(k+z-1) cos(eps_k t)].

Reflect regime (g0 << j0 << kappa, odd m): the auxiliary resonator splits the
zero mode by 2 J_z, detuning it from the boundaries, giving

    Delta_r(t) = g_z**2 / (2 J_z**2) [1 - cos(J_z t)].

A Fock state |n> then loses about 4 n Delta, and a Haar-averaged d-level state
about 2 d (d-1) / (d+1) Delta.  The bounds replace each bracket by its maximum, 2.
"""

from dataclasses import dataclass
import math

import numpy as np

from .dynamics import effective_propagator_uncoupled
from .errors import ValidationError
from .lattice import chain_spectrum, mode_couplings, require_tap, swap_time

__all__ = [
    "BoundReport",
    "delta_t",
    "delta_r",
    "leakage_sum",
    "transmission_bound",
    "reflection_bound",
    "average_bounds",
    "perturbative_matrix_elements",
]

TRANSMIT = "transmit"
REFLECT = "reflect"


@dataclass(frozen=True)
class BoundReport:
    delta: float
    infidelity_estimate: float
    upper_bound: float
    regime: str
    input: str


def _time(config, t):
    return swap_time(config) if t is None else float(t)


def _off_resonant(config):
    couplings = mode_couplings(config)
    eps = chain_spectrum(config.N, config.kappa).energies
    k = np.arange(1, couplings.z)
    return k, couplings.g[: couplings.z - 1], eps[: couplings.z - 1], couplings.z


def leakage_sum(config):
    """sum_{k<z} g_k**2 / eps_k**2."""
    _, g, eps, _ = _off_resonant(config)
    return float(np.sum(g**2 / eps**2))


def delta_t(config, t=None):
    """Transmit-regime leakage Delta_t at time ``t`` (default: the swap time)."""
    if config.g0 == 0:
        mode_couplings(config)  # still reject even N
        return 0.0
    t = _time(config, t)
    k, g, eps, z = _off_resonant(config)
    sign = (-1.0) ** (k + z - 1)
    return float(np.sum(g**2 / eps**2 * (1.0 - sign * np.cos(eps * t))))


def delta_r(config, t=None):
    """Reflect-regime leakage Delta_r at time ``t`` (default: the swap time).

    Only J_z**2 and cos(J_z t) enter, so the sign of J_z is irrelevant.
    """
    couplings = mode_couplings(config)
    j_z = require_tap(couplings)
    t = _time(config, t)
    return float(couplings.g_z**2 / (2.0 * j_z**2) * (1.0 - math.cos(j_z * t)))


def _check_n(n):
    if n < 1:
        raise ValidationError(f"photon number must be at least 1, got {n}")


def transmission_bound(config, n, t=None):
    _check_n(n)
    delta = delta_t(config, t)
    return BoundReport(
        delta=delta,
        infidelity_estimate=4 * n * delta,
        upper_bound=8 * n * leakage_sum(config),
        regime=TRANSMIT,
        input=f"fock n={n}",
    )


def reflection_bound(config, n, t=None):
    _check_n(n)
    couplings = mode_couplings(config)
    j_z = require_tap(couplings)
    delta = delta_r(config, t)
    return BoundReport(
        delta=delta,
        infidelity_estimate=4 * n * delta,
        upper_bound=4 * n * couplings.g_z**2 / j_z**2,
        regime=REFLECT,
        input=f"fock n={n}",
    )


def average_bounds(config, d, t=None, regime=TRANSMIT):
    """Haar-averaged infidelity estimate and bound for d-level input states."""
    if d < 1:
        raise ValidationError(f"d must be at least 1, got {d}")
    factor = 2.0 * d * (d - 1) / (d + 1)
    if regime == TRANSMIT:
        delta = delta_t(config, t)
        bound = 2.0 * factor * leakage_sum(config)
    elif regime == REFLECT:
        couplings = mode_couplings(config)
        j_z = require_tap(couplings)
        delta = delta_r(config, t)
        bound = factor * couplings.g_z**2 / j_z**2
    else:
        raise ValidationError(f"unknown regime {regime!r}")
    return BoundReport(
        delta=delta,
        infidelity_estimate=factor * delta,
        upper_bound=bound,
        regime=regime,
        input=f"haar-average d={d}",
    )


def perturbative_matrix_elements(config, t=None):
    """Second-order approximations of M[0, N+1] (transmit) and M[0, 0] (reflect).

    The transmit element dresses the three-mode swap propagator with the
    off-resonant modes; at the swap time it reduces to (-1)**z (1 - 2 Delta_t).
    The reflect element is 1 - 2 Delta_r.  Either is ``None`` when its regime
    does not apply (g0 = 0, respectively j0 = 0).
    """
    couplings = mode_couplings(config)
    z = couplings.z
    t = _time(config, t)

    transmit = None
    if config.g0 > 0:
        u = effective_propagator_uncoupled(couplings.g_z, z, t)
        u11, u13 = u[0, 0], u[0, 2]
        k, g, eps, _ = _off_resonant(config)
        ratio = g**2 / eps**2
        alt = (-1.0) ** (k - 1)
        # modes k and N+1-k share g_k, have opposite eps_k and equal parity sign
        transmit = complex(
            u13
            + 2.0 * np.sum(alt * ratio * np.cos(eps * t))
            - 2.0 * np.sum(alt * ratio) * u11
            - 2.0 * np.sum(ratio) * u13
        )

    reflect = None
    if config.j0 > 0:
        reflect = complex(1.0 - 2.0 * delta_r(config, t))
    return transmit, reflect
