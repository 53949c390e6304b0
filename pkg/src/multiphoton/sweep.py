"""Parameter sweeps over g0/kappa or j0/kappa, figure presets and bound verification."""

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
import csv
import io
import math
from typing import Optional

import numpy as np

from . import bounds, transport
from .dynamics import EffectiveAmplitudes, Evolution, effective_boundary_amplitudes
from .errors import BoundViolated, GridNotIncreasing, ValidationError
from .lattice import NetworkConfig, build_coupling_matrix, mode_couplings, swap_time

__all__ = [
    "SELECTORS",
    "PRESETS",
    "SweepSpec",
    "SweepRow",
    "SwapDemo",
    "VerificationReport",
    "preset",
    "columns",
    "run_sweep",
    "write_csv",
    "sweep_csv",
    "verify_bounds",
    "swap_demo",
]

SELECTORS = ("F_t", "F_r", "sigma_t", "sigma_r", "est_t", "est_r", "bound_t", "bound_r")
VARY = {"j0": "j0_over_kappa", "g0": "g0_over_kappa", "j0_over_kappa": "j0_over_kappa",
        "g0_over_kappa": "g0_over_kappa"}
DEFAULT_OUTPUTS = ("F_t", "F_r", "sigma_t", "sigma_r")


@dataclass(frozen=True)
class SweepSpec:
    """Everything needed to reproduce one sweep.

    ``time`` is ``None`` for the swap time tau (recomputed from the current
    g0 at every grid point) or an explicit evolution time.  ``bound_scale``
    multiplies every bound column; it exists so the verifier can be tested
    against deliberately wrong bounds.
    """

    base: NetworkConfig
    vary: str
    grid: tuple
    n_list: tuple = ()
    d_list: tuple = ()
    time: Optional[float] = None
    outputs: tuple = DEFAULT_OUTPUTS
    mc_samples: int = 0
    seed: int = 0
    bound_scale: float = 1.0

    def __post_init__(self):
        if self.vary not in VARY:
            raise ValidationError(f"vary must be one of j0_over_kappa, g0_over_kappa; got {self.vary!r}")
        object.__setattr__(self, "vary", VARY[self.vary])
        grid = tuple(float(x) for x in self.grid)
        if len(grid) < 2:
            raise GridNotIncreasing("a sweep grid needs at least two points")
        if any(not math.isfinite(x) or x < 0 for x in grid):
            raise ValidationError("grid values must be finite and non-negative")
        if any(b <= a for a, b in zip(grid, grid[1:])):
            raise GridNotIncreasing(f"grid must be strictly increasing: {grid}")
        object.__setattr__(self, "grid", grid)
        n_list = tuple(int(n) for n in self.n_list)
        d_list = tuple(int(d) for d in self.d_list)
        if not n_list and not d_list:
            raise ValidationError("request at least one Fock number n or dimension d")
        if any(n < 1 for n in n_list) or any(d < 1 for d in d_list):
            raise ValidationError("photon numbers and dimensions must be at least 1")
        if max(n_list + d_list) > transport.MAX_PHOTONS:
            raise ValidationError(f"photon numbers above {transport.MAX_PHOTONS} are not supported")
        object.__setattr__(self, "n_list", n_list)
        object.__setattr__(self, "d_list", d_list)
        outputs = tuple(self.outputs)
        unknown = [o for o in outputs if o not in SELECTORS]
        if unknown or not outputs:
            raise ValidationError(f"unknown output selectors {unknown}; choose from {SELECTORS}")
        object.__setattr__(self, "outputs", outputs)
        if self.time is not None:
            object.__setattr__(self, "time", float(self.time))
        if self.mc_samples < 0:
            raise ValidationError("mc_samples must be non-negative")

    def config_at(self, value):
        key = "j0" if self.vary == "j0_over_kappa" else "g0"
        return self.base.replace(**{key: value * self.base.kappa})


@dataclass(frozen=True)
class SweepRow:
    vary_value: float
    values: dict = field(default_factory=dict)


def _column(selector, label):
    avg = label.startswith("d=")
    if avg and selector.startswith(("bound", "est")):
        selector = "avg_" + selector
    return f"{selector}[{label}]"


def _labels(spec):
    return [f"n={n}" for n in spec.n_list] + [f"d={d}" for d in spec.d_list]


def columns(spec):
    """CSV header, in emission order."""
    cols = ["vary"]
    for label in _labels(spec):
        cols.extend(_column(s, label) for s in spec.outputs)
        if spec.mc_samples and label.startswith("d="):
            cols.extend(f"{s}[{label}]" for s in ("mc_F_t", "mc_F_r", "mc_se_F_t", "mc_se_F_r"))
    return cols


def _needs(spec, *selectors):
    return any(s in spec.outputs for s in selectors)


def _evaluate(spec, index):
    value = spec.grid[index]
    config = spec.config_at(value)
    t = swap_time(config) if spec.time is None else spec.time
    M = Evolution(build_coupling_matrix(config)).at(t)
    scale = spec.bound_scale
    want_t = _needs(spec, "est_t", "bound_t")
    want_r = _needs(spec, "est_r", "bound_r")
    out = {}

    def store(label, F_t, F_r, report_t, report_r):
        out[f"F_t[{label}]"] = F_t
        out[f"F_r[{label}]"] = F_r
        out[f"sigma_t[{label}]"] = 1.0 - F_t
        out[f"sigma_r[{label}]"] = 1.0 - F_r
        if report_t is not None:
            out[_column("est_t", label)] = report_t.infidelity_estimate
            out[_column("bound_t", label)] = report_t.upper_bound * scale
        if report_r is not None:
            out[_column("est_r", label)] = report_r.infidelity_estimate
            out[_column("bound_r", label)] = report_r.upper_bound * scale

    for n in spec.n_list:
        rep = transport.fock_fidelities(M, n)
        store(
            f"n={n}",
            rep.F_t,
            rep.F_r,
            bounds.transmission_bound(config, n, t) if want_t else None,
            bounds.reflection_bound(config, n, t) if want_r else None,
        )
    if spec.d_list:
        z = mode_couplings(config).z
    for d in spec.d_list:
        label = f"d={d}"
        rep = transport.average_fidelities(M, d, z)
        store(
            label,
            rep.F_t,
            rep.F_r,
            bounds.average_bounds(config, d, t, bounds.TRANSMIT) if want_t else None,
            bounds.average_bounds(config, d, t, bounds.REFLECT) if want_r else None,
        )
        if spec.mc_samples:
            seed = int(np.random.SeedSequence([spec.seed, index, d]).generate_state(1)[0])
            est = transport.haar_average_oracle(M, d, z, spec.mc_samples, seed)
            out[f"mc_F_t[{label}]"] = est.mean_F_t
            out[f"mc_F_r[{label}]"] = est.mean_F_r
            out[f"mc_se_F_t[{label}]"] = est.stderr_F_t
            out[f"mc_se_F_r[{label}]"] = est.stderr_F_r
    return SweepRow(vary_value=value, values=out)


def run_sweep(spec, workers=1):
    """Evaluate every grid point; rows come back in grid order whatever ``workers`` is."""
    indices = range(len(spec.grid))
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(lambda i: _evaluate(spec, i), indices))
    return [_evaluate(spec, i) for i in indices]


def _fmt(x):
    return format(x, ".12g")


def write_csv(spec, rows, stream):
    cols = columns(spec)
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(cols)
    for row in rows:
        writer.writerow([_fmt(row.vary_value)] + [_fmt(row.values[c]) for c in cols[1:]])


def sweep_csv(spec, workers=1):
    buf = io.StringIO()
    write_csv(spec, run_sweep(spec, workers), buf)
    return buf.getvalue()


@dataclass(frozen=True)
class VerificationReport:
    rows: list
    checks: int


def verify_bounds(spec, workers=1):
    """Check exact infidelity <= analytic bound at every grid point and input.

    Raises :class:`BoundViolated` with the first offending row.
    """
    if not _needs(spec, "bound_t", "bound_r"):
        raise ValidationError("verification needs bound_t and/or bound_r among the outputs")
    rows = run_sweep(spec, workers)
    checks = 0
    for row in rows:
        for label in _labels(spec):
            for regime in ("t", "r"):
                col = _column(f"bound_{regime}", label)
                if col not in row.values:
                    continue
                sigma = row.values[f"sigma_{regime}[{label}]"]
                checks += 1
                if not sigma <= row.values[col]:
                    raise BoundViolated(
                        f"sigma_{regime}[{label}] = {sigma:.6g} exceeds {col} = {row.values[col]:.6g}"
                        f" at {spec.vary} = {row.vary_value:.6g}",
                        row=row,
                        column=col,
                    )
    return VerificationReport(rows=rows, checks=checks)


@dataclass(frozen=True)
class SwapDemo:
    tau: float
    transmit: transport.TransportReport  # j0 = 0
    reflect: transport.TransportReport  # the configured j0
    amplitudes: EffectiveAmplitudes  # three-mode model at tau


def swap_demo(config, n, out=None):
    """Fidelities at the swap time with the auxiliary resonator off and on.

    A summary is printed to ``out`` when given.
    """
    tau = swap_time(config)
    couplings = mode_couplings(config)
    off = transport.fock_fidelities(Evolution(build_coupling_matrix(config.replace(j0=0.0))).at(tau), n)
    on = transport.fock_fidelities(Evolution(build_coupling_matrix(config)).at(tau), n)
    amps = effective_boundary_amplitudes(couplings.g_z, couplings.z, tau)
    if out is not None:
        print(f"N={config.N} m={config.m} kappa={config.kappa:g} g0={config.g0:g} j0={config.j0:g} n={n}", file=out)
        print(f"tau = {tau:.6f}", file=out)
        print(f"j0=0:    F_t = {off.F_t:.10f}  F_r = {off.F_r:.10f}", file=out)
        print(f"j0={config.j0:g}: F_t = {on.F_t:.10f}  F_r = {on.F_r:.10f}", file=out)
        print(
            f"effective model: a0 = {amps.a0:.6g}  aN1 = {amps.aN1:.6g}  az = {amps.az:.6g}",
            file=out,
        )
    return SwapDemo(tau=tau, transmit=off, reflect=on, amplitudes=amps)


PRESET_POINTS = 101
_FIG_BASE = dict(N=7, m=3, kappa=1.0)


def _j0_grid():
    return tuple(np.linspace(0.0, 0.1, PRESET_POINTS))


def _g0_grid():
    return tuple(np.linspace(0.001, 0.02, PRESET_POINTS))


def _presets():
    table = {}
    for suffix, g0 in (("a", 0.01), ("b", 0.005)):
        table[f"fig2{suffix}"] = dict(base=dict(g0=g0, j0=0.0), vary="j0_over_kappa", grid=_j0_grid(),
                                      n_list=(2, 3, 5), outputs=("F_t", "F_r"))
        table[f"figA1{suffix}"] = dict(base=dict(g0=g0, j0=0.0), vary="j0_over_kappa", grid=_j0_grid(),
                                       d_list=(2, 3, 5), outputs=("F_t", "F_r"))
    for suffix, n, d in (("a", 2, 3), ("b", 5, 5)):
        table[f"fig3{suffix}"] = dict(base=dict(g0=0.01, j0=0.0), vary="g0_over_kappa", grid=_g0_grid(),
                                      n_list=(n,), outputs=("sigma_t", "est_t", "bound_t"))
        table[f"fig4{suffix}"] = dict(base=dict(g0=0.01, j0=0.1), vary="g0_over_kappa", grid=_g0_grid(),
                                      n_list=(n,), outputs=("sigma_r", "est_r", "bound_r"))
        table[f"figA2{suffix}"] = dict(base=dict(g0=0.01, j0=0.0), vary="g0_over_kappa", grid=_g0_grid(),
                                       d_list=(d,), outputs=("sigma_t", "est_t", "bound_t"))
        table[f"figA3{suffix}"] = dict(base=dict(g0=0.01, j0=0.1), vary="g0_over_kappa", grid=_g0_grid(),
                                       d_list=(d,), outputs=("sigma_r", "est_r", "bound_r"))
    return table


PRESETS = tuple(sorted(_presets()))


def preset(name, seed=0, mc_samples=0):
    """Fully explicit sweep reproducing one figure panel (N=7, m=3, t=tau)."""
    table = _presets()
    if name not in table:
        raise ValidationError(f"unknown preset {name!r}; choose from {', '.join(PRESETS)}")
    entry = dict(table[name])
    base = NetworkConfig(**_FIG_BASE, **entry.pop("base"))
    return SweepSpec(base=base, seed=seed, mc_samples=mc_samples, **entry)
