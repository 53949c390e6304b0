"""Command-line interface.

    multiphoton sweep --config run.yaml --out run.csv
    multiphoton verify --preset fig3a
    multiphoton swap-demo --N 7 --m 3 --g0 0.01 --j0 0.1 --n 3
    multiphoton reproduce fig2a --seed 7

Config files are flat YAML mappings with keys N, m, kappa, g0, j0, time,
n_list, d_list, vary, grid_start, grid_stop, grid_points, mc_samples, seed
(and optionally outputs).  Command-line flags override file values.
"""

import argparse
import logging
import sys

import numpy as np
import yaml

from .errors import TransportError, ValidationError
from .lattice import NetworkConfig
from .sweep import PRESETS, SELECTORS, SweepSpec, preset, run_sweep, swap_demo, verify_bounds, write_csv

log = logging.getLogger("multiphoton")

CONFIG_KEYS = (
    "N", "m", "kappa", "g0", "j0", "time", "n_list", "d_list", "vary",
    "grid_start", "grid_stop", "grid_points", "mc_samples", "seed", "outputs",
)
DEFAULTS = dict(N=7, m=3, kappa=1.0, g0=0.01, j0=0.0, time="tau", n_list=[], d_list=[],
                grid_points=101, mc_samples=0, seed=0)


def _int_list(text):
    try:
        return [int(x) for x in str(text).replace(" ", "").split(",") if x]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _as_list(value, cast):
    if value is None:
        return []
    if isinstance(value, (list, tuple)):
        return [cast(v) for v in value]
    return [cast(v) for v in str(value).replace(" ", "").split(",") if v]


def load_config(path):
    with open(path, encoding="utf-8") as fh:
        data = yaml.safe_load(fh) or {}
    if not isinstance(data, dict):
        raise ValidationError(f"{path}: expected a flat key-value mapping")
    unknown = sorted(set(data) - set(CONFIG_KEYS))
    if unknown:
        raise ValidationError(f"{path}: unknown keys {unknown}")
    nested = [k for k, v in data.items() if isinstance(v, dict)]
    if nested:
        raise ValidationError(f"{path}: nested values not allowed for {nested}")
    return data


def _merged(args):
    values = dict(DEFAULTS)
    if args.config:
        values.update(load_config(args.config))
    flags = dict(
        N="N", m="m", kappa="kappa", g0="g0", j0="j0", time="time", n_list="n", d_list="d",
        vary="vary", grid_start="grid_start", grid_stop="grid_stop", grid_points="grid_points",
        mc_samples="samples", seed="seed", outputs="outputs",
    )
    overrides = {key: getattr(args, flag, None) for key, flag in flags.items()}
    values.update({k: v for k, v in overrides.items() if v is not None})
    return values


def _time(value):
    if value is None or str(value).lower() == "tau":
        return None
    return float(value)


def spec_from_values(values):
    missing = [k for k in ("vary", "grid_start", "grid_stop") if values.get(k) is None]
    if missing:
        raise ValidationError(f"missing sweep settings: {', '.join(missing)}")
    base = NetworkConfig(N=values["N"], m=values["m"], kappa=values["kappa"],
                         g0=values["g0"], j0=values["j0"])
    points = int(values["grid_points"])
    if points < 2:
        raise ValidationError("grid_points must be at least 2")
    grid = np.linspace(float(values["grid_start"]), float(values["grid_stop"]), points)
    kwargs = dict(
        base=base,
        vary=values["vary"],
        grid=tuple(grid),
        n_list=_as_list(values.get("n_list"), int),
        d_list=_as_list(values.get("d_list"), int),
        time=_time(values.get("time")),
        mc_samples=int(values["mc_samples"]),
        seed=int(values["seed"]),
    )
    if values.get("outputs"):
        kwargs["outputs"] = tuple(_as_list(values["outputs"], str))
    return SweepSpec(**kwargs)


def _preset_spec(args):
    spec = preset(args.preset, seed=args.seed or 0, mc_samples=args.samples or 0)
    changes = {}
    if args.n is not None:
        changes["n_list"] = args.n
    if args.d is not None:
        changes["d_list"] = args.d
    if changes:
        fields = {f: getattr(spec, f) for f in SweepSpec.__dataclass_fields__}
        fields.update(changes)
        spec = SweepSpec(**fields)
    return spec


def _emit(spec, rows, path):
    if path in (None, "-"):
        write_csv(spec, rows, sys.stdout)
    else:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            write_csv(spec, rows, fh)


def cmd_sweep(args):
    spec = _preset_spec(args) if getattr(args, "preset", None) else spec_from_values(_merged(args))
    _emit(spec, run_sweep(spec, args.parallel), args.out)
    return 0


def cmd_reproduce(args):
    spec = _preset_spec(args)
    _emit(spec, run_sweep(spec, args.parallel), args.out)
    return 0


def cmd_verify(args):
    spec = _preset_spec(args) if args.preset else spec_from_values(_merged(args))
    if args.bound_scale != 1.0:
        fields = {f: getattr(spec, f) for f in SweepSpec.__dataclass_fields__}
        spec = SweepSpec(**dict(fields, bound_scale=args.bound_scale))
    report = verify_bounds(spec, args.parallel)
    if args.out:
        _emit(spec, report.rows, args.out)
    print(f"PASS: {report.checks} bound checks over {len(spec.grid)} grid points", file=sys.stderr)
    return 0


def cmd_swap_demo(args):
    values = _merged(args)
    config = NetworkConfig(N=values["N"], m=values["m"], kappa=values["kappa"],
                           g0=values["g0"], j0=values["j0"])
    ns = values["n_list"] or [1]
    for n in ns:
        swap_demo(config, n, out=sys.stdout)
    return 0


def _add_common(p, sweep_flags=True):
    p.add_argument("--config", help="flat YAML key-value file")
    p.add_argument("--out", help="output CSV path (default: stdout)")
    p.add_argument("--n", type=_int_list, help="Fock photon numbers, e.g. 2,3,5")
    p.add_argument("--d", type=_int_list, help="superposition dimensions, e.g. 2,3,5")
    p.add_argument("--samples", type=int, help="Monte Carlo samples for Haar averages (0 = off)")
    p.add_argument("--seed", type=int)
    p.add_argument("--parallel", type=int, default=1, metavar="WORKERS")
    p.add_argument("--N", type=int)
    p.add_argument("--m", type=int)
    p.add_argument("--kappa", type=float)
    p.add_argument("--g0", type=float)
    p.add_argument("--j0", type=float)
    if sweep_flags:
        p.add_argument("--time", help="'tau' or an explicit evolution time")
        p.add_argument("--vary", choices=["j0", "g0", "j0_over_kappa", "g0_over_kappa"])
        p.add_argument("--grid-start", type=float)
        p.add_argument("--grid-stop", type=float)
        p.add_argument("--grid-points", type=int)
        p.add_argument("--outputs", type=lambda s: s.split(","),
                       help=f"comma-separated columns from {','.join(SELECTORS)}")


def build_parser():
    parser = argparse.ArgumentParser(prog="multiphoton", description=__doc__.split("\n")[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("sweep", help="run a parameter sweep and write CSV")
    _add_common(p)
    p.add_argument("--preset", choices=PRESETS)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("verify", help="check exact infidelities against the analytic bounds")
    _add_common(p)
    p.add_argument("--preset", choices=PRESETS)
    # test hook: shrink every bound to exercise the failure path
    p.add_argument("--bound-scale", type=float, default=1.0, help=argparse.SUPPRESS)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("swap-demo", help="fidelities at the swap time with the control off and on")
    _add_common(p, sweep_flags=False)
    p.set_defaults(func=cmd_swap_demo)

    p = sub.add_parser("reproduce", help="write the CSV behind one figure panel")
    p.add_argument("preset", choices=PRESETS)
    _add_common(p, sweep_flags=False)
    p.set_defaults(func=cmd_reproduce)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except TransportError as exc:
        log.debug("command failed", exc_info=True)
        print(f"error: {exc}", file=sys.stderr)
        return exc.exit_code


if __name__ == "__main__":
    sys.exit(main())
