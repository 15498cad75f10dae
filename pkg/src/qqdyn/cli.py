"""``qqdyn`` command line.

Exit codes: 0 success, 1 invalid configuration or parameters, 2 invariant
breach or failed check, 3 I/O failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import dataclass, field

import numpy as np

from .checks import SUITES, run_suite
from .dynamics import divisibility_report, integrate, lindblad_fit
from .errors import ConfigError, EtaUnitarityBreach, InvariantBreach, QQDynError
from .matrix_io import cmat_to_json, qmat_from_json, qmat_to_json
from .metric import (
    GeneralizedDensity,
    Metric,
    Observable,
    QuasiHamiltonian,
    expectation,
    pure_state,
    quasi_hamiltonian,
)
from .qmat import QMat, qm_complex_projection
from .spinhalf import SpinHalfParams, sh_observables, sh_state, sh_system

EXIT_OK, EXIT_CONFIG, EXIT_BREACH, EXIT_IO = 0, 1, 2, 3
MAX_CHECK_N = 16


def _fmt(x: float) -> str:
    return format(float(x), ".17g")


@dataclass
class SimConfig:
    hq: QuasiHamiltonian
    metric: Metric
    state0: GeneralizedDensity
    t_max: float = 0.0
    dt: float = 0.01
    method: str = "expm"
    observables: dict[str, Observable] = field(default_factory=dict)
    output: str | None = None
    preset: SpinHalfParams | None = None

    @property
    def times(self) -> np.ndarray:
        steps = int(np.floor(self.t_max / self.dt + 1e-9))
        return self.dt * np.arange(steps + 1)

    @classmethod
    def from_dict(cls, cfg: dict) -> SimConfig:
        if not isinstance(cfg, dict):
            raise ConfigError("config must be a JSON object")
        try:
            return cls._from_dict(cfg)
        except ConfigError:
            raise
        except QQDynError as exc:
            raise ConfigError(f"{type(exc).__name__}: {exc}") from exc
        except (KeyError, TypeError, ValueError) as exc:
            raise ConfigError(f"malformed config: {exc!r}") from exc

    @classmethod
    def _from_dict(cls, cfg: dict) -> SimConfig:
        system = cfg.get("system")
        if not isinstance(system, dict):
            raise ConfigError("config needs a 'system' object")
        preset = None
        if "preset" in system:
            if system["preset"] != "spinhalf":
                raise ConfigError(f"unknown preset {system['preset']!r}")
            preset = SpinHalfParams(float(system.get("omega", 1.0)), float(system.get("v", 0.25)),
                                    float(system.get("x", 2.0)))
            hq, metric = sh_system(preset)
        else:
            metric = Metric(qmat_from_json(system["eta"]))
            hq = quasi_hamiltonian(qmat_from_json(system["hamiltonian"]), metric)

        init = cfg.get("initial_state")
        if init is None:
            if preset is None:
                raise ConfigError("initial_state is required for explicit systems")
            state0 = sh_state(preset, 0.0)
        elif isinstance(init, dict) and "pure" in init:
            state0 = pure_state(qmat_from_json(init["pure"]), metric)
        else:
            state0 = GeneralizedDensity(qmat_from_json(init), metric)
        if state0.rho_tilde.shape != hq.h.shape:
            raise ConfigError("initial state dimension does not match the system")
        try:
            state0.validate(1e-9)
        except InvariantBreach as exc:
            raise ConfigError(f"initial state invalid: {exc}") from exc

        time = cfg.get("time", {})
        t_max, dt = float(time.get("t_max", 0.0)), float(time.get("dt", 0.01))
        if not dt > 0 or not t_max >= 0 or not np.isfinite([t_max, dt]).all():
            raise ConfigError("need dt > 0 and t_max >= 0")
        method = cfg.get("method", "expm")
        if method not in ("expm", "rk4"):
            raise ConfigError(f"unknown method {method!r}")

        observables = {}
        builtin = {}
        if preset is not None:
            s_z, mod_h = sh_observables(preset)
            builtin = {"s_z": s_z, "sz": s_z, "mod_h": mod_h, "energy": mod_h}
        for entry in cfg.get("observables", []):
            if isinstance(entry, str):
                entry = {"name": entry, "preset": entry}
            name = entry.get("name")
            if not isinstance(name, str) or not name:
                raise ConfigError("every observable needs a name")
            if "preset" in entry:
                if entry["preset"] not in builtin:
                    raise ConfigError(f"unknown observable preset {entry['preset']!r}")
                obs = builtin[entry["preset"]]
            else:
                obs = Observable(qmat_from_json(entry["matrix"]), name).registered(metric)
            if obs.q.shape != hq.h.shape:
                raise ConfigError(f"observable {name!r} has the wrong dimension")
            observables[name] = obs
        return cls(hq, metric, state0, t_max, dt, method, observables, cfg.get("output"), preset)


def _load_config(path: str) -> SimConfig:
    with open(path) as fh:
        raw = fh.read()
    try:
        cfg = json.loads(raw)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config is not valid JSON: {exc}") from exc
    return SimConfig.from_dict(cfg)


def render_csv(traj, dump_state: bool = False) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    names = list(traj.observables)
    header = ["t"] + names
    n = traj.states[0].rho_tilde.shape[0] if traj.states else 0
    cells = [(r, c) for r in range(n) for c in range(n)]
    if dump_state:
        for r, c in cells:
            header += [f"rho[{r}][{c}].{part}.{comp}" for part in ("alpha", "beta") for comp in ("re", "im")]
    w.writerow(header)
    for k, t in enumerate(traj.times):
        row = [_fmt(t)] + [_fmt(traj.observables[name][k]) for name in names]
        if dump_state:
            st = traj.states[k]
            for r, c in cells:
                a, b = st.alpha[r, c], st.beta[r, c]
                row += [_fmt(a.real), _fmt(a.imag), _fmt(b.real), _fmt(b.imag)]
        w.writerow(row)
    return buf.getvalue()


def parse_state_rows(text: str, n: int) -> list[QMat]:
    """Recover rho_tilde per row from a ``--dump-state`` CSV."""
    reader = csv.DictReader(io.StringIO(text))
    out = []
    for row in reader:
        a = np.zeros((n, n), dtype=complex)
        b = np.zeros((n, n), dtype=complex)
        for r in range(n):
            for c in range(n):
                key = f"rho[{r}][{c}]"
                a[r, c] = complex(float(row[f"{key}.alpha.re"]), float(row[f"{key}.alpha.im"]))
                b[r, c] = complex(float(row[f"{key}.beta.re"]), float(row[f"{key}.beta.im"]))
        out.append(QMat(a, b))
    return out


def cmd_simulate(args) -> int:
    try:
        cfg = _load_config(args.config)
    except OSError as exc:
        print(f"error: cannot read config: {exc}", file=sys.stderr)
        return EXIT_IO
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    try:
        traj = integrate(cfg.hq, cfg.state0, cfg.times, cfg.method, cfg.observables)
    except (InvariantBreach, EtaUnitarityBreach) as exc:
        print(f"error: invariant breach: {exc}", file=sys.stderr)
        return EXIT_BREACH
    text = render_csv(traj, args.dump_state)
    out = args.output or cfg.output
    try:
        if out in (None, "-"):
            sys.stdout.write(text)
        else:
            with open(out, "w", newline="") as fh:
                fh.write(text)
    except OSError as exc:
        print(f"error: cannot write output: {exc}", file=sys.stderr)
        return EXIT_IO
    return EXIT_OK


def cmd_check(args) -> int:
    if not 1 <= args.n <= MAX_CHECK_N:
        print(f"error: --n must be in [1, {MAX_CHECK_N}]", file=sys.stderr)
        return EXIT_CONFIG
    if args.trials is not None and args.trials < 1:
        print("error: --trials must be >= 1", file=sys.stderr)
        return EXIT_CONFIG
    results = run_suite(args.suite, args.seed, args.n, args.trials, args.tol)
    for r in results:
        print(r.line())
    failed = [r for r in results if not r.passed]
    for r in failed:
        print(f"error: property '{r.name}' failed with residual {r.value:.3e}", file=sys.stderr)
    return EXIT_BREACH if failed else EXIT_OK


def example_report(p: SpinHalfParams, t: float) -> dict:
    hq, _ = sh_system(p)
    state = sh_state(p, t)
    s_z, mod_h = sh_observables(p)
    div = divisibility_report(hq, sh_state(p, 0.0), t, t)
    return {
        "params": {"omega": p.omega, "v": p.v, "x": p.x},
        "t": t,
        "rho_tilde": qmat_to_json(state.rho_tilde),
        "projection": cmat_to_json(qm_complex_projection(state.rho_tilde)),
        "sz": expectation(state, s_z),
        "energy": expectation(state, mod_h),
        "divisibility_defect": div.defect,
    }


def cmd_example(args) -> int:
    try:
        p = SpinHalfParams(args.omega, args.v, args.x)
        report = example_report(p, args.t)
    except QQDynError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    print(json.dumps(report, indent=2))
    return EXIT_OK


def cmd_fit_lindblad(args) -> int:
    try:
        cfg = _load_config(args.config)
        fit = lindblad_fit(cfg.hq, samples=args.samples, seed=args.seed, pairing=args.pairing)
    except OSError as exc:
        print(f"error: cannot read config: {exc}", file=sys.stderr)
        return EXIT_IO
    except QQDynError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    print(json.dumps({"C": cmat_to_json(fit.c), "residual": fit.residual,
                      "samples": fit.samples, "pairing": args.pairing}, indent=2))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qqdyn", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    sim = sub.add_parser("simulate", help="integrate a configured system and write CSV")
    sim.add_argument("--config", required=True)
    sim.add_argument("--dump-state", action="store_true")
    sim.add_argument("--output", help="override the config's output path ('-' for stdout)")
    sim.set_defaults(func=cmd_simulate)

    chk = sub.add_parser("check", help="run a seeded property suite")
    chk.add_argument("--suite", choices=[*SUITES, "all"], default="all")
    chk.add_argument("--seed", type=int, default=0)
    chk.add_argument("--n", type=int, default=3)
    chk.add_argument("--trials", type=int, default=None)
    chk.add_argument("--tol", type=float, default=None,
                     help="replace every property's default limit")
    chk.set_defaults(func=cmd_check)

    ex = sub.add_parser("example", help="closed-form worked examples")
    ex_sub = ex.add_subparsers(dest="example", required=True)
    sh = ex_sub.add_parser("spinhalf")
    sh.add_argument("--omega", type=float, default=1.0)
    sh.add_argument("--v", type=float, default=0.25)
    sh.add_argument("--x", type=float, default=2.0)
    sh.add_argument("--t", type=float, default=0.0)
    sh.set_defaults(func=cmd_example)

    fit = sub.add_parser("fit-lindblad", help="fit constant Kossakowski coefficients")
    fit.add_argument("--config", required=True)
    fit.add_argument("--seed", type=int, default=0)
    fit.add_argument("--samples", type=int, default=None)
    fit.add_argument("--pairing", choices=["printed", "standard"], default="printed")
    fit.set_defaults(func=cmd_fit_lindblad)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
