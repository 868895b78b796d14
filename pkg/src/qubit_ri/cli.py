"""Command-line front end: ``qubit-ri {dynamics,limit-cycle,heat-sweep,bounds-sample,verify}``.

Every CSV output opens with ``#`` metadata lines (package version, command
and the full run specification), then a header row. Floats are written in
shortest round-trip form, which never exceeds 17 significant digits, so
identical inputs give byte-identical files.

Exit codes: 0 success, 2 invalid input, 3 frozen dynamics,
4 invariant violation, 5 I/O error.
"""
from __future__ import annotations

import argparse
import contextlib
import json
import math
import sys
from dataclasses import asdict, dataclass

import numpy as np

from . import __version__, alternating, checks, engine, simultaneous
from .model import MachineConfig, QubitState, gibbs_population
from .sampling import sample_couplings, sample_stream

EXIT_OK = 0
EXIT_INVALID = 2
EXIT_FROZEN = 3
EXIT_VIOLATION = 4
EXIT_IO = 5

FD_STEP = 1e-6


class InvalidInput(ValueError):
    pass


@dataclass(frozen=True)
class RunSpec:
    command: str
    mode: str
    tau: float
    omega_s: float
    omega_h: float
    omega_c: float
    beta_h: float
    beta_c: float
    jxx_h: float
    jyy_h: float
    jxx_c: float
    jyy_c: float
    collisions: int
    samples: int
    seed: int
    tol: float
    out: str

    def config(self, **override) -> MachineConfig:
        kw = {k: getattr(self, k) for k in ("tau", "omega_s", "omega_h", "omega_c", "beta_h",
                                            "beta_c", "jxx_h", "jyy_h", "jxx_c", "jyy_c")}
        kw.update(override)
        try:
            return MachineConfig.build(**kw)
        except ValueError as exc:
            raise InvalidInput(str(exc)) from exc


def fmt(x) -> str:
    if isinstance(x, (bool, np.bool_)):
        return str(int(x))
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    if isinstance(x, (float, np.floating)):
        return repr(float(x))
    return str(x)


class CsvOut:
    def __init__(self, stream, spec: RunSpec, extra_meta: dict | None = None):
        self.stream = stream
        self.stream.write(f"# qubit-ri {__version__}\n")
        for k, v in asdict(spec).items():
            if k == "out":  # destination only; keeps files byte-identical across paths
                continue
            self.stream.write(f"# {k}={fmt(v)}\n")
        for k, v in (extra_meta or {}).items():
            self.stream.write(f"# {k}={v}\n")

    def header(self, cols) -> None:
        self.ncols = len(cols)
        self.stream.write(",".join(cols) + "\n")

    def row(self, values) -> None:
        assert len(values) == self.ncols
        self.stream.write(",".join(fmt(v) for v in values) + "\n")

    def comment(self, text: str) -> None:
        self.stream.write(f"# {text}\n")


@contextlib.contextmanager
def _open_out(path: str):
    if path == "-":
        yield sys.stdout
        return
    with open(path, "w", newline="", encoding="utf-8") as fh:
        yield fh


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------

def _initial_state(args, spec: RunSpec) -> QubitState:
    if args.random_initial:
        return QubitState.random(sample_stream(spec.seed, 0))
    s = QubitState(args.p0, complex(args.c0_re, args.c0_im))
    if not s.is_physical():
        raise InvalidInput(f"initial state p={args.p0}, c={s.c} is not a density matrix")
    return s


def cmd_dynamics(spec: RunSpec, args, out) -> int:
    cfg = spec.config()
    traj = engine.evolve(_initial_state(args, spec), cfg, spec.mode, spec.collisions)
    csv = CsvOut(out, spec)
    csv.header(["n", "p", "re_c", "im_c", "q_hot", "q_cold", "w_hot", "w_cold", "de"])
    for pt in traj:
        led = pt.ledger
        csv.row([pt.n, pt.state.p, pt.state.c.real, pt.state.c.imag, led.q_hot, led.q_cold,
                 led.w_hot, led.w_cold, led.de_system])
    return EXIT_OK


def _analytic_fixed_point(cfg: MachineConfig, mode: str):
    """(kind, p_after_cold, p_after_hot) or None when frozen."""
    if mode == "alternating":
        rep = alternating.limit_cycle(cfg)
        if rep.frozen:
            return None
        return "exact", rep.p_after_cold, rep.p_after_hot
    jxx_h, jyy_h, jxx_c, jyy_c = cfg.couplings()
    if jxx_h == jyy_h == jxx_c == jyy_c:
        if jxx_h == 0 or cfg.tau == 0:
            return None
        p_c, p_h = (gibbs_population(cfg.cold.bath.beta, cfg.cold.bath.omega),
                    gibbs_population(cfg.hot.bath.beta, cfg.hot.bath.omega))
        p = float(0.5 * (p_c + p_h))
        return "exact-equal-coupling", p, p
    p = simultaneous.dyson_fixed_point(cfg)
    return "dyson", p, p


LIMIT_CYCLE_COLS = ["mode", "analytic_kind", "frozen", "p_cold_analytic", "p_hot_analytic",
                    "p_cold_oracle", "p_hot_oracle", "diff_cold", "diff_hot",
                    "q_cold", "q_hot", "w_cold", "w_hot", "w_total"]


def cmd_limit_cycle(spec: RunSpec, args, out) -> int:
    cfg = spec.config()
    csv = CsvOut(out, spec)
    csv.header(LIMIT_CYCLE_COLS)
    analytic = _analytic_fixed_point(cfg, spec.mode)
    try:
        num = engine.find_limit_cycle_numeric(cfg, spec.mode, tol=spec.tol)
    except engine.LimitCycleError:
        num = None
    if analytic is None or num is None:
        nan = float("nan")
        csv.row([spec.mode, "none", 1] + [nan] * (len(LIMIT_CYCLE_COLS) - 3))
        return EXIT_FROZEN
    kind, pc_a, ph_a = analytic
    t = num.thermo
    csv.row([spec.mode, kind, 0, pc_a, ph_a, num.p_after_cold, num.p_after_hot,
             abs(pc_a - num.p_after_cold), abs(ph_a - num.p_after_hot),
             t.q_cold, t.q_hot, t.w_cold, t.w_hot, t.w_total])
    return EXIT_OK


def _sweep_values(spec: RunSpec, params: dict) -> dict:
    """Limit-cycle arrays for one batch of parameters (closed form or engine)."""
    if spec.mode == "alternating":
        return checks.closed_form_alternating(params)
    return engine.simultaneous_limit_cycle_batch(**params)


def cmd_heat_sweep(spec: RunSpec, args, out) -> int:
    if args.points < 1 or not (math.isfinite(args.from_) and math.isfinite(args.to)):
        raise InvalidInput("--points must be >= 1 and the range finite")
    axis_vals = np.linspace(args.from_, args.to, args.points)
    n = len(axis_vals)
    base = {k: np.full(n, float(getattr(spec, k))) for k in checks.PARAM_KEYS}
    if args.axis == "tau":
        if np.any(axis_vals <= 0):
            raise InvalidInput("tau sweep must stay > 0")
        base["tau"] = axis_vals
    else:
        # couplings scale together: J-axis value multiplies the four coupling flags
        for k in ("jxx_h", "jyy_h", "jxx_c", "jyy_c"):
            base[k] = axis_vals * getattr(spec, k)
        if spec.tau <= 0:
            raise InvalidInput("--tau must be > 0 for a J sweep")
    spec.config()  # validates bath ordering etc.

    tau = base["tau"]
    h = FD_STEP * np.maximum(1.0, tau)
    lo = np.where(tau - h > 0, tau - h, tau)
    hi = tau + h
    mid = _sweep_values(spec, base)
    q_lo = _sweep_values(spec, {**base, "tau": lo})["q_cold"]
    q_hi = _sweep_values(spec, {**base, "tau": hi})["q_cold"]
    current = (q_hi - q_lo) / (hi - lo)

    csv = CsvOut(out, spec, {"axis": args.axis, "from": fmt(args.from_), "to": fmt(args.to),
                             "points": args.points,
                             "current": f"central difference dQ_C/dtau, step {FD_STEP}*max(1,tau)"})
    csv.header([args.axis, "q_cold", "q_hot", "current", "p_after_cold", "p_after_hot"])
    for i in range(n):
        csv.row([axis_vals[i], mid["q_cold"][i], mid["q_hot"][i], current[i],
                 mid["p_after_cold"][i], mid["p_after_hot"][i]])
    return EXIT_OK


BOUNDS_COLS = ["sample", "jxx_h", "jyy_h", "jxx_c", "jyy_c", "p_after_cold", "p_after_hot",
               "upper_cold", "lower_cold", "upper_hot", "lower_hot"]


def cmd_bounds_sample(spec: RunSpec, args, out) -> int:
    if spec.samples < 1:
        raise InvalidInput("--samples must be >= 1")
    spec.config()
    jj = sample_couplings(spec.seed, spec.samples)
    params = checks.campaign_params(jj, tau=spec.tau, beta_h=spec.beta_h, beta_c=spec.beta_c,
                                    omega=spec.omega_s)
    params.update({"omega_h": np.full(len(jj), spec.omega_h),
                   "omega_c": np.full(len(jj), spec.omega_c)})
    vals = _sweep_values(spec, params)
    p_c = float(gibbs_population(spec.beta_c, spec.omega_c))
    v = alternating.population_bound_margins(vals["p_after_cold"], vals["p_after_hot"], p_c)
    margins = np.array([v.upper_cold, v.lower_cold, v.upper_hot, v.lower_hot])

    csv = CsvOut(out, spec, {"couplings": "iid uniform [-5, 5] per sample stream"})
    csv.header(BOUNDS_COLS)
    for i in range(len(jj)):
        csv.row([i, *jj[i], vals["p_after_cold"][i], vals["p_after_hot"][i], *margins[:, i]])
    finite = np.isfinite(margins).all(axis=0)
    violations = int(np.sum((margins[:, finite] < -alternating.BOUND_SLACK).any(axis=0)))
    mins = np.min(np.where(finite, margins, np.inf), axis=1)
    summary = (f"summary: samples={len(jj)} frozen={int((~finite).sum())} "
               f"violations={violations} min_upper_cold={fmt(mins[0])} "
               f"min_lower_cold={fmt(mins[1])} min_upper_hot={fmt(mins[2])} "
               f"min_lower_hot={fmt(mins[3])}")
    csv.comment(summary)
    print(summary, file=sys.stderr)
    return EXIT_VIOLATION if violations else EXIT_OK


def cmd_verify(spec: RunSpec, args, out) -> int:
    report = checks.run_verify(
        seed=spec.seed, samples=spec.samples, bounds_samples=args.bounds_samples,
        sim_samples=args.sim_samples, grid_points=args.grid_points,
        no_engine_samples=args.no_engine_samples,
        progress=lambda s: print(f"verify: {s}", file=sys.stderr))
    doc = {"version": __version__, "run_spec": asdict(spec), **report.as_dict()}
    out.write(json.dumps(doc, indent=2) + "\n")
    for c in report.checks:
        status = "PASS" if c.passed else "FAIL"
        print(f"{status} {c.name}: samples={c.samples} worst_margin={c.worst_margin!r}",
              file=sys.stderr)
        if not c.passed:
            print(f"  offending config: {json.dumps(c.offender)}", file=sys.stderr)
    return EXIT_OK if report.passed else EXIT_VIOLATION


COMMANDS = {
    "dynamics": cmd_dynamics,
    "limit-cycle": cmd_limit_cycle,
    "heat-sweep": cmd_heat_sweep,
    "bounds-sample": cmd_bounds_sample,
    "verify": cmd_verify,
}


def _seed(text: str) -> int:
    v = int(text)
    if not 0 <= v < 2**64:
        raise argparse.ArgumentTypeError("seed must be a 64-bit unsigned integer")
    return v


def _finite(text: str) -> float:
    v = float(text)
    if not math.isfinite(v):
        raise argparse.ArgumentTypeError(f"{text} is not finite")
    return v


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--mode", choices=["alternating", "simultaneous"], default="alternating")
    common.add_argument("--tau", type=_finite, default=0.5)
    common.add_argument("--omega-s", type=_finite, default=1.0)
    common.add_argument("--omega-h", type=_finite, default=1.0)
    common.add_argument("--omega-c", type=_finite, default=1.0)
    common.add_argument("--beta-h", type=_finite, default=1.0)
    common.add_argument("--beta-c", type=_finite, default=2.0)
    common.add_argument("--jxx-h", type=_finite, default=1.0)
    common.add_argument("--jyy-h", type=_finite, default=1.0)
    common.add_argument("--jxx-c", type=_finite, default=1.0)
    common.add_argument("--jyy-c", type=_finite, default=1.0)
    common.add_argument("--collisions", type=int, default=100)
    common.add_argument("--samples", type=int, default=1000)
    common.add_argument("--seed", type=_seed, default=0)
    common.add_argument("--tol", type=_finite, default=1e-12)
    common.add_argument("--out", default="-", help="output path, '-' for stdout")

    parser = argparse.ArgumentParser(prog="qubit-ri", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("dynamics", parents=[common], help="collision-by-collision trajectory")
    p.add_argument("--p0", type=_finite, default=1.0, help="initial ground population")
    p.add_argument("--c0-re", type=_finite, default=0.0)
    p.add_argument("--c0-im", type=_finite, default=0.0)
    p.add_argument("--random-initial", action="store_true",
                   help="draw the initial state from the Bloch ball using --seed")

    sub.add_parser("limit-cycle", parents=[common], help="analytic vs oracle limit cycle")

    p = sub.add_parser("heat-sweep", parents=[common], help="limit-cycle heat along tau or J")
    p.add_argument("--axis", choices=["tau", "J"], default="tau",
                   help="J scales all four coupling flags together")
    p.add_argument("--from", dest="from_", type=_finite, default=0.01)
    p.add_argument("--to", type=_finite, default=2.0)
    p.add_argument("--points", type=int, default=200)

    sub.add_parser("bounds-sample", parents=[common], help="random-coupling population bounds")

    p = sub.add_parser("verify", parents=[common], help="run the invariant battery")
    p.add_argument("--bounds-samples", type=int, default=60000)
    p.add_argument("--sim-samples", type=int, default=15000)
    p.add_argument("--grid-points", type=int, default=21)
    p.add_argument("--no-engine-samples", type=int, default=100000)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0) and EXIT_INVALID
    spec = RunSpec(command=args.command, mode=args.mode, tau=args.tau, omega_s=args.omega_s,
                   omega_h=args.omega_h, omega_c=args.omega_c, beta_h=args.beta_h,
                   beta_c=args.beta_c, jxx_h=args.jxx_h, jyy_h=args.jyy_h, jxx_c=args.jxx_c,
                   jyy_c=args.jyy_c, collisions=args.collisions, samples=args.samples,
                   seed=args.seed, tol=args.tol, out=args.out)
    if spec.collisions < 0 or spec.tol <= 0:
        print("error: --collisions must be >= 0 and --tol > 0", file=sys.stderr)
        return EXIT_INVALID
    try:
        with _open_out(spec.out) as out:
            return COMMANDS[args.command](spec, args, out)
    except InvalidInput as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except alternating.FrozenDynamicsError as exc:
        print(f"frozen: {exc}", file=sys.stderr)
        return EXIT_FROZEN
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
