"""Command-line front end.

    reflect-vertex compute --target wavefunction --M 1 --N 1 --x 1 --a 2 --b 3 --z 2 --w 1
    reflect-vertex verify --target all --M 3 --N 2 --seed 7
    reflect-vertex bench

Scalars cross this boundary only as exact ``p/q`` strings.  Exit status: 0 when
every check passed, 1 when any failed, 2 on usage errors.
"""

from __future__ import annotations

import argparse
import itertools
import json
import os
import sys
import time
from dataclasses import dataclass, field
from typing import Sequence

from . import verify
from .bethe import eval_f, momenta_from_spectral
from .detformula import domain_wall_det, domain_wall_det_homogeneous
from .lattice import ModelParams, OccupationConfig, dual_wavefunction_oracle, wavefunction_oracle
from .report import VerificationReport
from .scalarfield import (
    BETHE,
    HOMOGENEOUS,
    SingularPointError,
    fmt,
    sample_point,
    to_scalar,
)
from .symfunc import check_spectral, eval_F, eval_F_bar

COMMANDS = ("compute", "verify", "bench")
TARGETS = (
    "wavefunction", "dual", "symfunc", "dual-symfunc", "dwbc-det", "dwbc-hom",
    "bethe-f", "lemma", "properties", "theorem52", "pairing", "all",
)
VALUE_TARGETS = TARGETS[:7]
SEED_ENV = "REFLECT_VERTEX_SEED"

EXIT_OK, EXIT_FAILED, EXIT_USAGE = 0, 1, 2

DEFAULT_SIZES = [(1, 1), (2, 1), (3, 1), (3, 2)]

# verify targets -> run_suite check names
_SUITE_MAP = {
    "lemma": ["lemma"],
    "properties": ["properties"],
    "theorem52": ["theorem52"],
    "pairing": ["pairing"],
    "dwbc-det": ["dwbc"],
    "dwbc-hom": ["dwbc"],
    "bethe-f": ["bethe", "auxiliary"],
    "all": list(verify.SUITE_CHECKS),
}


class UsageError(ValueError):
    pass


@dataclass(frozen=True)
class RunConfig:
    command: str
    target: str = "all"
    M: int | None = None
    N: int | None = None
    x: tuple | None = None
    seed: int = 0
    a: object = None
    b: object = None
    z: tuple | None = None
    w: tuple | None = None
    output: str = "json"
    trials: int = 3
    timing: bool = field(default=True)

    @property
    def has_point(self) -> bool:
        return any(v is not None for v in (self.a, self.b, self.z, self.w))

    def to_argv(self) -> list:
        argv = [self.command, "--target", self.target]
        for flag, val in (("--M", self.M), ("--N", self.N)):
            if val is not None:
                argv += [flag, str(val)]
        if self.x is not None:
            argv += ["--x", ",".join(map(str, self.x))]
        argv += ["--seed", str(self.seed)]
        for flag, val in (("--a", self.a), ("--b", self.b)):
            if val is not None:
                argv += [flag, fmt(val)]
        for flag, vals in (("--z", self.z), ("--w", self.w)):
            if vals is not None:
                argv += [flag, ",".join(fmt(v) for v in vals)]
        argv += ["--output", self.output, "--trials", str(self.trials)]
        if not self.timing:
            argv.append("--no-timing")
        return argv


def _positions(text: str) -> tuple:
    try:
        x = tuple(int(p) for p in text.split(",") if p.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"positions must be integers: {text!r}") from None
    if any(p >= q for p, q in zip(x, x[1:])):
        raise argparse.ArgumentTypeError(f"positions not increasing: {text}")
    return x


def _fraction(text: str):
    try:
        return to_scalar(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _fraction_list(text: str) -> tuple:
    return tuple(_fraction(p) for p in text.split(",") if p.strip())


def _nonneg(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if v < 0:
        raise argparse.ArgumentTypeError(f"must be non-negative: {text}")
    return v


def _seed(text: str) -> int:
    v = _nonneg(text)
    if v >= 2**64:
        raise argparse.ArgumentTypeError("seed must fit in 64 bits")
    return v


def _positive(text: str) -> int:
    v = _nonneg(text)
    if v == 0:
        raise argparse.ArgumentTypeError("must be positive")
    return v


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="reflect-vertex",
        description="Exact wavefunctions of the six-vertex model with a reflecting end.",
    )
    parser.add_argument("command", choices=COMMANDS)
    parser.add_argument("--target", choices=TARGETS, default="all")
    parser.add_argument("--M", type=_positive, help="lattice width")
    parser.add_argument("--N", type=_nonneg, help="number of particles")
    parser.add_argument("--x", type=_positions, help="comma-separated increasing positions")
    parser.add_argument("--seed", type=_seed, default=None, help=f"sampling seed (default ${SEED_ENV} or 0)")
    parser.add_argument("--a", type=_fraction, help="crossing parameter p/q")
    parser.add_argument("--b", type=_fraction, help="boundary parameter p/q")
    parser.add_argument("--z", type=_fraction_list, help="spectral parameters p/q,...")
    parser.add_argument("--w", type=_fraction_list, help="inhomogeneities p/q,...")
    parser.add_argument("--output", choices=("json", "text"), default="json")
    parser.add_argument("--trials", type=_positive, default=3, help="independent seeds per size")
    parser.add_argument("--no-timing", dest="timing", action="store_false", help="report elapsed_ms as 0")
    return parser


def _default_seed() -> int:
    env = os.environ.get(SEED_ENV)
    if env is None:
        return 0
    try:
        return _seed(env)
    except argparse.ArgumentTypeError as exc:
        raise UsageError(f"${SEED_ENV}: {exc}") from None


def _validate(cfg: RunConfig) -> None:
    M, N, x = cfg.M, cfg.N, cfg.x
    if x is not None:
        if M is not None and any(p < 1 or p > M for p in x):
            raise UsageError(f"--x positions must lie in 1..{M}")
        if N is not None and len(x) != N:
            raise UsageError(f"--x has {len(x)} positions but --N is {N}")
    if M is not None and N is not None and N > M:
        raise UsageError("--N must not exceed --M")
    if cfg.has_point:
        if cfg.a is None or cfg.b is None:
            raise UsageError("an explicit point needs both --a and --b")
        _validate_point(cfg)


def _validate_point(cfg: RunConfig) -> None:
    """Reject explicit points on the singular locus of the requested quantity."""
    try:
        params = ModelParams(cfg.a, cfg.b)
    except ValueError as exc:
        raise UsageError(f"singular explicit point: {exc}") from None
    z, w = cfg.z or (), cfg.w or ()
    if any(v == 0 for v in z + w):
        raise UsageError("singular explicit point: spectral parameters must be nonzero")
    try:
        if cfg.target in ("symfunc", "dual-symfunc", "theorem52", "pairing"):
            check_spectral(z)
        elif cfg.target == "dwbc-det":
            domain_wall_det(params, z, w)
        elif cfg.target == "dwbc-hom":
            domain_wall_det_homogeneous(params, z)
        elif cfg.target == "bethe-f":
            momenta_from_spectral(params, z, cfg.M)
    except SingularPointError as exc:
        raise UsageError(f"singular explicit point: {exc}") from None


def parse_args(argv: Sequence[str]) -> RunConfig:
    """Parse ``argv`` into a validated :class:`RunConfig`; argparse exits with status 2 on errors."""
    parser = build_parser()
    ns = parser.parse_args(list(argv))
    try:
        seed = ns.seed if ns.seed is not None else _default_seed()
        cfg = RunConfig(
            command=ns.command, target=ns.target, M=ns.M, N=ns.N, x=ns.x, seed=seed,
            a=ns.a, b=ns.b, z=ns.z, w=ns.w, output=ns.output, trials=ns.trials, timing=ns.timing,
        )
        _validate(cfg)
    except UsageError as exc:
        parser.error(str(exc))
    return cfg


# ---------------------------------------------------------------------------
# output
# ---------------------------------------------------------------------------

def render_reports(reports: Sequence[VerificationReport], output: str = "json", timing: bool = True) -> str:
    if output == "json":
        return json.dumps([r.to_json(timing) for r in reports], indent=2)
    lines = []
    for r in reports:
        status = "PASS" if r.passed else "FAIL"
        ms = f" ({r.elapsed:.1f} ms)" if timing else ""
        lines.append(f"{status} {r.check_id} lhs={fmt(r.lhs)} rhs={fmt(r.rhs)} seed={r.seed}{ms}")
    passed = sum(r.passed for r in reports)
    lines.append(f"{passed}/{len(reports)} checks passed")
    return "\n".join(lines)


def emit_report(reports: Sequence[VerificationReport], output: str = "json", stream=None, timing: bool = True) -> int:
    """Write the reports and return the process exit status."""
    stream = sys.stdout if stream is None else stream
    stream.write(render_reports(reports, output, timing) + "\n")
    return EXIT_OK if all(r.passed for r in reports) else EXIT_FAILED


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------

def _point(cfg: RunConfig, M: int, N: int, constraints=()):
    """Explicit overrides where given, sampled values elsewhere."""
    sampled = sample_point(cfg.seed, M, N, constraints)
    a = cfg.a if cfg.a is not None else sampled.a
    b = cfg.b if cfg.b is not None else sampled.b
    z = cfg.z if cfg.z is not None else sampled.z
    w = cfg.w if cfg.w is not None else sampled.w
    if len(z) != N or len(w) != M:
        raise UsageError(f"need {N} spectral parameters and {M} inhomogeneities, got {len(z)} and {len(w)}")
    return ModelParams(a, b), tuple(z), tuple(w)


def _sizes(cfg: RunConfig) -> tuple:
    M = cfg.M
    if M is None:
        if cfg.w is not None:
            M = len(cfg.w)
        elif cfg.x:
            M = cfg.x[-1]
        else:
            raise UsageError("--M is required")
    N = cfg.N
    if N is None:
        if cfg.x is not None:
            N = len(cfg.x)
        elif cfg.z is not None and cfg.target not in ("dwbc-det", "dwbc-hom"):
            N = len(cfg.z)
        else:
            N = M
    return M, N


def compute(cfg: RunConfig):
    if cfg.target not in VALUE_TARGETS:
        raise UsageError(f"compute supports {', '.join(VALUE_TARGETS)}")
    M, N = _sizes(cfg)
    t = cfg.target
    if t in ("dwbc-det", "dwbc-hom"):
        cons = {HOMOGENEOUS} if t == "dwbc-hom" else ()
        params, z, w = _point(cfg, M, M, cons)
        value = domain_wall_det(params, z, w) if t == "dwbc-det" else domain_wall_det_homogeneous(params, z)
        x = None
    else:
        x = cfg.x if cfg.x is not None else tuple(range(1, N + 1))
        cons = {HOMOGENEOUS, BETHE} if t == "bethe-f" else ()
        params, z, w = _point(cfg, M, N, cons)
        cfgx = OccupationConfig(M, x)
        if t == "wavefunction":
            value = wavefunction_oracle(params, z, w, cfgx)
        elif t == "dual":
            value = dual_wavefunction_oracle(params, z, w, cfgx)
        elif t == "symfunc":
            value = eval_F(params, z, w, cfgx)
        elif t == "dual-symfunc":
            value = eval_F_bar(params, z, w, cfgx)
        else:
            value = eval_f(momenta_from_spectral(params, z, M), cfgx)
    return {
        "target": t,
        "M": M,
        "N": N,
        "x": list(x) if x is not None else None,
        "point": verify._summary(params, z, w),
        "value": fmt(value),
    }


def _explicit_reports(cfg: RunConfig) -> list:
    M, N = _sizes(cfg)
    t = cfg.target
    if t in ("dwbc-det", "dwbc-hom", "pairing"):
        params, z, w = _point(cfg, M, M, {HOMOGENEOUS} if t == "dwbc-hom" else ())
        if t == "pairing":
            hom = all(v == 1 for v in w)
            return [verify.check_pairing(params, z, w, N, homogeneous=hom, seed=cfg.seed)]
        return [verify.check_domain_wall(params, z, w, homogeneous=t == "dwbc-hom", seed=cfg.seed)]
    params, z, w = _point(cfg, M, N)
    if t == "lemma":
        return [verify.check_lemma_identity(params, z[0], w, M + 1, seed=cfg.seed)]
    xs = [cfg.x] if cfg.x is not None else list(itertools.combinations(range(1, M + 1), N))
    if t == "theorem52":
        return [verify.check_symfunc_identity(params, z, w, x, dual=d, seed=cfg.seed) for d in (False, True) for x in xs]
    if t == "properties":
        return [r for d in (False, True) for x in xs for r in verify.check_properties(params, z, w, x, dual=d, seed=cfg.seed)]
    if t == "bethe-f":
        return [verify.check_bethe(params, z, x, M, seed=cfg.seed) for x in xs]
    raise UsageError(f"target {t!r} needs sampled points; drop the explicit --a/--b/--z/--w")


def run_verify(cfg: RunConfig) -> list:
    if cfg.target in ("wavefunction", "dual", "symfunc", "dual-symfunc"):
        raise UsageError(f"verify has no check named {cfg.target!r}; use theorem52")
    if cfg.has_point:
        return _explicit_reports(cfg)
    sizes = [_sizes(cfg)] if cfg.M is not None else DEFAULT_SIZES
    checks = _SUITE_MAP[cfg.target]
    reports = []
    for trial in range(cfg.trials):
        seed = cfg.seed + trial
        if cfg.x is not None and cfg.target in ("theorem52", "properties"):
            M, N = sizes[0]
            pt = sample_point(seed, M, N)
            params = ModelParams(pt.a, pt.b)
            if cfg.target == "theorem52":
                reports += [verify.check_symfunc_identity(params, pt.z, pt.w, cfg.x, dual=d, seed=seed) for d in (False, True)]
            else:
                reports += [r for d in (False, True) for r in verify.check_properties(params, pt.z, pt.w, cfg.x, dual=d, seed=seed)]
        else:
            reports += verify.run_suite(seed, sizes, checks)
    return reports


BENCH_SIZES = [(4, 2), (6, 3), (8, 4), (8, 5), (8, 6), (12, 4)]


def bench(cfg: RunConfig) -> list:
    sizes = [_sizes(cfg)] if cfg.M is not None else BENCH_SIZES
    rows = []
    for M, N in sizes:
        pt = sample_point(cfg.seed, M, N)
        params = ModelParams(pt.a, pt.b)
        x = tuple(range(M - N + 1, M + 1))
        row = {"M": M, "N": N}
        for name, fn in (
            ("eval_F_ms", lambda: eval_F(params, pt.z, pt.w, x)),
            ("eval_F_subset_ms", lambda: eval_F(params, pt.z, pt.w, x, method="subset")),
            ("oracle_ms", lambda: wavefunction_oracle(params, pt.z, pt.w, x)),
        ):
            start = time.perf_counter()
            fn()
            row[name] = round((time.perf_counter() - start) * 1e3, 1)
        rows.append(row)
    return rows


def main(argv: Sequence[str] | None = None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    try:
        cfg = parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    try:
        if cfg.command == "compute":
            result = compute(cfg)
            if cfg.output == "json":
                print(json.dumps(result, indent=2))
            else:
                print(result["value"])
            return EXIT_OK
        if cfg.command == "bench":
            rows = bench(cfg)
            if cfg.output == "json":
                print(json.dumps(rows, indent=2))
            else:
                for row in rows:
                    print(" ".join(f"{k}={v}" for k, v in row.items()))
            return EXIT_OK
        return emit_report(run_verify(cfg), cfg.output, timing=cfg.timing)
    except (UsageError, SingularPointError) as exc:
        print(f"reflect-vertex: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
