"""Named identity checkers producing :class:`VerificationReport` records.

Every checker compares two exact scalars.  ``rhs_scale`` multiplies the right-hand
side before comparison; passing 2 is the mutation hook used to show a checker is
not vacuous.
"""

from __future__ import annotations

import hashlib
import itertools
import random
import time
from typing import Iterable, Sequence

from . import bethe
from .detformula import domain_wall_det, domain_wall_det_homogeneous
from .lattice import (
    ModelParams,
    as_config,
    dual_n1_closed_form,
    dual_wavefunction_oracle,
    n1_closed_form,
    wavefunction_oracle,
)
from .report import VerificationReport
from .scalarfield import (
    BETHE,
    HOMOGENEOUS,
    ONE,
    SamplePoint,
    fmt,
    interpolate_univariate,
    prod,
    random_scalars,
    sample_point,
    to_scalar,
)
from .symfunc import eval_F, eval_F_bar

PROPERTY_CHECKS = ("degree", "symmetry", "inversion", "recursion_top", "factorization", "initial")
SUITE_CHECKS = ("lemma", "theorem52", "properties", "pairing", "dwbc", "bethe", "auxiliary")

_REFS = {
    "lemma": "single-particle telescoping identity (induction lemma)",
    "theorem52": "wavefunction equals symmetric function F",
    "theorem52_dual": "dual wavefunction equals symmetric function F-bar",
    "degree": "property (1): polynomial of degree 2N-1 in w_M when x_N = M",
    "symmetry": "property (2): symmetric in z_1..z_N",
    "inversion": "property (3): z_i -> 1/z_i ratio",
    "recursion_top": "property (4): recursion at w_M = a^2 z_N^2 when x_N = M",
    "recursion_top_dual": "dual property (4): recursion at w_M = a^-2 z_N^-2 when xbar_N = M",
    "factorization": "property (4): factorization when x_N != M",
    "initial": "property (5): N = 1, x_1 = M closed form",
    "pairing": "pairing identity: sum of F-bar F over complementary configurations = determinant",
    "pairing_hom": "homogeneous pairing identity against the homogeneous determinant",
    "dwbc": "domain-wall partition function equals the inhomogeneous determinant",
    "dwbc_hom": "domain-wall partition function at w = 1 equals the homogeneous determinant",
    "auxiliary": "scalar relations between z and the Bethe momenta",
}


def _summary(params: ModelParams, z: Sequence, w: Sequence) -> str:
    zs = ",".join(fmt(v) for v in z)
    ws = ",".join(fmt(v) for v in w)
    return f"a={fmt(params.a)} b={fmt(params.b)} z=[{zs}] w=[{ws}]"


def _report(check_id, ref_key, seed, summary, lhs, rhs, start) -> VerificationReport:
    return VerificationReport(
        check_id=check_id,
        paper_ref=_REFS[ref_key],
        seed=seed,
        point_summary=summary,
        lhs=lhs,
        rhs=rhs,
        passed=lhs == rhs,
        elapsed=(time.perf_counter() - start) * 1e3,
    )


def _subseed(seed: int, *labels) -> int:
    h = hashlib.blake2b(repr((seed,) + labels).encode(), digest_size=8)
    return int.from_bytes(h.digest(), "big")


def _cfg_text(x) -> str:
    return ",".join(str(p) for p in x)


# ---------------------------------------------------------------------------
# individual checkers
# ---------------------------------------------------------------------------

def lemma_sides(params: ModelParams, z, w_prefix: Sequence, x1: int) -> tuple:
    a = params.a
    z = to_scalar(z)
    w = [to_scalar(v) for v in w_prefix][: x1 - 1]

    def left(k):
        return (a / z - z * w[k] / a) * (a * w[k] / z - z / a)

    def right(k):
        return (a * z * w[k] - 1 / (a * z)) * (a * z - w[k] / (a * z))

    n = x1 - 1
    lhs = params.gap * (z**2 - z**-2) * sum(
        (w[j] * prod(left(k) for k in range(j)) * prod(right(k) for k in range(j + 1, n)) for j in range(n)),
        start=to_scalar(0),
    )
    rhs = prod(right(k) for k in range(n)) - prod(left(k) for k in range(n))
    return lhs, rhs


def check_lemma_identity(
    params: ModelParams, z, w_prefix: Sequence, x1: int, seed: int = 0, rhs_scale=1
) -> VerificationReport:
    if x1 < 2:
        raise ValueError("x1 must be at least 2")
    if len(w_prefix) < x1 - 1:
        raise ValueError(f"need {x1 - 1} inhomogeneities, got {len(w_prefix)}")
    start = time.perf_counter()
    lhs, rhs = lemma_sides(params, z, w_prefix, x1)
    return _report(
        f"lemma[x1={x1}]", "lemma", seed, _summary(params, [z], w_prefix[: x1 - 1]), lhs, rhs * rhs_scale, start
    )


def check_symfunc_identity(
    params: ModelParams, z: Sequence, w: Sequence, x, dual: bool = False, seed: int = 0, rhs_scale=1
) -> VerificationReport:
    """Lattice contraction against the closed-form symmetric function at one point."""
    cfg = as_config(x, len(w))
    start = time.perf_counter()
    if dual:
        lhs = dual_wavefunction_oracle(params, z, w, cfg)
        rhs = eval_F_bar(params, z, w, cfg)
    else:
        lhs = wavefunction_oracle(params, z, w, cfg)
        rhs = eval_F(params, z, w, cfg)
    name = "theorem52_dual" if dual else "theorem52"
    return _report(
        f"{name}[M={cfg.M},N={cfg.N},x={_cfg_text(cfg.x)}]",
        name,
        seed,
        _summary(params, z, w),
        lhs,
        rhs * rhs_scale,
        start,
    )


def _oracle(dual: bool):
    return dual_wavefunction_oracle if dual else wavefunction_oracle


def _reduced(dual: bool, params, z, w, x) -> object:
    # W_{0,0} on the empty lattice is the empty product
    if not w:
        return ONE
    return _oracle(dual)(params, z, w, x)


def _applicable(check: str, cfg) -> bool:
    top = cfg.N > 0 and cfg.x[-1] == cfg.M
    if check in ("degree", "recursion_top"):
        return top
    if check == "factorization":
        return not top
    if check in ("symmetry", "inversion"):
        return cfg.N > 0
    return True


def check_properties(
    params: ModelParams,
    z: Sequence,
    w: Sequence,
    x,
    which: Iterable[str] | None = None,
    dual: bool = False,
    seed: int = 0,
    rhs_scale=1,
) -> list:
    """Run the selected wavefunction properties; ``which=None`` runs those that apply to ``x``."""
    z = tuple(to_scalar(v) for v in z)
    w = tuple(to_scalar(v) for v in w)
    cfg = as_config(x, len(w))
    if cfg.N != len(z):
        raise ValueError(f"{len(z)} spectral parameters for {cfg.N} positions")
    if which is None:
        selected = [c for c in PROPERTY_CHECKS if _applicable(c, cfg)]
    else:
        selected = list(which)
        for c in selected:
            if c not in PROPERTY_CHECKS:
                raise ValueError(f"unknown property check {c!r}")
            if not _applicable(c, cfg):
                raise ValueError(f"property {c!r} does not apply to x={cfg.x} on width {cfg.M}")
    runners = {
        "degree": _degree,
        "symmetry": _symmetry,
        "inversion": _inversion,
        "recursion_top": _recursion_top,
        "factorization": _factorization,
        "initial": _initial,
    }
    return [runners[c](params, z, w, cfg, dual, seed, rhs_scale) for c in selected]


def _prop_id(name, cfg, dual) -> str:
    tag = "_dual" if dual else ""
    return f"{name}{tag}[M={cfg.M},N={cfg.N},x={_cfg_text(cfg.x)}]"


def _degree(params, z, w, cfg, dual, seed, rhs_scale):
    start = time.perf_counter()
    N = cfg.N
    rng = random.Random(_subseed(seed, "degree", cfg.M, cfg.x, dual))
    ts = random_scalars(rng, 2 * N + 2)
    oracle = _oracle(dual)
    samples = [(t, oracle(params, z, w[:-1] + (t,), cfg)) for t in ts]
    degree = len(interpolate_univariate(samples)) - 1
    return _report(
        _prop_id("degree", cfg, dual), "degree", seed, _summary(params, z, w),
        to_scalar(degree), to_scalar(2 * N - 1) * rhs_scale, start,
    )


def _symmetry(params, z, w, cfg, dual, seed, rhs_scale):
    start = time.perf_counter()
    oracle = _oracle(dual)
    rotated = z[1:] + z[:1]
    lhs = oracle(params, rotated, w, cfg)
    rhs = oracle(params, z, w, cfg)
    return _report(_prop_id("symmetry", cfg, dual), "symmetry", seed, _summary(params, z, w), lhs, rhs * rhs_scale, start)


def _inversion(params, z, w, cfg, dual, seed, rhs_scale):
    start = time.perf_counter()
    a = params.a
    oracle = _oracle(dual)
    zi = z[0]
    flipped = (1 / zi,) + z[1:]
    # W(1/z_i) / W(z_i) = (a^2 z_i^-2 - a^-2 z_i^2) / (a^2 z_i^2 - a^-2 z_i^-2), cross-multiplied
    lhs = oracle(params, flipped, w, cfg) * (a**2 * zi**2 - zi**-2 / a**2)
    rhs = oracle(params, z, w, cfg) * (a**2 * zi**-2 - zi**2 / a**2)
    return _report(_prop_id("inversion", cfg, dual), "inversion", seed, _summary(params, z, w), lhs, rhs * rhs_scale, start)


def recursion_prefactor(params: ModelParams, z: Sequence, w_rest: Sequence, dual: bool = False):
    """Weight of the frozen column and double row at the special value of w_M."""
    a, b = params.a, params.b
    zN = z[-1]
    if dual:
        out = params.gap * (b * a * zN - 1 / (b * a * zN))
        out *= prod(a * zj - 1 / (a**3 * zj * zN**2) for zj in z)
        out *= prod(a / zj - zj / (a**3 * zN**2) for zj in z[:-1])
        out *= prod((a / zN - zN * wj / a) * (a * wj / zN - zN / a) for wj in w_rest)
    else:
        out = params.gap * (b / (a * zN) - a * zN / b)
        out *= prod(a**3 * zN**2 * zj - 1 / (a * zj) for zj in z)
        out *= prod(a**3 * zN**2 / zj - zj / a for zj in z[:-1])
        out *= prod((a * wj / zN - zN / a) * (a / zN - zN * wj / a) for wj in w_rest)
    return out


def special_column_value(params: ModelParams, zN, dual: bool = False):
    a = params.a
    return 1 / (a**2 * zN**2) if dual else a**2 * zN**2


def _recursion_top(params, z, w, cfg, dual, seed, rhs_scale):
    start = time.perf_counter()
    w_special = w[:-1] + (special_column_value(params, z[-1], dual),)
    lhs = _oracle(dual)(params, z, w_special, cfg)
    smaller = cfg.x[:-1]
    rhs = recursion_prefactor(params, z, w[:-1], dual) * _reduced(dual, params, z[:-1], w[:-1], smaller)
    ref = "recursion_top_dual" if dual else "recursion_top"
    return _report(_prop_id("recursion_top", cfg, dual), ref, seed, _summary(params, z, w_special), lhs, rhs * rhs_scale, start)


def factorization_prefactor(params: ModelParams, z: Sequence, wM, dual: bool = False):
    a = params.a
    if dual:
        return prod((a * zj * wM - 1 / (a * zj)) * (a * wM / zj - zj / a) for zj in z)
    return prod((a / zj - zj * wM / a) * (a * zj - wM / (a * zj)) for zj in z)


def _factorization(params, z, w, cfg, dual, seed, rhs_scale):
    start = time.perf_counter()
    lhs = _oracle(dual)(params, z, w, cfg)
    rhs = factorization_prefactor(params, z, w[-1], dual) * _reduced(dual, params, z, w[:-1], cfg.x)
    return _report(_prop_id("factorization", cfg, dual), "factorization", seed, _summary(params, z, w), lhs, rhs * rhs_scale, start)


def _initial(params, z, w, cfg, dual, seed, rhs_scale):
    start = time.perf_counter()
    M = len(w)
    if dual:
        lhs = dual_wavefunction_oracle(params, z[:1], w, (M,))
        rhs = dual_n1_closed_form(params, z[0], w, M)
    else:
        lhs = wavefunction_oracle(params, z[:1], w, (M,))
        rhs = n1_closed_form(params, z[0], w, M)
    tag = "_dual" if dual else ""
    return _report(f"initial{tag}[M={M}]", "initial", seed, _summary(params, z[:1], w), lhs, rhs * rhs_scale, start)


def pairing_terms(M: int, N: int):
    """Yield ``(xbar, x)``: x of size N, xbar its complement of size M - N."""
    for x in itertools.combinations(range(1, M + 1), N):
        taken = set(x)
        yield tuple(p for p in range(1, M + 1) if p not in taken), x


def pairing_sum(params: ModelParams, z: Sequence, w: Sequence, N: int):
    M = len(w)
    zbar, zx = z[: M - N], z[M - N:]
    total = to_scalar(0)
    for xbar, x in pairing_terms(M, N):
        total += eval_F_bar(params, zbar, w, xbar) * eval_F(params, zx, w, x)
    return total


def check_pairing(
    params: ModelParams,
    z: Sequence,
    w: Sequence,
    N: int,
    homogeneous: bool = False,
    seed: int = 0,
    rhs_scale=1,
) -> VerificationReport:
    """F-bar takes the first M - N spectral parameters and F the last N."""
    z = tuple(to_scalar(v) for v in z)
    w = tuple(to_scalar(v) for v in w)
    M = len(w)
    if len(z) != M:
        raise ValueError(f"pairing needs M = {M} spectral parameters, got {len(z)}")
    if not 0 <= N <= M:
        raise ValueError(f"N={N} outside 0..{M}")
    if homogeneous and any(v != 1 for v in w):
        raise ValueError("homogeneous pairing needs w = (1, ..., 1)")
    start = time.perf_counter()
    lhs = pairing_sum(params, z, w, N)
    rhs = domain_wall_det_homogeneous(params, z) if homogeneous else domain_wall_det(params, z, w)
    name = "pairing_hom" if homogeneous else "pairing"
    return _report(f"{name}[M={M},N={N}]", name, seed, _summary(params, z, w), lhs, rhs * rhs_scale, start)


def check_domain_wall(
    params: ModelParams, z: Sequence, w: Sequence, homogeneous: bool = False, seed: int = 0, rhs_scale=1
) -> VerificationReport:
    z = tuple(to_scalar(v) for v in z)
    w = tuple(to_scalar(v) for v in w)
    M = len(w)
    start = time.perf_counter()
    lhs = wavefunction_oracle(params, z, w, tuple(range(1, M + 1)))
    rhs = domain_wall_det_homogeneous(params, z) if homogeneous else domain_wall_det(params, z, w)
    name = "dwbc_hom" if homogeneous else "dwbc"
    return _report(f"{name}[M={M}]", name, seed, _summary(params, z, w), lhs, rhs * rhs_scale, start)


def check_auxiliary(params: ModelParams, zj, zk, seed: int = 0, rhs_scale=1) -> list:
    out = []
    for name, lhs, rhs in bethe.auxiliary_relations(params, zj, zk):
        start = time.perf_counter()
        out.append(_report(f"auxiliary_{name}", "auxiliary", seed, _summary(params, [zj, zk], []), lhs, rhs * rhs_scale, start))
    return out


def check_bethe(params: ModelParams, z: Sequence, x, M: int, seed: int = 0, rhs_scale=1) -> VerificationReport:
    return bethe.check_coordinate_relation(params, z, x, M=M, seed=seed, rhs_scale=rhs_scale)


# ---------------------------------------------------------------------------
# suite
# ---------------------------------------------------------------------------

def _params(point: SamplePoint) -> ModelParams:
    return ModelParams(point.a, point.b)


MAX_RESAMPLES = 8


def _suite_for(seed: int, M: int, N: int, check: str) -> list:
    # a point where both sides vanish proves nothing; draw another (bounded)
    for attempt in range(MAX_RESAMPLES):
        reports = _suite_at(_subseed(seed, M, N, check, attempt), M, N, check)
        if all(r.lhs != 0 or r.rhs != 0 for r in reports):
            break
    return reports


def _suite_at(sub: int, M: int, N: int, check: str) -> list:
    if check == "lemma":
        pt = sample_point(sub, M, 1)
        return [check_lemma_identity(_params(pt), pt.z[0], pt.w, M + 1, seed=sub)]
    if check == "theorem52":
        pt = sample_point(sub, M, N)
        p = _params(pt)
        return [
            check_symfunc_identity(p, pt.z, pt.w, x, dual=dual, seed=sub)
            for dual in (False, True)
            for x in itertools.combinations(range(1, M + 1), N)
        ]
    if check == "properties":
        if N < 1:
            return []
        pt = sample_point(sub, M, N)
        p = _params(pt)
        top = tuple(range(1, N)) + (M,)
        out = []
        for dual in (False, True):
            out += check_properties(p, pt.z, pt.w, top, dual=dual, seed=sub)
            if N < M:
                out += check_properties(p, pt.z, pt.w, tuple(range(1, N + 1)), dual=dual, seed=sub)
        return out
    if check == "pairing":
        pt = sample_point(sub, M, M)
        hom = sample_point(_subseed(sub, "hom"), M, M, {HOMOGENEOUS})
        return [
            check_pairing(_params(pt), pt.z, pt.w, N, seed=sub),
            check_pairing(_params(hom), hom.z, hom.w, N, homogeneous=True, seed=hom.seed),
        ]
    if check == "dwbc":
        pt = sample_point(sub, M, M)
        hom = sample_point(_subseed(sub, "hom"), M, M, {HOMOGENEOUS})
        return [
            check_domain_wall(_params(pt), pt.z, pt.w, seed=sub),
            check_domain_wall(_params(hom), hom.z, hom.w, homogeneous=True, seed=hom.seed),
        ]
    if check == "bethe":
        if N < 1:
            return []
        pt = sample_point(sub, M, N, {HOMOGENEOUS, BETHE})
        p = _params(pt)
        return [check_bethe(p, pt.z, x, M, seed=sub) for x in itertools.combinations(range(1, M + 1), N)]
    if check == "auxiliary":
        pt = sample_point(sub, 0, 2, {BETHE})
        return check_auxiliary(_params(pt), pt.z[0], pt.z[1], seed=sub)
    raise ValueError(f"unknown check {check!r}")


def run_suite(seed: int, sizes: Sequence[tuple], checks: Iterable[str] | str = "all") -> list:
    """Sample one point per (M, N, check) and run the checkers, in input order."""
    if checks == "all":
        selected = list(SUITE_CHECKS)
    else:
        selected = [checks] if isinstance(checks, str) else list(checks)
        for c in selected:
            if c not in SUITE_CHECKS:
                raise ValueError(f"unknown check {c!r}; choose from {SUITE_CHECKS}")
    reports = []
    for M, N in sizes:
        if not (M >= 1 and 0 <= N <= M):
            raise ValueError(f"size (M={M}, N={N}) needs M >= 1 and 0 <= N <= M")
        for check in selected:
            reports += _suite_for(seed, M, N, check)
    return reports
