"""Lattice side: L and K operator elements, row operators and brute-force wavefunctions.

States of the quantum space F_1 (x) ... (x) F_M are sparse maps from M-bit masks to
exact amplitudes.  Site ``j`` (1-based) is bit ``j - 1``; a set bit is the state
|1>, i.e. an occupied site.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Mapping, Sequence

from .scalarfield import ONE, ZERO, Scalar, prod, to_scalar

MAX_SITES = 14


@dataclass(frozen=True)
class ModelParams:
    a: Scalar
    b: Scalar

    def __post_init__(self):
        a, b = to_scalar(self.a), to_scalar(self.b)
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        if a == 0 or a**4 == 1:
            raise ValueError(f"crossing parameter a={a} must satisfy a != 0, a^4 != 1")
        if b == 0 or b**2 == 1:
            raise ValueError(f"boundary parameter b={b} must satisfy b != 0, b^2 != 1")

    @property
    def gap(self) -> Scalar:
        """``a^2 - a^-2``, the weight of the spin-flip vertices."""
        return self.a**2 - self.a**-2


@dataclass(frozen=True)
class OccupationConfig:
    """Strictly increasing 1-based positions ``x`` on a width-``M`` lattice."""

    M: int
    x: tuple

    def __post_init__(self):
        x = tuple(int(v) for v in self.x)
        object.__setattr__(self, "x", x)
        if self.M < 1:
            raise ValueError("lattice width must be positive")
        if len(x) > self.M:
            raise ValueError(f"{len(x)} positions do not fit in width {self.M}")
        if any(p < 1 or p > self.M for p in x):
            raise ValueError(f"positions {x} must lie in 1..{self.M}")
        if any(p >= q for p, q in zip(x, x[1:])):
            raise ValueError(f"positions {x} are not strictly increasing")

    @property
    def N(self) -> int:
        return len(self.x)

    @property
    def mask(self) -> int:
        m = 0
        for p in self.x:
            m |= 1 << (p - 1)
        return m

    def complement(self) -> "OccupationConfig":
        taken = set(self.x)
        return OccupationConfig(self.M, tuple(p for p in range(1, self.M + 1) if p not in taken))


def as_config(x, M: int) -> OccupationConfig:
    if isinstance(x, OccupationConfig):
        if x.M != M:
            raise ValueError(f"configuration width {x.M} != lattice width {M}")
        return x
    return OccupationConfig(M, tuple(x))


@dataclass(frozen=True)
class FockVector:
    M: int
    amplitudes: Mapping[int, Scalar] = field(default_factory=dict)

    def __post_init__(self):
        if not 0 <= self.M <= MAX_SITES:
            raise ValueError(f"width {self.M} outside 0..{MAX_SITES}")
        limit = 1 << self.M
        clean = {}
        for mask, amp in self.amplitudes.items():
            if not 0 <= mask < limit:
                raise ValueError(f"mask {mask} out of range for width {self.M}")
            if amp != 0:
                clean[mask] = to_scalar(amp)
        object.__setattr__(self, "amplitudes", MappingProxyType(clean))

    @classmethod
    def basis(cls, M: int, mask: int, amp=ONE) -> "FockVector":
        return cls(M, {mask: amp})

    @classmethod
    def vacuum(cls, M: int) -> "FockVector":
        """|0^M>"""
        return cls.basis(M, 0)

    @classmethod
    def filled(cls, M: int) -> "FockVector":
        """|1^M>"""
        return cls.basis(M, (1 << M) - 1)

    def __getitem__(self, mask: int) -> Scalar:
        return self.amplitudes.get(mask, ZERO)

    def __len__(self) -> int:
        return len(self.amplitudes)

    def __bool__(self) -> bool:
        return bool(self.amplitudes)

    def occupations(self) -> set:
        return {bin(m).count("1") for m in self.amplitudes}


# ---------------------------------------------------------------------------
# local weights
# ---------------------------------------------------------------------------

def l_weights(params: ModelParams, z, w) -> dict:
    """The six nonzero elements of L(z, w), keyed ``(aux_in, q_in, aux_out, q_out)``."""
    a = params.a
    z, w = to_scalar(z), to_scalar(w)
    diag = a * w / z - z / a
    cross = a * z - w / (a * z)
    return {
        (0, 0, 0, 0): diag,
        (0, 1, 0, 1): cross,
        (1, 0, 0, 1): params.gap,
        (0, 1, 1, 0): params.gap * w,
        (1, 0, 1, 0): cross,
        (1, 1, 1, 1): diag,
    }


def l_element(params: ModelParams, z, w, aux_in: int, q_in: int, aux_out: int, q_out: int) -> Scalar:
    """<aux_out|<q_out| L(z, w) |aux_in>|q_in>; zero off the six ice-rule entries."""
    return l_weights(params, z, w).get((aux_in, q_in, aux_out, q_out), ZERO)


def k_element(params: ModelParams, z, out_pair: tuple) -> Scalar:
    """Reflection weight for the bra pair ``(a2 index, a1 index)``."""
    a, b = params.a, params.b
    z = to_scalar(z)
    if tuple(out_pair) == (0, 1):
        return b * a * z - 1 / (b * a * z)
    if tuple(out_pair) == (1, 0):
        return b / (a * z) - a * z / b
    return ZERO


def _transitions(params: ModelParams, z, w) -> dict:
    table: dict = {(0, 0): [], (0, 1): [], (1, 0): [], (1, 1): []}
    for (ai, qi, ao, qo), val in l_weights(params, z, w).items():
        if val != 0:
            table[(ai, qi)].append((ao, qo, val))
    return table


def _check_width(w: Sequence, v: FockVector) -> tuple:
    w = tuple(to_scalar(x) for x in w)
    if v.M != len(w):
        raise ValueError(f"vector width {v.M} != number of inhomogeneities {len(w)}")
    return w


def _row(params: ModelParams, z, w: tuple, amps: Mapping, target: int) -> dict:
    # T = L_1 ... L_M acts on the auxiliary |1> with L_M first, so sweep sites M..1
    states = {(1, m): amp for m, amp in amps.items()}
    for site in range(len(w), 0, -1):
        bit = 1 << (site - 1)
        table = _transitions(params, z, w[site - 1])
        nxt: dict = {}
        for (aux, mask), amp in states.items():
            q = 1 if mask & bit else 0
            for ao, qo, val in table[(aux, q)]:
                key = (ao, mask | bit if qo else mask & ~bit)
                nxt[key] = nxt.get(key, ZERO) + amp * val
        states = nxt
    out: dict = {}
    for (aux, mask), amp in states.items():
        if aux == target and amp != 0:
            out[mask] = out.get(mask, ZERO) + amp
    return out


_ROW_TARGET = {"B": 0, "D": 1}


def apply_row_operator(kind: str, params: ModelParams, z, w: Sequence, v: FockVector) -> FockVector:
    """Apply the single-row operator B(z|w) (``kind="B"``) or D(z|w) to ``v``."""
    if kind not in _ROW_TARGET:
        raise ValueError(f"row operator must be 'B' or 'D', got {kind!r}")
    w = _check_width(w, v)
    return FockVector(v.M, _row(params, to_scalar(z), w, v.amplitudes, _ROW_TARGET[kind]))


def _double_row(params: ModelParams, z, w: tuple, amps: Mapping) -> dict:
    zi = 1 / z
    c_db = k_element(params, z, (1, 0))
    c_bd = k_element(params, z, (0, 1))
    first = _row(params, zi, w, _row(params, z, w, amps, 0), 1)
    second = _row(params, zi, w, _row(params, z, w, amps, 1), 0)
    out = {m: c_db * amp for m, amp in first.items()}
    for m, amp in second.items():
        out[m] = out.get(m, ZERO) + c_bd * amp
    return {m: amp for m, amp in out.items() if amp != 0}


def apply_double_row_b(params: ModelParams, z, w: Sequence, v: FockVector) -> FockVector:
    """Double-row creation operator via its B/D decomposition."""
    w = _check_width(w, v)
    return FockVector(v.M, _double_row(params, to_scalar(z), w, v.amplitudes))


def apply_double_row_b_literal(params: ModelParams, z, w: Sequence, v: FockVector) -> FockVector:
    """Debug path: contract K T(z^-1) T(z) |1>|1> with two auxiliary registers.

    Exponential in nothing but slower than the decomposition; kept for M <= 3 cross-checks.
    """
    w = _check_width(w, v)
    z = to_scalar(z)
    states = {(1, 1, m): amp for m, amp in v.amplitudes.items()}
    for site in range(len(w), 0, -1):
        bit = 1 << (site - 1)
        lower = _transitions(params, z, w[site - 1])
        upper = _transitions(params, 1 / z, w[site - 1])
        nxt: dict = {}
        for (a2, a1, mask), amp in states.items():
            q = 1 if mask & bit else 0
            for o1, q1, v1 in lower[(a1, q)]:
                for o2, q2, v2 in upper[(a2, q1)]:
                    key = (o2, o1, mask | bit if q2 else mask & ~bit)
                    nxt[key] = nxt.get(key, ZERO) + amp * v1 * v2
        states = nxt
    out: dict = {}
    for (a2, a1, mask), amp in states.items():
        weight = k_element(params, z, (a2, a1))
        if weight != 0 and amp != 0:
            out[mask] = out.get(mask, ZERO) + weight * amp
    return FockVector(v.M, out)


# ---------------------------------------------------------------------------
# wavefunctions
# ---------------------------------------------------------------------------

def _apply_chain(params: ModelParams, z: Sequence, w: tuple, amps: dict) -> dict:
    # B(z_1) ... B(z_N)|v>: the rightmost operator acts first
    for zj in reversed(z):
        amps = _double_row(params, to_scalar(zj), w, amps)
    return amps


def wavefunction_oracle(params: ModelParams, z: Sequence, w: Sequence, x) -> Scalar:
    """<x_1..x_N| B(z_1) ... B(z_N) |0^M> by explicit contraction."""
    w = tuple(to_scalar(v) for v in w)
    M = len(w)
    if not 1 <= M <= MAX_SITES:
        raise ValueError(f"lattice width {M} outside 1..{MAX_SITES}")
    cfg = as_config(x, M)
    if cfg.N != len(z):
        raise ValueError(f"{len(z)} spectral parameters for {cfg.N} particles")
    amps = _apply_chain(params, z, w, {0: ONE})
    return amps.get(cfg.mask, ZERO)


def dual_wavefunction_oracle(params: ModelParams, z: Sequence, w: Sequence, xbar) -> Scalar:
    """<1^M| B(z_1) ... B(z_N) |xbar_1..xbar_N>, the ket having holes at ``xbar``."""
    w = tuple(to_scalar(v) for v in w)
    M = len(w)
    if not 1 <= M <= MAX_SITES:
        raise ValueError(f"lattice width {M} outside 1..{MAX_SITES}")
    cfg = as_config(xbar, M)
    if cfg.N != len(z):
        raise ValueError(f"{len(z)} spectral parameters for {cfg.N} holes")
    full = (1 << M) - 1
    amps = _apply_chain(params, z, w, {full & ~cfg.mask: ONE})
    return amps.get(full, ZERO)


def n1_closed_form(params: ModelParams, z, w: Sequence, x1: int) -> Scalar:
    """Closed form of the single-particle wavefunction W_{M,1}(z|w|x1)."""
    a, b = params.a, params.b
    z = to_scalar(z)
    w = [to_scalar(v) for v in w]
    M = len(w)
    total = ZERO
    for u in (z, 1 / z):
        term = (b / (a * u) - a * u / b) / (u**2 - u**-2)
        term *= prod(a / u - u * wj / a for wj in w)
        term *= prod(a * wj / u - u / a for wj in w[: x1 - 1])
        term *= prod(a * u - wj / (a * u) for wj in w[x1:M])
        total += term
    return params.gap * (z**-2 / a**2 - a**2 * z**2) * total


def dual_n1_closed_form(params: ModelParams, z, w: Sequence, x1: int) -> Scalar:
    """Closed form of the single-hole dual wavefunction."""
    a, b = params.a, params.b
    z = to_scalar(z)
    w = [to_scalar(v) for v in w]
    M = len(w)
    total = ZERO
    for u in (z, 1 / z):
        term = (b * a * u - 1 / (b * a * u)) / (u**2 - u**-2)
        term *= prod(a * wj / u - u / a for wj in w)
        term *= prod(a / u - u * wj / a for wj in w[: x1 - 1])
        term *= prod(a * u * wj - 1 / (a * u) for wj in w[x1:M])
        total += term
    return params.gap * (z**-2 / a**2 - a**2 * z**2) * total
