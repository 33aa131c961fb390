"""Closed-form symmetric functions for the reflecting-end wavefunctions.

``eval_F`` and ``eval_F_bar`` sum over permutations sigma of the particles and sign
vectors tau in {+1,-1}^N.  Writing ``u_i = z_i^{tau_i}``, every summand is a product
of factors that depend on a single particle (its boundary weight, the full-width
column block, and the blocks left and right of the position it occupies) and of
pair factors for each ordered pair of positions.  Those factors are tabulated once
per input and the summands are then assembled from the tables.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable, Sequence

from .lattice import ModelParams, as_config
from .scalarfield import ONE, ZERO, Scalar, SingularPointError, prod, to_scalar


@dataclass(frozen=True)
class _Blocks:
    boundary: Callable
    full: Callable      # j = 1..M
    left: Callable      # j < x_k
    right: Callable     # j > x_k


def _primal_blocks(a, b) -> _Blocks:
    return _Blocks(
        boundary=lambda u: b / (a * u) - a * u / b,
        full=lambda u, w: a / u - u * w / a,
        left=lambda u, w: a * w / u - u / a,
        right=lambda u, w: a * u - w / (a * u),
    )


def _dual_blocks(a, b) -> _Blocks:
    return _Blocks(
        boundary=lambda u: b * a * u - 1 / (b * a * u),
        full=lambda u, w: a * w / u - u / a,
        left=lambda u, w: a / u - u * w / a,
        right=lambda u, w: a * u * w - 1 / (a * u),
    )


def check_spectral(z: Sequence) -> None:
    """Reject spectral parameters on the denominator locus of F and F-bar."""
    for j, zj in enumerate(z):
        if zj == 0 or zj**4 == 1:
            raise SingularPointError(f"z{j + 1}={zj}: z^4 must differ from 1")
        for k in range(j):
            zk = z[k]
            if zj in (zk, -zk, 1 / zk, -1 / zk):
                raise SingularPointError(f"z{k + 1}={zk} and z{j + 1}={zj} coincide up to sign/inversion")


def _cross(a, u, v) -> Scalar:
    # u sits at the earlier position
    num = (a**2 * u * v - 1 / (a**2 * u * v)) * (a**2 * v / u - u / (a**2 * v))
    den = (u * v - 1 / (u * v)) * (v / u - u / v)
    return num / den


class _Tables:
    """Per-particle and per-pair factors, indexed by particle and sign bit (0: tau=+1)."""

    def __init__(self, params: ModelParams, z, w, x, blocks: _Blocks):
        a = params.a
        self.N = N = len(z)
        M = len(w)
        us = [(zi, 1 / zi) for zi in z]
        self.single = [
            [
                blocks.boundary(u) / (u**2 - u**-2) * prod(blocks.full(u, wj) for wj in w)
                for u in us[i]
            ]
            for i in range(N)
        ]
        self.position = [
            [
                [
                    prod(blocks.left(u, wj) for wj in w[: x[k] - 1])
                    * prod(blocks.right(u, wj) for wj in w[x[k]:M])
                    for k in range(N)
                ]
                for u in us[i]
            ]
            for i in range(N)
        ]
        self.cross = {}
        for i, l in itertools.permutations(range(N), 2):
            for si in (0, 1):
                for sl in (0, 1):
                    self.cross[i, si, l, sl] = _cross(a, us[i][si], us[l][sl])


def _sum_permutations(t: _Tables) -> Scalar:
    N = t.N
    total = ZERO
    perms = list(itertools.permutations(range(N)))
    pairs = [(j, k) for k in range(N) for j in range(k)]
    for signs in range(1 << N):
        s = [(signs >> i) & 1 for i in range(N)]
        base = prod(t.single[i][s[i]] for i in range(N))
        inner = ZERO
        for perm in perms:
            term = ONE
            for k, i in enumerate(perm):
                term *= t.position[i][s[i]][k]
            for j, k in pairs:
                pj, pk = perm[j], perm[k]
                term *= t.cross[pj, s[pj], pk, s[pk]]
            inner += term
        total += base * inner
    return total


def _sum_subsets(t: _Tables) -> Scalar:
    # Placing particles left to right, the pair factors a new particle picks up depend
    # only on the set already placed, so orderings can be merged per subset.
    N = t.N
    total = ZERO
    for signs in range(1 << N):
        s = [(signs >> i) & 1 for i in range(N)]
        acc = {0: ONE}
        for k in range(N):
            nxt: dict = {}
            for placed, val in acc.items():
                for i in range(N):
                    if placed >> i & 1:
                        continue
                    f = val * t.position[i][s[i]][k]
                    for l in range(N):
                        if placed >> l & 1:
                            f *= t.cross[l, s[l], i, s[i]]
                    key = placed | 1 << i
                    nxt[key] = nxt.get(key, ZERO) + f
            acc = nxt
        inner = acc.get((1 << N) - 1, ONE if N == 0 else ZERO)
        total += prod(t.single[i][s[i]] for i in range(N)) * inner
    return total


_METHODS = {"permutation": _sum_permutations, "subset": _sum_subsets}


def _evaluate(params: ModelParams, z, w, x, blocks: _Blocks, method: str) -> Scalar:
    z = tuple(to_scalar(v) for v in z)
    w = tuple(to_scalar(v) for v in w)
    cfg = as_config(x, len(w))
    if cfg.N != len(z):
        raise ValueError(f"{len(z)} spectral parameters for {cfg.N} positions")
    if any(v == 0 for v in w):
        raise SingularPointError("inhomogeneities must be nonzero")
    check_spectral(z)
    try:
        summer = _METHODS[method]
    except KeyError:
        raise ValueError(f"unknown summation method {method!r}") from None
    a = params.a
    pre = params.gap ** len(z) * prod(z_j**-2 / a**2 - a**2 * z_j**2 for z_j in z)
    return pre * summer(_Tables(params, z, w, cfg.x, blocks))


def eval_F(params: ModelParams, z: Sequence, w: Sequence, x, method: str = "permutation") -> Scalar:
    """Symmetric function representing the wavefunction W_{M,N}(z|w|x).

    ``method="permutation"`` sums the N! 2^N summands one by one; ``"subset"`` merges
    orderings that share a placed set and is exponentially cheaper in N.
    """
    return _evaluate(params, z, w, x, _primal_blocks(params.a, params.b), method)


def eval_F_bar(params: ModelParams, z: Sequence, w: Sequence, xbar, method: str = "permutation") -> Scalar:
    """Symmetric function representing the dual wavefunction with holes at ``xbar``."""
    return _evaluate(params, z, w, xbar, _dual_blocks(params.a, params.b), method)
