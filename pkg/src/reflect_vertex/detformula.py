"""Domain-wall partition function with a reflecting end, as a determinant.

``domain_wall_det`` is the inhomogeneous Tsuchiya-Kuperberg determinant and
``domain_wall_det_homogeneous`` its already-limited form at w_1 = ... = w_M = 1.
"""

from __future__ import annotations

from typing import Sequence

from .lattice import ModelParams
from .scalarfield import Scalar, SingularPointError, det_exact, prod, require_nonzero, to_scalar


def _quadratics(a, zi, wj) -> tuple:
    c = a**2 + a**-2
    return c - wj / zi**2 - zi**2 / wj, c - 1 / (zi**2 * wj) - zi**2 * wj


def _check_distinct(z: tuple, w: tuple) -> None:
    for v in z + w:
        require_nonzero(v, "spectral parameter")
    M = len(z)
    for i in range(M):
        for j in range(i + 1, M):
            require_nonzero(z[i] / z[j] - z[j] / z[i], f"z{i + 1}/z{j + 1} - z{j + 1}/z{i + 1}")
            require_nonzero(1 / (z[i] * z[j]) - z[i] * z[j], f"(z{i + 1} z{j + 1})^-1 - z{i + 1} z{j + 1}")
            require_nonzero(1 / w[i] - 1 / w[j], f"w{i + 1}^-1 - w{j + 1}^-1")
            require_nonzero(w[i] * w[j] - 1, f"w{i + 1} w{j + 1} - 1")


def domain_wall_det(params: ModelParams, z: Sequence, w: Sequence) -> Scalar:
    """Z_M(z|w) from the determinant of 1/[quadratic(+) quadratic(-)].

    When one of the quadratic factors vanishes the determinant of reciprocals is
    undefined but its product with the full quadratic prefactor is not: row ``i`` of
    the matrix is scaled by ``prod_j D_ij``, which leaves polynomial entries.  That
    form is used only at such points; elsewhere the entries are the reciprocals.
    """
    a, b = params.a, params.b
    z = tuple(to_scalar(v) for v in z)
    w = tuple(to_scalar(v) for v in w)
    M = len(z)
    if M < 1 or len(w) != M:
        raise ValueError(f"need M >= 1 spectral parameters and as many inhomogeneities (got {len(z)}, {len(w)})")
    _check_distinct(z, w)

    pre = params.gap**M * prod(wi**M for wi in w)
    pre *= prod((b / wi - 1 / b) * (a**2 * zi**2 - 1 / (a**2 * zi**2)) for zi, wi in zip(z, w))
    vander = prod(
        (z[i] / z[j] - z[j] / z[i]) * (1 / (z[i] * z[j]) - z[i] * z[j]) * (1 / w[i] - 1 / w[j]) * (w[i] * w[j] - 1)
        for i in range(M)
        for j in range(i + 1, M)
    )

    d = [[q[0] * q[1] for q in (_quadratics(a, zi, wj) for wj in w)] for zi in z]
    if all(v != 0 for row in d for v in row):
        numerator = prod(v for row in d for v in row)
        matrix = [[1 / v for v in row] for row in d]
        return pre * numerator / vander * det_exact(matrix)
    scaled = [[prod(row[k] for k in range(M) if k != j) for j in range(M)] for row in d]
    return pre / vander * det_exact(scaled)


def domain_wall_det_homogeneous(params: ModelParams, z: Sequence) -> Scalar:
    """Z_M(z|1,...,1) from the homogeneous-limit determinant."""
    a, b = params.a, params.b
    z = tuple(to_scalar(v) for v in z)
    M = len(z)
    if M < 1:
        raise ValueError("need M >= 1")
    for i, zi in enumerate(z):
        require_nonzero(zi, f"z{i + 1}")
        if zi**4 == 1:
            raise SingularPointError(f"z{i + 1}^4 = 1")
        if a**2 == zi**2 or a**2 * zi**2 == 1:
            raise SingularPointError(f"a^2 + a^-2 - z{i + 1}^2 - z{i + 1}^-2 vanishes")
    for i in range(M):
        for j in range(i + 1, M):
            require_nonzero(z[i] / z[j] - z[j] / z[i], f"z{i + 1}/z{j + 1} - z{j + 1}/z{i + 1}")
            require_nonzero(1 / (z[i] * z[j]) - z[i] * z[j], f"(z{i + 1} z{j + 1})^-1 - z{i + 1} z{j + 1}")

    pre = a ** (2 * M) * (b - 1 / b) ** M
    pre *= prod((a**2 * zi**2 - 1 / (a**2 * zi**2)) / (1 - zi**-4) for zi in z)
    pre *= prod((a**2 + a**-2 - zi**-2 - zi**2) ** (2 * M) for zi in z)
    vander = prod(
        (z[i] / z[j] - z[j] / z[i]) * (1 / (z[i] * z[j]) - z[i] * z[j])
        for i in range(M)
        for j in range(i + 1, M)
    )
    matrix = []
    for zi in z:
        t = a**2 * zi**2
        matrix.append(
            [t ** (j - 1) / (a**2 - zi**2) ** (2 * j) - t ** (j - 1) / (1 - t) ** (2 * j) for j in range(1, M + 1)]
        )
    return pre / vander * det_exact(matrix)
