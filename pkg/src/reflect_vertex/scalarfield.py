"""Exact rational scalars, admissible random sample points, interpolation and determinants.

Every quantity in this package is a rational function of the couplings and the
spectral parameters, so evaluating at rational points gives exact values.  The
scalar type is ``gmpy2.mpq``: a canonical reduced fraction that compares and
hashes like :class:`fractions.Fraction` but multiplies several times faster.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from gmpy2 import lcm, mpq, mpz

Scalar = type(mpq())

ZERO = mpq(0)
ONE = mpq(1)

#: Constraint flags understood by :func:`sample_point`.
HOMOGENEOUS = "homogeneous"
BETHE = "bethe"
CONSTRAINT_FLAGS = frozenset({HOMOGENEOUS, BETHE})

MAX_REJECTIONS = 10**6


class SamplingError(RuntimeError):
    """Raised when no admissible point is found within the rejection budget."""


class SingularPointError(ValueError):
    """A formula was evaluated on the zero locus of one of its denominators."""


def require_nonzero(value, what: str):
    if value == 0:
        raise SingularPointError(f"{what} vanishes")
    return value


def to_scalar(value) -> Scalar:
    """Coerce ints, Fractions, mpq and ``"p/q"`` strings to an exact scalar.

    Floats are refused: a binary float is almost never the rational the caller meant.
    """
    if isinstance(value, Scalar):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not scalars")
    if isinstance(value, int):
        return mpq(value)
    if isinstance(value, Fraction):
        return mpq(value.numerator, value.denominator)
    if isinstance(value, str):
        text = value.strip()
        num, sep, den = text.partition("/")
        try:
            p = int(num)
            q = int(den) if sep else 1
        except ValueError:
            raise ValueError(f"not an exact fraction literal: {value!r}") from None
        if q == 0:
            raise ZeroDivisionError(f"zero denominator in {value!r}")
        return mpq(p, q)
    raise TypeError(f"cannot convert {type(value).__name__} to an exact scalar")


def fmt(value) -> str:
    """Canonical ``p/q`` text (``p`` alone for integers)."""
    return str(to_scalar(value))


@dataclass(frozen=True)
class SamplePoint:
    a: Scalar
    b: Scalar
    z: tuple
    w: tuple
    seed: int = 0
    constraints: frozenset = field(default=frozenset(), compare=False)

    @property
    def M(self) -> int:
        return len(self.w)

    @property
    def N(self) -> int:
        return len(self.z)

    def summary(self) -> str:
        zs = ",".join(fmt(v) for v in self.z)
        ws = ",".join(fmt(v) for v in self.w)
        return f"a={fmt(self.a)} b={fmt(self.b)} z=[{zs}] w=[{ws}]"


# ---------------------------------------------------------------------------
# admissibility predicates
# ---------------------------------------------------------------------------

def _coupling_violations(a, b):
    out = []
    if a == 0:
        out.append("a == 0")
    elif a**4 == 1:
        out.append("a^4 == 1")
    if b == 0:
        out.append("b == 0")
    elif b**2 == 1:
        out.append("b^2 == 1")
    return out


def _z_violations(a, b, z, j, constraints):
    """Conditions on z[j] alone and against z[:j]."""
    zj = z[j]
    out = []
    if zj == 0:
        return [f"z{j + 1} == 0"]
    if zj**4 == 1:
        out.append(f"z{j + 1}^4 == 1")
    # every wavefunction carries the factor a^2 z^2 - a^-2 z^-2 (and its z -> 1/z image);
    # on its zero locus all identities hold vacuously
    if (a * zj) ** 4 == 1 or zj**4 == a**4:
        out.append(f"(a z{j + 1})^4 == 1 or z{j + 1}^4 == a^4")
    # reflection weights at z and 1/z
    if b**2 in (a**2 * zj**2, a**2 / zj**2) or (b * a * zj) ** 2 == 1 or (b * a / zj) ** 2 == 1:
        out.append(f"reflection weight vanishes at z{j + 1}")
    for k in range(j):
        zk = z[k]
        if zj in (zk, -zk, 1 / zk, -1 / zk):
            out.append(f"z{k + 1} ~ z{j + 1}")
    if HOMOGENEOUS in constraints or BETHE in constraints:
        s = a**2 + a**-2 - zj**2 - zj**-2
        if s == 0:
            out.append(f"a^2+a^-2-z{j + 1}^2-z{j + 1}^-2 == 0")
    if BETHE in constraints and s != 0:
        xj = bethe_momentum(a, zj)
        for k in range(j):
            xk = bethe_momentum(a, z[k])
            if xj == xk or xj * xk == 1:
                out.append(f"X{k + 1} ~ X{j + 1}")
    return out


def _w_violations(b, w, j):
    wj = w[j]
    if wj == 0:
        return [f"w{j + 1} == 0"]
    out = []
    if wj == b**2:
        out.append(f"w{j + 1} == b^2")
    for i in range(j):
        if w[i] == wj:
            out.append(f"w{i + 1} == w{j + 1}")
        if w[i] * wj == 1:
            out.append(f"w{i + 1}*w{j + 1} == 1")
    return out


def _pair_violations(a, zi, wj, label):
    c = a**2 + a**-2
    out = []
    if c - wj / zi**2 - zi**2 / wj == 0:
        out.append(f"quadratic denominator (+) vanishes at {label}")
    if c - 1 / (zi**2 * wj) - zi**2 * wj == 0:
        out.append(f"quadratic denominator (-) vanishes at {label}")
    # vertex weights at spectral parameter z and 1/z
    if wj in (a**2 * zi**2, zi**2 / a**2, a**2 / zi**2, 1 / (a**2 * zi**2)):
        out.append(f"vertex weight vanishes at {label}")
    return out


def bethe_momentum(a, z):
    # multiplicative momentum e^{iK}; nonzero and finite iff a^2+a^-2-z^2-z^-2 != 0
    return (a * z - 1 / (a * z)) / (a / z - z / a)


def point_violations(point: SamplePoint, constraints: Iterable[str] | None = None) -> list[str]:
    """Return every violated admissibility condition (empty list means admissible)."""
    cons = frozenset(point.constraints if constraints is None else constraints)
    a, b, z, w = point.a, point.b, point.z, point.w
    out = _coupling_violations(a, b)
    if out:
        return out
    for j in range(len(z)):
        out += _z_violations(a, b, z, j, cons)
    if HOMOGENEOUS in cons:
        if any(v != 1 for v in w):
            out.append("homogeneous point with w != 1")
    else:
        for j in range(len(w)):
            out += _w_violations(b, w, j)
    if any(v == 0 for v in itertools.chain(z, w)):
        return out
    for i, zi in enumerate(z):
        for j, wj in enumerate(w):
            out += _pair_violations(a, zi, wj, f"(z{i + 1}, w{j + 1})")
    return out


def is_admissible(point: SamplePoint, constraints: Iterable[str] | None = None) -> bool:
    return not point_violations(point, constraints)


# ---------------------------------------------------------------------------
# sampling
# ---------------------------------------------------------------------------

def _draw(rng: random.Random, bound: int) -> Scalar:
    p = rng.randint(1, bound) * rng.choice((-1, 1))
    q = rng.randint(1, bound)
    return mpq(p, q)


def sample_point(
    seed: int,
    M: int,
    N: int,
    constraints: Iterable[str] = (),
    bound: int = 9,
) -> SamplePoint:
    """Draw a deterministic admissible point with ``N`` spectral parameters and ``M`` columns.

    Entries are ``±p/q`` with ``1 <= p, q <= bound``.  Each entry is redrawn until it
    is compatible with the entries already drawn; :class:`SamplingError` is raised
    after ``MAX_REJECTIONS`` redraws in total.
    """
    cons = frozenset(constraints)
    unknown = cons - CONSTRAINT_FLAGS
    if unknown:
        raise ValueError(f"unknown constraint flags: {sorted(unknown)}")
    if M < 0 or N < 0:
        raise ValueError("M and N must be non-negative")
    if seed < 0 or seed >= 2**64:
        raise ValueError("seed must be a 64-bit unsigned integer")
    rng = random.Random(seed)
    rejections = 0

    def bump():
        nonlocal rejections
        rejections += 1
        if rejections >= MAX_REJECTIONS:
            raise SamplingError(
                f"no admissible point after {MAX_REJECTIONS} rejections (M={M}, N={N}, bound={bound})"
            )

    while True:
        a, b = _draw(rng, bound), _draw(rng, bound)
        if not _coupling_violations(a, b):
            break
        bump()

    z: list = []
    for j in range(N):
        while True:
            z.append(_draw(rng, bound))
            if not _z_violations(a, b, z, j, cons):
                break
            z.pop()
            bump()

    if HOMOGENEOUS in cons:
        w = [ONE] * M
    else:
        w = []
        for j in range(M):
            while True:
                w.append(_draw(rng, bound))
                if not _w_violations(b, w, j) and not any(
                    _pair_violations(a, zi, w[j], "") for zi in z
                ):
                    break
                w.pop()
                bump()

    point = SamplePoint(a, b, tuple(z), tuple(w), seed, cons)
    # homogeneous w=1 pair conditions reduce to the per-z condition checked above
    assert is_admissible(point), point_violations(point)
    return point


def random_scalars(rng: random.Random, count: int, bound: int = 9, avoid=()) -> list:
    """Distinct nonzero rationals, none in ``avoid``; used for interpolation abscissae."""
    seen = set(avoid)
    out = []
    while len(out) < count:
        v = _draw(rng, bound)
        if v not in seen:
            seen.add(v)
            out.append(v)
    return out


# ---------------------------------------------------------------------------
# interpolation
# ---------------------------------------------------------------------------

def interpolate_univariate(samples: Sequence[tuple]) -> list:
    """Exact interpolating polynomial through ``(t, y)`` pairs, lowest degree first.

    Trailing zero coefficients are trimmed, so the zero polynomial is ``[]``.
    """
    if not samples:
        raise ValueError("need at least one sample")
    ts = [to_scalar(t) for t, _ in samples]
    ys = [to_scalar(y) for _, y in samples]
    if len(set(ts)) != len(ts):
        raise ValueError("duplicate abscissae")
    n = len(ts)
    # Newton divided differences
    coef = list(ys)
    for level in range(1, n):
        for i in range(n - 1, level - 1, -1):
            coef[i] = (coef[i] - coef[i - 1]) / (ts[i] - ts[i - level])
    # Horner expansion of the Newton form into monomials
    poly = [coef[-1]]
    for i in range(n - 2, -1, -1):
        shifted = [ZERO] + poly
        for k, c in enumerate(poly):
            shifted[k] -= ts[i] * c
        shifted[0] += coef[i]
        poly = shifted
    while poly and poly[-1] == 0:
        poly.pop()
    return poly


def poly_eval(coeffs: Sequence, t) -> Scalar:
    acc = ZERO
    for c in reversed(coeffs):
        acc = acc * t + c
    return acc


# ---------------------------------------------------------------------------
# determinants
# ---------------------------------------------------------------------------

def _check_square(matrix) -> list:
    rows = [[to_scalar(v) for v in row] for row in matrix]
    n = len(rows)
    if n == 0 or any(len(r) != n for r in rows):
        raise ValueError("determinant needs a non-empty square matrix")
    return rows


def det_laplace(matrix) -> Scalar:
    """Cofactor expansion along the first row; exponential cost, used for tiny matrices."""
    rows = _check_square(matrix)
    return _laplace(rows)


def _laplace(rows) -> Scalar:
    n = len(rows)
    if n == 1:
        return rows[0][0]
    if n == 2:
        return rows[0][0] * rows[1][1] - rows[0][1] * rows[1][0]
    total = ZERO
    for c, entry in enumerate(rows[0]):
        if entry == 0:
            continue
        minor = [r[:c] + r[c + 1:] for r in rows[1:]]
        term = entry * _laplace(minor)
        total = total - term if c % 2 else total + term
    return total


def det_bareiss(matrix) -> Scalar:
    """Fraction-free Bareiss elimination.

    Each row is cleared of denominators first, so the elimination itself runs on
    integers and every division is exact.
    """
    rows = _check_square(matrix)
    n = len(rows)
    scale = mpz(1)
    m = []
    for row in rows:
        den = mpz(1)
        for v in row:
            den = lcm(den, v.denominator)
        scale *= den
        m.append([mpz(v * den) for v in row])
    sign = 1
    prev = mpz(1)
    for k in range(n - 1):
        if m[k][k] == 0:
            for r in range(k + 1, n):
                if m[r][k] != 0:
                    m[k], m[r] = m[r], m[k]
                    sign = -sign
                    break
            else:
                return ZERO
        pivot = m[k][k]
        for i in range(k + 1, n):
            mik = m[i][k]
            row_i, row_k = m[i], m[k]
            for j in range(k + 1, n):
                row_i[j] = (pivot * row_i[j] - mik * row_k[j]) // prev
            row_i[k] = mpz(0)
        prev = pivot
    return mpq(sign * m[n - 1][n - 1], scale)


def det_exact(matrix) -> Scalar:
    """Exact determinant: cofactor expansion up to 4x4, Bareiss beyond."""
    rows = _check_square(matrix)
    if len(rows) <= 4:
        return _laplace(rows)
    return det_bareiss(rows)


def permutation_sign(perm: Sequence[int]) -> int:
    sign = 1
    seen = [False] * len(perm)
    for start in range(len(perm)):
        if seen[start]:
            continue
        length = 0
        j = start
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def prod(values: Iterable, start=ONE) -> Scalar:
    acc = start
    for v in values:
        acc = acc * v
    return acc
