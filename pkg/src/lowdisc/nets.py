"""Digital nets over F_b: point generation, structure checks, dual space.

Points are kept digit-exact: each coordinate is a :class:`DigitVector`
holding base-b fractional digits (index 0 = most significant digit).
Floating point enters only when discrepancy numerics ask for it.

A digital net is defined by s generating matrices C_1, ..., C_s of shape
p x m over F_b.  Point n has coordinate j with digit k equal to row k of
C_j times the base-b digit vector of n (least significant digit first).
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Sequence

import numpy as np

from .errors import CapacityError, ParameterError, PrecisionError
from .field import FieldMatrix, _rref, is_prime, kernel_basis

__all__ = [
    "DigitVector",
    "GeneratingMatrixSet",
    "PointSet",
    "DualSpace",
    "digit_vector_of_index",
    "generate_net_points",
    "generate_sequence_points",
    "compute_t_value",
    "is_tms_net",
    "geometric_net_check",
    "dual_space",
    "walsh_eval",
    "char_property_sum",
]


@dataclass(frozen=True)
class DigitVector:
    """Exact base-b expansion of one coordinate in [0, 1).

    digits[0] is the most significant fractional digit: the represented
    value is sum(digits[i] * base**-(i+1)).
    """

    base: int
    digits: tuple[int, ...]

    def __post_init__(self):
        if not is_prime(self.base):
            raise ParameterError(f"base {self.base} is not prime")
        if any(d < 0 or d >= self.base for d in self.digits):
            raise ParameterError("digit out of range for base")

    @classmethod
    def from_fraction(cls, value: Fraction, base: int, precision: int) -> "DigitVector":
        """Truncate a rational in [0, 1) to `precision` base-b digits."""
        value = Fraction(value)
        if not 0 <= value < 1:
            raise ParameterError("value must lie in [0, 1)")
        num = (value.numerator * base**precision) // value.denominator
        digits = []
        for _ in range(precision):
            num, d = divmod(num, base)
            digits.append(int(d))
        return cls(base, tuple(reversed(digits)))

    def to_fraction(self) -> Fraction:
        num = 0
        for d in self.digits:
            num = num * self.base + d
        return Fraction(num, self.base ** len(self.digits)) if self.digits else Fraction(0)

    def to_float(self) -> float:
        return float(self.to_fraction())

    def padded(self, precision: int) -> "DigitVector":
        """Right-pad with zero digits to exactly `precision` digits."""
        if len(self.digits) > precision:
            if any(self.digits[precision:]):
                raise PrecisionError(
                    f"cannot shorten {len(self.digits)} digits to {precision}: "
                    "nonzero digit would be lost"
                )
            return DigitVector(self.base, self.digits[:precision])
        return DigitVector(self.base, self.digits + (0,) * (precision - len(self.digits)))


class PointSet:
    """An ordered list of s-dimensional points with exact digit coordinates.

    All coordinate digit arrays are normalised to exactly `precision`
    digits so that file serialisation round-trips bit-exactly.  Instances
    are immutable by convention; numpy views are created lazily.
    """

    def __init__(
        self,
        points: Iterable[Sequence[DigitVector]],
        *,
        base: int,
        s: int,
        precision: int,
        provenance: dict | None = None,
    ):
        if not is_prime(base):
            raise ParameterError(f"base {base} is not prime")
        if s < 1 or precision < 1:
            raise ParameterError("dimension and precision must be positive")
        normalised = []
        for pt in points:
            if len(pt) != s:
                raise ParameterError(f"point has {len(pt)} coordinates, expected {s}")
            coords = []
            for dv in pt:
                if dv.base != base:
                    raise ParameterError("coordinate base differs from point set base")
                coords.append(dv.padded(precision))
            normalised.append(tuple(coords))
        self.base = base
        self.s = s
        self.precision = precision
        self.points = tuple(normalised)
        self.provenance = dict(provenance) if provenance else None
        self._digit_cache: np.ndarray | None = None
        self._float_cache: np.ndarray | None = None

    def __len__(self) -> int:
        return len(self.points)

    def __getitem__(self, n: int) -> tuple[DigitVector, ...]:
        return self.points[n]

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, PointSet)
            and self.base == other.base
            and self.s == other.s
            and self.precision == other.precision
            and self.points == other.points
            and self.provenance == other.provenance
        )

    def digit_array(self) -> np.ndarray:
        """All digits as a (N, s, precision) uint8 array (read-only)."""
        if self._digit_cache is None:
            arr = np.zeros((len(self.points), self.s, self.precision), dtype=np.uint8)
            for n, pt in enumerate(self.points):
                for j, dv in enumerate(pt):
                    arr[n, j, :] = dv.digits
            arr.setflags(write=False)
            self._digit_cache = arr
        return self._digit_cache

    def float_array(self) -> np.ndarray:
        """Coordinates as (N, s) float64; the only lossy view of a point set."""
        if self._float_cache is None:
            weights = self.base ** -(np.arange(1, self.precision + 1, dtype=np.float64))
            arr = self.digit_array().astype(np.float64) @ weights
            arr.setflags(write=False)
            self._float_cache = arr
        return self._float_cache

    def fractions(self, n: int) -> tuple[Fraction, ...]:
        """Exact coordinates of point n."""
        return tuple(dv.to_fraction() for dv in self.points[n])

    def prefix(self, n: int) -> "PointSet":
        if n > len(self.points):
            raise ParameterError(f"prefix of {n} points requested, only {len(self.points)} present")
        prov = dict(self.provenance) if self.provenance else {}
        prov["prefix"] = n
        return PointSet(
            self.points[:n], base=self.base, s=self.s, precision=self.precision, provenance=prov
        )


@dataclass(frozen=True)
class GeneratingMatrixSet:
    """s generating matrices over F_b sharing shape rows x cols (p >= m)."""

    base: int
    s: int
    rows: int
    cols: int
    matrices: tuple[FieldMatrix, ...]

    def __post_init__(self):
        if self.s != len(self.matrices) or self.s < 1:
            raise ParameterError("need one matrix per dimension")
        for mat in self.matrices:
            if mat.base != self.base:
                raise ParameterError("matrix base mismatch")
            if (mat.rows, mat.cols) != (self.rows, self.cols):
                raise ParameterError("matrix shape mismatch")
        if self.rows < self.cols:
            raise ParameterError("net matrices need at least as many rows as columns")

    @classmethod
    def from_matrices(cls, matrices: Sequence[FieldMatrix]) -> "GeneratingMatrixSet":
        first = matrices[0]
        return cls(first.base, len(matrices), first.rows, first.cols, tuple(matrices))


def digit_vector_of_index(n: int, b: int, m: int) -> np.ndarray:
    """Base-b digits of index n, least significant first, length m."""
    if not 0 <= n < b**m:
        raise ParameterError(f"index {n} outside [0, {b}^{m})")
    digits = np.zeros(m, dtype=np.int64)
    for i in range(m):
        n, digits[i] = divmod(n, b)
    return digits


def _index_digit_matrix(n_from: int, n_to: int, b: int, m: int) -> np.ndarray:
    """Digit vectors of n_from..n_to-1 stacked as an (n_to - n_from, m) array."""
    n = np.arange(n_from, n_to, dtype=np.int64)
    return (n[:, None] // b ** np.arange(m, dtype=np.int64)[None, :]) % b


def _points_from_digit_blocks(blocks: list[np.ndarray], base, precision, provenance) -> PointSet:
    """Assemble a PointSet from per-dimension (N, p) digit arrays."""
    s = len(blocks)
    count = blocks[0].shape[0]
    pts = []
    for n in range(count):
        pts.append(
            tuple(DigitVector(base, tuple(int(d) for d in blocks[j][n])) for j in range(s))
        )
    return PointSet(pts, base=base, s=s, precision=precision, provenance=provenance)


def generate_net_points(gm: GeneratingMatrixSet, provenance: dict | None = None) -> PointSet:
    """All b^m points of the digital net with the given matrices, in index order."""
    b, m, p = gm.base, gm.cols, gm.rows
    count = b**m
    D = _index_digit_matrix(0, count, b, m)
    blocks = [(D @ mat.array.T) % b for mat in gm.matrices]
    return _points_from_digit_blocks(blocks, b, p, provenance)


def generate_sequence_points(
    source,
    s: int,
    b: int,
    n_from: int,
    n_to: int,
    precision: int,
) -> PointSet:
    """Points n_from..n_to-1 of a digital sequence, exact to `precision` digits.

    `source` provides the generating matrices column-wise: `matrix(j, rows,
    cols)` returns the upper-left block of C_j and `max_row(col)` bounds the
    lowest nonzero row of a column, so insufficient precision is detected
    rather than silently truncated.
    """
    if n_from > n_to or n_from < 0:
        raise ParameterError("need 0 <= n_from <= n_to")
    if n_from == n_to:
        return PointSet([], base=b, s=s, precision=precision)
    cols = _digit_count(n_to - 1, b)
    deepest = max(source.max_row(ell) for ell in range(1, cols + 1))
    if deepest > precision:
        raise PrecisionError(
            f"column depth {deepest} exceeds precision {precision}: nonzero digits would be lost"
        )
    D = _index_digit_matrix(n_from, n_to, b, cols)
    blocks = []
    for j in range(1, s + 1):
        mat = source.matrix(j, precision, cols)
        blocks.append((D @ mat.T) % b)
    return _points_from_digit_blocks(blocks, b, precision, None)


def _digit_count(n: int, b: int) -> int:
    c = 0
    while n > 0:
        n //= b
        c += 1
    return max(c, 1)


def _compositions(total: int, parts: int) -> Iterator[tuple[int, ...]]:
    """All tuples of `parts` nonnegative integers summing to `total`."""
    if parts == 1:
        yield (total,)
        return
    for head in range(total + 1):
        for rest in _compositions(total - head, parts - 1):
            yield (head,) + rest


def _rows_independent(gm: GeneratingMatrixSet, d: tuple[int, ...]) -> bool:
    take = [gm.matrices[j].array[: d[j]] for j in range(gm.s) if d[j] > 0]
    if not take:
        return True
    stacked = np.vstack(take)
    _, pivots = _rref(stacked, gm.base)
    return len(pivots) == stacked.shape[0]


def compute_t_value(gm: GeneratingMatrixSet) -> int:
    """Exact net quality parameter per the row-independence criterion.

    Smallest t such that for every composition d_1 + ... + d_s = m - t the
    pooled first d_j rows of the C_j are linearly independent over F_b.
    Exhaustive over compositions; meant for desk-scale m and s.
    """
    m = gm.cols
    for t in range(m + 1):
        if all(_rows_independent(gm, d) for d in _compositions(m - t, gm.s)):
            return t
    raise AssertionError("unreachable: t = m always satisfies the criterion")


def is_tms_net(gm: GeneratingMatrixSet, t: int) -> bool:
    if not 0 <= t <= gm.cols:
        raise ParameterError(f"t must be in [0, {gm.cols}]")
    return compute_t_value(gm) <= t


def geometric_net_check(ps: PointSet, t: int) -> bool:
    """Count points in every elementary interval directly.

    True iff each b-adic box of volume b^(t-m) holds exactly b^t points.
    Cost grows like the number of boxes; desk scale only.
    """
    b = ps.base
    count = len(ps)
    m = 0
    while b**m < count:
        m += 1
    if b**m != count:
        raise ParameterError(f"point count {count} is not a power of base {b}")
    if not 0 <= t <= m:
        raise ParameterError(f"t must be in [0, {m}]")
    digits = ps.digit_array()
    if digits.shape[2] < m:
        pad = np.zeros((count, ps.s, m - digits.shape[2]), dtype=np.uint8)
        digits = np.concatenate([digits, pad], axis=2)
    want = b**t
    for d in _compositions(m - t, ps.s):
        keys: dict[tuple, int] = {}
        for n in range(count):
            key = tuple(digits[n, j, : d[j]].tobytes() for j in range(ps.s))
            keys[key] = keys.get(key, 0) + 1
        if any(c != want for c in keys.values()):
            return False
    return True


# ----------------------------------------------------------------------
# Dual space
# ----------------------------------------------------------------------

class DualSpace:
    """The dual of a digital net: all k with C_1^T k_1 + ... + C_s^T k_s = 0.

    Each coordinate k_j is read digit-wise (least significant first) as a
    vector in F_b^p, so enumeration covers exactly k in {0, ..., b^p - 1}^s.
    Enumeration spans the kernel of the stacked m x (s p) system instead of
    filtering all b^(s p) candidates.
    """

    def __init__(self, gm: GeneratingMatrixSet, cap: int):
        b, p = gm.base, gm.rows
        stacked = np.hstack([mat.array.T for mat in gm.matrices])
        self.gm = gm
        self.stacked = FieldMatrix(stacked, b)
        basis = kernel_basis(self.stacked)
        self.kernel_dim = len(basis)
        self.size = b**self.kernel_dim
        if self.size > cap:
            raise CapacityError(
                f"dual enumeration of {b}^{self.kernel_dim} elements exceeds cap {cap}"
            )
        self.basis = (
            np.array(basis, dtype=np.int64)
            if basis
            else np.zeros((0, gm.s * p), dtype=np.int64)
        )
        self._digits: np.ndarray | None = None

    def element_digits(self) -> np.ndarray:
        """All dual elements as a (size, s, p) uint8 digit array, zero first.

        Spans the kernel in chunks so that the intermediate int64 products
        stay small even for million-element duals.
        """
        if self._digits is None:
            b, s, p = self.gm.base, self.gm.s, self.gm.rows
            d = self.kernel_dim
            arr = np.zeros((self.size, s * p), dtype=np.uint8)
            if d:
                radix = b ** np.arange(d, dtype=np.int64)[None, :]
                chunk = 1 << 16
                for start in range(0, self.size, chunk):
                    idx = np.arange(start, min(start + chunk, self.size), dtype=np.int64)
                    coeffs = (idx[:, None] // radix) % b
                    arr[start : start + len(idx)] = (coeffs @ self.basis) % b
            arr = arr.reshape(self.size, s, p)
            arr.setflags(write=False)
            self._digits = arr
        return self._digits

    def elements(self) -> list[tuple[int, ...]]:
        """Dual elements as integer vectors (k_1, ..., k_s)."""
        b, p = self.gm.base, self.gm.rows
        powers = [b**i for i in range(p)]
        out = []
        for row in self.element_digits():
            out.append(tuple(int(sum(int(row[j, i]) * powers[i] for i in range(p))) for j in range(self.gm.s)))
        return out

    def contains(self, kvec: Sequence[int]) -> bool:
        """Membership by direct substitution into the stacked system."""
        b, p = self.gm.base, self.gm.rows
        if len(kvec) != self.gm.s:
            raise ParameterError("dual membership needs one component per dimension")
        flat = np.zeros(self.gm.s * p, dtype=np.int64)
        for j, k in enumerate(kvec):
            if k < 0:
                raise ParameterError("dual components are nonnegative integers")
            if k >= b**p:
                return False
            for i in range(p):
                k, d = divmod(k, b)
                flat[j * p + i] = d
        return not np.any((self.stacked.array @ flat) % b)


def dual_space(gm: GeneratingMatrixSet, cap: int = 1 << 21) -> DualSpace:
    return DualSpace(gm, cap)


# ----------------------------------------------------------------------
# Walsh functions and the character property
# ----------------------------------------------------------------------

def walsh_eval(k: int, x: DigitVector) -> complex:
    """Value of the k-th base-b Walsh function at x.

    wal_0 is identically 1; otherwise the value is omega_b raised to the
    inner product of the digits of k with the fractional digits of x.
    Base 2 stays in exact +-1 arithmetic.
    """
    if k < 0:
        raise ParameterError("Walsh index must be nonnegative")
    b = x.base
    e = 0
    kk = k
    for xd in x.digits:
        if kk == 0:
            break
        kk, kd = divmod(kk, b)
        e += kd * xd
    e %= b
    if b == 2:
        return complex(1.0 if e == 0 else -1.0)
    return cmath.exp(2j * cmath.pi * e / b)


def char_property_sum(ps: PointSet, kvec: Sequence[int]) -> complex:
    """(1/N) sum over the net of the product Walsh function at index kvec.

    For a digital net this is exactly 1 when kvec lies in the dual space
    and exactly 0 otherwise; the complex rounding noise stays far below
    the 1e-9 tolerances used by the verification suite.
    """
    if len(kvec) != ps.s:
        raise ParameterError("need one Walsh index per coordinate")
    b, p = ps.base, ps.precision
    kdig = np.zeros((ps.s, p), dtype=np.int64)
    for j, k in enumerate(kvec):
        if k < 0:
            raise ParameterError("Walsh index must be nonnegative")
        for i in range(p):
            k, d = divmod(k, b)
            kdig[j, i] = d
    digits = ps.digit_array().astype(np.int64)
    exponents = np.einsum("njk,jk->n", digits, kdig) % b
    n = len(ps)
    if n == 0:
        raise ParameterError("empty point set")
    if b == 2:
        return complex((np.count_nonzero(exponents == 0) - np.count_nonzero(exponents)) / n)
    counts = np.bincount(exponents, minlength=b)
    omega = np.exp(2j * np.pi * np.arange(b) / b)
    return complex(np.dot(counts, omega) / n)
