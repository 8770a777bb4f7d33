"""Explicit generating-matrix families and point-set constructions.

Covers the binomial-coefficient matrices of Chen and Skriganov (Faure's
matrices are the interlacing-factor-1 special case), generalized
Niederreiter sequences over F_2 built from Laurent series of irreducible
polynomials, digit interlacing at both the point and the matrix level,
the interlaced finite/infinite constructions built from them, the
trim-and-rescale device that turns b^m-point sets into N-point sets for
arbitrary N, and Davenport's symmetrized two-dimensional set.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

import numpy as np

from .errors import ConsistencyError, ParameterError
from .field import (
    FieldMatrix,
    binomial_mod_p,
    irreducible_polys_f2,
    is_prime,
    poly_degree,
    poly_divmod,
    poly_mul,
)
from .nets import (
    DigitVector,
    GeneratingMatrixSet,
    PointSet,
    generate_net_points,
    generate_sequence_points,
)

__all__ = [
    "cs_matrices",
    "faure_matrices",
    "NiederreiterSource",
    "niederreiter_t_bound",
    "niederreiter_net_matrices",
    "interlace_point",
    "interlace_pointset",
    "interlace_matrices",
    "dp_net_matrices",
    "dp_net",
    "dp_finite_base",
    "dp_finite_pointset",
    "dp_sequence",
    "arbitrary_n_trim",
    "davenport_symmetrized",
    "van_der_corput",
]


# ----------------------------------------------------------------------
# Chen-Skriganov / Faure matrices
# ----------------------------------------------------------------------

def default_betas(alpha: int, s: int) -> tuple[tuple[int, ...], ...]:
    """Row-major enumeration 0, 1, ..., alpha*s - 1; distinct by construction."""
    return tuple(tuple(i * alpha + l for l in range(alpha)) for i in range(s))


def cs_matrices(
    b: int,
    alpha: int,
    m: int,
    s: int,
    betas: Sequence[Sequence[int]] | None = None,
) -> GeneratingMatrixSet:
    """Binomial-coefficient generating matrices over F_b.

    Matrix i has alpha*m rows and columns; row (l-1)*m + j carries the
    entries C(k-1, j-1) * beta_{i,l}^(k-j) mod b for k = 1..alpha*m, with
    the conventions C(i, j) = 0 for j > i and 0^0 = 1.  Requires b >= alpha*s
    and pairwise distinct beta values.
    """
    if not is_prime(b):
        raise ParameterError(f"base {b} is not prime")
    if alpha < 1 or m < 1 or s < 1:
        raise ParameterError("alpha, m, s must be positive")
    if b < alpha * s:
        raise ParameterError(f"need b >= alpha*s, got b={b} < {alpha * s}")
    if betas is None:
        betas = default_betas(alpha, s)
    flat = [beta for row in betas for beta in row]
    if len(betas) != s or any(len(row) != alpha for row in betas):
        raise ParameterError("betas must be an s x alpha array")
    if any(not 0 <= beta < b for beta in flat):
        raise ParameterError("beta values must lie in F_b")
    if len(set(flat)) != len(flat):
        raise ParameterError("beta values must be pairwise distinct")
    n = alpha * m
    matrices = []
    for i in range(s):
        arr = np.zeros((n, n), dtype=np.int64)
        for l in range(1, alpha + 1):
            beta = betas[i][l - 1]
            for j in range(1, m + 1):
                row = (l - 1) * m + j - 1
                for k in range(1, n + 1):
                    if k < j:
                        continue
                    if k == j:
                        arr[row, k - 1] = 1  # C(j-1, j-1) * beta^0, with 0^0 = 1
                    else:
                        arr[row, k - 1] = (
                            binomial_mod_p(k - 1, j - 1, b) * pow(beta, k - j, b)
                        ) % b
        matrices.append(FieldMatrix(arr, b))
    return GeneratingMatrixSet(b, s, n, n, tuple(matrices))


def faure_matrices(b: int, m: int, s: int) -> GeneratingMatrixSet:
    """The classical power-of-Pascal matrices: interlacing factor 1."""
    return cs_matrices(b, 1, m, s)


# ----------------------------------------------------------------------
# Generalized Niederreiter sequences over F_2
# ----------------------------------------------------------------------

class NiederreiterSource:
    """Generating-matrix source for the generalized Niederreiter sequence.

    Dimension j uses the j-th polynomial of the degree-sorted irreducible
    list over F_2 (starting x, 1+x, 1+x+x^2, ...).  Entry (k, ell) of C_j
    is the coefficient of x^-ell in the Laurent expansion of
    x^(e_j - z - 1) / p_j(x)^i, where k - 1 = (i-1) e_j + z, 0 <= z < e_j.
    Entries vanish for k > ell, so column ell never reaches below row ell.
    """

    def __init__(self, dim: int):
        if dim < 1:
            raise ParameterError("dimension must be >= 1")
        self.dim = dim
        self.polys = irreducible_polys_f2(dim)
        self.degrees = [poly_degree(p) for p in self.polys]

    def max_row(self, col: int) -> int:
        return col

    def t_bound(self) -> int:
        """Quality parameter of the sequence: sum of (deg p_j - 1)."""
        return sum(e - 1 for e in self.degrees)

    def matrix(self, j: int, rows: int, cols: int) -> np.ndarray:
        """Upper-left rows x cols block of C_j as a uint8 array."""
        if not 1 <= j <= self.dim:
            raise ParameterError(f"dimension index {j} out of range 1..{self.dim}")
        pj = self.polys[j - 1]
        e = self.degrees[j - 1]
        arr = np.zeros((rows, cols), dtype=np.uint8)
        power = 1  # p_j^(i-1), updated as i grows
        prev_i = 0
        for k in range(1, rows + 1):
            i1, z = divmod(k - 1, e)
            i = i1 + 1
            while prev_i < i:
                power = poly_mul(power, pj)
                prev_i += 1
            numerator = 1 << (e - z - 1)
            quotient, _ = poly_divmod(numerator << cols, power)
            for ell in range(max(1, k), cols + 1):
                arr[k - 1, ell - 1] = (quotient >> (cols - ell)) & 1
        return arr

    def entry(self, j: int, k: int, ell: int) -> int:
        """Single matrix entry c_{j,k,ell}."""
        if k < 1 or ell < 1:
            raise ParameterError("matrix indices are 1-based")
        if k > ell:
            return 0
        return int(self.matrix(j, k, ell)[k - 1, ell - 1])


def niederreiter_t_bound(s: int) -> int:
    return NiederreiterSource(s).t_bound()


def niederreiter_net_matrices(s: int, m: int, rows: int | None = None) -> GeneratingMatrixSet:
    """Net matrices from the sequence: upper-left rows x m truncations."""
    rows = m if rows is None else rows
    source = NiederreiterSource(s)
    mats = tuple(FieldMatrix(source.matrix(j, rows, m), 2) for j in range(1, s + 1))
    return GeneratingMatrixSet(2, s, rows, m, mats)


# ----------------------------------------------------------------------
# Digit interlacing
# ----------------------------------------------------------------------

def interlace_point(xs: Sequence[DigitVector]) -> DigitVector:
    """Interleave the dyadic digits of alpha coordinates into one.

    Output digit at position r + (a-1)*alpha is digit a of input r, so the
    result has alpha times the (common, padded) input precision.
    """
    alpha = len(xs)
    if alpha < 1:
        raise ParameterError("need at least one coordinate")
    if any(x.base != 2 for x in xs):
        raise ParameterError("digit interlacing is defined for base 2")
    depth = max((len(x.digits) for x in xs), default=0)
    out = [0] * (alpha * depth)
    for r, x in enumerate(xs, start=1):
        for a, digit in enumerate(x.digits, start=1):
            out[r + (a - 1) * alpha - 1] = digit
    return DigitVector(2, tuple(out))


def interlace_pointset(ps: PointSet, alpha: int) -> PointSet:
    """Apply digit interlacing to blocks of alpha coordinates of every point."""
    if ps.s % alpha != 0:
        raise ParameterError(f"dimension {ps.s} not divisible by alpha={alpha}")
    s_out = ps.s // alpha
    pts = []
    for pt in ps.points:
        pts.append(
            tuple(interlace_point(pt[j * alpha : (j + 1) * alpha]) for j in range(s_out))
        )
    prov = dict(ps.provenance) if ps.provenance else None
    return PointSet(
        pts, base=2, s=s_out, precision=alpha * ps.precision, provenance=prov
    )


def interlace_matrices(gm: GeneratingMatrixSet, alpha: int) -> GeneratingMatrixSet:
    """Matrix-level digit interlacing.

    Row u*alpha + v of the j-th output matrix is row u + 1 of input matrix
    (j-1)*alpha + v; the output has alpha*p rows and the same columns, and
    generates exactly the pointwise-interlaced net.
    """
    if gm.s % alpha != 0:
        raise ParameterError(f"dimension {gm.s} not divisible by alpha={alpha}")
    s_out = gm.s // alpha
    mats = []
    for j in range(1, s_out + 1):
        arr = np.zeros((alpha * gm.rows, gm.cols), dtype=np.int64)
        for u in range(gm.rows):
            for v in range(1, alpha + 1):
                arr[u * alpha + v - 1] = gm.matrices[(j - 1) * alpha + v - 1].array[u]
        mats.append(FieldMatrix(arr, gm.base))
    return GeneratingMatrixSet(gm.base, s_out, alpha * gm.rows, gm.cols, tuple(mats))


# ----------------------------------------------------------------------
# Interlaced Niederreiter constructions
# ----------------------------------------------------------------------

def dp_net_matrices(alpha: int, m: int, s: int) -> GeneratingMatrixSet:
    """Interlaced generating matrices: Niederreiter in dimension alpha*s."""
    if alpha < 1 or m < 1 or s < 1:
        raise ParameterError("alpha, m, s must be positive")
    base = niederreiter_net_matrices(alpha * s, m)
    return interlace_matrices(base, alpha)


def dp_net(alpha: int, m: int, s: int) -> PointSet:
    """2^m-point interlaced net in [0,1)^s with higher-order dual weight."""
    ps = generate_net_points(
        dp_net_matrices(alpha, m, s),
        provenance={"family": "dp-net", "alpha": alpha, "m": m, "s": s},
    )
    return ps


def _index_fraction_digits(n: int, m: int) -> DigitVector:
    """n * 2^-m as an m-digit dyadic coordinate."""
    bits = tuple((n >> (m - 1 - i)) & 1 for i in range(m))
    return DigitVector(2, bits)


def dp_finite_base(m: int, s: int) -> PointSet:
    """The 2^m-point interlaced set that dp_finite_pointset trims.

    First 2^m points of the Niederreiter sequence in dimension 3s-1 with
    the coordinate n*2^-m prepended, interlaced in blocks of three.  The
    first coordinate is verified to hit every m-digit prefix exactly once,
    which is what makes the trim to arbitrary N possible.
    """
    if m < 1 or s < 1:
        raise ParameterError("need m >= 1 and s >= 1")
    count = 1 << m
    source = NiederreiterSource(3 * s - 1)
    seq = generate_sequence_points(source, 3 * s - 1, 2, 0, count, precision=m)
    pts = []
    for n in range(count):
        pts.append((_index_fraction_digits(n, m),) + seq.points[n])
    wide = PointSet(pts, base=2, s=3 * s, precision=m)
    interlaced = interlace_pointset(wide, 3)
    _check_first_coordinate_stratified(interlaced, m)
    return interlaced


def dp_finite_pointset(N: int, s: int, precision: int | None = None) -> PointSet:
    """N-point set in [0,1)^s for arbitrary N >= 2.

    Trims dp_finite_base (with 2^(m-1) < N <= 2^m) to its first N points
    along coordinate one and rescales that coordinate by 2^m/N.
    """
    if N < 2:
        raise ParameterError("need N >= 2")
    if s < 1:
        raise ParameterError("need s >= 1")
    m = (N - 1).bit_length()
    trimmed = arbitrary_n_trim(dp_finite_base(m, s), N, precision=precision)
    return PointSet(
        trimmed.points,
        base=2,
        s=s,
        precision=trimmed.precision,
        provenance={"family": "dp-finite", "N": N, "s": s},
    )


def _check_first_coordinate_stratified(ps: PointSet, m: int) -> None:
    """Every count |{x_1 < r*2^-m}| must equal r; equivalently the sorted
    m-digit prefixes of the first coordinates are exactly 0..2^m-1."""
    prefixes = np.sort(_first_coordinate_prefixes(ps, m))
    if not np.array_equal(prefixes, np.arange(len(ps), dtype=np.int64)):
        raise ConsistencyError(
            "projection onto the first coordinate is not a maximally stratified "
            "one-dimensional net; upstream construction is broken"
        )


def _first_coordinate_prefixes(ps: PointSet, m: int) -> np.ndarray:
    digits = ps.digit_array()[:, 0, :]
    if digits.shape[1] < m:
        pad = np.zeros((digits.shape[0], m - digits.shape[1]), dtype=np.uint8)
        digits = np.concatenate([digits, pad], axis=1)
    powers = ps.base ** np.arange(m - 1, -1, -1, dtype=np.int64)
    return digits[:, :m].astype(np.int64) @ powers


def dp_sequence(s: int, n_max: int) -> PointSet:
    """First n_max points of the interlacing-factor-5 sequence in [0,1)^s."""
    if n_max < 1:
        raise ParameterError("need n_max >= 1")
    if s < 1:
        raise ParameterError("need s >= 1")
    mm = max(1, (n_max - 1).bit_length())
    source = NiederreiterSource(5 * s)
    seq = generate_sequence_points(source, 5 * s, 2, 0, n_max, precision=mm)
    out = interlace_pointset(seq, 5)
    return PointSet(
        out.points,
        base=2,
        s=s,
        precision=out.precision,
        provenance={"family": "dp-sequence", "s": s, "n_max": n_max},
    )


# ----------------------------------------------------------------------
# Arbitrary-N trim and Davenport's symmetrized set
# ----------------------------------------------------------------------

def arbitrary_n_trim(ps: PointSet, N: int, precision: int | None = None) -> PointSet:
    """Keep the first N points along coordinate one and rescale by b^m/N.

    Requires b^(m-1) < N <= b^m where the input holds b^m points, and the
    hypothesis that the first coordinate hits every m-digit prefix exactly
    once (checked).  Rescaled first coordinates are generally not base-b
    rationals of finite expansion, so they are truncated to `precision`
    digits (default: at least 48).
    """
    b = ps.base
    count = len(ps)
    m = 0
    while b**m < count:
        m += 1
    if b**m != count:
        raise ParameterError(f"point count {count} is not a power of base {b}")
    if m == 0:
        if N != 1:
            raise ParameterError(f"a single-point set can only be trimmed to N=1, got N={N}")
    elif not b ** (m - 1) < N <= b**m:
        raise ParameterError(f"need {b}^{m - 1} < N <= {b}^{m}, got N={N}")
    prefixes = _first_coordinate_prefixes(ps, m)
    if not np.array_equal(np.sort(prefixes), np.arange(count, dtype=np.int64)):
        raise ParameterError(
            "first coordinate does not hit every prefix exactly once; "
            "the trim construction requires a maximally stratified projection"
        )
    prov = dict(ps.provenance) if ps.provenance else {}
    prov.update({"trimmed_to": N})
    if N == count:
        return PointSet(
            ps.points, base=b, s=ps.s, precision=ps.precision, provenance=prov
        )
    out_precision = max(ps.precision, 48 if precision is None else precision)
    scale = Fraction(b**m, N)
    pts = []
    for n in range(count):
        if prefixes[n] >= N:
            continue
        first = ps.points[n][0].to_fraction() * scale
        new_first = DigitVector.from_fraction(first, b, out_precision)
        pts.append((new_first,) + ps.points[n][1:])
    if len(pts) != N:
        raise ConsistencyError("trim kept a wrong number of points")
    return PointSet(pts, base=b, s=ps.s, precision=out_precision, provenance=prov)


GOLDEN_CF = "golden"


def davenport_symmetrized(
    M: int,
    alpha_cf: Sequence[int] | None = None,
    precision: int = 48,
) -> PointSet:
    """The 2M points ({n*alpha}, n/M) and ({-n*alpha}, n/M), n = 1..M.

    alpha is represented exactly by a continued-fraction convergent with
    denominator above M^2 (default: the golden ratio), so the fractional
    parts are exact rationals before digit truncation.  The n = M second
    coordinate would be 1 and wraps to 0 to stay inside [0,1).
    """
    if M < 1:
        raise ParameterError("need M >= 1")
    p_prev, q_prev = 1, 0
    p_cur, q_cur = (alpha_cf[0] if alpha_cf else 1), 1
    k = 1
    while q_cur <= M * M:
        if alpha_cf is not None:
            if k >= len(alpha_cf):
                break
            a = alpha_cf[k]
        else:
            a = 1  # golden ratio: all partial quotients are 1
        p_prev, p_cur = p_cur, a * p_cur + p_prev
        q_prev, q_cur = q_cur, a * q_cur + q_prev
        k += 1
    alpha = Fraction(p_cur, q_cur)
    pts = []
    for n in range(1, M + 1):
        y = Fraction(n % M, M)
        x_pos = Fraction((n * alpha.numerator) % alpha.denominator, alpha.denominator)
        x_neg = Fraction((-n * alpha.numerator) % alpha.denominator, alpha.denominator)
        pts.append(
            (
                DigitVector.from_fraction(x_pos, 2, precision),
                DigitVector.from_fraction(y, 2, precision),
            )
        )
        pts.append(
            (
                DigitVector.from_fraction(x_neg, 2, precision),
                DigitVector.from_fraction(y, 2, precision),
            )
        )
    prov = {
        "family": "davenport",
        "M": M,
        "alpha_cf": list(alpha_cf) if alpha_cf is not None else GOLDEN_CF,
        "precision": precision,
    }
    return PointSet(pts, base=2, s=2, precision=precision, provenance=prov)


def van_der_corput(b: int, m: int) -> PointSet:
    """The b^m-point radical-inverse set: identity generating matrix."""
    gm = GeneratingMatrixSet.from_matrices([FieldMatrix.identity(m, b)])
    return generate_net_points(gm, provenance={"family": "van-der-corput", "b": b, "m": m})
