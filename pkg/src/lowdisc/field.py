"""Exact arithmetic over prime fields F_b and polynomials over F_2.

Field elements are plain integers in {0, ..., b-1}; every operation takes
the prime modulus b explicitly and rejects composite b.  Matrices over F_b
are wrapped in :class:`FieldMatrix`, a validated container around an int64
numpy array, with Gaussian elimination providing rank and kernel bases.

Binary polynomials are represented as integers whose bit i is the
coefficient of x^i (so x = 2, 1 + x = 3, 1 + x + x^2 = 7).  The zero
polynomial is 0.
"""

from __future__ import annotations

import math
from functools import lru_cache

import numpy as np

from .errors import ParameterError

__all__ = [
    "is_prime",
    "field_inverse",
    "binomial_mod_p",
    "FieldMatrix",
    "matrix_rank",
    "kernel_basis",
    "poly_degree",
    "poly_mul",
    "poly_divmod",
    "is_irreducible_f2",
    "irreducible_polys_f2",
]


@lru_cache(maxsize=None)
def is_prime(n: int) -> bool:
    """Deterministic trial-division primality test; fine for desk-scale b."""
    if n <= 1:
        return False
    if n <= 3:
        return True
    if n % 2 == 0:
        return False
    i = 3
    while i * i <= n:
        if n % i == 0:
            return False
        i += 2
    return True


def _require_prime(b: int) -> None:
    if not is_prime(b):
        raise ParameterError(f"base {b} is not prime")


def field_inverse(a: int, b: int) -> int:
    """Multiplicative inverse of a in F_b.  Raises for a == 0 (mod b)."""
    _require_prime(b)
    a %= b
    if a == 0:
        raise ParameterError("zero has no multiplicative inverse")
    return pow(a, b - 2, b)


def binomial_mod_p(i: int, j: int, b: int) -> int:
    """Binomial coefficient C(i, j) mod b, with C(i, j) = 0 for j > i.

    Computed digit-by-digit via Lucas' theorem, so large indices never
    build up big intermediate integers; each per-digit binomial has both
    arguments below b.
    """
    _require_prime(b)
    if i < 0 or j < 0:
        raise ParameterError("binomial indices must be nonnegative")
    if j > i:
        return 0
    result = 1
    while j > 0 or i > 0:
        id_, jd = i % b, j % b
        if jd > id_:
            return 0
        result = (result * (math.comb(id_, jd) % b)) % b
        i //= b
        j //= b
    return result


# ----------------------------------------------------------------------
# Matrices over F_b
# ----------------------------------------------------------------------

class FieldMatrix:
    """A rows x cols matrix over F_b.

    The entries are held as an int64 numpy array with values in
    {0, ..., b-1}; the array is copied and reduced mod b on construction
    and must not be mutated afterwards.
    """

    __slots__ = ("base", "array", "rows", "cols")

    def __init__(self, array, base: int):
        _require_prime(base)
        arr = np.asarray(array, dtype=np.int64)
        if arr.ndim != 2:
            raise ParameterError("matrix must be two-dimensional")
        self.base = base
        self.array = arr % base
        self.array.setflags(write=False)
        self.rows, self.cols = self.array.shape

    @classmethod
    def identity(cls, n: int, base: int) -> "FieldMatrix":
        return cls(np.eye(n, dtype=np.int64), base)

    @classmethod
    def zeros(cls, rows: int, cols: int, base: int) -> "FieldMatrix":
        return cls(np.zeros((rows, cols), dtype=np.int64), base)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, FieldMatrix)
            and self.base == other.base
            and self.array.shape == other.array.shape
            and bool(np.array_equal(self.array, other.array))
        )

    def __hash__(self):
        return hash((self.base, self.array.tobytes()))

    def __repr__(self) -> str:
        return f"FieldMatrix(base={self.base}, array=\n{self.array})"


def _rref(arr: np.ndarray, b: int) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form mod b; returns (rref, pivot column list)."""
    m = (arr % b).astype(np.int64)
    rows, cols = m.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        pivot_row = -1
        for i in range(r, rows):
            if m[i, c]:
                pivot_row = i
                break
        if pivot_row < 0:
            continue
        if pivot_row != r:
            m[[r, pivot_row]] = m[[pivot_row, r]]
        inv = pow(int(m[r, c]), b - 2, b)
        m[r] = (m[r] * inv) % b
        for i in range(rows):
            if i != r and m[i, c]:
                m[i] = (m[i] - m[i, c] * m[r]) % b
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return m, pivots


def matrix_rank(mat: FieldMatrix) -> int:
    """Rank of mat over F_b via Gaussian elimination."""
    _, pivots = _rref(mat.array, mat.base)
    return len(pivots)


def kernel_basis(mat: FieldMatrix) -> list[np.ndarray]:
    """Basis of the right kernel {v : mat v = 0} over F_b.

    Returns cols - rank vectors of length cols (int64 arrays); empty list
    for an injective matrix.
    """
    b = mat.base
    rref, pivots = _rref(mat.array, b)
    free = [c for c in range(mat.cols) if c not in pivots]
    basis = []
    for f in free:
        v = np.zeros(mat.cols, dtype=np.int64)
        v[f] = 1
        for i, p in enumerate(pivots):
            v[p] = (-int(rref[i, f])) % b
        basis.append(v)
    return basis


# ----------------------------------------------------------------------
# Polynomials over F_2 (integer bit representation)
# ----------------------------------------------------------------------

def poly_degree(p: int) -> int:
    """Degree of a binary polynomial; -1 for the zero polynomial."""
    return p.bit_length() - 1


def poly_mul(a: int, b: int) -> int:
    """Carry-less product of two binary polynomials."""
    r = 0
    while b:
        if b & 1:
            r ^= a
        a <<= 1
        b >>= 1
    return r


def poly_divmod(a: int, b: int) -> tuple[int, int]:
    """Quotient and remainder of binary polynomial division."""
    if b == 0:
        raise ParameterError("polynomial division by zero")
    q = 0
    db = poly_degree(b)
    while a and poly_degree(a) >= db:
        shift = poly_degree(a) - db
        q |= 1 << shift
        a ^= b << shift
    return q, a


def is_irreducible_f2(p: int) -> bool:
    """Trial division by every polynomial of degree up to deg(p)/2."""
    d = poly_degree(p)
    if d < 1:
        return False
    for fd in range(1, d // 2 + 1):
        for f in range(1 << fd, 1 << (fd + 1)):
            if poly_divmod(p, f)[1] == 0:
                return False
    return True


def irreducible_polys_f2(count: int) -> list[int]:
    """First `count` irreducible polynomials over F_2, sorted by degree.

    The list starts with x (kept first by construction); within one degree
    ties are broken by ascending integer encoding, which is immaterial
    mathematically but keeps runs reproducible.
    """
    if count < 1:
        raise ParameterError("count must be >= 1")
    polys = [0b10]  # x comes first
    d = 1
    while len(polys) < count:
        for p in range(1 << d, 1 << (d + 1)):
            if p == 0b10:
                continue
            if is_irreducible_f2(p):
                polys.append(p)
                if len(polys) == count:
                    break
        d += 1
    return polys
