"""Weight functions on integers and dual spaces.

Three weights drive the structural analysis of digital nets: the position
of the most significant base-b digit ("nrt"), the count of nonzero digits
("hamming"), and the sum of the alpha highest nonzero digit positions
("mu").  What a construction guarantees is always a floor on one of these
weights over the nonzero dual space; this module computes those minima
exhaustively, with a witness.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import ParameterError
from .field import is_prime
from .nets import DualSpace, GeneratingMatrixSet, dual_space

__all__ = [
    "nrt_weight",
    "hamming_weight",
    "mu_alpha",
    "vector_weight",
    "WeightProfile",
    "min_dual_weight",
    "t_alpha",
    "verify_order_alpha",
]

KINDS = ("nrt", "hamming", "mu")


def _digit_positions(k: int, b: int) -> list[int]:
    """1-based positions of nonzero base-b digits of k, descending."""
    if k < 0:
        raise ParameterError("weights are defined on nonnegative integers")
    if not is_prime(b):
        raise ParameterError(f"base {b} is not prime")
    positions = []
    pos = 1
    while k > 0:
        k, d = divmod(k, b)
        if d:
            positions.append(pos)
        pos += 1
    positions.reverse()
    return positions


def nrt_weight(k: int, b: int) -> int:
    """Position of the most significant nonzero base-b digit; 0 for k = 0."""
    positions = _digit_positions(k, b)
    return positions[0] if positions else 0


def hamming_weight(k: int, b: int) -> int:
    """Number of nonzero base-b digits; 0 for k = 0."""
    return len(_digit_positions(k, b))


def mu_alpha(k: int, alpha: int, b: int) -> int:
    """Sum of the alpha highest nonzero digit positions (all of them if fewer)."""
    if alpha < 1:
        raise ParameterError("alpha must be >= 1")
    positions = _digit_positions(k, b)
    return sum(positions[:alpha])


def vector_weight(ks: Sequence[int], b: int, kind: str, alpha: int | None = None) -> int:
    """Coordinatewise sum of the chosen weight over an integer vector."""
    if kind == "nrt":
        return sum(nrt_weight(k, b) for k in ks)
    if kind == "hamming":
        return sum(hamming_weight(k, b) for k in ks)
    if kind == "mu":
        if alpha is None:
            raise ParameterError("kind 'mu' needs alpha")
        return sum(mu_alpha(k, alpha, b) for k in ks)
    raise ParameterError(f"unknown weight kind {kind!r}; expected one of {KINDS}")


@dataclass(frozen=True)
class WeightProfile:
    """Minimum weight over the nonzero dual elements within a range.

    minimum is None when no nonzero dual element lies in range (the
    infinite profile, e.g. a one-dimensional net with invertible matrix).
    """

    kind: str
    alpha: int | None
    minimum: int | None
    witness: tuple[int, ...] | None
    dual_size: int
    range_limit: int | None

    def csv_row(self) -> str:
        min_s = "inf" if self.minimum is None else str(self.minimum)
        wit_s = "" if self.witness is None else ";".join(str(k) for k in self.witness)
        alpha_s = "" if self.alpha is None else str(self.alpha)
        return f"{self.kind},{alpha_s},{min_s},{wit_s},{self.dual_size}"


def _weight_matrix(digits: np.ndarray, kind: str, alpha: int | None) -> np.ndarray:
    """Per-coordinate weights for a (n, s, p) dual digit array."""
    p = digits.shape[2]
    positions = np.arange(1, p + 1, dtype=np.int64)
    marked = np.where(digits != 0, positions[None, None, :], 0)
    if kind == "hamming":
        return np.count_nonzero(digits, axis=2).astype(np.int64)
    if kind == "nrt":
        return marked.max(axis=2)
    if kind == "mu":
        if alpha is None:
            raise ParameterError("kind 'mu' needs alpha")
        if alpha >= p:
            return marked.sum(axis=2)
        ordered = np.sort(marked, axis=2)
        return ordered[:, :, p - alpha :].sum(axis=2)
    raise ParameterError(f"unknown weight kind {kind!r}; expected one of {KINDS}")


def min_dual_weight(
    dual: DualSpace,
    kind: str,
    range_limit: int | None = None,
    alpha: int | None = None,
) -> WeightProfile:
    """Exhaustive minimum of a weight over the nonzero dual elements.

    Only elements with every coordinate below range_limit participate
    (default: everything the dual enumerates, i.e. coordinates < b^p).
    The returned witness attains the minimum.
    """
    b, p = dual.gm.base, dual.gm.rows
    digits = dual.element_digits()
    weights = _weight_matrix(digits, kind, alpha).sum(axis=1)
    mask = np.ones(len(weights), dtype=bool)
    mask[0] = False  # zero element
    if range_limit is not None and range_limit < b**p:
        powers = np.array([b**i for i in range(p)], dtype=object)
        values = digits.astype(object) @ powers
        mask &= np.all(values < range_limit, axis=1)
    if not mask.any():
        return WeightProfile(kind, alpha, None, None, dual.size, range_limit)
    candidates = np.where(mask)[0]
    best = candidates[np.argmin(weights[candidates])]
    powers = [b**i for i in range(p)]
    witness = tuple(
        int(sum(int(digits[best, j, i]) * powers[i] for i in range(p)))
        for j in range(dual.gm.s)
    )
    return WeightProfile(kind, alpha, int(weights[best]), witness, dual.size, range_limit)


def t_alpha(alpha: int, t: int, s: int) -> int:
    """Quality parameter after interlacing: alpha*t + s*C(alpha, 2)."""
    if alpha < 1 or t < 0 or s < 1:
        raise ParameterError("need alpha >= 1, t >= 0, s >= 1")
    return alpha * t + s * math.comb(alpha, 2)


def verify_order_alpha(
    gm_interlaced: GeneratingMatrixSet,
    alpha: int,
    t_base: int,
    cap: int = 1 << 21,
) -> bool:
    """Check the higher-order dual condition min mu_alpha >= alpha*m - t_alpha.

    gm_interlaced is the interlaced matrix set (alpha*p rows, m columns);
    t_base is the quality parameter of the underlying sequence or net.
    """
    m, s = gm_interlaced.cols, gm_interlaced.s
    threshold = alpha * m - t_alpha(alpha, t_base, s)
    dual = dual_space(gm_interlaced, cap)
    profile = min_dual_weight(dual, "mu", alpha=alpha)
    if profile.minimum is None:
        return True
    return profile.minimum >= threshold
