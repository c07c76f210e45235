"""Pure-numpy reproduction kernels.

This module and ``_kernels_cy`` implement the same contract and must stay
bit-identical: each function consumes raw uniforms or precomputed integer
draws (never a Generator) and performs arithmetic in a fixed evaluation
order.  The compiled version is simply the same op sequence in C.
"""

from __future__ import annotations

import numpy as np

BACKEND_NAME = "numpy"


def sample_index_matrix(u: np.ndarray) -> np.ndarray:
    """Distinct random indices per row, excluding the row's own index.

    ``u`` has shape (NP, k) with k <= NP - 1; entry ``[i, t]`` drives the
    t-th pick of a partial Fisher-Yates pass over the NP - 1 candidates
    for row ``i``.  Pick t is ``j = t + floor(u * (m - t))`` into the
    remaining pool, so identical uniforms give identical indices in any
    implementation.
    """
    NP, k = u.shape
    m = NP - 1
    if k > m:
        raise ValueError(f"cannot draw {k} distinct partners from a population of {NP}")
    pool = np.broadcast_to(np.arange(m, dtype=np.int64), (NP, m)).copy()
    rows = np.arange(NP)
    for t in range(k):
        j = t + (u[:, t] * (m - t)).astype(np.int64)
        left = pool[rows, t].copy()
        pool[rows, t] = pool[rows, j]
        pool[rows, j] = left
    sel = pool[:, :k].copy()
    sel += sel >= rows[:, None]
    return sel


def mutate(
    X: np.ndarray,
    base_l: np.ndarray,
    base_r: np.ndarray | None,
    diff: np.ndarray,
    F: float,
) -> np.ndarray:
    """Differential mutation.

    ``diff`` holds 2*dn index columns; consecutive pairs form the scaled
    differences.  With ``base_r`` given the mutant is
    ``x_bl + F*(x_br - x_bl) + F*sum(diffs)``; otherwise the directional
    term is absent entirely.
    """
    acc = X[diff[:, 0]] - X[diff[:, 1]]
    for t in range(1, diff.shape[1] // 2):
        acc += X[diff[:, 2 * t]] - X[diff[:, 2 * t + 1]]
    XL = X[base_l]
    if base_r is None:
        return XL + F * acc
    return XL + F * (X[base_r] - XL) + F * acc


def crossover_bin(
    V: np.ndarray, X: np.ndarray, cr: float, mask_u: np.ndarray, jrand: np.ndarray
) -> np.ndarray:
    """Binomial crossover: take the mutant gene where u <= CR or at the
    forced column ``jrand``."""
    D = V.shape[1]
    take = (mask_u <= cr) | (np.arange(D)[None, :] == jrand[:, None])
    return np.where(take, V, X)


def crossover_exp(
    V: np.ndarray, X: np.ndarray, start: np.ndarray, length: np.ndarray
) -> np.ndarray:
    """Exponential crossover: copy a contiguous modulo-D block of mutant
    genes beginning at ``start`` with per-row ``length``."""
    D = V.shape[1]
    rel = (np.arange(D)[None, :] - start[:, None]) % D
    return np.where(rel < length[:, None], V, X)


def crossover_arith(V: np.ndarray, X: np.ndarray, K: np.ndarray) -> np.ndarray:
    """Arithmetic recombination: U = X + K*(V - X) with one K per row."""
    return X + K[:, None] * (V - X)


def clamp(U: np.ndarray, lb: np.ndarray, ub: np.ndarray) -> np.ndarray:
    """Project rows onto the box (lower bound applied first)."""
    return np.minimum(np.maximum(U, lb), ub)
