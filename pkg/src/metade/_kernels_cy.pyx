# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled reproduction kernels.

Same contract as ``_kernels_np`` and bit-identical output: every
floating-point expression is written in the numpy version's evaluation
order, and the extension is compiled with -ffp-contract=off so no FMA
changes the rounding.
"""

import numpy as np

cimport numpy as cnp

cnp.import_array()

BACKEND_NAME = "cython"


def sample_index_matrix(const double[:, ::1] u):
    """Distinct random indices per row, excluding the row's own index."""
    cdef Py_ssize_t NP = u.shape[0]
    cdef Py_ssize_t k = u.shape[1]
    cdef Py_ssize_t m = NP - 1
    if k > m:
        raise ValueError(f"cannot draw {k} distinct partners from a population of {NP}")
    out_arr = np.empty((NP, k), dtype=np.int64)
    pool_arr = np.empty(m, dtype=np.int64)
    cdef cnp.int64_t[:, ::1] out = out_arr
    cdef cnp.int64_t[::1] pool = pool_arr
    cdef Py_ssize_t i, t, j
    cdef cnp.int64_t left, s
    for i in range(NP):
        for t in range(m):
            pool[t] = t
        for t in range(k):
            j = t + <Py_ssize_t>(u[i, t] * (m - t))
            left = pool[t]
            pool[t] = pool[j]
            pool[j] = left
        for t in range(k):
            s = pool[t]
            if s >= i:
                s = s + 1
            out[i, t] = s
    return out_arr


def mutate(const double[:, ::1] X, const cnp.int64_t[::1] base_l, object base_r,
           const cnp.int64_t[:, ::1] diff, double F):
    """Differential mutation; ``base_r`` is None for the collapsed form."""
    cdef Py_ssize_t NP = base_l.shape[0]
    cdef Py_ssize_t D = X.shape[1]
    cdef Py_ssize_t npair = diff.shape[1] // 2
    V_arr = np.empty((NP, D), dtype=np.float64)
    cdef double[:, ::1] V = V_arr
    cdef const cnp.int64_t[::1] br
    cdef Py_ssize_t i, jd, t
    cdef cnp.int64_t bl_i, br_i
    cdef double acc, xl
    if base_r is None:
        for i in range(NP):
            bl_i = base_l[i]
            for jd in range(D):
                acc = X[diff[i, 0], jd] - X[diff[i, 1], jd]
                for t in range(1, npair):
                    acc = acc + (X[diff[i, 2 * t], jd] - X[diff[i, 2 * t + 1], jd])
                V[i, jd] = X[bl_i, jd] + F * acc
    else:
        br = base_r
        for i in range(NP):
            bl_i = base_l[i]
            br_i = br[i]
            for jd in range(D):
                acc = X[diff[i, 0], jd] - X[diff[i, 1], jd]
                for t in range(1, npair):
                    acc = acc + (X[diff[i, 2 * t], jd] - X[diff[i, 2 * t + 1], jd])
                xl = X[bl_i, jd]
                V[i, jd] = xl + F * (X[br_i, jd] - xl) + F * acc
    return V_arr


def crossover_bin(const double[:, ::1] V, const double[:, ::1] X, double cr,
                  const double[:, ::1] mask_u, const cnp.int64_t[::1] jrand):
    """Binomial crossover with a forced column per row."""
    cdef Py_ssize_t NP = V.shape[0]
    cdef Py_ssize_t D = V.shape[1]
    U_arr = np.empty((NP, D), dtype=np.float64)
    cdef double[:, ::1] U = U_arr
    cdef Py_ssize_t i, j
    cdef cnp.int64_t jr
    for i in range(NP):
        jr = jrand[i]
        for j in range(D):
            if mask_u[i, j] <= cr or j == jr:
                U[i, j] = V[i, j]
            else:
                U[i, j] = X[i, j]
    return U_arr


def crossover_exp(const double[:, ::1] V, const double[:, ::1] X,
                  const cnp.int64_t[::1] start, const cnp.int64_t[::1] length):
    """Exponential crossover: contiguous modulo-D block of mutant genes."""
    cdef Py_ssize_t NP = V.shape[0]
    cdef Py_ssize_t D = V.shape[1]
    U_arr = np.empty((NP, D), dtype=np.float64)
    cdef double[:, ::1] U = U_arr
    cdef Py_ssize_t i, j, l
    cdef cnp.int64_t n, L
    for i in range(NP):
        for j in range(D):
            U[i, j] = X[i, j]
        n = start[i]
        L = length[i]
        for l in range(L):
            j = n + l
            if j >= D:
                j = j - D
            U[i, j] = V[i, j]
    return U_arr


def crossover_arith(const double[:, ::1] V, const double[:, ::1] X, const double[::1] K):
    """Arithmetic recombination U = X + K*(V - X)."""
    cdef Py_ssize_t NP = V.shape[0]
    cdef Py_ssize_t D = V.shape[1]
    U_arr = np.empty((NP, D), dtype=np.float64)
    cdef double[:, ::1] U = U_arr
    cdef Py_ssize_t i, j
    cdef double k
    for i in range(NP):
        k = K[i]
        for j in range(D):
            U[i, j] = X[i, j] + k * (V[i, j] - X[i, j])
    return U_arr


def clamp(const double[:, ::1] U, const double[::1] lb, const double[::1] ub):
    """Project rows onto the box (lower bound applied first)."""
    cdef Py_ssize_t NP = U.shape[0]
    cdef Py_ssize_t D = U.shape[1]
    out_arr = np.empty((NP, D), dtype=np.float64)
    cdef double[:, ::1] out = out_arr
    cdef Py_ssize_t i, j
    cdef double v
    for i in range(NP):
        for j in range(D):
            v = U[i, j]
            if v < lb[j]:
                v = lb[j]
            if v > ub[j]:
                v = ub[j]
            out[i, j] = v
    return out_arr
