# Compiled scoring kernel: dot products of one sparse query against every
# row of a CSR matrix of unit-norm document vectors.

import numpy as np

cimport numpy as cnp

cnp.import_array()


def score_csr(const long long[::1] indptr,
              const int[::1] indices,
              const double[::1] data,
              const int[::1] q_indices,
              const double[::1] q_values,
              double[::1] scratch,
              double[::1] out):
    """Write the per-document dot products into ``out``.

    ``scratch`` is a zeroed dense buffer of vocabulary size; it is restored
    to all-zeros before returning so callers may reuse it.
    """
    cdef Py_ssize_t n_docs = indptr.shape[0] - 1
    cdef Py_ssize_t nq = q_indices.shape[0]
    cdef Py_ssize_t i, j
    cdef double acc

    for i in range(nq):
        scratch[q_indices[i]] = q_values[i]
    for i in range(n_docs):
        acc = 0.0
        for j in range(indptr[i], indptr[i + 1]):
            acc += data[j] * scratch[indices[j]]
        out[i] = acc
    for i in range(nq):
        scratch[q_indices[i]] = 0.0
