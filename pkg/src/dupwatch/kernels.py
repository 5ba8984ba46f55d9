"""Document-scoring kernel with a compiled fast path.

The serving hot loop is the exhaustive scan of one query vector against
every stored document vector. A Cython kernel handles it when the
extension was built; otherwise a vectorized NumPy fallback is used.
Set ``DW_PURE_PYTHON=1`` to force the fallback (used by the benchmark).
"""

from __future__ import annotations

import os

import numpy as np

if os.environ.get("DW_PURE_PYTHON", "") in ("", "0"):
    try:
        from dupwatch import _scan as _compiled
    except ImportError:
        _compiled = None
else:
    _compiled = None

USING_COMPILED = _compiled is not None


def implementation_name() -> str:
    return "compiled" if USING_COMPILED else "numpy"


def _score_csr_numpy(indptr, indices, data, q_indices, q_values, scratch, out):
    scratch[q_indices] = q_values
    prod = data * scratch[indices]
    csum = np.empty(prod.size + 1)
    csum[0] = 0.0
    np.cumsum(prod, out=csum[1:])
    np.subtract(csum[indptr[1:]], csum[indptr[:-1]], out=out)
    scratch[q_indices] = 0.0


def score_documents(
    indptr: np.ndarray,
    indices: np.ndarray,
    data: np.ndarray,
    q_indices: np.ndarray,
    q_values: np.ndarray,
    vocab_size: int,
    scratch: np.ndarray | None = None,
    out: np.ndarray | None = None,
) -> np.ndarray:
    """Dot product of the query against every CSR row (all unit-norm)."""
    n_docs = indptr.shape[0] - 1
    if out is None:
        out = np.zeros(n_docs)
    if n_docs == 0 or q_indices.size == 0:
        out[:] = 0.0
        return out
    if scratch is None:
        scratch = np.zeros(vocab_size)
    if USING_COMPILED:
        _compiled.score_csr(indptr, indices, data, q_indices, q_values, scratch, out)
    else:
        _score_csr_numpy(indptr, indices, data, q_indices, q_values, scratch, out)
    return out
