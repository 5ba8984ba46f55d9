"""Compare the compiled scan kernel against the NumPy fallback.

Usage: python benchmarks/bench_scan.py [n_docs] [nnz_per_doc] [vocab]

Times the per-query exhaustive scan (the serving hot loop) for both
implementations on the same synthetic CSR matrix and prints a table.
Run inside an environment where the extension is built to see both rows;
the fallback row is always available.
"""

from __future__ import annotations

import sys
import time

import numpy as np

from dupwatch import kernels


def synthetic_csr(rng, n_docs: int, nnz_per_doc: int, vocab: int):
    indptr = np.arange(0, (n_docs + 1) * nnz_per_doc, nnz_per_doc, dtype=np.int64)
    indices = np.empty(n_docs * nnz_per_doc, dtype=np.int32)
    for i in range(n_docs):
        indices[i * nnz_per_doc:(i + 1) * nnz_per_doc] = np.sort(
            rng.choice(vocab, size=nnz_per_doc, replace=False)
        )
    data = rng.random(n_docs * nnz_per_doc)
    for i in range(n_docs):
        row = data[indptr[i]:indptr[i + 1]]
        row /= np.linalg.norm(row)
    return indptr, indices, data


def run(fn, indptr, indices, data, queries, vocab, repeats=5):
    out = np.zeros(indptr.shape[0] - 1)
    scratch = np.zeros(vocab)
    best = float("inf")
    for _ in range(repeats):
        start = time.perf_counter()
        for q_idx, q_val in queries:
            fn(indptr, indices, data, q_idx, q_val, scratch, out)
        best = min(best, (time.perf_counter() - start) / len(queries))
    return best, out


def main() -> None:
    n_docs = int(sys.argv[1]) if len(sys.argv) > 1 else 10_000
    nnz = int(sys.argv[2]) if len(sys.argv) > 2 else 40
    vocab = int(sys.argv[3]) if len(sys.argv) > 3 else 20_000
    rng = np.random.default_rng(17)
    indptr, indices, data = synthetic_csr(rng, n_docs, nnz, vocab)
    queries = []
    for _ in range(20):
        q_idx = np.sort(rng.choice(vocab, size=12, replace=False)).astype(np.int32)
        q_val = rng.random(12)
        q_val /= np.linalg.norm(q_val)
        queries.append((q_idx, q_val))

    rows = [("numpy-fallback", kernels._score_csr_numpy)]
    if kernels.USING_COMPILED:
        from dupwatch import _scan

        rows.insert(0, ("compiled", _scan.score_csr))
    else:
        print("note: compiled extension not importable; timing fallback only")

    print(f"scan of {n_docs} docs x {nnz} nnz (vocab {vocab}), 20 queries, best of 5")
    print(f"{'kernel':<16} {'per-query':>12} {'throughput':>16}")
    reference = None
    for name, fn in rows:
        per_query, out = run(fn, indptr, indices, data, queries, vocab)
        if reference is None:
            reference = out.copy()
        else:
            np.testing.assert_allclose(out, reference, atol=1e-12)
        print(f"{name:<16} {per_query * 1e3:>10.3f}ms {n_docs / per_query / 1e6:>13.1f}M docs/s")


if __name__ == "__main__":
    main()
