"""Vectorised level-by-level extension of admissible words.

A level is a 2-D ``int64`` array of prefix sums: row ``r`` holds
``P[r, k] = w_1 + ... + w_k`` for ``k = 0..n``.  Rows are kept in
lexicographic order of the underlying words.  Extending by one letter only
has to test the windows that end at the new position, which is one
vectorised comparison against the bound vector.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from .errors import BudgetExceeded

# rows per chunk handed to a worker thread
_CHUNK = 1 << 14


def default_workers() -> int:
    try:
        return max(1, int(os.environ.get("BDS_THREADS", "1")))
    except ValueError:
        return 1


def root() -> np.ndarray:
    return np.zeros((1, 1), dtype=np.int64)


def letters_of(P: np.ndarray) -> np.ndarray:
    return np.diff(P, axis=1)


def _extend_chunk(P, bounds, m, forbid):
    K, t1 = P.shape
    rep = np.repeat(P, m + 1, axis=0)
    new = rep[:, -1] + np.tile(np.arange(m + 1, dtype=np.int64), K)
    # column j is the window of length j + 1 ending at the new letter
    win = new[:, None] - rep[:, ::-1]
    ok = (win <= bounds[1:t1 + 1]).all(axis=1)
    if forbid is not None and len(forbid) <= t1:
        k = len(forbid)
        tail = np.diff(np.hstack([rep[:, t1 - k:], new[:, None]]), axis=1)
        ok &= ~(tail == forbid).all(axis=1)
    out = np.empty((int(ok.sum()), t1 + 1), dtype=np.int64)
    out[:, :t1] = rep[ok]
    out[:, t1] = new[ok]
    return out


def extend(P, bounds, m, forbid=None, workers=1):
    """Return the next level.  ``forbid`` (1-D letters) removes every row ending in it."""
    if forbid is not None:
        forbid = np.asarray(forbid, dtype=np.int64)
    if workers <= 1 or len(P) <= _CHUNK:
        return _extend_chunk(P, bounds, m, forbid)
    chunks = [P[i:i + _CHUNK] for i in range(0, len(P), _CHUNK)]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        parts = list(pool.map(lambda c: _extend_chunk(c, bounds, m, forbid), chunks))
    # concatenation in chunk order keeps the result independent of scheduling
    return np.concatenate(parts, axis=0)


def levels(spec, n_max, *, forbid=None, max_nodes=None, workers=None):
    """Yield ``(n, P)`` for ``n = 0..n_max``.

    Raises :class:`BudgetExceeded` with ``partial`` set to the last level
    that was completed when the cumulative row count passes ``max_nodes``.
    """
    workers = default_workers() if workers is None else workers
    bounds = spec.bounds(n_max)
    m = spec.max_letter
    P = root()
    yield 0, P
    used = 1
    for n in range(1, n_max + 1):
        if max_nodes is not None and used + len(P) * (m + 1) > max_nodes:
            raise BudgetExceeded(
                f"node budget {max_nodes} exhausted before level {n}", partial=n - 1)
        P = extend(P, bounds, m, forbid=forbid, workers=workers)
        used += len(P)
        yield n, P


def admissible_rows(bounds, W):
    """Boolean mask: which rows of the letter matrix ``W`` satisfy every window bound."""
    W = np.asarray(W, dtype=np.int64)
    K, n = W.shape
    if n == 0:
        return np.ones(K, dtype=bool)
    P = np.zeros((K, n + 1), dtype=np.int64)
    np.cumsum(W, axis=1, out=P[:, 1:])
    ok = np.ones(K, dtype=bool)
    for p in range(1, n + 1):
        ok &= (P[:, p:] - P[:, :-p]).max(axis=1) <= bounds[p]
    return ok
