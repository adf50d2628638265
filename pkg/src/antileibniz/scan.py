"""Vectorized exhaustive scans over prime fields.

The scalar predicates work on object arrays of exact scalars, which is right
for single checks but slow for millions of candidates.  Here the same residual
builders run on ``int64`` arrays with a leading batch axis and everything is
reduced mod p.  Entries stay below ``p`` before each contraction, so for the
small primes these scans use no intermediate value comes near overflow.
"""
from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from itertools import combinations, product
from typing import Callable, Iterator

import numpy as np

from .core import RepBundle
from .functors import hemisemidirect
from .laws import IDENTITIES
from .operators import embedding_residuals

DEFAULT_BATCH = 1 << 15


def to_int(arr) -> np.ndarray:
    """Residue object array (or nested list) to ``int64``."""
    return np.asarray(arr, dtype=object).astype(np.int64)


def all_vectors(p: int, n: int) -> np.ndarray:
    """Every vector of F_p^n in lexicographic order, first coordinate most significant."""
    return np.array(list(product(range(p), repeat=n)), dtype=np.int64).reshape(-1, n)


def digits(codes: np.ndarray, p: int, n: int) -> np.ndarray:
    """Base-p expansion of integer codes, most significant digit first."""
    out = np.empty((len(codes), n), dtype=np.int64)
    rest = np.array(codes, dtype=np.int64)
    for i in range(n - 1, -1, -1):
        out[:, i] = rest % p
        rest //= p
    return out


def encode(rows: np.ndarray, p: int) -> np.ndarray:
    """Inverse of :func:`digits` along the last axis."""
    code = np.zeros(rows.shape[:-1], dtype=np.int64)
    for i in range(rows.shape[-1]):
        code = code * p + rows[..., i]
    return code


def nonzero_mask(residuals: dict, p: int) -> np.ndarray:
    """Per batch element: does any residual have a nonzero entry mod p?"""
    bad = None
    for res in residuals.values():
        r = (res % p).reshape(res.shape[0], -1).any(axis=1)
        bad = r if bad is None else bad | r
    return bad


# -- batched rank over F_p ----------------------------------------------------


def batch_rank(mats: np.ndarray, p: int) -> np.ndarray:
    """Rank mod p of each matrix in a ``(B, r, c)`` stack, by Gaussian elimination."""
    dt = np.int16 if p * p < np.iinfo(np.int16).max else np.int64
    M = (np.asarray(mats) % p).astype(dt)
    B, r, c = M.shape
    inv = np.zeros(p, dtype=dt)
    inv[1:] = [pow(a, -1, p) for a in range(1, p)]
    rank = np.zeros(B, dtype=np.int64)
    rows = np.arange(r)
    for col in range(c):
        # first usable row at or below the current rank
        usable = (M[:, :, col] != 0) & (rows[None, :] >= rank[:, None])
        has = usable.any(axis=1)
        if not has.any():
            continue
        b = np.nonzero(has)[0]
        sub = M[b]
        k = np.arange(len(b))
        pr, tr = np.argmax(usable[b], axis=1), rank[b]
        # swap the pivot row into position ``rank`` and normalize it
        top = sub[k, tr].copy()
        sub[k, tr] = sub[k, pr]
        sub[k, pr] = top
        prow = sub[k, tr] * inv[sub[k, tr, col]][:, None] % p
        factors = sub[:, :, col].copy()
        factors[k, tr] = 0
        sub -= factors[:, :, None] * prow[:, None, :]
        sub %= p
        sub[k, tr] = prow
        M[b] = sub
        rank[b] += 1
    return rank


# -- three-way embedding tensor scan ------------------------------------------


@dataclass(frozen=True)
class EquivalenceScan:
    candidates: int
    embedding: int
    graph: int
    nijenhuis: int
    disagreements: int
    examples: tuple

    @property
    def agree(self) -> bool:
        return self.disagreements == 0


def maps_on_columns(p: int, rows: int, cols: int, max_support: int) -> Iterator[np.ndarray]:
    """Every ``rows x cols`` matrix over F_p with at most ``max_support`` nonzero columns.

    Yields ``(B, rows, cols)`` blocks; each matrix appears exactly once.
    """
    nonzero = all_vectors(p, rows)[1:]
    yield np.zeros((1, rows, cols), dtype=np.int64)
    for k in range(1, max_support + 1):
        for support in combinations(range(cols), k):
            grids = np.meshgrid(*[np.arange(len(nonzero))] * k, indexing="ij")
            picks = [g.ravel() for g in grids]
            for start in range(0, len(picks[0]), DEFAULT_BATCH):
                block = np.zeros((len(picks[0][start:start + DEFAULT_BATCH]), rows, cols),
                                 dtype=np.int64)
                for col, pick in zip(support, picks):
                    block[:, :, col] = nonzero[pick[start:start + DEFAULT_BATCH]]
                yield block


def embedding_mask(K: np.ndarray, c: np.ndarray, pi: np.ndarray, p: int) -> np.ndarray:
    return ~nonzero_mask(embedding_residuals(K, c, pi), p)


def work_dtype(p: int, terms: int):
    """Narrowest integer type holding ``terms`` products of three residues mod p."""
    bound = 4 * terms * (p - 1) ** 3
    for dt in (np.int16, np.int32):
        if bound < np.iinfo(dt).max:
            return dt
    return np.int64


def bilinear(X: np.ndarray, Y: np.ndarray, c: np.ndarray) -> np.ndarray:
    """``out[b, u, v, k] = sum c[i, j, k] X[b, i, u] Y[b, j, v]`` over the nonzero ``c``.

    Structure constants of the fixtures are sparse, so looping over their
    support beats a dense contraction by a wide margin.
    """
    B = max(len(X), len(Y))
    out = np.zeros((B, X.shape[-1], Y.shape[-1], c.shape[-1]), dtype=X.dtype)
    for i, j, k in zip(*np.nonzero(c)):
        out[..., k] += c[i, j, k] * X[:, i, :, None] * Y[:, j, None, :]
    return out


def graph_mask(K: np.ndarray, hemi: np.ndarray, p: int) -> np.ndarray:
    """Closure of the graph ``{K u + u}`` under the bracket, by a rank test.

    The graph has dimension ``m``; it is closed iff adding all brackets of
    graph basis vectors does not raise the rank.
    """
    B, n, m = K.shape
    dt = work_dtype(p, max(np.count_nonzero(hemi), n + m))
    hemi = hemi.astype(dt)
    eye = np.broadcast_to(np.eye(m, dtype=dt), (B, m, m))
    G = np.concatenate([K.astype(dt), eye], axis=1)             # (B, n+m, m): columns span the graph
    br = bilinear(G, G, hemi) % p                     # (B, m, m, n+m)
    stack = np.concatenate([np.swapaxes(G, 1, 2), br.reshape(B, m * m, n + m)], axis=1)
    return batch_rank(stack, p) == m


def nijenhuis_mask(K: np.ndarray, hemi: np.ndarray, p: int) -> np.ndarray:
    B, n, m = K.shape
    d = n + m
    dt = work_dtype(p, max(np.count_nonzero(hemi), d))
    hemi = hemi.astype(dt)
    N = np.zeros((B, d, d), dtype=dt)
    N[:, :n, n:] = K
    eye = np.eye(d, dtype=dt)[None]
    NT = np.swapaxes(N, 1, 2)
    # N applied to the last axis is a batched matrix product with N^T
    n_of_product = np.matmul(np.broadcast_to(hemi.reshape(1, d * d, d), (B, d * d, d)), NT)
    inner = (bilinear(N, eye, hemi) + bilinear(eye, N, hemi)).reshape(B, d * d, d) - n_of_product
    applied = np.matmul(inner % p, NT)
    res = bilinear(N, N, hemi) - applied.reshape(B, d, d, d)
    return ~nonzero_mask({"nijenhuis": res}, p)


def three_way_scan(rep: RepBundle, max_support: int = 2, *,
                   blocks: Callable[[], Iterator[np.ndarray]] | None = None,
                   keep_examples: int = 8) -> EquivalenceScan:
    """Compare embedding tensor, graph closure and lifted Nijenhuis on every
    map ``K: V -> A`` over F_p supported on at most ``max_support`` columns."""
    f = rep.field
    if f.p is None:
        raise ValueError("exhaustive scans need a prime field")
    p = f.p
    if rep.kind not in ("mlie_rep", "mlie_action"):
        raise ValueError("three-way scan is defined for mock-Lie representations")
    c, pi = to_int(rep.algebra.mul.coeffs), to_int(rep["pi"])
    hemi = to_int(hemisemidirect(rep, force=True).mul.coeffs)
    n, m = rep.algebra.dim, rep.carrier_dim
    source = blocks() if blocks else maps_on_columns(p, n, m, max_support)
    total = counts_e = counts_g = counts_n = bad = 0
    examples = []
    for K in source:
        e = embedding_mask(K, c, pi, p)
        g = graph_mask(K, hemi, p)
        nj = nijenhuis_mask(K, hemi, p)
        total += len(K)
        counts_e += int(e.sum())
        counts_g += int(g.sum())
        counts_n += int(nj.sum())
        off = (e != g) | (e != nj)
        bad += int(off.sum())
        for idx in np.nonzero(off)[0][: max(0, keep_examples - len(examples))]:
            examples.append(K[idx].tolist())
    return EquivalenceScan(total, counts_e, counts_g, counts_n, bad, tuple(examples))


# -- law scans over whole coefficient spaces -----------------------------------


def law_mask(law: str, coeffs: np.ndarray, p: int, strict: bool = False) -> np.ndarray:
    """Which single-product tensors in a ``(B, n, n, n)`` stack satisfy ``law``."""
    return ~nonzero_mask(IDENTITIES[law]({"mul": coeffs}, strict), p)


def _scan_block(args) -> np.ndarray:
    law, p, n, start, stop = args
    codes = np.arange(start, stop, dtype=np.int64)
    coeffs = digits(codes, p, n ** 3).reshape(-1, n, n, n)
    return codes[law_mask(law, coeffs, p)]


def scan_tensors(law: str, p: int, n: int, *, workers: int = 1,
                 batch: int = DEFAULT_BATCH) -> np.ndarray:
    """Codes of all ``n``-dimensional tensors over F_p passing ``law``, ascending.

    A tensor's code is its flattened coefficient string read in base p.
    Contiguous blocks may run in worker processes; the merge keeps the order.
    """
    total = p ** (n ** 3)
    jobs = [(law, p, n, s, min(s + batch, total)) for s in range(0, total, batch)]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(_scan_block, jobs))
    else:
        parts = [_scan_block(j) for j in jobs]
    return np.concatenate(parts) if parts else np.zeros(0, dtype=np.int64)


# -- GL_2 orbits ----------------------------------------------------------------


def general_linear(p: int, n: int) -> np.ndarray:
    """All invertible ``n x n`` matrices over F_p, as a ``(G, n, n)`` array."""
    mats = all_vectors(p, n * n).reshape(-1, n, n)
    return mats[batch_rank(mats, p) == n]


def inverse_mod(mats: np.ndarray, p: int) -> np.ndarray:
    """Batched inverse mod p via the adjugate (n = 2) or elimination."""
    B, n, _ = mats.shape
    aug = np.concatenate([mats % p, np.broadcast_to(np.eye(n, dtype=np.int64), (B, n, n))], axis=2)
    inv = np.zeros(p, dtype=np.int64)
    inv[1:] = [pow(a, -1, p) for a in range(1, p)]
    ar = np.arange(B)
    for col in range(n):
        piv = np.argmax(aug[:, col:, col] != 0, axis=1) + col
        top = aug[ar, col].copy()
        aug[ar, col] = aug[ar, piv]
        aug[ar, piv] = top
        aug[:, col] = aug[:, col] * inv[aug[:, col, col]][:, None] % p
        factors = aug[:, :, col].copy()
        factors[:, col] = 0
        aug = (aug - factors[:, :, None] * aug[:, col][:, None, :]) % p
    return aug[:, :, n:]


def transport_all(coeffs: np.ndarray, gl: np.ndarray, gl_inv: np.ndarray, p: int) -> np.ndarray:
    """``(T, G, n, n, n)``: every tensor transported along every group element."""
    t = np.einsum("gai,tabm->tgibm", gl, coeffs) % p
    t = np.einsum("gbj,tgibm->tgijm", gl, t) % p
    return np.einsum("gkm,tgijm->tgijk", gl_inv, t) % p


def canonical_codes(coeffs: np.ndarray, p: int, gl: np.ndarray | None = None,
                    chunk: int = 256) -> np.ndarray:
    """Least code in the GL-orbit of each tensor of a ``(T, n, n, n)`` stack."""
    n = coeffs.shape[-1]
    if gl is None:
        gl = general_linear(p, n)
    gl_inv = inverse_mod(gl, p)
    out = np.empty(len(coeffs), dtype=np.int64)
    for s in range(0, len(coeffs), chunk):
        moved = transport_all(coeffs[s:s + chunk], gl, gl_inv, p)
        out[s:s + chunk] = encode(moved.reshape(*moved.shape[:2], -1), p).min(axis=1)
    return out
