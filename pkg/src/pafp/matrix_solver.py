"""Divide-and-conquer table builder over blocked boolean matrix products.

Produces exactly the tables of ``build_dp_tables`` but organises the work
so that almost all of it happens inside boolean matrix products, which run
bit-packed at machine-word parallelism with a byte-indexed lookup layer
(the four-Russians trick).  The vertex order is halved recursively; after
both halves are solved, every cross cell (u in the left half, v in the
right half) receives its middle-vertex contributions through three block
products and is finished in constant time per cell:

* jump contributions   mu_J[u,v]     |= OR_w A[u,w] & Pright[w,v]
* plain contributions  mu_alpha[u,v] |= OR_w P[u,w] & A[w,v]
* prefix+jump          mu_beta[u,v]  |= OR_w P[u,w] & J[w,v]

where ``Pright[w,v] = P[w,v] & (q < w)`` masks the reach table against the
left member ``q`` of the pair ending at ``v``, and the jump table is stored
false wherever it is undefined (i.e. for ``w >= q``), which makes the beta
product self-masking.  The accumulators are carried per cell across
recursion levels and OR-merged, never recomputed, so the total product
work telescopes to that of one full multiplication.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import Instance
from .dp_solvers import DpTables, _pair_end_array, _require_halving_free, build_dp_tables
from .errors import DimensionMismatchError

__all__ = [
    "bool_matmul",
    "matrix_build",
    "matrix_build_full",
    "InsideProperties",
]

DEFAULT_BASE_SPAN = 64

# bit b of table index s, for s in 0..255
_BITS256 = ((np.arange(256)[:, None] >> np.arange(8)[None, :]) & 1).astype(bool)


def _fr_matmul_into(x: np.ndarray, y: np.ndarray, out: np.ndarray) -> None:
    """OR the boolean product of x (r,k) and y (k,c) into out (r,c).

    Rows of y are packed to bytes; for every 8-column chunk of x a 256-row
    table of chunk-subset ORs is built by doubling and gathered through the
    packed x bytes, so the inner work is byte-wide rather than element-wide.
    """
    r, k = x.shape
    c = y.shape[1]
    if r == 0 or k == 0 or c == 0:
        return
    if not x.any() or not y.any():
        return
    yp = np.packbits(y, axis=1, bitorder="little")
    keys = np.packbits(x, axis=1, bitorder="little")
    cbytes = yp.shape[1]
    acc = np.zeros((r, cbytes), dtype=np.uint8)
    table = np.zeros((256, cbytes), dtype=np.uint8)
    for j in range(keys.shape[1]):
        col = keys[:, j]
        if not col.any():
            continue
        rows = yp[8 * j : 8 * j + 8]
        nrows = rows.shape[0]
        if not rows.any():
            continue
        # table[s] = OR of the chunk rows selected by the bits of s
        table[0] = 0
        size = 1
        for b in range(nrows):
            table[size : 2 * size] = table[:size] | rows[b]
            size *= 2
        if size < 256:
            table[size:256] = table[size - 1]  # keys never reach here
        acc |= table[col]
    out |= np.unpackbits(acc, axis=1, count=c, bitorder="little").view(bool)


def bool_matmul(x, y) -> np.ndarray:
    """Boolean matrix product Z[i,j] = OR_k (X[i,k] AND Y[k,j]).

    Bit-packed kernel with a byte lookup layer; word-parallel, cubic in
    word operations.
    """
    xa = np.ascontiguousarray(np.asarray(x, dtype=bool))
    ya = np.ascontiguousarray(np.asarray(y, dtype=bool))
    if xa.ndim != 2 or ya.ndim != 2:
        raise DimensionMismatchError("operands must be two-dimensional")
    if xa.shape[1] != ya.shape[0]:
        raise DimensionMismatchError(f"inner dimensions differ: {xa.shape} x {ya.shape}")
    out = np.zeros((xa.shape[0], ya.shape[1]), dtype=bool)
    _fr_matmul_into(xa, ya, out)
    return out


@dataclass(frozen=True, eq=False)
class InsideProperties:
    """Per-cell matrices the blocked builder maintains.

    ``adjacency`` is constant; ``reach``/``jump`` are the P and J tables;
    ``reach_right_of_pair`` and ``reach_left_of_pair`` mask ``reach``
    against the pair ending in the cell's column (false where no pair
    ends); ``alpha``/``beta`` hold the accumulated middle-vertex
    contributions gathered through the products.
    """

    adjacency: np.ndarray
    reach: np.ndarray
    jump: np.ndarray
    reach_right_of_pair: np.ndarray
    reach_left_of_pair: np.ndarray
    alpha: np.ndarray
    beta: np.ndarray


class _Builder:
    def __init__(self, instance: Instance, base_span: int):
        n = instance.n
        self.n = n
        self.base = max(2, base_span)
        self.rect_base = 2 * self.base  # finer products stop paying off
        self.pair_end = _pair_end_array(instance)
        self.A = np.zeros((n, n), dtype=bool)
        for u, v in instance.edges:
            self.A[u, v] = True
        self.P = np.zeros((n, n), dtype=bool)
        np.fill_diagonal(self.P, True)
        self.J = np.zeros((n, n), dtype=bool)
        self.Pj = np.zeros((n, n), dtype=bool)  # reach masked to w > q(column)
        self.Pb = np.zeros((n, n), dtype=bool)  # reach masked to w < q(column)
        for v, q in enumerate(self.pair_end):
            if q >= 0:
                self.Pj[v, v] = True  # diagonal is reachable and right of q
        self.muJ = np.zeros((n, n), dtype=bool)
        self.muA = np.zeros((n, n), dtype=bool)
        self.muB = np.zeros((n, n), dtype=bool)

    # -- recursion ---------------------------------------------------------

    def solve(self, lo: int, hi: int) -> None:
        if hi - lo <= self.base:
            self._triangle_base(lo, hi)
            return
        mid = (lo + hi) // 2
        self.solve(lo, mid)
        self.solve(mid, hi)
        self._combine(lo, mid, mid, hi)

    def _combine(self, a: int, b: int, c: int, d: int) -> None:
        """Finish all cells (u in [a,b), v in [c,d)); both triangles and all
        gap contributions between them are already in place."""
        if b - a <= self.rect_base and d - c <= self.rect_base:
            self._rect_base(a, b, c, d)
            return
        if b - a >= d - c:
            m = (a + b) // 2
            self._combine(m, b, c, d)
            self._inject((a, m), (m, b), (c, d))
            self._combine(a, m, c, d)
        else:
            m = (c + d) // 2
            self._combine(a, b, c, m)
            self._inject((a, b), (c, m), (m, d))
            self._combine(a, b, m, d)

    def _inject(self, rows: tuple[int, int], mid: tuple[int, int], cols: tuple[int, int]) -> None:
        r0, r1 = rows
        w0, w1 = mid
        c0, c1 = cols
        _fr_matmul_into(self.A[r0:r1, w0:w1], self.Pj[w0:w1, c0:c1], self.muJ[r0:r1, c0:c1])
        _fr_matmul_into(self.P[r0:r1, w0:w1], self.A[w0:w1, c0:c1], self.muA[r0:r1, c0:c1])
        _fr_matmul_into(self.P[r0:r1, w0:w1], self.J[w0:w1, c0:c1], self.muB[r0:r1, c0:c1])

    # -- scalar bases ------------------------------------------------------

    @staticmethod
    def _any_where(block: np.ndarray, mask: np.ndarray) -> np.ndarray:
        """Row-wise OR of ``block`` restricted to the true columns of ``mask``.

        Gathers through the nonzero indices when the mask is sparse, which
        it usually is for adjacency columns.
        """
        nz = np.nonzero(mask)[0]
        if nz.size == 0:
            return np.zeros(block.shape[0], dtype=bool)
        if 3 * nz.size < mask.size:
            return block[:, nz].any(axis=1)
        return (block & mask).any(axis=1)

    def _triangle_base(self, lo: int, hi: int) -> None:
        P, J, A, Pj, Pb = self.P, self.J, self.A, self.Pj, self.Pb
        muA, muB, muJ = self.muA, self.muB, self.muJ
        anyw = self._any_where
        for v in range(lo + 1, hi):
            q = self.pair_end[v]
            r0 = lo if q < lo else q + 1
            if r0 < v:
                acc = muA[r0:v, v] | anyw(P[r0:v, lo:v], A[lo:v, v])
                P[r0:v, v] = acc
                if q >= 0:
                    Pj[r0:v, v] = acc
            if lo < q:
                jacc = muJ[lo:q, v].copy()
                if q + 1 < v:
                    jacc |= anyw(A[lo:q, q + 1 : v], Pj[q + 1 : v, v])
                jacc |= A[lo:q, v]
                J[lo:q, v] = jacc
                pacc = muB[lo:q, v] | anyw(P[lo:q, lo:q], J[lo:q, v])
                P[lo:q, v] = pacc
                Pb[lo:q, v] = pacc

    def _rect_base(self, a: int, b: int, c: int, d: int) -> None:
        P, J, A, Pj, Pb = self.P, self.J, self.A, self.Pj, self.Pb
        muA, muB, muJ = self.muA, self.muB, self.muJ
        anyw = self._any_where
        for v in range(c, d):
            q = self.pair_end[v]
            r0 = a if q < a else q + 1
            if r0 < b:
                acc = muA[r0:b, v] | anyw(P[r0:b, a:b], A[a:b, v])
                if c < v:
                    acc |= anyw(P[r0:b, c:v], A[c:v, v])
                P[r0:b, v] = acc
                if q >= 0:
                    Pj[r0:b, v] = acc
            if a < q:
                r1 = min(b, q)
                jacc = muJ[a:r1, v].copy()
                lo1 = max(a, q + 1)
                if lo1 < b:
                    jacc |= anyw(A[a:r1, lo1:b], Pj[lo1:b, v])
                lo2 = max(c, q + 1)
                if lo2 < v:
                    jacc |= anyw(A[a:r1, lo2:v], Pj[lo2:v, v])
                jacc |= A[a:r1, v]
                J[a:r1, v] = jacc
                pacc = muB[a:r1, v] | anyw(P[a:r1, a : min(b, q)], J[a : min(b, q), v])
                hi2 = min(v, q)
                if c < hi2:
                    pacc |= anyw(P[a:r1, c:hi2], J[c:hi2, v])
                P[a:r1, v] = pacc
                Pb[a:r1, v] = pacc


def _finalise(builder: _Builder) -> DpTables:
    n = builder.n
    pe = np.asarray(builder.pair_end, dtype=np.int64)
    defined = (pe[None, :] >= 0) & (np.arange(n)[:, None] < pe[None, :])
    return DpTables(builder.P, builder.J, defined, pe)


def matrix_build(instance: Instance, base_span: int = DEFAULT_BASE_SPAN) -> DpTables:
    """Build the P and J tables through the blocked product scheme.

    Cell-identical to ``build_dp_tables``; intervals no longer than
    ``base_span`` are solved by the direct scalar DP.
    """
    if base_span < 2:
        raise ValueError("base_span must be at least 2")
    _require_halving_free(instance)
    if instance.n <= base_span:
        return build_dp_tables(instance)
    builder = _Builder(instance, base_span)
    builder.solve(0, instance.n)
    return _finalise(builder)


def matrix_build_full(
    instance: Instance, base_span: int = DEFAULT_BASE_SPAN
) -> tuple[DpTables, InsideProperties]:
    """As ``matrix_build`` but also expose the internal property matrices."""
    if base_span < 2:
        raise ValueError("base_span must be at least 2")
    _require_halving_free(instance)
    builder = _Builder(instance, base_span)
    builder.solve(0, instance.n)
    props = InsideProperties(
        adjacency=builder.A,
        reach=builder.P,
        jump=builder.J,
        reach_right_of_pair=builder.Pj,
        reach_left_of_pair=builder.Pb,
        alpha=builder.muA,
        beta=builder.muB,
    )
    return _finalise(builder), props
