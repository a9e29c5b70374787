"""Chunked enumeration kernels shared by the relation-bias algorithms.

Every kernel walks an assignment space of `total_bits` free bits.  For each
term t a small set of (source bit, destination bit) pairs scatters assignment
bits into a table index; the per-term index maps are materialized as two
lookup tables (low/high halves of the assignment word) so a chunk costs a few
gathers instead of one pass per bit.  Partial results are exact integers and
combine associatively, so chunks may be processed on any number of worker
threads without changing the result.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor

import numpy as np

DEFAULT_CHUNK_BITS = 18
_MAX_DEFAULT_WORKERS = 8


def worker_limit() -> int:
    """Worker-thread cap: min(cpu count, 8), further capped by PARITY_BIAS_THREADS."""
    cap = min(os.cpu_count() or 1, _MAX_DEFAULT_WORKERS)
    env = os.environ.get("PARITY_BIAS_THREADS")
    if env is not None:
        value = int(env)
        if value < 1:
            raise ValueError("PARITY_BIAS_THREADS must be a positive integer")
        cap = min(cap, value)
    return cap


def _assemble_lut(width_bits: int, pairs) -> np.ndarray:
    """LUT over all width_bits-wide words of the scattered destination bits."""
    span = np.arange(1 << width_bits, dtype=np.uint32)
    out = np.zeros(1 << width_bits, dtype=np.uint32)
    for src, dst in pairs:
        out |= ((span >> np.uint32(src)) & np.uint32(1)) << np.uint32(dst)
    return out


def _split_luts(per_term_pairs, total_bits: int, chunk_bits: int):
    lo_bits = min(total_bits, chunk_bits)
    hi_bits = total_bits - lo_bits
    luts = []
    for pairs in per_term_pairs:
        lo = [(s, d) for s, d in pairs if s < lo_bits]
        hi = [(s - lo_bits, d) for s, d in pairs if s >= lo_bits]
        luts.append((_assemble_lut(lo_bits, lo), _assemble_lut(hi_bits, hi)))
    return luts, lo_bits, hi_bits


def _run_chunks(fn, chunk_count: int, workers: int | None):
    if workers is None:
        workers = worker_limit()
    if workers > 1 and chunk_count >= 4:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(fn, range(chunk_count)))
    return [fn(h) for h in range(chunk_count)]


def indexed_product_sum(
    values,
    per_term_pairs,
    total_bits: int,
    value_bits: int,
    chunk_bits: int = DEFAULT_CHUNK_BITS,
    workers: int | None = None,
) -> tuple[int, int]:
    """Exact sum over all 2**total_bits assignments of the per-term table product.

    values: integer table indexed by the scattered per-term indices, with
    every magnitude at most 2**value_bits.  Returns (sum, op_count) where
    op_count is the number of table-lookup-and-multiply steps performed,
    always 2**total_bits * len(per_term_pairs).
    """
    terms = len(per_term_pairs)
    luts, lo_bits, hi_bits = _split_luts(per_term_pairs, total_bits, chunk_bits)
    prod_bits = value_bits * terms
    use_int64 = prod_bits <= 62
    if use_int64:
        table = np.asarray(values, dtype=np.int64)
        group_bits = min(lo_bits, 62 - prod_bits)
    else:
        table = np.array([int(v) for v in values], dtype=object)
        group_bits = 0

    def chunk_sum(h: int) -> int:
        acc = None
        for lut_lo, lut_hi in luts:
            idx = lut_lo | lut_hi[h]
            part = table[idx]
            acc = part if acc is None else acc * part
        if not use_int64:
            return int(acc.sum())
        if group_bits >= lo_bits:
            return int(acc.sum(dtype=np.int64))
        partial = acc.reshape(-1, 1 << group_bits).sum(axis=1, dtype=np.int64)
        return sum(int(v) for v in partial)

    parts = _run_chunks(chunk_sum, 1 << hi_bits, workers)
    op_count = (1 << total_bits) * terms
    return sum(parts), op_count


def indexed_xor_ones(
    table: np.ndarray,
    per_term_pairs,
    total_bits: int,
    chunk_bits: int = 20,
    workers: int | None = None,
) -> int:
    """Count assignments where the xor of per-term table bits is one.

    table: uint8 array of 0/1 values indexed by the scattered per-term
    indices.  Exhausts all 2**total_bits assignments.
    """
    luts, lo_bits, hi_bits = _split_luts(per_term_pairs, total_bits, chunk_bits)
    bit_table = np.ascontiguousarray(table, dtype=np.uint8)

    def chunk_ones(h: int) -> int:
        acc = None
        for lut_lo, lut_hi in luts:
            idx = lut_lo | lut_hi[h]
            part = bit_table[idx]
            acc = part if acc is None else acc ^ part
        return int(acc.sum(dtype=np.int64))

    parts = _run_chunks(chunk_ones, 1 << hi_bits, workers)
    return sum(parts)
