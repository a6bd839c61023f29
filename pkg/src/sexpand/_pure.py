"""Pure-Python kernels: the hot inner loops, with exact integer arithmetic.

The compiled backend in ``_core.pyx`` implements the same two functions with
identical semantics; ``_kernels`` picks one at import time.  Callers clear
denominators first, so everything here works on plain ints (arbitrary
precision, no overflow concerns).
"""

from __future__ import annotations

from typing import Sequence

FlatMatrix = Sequence[int]


def _matmul(a: FlatMatrix, b: FlatMatrix, d: int) -> list[int]:
    out = [0] * (d * d)
    for i in range(d):
        base = i * d
        for k in range(d):
            aik = a[base + k]
            if not aik:
                continue
            kb = k * d
            for j in range(d):
                out[base + j] += aik * b[kb + j]
    return out


def signed_product_sum(mats: Sequence[FlatMatrix], d: int) -> tuple[int, ...]:
    """Sum of sign(sigma) * mats[sigma(0)] @ ... @ mats[sigma(n-1)] over S_n.

    Matrices are flat row-major int sequences of length d*d.  Permutations
    are enumerated by successive selection; picking position j among the
    remaining factors flips the running sign by (-1)**j, and prefix products
    are shared down the recursion.
    """
    n = len(mats)
    acc = [0] * (d * d)

    def descend(product: FlatMatrix, remaining: tuple[int, ...], sign: int) -> None:
        if not remaining:
            if sign > 0:
                for i, x in enumerate(product):
                    acc[i] += x
            else:
                for i, x in enumerate(product):
                    acc[i] -= x
            return
        for j in range(len(remaining)):
            child = remaining[:j] + remaining[j + 1 :]
            descend(
                _matmul(product, mats[remaining[j]], d),
                child,
                sign if j % 2 == 0 else -sign,
            )

    everything = tuple(range(n))
    for j in range(n):
        descend(
            list(mats[j]),
            everything[:j] + everything[j + 1 :],
            1 if j % 2 == 0 else -1,
        )
    return tuple(acc)


def _merge_disjoint(
    left: tuple[int, ...], right_full: tuple[int, ...], skip: int
) -> tuple[tuple[int, ...] | None, int]:
    """Merge ``left`` with ``right_full`` minus position ``skip``.

    Both inputs are strictly increasing.  Returns (merged tuple, sign) where
    the sign combines (-1)**skip (moving the contracted index to the front of
    the right tuple) with the parity of interleaving the two blocks; returns
    (None, 0) if the blocks share an index.
    """
    out: list[int] = []
    sign = -1 if skip % 2 else 1
    i = 0
    inversions = 0
    nleft = len(left)
    for pos, x in enumerate(right_full):
        if pos == skip:
            continue
        while i < nleft and left[i] < x:
            out.append(left[i])
            i += 1
        if i < nleft and left[i] == x:
            return None, 0
        out.append(x)
        inversions += nleft - i
    out.extend(left[i:])
    if inversions % 2:
        sign = -sign
    return tuple(out), sign


def gji_pair_terms(
    lowers: Sequence[tuple[int, ...]],
    uppers: Sequence[int],
    values: Sequence[int],
    order: int,
) -> dict[tuple[tuple[int, ...], int], int]:
    """Accumulate the Jacobi-condition residuals from entry pairs.

    For canonical entries (I -> C, v1) and (L2 -> D, v2) with C in L2, the
    term v1*v2 lands in the bucket keyed by the merged (2*order-1)-tuple and
    D, with the merge sign.  Summing over all pairs gives, bucket by bucket,
    1/(n! (n-1)!) times the antisymmetrized double contraction of the
    structure constants; buckets that no pair touches are exactly zero.
    """
    by_member: dict[int, list[int]] = {}
    for eid, low in enumerate(lowers):
        for g in low:
            by_member.setdefault(g, []).append(eid)
    acc: dict[tuple[tuple[int, ...], int], int] = {}
    for e1 in range(len(lowers)):
        holders = by_member.get(uppers[e1])
        if not holders:
            continue
        left = lowers[e1]
        v1 = values[e1]
        c = uppers[e1]
        for e2 in holders:
            l2 = lowers[e2]
            merged, sign = _merge_disjoint(left, l2, l2.index(c))
            if merged is None:
                continue
            key = (merged, uppers[e2])
            acc[key] = acc.get(key, 0) + sign * v1 * values[e2]
    return {k: v for k, v in acc.items() if v}
