# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled kernels: same contracts as ``_pure``, C inner loops.

Both entry points run an int64 fast path guarded by an exact a-priori bound
on every intermediate value; inputs that could overflow are delegated to the
pure-Python big-int implementation, so results are always exact.
"""

from libc.stdint cimport int64_t
from libc.stdlib cimport free, malloc
from libc.string cimport memset

from . import _pure

cdef int64_t _INT64_CAP = <int64_t> 1 << 62


cdef void _matmul_c(int64_t* a, int64_t* b, int64_t* out, int d) noexcept:
    cdef int i, j, k
    cdef int64_t aik
    memset(out, 0, d * d * sizeof(int64_t))
    for i in range(d):
        for k in range(d):
            aik = a[i * d + k]
            if aik == 0:
                continue
            for j in range(d):
                out[i * d + j] += aik * b[k * d + j]


cdef void _descend(
    int64_t* mats,
    int* rem,
    int n_rem,
    int depth,
    int sign,
    int64_t* prods,
    int* rem_stack,
    int64_t* acc,
    int d,
    int n,
) noexcept:
    cdef int d2 = d * d
    cdef int i, j, t
    cdef int64_t* cur = prods + depth * d2
    cdef int* child
    if n_rem == 0:
        if sign > 0:
            for i in range(d2):
                acc[i] += cur[i]
        else:
            for i in range(d2):
                acc[i] -= cur[i]
        return
    child = rem_stack + (depth + 1) * n
    for j in range(n_rem):
        t = 0
        for i in range(n_rem):
            if i != j:
                child[t] = rem[i]
                t += 1
        _matmul_c(cur, mats + rem[j] * d2, prods + (depth + 1) * d2, d)
        _descend(
            mats,
            child,
            n_rem - 1,
            depth + 1,
            sign if j % 2 == 0 else -sign,
            prods,
            rem_stack,
            acc,
            d,
            n,
        )


def signed_product_sum(mats, int d):
    """Sum of sign(sigma) * prod(mats[sigma]) over all permutations."""
    cdef int n = len(mats)
    cdef int d2 = d * d
    cdef int i, j
    if n == 0 or d == 0:
        return _pure.signed_product_sum(mats, d)

    max_abs = 0
    for m in mats:
        for x in m:
            ax = -x if x < 0 else x
            if ax > max_abs:
                max_abs = ax
    # every accumulated value is bounded by n! * d^(n-1) * max_abs^n
    bound = 1
    for i in range(2, n + 1):
        bound *= i
    bound *= d ** (n - 1) * max_abs ** n
    if bound >= _INT64_CAP:
        return _pure.signed_product_sum(mats, d)

    cdef int64_t* mats_c = <int64_t*> malloc(n * d2 * sizeof(int64_t))
    cdef int64_t* prods = <int64_t*> malloc((n + 1) * d2 * sizeof(int64_t))
    cdef int64_t* acc = <int64_t*> malloc(d2 * sizeof(int64_t))
    cdef int* rem_stack = <int*> malloc((n + 1) * n * sizeof(int))
    if mats_c == NULL or prods == NULL or acc == NULL or rem_stack == NULL:
        free(mats_c); free(prods); free(acc); free(rem_stack)
        raise MemoryError()
    try:
        for i in range(n):
            flat = mats[i]
            for j in range(d2):
                mats_c[i * d2 + j] = flat[j]
        memset(prods, 0, d2 * sizeof(int64_t))
        for i in range(d):
            prods[i * d + i] = 1
        memset(acc, 0, d2 * sizeof(int64_t))
        for i in range(n):
            rem_stack[i] = i
        _descend(mats_c, rem_stack, n, 0, 1, prods, rem_stack, acc, d, n)
        return tuple([acc[i] for i in range(d2)])
    finally:
        free(mats_c)
        free(prods)
        free(acc)
        free(rem_stack)


def gji_pair_terms(lowers, uppers, values, int order):
    """Jacobi-condition residual buckets from canonical entry pairs."""
    cdef Py_ssize_t e_count = len(lowers)
    cdef int n = order
    cdef int width = 2 * n - 1
    if e_count == 0:
        return {}

    total = 0
    for v in values:
        total += v if v >= 0 else -v
    if total * total >= _INT64_CAP:
        return _pure.gji_pair_terms(lowers, uppers, values, order)

    cdef int dim = 0
    cdef Py_ssize_t e, t
    cdef int g
    for low in lowers:
        for member in low:
            if member + 1 > dim:
                dim = member + 1
    for u in uppers:
        if u + 1 > dim:
            dim = u + 1

    cdef int* low_c = <int*> malloc(e_count * n * sizeof(int))
    cdef int* up_c = <int*> malloc(e_count * sizeof(int))
    cdef int64_t* val_c = <int64_t*> malloc(e_count * sizeof(int64_t))
    cdef int* counts = <int*> malloc((dim + 1) * sizeof(int))
    cdef int* merged = <int*> malloc(width * sizeof(int))
    cdef Py_ssize_t* offsets = <Py_ssize_t*> malloc((dim + 1) * sizeof(Py_ssize_t))
    cdef Py_ssize_t* items = <Py_ssize_t*> malloc(e_count * n * sizeof(Py_ssize_t))
    if (low_c == NULL or up_c == NULL or val_c == NULL or counts == NULL
            or merged == NULL or offsets == NULL or items == NULL):
        free(low_c); free(up_c); free(val_c); free(counts)
        free(merged); free(offsets); free(items)
        raise MemoryError()

    cdef Py_ssize_t e1, e2, idx, pos
    cdef int c, skip, i_left, out_t, inversions, sign, x
    cdef int64_t v1, term
    cdef int* left
    cdef int* right
    acc = {}
    try:
        for e in range(e_count):
            low = lowers[e]
            for t in range(n):
                low_c[e * n + t] = low[t]
            up_c[e] = uppers[e]
            val_c[e] = values[e]

        # CSR index: generator -> entries containing it in the lower tuple
        memset(counts, 0, (dim + 1) * sizeof(int))
        for e in range(e_count):
            for t in range(n):
                counts[low_c[e * n + t]] += 1
        offsets[0] = 0
        for g in range(dim):
            offsets[g + 1] = offsets[g] + counts[g]
            counts[g] = 0
        for e in range(e_count):
            for t in range(n):
                g = low_c[e * n + t]
                items[offsets[g] + counts[g]] = e
                counts[g] += 1

        for e1 in range(e_count):
            c = up_c[e1]
            if offsets[c + 1] == offsets[c]:
                continue
            left = low_c + e1 * n
            v1 = val_c[e1]
            for idx in range(offsets[c], offsets[c + 1]):
                e2 = items[idx]
                right = low_c + e2 * n
                skip = 0
                while right[skip] != c:
                    skip += 1
                # merge left with right-minus-skip, rejecting shared indices
                i_left = 0
                out_t = 0
                inversions = 0
                sign = -1 if skip % 2 else 1
                for pos in range(n):
                    if pos == skip:
                        continue
                    x = right[pos]
                    while i_left < n and left[i_left] < x:
                        merged[out_t] = left[i_left]
                        out_t += 1
                        i_left += 1
                    if i_left < n and left[i_left] == x:
                        out_t = -1
                        break
                    merged[out_t] = x
                    out_t += 1
                    inversions += n - i_left
                if out_t < 0:
                    continue
                while i_left < n:
                    merged[out_t] = left[i_left]
                    out_t += 1
                    i_left += 1
                if inversions % 2:
                    sign = -sign
                term = sign * v1 * val_c[e2]
                key = (tuple([merged[t] for t in range(width)]), <int> up_c[e2])
                prev = acc.get(key)
                if prev is None:
                    acc[key] = term
                else:
                    acc[key] = prev + term
        return {k: v for k, v in acc.items() if v != 0}
    finally:
        free(low_c)
        free(up_c)
        free(val_c)
        free(counts)
        free(merged)
        free(offsets)
        free(items)
