"""Exact permutation and antisymmetrization primitives.

Index tuples are plain tuples of 0-based ints.  Antisymmetric tensors are
stored sparsely as maps keyed by strictly increasing tuples; every other
ordering of a key is recovered by the sign of the sorting permutation, and
tuples with a repeated index are identically zero.  All arithmetic is exact:
ints and ``fractions.Fraction`` only.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from typing import Iterable, Iterator, Mapping, Sequence

from .errors import AntisymmetryError, InvalidPermutation, ShapeError


def permutation_parity(perm: Sequence[int]) -> int:
    """Return +1 or -1, the parity (-1)**inversions of a permutation of 0..m-1.

    >>> permutation_parity((0, 1, 2))
    1
    >>> permutation_parity((1, 0))
    -1
    >>> permutation_parity((1, 2, 0))
    1
    """
    m = len(perm)
    seen = [False] * m
    for x in perm:
        if not 0 <= x < m or seen[x]:
            raise InvalidPermutation(f"not a permutation of 0..{m - 1}: {perm!r}")
        seen[x] = True
    inversions = sum(
        1 for i in range(m) for j in range(i + 1, m) if perm[i] > perm[j]
    )
    return -1 if inversions % 2 else 1


def signed_permutations(m: int) -> Iterator[tuple[tuple[int, ...], int]]:
    """Yield every permutation of 0..m-1 together with its parity.

    Enumeration order is the lexicographic order of ``itertools.permutations``;
    parities are tracked incrementally instead of recounting inversions.
    """
    for perm in itertools.permutations(range(m)):
        yield perm, permutation_parity(perm)


def canonical_antisym(t: Sequence[int]) -> tuple[tuple[int, ...], int] | None:
    """Sort an index tuple, returning (sorted tuple, sign) or None on repeats.

    The sign is the parity of the sorting permutation, so for any
    antisymmetric tensor ``T``: ``T[t] == sign * T[sorted(t)]``.

    >>> canonical_antisym((3, 1, 2))
    ((1, 2, 3), 1)
    >>> canonical_antisym((2, 1))
    ((1, 2), -1)
    >>> canonical_antisym((1, 1, 4)) is None
    True
    """
    t = tuple(t)
    if len(set(t)) != len(t):
        return None
    order = sorted(range(len(t)), key=t.__getitem__)
    return tuple(t[i] for i in order), permutation_parity(tuple(order))


def merge_parity(left: Sequence[int], right: Sequence[int]) -> int:
    """Parity of interleaving two sorted disjoint tuples back into sorted order.

    Equivalently: the sign of the permutation that maps the sorted union of
    ``left + right`` onto the concatenation ``left ++ right``.
    """
    inversions = 0
    j = 0
    for x in right:
        while j < len(left) and left[j] < x:
            j += 1
        inversions += len(left) - j
    return -1 if inversions % 2 else 1


def generalized_delta(upper: Sequence[int], lower: Sequence[int]) -> int:
    """Generalized Kronecker delta as an exact integer determinant.

    Entry (i, j) of the underlying m-by-m matrix is 1 iff lower[i] == upper[j].
    Equals the signed sum over permutations sigma of prod_i
    delta(lower[i], upper[sigma(i)]); computed fraction-free (Bareiss) to
    avoid the m! permutation sum.

    >>> generalized_delta((1, 2), (1, 2))
    1
    >>> generalized_delta((1, 2), (2, 1))
    -1
    >>> generalized_delta((1, 1), (1, 2))
    0
    """
    if len(upper) != len(lower):
        raise ShapeError(f"length mismatch: {len(upper)} vs {len(lower)}")
    m = len(upper)
    if m == 0:
        return 1
    a = [[1 if lower[i] == upper[j] else 0 for j in range(m)] for i in range(m)]
    sign = 1
    prev = 1
    for k in range(m - 1):
        if a[k][k] == 0:
            for r in range(k + 1, m):
                if a[r][k] != 0:
                    a[k], a[r] = a[r], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, m):
            for j in range(k + 1, m):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = a[k][k]
    return sign * a[m - 1][m - 1]


def normalize_antisym(
    values: Mapping[Sequence[int], Fraction | int]
) -> dict[tuple[int, ...], Fraction]:
    """Canonicalize an antisymmetric value map to strictly increasing keys.

    Keys with repeated indices must carry value 0; two orderings of the same
    index set must agree up to the permutation sign.  Violations raise
    AntisymmetryError.  Zero values are dropped.
    """
    out: dict[tuple[int, ...], Fraction] = {}
    for key, raw in values.items():
        value = Fraction(raw)
        canon = canonical_antisym(key)
        if canon is None:
            if value != 0:
                raise AntisymmetryError(f"repeated index {tuple(key)!r} has nonzero value")
            continue
        skey, sign = canon
        value = sign * value
        if skey in out:
            if out[skey] != value:
                raise AntisymmetryError(f"inconsistent values for index set {skey!r}")
        elif value != 0:
            out[skey] = value
    return out


def contract_antisym(
    values: Mapping[Sequence[int], Fraction | int], r: int
) -> dict[tuple[int, ...], Fraction]:
    """Contract the generalized delta against an antisymmetric rank-r tensor.

    Returns the map  upper |-> sum_h delta(h, upper) * B[h]  over strictly
    increasing upper tuples, evaluated literally as the signed permutation
    sum.  For antisymmetric B this equals r! * B, which is what the tests
    assert.
    """
    canon = normalize_antisym(values)
    if any(len(k) != r for k in canon):
        raise ShapeError(f"keys must have length {r}")
    out: dict[tuple[int, ...], Fraction] = {}
    for key in canon:
        total = Fraction(0)
        for perm, sign in signed_permutations(r):
            permuted = tuple(key[i] for i in perm)
            pcanon = canonical_antisym(permuted)
            if pcanon is None:
                continue
            skey, psign = pcanon
            total += sign * psign * canon.get(skey, Fraction(0))
        if total:
            out[key] = total
    return out


def alternating_parity_sum(n: int) -> int:
    """Evaluate sum_{s=0}^{n-1} (-1)**(s*(n+1)) exactly.

    >>> [alternating_parity_sum(n) for n in (2, 3, 4, 5)]
    [0, 3, 0, 5]
    """
    return sum((-1) ** (s * (n + 1)) for s in range(n))


def increasing_tuples(dim: int, length: int) -> Iterable[tuple[int, ...]]:
    """All strictly increasing index tuples of the given length below dim."""
    return itertools.combinations(range(dim), length)
