"""Matrix realization of multibrackets and constant extraction.

The n-bracket of matrices is the signed sum over all n! orderings of their
products.  ``gji_lhs`` evaluates the antisymmetrized nesting of an n-bracket
inside an n-bracket over all (2n-1)! permutations of the arguments, with the
1/(n-1)!/n! prefactor.  Rather than walking every permutation, terms are
grouped by which argument positions feed the inner bracket: both brackets
are antisymmetric in their slots, so the n!(n-1)! permutations sharing a
position split contribute identical values and the prefactor cancels against
the group size.  The remaining work is one inner and one outer bracket per
split, C(2n-1, n) of them.

For even n the result is exactly zero; for odd n it equals n times the
(2n-1)-arity bracket.  ``verify_identity`` machine-checks both branches.
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from . import _kernels
from .combinatorics import canonical_antisym, merge_parity
from .errors import ArityError, ClosureError, RankError
from .multialgebra import MultiAlgebra, StructureTensor

Matrix = tuple[tuple[Fraction, ...], ...]


def as_matrix(rows: Iterable[Iterable[Fraction | int | str]]) -> Matrix:
    """Coerce nested rows into a square tuple-of-tuples of Fractions."""
    mat = tuple(tuple(Fraction(x) for x in row) for row in rows)
    if any(len(row) != len(mat) for row in mat):
        raise ValueError("matrix must be square")
    return mat


def zero_matrix(d: int) -> Matrix:
    return tuple((Fraction(0),) * d for _ in range(d))


@dataclass(frozen=True)
class MatrixRep:
    """An ordered list of same-size square rational matrices."""

    generators: tuple[Matrix, ...]

    def __post_init__(self):
        mats = tuple(as_matrix(g) for g in self.generators)
        if not mats:
            raise ValueError("need at least one generator")
        if any(len(g) != len(mats[0]) for g in mats):
            raise ValueError("generators must share one size")
        object.__setattr__(self, "generators", mats)

    @property
    def size(self) -> int:
        return len(self.generators[0])

    @property
    def count(self) -> int:
        return len(self.generators)


def _cleared(mat: Matrix) -> tuple[tuple[int, ...], int]:
    den = math.lcm(*(x.denominator for row in mat for x in row)) if mat else 1
    return tuple(int(x * den) for row in mat for x in row), den


def bracket_of_matrices(mats: Sequence[Matrix], d: int) -> Matrix:
    """Signed sum over all orderings of the product of the given matrices."""
    flats = []
    den_total = 1
    for m in mats:
        flat, den = _cleared(m)
        flats.append(flat)
        den_total *= den
    out = _kernels.signed_product_sum(tuple(flats), d)
    it = iter(out)
    return tuple(
        tuple(Fraction(next(it), den_total) for _ in range(d)) for _ in range(d)
    )


def _check_indices(rep: MatrixRep, args: Sequence[int]) -> None:
    for i in args:
        if not 0 <= i < rep.count:
            raise IndexError(f"generator index {i} out of range 0..{rep.count - 1}")


def multibracket(rep: MatrixRep, args: Sequence[int]) -> Matrix:
    """The n-bracket of the generators named by ``args``.

    A repeated index gives the zero matrix (the signed sum cancels pairwise,
    so this is a shortcut, not a convention).
    """
    _check_indices(rep, args)
    if len(set(args)) != len(args):
        return zero_matrix(rep.size)
    return bracket_of_matrices([rep.generators[i] for i in args], rep.size)


def _mat_add_scaled(acc: list[list[Fraction]], m: Matrix, sign: int) -> None:
    for i, row in enumerate(m):
        ai = acc[i]
        if sign > 0:
            for j, x in enumerate(row):
                ai[j] += x
        else:
            for j, x in enumerate(row):
                ai[j] -= x


def gji_lhs(rep: MatrixRep, args: Sequence[int], n: int) -> Matrix:
    """Normalized antisymmetrized nesting of the n-bracket over 2n-1 slots.

    Splits where either block repeats an argument are skipped: a repeat
    inside the inner block zeroes the inner bracket, a repeat among the
    outer generators cancels the outer sum.  Repeats across the two blocks
    are kept; those terms cancel only in the total.
    """
    if n < 2:
        raise ArityError("arity must be at least 2")
    if len(args) != 2 * n - 1:
        raise ArityError(f"expected {2 * n - 1} arguments, got {len(args)}")
    _check_indices(rep, args)
    d = rep.size
    acc = [[Fraction(0)] * d for _ in range(d)]
    inner_cache: dict[tuple[int, ...], Matrix] = {}
    positions = tuple(range(2 * n - 1))
    for inner_pos in itertools.combinations(positions, n):
        outer_pos = tuple(p for p in positions if p not in inner_pos)
        inner_args = tuple(args[p] for p in inner_pos)
        outer_args = tuple(args[p] for p in outer_pos)
        canon = canonical_antisym(inner_args)
        if canon is None or len(set(outer_args)) != n - 1:
            continue
        key, inner_sign = canon
        inner = inner_cache.get(key)
        if inner is None:
            inner = bracket_of_matrices([rep.generators[i] for i in key], d)
            inner_cache[key] = inner
        outer = bracket_of_matrices(
            [inner] + [rep.generators[i] for i in outer_args], d
        )
        _mat_add_scaled(acc, outer, inner_sign * merge_parity(inner_pos, outer_pos))
    return tuple(tuple(row) for row in acc)


@dataclass(frozen=True)
class IdentityReport:
    ok: bool
    arity: int
    checked: int
    witnesses: tuple[tuple[int, ...], ...]

    def __bool__(self) -> bool:
        return self.ok


def verify_identity(
    rep: MatrixRep,
    n: int,
    trials: int | None = None,
    seed: int = 0,
) -> IdentityReport:
    """Check gji_lhs against its closed form on increasing index tuples.

    Even n: gji_lhs must be the zero matrix.  Odd n: it must equal n times
    the (2n-1)-bracket.  All tuples are checked when there are at most
    ``trials`` of them (or trials is None); otherwise ``trials`` distinct
    tuples are sampled with the seeded generator.
    """
    width = 2 * n - 1
    total = math.comb(rep.count, width) if rep.count >= width else 0
    if trials is None or total <= trials:
        tuples: Iterable[tuple[int, ...]] = itertools.combinations(
            range(rep.count), width
        )
        checked = total
    else:
        rng = random.Random(seed)
        chosen: set[tuple[int, ...]] = set()
        while len(chosen) < trials:
            chosen.add(tuple(sorted(rng.sample(range(rep.count), width))))
        tuples = sorted(chosen)
        checked = trials
    witnesses = []
    zero = zero_matrix(rep.size)
    for args in tuples:
        lhs = gji_lhs(rep, args, n)
        if n % 2 == 0:
            expected = zero
        else:
            wide = multibracket(rep, args)
            expected = tuple(tuple(n * x for x in row) for row in wide)
        if lhs != expected:
            witnesses.append(args)
    return IdentityReport(
        ok=not witnesses, arity=n, checked=checked, witnesses=tuple(witnesses)
    )


class _SpanSolver:
    """Exact least-effort solver for membership in a fixed column span.

    Row-reduces the column matrix of flattened generators once, tracking the
    elimination as a transform E, then answers each right-hand side with one
    matrix-vector product.  Consistency is exact: a vector is in the span
    iff the transformed entries beyond the rank all vanish.
    """

    def __init__(self, columns: Sequence[Sequence[Fraction]]):
        height = len(columns[0])
        width = len(columns)
        rows = [[columns[j][i] for j in range(width)] for i in range(height)]
        transform = [
            [Fraction(1) if i == j else Fraction(0) for j in range(height)]
            for i in range(height)
        ]
        pivots: list[int] = []
        r = 0
        for c in range(width):
            pivot = next((i for i in range(r, height) if rows[i][c] != 0), None)
            if pivot is None:
                continue
            rows[r], rows[pivot] = rows[pivot], rows[r]
            transform[r], transform[pivot] = transform[pivot], transform[r]
            inv = 1 / rows[r][c]
            rows[r] = [x * inv for x in rows[r]]
            transform[r] = [x * inv for x in transform[r]]
            for i in range(height):
                if i != r and rows[i][c] != 0:
                    f = rows[i][c]
                    rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
                    transform[i] = [
                        x - f * y for x, y in zip(transform[i], transform[r])
                    ]
            pivots.append(c)
            r += 1
        if len(pivots) != width:
            raise RankError("generators are linearly dependent")
        self._transform = transform
        self._rank = width
        self._height = height

    def solve(self, vector: Sequence[Fraction]) -> tuple[Fraction, ...] | None:
        """Coefficients expressing ``vector`` in the span, or None if outside."""
        y = [
            sum(t * v for t, v in zip(row, vector) if v) or Fraction(0)
            for row in self._transform
        ]
        if any(y[i] != 0 for i in range(self._rank, self._height)):
            return None
        return tuple(y[: self._rank])


def extract_constants(rep: MatrixRep, n: int) -> MultiAlgebra:
    """Solve every increasing n-bracket into the generator span.

    Returns the order-n multialgebra of extracted constants; raises
    ClosureError naming the first tuple whose bracket leaves the span, and
    RankError if the generators are linearly dependent.
    """
    if n < 2:
        raise ArityError("arity must be at least 2")
    if n > 2 and n % 2 != 0:
        raise ArityError("extraction targets multialgebras: arity must be 2 or even")
    solver = _SpanSolver(
        [[x for row in g for x in row] for g in rep.generators]
    )
    items = []
    for args in itertools.combinations(range(rep.count), n):
        bracket = multibracket(rep, args)
        coeffs = solver.solve([x for row in bracket for x in row])
        if coeffs is None:
            raise ClosureError(args)
        for upper, value in enumerate(coeffs):
            if value:
                items.append((args, upper, value))
    tensor = StructureTensor.from_entries(rep.count, n, items)
    basis = tuple(f"T{i}" for i in range(rep.count))
    return MultiAlgebra(basis, tensor)
