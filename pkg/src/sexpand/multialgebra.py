"""Higher-order Lie algebras as sparse antisymmetric structure tensors.

An order-n multialgebra stores the constants of its n-slot bracket keyed by
strictly increasing lower index tuples, with the sign of any other ordering
recovered on lookup.  The generalized Jacobi condition is the vanishing, for
every (2n-1)-tuple of generators and every target D, of the antisymmetrized
double contraction

    sum over permutations sigma of sign(sigma) *
        C[sigma(first n)]^E * C[E, sigma(last n-1)]^D.

``check_gji`` accumulates these residuals from pairs of stored entries
instead of walking permutations per tuple: each pair of entries sharing the
contracted index contributes to exactly one bucket, and every bucket nobody
touches is exactly zero.  The literal permutation sum is kept out of the
library on purpose; the test suite uses it as the independent oracle.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Iterator, NamedTuple, Sequence

from . import _kernels
from .combinatorics import canonical_antisym
from .errors import ArityError, NotReducible, OddOrderUnsupported

RationalLike = Fraction | int | str


@dataclass(frozen=True)
class StructureTensor:
    """Sparse fully antisymmetric tensor of exact rationals.

    ``entries`` maps canonical (strictly increasing) lower tuples to
    ``{upper index: value}`` rows.  Use :meth:`from_entries` to build one
    from arbitrary (possibly unsorted) index tuples.
    """

    dim: int
    order: int
    entries: dict[tuple[int, ...], dict[int, Fraction]]

    def __post_init__(self):
        if self.order < 2:
            raise ValueError("order must be >= 2")
        normalized: dict[tuple[int, ...], dict[int, Fraction]] = {}
        for lower in sorted(self.entries):
            row = self.entries[lower]
            if len(lower) != self.order:
                raise ValueError(f"lower tuple {lower!r} has wrong length")
            if any(a >= b for a, b in zip(lower, lower[1:])):
                raise ValueError(f"lower tuple {lower!r} is not strictly increasing")
            if lower and not (0 <= lower[0] and lower[-1] < self.dim):
                raise IndexError(f"lower tuple {lower!r} out of range")
            clean = {}
            for upper in sorted(row):
                if not 0 <= upper < self.dim:
                    raise IndexError(f"upper index {upper} out of range")
                value = Fraction(row[upper])
                if value:
                    clean[upper] = value
            if clean:
                normalized[lower] = clean
        object.__setattr__(self, "entries", normalized)

    @classmethod
    def from_entries(
        cls,
        dim: int,
        order: int,
        items: Iterable[tuple[Sequence[int], int, RationalLike]],
    ) -> "StructureTensor":
        """Canonicalize (lower, upper, value) triples into a tensor.

        Non-canonical lower tuples are sorted with their sign absorbed into
        the value; tuples with a repeated index must carry value 0.  Two
        items landing on the same canonical key must agree exactly.
        """
        entries: dict[tuple[int, ...], dict[int, Fraction]] = {}
        for lower, upper, raw in items:
            value = Fraction(raw)
            canon = canonical_antisym(lower)
            if canon is None:
                if value != 0:
                    raise ValueError(
                        f"repeated lower index {tuple(lower)!r} with nonzero value"
                    )
                continue
            key, sign = canon
            value = sign * value
            row = entries.setdefault(key, {})
            if upper in row and row[upper] != value:
                raise ValueError(
                    f"conflicting duplicate entry for lower={key!r} upper={upper}"
                )
            row[upper] = value
        return cls(dim, order, entries)

    def items(self) -> Iterator[tuple[tuple[int, ...], int, Fraction]]:
        """Yield (canonical lower, upper, value) triples in sorted order."""
        for lower, row in self.entries.items():
            for upper, value in row.items():
                yield lower, upper, value

    def row(self, lower: tuple[int, ...]) -> dict[int, Fraction]:
        """The {upper: value} row for a canonical lower tuple (may be empty)."""
        return self.entries.get(lower, {})

    def get(self, lower: Sequence[int], upper: int) -> Fraction:
        """Value at an arbitrary lower tuple, antisymmetry sign applied."""
        canon = canonical_antisym(lower)
        if canon is None:
            return Fraction(0)
        key, sign = canon
        return sign * self.entries.get(key, {}).get(upper, Fraction(0))

    def coefficients(self, args: Sequence[int]) -> tuple[Fraction, ...]:
        """Coefficient vector of the bracket of ``args`` over all uppers."""
        if len(args) != self.order:
            raise ArityError(f"expected {self.order} indices, got {len(args)}")
        canon = canonical_antisym(args)
        out = [Fraction(0)] * self.dim
        if canon is None:
            return tuple(out)
        key, sign = canon
        for upper, value in self.entries.get(key, {}).items():
            out[upper] = sign * value
        return tuple(out)

    @property
    def nonzero_count(self) -> int:
        return sum(len(row) for row in self.entries.values())


@dataclass(frozen=True)
class MultiAlgebra:
    """A basis plus an order-n structure tensor.

    Arity must be 2 or even; arbitrary candidate constants are accepted so
    that invalid ones can be represented and reported against.
    """

    basis: tuple[str, ...]
    tensor: StructureTensor

    def __post_init__(self):
        object.__setattr__(self, "basis", tuple(self.basis))
        if len(self.basis) != self.tensor.dim:
            raise ValueError("basis length must equal tensor dimension")
        if self.tensor.order > 2 and self.tensor.order % 2 != 0:
            raise OddOrderUnsupported(
                f"multialgebra arity must be even, got {self.tensor.order}"
            )

    @property
    def dim(self) -> int:
        return self.tensor.dim

    @property
    def order(self) -> int:
        return self.tensor.order

    def bracket(self, args: Sequence[int]) -> tuple[Fraction, ...]:
        """Coefficients of [T_{args[0]}, ..., T_{args[n-1]}] over the basis."""
        return self.tensor.coefficients(args)


@dataclass(frozen=True)
class SubspaceSplit:
    """A two-block split of the generator index set."""

    v0: frozenset[int]
    dim: int

    def __post_init__(self):
        object.__setattr__(self, "v0", frozenset(self.v0))
        if not all(0 <= i < self.dim for i in self.v0):
            raise IndexError("v0 indices out of range")

    @property
    def v1(self) -> frozenset[int]:
        return frozenset(range(self.dim)) - self.v0


class GjiViolation(NamedTuple):
    lower: tuple[int, ...]
    upper: int
    residual: Fraction


@dataclass(frozen=True)
class GjiReport:
    ok: bool
    witnesses: tuple[GjiViolation, ...]
    stats: dict[str, int] = field(default_factory=dict, compare=False)

    def __bool__(self) -> bool:
        return self.ok


@dataclass(frozen=True)
class CheckResult:
    ok: bool
    witnesses: tuple = ()

    def __bool__(self) -> bool:
        return self.ok


def check_gji(a: MultiAlgebra) -> GjiReport:
    """Verify the generalized Jacobi condition on every index combination.

    Residuals are normalized as the raw permutation sum (no factorial
    prefactor), so they match the naive nested-bracket oracle value for
    value.  Witness records are (lower tuple, upper index, residual).
    """
    n = a.order
    lowers: list[tuple[int, ...]] = []
    uppers: list[int] = []
    values: list[Fraction] = []
    den = 1
    for lower, upper, value in a.tensor.items():
        lowers.append(lower)
        uppers.append(upper)
        values.append(value)
        den = math.lcm(den, value.denominator)
    ints = tuple(int(v * den) for v in values)
    raw = _kernels.gji_pair_terms(tuple(lowers), tuple(uppers), ints, n)
    scale = math.factorial(n) * math.factorial(n - 1)
    witnesses = tuple(
        GjiViolation(lower, upper, Fraction(scale * term, den * den))
        for (lower, upper), term in sorted(raw.items())
    )
    stats = {
        "entries": len(lowers),
        "candidate_tuples": math.comb(a.dim, 2 * n - 1),
        "buckets": len(raw),
    }
    return GjiReport(ok=not witnesses, witnesses=witnesses, stats=stats)


def check_submultialgebra(a: MultiAlgebra, split: SubspaceSplit) -> CheckResult:
    """True iff brackets of v0 generators never leave v0.

    Witnesses are the stored entries with every lower index in v0 but the
    upper index in v1.
    """
    v0 = split.v0
    witnesses = tuple(
        (lower, upper, value)
        for lower, upper, value in a.tensor.items()
        if all(i in v0 for i in lower) and upper not in v0
    )
    return CheckResult(ok=not witnesses, witnesses=witnesses)


def check_reduction_condition(a: MultiAlgebra, split: SubspaceSplit) -> CheckResult:
    """True iff brackets with one v1 slot and the rest in v0 land in v1.

    Equivalently: no stored entry has exactly one lower index in v1, the
    others in v0, and its upper index in v0.
    """
    v0 = split.v0
    witnesses = tuple(
        (lower, upper, value)
        for lower, upper, value in a.tensor.items()
        if sum(i not in v0 for i in lower) == 1 and upper in v0
    )
    return CheckResult(ok=not witnesses, witnesses=witnesses)


def reduced_multialgebra(a: MultiAlgebra, split: SubspaceSplit) -> MultiAlgebra:
    """Restrict to the v0 block after dropping targets outside it.

    Requires the reduction condition; the surviving constants then satisfy
    the generalized Jacobi condition on their own whenever the input does.
    """
    condition = check_reduction_condition(a, split)
    if not condition.ok:
        raise NotReducible(condition.witnesses)
    keep = sorted(split.v0)
    relabel = {old: new for new, old in enumerate(keep)}
    v0 = split.v0
    items = [
        (tuple(relabel[i] for i in lower), relabel[upper], value)
        for lower, upper, value in a.tensor.items()
        if upper in v0 and all(i in v0 for i in lower)
    ]
    tensor = StructureTensor.from_entries(len(keep), a.order, items)
    return MultiAlgebra(tuple(a.basis[i] for i in keep), tensor)
