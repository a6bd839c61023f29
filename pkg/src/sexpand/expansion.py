"""Semigroup expansion of multialgebras and the zero-element reduction.

An expansion runs over the pair basis (generator A, semigroup element a),
encoded flat as A * M + a so all copies of a base generator stay contiguous.
The expanded constant at pairs ((A1,a1), ..., (An,an)) -> (C,g) is the base
constant times the selector that the product of the a_i equals g; since the
base lower tuples are strictly increasing in A, the emitted flat tuples are
already canonical and no resigning is needed.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .errors import NoZeroElement
from .multialgebra import MultiAlgebra, StructureTensor, SubspaceSplit
from .semigroup import Semigroup


@dataclass(frozen=True)
class PairBasis:
    """Flat encoding of the pair basis: (A, a) <-> A * M + a."""

    base_dim: int
    semigroup_order: int

    def __post_init__(self):
        if self.base_dim < 1 or self.semigroup_order < 1:
            raise ValueError("pair basis needs positive dimensions")

    @property
    def size(self) -> int:
        return self.base_dim * self.semigroup_order

    def encode(self, generator: int, element: int) -> int:
        if not 0 <= generator < self.base_dim:
            raise IndexError(f"generator index {generator} out of range")
        if not 0 <= element < self.semigroup_order:
            raise IndexError(f"element index {element} out of range")
        return generator * self.semigroup_order + element

    def decode(self, flat: int) -> tuple[int, int]:
        if not 0 <= flat < self.size:
            raise IndexError(f"pair index {flat} out of range")
        return divmod(flat, self.semigroup_order)


@dataclass(frozen=True)
class ExpandedAlgebra:
    """A multialgebra on a full pair basis.

    ``semigroup`` is kept when known (results of :func:`s_expand`); files do
    not carry it, so loaded instances have None and operations needing the
    table take it explicitly.
    """

    algebra: MultiAlgebra
    pairing: PairBasis
    semigroup: Semigroup | None = field(default=None, compare=False)

    def __post_init__(self):
        if self.algebra.dim != self.pairing.size:
            raise ValueError("algebra dimension must match the pair basis size")
        if (
            self.semigroup is not None
            and self.semigroup.order != self.pairing.semigroup_order
        ):
            raise ValueError("semigroup order must match the pair basis")

    @property
    def order(self) -> int:
        return self.algebra.order

    @property
    def dim(self) -> int:
        return self.algebra.dim


def pair_names(
    base_names: tuple[str, ...], element_labels: tuple[str, ...]
) -> tuple[str, ...]:
    """Basis names for the pair basis in flat order."""
    return tuple(
        f"{label}*{name}" for name in base_names for label in element_labels
    )


def s_expand(a: MultiAlgebra, s: Semigroup) -> ExpandedAlgebra:
    """Expand a multialgebra by an Abelian semigroup.

    Every base entry is replicated over all tuples of semigroup elements,
    landing on the target element given by their product.  The result has
    dimension (order of the semigroup) times the base dimension and inherits
    the generalized Jacobi condition from the base.
    """
    m = s.order
    pairing = PairBasis(a.dim, m)
    items = []
    for lower, upper, value in a.tensor.items():
        for alphas in itertools.product(range(m), repeat=a.order):
            gamma = s.fold(alphas)
            flat_lower = tuple(
                g * m + alpha for g, alpha in zip(lower, alphas)
            )
            items.append((flat_lower, upper * m + gamma, value))
    tensor = StructureTensor.from_entries(pairing.size, a.order, items)
    algebra = MultiAlgebra(pair_names(a.basis, s.labels), tensor)
    return ExpandedAlgebra(algebra, pairing, s)


def _required_semigroup(e: ExpandedAlgebra, s: Semigroup | None) -> Semigroup:
    s = s if s is not None else e.semigroup
    if s is None:
        raise ValueError("this expanded algebra carries no semigroup; pass one")
    if s.order != e.pairing.semigroup_order:
        raise ValueError("semigroup order does not match the pair basis")
    return s


def zero_split(e: ExpandedAlgebra, s: Semigroup | None = None) -> SubspaceSplit:
    """The split v0 = pairs over nonzero elements, v1 = pairs over the zero.

    Raises NoZeroElement when the semigroup has no absorbing element.
    """
    s = _required_semigroup(e, s)
    z = s.zero_element()
    if z is None:
        raise NoZeroElement("semigroup has no absorbing element")
    m = s.order
    v0 = frozenset(
        g * m + alpha
        for g in range(e.pairing.base_dim)
        for alpha in range(m)
        if alpha != z
    )
    return SubspaceSplit(v0, e.dim)


def zero_reduce(e: ExpandedAlgebra, s: Semigroup | None = None) -> ExpandedAlgebra:
    """Impose zero * T = 0: drop all pairs over the absorbing element.

    Entries targeting the zero element disappear; the rest are unchanged and
    reindexed over the (M-1)-element pair basis.  Equals the block reduction
    of the expanded algebra on the :func:`zero_split` split.
    """
    s = _required_semigroup(e, s)
    z = s.zero_element()
    if z is None:
        raise NoZeroElement("semigroup has no absorbing element")
    m = s.order
    if m == 1:
        raise ValueError("cannot reduce away the only element")

    def remap(flat: int) -> int:
        g, alpha = divmod(flat, m)
        return g * (m - 1) + (alpha if alpha < z else alpha - 1)

    items = []
    for lower, upper, value in e.algebra.tensor.items():
        if upper % m == z or any(i % m == z for i in lower):
            continue
        items.append((tuple(remap(i) for i in lower), remap(upper), value))
    pairing = PairBasis(e.pairing.base_dim, m - 1)
    basis = tuple(
        name for i, name in enumerate(e.algebra.basis) if i % m != z
    )
    tensor = StructureTensor.from_entries(pairing.size, e.order, items)
    return ExpandedAlgebra(MultiAlgebra(basis, tensor), pairing, None)
