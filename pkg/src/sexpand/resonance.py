"""Resonant subalgebras of expanded multialgebras and their reductions.

A subspace decomposition splits the generators into labeled parts; the
closure structure records, for each multiset of parts fed to the bracket,
which parts the result can land in.  A family of semigroup subsets (one per
part, overlaps allowed) is resonant when every product of elements drawn
from the slot subsets lies in every subset the closure structure points at.
Resonance makes the span of the pairs (generator in part p, element in S_p)
close under the expanded bracket.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from .errors import InvalidClosure, NotReducible, NotResonant
from .expansion import PairBasis, pair_names
from .multialgebra import (
    CheckResult,
    MultiAlgebra,
    StructureTensor,
    SubspaceSplit,
    reduced_multialgebra,
)
from .semigroup import Semigroup


def _label_sets(raw: Mapping[str, Iterable[int]]) -> dict[str, frozenset[int]]:
    return {str(k): frozenset(v) for k, v in raw.items()}


@dataclass(frozen=True)
class SubspaceDecomposition:
    """Disjoint labeled parts covering the generator index set."""

    parts: dict[str, frozenset[int]]

    def __post_init__(self):
        parts = _label_sets(self.parts)
        seen: set[int] = set()
        for label in sorted(parts):
            overlap = seen & parts[label]
            if overlap:
                raise ValueError(f"parts overlap on generators {sorted(overlap)}")
            seen |= parts[label]
        object.__setattr__(self, "parts", parts)

    def part_of(self, dim: int) -> dict[int, str]:
        """Generator index -> part label; raises if the parts miss anything."""
        out: dict[int, str] = {}
        for label, members in self.parts.items():
            for i in members:
                if not 0 <= i < dim:
                    raise IndexError(f"generator {i} out of range")
                out[i] = label
        if len(out) != dim:
            missing = sorted(set(range(dim)) - set(out))
            raise ValueError(f"decomposition misses generators {missing}")
        return out


@dataclass(frozen=True)
class ClosureStructure:
    """For each sorted part multiset, the set of parts its brackets can hit."""

    parts: tuple[str, ...]
    i_map: dict[tuple[str, ...], frozenset[str]]


@dataclass(frozen=True)
class SemigroupDecomposition:
    """One subset of semigroup elements per part; overlaps are fine."""

    subsets: dict[str, frozenset[int]]

    def __post_init__(self):
        object.__setattr__(self, "subsets", _label_sets(self.subsets))

    def covers(self, order: int) -> bool:
        union: set[int] = set()
        for members in self.subsets.values():
            union |= members
        return union == set(range(order))


@dataclass(frozen=True)
class ReductionPartition:
    """Per part, a split of its subset into a hat part and a check part."""

    hat: dict[str, frozenset[int]]
    check: dict[str, frozenset[int]]

    def __post_init__(self):
        hat = _label_sets(self.hat)
        check = _label_sets(self.check)
        if set(hat) != set(check):
            raise ValueError("hat and check must cover the same parts")
        for label in hat:
            if hat[label] & check[label]:
                raise ValueError(f"hat and check overlap in part {label!r}")
        object.__setattr__(self, "hat", hat)
        object.__setattr__(self, "check", check)

    @classmethod
    def from_hat(
        cls, sd: SemigroupDecomposition, hat: Mapping[str, Iterable[int]]
    ) -> "ReductionPartition":
        """Split each subset into the given hat and the complementary check."""
        hat = _label_sets(hat)
        out_hat = {}
        out_check = {}
        for label, members in sd.subsets.items():
            chosen = hat.get(label, frozenset())
            if not chosen <= members:
                raise ValueError(f"hat of part {label!r} is not inside its subset")
            out_hat[label] = chosen
            out_check[label] = members - chosen
        return cls(out_hat, out_check)


def closure_sets(a: MultiAlgebra, d: SubspaceDecomposition) -> ClosureStructure:
    """Minimal closure structure read off the nonzero entries."""
    part_of = d.part_of(a.dim)
    i_map: dict[tuple[str, ...], set[str]] = {}
    for lower, upper, _ in a.tensor.items():
        key = tuple(sorted(part_of[i] for i in lower))
        i_map.setdefault(key, set()).add(part_of[upper])
    return ClosureStructure(
        tuple(sorted(d.parts)),
        {key: frozenset(i_map[key]) for key in sorted(i_map)},
    )


def validate_closure(
    a: MultiAlgebra, d: SubspaceDecomposition, cs: ClosureStructure
) -> None:
    """Check a declared closure structure contains the minimal one."""
    minimal = closure_sets(a, d)
    if set(minimal.parts) - set(cs.parts):
        raise InvalidClosure("declared structure misses part labels")
    for key, targets in minimal.i_map.items():
        declared = cs.i_map.get(key, frozenset())
        if not targets <= declared:
            raise InvalidClosure(
                f"brackets of parts {key} reach {sorted(targets - declared)} "
                "outside the declared sets"
            )


def _fold_products(
    s: Semigroup, slot_sets: Sequence[Iterable[int]]
) -> dict[int, tuple[int, ...]]:
    """Set-valued product fold with one witness argument tuple per product."""
    products = {e: (e,) for e in sorted(slot_sets[0])}
    for nxt in slot_sets[1:]:
        step: dict[int, tuple[int, ...]] = {}
        for e in sorted(products):
            for y in sorted(nxt):
                p = s.product(e, y)
                if p not in step:
                    step[p] = products[e] + (y,)
        products = step
    return products


def check_resonance(
    s: Semigroup, sd: SemigroupDecomposition, cs: ClosureStructure
) -> CheckResult:
    """Is the subset decomposition in resonance with the closure structure?

    Witness records are (part key, argument elements, product, missing part).
    Coverage of the semigroup is not required here: the product condition is
    well-defined for any subsets, and failure examples are often stated on
    non-covering ones.  Use :meth:`SemigroupDecomposition.covers` when a true
    decomposition is needed.
    """
    missing = [p for p in cs.parts if p not in sd.subsets]
    if missing:
        raise ValueError(f"subset decomposition misses parts {missing}")
    witnesses = []
    for key, targets in sorted(cs.i_map.items()):
        slot_sets = [sd.subsets[p] for p in key]
        if any(not slot for slot in slot_sets):
            continue
        for prod, args in sorted(_fold_products(s, slot_sets).items()):
            for r in sorted(targets):
                if prod not in sd.subsets[r]:
                    witnesses.append((key, args, prod, r))
    return CheckResult(ok=not witnesses, witnesses=tuple(witnesses))


@dataclass(frozen=True)
class ResonantSubalgebra:
    """An expanded algebra restricted to resonant pairs.

    ``pairs`` lists the (generator, element) basis in flat-encoding order;
    ``algebra`` lives on the matching contiguous indices.
    """

    algebra: MultiAlgebra
    pairs: tuple[tuple[int, int], ...]
    pairing: PairBasis
    base: MultiAlgebra = field(compare=False)
    semigroup: Semigroup = field(compare=False)
    decomposition: SubspaceDecomposition = field(compare=False)
    subsets: SemigroupDecomposition = field(compare=False)

    @property
    def dim(self) -> int:
        return self.algebra.dim


def resonant_subalgebra(
    a: MultiAlgebra,
    s: Semigroup,
    d: SubspaceDecomposition,
    sd: SemigroupDecomposition,
    closure: ClosureStructure | None = None,
) -> ResonantSubalgebra:
    """Build the resonant subalgebra on the pairs (part p generator, S_p element).

    Raises NotResonant (with product witnesses) when the subsets are not in
    resonance.  The result closes on its own basis by construction once
    resonance holds.
    """
    if closure is None:
        cs = closure_sets(a, d)
    else:
        validate_closure(a, d, closure)
        cs = closure
    part_of = d.part_of(a.dim)
    verdict = check_resonance(s, sd, cs)
    if not verdict.ok:
        raise NotResonant(verdict.witnesses)
    for label, members in d.parts.items():
        if members and not sd.subsets.get(label):
            raise ValueError(f"part {label!r} has generators but an empty subset")
    pairs = tuple(
        (g, alpha)
        for g in range(a.dim)
        for alpha in sorted(sd.subsets[part_of[g]])
    )
    index = {pair: i for i, pair in enumerate(pairs)}
    items = []
    for lower, upper, value in a.tensor.items():
        slots = [sorted(sd.subsets[part_of[g]]) for g in lower]
        for alphas in itertools.product(*slots):
            gamma = s.fold(alphas)
            target = index.get((upper, gamma))
            if target is None:
                raise NotResonant(
                    ((tuple(part_of[g] for g in lower), alphas, gamma, part_of[upper]),)
                )
            flat_lower = tuple(index[pair] for pair in zip(lower, alphas))
            items.append((flat_lower, target, value))
    tensor = StructureTensor.from_entries(len(pairs), a.order, items)
    names = pair_names(a.basis, s.labels)
    pairing = PairBasis(a.dim, s.order)
    basis = tuple(names[pairing.encode(g, alpha)] for g, alpha in pairs)
    return ResonantSubalgebra(
        MultiAlgebra(basis, tensor), pairs, pairing, a, s, d, sd
    )


def check_reduction_partition(
    s: Semigroup, rp: ReductionPartition, cs: ClosureStructure
) -> CheckResult:
    """Do hat-by-checks products always land in every target's hat set?

    The hat element is placed in every slot in turn (the bracket is
    antisymmetric, so no slot is special).  Witness records are
    (part key, hat part, argument elements, product, missing part).
    """
    witnesses = []
    for key, targets in sorted(cs.i_map.items()):
        tried: set[str] = set()
        for pos, hat_part in enumerate(key):
            if hat_part in tried:
                continue
            tried.add(hat_part)
            slots: list[frozenset[int]] = [rp.hat[hat_part]]
            slots += [rp.check[key[j]] for j in range(len(key)) if j != pos]
            if any(not slot for slot in slots):
                continue
            for prod, args in sorted(_fold_products(s, slots).items()):
                for r in sorted(targets):
                    if prod not in rp.hat[r]:
                        witnesses.append((key, hat_part, args, prod, r))
    return CheckResult(ok=not witnesses, witnesses=tuple(witnesses))


def reduce_resonant(
    r: ResonantSubalgebra, rp: ReductionPartition
) -> ResonantSubalgebra:
    """Reduce a resonant subalgebra onto its check pairs.

    Hat pairs are deleted and entries targeting them dropped; the check-part
    constants survive unchanged.  This is exactly the block reduction of the
    resonant algebra on the hat/check split, which the partition conditions
    make legitimate.
    """
    missing = [p for p in r.subsets.subsets if p not in rp.hat]
    if missing:
        raise ValueError(f"partition misses parts {missing}")
    for label, members in r.subsets.subsets.items():
        if rp.hat[label] | rp.check[label] != members:
            raise ValueError(f"hat/check of part {label!r} do not cover its subset")
    cs = closure_sets(r.base, r.decomposition)
    verdict = check_reduction_partition(r.semigroup, rp, cs)
    if not verdict.ok:
        raise NotReducible(verdict.witnesses)
    part_of = r.decomposition.part_of(r.base.dim)
    keep = frozenset(
        i for i, (g, alpha) in enumerate(r.pairs) if alpha in rp.check[part_of[g]]
    )
    reduced = reduced_multialgebra(r.algebra, SubspaceSplit(keep, r.algebra.dim))
    pairs = tuple(pair for i, pair in enumerate(r.pairs) if i in keep)
    return ResonantSubalgebra(
        reduced,
        pairs,
        r.pairing,
        r.base,
        r.semigroup,
        r.decomposition,
        SemigroupDecomposition(dict(rp.check)),
    )


@dataclass(frozen=True)
class SearchResult:
    decompositions: tuple[SemigroupDecomposition, ...]
    complete: bool
    nodes: int


def search_resonant(
    s: Semigroup,
    cs: ClosureStructure,
    max_results: int | None = None,
    max_nodes: int | None = None,
) -> SearchResult:
    """Enumerate all resonant subset decompositions, depth first.

    Every element is assigned a nonempty set of parts (element order, then
    part-mask order, so output order is canonical).  Partial assignments are
    pruned as soon as a product among already-assigned elements violates a
    constraint; assignments leaving some part empty are discarded at the
    leaves.  Budgets flag the result incomplete instead of raising.
    """
    parts = cs.parts
    position = {p: i for i, p in enumerate(parts)}
    keys = sorted(cs.i_map.items())
    m = s.order
    assignment = [0] * m
    results: list[SemigroupDecomposition] = []
    nodes = 0
    stopped = False

    def members(label: str, upto: int) -> list[int]:
        bit = position[label]
        return [e for e in range(upto + 1) if assignment[e] >> bit & 1]

    def consistent(upto: int) -> bool:
        for key, targets in keys:
            slot_sets = [members(p, upto) for p in key]
            if any(not slot for slot in slot_sets):
                continue
            products = set(slot_sets[0])
            for nxt in slot_sets[1:]:
                products = {s.product(x, y) for x in products for y in nxt}
            for g in products:
                if g <= upto:
                    mask = assignment[g]
                    if any(not mask >> position[r] & 1 for r in targets):
                        return False
        return True

    def emit() -> None:
        full = 0
        for mask in assignment:
            full |= mask
        if full != (1 << len(parts)) - 1:
            return
        results.append(
            SemigroupDecomposition(
                {
                    p: frozenset(
                        e for e in range(m) if assignment[e] >> position[p] & 1
                    )
                    for p in parts
                }
            )
        )

    def dfs(e: int) -> None:
        nonlocal nodes, stopped
        if stopped:
            return
        if e == m:
            emit()
            if max_results is not None and len(results) >= max_results:
                stopped = True
            return
        for mask in range(1, 1 << len(parts)):
            if stopped:
                return
            nodes += 1
            if max_nodes is not None and nodes > max_nodes:
                stopped = True
                return
            assignment[e] = mask
            if consistent(e):
                dfs(e + 1)
        assignment[e] = 0

    if parts:
        dfs(0)
    return SearchResult(tuple(results), complete=not stopped, nodes=nodes)
