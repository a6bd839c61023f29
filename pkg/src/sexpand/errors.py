"""Exception types shared across the package.

Errors that are verdicts about well-formed mathematical input (a table that
is not associative, a bracket that leaves a subspace, ...) carry explicit
witnesses so callers can report exactly what failed.
"""

from __future__ import annotations


class SexpandError(Exception):
    """Base class for all package errors."""


class InvalidPermutation(SexpandError):
    """Sequence is not a bijection on 0..m-1."""


class ShapeError(SexpandError):
    """Index tuples or matrices have incompatible lengths/sizes."""


class AntisymmetryError(SexpandError):
    """A value map claimed antisymmetric is not."""


class ArityError(SexpandError):
    """Argument tuple length does not match the bracket arity."""


class OddOrderUnsupported(SexpandError):
    """Multialgebras must have even bracket arity (or arity 2)."""


class InvalidSemigroup(SexpandError):
    """Multiplication table violates the semigroup axioms.

    ``violations`` lists every failure as ``(kind, witness)`` where kind is
    one of ``"closure"``, ``"commutativity"``, ``"associativity"``.
    """

    def __init__(self, violations):
        self.violations = tuple(violations)
        kinds = sorted({kind for kind, _ in self.violations})
        super().__init__(
            f"{len(self.violations)} violation(s): {', '.join(kinds)}"
        )


class NoZeroElement(SexpandError):
    """Semigroup has no absorbing element."""


class NotReducible(SexpandError):
    """The split violates the reduction condition; witnesses attached."""

    def __init__(self, witnesses):
        self.witnesses = tuple(witnesses)
        super().__init__(f"{len(self.witnesses)} offending entr(y/ies)")


class NotResonant(SexpandError):
    """Subset decomposition is not in resonance; witnesses attached."""

    def __init__(self, witnesses):
        self.witnesses = tuple(witnesses)
        super().__init__(f"{len(self.witnesses)} offending product(s)")


class InvalidClosure(SexpandError):
    """Declared closure structure misses parts actually hit by brackets."""


class RankError(SexpandError):
    """Generators are linearly dependent."""


class ClosureError(SexpandError):
    """A multibracket falls outside the generator span.

    ``witness`` is the offending index tuple.
    """

    def __init__(self, witness):
        self.witness = tuple(witness)
        super().__init__(f"bracket of {self.witness} is outside the span")


class FormatError(SexpandError):
    """A file does not conform to its schema."""
