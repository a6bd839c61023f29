"""Shared fixtures: small algebras, matrix bases, and their decompositions."""

from __future__ import annotations

import sys
from fractions import Fraction
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from sexpand.multialgebra import MultiAlgebra, StructureTensor
from sexpand.realization import MatrixRep
from sexpand.resonance import SemigroupDecomposition, SubspaceDecomposition
from sexpand.semigroup import gen_se


def algebra(dim, order, items, names=None):
    basis = tuple(names) if names else tuple(f"T{i}" for i in range(dim))
    return MultiAlgebra(basis, StructureTensor.from_entries(dim, order, items))


@pytest.fixture
def so3():
    """Rotation algebra: [T0,T1]=T2 and cyclic."""
    return algebra(
        3, 2, [((0, 1), 2, 1), ((1, 2), 0, 1), ((0, 2), 1, -1)], ("Jx", "Jy", "Jz")
    )


def _eps_block(offset_a, offset_b, offset_target):
    """Entries for [X_a, Y_b] = eps_{abc} Z_c over 3-element blocks."""
    items = []
    for a, b, c, sign in [
        (0, 1, 2, 1),
        (1, 2, 0, 1),
        (0, 2, 1, -1),
    ]:
        items.append(((offset_a + a, offset_b + b), offset_target + c, sign))
        if offset_a != offset_b:
            items.append(((offset_a + b, offset_b + a), offset_target + c, -sign))
    return items


@pytest.fixture
def so4():
    """Compact symmetric pair: J block rotates, [J,K] stays odd, [K,K] lands even.

    Generators 0-2 are the even block, 3-5 the odd block.
    """
    items = _eps_block(0, 0, 0) + _eps_block(0, 3, 3) + _eps_block(3, 3, 0)
    return algebra(6, 2, items, ("J0", "J1", "J2", "K0", "K1", "K2"))


@pytest.fixture
def iso3():
    """Rotations plus commuting translations: [J,J]=J, [J,P]=P, [P,P]=0."""
    items = _eps_block(0, 0, 0) + _eps_block(0, 3, 3)
    return algebra(6, 2, items, ("J0", "J1", "J2", "P0", "P1", "P2"))


@pytest.fixture
def so4_decomposition():
    return SubspaceDecomposition({"0": {0, 1, 2}, "1": {3, 4, 5}})


@pytest.fixture
def so4_resonant_subsets():
    """Resonant against gen_se(2): S_0 = {0,2,3}, S_1 = {1,3}."""
    return SemigroupDecomposition({"0": {0, 2, 3}, "1": {1, 3}})


@pytest.fixture
def se2():
    return gen_se(2)


def unit_matrix_basis(n):
    """The n*n matrix units E_ij, row-major, as an n^2-generator rep."""
    mats = []
    for i in range(n):
        for j in range(n):
            mats.append(
                tuple(
                    tuple(
                        Fraction(1 if (r, c) == (i, j) else 0) for c in range(n)
                    )
                    for r in range(n)
                )
            )
    return MatrixRep(tuple(mats))


@pytest.fixture
def gl2_rep():
    return unit_matrix_basis(2)


@pytest.fixture
def gl3_rep():
    return unit_matrix_basis(3)


@pytest.fixture
def so3_adjoint_rep():
    """The rotation generators as real 3x3 matrices: [L0,L1]=L2 and cyclic."""
    return MatrixRep(
        (
            ((0, 0, 0), (0, 0, -1), (0, 1, 0)),
            ((0, 0, 1), (0, 0, 0), (-1, 0, 0)),
            ((0, -1, 0), (1, 0, 0), (0, 0, 0)),
        )
    )
