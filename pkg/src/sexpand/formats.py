"""JSON file formats and deterministic serialization.

Rationals travel as "p/q" strings ("p" when q is 1) because JSON numbers
cannot carry exactness.  Emission is canonical: entries sorted by lower
tuple then upper index, keys sorted, two-space indent, trailing newline, so
identical inputs always produce byte-identical files.
"""

from __future__ import annotations

import json
import re
from fractions import Fraction
from pathlib import Path
from typing import Any

from .errors import FormatError
from .expansion import ExpandedAlgebra, PairBasis
from .multialgebra import MultiAlgebra, StructureTensor
from .resonance import SemigroupDecomposition, SubspaceDecomposition
from .realization import MatrixRep
from .semigroup import Semigroup, validate

_FRACTION_RE = re.compile(r"^-?\d+(/[1-9][0-9]*)?$")


def fraction_from_str(text: str) -> Fraction:
    if not isinstance(text, str) or not _FRACTION_RE.match(text):
        raise FormatError(f"not a p/q rational: {text!r}")
    return Fraction(text)


def fraction_to_str(value: Fraction) -> str:
    return str(value)


def dumps_canonical(obj: Any) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def load_json(path: str | Path) -> Any:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise FormatError(f"cannot read {path}: {exc}") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"{path}: invalid JSON at line {exc.lineno}") from exc


def _expect(data: Any, key: str, kind: type, where: str) -> Any:
    if not isinstance(data, dict) or key not in data:
        raise FormatError(f"{where}: missing field {key!r}")
    value = data[key]
    if not isinstance(value, kind):
        raise FormatError(f"{where}: field {key!r} must be {kind.__name__}")
    return value


def semigroup_to_dict(s: Semigroup) -> dict:
    return {"labels": list(s.labels), "table": [list(row) for row in s.table]}


def semigroup_from_dict(data: Any) -> Semigroup:
    """Parse and validate; semigroup axiom violations raise InvalidSemigroup."""
    labels = _expect(data, "labels", list, "semigroup")
    table = _expect(data, "table", list, "semigroup")
    if not all(isinstance(x, str) for x in labels):
        raise FormatError("semigroup: labels must be strings")
    if not all(
        isinstance(row, list) and all(isinstance(x, int) for x in row)
        for row in table
    ):
        raise FormatError("semigroup: table must be a matrix of ints")
    if len(table) != len(labels) or any(len(row) != len(labels) for row in table):
        raise FormatError("semigroup: table must be square, one row per label")
    return validate(labels, table)


def algebra_to_dict(a: MultiAlgebra) -> dict:
    return {
        "basis": list(a.basis),
        "order": a.order,
        "entries": [
            {"lower": list(lower), "upper": upper, "value": fraction_to_str(value)}
            for lower, upper, value in a.tensor.items()
        ],
    }


def algebra_from_dict(data: Any) -> MultiAlgebra:
    basis = _expect(data, "basis", list, "algebra")
    order = _expect(data, "order", int, "algebra")
    raw_entries = _expect(data, "entries", list, "algebra")
    if not all(isinstance(x, str) for x in basis):
        raise FormatError("algebra: basis must be a list of strings")
    items = []
    for i, entry in enumerate(raw_entries):
        where = f"algebra entry {i}"
        lower = _expect(entry, "lower", list, where)
        upper = _expect(entry, "upper", int, where)
        value = fraction_from_str(_expect(entry, "value", str, where))
        if not all(isinstance(x, int) for x in lower):
            raise FormatError(f"{where}: lower must be a list of ints")
        items.append((tuple(lower), upper, value))
    try:
        tensor = StructureTensor.from_entries(len(basis), order, items)
        return MultiAlgebra(tuple(basis), tensor)
    except (ValueError, IndexError) as exc:
        raise FormatError(f"algebra: {exc}") from exc


def expanded_to_dict(e: ExpandedAlgebra) -> dict:
    out = algebra_to_dict(e.algebra)
    out["pairing"] = {
        "base_dim": e.pairing.base_dim,
        "semigroup_order": e.pairing.semigroup_order,
    }
    return out


def expanded_from_dict(data: Any) -> ExpandedAlgebra:
    algebra = algebra_from_dict(data)
    pairing_raw = _expect(data, "pairing", dict, "expanded algebra")
    pairing = PairBasis(
        _expect(pairing_raw, "base_dim", int, "pairing"),
        _expect(pairing_raw, "semigroup_order", int, "pairing"),
    )
    try:
        return ExpandedAlgebra(algebra, pairing, None)
    except ValueError as exc:
        raise FormatError(f"expanded algebra: {exc}") from exc


def rep_to_dict(rep: MatrixRep) -> dict:
    return {
        "size": rep.size,
        "generators": [
            [[fraction_to_str(x) for x in row] for row in g] for g in rep.generators
        ],
    }


def rep_from_dict(data: Any) -> MatrixRep:
    size = _expect(data, "size", int, "matrix rep")
    generators = _expect(data, "generators", list, "matrix rep")
    mats = []
    for i, g in enumerate(generators):
        where = f"generator {i}"
        if not isinstance(g, list) or len(g) != size:
            raise FormatError(f"matrix rep: {where} must have {size} rows")
        rows = []
        for row in g:
            if not isinstance(row, list) or len(row) != size:
                raise FormatError(f"matrix rep: {where} must be {size}x{size}")
            rows.append(tuple(fraction_from_str(x) for x in row))
        mats.append(tuple(rows))
    try:
        return MatrixRep(tuple(mats))
    except ValueError as exc:
        raise FormatError(f"matrix rep: {exc}") from exc


def _index_sets(data: Any, key: str, where: str) -> dict[str, list[int]]:
    raw = _expect(data, key, dict, where)
    out = {}
    for label, members in raw.items():
        if not isinstance(members, list) or not all(
            isinstance(x, int) for x in members
        ):
            raise FormatError(f"{where}: {key}[{label!r}] must be a list of ints")
        out[str(label)] = members
    return out


def decomposition_to_dict(
    d: SubspaceDecomposition,
    sd: SemigroupDecomposition | None = None,
    hat: dict[str, frozenset[int]] | None = None,
) -> dict:
    out: dict[str, Any] = {
        "subspaces": {label: sorted(v) for label, v in d.parts.items()}
    }
    if sd is not None:
        out["subsets"] = {label: sorted(v) for label, v in sd.subsets.items()}
    if hat is not None:
        out["hat"] = {label: sorted(v) for label, v in hat.items()}
    return out


def decomposition_from_dict(
    data: Any,
) -> tuple[
    SubspaceDecomposition,
    SemigroupDecomposition | None,
    dict[str, frozenset[int]] | None,
]:
    """Parse a decomposition file: subspaces, optional subsets, optional hat."""
    try:
        subspaces = SubspaceDecomposition(
            {k: frozenset(v) for k, v in _index_sets(data, "subspaces", "decomposition").items()}
        )
    except ValueError as exc:
        raise FormatError(f"decomposition: {exc}") from exc
    subsets = None
    if isinstance(data, dict) and "subsets" in data:
        subsets = SemigroupDecomposition(
            {k: frozenset(v) for k, v in _index_sets(data, "subsets", "decomposition").items()}
        )
    hat = None
    if isinstance(data, dict) and "hat" in data:
        hat = {
            k: frozenset(v)
            for k, v in _index_sets(data, "hat", "decomposition").items()
        }
    return subspaces, subsets, hat
