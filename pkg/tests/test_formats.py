import json
from fractions import Fraction

import pytest

from sexpand import formats
from sexpand.errors import FormatError, InvalidSemigroup
from sexpand.expansion import s_expand
from sexpand.semigroup import gen_se

from conftest import unit_matrix_basis


def test_fraction_strings():
    assert formats.fraction_to_str(Fraction(3, 4)) == "3/4"
    assert formats.fraction_to_str(Fraction(-5)) == "-5"
    assert formats.fraction_from_str("3/4") == Fraction(3, 4)
    assert formats.fraction_from_str("-7") == Fraction(-7)


@pytest.mark.parametrize("bad", ["0.5", "1/0", "1/-2", "a", "", "1/+2", "1e3"])
def test_fraction_rejects_nonexact(bad):
    with pytest.raises(FormatError):
        formats.fraction_from_str(bad)


def test_semigroup_round_trip():
    s = gen_se(2)
    assert formats.semigroup_from_dict(formats.semigroup_to_dict(s)) == s


def test_semigroup_validation_on_load():
    with pytest.raises(InvalidSemigroup):
        formats.semigroup_from_dict({"labels": ["a", "b"], "table": [[0, 1], [0, 0]]})


def test_semigroup_schema_errors():
    with pytest.raises(FormatError):
        formats.semigroup_from_dict({"labels": ["a"], "table": [[0, 0]]})
    with pytest.raises(FormatError):
        formats.semigroup_from_dict({"labels": ["a"]})


def test_algebra_round_trip(so3):
    data = formats.algebra_to_dict(so3)
    assert formats.algebra_from_dict(data) == so3


def test_algebra_noncanonical_lower_absorbed():
    data = {
        "basis": ["a", "b", "c"],
        "order": 2,
        "entries": [{"lower": [1, 0], "upper": 2, "value": "1"}],
    }
    a = formats.algebra_from_dict(data)
    assert a.tensor.get((0, 1), 2) == -1


def test_algebra_conflicting_duplicates_error():
    data = {
        "basis": ["a", "b", "c"],
        "order": 2,
        "entries": [
            {"lower": [0, 1], "upper": 2, "value": "1"},
            {"lower": [1, 0], "upper": 2, "value": "1"},
        ],
    }
    with pytest.raises(FormatError, match="conflicting"):
        formats.algebra_from_dict(data)


def test_expanded_round_trip(so3):
    e = s_expand(so3, gen_se(1))
    data = formats.expanded_to_dict(e)
    loaded = formats.expanded_from_dict(data)
    assert loaded.algebra == e.algebra
    assert loaded.pairing == e.pairing
    assert loaded.semigroup is None


def test_expanded_pairing_must_match():
    data = {
        "basis": ["a", "b"],
        "order": 2,
        "entries": [],
        "pairing": {"base_dim": 3, "semigroup_order": 4},
    }
    with pytest.raises(FormatError):
        formats.expanded_from_dict(data)


def test_rep_round_trip():
    rep = unit_matrix_basis(2)
    assert formats.rep_from_dict(formats.rep_to_dict(rep)) == rep


def test_rep_shape_errors():
    with pytest.raises(FormatError):
        formats.rep_from_dict({"size": 2, "generators": [[["1", "0"]]]})


def test_decomposition_round_trip():
    from sexpand.resonance import SemigroupDecomposition, SubspaceDecomposition

    d = SubspaceDecomposition({"0": {0, 1, 2}, "1": {3, 4, 5}})
    sd = SemigroupDecomposition({"0": {0, 2, 3}, "1": {1, 3}})
    hat = {"0": frozenset({3}), "1": frozenset({3})}
    data = formats.decomposition_to_dict(d, sd, hat)
    d2, sd2, hat2 = formats.decomposition_from_dict(data)
    assert d2 == d and sd2 == sd and hat2 == hat
    d3, sd3, hat3 = formats.decomposition_from_dict({"subspaces": {"0": [0]}})
    assert sd3 is None and hat3 is None


def test_dumps_canonical_is_stable(so3):
    a = formats.dumps_canonical(formats.algebra_to_dict(so3))
    b = formats.dumps_canonical(formats.algebra_to_dict(so3))
    assert a == b
    assert a.endswith("\n")
    json.loads(a)


def test_load_json_missing_file(tmp_path):
    with pytest.raises(FormatError, match="cannot read"):
        formats.load_json(tmp_path / "nope.json")


def test_load_json_bad_syntax(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text("{not json", encoding="utf-8")
    with pytest.raises(FormatError, match="invalid JSON"):
        formats.load_json(path)
