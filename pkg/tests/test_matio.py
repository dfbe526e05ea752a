import json

import numpy as np
import pytest

from schatten_geom.errors import ShapeError
from schatten_geom.matio import (
    MatrixFormatError, matrix_from_dict, matrix_to_dict, parse_complex, parse_text,
    read_matrix, same_shape, write_matrix,
)


def test_dict_layout():
    d = matrix_to_dict(np.array([[1, 2j], [3, 4 - 1j]]))
    assert d == {"rows": 2, "cols": 2, "data": [[1.0, 0.0], [0.0, 2.0], [3.0, 0.0], [4.0, -1.0]]}


def test_roundtrip(tmp_path, rng):
    A = rng.standard_normal((3, 4)) + 1j * rng.standard_normal((3, 4))
    write_matrix(tmp_path / "a.json", A)
    np.testing.assert_array_equal(read_matrix(tmp_path / "a.json"), A)
    np.testing.assert_array_equal(matrix_from_dict(json.loads(json.dumps(matrix_to_dict(A)))), A)


@pytest.mark.parametrize("token,value", [
    ("1", 1), ("-2.5", -2.5), ("i", 1j), ("-i", -1j), ("2i", 2j), ("-2.5i", -2.5j),
    ("3-4e-2i", 3 - 0.04j), ("1+i", 1 + 1j), (" 1e3 ", 1000), ("+.5-.5i", 0.5 - 0.5j),
])
def test_parse_complex(token, value):
    assert parse_complex(token) == value


@pytest.mark.parametrize("token", ["", "abc", "1+", "i2", "1+2j", "--1"])
def test_parse_complex_rejects(token):
    with pytest.raises(MatrixFormatError):
        parse_complex(token)


def test_text_format(tmp_path):
    path = tmp_path / "m.txt"
    path.write_text("# comment\n1, 2i\n\n-1+i, 0\n")
    np.testing.assert_array_equal(read_matrix(path), [[1, 2j], [-1 + 1j, 0]])
    with pytest.raises(MatrixFormatError):
        parse_text("1,2\n3\n")
    with pytest.raises(MatrixFormatError):
        parse_text("\n# nothing\n")


@pytest.mark.parametrize("obj", [
    {"rows": 1, "cols": 2, "data": [[1, 0]]},
    {"rows": 1, "cols": 1, "data": [1]},
    {"rows": 1, "cols": 1, "data": [[1, "x"]]},
    {"rows": 0, "cols": 1, "data": []},
    {"cols": 1, "data": [[1, 0]]},
    {"rows": 1, "cols": 1, "data": [[float("nan"), 0]]},
])
def test_bad_dicts(obj):
    with pytest.raises(MatrixFormatError):
        matrix_from_dict(obj)


def test_malformed_json(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text('{"rows": 2, ')
    with pytest.raises(MatrixFormatError):
        read_matrix(path)


def test_same_shape():
    same_shape(np.eye(2), np.zeros((2, 2)))
    with pytest.raises(ShapeError):
        same_shape(np.eye(2), np.eye(3))
