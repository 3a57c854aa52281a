import json

import numpy as np
import pytest

from conftest import EXAM_CSV
from pcdecomp import MatrixDocument, parse, serialize
from pcdecomp.errors import DimensionError, ParseError

EXAM_JSON = json.dumps(
    {
        "labels": ["A", "B", "C"],
        "matrix": [[1, 2, 5], [0.5, 1, 3], [0.2, 0.3333333333, 1]],
    }
)


class TestParseCsv:
    def test_exam_csv(self):
        doc = parse(EXAM_CSV, "csv")
        assert doc.n == 3
        assert doc.labels is None
        assert doc.matrix[0, 2] == 5.0
        assert doc.matrix[2, 1] == 0.3333333333

    def test_blank_lines_ignored(self):
        doc = parse("1,2\n\n0.5,1\n\n", "csv")
        assert doc.n == 2

    def test_ragged_row_names_the_row(self):
        with pytest.raises(ParseError, match="line 2"):
            parse("1,2,5\n0.5,1\n0.2,0.3333333333,1", "csv")

    def test_bad_number_names_the_cell(self):
        with pytest.raises(ParseError, match="line 1, column 2"):
            parse("1,two\n0.5,1", "csv")

    def test_non_square(self):
        with pytest.raises(DimensionError):
            parse("1,2\n0.5,1\n3,4", "csv")

    def test_empty(self):
        with pytest.raises(ParseError):
            parse("   \n  ", "csv")


class TestParseJson:
    def test_labeled_document(self):
        doc = parse(EXAM_JSON, "json")
        assert doc.labels == ["A", "B", "C"]
        assert doc.matrix[1, 2] == 3.0

    def test_metadata_round_trip(self):
        text = json.dumps({"matrix": [[1, 2], [0.5, 1]], "metadata": {"source": "poll"}})
        doc = parse(text, "json")
        assert doc.metadata == {"source": "poll"}
        assert parse(serialize(doc, "json"), "json").metadata == {"source": "poll"}

    def test_invalid_json_reports_position(self):
        with pytest.raises(ParseError, match="line"):
            parse("{\"matrix\": [[1,2],\n [0.5,]]}", "json")

    def test_missing_matrix_field(self):
        with pytest.raises(ParseError):
            parse("{\"labels\": [\"A\"]}", "json")

    def test_non_numeric_cell(self):
        with pytest.raises(ParseError):
            parse('{"matrix": [[1, "x"], [0.5, 1]]}', "json")

    def test_ragged_matrix(self):
        with pytest.raises(ParseError):
            parse('{"matrix": [[1, 2], [0.5]]}', "json")

    def test_non_square(self):
        with pytest.raises(DimensionError):
            parse('{"matrix": [[1, 2]]}', "json")

    def test_label_length_mismatch(self):
        with pytest.raises(DimensionError):
            parse('{"labels": ["A"], "matrix": [[1, 2], [0.5, 1]]}', "json")

    def test_duplicate_labels(self):
        with pytest.raises(DimensionError):
            parse('{"labels": ["A", "A"], "matrix": [[1, 2], [0.5, 1]]}', "json")

    def test_bad_metadata(self):
        with pytest.raises(ParseError):
            parse('{"matrix": [[1, 2], [0.5, 1]], "metadata": {"a": 3}}', "json")


class TestSerialize:
    def test_identity_csv(self):
        doc = MatrixDocument(matrix=np.ones((2, 2)))
        assert serialize(doc, "csv") == "1.0,1.0\n1.0,1.0\n"

    def test_csv_round_trip_bit_exact(self):
        rng = np.random.default_rng(61)
        values = np.exp(rng.uniform(-2.0, 2.0, size=(4, 4)))
        doc = MatrixDocument(matrix=values)
        parsed = parse(serialize(doc, "csv"), "csv")
        assert np.array_equal(parsed.matrix, values)

    def test_json_round_trip_bit_exact(self):
        rng = np.random.default_rng(62)
        values = np.exp(rng.uniform(-2.0, 2.0, size=(3, 3)))
        doc = MatrixDocument(matrix=values, labels=["a", "b", "c"], metadata={"k": "v"})
        parsed = parse(serialize(doc, "json"), "json")
        assert np.array_equal(parsed.matrix, values)
        assert parsed.labels == ["a", "b", "c"]
        assert parsed.metadata == {"k": "v"}

    def test_exam_document_round_trip(self):
        doc = parse(EXAM_CSV, "csv")
        assert serialize(parse(serialize(doc, "csv"), "csv"), "csv") == serialize(doc, "csv")

    def test_unknown_format(self):
        doc = MatrixDocument(matrix=np.ones((2, 2)))
        with pytest.raises(ValueError):
            serialize(doc, "yaml")
        with pytest.raises(ValueError):
            parse("x", "yaml")
