import numpy as np
import pytest

from tgiw import Dataset, embedded_dataset, parse_dataset, read_dataset_file


class TestDataset:
    def test_sorts_ascending(self):
        d = Dataset(values=np.array([3.0, 1.0, 2.0]), label="x")
        np.testing.assert_array_equal(d.values, [1.0, 2.0, 3.0])
        assert d.n == 3 and len(d) == 3

    @pytest.mark.parametrize("bad", [[], [0.0], [-1.0], [1.0, float("nan")], [float("inf")]])
    def test_rejects_invalid_values(self, bad):
        with pytest.raises(ValueError):
            Dataset(values=np.array(bad, dtype=float))

    def test_ties_preserved(self):
        d = Dataset(values=np.array([0.111, 0.5, 0.111]))
        assert np.sum(d.values == 0.111) == 2


class TestParseDataset:
    def test_plain_values(self):
        d = parse_dataset("0.013\n0.065\n0.111\n")
        np.testing.assert_allclose(d.values, [0.013, 0.065, 0.111])

    def test_unsorted_input_sorted(self):
        d = parse_dataset("3\n1\n2\n")
        np.testing.assert_array_equal(d.values, [1.0, 2.0, 3.0])

    def test_nonpositive_named_line(self):
        with pytest.raises(ValueError, match="line 1"):
            parse_dataset("-1.0\n")

    def test_nonnumeric_mid_file_named_line(self):
        with pytest.raises(ValueError, match="line 3"):
            parse_dataset("1.0\n2.0\noops\n")

    def test_nonfinite_rejected(self):
        with pytest.raises(ValueError, match="finite"):
            parse_dataset("inf\n")

    def test_header_skipped_without_column(self):
        d = parse_dataset("weeks\n1.5\n2.5\n")
        assert d.n == 2

    def test_comment_lines_skipped(self):
        d = parse_dataset("# generated draws\n# n=2 seed=1\n1.5\n2.5\n")
        assert d.n == 2

    def test_comment_before_header_with_column(self):
        d = parse_dataset("# provenance\nid,weeks\n1,0.5\n", column="weeks")
        assert d.n == 1

    def test_named_column(self):
        text = "id,weeks\n1,0.5\n2,1.5\n"
        d = parse_dataset(text, column="weeks")
        np.testing.assert_allclose(d.values, [0.5, 1.5])

    def test_missing_column(self):
        with pytest.raises(ValueError, match="no column named"):
            parse_dataset("a,b\n1,2\n", column="weeks")

    def test_column_error_line_number(self):
        with pytest.raises(ValueError, match="line 3"):
            parse_dataset("weeks\n1.0\n-2.0\n", column="weeks")

    def test_empty_input(self):
        with pytest.raises(ValueError, match="no data"):
            parse_dataset("\n\n")

    def test_multifield_without_column_rejected(self):
        with pytest.raises(ValueError, match="one value per line"):
            parse_dataset("1,2\n3,4\n")

    def test_read_file(self, tmp_path):
        f = tmp_path / "d.csv"
        f.write_text("2.0\n1.0\n")
        d = read_dataset_file(f)
        np.testing.assert_array_equal(d.values, [1.0, 2.0])
        assert d.label == "d.csv"


class TestEmbeddedDataset:
    def test_integrity(self):
        d = embedded_dataset()
        assert d.n == 50
        assert d.values[0] == 0.013
        assert d.values[-1] == 48.105
        assert float(np.sum(d.values)) == pytest.approx(391.051, abs=1e-9)
        assert d.label == "paper"

    def test_unknown_tag(self):
        with pytest.raises(ValueError):
            embedded_dataset("other")
