from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from permfrac import refdata
from permfrac.poly import parse_poly
from permfrac.seqio import BFileError, format_bfile, parse_bfile, read_bfile, write_bfile


def test_parse_values_and_comments():
    text = "# header\n0 1\n1 -2  # trailing\n\n2 3/4\n3 x^2 + 1\n"
    assert parse_bfile(text) == [1, -2, Fraction(3, 4), parse_poly("x^2 + 1")]


@pytest.mark.parametrize("text", ["1 5\n", "0 1\n2 3\n", "0\n", "a 1\n", "0 1 +\n"])
def test_parse_errors(text):
    with pytest.raises(BFileError):
        parse_bfile(text)


@given(st.lists(st.integers(-10 ** 12, 10 ** 12), max_size=30))
def test_roundtrip_integers(values):
    assert parse_bfile(format_bfile(values)) == values


def test_file_roundtrip(tmp_path):
    path = tmp_path / "seq.txt"
    values = [1, Fraction(1, 2), parse_poly("x + y")]
    write_bfile(path, values)
    assert read_bfile(path) == values


def test_bundled_data_regenerates_byte_for_byte(tmp_path):
    written = refdata.regenerate(tmp_path)
    assert {p.name for p in written} == set(refdata.REFERENCES)
    for path in written:
        bundled = refdata.DATA_DIR / path.name
        assert path.read_bytes() == bundled.read_bytes(), path.name


def test_reference_prefixes():
    data = refdata.DATA_DIR
    assert read_bfile(data / "A000166.txt")[:7] == [1, 0, 1, 2, 9, 44, 265]
    assert read_bfile(data / "A000110.txt")[:6] == [1, 1, 2, 5, 15, 52]
    assert read_bfile(data / "A000364_even.txt")[:5] == [1, 1, 5, 61, 1385]
    assert read_bfile(data / "A001003.txt")[:6] == [1, 1, 3, 11, 45, 197]
    assert read_bfile(data / "A001147_even.txt")[:5] == [1, 1, 3, 15, 105]
    assert read_bfile(data / "A052186.txt")[:6] == [1, 0, 1, 3, 14, 77]
