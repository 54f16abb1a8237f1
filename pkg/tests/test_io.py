from __future__ import annotations

from fractions import Fraction

import pytest

from period_atlas.certify.polys import R_D13
from period_atlas.exactalg import MPoly, PolyFormatError, from_json, from_text, read_poly, to_json, to_text, write_poly
from period_atlas.exactalg.polynomial import D, u, w


def test_text_format_is_sorted_lex():
    p = Fraction(-1, 3) * u * w + 2 * D ** 2 + 5
    assert to_text(p) == "5/1 0 0 0\n2/1 0 0 2\n-1/3 1 1 0\n"
    assert from_text(to_text(p)) == p


def test_zero_is_empty_file():
    assert to_text(MPoly.const(0)) == ""
    assert from_text("").is_zero()


def test_json_roundtrip():
    p = R_D13 * (1 + D * w)
    assert from_json(to_json(p)) == p


def test_parse_errors_carry_line_numbers():
    with pytest.raises(PolyFormatError) as info:
        from_text("1/1 0 0 0\n1/0 1 0 0\n")
    assert info.value.line == 2
    with pytest.raises(PolyFormatError) as info:
        from_text("1 0 0\n")
    assert info.value.line == 1
    with pytest.raises(PolyFormatError):
        from_text("1/2 0 0 0\n3/1 0 0 0\n")


def test_file_roundtrip(tmp_path):
    path = tmp_path / "r.txt"
    write_poly(path, R_D13)
    assert path.read_bytes().endswith(b"\n") and b"\r" not in path.read_bytes()
    assert read_poly(path) == R_D13
    jpath = tmp_path / "r.json"
    write_poly(jpath, R_D13, fmt="json")
    assert read_poly(jpath) == R_D13
