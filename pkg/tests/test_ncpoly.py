# Copyright (C) 2026 taylor.fish <contact@taylor.fish>
#
# This file is part of trimap.
#
# trimap is free software: you can redistribute it and/or modify
# it under the terms of the GNU General Public License as published by
# the Free Software Foundation, either version 3 of the License, or
# (at your option) any later version.
#
# trimap is distributed in the hope that it will be useful,
# but WITHOUT ANY WARRANTY; without even the implied warranty of
# MERCHANTABILITY or FITNESS FOR A PARTICULAR PURPOSE.  See the
# GNU General Public License for more details.
#
# You should have received a copy of the GNU General Public License
# along with trimap.  If not, see <http://www.gnu.org/licenses/>.

from trimap.errors import ParameterError
from trimap.field import FieldParams
from trimap.ncpoly import NCPoly
from trimap.parser import ParseError, parse_ncpoly
from trimap.writer import write_ncpoly
from trimap import linalg
import pytest

ELL = 5


def z(i):
    return NCPoly.word(ELL, [i])


def test_non_commutative():
    assert z(1) * z(2) != z(2) * z(1)
    assert (z(1) * z(2)).coefficient([1, 2]) == 1
    assert (z(1) * z(2)).coefficient([2, 1]) == 0


def test_arithmetic():
    f = z(1) * 3 + 2
    g = f - f
    assert g == NCPoly(ELL)
    assert g.degree == -1
    assert (f * f).coefficient([1, 1]) == 9 % ELL
    assert (f * f).coefficient([]) == 4
    assert (2 + z(1)) == (z(1) + 2)
    assert NCPoly(ELL, {(1,): 5}) == NCPoly(ELL)
    with pytest.raises(ParameterError):
        z(1) + NCPoly.word(7, [1])
    with pytest.raises(ParameterError):
        NCPoly.word(ELL, [0])


def test_shape():
    f = NCPoly.word(ELL, [1, 3], 2) + z(2) * 4 + 1
    assert f.has_encoding_shape(2)
    assert not f.has_encoding_shape(3)
    assert not (f + NCPoly.word(ELL, [2, 2])).has_encoding_shape(2)
    assert f.generators() == 3
    assert f.degree == 2
    assert (z(1) + 1).has_encoding_shape(1)


def test_evaluate_matrices():
    field = FieldParams.prime(ELL)
    m1 = [[field.element(v) for v in row] for row in [[1, 2], [0, 1]]]
    m2 = [[field.element(v) for v in row] for row in [[0, 1], [1, 0]]]
    f = NCPoly.word(ELL, [1, 2]) + 3
    expected = linalg.matmul(m1, m2)
    expected = [
        [x + field.element(3 * (r == s)) for s, x in enumerate(row)]
        for r, row in enumerate(expected)
    ]
    assert f.evaluate_matrices(field, [m1, m2]) == expected
    with pytest.raises(ParameterError):
        NCPoly.word(ELL, [3]).evaluate_matrices(field, [m1, m2])


def test_text_format():
    f = NCPoly.word(ELL, [1, 2], 3) + z(2) * 4 + 1
    assert f.to_text() == "1 :\n4 : 2\n3 : 1.2\n"
    assert write_ncpoly(f) == f.to_text()
    assert parse_ncpoly(f.to_text().encode(), ELL) == f


def test_parse_merges_and_reduces():
    f = parse_ncpoly(b"3 : 1\n4 : 1\n7 :\n", ELL)
    assert f == z(1) * 2 + 2


def test_parse_errors():
    with pytest.raises(ParseError):
        parse_ncpoly(b"3 1\n", ELL)
    with pytest.raises(ParseError):
        parse_ncpoly(b"3 : 0.1\n", ELL)
