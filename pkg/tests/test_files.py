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

from trimap.blinding import keygen
from trimap.errors import TrimapFileNotFoundError, TrimapFileWriteError
from trimap.local import rational_function
from trimap.parser import (
    ParseError, parse_function_file, parse_hidden, parse_ncpoly,
    parse_public,
)
from trimap.poly import MultiPoly, RationalFn
from trimap.publisher import publish_sum
from trimap.trimap import _write_output, load_public, load_secret
from trimap.writer import (
    write_eval_result, write_function_file, write_hidden, write_public,
    write_secret,
)
import pytest
import random


def test_public_round_trip(tmp_path, public):
    text = write_public(public)
    path = tmp_path / "instance.pub"
    path.write_text(text)
    loaded = load_public(str(path))
    assert write_public(loaded) == text
    assert loaded.zeta == public.zeta
    assert loaded.beta_hat == public.beta_hat
    assert loaded.kernel == public.kernel


def test_loaded_public_evaluates(tmp_path, public):
    path = tmp_path / "instance.pub"
    path.write_text(write_public(public))
    loaded = load_public(str(path))
    assert loaded.pair(loaded.alpha_hat, loaded.beta_hat) == public.zeta


def test_secret_round_trip(tmp_path, secret):
    text = write_secret(secret)
    path = tmp_path / "instance.sec"
    path.write_text(text)
    loaded = load_secret(str(path))
    assert write_secret(loaded) == text
    assert loaded.generators == secret.generators
    assert loaded.beta == secret.beta


def test_hidden_round_trip(ext_field):
    u1, w1, u2, w2 = MultiPoly.variables(ext_field, 4)
    fn = RationalFn(u1 * w2 + 3, u2 + ext_field.element([1, 2]))
    text = write_hidden("product", [([(0, 0), (1, 1)], fn)])
    mode, pieces = parse_hidden(text.encode(), ext_field)
    assert mode == "product"
    (reads, parsed), = pieces
    assert reads == [(0, 0), (1, 1)]
    assert parsed.num == fn.num and parsed.den == fn.den


def test_function_file_round_trip(ext_field):
    key = keygen(1, ext_field, False, random.Random(50))
    u, w = MultiPoly.variables(ext_field, 2)
    piece = rational_function([(0, 0)], RationalFn(u * w, u + 1))
    for form in ("terms", "program"):
        pf = publish_sum([piece], key, random.Random(51), form=form)
        text = write_function_file(pf, ext_field)
        params, parsed = parse_function_file(text.encode())
        assert params == ext_field
        assert parsed.form == form
        assert write_function_file(parsed, params) == text


def test_parse_error_location():
    with pytest.raises(ParseError) as info:
        parse_ncpoly(b"1 : 1\n2 : x\n", 5)
    assert (info.value.line, info.value.col) == (2, 5)
    assert info.value.message.startswith(
        "Parser error:\nAt line 2, column 5:\n",
    )


def test_bad_header():
    with pytest.raises(ParseError) as info:
        parse_public(b"# comment\ntrimap-public 2\n")
    assert info.value.line == 2


def test_truncated_public(public):
    text = write_public(public).encode()
    cut = text.rindex(b"\n", 0, len(text) // 2) + 1
    with pytest.raises(ParseError):
        parse_public(text[:cut])


def test_missing_file(tmp_path):
    with pytest.raises(TrimapFileNotFoundError):
        load_public(str(tmp_path / "missing.pub"))
    with pytest.raises(TrimapFileWriteError):
        _write_output(str(tmp_path / "no" / "such" / "dir"), "x")


def test_eval_result(prime_field):
    text = write_eval_result(prime_field.element(7), 3)
    assert text == "value 7\nexponent 3\n"
    assert write_eval_result(prime_field.one, None).endswith("none\n")
