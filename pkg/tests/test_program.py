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
from trimap.poly import MultiPoly
from trimap.program import Program, ProgramBuilder
import pytest
import random


def traced(field, nvars, fn):
    builder = ProgramBuilder(field, nvars)
    return builder.build(fn(*builder.inputs))


def sample(x, y, z):
    s = x * y + z
    return [s * s - 3 * x, (s + 1) ** 3, s * s - 3 * x]


def test_program_matches_polynomial(ext_field):
    program = traced(ext_field, 3, sample)
    rng = random.Random(7)
    for _ in range(10):
        point = [ext_field.random_element(rng) for _ in range(3)]
        assert program.evaluate(point) == sample(*point)


def test_expand(ext_field):
    program = traced(ext_field, 3, sample)
    variables = MultiPoly.variables(ext_field, 3)
    assert program.expand() == sample(*variables)


def test_common_subexpressions_are_shared(ext_field):
    program = traced(ext_field, 3, sample)
    assert program.outputs[0] == program.outputs[2]
    muls = [op for op in program.ops if op[0] == "mul"]
    # x*y, s*s and 3*x
    assert len(muls) == 3


def test_constants_fold(ext_field):
    program = traced(ext_field, 1, lambda x: [x * 0 + 2 * 3, x * 1])
    assert program.size == 0
    assert program.evaluate([ext_field.element(5)]) == [
        ext_field.element(6), ext_field.element(5),
    ]


def test_degrees(ext_field):
    program = traced(ext_field, 3, sample)
    assert program.degrees() == [4, 6, 4]


def test_dead_code_is_dropped(ext_field):
    builder = ProgramBuilder(ext_field, 2)
    x, y = builder.inputs
    unused = (x * y) ** 5
    assert unused is not None
    program = builder.build([x + y])
    assert program.size == 1


def test_validation(ext_field):
    with pytest.raises(ParameterError):
        Program(ext_field, 1, [], [("mul", 0, 3)], [1])
    with pytest.raises(ParameterError):
        Program(ext_field, 1, [], [("div", 0, 0)], [1])
    with pytest.raises(ParameterError):
        Program(ext_field, 1, [], [], [2])


def test_foreign_wire(ext_field):
    a = ProgramBuilder(ext_field, 1)
    b = ProgramBuilder(ext_field, 1)
    with pytest.raises(ParameterError):
        a.inputs[0] + b.inputs[0]
