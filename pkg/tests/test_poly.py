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

from trimap.blinding import sample_W
from trimap.errors import ParameterError
from trimap.field import frobenius
from trimap.poly import (
    DescentPoly, MultiPoly, RationalFn, coset_sample, descend_point,
    descent_reduce,
)
import pytest
import random


def random_poly(field, nvars, rng, terms=5, degree=3):
    poly = MultiPoly(field, nvars)
    for _ in range(terms):
        exps = [0] * nvars
        for _ in range(rng.randint(0, degree)):
            exps[rng.randrange(nvars)] += 1
        poly = poly + MultiPoly.monomial(
            field, nvars, exps, field.random_element(rng),
        )
    return poly


def test_evaluate_is_a_ring_homomorphism(ext_field):
    rng = random.Random(1)
    p = random_poly(ext_field, 3, rng)
    q = random_poly(ext_field, 3, rng)
    point = [ext_field.random_element(rng) for _ in range(3)]
    assert (p * q).evaluate(point) == p.evaluate(point) * q.evaluate(point)
    assert (p - q).evaluate(point) == p.evaluate(point) - q.evaluate(point)
    assert (p ** 3).evaluate(point) == p.evaluate(point) ** 3


def test_compose(ext_field):
    rng = random.Random(2)
    p = random_poly(ext_field, 2, rng)
    inner = [random_poly(ext_field, 3, rng) for _ in range(2)]
    point = [ext_field.random_element(rng) for _ in range(3)]
    composed = p.compose(inner)
    assert composed.evaluate(point) == p.evaluate(
        [g.evaluate(point) for g in inner],
    )


def test_degree_and_zero(ext_field):
    x, y = MultiPoly.variables(ext_field, 2)
    assert (x * x * y + 1).degree() == 3
    assert (x - x).is_zero()
    assert (x - x).degree() == -1
    assert (x * x * y).var_degrees() == (2, 1)


def test_embed(ext_field):
    x, y = MultiPoly.variables(ext_field, 2)
    p = x * y + x
    wide = p.embed(2, 5)
    point = [ext_field.element(v) for v in (1, 2, 3, 4, 5)]
    assert wide.evaluate(point) == p.evaluate(point[2:4])
    with pytest.raises(ParameterError):
        p.embed(4, 5)


def test_rational_functions(ext_field):
    x, y = MultiPoly.variables(ext_field, 2)
    f = RationalFn(x, y + 1)
    g = RationalFn(y, x + 2)
    point = [ext_field.element(3), ext_field.element(4)]
    fv, gv = f.evaluate(point), g.evaluate(point)
    assert (f + g).evaluate(point) == fv + gv
    assert (f * g).evaluate(point) == fv * gv
    assert (f / g).evaluate(point) == fv / gv
    with pytest.raises(ParameterError):
        RationalFn(x, x - x)


def test_coset_sample_agrees_on_W(key3):
    rng = random.Random(3)
    nvars = key3.nvars
    h = random_poly(key3.params, nvars, rng, terms=4, degree=2)
    noisy = coset_sample(h, key3.ideal, 4, rng)
    assert noisy != h
    for _ in range(10):
        w = sample_W(key3, rng)
        assert noisy.evaluate(w) == h.evaluate(w)


def test_descent_reduce(ext_field):
    rng = random.Random(4)
    p = random_poly(ext_field, 2, rng)
    twists = [1, 2]
    g = descent_reduce(p, twists, ext_field)
    assert isinstance(g, DescentPoly)
    assert g.nvars == 2 * ext_field.d
    for _ in range(10):
        point = [ext_field.random_element(rng) for _ in range(2)]
        expected = p.evaluate([
            frobenius(x, a) for x, a in zip(point, twists)
        ])
        assert g.evaluate(descend_point(point, ext_field)) == expected


def test_descent_exponents_are_reduced(ext_field):
    x = DescentPoly.variable(ext_field, 1, 0)
    assert x ** ext_field.q == x
    assert (x ** (2 * ext_field.q - 1)).degree() < ext_field.q


def test_descent_terms_merge_after_reduction(ext_field):
    el = ext_field.element
    g = DescentPoly(ext_field, 1, {(1,): el(2), (ext_field.q,): el(3)})
    assert g.terms == {(1,): el(5)}
    g = DescentPoly(ext_field, 1, {(1,): el(1), (ext_field.q,): el(6)})
    assert g.terms == {}
