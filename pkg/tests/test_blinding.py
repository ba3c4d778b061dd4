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

from trimap.blinding import (
    SPACE_E, SPACE_E_PRIME, BlindedPoint, BlindingKey, LocalQuadIso,
    ambivalent_representatives, d_alpha_variant, gl_action, is_on_W, lift,
    rho, rho_from, sample_W,
)
from trimap.errors import ContractViolation, ParameterError
from trimap.field import frobenius
import pytest
import random


def random_pairs(params, n, rng):
    return [
        (params.random_element(rng), params.random_element(rng))
        for _ in range(n)
    ]


def check_round_trip(key, count, rng):
    for _ in range(count):
        v = random_pairs(key.params, key.n, rng)
        w = lift(key, v)
        assert is_on_W(key, w)
        assert rho(key, w) == v


@pytest.mark.parametrize("which", ["basic", "twisted"])
def test_round_trip(which, key3, twisted_key3):
    key = key3 if which == "basic" else twisted_key3
    check_round_trip(key, 50, random.Random(12))


@pytest.mark.slow
@pytest.mark.parametrize("which", ["basic", "twisted"])
def test_round_trip_thousand(which, key3, twisted_key3):
    key = key3 if which == "basic" else twisted_key3
    check_round_trip(key, 1000, random.Random(13))


def test_twists_apply_frobenius(key3, twisted_key3):
    # Same delta and lambdas, so the twisted rho is Frobenius of the basic.
    twisted = key3.with_twists(twisted_key3.twists)
    w = sample_W(key3, random.Random(14))
    for (x, y), (tx, ty), (a, b) in zip(
        rho(key3, w), rho(twisted, w), twisted.twists,
    ):
        assert tx == frobenius(x, a)
        assert ty == frobenius(y, b)


def test_off_W(key3):
    w = sample_W(key3, random.Random(15))
    bad = list(w)
    bad[0] = bad[0] + 1
    assert not is_on_W(key3, bad)
    with pytest.raises(ContractViolation):
        rho(key3, bad)
    assert not is_on_W(key3, w[:-1])


def test_identity_key(ext_field):
    key = BlindingKey.identity(ext_field, 2)
    x, y = ext_field.element(3), ext_field.element(5)
    w = lift(key, [(x, y), (y, x)])
    assert w == [x, y, y, y, x, x]


def test_ambivalent_representatives(key3):
    rng = random.Random(16)
    reps = ambivalent_representatives(key3, 20, rng)
    for _ in range(20):
        w = sample_W(key3, rng)
        expected = rho(key3, w)
        for rep in reps:
            assert rho_from(rep, key3, w) == expected


def test_representatives_differ_off_W(key3):
    rng = random.Random(17)
    rep, = ambivalent_representatives(key3, 1, rng)
    point = [key3.params.random_element(rng) for _ in range(key3.nvars)]
    assert rho_from(rep, key3, point) != [
        (f1.evaluate(point), f2.evaluate(point)) for f1, f2, _ in key3.F
    ]


def test_ambivalence_needs_basic_key(twisted_key3):
    with pytest.raises(ContractViolation):
        ambivalent_representatives(twisted_key3, 1, random.Random(0))


def test_d_alpha_variants(key3):
    rng = random.Random(18)
    params = key3.params
    variants = [
        d_alpha_variant(key3, i % key3.n, params.random_nonzero(rng))
        for i in range(20)
    ]
    for _ in range(20):
        w = sample_W(key3, rng)
        expected = rho(key3, w)
        for variant in variants:
            assert is_on_W(variant, w)
            assert rho(variant, w) == expected
    with pytest.raises(ParameterError):
        d_alpha_variant(key3, key3.n, params.one)


def test_gl_action_preserves_composite(key3):
    rng = random.Random(19)
    params = key3.params
    blocks = []
    while len(blocks) < key3.n:
        block = [[params.random_element(rng) for _ in range(2)]
                 for _ in range(2)]
        if block[0][0] * block[1][1] - block[0][1] * block[1][0]:
            blocks.append(block)

    def f(values):
        total = params.zero
        for x, y in values:
            total = total + x * y * y + x
        return total

    def rho_fn(w):
        return rho(key3, w)
    new_rho, new_f = gl_action(blocks, rho_fn, f)
    for _ in range(10):
        w = sample_W(key3, rng)
        assert new_f(new_rho(w)) == f(rho_fn(w))
        assert new_rho(w) != rho_fn(w)


def test_local_quad_iso_inverse(ext_field):
    rng = random.Random(20)
    lam = LocalQuadIso.random(ext_field, rng)
    v = [ext_field.random_element(rng) for _ in range(3)]
    assert lam.inverse(lam.apply(v)) == v


def test_blinded_point(ext_field):
    coords = [ext_field.one, ext_field.zero]
    x = BlindedPoint(coords)
    assert x == BlindedPoint(coords, SPACE_E)
    assert x != BlindedPoint(coords, SPACE_E_PRIME)
    assert len(x) == 2
    assert hash(x) == hash(BlindedPoint(tuple(coords)))
    with pytest.raises(ParameterError):
        BlindedPoint(coords, "F")


def test_bad_twists(ext_field):
    key = BlindingKey.identity(ext_field, 1)
    with pytest.raises(ParameterError):
        key.with_twists([(ext_field.d, 0)])
