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
    SPACE_E, SPACE_E_PRIME, BlindedPoint, BlindingKey, keygen, lift, rho,
    sample_W,
)
from trimap.errors import ContractViolation, DenominatorZero, ParameterError
from trimap.field import field_setup
from trimap.local import identity_map, rational_function
from trimap.poly import MultiPoly, RationalFn, descend_point
from trimap.publisher import (
    PublishedMap, _Context, _product_pieces, _product_telescope, _sum_pieces,
    _sum_telescope, count_unknowns, eval_published, publish_local_map,
    publish_product, publish_sum, publish_twisted,
)
import pytest
import random


def hidden_pieces(params, n, arity=1):
    """One small rational function per locality, reading argument l % arity.
    """
    u, w = MultiPoly.variables(params, 2)
    one = MultiPoly.constant(params, 2, 1)
    pieces = []
    for l in range(n):
        num = u * w + l + 1 if l % 2 else u + w * w
        den = u + 1 if l % 2 else one
        pieces.append(rational_function([(l % arity, l)], RationalFn(num, den)))
    return pieces


def hidden_value(mode, pieces, keys, points):
    values = [rho(key, w) for key, w in zip(keys, points)]
    total = None
    for piece in pieces:
        (p, l), = piece.reads
        v = piece.value([values[p][l]])
        if v is None:
            return None
        if total is None:
            total = v
        elif mode == "sum":
            total = total + v
        else:
            total = total * v
    return total


def check_agrees(pf, mode, pieces, keys, rng, samples=10, convert=None):
    checked = 0
    for _ in range(samples):
        points = [sample_W(key, rng) for key in keys]
        expected = hidden_value(mode, pieces, keys, points)
        if expected is None:
            continue
        args = points if convert is None else [convert(w) for w in points]
        try:
            value = pf.evaluate(args)
        except DenominatorZero:
            continue
        assert value == expected
        checked += 1
    assert checked > samples // 2


@pytest.fixture(scope="module")
def key2(ext_field):
    return keygen(2, ext_field, False, random.Random(22))


@pytest.mark.parametrize("mode", ["sum", "product"])
@pytest.mark.parametrize("form", ["terms", "program"])
def test_agrees_on_W(mode, form, key2):
    rng = random.Random(23)
    pieces = hidden_pieces(key2.params, key2.n)
    publish = publish_sum if mode == "sum" else publish_product
    pf = publish(pieces, key2, rng, form=form)
    assert pf.form == form
    assert pf.m == len(pieces)
    check_agrees(pf, mode, pieces, [key2], rng)


def test_two_arguments(key2, ext_field):
    rng = random.Random(24)
    other = keygen(2, ext_field, False, random.Random(25))
    pieces = hidden_pieces(ext_field, 2, arity=2)
    pf = publish_sum(pieces, [key2, other], rng, form="program",
                     spaces=(SPACE_E, SPACE_E_PRIME))
    assert pf.arity == 2
    assert pf.nvars == 12
    check_agrees(pf, "sum", pieces, [key2, other], rng)


def test_noise_vanishes_only_on_W(key2):
    pieces = hidden_pieces(key2.params, key2.n)
    first = publish_sum(pieces, key2, random.Random(26))
    second = publish_sum(pieces, key2, random.Random(27))
    assert first.pieces != second.pieces
    rng = random.Random(28)
    params = key2.params
    differ = 0
    for _ in range(5):
        point = [params.random_element(rng) for _ in range(key2.nvars)]
        try:
            if first.evaluate([point]) != second.evaluate([point]):
                differ += 1
        except DenominatorZero:
            continue
    assert differ


def test_twisted(ext_field):
    key = keygen(1, ext_field, True, random.Random(29))
    u, w = MultiPoly.variables(ext_field, 2)
    one = MultiPoly.constant(ext_field, 2, 1)
    pieces = [rational_function([(0, 0)], RationalFn(u + w * 2, one))]
    pf = publish_twisted(pieces, key, random.Random(30))
    assert pf.twisted
    assert pf.nvars == 3 * ext_field.d

    def convert(w):
        return descend_point(w, ext_field)
    check_agrees(pf, "sum", pieces, [key], random.Random(31),
                 convert=convert)


@pytest.mark.slow
def test_twisted_over_small_field():
    params = field_setup(3, 2, 56)
    base = keygen(2, params, False, random.Random(57))
    key = BlindingKey(params, base.delta, base.lambdas, [(0, 1), (1, 0)])
    pieces = hidden_pieces(params, key.n)
    pf = publish_twisted(pieces, key, random.Random(58))
    assert pf.nvars == 3 * key.n * params.d
    for g, h in pf.pieces:
        assert max(g.var_degrees()) < params.q
        assert max(h.var_degrees()) < params.q
    rng = random.Random(59)
    checked = 0
    for _ in range(100):
        w = sample_W(key, rng)
        expected = hidden_value("sum", pieces, [key], [w])
        if expected is None:
            continue
        try:
            value = pf.evaluate([descend_point(w, params)])
        except DenominatorZero:
            continue
        assert value == expected
        checked += 1
    assert checked >= 25


def traced(key, pieces, seed):
    """The hidden pieces as polynomials of a term-form publication ring.
    """
    ctx = _Context([key], "terms", False, random.Random(seed))
    return ctx, [piece(ctx.points(piece.reads)) for piece in pieces]


def at(x, point):
    return x.evaluate(point) if isinstance(x, MultiPoly) else x


def combine(mode, pairs, params):
    total = params.zero if mode == "sum" else params.one
    for g, h in pairs:
        total = total + g / h if mode == "sum" else total * (g / h)
    return total


def test_single_piece_wraps_around(key2):
    pieces = hidden_pieces(key2.params, key2.n)[1:]
    ctx, values = traced(key2, pieces, 50)
    (g, h), = values
    l1, l2 = ctx.linear_form(), ctx.linear_form()
    (g1, h1, _), = _sum_telescope(ctx, values, [l1, l2])
    assert g1 == g * l2 * l2
    assert h1 == h * l2 * l2
    (g1, h1, _), = _product_telescope(ctx, values, [l1])
    assert g1 == g * l1
    assert h1 == h * l1


def test_telescoping_closes_off_W(key2):
    params = key2.params
    pieces = hidden_pieces(params, key2.n)
    pieces.append(pieces[0])
    ctx, values = traced(key2, pieces, 51)
    m = len(values)
    summed = _sum_telescope(
        ctx, values, [ctx.linear_form() for _ in range(2 * m)],
    )
    multiplied = _product_telescope(
        ctx, values, [ctx.linear_form() for _ in range(m)],
    )
    rng = random.Random(52)
    checked = 0
    for _ in range(10):
        point = [params.random_element(rng) for _ in range(ctx.nvars)]
        hidden = [(at(g, point), at(h, point)) for g, h in values]
        sums = [(at(g, point), at(h, point)) for g, h, _ in summed]
        products = [(at(g, point), at(h, point)) for g, h, _ in multiplied]
        if not all(h for _, h in hidden + sums + products):
            continue
        assert combine("sum", sums, params) == combine("sum", hidden, params)
        assert (combine("product", products, params) ==
                combine("product", hidden, params))
        checked += 1
    assert checked


@pytest.mark.parametrize("telescope, add_noise, forms_per_piece", [
    (_sum_telescope, _sum_pieces, 2),
    (_product_telescope, _product_pieces, 1),
])
def test_noise_changes_every_piece(key2, telescope, add_noise,
                                   forms_per_piece):
    pieces = hidden_pieces(key2.params, key2.n)
    ctx, values = traced(key2, pieces, 53)
    forms = [
        ctx.linear_form() for _ in range(forms_per_piece * len(values))
    ]
    bare = telescope(ctx, values, forms)
    noisy = add_noise(ctx, values, forms)
    rng = random.Random(54)
    points = [sample_W(key2, rng) for _ in range(5)]
    for (g1, h1, _), (g2, h2) in zip(bare, noisy):
        assert g2 != g1
        assert h2 != h1
        for w in points:
            assert not (g2 - g1).evaluate(w)
            assert not (h2 - h1).evaluate(w)


def test_zero_hidden_sum(key2):
    params = key2.params
    zero = MultiPoly(params, 2)
    one = MultiPoly.constant(params, 2, 1)
    pieces = [
        rational_function([(0, l % key2.n)], RationalFn(zero, one))
        for l in range(3)
    ]
    pf = publish_sum(pieces, key2, random.Random(55))
    assert all(not g.is_zero() for g, _ in pf.pieces)
    check_agrees(pf, "sum", pieces, [key2], random.Random(56))


def test_constant_piece_is_hidden(key2):
    params = key2.params
    one = MultiPoly.constant(params, 2, 1)
    pieces = [rational_function([(0, 0)], RationalFn(one, one))]
    pieces.extend(hidden_pieces(params, key2.n)[1:])
    pf = publish_product(pieces, key2, random.Random(57))
    g, h = pf.pieces[0]
    assert g.degree() > 0
    assert h.degree() > 0
    check_agrees(pf, "product", pieces, [key2], random.Random(58))


def test_twisted_needs_terms(ext_field):
    key = keygen(1, ext_field, True, random.Random(32))
    pieces = hidden_pieces(ext_field, 1)
    with pytest.raises(ParameterError):
        publish_sum(pieces, key, random.Random(0), form="program",
                    twisted=True)


def test_space_mismatch(key2):
    pieces = hidden_pieces(key2.params, key2.n)
    pf = publish_sum(pieces, key2, random.Random(33), form="program",
                     spaces=(SPACE_E,))
    w = sample_W(key2, random.Random(34))
    with pytest.raises(ContractViolation):
        pf.evaluate([BlindedPoint(w, SPACE_E_PRIME)])
    with pytest.raises(ParameterError):
        pf.evaluate([w[:-1]])


def test_identity_map_publication(key2, ext_field):
    rng = random.Random(35)
    maps = [identity_map(j) for j in range(key2.n)]
    pm = publish_local_map(maps, key2, rng)
    assert isinstance(pm, PublishedMap)
    other = keygen(2, ext_field, False, random.Random(36))
    moved = publish_local_map(maps, key2, rng, out_key=other)
    for _ in range(5):
        w = sample_W(key2, rng)
        try:
            assert eval_published(pm, [w], key2) == w
            assert moved.evaluate([w]) == lift(other, rho(key2, w))
        except DenominatorZero:
            continue


def test_map_rejects_twisted_keys(ext_field):
    key = keygen(1, ext_field, True, random.Random(37))
    with pytest.raises(ContractViolation):
        publish_local_map([identity_map(0)], key, random.Random(0))


def test_nothing_to_publish(key2):
    with pytest.raises(ParameterError):
        publish_sum([], key2, random.Random(0))


def test_count_unknowns(key2):
    pieces = hidden_pieces(key2.params, key2.n)
    pf = publish_sum(pieces, key2, random.Random(38))
    report = count_unknowns(pf, key2.n)
    assert report.linear_form_unknowns == 2 * pf.m * (pf.nvars + 1)
    assert report.unknowns == (
        report.linear_form_unknowns + report.local_unknowns +
        report.blinding_unknowns
    )
    assert report.conditions > report.unknowns
    assert report.dump().startswith("published coefficients: ")
