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

from trimap.curve import add, double, torsion_points
from trimap.local import (
    add_map, chord_function, double_map, generator_map, identity_map,
    local_from_proj, proj_from_local, proj_scale, rational_function,
    tangent_function, vertical_function,
)
from trimap.pairing import line_g, line_h, vertical
from trimap.poly import MultiPoly, RationalFn
import pytest
import random


def ratio(pair):
    num, den = pair
    assert den
    return num / den


def as_local(pair):
    return tuple(ratio(c) for c in pair)


@pytest.fixture(scope="module")
def torsion(secret):
    pts = [P for P in torsion_points(secret.curve, secret.basis)
           if not P.is_infinity]
    return random.Random(21).sample(pts, 8)


def test_projective_round_trip(secret, torsion):
    T = secret.transforms["E"][0]
    for P in torsion:
        u, w = T.transport(P)
        X, Y, Z = proj_from_local(T, u, w)
        assert X / Z == P.x and Y / Z == P.y
        assert as_local(local_from_proj(T, X, Y, Z)) == (u, w)


def test_add_map(secret, torsion):
    E = secret.curve
    T = secret.transforms["E"][1]
    local = add_map(T, 1)
    assert local.reads == ((0, 1), (1, 1))
    for P in torsion:
        for Q in torsion:
            if P.x == Q.x:
                continue
            out = local([T.transport(P), T.transport(Q)])
            assert as_local(out) == T.transport(add(E, P, Q))


def test_double_map(secret, torsion):
    E = secret.curve
    T = secret.transforms["E"][0]
    local = double_map(T, E.a, 0)
    for P in torsion:
        assert as_local(local([T.transport(P)])) == T.transport(double(E, P))


def test_identity_map(secret, torsion):
    T = secret.transforms["E"][0]
    v = T.transport(torsion[0])
    assert as_local(identity_map(0)([v])) == v


def test_proj_scale(secret, torsion):
    E = secret.curve
    T = secret.transforms["E"][0]
    P = torsion[0]
    X, Y, Z = proj_scale(E.a, proj_from_local(T, *T.transport(P)), 3)
    expected = add(E, double(E, P), P)
    assert X / Z == expected.x and Y / Z == expected.y
    with pytest.raises(ValueError):
        proj_scale(E.a, (X, Y, Z), 0)


def test_generator_map(secret):
    E = secret.curve
    transforms = secret.transforms["E"]
    local_beta = [T.transport(P) for T, P in zip(transforms, secret.beta)]
    for gen in secret.generators:
        image = gen.apply(E, secret.beta)
        for j, row in enumerate(gen.rows):
            if image[j].is_infinity:
                continue
            local = generator_map(transforms, E.a, j, row)
            points = [local_beta[l] for l, _ in row]
            assert as_local(local(points)) == transforms[j].transport(image[j])


def test_line_functions(secret, torsion):
    E = secret.curve
    Tp, Tq = secret.transforms["E"]
    h = tangent_function(Tp, Tq, E.a, 0)
    g = chord_function(Tp, Tq, 0)
    v = vertical_function(Tp, Tq, 0)
    P1, P2, Q = torsion[:3]
    assert v.value([Tp.transport(P1), Tq.transport(Q)]) == vertical(E, P1, Q)
    if double(E, P1).x != Q.x:
        assert h.value([Tp.transport(P1), Tq.transport(Q)]) \
            == line_h(E, P1, Q)
    if P1.x != P2.x and add(E, P1, P2).x != Q.x:
        assert g.value([Tp.transport(P1), Tp.transport(P2),
                        Tq.transport(Q)]) == line_g(E, P1, P2, Q)


def test_pole_gives_none(secret, torsion):
    E = secret.curve
    Tp, Tq = secret.transforms["E"]
    P = torsion[0]
    v = vertical_function(Tp, Tq, 0)
    # x - x(P) has a zero, not a pole, at P; the tangent at P has a pole
    # at 2P.
    assert not v.value([Tp.transport(P), Tq.transport(P)])
    h = tangent_function(Tp, Tq, E.a, 0)
    assert h.value([Tp.transport(P), Tq.transport(double(E, P))]) is None


def test_rational_function(ext_field):
    u1, w1, u2, w2 = MultiPoly.variables(ext_field, 4)
    fn = rational_function([(0, 0), (1, 0)], RationalFn(u1 * w2, u2 + 1))
    a, b, c = (ext_field.element(k) for k in (2, 3, 4))
    assert fn.value([(a, b), (c, a)]) == a * a / (c + 1)
    minus_one = ext_field.zero - 1
    assert fn.value([(a, b), (minus_one, a)]) is None
