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

from trimap.curve import O, add, random_point, scalar_mul, torsion_points
from trimap.errors import PoleHit
from trimap.pairing import (
    line_g, line_h, miller_f, miller_transcript, vertical, weil,
)
import itertools
import pytest
import random


def naive_miller(E, P, Q):
    """f_P(Q) by the plain loop f_{i+1} = f_i * l_{[i]P, P}(Q) /
    v_{[i+1]P}(Q).
    """
    f = E.field.one
    T = P
    for _ in range(E.ell - 1):
        S = add(E, T, P)
        if S.is_infinity:
            factor = vertical(E, T, Q)
        elif T == P:
            factor = line_h(E, T, Q)
        else:
            factor = line_g(E, T, P, Q)
        f = f * factor
        T = S
    return f


def random_torsion(E, basis, rng):
    P1, P2 = basis
    while True:
        i, j = rng.randrange(E.ell), rng.randrange(E.ell)
        if i or j:
            return add(E, scalar_mul(E, i, P1), scalar_mul(E, j, P2))


@pytest.mark.parametrize("which", ["small", "instance"])
def test_miller_matches_naive_loop(which, small_curve, small_basis, secret):
    if which == "small":
        E, basis = small_curve, small_basis
    else:
        E, basis = secret.curve, secret.basis
    rng = random.Random(10)
    checked = 0
    for _ in range(20):
        P = random_torsion(E, basis, rng)
        Q = random_point(E, rng)
        try:
            expected = naive_miller(E, P, Q)
            value = miller_f(E, P, Q)
        except (PoleHit, ZeroDivisionError):
            continue
        if not expected:
            continue
        assert value == expected
        checked += 1
    assert checked > 0


def test_weil_bilinear_exhaustive(small_curve, small_basis):
    E = small_curve
    P1, P2 = small_basis
    base = weil(E, P1, P2)
    assert base != E.field.one
    assert base ** 3 == E.field.one
    for i, j in itertools.product(range(3), repeat=2):
        value = weil(E, scalar_mul(E, i, P1), scalar_mul(E, j, P2))
        assert value == base ** (i * j)


def test_weil_alternating(small_curve, small_basis):
    E = small_curve
    for P in torsion_points(E, small_basis):
        assert weil(E, P, P) == E.field.one
    assert weil(E, O, small_basis[0]) == E.field.one


def test_weil_instance_curve(secret):
    E = secret.curve
    rng = random.Random(11)
    P1, P2 = secret.basis
    base = weil(E, P1, P2)
    for _ in range(5):
        i, j, k = (rng.randrange(E.ell) for _ in range(3))
        P = add(E, scalar_mul(E, i, P1), scalar_mul(E, k, P2))
        Q = scalar_mul(E, j, P2)
        assert weil(E, P, Q) == base ** (i * j % E.ell)


def test_transcript(secret):
    E = secret.curve
    P1, P2 = secret.basis
    for j in range(1, E.ell):
        try:
            t = miller_transcript(E, P1, scalar_mul(E, j, P2))
            break
        except PoleHit:
            continue
    # ell = 5 = 0b101: two doublings and one vertical correction.
    assert len(t.chain) == 3
    assert len(t.H) == 3
    assert len(t.G) == 1
    dump = t.dump()
    assert dump.startswith("miller ell=5 bits=0.2\n")
    assert "f = " in dump
