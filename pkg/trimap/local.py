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

"""Hidden local functions and maps, written in projective form.

Everything here works over any commutative ring that accepts field-element
and integer constants: field elements (hidden evaluation), polynomials
(term-form publication) and program wires (program-form publication).
Divisions are never performed; functions return numerator and denominator.

A local point is a pair (u, w) of transported coordinates on E_j. Its
E-coordinates are recovered projectively through the inverse transform.
"""

from .curve import CurveTransform
from .poly import MultiPoly, RationalFn
from typing import Callable, Sequence, Tuple

# (arg, locality): the local point rho_locality(w_arg).
Read = Tuple[int, int]


def proj_from_local(T: CurveTransform, u, w):
    """The point of E with transported coordinates (u, w), as (X : Y : Z).
    """
    (a, b), (c, d) = T.A_inv
    if T.includes_j:
        return (a * w + b * u, c * w + d * u, u * w)
    return (a * u + b * w, c * u + d * w, _one_like(u))


def _one_like(x):
    # The constant 1 in the ring of x.
    return x * 0 + 1


def local_from_proj(T: CurveTransform, X, Y, Z):
    """Transports (X : Y : Z) back to E_j.

    :returns: ((num_u, den_u), (num_w, den_w)).
    """
    (a, b), (c, d) = T.A
    first = a * X + b * Y
    second = c * X + d * Y
    if T.includes_j:
        return (Z, first), (Z, second)
    return (first, Z), (second, Z)


def proj_add(P1, P2):
    """Chord addition of distinct, non-opposite affine points. Returns
    (0 : Y : 0) for opposite points.
    """
    X1, Y1, Z1 = P1
    X2, Y2, Z2 = P2
    Y1Z2 = Y1 * Z2
    X1Z2 = X1 * Z2
    Z1Z2 = Z1 * Z2
    u = Y2 * Z1 - Y1Z2
    uu = u * u
    v = X2 * Z1 - X1Z2
    vv = v * v
    vvv = v * vv
    R = vv * X1Z2
    A = uu * Z1Z2 - vvv - 2 * R
    return (v * A, u * (R - A) - vvv * Y1Z2, vvv * Z1Z2)


def proj_double(a, P1):
    """Tangent doubling on y^2 = x^3 + ax + b.
    """
    X1, Y1, Z1 = P1
    w = a * (Z1 * Z1) + 3 * (X1 * X1)
    s = Y1 * Z1
    B = X1 * Y1 * s
    h = w * w - 8 * B
    ss = s * s
    return (2 * h * s, w * (4 * B - h) - 8 * (Y1 * Y1) * ss, 8 * ss * s)


def proj_scale(a, P, c: int):
    """[c]P for a small positive c, by doubling and chord additions.
    """
    if c < 1:
        raise ValueError("Scalar must be positive.")
    result = None
    addend = P
    while c:
        if c & 1:
            result = addend if result is None else proj_add(result, addend)
        c >>= 1
        if c:
            addend = proj_double(a, addend)
    return result


def tangent_value(a, P1, Q):
    """The tangent function at P1, (y - lambda x - nu) / (x - x(2 P1)),
    evaluated at Q.
    """
    X1, Y1, Z1 = P1
    X, Y, Z = Q
    slope = 3 * (X1 * X1) + a * (Z1 * Z1)
    line = (Y * Z1 - Y1 * Z) * (2 * Y1 * Z1) - slope * (X * Z1 - X1 * Z)
    d2 = 4 * (Y1 * Y1) * (Z1 * Z1)
    n2 = slope * slope - 8 * X1 * (Y1 * Y1) * Z1
    return 2 * Y1 * line, X * d2 - n2 * Z


def chord_value(P1, P2, Q):
    """The chord function through P1 and P2, (y - lambda x - nu) /
    (x - x(P1 + P2)), evaluated at Q.
    """
    X1, Y1, Z1 = P1
    X2, Y2, Z2 = P2
    X, Y, Z = Q
    U = Y2 * Z1 - Y1 * Z2
    V = X2 * Z1 - X1 * Z2
    line = V * (Y * Z1 - Y1 * Z) - U * (X * Z1 - X1 * Z)
    d3 = V * V * Z1 * Z2
    n3 = U * U * Z1 * Z2 - V * V * (X1 * Z2 + X2 * Z1)
    return line * V * Z2, X * d3 - n3 * Z


def vertical_value(P1, Q):
    """The vertical line x - x(P1), evaluated at Q.
    """
    X1, _, Z1 = P1
    X, _, Z = Q
    return X * Z1 - X1 * Z, Z * Z1


def mu_fractions(mu: Sequence[MultiPoly], x, y):
    """Applies mu-tilde (three bivariate polynomials) to x = nx / dx and
    y = ny / dy.

    :returns: (three numerators, common denominator).
    """
    (nx, dx), (ny, dy) = x, y
    common = dx * dy
    X = nx * dy
    Y = ny * dx
    e = max(max(m.degree() for m in mu), 0)
    powers = {}

    def power(base, name, k):
        key = (name, k)
        if key not in powers:
            powers[key] = _one_like(base) if k == 0 else base ** k
        return powers[key]

    nums = []
    for m in mu:
        total = None
        for (i, j), coeff in m.sorted_terms():
            term = power(X, "x", i) * power(Y, "y", j)
            term = term * power(common, "c", e - i - j) * coeff
            total = term if total is None else total + term
        nums.append(common * 0 if total is None else total)
    return nums, power(common, "c", e)


class LocalFunction:
    """A hidden rational function of some local points.

    :param reads: The local points the function reads.
    :param fn: Called with one (u, w) pair per read; returns (num, den).
    """
    def __init__(self, reads: Sequence[Read], fn: Callable):
        self.reads = tuple(reads)
        self.fn = fn

    def __call__(self, points):
        return self.fn(points)

    def value(self, points):
        """Evaluates at field-element points. Returns ``None`` at a pole.
        """
        num, den = self.fn(points)
        if not den:
            return None
        return num / den


class LocalMap:
    """The image, on one locality, of a bounded-locality map.

    :param fn: Called with one (u, w) pair per read; returns
      ((num_u, den_u), (num_w, den_w)).
    """
    def __init__(self, reads: Sequence[Read], fn: Callable):
        self.reads = tuple(reads)
        self.fn = fn

    def __call__(self, points):
        return self.fn(points)


def identity_map(j: int) -> LocalMap:
    def fn(points):
        (u, w), = points
        one = _one_like(u)
        return (u, one), (w, one)
    return LocalMap([(0, j)], fn)


def add_map(T: CurveTransform, j: int) -> LocalMap:
    """m_{E_j}: reads the same locality of two points.
    """
    def fn(points):
        P = proj_from_local(T, *points[0])
        Q = proj_from_local(T, *points[1])
        return local_from_proj(T, *proj_add(P, Q))
    return LocalMap([(0, j), (1, j)], fn)


def double_map(T: CurveTransform, a, j: int) -> LocalMap:
    def fn(points):
        P = proj_from_local(T, *points[0])
        return local_from_proj(T, *proj_double(a, P))
    return LocalMap([(0, j)], fn)


def generator_map(transforms: Sequence[CurveTransform], a, j: int,
                  row) -> LocalMap:
    """Output locality j of the map given by one generator-matrix row: the
    sum of the row's entries times the corresponding localities.

    :param row: ((locality, coefficient), ...) with positive coefficients.
    """
    row = tuple(row)
    T = transforms[j]

    def fn(points):
        total = None
        for (l, c), pt in zip(row, points):
            P = proj_scale(a, proj_from_local(transforms[l], *pt), c)
            total = P if total is None else proj_add(total, P)
        return local_from_proj(T, *total)
    return LocalMap([(0, l) for l, _ in row], fn)


def tangent_function(Tp: CurveTransform, Tq: CurveTransform, a,
                     j: int) -> LocalFunction:
    """h(P, Q) on locality j: the tangent function at P evaluated at Q.
    """
    def fn(points):
        P = proj_from_local(Tp, *points[0])
        Q = proj_from_local(Tq, *points[1])
        return tangent_value(a, P, Q)
    return LocalFunction([(0, j), (1, j)], fn)


def chord_function(Tp: CurveTransform, Tq: CurveTransform,
                   j: int) -> LocalFunction:
    """g(P1, P2, Q) on locality j.
    """
    def fn(points):
        P1 = proj_from_local(Tp, *points[0])
        P2 = proj_from_local(Tp, *points[1])
        Q = proj_from_local(Tq, *points[2])
        return chord_value(P1, P2, Q)
    return LocalFunction([(0, j), (1, j), (2, j)], fn)


def vertical_function(Tp: CurveTransform, Tq: CurveTransform,
                      j: int) -> LocalFunction:
    def fn(points):
        P = proj_from_local(Tp, *points[0])
        Q = proj_from_local(Tq, *points[1])
        return vertical_value(P, Q)
    return LocalFunction([(0, j), (1, j)], fn)


def rational_function(reads: Sequence[Read], fn: RationalFn) -> LocalFunction:
    """Wraps a rational function in 2 * len(reads) local variables
    (u_1, w_1, u_2, w_2, ...).
    """
    def trace(points):
        coords = [c for pt in points for c in pt]
        return fn.num.evaluate(coords), fn.den.evaluate(coords)
    return LocalFunction(reads, trace)
