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

"""Elliptic curves y^2 = x^3 + ax + b over K, desk-scale parameter search
and the transformed curves reached through a 2x2 matrix and j-hat.
"""

from .errors import ExceptionalPoint, ParameterError, SearchExhausted
from .field import FieldElement, FieldParams, as_rng, field_setup
from . import linalg

from sympy import isprime, primerange
from typing import List, Tuple
import itertools
import logging
import random

logger = logging.getLogger(__name__)

TORSION_ATTEMPTS = 200


class Point:
    """An affine point, or the point at infinity when ``x`` is ``None``.
    """
    __slots__ = ("x", "y")

    def __init__(self, x: FieldElement = None, y: FieldElement = None):
        self.x = x
        self.y = y

    @property
    def is_infinity(self) -> bool:
        return self.x is None

    def __eq__(self, other):
        if not isinstance(other, Point):
            return NotImplemented
        return self.x == other.x and self.y == other.y

    def __hash__(self):
        return hash((self.x, self.y))

    def __repr__(self):
        if self.is_infinity:
            return "O"
        return "({!r}, {!r})".format(self.x, self.y)


O = Point()


class CurveParams:
    """The curve y^2 = x^3 + ax + b over K with its group order.

    :param ell: The prime for which E[ell] is rational over K.
    :param order: #E(K); counted if not given.
    """
    def __init__(self, field: FieldParams, a, b, ell: int,
                 order: int = None):
        self.field = field
        self.a = field.element(a)
        self.b = field.element(b)
        if field.q in (2, 3):
            raise ParameterError("Characteristic must not be 2 or 3.")
        if not self.a ** 3 * 4 + self.b ** 2 * 27:
            raise ParameterError("Curve is singular.")
        if not isprime(ell):
            raise ParameterError("ell must be prime, not {}".format(ell))
        self.ell = ell
        self.order = count_points(self) if order is None else order

    @property
    def cofactor(self) -> int:
        return self.order // self.ell ** 2

    def rhs(self, x: FieldElement) -> FieldElement:
        return x ** 3 + self.a * x + self.b

    def __repr__(self):
        return "CurveParams(a={!r}, b={!r}, ell={})".format(
            self.a, self.b, self.ell,
        )


def is_on_curve(E: CurveParams, P: Point) -> bool:
    if P.is_infinity:
        return True
    return P.y * P.y == E.rhs(P.x)


def neg(E: CurveParams, P: Point) -> Point:
    if P.is_infinity:
        return P
    return Point(P.x, -P.y)


def add(E: CurveParams, P: Point, Q: Point) -> Point:
    """The group law. x3 = lambda^2 - x1 - x2, y3 = -lambda x3 - nu.
    """
    if P.is_infinity:
        return Q
    if Q.is_infinity:
        return P
    x1, y1, x2, y2 = P.x, P.y, Q.x, Q.y
    if x1 == x2:
        if y1 != y2 or not y1:
            return O
        lam = (x1 * x1 * 3 + E.a) / (y1 * 2)
        nu = (-(x1 ** 3) + E.a * x1 + E.b * 2) / (y1 * 2)
    else:
        lam = (y2 - y1) / (x2 - x1)
        nu = (y1 * x2 - y2 * x1) / (x2 - x1)
    x3 = lam * lam - x1 - x2
    return Point(x3, -lam * x3 - nu)


def double(E: CurveParams, P: Point) -> Point:
    return add(E, P, P)


def scalar_mul(E: CurveParams, m: int, P: Point) -> Point:
    if m < 0:
        return scalar_mul(E, -m, neg(E, P))
    result = O
    addend = P
    while m:
        if m & 1:
            result = add(E, result, addend)
        addend = add(E, addend, addend)
        m >>= 1
    return result


def random_point(E: CurveParams, rng: random.Random) -> Point:
    """A random affine point of E(K).
    """
    field = E.field
    while True:
        x = field.random_element(rng)
        y = E.rhs(x).sqrt(rng)
        if y is None:
            continue
        if rng.randrange(2):
            y = -y
        return Point(x, y)


def points(E: CurveParams):
    """Enumerates E(K), starting with O. Desk scale only.
    """
    yield O
    for x in E.field.elements():
        y = E.rhs(x).sqrt()
        if y is None:
            continue
        yield Point(x, y)
        if y:
            yield Point(x, -y)


def count_points_exhaustive(E: CurveParams) -> int:
    total = 1
    for x in E.field.elements():
        rhs = E.rhs(x)
        if not rhs:
            total += 1
        elif rhs.is_square():
            total += 2
    return total


def _count_base(q: int, a: int, b: int) -> int:
    total = 1
    half = (q - 1) // 2
    for x in range(q):
        rhs = (x * x * x + a * x + b) % q
        if rhs == 0:
            total += 1
        elif pow(rhs, half, q) == 1:
            total += 2
    return total


def extension_count(q: int, base_count: int, d: int) -> int:
    """#E(F_{q^d}) from #E(F_q) through the trace recurrence
    s_0 = 2, s_1 = t, s_{k+1} = t s_k - q s_{k-1}.
    """
    t = q + 1 - base_count
    s_prev, s = 2, t
    for _ in range(d - 1):
        s_prev, s = s, t * s - q * s_prev
    return q ** d + 1 - s


def count_points(E: CurveParams) -> int:
    """Counts E(K). Uses the trace recurrence when a and b lie in k.
    """
    field = E.field
    if E.a.in_subfield() and E.b.in_subfield():
        base = _count_base(field.q, E.a.to_int(), E.b.to_int())
        return extension_count(field.q, base, field.d)
    return count_points_exhaustive(E)


def _candidates(ell, qmax, dmax, min_field_size):
    out = []
    for q in primerange(5, qmax + 1):
        for d in range(1, dmax + 1):
            size = q ** d
            if size < min_field_size or size >= 2 ** 64:
                continue
            if (size - 1) % ell == 0:
                out.append((size, q, d))
    out.sort()
    return out


def find_desk_params(ell: int, qmax: int, dmax: int, rng,
                     min_field_size: int = 1,
                     curves_per_field: int = None
                     ) -> Tuple[FieldParams, CurveParams]:
    """Searches small (q, d, a, b) for a curve with full rational
    ell-torsion over K = F_{q^d}.

    Fields are tried in increasing size. For each field, random a, b in k
    are tried until ell^2 divides #E(K) and a Weil pairing of order ell
    certifies E[ell] has rank 2.

    :raises SearchExhausted: If no curve exists within the bounds.
    """
    if not isprime(ell):
        raise ParameterError("ell must be prime, not {}".format(ell))
    rng = as_rng(rng)
    for size, q, d in _candidates(ell, qmax, dmax, min_field_size):
        params = field_setup(q, d, rng)
        logger.info("Searching curves over F_%d^%d", q, d)
        pairs = list(itertools.product(range(q), repeat=2))
        rng.shuffle(pairs)
        if curves_per_field is not None:
            pairs = pairs[:curves_per_field]
        for a, b in pairs:
            if (4 * a ** 3 + 27 * b ** 2) % q == 0:
                continue
            order = extension_count(q, _count_base(q, a, b), d)
            if order % (ell * ell):
                continue
            E = CurveParams(params, a, b, ell, order)
            logger.debug("Candidate a=%d b=%d order=%d", a, b, order)
            basis = _try_torsion_basis(E, rng, attempts=32)
            if basis is not None:
                logger.info(
                    "Found y^2 = x^3 + %dx + %d over F_%d^%d", a, b, q, d,
                )
                return params, E
    raise SearchExhausted(
        "No curve with full rational {}-torsion for q <= {}, d <= {}, "
        "|K| >= {}. Try larger bounds (--q-max, --d-max).".format(
            ell, qmax, dmax, min_field_size,
        )
    )


def _primary_split(order: int, ell: int) -> int:
    m = order
    while m % ell == 0:
        m //= ell
    return m


def torsion_point(E: CurveParams, rng: random.Random) -> Point:
    """A random point of exact order ell, or O on a bad draw.
    """
    m = _primary_split(E.order, E.ell)
    R = scalar_mul(E, m, random_point(E, rng))
    if R.is_infinity:
        return O
    while True:
        S = scalar_mul(E, E.ell, R)
        if S.is_infinity:
            return R
        R = S


def _try_torsion_basis(E, rng, attempts):
    from .pairing import weil
    for _ in range(attempts):
        P1 = torsion_point(E, rng)
        P2 = torsion_point(E, rng)
        if P1.is_infinity or P2.is_infinity:
            continue
        if weil(E, P1, P2, rng) != E.field.one:
            return P1, P2
    return None


def torsion_basis(E: CurveParams, rng) -> Tuple[Point, Point]:
    """Returns P1, P2 of order ell with weil(P1, P2) of order ell.
    """
    rng = as_rng(rng)
    basis = _try_torsion_basis(E, rng, TORSION_ATTEMPTS)
    if basis is None:
        raise SearchExhausted(
            "Could not find an ell-torsion basis; E[ell] may be cyclic."
        )
    return basis


def torsion_points(E: CurveParams, basis) -> List[Point]:
    """All of E[ell], as [i]P1 + [j]P2 in row-major order of (i, j).
    """
    P1, P2 = basis
    out = []
    for i in range(E.ell):
        base = scalar_mul(E, i, P1)
        for j in range(E.ell):
            out.append(add(E, base, scalar_mul(E, j, P2)))
    return out


class CurveTransform:
    """Moves E to E^A (through A) and then, if ``includes_j``, applies
    j-hat: (x, y) -> (1/x, 1/y).

    A = [[a, b], [c, d]] acts as (x, y) -> (ax + by, cx + dy). With j-hat
    and b, d nonzero the identity is sent to (0, 0).
    """
    def __init__(self, A, includes_j: bool = True):
        self.A = [list(row) for row in A]
        self.includes_j = includes_j
        (a, b), (c, d) = self.A
        if not linalg.determinant(self.A):
            raise ParameterError("Transform matrix must be invertible.")
        if (not a and not d) or (not b and not c):
            raise ParameterError(
                "Transform matrix must not be diagonal or antidiagonal."
            )
        self.A_inv = linalg.inverse(self.A)

    @classmethod
    def random(cls, field: FieldParams, rng: random.Random,
               includes_j: bool = True) -> "CurveTransform":
        while True:
            A = [[field.random_nonzero(rng) for _ in range(2)]
                 for _ in range(2)]
            if linalg.determinant(A):
                return cls(A, includes_j)

    @property
    def maps_identity(self) -> bool:
        return self.includes_j and bool(self.A[0][1]) and bool(self.A[1][1])

    def transport(self, P: Point) -> Tuple[FieldElement, FieldElement]:
        field = self.A[0][0].field
        if P.is_infinity:
            if self.maps_identity:
                return (field.zero, field.zero)
            raise ExceptionalPoint("The identity has no affine image.")
        (a, b), (c, d) = self.A
        X = a * P.x + b * P.y
        Y = c * P.x + d * P.y
        if not self.includes_j:
            return (X, Y)
        if not X or not Y:
            raise ExceptionalPoint("j-hat is undefined at a zero coordinate.")
        return (X.inverse(), Y.inverse())

    def transport_inv(self, v) -> Point:
        u, w = v
        if self.includes_j:
            if not u and not w and self.maps_identity:
                return O
            if not u or not w:
                raise ExceptionalPoint(
                    "j-hat is undefined at a zero coordinate."
                )
            u, w = u.inverse(), w.inverse()
        (a, b), (c, d) = self.A_inv
        return Point(a * u + b * w, c * u + d * w)

    def valid_for(self, pts) -> bool:
        for P in pts:
            try:
                self.transport(P)
            except ExceptionalPoint:
                return False
        return True


def transport(T: CurveTransform, P: Point):
    return T.transport(P)


def transport_inv(T: CurveTransform, v) -> Point:
    return T.transport_inv(v)


class ProbeReport:
    """Result of :func:`j_conjugation_probe`.
    """
    def __init__(self, q, checked, linear, expected):
        self.q = q
        self.checked = checked
        # Matrices (as tuples) for which j-hat A j-hat is linear.
        self.linear = linear
        # Diagonal and antidiagonal invertible matrices.
        self.expected = expected

    @property
    def matches(self) -> bool:
        return self.linear == self.expected

    def __repr__(self):
        return "ProbeReport(q={}, checked={}, linear={}, matches={})".format(
            self.q, self.checked, len(self.linear), self.matches,
        )


def _conjugate(A, x, y):
    (a, b), (c, d) = A
    X = a * x.inverse() + b * y.inverse()
    Y = c * x.inverse() + d * y.inverse()
    if not X or not Y:
        return None
    return (X.inverse(), Y.inverse())


def _is_linear(A, test_points) -> bool:
    values = []
    for x, y in test_points:
        image = _conjugate(A, x, y)
        if image is not None:
            values.append(((x, y), image))
    # Fix L from two independent points, then check the rest.
    first = values[0]
    second = next(
        (v for v in values[1:]
         if first[0][0] * v[0][1] != first[0][1] * v[0][0]),
        None,
    )
    if second is None:
        return True
    P = [[first[0][0], second[0][0]], [first[0][1], second[0][1]]]
    G = [[first[1][0], second[1][0]], [first[1][1], second[1][1]]]
    L = linalg.matmul(G, linalg.inverse(P))
    for (x, y), (u, w) in values:
        if L[0][0] * x + L[0][1] * y != u or L[1][0] * x + L[1][1] * y != w:
            return False
    return True


def j_conjugation_probe(qsmall: int) -> ProbeReport:
    """Checks, for every invertible A over F_qsmall, whether
    j-hat o A o j-hat agrees with a linear map on all points where it is
    defined. Points are taken over F_qsmall, or over F_qsmall^2 when
    qsmall < 5 (too few points otherwise).
    """
    if not isprime(qsmall) or qsmall > 13:
        raise ParameterError("qsmall must be a prime <= 13.")
    base = FieldParams.prime(qsmall)
    ext = base if qsmall >= 5 else field_setup(qsmall, 2, 0)
    nonzero = [x for x in ext.elements() if x]
    test_points = [(x, y) for x in nonzero for y in nonzero]
    linear = set()
    expected = set()
    checked = 0
    for entries in itertools.product(range(qsmall), repeat=4):
        a, b, c, d = entries
        if (a * d - b * c) % qsmall == 0:
            continue
        checked += 1
        if (b == 0 and c == 0) or (a == 0 and d == 0):
            expected.add(entries)
        A = [[ext.element(a), ext.element(b)], [ext.element(c), ext.element(d)]]
        if _is_linear(A, test_points):
            linear.add(entries)
    return ProbeReport(qsmall, checked, linear, expected)
