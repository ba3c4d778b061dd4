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

"""Arithmetic in k = F_q and K = F_{q^d}.

Elements of K are stored in the power basis of the modulus. The published
basis theta is only a change of coordinates, used by :meth:`descend`,
:meth:`recompose` and serialization.
"""

from .errors import ParameterError
from . import linalg

from sympy import isprime
from sympy.ntheory.residue_ntheory import sqrt_mod
from sympy.polys.domains import ZZ
from sympy.polys.galoistools import gf_add, gf_sub, gf_mul, gf_rem, gf_neg
from sympy.polys.galoistools import gf_pow_mod, gf_gcdex, gf_irreducible_p
from typing import Iterator, Sequence
import itertools
import random

# Desk-scale bound on |K|.
MAX_FIELD_SIZE = 2 ** 64


def _ints(poly) -> tuple:
    return tuple(int(c) for c in poly)


def as_rng(rng) -> random.Random:
    """Accepts either a :class:`random.Random` or a seed.
    """
    if isinstance(rng, random.Random):
        return rng
    return random.Random(rng)


class FieldParams:
    """Parameters of the extension K/k.

    :param q: The prime size of the base field k.
    :param d: The extension degree [K:k].
    :param modulus: The monic defining polynomial, coefficients over k with
      the highest degree first (the galoistools convention).
    :param theta: The published basis of K over k, as power-basis
      coefficient vectors (lowest degree first). Defaults to the power basis.
    """
    def __init__(self, q: int, d: int, modulus: Sequence[int],
                 theta: Sequence[Sequence[int]] = None):
        if d < 1:
            raise ParameterError("Extension degree must be at least 1.")
        if not isprime(q):
            raise ParameterError("Field size q must be prime, not {}".format(q))
        if q ** d >= MAX_FIELD_SIZE:
            raise ParameterError("Field too large: {}^{}".format(q, d))
        modulus = tuple(int(c) % q for c in modulus)
        if len(modulus) != d + 1 or modulus[0] != 1:
            raise ParameterError("Modulus must be monic of degree d.")
        if d > 1 and not gf_irreducible_p(list(modulus), q, ZZ):
            raise ParameterError("Modulus is reducible over F_{}.".format(q))
        self.q = q
        self.d = d
        self.modulus = modulus
        if theta is None:
            theta = [[int(i == j) for j in range(d)] for i in range(d)]
        self.theta = tuple(self.element(list(t)) for t in theta)
        if len(self.theta) != d:
            raise ParameterError("Basis must have d elements.")
        # Columns are the power coordinates of theta_1, ..., theta_d.
        prime = self if d == 1 else FieldParams.prime(q)
        matrix = [
            [prime.element(self.theta[j].coeffs[i]) for j in range(d)]
            for i in range(d)
        ]
        inverse = linalg.inverse(matrix)
        self._theta_inv = tuple(
            tuple(c.to_int() for c in row) for row in inverse
        )

    @classmethod
    def prime(cls, q: int) -> "FieldParams":
        """Returns the parameters of the prime field F_q (d = 1).
        """
        return cls(q, 1, (1, 0))

    @property
    def size(self) -> int:
        return self.q ** self.d

    @property
    def characteristic(self) -> int:
        return self.q

    @property
    def zero(self) -> "FieldElement":
        return FieldElement(self, 0 if self.d == 1 else ())

    @property
    def one(self) -> "FieldElement":
        return FieldElement(self, 1 if self.d == 1 else (1,))

    def element(self, value) -> "FieldElement":
        """Builds an element from an integer (an element of k) or from a
        power-basis coefficient vector, lowest degree first.
        """
        if isinstance(value, FieldElement):
            if value.field != self:
                raise ParameterError("Element belongs to a different field.")
            return value
        if isinstance(value, int):
            if self.d == 1:
                return FieldElement(self, value % self.q)
            value = [value]
        coeffs = [int(c) % self.q for c in value]
        if len(coeffs) > self.d:
            raise ParameterError("Too many coefficients for degree {}".format(
                self.d,
            ))
        if self.d == 1:
            return FieldElement(self, coeffs[0] if coeffs else 0)
        rep = list(reversed(coeffs))
        while rep and rep[0] == 0:
            rep.pop(0)
        return FieldElement(self, tuple(rep))

    @property
    def generator(self) -> "FieldElement":
        """The class of x in k[x]/(modulus).
        """
        if self.d == 1:
            return FieldElement(self, (-self.modulus[1]) % self.q)
        return self.element([0, 1])

    def random_element(self, rng: random.Random) -> "FieldElement":
        return self.element([rng.randrange(self.q) for _ in range(self.d)])

    def random_nonzero(self, rng: random.Random) -> "FieldElement":
        while True:
            x = self.random_element(rng)
            if x:
                return x

    def elements(self) -> Iterator["FieldElement"]:
        """Enumerates K. Only sensible at desk scale.
        """
        for coeffs in itertools.product(range(self.q), repeat=self.d):
            yield self.element(list(coeffs))

    def subfield_elements(self) -> Iterator["FieldElement"]:
        for c in range(self.q):
            yield self.element(c)

    def descend(self, x: "FieldElement") -> tuple:
        """Returns the coordinates of ``x`` with respect to theta, as
        integers in [0, q).
        """
        c = x.coeffs
        q = self.q
        return tuple(
            sum(row[j] * c[j] for j in range(self.d)) % q
            for row in self._theta_inv
        )

    def recompose(self, coords: Sequence[int]) -> "FieldElement":
        if len(coords) != self.d:
            raise ParameterError("Expected {} coordinates".format(self.d))
        total = self.zero
        for c, t in zip(coords, self.theta):
            total += t * (int(c) % self.q)
        return total

    def _key(self):
        return (self.q, self.d, self.modulus, tuple(
            t.coeffs for t in self.theta
        ))

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, FieldParams):
            return NotImplemented
        return self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def __repr__(self):
        return "FieldParams(q={}, d={})".format(self.q, self.d)


def field_setup(q: int, d: int, rng) -> FieldParams:
    """Builds K = F_{q^d} with a random irreducible modulus and a random
    published basis.

    :param q: A prime.
    :param d: The extension degree, at least 1.
    :param rng: A :class:`random.Random` or a seed.
    """
    if d < 1:
        raise ParameterError("Extension degree must be at least 1.")
    if not isprime(q):
        raise ParameterError("Field size q must be prime, not {}".format(q))
    rng = as_rng(rng)
    if d == 1:
        return FieldParams(q, 1, (1, 0))
    while True:
        modulus = [1] + [rng.randrange(q) for _ in range(d)]
        if gf_irreducible_p(modulus, q, ZZ):
            break
    base = FieldParams(q, d, modulus)
    while True:
        theta = [[rng.randrange(q) for _ in range(d)] for _ in range(d)]
        prime = FieldParams.prime(q)
        matrix = [[prime.element(theta[j][i]) for j in range(d)]
                  for i in range(d)]
        if linalg.determinant(matrix):
            return FieldParams(q, d, base.modulus, theta)


class FieldElement:
    """An element of K. Immutable.

    For d = 1 the representation is an integer; otherwise it is a stripped
    galoistools coefficient tuple, highest degree first.
    """
    __slots__ = ("field", "v")

    def __init__(self, field: FieldParams, v):
        self.field = field
        self.v = v

    @property
    def coeffs(self) -> tuple:
        """Power-basis coefficients, lowest degree first, length d.
        """
        d = self.field.d
        if d == 1:
            return (self.v,)
        low = tuple(reversed(self.v))
        return low + (0,) * (d - len(low))

    def to_int(self) -> int:
        """Returns the value of an element of the prime subfield.
        """
        if self.field.d == 1:
            return self.v
        if len(self.v) > 1:
            raise ParameterError("Element is not in the prime subfield.")
        return self.v[0] if self.v else 0

    def in_subfield(self) -> bool:
        return self.field.d == 1 or len(self.v) <= 1

    def _coerce(self, other):
        if isinstance(other, FieldElement):
            if other.field is not self.field and other.field != self.field:
                raise ParameterError("Mixed-field arithmetic.")
            return other
        if isinstance(other, int):
            return self.field.element(other)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        f = self.field
        if f.d == 1:
            return FieldElement(f, (self.v + other.v) % f.q)
        return FieldElement(f, _ints(gf_add(
            list(self.v), list(other.v), f.q, ZZ,
        )))

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        f = self.field
        if f.d == 1:
            return FieldElement(f, (self.v - other.v) % f.q)
        return FieldElement(f, _ints(gf_sub(
            list(self.v), list(other.v), f.q, ZZ,
        )))

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other - self

    def __neg__(self):
        f = self.field
        if f.d == 1:
            return FieldElement(f, (-self.v) % f.q)
        return FieldElement(f, _ints(gf_neg(list(self.v), f.q, ZZ)))

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        f = self.field
        if f.d == 1:
            return FieldElement(f, (self.v * other.v) % f.q)
        product = gf_mul(list(self.v), list(other.v), f.q, ZZ)
        return FieldElement(f, _ints(
            gf_rem(product, list(f.modulus), f.q, ZZ),
        ))

    __rmul__ = __mul__

    def inverse(self) -> "FieldElement":
        if not self:
            raise ZeroDivisionError("inverse of zero in K")
        f = self.field
        if f.d == 1:
            return FieldElement(f, pow(self.v, f.q - 2, f.q))
        s, _, h = gf_gcdex(list(self.v), list(f.modulus), f.q, ZZ)
        # h is monic, so h == [1] for a unit.
        assert _ints(h) == (1,)
        return FieldElement(f, _ints(s))

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other * self.inverse()

    def __pow__(self, n: int):
        f = self.field
        if n < 0:
            return self.inverse() ** (-n)
        if f.d == 1:
            return FieldElement(f, pow(self.v, n, f.q))
        if n == 0:
            return f.one
        return FieldElement(f, _ints(gf_pow_mod(
            list(self.v), n, list(f.modulus), f.q, ZZ,
        )))

    def __bool__(self):
        return bool(self.v)

    def __eq__(self, other):
        if isinstance(other, int):
            other = self.field.element(other)
        if not isinstance(other, FieldElement):
            return NotImplemented
        return self.v == other.v and (
            other.field is self.field or other.field == self.field
        )

    def __hash__(self):
        return hash((self.field.q, self.field.d, self.v))

    def __repr__(self):
        if self.field.d == 1:
            return "F{}({})".format(self.field.q, self.v)
        return "K({})".format(list(self.coeffs))

    def is_square(self) -> bool:
        if not self:
            return True
        f = self.field
        if f.q == 2:
            return True
        return self ** ((f.size - 1) // 2) == f.one

    def sqrt(self, rng: random.Random = None) -> "FieldElement":
        """Returns a square root of this element.

        :param rng: Used to find a non-residue for Tonelli-Shanks when
          d > 1. Defaults to a fixed seed, so results are deterministic.
        :returns: A square root, or ``None`` if this is not a square.
        """
        f = self.field
        if not self:
            return f.zero
        if not self.is_square():
            return None
        if f.q == 2:
            return self ** (f.size // 2)
        if f.d == 1:
            return FieldElement(f, int(sqrt_mod(self.v, f.q)))
        return _tonelli_shanks(self, rng or random.Random(0))


def _tonelli_shanks(a: FieldElement, rng: random.Random) -> FieldElement:
    f = a.field
    order = f.size - 1
    s = 0
    t = order
    while t % 2 == 0:
        t //= 2
        s += 1
    while True:
        z = f.random_nonzero(rng)
        if not z.is_square():
            break
    m = s
    c = z ** t
    r = a ** ((t + 1) // 2)
    u = a ** t
    while u != f.one:
        i = 0
        probe = u
        while probe != f.one:
            probe = probe * probe
            i += 1
        b = c ** (2 ** (m - i - 1))
        m = i
        c = b * b
        u = u * c
        r = r * b
    return r


def frobenius(x: FieldElement, a: int) -> FieldElement:
    """Returns x^(q^a).
    """
    if a < 0:
        raise ParameterError("Frobenius exponent must be non-negative.")
    f = x.field
    a %= f.d
    if a == 0:
        return x
    return x ** (f.q ** a)


def descend(x: FieldElement) -> tuple:
    return x.field.descend(x)


def recompose(params: FieldParams, coords: Sequence[int]) -> FieldElement:
    return params.recompose(coords)
