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

"""Sparse multivariate polynomials over K, rational functions, the ideal
of ambivalence and descent reduction.
"""

from .errors import ParameterError
from .field import FieldElement, FieldParams, frobenius
from typing import Dict, List, Sequence, Tuple
import random

Exponents = Tuple[int, ...]


def grlex_key(exps: Exponents):
    return (sum(exps), exps)


class MultiPoly:
    """A polynomial in ``nvars`` variables over K, stored as a dict from
    exponent tuples to nonzero coefficients. Immutable.
    """
    __slots__ = ("field", "nvars", "terms")

    def __init__(self, field: FieldParams, nvars: int,
                 terms: Dict[Exponents, FieldElement] = None):
        self.field = field
        self.nvars = nvars
        clean = {}
        for exps, c in (terms or {}).items():
            if not c:
                continue
            exps = self._reduce_exps(exps)
            if exps in clean:
                c = clean[exps] + c
            clean[exps] = c
        self.terms = {e: c for e, c in clean.items() if c}

    def _reduce_exps(self, exps):
        return exps

    def _new(self, terms):
        return type(self)(self.field, self.nvars, terms)

    @classmethod
    def constant(cls, field, nvars, c) -> "MultiPoly":
        c = field.element(c)
        return cls(field, nvars, {(0,) * nvars: c})

    @classmethod
    def variable(cls, field, nvars, index) -> "MultiPoly":
        exps = tuple(int(i == index) for i in range(nvars))
        return cls(field, nvars, {exps: field.one})

    @classmethod
    def variables(cls, field, nvars) -> List["MultiPoly"]:
        return [cls.variable(field, nvars, i) for i in range(nvars)]

    @classmethod
    def linear(cls, field, nvars, coeffs, const=0) -> "MultiPoly":
        terms = {(0,) * nvars: field.element(const)}
        for i, c in enumerate(coeffs):
            exps = tuple(int(j == i) for j in range(nvars))
            terms[exps] = field.element(c)
        return cls(field, nvars, terms)

    @classmethod
    def monomial(cls, field, nvars, exps, c=1) -> "MultiPoly":
        return cls(field, nvars, {tuple(exps): field.element(c)})

    def _coerce(self, other):
        if isinstance(other, MultiPoly):
            if other.nvars != self.nvars:
                raise ParameterError(
                    "Variable count mismatch: {} vs {}".format(
                        self.nvars, other.nvars,
                    )
                )
            return other
        if isinstance(other, (FieldElement, int)):
            return self._new({(0,) * self.nvars: self.field.element(other)})
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        terms = dict(self.terms)
        for exps, c in other.terms.items():
            if exps in terms:
                terms[exps] = terms[exps] + c
            else:
                terms[exps] = c
        return self._new(terms)

    __radd__ = __add__

    def __neg__(self):
        return self._new({e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other - self

    def __mul__(self, other):
        if isinstance(other, (FieldElement, int)):
            c = self.field.element(other)
            return self._new({e: x * c for e, x in self.terms.items()})
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        terms = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                exps = self._reduce_exps(tuple(
                    a + b for a, b in zip(e1, e2)
                ))
                prod = c1 * c2
                if exps in terms:
                    terms[exps] = terms[exps] + prod
                else:
                    terms[exps] = prod
        return self._new(terms)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ParameterError("Negative polynomial power.")
        result = self._new({(0,) * self.nvars: self.field.one})
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, (FieldElement, int)):
            other = self._coerce(other)
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return self.nvars == other.nvars and self.terms == other.terms

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    def __repr__(self):
        return "MultiPoly({} vars, {} terms)".format(
            self.nvars, len(self.terms),
        )

    def is_zero(self) -> bool:
        return not self.terms

    def sorted_terms(self) -> List[Tuple[Exponents, FieldElement]]:
        """Terms in descending graded-lex order.
        """
        return sorted(
            self.terms.items(), key=lambda t: grlex_key(t[0]), reverse=True,
        )

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial.
        """
        return max((sum(e) for e in self.terms), default=-1)

    def var_degrees(self) -> Tuple[int, ...]:
        degrees = [0] * self.nvars
        for exps in self.terms:
            for i, e in enumerate(exps):
                degrees[i] = max(degrees[i], e)
        return tuple(degrees)

    def constant_term(self) -> FieldElement:
        return self.terms.get((0,) * self.nvars, self.field.zero)

    def evaluate(self, point: Sequence):
        """Evaluates at ``point``. The coordinates may be field elements or
        elements of any ring that accepts field-element coefficients
        (polynomials, program wires).
        """
        if len(point) != self.nvars:
            raise ParameterError("Expected a point with {} coordinates".format(
                self.nvars,
            ))
        powers = {}
        total = None
        for exps, c in self.sorted_terms():
            term = None
            for i, e in enumerate(exps):
                if not e:
                    continue
                key = (i, e)
                if key not in powers:
                    powers[key] = point[i] if e == 1 else point[i] ** e
                term = powers[key] if term is None else term * powers[key]
            term = c if term is None else term * c
            total = term if total is None else total + term
        return self.field.zero if total is None else total

    def compose(self, inner: Sequence["MultiPoly"]) -> "MultiPoly":
        """Substitutes ``inner[i]`` for variable i.
        """
        if len(inner) != self.nvars:
            raise ParameterError("compose needs one polynomial per variable.")
        if not inner:
            return self
        nvars = inner[0].nvars
        if any(p.nvars != nvars for p in inner):
            raise ParameterError("Inner polynomials must share nvars.")
        result = self.evaluate(inner)
        if isinstance(result, MultiPoly):
            return result
        return type(inner[0]).constant(self.field, nvars, result)

    def map_coeffs(self, fn) -> "MultiPoly":
        return self._new({e: fn(c) for e, c in self.terms.items()})

    def embed(self, offset: int, nvars: int) -> "MultiPoly":
        """Renames variable i to ``offset + i`` in a ring of ``nvars``
        variables.
        """
        if offset + self.nvars > nvars:
            raise ParameterError("Embedding does not fit.")
        pad = nvars - offset - self.nvars
        return type(self)(self.field, nvars, {
            (0,) * offset + e + (0,) * pad: c for e, c in self.terms.items()
        })


class RationalFn:
    """A quotient num / den. Never reduced to lowest terms.

    The numerator and denominator may live in any ring: polynomials, field
    elements, or program wires.
    """
    __slots__ = ("num", "den")

    def __init__(self, num, den):
        if isinstance(den, MultiPoly) and den.is_zero():
            raise ParameterError("Denominator is identically zero.")
        self.num = num
        self.den = den

    def _coerce(self, other):
        if isinstance(other, RationalFn):
            return other
        return RationalFn(other, 1)

    def __add__(self, other):
        other = self._coerce(other)
        if other.den is self.den:
            return RationalFn(self.num + other.num, self.den)
        return RationalFn(
            self.num * other.den + other.num * self.den,
            self.den * other.den,
        )

    __radd__ = __add__

    def __neg__(self):
        return RationalFn(-self.num, self.den)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        return RationalFn(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        return RationalFn(self.num * other.den, self.den * other.num)

    def evaluate(self, point):
        """Evaluates a polynomial quotient at a point of K.

        :raises ZeroDivisionError: If the denominator vanishes.
        """
        num = self.num.evaluate(point)
        den = self.den.evaluate(point)
        return num / den

    def __repr__(self):
        return "RationalFn({!r}, {!r})".format(self.num, self.den)


class AmbivalenceIdeal:
    """The ideal generated by the n polynomials F_{i2} - F_{i3}, which
    vanish on the blinding space W.
    """
    def __init__(self, generators: Sequence[MultiPoly]):
        self.generators = tuple(generators)

    @property
    def nvars(self):
        return self.generators[0].nvars if self.generators else 0

    def power(self, arity: int) -> "AmbivalenceIdeal":
        """The ideal of W^arity: the generators copied onto each block of
        variables.
        """
        if arity == 1:
            return self
        nvars = self.nvars * arity
        return AmbivalenceIdeal([
            g.embed(p * self.nvars, nvars)
            for p in range(arity) for g in self.generators
        ])

    def descended(self, params: FieldParams) -> "AmbivalenceIdeal":
        return AmbivalenceIdeal([
            descent_reduce(g, [0] * g.nvars, params)
            for g in self.generators
        ])


class IdealElement:
    """An element of the ideal together with the multipliers that produced
    it: ``poly = sum(multipliers[i] * generators[i])``.
    """
    def __init__(self, ideal: AmbivalenceIdeal, multipliers: Sequence):
        self.ideal = ideal
        self.multipliers = tuple(multipliers)

    def evaluate(self, point: Sequence):
        """Evaluates the element at a point, without expanding it.
        """
        total = None
        for mult, gen in zip(self.multipliers, self.ideal.generators):
            if mult.is_zero():
                continue
            term = mult.evaluate(point) * gen.evaluate(point)
            total = term if total is None else total + term
        if total is None:
            return self.ideal.generators[0].field.zero
        return total

    @property
    def poly(self) -> MultiPoly:
        total = None
        for mult, gen in zip(self.multipliers, self.ideal.generators):
            term = mult * gen
            total = term if total is None else total + term
        return total

    def max_multiplier_degree(self) -> int:
        return max((m.degree() for m in self.multipliers), default=-1)


def random_monomial(field, nvars, degree, rng: random.Random,
                    cls=MultiPoly) -> MultiPoly:
    exps = [0] * nvars
    for _ in range(degree):
        exps[rng.randrange(nvars)] += 1
    return cls.monomial(field, nvars, exps, field.random_nonzero(rng))


def sample_ideal_element(ideal: AmbivalenceIdeal, dmax: int,
                         rng: random.Random,
                         sparsity: int = 3) -> IdealElement:
    """Samples a random element of I_dmax: every generator gets a multiplier
    made of ``sparsity`` random monomials of degree at most ``dmax - 2``.
    """
    if dmax < 2:
        raise ParameterError("Ideal degree bound must be at least 2.")
    multipliers = []
    for gen in ideal.generators:
        cls = type(gen)
        mult = cls(gen.field, gen.nvars)
        for _ in range(sparsity):
            mult = mult + random_monomial(
                gen.field, gen.nvars, rng.randint(0, dmax - 2), rng, cls,
            )
        multipliers.append(mult)
    return IdealElement(ideal, multipliers)


def coset_sample(h: MultiPoly, ideal: AmbivalenceIdeal, dmax: int,
                 rng: random.Random, sparsity: int = 3) -> MultiPoly:
    """Returns a random element of h + I_dmax.

    :param h: A polynomial of degree at most ``dmax``.
    """
    if dmax < 2:
        raise ParameterError("Ideal degree bound must be at least 2.")
    if h.degree() > dmax:
        raise ParameterError("Polynomial degree exceeds the bound.")
    if not ideal.generators:
        return h
    return h + sample_ideal_element(ideal, dmax, rng, sparsity).poly


class DescentPoly(MultiPoly):
    """A polynomial in the descent variables x_{ij} (variable index
    ``i * d + j``), reduced modulo x_{ij}^q - x_{ij}. Evaluate it only at
    points whose coordinates lie in k.
    """
    __slots__ = ()

    def _reduce_exps(self, exps):
        q = self.field.q
        if all(e < q for e in exps):
            return exps
        return tuple(e if e < q else (e - 1) % (q - 1) + 1 for e in exps)


def frobenius_coeffs(poly: MultiPoly, a: int) -> MultiPoly:
    """Applies x -> x^(q^a) to every coefficient.
    """
    return poly.map_coeffs(lambda c: frobenius(c, a))


def descent_reduce(poly: MultiPoly, twists: Sequence[int],
                   params: FieldParams) -> DescentPoly:
    """Rewrites ``poly`` in descent coordinates.

    Variable i is replaced by sum_j x_{ij} * theta_j^(q^a_i); the result G
    satisfies G(descend(alpha)) = poly(alpha_i^(q^a_i)) for K-points alpha.
    """
    if len(twists) != poly.nvars:
        raise ParameterError("Need one twist exponent per variable.")
    d = params.d
    nvars = poly.nvars * d
    subs = []
    for i, a in enumerate(twists):
        if not 0 <= a < d:
            raise ParameterError("Twist exponents must lie in [0, d).")
        coeffs = [0] * nvars
        for j in range(d):
            coeffs[i * d + j] = frobenius(params.theta[j], a)
        subs.append(DescentPoly.linear(params, nvars, coeffs))
    result = poly.evaluate(subs)
    if isinstance(result, DescentPoly):
        return result
    return DescentPoly.constant(params, nvars, result)


def descend_point(point: Sequence[FieldElement],
                  params: FieldParams) -> List[FieldElement]:
    """The descent coordinates of a K-point, embedded in K.
    """
    out = []
    for x in point:
        out.extend(params.element(c) for c in params.descend(x))
    return out
