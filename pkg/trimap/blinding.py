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

"""Local quadratic isomorphisms, the blinding space W and the basic
blinding map rho.
"""

from .errors import ContractViolation, ParameterError
from .field import FieldElement, FieldParams, frobenius
from .poly import AmbivalenceIdeal, MultiPoly
from . import linalg

from typing import List, Sequence, Tuple
import random

Pair = Tuple[FieldElement, FieldElement]

SPACE_E = "E"
SPACE_E_PRIME = "E'"
SPACES = (SPACE_E, SPACE_E_PRIME)


class BlindedPoint:
    """A point of W, tagged with the space (E or E') whose blinding it
    belongs to.
    """
    __slots__ = ("coords", "space")

    def __init__(self, coords: Sequence[FieldElement], space: str = SPACE_E):
        if space not in SPACES:
            raise ParameterError("Unknown point space: {}".format(space))
        self.coords = tuple(coords)
        self.space = space

    def __len__(self):
        return len(self.coords)

    def __eq__(self, other):
        if not isinstance(other, BlindedPoint):
            return NotImplemented
        return self.space == other.space and self.coords == other.coords

    def __hash__(self):
        return hash((self.space, self.coords))

    def __repr__(self):
        return "BlindedPoint({}, {!r})".format(self.space, list(self.coords))


def random_invertible(params: FieldParams, n: int,
                      rng: random.Random) -> list:
    while True:
        matrix = [
            [params.random_element(rng) for _ in range(n)] for _ in range(n)
        ]
        if linalg.determinant(matrix):
            return matrix


def apply_matrix(matrix, vector) -> list:
    """Multiplies a matrix over K by a vector over any ring.
    """
    out = []
    for row in matrix:
        total = None
        for c, x in zip(row, vector):
            if not c:
                continue
            term = x * c
            total = term if total is None else total + term
        out.append(row[0].field.zero if total is None else total)
    return out


class LocalQuadIso:
    """lambda = B o lambda_{p,q} o A, where
    lambda_{p,q}(x, y, z) = (x, y + p(x), z + q(x, y)).

    :param p: A univariate polynomial (one variable).
    :param q2: A bivariate polynomial (two variables).
    """
    def __init__(self, A, B, p: MultiPoly, q2: MultiPoly):
        self.A = [list(row) for row in A]
        self.B = [list(row) for row in B]
        self.p = p
        self.q2 = q2
        self.A_inv = linalg.inverse(self.A)
        self.B_inv = linalg.inverse(self.B)

    @classmethod
    def random(cls, params: FieldParams, rng: random.Random):
        A = random_invertible(params, 3, rng)
        B = random_invertible(params, 3, rng)
        p_coeffs = [params.random_element(rng) for _ in range(2)]
        p_coeffs.append(params.random_nonzero(rng))
        p = MultiPoly(params, 1, {
            (e,): c for e, c in enumerate(p_coeffs)
        })
        while True:
            q2 = MultiPoly(params, 2, {
                exps: params.random_element(rng)
                for exps in [(0, 0), (1, 0), (0, 1), (2, 0), (1, 1), (0, 2)]
            })
            if q2.degree() == 2:
                return cls(A, B, p, q2)

    @classmethod
    def identity(cls, params: FieldParams):
        ident = linalg.identity(params, 3)
        return cls(ident, ident, MultiPoly(params, 1), MultiPoly(params, 2))

    def apply(self, v: Sequence) -> list:
        u = apply_matrix(self.A, v)
        u = [
            u[0],
            u[1] + self.p.evaluate([u[0]]),
            u[2] + self.q2.evaluate([u[0], u[1]]),
        ]
        return apply_matrix(self.B, u)

    def inverse(self, v: Sequence) -> list:
        u = apply_matrix(self.B_inv, v)
        y = u[1] - self.p.evaluate([u[0]])
        u = [u[0], y, u[2] - self.q2.evaluate([u[0], y])]
        return apply_matrix(self.A_inv, u)

    def with_B(self, B) -> "LocalQuadIso":
        return LocalQuadIso(self.A, B, self.p, self.q2)


class BlindingKey:
    """The secret blinding parameters and the polynomials derived from them.

    :param delta: A 3n x 3n invertible matrix; rows 3i..3i+2 form delta_i.
    :param lambdas: One :class:`LocalQuadIso` per locality.
    :param twists: One (a, b) pair per locality, each in [0, d).
    """
    def __init__(self, params: FieldParams, delta, lambdas, twists=None):
        n = len(lambdas)
        self.params = params
        self.n = n
        self.delta = [list(row) for row in delta]
        if len(self.delta) != 3 * n:
            raise ParameterError("delta must be 3n x 3n.")
        self.delta_inv = linalg.inverse(self.delta)
        self.lambdas = tuple(lambdas)
        if twists is None:
            twists = [(0, 0)] * n
        self.twists = tuple((int(a), int(b)) for a, b in twists)
        for a, b in self.twists:
            if not (0 <= a < params.d and 0 <= b < params.d):
                raise ParameterError("Twist exponents must lie in [0, d).")

        variables = MultiPoly.variables(params, 3 * n)
        delta_vars = apply_matrix(self.delta, variables)
        self.F = tuple(
            tuple(lam.apply(delta_vars[3*i:3*i+3]))
            for i, lam in enumerate(self.lambdas)
        )
        x, y = MultiPoly.variables(params, 2)
        self.mu_tilde = tuple(
            tuple(lam.inverse([x, y, y])) for lam in self.lambdas
        )
        self.ideal = AmbivalenceIdeal([f[1] - f[2] for f in self.F])

    @property
    def twisted(self) -> bool:
        return any(a or b for a, b in self.twists)

    @property
    def nvars(self) -> int:
        return 3 * self.n

    @classmethod
    def identity(cls, params: FieldParams, n: int = 1):
        """The trivial key: delta = A = B = I, p = q = 0. Then rho is the
        projection (x, y, z) -> (x, y) and W = {z = y}.
        """
        return cls(
            params, linalg.identity(params, 3 * n),
            [LocalQuadIso.identity(params) for _ in range(n)],
        )

    def with_twists(self, twists) -> "BlindingKey":
        return BlindingKey(self.params, self.delta, self.lambdas, twists)

    def with_lambda(self, i: int, lam: LocalQuadIso) -> "BlindingKey":
        lambdas = list(self.lambdas)
        lambdas[i] = lam
        return BlindingKey(self.params, self.delta, lambdas, self.twists)


def keygen(n: int, params: FieldParams, twisted: bool,
           rng: random.Random) -> BlindingKey:
    """Generates a random blinding key.
    """
    if n < 1:
        raise ParameterError("Locality count n must be at least 1.")
    delta = random_invertible(params, 3 * n, rng)
    lambdas = [LocalQuadIso.random(params, rng) for _ in range(n)]
    twists = None
    if twisted:
        twists = [
            (rng.randrange(params.d), rng.randrange(params.d))
            for _ in range(n)
        ]
    return BlindingKey(params, delta, lambdas, twists)


def is_on_W(key: BlindingKey, w) -> bool:
    w = getattr(w, "coords", w)
    if len(w) != key.nvars:
        return False
    return all(not g.evaluate(w) for g in key.ideal.generators)


def rho(key: BlindingKey, w) -> List[Pair]:
    """Applies the basic blinding map (with twists) to a point of W.

    :raises ContractViolation: If ``w`` is not on W.
    """
    w = getattr(w, "coords", w)
    if not is_on_W(key, w):
        raise ContractViolation("Point is not on the blinding space W.")
    out = []
    for (f1, f2, _), (a, b) in zip(key.F, key.twists):
        out.append((
            frobenius(f1.evaluate(w), a), frobenius(f2.evaluate(w), b),
        ))
    return out


def lift(key: BlindingKey, v: Sequence[Pair]) -> List[FieldElement]:
    """The inverse of :func:`rho`: returns the point of W mapping to ``v``.
    """
    if len(v) != key.n:
        raise ParameterError("Expected {} planar points".format(key.n))
    d = key.params.d
    local = []
    for (x, y), mu, (a, b) in zip(v, key.mu_tilde, key.twists):
        x = frobenius(x, (d - a) % d)
        y = frobenius(y, (d - b) % d)
        local.extend(m.evaluate([x, y]) for m in mu)
    return apply_matrix(key.delta_inv, local)


def sample_W(key: BlindingKey, rng: random.Random) -> List[FieldElement]:
    """A uniform point of W, as the lift of a uniform point of K^2n.
    """
    params = key.params
    return lift(key, [
        (params.random_element(rng), params.random_element(rng))
        for _ in range(key.n)
    ])


def d_alpha_variant(key: BlindingKey, i: int,
                    alpha: FieldElement) -> BlindingKey:
    """Replaces B_i by D_alpha B_i, D_alpha = [[1, a, -a], [0, 1, 0],
    [0, 0, 1]]. The map rho on W is unchanged. ``i`` is 0-based.
    """
    if not 0 <= i < key.n:
        raise ParameterError("Locality index out of range.")
    params = key.params
    one, zero = params.one, params.zero
    d_alpha = [[one, alpha, -alpha], [zero, one, zero], [zero, zero, one]]
    lam = key.lambdas[i]
    return key.with_lambda(i, lam.with_B(linalg.matmul(d_alpha, lam.B)))


def representative(key: BlindingKey, coeffs) -> list:
    """Builds H_{ij} = F_{ij} + sum_k coeffs[i][j][k] * (F_{k2} - F_{k3})
    for j = 1, 2.
    """
    out = []
    for i, (f1, f2, _) in enumerate(key.F):
        pair = []
        for j, f in enumerate((f1, f2)):
            h = f
            for c, g in zip(coeffs[i][j], key.ideal.generators):
                if c:
                    h = h + g * c
            pair.append(h)
        out.append(tuple(pair))
    return out


def random_representative(key: BlindingKey, rng: random.Random) -> list:
    params = key.params
    coeffs = [
        [[params.random_element(rng) for _ in range(key.n)]
         for _ in range(2)]
        for _ in range(key.n)
    ]
    return representative(key, coeffs)


def ambivalent_representatives(key: BlindingKey, count: int,
                               rng: random.Random) -> list:
    """Returns ``count`` random tuples (H_{i1}, H_{i2}) with
    H_{ij} - F_{ij} in I_2. Each defines the same map rho on W.
    """
    if key.twisted:
        raise ContractViolation("Ambivalent representatives need a basic key.")
    return [random_representative(key, rng) for _ in range(count)]


def rho_from(representatives: list, key: BlindingKey, w) -> List[Pair]:
    """Evaluates rho through an alternative tuple (H_{i1}, H_{i2}).
    """
    out = []
    for (h1, h2), (a, b) in zip(representatives, key.twists):
        out.append((
            frobenius(h1.evaluate(w), a), frobenius(h2.evaluate(w), b),
        ))
    return out


def apply_gl(blocks, values: Sequence[Pair]) -> List[Pair]:
    """Applies a block-diagonal element of GL_2^n to rho-values.
    """
    out = []
    for block, (x, y) in zip(blocks, values):
        out.append(tuple(apply_matrix(block, [x, y])))
    return out


def gl_action(blocks, rho_fn, f):
    """Moves the decomposition f o rho to (f o A^-1) o (A o rho) for a
    block-diagonal A in GL_2^n. The composite is unchanged.

    :param rho_fn: Maps a point of W to n pairs.
    :param f: Maps n pairs to a value.
    :returns: The new (rho, f) pair of callables.
    """
    inverses = [linalg.inverse(block) for block in blocks]

    def new_rho(w):
        return apply_gl(blocks, rho_fn(w))

    def new_f(values):
        return f(apply_gl(inverses, values))
    return new_rho, new_f
